use std::fmt;
use std::iter::Sum;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use super::{AlgebraError, LaurentPolynomial};

/// Monomial substitutions acting on the coefficient field.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Substitution {
    /// `v -> v^k`, `k != 0`. `Power(-1)` is `q -> q^{-1}`, `Power(k)` is the `k`-th Adams operation.
    Power(i64),
    /// `v -> -v`.
    NegateV,
}

/// An element of `Q(v)` in canonical form.
///
/// The canonical form has `gcd(numerator, denominator) = 1`, a denominator that
/// is an honest polynomial in `v` with nonzero constant term and positive
/// leading coefficient, and coprime integer contents. Structural equality is
/// therefore field equality.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct RationalFunction {
    num: LaurentPolynomial,
    den: LaurentPolynomial,
}

impl Default for RationalFunction {
    fn default() -> Self {
        Self::zero()
    }
}

impl RationalFunction {
    pub fn zero() -> Self {
        Self {
            num: LaurentPolynomial::zero(),
            den: LaurentPolynomial::one(),
        }
    }

    pub fn one() -> Self {
        Self::from(LaurentPolynomial::one())
    }

    pub fn integer(c: impl Into<BigInt>) -> Self {
        Self::from(LaurentPolynomial::constant(c))
    }

    pub fn ratio(n: impl Into<BigInt>, d: impl Into<BigInt>) -> Result<Self, AlgebraError> {
        Self::new(LaurentPolynomial::constant(n), LaurentPolynomial::constant(d))
    }

    pub fn v() -> Self {
        Self::from(LaurentPolynomial::v())
    }

    pub fn q() -> Self {
        Self::from(LaurentPolynomial::q())
    }

    pub fn q_pow(n: i64) -> Self {
        Self::from(LaurentPolynomial::q_pow(n))
    }

    pub fn new(num: LaurentPolynomial, den: LaurentPolynomial) -> Result<Self, AlgebraError> {
        if den.is_zero() {
            return Err(AlgebraError::DivisionByZero);
        }
        Ok(Self::normalize(num, den, true))
    }

    /// Reduces `num/den` to canonical form. When `reduce` is false the caller
    /// guarantees the two share no polynomial factor, so only units are fixed.
    fn normalize(mut num: LaurentPolynomial, mut den: LaurentPolynomial, reduce: bool) -> Self {
        if num.is_zero() {
            return Self::zero();
        }
        let s = den.low_exponent().unwrap();
        if s != 0 {
            den = den.shift(-s);
            num = num.shift(-s);
        }
        if reduce && !den.is_monomial() && !num.is_monomial() {
            let g = num.gcd(&den);
            if !g.is_one() {
                num = num.div_exact(&g).expect("gcd divides numerator");
                den = den.div_exact(&g).expect("gcd divides denominator");
            }
        }
        let mut c = num.content().gcd(&den.content());
        if den.leading_coefficient().unwrap().is_negative() {
            c = -c;
        }
        if !c.is_one() {
            num = num.div_integer_exact(&c);
            den = den.div_integer_exact(&c);
        }
        Self { num, den }
    }

    pub fn numerator(&self) -> &LaurentPolynomial {
        &self.num
    }

    pub fn denominator(&self) -> &LaurentPolynomial {
        &self.den
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn is_one(&self) -> bool {
        self.num.is_one() && self.den.is_one()
    }

    pub fn recip(&self) -> Result<Self, AlgebraError> {
        if self.is_zero() {
            return Err(AlgebraError::DivisionByZero);
        }
        Ok(Self::normalize(self.den.clone(), self.num.clone(), false))
    }

    pub fn checked_div(&self, rhs: &Self) -> Result<Self, AlgebraError> {
        Ok(self * &rhs.recip()?)
    }

    pub fn scale_integer(&self, c: &BigInt) -> Self {
        Self::normalize(self.num.scale(c), self.den.clone(), false)
    }

    pub fn div_integer(&self, c: &BigInt) -> Result<Self, AlgebraError> {
        if c.is_zero() {
            return Err(AlgebraError::DivisionByZero);
        }
        Ok(Self::normalize(self.num.clone(), self.den.scale(c), false))
    }

    pub fn scale_rational(&self, c: &BigRational) -> Self {
        Self::normalize(self.num.scale(c.numer()), self.den.scale(c.denom()), false)
    }

    pub fn substitute(&self, rule: Substitution) -> Self {
        match rule {
            Substitution::Power(1) => self.clone(),
            Substitution::Power(k) => Self::normalize(
                self.num.substitute_power(k),
                self.den.substitute_power(k),
                false,
            ),
            Substitution::NegateV => Self::normalize(
                self.num.negate_variable(),
                self.den.negate_variable(),
                false,
            ),
        }
    }

    /// True when numerator and denominator involve only integral powers of `q`.
    pub fn is_even(&self) -> bool {
        self.num.is_even() && self.den.is_even()
    }

    /// The underlying polynomial in `q` with integer coefficients, if this is one.
    pub fn as_integer_polynomial(&self) -> Result<LaurentPolynomial, AlgebraError> {
        let ok = self.den.is_one()
            && self.num.is_even()
            && self.num.low_exponent().is_none_or(|e| e >= 0);
        if ok {
            Ok(self.num.clone())
        } else {
            Err(AlgebraError::NotAPolynomial(self.to_string()))
        }
    }

    /// Value at the rational point `q`. Odd powers of `v` are rejected.
    pub fn evaluate_q(&self, q: &BigRational) -> Result<BigRational, AlgebraError> {
        let n = self.num.evaluate_q(q).ok_or(AlgebraError::HalfIntegralPower)?;
        let d = self.den.evaluate_q(q).ok_or(AlgebraError::HalfIntegralPower)?;
        if d.is_zero() {
            return Err(AlgebraError::Pole(q.to_string()));
        }
        Ok(n / d)
    }

    /// The first `n_terms` coefficients of the Laurent expansion in `v^{-1}`
    /// (the expansion around `q = infinity`), as `(v-exponent, coefficient)`,
    /// starting at the leading exponent and stepping down by one.
    pub fn expand_at_infinity(&self, n_terms: usize) -> Vec<(i64, BigRational)> {
        if self.is_zero() {
            return Vec::new();
        }
        let (_, nc) = self.num.dense();
        let (_, dc) = self.den.dense();
        let top = self.num.high_exponent().unwrap() - self.den.high_exponent().unwrap();
        // In w = 1/v the numerator and denominator become reversed coefficient lists.
        let n_rev: Vec<&BigInt> = nc.iter().rev().collect();
        let d_rev: Vec<&BigInt> = dc.iter().rev().collect();
        let d0 = BigRational::from_integer(d_rev[0].clone());
        let mut out: Vec<BigRational> = Vec::with_capacity(n_terms);
        for k in 0..n_terms {
            let mut acc = n_rev
                .get(k)
                .map(|c| BigRational::from_integer((*c).clone()))
                .unwrap_or_else(BigRational::zero);
            for j in 1..=k.min(d_rev.len() - 1) {
                acc -= &out[k - j] * BigRational::from_integer(d_rev[j].clone());
            }
            out.push(acc / &d0);
        }
        out.into_iter()
            .enumerate()
            .map(|(k, c)| (top - k as i64, c))
            .collect()
    }
}

impl From<LaurentPolynomial> for RationalFunction {
    fn from(p: LaurentPolynomial) -> Self {
        Self {
            num: p,
            den: LaurentPolynomial::one(),
        }
    }
}

impl From<i64> for RationalFunction {
    fn from(c: i64) -> Self {
        Self::integer(c)
    }
}

impl From<&BigRational> for RationalFunction {
    fn from(c: &BigRational) -> Self {
        Self::normalize(
            LaurentPolynomial::constant(c.numer().clone()),
            LaurentPolynomial::constant(c.denom().clone()),
            false,
        )
    }
}

fn add_impl(a: &RationalFunction, b: &RationalFunction, negate_b: bool) -> RationalFunction {
    let combine = |x: &LaurentPolynomial, y: &LaurentPolynomial| if negate_b { x - y } else { x + y };
    if b.is_zero() {
        return a.clone();
    }
    if a.is_zero() {
        return if negate_b { -b } else { b.clone() };
    }
    if a.den == b.den {
        if a.den.is_one() {
            return RationalFunction::from(combine(&a.num, &b.num));
        }
        return RationalFunction::normalize(combine(&a.num, &b.num), a.den.clone(), true);
    }
    let g = a.den.gcd(&b.den);
    let (ad, bd) = if g.is_one() {
        (a.den.clone(), b.den.clone())
    } else {
        (a.den.div_exact(&g).unwrap(), b.den.div_exact(&g).unwrap())
    };
    let num = combine(&(&a.num * &bd), &(&b.num * &ad));
    if num.is_zero() {
        return RationalFunction::zero();
    }
    // Any factor shared by num and the lcm ad * bd * g already divides g.
    // Invariant: den = ad * bd * rest.
    let mut den = &ad * &b.den;
    let mut num = num;
    let mut rest = g;
    while !rest.is_one() {
        let h = num.gcd(&rest);
        if h.is_one() {
            break;
        }
        num = num.div_exact(&h).unwrap();
        den = den.div_exact(&h).unwrap();
        rest = rest.div_exact(&h).unwrap();
    }
    RationalFunction::normalize(num, den, false)
}

fn mul_impl(a: &RationalFunction, b: &RationalFunction) -> RationalFunction {
    if a.is_zero() || b.is_zero() {
        return RationalFunction::zero();
    }
    if a.den.is_one() && b.den.is_one() {
        return RationalFunction::from(&a.num * &b.num);
    }
    let cancel = |n: &LaurentPolynomial, d: &LaurentPolynomial| {
        if d.is_one() || n.is_monomial() {
            return (n.clone(), d.clone());
        }
        let g = n.gcd(d);
        if g.is_one() {
            (n.clone(), d.clone())
        } else {
            (n.div_exact(&g).unwrap(), d.div_exact(&g).unwrap())
        }
    };
    let (an, bd) = cancel(&a.num, &b.den);
    let (bn, ad) = cancel(&b.num, &a.den);
    RationalFunction::normalize(&an * &bn, &ad * &bd, false)
}

impl Add<&RationalFunction> for &RationalFunction {
    type Output = RationalFunction;
    fn add(self, rhs: &RationalFunction) -> RationalFunction {
        add_impl(self, rhs, false)
    }
}

impl Sub<&RationalFunction> for &RationalFunction {
    type Output = RationalFunction;
    fn sub(self, rhs: &RationalFunction) -> RationalFunction {
        add_impl(self, rhs, true)
    }
}

impl Mul<&RationalFunction> for &RationalFunction {
    type Output = RationalFunction;
    fn mul(self, rhs: &RationalFunction) -> RationalFunction {
        mul_impl(self, rhs)
    }
}

impl Neg for &RationalFunction {
    type Output = RationalFunction;
    fn neg(self) -> RationalFunction {
        RationalFunction {
            num: -&self.num,
            den: self.den.clone(),
        }
    }
}

impl Neg for RationalFunction {
    type Output = RationalFunction;
    fn neg(self) -> RationalFunction {
        -&self
    }
}

macro_rules! forward_owned {
    ($tr:ident, $m:ident) => {
        impl $tr<RationalFunction> for RationalFunction {
            type Output = RationalFunction;
            fn $m(self, rhs: RationalFunction) -> RationalFunction {
                (&self).$m(&rhs)
            }
        }
        impl $tr<&RationalFunction> for RationalFunction {
            type Output = RationalFunction;
            fn $m(self, rhs: &RationalFunction) -> RationalFunction {
                (&self).$m(rhs)
            }
        }
    };
}
forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);

impl Sum for RationalFunction {
    fn sum<I: Iterator<Item = RationalFunction>>(iter: I) -> Self {
        iter.fold(RationalFunction::zero(), |acc, x| &acc + &x)
    }
}

impl<'a> Sum<&'a RationalFunction> for RationalFunction {
    fn sum<I: Iterator<Item = &'a RationalFunction>>(iter: I) -> Self {
        iter.fold(RationalFunction::zero(), |acc, x| &acc + x)
    }
}

impl fmt::Display for RationalFunction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.den.is_one() {
            return write!(f, "{}", self.num);
        }
        if self.num.num_terms() > 1 {
            write!(f, "({})", self.num)?;
        } else {
            write!(f, "{}", self.num)?;
        }
        if self.den.num_terms() > 1 {
            write!(f, "/({})", self.den)
        } else {
            write!(f, "/{}", self.den)
        }
    }
}

impl fmt::Debug for RationalFunction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "RationalFunction({self})")
    }
}
