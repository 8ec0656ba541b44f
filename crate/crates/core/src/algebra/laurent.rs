use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, AddAssign, Mul, Neg, Sub, SubAssign};

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

/// A Laurent polynomial with integer coefficients in `v = q^{1/2}`.
///
/// Stored densely: `coeffs[k]` is the coefficient of `v^(low + k)`. The first
/// and last stored coefficients are nonzero, so the zero polynomial is the
/// empty vector and every value has exactly one representation.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct LaurentPolynomial {
    low: i64,
    coeffs: Vec<BigInt>,
}

impl LaurentPolynomial {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        Self::constant(1)
    }

    pub fn constant(c: impl Into<BigInt>) -> Self {
        Self::monomial(c, 0)
    }

    /// `c * v^exponent`.
    pub fn monomial(c: impl Into<BigInt>, exponent: i64) -> Self {
        let c = c.into();
        if c.is_zero() {
            return Self::zero();
        }
        Self {
            low: exponent,
            coeffs: vec![c],
        }
    }

    /// `v = q^{1/2}`.
    pub fn v() -> Self {
        Self::monomial(1, 1)
    }

    pub fn q() -> Self {
        Self::monomial(1, 2)
    }

    /// `q^n`, i.e. `v^{2n}`.
    pub fn q_pow(n: i64) -> Self {
        Self::monomial(1, 2 * n)
    }

    /// Builds a polynomial from `(v-exponent, coefficient)` pairs; repeated
    /// exponents are summed.
    pub fn from_terms<I, C>(terms: I) -> Self
    where
        I: IntoIterator<Item = (i64, C)>,
        C: Into<BigInt>,
    {
        let terms: Vec<(i64, BigInt)> = terms.into_iter().map(|(e, c)| (e, c.into())).collect();
        let Some(low) = terms.iter().map(|(e, _)| *e).min() else {
            return Self::zero();
        };
        let high = terms.iter().map(|(e, _)| *e).max().unwrap();
        let mut coeffs = vec![BigInt::zero(); (high - low + 1) as usize];
        for (e, c) in terms {
            coeffs[(e - low) as usize] += c;
        }
        Self::from_dense(low, coeffs)
    }

    /// Polynomial in `q` from ascending coefficients `[c_0, c_1, ...]`.
    pub fn from_q_coeffs<C: Into<BigInt> + Clone>(coeffs: &[C]) -> Self {
        Self::from_terms(
            coeffs
                .iter()
                .enumerate()
                .map(|(k, c)| (2 * k as i64, c.clone().into())),
        )
    }

    pub(crate) fn from_dense(low: i64, mut coeffs: Vec<BigInt>) -> Self {
        trim_high(&mut coeffs);
        let lead_zeros = coeffs.iter().take_while(|c| c.is_zero()).count();
        if lead_zeros == coeffs.len() {
            return Self::zero();
        }
        coeffs.drain(..lead_zeros);
        Self {
            low: low + lead_zeros as i64,
            coeffs,
        }
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.low == 0 && self.coeffs.len() == 1 && self.coeffs[0].is_one()
    }

    /// True for `c * v^e` with a single term.
    pub fn is_monomial(&self) -> bool {
        self.coeffs.len() == 1
    }

    pub fn low_exponent(&self) -> Option<i64> {
        (!self.is_zero()).then_some(self.low)
    }

    pub fn high_exponent(&self) -> Option<i64> {
        (!self.is_zero()).then(|| self.low + self.coeffs.len() as i64 - 1)
    }

    pub fn coeff(&self, exponent: i64) -> BigInt {
        let k = exponent - self.low;
        if k < 0 || k as usize >= self.coeffs.len() {
            BigInt::zero()
        } else {
            self.coeffs[k as usize].clone()
        }
    }

    /// Coefficient of the highest power of `v`.
    pub fn leading_coefficient(&self) -> Option<&BigInt> {
        self.coeffs.last()
    }

    /// Nonzero terms as `(v-exponent, coefficient)` in increasing exponent order.
    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (i64, &BigInt)> + '_ {
        self.coeffs
            .iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .map(move |(k, c)| (self.low + k as i64, c))
    }

    pub fn num_terms(&self) -> usize {
        self.coeffs.iter().filter(|c| !c.is_zero()).count()
    }

    /// True when only even powers of `v` occur, i.e. the value lies in `Z[q, q^{-1}]`.
    pub fn is_even(&self) -> bool {
        self.terms().all(|(e, _)| e % 2 == 0)
    }

    /// Multiply by `v^d`.
    pub fn shift(&self, d: i64) -> Self {
        if self.is_zero() {
            return Self::zero();
        }
        Self {
            low: self.low + d,
            coeffs: self.coeffs.clone(),
        }
    }

    pub fn scale(&self, c: &BigInt) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        Self {
            low: self.low,
            coeffs: self.coeffs.iter().map(|x| x * c).collect(),
        }
    }

    /// The ring endomorphism `v -> v^k`; `k` must be nonzero.
    pub fn substitute_power(&self, k: i64) -> Self {
        assert!(k != 0, "v -> v^0 is not an automorphism");
        Self::from_terms(self.terms().map(|(e, c)| (e * k, c.clone())))
    }

    /// The involution `v -> -v`.
    pub fn negate_variable(&self) -> Self {
        let coeffs = self
            .coeffs
            .iter()
            .enumerate()
            .map(|(k, c)| {
                if (self.low + k as i64).rem_euclid(2) == 1 {
                    -c
                } else {
                    c.clone()
                }
            })
            .collect();
        Self {
            low: self.low,
            coeffs,
        }
    }

    /// Positive gcd of the coefficients; zero for the zero polynomial.
    pub fn content(&self) -> BigInt {
        content(&self.coeffs)
    }

    pub fn div_integer_exact(&self, c: &BigInt) -> Self {
        Self {
            low: self.low,
            coeffs: self
                .coeffs
                .iter()
                .map(|x| {
                    debug_assert!((x % c).is_zero());
                    x / c
                })
                .collect(),
        }
    }

    /// Gcd in `Z[v, v^{-1}]` up to units: primitive, positive leading
    /// coefficient, lowest exponent zero. Returns zero only if both inputs are zero.
    pub fn gcd(&self, other: &Self) -> Self {
        match (self.is_zero(), other.is_zero()) {
            (true, true) => Self::zero(),
            (true, false) => Self::from_dense(0, primitive(&other.coeffs)),
            (false, true) => Self::from_dense(0, primitive(&self.coeffs)),
            (false, false) => Self::from_dense(0, poly_gcd(&self.coeffs, &other.coeffs)),
        }
    }

    /// Exact quotient in `Z[v, v^{-1}]`, or `None` if `divisor` does not divide `self`.
    pub fn div_exact(&self, divisor: &Self) -> Option<Self> {
        assert!(!divisor.is_zero(), "division by the zero polynomial");
        if self.is_zero() {
            return Some(Self::zero());
        }
        let quotient = poly_div_exact(&self.coeffs, &divisor.coeffs)?;
        Some(Self::from_dense(self.low - divisor.low, quotient))
    }

    /// Evaluate at `v = x`.
    pub fn evaluate_v(&self, x: &BigRational) -> BigRational {
        let mut acc = BigRational::zero();
        for c in self.coeffs.iter().rev() {
            acc = acc * x + BigRational::from_integer(c.clone());
        }
        acc * pow_rational(x, self.low)
    }

    /// Evaluate at the integer `q`, or `None` if an odd power of `v` occurs.
    pub fn evaluate_q(&self, q: &BigRational) -> Option<BigRational> {
        if !self.is_even() {
            return None;
        }
        let mut acc = BigRational::zero();
        for (e, c) in self.terms() {
            acc += pow_rational(q, e / 2) * BigRational::from_integer(c.clone());
        }
        Some(acc)
    }

    pub(crate) fn dense(&self) -> (i64, &[BigInt]) {
        (self.low, &self.coeffs)
    }
}

fn pow_rational(x: &BigRational, e: i64) -> BigRational {
    if e >= 0 {
        num_traits::pow(x.clone(), e as usize)
    } else {
        num_traits::pow(x.recip(), (-e) as usize)
    }
}

fn trim_high(v: &mut Vec<BigInt>) {
    while v.last().is_some_and(Zero::is_zero) {
        v.pop();
    }
}

fn content(v: &[BigInt]) -> BigInt {
    let mut g = BigInt::zero();
    for c in v {
        g = g.gcd(c);
        if g.is_one() {
            break;
        }
    }
    g
}

/// Primitive part with positive leading coefficient and the `v`-power stripped.
fn primitive(v: &[BigInt]) -> Vec<BigInt> {
    let start = v.iter().take_while(|c| c.is_zero()).count();
    let v = &v[start..];
    let mut g = content(v);
    if v.last().is_some_and(|c| c.is_negative()) {
        g = -g;
    }
    v.iter().map(|c| c / &g).collect()
}

/// Primitive PRS gcd of two nonzero dense polynomials.
fn poly_gcd(a: &[BigInt], b: &[BigInt]) -> Vec<BigInt> {
    let mut a = primitive(a);
    let mut b = primitive(b);
    if a.len() < b.len() {
        std::mem::swap(&mut a, &mut b);
    }
    if b.len() == 1 {
        return vec![BigInt::one()];
    }
    if a == b {
        return a;
    }
    loop {
        let r = pseudo_rem(&a, &b);
        if r.is_empty() {
            return b;
        }
        let r = primitive(&r);
        if r.len() == 1 {
            return vec![BigInt::one()];
        }
        a = b;
        b = r;
    }
}

/// A nonzero integer multiple of `a mod b`, with trailing zeros trimmed.
fn pseudo_rem(a: &[BigInt], b: &[BigInt]) -> Vec<BigInt> {
    let mut r = a.to_vec();
    let nb = b.len();
    let lb = b.last().unwrap();
    while r.len() >= nb {
        let lr = r.last().unwrap().clone();
        let g = lr.gcd(lb);
        let mb = lb / &g;
        let mr = &lr / &g;
        let shift = r.len() - nb;
        if !mb.is_one() {
            for c in r.iter_mut() {
                *c *= &mb;
            }
        }
        for (k, c) in b.iter().enumerate() {
            r[shift + k] -= &mr * c;
        }
        debug_assert!(r.last().unwrap().is_zero());
        trim_high(&mut r);
    }
    r
}

fn poly_div_exact(a: &[BigInt], b: &[BigInt]) -> Option<Vec<BigInt>> {
    if a.len() < b.len() {
        return None;
    }
    let nb = b.len();
    let lb = b.last().unwrap();
    let mut r = a.to_vec();
    let mut quotient = vec![BigInt::zero(); a.len() - nb + 1];
    for shift in (0..quotient.len()).rev() {
        let top = &r[shift + nb - 1];
        if top.is_zero() {
            continue;
        }
        let (qc, rem) = top.div_rem(lb);
        if !rem.is_zero() {
            return None;
        }
        for (k, c) in b.iter().enumerate() {
            r[shift + k] -= &qc * c;
        }
        quotient[shift] = qc;
    }
    r.iter().all(Zero::is_zero).then_some(quotient)
}

fn add_dense(a: &LaurentPolynomial, b: &LaurentPolynomial, negate_b: bool) -> LaurentPolynomial {
    if b.is_zero() {
        return a.clone();
    }
    if a.is_zero() {
        return if negate_b { -b } else { b.clone() };
    }
    let low = a.low.min(b.low);
    let high = a.high_exponent().unwrap().max(b.high_exponent().unwrap());
    let mut coeffs = vec![BigInt::zero(); (high - low + 1) as usize];
    for (k, c) in a.coeffs.iter().enumerate() {
        coeffs[(a.low - low) as usize + k] += c;
    }
    for (k, c) in b.coeffs.iter().enumerate() {
        let slot = &mut coeffs[(b.low - low) as usize + k];
        if negate_b {
            *slot -= c;
        } else {
            *slot += c;
        }
    }
    LaurentPolynomial::from_dense(low, coeffs)
}

fn mul_dense(a: &LaurentPolynomial, b: &LaurentPolynomial) -> LaurentPolynomial {
    if a.is_zero() || b.is_zero() {
        return LaurentPolynomial::zero();
    }
    let mut coeffs = vec![BigInt::zero(); a.coeffs.len() + b.coeffs.len() - 1];
    for (i, x) in a.coeffs.iter().enumerate() {
        if x.is_zero() {
            continue;
        }
        for (j, y) in b.coeffs.iter().enumerate() {
            coeffs[i + j] += x * y;
        }
    }
    LaurentPolynomial::from_dense(a.low + b.low, coeffs)
}

impl Add<&LaurentPolynomial> for &LaurentPolynomial {
    type Output = LaurentPolynomial;
    fn add(self, rhs: &LaurentPolynomial) -> LaurentPolynomial {
        add_dense(self, rhs, false)
    }
}

impl Sub<&LaurentPolynomial> for &LaurentPolynomial {
    type Output = LaurentPolynomial;
    fn sub(self, rhs: &LaurentPolynomial) -> LaurentPolynomial {
        add_dense(self, rhs, true)
    }
}

impl Mul<&LaurentPolynomial> for &LaurentPolynomial {
    type Output = LaurentPolynomial;
    fn mul(self, rhs: &LaurentPolynomial) -> LaurentPolynomial {
        mul_dense(self, rhs)
    }
}

impl Neg for &LaurentPolynomial {
    type Output = LaurentPolynomial;
    fn neg(self) -> LaurentPolynomial {
        LaurentPolynomial {
            low: self.low,
            coeffs: self.coeffs.iter().map(|c| -c).collect(),
        }
    }
}

impl Neg for LaurentPolynomial {
    type Output = LaurentPolynomial;
    fn neg(self) -> LaurentPolynomial {
        -&self
    }
}

macro_rules! forward_owned {
    ($tr:ident, $m:ident) => {
        impl $tr<LaurentPolynomial> for LaurentPolynomial {
            type Output = LaurentPolynomial;
            fn $m(self, rhs: LaurentPolynomial) -> LaurentPolynomial {
                (&self).$m(&rhs)
            }
        }
        impl $tr<&LaurentPolynomial> for LaurentPolynomial {
            type Output = LaurentPolynomial;
            fn $m(self, rhs: &LaurentPolynomial) -> LaurentPolynomial {
                (&self).$m(rhs)
            }
        }
    };
}
forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);

impl AddAssign<&LaurentPolynomial> for LaurentPolynomial {
    fn add_assign(&mut self, rhs: &LaurentPolynomial) {
        *self = &*self + rhs;
    }
}

impl SubAssign<&LaurentPolynomial> for LaurentPolynomial {
    fn sub_assign(&mut self, rhs: &LaurentPolynomial) {
        *self = &*self - rhs;
    }
}

impl PartialOrd for LaurentPolynomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// Arbitrary but total order, used only for deterministic sorting.
impl Ord for LaurentPolynomial {
    fn cmp(&self, other: &Self) -> Ordering {
        self.low
            .cmp(&other.low)
            .then_with(|| self.coeffs.cmp(&other.coeffs))
    }
}

/// Renders `v^e` as `q^{e/2}`, writing an odd power as `v*q^k`.
fn render_monomial(e: i64) -> String {
    let (half, odd) = (e.div_euclid(2), e.rem_euclid(2) == 1);
    let q_part = match half {
        0 => String::new(),
        1 => "q".to_string(),
        n => format!("q^{n}"),
    };
    match (odd, q_part.is_empty()) {
        (false, _) => q_part,
        (true, true) => "v".to_string(),
        (true, false) => format!("v*{q_part}"),
    }
}

impl fmt::Display for LaurentPolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        for (i, (e, c)) in self.terms().rev().enumerate() {
            let sign = c.is_negative();
            match (i, sign) {
                (0, true) => f.write_str("-")?,
                (0, false) => {}
                (_, true) => f.write_str(" - ")?,
                (_, false) => f.write_str(" + ")?,
            }
            let mag = c.abs();
            let mono = render_monomial(e);
            if mono.is_empty() {
                write!(f, "{mag}")?;
            } else if mag.is_one() {
                f.write_str(&mono)?;
            } else {
                write!(f, "{mag}*{mono}")?;
            }
        }
        Ok(())
    }
}

impl fmt::Debug for LaurentPolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "LaurentPolynomial({self})")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(n: i64) -> LaurentPolynomial {
        LaurentPolynomial::q_pow(n)
    }

    fn one() -> LaurentPolynomial {
        LaurentPolynomial::one()
    }

    #[test]
    fn difference_of_squares() {
        let a = &q(1) - &one();
        let b = &q(1) + &one();
        assert_eq!(&a * &b, &q(2) - &one());
    }

    #[test]
    fn additive_identity_and_distributivity() {
        let a = LaurentPolynomial::from_terms([(-3, 2), (0, -1), (5, 7)]);
        assert_eq!(&a + &LaurentPolynomial::zero(), a);
        let b = &one() - &q(-1);
        assert_eq!(&b * &q(1), &q(1) - &one());
    }

    #[test]
    fn canonical_after_cancellation() {
        let a = LaurentPolynomial::from_terms([(2, 1), (4, 1)]);
        let b = LaurentPolynomial::from_terms([(2, 1), (6, 3)]);
        let d = &a - &b;
        assert_eq!(d, LaurentPolynomial::from_terms([(4, 1), (6, -3)]));
        assert_eq!(d.low_exponent(), Some(4));
        assert!((&a - &a).is_zero());
        assert_eq!((&a - &a).low_exponent(), None);
    }

    #[test]
    fn rendering() {
        assert_eq!((&q(1) + &one()).to_string(), "q + 1");
        assert_eq!((&q(2) - &one()).to_string(), "q^2 - 1");
        assert_eq!(LaurentPolynomial::v().to_string(), "v");
        assert_eq!(LaurentPolynomial::from_terms([(3, -2), (-1, 1)]).to_string(), "-2*v*q + v*q^-1");
        assert_eq!((&q(-1) + &one()).to_string(), "1 + q^-1");
        assert_eq!(LaurentPolynomial::zero().to_string(), "0");
    }

    #[test]
    fn substitutions() {
        let f = &q(1) + &one();
        assert_eq!(f.substitute_power(-1), &q(-1) + &one());
        assert_eq!(LaurentPolynomial::v().negate_variable(), -LaurentPolynomial::v());
        let g = LaurentPolynomial::from_terms([(-1, 3), (2, 1), (5, -4)]);
        assert_eq!(g.substitute_power(2).substitute_power(-3), g.substitute_power(-6));
        assert_eq!(g.negate_variable().negate_variable(), g);
    }

    #[test]
    fn gcd_and_exact_division() {
        // (q - 1)(q + 2) and (q - 1)(q^2 + 1) share q - 1
        let qm1 = &q(1) - &one();
        let a = &qm1 * &(&q(1) + &LaurentPolynomial::constant(2));
        let b = &qm1 * &(&q(2) + &one());
        assert_eq!(a.gcd(&b), qm1);
        assert_eq!(a.scale(&BigInt::from(-6)).gcd(&b.shift(-7)), qm1);
        assert_eq!(a.div_exact(&qm1).unwrap(), &q(1) + &LaurentPolynomial::constant(2));
        assert!(a.div_exact(&(&q(2) + &one())).is_none());
        assert!(LaurentPolynomial::constant(3).div_exact(&LaurentPolynomial::constant(2)).is_none());
    }

    #[test]
    fn coprime_gcd_is_one() {
        let a = &q(3) - &one();
        let b = &q(2) + &one();
        assert!(a.gcd(&b).is_one());
    }

    #[test]
    fn evaluation() {
        let f = LaurentPolynomial::from_q_coeffs(&[1, 0, 3]);
        let two = BigRational::from_integer(2.into());
        assert_eq!(f.evaluate_q(&two), Some(BigRational::from_integer(13.into())));
        assert_eq!(LaurentPolynomial::v().evaluate_q(&two), None);
        assert_eq!(q(-1).evaluate_q(&two), Some(BigRational::new(1.into(), 2.into())));
    }
}
