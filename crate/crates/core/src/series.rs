//! Box-truncated power series in commuting variables `x^γ` with
//! [`RationalFunction`] coefficients, and the plethystic operations on them.
//!
//! `sym` realizes the characteristic function of the free supercommutative
//! algebra: a mode `c·x^γ·v^m` contributes `(1 - x^γ v^m)^{-c}` for even `m`
//! and `(1 + x^γ v^m)^{c}` for odd `m`. Conjugating the classical plethystic
//! exponential `exp(Σ_k ψ_k(f)/k)` by `v -> -v` produces exactly these signs.
//!
//! Truncation is exact: `N^{Q_0}` is cancellative and Adams operations only
//! move mass outward, so no term outside the box ever affects one inside.

use std::fmt;

use num_bigint::BigInt;
use thiserror::Error;

use crate::algebra::{RationalFunction, Substitution};
use crate::dimension::DimensionVector;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum SeriesError {
    #[error("truncation boxes differ: {0} vs {1}")]
    BoxMismatch(DimensionVector, DimensionVector),
    #[error("constant term is not invertible")]
    NonUnitConstantTerm,
    #[error("sym requires a vanishing constant term")]
    NonzeroConstantTerm,
    #[error("constant term must be 1")]
    ConstantTermNotOne,
}

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct TruncatedSeries {
    bound: DimensionVector,
    coeffs: Vec<RationalFunction>,
}

fn mobius(n: u32) -> i64 {
    let mut n = n;
    let mut result = 1;
    let mut p = 2;
    while p * p <= n {
        if n % p == 0 {
            n /= p;
            if n % p == 0 {
                return 0;
            }
            result = -result;
        }
        p += 1;
    }
    if n > 1 {
        result = -result;
    }
    result
}

impl TruncatedSeries {
    pub fn zero(bound: DimensionVector) -> Self {
        let n = bound.box_size();
        Self {
            bound,
            coeffs: vec![RationalFunction::zero(); n],
        }
    }

    pub fn one(bound: DimensionVector) -> Self {
        Self::constant(bound, RationalFunction::one())
    }

    pub fn constant(bound: DimensionVector, c: RationalFunction) -> Self {
        let mut s = Self::zero(bound);
        s.coeffs[0] = c;
        s
    }

    /// `c·x^γ`, or zero if `γ` lies outside the box.
    pub fn monomial(bound: DimensionVector, gamma: &DimensionVector, c: RationalFunction) -> Self {
        let mut s = Self::zero(bound);
        s.set(gamma, c);
        s
    }

    /// Terms outside the box are dropped; repeated exponents are summed.
    pub fn from_terms<I>(bound: DimensionVector, terms: I) -> Self
    where
        I: IntoIterator<Item = (DimensionVector, RationalFunction)>,
    {
        let mut s = Self::zero(bound);
        for (g, c) in terms {
            if g.le(&s.bound) {
                let k = s.bound.flatten(&g);
                s.coeffs[k] = &s.coeffs[k] + &c;
            }
        }
        s
    }

    pub fn bound(&self) -> &DimensionVector {
        &self.bound
    }

    /// The coefficient of `x^γ`; zero outside the box.
    pub fn coefficient(&self, gamma: &DimensionVector) -> RationalFunction {
        if gamma.le(&self.bound) {
            self.coeffs[self.bound.flatten(gamma)].clone()
        } else {
            RationalFunction::zero()
        }
    }

    /// Sets an in-box coefficient; out-of-box requests are ignored.
    pub fn set(&mut self, gamma: &DimensionVector, c: RationalFunction) {
        if gamma.le(&self.bound) {
            let k = self.bound.flatten(gamma);
            self.coeffs[k] = c;
        }
    }

    /// All in-box coefficients in lexicographic order of `γ`, zeros included.
    pub fn iter(&self) -> impl Iterator<Item = (DimensionVector, &RationalFunction)> + '_ {
        self.coeffs
            .iter()
            .enumerate()
            .map(|(k, c)| (self.bound.unflatten(k), c))
    }

    pub fn constant_term(&self) -> &RationalFunction {
        &self.coeffs[0]
    }

    fn check_box(&self, other: &Self) -> Result<(), SeriesError> {
        if self.bound == other.bound {
            Ok(())
        } else {
            Err(SeriesError::BoxMismatch(self.bound.clone(), other.bound.clone()))
        }
    }

    pub fn add(&self, other: &Self) -> Result<Self, SeriesError> {
        self.check_box(other)?;
        Ok(Self {
            bound: self.bound.clone(),
            coeffs: self.coeffs.iter().zip(&other.coeffs).map(|(a, b)| a + b).collect(),
        })
    }

    pub fn sub(&self, other: &Self) -> Result<Self, SeriesError> {
        self.check_box(other)?;
        Ok(Self {
            bound: self.bound.clone(),
            coeffs: self.coeffs.iter().zip(&other.coeffs).map(|(a, b)| a - b).collect(),
        })
    }

    pub fn mul(&self, other: &Self) -> Result<Self, SeriesError> {
        self.check_box(other)?;
        let mut out = Self::zero(self.bound.clone());
        let gammas: Vec<DimensionVector> = self.bound.box_iter().collect();
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate() {
                if b.is_zero() {
                    continue;
                }
                let sum = &gammas[i] + &gammas[j];
                if sum.le(&self.bound) {
                    let k = self.bound.flatten(&sum);
                    out.coeffs[k] = &out.coeffs[k] + &(a * b);
                }
            }
        }
        Ok(out)
    }

    pub fn scale(&self, c: &RationalFunction) -> Self {
        self.map_coefficients(|x| x * c)
    }

    pub fn map_coefficients<F: Fn(&RationalFunction) -> RationalFunction>(&self, f: F) -> Self {
        Self {
            bound: self.bound.clone(),
            coeffs: self.coeffs.iter().map(f).collect(),
        }
    }

    pub fn substitute(&self, rule: Substitution) -> Self {
        self.map_coefficients(|c| c.substitute(rule))
    }

    /// Multiplicative inverse within the box.
    pub fn invert(&self) -> Result<Self, SeriesError> {
        let c0_inv = self.coeffs[0].recip().map_err(|_| SeriesError::NonUnitConstantTerm)?;
        let gammas: Vec<DimensionVector> = self.bound.box_iter().collect();
        let mut out = Self::zero(self.bound.clone());
        out.coeffs[0] = c0_inv.clone();
        for (k, gamma) in gammas.iter().enumerate().skip(1) {
            let mut acc = RationalFunction::zero();
            for beta in gamma.box_iter().skip(1) {
                let a = &self.coeffs[self.bound.flatten(&beta)];
                if a.is_zero() {
                    continue;
                }
                let rest = gamma.checked_sub(&beta).unwrap();
                acc = &acc + &(a * &out.coeffs[self.bound.flatten(&rest)]);
            }
            out.coeffs[k] = -(&acc * &c0_inv);
        }
        Ok(out)
    }

    /// `ψ_k`: `x^γ -> x^{kγ}` and `v -> v^k` on coefficients.
    pub fn adams(&self, k: u32) -> Self {
        assert!(k >= 1, "Adams operations are indexed by positive integers");
        if k == 1 {
            return self.clone();
        }
        let mut out = Self::zero(self.bound.clone());
        for (idx, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let target = self.bound.unflatten(idx).scaled(k);
            if target.le(&self.bound) {
                out.coeffs[self.bound.flatten(&target)] = c.substitute(Substitution::Power(k as i64));
            }
        }
        out
    }

    /// Largest `k` for which `ψ_k` can be nonzero on a series without constant term.
    fn max_adams_index(&self) -> u32 {
        self.bound.entries().iter().copied().max().unwrap_or(0)
    }

    /// Formal exponential of a series with zero constant term.
    fn formal_exp(&self) -> Self {
        debug_assert!(self.coeffs[0].is_zero());
        let gammas: Vec<DimensionVector> = self.bound.box_iter().collect();
        let mut out = Self::one(self.bound.clone());
        for (k, gamma) in gammas.iter().enumerate().skip(1) {
            let mut acc = RationalFunction::zero();
            for beta in gamma.box_iter().skip(1) {
                let g = &self.coeffs[self.bound.flatten(&beta)];
                if g.is_zero() {
                    continue;
                }
                let rest = gamma.checked_sub(&beta).unwrap();
                let e = &out.coeffs[self.bound.flatten(&rest)];
                if e.is_zero() {
                    continue;
                }
                acc = &acc + &(g * e).scale_integer(&BigInt::from(beta.total()));
            }
            out.coeffs[k] = acc.div_integer(&BigInt::from(gamma.total())).unwrap();
        }
        out
    }

    /// Formal logarithm of a series with constant term 1.
    fn formal_log(&self) -> Self {
        debug_assert!(self.coeffs[0].is_one());
        let gammas: Vec<DimensionVector> = self.bound.box_iter().collect();
        let mut out = Self::zero(self.bound.clone());
        for (k, gamma) in gammas.iter().enumerate().skip(1) {
            let mut acc = RationalFunction::zero();
            for beta in gamma.box_iter().skip(1) {
                if &beta == gamma {
                    continue;
                }
                let l = &out.coeffs[self.bound.flatten(&beta)];
                if l.is_zero() {
                    continue;
                }
                let rest = gamma.checked_sub(&beta).unwrap();
                let f = &self.coeffs[self.bound.flatten(&rest)];
                if f.is_zero() {
                    continue;
                }
                acc = &acc + &(l * f).scale_integer(&BigInt::from(beta.total()));
            }
            out.coeffs[k] = &self.coeffs[k] - &acc.div_integer(&BigInt::from(gamma.total())).unwrap();
        }
        out
    }

    /// The plethystic exponential with super-sign conventions; requires a
    /// vanishing constant term.
    pub fn sym(&self) -> Result<Self, SeriesError> {
        if !self.coeffs[0].is_zero() {
            return Err(SeriesError::NonzeroConstantTerm);
        }
        let twisted = self.substitute(Substitution::NegateV);
        let mut power_sum = Self::zero(self.bound.clone());
        for k in 1..=self.max_adams_index() {
            let term = twisted.adams(k);
            let inv_k = BigInt::from(k);
            power_sum = power_sum
                .add(&term.map_coefficients(|c| c.div_integer(&inv_k).unwrap()))
                .unwrap();
        }
        Ok(power_sum.formal_exp().substitute(Substitution::NegateV))
    }

    /// Inverse of [`sym`](Self::sym); requires constant term 1.
    pub fn log(&self) -> Result<Self, SeriesError> {
        if !self.coeffs[0].is_one() {
            return Err(SeriesError::ConstantTermNotOne);
        }
        let log = self.substitute(Substitution::NegateV).formal_log();
        let mut out = Self::zero(self.bound.clone());
        for k in 1..=self.max_adams_index() {
            let mu = mobius(k);
            if mu == 0 {
                continue;
            }
            let mu = BigInt::from(mu);
            let k_big = BigInt::from(k);
            let term = log
                .adams(k)
                .map_coefficients(|c| c.scale_integer(&mu).div_integer(&k_big).unwrap());
            out = out.add(&term).unwrap();
        }
        Ok(out.substitute(Substitution::NegateV))
    }

    /// The power structure `f^g = sym(g · log f)`.
    pub fn pow_structure(&self, exponent: &RationalFunction) -> Result<Self, SeriesError> {
        self.log()?.scale(exponent).sym()
    }
}

impl fmt::Display for TruncatedSeries {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (gamma, c) in self.iter() {
            writeln!(f, "x^{gamma} : {c}")?;
        }
        Ok(())
    }
}

impl fmt::Debug for TruncatedSeries {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "TruncatedSeries(box {}) {{", self.bound)?;
        for (gamma, c) in self.iter().filter(|(_, c)| !c.is_zero()) {
            write!(f, " x^{gamma}: {c};")?;
        }
        f.write_str(" }")
    }
}
