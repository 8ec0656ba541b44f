//! Hua's multipartition formula and everything extracted from it.
//!
//! The nilpotent characteristic function is
//!
//! ```text
//! Σ_π c_π(q) x^{|π|},   c_π = ∏_a q^{⟨π(s a), π(t a)⟩} / ∏_i q^{⟨π(i), π(i)⟩} b_{π(i)}(q^{-1})
//! ```
//!
//! and Hua's identity reads `Σ_π c_π x^{|π|} = sym(Σ_γ a_γ(q)/(q - 1) · x^γ)`.
//! Written in `q^{-1}` the same identity is
//! `sym(Σ_γ a_γ(q^{-1})/(q^{-1} - 1) · x^γ) = Σ_π c_π(q^{-1}) x^{|π|}`;
//! both forms are exposed so callers can check either.
//! The normalization is the one fixed by point counts: for the arrowless
//! quiver at `γ = 1` the coefficient is `1/(q - 1) = #pt / |GL_1(F_q)|`.

use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use num_traits::{Signed, Zero};
use rand::Rng;
use rayon::prelude::*;
use thiserror::Error;

use crate::algebra::{LaurentPolynomial, RationalFunction, Substitution};
use crate::dimension::DimensionVector;
use crate::partitions::{
    b_poly, linearize_strata, multipartitions_of, pairing, partitions_of, BArgument, Multipartition, Partition,
};
use crate::quiver::{Quiver, QuiverError};
use crate::series::TruncatedSeries;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum HuaError {
    #[error(transparent)]
    Quiver(#[from] QuiverError),
    #[error("the truncation box must be nonzero")]
    ZeroBox,
    #[error("a_{gamma} = {value} is not an integer polynomial in q")]
    NotAPolynomial { gamma: DimensionVector, value: String },
    #[error("a_{gamma} = {poly} has a negative coefficient")]
    NegativeCoefficient { gamma: DimensionVector, poly: LaurentPolynomial },
    #[error("generator multiplicity at {gamma}, weight {weight} is {value}")]
    NegativeMultiplicity {
        gamma: DimensionVector,
        weight: i64,
        value: BigInt,
    },
}

/// `Σ_a ⟨π(s(a)), π(t(a))⟩`.
pub fn arrow_pairing(quiver: &Quiver, pi: &Multipartition) -> u64 {
    quiver
        .arrows()
        .iter()
        .map(|a| pairing(pi.component(a.source), pi.component(a.target)))
        .sum()
}

/// `∏_i q^{⟨π(i),π(i)⟩} b_{π(i)}(q^{-1})`, the point count of the
/// automorphism group of a vertexwise nilpotent operator of Jordan type `π`.
pub fn n_pi_weight(pi: &Multipartition) -> RationalFunction {
    let mut out = RationalFunction::one();
    for lambda in pi.components() {
        let factor = LaurentPolynomial::q_pow(pairing(lambda, lambda) as i64);
        let b = b_poly(lambda, BArgument::QInverse);
        out = &out * &RationalFunction::from(&factor * &b);
    }
    out
}

pub fn c_pi(quiver: &Quiver, pi: &Multipartition) -> RationalFunction {
    let num = LaurentPolynomial::q_pow(arrow_pairing(quiver, pi) as i64);
    RationalFunction::from(num).checked_div(&n_pi_weight(pi)).expect("n_pi_weight is nonzero")
}

/// `∏_{k=1}^{n} (q^k - 1)`.
fn q_factorial(n: u32) -> LaurentPolynomial {
    let one = LaurentPolynomial::one();
    (1..=n as i64).fold(LaurentPolynomial::one(), |acc, k| &acc * &(&LaurentPolynomial::q_pow(k) - &one))
}

/// Per-vertex data for rewriting `c_π` over the common denominator
/// `∏_i [γ(i)]!` with `[n]! = ∏_{k≤n}(q^k - 1)`.
struct VertexTerm {
    partition: Partition,
    /// `Σ_j ψ_j(ψ_j+1)/2 - ⟨λ,λ⟩`
    exponent: i64,
    /// `[n]! / ∏_j [ψ_j]!`, a q-multinomial coefficient up to sign
    cofactor: LaurentPolynomial,
}

fn vertex_terms(n: u32) -> Vec<VertexTerm> {
    let full = q_factorial(n);
    partitions_of(n)
        .into_iter()
        .map(|lambda| {
            let mut den = LaurentPolynomial::one();
            let mut tri = 0i64;
            for &psi in lambda.multiplicities().values() {
                den = &den * &q_factorial(psi);
                tri += (psi as i64) * (psi as i64 + 1) / 2;
            }
            VertexTerm {
                exponent: tri - pairing(&lambda, &lambda) as i64,
                cofactor: full.div_exact(&den).expect("q-multinomial coefficients are polynomials"),
                partition: lambda,
            }
        })
        .collect()
}

/// `Σ_{π ∈ P(γ)} c_π`, summed over the common denominator and reduced once.
fn hua_coefficient(quiver: &Quiver, gamma: &DimensionVector) -> RationalFunction {
    let per_vertex: Vec<Vec<VertexTerm>> = gamma.entries().iter().map(|&n| vertex_terms(n)).collect();
    let denominator = gamma
        .entries()
        .iter()
        .fold(LaurentPolynomial::one(), |acc, &n| &acc * &q_factorial(n));
    let sizes: Vec<usize> = per_vertex.iter().map(Vec::len).collect();
    let total: usize = sizes.iter().product();
    let mut numerator = LaurentPolynomial::zero();
    let mut choice = vec![0usize; sizes.len()];
    for _ in 0..total {
        let pi = Multipartition::new(
            choice
                .iter()
                .enumerate()
                .map(|(i, &c)| per_vertex[i][c].partition.clone())
                .collect(),
        );
        let mut exponent = arrow_pairing(quiver, &pi) as i64;
        let mut cofactor = LaurentPolynomial::one();
        for (i, &c) in choice.iter().enumerate() {
            exponent += per_vertex[i][c].exponent;
            cofactor = &cofactor * &per_vertex[i][c].cofactor;
        }
        numerator += &cofactor.shift(2 * exponent);
        // mixed-radix increment, last vertex fastest
        for i in (0..choice.len()).rev() {
            choice[i] += 1;
            if choice[i] < sizes[i] {
                break;
            }
            choice[i] = 0;
        }
    }
    RationalFunction::new(numerator, denominator).expect("nonzero denominator")
}

/// The nilpotent characteristic function truncated to `bound`. Coefficients
/// are computed in parallel on the current rayon pool; the result does not
/// depend on the schedule.
pub fn coha_char_nilp(quiver: &Quiver, bound: &DimensionVector) -> Result<TruncatedSeries, HuaError> {
    quiver.check_dimension(bound)?;
    let coeffs: Vec<RationalFunction> = (0..bound.box_size())
        .into_par_iter()
        .map(|k| hua_coefficient(quiver, &bound.unflatten(k)))
        .collect();
    Ok(TruncatedSeries::from_terms(
        bound.clone(),
        coeffs.into_iter().enumerate().map(|(k, c)| (bound.unflatten(k), c)),
    ))
}

/// The characteristic function of all pairs `(ρ, f)`, nilpotency dropped:
/// the power structure `coha_char_nilp^q`.
pub fn coha_char_full(quiver: &Quiver, bound: &DimensionVector) -> Result<TruncatedSeries, HuaError> {
    let nilp = coha_char_nilp(quiver, bound)?;
    Ok(nilp.pow_structure(&RationalFunction::q()).expect("constant term is 1"))
}

/// One row of the stratification of `[x^γ] coha_char_nilp` by Jordan type.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct StratumRow {
    pub pi: Multipartition,
    pub arrow_pairing: u64,
    pub vertex_pairings: Vec<u64>,
    pub n_pi_weight: RationalFunction,
    pub c_pi: RationalFunction,
    pub running_total: RationalFunction,
}

/// `P(γ)` in stratum order with each contribution and the running sum.
pub fn strata(quiver: &Quiver, gamma: &DimensionVector) -> Result<Vec<StratumRow>, HuaError> {
    quiver.check_dimension(gamma)?;
    let mut total = RationalFunction::zero();
    let order = linearize_strata(multipartitions_of(gamma).collect());
    Ok(order
        .into_iter()
        .map(|pi| {
            let c = c_pi(quiver, &pi);
            total = &total + &c;
            StratumRow {
                arrow_pairing: arrow_pairing(quiver, &pi),
                vertex_pairings: pi.components().iter().map(|l| pairing(l, l)).collect(),
                n_pi_weight: n_pi_weight(&pi),
                c_pi: c,
                running_total: total.clone(),
                pi,
            }
        })
        .collect())
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct KacTable {
    pub quiver: Quiver,
    pub bound: DimensionVector,
    pub entries: BTreeMap<DimensionVector, LaurentPolynomial>,
}

impl KacTable {
    pub fn get(&self, gamma: &DimensionVector) -> Option<&LaurentPolynomial> {
        self.entries.get(gamma)
    }
}

impl fmt::Display for KacTable {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (gamma, a) in &self.entries {
            writeln!(f, "a_{gamma} = {a}")?;
        }
        Ok(())
    }
}

/// Kac polynomials for all `0 < γ ≤ bound`, read off as
/// `a_γ(q) = (q - 1) · [x^γ] log(coha_char_nilp)`.
///
/// Fails if any entry is not an integer polynomial or has a negative
/// coefficient; either would contradict Kac's theorems.
pub fn kac_polynomials(quiver: &Quiver, bound: &DimensionVector) -> Result<KacTable, HuaError> {
    quiver.check_dimension(bound)?;
    if bound.is_zero() {
        return Err(HuaError::ZeroBox);
    }
    let log = coha_char_nilp(quiver, bound)?.log().expect("constant term is 1");
    let q_minus_one = &RationalFunction::q() - &RationalFunction::one();
    let mut entries = BTreeMap::new();
    for (gamma, l) in log.iter().skip(1) {
        let value = &q_minus_one * l;
        let poly = value.as_integer_polynomial().map_err(|_| HuaError::NotAPolynomial {
            gamma: gamma.clone(),
            value: value.to_string(),
        })?;
        if poly.terms().any(|(_, c)| c.is_negative()) {
            return Err(HuaError::NegativeCoefficient { gamma, poly });
        }
        entries.insert(gamma, poly);
    }
    Ok(KacTable {
        quiver: quiver.clone(),
        bound: bound.clone(),
        entries,
    })
}

/// `Ω_γ = a_γ(q)` for the tripled quiver.
pub fn dt_invariants(table: &KacTable) -> BTreeMap<DimensionVector, LaurentPolynomial> {
    table.entries.clone()
}

/// `Σ_γ a_γ(q)/(q - 1) · x^γ`, whose `sym` is `coha_char_nilp`.
pub fn hua_exponent(table: &KacTable) -> TruncatedSeries {
    let q_minus_one = &RationalFunction::q() - &RationalFunction::one();
    TruncatedSeries::from_terms(
        table.bound.clone(),
        table.entries.iter().map(|(g, a)| {
            (g.clone(), RationalFunction::from(a.clone()).checked_div(&q_minus_one).unwrap())
        }),
    )
}

/// `Σ_γ a_γ(q^{-1})/(q^{-1} - 1) · x^γ`, whose `sym` is `coha_char_nilp` with
/// `q` inverted.
pub fn dual_hua_exponent(table: &KacTable) -> TruncatedSeries {
    hua_exponent(table).substitute(Substitution::Power(-1))
}

/// Generator multiplicities indexed by `γ` and even weight `m`, defined by
/// `q · a_γ(q^{-1}) = Σ_m dim_{γ,m} q^{m/2}`.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct GeneratorTable {
    pub entries: BTreeMap<DimensionVector, BTreeMap<i64, BigInt>>,
}

pub fn generator_dims(table: &KacTable) -> Result<GeneratorTable, HuaError> {
    let mut entries = BTreeMap::new();
    for (gamma, a) in &table.entries {
        let mut row = BTreeMap::new();
        for (v_exp, c) in a.terms() {
            if c.is_zero() {
                continue;
            }
            // a is a polynomial in q, so v_exp = 2t
            let weight = 2 - v_exp;
            if c.is_negative() {
                return Err(HuaError::NegativeMultiplicity {
                    gamma: gamma.clone(),
                    weight,
                    value: c.clone(),
                });
            }
            row.insert(weight, c.clone());
        }
        entries.insert(gamma.clone(), row);
    }
    Ok(GeneratorTable { entries })
}

/// True iff no coefficient involves a genuine half-integral power of `q`.
pub fn verify_parity(series: &TruncatedSeries) -> bool {
    series.iter().all(|(_, c)| c.is_even())
}

/// True iff every coefficient expands around `q = ∞` as a series in `q^{-1}`
/// with nonnegative integer coefficients, checked on the first `n_terms`
/// terms of the expansion in `v^{-1}`.
pub fn verify_positive_expansion(series: &TruncatedSeries, n_terms: usize) -> bool {
    series.iter().all(|(_, c)| {
        c.expand_at_infinity(n_terms).iter().all(|(exp, coeff)| {
            if exp % 2 != 0 {
                coeff.is_zero()
            } else {
                coeff.is_integer() && !coeff.is_negative()
            }
        })
    })
}

/// Compares the Kac table of `quiver` with those of `trials` random
/// reorientations (each arrow flipped independently with probability 1/2).
pub fn verify_orientation_independence<R: Rng + ?Sized>(
    quiver: &Quiver,
    bound: &DimensionVector,
    trials: usize,
    rng: &mut R,
) -> Result<bool, HuaError> {
    let reference = kac_polynomials(quiver, bound)?;
    for _ in 0..trials {
        let flip = quiver
            .arrows()
            .iter()
            .filter(|_| rng.gen_bool(0.5))
            .map(|a| a.id.clone())
            .collect();
        let other = kac_polynomials(&quiver.reorient(&flip), bound)?;
        if other.entries != reference.entries {
            return Ok(false);
        }
    }
    Ok(true)
}
