//! Brute-force counting over prime fields.
//!
//! Every representation of dimension `γ` over `F_p` is enumerated, its
//! endomorphism algebra `E` is found by Gaussian elimination, and all of `E`
//! is scanned. `E` is local iff every element is nilpotent or invertible; in
//! that case the nilpotent elements form the radical `J` and
//! `E/J ≅ F_{p^s}` with `p^s = |E|/|J|`. Absolute indecomposability is `s = 1`.
//! Orbits are counted through stabilizers: `|orbit(ρ)| = |GL_γ| / |Aut ρ|`.

mod fp;

pub use fp::FpMatrix;

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::One;
use rayon::prelude::*;
use thiserror::Error;

use crate::dimension::DimensionVector;
use crate::partitions::{Multipartition, Partition};
use crate::quiver::{Quiver, QuiverError};

pub const MAX_PRIME: u32 = 97;
pub const DEFAULT_ENUMERATION_BUDGET: u128 = 1 << 24;
pub const DEFAULT_ENDOMORPHISM_BUDGET: u128 = 1 << 20;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum OracleError {
    #[error("{0} is not a prime")]
    NotPrime(u32),
    #[error("prime {0} exceeds the supported bound {MAX_PRIME}")]
    PrimeTooLarge(u32),
    #[error("{what} needs {cost} steps, over the budget of {budget}")]
    BudgetExceeded { what: &'static str, cost: u128, budget: u128 },
    #[error(transparent)]
    Quiver(#[from] QuiverError),
    #[error("orbit sum {0} is not an integer")]
    NonIntegral(String),
    #[error("representation data does not fit the quiver: {0}")]
    Shape(String),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct OracleConfig {
    /// Maximum number of representations enumerated, `p^{Σ_a γ(s)γ(t)}`.
    pub enumeration_budget: u128,
    /// Maximum size `p^{dim End}` of a scanned endomorphism algebra.
    pub endomorphism_budget: u128,
}

impl Default for OracleConfig {
    fn default() -> Self {
        Self {
            enumeration_budget: DEFAULT_ENUMERATION_BUDGET,
            endomorphism_budget: DEFAULT_ENDOMORPHISM_BUDGET,
        }
    }
}

pub fn check_prime(p: u32) -> Result<(), OracleError> {
    if p < 2 || (2..p).take_while(|d| d * d <= p).any(|d| p % d == 0) {
        return Err(OracleError::NotPrime(p));
    }
    if p > MAX_PRIME {
        return Err(OracleError::PrimeTooLarge(p));
    }
    Ok(())
}

fn power(p: u32, e: u64) -> u128 {
    u32::try_from(e)
        .ok()
        .and_then(|e| (p as u128).checked_pow(e))
        .unwrap_or(u128::MAX)
}

/// `|GL_γ(F_p)| = ∏_i ∏_{k<γ(i)} (p^{γ(i)} - p^k)`.
pub fn gl_order(gamma: &DimensionVector, p: u32) -> BigInt {
    let p = BigInt::from(p);
    let mut out = BigInt::one();
    for &n in gamma.entries() {
        let top = p.pow(n);
        for k in 0..n {
            out *= &top - p.pow(k);
        }
    }
    out
}

/// A representation over `F_p`; `matrices[k]` belongs to the `k`-th arrow and
/// has shape `γ(t) × γ(s)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FpRepresentation<'q> {
    quiver: &'q Quiver,
    gamma: DimensionVector,
    p: u32,
    matrices: Vec<FpMatrix>,
}

impl<'q> FpRepresentation<'q> {
    pub fn new(
        quiver: &'q Quiver,
        gamma: DimensionVector,
        p: u32,
        matrices: Vec<FpMatrix>,
    ) -> Result<Self, OracleError> {
        quiver.check_dimension(&gamma)?;
        check_prime(p)?;
        if matrices.len() != quiver.arrows().len() {
            return Err(OracleError::Shape(format!(
                "{} matrices for {} arrows",
                matrices.len(),
                quiver.arrows().len()
            )));
        }
        for (a, m) in quiver.arrows().iter().zip(&matrices) {
            let shape = (gamma[a.target] as usize, gamma[a.source] as usize);
            if (m.rows(), m.cols()) != shape || m.prime() != p {
                return Err(OracleError::Shape(format!("arrow `{}` needs a {}x{} matrix mod {p}", a.id, shape.0, shape.1)));
            }
        }
        Ok(Self {
            quiver,
            gamma,
            p,
            matrices,
        })
    }

    pub fn quiver(&self) -> &Quiver {
        self.quiver
    }

    pub fn dimension(&self) -> &DimensionVector {
        &self.gamma
    }

    pub fn prime(&self) -> u32 {
        self.p
    }

    pub fn matrices(&self) -> &[FpMatrix] {
        &self.matrices
    }

    /// The representation whose matrix entries, read arrow by arrow in
    /// row-major order, are the base-`p` digits of `index` (least significant first).
    fn from_index(quiver: &'q Quiver, gamma: &DimensionVector, p: u32, mut index: u128) -> Self {
        let matrices = quiver
            .arrows()
            .iter()
            .map(|a| {
                let (r, c) = (gamma[a.target] as usize, gamma[a.source] as usize);
                let entries = (0..r * c)
                    .map(|_| {
                        let d = (index % p as u128) as u32;
                        index /= p as u128;
                        d
                    })
                    .collect();
                FpMatrix::new(r, c, p, entries)
            })
            .collect();
        Self {
            quiver,
            gamma: gamma.clone(),
            p,
            matrices,
        }
    }
}

/// Number of representations, `p^{Σ_a γ(s)γ(t)}`, checked against the budget.
fn enumeration_size(quiver: &Quiver, gamma: &DimensionVector, p: u32, config: &OracleConfig) -> Result<u128, OracleError> {
    quiver.check_dimension(gamma)?;
    check_prime(p)?;
    let cost = power(p, quiver.representation_dimension(gamma));
    if cost > config.enumeration_budget {
        return Err(OracleError::BudgetExceeded {
            what: "representation enumeration",
            cost,
            budget: config.enumeration_budget,
        });
    }
    Ok(cost)
}

/// Every representation of dimension `γ` over `F_p`, each exactly once.
pub fn enumerate_reps<'q>(
    quiver: &'q Quiver,
    gamma: &DimensionVector,
    p: u32,
    config: &OracleConfig,
) -> Result<impl Iterator<Item = FpRepresentation<'q>> + 'q, OracleError> {
    let total = enumeration_size(quiver, gamma, p, config)?;
    let gamma = gamma.clone();
    Ok((0..total).map(move |k| FpRepresentation::from_index(quiver, &gamma, p, k)))
}

/// An endomorphism: one square matrix per vertex.
pub type Endomorphism = Vec<FpMatrix>;

/// A basis of `End(ρ) = {f : f_{t(a)} ρ_a = ρ_a f_{s(a)} for all a}`.
pub fn endomorphism_basis(rep: &FpRepresentation<'_>) -> Vec<Endomorphism> {
    let p = rep.p;
    let dims: Vec<usize> = rep.gamma.entries().iter().map(|&n| n as usize).collect();
    let mut offset = vec![0usize; dims.len() + 1];
    for (i, &n) in dims.iter().enumerate() {
        offset[i + 1] = offset[i] + n * n;
    }
    let unknowns = offset[dims.len()];
    let var = |vertex: usize, r: usize, c: usize| offset[vertex] + r * dims[vertex] + c;

    let mut system: Vec<u32> = Vec::new();
    let mut rows = 0;
    for (a, rho) in rep.quiver.arrows().iter().zip(&rep.matrices) {
        let (s, t) = (a.source, a.target);
        for r in 0..dims[t] {
            for c in 0..dims[s] {
                let mut eq = vec![0u32; unknowns];
                // (f_t ρ)_{rc} = Σ_k f_t[r,k] ρ[k,c]
                for k in 0..dims[t] {
                    let x = &mut eq[var(t, r, k)];
                    *x = (*x + rho.get(k, c)) % p;
                }
                // -(ρ f_s)_{rc} = -Σ_k ρ[r,k] f_s[k,c]
                for k in 0..dims[s] {
                    let x = &mut eq[var(s, k, c)];
                    *x = (*x + p - rho.get(r, k)) % p;
                }
                system.extend(eq);
                rows += 1;
            }
        }
    }
    fp::nullspace(system, rows, unknowns, p)
        .into_iter()
        .map(|x| {
            (0..dims.len())
                .map(|i| FpMatrix::new(dims[i], dims[i], p, x[offset[i]..offset[i + 1]].to_vec()))
                .collect()
        })
        .collect()
}

/// Calls `visit` on every element of the span of `basis`.
fn for_each_element<F: FnMut(&[FpMatrix])>(basis: &[Endomorphism], dims: &[usize], p: u32, mut visit: F) {
    let d = basis.len();
    let mut coeffs = vec![0u32; d];
    let mut current: Vec<FpMatrix> = dims.iter().map(|&n| FpMatrix::zero(n, n, p)).collect();
    loop {
        visit(&current);
        // odometer step: bump the first digit that does not overflow and
        // update `current` incrementally
        let mut k = 0;
        loop {
            if k == d {
                return;
            }
            coeffs[k] += 1;
            if coeffs[k] < p {
                for (m, b) in current.iter_mut().zip(&basis[k]) {
                    *m = m.add(b);
                }
                break;
            }
            coeffs[k] = 0;
            // c·b_k with c = p - 1 wraps around to 0: add b_k once more
            for (m, b) in current.iter_mut().zip(&basis[k]) {
                *m = m.add(b);
            }
            k += 1;
        }
    }
}

/// Element counts of an endomorphism algebra.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Default)]
pub struct EndomorphismScan {
    pub dimension: usize,
    pub total: u128,
    pub nilpotent: u128,
    pub invertible: u128,
}

impl EndomorphismScan {
    pub fn is_local(&self) -> bool {
        self.nilpotent + self.invertible == self.total
    }

    /// Degree `s` of the residue field `F_{p^s}` when the algebra is local.
    pub fn residue_degree(&self, p: u32) -> Option<u32> {
        if !self.is_local() || self.nilpotent == 0 {
            return None;
        }
        let mut ratio = self.total / self.nilpotent;
        let mut s = 0;
        while ratio > 1 {
            ratio /= p as u128;
            s += 1;
        }
        Some(s)
    }
}

fn checked_scan_size(dim: usize, p: u32, config: &OracleConfig) -> Result<u128, OracleError> {
    let cost = power(p, dim as u64);
    if cost > config.endomorphism_budget {
        return Err(OracleError::BudgetExceeded {
            what: "endomorphism scan",
            cost,
            budget: config.endomorphism_budget,
        });
    }
    Ok(cost)
}

pub fn scan_endomorphisms(rep: &FpRepresentation<'_>, config: &OracleConfig) -> Result<EndomorphismScan, OracleError> {
    let basis = endomorphism_basis(rep);
    let total = checked_scan_size(basis.len(), rep.p, config)?;
    let dims: Vec<usize> = rep.gamma.entries().iter().map(|&n| n as usize).collect();
    let mut scan = EndomorphismScan {
        dimension: basis.len(),
        total,
        ..Default::default()
    };
    for_each_element(&basis, &dims, rep.p, |f| {
        if f.iter().all(FpMatrix::is_nilpotent) {
            scan.nilpotent += 1;
        } else if f.iter().all(FpMatrix::is_invertible) {
            scan.invertible += 1;
        }
    });
    // with γ = 0 the single element 0 = 1 is both
    if rep.gamma.is_zero() {
        scan.invertible = 1;
    }
    Ok(scan)
}

pub fn is_absolutely_indecomposable(rep: &FpRepresentation<'_>, config: &OracleConfig) -> Result<bool, OracleError> {
    let scan = scan_endomorphisms(rep, config)?;
    Ok(!rep.gamma.is_zero() && scan.residue_degree(rep.p) == Some(1))
}

/// Sums over all representations of dimension `γ`, before division by `|GL_γ|`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OracleCounts {
    pub representations: u128,
    pub gl_order: BigInt,
    /// `Σ |Aut ρ|` over absolutely indecomposable `ρ`
    pub abs_indecomposable_aut: u128,
    /// `Σ #{nilpotent f ∈ End ρ}`
    pub nilpotent_endomorphisms: u128,
    /// `Σ |End ρ|`
    pub endomorphisms: u128,
}

impl OracleCounts {
    pub fn absolutely_indecomposable(&self) -> Result<BigInt, OracleError> {
        let r = BigRational::new(BigInt::from(self.abs_indecomposable_aut), self.gl_order.clone());
        if r.is_integer() {
            Ok(r.to_integer())
        } else {
            Err(OracleError::NonIntegral(r.to_string()))
        }
    }

    pub fn nilpotent_pairs(&self) -> BigRational {
        BigRational::new(BigInt::from(self.nilpotent_endomorphisms), self.gl_order.clone())
    }

    pub fn all_pairs(&self) -> BigRational {
        BigRational::new(BigInt::from(self.endomorphisms), self.gl_order.clone())
    }
}

#[derive(Clone, Copy, Default)]
struct Tally {
    reps: u128,
    aut: u128,
    nilp: u128,
    end: u128,
}

impl Tally {
    fn merge(self, o: Tally) -> Tally {
        Tally {
            reps: self.reps + o.reps,
            aut: self.aut + o.aut,
            nilp: self.nilp + o.nilp,
            end: self.end + o.end,
        }
    }
}

/// One pass over all representations producing every count. Work is split
/// over the current rayon pool; the integer sums do not depend on the split.
pub fn count(quiver: &Quiver, gamma: &DimensionVector, p: u32, config: &OracleConfig) -> Result<OracleCounts, OracleError> {
    let total = enumeration_size(quiver, gamma, p, config)?;
    let nonzero = !gamma.is_zero();
    let tally = (0..total as u64)
        .into_par_iter()
        .try_fold(Tally::default, |acc, k| {
            let rep = FpRepresentation::from_index(quiver, gamma, p, k as u128);
            let s = scan_endomorphisms(&rep, config)?;
            let abs = nonzero && s.residue_degree(p) == Some(1);
            Ok::<_, OracleError>(acc.merge(Tally {
                reps: 1,
                aut: if abs { s.invertible } else { 0 },
                nilp: s.nilpotent,
                end: s.total,
            }))
        })
        .try_reduce(Tally::default, |a, b| Ok(a.merge(b)))?;
    Ok(OracleCounts {
        representations: tally.reps,
        gl_order: gl_order(gamma, p),
        abs_indecomposable_aut: tally.aut,
        nilpotent_endomorphisms: tally.nilp,
        endomorphisms: tally.end,
    })
}

/// Isomorphism classes of absolutely indecomposable representations.
pub fn count_absolutely_indecomposable(
    quiver: &Quiver,
    gamma: &DimensionVector,
    p: u32,
    config: &OracleConfig,
) -> Result<BigInt, OracleError> {
    count(quiver, gamma, p, config)?.absolutely_indecomposable()
}

/// `Σ_ρ #{nilpotent f ∈ End ρ} / |GL_γ|`.
pub fn count_nilpotent_pairs(
    quiver: &Quiver,
    gamma: &DimensionVector,
    p: u32,
    config: &OracleConfig,
) -> Result<BigRational, OracleError> {
    Ok(count(quiver, gamma, p, config)?.nilpotent_pairs())
}

/// `Σ_ρ |End ρ| / |GL_γ|`.
pub fn count_all_pairs(quiver: &Quiver, gamma: &DimensionVector, p: u32, config: &OracleConfig) -> Result<BigRational, OracleError> {
    Ok(count(quiver, gamma, p, config)?.all_pairs())
}

/// Jordan type of a nilpotent matrix, from the ranks of its powers.
pub fn jordan_type(f: &FpMatrix) -> Partition {
    let n = f.rows();
    let mut ranks = vec![n];
    let mut power = FpMatrix::identity(n, f.prime());
    while *ranks.last().unwrap() > 0 {
        power = power.mul(f);
        let r = power.rank();
        assert!(r < *ranks.last().unwrap(), "jordan_type requires a nilpotent matrix");
        ranks.push(r);
    }
    // ranks[k-1] - ranks[k] is the number of Jordan blocks of size ≥ k
    let conjugate: Vec<u32> = ranks.windows(2).map(|w| (w[0] - w[1]) as u32).collect();
    Partition::new(conjugate).unwrap().conjugate()
}

/// Nilpotent pairs `(ρ, f)` grouped by the vertexwise Jordan type of `f`,
/// each divided by `|GL_γ|`.
pub fn count_nilpotent_pairs_by_stratum(
    quiver: &Quiver,
    gamma: &DimensionVector,
    p: u32,
    config: &OracleConfig,
) -> Result<BTreeMap<Multipartition, BigRational>, OracleError> {
    let total = enumeration_size(quiver, gamma, p, config)?;
    let dims: Vec<usize> = gamma.entries().iter().map(|&n| n as usize).collect();
    let merge = |mut a: BTreeMap<Multipartition, u128>, b: BTreeMap<Multipartition, u128>| {
        for (k, v) in b {
            *a.entry(k).or_default() += v;
        }
        a
    };
    let counts = (0..total as u64)
        .into_par_iter()
        .try_fold(BTreeMap::new, |mut acc, k| {
            let rep = FpRepresentation::from_index(quiver, gamma, p, k as u128);
            let basis = endomorphism_basis(&rep);
            checked_scan_size(basis.len(), p, config)?;
            for_each_element(&basis, &dims, p, |f| {
                if f.iter().all(FpMatrix::is_nilpotent) {
                    let pi = Multipartition::new(f.iter().map(jordan_type).collect());
                    *acc.entry(pi).or_insert(0u128) += 1;
                }
            });
            Ok::<_, OracleError>(acc)
        })
        .try_reduce(BTreeMap::new, |a, b| Ok(merge(a, b)))?;
    let gl = gl_order(gamma, p);
    Ok(counts
        .into_iter()
        .map(|(pi, c)| (pi, BigRational::new(BigInt::from(c), gl.clone())))
        .collect())
}

/// Size of the `GL_γ(F_p)` orbit of `rep`, by applying every group element.
/// Only for tiny cases; used to cross-check the stabilizer computation.
pub fn orbit_size_by_expansion(rep: &FpRepresentation<'_>) -> usize {
    let p = rep.p;
    let dims: Vec<usize> = rep.gamma.entries().iter().map(|&n| n as usize).collect();
    // all invertible matrices per vertex, paired with their inverses
    let groups: Vec<Vec<(FpMatrix, FpMatrix)>> = dims
        .iter()
        .map(|&n| {
            let count = power(p, (n * n) as u64);
            (0..count)
                .filter_map(|mut k| {
                    let entries = (0..n * n)
                        .map(|_| {
                            let d = (k % p as u128) as u32;
                            k /= p as u128;
                            d
                        })
                        .collect();
                    let g = FpMatrix::new(n, n, p, entries);
                    g.inverse().map(|inv| (g, inv))
                })
                .collect()
        })
        .collect();
    let mut orbit = std::collections::HashSet::new();
    let mut choice = vec![0usize; dims.len()];
    loop {
        let image: Vec<FpMatrix> = rep
            .quiver
            .arrows()
            .iter()
            .zip(&rep.matrices)
            .map(|(a, m)| groups[a.target][choice[a.target]].0.mul(m).mul(&groups[a.source][choice[a.source]].1))
            .collect();
        orbit.insert(image);
        let mut i = 0;
        loop {
            if i == dims.len() {
                return orbit.len();
            }
            choice[i] += 1;
            if choice[i] < groups[i].len() {
                break;
            }
            choice[i] = 0;
            i += 1;
        }
    }
}
