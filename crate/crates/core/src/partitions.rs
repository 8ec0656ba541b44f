//! Partitions and multipartitions: the index set of the Hua sum and of the
//! Jordan-type strata of nilpotent endomorphisms.
//!
//! The pairing `<λ, μ>` is `Σ_{i,j} min(λ_i, μ_j)`, the dimension of
//! `Hom(⊕ F[x]/x^{λ_i}, ⊕ F[x]/x^{μ_j})`. It coincides with the dot product
//! of conjugate partitions, not with the dot product of the parts themselves.

use std::cmp::Reverse;
use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use thiserror::Error;

use crate::algebra::LaurentPolynomial;
use crate::dimension::DimensionVector;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum PartitionError {
    #[error("partition parts must be positive")]
    ZeroPart,
    #[error("multipartitions have different dimension vectors: {0} vs {1}")]
    DimensionMismatch(DimensionVector, DimensionVector),
    #[error("cannot parse `{0}`")]
    Parse(String),
}

/// A weakly decreasing sequence of positive integers.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct Partition(Vec<u32>);

impl Partition {
    /// Sorts the parts into weakly decreasing order.
    pub fn new(mut parts: Vec<u32>) -> Result<Self, PartitionError> {
        if parts.contains(&0) {
            return Err(PartitionError::ZeroPart);
        }
        parts.sort_unstable_by(|a, b| b.cmp(a));
        Ok(Self(parts))
    }

    pub fn empty() -> Self {
        Self(Vec::new())
    }

    pub fn parts(&self) -> &[u32] {
        &self.0
    }

    pub fn num_parts(&self) -> usize {
        self.0.len()
    }

    pub fn weight(&self) -> u32 {
        self.0.iter().sum()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    /// `ψ_j`, the number of parts equal to `j`.
    pub fn multiplicity(&self, j: u32) -> u32 {
        self.0.iter().filter(|&&p| p == j).count() as u32
    }

    /// Nonzero multiplicities `j -> ψ_j`.
    pub fn multiplicities(&self) -> BTreeMap<u32, u32> {
        let mut m = BTreeMap::new();
        for &p in &self.0 {
            *m.entry(p).or_insert(0) += 1;
        }
        m
    }

    /// Transpose of the Young diagram.
    pub fn conjugate(&self) -> Partition {
        let Some(&largest) = self.0.first() else {
            return Partition::empty();
        };
        Partition(
            (1..=largest)
                .map(|k| self.0.iter().take_while(|&&p| p >= k).count() as u32)
                .collect(),
        )
    }

    /// Disjoint union of the parts.
    pub fn union(&self, other: &Partition) -> Partition {
        let mut parts = self.0.clone();
        parts.extend_from_slice(&other.0);
        Partition::new(parts).expect("parts are positive")
    }
}

impl fmt::Display for Partition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("[")?;
        for (i, p) in self.0.iter().enumerate() {
            if i > 0 {
                f.write_str(",")?;
            }
            write!(f, "{p}")?;
        }
        f.write_str("]")
    }
}

impl FromStr for Partition {
    type Err = PartitionError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let t = s.trim();
        let body = t
            .strip_prefix('[')
            .and_then(|r| r.strip_suffix(']'))
            .ok_or_else(|| PartitionError::Parse(s.to_string()))?;
        if body.trim().is_empty() {
            return Ok(Partition::empty());
        }
        let parts = body
            .split(',')
            .map(|x| x.trim().parse::<u32>())
            .collect::<Result<Vec<_>, _>>()
            .map_err(|_| PartitionError::Parse(s.to_string()))?;
        Partition::new(parts)
    }
}

/// All partitions of `n`, in reverse-lexicographic order (`[n]` first, `[1^n]` last).
pub fn partitions_of(n: u32) -> Vec<Partition> {
    fn rec(remaining: u32, max_part: u32, prefix: &mut Vec<u32>, out: &mut Vec<Partition>) {
        if remaining == 0 {
            out.push(Partition(prefix.clone()));
            return;
        }
        for part in (1..=max_part.min(remaining)).rev() {
            prefix.push(part);
            rec(remaining - part, part, prefix, out);
            prefix.pop();
        }
    }
    let mut out = Vec::new();
    rec(n, n, &mut Vec::new(), &mut out);
    out
}

/// `Σ_{i,j} min(λ_i, μ_j)`.
pub fn pairing(lambda: &Partition, mu: &Partition) -> u64 {
    let lm = lambda.multiplicities();
    let mm = mu.multiplicities();
    lm.iter()
        .flat_map(|(&n, &a)| mm.iter().map(move |(&m, &b)| n.min(m) as u64 * a as u64 * b as u64))
        .sum()
}

/// `Σ_k λ'_k μ'_k` over the conjugate partitions; equal to [`pairing`].
pub fn pairing_via_conjugates(lambda: &Partition, mu: &Partition) -> u64 {
    let lc = lambda.conjugate();
    let mc = mu.conjugate();
    lc.0.iter().zip(&mc.0).map(|(&a, &b)| a as u64 * b as u64).sum()
}

/// `Σ_n λ_n μ_n` over the parts. Not the pairing used anywhere in the engine;
/// kept so the difference from [`pairing`] can be demonstrated.
pub fn parts_dot_product(lambda: &Partition, mu: &Partition) -> u64 {
    lambda.0.iter().zip(&mu.0).map(|(&a, &b)| a as u64 * b as u64).sum()
}

/// Which argument `b_λ` is evaluated at.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum BArgument {
    Q,
    QInverse,
}

/// `b_λ(q) = ∏_j (1 - q)(1 - q^2)...(1 - q^{ψ_j})`, or the same at `q^{-1}`.
pub fn b_poly(lambda: &Partition, arg: BArgument) -> LaurentPolynomial {
    let sign = match arg {
        BArgument::Q => 1,
        BArgument::QInverse => -1,
    };
    let one = LaurentPolynomial::one();
    let mut out = LaurentPolynomial::one();
    for &psi in lambda.multiplicities().values() {
        for k in 1..=psi as i64 {
            out = &out * &(&one - &LaurentPolynomial::q_pow(sign * k));
        }
    }
    out
}

/// One partition per vertex.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Multipartition(Vec<Partition>);

impl Multipartition {
    pub fn new(components: Vec<Partition>) -> Self {
        Self(components)
    }

    pub fn components(&self) -> &[Partition] {
        &self.0
    }

    pub fn component(&self, vertex: usize) -> &Partition {
        &self.0[vertex]
    }

    /// `|π|`, the vector of component weights.
    pub fn dimension(&self) -> DimensionVector {
        DimensionVector::new(self.0.iter().map(Partition::weight).collect())
    }

    pub fn total_parts(&self) -> usize {
        self.0.iter().map(Partition::num_parts).sum()
    }
}

impl fmt::Display for Multipartition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("{")?;
        for (i, p) in self.0.iter().enumerate() {
            if i > 0 {
                f.write_str(", ")?;
            }
            write!(f, "v{i}:{p}")?;
        }
        f.write_str("}")
    }
}

impl FromStr for Multipartition {
    type Err = PartitionError;

    /// Parses `{v0:[2,1], v1:[1]}`. Every vertex from `v0` up to the largest
    /// mentioned index must appear exactly once.
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let err = || PartitionError::Parse(s.to_string());
        let body = s
            .trim()
            .strip_prefix('{')
            .and_then(|r| r.strip_suffix('}'))
            .ok_or_else(err)?;
        let mut entries: BTreeMap<usize, Partition> = BTreeMap::new();
        let mut rest = body.trim();
        while !rest.is_empty() {
            let (key, tail) = rest.split_once(':').ok_or_else(err)?;
            let vertex: usize = key.trim().strip_prefix('v').ok_or_else(err)?.parse().map_err(|_| err())?;
            let close = tail.find(']').ok_or_else(err)?;
            let partition: Partition = tail[..=close].parse()?;
            if entries.insert(vertex, partition).is_some() {
                return Err(err());
            }
            rest = tail[close + 1..].trim_start();
            rest = rest.strip_prefix(',').unwrap_or(rest).trim_start();
        }
        if entries.keys().enumerate().any(|(i, &k)| i != k) {
            return Err(err());
        }
        Ok(Multipartition(entries.into_values().collect()))
    }
}

/// Iterator over the multipartitions of a dimension vector, the cartesian
/// product of per-vertex [`partitions_of`] lists (last vertex fastest).
pub struct Multipartitions {
    lists: Vec<Vec<Partition>>,
    cursor: Option<Vec<usize>>,
}

impl Iterator for Multipartitions {
    type Item = Multipartition;

    fn next(&mut self) -> Option<Multipartition> {
        let cursor = self.cursor.as_mut()?;
        let item = Multipartition(
            cursor
                .iter()
                .zip(&self.lists)
                .map(|(&k, list)| list[k].clone())
                .collect(),
        );
        let mut i = cursor.len();
        loop {
            if i == 0 {
                self.cursor = None;
                break;
            }
            i -= 1;
            cursor[i] += 1;
            if cursor[i] < self.lists[i].len() {
                break;
            }
            cursor[i] = 0;
        }
        Some(item)
    }
}

pub fn multipartitions_of(gamma: &DimensionVector) -> Multipartitions {
    let lists: Vec<Vec<Partition>> = gamma.entries().iter().map(|&n| partitions_of(n)).collect();
    Multipartitions {
        cursor: Some(vec![0; lists.len()]),
        lists,
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum StratumOrder {
    Less,
    Greater,
    Equal,
    Incomparable,
}

/// True if the parts of `fine` can be grouped into blocks whose sums are
/// exactly the parts of `coarse` (a sum-compatible surjection of multisets).
pub fn refines(fine: &Partition, coarse: &Partition) -> bool {
    fn place(parts: &[u32], bins: &mut [u32]) -> bool {
        let Some((&part, rest)) = parts.split_first() else {
            return bins.iter().all(|&b| b == 0);
        };
        for i in 0..bins.len() {
            if bins[i] < part || bins[..i].contains(&bins[i]) {
                continue;
            }
            bins[i] -= part;
            if place(rest, bins) {
                return true;
            }
            bins[i] += part;
        }
        false
    }
    fine.weight() == coarse.weight()
        && fine.num_parts() >= coarse.num_parts()
        && place(&fine.0, &mut coarse.0.clone())
}

/// Refinement order on strata: `π < π'` when every component of `π` refines
/// the corresponding component of `π'`.
pub fn stratum_leq(pi: &Multipartition, other: &Multipartition) -> Result<StratumOrder, PartitionError> {
    let (d1, d2) = (pi.dimension(), other.dimension());
    if d1 != d2 {
        return Err(PartitionError::DimensionMismatch(d1, d2));
    }
    if pi == other {
        return Ok(StratumOrder::Equal);
    }
    let all = |a: &Multipartition, b: &Multipartition| a.0.iter().zip(&b.0).all(|(x, y)| refines(x, y));
    Ok(if all(pi, other) {
        StratumOrder::Less
    } else if all(other, pi) {
        StratumOrder::Greater
    } else {
        StratumOrder::Incomparable
    })
}

/// A linear extension of [`stratum_leq`]: more parts first, then per-vertex
/// part lists in lexicographic order.
pub fn linearize_strata(mut strata: Vec<Multipartition>) -> Vec<Multipartition> {
    strata.sort_by(|a, b| {
        Reverse(a.total_parts())
            .cmp(&Reverse(b.total_parts()))
            .then_with(|| a.0.cmp(&b.0))
    });
    strata
}
