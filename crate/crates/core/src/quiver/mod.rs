//! Quivers, the Ringel form, and the tripling construction `Q -> (Q~, W)`.

mod format;
mod potential;

pub use potential::{
    canonical_cut, cyclic_derivative, forget_tripling, jacobi_relations, shift_constants, triple, validate_cut,
    Cut, PathCombination, Potential, Tripled, LOOP_PREFIX, REVERSE_SUFFIX,
};

use std::collections::{BTreeSet, HashSet};

use rand::Rng;
use thiserror::Error;

use crate::dimension::DimensionVector;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum QuiverError {
    #[error("line {line}: {message}")]
    Parse { line: usize, message: String },
    #[error("arrow `{id}` references vertex {vertex}, but the quiver has {count} vertices")]
    DanglingEndpoint { id: String, vertex: usize, count: usize },
    #[error("duplicate arrow id `{0}`")]
    DuplicateArrow(String),
    #[error("invalid arrow id `{0}`")]
    InvalidArrowId(String),
    #[error("unknown arrow `{0}`")]
    UnknownArrow(String),
    #[error("dimension vector {0} does not match a quiver with {1} vertices")]
    DimensionMismatch(DimensionVector, usize),
    #[error("path {0} is not cyclically composable")]
    NotComposable(String),
    #[error("not a tripled quiver: {0}")]
    NotATripledQuiver(String),
    #[error("cut contains the vertex loop `{0}`")]
    ContainsLoopArrow(String),
    #[error("not a cut: some potential term does not contain exactly one cut arrow")]
    InvalidCut,
    #[error("shift identity violated: l = {l}, l' = {l_prime}")]
    IdentityViolated { l: i64, l_prime: i64 },
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Arrow {
    pub id: String,
    pub source: usize,
    pub target: usize,
}

impl Arrow {
    pub fn new(id: impl Into<String>, source: usize, target: usize) -> Self {
        Self {
            id: id.into(),
            source,
            target,
        }
    }

    pub fn is_loop(&self) -> bool {
        self.source == self.target
    }
}

/// A finite directed multigraph on the vertices `0..vertex_count`. Loops and
/// parallel arrows are allowed; arrow order is significant for serialization.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Quiver {
    vertex_count: usize,
    arrows: Vec<Arrow>,
}

fn valid_id(id: &str) -> bool {
    !id.is_empty() && !id.chars().any(|c| c.is_whitespace() || c == '#' || c == '·')
}

impl Quiver {
    pub fn new(vertex_count: usize, arrows: Vec<Arrow>) -> Result<Self, QuiverError> {
        let mut seen = HashSet::new();
        for a in &arrows {
            if !valid_id(&a.id) {
                return Err(QuiverError::InvalidArrowId(a.id.clone()));
            }
            for v in [a.source, a.target] {
                if v >= vertex_count {
                    return Err(QuiverError::DanglingEndpoint {
                        id: a.id.clone(),
                        vertex: v,
                        count: vertex_count,
                    });
                }
            }
            if !seen.insert(a.id.as_str()) {
                return Err(QuiverError::DuplicateArrow(a.id.clone()));
            }
        }
        Ok(Self { vertex_count, arrows })
    }

    /// One vertex, no arrows.
    pub fn point() -> Self {
        Self::loops(0)
    }

    /// One vertex with `g` loops; `g = 1` is the Jordan quiver.
    pub fn loops(g: usize) -> Self {
        let ids = ["a", "b", "c", "d", "e", "f", "g", "h"];
        let arrows = (0..g)
            .map(|k| {
                let id = ids.get(k).map_or_else(|| format!("l{k}"), |s| s.to_string());
                Arrow::new(id, 0, 0)
            })
            .collect();
        Self::new(1, arrows).unwrap()
    }

    pub fn jordan() -> Self {
        Self::loops(1)
    }

    /// Two vertices with `m` parallel arrows `0 -> 1`; `m = 2` is the Kronecker quiver.
    pub fn generalized_kronecker(m: usize) -> Self {
        let arrows = (0..m).map(|k| Arrow::new(format!("{}", (b'a' + k as u8) as char), 0, 1)).collect();
        Self::new(2, arrows).unwrap()
    }

    pub fn kronecker() -> Self {
        Self::generalized_kronecker(2)
    }

    /// `0 -> 1`.
    pub fn a2() -> Self {
        Self::generalized_kronecker(1)
    }

    /// A random quiver with exactly `vertices` vertices and `arrows` arrows
    /// (loops allowed), named `a0, a1, ...`.
    pub fn random<R: Rng + ?Sized>(rng: &mut R, vertices: usize, arrows: usize) -> Self {
        assert!(vertices > 0);
        let list = (0..arrows)
            .map(|k| Arrow::new(format!("a{k}"), rng.gen_range(0..vertices), rng.gen_range(0..vertices)))
            .collect();
        Self::new(vertices, list).unwrap()
    }

    pub fn vertex_count(&self) -> usize {
        self.vertex_count
    }

    pub fn arrows(&self) -> &[Arrow] {
        &self.arrows
    }

    pub fn arrow(&self, id: &str) -> Option<&Arrow> {
        self.arrows.iter().find(|a| a.id == id)
    }

    pub fn check_dimension(&self, gamma: &DimensionVector) -> Result<(), QuiverError> {
        if gamma.len() == self.vertex_count {
            Ok(())
        } else {
            Err(QuiverError::DimensionMismatch(gamma.clone(), self.vertex_count))
        }
    }

    /// `Σ_a γ(s(a)) γ(t(a))`, the dimension of the representation space.
    pub fn representation_dimension(&self, gamma: &DimensionVector) -> u64 {
        self.arrows
            .iter()
            .map(|a| gamma[a.source] as u64 * gamma[a.target] as u64)
            .sum()
    }

    /// `χ(γ, γ') = Σ_i γ(i)γ'(i) - Σ_a γ(s(a))γ'(t(a))`.
    pub fn ringel_form(&self, gamma: &DimensionVector, other: &DimensionVector) -> Result<i64, QuiverError> {
        self.check_dimension(gamma)?;
        self.check_dimension(other)?;
        let vertex: i64 = (0..self.vertex_count).map(|i| gamma[i] as i64 * other[i] as i64).sum();
        let arrow: i64 = self
            .arrows
            .iter()
            .map(|a| gamma[a.source] as i64 * other[a.target] as i64)
            .sum();
        Ok(vertex - arrow)
    }

    /// Reverses the arrows whose ids are in `flip`; unknown ids are ignored.
    pub fn reorient(&self, flip: &BTreeSet<String>) -> Quiver {
        let arrows = self
            .arrows
            .iter()
            .map(|a| {
                if flip.contains(&a.id) {
                    Arrow::new(a.id.clone(), a.target, a.source)
                } else {
                    a.clone()
                }
            })
            .collect();
        Quiver {
            vertex_count: self.vertex_count,
            arrows,
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::rngs::StdRng;
    use rand::SeedableRng;

    fn dv(v: &[u32]) -> DimensionVector {
        DimensionVector::new(v.to_vec())
    }

    #[test]
    fn ringel_form_examples() {
        let a2 = Quiver::a2();
        assert_eq!(a2.ringel_form(&dv(&[1, 0]), &dv(&[0, 1])).unwrap(), -1);
        let empty = Quiver::new(3, vec![]).unwrap();
        assert_eq!(empty.ringel_form(&dv(&[1, 2, 3]), &dv(&[1, 2, 3])).unwrap(), 14);
        assert_eq!(Quiver::jordan().ringel_form(&dv(&[2]), &dv(&[2])).unwrap(), 0);
        assert!(matches!(
            a2.ringel_form(&dv(&[1]), &dv(&[1, 1])),
            Err(QuiverError::DimensionMismatch(..))
        ));
    }

    #[test]
    fn ringel_form_is_bilinear() {
        let mut rng = StdRng::seed_from_u64(7);
        for _ in 0..50 {
            let n = rng.gen_range(1..=4);
            let m = rng.gen_range(0..=6);
            let q = Quiver::random(&mut rng, n, m);
            let r = |rng: &mut StdRng| DimensionVector::new((0..n).map(|_| rng.gen_range(0..4)).collect());
            let (x, y, z) = (r(&mut rng), r(&mut rng), r(&mut rng));
            let xy = &x + &y;
            assert_eq!(
                q.ringel_form(&xy, &z).unwrap(),
                q.ringel_form(&x, &z).unwrap() + q.ringel_form(&y, &z).unwrap()
            );
            assert_eq!(
                q.ringel_form(&z, &xy).unwrap(),
                q.ringel_form(&z, &x).unwrap() + q.ringel_form(&z, &y).unwrap()
            );
        }
    }

    #[test]
    fn validation() {
        assert!(matches!(
            Quiver::new(2, vec![Arrow::new("a", 0, 5)]),
            Err(QuiverError::DanglingEndpoint { vertex: 5, .. })
        ));
        assert!(matches!(
            Quiver::new(1, vec![Arrow::new("a", 0, 0), Arrow::new("a", 0, 0)]),
            Err(QuiverError::DuplicateArrow(_))
        ));
        assert!(matches!(Quiver::new(1, vec![Arrow::new("a b", 0, 0)]), Err(QuiverError::InvalidArrowId(_))));
    }

    #[test]
    fn reorientation() {
        let a2 = Quiver::a2();
        let flipped = a2.reorient(&BTreeSet::from(["a".to_string()]));
        assert_eq!(flipped.arrows()[0], Arrow::new("a", 1, 0));
        assert_eq!(a2.reorient(&BTreeSet::new()), a2);
        let j = Quiver::jordan();
        assert_eq!(j.reorient(&BTreeSet::from(["a".to_string()])), j);
    }
}
