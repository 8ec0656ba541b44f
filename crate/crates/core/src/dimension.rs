use std::fmt;
use std::str::FromStr;

use thiserror::Error;

/// A nonnegative integer vector indexed by the vertices `0..n` of a quiver.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct DimensionVector(Vec<u32>);

#[derive(Debug, Error, Clone, PartialEq, Eq)]
#[error("invalid dimension vector `{0}`")]
pub struct DimensionParseError(pub String);

impl DimensionVector {
    pub fn new(entries: Vec<u32>) -> Self {
        Self(entries)
    }

    pub fn zero(n: usize) -> Self {
        Self(vec![0; n])
    }

    pub fn unit(n: usize, i: usize) -> Self {
        let mut v = vec![0; n];
        v[i] = 1;
        Self(v)
    }

    pub fn constant(n: usize, value: u32) -> Self {
        Self(vec![value; n])
    }

    pub fn entries(&self) -> &[u32] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(|&x| x == 0)
    }

    pub fn total(&self) -> u64 {
        self.0.iter().map(|&x| x as u64).sum()
    }

    /// Componentwise `self <= other`.
    pub fn le(&self, other: &Self) -> bool {
        self.len() == other.len() && self.0.iter().zip(&other.0).all(|(a, b)| a <= b)
    }

    pub fn checked_sub(&self, other: &Self) -> Option<Self> {
        self.0
            .iter()
            .zip(&other.0)
            .map(|(a, b)| a.checked_sub(*b))
            .collect::<Option<Vec<_>>>()
            .map(Self)
    }

    pub fn scaled(&self, k: u32) -> Self {
        Self(self.0.iter().map(|x| x * k).collect())
    }

    /// All `0 <= gamma <= self` in lexicographic order (last vertex fastest).
    pub fn box_iter(&self) -> impl Iterator<Item = DimensionVector> + '_ {
        let size: usize = self.box_size();
        (0..size).map(move |k| self.unflatten(k))
    }

    pub fn box_size(&self) -> usize {
        self.0.iter().map(|&x| x as usize + 1).product()
    }

    /// Mixed-radix index of `gamma` inside the box `0..=self`.
    pub fn flatten(&self, gamma: &DimensionVector) -> usize {
        debug_assert!(gamma.le(self));
        self.0
            .iter()
            .zip(&gamma.0)
            .fold(0, |acc, (&bound, &g)| acc * (bound as usize + 1) + g as usize)
    }

    pub fn unflatten(&self, mut index: usize) -> DimensionVector {
        let mut out = vec![0; self.len()];
        for (slot, &bound) in out.iter_mut().zip(&self.0).rev() {
            let radix = bound as usize + 1;
            *slot = (index % radix) as u32;
            index /= radix;
        }
        DimensionVector(out)
    }

    /// Parses `n1,n2,...`; a single integer is replicated to `len` entries.
    pub fn parse_box(text: &str, len: usize) -> Result<Self, DimensionParseError> {
        let d: DimensionVector = text.parse()?;
        match d.len() {
            1 if len != 1 => Ok(Self(vec![d.0[0]; len])),
            n if n == len => Ok(d),
            _ => Err(DimensionParseError(format!(
                "{text} (expected {len} entries)"
            ))),
        }
    }
}

impl std::ops::Index<usize> for DimensionVector {
    type Output = u32;
    fn index(&self, i: usize) -> &u32 {
        &self.0[i]
    }
}

impl std::ops::Add for &DimensionVector {
    type Output = DimensionVector;
    fn add(self, rhs: &DimensionVector) -> DimensionVector {
        DimensionVector(self.0.iter().zip(&rhs.0).map(|(a, b)| a + b).collect())
    }
}

impl FromStr for DimensionVector {
    type Err = DimensionParseError;

    /// Accepts `2,1`, `(2,1)` or `[2, 1]`.
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let body = s
            .trim()
            .trim_start_matches(['(', '['])
            .trim_end_matches([')', ']']);
        if body.trim().is_empty() {
            return Ok(Self(Vec::new()));
        }
        body.split(',')
            .map(|t| t.trim().parse::<u32>())
            .collect::<Result<Vec<_>, _>>()
            .map(Self)
            .map_err(|_| DimensionParseError(s.to_string()))
    }
}

impl fmt::Display for DimensionVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("(")?;
        for (i, x) in self.0.iter().enumerate() {
            if i > 0 {
                f.write_str(",")?;
            }
            write!(f, "{x}")?;
        }
        f.write_str(")")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn box_indexing_round_trips() {
        let b = DimensionVector::new(vec![2, 0, 3]);
        assert_eq!(b.box_size(), 12);
        for (k, g) in b.box_iter().enumerate() {
            assert_eq!(b.flatten(&g), k);
            assert!(g.le(&b));
        }
        let all: Vec<_> = DimensionVector::new(vec![1, 1]).box_iter().collect();
        assert_eq!(all.iter().map(|g| g.to_string()).collect::<Vec<_>>(), ["(0,0)", "(0,1)", "(1,0)", "(1,1)"]);
    }

    #[test]
    fn box_syntax() {
        assert_eq!(DimensionVector::parse_box("3", 2).unwrap(), DimensionVector::new(vec![3, 3]));
        assert_eq!(DimensionVector::parse_box("1,2", 2).unwrap(), DimensionVector::new(vec![1, 2]));
        assert!(DimensionVector::parse_box("1,2,3", 2).is_err());
        assert!(DimensionVector::parse_box("x", 1).is_err());
        assert_eq!("(2,1)".parse::<DimensionVector>().unwrap(), DimensionVector::new(vec![2, 1]));
    }
}
