//! Dense matrices over a prime field `F_p`, `p ≤ 97`.

use std::fmt;

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct FpMatrix {
    rows: usize,
    cols: usize,
    p: u32,
    data: Vec<u32>,
}

pub(crate) fn inv_mod(a: u32, p: u32) -> u32 {
    debug_assert!(a % p != 0);
    // Fermat
    let mut result = 1u64;
    let mut base = a as u64 % p as u64;
    let mut e = p - 2;
    while e > 0 {
        if e & 1 == 1 {
            result = result * base % p as u64;
        }
        base = base * base % p as u64;
        e >>= 1;
    }
    result as u32
}

impl FpMatrix {
    /// Entries are given row-major and reduced mod `p`.
    pub fn new(rows: usize, cols: usize, p: u32, entries: Vec<u32>) -> Self {
        assert_eq!(entries.len(), rows * cols, "entry count does not match shape");
        Self {
            rows,
            cols,
            p,
            data: entries.into_iter().map(|x| x % p).collect(),
        }
    }

    pub fn zero(rows: usize, cols: usize, p: u32) -> Self {
        Self {
            rows,
            cols,
            p,
            data: vec![0; rows * cols],
        }
    }

    pub fn identity(n: usize, p: u32) -> Self {
        let mut m = Self::zero(n, n, p);
        for i in 0..n {
            m.data[i * n + i] = 1;
        }
        m
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn prime(&self) -> u32 {
        self.p
    }

    pub fn entries(&self) -> &[u32] {
        &self.data
    }

    pub fn get(&self, i: usize, j: usize) -> u32 {
        self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, value: u32) {
        self.data[i * self.cols + j] = value % self.p;
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|&x| x == 0)
    }

    pub fn mul(&self, rhs: &FpMatrix) -> FpMatrix {
        assert_eq!(self.cols, rhs.rows, "shape mismatch in product");
        let p = self.p as u64;
        let mut out = FpMatrix::zero(self.rows, rhs.cols, self.p);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.data[i * self.cols + k] as u64;
                if a == 0 {
                    continue;
                }
                for j in 0..rhs.cols {
                    let idx = i * rhs.cols + j;
                    out.data[idx] = ((out.data[idx] as u64 + a * rhs.data[k * rhs.cols + j] as u64) % p) as u32;
                }
            }
        }
        out
    }

    pub fn add(&self, rhs: &FpMatrix) -> FpMatrix {
        assert_eq!((self.rows, self.cols), (rhs.rows, rhs.cols));
        let data = self.data.iter().zip(&rhs.data).map(|(a, b)| (a + b) % self.p).collect();
        FpMatrix { data, ..*self }
    }

    pub fn sub(&self, rhs: &FpMatrix) -> FpMatrix {
        assert_eq!((self.rows, self.cols), (rhs.rows, rhs.cols));
        let data = self
            .data
            .iter()
            .zip(&rhs.data)
            .map(|(a, b)| (a + self.p - b) % self.p)
            .collect();
        FpMatrix { data, ..*self }
    }

    pub fn scale(&self, c: u32) -> FpMatrix {
        let p = self.p as u64;
        let data = self.data.iter().map(|&a| (a as u64 * c as u64 % p) as u32).collect();
        FpMatrix { data, ..*self }
    }

    pub fn pow(&self, mut e: u32) -> FpMatrix {
        assert_eq!(self.rows, self.cols);
        let mut result = FpMatrix::identity(self.rows, self.p);
        let mut base = self.clone();
        while e > 0 {
            if e & 1 == 1 {
                result = result.mul(&base);
            }
            e >>= 1;
            if e > 0 {
                base = base.mul(&base);
            }
        }
        result
    }

    pub fn rank(&self) -> usize {
        let mut m = self.clone();
        row_reduce(&mut m.data, m.rows, m.cols, m.p).len()
    }

    /// Nilpotent iff `A^n = 0` for an `n × n` matrix.
    pub fn is_nilpotent(&self) -> bool {
        self.pow(self.rows as u32).is_zero()
    }

    pub fn is_invertible(&self) -> bool {
        self.rows == self.cols && self.rank() == self.rows
    }

    pub fn inverse(&self) -> Option<FpMatrix> {
        if self.rows != self.cols {
            return None;
        }
        let n = self.rows;
        let mut aug = vec![0u32; n * 2 * n];
        for i in 0..n {
            aug[i * 2 * n..i * 2 * n + n].copy_from_slice(&self.data[i * n..(i + 1) * n]);
            aug[i * 2 * n + n + i] = 1;
        }
        let pivots = row_reduce(&mut aug, n, 2 * n, self.p);
        if pivots.len() < n || pivots[n - 1] >= n {
            return None;
        }
        let mut out = FpMatrix::zero(n, n, self.p);
        for i in 0..n {
            out.data[i * n..(i + 1) * n].copy_from_slice(&aug[i * 2 * n + n..(i + 1) * 2 * n]);
        }
        Some(out)
    }
}

/// In-place reduced row echelon form of a row-major `rows × cols` array;
/// returns the pivot columns.
pub(crate) fn row_reduce(m: &mut [u32], rows: usize, cols: usize, p: u32) -> Vec<usize> {
    let pp = p as u64;
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..cols {
        if r == rows {
            break;
        }
        let Some(pr) = (r..rows).find(|&i| m[i * cols + c] != 0) else {
            continue;
        };
        if pr != r {
            for j in 0..cols {
                m.swap(pr * cols + j, r * cols + j);
            }
        }
        let inv = inv_mod(m[r * cols + c], p) as u64;
        for j in 0..cols {
            m[r * cols + j] = (m[r * cols + j] as u64 * inv % pp) as u32;
        }
        for i in 0..rows {
            let f = m[i * cols + c] as u64;
            if i == r || f == 0 {
                continue;
            }
            for j in 0..cols {
                let sub = f * m[r * cols + j] as u64 % pp;
                m[i * cols + j] = ((m[i * cols + j] as u64 + pp - sub) % pp) as u32;
            }
        }
        pivots.push(c);
        r += 1;
    }
    pivots
}

/// Basis of `{x : Mx = 0}` for a row-major `rows × cols` system.
pub(crate) fn nullspace(mut m: Vec<u32>, rows: usize, cols: usize, p: u32) -> Vec<Vec<u32>> {
    let pivots = row_reduce(&mut m, rows, cols, p);
    let mut is_pivot = vec![false; cols];
    for &c in &pivots {
        is_pivot[c] = true;
    }
    (0..cols)
        .filter(|&c| !is_pivot[c])
        .map(|free| {
            let mut x = vec![0u32; cols];
            x[free] = 1;
            for (r, &c) in pivots.iter().enumerate() {
                let v = m[r * cols + free];
                x[c] = (p - v) % p;
            }
            x
        })
        .collect()
}

impl fmt::Display for FpMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("[")?;
        for i in 0..self.rows {
            if i > 0 {
                f.write_str("; ")?;
            }
            let row: Vec<String> = (0..self.cols).map(|j| self.get(i, j).to_string()).collect();
            f.write_str(&row.join(" "))?;
        }
        write!(f, "] mod {}", self.p)
    }
}

impl fmt::Debug for FpMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn inverse_and_rank() {
        let a = FpMatrix::new(2, 2, 5, vec![1, 2, 3, 4]);
        let inv = a.inverse().unwrap();
        assert_eq!(a.mul(&inv), FpMatrix::identity(2, 5));
        assert_eq!(a.rank(), 2);
        let s = FpMatrix::new(2, 2, 3, vec![1, 2, 2, 1]);
        assert_eq!(s.rank(), 1);
        assert!(s.inverse().is_none());
        assert!(FpMatrix::zero(0, 0, 2).is_invertible());
    }

    #[test]
    fn nilpotency() {
        let j = FpMatrix::new(3, 3, 2, vec![0, 1, 0, 0, 0, 1, 0, 0, 0]);
        assert!(j.is_nilpotent());
        assert!(!FpMatrix::identity(2, 2).is_nilpotent());
        assert_eq!(j.pow(2).rank(), 1);
    }

    #[test]
    fn nullspace_basis() {
        // x + y + z = 0 over F_3
        let ns = nullspace(vec![1, 1, 1], 1, 3, 3);
        assert_eq!(ns, vec![vec![2, 1, 0], vec![2, 0, 1]]);
        assert_eq!(nullspace(vec![], 0, 2, 2).len(), 2);
    }
}
