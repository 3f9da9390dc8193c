use std::fmt;

use super::{tail_mask, words_for};
use crate::error::{Error, Result};

/// Dense binary matrix, rows packed into `u64` words.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct DenseBitMatrix {
    rows: usize,
    cols: usize,
    stride: usize,
    data: Vec<u64>,
}

impl fmt::Debug for DenseBitMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "DenseBitMatrix {}x{}", self.rows, self.cols)?;
        for i in 0..self.rows.min(16) {
            let row: String = (0..self.cols.min(64)).map(|j| if self.get(i, j) { '1' } else { '.' }).collect();
            writeln!(f, "  {row}")?;
        }
        Ok(())
    }
}

impl DenseBitMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        let stride = words_for(cols).max(1);
        Self { rows, cols, stride, data: vec![0; rows * stride] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.set(i, i, true);
        }
        m
    }

    /// Build from a row-major 0/1 description.
    pub fn from_rows(rows: &[Vec<u8>]) -> Result<Self> {
        let cols = rows.first().map_or(0, |r| r.len());
        let mut m = Self::zeros(rows.len(), cols);
        for (i, r) in rows.iter().enumerate() {
            if r.len() != cols {
                return Err(Error::Dimension("ragged rows".into()));
            }
            for (j, &b) in r.iter().enumerate() {
                m.set(i, j, b & 1 == 1);
            }
        }
        Ok(m)
    }

    pub fn rows(&self) -> usize {
        self.rows
    }
    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> bool {
        assert!(i < self.rows && j < self.cols);
        self.data[i * self.stride + j / 64] >> (j % 64) & 1 == 1
    }

    pub fn set(&mut self, i: usize, j: usize, v: bool) {
        assert!(i < self.rows && j < self.cols);
        let w = &mut self.data[i * self.stride + j / 64];
        let m = 1u64 << (j % 64);
        if v {
            *w |= m;
        } else {
            *w &= !m;
        }
    }

    pub fn flip(&mut self, i: usize, j: usize) {
        assert!(i < self.rows && j < self.cols);
        self.data[i * self.stride + j / 64] ^= 1u64 << (j % 64);
    }

    pub fn row(&self, i: usize) -> &[u64] {
        &self.data[i * self.stride..(i + 1) * self.stride]
    }

    pub fn row_mut(&mut self, i: usize) -> &mut [u64] {
        &mut self.data[i * self.stride..(i + 1) * self.stride]
    }

    /// Overwrite row `i` from packed words; stray high bits are cleared.
    pub fn set_row_words(&mut self, i: usize, words: &[u64]) {
        let m = tail_mask(self.cols);
        let stride = self.stride;
        let row = self.row_mut(i);
        row.copy_from_slice(&words[..stride]);
        row[stride - 1] &= m;
    }

    fn xor_row_into(&mut self, src: usize, dst: usize) {
        let s = self.stride;
        let (a, b) = if src < dst {
            let (lo, hi) = self.data.split_at_mut(dst * s);
            (&lo[src * s..(src + 1) * s], &mut hi[..s])
        } else {
            let (lo, hi) = self.data.split_at_mut(src * s);
            (&hi[..s], &mut lo[dst * s..(dst + 1) * s])
        };
        b.iter_mut().zip(a).for_each(|(x, y)| *x ^= y);
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        let s = self.stride;
        for k in 0..s {
            self.data.swap(a * s + k, b * s + k);
        }
    }

    pub fn transpose(&self) -> Self {
        let mut t = Self::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                if self.get(i, j) {
                    t.set(j, i, true);
                }
            }
        }
        t
    }

    pub fn mul(&self, other: &Self) -> Result<Self> {
        if self.cols != other.rows {
            return Err(Error::Dimension(format!(
                "{}x{} times {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        let mut out = Self::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                if self.get(i, k) {
                    let src = other.row(k).to_vec();
                    out.row_mut(i).iter_mut().zip(&src).for_each(|(x, y)| *x ^= y);
                }
            }
        }
        Ok(out)
    }

    /// `M * v` for a packed column vector of `cols` bits.
    pub fn mul_vec(&self, v: &[u64]) -> Vec<bool> {
        (0..self.rows)
            .map(|i| self.row(i).iter().zip(v).fold(0u32, |acc, (a, b)| acc ^ (a & b).count_ones()) & 1 == 1)
            .collect()
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|&w| w == 0)
    }

    pub fn rank(&self) -> usize {
        let mut m = self.clone();
        let mut rank = 0;
        for c in 0..m.cols {
            let Some(piv) = (rank..m.rows).find(|&r| m.get(r, c)) else { continue };
            m.swap_rows(piv, rank);
            for r in 0..m.rows {
                if r != rank && m.get(r, c) {
                    m.xor_row_into(rank, r);
                }
            }
            rank += 1;
        }
        rank
    }

    /// Gauss-Jordan inverse.
    pub fn invert(&self) -> Result<Self> {
        if self.rows != self.cols {
            return Err(Error::Dimension(format!("{}x{} is not square", self.rows, self.cols)));
        }
        let n = self.rows;
        let mut a = self.clone();
        let mut inv = Self::identity(n);
        for c in 0..n {
            let piv = (c..n).find(|&r| a.get(r, c)).ok_or(Error::Singular)?;
            a.swap_rows(piv, c);
            inv.swap_rows(piv, c);
            for r in 0..n {
                if r != c && a.get(r, c) {
                    a.xor_row_into(c, r);
                    inv.xor_row_into(c, r);
                }
            }
        }
        Ok(inv)
    }

    /// `self + other` over GF(2).
    pub fn add(&self, other: &Self) -> Result<Self> {
        if self.rows != other.rows || self.cols != other.cols {
            return Err(Error::Dimension("shape mismatch in addition".into()));
        }
        let mut out = self.clone();
        out.data.iter_mut().zip(&other.data).for_each(|(x, y)| *x ^= y);
        Ok(out)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn identity_and_self_inverse() {
        let i = DenseBitMatrix::identity(5);
        assert_eq!(i.invert().unwrap(), i);
        let m = DenseBitMatrix::from_rows(&[vec![1, 1], vec![0, 1]]).unwrap();
        assert_eq!(m.invert().unwrap(), m);
    }

    #[test]
    fn singular_is_reported() {
        let m = DenseBitMatrix::from_rows(&[vec![1, 1], vec![1, 1]]).unwrap();
        assert_eq!(m.invert(), Err(Error::Singular));
        assert_eq!(m.rank(), 1);
        assert!(DenseBitMatrix::zeros(2, 3).invert().is_err());
    }

    #[test]
    fn random_inverses_multiply_back() {
        let mut x = 77u64;
        let mut found = 0;
        for n in [8usize, 8, 8, 70, 130] {
            for _ in 0..20 {
                let mut m = DenseBitMatrix::zeros(n, n);
                for i in 0..n {
                    for j in 0..n {
                        x ^= x << 13;
                        x ^= x >> 7;
                        x ^= x << 17;
                        m.set(i, j, x & 1 == 1);
                    }
                }
                match m.invert() {
                    Ok(inv) => {
                        found += 1;
                        assert_eq!(m.mul(&inv).unwrap(), DenseBitMatrix::identity(n));
                        assert_eq!(inv.mul(&m).unwrap(), DenseBitMatrix::identity(n));
                        assert_eq!(m.rank(), n);
                    }
                    Err(e) => {
                        assert_eq!(e, Error::Singular);
                        assert!(m.rank() < n);
                    }
                }
            }
        }
        assert!(found > 10);
    }
}
