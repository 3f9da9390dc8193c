use super::{BitPoly, DenseBitMatrix, SparseVector};
use crate::error::{Error, Result};

/// Grid of `p x p` circulant blocks, each held as its first row. The zero
/// polynomial stands for a null block.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct QcMatrix {
    rows: usize,
    cols: usize,
    p: usize,
    blocks: Vec<BitPoly>,
}

impl QcMatrix {
    pub fn zero(rows: usize, cols: usize, p: usize) -> Self {
        Self { rows, cols, p, blocks: vec![BitPoly::zero(p); rows * cols] }
    }

    pub fn identity(n: usize, p: usize) -> Self {
        let mut m = Self::zero(n, n, p);
        for i in 0..n {
            *m.block_mut(i, i) = BitPoly::one(p);
        }
        m
    }

    /// Row-major blocks.
    pub fn from_blocks(rows: usize, cols: usize, blocks: Vec<BitPoly>) -> Result<Self> {
        if blocks.len() != rows * cols || blocks.is_empty() {
            return Err(Error::Dimension(format!("{} blocks for a {rows}x{cols} grid", blocks.len())));
        }
        let p = blocks[0].p();
        if blocks.iter().any(|b| b.p() != p) {
            return Err(Error::Dimension("blocks of different sizes".into()));
        }
        Ok(Self { rows, cols, p, blocks })
    }

    pub fn rows(&self) -> usize {
        self.rows
    }
    pub fn cols(&self) -> usize {
        self.cols
    }
    pub fn p(&self) -> usize {
        self.p
    }
    pub fn blocks(&self) -> &[BitPoly] {
        &self.blocks
    }

    pub fn block(&self, i: usize, j: usize) -> &BitPoly {
        &self.blocks[i * self.cols + j]
    }

    pub fn block_mut(&mut self, i: usize, j: usize) -> &mut BitPoly {
        &mut self.blocks[i * self.cols + j]
    }

    /// Block-wise product: `(AB)_ij = sum_k A_ik B_kj`.
    pub fn mul(&self, other: &Self) -> Result<Self> {
        if self.cols != other.rows || self.p != other.p {
            return Err(Error::Dimension(format!(
                "{}x{} (p={}) times {}x{} (p={})",
                self.rows, self.cols, self.p, other.rows, other.cols, other.p
            )));
        }
        let mut out = Self::zero(self.rows, other.cols, self.p);
        for i in 0..self.rows {
            for j in 0..other.cols {
                let mut acc = BitPoly::zero(self.p);
                for k in 0..self.cols {
                    let (a, b) = (self.block(i, k), other.block(k, j));
                    if !a.is_zero() && !b.is_zero() {
                        acc.xor_assign(&a.mul(b)?);
                    }
                }
                *out.block_mut(i, j) = acc;
            }
        }
        Ok(out)
    }

    /// Column-vector product `A * v^T`, returned as a row vector. Block `i` is
    /// `sum_j a_ij(x^-1) v_j(x)`.
    pub fn mul_vec(&self, v: &SparseVector) -> Result<SparseVector> {
        if v.len() != self.cols * self.p {
            return Err(Error::Dimension(format!("vector length {} for {} block columns", v.len(), self.cols)));
        }
        let vb = v.to_blocks(self.p)?;
        let mut out = Vec::with_capacity(self.rows);
        for i in 0..self.rows {
            let mut acc = BitPoly::zero(self.p);
            for (j, b) in vb.iter().enumerate() {
                if !b.is_zero() && !self.block(i, j).is_zero() {
                    acc.xor_assign(&self.block(i, j).reverse().mul(b)?);
                }
            }
            out.push(acc);
        }
        Ok(SparseVector::from_blocks(&out))
    }

    /// Expand into the full `rows*p x cols*p` binary matrix.
    pub fn to_dense(&self) -> DenseBitMatrix {
        let p = self.p;
        let mut d = DenseBitMatrix::zeros(self.rows * p, self.cols * p);
        for i in 0..self.rows {
            for j in 0..self.cols {
                let b = self.block(i, j);
                for t in b.support() {
                    for a in 0..p {
                        d.set(i * p + a, j * p + (a + t) % p, true);
                    }
                }
            }
        }
        d
    }
}
