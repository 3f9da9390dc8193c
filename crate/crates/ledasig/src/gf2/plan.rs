use super::karatsuba::KaratsubaShape;
use super::{dot_accumulate, BitPoly, QcMatrix, SparseVector};
use crate::error::{Error, Result};

/// A QC matrix pre-evaluated in the Karatsuba domain for repeated
/// column-vector products `A * v^T`.
///
/// Row `i` of the product is `rev(sum_j a_ij * rev(v_j))`, where `rev` maps
/// `f(x)` to `f(x^-1)`. The inner sum is accumulated leaf by leaf in the
/// evaluation domain, so each row costs one interpolation and one reduction.
#[derive(Clone, Debug)]
pub struct ColumnProductPlan {
    rows: usize,
    cols: usize,
    p: usize,
    shape: KaratsubaShape,
    // [row][leaf][col][leaf word]
    data: Vec<u64>,
}

impl ColumnProductPlan {
    pub fn new(m: &QcMatrix) -> Self {
        let (rows, cols, p) = (m.rows(), m.cols(), m.p());
        let shape = KaratsubaShape::new(BitPoly::zero(p).words().len());
        let (l, leaves) = (shape.leaf(), shape.leaves());
        let mut data = vec![0u64; rows * cols * shape.eval_len()];
        let mut tmp = vec![0u64; shape.eval_len()];
        for i in 0..rows {
            for j in 0..cols {
                shape.evaluate(m.block(i, j).words(), &mut tmp);
                for t in 0..leaves {
                    let dst = ((i * leaves + t) * cols + j) * l;
                    data[dst..dst + l].copy_from_slice(&tmp[t * l..(t + 1) * l]);
                }
            }
        }
        Self { rows, cols, p, shape, data }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }
    pub fn cols(&self) -> usize {
        self.cols
    }

    /// Product with a vector given as `cols` blocks.
    pub fn apply_blocks(&self, v: &[BitPoly]) -> Result<Vec<BitPoly>> {
        if v.len() != self.cols || v.iter().any(|b| b.p() != self.p) {
            return Err(Error::Dimension("vector blocks do not match the plan".into()));
        }
        let (l, leaves, slots) = (self.shape.leaf(), self.shape.leaves(), self.shape.slots());
        let cols = self.cols;
        let mut ev = vec![0u64; leaves * cols * l];
        let mut tmp = vec![0u64; self.shape.eval_len()];
        for (j, b) in v.iter().enumerate() {
            self.shape.evaluate(b.reverse().words(), &mut tmp);
            for t in 0..leaves {
                let dst = (t * cols + j) * l;
                ev[dst..dst + l].copy_from_slice(&tmp[t * l..(t + 1) * l]);
            }
        }
        let span = cols * l;
        let mut acc = vec![0u128; leaves * slots];
        let mut out = Vec::with_capacity(self.rows);
        for i in 0..self.rows {
            acc.iter_mut().for_each(|a| *a = 0);
            for t in 0..leaves {
                let h = &self.data[(i * leaves + t) * span..(i * leaves + t + 1) * span];
                let s = &ev[t * span..(t + 1) * span];
                dot_accumulate(l, &mut acc[t * slots..(t + 1) * slots], h, s);
            }
            let prod = self.shape.interpolate(&acc);
            out.push(BitPoly::fold(self.p, &prod).reverse());
        }
        Ok(out)
    }

    pub fn apply(&self, v: &SparseVector) -> Result<SparseVector> {
        if v.len() != self.cols * self.p {
            return Err(Error::Dimension(format!("vector length {} for {} block columns", v.len(), self.cols)));
        }
        Ok(SparseVector::from_blocks(&self.apply_blocks(&v.to_blocks(self.p)?)?))
    }
}
