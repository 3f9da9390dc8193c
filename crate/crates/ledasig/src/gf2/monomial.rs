use super::sparse::BitAccumulator;
use super::{BitPoly, QcMatrix, SparseVector};
use crate::error::{Error, Result};

/// Quasi-cyclic matrix whose non-null blocks are monomials `x^t`, stored per
/// block row as `(block column, exponent)` pairs.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MonomialQc {
    rows: usize,
    cols: usize,
    p: usize,
    entries: Vec<Vec<(usize, usize)>>,
}

impl MonomialQc {
    pub fn new(cols: usize, p: usize, entries: Vec<Vec<(usize, usize)>>) -> Result<Self> {
        for row in &entries {
            let mut seen: Vec<usize> = row.iter().map(|e| e.0).collect();
            seen.sort_unstable();
            if seen.windows(2).any(|w| w[0] == w[1]) {
                return Err(Error::Dimension("two monomials in one block".into()));
            }
            if row.iter().any(|&(c, t)| c >= cols || t >= p) {
                return Err(Error::Dimension("monomial entry out of range".into()));
            }
        }
        Ok(Self { rows: entries.len(), cols, p, entries })
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
    pub fn row(&self, i: usize) -> &[(usize, usize)] {
        &self.entries[i]
    }

    /// The transpose: block `(j, i)` becomes `x^-t`.
    pub fn transpose(&self) -> Self {
        let mut entries = vec![Vec::new(); self.cols];
        for (i, row) in self.entries.iter().enumerate() {
            for &(j, t) in row {
                entries[j].push((i, (self.p - t) % self.p));
            }
        }
        Self { rows: self.cols, cols: self.rows, p: self.p, entries }
    }

    pub fn to_qc(&self) -> QcMatrix {
        let mut m = QcMatrix::zero(self.rows, self.cols, self.p);
        for (i, row) in self.entries.iter().enumerate() {
            for &(j, t) in row {
                *m.block_mut(i, j) = BitPoly::monomial(self.p, t);
            }
        }
        m
    }

    /// Row-vector product `v * M`.
    pub fn row_apply(&self, v: &SparseVector) -> Result<SparseVector> {
        let p = self.p;
        if v.len() != self.rows * p {
            return Err(Error::Dimension(format!("vector length {} for {} block rows", v.len(), self.rows)));
        }
        let mut acc = BitAccumulator::new(self.cols * p);
        for &pos in v.support() {
            let (i, o) = (pos / p, pos % p);
            for &(j, t) in &self.entries[i] {
                acc.flip(j * p + (o + t) % p);
            }
        }
        Ok(acc.finish())
    }

    /// Column-vector product `M * v^T`, returned as a row vector.
    pub fn col_apply(&self, v: &SparseVector) -> Result<SparseVector> {
        self.transpose().row_apply(v)
    }
}

/// Block permutation with per-block cyclic shifts. Position `i*p + j` maps to
/// `block_perm[i]*p + (j + rotations[i]) mod p`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GenPermutation {
    p: usize,
    block_perm: Vec<usize>,
    rotations: Vec<usize>,
}

impl GenPermutation {
    pub fn new(p: usize, block_perm: Vec<usize>, rotations: Vec<usize>) -> Result<Self> {
        let b = block_perm.len();
        if rotations.len() != b || rotations.iter().any(|&r| r >= p) {
            return Err(Error::Dimension("rotation list does not match the permutation".into()));
        }
        let mut seen = vec![false; b];
        for &x in &block_perm {
            if x >= b || std::mem::replace(&mut seen[x], true) {
                return Err(Error::Dimension("block map is not a bijection".into()));
            }
        }
        Ok(Self { p, block_perm, rotations })
    }

    pub fn identity(blocks: usize, p: usize) -> Self {
        Self { p, block_perm: (0..blocks).collect(), rotations: vec![0; blocks] }
    }

    pub fn blocks(&self) -> usize {
        self.block_perm.len()
    }

    pub fn block_perm(&self) -> &[usize] {
        &self.block_perm
    }

    pub fn rotations(&self) -> &[usize] {
        &self.rotations
    }

    pub fn map_index(&self, pos: usize) -> usize {
        let (i, j) = (pos / self.p, pos % self.p);
        self.block_perm[i] * self.p + (j + self.rotations[i]) % self.p
    }

    fn check(&self, v: &SparseVector) -> Result<()> {
        if v.len() != self.blocks() * self.p {
            return Err(Error::Dimension(format!("vector length {} for {} blocks", v.len(), self.blocks())));
        }
        Ok(())
    }

    pub fn apply(&self, v: &SparseVector) -> Result<SparseVector> {
        self.check(v)?;
        SparseVector::from_support(v.len(), v.support().iter().map(|&i| self.map_index(i)).collect())
    }

    /// Applies the transpose, which is the inverse.
    pub fn transpose_apply(&self, v: &SparseVector) -> Result<SparseVector> {
        self.check(v)?;
        let mut inv = vec![0usize; self.blocks()];
        for (i, &b) in self.block_perm.iter().enumerate() {
            inv[b] = i;
        }
        let p = self.p;
        let out = v
            .support()
            .iter()
            .map(|&pos| {
                let (b, j) = (pos / p, pos % p);
                let i = inv[b];
                i * p + (j + p - self.rotations[i]) % p
            })
            .collect();
        SparseVector::from_support(v.len(), out)
    }

    /// The permutation as a monomial matrix acting by row-vector product.
    pub fn to_monomial(&self) -> MonomialQc {
        let entries = self.block_perm.iter().zip(&self.rotations).map(|(&b, &r)| vec![(b, r)]).collect();
        MonomialQc { rows: self.blocks(), cols: self.blocks(), p: self.p, entries }
    }
}
