//! Deterministic random bit generator and the sampling primitives built on it.
//!
//! The generator is SHAKE256 absorbing a length-prefixed domain label followed
//! by the seed; output is read in fixed order, so every draw is reproducible.

use std::collections::HashMap;

use sha3::digest::{ExtendableOutput, Update, XofReader};
use sha3::Shake256;

use crate::gf2::DenseBitMatrix;

const BUF: usize = 136 * 4;

pub struct Drbg {
    reader: <Shake256 as ExtendableOutput>::Reader,
    buf: [u8; BUF],
    pos: usize,
}

impl Drbg {
    pub fn new(domain: &[u8], seed: &[u8]) -> Self {
        let mut h = Shake256::default();
        h.update(&[domain.len() as u8]);
        h.update(domain);
        h.update(seed);
        Self { reader: h.finalize_xof(), buf: [0; BUF], pos: BUF }
    }

    pub fn fill(&mut self, out: &mut [u8]) {
        let mut done = 0;
        while done < out.len() {
            if self.pos == BUF {
                self.reader.read(&mut self.buf);
                self.pos = 0;
            }
            let n = (BUF - self.pos).min(out.len() - done);
            out[done..done + n].copy_from_slice(&self.buf[self.pos..self.pos + n]);
            self.pos += n;
            done += n;
        }
    }

    pub fn next_u64(&mut self) -> u64 {
        let mut b = [0u8; 8];
        self.fill(&mut b);
        u64::from_le_bytes(b)
    }

    /// Uniform integer in `[0, n)` by masked rejection sampling.
    pub fn below(&mut self, n: u64) -> u64 {
        assert!(n > 0);
        if n == 1 {
            return 0;
        }
        let mask = u64::MAX >> (n - 1).leading_zeros();
        loop {
            let x = self.next_u64() & mask;
            if x < n {
                return x;
            }
        }
    }

    /// `y` distinct values from `[0, x)` in draw order (partial Fisher-Yates
    /// over a virtual identity array).
    pub fn rand_gen(&mut self, x: usize, y: usize) -> Vec<usize> {
        assert!(y <= x, "cannot draw {y} distinct values below {x}");
        let mut moved: HashMap<usize, usize> = HashMap::with_capacity(2 * y);
        let mut out = Vec::with_capacity(y);
        for i in 0..y {
            let j = i + self.below((x - i) as u64) as usize;
            let vi = moved.get(&i).copied().unwrap_or(i);
            let vj = moved.get(&j).copied().unwrap_or(j);
            moved.insert(j, vi);
            out.push(vj);
        }
        out
    }

    /// Uniform permutation of `[0, n)` (Fisher-Yates).
    pub fn perm_gen(&mut self, n: usize) -> Vec<usize> {
        let mut v: Vec<usize> = (0..n).collect();
        for i in (1..n).rev() {
            let j = self.below(i as u64 + 1) as usize;
            v.swap(i, j);
        }
        v
    }

    /// Uniform binary matrix.
    pub fn matr_gen(&mut self, rows: usize, cols: usize) -> DenseBitMatrix {
        let mut m = DenseBitMatrix::zeros(rows, cols);
        let words = cols.div_ceil(64).max(1);
        for i in 0..rows {
            let row: Vec<u64> = (0..words).map(|_| self.next_u64()).collect();
            m.set_row_words(i, &row);
        }
        m
    }
}
