//! Karatsuba evaluation domain for word-string polynomial products.
//!
//! An operand of `w` words is zero-padded to `leaf << depth` words and split
//! recursively into (low, high, low + high) halves until the pieces are at most
//! [`MAX_LEAF`] words. The `3^depth` pieces are the operand's evaluation.
//! Products become piecewise schoolbook products, and because every step is
//! linear, sums of products can be accumulated in the evaluation domain and
//! interpolated once.

use super::clmul::{dot_accumulate, MAX_LEAF};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct KaratsubaShape {
    words: usize,
    leaf: usize,
    depth: u32,
}

impl KaratsubaShape {
    pub fn new(words: usize) -> Self {
        let mut leaf = words.max(1);
        let mut depth = 0;
        while leaf > MAX_LEAF {
            leaf = leaf.div_ceil(2);
            depth += 1;
        }
        Self { words, leaf, depth }
    }

    pub fn words(&self) -> usize {
        self.words
    }
    pub fn leaf(&self) -> usize {
        self.leaf
    }
    pub fn leaves(&self) -> usize {
        3usize.pow(self.depth)
    }
    /// Padded operand length in words.
    pub fn padded(&self) -> usize {
        self.leaf << self.depth
    }
    /// Words in one evaluated operand.
    pub fn eval_len(&self) -> usize {
        self.leaves() * self.leaf
    }
    /// Accumulator slots per leaf product.
    pub fn slots(&self) -> usize {
        2 * self.leaf - 1
    }

    /// Evaluate `a` (at most `words` long) into `out` (`eval_len` words).
    pub fn evaluate(&self, a: &[u64], out: &mut [u64]) {
        assert!(a.len() <= self.padded());
        assert_eq!(out.len(), self.eval_len());
        let mut padded = vec![0u64; self.padded()];
        padded[..a.len()].copy_from_slice(a);
        let mut pos = 0;
        self.eval_rec(&padded, self.depth, out, &mut pos);
    }

    fn eval_rec(&self, a: &[u64], depth: u32, out: &mut [u64], pos: &mut usize) {
        if depth == 0 {
            out[*pos..*pos + self.leaf].copy_from_slice(a);
            *pos += self.leaf;
            return;
        }
        let (lo, hi) = a.split_at(a.len() / 2);
        self.eval_rec(lo, depth - 1, out, pos);
        self.eval_rec(hi, depth - 1, out, pos);
        let sum: Vec<u64> = lo.iter().zip(hi).map(|(x, y)| x ^ y).collect();
        self.eval_rec(&sum, depth - 1, out, pos);
    }

    /// Recombine per-leaf accumulators (`leaves * slots` entries, in
    /// evaluation order) into the full product of `2 * padded` words.
    pub fn interpolate(&self, acc: &[u128]) -> Vec<u64> {
        assert_eq!(acc.len(), self.leaves() * self.slots());
        self.interp_rec(acc, self.depth)
    }

    fn interp_rec(&self, acc: &[u128], depth: u32) -> Vec<u64> {
        if depth == 0 {
            let mut w = vec![0u64; 2 * self.leaf];
            for (s, &v) in acc.iter().enumerate() {
                w[s] ^= v as u64;
                w[s + 1] ^= (v >> 64) as u64;
            }
            return w;
        }
        let third = acc.len() / 3;
        let z0 = self.interp_rec(&acc[..third], depth - 1);
        let z2 = self.interp_rec(&acc[third..2 * third], depth - 1);
        let z1 = self.interp_rec(&acc[2 * third..], depth - 1);
        let h = self.leaf << (depth - 1);
        let mut out = vec![0u64; 4 * h];
        for t in 0..2 * h {
            out[t] ^= z0[t];
            out[t + 2 * h] ^= z2[t];
            out[t + h] ^= z0[t] ^ z1[t] ^ z2[t];
        }
        out
    }

    /// Full (unreduced) product of two operands of at most `words` words.
    pub fn multiply(&self, a: &[u64], b: &[u64]) -> Vec<u64> {
        let mut ea = vec![0u64; self.eval_len()];
        let mut eb = vec![0u64; self.eval_len()];
        self.evaluate(a, &mut ea);
        self.evaluate(b, &mut eb);
        let (l, s) = (self.leaf, self.slots());
        let mut acc = vec![0u128; self.leaves() * s];
        for t in 0..self.leaves() {
            dot_accumulate(l, &mut acc[t * s..(t + 1) * s], &ea[t * l..(t + 1) * l], &eb[t * l..(t + 1) * l]);
        }
        self.interpolate(&acc)
    }
}
