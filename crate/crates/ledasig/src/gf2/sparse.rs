use super::{words_for, BitPoly};
use crate::error::{Error, Result};

/// Bit vector stored by its sorted support.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct SparseVector {
    len: usize,
    support: Vec<usize>,
}

impl SparseVector {
    pub fn zero(len: usize) -> Self {
        Self { len, support: Vec::new() }
    }

    /// Positions may arrive in any order; duplicates and out-of-range
    /// positions are rejected.
    pub fn from_support(len: usize, mut support: Vec<usize>) -> Result<Self> {
        support.sort_unstable();
        if support.windows(2).any(|w| w[0] == w[1]) {
            return Err(Error::Dimension("repeated support position".into()));
        }
        if support.last().is_some_and(|&i| i >= len) {
            return Err(Error::Dimension(format!("support position outside length {len}")));
        }
        Ok(Self { len, support })
    }

    /// From packed little-endian words holding `len` bits.
    pub fn from_words(len: usize, words: &[u64]) -> Self {
        let mut support = Vec::new();
        for (wi, &w) in words.iter().enumerate().take(words_for(len)) {
            let mut w = w;
            while w != 0 {
                let i = wi * 64 + w.trailing_zeros() as usize;
                if i < len {
                    support.push(i);
                }
                w &= w - 1;
            }
        }
        Self { len, support }
    }

    pub fn to_words(&self) -> Vec<u64> {
        let mut out = vec![0u64; words_for(self.len)];
        for &i in &self.support {
            out[i / 64] |= 1u64 << (i % 64);
        }
        out
    }

    pub fn len(&self) -> usize {
        self.len
    }

    pub fn is_empty(&self) -> bool {
        self.support.is_empty()
    }

    pub fn weight(&self) -> usize {
        self.support.len()
    }

    pub fn support(&self) -> &[usize] {
        &self.support
    }

    pub fn contains(&self, i: usize) -> bool {
        self.support.binary_search(&i).is_ok()
    }

    /// Copy with bit `i` toggled.
    pub fn flipped(&self, i: usize) -> Self {
        assert!(i < self.len);
        let mut support = self.support.clone();
        match support.binary_search(&i) {
            Ok(k) => {
                support.remove(k);
            }
            Err(k) => support.insert(k, i),
        }
        Self { len: self.len, support }
    }

    /// XOR of two equal-length vectors.
    pub fn add(&self, other: &Self) -> Result<Self> {
        if self.len != other.len {
            return Err(Error::Dimension(format!("length {} vs {}", self.len, other.len)));
        }
        let (a, b) = (&self.support, &other.support);
        let (mut i, mut j) = (0, 0);
        let mut out = Vec::with_capacity(a.len() + b.len());
        while i < a.len() && j < b.len() {
            match a[i].cmp(&b[j]) {
                std::cmp::Ordering::Less => {
                    out.push(a[i]);
                    i += 1;
                }
                std::cmp::Ordering::Greater => {
                    out.push(b[j]);
                    j += 1;
                }
                std::cmp::Ordering::Equal => {
                    i += 1;
                    j += 1;
                }
            }
        }
        out.extend_from_slice(&a[i..]);
        out.extend_from_slice(&b[j..]);
        Ok(Self { len: self.len, support: out })
    }

    /// Split into consecutive length-`p` blocks.
    pub fn to_blocks(&self, p: usize) -> Result<Vec<BitPoly>> {
        if p == 0 || self.len % p != 0 {
            return Err(Error::Dimension(format!("length {} is not a multiple of {p}", self.len)));
        }
        let mut blocks = vec![BitPoly::zero(p); self.len / p];
        for &i in &self.support {
            blocks[i / p].flip(i % p);
        }
        Ok(blocks)
    }

    pub fn from_blocks(blocks: &[BitPoly]) -> Self {
        let p = blocks.first().map_or(1, |b| b.p());
        let mut support = Vec::new();
        for (bi, b) in blocks.iter().enumerate() {
            support.extend(b.support().into_iter().map(|o| bi * p + o));
        }
        Self { len: blocks.len() * p, support }
    }

    /// Hamming weight of each length-`p` block.
    pub fn block_weights(&self, p: usize) -> Vec<usize> {
        let mut w = vec![0usize; self.len.div_ceil(p)];
        for &i in &self.support {
            w[i / p] += 1;
        }
        w
    }
}

/// Toggle-accumulator for building vectors with cancellation.
pub(crate) struct BitAccumulator {
    len: usize,
    words: Vec<u64>,
}

impl BitAccumulator {
    pub(crate) fn new(len: usize) -> Self {
        Self { len, words: vec![0; words_for(len)] }
    }

    #[inline]
    pub(crate) fn flip(&mut self, i: usize) {
        self.words[i / 64] ^= 1u64 << (i % 64);
    }

    pub(crate) fn finish(self) -> SparseVector {
        SparseVector::from_words(self.len, &self.words)
    }
}
