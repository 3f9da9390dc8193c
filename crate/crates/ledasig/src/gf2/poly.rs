use std::fmt;

use super::karatsuba::KaratsubaShape;
use super::{tail_mask, window, words_for, xor_shl};
use crate::error::{Error, Result};

/// Element of GF(2)\[x\]/(x^p + 1), equivalently the first row of a `p x p`
/// binary circulant matrix.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct BitPoly {
    p: usize,
    words: Vec<u64>,
}

impl fmt::Debug for BitPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "BitPoly(p={}, support={:?})", self.p, self.support())
    }
}

impl BitPoly {
    pub fn zero(p: usize) -> Self {
        assert!(p > 0, "modulus degree must be positive");
        Self { p, words: vec![0; words_for(p)] }
    }

    pub fn one(p: usize) -> Self {
        Self::monomial(p, 0)
    }

    /// `x^(t mod p)`.
    pub fn monomial(p: usize, t: usize) -> Self {
        let mut a = Self::zero(p);
        a.flip(t % p);
        a
    }

    /// `1 + x + ... + x^(p-1)`, the first row of the all-ones block.
    pub fn all_ones(p: usize) -> Self {
        let mut a = Self::zero(p);
        a.words.iter_mut().for_each(|w| *w = u64::MAX);
        a.clear_tail();
        a
    }

    /// Polynomial with the given coefficients set. Repeated positions cancel.
    pub fn from_support(p: usize, support: &[usize]) -> Result<Self> {
        let mut a = Self::zero(p);
        for &i in support {
            if i >= p {
                return Err(Error::Dimension(format!("coefficient {i} outside p = {p}")));
            }
            a.flip(i);
        }
        Ok(a)
    }

    /// Wrap packed words, rejecting wrong lengths and stray high bits.
    pub fn from_words(p: usize, words: Vec<u64>) -> Result<Self> {
        if p == 0 || words.len() != words_for(p) {
            return Err(Error::Dimension(format!("{} words for p = {p}", words.len())));
        }
        if words.last().is_some_and(|&w| w & !tail_mask(p) != 0) {
            return Err(Error::Format("bits set beyond the block length".into()));
        }
        Ok(Self { p, words })
    }

    pub fn p(&self) -> usize {
        self.p
    }

    pub fn words(&self) -> &[u64] {
        &self.words
    }

    pub(crate) fn clear_tail(&mut self) {
        let m = tail_mask(self.p);
        if let Some(w) = self.words.last_mut() {
            *w &= m;
        }
    }

    pub fn coeff(&self, i: usize) -> bool {
        self.words[i / 64] >> (i % 64) & 1 == 1
    }

    pub fn set(&mut self, i: usize, v: bool) {
        assert!(i < self.p);
        let m = 1u64 << (i % 64);
        if v {
            self.words[i / 64] |= m;
        } else {
            self.words[i / 64] &= !m;
        }
    }

    pub fn flip(&mut self, i: usize) {
        assert!(i < self.p);
        self.words[i / 64] ^= 1u64 << (i % 64);
    }

    pub fn weight(&self) -> usize {
        self.words.iter().map(|w| w.count_ones() as usize).sum()
    }

    pub fn parity(&self) -> bool {
        self.words.iter().fold(0, |acc, w| acc ^ w).count_ones() & 1 == 1
    }

    pub fn is_zero(&self) -> bool {
        self.words.iter().all(|&w| w == 0)
    }

    pub fn support(&self) -> Vec<usize> {
        let mut out = Vec::with_capacity(self.weight());
        for (wi, &w) in self.words.iter().enumerate() {
            let mut w = w;
            while w != 0 {
                out.push(wi * 64 + w.trailing_zeros() as usize);
                w &= w - 1;
            }
        }
        out
    }

    fn check_same(&self, other: &Self) -> Result<()> {
        if self.p != other.p {
            return Err(Error::Dimension(format!("p = {} vs p = {}", self.p, other.p)));
        }
        Ok(())
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.check_same(other)?;
        let mut out = self.clone();
        out.xor_assign(other);
        Ok(out)
    }

    /// In-place XOR; panics on mismatched `p`.
    pub fn xor_assign(&mut self, other: &Self) {
        assert_eq!(self.p, other.p);
        self.words.iter_mut().zip(&other.words).for_each(|(a, b)| *a ^= b);
    }

    /// `self * other mod x^p + 1`.
    ///
    /// Operands with weight at most `p / 32` use support convolution; dense
    /// pairs go through the Karatsuba carry-less product.
    pub fn mul(&self, other: &Self) -> Result<Self> {
        self.check_same(other)?;
        let (wa, wb) = (self.weight(), other.weight());
        let thresh = self.p / 32;
        if wa.min(wb) <= thresh {
            let (sparse, dense) = if wa <= wb { (self, other) } else { (other, self) };
            let mut out = Self::zero(self.p);
            for t in sparse.support() {
                out.xor_rotated(dense, t);
            }
            return Ok(out);
        }
        let shape = KaratsubaShape::new(self.words.len());
        let prod = shape.multiply(&self.words, &other.words);
        Ok(Self::fold(self.p, &prod))
    }

    /// Reduce an unreduced product (degree below `2p`) modulo `x^p + 1`.
    pub(crate) fn fold(p: usize, prod: &[u64]) -> Self {
        let nw = words_for(p);
        let mut words = prod[..nw].to_vec();
        words[nw - 1] &= tail_mask(p);
        for (k, w) in words.iter_mut().enumerate() {
            *w ^= window(prod, p + 64 * k);
        }
        let mut out = Self { p, words };
        out.clear_tail();
        out
    }

    /// 64 coefficients starting at `start`, reading cyclically.
    #[inline]
    fn read_cyclic(&self, start: usize) -> u64 {
        let head = window(&self.words, start);
        let left = self.p - start;
        if left >= 64 {
            head
        } else {
            head | (window(&self.words, 0) << left)
        }
    }

    /// `self ^= src * x^t`.
    pub fn xor_rotated(&mut self, src: &Self, t: usize) {
        assert_eq!(self.p, src.p);
        let p = self.p;
        let u = (p - t % p) % p;
        let mut start = u;
        for w in self.words.iter_mut() {
            *w ^= src.read_cyclic(start);
            start += 64;
            if start >= p {
                start -= p;
            }
        }
        self.clear_tail();
    }

    /// `self * x^t`.
    pub fn rotate(&self, t: usize) -> Self {
        let mut out = Self::zero(self.p);
        out.xor_rotated(self, t);
        out
    }

    /// `a(x^-1)`, the polynomial of the transposed circulant.
    pub fn reverse(&self) -> Self {
        let p = self.p;
        let nw = self.words.len();
        let mut out = Self::zero(p);
        if p % 64 == 0 {
            for i in self.support() {
                out.flip((p - i) % p);
            }
            return out;
        }
        let rev: Vec<u64> = self.words.iter().rev().map(|w| w.reverse_bits()).collect();
        let off = 64 * nw - 1 - p;
        for (k, w) in out.words.iter_mut().enumerate() {
            *w = window(&rev, 64 * k + off);
        }
        out.clear_tail();
        out.words[0] &= !1;
        out.words[0] |= self.words[0] & 1;
        out
    }

    /// Multiplicative inverse modulo `x^p + 1`, by the binary extended
    /// Euclidean algorithm.
    pub fn inverse(&self) -> Result<Self> {
        let p = self.p;
        let nw = words_for(p + 1);
        let mut u = vec![0u64; nw];
        u[..self.words.len()].copy_from_slice(&self.words);
        let mut v = vec![0u64; nw];
        v[0] = 1;
        v[p / 64] |= 1u64 << (p % 64);
        let mut g1 = vec![0u64; nw];
        g1[0] = 1;
        let mut g2 = vec![0u64; nw];
        loop {
            let du = match degree(&u) {
                None => return Err(Error::NotInvertible),
                Some(0) => break,
                Some(d) => d,
            };
            let dv = degree(&v).expect("modulus side never vanishes first");
            if du < dv {
                std::mem::swap(&mut u, &mut v);
                std::mem::swap(&mut g1, &mut g2);
                continue;
            }
            let j = du - dv;
            let vv = v.clone();
            xor_shl(&mut u, &vv, j);
            let gg = g2.clone();
            xor_shl(&mut g1, &gg, j);
        }
        // g1 has degree below p + 1; fold a possible x^p term.
        let mut out = Self::zero(p);
        for i in 0..=p {
            if g1[i / 64] >> (i % 64) & 1 == 1 {
                out.flip(i % p);
            }
        }
        Ok(out)
    }
}

fn degree(a: &[u64]) -> Option<usize> {
    a.iter()
        .rposition(|&w| w != 0)
        .map(|i| i * 64 + 63 - a[i].leading_zeros() as usize)
}
