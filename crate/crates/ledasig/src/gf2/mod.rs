//! Bit-packed GF(2) algebra: the ring GF(2)\[x\]/(x^p + 1), quasi-cyclic block
//! matrices over it, dense binary matrices and block permutations.
//!
//! Packing is little-endian inside `u64` words: coefficient `i` lives at bit
//! `i % 64` of word `i / 64`, and bits at or above `p` are always zero.

mod clmul;
mod dense;
mod karatsuba;
mod monomial;
mod plan;
mod poly;
mod qc;
mod sparse;

pub use clmul::{clmul_portable, dot_accumulate};
pub use dense::DenseBitMatrix;
pub use karatsuba::KaratsubaShape;
pub use monomial::{GenPermutation, MonomialQc};
pub use plan::ColumnProductPlan;
pub use poly::BitPoly;
pub use qc::QcMatrix;
pub use sparse::SparseVector;

/// Number of 64-bit words needed for `bits` bits.
#[inline]
pub(crate) fn words_for(bits: usize) -> usize {
    bits.div_ceil(64)
}

/// Mask selecting the valid bits of the last word of a `bits`-long string.
#[inline]
pub(crate) fn tail_mask(bits: usize) -> u64 {
    match bits % 64 {
        0 => u64::MAX,
        r => (1u64 << r) - 1,
    }
}

/// 64 bits of `src` starting at bit `pos`; positions past the end read as 0.
#[inline]
pub(crate) fn window(src: &[u64], pos: usize) -> u64 {
    let (w, b) = (pos / 64, pos % 64);
    let lo = src.get(w).copied().unwrap_or(0) >> b;
    if b == 0 {
        lo
    } else {
        lo | (src.get(w + 1).copied().unwrap_or(0) << (64 - b))
    }
}

/// `dst ^= src << shift`, dropping bits that fall past the end of `dst`.
pub(crate) fn xor_shl(dst: &mut [u64], src: &[u64], shift: usize) {
    let (ws, bs) = (shift / 64, shift % 64);
    for (i, &s) in src.iter().enumerate() {
        let t = i + ws;
        if t >= dst.len() {
            break;
        }
        dst[t] ^= s << bs;
        if bs != 0 && t + 1 < dst.len() {
            dst[t + 1] ^= s >> (64 - bs);
        }
    }
}
