//! Carry-less multiply-accumulate kernels.
//!
//! The workhorse is [`dot_accumulate`]: a sum of schoolbook products of many
//! short word strings, accumulated into 128-bit partial-product slots. It is
//! what the Karatsuba evaluation domain reduces polynomial products to.

/// Portable 64x64 -> 128-bit carry-less product (4-bit windowed).
pub fn clmul_portable(a: u64, b: u64) -> u128 {
    let a = a as u128;
    let mut table = [0u128; 16];
    for i in 1..16 {
        table[i] = if i & 1 == 1 { table[i - 1] ^ a } else { table[i >> 1] << 1 };
    }
    let mut r = 0u128;
    for i in (0..16).rev() {
        r = (r << 4) ^ table[((b >> (4 * i)) & 15) as usize];
    }
    r
}

pub(crate) const MAX_LEAF: usize = 8;

/// For every `leaf`-word chunk pair `(a_t, b_t)`, add the carry-less product
/// `a_t * b_t` into `acc`: slot `s` collects the terms `a_t[i] * b_t[k]` with
/// `i + k = s`, so `acc` needs `2 * leaf - 1` slots.
///
/// Uses `pclmulqdq` when the CPU has it.
pub fn dot_accumulate(leaf: usize, acc: &mut [u128], a: &[u64], b: &[u64]) {
    assert!((1..=MAX_LEAF).contains(&leaf), "leaf size {leaf} out of range");
    assert_eq!(acc.len(), 2 * leaf - 1);
    assert_eq!(a.len(), b.len());
    assert_eq!(a.len() % leaf, 0);
    #[cfg(target_arch = "x86_64")]
    if std::arch::is_x86_feature_detected!("pclmulqdq") {
        // SAFETY: the feature was detected at runtime.
        unsafe {
            match leaf {
                1 => x86::dot::<1>(acc, a, b),
                2 => x86::dot::<2>(acc, a, b),
                3 => x86::dot::<3>(acc, a, b),
                4 => x86::dot::<4>(acc, a, b),
                5 => x86::dot::<5>(acc, a, b),
                6 => x86::dot::<6>(acc, a, b),
                7 => x86::dot::<7>(acc, a, b),
                _ => x86::dot::<8>(acc, a, b),
            }
        }
        return;
    }
    dot_portable(leaf, acc, a, b);
}

pub(crate) fn dot_portable(leaf: usize, acc: &mut [u128], a: &[u64], b: &[u64]) {
    for (ac, bc) in a.chunks_exact(leaf).zip(b.chunks_exact(leaf)) {
        for (i, &x) in ac.iter().enumerate() {
            if x == 0 {
                continue;
            }
            for (k, &y) in bc.iter().enumerate() {
                acc[i + k] ^= clmul_portable(x, y);
            }
        }
    }
}

#[cfg(target_arch = "x86_64")]
mod x86 {
    use core::arch::x86_64::*;

    #[target_feature(enable = "pclmulqdq")]
    pub(super) unsafe fn dot<const L: usize>(acc: &mut [u128], a: &[u64], b: &[u64]) {
        let mut r = [_mm_setzero_si128(); 16];
        for (s, slot) in acc.iter().enumerate() {
            r[s] = _mm_loadu_si128(slot as *const u128 as *const __m128i);
        }
        for (ac, bc) in a.chunks_exact(L).zip(b.chunks_exact(L)) {
            let mut bv = [_mm_setzero_si128(); L];
            for k in 0..L {
                bv[k] = _mm_cvtsi64_si128(bc[k] as i64);
            }
            for i in 0..L {
                let av = _mm_cvtsi64_si128(ac[i] as i64);
                for k in 0..L {
                    r[i + k] = _mm_xor_si128(r[i + k], _mm_clmulepi64_si128::<0>(av, bv[k]));
                }
            }
        }
        for (s, slot) in acc.iter_mut().enumerate() {
            _mm_storeu_si128(slot as *mut u128 as *mut __m128i, r[s]);
        }
    }
}
