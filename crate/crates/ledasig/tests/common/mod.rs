//! Brute-force oracles shared by the integration tests.
#![allow(dead_code)]

use ledasig::gf2::DenseBitMatrix;

/// All `n`-bit masks of weight `w`.
pub fn masks(n: usize, w: usize) -> Vec<u32> {
    (0u32..1 << n).filter(|m| m.count_ones() as usize == w).collect()
}

/// Exhaustive AND and XOR weight distributions (linear probabilities) of
/// independent uniform vectors of the given weights.
pub fn enumerate_and_xor(n: usize, weights: &[usize]) -> (Vec<f64>, Vec<f64>) {
    let sets: Vec<Vec<u32>> = weights.iter().map(|&w| masks(n, w)).collect();
    let mut and = vec![0u64; n + 1];
    let mut xor = vec![0u64; n + 1];
    let mut total = 0u64;
    let mut idx = vec![0usize; sets.len()];
    loop {
        let (mut a, mut x) = (u32::MAX >> (32 - n), 0u32);
        for (s, &i) in sets.iter().zip(&idx) {
            a &= s[i];
            x ^= s[i];
        }
        and[a.count_ones() as usize] += 1;
        xor[x.count_ones() as usize] += 1;
        total += 1;
        let mut d = 0;
        loop {
            if d == idx.len() {
                let f = |v: Vec<u64>| v.into_iter().map(|c| c as f64 / total as f64).collect();
                return (f(and), f(xor));
            }
            idx[d] += 1;
            if idx[d] < sets[d].len() {
                break;
            }
            idx[d] = 0;
            d += 1;
        }
    }
}

/// `(B^T (x) 1_{1 x p}) s` evaluated as a dense product.
pub fn dense_kernel_product(bt: &DenseBitMatrix, p: usize, s: &[bool]) -> Vec<bool> {
    let (r0, z) = (bt.rows(), bt.cols());
    (0..z).map(|i| (0..r0 * p).filter(|&c| bt.get(c / p, i) && s[c]).count() % 2 == 1).collect()
}

/// Exact Stern success probability for one error pattern of weight `w`, by
/// enumerating every information set, every `l`-window among the remaining
/// positions and every assignment of the information-set errors to the two
/// halves.
pub fn stern_success_by_enumeration(n: usize, k: usize, w: usize, j: usize, l: usize) -> f64 {
    let errors: u32 = (1 << w) - 1;
    let mut hits = 0f64;
    let mut total = 0f64;
    let windows_total = binom(n - k, l) as f64;
    for info in masks(n, k) {
        total += 1.0;
        let inside = (info & errors).count_ones() as usize;
        if inside != 2 * j {
            continue;
        }
        let rest: Vec<usize> = (0..n).filter(|&i| info >> i & 1 == 0).collect();
        let clean_windows = masks(n - k, l)
            .into_iter()
            .filter(|wm| (0..rest.len()).all(|t| wm >> t & 1 == 0 || errors >> rest[t] & 1 == 0))
            .count() as f64;
        // Each error inside the information set lands in either half.
        let balanced = masks(2 * j, j).len() as f64 / (1u64 << (2 * j)) as f64;
        hits += balanced * clean_windows / windows_total;
    }
    hits / total
}

pub fn binom(n: usize, k: usize) -> u64 {
    if k > n {
        return 0;
    }
    (0..k as u64).fold(1u64, |c, i| c * (n as u64 - i) / (i + 1))
}
