//! Weight distributions of XORs and ANDs of independent uniform
//! constant-weight vectors.
//!
//! Distributions are `Vec<f64>` of `log2` probabilities indexed by weight.

use super::comb::{lb, log2_sum_exp};

/// `log2 P[wt(a ^ b) = y]` for `wt(a) = w1`, `wt(b) = w2` in length `n`.
pub fn p_xor2(n: usize, w1: usize, w2: usize, y: usize) -> f64 {
    if (w1 + w2 + y) % 2 == 1 || y > w1 + w2 {
        return f64::NEG_INFINITY;
    }
    let x = (w1 + w2 - y) / 2;
    overlap(n, w1, w2, x)
}

/// `log2 P[wt(a & b) = x]`.
pub fn p_and2(n: usize, w1: usize, w2: usize, x: usize) -> f64 {
    overlap(n, w1, w2, x)
}

fn overlap(n: usize, w1: usize, w2: usize, x: usize) -> f64 {
    let (n, w1, w2, x) = (n as i64, w1 as i64, w2 as i64, x as i64);
    if w1 > n || w2 > n {
        return f64::NEG_INFINITY;
    }
    lb(w1, x) + lb(n - w1, w2 - x) - lb(n, w2)
}

fn fold(n: usize, weights: &[usize], step: impl Fn(usize, usize, usize) -> (usize, usize), pair: impl Fn(usize, usize, usize, usize) -> f64) -> Vec<f64> {
    let Some((&first, rest)) = weights.split_first() else {
        return vec![0.0];
    };
    let mut d = vec![f64::NEG_INFINITY; n + 1];
    if first <= n {
        d[first] = 0.0;
    }
    for &w in rest {
        let mut terms: Vec<Vec<f64>> = vec![Vec::new(); n + 1];
        for (x, &lp) in d.iter().enumerate() {
            if lp == f64::NEG_INFINITY {
                continue;
            }
            let (lo, hi) = step(n, x, w);
            for y in lo..=hi {
                let v = pair(n, x, w, y);
                if v > f64::NEG_INFINITY {
                    terms[y].push(lp + v);
                }
            }
        }
        d = terms.iter().map(|t| log2_sum_exp(t)).collect();
    }
    d
}

/// Distribution of `wt(v_1 ^ ... ^ v_L)`.
pub fn xor_distribution(n: usize, weights: &[usize]) -> Vec<f64> {
    fold(n, weights, |n, x, w| (x.abs_diff(w), (x + w).min((2 * n).saturating_sub(x + w))), p_xor2)
}

/// Distribution of `wt(v_1 & ... & v_L)`.
pub fn and_distribution(n: usize, weights: &[usize]) -> Vec<f64> {
    fold(n, weights, |_, x, w| (0, x.min(w)), p_and2)
}

/// `log2 P[wt(XOR) = y]`.
pub fn p_xor(n: usize, weights: &[usize], y: usize) -> f64 {
    xor_distribution(n, weights).get(y).copied().unwrap_or(f64::NEG_INFINITY)
}

/// `log2 P[wt(AND) = y]`.
pub fn p_and(n: usize, weights: &[usize], y: usize) -> f64 {
    and_distribution(n, weights).get(y).copied().unwrap_or(f64::NEG_INFINITY)
}
