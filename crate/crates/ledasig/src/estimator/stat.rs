//! Key lifetime against the statistical attack that recovers `S` from the
//! covariance of collected signatures.

use std::f64::consts::LN_2;

use super::comb::{lb, ln_add, ln_binom, ln_sum_exp};
use crate::params::SysParams;

/// Per-position densities of an authentic signature.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Densities {
    /// Probability that a given bit of `sigma` is set.
    pub rho_dot: f64,
    /// `rho_(1 & v)`: both bits set, pair inside a column of `S`, the
    /// column's own position selected.
    pub rho_one_v: f64,
    /// `rho_(1 & !v)`: as above, position not selected.
    pub rho_one_not_v: f64,
    /// Both bits set, pair inside a column of `S`.
    pub rho_one: f64,
    /// Both bits set, pair not inside any column.
    pub rho_zero: f64,
}

/// Densities for a pre-signature weight `w' = w + m_g w_g`.
pub fn densities(params: &SysParams) -> Densities {
    let n = params.n() as i64;
    let ms = params.m_s as i64;
    let wp = (params.w + params.codeword_weight()) as i64;
    let f = |x: f64| x.exp2();
    let rho_dot = (1..=ms).step_by(2).map(|l| f(lb(ms, l) + lb(n - ms, wp - l) - lb(n, wp))).sum();
    let mut v = 0.0;
    let mut not_v = 0.0;
    for l in 0..ms {
        for u in 0..ms {
            if l % 2 == 0 && u % 2 == 0 {
                v += f(lb(ms - 1, l) + lb(ms - 1, u) + lb(n + 1 - 2 * ms, wp - l - u - 1) - lb(n - 1, wp - 1));
            }
            if l % 2 == 1 && u % 2 == 1 {
                not_v += f(lb(ms - 1, l) + lb(ms - 1, u) + lb(n + 1 - 2 * ms, wp - l - u) - lb(n - 1, wp));
            }
        }
    }
    let rho_one_v = wp as f64 / n as f64 * v;
    let rho_one_not_v = (n - wp) as f64 / n as f64 * not_v;
    let mut rho_zero = 0.0;
    for l in (1..=ms).step_by(2) {
        for u in (1..=ms).step_by(2) {
            rho_zero += f(lb(ms, l) + lb(ms, u) + lb(n - 2 * ms, wp - l - u) - lb(n, wp));
        }
    }
    Densities { rho_dot, rho_one_v, rho_one_not_v, rho_one: rho_one_v + rho_one_not_v, rho_zero }
}

/// `ln P[X <= x]` for `X ~ Bin(trials, p)`, at every `x` in `0..=trials`.
///
/// Upper tails are summed separately so that values near `ln 1` keep their
/// precision.
fn log_cdf_table(trials: usize, p: f64, ln_choose: &[f64]) -> Vec<f64> {
    let (lp, lq) = (p.ln(), (-p).ln_1p());
    let pmf: Vec<f64> = (0..=trials).map(|i| ln_choose[i] + i as f64 * lp + (trials - i) as f64 * lq).collect();
    let mut cdf = vec![f64::NEG_INFINITY; trials + 1];
    let mut acc = f64::NEG_INFINITY;
    for i in 0..=trials {
        acc = ln_add(acc, pmf[i]);
        cdf[i] = acc;
    }
    let mut sf = f64::NEG_INFINITY;
    for i in (0..=trials).rev() {
        // `sf` is `ln P[X > i]` here.
        if sf < -LN_2 {
            cdf[i] = (-sf.exp()).ln_1p();
        }
        sf = ln_add(sf, pmf[i]);
    }
    cdf
}

/// `(log2 p_G2, log2 p~_G2)` after `trials` collected signatures: the
/// probability that the attack graph is recovered, in the plain and the
/// quasi-cyclic variant.
pub fn log2_success(params: &SysParams, d: &Densities, trials: usize) -> (f64, f64) {
    let n = params.n() as f64;
    let ms = params.m_s as f64;
    let pairs = ms * (ms - 1.0) / 2.0;
    let others = n * (n - 1.0) / 2.0 - n * pairs;
    let ln_choose: Vec<f64> = (0..=trials).map(|i| ln_binom(trials as f64, i as f64)).collect();
    let one = log_cdf_table(trials, d.rho_one, &ln_choose);
    let zero = log_cdf_table(trials, d.rho_zero, &ln_choose);
    let below = |t: &[f64], x: usize| if x == 0 { f64::NEG_INFINITY } else { t[x - 1] };
    let terms: Vec<f64> = (0..=trials)
        .map(|x| {
            let (lt, le) = (below(&one, x), one[x]);
            // Every in-column pair reaches at most x, at least one exactly x.
            let max_is_x = pairs * le + (-(pairs * (lt - le)).exp_m1()).ln();
            let t = max_is_x + others * below(&zero, x);
            if t.is_nan() {
                f64::NEG_INFINITY
            } else {
                t
            }
        })
        .collect();
    let ln_rv = ln_sum_exp(&terms);
    let p = params.p as f64;
    let ln_pv = if ln_rv < -700.0 { p.ln() + ln_rv } else { (-(p * (-ln_rv.exp()).ln_1p()).exp_m1()).ln() };
    (n * ln_rv / LN_2, params.n0 as f64 * ln_pv / LN_2)
}

/// Largest signature count keeping the success probability below
/// `2^-lambda`: `(N_lambda, N~_lambda)`.
pub fn stat_lifetime(params: &SysParams, lambda: f64) -> (u64, u64) {
    let d = densities(params);
    let plain = largest_below(|t| log2_success(params, &d, t).0, -lambda);
    let qc = largest_below(|t| log2_success(params, &d, t).1, -lambda);
    (plain, qc)
}

fn largest_below(f: impl Fn(usize) -> f64, bound: f64) -> u64 {
    let (mut lo, mut hi) = (1usize, 1024usize);
    let mut prev = f64::NEG_INFINITY;
    loop {
        let v = f(hi);
        debug_assert!(v >= prev, "success probability must grow with the sample");
        if v >= bound {
            break;
        }
        prev = v;
        lo = hi;
        hi *= 2;
    }
    while hi - lo > 1 {
        let mid = (lo + hi) / 2;
        if f(mid) < bound {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    lo as u64
}
