//! Forgery attacks: linear combinations of collected syndromes, and support
//! intersections.

use super::comb::{lb, ln_sum_exp, log2_or_neg_inf, log2_sum_exp};
use super::dist::{and_distribution, xor_distribution};
use crate::error::{Error, Result};
use crate::params::SysParams;

const LCA_MAX_L: usize = 8;
const SIA_MAX_L: usize = 40;

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct LcaCost {
    pub log2_wf: f64,
    pub l: usize,
}

/// LCA work factor when combining `l` signatures.
pub fn lca_wf_at(params: &SysParams, l: usize) -> f64 {
    let (r, k, w, m_g) = (params.r(), params.k(), params.w, params.m_g);
    let ps = xor_distribution(r, &vec![w; l]).get(w).copied().unwrap_or(f64::NEG_INFINITY);
    let du = xor_distribution(k, &vec![m_g; l]);
    let pu = log2_sum_exp(&du[..=m_g.min(k)]);
    let cost = (((l - 1) * w + (l - 1) * params.sigma_weight_bound()) as f64).log2();
    cost - ps - pu
}

/// LCA work factor minimized over `2 <= L <= 8`.
pub fn lca_wf(params: &SysParams) -> LcaCost {
    (2..=LCA_MAX_L)
        .map(|l| LcaCost { log2_wf: lca_wf_at(params, l), l })
        .min_by(|a, b| a.log2_wf.total_cmp(&b.log2_wf))
        .expect("non-empty range")
}

/// Parameters of one SIA configuration.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct SiaInputs {
    /// Collected signatures.
    pub l: usize,
    /// Weight of the intersected syndrome.
    pub w_l: usize,
    /// Minimum distance of the code spanned by `B`.
    pub d_b: usize,
}

impl SiaInputs {
    pub fn w_prime(&self, params: &SysParams) -> usize {
        params.m_s * self.w_l
    }
}

/// Column weight of `S^T` restricted to the redundancy part, rounded.
pub fn column_weight(params: &SysParams) -> usize {
    (params.m_s as f64 * params.r() as f64 / params.n() as f64 + 0.5).floor() as usize
}

/// Intermediate probabilities of the SIA success model.
#[derive(Clone, Debug, PartialEq)]
pub struct SiaProbabilities {
    pub p_i1: f64,
    pub p_j1: f64,
    /// `P_I2(w_c, m_S - 1)`.
    pub p_i2: f64,
    /// `P_I2(w_c - 1, m_S - 1)`.
    pub p_i2_minus: f64,
    /// `P_I2(w_c, m_S)`.
    pub p_i2_full: f64,
    pub p_i: f64,
    pub p_j: f64,
    /// `log2 P_and(r, {s_1..s_L}, w_L)`.
    pub log2_p_and: f64,
    /// `log2 P_{I>=J,L}`.
    pub log2_p_i_ge_j: f64,
    /// `log2 P_SIA`.
    pub log2_p_sia: f64,
}

/// Probability that an even number of `x` rows chosen among `n - 1` hit a
/// column of weight `y` (out of the same `n - 1`).
pub fn p_i2(n: usize, x: usize, y: usize) -> f64 {
    let (n, x, y) = (n as i64, x as i64, y as i64);
    (0..=x.min(y)).step_by(2).map(|i| (lb(y, i) + lb(n - 1 - y, x - i) - lb(n - 1, x)).exp2()).sum()
}

/// `P_{X,L,x} = C(L,x) P^x (1-P)^(L-x)`.
pub fn p_x_l(p: f64, l: usize, x: usize) -> f64 {
    (lb(l as i64, x as i64)).exp2() * p.powi(x as i32) * (1.0 - p).powi((l - x) as i32)
}

/// `ln P_{I,L,>=x} = ln[(sum_{i>=x} P_{I,L,i})^w' - (sum_{i>x} P_{I,L,i})^w']`.
pub fn ln_p_i_ge(p_i: f64, l: usize, x: usize, w_prime: usize) -> f64 {
    let tail = |from: usize| (from..=l).map(|t| p_x_l(p_i, l, t)).sum::<f64>();
    let (a, b) = (tail(x).ln(), tail(x + 1).ln());
    let wp = w_prime as f64;
    if b == f64::NEG_INFINITY {
        return wp * a;
    }
    wp * a + (-(wp * (b - a)).exp_m1()).ln()
}

/// `ln P_{J,L,<=x} = (n - w') ln sum_{i<=x} P_{J,L,i}`.
pub fn ln_p_j_le(p_j: f64, l: usize, x: usize, exponent: usize) -> f64 {
    exponent as f64 * (0..=x).map(|t| p_x_l(p_j, l, t)).sum::<f64>().ln()
}

pub fn sia_probabilities(params: &SysParams, inputs: &SiaInputs) -> Result<SiaProbabilities> {
    let SiaInputs { l, w_l, d_b } = *inputs;
    if w_l == 0 || w_l < d_b || w_l > params.w || l < 2 {
        return Err(Error::Domain(format!("SIA needs L >= 2 and d_B <= w_L <= w, got L={l}, w_L={w_l}")));
    }
    let log2_p_and = and_distribution(params.r(), &vec![params.w; l])[w_l];
    Ok(probabilities_given_and(params, inputs, log2_p_and))
}

fn probabilities_given_and(params: &SysParams, inputs: &SiaInputs, log2_p_and: f64) -> SiaProbabilities {
    let SiaInputs { l, w_l, .. } = *inputs;
    let (n, r, w, m_s) = (params.n(), params.r(), params.w, params.m_s);
    let w_c = params.codeword_weight();
    let lcol = column_weight(params) as i64;
    let (ri, rem) = ((r - w_l) as i64, (w - w_l) as i64);
    let p_i1: f64 = (0..=(lcol - 1).min(rem)).step_by(2).map(|i| (lb(lcol - 1, i) + lb(ri - lcol + 1, rem - i) - lb(ri, rem)).exp2()).sum();
    let p_j1: f64 = (1..=lcol.min(rem)).step_by(2).map(|i| (lb(lcol, i) + lb(ri - lcol, rem - i) - lb(ri, rem)).exp2()).sum();
    let a = p_i2(n, w_c, m_s - 1);
    let b = p_i2(n, w_c - 1, m_s - 1);
    let c = p_i2(n, w_c, m_s);
    let frac = w_c as f64 / n as f64;
    let p_i = (p_i1 * a + (1.0 - p_i1) * (1.0 - a)) * (1.0 - frac) + (p_i1 * (1.0 - b) + (1.0 - p_i1) * b) * frac;
    let p_j = p_j1 * c + (1.0 - p_j1) * (1.0 - c);

    let w_prime = inputs.w_prime(params);
    let ln_terms: Vec<f64> = (0..l)
        .map(|i| ln_p_j_le(p_j, l, i, n - w_prime) + ln_p_i_ge(p_i, l, i + 1, w_prime))
        .map(|t| if t.is_nan() { f64::NEG_INFINITY } else { t })
        .collect();
    let log2_p_i_ge_j = ln_sum_exp(&ln_terms) / std::f64::consts::LN_2;
    SiaProbabilities {
        p_i1,
        p_j1,
        p_i2: a,
        p_i2_minus: b,
        p_i2_full: c,
        p_i,
        p_j,
        log2_p_and,
        log2_p_i_ge_j,
        log2_p_sia: log2_p_and + log2_p_i_ge_j,
    }
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct SiaCost {
    pub log2_wf: f64,
    pub l: usize,
    pub w_l: usize,
}

/// Total SIA work factor for one configuration, summed over the steps that
/// recover the whole syndrome support.
pub fn sia_wf_at(params: &SysParams, probs: &SiaProbabilities, inputs: &SiaInputs) -> f64 {
    let (n, r, w) = (params.n(), params.r(), params.w);
    let SiaInputs { l, w_l, .. } = *inputs;
    let w_prime = inputs.w_prime(params);
    let c1 = ((l - 1) * w) as f64;
    let c2 = w_l as f64;
    let cij = ((l - 1) * n) as f64 * (l as f64).log2().ceil() + (w_prime * r) as f64;
    let step = |log2_hits: f64| {
        let inner = log2_sum_exp(&[c1.log2() - probs.log2_p_and, c2.log2()]) + lb(r as i64, w_l as i64) - log2_hits;
        log2_sum_exp(&[inner, log2_or_neg_inf(cij)]) - probs.log2_p_i_ge_j
    };
    let full = w / w_l;
    let mut steps: Vec<f64> = (1..=full).map(|i| step(lb((w - (i - 1) * w_l) as i64, w_l as i64))).collect();
    if w % w_l != 0 {
        let ceil = w.div_ceil(w_l);
        let reused = ((ceil - 1) * w_l) as i64;
        let first = step(0.0);
        let second = step(lb(reused, w_l as i64 - w as i64 + reused));
        steps.push(first.min(second));
    }
    log2_sum_exp(&steps)
}

/// SIA work factor minimized over `2 <= L <= 40` and `d_B <= w_L <= w`.
pub fn sia_wf(params: &SysParams, d_b: usize) -> SiaCost {
    let mut best = SiaCost { log2_wf: f64::INFINITY, l: 0, w_l: 0 };
    let r = params.r();
    for l in 2..SIA_MAX_L {
        let dist = and_distribution(r, &vec![params.w; l]);
        for w_l in d_b.max(1)..=params.w {
            if dist[w_l] == f64::NEG_INFINITY {
                continue;
            }
            let inputs = SiaInputs { l, w_l, d_b };
            let probs = probabilities_given_and(params, &inputs, dist[w_l]);
            if probs.log2_p_i_ge_j == f64::NEG_INFINITY {
                continue;
            }
            let wf = sia_wf_at(params, &probs, &inputs);
            if wf < best.log2_wf {
                best = SiaCost { log2_wf: wf, l, w_l };
            }
        }
    }
    best
}

/// Minimum Hamming weight over nonzero combinations of the columns of `bt`.
pub fn code_min_distance(bt: &crate::gf2::DenseBitMatrix) -> usize {
    let (rows, z) = (bt.rows(), bt.cols());
    (1u64..1 << z)
        .map(|mask| (0..rows).filter(|&i| (0..z).filter(|&j| mask >> j & 1 == 1 && bt.get(i, j)).count() % 2 == 1).count())
        .min()
        .unwrap_or(0)
}
