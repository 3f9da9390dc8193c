//! Information-set decoding costs: quantum Stern and the asymptotic BJMM
//! approximation.

use std::f64::consts::PI;

use super::comb::{lb, log2_sum_exp};

/// Success probability of the Gaussian elimination step of quantum ISD.
pub const P_INV: f64 = 0.29;

const J_MAX: usize = 40;
const L_MAX: usize = 120;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct SternParams {
    pub l: usize,
    pub j: usize,
}

/// A decoding instance and the log2 speedup credited to the attacker for
/// structure (circulant shifts) and solution multiplicity.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct IsdTarget {
    pub n: usize,
    pub k: usize,
    pub w: usize,
    pub log2_speedup: f64,
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct SternCost {
    pub log2_wf: f64,
    pub params: SternParams,
}

/// `log2 p_e` for one Stern iteration; `-inf` if the split is infeasible.
pub fn stern_log2_pe(n: usize, k: usize, w: usize, sp: SternParams) -> f64 {
    let (n, k, w, l, j) = (n as i64, k as i64, w as i64, sp.l as i64, sp.j as i64);
    if l > n - k || 2 * j > w {
        return f64::NEG_INFINITY;
    }
    let pe = lb(w, 2 * j) + lb(n - w, k - 2 * j) + lb(2 * j, j) + lb(n - k - w + 2 * j, l) - (2 * j) as f64 - lb(n, k) - lb(n - k, l);
    if pe.is_nan() {
        f64::NEG_INFINITY
    } else {
        pe
    }
}

/// `log2(c_inv + c_it)`: elimination plus list building and merging.
pub fn stern_log2_iteration_cost(n: usize, k: usize, sp: SternParams) -> f64 {
    let (n, k, l, j) = (n as f64, k as f64, sp.l as f64, sp.j as f64);
    let c_inv = (0.5 * (n - k).powi(3) + k * (n - k).powi(2)).log2();
    let half = lb((k / 2.0).floor() as i64, sp.j as i64);
    let build = if sp.l * sp.j > 0 { (2.0 * l * j).log2() + half } else { f64::NEG_INFINITY };
    let merge = if sp.j > 0 { (2.0 * j * (n - k)).log2() + 2.0 * half - l } else { f64::NEG_INFINITY };
    log2_sum_exp(&[c_inv, build, merge])
}

/// Quantum Stern cost at fixed parameters, before any speedup.
pub fn stern_quantum_at(n: usize, k: usize, w: usize, sp: SternParams) -> f64 {
    let pe = stern_log2_pe(n, k, w, sp);
    (PI / 4.0).log2() + 0.5 * (-P_INV.log2() - pe) + stern_log2_iteration_cost(n, k, sp)
}

/// Minimum quantum Stern cost over the `(l, j)` grid, refined by hill
/// climbing past the grid edges.
pub fn stern_quantum_min(n: usize, k: usize, w: usize) -> SternCost {
    let eval = |sp: SternParams| stern_quantum_at(n, k, w, sp);
    let mut best = SternCost { log2_wf: f64::INFINITY, params: SternParams { l: 0, j: 0 } };
    for j in 0..=(w / 2).min(J_MAX) {
        for l in 0..=L_MAX.min(n - k) {
            let sp = SternParams { l, j };
            let c = eval(sp);
            if c < best.log2_wf {
                best = SternCost { log2_wf: c, params: sp };
            }
        }
    }
    loop {
        let SternParams { l, j } = best.params;
        let moves = [Some((l + 1, j)), l.checked_sub(1).map(|l| (l, j)), Some((l, j + 1)), j.checked_sub(1).map(|j| (l, j))];
        let next = moves
            .into_iter()
            .flatten()
            .filter(|&(l, j)| l <= n - k && 2 * j <= w)
            .map(|(l, j)| SternCost { log2_wf: eval(SternParams { l, j }), params: SternParams { l, j } })
            .min_by(|a, b| a.log2_wf.total_cmp(&b.log2_wf));
        match next {
            Some(c) if c.log2_wf < best.log2_wf => best = c,
            _ => return best,
        }
    }
}

/// Quantum Stern work factor for `target`, after its speedup.
pub fn stern_quantum_wf(target: &IsdTarget) -> SternCost {
    let c = stern_quantum_min(target.n, target.k, target.w);
    SternCost { log2_wf: c.log2_wf - target.log2_speedup, ..c }
}

/// `c w` with `c = log2(1 / (1 - k/n))`, after the speedup.
pub fn bjmm_approx_wf(target: &IsdTarget) -> f64 {
    let c = -(1.0 - target.k as f64 / target.n as f64).log2();
    c * target.w as f64 - target.log2_speedup
}
