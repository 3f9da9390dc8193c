//! Security estimates for a parameter set, all in `log2` units.
//!
//! The quantum Stern figures are the ones the parameter sets were designed
//! against. The classical decoding figures use only the asymptotic BJMM
//! exponent and are reported as approximations.

mod comb;
mod dist;
mod forgery;
mod isd;
mod stat;

pub use comb::{log2_binom, log2_sum_exp};
pub use dist::{and_distribution, p_and, p_and2, p_xor, p_xor2, xor_distribution};
pub use forgery::{
    code_min_distance, column_weight, lca_wf, lca_wf_at, ln_p_i_ge, ln_p_j_le, p_i2, p_x_l, sia_probabilities, sia_wf, sia_wf_at,
    LcaCost, SiaCost, SiaInputs, SiaProbabilities,
};
pub use isd::{
    bjmm_approx_wf, stern_log2_iteration_cost, stern_log2_pe, stern_quantum_at, stern_quantum_min, stern_quantum_wf, IsdTarget,
    SternCost, SternParams, P_INV,
};
pub use stat::{densities, log2_success, stat_lifetime, Densities};

use crate::params::SysParams;

/// `(log2 N_s, log2 A_wc)`: distinct signatures `C(r, w) / 2^z` and
/// easily generated codewords `C(k, m_g)`.
pub fn signature_space(params: &SysParams) -> (f64, f64) {
    let ns = comb::lb(params.r() as i64, params.w as i64) - params.z as f64;
    let awc = comb::lb(params.k() as i64, params.m_g as i64);
    (ns, awc)
}

/// Birthday bounds on `N_s`: `(classical, quantum)` = `(N_s / 2, N_s / 3)`.
pub fn collision_bounds(log2_ns: f64) -> (f64, f64) {
    (log2_ns / 2.0, log2_ns / 3.0)
}

/// Decoding radius of the public code: `w m_S` plus half its minimum distance margin.
pub fn decoding_radius(params: &SysParams) -> usize {
    params.w * params.m_s + (params.m_s - 1) / 2
}

/// Decoding attack on a signature. Shifts of a circulant solve the same
/// instance, worth `sqrt(p)`.
pub fn decoding_target(params: &SysParams, w: usize) -> IsdTarget {
    IsdTarget { n: params.n(), k: params.k(), w, log2_speedup: 0.5 * (params.p as f64).log2() }
}

/// Key recovery: any of the `k` low-weight rows of `G'` will do, and shifts
/// again help. Under Grover both gains enter with a square root.
pub fn key_recovery_target(params: &SysParams, quantum: bool) -> IsdTarget {
    let (k, p) = (params.k() as f64, params.p as f64);
    let log2_speedup = if quantum { 0.5 * k.log2() + 0.25 * p.log2() } else { k.log2() + 0.5 * p.log2() };
    IsdTarget { n: params.n(), k: params.k(), w: params.w_g * params.m_s, log2_speedup }
}

/// Every figure of merit for one parameter set.
#[derive(Clone, Debug, PartialEq)]
pub struct AttackReport {
    pub params: SysParams,
    pub lambda: f64,
    pub log2_ns: f64,
    pub log2_awc: f64,
    pub sia: SiaCost,
    pub lca: LcaCost,
    pub da_pq: SternCost,
    pub kra_pq: SternCost,
    pub da_cl_approx: f64,
    pub kra_cl_approx: f64,
    pub collision_cl: f64,
    pub collision_pq: f64,
    pub n_lambda: u64,
    pub n_tilde_lambda: u64,
}

impl AttackReport {
    /// LCA with the full Grover speedup, an upper bound on any quantum gain.
    pub fn lca_pq_conservative(&self) -> f64 {
        self.lca.log2_wf / 2.0
    }

    pub fn sia_pq_conservative(&self) -> f64 {
        self.sia.log2_wf / 2.0
    }

    /// Smallest work factor among the forgery and decoding attacks.
    pub fn min_wf(&self) -> f64 {
        [self.sia.log2_wf, self.lca.log2_wf, self.da_pq.log2_wf, self.kra_pq.log2_wf, self.da_cl_approx, self.kra_cl_approx]
            .into_iter()
            .fold(f64::INFINITY, f64::min)
    }

    pub fn passes(&self) -> bool {
        self.min_wf() >= self.lambda
    }
}

/// Full estimate at security level `lambda`. `d_B` is taken to be `z`.
pub fn full_report(params: &SysParams, lambda: f64) -> AttackReport {
    let (log2_ns, log2_awc) = signature_space(params);
    let (collision_cl, collision_pq) = collision_bounds(log2_ns);
    let (n_lambda, n_tilde_lambda) = stat_lifetime(params, lambda);
    AttackReport {
        params: *params,
        lambda,
        log2_ns,
        log2_awc,
        sia: sia_wf(params, params.z),
        lca: lca_wf(params),
        da_pq: stern_quantum_wf(&decoding_target(params, decoding_radius(params))),
        kra_pq: stern_quantum_wf(&key_recovery_target(params, true)),
        da_cl_approx: bjmm_approx_wf(&decoding_target(params, params.m_s * params.w)),
        kra_cl_approx: bjmm_approx_wf(&key_recovery_target(params, false)),
        collision_cl,
        collision_pq,
        n_lambda,
        n_tilde_lambda,
    }
}
