//! Key generation: the secret code `V`, the scramblers `S` and `Q` with their
//! structured inverses, and the public matrix `H' = Q^-1 [V^T | I] S^-1`.

use std::fmt;
use std::sync::atomic::{AtomicU64, Ordering};
use std::sync::OnceLock;

use crate::drbg::Drbg;
use crate::error::{Error, Result};
use crate::gf2::{BitPoly, ColumnProductPlan, DenseBitMatrix, MonomialQc, QcMatrix, SparseVector};
use crate::params::SysParams;

const KEYGEN_DOMAIN: &[u8] = b"LEDAsig/keygen";

/// Factors of `S = Diag(x^lambda) (P1 E P2 (x) I_p) Diag(x^phi)`, where `E` is
/// the `n0 x n0` circulant of `e` and `P1`, `P2` are permutation matrices with
/// `P[i][pi[i]] = 1`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SFactors {
    pub lambda: Vec<usize>,
    pub phi: Vec<usize>,
    pub pi1: Vec<usize>,
    pub pi2: Vec<usize>,
    pub e: BitPoly,
}

fn invert_perm(pi: &[usize]) -> Vec<usize> {
    let mut inv = vec![0; pi.len()];
    for (i, &x) in pi.iter().enumerate() {
        inv[x] = i;
    }
    inv
}

fn perm_matrix(pi: &[usize]) -> DenseBitMatrix {
    let mut m = DenseBitMatrix::zeros(pi.len(), pi.len());
    for (i, &x) in pi.iter().enumerate() {
        m.set(i, x, true);
    }
    m
}

impl SFactors {
    fn n0(&self) -> usize {
        self.e.p()
    }

    /// `E' = P1 E P2`; entry `(a, b)` is `e[(pi2^-1(b) - pi1(a)) mod n0]`.
    pub fn e_prime(&self) -> DenseBitMatrix {
        circulant_pattern(&self.e, &self.pi1, &invert_perm(&self.pi2), false)
    }

    /// `E'^-1 = P2^T E^-1 P1^T`; entry `(b, c)` is `e^-1[(pi1(c) - pi2^-1(b)) mod n0]`.
    pub fn e_prime_inverse(&self) -> Result<DenseBitMatrix> {
        let einv = self.e.inverse()?;
        Ok(circulant_pattern(&einv, &self.pi1, &invert_perm(&self.pi2), true))
    }

    /// `S` as a monomial QC matrix: block `(a, b)` is `x^(lambda_a + phi_b)`
    /// where `E'` has a one.
    pub fn s_matrix(&self, p: usize) -> MonomialQc {
        let ep = self.e_prime();
        let n0 = self.n0();
        let entries = (0..n0)
            .map(|a| (0..n0).filter(|&b| ep.get(a, b)).map(|b| (b, (self.lambda[a] + self.phi[b]) % p)).collect())
            .collect();
        MonomialQc::new(n0, p, entries).expect("well-formed factors")
    }

    /// `S^-1 = Diag(x^-phi) (E'^-1 (x) I_p) Diag(x^-lambda)`.
    pub fn s_inverse_matrix(&self, p: usize) -> Result<MonomialQc> {
        let epi = self.e_prime_inverse()?;
        let n0 = self.n0();
        let entries = (0..n0)
            .map(|b| {
                (0..n0)
                    .filter(|&c| epi.get(b, c))
                    .map(|c| (c, (2 * p - self.phi[b] - self.lambda[c]) % p))
                    .collect()
            })
            .collect();
        MonomialQc::new(n0, p, entries)
    }
}

/// Matrix with entry `(a, b) = poly[(col_map[b] - row_map[a]) mod n]`, or with
/// the roles swapped when `transposed_roles` is set (rows indexed through
/// `col_map`, columns through `row_map`).
fn circulant_pattern(poly: &BitPoly, row_map: &[usize], col_map: &[usize], transposed_roles: bool) -> DenseBitMatrix {
    let n = poly.p();
    let mut m = DenseBitMatrix::zeros(n, n);
    for a in 0..n {
        for b in 0..n {
            let d = if transposed_roles {
                (row_map[b] + n - col_map[a]) % n
            } else {
                (col_map[b] + n - row_map[a]) % n
            };
            if poly.coeff(d) {
                m.set(a, b, true);
            }
        }
    }
    m
}

/// Factors of `Q = M + (A B^T) (x) 1_{p x p}` with `M = (Pi (x) I_p) Diag(x^psi)`.
/// `a` and `bt` are both `r0 x z`; `dinv` is the inverse of
/// `D = I_z + B^T Pi^T A` (the identity when `p` is even).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct QFactors {
    pub pi: Vec<usize>,
    pub psi: Vec<usize>,
    pub a: DenseBitMatrix,
    pub bt: DenseBitMatrix,
    pub dinv: DenseBitMatrix,
}

impl QFactors {
    /// `D = I_z + B^T Pi^T A`.
    pub fn d_matrix(pi: &[usize], a: &DenseBitMatrix, bt: &DenseBitMatrix) -> DenseBitMatrix {
        let z = a.cols();
        let pt = perm_matrix(pi).transpose();
        let prod = bt.transpose().mul(&pt).and_then(|x| x.mul(a)).expect("shapes agree");
        DenseBitMatrix::identity(z).add(&prod).expect("shapes agree")
    }

    /// `M` as a monomial matrix: block `(a, pi[a])` is `x^psi[pi[a]]`.
    pub fn m_matrix(&self, p: usize) -> MonomialQc {
        let entries = self.pi.iter().map(|&b| vec![(b, self.psi[b])]).collect();
        MonomialQc::new(self.pi.len(), p, entries).expect("well-formed factors")
    }

    /// `C = Pi^T A D^-1 B^T Pi^T`, so that `Q^-1 = M^T + C (x) 1_{p x p}`.
    pub fn correction(&self) -> DenseBitMatrix {
        let pt = perm_matrix(&self.pi).transpose();
        pt.mul(&self.a)
            .and_then(|x| x.mul(&self.dinv))
            .and_then(|x| x.mul(&self.bt.transpose()))
            .and_then(|x| x.mul(&pt))
            .expect("shapes agree")
    }

    /// Dense-block `Q`, for inspection and tests.
    pub fn q_matrix(&self, p: usize) -> QcMatrix {
        let mut q = self.m_matrix(p).to_qc();
        let ab = self.a.mul(&self.bt.transpose()).expect("shapes agree");
        add_all_ones_pattern(&mut q, &ab);
        q
    }

    /// Dense-block `Q^-1` from the Woodbury form.
    pub fn q_inverse_matrix(&self, p: usize) -> QcMatrix {
        let mut q = self.m_matrix(p).transpose().to_qc();
        add_all_ones_pattern(&mut q, &self.correction());
        q
    }
}

fn add_all_ones_pattern(q: &mut QcMatrix, pattern: &DenseBitMatrix) {
    let ones = BitPoly::all_ones(q.p());
    for i in 0..pattern.rows() {
        for j in 0..pattern.cols() {
            if pattern.get(i, j) {
                q.block_mut(i, j).xor_assign(&ones);
            }
        }
    }
}

/// Expanded private key.
#[derive(Clone, PartialEq, Eq)]
pub struct PrivateKey {
    params: SysParams,
    seed: Vec<u8>,
    v: MonomialQc,
    s: SFactors,
    q: QFactors,
    // Derived maps used while signing.
    s_t: MonomialQc,
    m_t: MonomialQc,
}

impl fmt::Debug for PrivateKey {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("PrivateKey").field("params", &self.params).finish_non_exhaustive()
    }
}

impl PrivateKey {
    /// Run the three generation procedures from a seed.
    pub fn generate(seed: &[u8], params: &SysParams) -> Result<Self> {
        params.validate()?;
        if seed.len() != params.seed_len() {
            return Err(Error::InvalidParams(format!(
                "seed must be {} bytes, got {}",
                params.seed_len(),
                seed.len()
            )));
        }
        let mut drbg = Drbg::new(KEYGEN_DOMAIN, seed);
        let v = gen_v(params, &mut drbg);
        let s = gen_s(params, &mut drbg);
        let q = gen_q(params, &mut drbg);
        Self::from_parts(*params, seed.to_vec(), v, s, q)
    }

    /// Assemble from explicit factors, validating their shape.
    pub fn from_parts(params: SysParams, seed: Vec<u8>, v: MonomialQc, s: SFactors, q: QFactors) -> Result<Self> {
        params.validate()?;
        let (n0, r0, p, z) = (params.n0, params.r0, params.p, params.z);
        let bad = |m: &str| Err(Error::InvalidParams(m.to_string()));
        if v.rows() != params.k0() || v.cols() != r0 || v.p() != p {
            return bad("V has the wrong shape");
        }
        if (0..v.rows()).any(|i| v.row(i).len() != params.w_g - 1) {
            return bad("a block row of V has the wrong weight");
        }
        let perm_ok = |pi: &[usize], n: usize| {
            let mut s = pi.to_vec();
            s.sort_unstable();
            s == (0..n).collect::<Vec<_>>()
        };
        if s.e.p() != n0 || s.e.weight() != params.m_s || !perm_ok(&s.pi1, n0) || !perm_ok(&s.pi2, n0) {
            return bad("S factors are malformed");
        }
        if s.lambda.len() != n0 || s.phi.len() != n0 || s.lambda.iter().chain(&s.phi).any(|&t| t >= p) {
            return bad("S rotations are malformed");
        }
        if !perm_ok(&q.pi, r0) || q.psi.len() != r0 || q.psi.iter().any(|&t| t >= p) {
            return bad("Q permutation is malformed");
        }
        if (q.a.rows(), q.a.cols(), q.bt.rows(), q.bt.cols()) != (r0, z, r0, z) || q.dinv.rows() != z || q.dinv.cols() != z {
            return bad("Q dense factors have the wrong shape");
        }
        let d = if p % 2 == 1 { QFactors::d_matrix(&q.pi, &q.a, &q.bt) } else { DenseBitMatrix::identity(z) };
        if d.mul(&q.dinv).ok() != Some(DenseBitMatrix::identity(z)) {
            return bad("stored D^-1 does not invert D");
        }
        if s.e.inverse().is_err() {
            return bad("E is not invertible");
        }
        let s_t = s.s_matrix(p).transpose();
        let m_t = q.m_matrix(p).transpose();
        Ok(Self { params, seed, v, s, q, s_t, m_t })
    }

    pub fn params(&self) -> &SysParams {
        &self.params
    }
    pub fn seed(&self) -> &[u8] {
        &self.seed
    }
    /// The `k0 x r0` block matrix `V` of the secret generator `G = [I | V]`.
    pub fn v(&self) -> &MonomialQc {
        &self.v
    }
    pub fn s_factors(&self) -> &SFactors {
        &self.s
    }
    pub fn q_factors(&self) -> &QFactors {
        &self.q
    }
    /// `S^T`, mapping `e + c` to the signature by row-vector product.
    pub fn s_transpose(&self) -> &MonomialQc {
        &self.s_t
    }
    /// `M^T`, mapping `s` to `s' = M s^T` by row-vector product.
    pub fn m_transpose(&self) -> &MonomialQc {
        &self.m_t
    }

    /// Secret parity-check matrix `H = [V^T | I]`.
    pub fn h_matrix(&self) -> QcMatrix {
        let (r0, k0, p) = (self.params.r0, self.params.k0(), self.params.p);
        let vt = self.v.transpose();
        let mut h = QcMatrix::zero(r0, self.params.n0, p);
        for i in 0..r0 {
            for &(c, t) in vt.row(i) {
                *h.block_mut(i, c) = BitPoly::monomial(p, t);
            }
            *h.block_mut(i, k0 + i) = BitPoly::one(p);
        }
        h
    }
}

/// Public key: the dense QC matrix `H'`.
pub struct PublicKey {
    params: SysParams,
    hp: QcMatrix,
    plan: OnceLock<ColumnProductPlan>,
    syndromes: AtomicU64,
}

impl Clone for PublicKey {
    fn clone(&self) -> Self {
        Self::new(self.params, self.hp.clone()).expect("already validated")
    }
}

impl PartialEq for PublicKey {
    fn eq(&self, other: &Self) -> bool {
        self.params == other.params && self.hp == other.hp
    }
}

impl Eq for PublicKey {}

impl fmt::Debug for PublicKey {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("PublicKey").field("params", &self.params).finish_non_exhaustive()
    }
}

impl PublicKey {
    pub fn new(params: SysParams, hp: QcMatrix) -> Result<Self> {
        params.validate()?;
        if hp.rows() != params.r0 || hp.cols() != params.n0 || hp.p() != params.p {
            return Err(Error::Dimension("public matrix does not match the parameters".into()));
        }
        Ok(Self { params, hp, plan: OnceLock::new(), syndromes: AtomicU64::new(0) })
    }

    pub fn params(&self) -> &SysParams {
        &self.params
    }

    pub fn matrix(&self) -> &QcMatrix {
        &self.hp
    }

    /// `H' sigma^T`.
    pub fn syndrome(&self, sigma: &SparseVector) -> Result<SparseVector> {
        self.syndromes.fetch_add(1, Ordering::Relaxed);
        self.plan().apply(sigma)
    }

    /// Build the multiplication plan now rather than on first use.
    pub fn plan(&self) -> &ColumnProductPlan {
        self.plan.get_or_init(|| ColumnProductPlan::new(&self.hp))
    }

    /// How many syndromes this key has computed.
    pub fn syndrome_count(&self) -> u64 {
        self.syndromes.load(Ordering::Relaxed)
    }
}

/// Block rows of `V`: `w_g - 1` distinct block columns, each a random
/// circulant permutation.
pub fn gen_v(params: &SysParams, drbg: &mut Drbg) -> MonomialQc {
    let p = params.p as u64;
    let entries = (0..params.k0())
        .map(|_| {
            let cols = drbg.rand_gen(params.r0, params.w_g - 1);
            cols.into_iter().map(|c| (c, drbg.below(p) as usize)).collect()
        })
        .collect();
    MonomialQc::new(params.r0, params.p, entries).expect("generated within range")
}

/// Random invertible odd-weight polynomial of weight `m` modulo `x^n + 1`.
pub fn circ_gen_invertible(n: usize, m: usize, drbg: &mut Drbg) -> BitPoly {
    loop {
        let e = BitPoly::from_support(n, &drbg.rand_gen(n, m)).expect("in range");
        if e.weight() % 2 == 1 && e.inverse().is_ok() {
            return e;
        }
    }
}

pub fn gen_s(params: &SysParams, drbg: &mut Drbg) -> SFactors {
    let n0 = params.n0;
    let e = circ_gen_invertible(n0, params.m_s, drbg);
    let pi1 = drbg.perm_gen(n0);
    let pi2 = drbg.perm_gen(n0);
    let (mut lambda, mut phi) = (Vec::with_capacity(n0), Vec::with_capacity(n0));
    for _ in 0..n0 {
        lambda.push(drbg.below(params.p as u64) as usize);
        phi.push(drbg.below(params.p as u64) as usize);
    }
    SFactors { lambda, phi, pi1, pi2, e }
}

/// Draw `(Pi, A, B^T)` until `D` is invertible; for even `p` one draw is kept
/// and `D = I_z`. The block rotations of `M` follow.
pub fn gen_q(params: &SysParams, drbg: &mut Drbg) -> QFactors {
    let (r0, z) = (params.r0, params.z);
    let (pi, a, bt, dinv) = loop {
        let pi = drbg.perm_gen(r0);
        let a = drbg.matr_gen(r0, z);
        let bt = drbg.matr_gen(r0, z);
        if params.p % 2 == 0 {
            break (pi, a, bt, DenseBitMatrix::identity(z));
        }
        if let Ok(dinv) = QFactors::d_matrix(&pi, &a, &bt).invert() {
            break (pi, a, bt, dinv);
        }
    };
    let psi = (0..r0).map(|_| drbg.below(params.p as u64) as usize).collect();
    QFactors { pi, psi, a, bt, dinv }
}

/// `H' = Q^-1 [V^T | I] S^-1`.
///
/// With `W = Q^-1 H = M^T H + eps (x) 1_{p x p}`, where `eps = C * nz(H)` and
/// `nz(H)` marks the non-null blocks of `H`, every block of `W` is a monomial
/// (or zero) plus an optional all-ones block. Multiplying by `S^-1` moves the
/// monomials and combines the all-ones flags by the pattern of `E'^-1`, so
/// `H'` is assembled from bit flips and one complement per block.
pub fn build_public_key(sk: &PrivateKey) -> Result<PublicKey> {
    let params = sk.params;
    let (n0, r0, k0, p) = (params.n0, params.r0, params.k0(), params.p);
    let s = &sk.s;
    let epi = s.e_prime_inverse()?;
    let epi_rows: Vec<Vec<usize>> = (0..n0).map(|b| (0..n0).filter(|&c| epi.get(b, c)).collect()).collect();

    // Rows of H = [V^T | I] as (block column, exponent).
    let vt = sk.v.transpose();
    let h_row = |a: usize| vt.row(a).iter().copied().chain(std::iter::once((k0 + a, 0)));

    let mut nz = DenseBitMatrix::zeros(r0, n0);
    for a in 0..r0 {
        for (c, _) in h_row(a) {
            nz.set(a, c, true);
        }
    }
    let eps = sk.q.correction().mul(&nz)?;
    let flips = eps.mul(&epi)?;
    let pi_inv = invert_perm(&sk.q.pi);

    let ones = BitPoly::all_ones(p);
    let mut hp = QcMatrix::zero(r0, n0, p);
    for i in 0..r0 {
        // Row i of M^T H is x^-psi_i times row pi^-1(i) of H.
        let shift = p - sk.q.psi[i];
        for (b, t) in h_row(pi_inv[i]) {
            let t = (t + shift + p - s.phi[b]) % p;
            for &c in &epi_rows[b] {
                hp.block_mut(i, c).flip((t + p - s.lambda[c]) % p);
            }
        }
        for c in 0..n0 {
            if flips.get(i, c) {
                hp.block_mut(i, c).xor_assign(&ones);
            }
        }
    }
    PublicKey::new(params, hp)
}

/// Deterministic key pair from a seed.
pub fn keypair_from_seed(seed: &[u8], params: &SysParams) -> Result<(PrivateKey, PublicKey)> {
    let sk = PrivateKey::generate(seed, params)?;
    let pk = build_public_key(&sk)?;
    Ok((sk, pk))
}
