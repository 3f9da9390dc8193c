//! Signature generation.

use sha2::{Digest, Sha256, Sha384, Sha512};

use crate::drbg::Drbg;
use crate::error::{Error, Result};
use crate::gf2::{DenseBitMatrix, SparseVector};
use crate::keygen::PrivateKey;
use crate::params::SysParams;

const CW_DOMAIN: &[u8] = b"LEDAsig/cw";

/// Fresh codewords tried before giving up on a key.
pub const CODEWORD_ATTEMPTS: usize = 256;

/// Candidate rows drawn for one position of `u` before restarting.
pub const ROW_CANDIDATES: usize = 1024;

/// Counter values tried before giving up on a message.
pub const THETA_ATTEMPTS: u64 = 1 << 32;

/// A signature: the `n`-bit vector `sigma` and the counter that produced it.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Signature {
    pub sigma: SparseVector,
    pub theta: u64,
}

/// `H(m || theta)` with `theta` as 8 little-endian bytes; SHA-256, SHA-384 or
/// SHA-512 by category.
pub fn hash_digest(params: &SysParams, message: &[u8], theta: u64) -> Vec<u8> {
    fn run<D: Digest>(m: &[u8], t: u64) -> Vec<u8> {
        let mut h = D::new();
        h.update(m);
        h.update(t.to_le_bytes());
        h.finalize().to_vec()
    }
    match params.digest_len() {
        32 => run::<Sha256>(message, theta),
        48 => run::<Sha384>(message, theta),
        _ => run::<Sha512>(message, theta),
    }
}

/// Map a digest to a weight-`weight` vector of length `length`: the digest
/// keys a generator whose output drives a partial Fisher-Yates shuffle.
pub fn cw_encode(digest: &[u8], length: usize, weight: usize) -> Result<SparseVector> {
    if weight > length {
        return Err(Error::Domain(format!("weight {weight} exceeds length {length}")));
    }
    let mut g = Drbg::new(CW_DOMAIN, digest);
    SparseVector::from_support(length, g.rand_gen(length, weight))
}

/// True iff every column `i` of `B^T` has `sum_j bt[j][i] * wt(s_j)` even,
/// i.e. `(B^T (x) 1_{1 x p}) s = 0`.
pub fn kernel_check(bt: &DenseBitMatrix, s: &SparseVector) -> bool {
    let r0 = bt.rows();
    if r0 == 0 || s.len() % r0 != 0 {
        return false;
    }
    let weights = s.block_weights(s.len() / r0);
    (0..bt.cols()).all(|i| (0..r0).filter(|&j| bt.get(j, i) && weights[j] % 2 == 1).count() % 2 == 0)
}

/// Secret codeword `c = [u | u V]` with `wt(u) = m_g` and `wt(c)` in
/// `[m_g w_g - 2 m_g, m_g w_g]`.
///
/// Rows of `G` are added one at a time and a candidate row is replaced
/// whenever the running sum of `i` rows drops below `i (w_g - 2)`. Drawing
/// all of `u` at once almost never lands in the window for instances whose
/// `V` is dense at block level. Each attempt starts from a fresh `u`.
pub fn gen_codeword(sk: &PrivateKey, rng: &mut Drbg) -> Result<SparseVector> {
    gen_codeword_with(sk, rng, CODEWORD_ATTEMPTS)
}

/// As [`gen_codeword`] with an explicit number of attempts.
pub fn gen_codeword_with(sk: &PrivateKey, rng: &mut Drbg, attempts: usize) -> Result<SparseVector> {
    for _ in 0..attempts {
        if let Some(c) = try_codeword(sk, rng)? {
            return Ok(c);
        }
    }
    Err(Error::RetryExhausted)
}

fn try_codeword(sk: &PrivateKey, rng: &mut Drbg) -> Result<Option<SparseVector>> {
    let params = sk.params();
    let (k, p, r) = (params.k(), params.p, params.r());
    let v = sk.v();
    let mut chosen: Vec<usize> = Vec::with_capacity(params.m_g);
    let mut bits = vec![0u64; r.div_ceil(64)];
    let mut red = 0usize;
    let mut row = Vec::new();
    for i in 1..=params.m_g {
        let floor = i * params.w_g.saturating_sub(2);
        let mut accepted = false;
        for _ in 0..ROW_CANDIDATES {
            let j = rng.below(k as u64) as usize;
            if chosen.contains(&j) {
                continue;
            }
            row.clear();
            row.extend(v.row(j / p).iter().map(|&(col, t)| col * p + (j % p + t) % p));
            let hits = row.iter().filter(|&&b| bits[b / 64] >> (b % 64) & 1 == 1).count();
            let next = red + row.len() - 2 * hits;
            if i + next < floor {
                continue;
            }
            for &b in &row {
                bits[b / 64] ^= 1 << (b % 64);
            }
            red = next;
            chosen.push(j);
            accepted = true;
            break;
        }
        if !accepted {
            return Ok(None);
        }
    }
    chosen.sort_unstable();
    let support = chosen.into_iter().chain(SparseVector::from_words(r, &bits).support().iter().map(|&b| k + b)).collect();
    SparseVector::from_support(params.n(), support).map(Some)
}

/// Draw counters until the syndrome lies in the kernel of `R`. Returns
/// `(theta, e, s)` with `e = [0_k | s']` and `s' = M s^T`.
pub fn gen_error(sk: &PrivateKey, message: &[u8], rng: &mut Drbg) -> Result<(u64, SparseVector, SparseVector)> {
    let params = sk.params();
    let bt = &sk.q_factors().bt;
    for _ in 0..THETA_ATTEMPTS {
        let theta = rng.next_u64();
        let s = cw_encode(&hash_digest(params, message, theta), params.r(), params.w)?;
        if !kernel_check(bt, &s) {
            continue;
        }
        let s_prime = sk.m_transpose().row_apply(&s)?;
        let k = params.k();
        let e = SparseVector::from_support(params.n(), s_prime.support().iter().map(|&i| k + i).collect())?;
        return Ok((theta, e, s));
    }
    Err(Error::ThetaExhausted)
}

/// `sigma = (e + c) S^T`.
pub fn sign(sk: &PrivateKey, message: &[u8], rng: &mut Drbg) -> Result<Signature> {
    let (theta, e, _) = gen_error(sk, message, rng)?;
    let c = gen_codeword(sk, rng)?;
    let sigma = sk.s_transpose().row_apply(&e.add(&c)?)?;
    Ok(Signature { sigma, theta })
}
