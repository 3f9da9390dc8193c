//! Signature verification.

use crate::error::{Error, Result};
use crate::keygen::PublicKey;
use crate::sign::{cw_encode, hash_digest, Signature};

/// Accept iff `wt(sigma)` is within the bound and `H' sigma^T` equals the
/// constant-weight encoding of `H(m || theta)`. A `sigma` of the wrong length
/// is a format error. The weight gate runs before any matrix work, and the
/// final comparison always covers all `r` bits.
pub fn verify(pk: &PublicKey, message: &[u8], sig: &Signature) -> Result<bool> {
    let params = pk.params();
    if sig.sigma.len() != params.n() {
        return Err(Error::Format(format!("signature has {} bits, expected {}", sig.sigma.len(), params.n())));
    }
    if sig.sigma.weight() > params.sigma_weight_bound() {
        return Ok(false);
    }
    let expected = cw_encode(&hash_digest(params, message, sig.theta), params.r(), params.w)?;
    let got = pk.syndrome(&sig.sigma)?;
    let diff = expected.to_words().iter().zip(got.to_words()).fold(0u64, |acc, (a, b)| acc | (a ^ b));
    Ok(diff == 0)
}
