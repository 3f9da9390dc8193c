//! LEDAsig: a digital signature scheme built on quasi-cyclic low-density
//! generator-matrix codes, plus a security estimator for its parameter sets.
//!
//! The private key hides a sparse QC-LDGM code behind two structured
//! transformations `S` and `Q`. Signing turns a message digest into a
//! constant-weight syndrome, adds a random sparse codeword and scrambles the
//! result through `S`. Verification multiplies the signature by the dense
//! public matrix and compares against the re-derived syndrome.
//!
//! ```
//! use ledasig::{keypair_from_seed, sign, verify, Drbg, SysParams};
//!
//! let params = SysParams::toy();
//! let (sk, pk) = keypair_from_seed(&[7u8; 32], &params).unwrap();
//! let mut rng = Drbg::new(b"doc", b"example");
//! let sig = sign(&sk, b"hello", &mut rng).unwrap();
//! assert!(verify(&pk, b"hello", &sig).unwrap());
//! assert!(!verify(&pk, b"hullo", &sig).unwrap());
//! ```

pub mod codec;
pub mod drbg;
pub mod error;
pub mod estimator;
pub mod gf2;
pub mod keygen;
pub mod params;
pub mod sign;
pub mod verify;

pub use drbg::Drbg;
pub use error::{Error, Result};
pub use keygen::{keypair_from_seed, PrivateKey, PublicKey};
pub use params::{Instance, SysParams};
pub use sign::{sign, Signature};
pub use verify::verify;
