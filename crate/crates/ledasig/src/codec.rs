//! Byte formats for keys and signatures.
//!
//! Every object starts with a 6-byte header: the magic `LSG1`, an object
//! kind and the instance id. Circulant blocks are stored as their first row,
//! little-endian bits, padded to a whole number of 64-bit words.

use crate::error::{Error, Result};
use crate::gf2::{BitPoly, DenseBitMatrix, MonomialQc, QcMatrix, SparseVector};
use crate::keygen::{PrivateKey, PublicKey, QFactors, SFactors};
use crate::params::{Instance, SysParams};
use crate::sign::Signature;

pub const MAGIC: [u8; 4] = *b"LSG1";
pub const HEADER_LEN: usize = 6;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
#[repr(u8)]
pub enum Kind {
    PublicKey = 0,
    PrivateKey = 1,
    PrivateKeyAtRest = 2,
    Signature = 3,
}

impl Kind {
    fn from_byte(b: u8) -> Option<Self> {
        match b {
            0 => Some(Kind::PublicKey),
            1 => Some(Kind::PrivateKey),
            2 => Some(Kind::PrivateKeyAtRest),
            3 => Some(Kind::Signature),
            _ => None,
        }
    }
}

/// Bytes used by one circulant block.
pub fn block_bytes(p: usize) -> usize {
    p.div_ceil(64) * 8
}

pub fn public_key_payload_len(params: &SysParams) -> usize {
    params.r0 * params.n0 * block_bytes(params.p)
}

pub fn signature_payload_len(params: &SysParams) -> usize {
    params.n0 * block_bytes(params.p) + 8
}

pub fn at_rest_payload_len(params: &SysParams) -> usize {
    params.seed_len() + params.z * params.r0.div_ceil(8)
}

/// Read the header without decoding the payload.
pub fn peek(bytes: &[u8]) -> Result<(Kind, Instance)> {
    if bytes.len() < HEADER_LEN {
        return Err(Error::Format("shorter than the header".into()));
    }
    if bytes[..4] != MAGIC {
        return Err(Error::Format("bad magic".into()));
    }
    let kind = Kind::from_byte(bytes[4]).ok_or_else(|| Error::Format(format!("unknown object kind {}", bytes[4])))?;
    let inst = Instance::from_id(bytes[5]).ok_or_else(|| Error::Format(format!("unknown instance id {}", bytes[5])))?;
    Ok((kind, inst))
}

fn header(kind: Kind, params: &SysParams) -> Result<Vec<u8>> {
    let inst = Instance::of(params).ok_or_else(|| Error::Format("only named instances can be serialized".into()))?;
    let mut out = MAGIC.to_vec();
    out.push(kind as u8);
    out.push(inst.id());
    Ok(out)
}

fn open(bytes: &[u8], want: Kind) -> Result<(SysParams, Reader<'_>)> {
    let (kind, inst) = peek(bytes)?;
    if kind != want {
        return Err(Error::Format(format!("expected {want:?}, found {kind:?}")));
    }
    Ok((inst.params(), Reader { buf: &bytes[HEADER_LEN..] }))
}

struct Reader<'a> {
    buf: &'a [u8],
}

impl<'a> Reader<'a> {
    fn take(&mut self, n: usize) -> Result<&'a [u8]> {
        if self.buf.len() < n {
            return Err(Error::Format("truncated input".into()));
        }
        let (head, tail) = self.buf.split_at(n);
        self.buf = tail;
        Ok(head)
    }

    fn u16s(&mut self, n: usize) -> Result<Vec<usize>> {
        Ok(self.take(2 * n)?.chunks_exact(2).map(|c| u16::from_le_bytes([c[0], c[1]]) as usize).collect())
    }

    fn block(&mut self, p: usize) -> Result<BitPoly> {
        let words = self.take(block_bytes(p))?.chunks_exact(8).map(|c| u64::from_le_bytes(c.try_into().unwrap())).collect();
        BitPoly::from_words(p, words).map_err(|_| Error::Format("stray bits past the block length".into()))
    }

    fn columns(&mut self, rows: usize, cols: usize) -> Result<DenseBitMatrix> {
        let stride = rows.div_ceil(8);
        let mut m = DenseBitMatrix::zeros(rows, cols);
        for j in 0..cols {
            let col = self.take(stride)?;
            for i in 0..stride * 8 {
                let bit = col[i / 8] >> (i % 8) & 1 == 1;
                if i >= rows && bit {
                    return Err(Error::Format("stray bits past the column length".into()));
                }
                if bit {
                    m.set(i, j, true);
                }
            }
        }
        Ok(m)
    }

    fn finish(self) -> Result<()> {
        if self.buf.is_empty() {
            Ok(())
        } else {
            Err(Error::Format(format!("{} trailing bytes", self.buf.len())))
        }
    }
}

fn put_block(out: &mut Vec<u8>, b: &BitPoly) {
    for w in b.words() {
        out.extend_from_slice(&w.to_le_bytes());
    }
}

fn put_u16s(out: &mut Vec<u8>, xs: &[usize]) {
    for &x in xs {
        out.extend_from_slice(&(x as u16).to_le_bytes());
    }
}

fn put_columns(out: &mut Vec<u8>, m: &DenseBitMatrix) {
    for j in 0..m.cols() {
        let mut col = vec![0u8; m.rows().div_ceil(8)];
        for i in 0..m.rows() {
            if m.get(i, j) {
                col[i / 8] |= 1 << (i % 8);
            }
        }
        out.extend_from_slice(&col);
    }
}

pub fn encode_public_key(pk: &PublicKey) -> Result<Vec<u8>> {
    let mut out = header(Kind::PublicKey, pk.params())?;
    out.reserve(public_key_payload_len(pk.params()));
    for b in pk.matrix().blocks() {
        put_block(&mut out, b);
    }
    Ok(out)
}

pub fn decode_public_key(bytes: &[u8]) -> Result<PublicKey> {
    let (params, mut rd) = open(bytes, Kind::PublicKey)?;
    let blocks = (0..params.r0 * params.n0).map(|_| rd.block(params.p)).collect::<Result<Vec<_>>>()?;
    rd.finish()?;
    PublicKey::new(params, QcMatrix::from_blocks(params.r0, params.n0, blocks)?)
}

pub fn encode_signature(params: &SysParams, sig: &Signature) -> Result<Vec<u8>> {
    if sig.sigma.len() != params.n() {
        return Err(Error::Dimension(format!("signature has {} bits, expected {}", sig.sigma.len(), params.n())));
    }
    let mut out = header(Kind::Signature, params)?;
    for b in sig.sigma.to_blocks(params.p)? {
        put_block(&mut out, &b);
    }
    out.extend_from_slice(&sig.theta.to_le_bytes());
    Ok(out)
}

pub fn decode_signature(bytes: &[u8]) -> Result<(Instance, Signature)> {
    let (params, mut rd) = open(bytes, Kind::Signature)?;
    let blocks = (0..params.n0).map(|_| rd.block(params.p)).collect::<Result<Vec<_>>>()?;
    let theta = u64::from_le_bytes(rd.take(8)?.try_into().unwrap());
    rd.finish()?;
    let inst = Instance::of(&params).expect("header names an instance");
    Ok((inst, Signature { sigma: SparseVector::from_blocks(&blocks), theta }))
}

/// Full factor representation: seed, `V`, the factors of `S` and of `Q`.
/// Indices and exponents are 16-bit little-endian.
pub fn encode_private_key(sk: &PrivateKey) -> Result<Vec<u8>> {
    let params = sk.params();
    let mut out = header(Kind::PrivateKey, params)?;
    out.extend_from_slice(sk.seed());
    let v = sk.v();
    for i in 0..v.rows() {
        for &(col, t) in v.row(i) {
            put_u16s(&mut out, &[col, t]);
        }
    }
    let s = sk.s_factors();
    for xs in [&s.lambda, &s.phi, &s.pi1, &s.pi2] {
        put_u16s(&mut out, xs);
    }
    put_u16s(&mut out, &s.e.support());
    let q = sk.q_factors();
    put_u16s(&mut out, &q.pi);
    put_u16s(&mut out, &q.psi);
    put_columns(&mut out, &q.a);
    put_columns(&mut out, &q.bt);
    put_columns(&mut out, &q.dinv);
    Ok(out)
}

pub fn decode_private_key(bytes: &[u8]) -> Result<PrivateKey> {
    let (params, mut rd) = open(bytes, Kind::PrivateKey)?;
    let (n0, r0, p, z) = (params.n0, params.r0, params.p, params.z);
    let seed = rd.take(params.seed_len())?.to_vec();
    let mut entries = Vec::with_capacity(params.k0());
    for _ in 0..params.k0() {
        let flat = rd.u16s(2 * (params.w_g - 1))?;
        entries.push(flat.chunks_exact(2).map(|c| (c[0], c[1])).collect());
    }
    let v = MonomialQc::new(r0, p, entries).map_err(|e| Error::Format(format!("V: {e}")))?;
    let lambda = rd.u16s(n0)?;
    let phi = rd.u16s(n0)?;
    let pi1 = rd.u16s(n0)?;
    let pi2 = rd.u16s(n0)?;
    let e = BitPoly::from_support(n0, &rd.u16s(params.m_s)?).map_err(|e| Error::Format(format!("E: {e}")))?;
    let pi = rd.u16s(r0)?;
    let psi = rd.u16s(r0)?;
    let a = rd.columns(r0, z)?;
    let bt = rd.columns(r0, z)?;
    let dinv = rd.columns(z, z)?;
    rd.finish()?;
    let s = SFactors { lambda, phi, pi1, pi2, e };
    let q = QFactors { pi, psi, a, bt, dinv };
    PrivateKey::from_parts(params, seed, v, s, q).map_err(|e| Error::Format(format!("private key: {e}")))
}

/// Compressed private key: the seed and `B^T` as `z` packed columns.
pub fn encode_private_key_at_rest(sk: &PrivateKey) -> Result<Vec<u8>> {
    let mut out = header(Kind::PrivateKeyAtRest, sk.params())?;
    out.extend_from_slice(sk.seed());
    put_columns(&mut out, &sk.q_factors().bt);
    Ok(out)
}

/// Regenerate the key from its seed. The stored `B^T` must match the replay.
pub fn expand_private_key(bytes: &[u8]) -> Result<PrivateKey> {
    let (params, mut rd) = open(bytes, Kind::PrivateKeyAtRest)?;
    let seed = rd.take(params.seed_len())?;
    let bt = rd.columns(params.r0, params.z)?;
    rd.finish()?;
    let sk = PrivateKey::generate(seed, &params)?;
    if sk.q_factors().bt != bt {
        return Err(Error::Integrity("stored B^T differs from the seed replay".into()));
    }
    Ok(sk)
}
