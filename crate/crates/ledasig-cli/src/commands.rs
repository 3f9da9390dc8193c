use std::io::Write;
use std::path::{Path, PathBuf};
use std::time::Instant;

use ledasig::codec::{self, Kind};
use ledasig::estimator::{full_report, AttackReport};
use ledasig::{keypair_from_seed, Drbg, Instance, PrivateKey, SysParams};
use serde_json::json;

use crate::{CliError, Format, SeedArgs, Select};

type Result<T> = std::result::Result<T, CliError>;

/// Hex seed used by tests to make every command deterministic.
const SEED_ENV: &str = "LEDASIG_SEED";

fn instance(name: &str) -> Result<Instance> {
    Instance::from_name(name).ok_or_else(|| CliError::Args(format!("unknown instance '{name}'")))
}

fn read(path: &Path) -> Result<Vec<u8>> {
    std::fs::read(path).map_err(|e| CliError::Io(format!("{}: {e}", path.display())))
}

/// Write through a temporary file in the same directory, then rename.
fn write_atomic(path: &Path, bytes: &[u8]) -> Result<()> {
    let io = |e: std::io::Error| CliError::Io(format!("{}: {e}", path.display()));
    let dir = match path.parent() {
        Some(d) if !d.as_os_str().is_empty() => d.to_path_buf(),
        _ => PathBuf::from("."),
    };
    let mut tmp = tempfile::NamedTempFile::new_in(&dir).map_err(io)?;
    tmp.write_all(bytes).map_err(io)?;
    tmp.as_file().sync_all().map_err(io)?;
    tmp.persist(path).map_err(|e| io(e.error))?;
    Ok(())
}

fn env_seed() -> Result<Option<Vec<u8>>> {
    match std::env::var(SEED_ENV) {
        Ok(h) => hex::decode(h.trim()).map(Some).map_err(|e| CliError::Args(format!("{SEED_ENV}: {e}"))),
        Err(_) => Ok(None),
    }
}

fn os_random(len: usize) -> Result<Vec<u8>> {
    let mut buf = vec![0u8; len];
    getrandom::fill(&mut buf).map_err(|e| CliError::Io(format!("system randomness: {e}")))?;
    Ok(buf)
}

/// Randomness for signing: the environment seed when set, else the OS.
fn signing_rng(label: &[u8]) -> Result<Drbg> {
    let seed = match env_seed()? {
        Some(s) => s,
        None => os_random(32)?,
    };
    Ok(Drbg::new(label, &seed))
}

fn resolve_seed(args: &SeedArgs, params: &SysParams) -> Result<Vec<u8>> {
    let seed = if let Some(path) = &args.seed_file {
        read(path)?
    } else if let Some(h) = &args.seed_hex {
        hex::decode(h.trim()).map_err(|e| CliError::Args(format!("--seed-hex: {e}")))?
    } else if args.random {
        os_random(params.seed_len())?
    } else if let Some(s) = env_seed()? {
        s
    } else {
        return Err(CliError::Args(format!("a seed is required: --seed-file, --seed-hex, --random or {SEED_ENV}")));
    };
    if seed.len() != params.seed_len() {
        return Err(CliError::Args(format!("seed must be {} bytes, got {}", params.seed_len(), seed.len())));
    }
    Ok(seed)
}

pub fn keygen(name: &str, seed: &SeedArgs, prefix: &Path) -> Result<u8> {
    let inst = instance(name)?;
    let params = inst.params();
    let seed = resolve_seed(seed, &params)?;
    let (sk, pk) = keypair_from_seed(&seed, &params)?;
    let pk_bytes = codec::encode_public_key(&pk)?;
    let sk_bytes = codec::encode_private_key_at_rest(&sk)?;
    let with_ext = |ext: &str| {
        let mut s = prefix.as_os_str().to_owned();
        s.push(ext);
        PathBuf::from(s)
    };
    let (pk_path, sk_path) = (with_ext(".pk"), with_ext(".sk"));
    write_atomic(&pk_path, &pk_bytes)?;
    write_atomic(&sk_path, &sk_bytes)?;
    println!("{inst}: wrote {} ({} bytes) and {} ({} bytes)", pk_path.display(), pk_bytes.len(), sk_path.display(), sk_bytes.len());
    Ok(0)
}

fn load_private_key(bytes: &[u8]) -> Result<PrivateKey> {
    let (kind, _) = codec::peek(bytes)?;
    Ok(match kind {
        Kind::PrivateKeyAtRest => codec::expand_private_key(bytes)?,
        Kind::PrivateKey => codec::decode_private_key(bytes)?,
        other => return Err(CliError::Format(format!("expected a private key, found {other:?}"))),
    })
}

pub fn sign(sk: &Path, message: &Path, out: &Path) -> Result<u8> {
    let sk = load_private_key(&read(sk)?)?;
    let msg = read(message)?;
    let mut rng = signing_rng(b"LEDAsig/cli-sign")?;
    let sig = ledasig::sign(&sk, &msg, &mut rng)?;
    write_atomic(out, &codec::encode_signature(sk.params(), &sig)?)?;
    println!("theta={} weight={}", sig.theta, sig.sigma.weight());
    Ok(0)
}

pub fn verify(pk: &Path, message: &Path, sig: &Path) -> Result<u8> {
    let pk = codec::decode_public_key(&read(pk)?)?;
    let (inst, sig) = codec::decode_signature(&read(sig)?)?;
    let msg = read(message)?;
    if inst.params() != *pk.params() {
        return Err(CliError::Format(format!("signature is for {inst}, key is for {}", Instance::of(pk.params()).unwrap())));
    }
    let ok = ledasig::verify(&pk, &msg, &sig)?;
    println!("{}", if ok { "ACCEPT" } else { "REJECT" });
    Ok(if ok { 0 } else { 1 })
}

fn parse_params(s: &str) -> Result<SysParams> {
    let v: Vec<usize> = s
        .split(',')
        .map(|x| x.trim().parse().map_err(|_| CliError::Args(format!("--params: '{x}' is not a number"))))
        .collect::<Result<_>>()?;
    let [n0, r0, p, z, m_s, w, w_g, m_g, cat] = v[..] else {
        return Err(CliError::Args("--params takes n0,r0,p,z,m_s,w,w_g,m_g,category".into()));
    };
    let cat = u8::try_from(cat).ok().filter(|c| (1..=5).contains(c)).ok_or_else(|| CliError::Args("category must be 1..5".into()))?;
    Ok(SysParams::new(n0, r0, p, z, m_s, w, w_g, m_g, cat)?)
}

fn selected(select: &Select) -> Result<Vec<(String, SysParams)>> {
    if let Some(s) = &select.params {
        return Ok(vec![("custom".into(), parse_params(s)?)]);
    }
    if let Some(name) = &select.instance {
        let i = instance(name)?;
        return Ok(vec![(i.name().into(), i.params())]);
    }
    if select.all {
        return Ok(Instance::ALL.iter().map(|i| (i.name().to_string(), i.params())).collect());
    }
    Err(CliError::Args("choose --instance, --all or --params".into()))
}

pub fn params(select: &Select, format: Format) -> Result<u8> {
    let rows = selected(select)?;
    if format == Format::Table {
        println!(
            "{:<8} {:>4} {:>4} {:>5} {:>7} {:>7} {:>7} {:>2} {:>3} {:>3} {:>4} {:>3} {:>3} {:>10} {:>7} {:>5}",
            "id", "n0", "r0", "p", "n", "k", "r", "z", "m_s", "w", "w_g", "m_g", "cat", "pk_bytes", "sig", "sk"
        );
    }
    for (name, p) in rows {
        let (pk, sig, sk) = (codec::public_key_payload_len(&p), codec::signature_payload_len(&p), codec::at_rest_payload_len(&p));
        match format {
            Format::Table => println!(
                "{:<8} {:>4} {:>4} {:>5} {:>7} {:>7} {:>7} {:>2} {:>3} {:>3} {:>4} {:>3} {:>3} {:>10} {:>7} {:>5}",
                name,
                p.n0,
                p.r0,
                p.p,
                p.n(),
                p.k(),
                p.r(),
                p.z,
                p.m_s,
                p.w,
                p.w_g,
                p.m_g,
                p.category,
                pk,
                sig,
                sk
            ),
            Format::Jsonl => println!(
                "{}",
                json!({
                    "id": name, "n0": p.n0, "r0": p.r0, "p": p.p, "n": p.n(), "k": p.k(), "r": p.r(),
                    "z": p.z, "m_s": p.m_s, "w": p.w, "w_g": p.w_g, "m_g": p.m_g, "category": p.category,
                    "public_key_bytes": pk, "signature_bytes": sig, "private_key_at_rest_bytes": sk,
                })
            ),
        }
    }
    Ok(0)
}

fn report_json(name: &str, r: &AttackReport) -> serde_json::Value {
    let p = &r.params;
    json!({
        "id": name, "n": p.n(), "k": p.k(), "r": p.r(), "lambda": r.lambda,
        "log2_ns": r.log2_ns, "log2_awc": r.log2_awc,
        "wf_sia": r.sia.log2_wf, "sia_l": r.sia.l, "sia_w_l": r.sia.w_l, "wf_sia_grover": r.sia_pq_conservative(),
        "wf_lca": r.lca.log2_wf, "lca_l": r.lca.l, "wf_lca_grover": r.lca_pq_conservative(),
        "wf_da_pq": r.da_pq.log2_wf, "da_stern_l": r.da_pq.params.l, "da_stern_j": r.da_pq.params.j,
        "wf_kra_pq": r.kra_pq.log2_wf, "kra_stern_l": r.kra_pq.params.l, "kra_stern_j": r.kra_pq.params.j,
        "wf_da_cl_approx": r.da_cl_approx, "wf_kra_cl_approx": r.kra_cl_approx, "classical_approximate": true,
        "collision_cl": r.collision_cl, "collision_pq": r.collision_pq,
        "n_lambda": r.n_lambda, "n_tilde_lambda": r.n_tilde_lambda,
        "min_wf": r.min_wf(), "pass": r.passes(),
    })
}

pub fn estimate(select: &Select, lambda: Option<f64>, format: Format) -> Result<u8> {
    let rows = selected(select)?;
    if let Some(l) = lambda {
        if !(l > 0.0 && l.is_finite()) {
            return Err(CliError::Args("--lambda must be positive".into()));
        }
    }
    if format == Format::Table {
        println!(
            "{:<8} {:>7} {:>6} {:>7} {:>8} {:>8} {:>8} {:>8} {:>8} {:>9} {:>9} {:>8} {:>8} {:>4} {}",
            "id", "n", "k", "r", "N_s", "A_wc", "SIA", "LCA", "DA_pq", "KRA_pq", "DA_cl~", "KRA_cl~", "N~_SL", "lam", "verdict"
        );
    }
    for (name, p) in rows {
        let r = full_report(&p, lambda.unwrap_or(p.security_bits() as f64));
        match format {
            Format::Table => println!(
                "{:<8} {:>7} {:>6} {:>7} {:>8.2} {:>8.2} {:>8.2} {:>8.2} {:>8.2} {:>9.2} {:>9.2} {:>8.2} {:>8} {:>4} {}",
                name,
                p.n(),
                p.k(),
                p.r(),
                r.log2_ns,
                r.log2_awc,
                r.sia.log2_wf,
                r.lca.log2_wf,
                r.da_pq.log2_wf,
                r.kra_pq.log2_wf,
                r.da_cl_approx,
                r.kra_cl_approx,
                r.n_tilde_lambda,
                r.lambda,
                if r.passes() { "PASS" } else { "FAIL" }
            ),
            Format::Jsonl => println!("{}", report_json(&name, &r)),
        }
    }
    if format == Format::Table {
        println!("~ classical decoding figures use the asymptotic BJMM exponent and are approximate");
    }
    Ok(0)
}

fn mean_std(xs: &[f64]) -> (f64, f64) {
    let n = xs.len() as f64;
    let mean = xs.iter().sum::<f64>() / n;
    let var = if xs.len() > 1 { xs.iter().map(|x| (x - mean).powi(2)).sum::<f64>() / (n - 1.0) } else { 0.0 };
    (mean, var.sqrt())
}

pub fn bench(name: &str, iters: usize, format: Format) -> Result<u8> {
    let inst = instance(name)?;
    if iters == 0 {
        return Err(CliError::Args("--iters must be at least 1".into()));
    }
    let params = inst.params();
    let mut rng = signing_rng(b"LEDAsig/cli-bench")?;
    let ms = |t: Instant| t.elapsed().as_secs_f64() * 1e3;
    let mut times: [Vec<f64>; 4] = Default::default();
    for _ in 0..iters {
        let mut seed = vec![0u8; params.seed_len()];
        rng.fill(&mut seed);
        let mut msg = [0u8; 64];
        rng.fill(&mut msg);

        let t = Instant::now();
        let (sk, pk) = keypair_from_seed(&seed, &params)?;
        times[0].push(ms(t));

        let t = Instant::now();
        let sig = ledasig::sign(&sk, &msg, &mut rng)?;
        times[1].push(ms(t));

        let at_rest = codec::encode_private_key_at_rest(&sk)?;
        let t = Instant::now();
        let sk2 = codec::expand_private_key(&at_rest)?;
        ledasig::sign(&sk2, &msg, &mut rng)?;
        times[2].push(ms(t));

        // The evaluated form of the public key is built once per key.
        pk.plan();
        let t = Instant::now();
        let ok = ledasig::verify(&pk, &msg, &sig)?;
        times[3].push(ms(t));
        if !ok {
            return Err(CliError::Format("a fresh signature failed to verify".into()));
        }
    }
    let labels = ["keygen", "sign", "sign+decompress", "verify"];
    if format == Format::Table {
        println!("{inst}, {iters} iterations");
        println!("{:<16} {:>12} {:>12}", "operation", "mean_ms", "stddev_ms");
    }
    for (label, xs) in labels.iter().zip(&times) {
        let (mean, std) = mean_std(xs);
        match format {
            Format::Table => println!("{label:<16} {mean:>12.3} {std:>12.3}"),
            Format::Jsonl => println!("{}", json!({"instance": inst.name(), "op": label, "iters": iters, "mean_ms": mean, "stddev_ms": std})),
        }
    }
    Ok(0)
}
