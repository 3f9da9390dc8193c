use ledasig::codec;
use ledasig::gf2::SparseVector;
use ledasig::sign::{gen_codeword, gen_error, kernel_check};
use ledasig::{keypair_from_seed, sign, verify, Drbg, Error, Instance, Signature, SysParams};

#[test]
fn toy_round_trips_and_rejections() {
    let params = SysParams::toy();
    let mut rng = Drbg::new(b"scheme", b"toy");
    for seed in 0..10u8 {
        let (sk, pk) = keypair_from_seed(&[seed; 32], &params).unwrap();
        for m in 0..20u8 {
            let msg = [m, seed];
            let sig = sign(&sk, &msg, &mut rng).unwrap();
            assert!(verify(&pk, &msg, &sig).unwrap());
            assert!(!verify(&pk, &[m ^ 1, seed], &sig).unwrap());
            let bit = rng.below(params.n() as u64) as usize;
            let bad = Signature { sigma: sig.sigma.flipped(bit), theta: sig.theta };
            assert!(!verify(&pk, &msg, &bad).unwrap());
            assert!(!verify(&pk, &msg, &Signature { theta: sig.theta ^ 1, ..sig.clone() }).unwrap());
        }
    }
}

#[test]
fn verifier_identity_holds() {
    let params = SysParams::toy();
    let (sk, pk) = keypair_from_seed(&[4u8; 32], &params).unwrap();
    let mut rng = Drbg::new(b"scheme", b"identity");
    for _ in 0..50 {
        let (theta, e, s) = gen_error(&sk, b"msg", &mut rng).unwrap();
        assert_eq!(e.weight(), params.w);
        let c = gen_codeword(&sk, &mut rng).unwrap();
        let sigma = sk.s_transpose().row_apply(&e.add(&c).unwrap()).unwrap();
        assert_eq!(pk.syndrome(&sigma).unwrap(), s);
        assert!(verify(&pk, b"msg", &Signature { sigma, theta }).unwrap());
    }
}

#[test]
fn keys_are_deterministic_in_the_seed() {
    let params = Instance::A3.params();
    let (sk1, pk1) = keypair_from_seed(&[2u8; 32], &params).unwrap();
    let (sk2, pk2) = keypair_from_seed(&[2u8; 32], &params).unwrap();
    assert_eq!(codec::encode_public_key(&pk1).unwrap(), codec::encode_public_key(&pk2).unwrap());
    assert_eq!(codec::encode_private_key(&sk1).unwrap(), codec::encode_private_key(&sk2).unwrap());
    let (_, pk3) = keypair_from_seed(&[3u8; 32], &params).unwrap();
    assert_ne!(pk1, pk3);
}

#[test]
fn heavy_signatures_fail_before_any_syndrome() {
    let params = Instance::A3.params();
    let (_, pk) = keypair_from_seed(&[8u8; 32], &params).unwrap();
    let heavy = SparseVector::from_support(params.n(), (0..=params.sigma_weight_bound()).collect()).unwrap();
    assert!(!verify(&pk, b"m", &Signature { sigma: heavy, theta: 0 }).unwrap());
    assert_eq!(pk.syndrome_count(), 0);
    assert!(matches!(verify(&pk, b"m", &Signature { sigma: SparseVector::zero(10), theta: 0 }), Err(Error::Format(_))));
    assert!(!verify(&pk, b"m", &Signature { sigma: SparseVector::zero(params.n()), theta: 0 }).unwrap());
    assert_eq!(pk.syndrome_count(), 1);
}

#[test]
fn a3_signatures_verify_and_respect_the_weight_bound() {
    let params = Instance::A3.params();
    let (sk, pk) = keypair_from_seed(&[6u8; 32], &params).unwrap();
    let mut rng = Drbg::new(b"scheme", b"a3");
    let mut thetas = std::collections::HashSet::new();
    for i in 0..30u32 {
        let msg = i.to_le_bytes();
        let sig = sign(&sk, &msg, &mut rng).unwrap();
        assert!(sig.sigma.weight() <= params.sigma_weight_bound());
        assert!(verify(&pk, &msg, &sig).unwrap());
        thetas.insert(sig.theta);
    }
    assert_eq!(thetas.len(), 30);
}

#[test]
fn a3_codewords_stay_in_the_window() {
    let params = Instance::A3.params();
    let (sk, _) = keypair_from_seed(&[6u8; 32], &params).unwrap();
    let h = sk.h_matrix();
    let mut rng = Drbg::new(b"scheme", b"cw");
    let hi = params.codeword_weight();
    for _ in 0..100 {
        let c = gen_codeword(&sk, &mut rng).unwrap();
        assert!((hi - 2 * params.m_g..=hi).contains(&c.weight()), "{}", c.weight());
        assert_eq!(c.support().iter().filter(|&&i| i < params.k()).count(), params.m_g);
        assert!(h.mul_vec(&c).unwrap().is_empty());
    }
}

#[test]
fn kernel_fraction_is_near_two_to_minus_z_exhaustively() {
    // Weight-2 syndromes of the toy code, all of them.
    let params = SysParams::toy();
    let (sk, _) = keypair_from_seed(&[1u8; 32], &params).unwrap();
    let bt = &sk.q_factors().bt;
    let r = params.r();
    let (mut pass, mut total) = (0, 0);
    for a in 0..r {
        for b in a + 1..r {
            total += 1;
            pass += kernel_check(bt, &SparseVector::from_support(r, vec![a, b]).unwrap()) as usize;
        }
    }
    let frac = pass as f64 / total as f64;
    assert!((frac - 0.25).abs() < 0.1, "{frac}");
}

#[test]
fn object_sizes_follow_the_packing_formulas() {
    let sizes: [(Instance, usize, usize); 3] = [(Instance::A3, 323_248, 3640), (Instance::B6, 3_236_320, 28_648), (Instance::C6, 11_940_912, 91_160)];
    for (inst, pk, sig) in sizes {
        let p = inst.params();
        assert_eq!(codec::public_key_payload_len(&p), pk, "{inst}");
        assert_eq!(codec::signature_payload_len(&p), sig, "{inst}");
    }
    assert_eq!(codec::at_rest_payload_len(&Instance::A3.params()), 56);
}

#[test]
fn at_rest_key_expands_to_the_same_signer() {
    let params = Instance::A6.params();
    let (sk, pk) = keypair_from_seed(&[9u8; 32], &params).unwrap();
    let bytes = codec::encode_private_key_at_rest(&sk).unwrap();
    let sk2 = codec::expand_private_key(&bytes).unwrap();
    assert_eq!(sk2, sk);
    let sig = sign(&sk2, b"x", &mut Drbg::new(b"scheme", b"a6")).unwrap();
    let pk2 = codec::decode_public_key(&codec::encode_public_key(&pk).unwrap()).unwrap();
    assert!(verify(&pk2, b"x", &sig).unwrap());
}
