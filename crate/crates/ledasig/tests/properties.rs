use ledasig::codec;
use ledasig::gf2::{BitPoly, DenseBitMatrix, GenPermutation, MonomialQc, QcMatrix, SparseVector};
use ledasig::{Instance, Signature};
use proptest::prelude::*;

fn poly(p: usize) -> impl Strategy<Value = BitPoly> {
    prop::collection::vec(any::<bool>(), p).prop_map(move |bits| {
        let support: Vec<usize> = (0..p).filter(|&i| bits[i]).collect();
        BitPoly::from_support(p, &support).unwrap()
    })
}

fn poly_triple() -> impl Strategy<Value = (BitPoly, BitPoly, BitPoly)> {
    prop_oneof![Just(3usize), Just(5), Just(7), Just(127)].prop_flat_map(|p| (poly(p), poly(p), poly(p)))
}

fn circulant(a: &BitPoly) -> DenseBitMatrix {
    QcMatrix::from_blocks(1, 1, vec![a.clone()]).unwrap().to_dense()
}

fn vector(len: usize) -> impl Strategy<Value = SparseVector> {
    prop::collection::btree_set(0..len, 0..len.min(40)).prop_map(move |s| SparseVector::from_support(len, s.into_iter().collect()).unwrap())
}

proptest! {
    #![proptest_config(ProptestConfig { cases: 64, ..ProptestConfig::default() })]

    #[test]
    fn ring_laws((a, b, c) in poly_triple()) {
        let p = a.p();
        prop_assert_eq!(a.mul(&b).unwrap(), b.mul(&a).unwrap());
        prop_assert_eq!(a.mul(&b).unwrap().mul(&c).unwrap(), a.mul(&b.mul(&c).unwrap()).unwrap());
        prop_assert_eq!(a.mul(&b.add(&c).unwrap()).unwrap(), a.mul(&b).unwrap().add(&a.mul(&c).unwrap()).unwrap());
        prop_assert_eq!(a.mul(&BitPoly::one(p)).unwrap(), a.clone());
        prop_assert!(a.add(&a).unwrap().is_zero());
    }

    #[test]
    fn circulant_isomorphism((a, b, _) in poly_triple()) {
        let p = a.p();
        prop_assert_eq!(circulant(&a.mul(&b).unwrap()), circulant(&a).mul(&circulant(&b)).unwrap());
        prop_assert_eq!(circulant(&a.add(&b).unwrap()), circulant(&a).add(&circulant(&b)).unwrap());
        let inv_x: Vec<usize> = a.support().iter().map(|&i| (p - i) % p).collect();
        prop_assert_eq!(circulant(&a).transpose(), circulant(&BitPoly::from_support(p, &inv_x).unwrap()));
    }

    #[test]
    fn inverse_iff_nonsingular(p in 2usize..=9, bits in any::<u16>()) {
        let a = BitPoly::from_words(p, vec![bits as u64 & ((1 << p) - 1)]).unwrap();
        let nonsingular = circulant(&a).rank() == p;
        match a.inverse() {
            Ok(inv) => {
                prop_assert!(nonsingular);
                prop_assert_eq!(a.mul(&inv).unwrap(), BitPoly::one(p));
            }
            Err(_) => prop_assert!(!nonsingular),
        }
    }

    #[test]
    fn rotation_and_reversal(a in poly(61), t in 0usize..61) {
        let rot = a.rotate(t);
        prop_assert_eq!(rot, a.mul(&BitPoly::monomial(61, t)).unwrap());
        prop_assert_eq!(a.reverse().reverse(), a.clone());
    }

    #[test]
    fn generalized_permutation_round_trip(
        perm in Just((0..6).collect::<Vec<usize>>()).prop_shuffle(),
        rots in prop::collection::vec(0usize..11, 6),
        v in vector(66),
    ) {
        let g = GenPermutation::new(11, perm, rots).unwrap();
        let moved = g.apply(&v).unwrap();
        prop_assert_eq!(moved.weight(), v.weight());
        prop_assert_eq!(g.transpose_apply(&moved).unwrap(), v.clone());
        prop_assert_eq!(g.to_monomial().row_apply(&v).unwrap(), moved);
    }

    #[test]
    fn monomial_maps_match_dense(
        entries in prop::collection::vec(prop::collection::btree_map(0usize..4, 0usize..7, 0..4), 3),
        v in vector(21),
        u in vector(28),
    ) {
        let rows: Vec<Vec<(usize, usize)>> = entries.into_iter().map(|m| m.into_iter().collect()).collect();
        let m = MonomialQc::new(4, 7, rows).unwrap();
        let dense = m.to_qc().to_dense();
        let row = m.row_apply(&v).unwrap();
        let dt = dense.transpose();
        let want = dt.mul_vec(&v.to_words());
        for i in 0..28 {
            prop_assert_eq!(row.contains(i), want[i]);
        }
        let col = m.col_apply(&u).unwrap();
        let want = dense.mul_vec(&u.to_words());
        for i in 0..21 {
            prop_assert_eq!(col.contains(i), want[i]);
        }
    }

    #[test]
    fn sparse_addition_is_xor(a in vector(200), b in vector(200)) {
        let sum = a.add(&b).unwrap();
        let words: Vec<u64> = a.to_words().iter().zip(b.to_words()).map(|(x, y)| x ^ y).collect();
        prop_assert_eq!(sum, SparseVector::from_words(200, &words));
    }
}

proptest! {
    #![proptest_config(ProptestConfig { cases: 16, ..ProptestConfig::default() })]

    #[test]
    fn signature_encoding_round_trips(support in prop::collection::btree_set(0usize..28829, 0..200), theta in any::<u64>()) {
        let params = Instance::A3.params();
        let sig = Signature { sigma: SparseVector::from_support(params.n(), support.into_iter().collect()).unwrap(), theta };
        let bytes = codec::encode_signature(&params, &sig).unwrap();
        prop_assert_eq!(bytes.len(), codec::HEADER_LEN + codec::signature_payload_len(&params));
        prop_assert_eq!(codec::decode_signature(&bytes).unwrap(), (Instance::A3, sig));
    }

    #[test]
    fn truncated_encodings_are_rejected(cut in 0usize..3646) {
        let params = Instance::A3.params();
        let sig = Signature { sigma: SparseVector::zero(params.n()), theta: 7 };
        let bytes = codec::encode_signature(&params, &sig).unwrap();
        prop_assert!(matches!(codec::decode_signature(&bytes[..cut]), Err(ledasig::Error::Format(_))));
    }
}
