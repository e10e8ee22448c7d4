use std::collections::HashSet;

use bgslab::codec::{
    decode_cnf, encode_cnf, from_dyadic, pair, to_dyadic, triple_decode, triple_encode, unpair,
    CnfFormula, DecodedCnf, Literal, Natural,
};
use proptest::prelude::*;

fn n(v: u64) -> Natural {
    Natural::from(v)
}

#[test]
fn dyadic_round_trip_initial_segment() {
    let mut seen = HashSet::new();
    for i in 0..100_000u64 {
        let s = to_dyadic(&n(i));
        assert_eq!(from_dyadic(&s).unwrap(), n(i));
        assert_eq!(s.len() as u32, (i + 1).ilog2());
        assert!(seen.insert(s));
    }
}

#[test]
fn pairing_bijective_and_monotone() {
    for x in 0..500u64 {
        for y in 0..500u64 {
            let z = pair(&n(x), &n(y));
            assert_eq!(unpair(&z), (n(x), n(y)));
            assert!(z >= n(x.max(y)));
        }
    }
    for z in 0..100_000u64 {
        let (x, y) = unpair(&n(z));
        assert_eq!(pair(&x, &y), n(z));
    }
}

#[test]
fn triples_injective() {
    let mut seen = HashSet::new();
    for m in 0..=20u64 {
        for a in 0..=20u64 {
            for b in 0..=20u64 {
                let t = triple_encode(&n(m), &n(a), &n(b));
                assert_eq!(triple_decode(&t), (n(m), n(a), n(b)));
                assert!(seen.insert(t));
            }
        }
    }
    assert_eq!(seen.len(), 9261);
}

#[test]
fn cnf_decoding_is_total() {
    let mut valid = 0;
    for x in 0..10_000u64 {
        match decode_cnf(&n(x)) {
            DecodedCnf::Valid(f) => {
                valid += 1;
                assert_eq!(encode_cnf(&f).unwrap(), n(x));
            }
            DecodedCnf::Invalid(_) => {}
        }
    }
    assert!(valid > 0);
}

fn formula() -> impl Strategy<Value = CnfFormula> {
    let lit = (1u64..=6, any::<bool>()).prop_map(|(var, negated)| Literal { var, negated });
    prop::collection::vec(prop::collection::vec(lit, 0..5), 0..5).prop_map(CnfFormula::new)
}

proptest! {
    #[test]
    fn cnf_round_trip(f in formula()) {
        let x = encode_cnf(&f).unwrap();
        prop_assert_eq!(decode_cnf(&x), DecodedCnf::Valid(f));
    }

    #[test]
    fn big_pairs_round_trip(hi in any::<u128>(), lo in any::<u64>(), y in any::<u64>()) {
        let x = (Natural::from(hi) << 64u32) + lo;
        let z = pair(&x, &n(y));
        prop_assert_eq!(unpair(&z), (x.clone(), n(y)));
        prop_assert!(z >= x);
    }
}

proptest! {
    #[test]
    fn large_unpair_inverts_pair(x_bits in 60u32..700, y_bits in 0u32..700, seed in any::<u64>()) {
        use rand::{Rng, SeedableRng};
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(seed);
        let mut big = |bits: u32| -> Natural {
            let mut v = Natural::from(0u32);
            for _ in 0..bits {
                v = (v << 1u32) + u32::from(rng.gen_bool(0.5));
            }
            v
        };
        let (x, y) = (big(x_bits), big(y_bits));
        prop_assert_eq!(unpair(&pair(&x, &y)), (x, y));
    }
}
