use bgslab::codec::{dyadic_len, Natural};
use bgslab::tm::{
    decode_machine, encode_machine, run, run_clocked, ClockSpec, Move, Next, Symbol, Transition,
    TransitionTable,
};
use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn n(v: u64) -> Natural {
    Natural::from(v)
}

fn random_table(rng: &mut impl Rng, max_states: u32) -> TransitionTable {
    let count = rng.gen_range(1..=max_states);
    let mut t = TransitionTable::new(count).unwrap();
    for q in 0..count {
        for s in Symbol::ALL {
            if rng.gen_bool(0.2) {
                continue;
            }
            let next = if rng.gen_bool(0.15) {
                Next::Halt
            } else {
                Next::State(rng.gen_range(0..count))
            };
            let write = Symbol::ALL[rng.gen_range(0..3)];
            let mv = if rng.gen_bool(0.5) { Move::L } else { Move::R };
            t.set(q, s, Transition::new(next, write, mv)).unwrap();
        }
    }
    t
}

#[test]
fn godel_decoding_is_total() {
    let mut parsed = 0;
    for m in 0..100_000u64 {
        let t = decode_machine(&n(m));
        if t != TransitionTable::null_machine() {
            parsed += 1;
            assert_eq!(encode_machine(&t), n(m));
        }
    }
    assert!(parsed > 0);
}

#[test]
fn godel_semantic_round_trip() {
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    for _ in 0..50 {
        let t = random_table(&mut rng, 6);
        let back = decode_machine(&encode_machine(&t));
        assert_eq!(back, t);
        for x in 0..64u64 {
            assert_eq!(run(&t, &n(x), 500), run(&back, &n(x), 500));
        }
    }
}

#[test]
fn clocked_runs_respect_bounds_and_agree() {
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    for _ in 0..1000 {
        let t = random_table(&mut rng, 4);
        let clock = ClockSpec::new(rng.gen_range(1..=3), rng.gen_range(1..=30)).unwrap();
        let x = n(rng.gen_range(0..256));
        let bound = clock.bound(dyadic_len(&x));
        let clocked = run_clocked(&t, clock, &x);
        assert!(clocked.steps <= bound);
        assert_eq!(clocked, run_clocked(&t, clock, &x));
        match run(&t, &x, bound) {
            Ok(free) => assert_eq!(free, clocked),
            Err(_) => {
                assert!(clocked.interrupted);
                assert_eq!(clocked.steps, bound);
                assert_eq!(clocked.output, n(0));
            }
        }
    }
}

proptest! {
    #[test]
    fn runs_are_deterministic(seed in any::<u64>(), x in 0u64..1000) {
        let t = random_table(&mut ChaCha8Rng::seed_from_u64(seed), 5);
        prop_assert_eq!(run(&t, &n(x), 2000), run(&t, &n(x), 2000));
    }

    #[test]
    fn machine_files_round_trip(seed in any::<u64>()) {
        let t = random_table(&mut ChaCha8Rng::seed_from_u64(seed), 8);
        prop_assert_eq!(t.to_string().parse::<TransitionTable>().unwrap(), t);
    }
}
