use bgslab::bgs::{counterexample, BgsPair, CounterexampleResult};
use bgslab::codec::{decode_cnf, dyadic_len, pair_u64, Natural};
use bgslab::quasitrivial::{build_qt, embed, QtLimits};
use bgslab::sat::evaluate_brute;
use bgslab::tm::{ClockSpec, Move, Symbol, Transition, TransitionTable};

fn n(v: u64) -> Natural {
    Natural::from(v)
}

/// `w` satisfies `x` in the strict-width sense, written without the library
/// verifier.
fn satisfied(x: u64, w: &Natural) -> bool {
    if *w == n(0) {
        return x == 0;
    }
    let Some(f) = decode_cnf(&n(x)).into_valid() else {
        return false;
    };
    let len = dyadic_len(w);
    if len != f.var_count() {
        return false;
    }
    let bits: Vec<bool> = (0..len).rev().map(|i| (w + 1u32).bit(i)).collect();
    evaluate_brute(&f, &bits)
}

/// min ⟨x, y⟩ over x, y < 300 with y satisfying x and the pair's output on x
/// not satisfying x.
fn oracle(p: &BgsPair) -> Option<u64> {
    let mut best: Option<u64> = None;
    for x in 0..300u64 {
        let out = p.run(&n(x)).output;
        if satisfied(x, &out) {
            continue;
        }
        for y in 0..300u64 {
            if satisfied(x, &n(y)) {
                let z = pair_u64(x, y) as u64;
                best = Some(best.map_or(z, |b| b.min(z)));
            }
        }
    }
    best
}

fn table(rows: &[(u32, Symbol, Transition)], states: u32) -> TransitionTable {
    let mut t = TransitionTable::new(states).unwrap();
    for &(q, s, tr) in rows {
        t.set(q, s, tr).unwrap();
    }
    t
}

fn every(state: u32, tr: Transition) -> Vec<(u32, Symbol, Transition)> {
    Symbol::ALL.iter().map(|&s| (state, s, tr)).collect()
}

fn hand_picked() -> Vec<BgsPair> {
    let clock = ClockSpec::new(2, 50).unwrap();
    let writer_1 = table(
        &every(0, Transition::goto(1, Symbol::One, Move::R))
            .into_iter()
            .chain(every(1, Transition::halt(Symbol::Blank, Move::R)))
            .collect::<Vec<_>>(),
        2,
    );
    let writer_0 = table(
        &every(0, Transition::goto(1, Symbol::Zero, Move::R))
            .into_iter()
            .chain(every(1, Transition::halt(Symbol::Blank, Move::R)))
            .collect::<Vec<_>>(),
        2,
    );
    let looper = table(&every(0, Transition::goto(0, Symbol::One, Move::R)), 1);
    let qt3 = build_qt(3, &QtLimits::default()).unwrap();
    vec![
        BgsPair::decode(&n(0)),
        BgsPair::from_machine(writer_1, clock),
        BgsPair::from_machine(writer_0, clock),
        BgsPair::from_machine(TransitionTable::new(1).unwrap(), clock),
        BgsPair::from_machine(looper, clock),
        BgsPair::decode(&embed(&qt3).index.n),
    ]
}

#[test]
fn agrees_with_double_enumeration() {
    for p in hand_picked() {
        let r = counterexample(&p, 10_000);
        let expected = oracle(&p).expect("a failure below 300");
        assert!(expected < 300, "oracle range must dominate its answer");
        assert_eq!(r.z, Some(expected), "machine {}", p.machine);
    }
}

#[test]
fn found_values_are_minimal() {
    for p in hand_picked() {
        let r = counterexample(&p, 10_000);
        let z = r.z.unwrap();
        assert!(p.not_g(&n(z)));
        for w in 0..z {
            assert!(!p.not_g(&n(w)));
        }
        assert_eq!(counterexample(&p, 10_000), r);
    }
}

#[test]
fn generous_decider_copy_is_never_refuted() {
    // Every z < 10^4 has π₁ z ≤ 140, where T^140 answers exactly like T.
    let limits = QtLimits {
        k_max: 140,
        width_limit: 20,
    };
    let q = build_qt(140, &limits).unwrap();
    let p = BgsPair::from_machine(q.table, ClockSpec::new(2, 1000).unwrap());
    assert_eq!(
        counterexample(&p, 10_000),
        CounterexampleResult::exhausted(10_000)
    );
    for z in (0..10_000u64).step_by(97) {
        assert!(!p.not_g(&n(z)));
    }
}

#[test]
fn larger_offsets_do_not_change_uninterrupted_answers() {
    for k in [2u64, 5, 9] {
        let q = build_qt(k, &QtLimits::default()).unwrap();
        let r = embed(&q);
        let base = counterexample(&BgsPair::decode(&r.index.n), 5000);
        for extra in [1u64, 10, 1000] {
            let p =
                BgsPair::from_machine(q.table.clone(), ClockSpec::new(2, r.b_m + extra).unwrap());
            assert_eq!(counterexample(&p, 5000), base);
        }
    }
}
