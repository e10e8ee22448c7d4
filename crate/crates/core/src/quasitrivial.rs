//! `T`-quasi-trivial machines and their embedding into the BGS set.
//!
//! [`build_qt`] compiles `T^k` (equal to the truth-table decider `T` on
//! instances `x ≤ k`, output 0 above) into a transition table. The machine
//! reads its input through a trie of the strings `dyadic(0..=k)`:
//!
//! - trie state `x` sits at depth `|dyadic(x)|`; its children are `2x + 1`
//!   (next bit `0`) and `2x + 2` (next bit `1`);
//! - reading blank in trie state `x` accepts: walk back to cell 0, write
//!   `dyadic(T(x))`, terminate it with a blank and halt, taking
//!   `2|dyadic(x)| + |dyadic(T(x))| + 1` steps;
//! - reading a bit with no child rejects at depth `e ≤ |dyadic(k)|`: walk back
//!   to cell 0 and blank it, taking `2e + 1` steps.
//!
//! The reject path never reads past cell `|dyadic(k)|`, so its cost is the
//! constant [`reject_slack`] whatever the input length. The clock offset
//! `b_m` is the measured worst accepted runtime plus one plus that slack, and
//! `C_(2, b_m)` then covers every input.

use crate::bgs::{
    complete_counterexample, counterexample, BgsIndex, BgsPair, CounterexampleResult,
};
use crate::codec::{decode_cnf, dyadic_bits, dyadic_len, pair_u64, Natural};
use crate::error::{FuelExhausted, QtError};
use crate::sat::{decide, evaluate_brute, DEFAULT_WIDTH_LIMIT};
use crate::tm::{
    decode_machine, encode_machine, run, run_clocked, ClockSpec, Move, Symbol, Transition,
    TransitionTable,
};

pub const DEFAULT_K_MAX: u64 = 32;

/// Per-run fuel for unclocked runs of compiled machines. They halt within
/// `4|dyadic(k)| + width + 2` steps, far below this.
pub const COMPILED_FUEL: u64 = 1 << 20;

/// Clock exponent of the embedding `m ↦ ⟨m, 2, b_m⟩`.
pub const EMBEDDING_EXPONENT: u64 = 2;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct QtLimits {
    pub k_max: u64,
    pub width_limit: u64,
}

impl Default for QtLimits {
    fn default() -> Self {
        QtLimits {
            k_max: DEFAULT_K_MAX,
            width_limit: DEFAULT_WIDTH_LIMIT,
        }
    }
}

/// `T(x)` for every `x ≤ k`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CutoffSpec {
    pub k: u64,
    pub answers: Vec<Natural>,
}

#[derive(Clone, Debug)]
pub struct QuasiTrivialMachine {
    pub k: u64,
    pub table: TransitionTable,
    pub m: Natural,
    pub cutoff: CutoffSpec,
}

impl QuasiTrivialMachine {
    pub fn slack(&self) -> u64 {
        reject_slack(self.k)
    }
}

/// Worst-case steps on a rejected input: `2|dyadic(k)| + 1`.
pub fn reject_slack(k: u64) -> u64 {
    2 * dyadic_len(&Natural::from(k)) + 1
}

#[derive(Default)]
struct Builder {
    states: Vec<[Option<Transition>; 3]>,
}

impl Builder {
    fn alloc(&mut self) -> u32 {
        self.states.push([None; 3]);
        (self.states.len() - 1) as u32
    }

    fn on(&mut self, state: u32, sym: Symbol, tr: Transition) {
        self.states[state as usize][sym.index()] = Some(tr);
    }

    fn on_any(&mut self, state: u32, tr: impl Fn(Symbol) -> Transition) {
        for s in Symbol::ALL {
            self.on(state, s, tr(s));
        }
    }

    fn finish(self) -> TransitionTable {
        let mut table = TransitionTable::new(self.states.len() as u32).expect("non-empty");
        for (q, slots) in self.states.iter().enumerate() {
            for s in Symbol::ALL {
                if let Some(tr) = slots[s.index()] {
                    table.set(q as u32, s, tr).expect("states allocated");
                }
            }
        }
        table
    }
}

pub fn cutoff_spec(k: u64, limits: &QtLimits) -> Result<CutoffSpec, QtError> {
    if k > limits.k_max {
        return Err(QtError::CutoffTooLarge {
            k,
            max: limits.k_max,
        });
    }
    let answers = (0..=k)
        .map(|x| {
            decide(&Natural::from(x), limits.width_limit)
                .map(|d| d.witness)
                .map_err(|source| QtError::DeciderWidthExceeded { x, source })
        })
        .collect::<Result<Vec<_>, _>>()?;
    Ok(CutoffSpec { k, answers })
}

/// Compiles `T^k`.
pub fn build_qt(k: u64, limits: &QtLimits) -> Result<QuasiTrivialMachine, QtError> {
    let cutoff = cutoff_spec(k, limits)?;
    let depth_max = dyadic_len(&Natural::from(k));

    let mut b = Builder::default();
    for _ in 0..=k {
        b.alloc();
    }
    let ret_base = b.states.len() as u32;
    for _ in 0..depth_max {
        b.alloc();
    }
    let ret = |j: u64| ret_base + j as u32;
    for j in 0..depth_max {
        if j == 0 {
            b.on_any(ret(0), |_| Transition::halt(Symbol::Blank, Move::R));
        } else {
            b.on_any(ret(j), |s| Transition::goto(ret(j - 1), s, Move::L));
        }
    }

    for x in 0..=k {
        let q = x as u32;
        let depth = dyadic_len(&Natural::from(x));
        for (bit, sym) in [(0, Symbol::Zero), (1, Symbol::One)] {
            let child = 2 * x + 1 + bit;
            let tr = if child <= k {
                Transition::goto(child as u32, sym, Move::R)
            } else if depth == 0 {
                Transition::halt(Symbol::Blank, Move::R)
            } else {
                Transition::goto(ret(depth - 1), sym, Move::L)
            };
            b.on(q, sym, tr);
        }

        // Emit chain: emit[i] writes witness bit i at cell i; the last one
        // terminates the output with a blank.
        let witness = dyadic_bits(&cutoff.answers[x as usize]);
        let emit: Vec<u32> = (0..=witness.len()).map(|_| b.alloc()).collect();
        for (i, &state) in emit.iter().enumerate() {
            match witness.get(i) {
                Some(&bit) => {
                    let next = emit[i + 1];
                    b.on_any(state, |_| {
                        Transition::goto(next, Symbol::from_bit(bit), Move::R)
                    });
                }
                None => b.on_any(state, |_| Transition::halt(Symbol::Blank, Move::R)),
            }
        }
        if depth == 0 {
            let first = b.states[emit[0] as usize][Symbol::Blank.index()];
            b.on(q, Symbol::Blank, first.expect("emit state"));
            continue;
        }
        // back[j] sits at cell j and steps left; cell 0 belongs to emit[0].
        let mut target = emit[0];
        for _ in 1..depth {
            let state = b.alloc();
            b.on_any(state, |s| Transition::goto(target, s, Move::L));
            target = state;
        }
        b.on(
            q,
            Symbol::Blank,
            Transition::goto(target, Symbol::Blank, Move::L),
        );
    }

    let table = b.finish();
    Ok(QuasiTrivialMachine {
        k,
        m: encode_machine(&table),
        table,
        cutoff,
    })
}

/// `b_m = max{steps(x) : x ≤ k} + 1 + slack(k)`.
pub fn measure_b(q: &QuasiTrivialMachine) -> u64 {
    let worst = (0..=q.k)
        .map(|x| {
            run(&q.table, &Natural::from(x), COMPILED_FUEL)
                .expect("compiled quasi-trivial machines halt")
                .steps
        })
        .max()
        .unwrap_or(0);
    worst + 1 + q.slack()
}

/// One row of the construction: `(m, k(m), b_m, N(m), f_¬G(N(m)))`.
#[derive(Clone, Debug)]
pub struct EmbeddingRecord {
    pub m: Natural,
    pub k: u64,
    pub b_m: u64,
    pub index: BgsIndex,
    pub f_value: Option<CounterexampleResult>,
}

impl EmbeddingRecord {
    pub fn clock(&self) -> ClockSpec {
        ClockSpec::new(EMBEDDING_EXPONENT, self.b_m).expect("positive clock")
    }
}

/// `m ↦ N(m) = ⟨m, 2, b_m⟩`.
pub fn embed(q: &QuasiTrivialMachine) -> EmbeddingRecord {
    let b_m = measure_b(q);
    EmbeddingRecord {
        m: q.m.clone(),
        k: q.k,
        b_m,
        index: BgsIndex::from_parts(q.m.clone(), EMBEDDING_EXPONENT.into(), b_m.into()),
        f_value: None,
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NoInterruptReport {
    pub ok: bool,
    /// Inputs checked, `0..=max(k, upto)`.
    pub checked: u64,
    pub offending: Option<u64>,
}

/// Checks that `C_(2, b_m)` never interrupts the machine named by `r.m` on
/// `x ≤ max(k, upto)`, and that clocked and unclocked runs agree exactly.
pub fn verify_no_interrupt(r: &EmbeddingRecord, upto: u64) -> NoInterruptReport {
    let table = decode_machine(&r.m);
    let clock = r.clock();
    let last = r.k.max(upto);
    for x in 0..=last {
        let input = Natural::from(x);
        let clocked = run_clocked(&table, clock, &input);
        let agrees = match run(&table, &input, COMPILED_FUEL) {
            Ok(free) => !clocked.interrupted && free == clocked,
            Err(FuelExhausted { .. }) => false,
        };
        if !agrees {
            return NoInterruptReport {
                ok: false,
                checked: x + 1,
                offending: Some(x),
            };
        }
    }
    NoInterruptReport {
        ok: true,
        checked: last + 1,
        offending: None,
    }
}

/// `zPred(k) = min{⟨x, y⟩ : x > k, V(⟨x, y⟩) = 1}` with its projections.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Prediction {
    pub z: u64,
    pub x: u64,
    pub y: u64,
}

/// Double enumeration over `x > k`, then width-compatible `y`, using the
/// brute-force evaluator. Stops once `⟨x, 0⟩` passes the best pair found,
/// which bounds every later candidate since `⟨x, y⟩ ≥ ⟨x, 0⟩` and `⟨x, 0⟩`
/// grows with `x`.
pub fn predicted_counterexample(k: u64, x_limit: u64) -> Result<Prediction, QtError> {
    let mut best: Option<Prediction> = None;
    for x in k + 1..=x_limit {
        if best.is_some_and(|b| pair_u64(x, 0) >= u128::from(b.z)) {
            return Ok(best.expect("checked"));
        }
        let Some(formula) = decode_cnf(&Natural::from(x)).into_valid() else {
            continue;
        };
        let width = formula.var_count();
        let Ok(width32) = u32::try_from(width) else {
            continue;
        };
        if width > DEFAULT_WIDTH_LIMIT {
            // Every compatible y is at least 2^width - 1.
            let floor = pair_u64(x, (1u64 << width.min(62)) - 1);
            if best.is_some_and(|b| floor >= u128::from(b.z)) {
                continue;
            }
            return Err(QtError::DeciderWidthExceeded {
                x,
                source: crate::error::SatError::WidthExceeded {
                    var_count: width,
                    limit: DEFAULT_WIDTH_LIMIT,
                },
            });
        }
        for mask in 0..(1u64 << width32) {
            let y = (1u64 << width32) - 1 + mask;
            let z = pair_u64(x, y);
            if best.is_some_and(|b| z >= u128::from(b.z)) {
                break;
            }
            let values: Vec<bool> = (0..width32)
                .map(|i| mask >> (width32 - 1 - i) & 1 == 1)
                .collect();
            if evaluate_brute(&formula, &values) {
                best = Some(Prediction { z: z as u64, x, y });
                break;
            }
        }
    }
    Err(QtError::NoCandidate { k, limit: x_limit })
}

/// Search limit for [`predicted_counterexample`] used by the pipeline.
pub const PREDICTION_X_LIMIT: u64 = 1 << 24;

#[derive(Clone, Debug)]
pub struct CrucialStep {
    pub k: u64,
    pub result: CounterexampleResult,
    pub predicted: Prediction,
    /// `π₁ z ≥ k + 1`.
    pub x_above_cutoff: bool,
    /// `z ≥ π₁ z` (pairing monotonicity).
    pub z_dominates_x: bool,
    /// `z ≥ k + 1`.
    pub z_above_cutoff: bool,
    pub matches_prediction: bool,
    pub pass: bool,
}

/// Runs `f_¬G` on `N(m)` and checks `f_¬G(N(m)) ≥ k + 1` and
/// `f_¬G(N(m)) = zPred(k)`.
pub fn verify_crucial_step(r: &mut EmbeddingRecord, budget: u64) -> Result<CrucialStep, QtError> {
    let predicted = predicted_counterexample(r.k, PREDICTION_X_LIMIT)?;
    let pair = BgsPair::decode(&r.index.n);
    let result = counterexample(&pair, budget);
    if !result.is_found() && budget <= predicted.z {
        return Err(QtError::BudgetTooSmall {
            budget,
            needed: predicted.z + 1,
        });
    }
    r.f_value = Some(result.clone());
    let (x_above_cutoff, z_dominates_x, z_above_cutoff) = match (result.z, result.x()) {
        (Some(z), Some(x)) => (x > r.k, z >= x, z > r.k),
        _ => (false, false, false),
    };
    let matches_prediction = result.z == Some(predicted.z);
    Ok(CrucialStep {
        k: r.k,
        pass: result.is_found() && z_above_cutoff && matches_prediction,
        result,
        predicted,
        x_above_cutoff,
        z_dominates_x,
        z_above_cutoff,
        matches_prediction,
    })
}

/// Budget that lets the scan reach `zPred(k)`.
pub fn auto_budget(k: u64) -> Result<u64, QtError> {
    Ok(predicted_counterexample(k, PREDICTION_X_LIMIT)?.z + 1)
}

#[derive(Clone, Debug)]
pub struct LemmaRow {
    pub record: EmbeddingRecord,
    pub no_interrupt: NoInterruptReport,
    pub crucial: CrucialStep,
    pub pass: bool,
}

/// The whole construction for each cutoff: build, measure, embed, check the
/// clock on `x ≤ k + window`, then the crucial step. `budget = None` derives
/// the budget from `zPred(k)`.
pub fn verify_lemma(
    ks: &[u64],
    budget: Option<u64>,
    window: u64,
    limits: &QtLimits,
) -> Result<Vec<LemmaRow>, QtError> {
    ks.iter()
        .map(|&k| {
            let q = build_qt(k, limits)?;
            let mut record = embed(&q);
            let no_interrupt = verify_no_interrupt(&record, k.saturating_add(window));
            let budget = match budget {
                Some(b) => b,
                None => auto_budget(k)?,
            };
            let crucial = verify_crucial_step(&mut record, budget)?;
            let pass = no_interrupt.ok && crucial.pass;
            Ok(LemmaRow {
                record,
                no_interrupt,
                crucial,
                pass,
            })
        })
        .collect()
}

#[derive(Clone, Debug)]
pub struct RestrictionRow {
    pub m: Natural,
    pub k: u64,
    pub b_m: u64,
    pub n: Natural,
    /// `f*_¬G(m)`: the search run directly on the unclocked machine `m`.
    pub f_star: CounterexampleResult,
    /// `f_¬G(N(m))`: the search run on the BGS pair decoded from `N(m)`.
    pub f_bgs: CounterexampleResult,
    pub identity: bool,
    pub crucial_pass: bool,
}

/// `f*_¬G|B` against `f_¬G|B'` for the family `B = {T^k : k ∈ ks}`.
pub fn restriction_table(
    ks: &[u64],
    budget: Option<u64>,
    limits: &QtLimits,
) -> Result<Vec<RestrictionRow>, QtError> {
    ks.iter()
        .map(|&k| {
            let q = build_qt(k, limits)?;
            let mut record = embed(&q);
            let budget = match budget {
                Some(b) => b,
                None => auto_budget(k)?,
            };
            let crucial = verify_crucial_step(&mut record, budget)?;
            let f_bgs = crucial.result.clone();
            let f_star =
                complete_counterexample(&decode_machine(&record.m), budget, COMPILED_FUEL)?;
            Ok(RestrictionRow {
                identity: f_star == f_bgs,
                crucial_pass: crucial.pass,
                m: record.m,
                k,
                b_m: record.b_m,
                n: record.index.n,
                f_star,
                f_bgs,
            })
        })
        .collect()
}
