//! The BGS set: machine–clock pairs `(M_m, C_(a,b))` named by
//! `n = ⟨m, a, b⟩`, the predicates `G*` and `¬G`, and the counterexample
//! function `f_¬G(n) = μz ¬G(n, z)` as a budgeted search.

use std::collections::HashMap;

use serde::{Deserialize, Serialize};

use crate::codec::{triple_decode, triple_encode, unpair_u64, Natural};
use crate::error::FuelExhausted;
use crate::sat::{verify, verify_pair};
use crate::tm::{
    decode_machine, encode_machine, run, run_clocked, ClockSpec, RunResult, TransitionTable,
};

/// `n` together with its components `(m, a, b)` exactly as decoded.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct BgsIndex {
    pub n: Natural,
    pub m: Natural,
    pub a: Natural,
    pub b: Natural,
}

impl BgsIndex {
    pub fn decode(n: &Natural) -> Self {
        let (m, a, b) = triple_decode(n);
        BgsIndex {
            n: n.clone(),
            m,
            a,
            b,
        }
    }

    pub fn from_parts(m: Natural, a: Natural, b: Natural) -> Self {
        BgsIndex {
            n: triple_encode(&m, &a, &b),
            m,
            a,
            b,
        }
    }

    /// The clock `C_(a,b)`, with zero components lifted to 1.
    pub fn clock(&self) -> ClockSpec {
        ClockSpec::lifted(&self.a, &self.b)
    }
}

/// A decoded member of the BGS set, ready to run.
#[derive(Clone, Debug)]
pub struct BgsPair {
    pub index: BgsIndex,
    pub machine: TransitionTable,
    pub clock: ClockSpec,
}

impl BgsPair {
    pub fn decode(n: &Natural) -> Self {
        let index = BgsIndex::decode(n);
        BgsPair {
            machine: decode_machine(&index.m),
            clock: index.clock(),
            index,
        }
    }

    pub fn from_machine(machine: TransitionTable, clock: ClockSpec) -> Self {
        let index =
            BgsIndex::from_parts(encode_machine(&machine), clock.a().into(), clock.b().into());
        BgsPair {
            index,
            machine,
            clock,
        }
    }

    /// `P_n(x)`.
    pub fn run(&self, x: &Natural) -> RunResult {
        run_clocked(&self.machine, self.clock, x)
    }

    /// `G*(n, x)`: the pair's output on `x` satisfies `x`.
    pub fn g_star(&self, x: &Natural) -> bool {
        verify_pair(x, &self.run(x).output)
    }

    /// `¬G(n, z)`: `V(z) = 1` and `V(⟨π₁z, P_n(π₁z)⟩) = 0`.
    pub fn not_g(&self, z: &Natural) -> bool {
        verify(z) && !self.g_star(&crate::codec::proj1(z))
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum SearchStatus {
    Found,
    Exhausted,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CounterexampleResult {
    pub status: SearchStatus,
    /// The least `z` with `¬G(n, z)`, when found.
    pub z: Option<u64>,
    /// Number of `z` values examined.
    pub scanned: u64,
    pub budget: u64,
}

impl CounterexampleResult {
    pub fn found(z: u64, budget: u64) -> Self {
        CounterexampleResult {
            status: SearchStatus::Found,
            z: Some(z),
            scanned: z + 1,
            budget,
        }
    }

    pub fn exhausted(budget: u64) -> Self {
        CounterexampleResult {
            status: SearchStatus::Exhausted,
            z: None,
            scanned: budget,
            budget,
        }
    }

    pub fn is_found(&self) -> bool {
        self.status == SearchStatus::Found
    }

    /// `π₁ z` of the counterexample.
    pub fn x(&self) -> Option<u64> {
        self.z.map(|z| unpair_u64(z).0)
    }

    pub fn y(&self) -> Option<u64> {
        self.z.map(|z| unpair_u64(z).1)
    }

    /// The same search under a different budget, when derivable without
    /// rescanning.
    pub fn rebudget(&self, budget: u64) -> Option<Self> {
        match (self.status, self.z) {
            (SearchStatus::Found, Some(z)) if z < budget => Some(Self::found(z, budget)),
            (SearchStatus::Found, Some(_)) => Some(Self::exhausted(budget)),
            (SearchStatus::Exhausted, _) if budget <= self.scanned => Some(Self::exhausted(budget)),
            _ => None,
        }
    }
}

/// Ordered μ-search over `z = 0 .. budget - 1` for the first `z` with
/// `V(z) = 1` whose first projection is answered wrongly by `output_of`.
/// `output_of` is called at most once per distinct `x`.
pub fn mu_search<E>(
    budget: u64,
    mut output_of: impl FnMut(&Natural) -> Result<Natural, E>,
) -> Result<CounterexampleResult, E> {
    let mut guessed: HashMap<u64, bool> = HashMap::new();
    for z in 0..budget {
        let (x, y) = unpair_u64(z);
        let xn = Natural::from(x);
        if !verify_pair(&xn, &Natural::from(y)) {
            continue;
        }
        let correct = match guessed.get(&x) {
            Some(&g) => g,
            None => {
                let g = verify_pair(&xn, &output_of(&xn)?);
                guessed.insert(x, g);
                g
            }
        };
        if !correct {
            return Ok(CounterexampleResult::found(z, budget));
        }
    }
    Ok(CounterexampleResult::exhausted(budget))
}

/// `f_¬G(n)` searched over the first `budget` pairs.
pub fn counterexample(pair: &BgsPair, budget: u64) -> CounterexampleResult {
    match mu_search::<std::convert::Infallible>(budget, |x| Ok(pair.run(x).output)) {
        Ok(r) => r,
        Err(never) => match never {},
    }
}

/// The counterexample function of a total, unclocked machine (`f*_¬G` on a
/// polynomial machine given directly by its table). `fuel` bounds each run.
pub fn complete_counterexample(
    machine: &TransitionTable,
    budget: u64,
    fuel: u64,
) -> Result<CounterexampleResult, FuelExhausted> {
    mu_search(budget, |x| run(machine, x, fuel).map(|r| r.output))
}

#[derive(Clone, Debug)]
pub struct ScanRow {
    pub index: BgsIndex,
    pub result: CounterexampleResult,
}

#[derive(Clone, Debug, Default)]
pub struct ScanReport {
    pub rows: Vec<ScanRow>,
    pub found: usize,
    pub exhausted: usize,
}

/// Finite probe of `∀n ∃z ¬G(n, z)` over the given indices.
pub fn pnp_scan(indices: impl IntoIterator<Item = Natural>, budget: u64) -> ScanReport {
    pnp_scan_with(indices, |p| counterexample(p, budget))
}

/// [`pnp_scan`] with a caller-supplied search (used to put a cache in front).
pub fn pnp_scan_with(
    indices: impl IntoIterator<Item = Natural>,
    mut search: impl FnMut(&BgsPair) -> CounterexampleResult,
) -> ScanReport {
    let mut report = ScanReport::default();
    for n in indices {
        let pair = BgsPair::decode(&n);
        let result = search(&pair);
        if result.is_found() {
            report.found += 1;
        } else {
            report.exhausted += 1;
        }
        report.rows.push(ScanRow {
            index: pair.index,
            result,
        });
    }
    report
}

/// Least `z = ⟨x, y⟩` with `x > 0` and `V(z) = 1` up to `z < limit`.
pub fn first_nontrivial_satisfied_pair(limit: u64) -> Option<u64> {
    (0..limit).find(|&z| {
        let (x, y) = unpair_u64(z);
        x > 0 && verify_pair(&Natural::from(x), &Natural::from(y))
    })
}
