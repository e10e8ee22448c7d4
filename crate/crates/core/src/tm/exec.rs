use serde::{Deserialize, Serialize};

use super::{Move, Next, Symbol, Transition, TransitionTable};
use crate::codec::{dyadic_bits, dyadic_len, from_dyadic_bits, Natural};
use crate::error::{FuelExhausted, MachineError};

/// Outcome of a halted or clock-interrupted run.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RunResult {
    pub output: Natural,
    /// Transitions applied.
    pub steps: u64,
    pub interrupted: bool,
}

/// One applied transition, reported before the tape is updated.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct TraceStep {
    pub step: u64,
    pub state: u32,
    pub head: usize,
    pub read: Symbol,
    pub transition: Transition,
}

/// A polynomial clock `C_(a,b)`: the coupled machine gets `|x|^a + b` steps.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct ClockSpec {
    a: u64,
    b: u64,
}

impl ClockSpec {
    pub fn new(a: u64, b: u64) -> Result<Self, MachineError> {
        if a == 0 || b == 0 {
            return Err(MachineError::ClockNotPositive { a, b });
        }
        Ok(ClockSpec { a, b })
    }

    /// Clock for decoded index components: zeros are lifted to 1 and values
    /// past `u64::MAX` saturate.
    pub fn lifted(a: &Natural, b: &Natural) -> Self {
        let sat = |v: &Natural| u64::try_from(v).unwrap_or(u64::MAX).max(1);
        ClockSpec {
            a: sat(a),
            b: sat(b),
        }
    }

    pub fn a(&self) -> u64 {
        self.a
    }

    pub fn b(&self) -> u64 {
        self.b
    }

    /// `len^a + b`, saturating at `u64::MAX`.
    pub fn bound(&self, len: u64) -> u64 {
        let power = match len {
            0 => 0,
            1 => 1,
            _ => u32::try_from(self.a)
                .ok()
                .and_then(|a| len.checked_pow(a))
                .unwrap_or(u64::MAX),
        };
        power.saturating_add(self.b)
    }

    pub fn bound_for(&self, input: &Natural) -> u64 {
        self.bound(dyadic_len(input))
    }
}

struct Halted {
    tape: Vec<Symbol>,
    steps: u64,
}

fn execute(
    table: &TransitionTable,
    input: &Natural,
    limit: u64,
    observer: &mut dyn FnMut(&TraceStep),
) -> Result<Halted, FuelExhausted> {
    let mut tape: Vec<Symbol> = dyadic_bits(input)
        .into_iter()
        .map(Symbol::from_bit)
        .collect();
    let mut head = 0usize;
    let mut state = 0u32;
    let mut steps = 0u64;
    loop {
        if head == tape.len() {
            tape.push(Symbol::Blank);
        }
        let read = tape[head];
        let Some(&tr) = table.get(state, read) else {
            return Ok(Halted { tape, steps });
        };
        if steps == limit {
            return Err(FuelExhausted { steps });
        }
        observer(&TraceStep {
            step: steps,
            state,
            head,
            read,
            transition: tr,
        });
        tape[head] = tr.write;
        steps += 1;
        match tr.mv {
            Move::L => head = head.saturating_sub(1),
            Move::R => head += 1,
        }
        match tr.next {
            Next::Halt => return Ok(Halted { tape, steps }),
            Next::State(q) => state = q,
        }
    }
}

fn read_output(tape: &[Symbol]) -> Natural {
    let bits: Vec<bool> = tape
        .iter()
        .map_while(|s| match s {
            Symbol::Zero => Some(false),
            Symbol::One => Some(true),
            Symbol::Blank => None,
        })
        .collect();
    from_dyadic_bits(&bits)
}

/// Unclocked execution with at most `max_steps` applied transitions.
pub fn run(
    table: &TransitionTable,
    input: &Natural,
    max_steps: u64,
) -> Result<RunResult, FuelExhausted> {
    run_traced(table, input, max_steps, &mut |_| {})
}

pub fn run_traced(
    table: &TransitionTable,
    input: &Natural,
    max_steps: u64,
    observer: &mut dyn FnMut(&TraceStep),
) -> Result<RunResult, FuelExhausted> {
    let halted = execute(table, input, max_steps, observer)?;
    Ok(RunResult {
        output: read_output(&halted.tape),
        steps: halted.steps,
        interrupted: false,
    })
}

/// Runs the pair `(table, clock)`. A machine still running after
/// `bound(|x|)` steps is stopped with output 0.
pub fn run_clocked(table: &TransitionTable, clock: ClockSpec, input: &Natural) -> RunResult {
    let bound = clock.bound_for(input);
    match run(table, input, bound) {
        Ok(r) => r,
        Err(FuelExhausted { steps }) => RunResult {
            output: Natural::default(),
            steps,
            interrupted: true,
        },
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::codec::from_dyadic;

    fn n(v: u64) -> Natural {
        Natural::from(v)
    }

    fn looper() -> TransitionTable {
        let mut t = TransitionTable::new(1).unwrap();
        for s in Symbol::ALL {
            t.set(0, s, Transition::goto(0, s, Move::R)).unwrap();
        }
        t
    }

    /// Moves right over 0/1 in state 0, then halts reading blank in state 1.
    fn right_scanner() -> TransitionTable {
        let mut t = TransitionTable::new(2).unwrap();
        t.set(0, Symbol::Zero, Transition::goto(0, Symbol::Zero, Move::R))
            .unwrap();
        t.set(0, Symbol::One, Transition::goto(0, Symbol::One, Move::R))
            .unwrap();
        t.set(
            0,
            Symbol::Blank,
            Transition::goto(1, Symbol::Blank, Move::L),
        )
        .unwrap();
        t
    }

    #[test]
    fn null_machine_outputs_zero() {
        for x in 0..50u64 {
            let r = run(&TransitionTable::null_machine(), &n(x), 100).unwrap();
            assert_eq!(r.output, n(0));
            assert_eq!(r.steps, 1);
            assert!(!r.interrupted);
        }
    }

    #[test]
    fn identity_machine_halts_without_steps() {
        let t = TransitionTable::new(1).unwrap();
        let r = run(&t, &n(37), 10).unwrap();
        assert_eq!(
            r,
            RunResult {
                output: n(37),
                steps: 0,
                interrupted: false
            }
        );
    }

    #[test]
    fn blanking_machine_outputs_zero() {
        let mut t = TransitionTable::new(2).unwrap();
        t.set(0, Symbol::Zero, Transition::goto(0, Symbol::Blank, Move::R))
            .unwrap();
        t.set(0, Symbol::One, Transition::goto(0, Symbol::Blank, Move::R))
            .unwrap();
        let r = run(&t, &from_dyadic("0110").unwrap(), 100).unwrap();
        assert_eq!(r.output, n(0));
        assert_eq!(r.steps, 4);
    }

    #[test]
    fn right_scanner_hand_trace() {
        // Input 5 = "10": R over '1', R over '0', then blank → state 1, then
        // state 1 has no transition on '0'.
        let mut seen = Vec::new();
        let r = run_traced(&right_scanner(), &n(5), 100, &mut |s| {
            seen.push((s.state, s.head, s.read))
        })
        .unwrap();
        assert_eq!(r.steps, 3);
        assert_eq!(r.output, n(5));
        assert_eq!(
            seen,
            vec![
                (0, 0, Symbol::One),
                (0, 1, Symbol::Zero),
                (0, 2, Symbol::Blank)
            ]
        );
    }

    #[test]
    fn fuel_exhaustion_is_reported() {
        assert_eq!(run(&looper(), &n(3), 17), Err(FuelExhausted { steps: 17 }));
    }

    #[test]
    fn halting_exactly_at_fuel_is_not_exhaustion() {
        assert_eq!(run(&right_scanner(), &n(5), 3).unwrap().steps, 3);
        assert!(run(&right_scanner(), &n(5), 2).is_err());
    }

    #[test]
    fn left_at_cell_zero_stays() {
        let mut t = TransitionTable::new(2).unwrap();
        t.set(0, Symbol::One, Transition::goto(1, Symbol::One, Move::L))
            .unwrap();
        t.set(1, Symbol::One, Transition::halt(Symbol::Zero, Move::L))
            .unwrap();
        let r = run(&t, &n(2), 10).unwrap();
        assert_eq!(r.steps, 2);
        assert_eq!(r.output, n(1));
    }

    #[test]
    fn clock_bounds() {
        let c = ClockSpec::new(1, 1).unwrap();
        assert_eq!(c.bound_for(&n(0)), 1);
        assert_eq!(run_clocked(&right_scanner(), c, &n(0)).steps, 1);
        let r = run_clocked(&looper(), c, &n(0));
        assert!(r.interrupted);
        assert_eq!((r.output, r.steps), (n(0), 1));

        let c = ClockSpec::new(2, 3).unwrap();
        let r = run_clocked(&looper(), c, &n(2));
        assert_eq!(
            r,
            RunResult {
                output: n(0),
                steps: 4,
                interrupted: true
            }
        );

        let c = ClockSpec::new(2, 1).unwrap();
        assert_eq!(run_clocked(&looper(), c, &n(3)).steps, 5);

        assert!(ClockSpec::new(0, 1).is_err());
        assert_eq!(
            ClockSpec::lifted(&n(0), &n(0)),
            ClockSpec::new(1, 1).unwrap()
        );
        assert_eq!(ClockSpec::new(64, 1).unwrap().bound(3), u64::MAX);
    }

    #[test]
    fn null_machine_never_interrupted() {
        for (a, b) in [(1, 1), (2, 1), (5, 9)] {
            let c = ClockSpec::new(a, b).unwrap();
            for x in 0..20u64 {
                assert!(!run_clocked(&TransitionTable::null_machine(), c, &n(x)).interrupted);
            }
        }
    }
}
