//! Fixtures shared by the criterion benches.

use bgslab::tm::{Move, Symbol, Transition};
use bgslab::{CnfFormula, Natural, TransitionTable};

/// A one-state machine that sweeps right forever.
pub fn sweeper() -> TransitionTable {
    let mut t = TransitionTable::new(1).expect("one state");
    for s in Symbol::ALL {
        t.set(0, s, Transition::goto(0, s, Move::R)).expect("valid");
    }
    t
}

/// `(x₁ ∨ x₂ ∨ … ∨ xₙ) ∧ ¬x₁ ∧ … ∧ ¬xₙ`, unsatisfiable, so `T` tries all
/// `2ⁿ` assignments.
pub fn all_negated_unsat(n: u64) -> CnfFormula {
    let mut clauses = vec![(1..=n).map(bgslab::Literal::pos).collect::<Vec<_>>()];
    clauses.extend((1..=n).map(|v| vec![bgslab::Literal::neg(v)]));
    CnfFormula::new(clauses)
}

pub fn nat(v: u64) -> Natural {
    Natural::from(v)
}
