//! Deterministic single-tape Turing machines over `{0, 1, blank}`.
//!
//! The tape is infinite to the right. Input `x` is written as `dyadic(x)` in
//! cells `0..|x|`, the head starts on cell 0 in state 0, and a move left on
//! cell 0 leaves the head in place. A missing transition halts the machine
//! without consuming a step.

mod exec;
mod godel;
mod text;

pub use exec::{run, run_clocked, run_traced, ClockSpec, RunResult, TraceStep};
pub use godel::{decode_machine, encode_machine, MACHINE_ENCODING_VERSION};

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::MachineError;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Symbol {
    Zero,
    One,
    Blank,
}

impl Symbol {
    pub const ALL: [Symbol; 3] = [Symbol::Zero, Symbol::One, Symbol::Blank];

    pub fn index(self) -> usize {
        match self {
            Symbol::Zero => 0,
            Symbol::One => 1,
            Symbol::Blank => 2,
        }
    }

    pub fn from_bit(bit: bool) -> Self {
        if bit {
            Symbol::One
        } else {
            Symbol::Zero
        }
    }

    pub fn as_char(self) -> char {
        match self {
            Symbol::Zero => '0',
            Symbol::One => '1',
            Symbol::Blank => '_',
        }
    }

    pub fn from_char(c: char) -> Option<Self> {
        match c {
            '0' => Some(Symbol::Zero),
            '1' => Some(Symbol::One),
            '_' => Some(Symbol::Blank),
            _ => None,
        }
    }
}

impl fmt::Display for Symbol {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.as_char())
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Move {
    L,
    R,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Next {
    State(u32),
    Halt,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Transition {
    pub next: Next,
    pub write: Symbol,
    pub mv: Move,
}

impl Transition {
    pub fn new(next: Next, write: Symbol, mv: Move) -> Self {
        Transition { next, write, mv }
    }

    pub fn goto(state: u32, write: Symbol, mv: Move) -> Self {
        Transition::new(Next::State(state), write, mv)
    }

    pub fn halt(write: Symbol, mv: Move) -> Self {
        Transition::new(Next::Halt, write, mv)
    }
}

/// A machine `M_m`: a partial map `(state, symbol) → transition`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct TransitionTable {
    state_count: u32,
    slots: Vec<Option<Transition>>,
}

impl TransitionTable {
    pub fn new(state_count: u32) -> Result<Self, MachineError> {
        if state_count == 0 {
            return Err(MachineError::NoStates);
        }
        Ok(TransitionTable {
            state_count,
            slots: vec![None; state_count as usize * 3],
        })
    }

    /// The machine every unparsable Gödel number decodes to: one state that
    /// blanks cell 0 and halts, so it outputs 0 on every input in one step.
    pub fn null_machine() -> Self {
        let mut t = TransitionTable::new(1).expect("one state");
        for sym in Symbol::ALL {
            t.slots[sym.index()] = Some(Transition::halt(Symbol::Blank, Move::R));
        }
        t
    }

    pub fn state_count(&self) -> u32 {
        self.state_count
    }

    #[inline]
    pub fn get(&self, state: u32, symbol: Symbol) -> Option<&Transition> {
        self.slots
            .get(state as usize * 3 + symbol.index())
            .and_then(Option::as_ref)
    }

    fn check_state(&self, state: u32) -> Result<(), MachineError> {
        if state >= self.state_count {
            return Err(MachineError::StateOutOfRange {
                state,
                count: self.state_count,
            });
        }
        Ok(())
    }

    /// Installs a transition, replacing any previous one.
    pub fn set(
        &mut self,
        state: u32,
        symbol: Symbol,
        transition: Transition,
    ) -> Result<(), MachineError> {
        self.check_state(state)?;
        if let Next::State(q) = transition.next {
            self.check_state(q)?;
        }
        self.slots[state as usize * 3 + symbol.index()] = Some(transition);
        Ok(())
    }

    /// Like [`set`](Self::set) but refuses to overwrite.
    pub fn insert(
        &mut self,
        state: u32,
        symbol: Symbol,
        transition: Transition,
    ) -> Result<(), MachineError> {
        if self.state_count > state && self.get(state, symbol).is_some() {
            return Err(MachineError::Duplicate {
                state,
                symbol: symbol.as_char(),
            });
        }
        self.set(state, symbol, transition)
    }

    pub fn transitions(&self) -> impl Iterator<Item = (u32, Symbol, &Transition)> + '_ {
        self.slots.iter().enumerate().filter_map(|(i, slot)| {
            slot.as_ref()
                .map(|t| ((i / 3) as u32, Symbol::ALL[i % 3], t))
        })
    }

    pub fn transition_count(&self) -> usize {
        self.slots.iter().filter(|s| s.is_some()).count()
    }
}
