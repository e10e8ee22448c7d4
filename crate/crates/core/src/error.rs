use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CodecError {
    #[error("not a binary digit: {0:?}")]
    NotBinary(char),
    #[error("literal 0 is not a variable")]
    ZeroLiteral,
    #[error("variables are numbered from 1")]
    ZeroVariable,
    #[error("dimacs line {line}: {msg}")]
    Dimacs { line: usize, msg: String },
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum MachineError {
    #[error("a machine needs at least one state")]
    NoStates,
    #[error("state {state} out of range for a {count}-state machine")]
    StateOutOfRange { state: u32, count: u32 },
    #[error("duplicate transition for state {state} on symbol {symbol}")]
    Duplicate { state: u32, symbol: char },
    #[error("machine file line {line}: {msg}")]
    Parse { line: usize, msg: String },
    #[error("clock parameters must be positive (got a={a}, b={b})")]
    ClockNotPositive { a: u64, b: u64 },
}

/// A run that consumed its whole fuel without halting.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Error)]
#[error("fuel exhausted after {steps} steps")]
pub struct FuelExhausted {
    pub steps: u64,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SatError {
    #[error("formula has {var_count} variables, limit is {limit}")]
    WidthExceeded { var_count: u64, limit: u64 },
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum QtError {
    #[error("cutoff {k} exceeds the configured maximum {max}")]
    CutoffTooLarge { k: u64, max: u64 },
    #[error("decider width exceeded at instance {x}: {source}")]
    DeciderWidthExceeded { x: u64, source: SatError },
    #[error("budget {budget} too small: the scan must reach z = {needed}")]
    BudgetTooSmall { budget: u64, needed: u64 },
    #[error("no satisfiable instance above {k} below the search limit {limit}")]
    NoCandidate { k: u64, limit: u64 },
    #[error("compiled machine ran out of fuel: {0}")]
    Fuel(#[from] FuelExhausted),
}
