//! A small computability laboratory around the Baker–Gill–Solovay set of
//! clocked polynomial Turing machines.
//!
//! - [`codec`]: dyadic strings, Cantor pairing, triples, sequence and CNF codes.
//! - [`tm`]: single-tape machines, Gödel numbers, clocked execution.
//! - [`sat`]: the verifier `V`, the truth-table decider `T`, a brute oracle.
//! - [`bgs`]: BGS indices, `G*`, `¬G`, and the counterexample function.
//! - [`quasitrivial`]: compiled `T^k` machines and the embedding
//!   `m ↦ ⟨m, 2, b_m⟩`.

pub mod bgs;
pub mod codec;
pub mod error;
pub mod quasitrivial;
pub mod sat;
pub mod tm;

pub use bgs::{BgsIndex, BgsPair, CounterexampleResult, SearchStatus};
pub use codec::{CnfFormula, Literal, Natural, CODEC_VERSION};
pub use error::{CodecError, FuelExhausted, MachineError, QtError, SatError};
pub use quasitrivial::{EmbeddingRecord, QtLimits, QuasiTrivialMachine};
pub use tm::{ClockSpec, RunResult, TransitionTable, MACHINE_ENCODING_VERSION};
