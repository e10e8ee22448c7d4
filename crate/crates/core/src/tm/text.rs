//! Plain-text machine files:
//!
//! ```text
//! states 2
//! 0 0 -> 0 0 R
//! 0 _ -> HALT _ L
//! ```
//!
//! Symbols are `0`, `1` and `_`; `#` starts a comment.

use std::fmt;
use std::str::FromStr;

use super::{Move, Next, Symbol, Transition, TransitionTable};
use crate::error::MachineError;

impl fmt::Display for TransitionTable {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "states {}", self.state_count())?;
        for (q, sym, tr) in self.transitions() {
            let next = match tr.next {
                Next::State(s) => s.to_string(),
                Next::Halt => "HALT".to_owned(),
            };
            let mv = match tr.mv {
                Move::L => 'L',
                Move::R => 'R',
            };
            writeln!(f, "{q} {sym} -> {next} {} {mv}", tr.write)?;
        }
        Ok(())
    }
}

fn symbol(tok: &str, line: usize) -> Result<Symbol, MachineError> {
    let mut chars = tok.chars();
    match (chars.next().and_then(Symbol::from_char), chars.next()) {
        (Some(s), None) => Ok(s),
        _ => Err(MachineError::Parse {
            line,
            msg: format!("bad symbol `{tok}`"),
        }),
    }
}

impl FromStr for TransitionTable {
    type Err = MachineError;

    fn from_str(text: &str) -> Result<Self, Self::Err> {
        let mut table: Option<TransitionTable> = None;
        for (i, raw) in text.lines().enumerate() {
            let line = i + 1;
            let content = raw.split('#').next().unwrap_or("").trim();
            if content.is_empty() {
                continue;
            }
            let err = |msg: String| MachineError::Parse { line, msg };
            let toks: Vec<&str> = content.split_whitespace().collect();
            let Some(t) = table.as_mut() else {
                match toks.as_slice() {
                    ["states", n] => {
                        let n: u32 = n
                            .parse()
                            .map_err(|_| err(format!("bad state count `{n}`")))?;
                        table = Some(TransitionTable::new(n)?);
                        continue;
                    }
                    _ => return Err(err("expected `states N` first".into())),
                }
            };
            let [q, sym, "->", next, write, mv] = toks.as_slice() else {
                return Err(err("expected `q sym -> q' sym' L|R`".into()));
            };
            let q: u32 = q.parse().map_err(|_| err(format!("bad state `{q}`")))?;
            let next = match *next {
                "HALT" => Next::Halt,
                s => Next::State(s.parse().map_err(|_| err(format!("bad state `{s}`")))?),
            };
            let mv = match *mv {
                "L" => Move::L,
                "R" => Move::R,
                other => return Err(err(format!("bad move `{other}`"))),
            };
            let tr = Transition::new(next, symbol(write, line)?, mv);
            t.insert(q, symbol(sym, line)?, tr).map_err(|e| match e {
                MachineError::Parse { .. } => e,
                other => err(other.to_string()),
            })?;
        }
        table.ok_or(MachineError::Parse {
            line: 0,
            msg: "empty machine file".into(),
        })
    }
}
