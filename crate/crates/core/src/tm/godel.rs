//! Gödel numbering of transition tables.
//!
//! A machine is written as a self-delimiting bit string and numbered through
//! the dyadic bijection, so `m` has about as many bits as the table has
//! entries. Layout:
//!
//! ```text
//! gamma(N)                      Elias gamma code of the state count N ≥ 1
//! for q in 0..N, s in [0,1,_]:  one slot per (state, symbol)
//!     0                         no transition (halt in place)
//!     1 next write move         next: w bits, 0..N-1 or N for HALT
//!                               write: 2 bits, 00 → 0, 01 → 1, 10 → _
//!                               move: 1 bit, 0 → L, 1 → R
//! ```
//!
//! where `w` is the bit length of `N`. The string must be consumed exactly.
//! Anything else decodes to [`TransitionTable::null_machine`].

use super::{Move, Next, Symbol, Transition, TransitionTable};
use crate::codec::{dyadic_bits, from_dyadic_bits, Natural};

pub const MACHINE_ENCODING_VERSION: &str = "tm-gamma-1";

fn bit_len(v: u64) -> u32 {
    64 - v.leading_zeros()
}

struct BitWriter(Vec<bool>);

impl BitWriter {
    fn push_bits(&mut self, value: u64, width: u32) {
        for i in (0..width).rev() {
            self.0.push(value >> i & 1 == 1);
        }
    }

    fn push_gamma(&mut self, value: u64) {
        let len = bit_len(value);
        self.0.extend(std::iter::repeat_n(false, len as usize - 1));
        self.push_bits(value, len);
    }
}

struct BitReader<'a> {
    bits: &'a [bool],
    pos: usize,
}

impl BitReader<'_> {
    fn bit(&mut self) -> Option<bool> {
        let b = *self.bits.get(self.pos)?;
        self.pos += 1;
        Some(b)
    }

    fn bits(&mut self, width: u32) -> Option<u64> {
        let mut v = 0u64;
        for _ in 0..width {
            v = v << 1 | u64::from(self.bit()?);
        }
        Some(v)
    }

    fn gamma(&mut self) -> Option<u64> {
        let mut zeros = 0u32;
        while !self.bit()? {
            zeros += 1;
            if zeros >= 32 {
                return None;
            }
        }
        Some(1 << zeros | self.bits(zeros)?)
    }

    fn remaining(&self) -> usize {
        self.bits.len() - self.pos
    }
}

pub fn encode_machine(table: &TransitionTable) -> Natural {
    let n = u64::from(table.state_count());
    let width = bit_len(n);
    let mut w = BitWriter(Vec::new());
    w.push_gamma(n);
    for q in 0..table.state_count() {
        for sym in Symbol::ALL {
            match table.get(q, sym) {
                None => w.0.push(false),
                Some(tr) => {
                    w.0.push(true);
                    let next = match tr.next {
                        Next::State(s) => u64::from(s),
                        Next::Halt => n,
                    };
                    w.push_bits(next, width);
                    w.push_bits(tr.write.index() as u64, 2);
                    w.0.push(tr.mv == Move::R);
                }
            }
        }
    }
    from_dyadic_bits(&w.0)
}

fn parse(bits: &[bool]) -> Option<TransitionTable> {
    let mut r = BitReader { bits, pos: 0 };
    let n = r.gamma()?;
    // Each state owns three slots of at least one bit.
    if n.checked_mul(3)? > r.remaining() as u64 {
        return None;
    }
    let width = bit_len(n);
    let mut table = TransitionTable::new(n as u32).ok()?;
    for q in 0..n as u32 {
        for sym in Symbol::ALL {
            if !r.bit()? {
                continue;
            }
            let next = match r.bits(width)? {
                s if s < n => Next::State(s as u32),
                s if s == n => Next::Halt,
                _ => return None,
            };
            let write = match r.bits(2)? {
                0 => Symbol::Zero,
                1 => Symbol::One,
                2 => Symbol::Blank,
                _ => return None,
            };
            let mv = if r.bit()? { Move::R } else { Move::L };
            table.set(q, sym, Transition::new(next, write, mv)).ok()?;
        }
    }
    (r.remaining() == 0).then_some(table)
}

/// Total decoding: every natural names some machine.
pub fn decode_machine(m: &Natural) -> TransitionTable {
    parse(&dyadic_bits(m)).unwrap_or_else(TransitionTable::null_machine)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::codec::from_dyadic;

    #[test]
    fn zero_decodes_to_null() {
        assert!(parse(&[]).is_none());
        assert_eq!(
            decode_machine(&Natural::from(0u32)),
            TransitionTable::null_machine()
        );
    }

    #[test]
    fn identity_machine_code() {
        // gamma(1) = "1", then three empty slots.
        let m = from_dyadic("1000").unwrap();
        assert_eq!(encode_machine(&TransitionTable::new(1).unwrap()), m);
        assert_eq!(decode_machine(&m), TransitionTable::new(1).unwrap());
    }

    #[test]
    fn null_round_trip() {
        let null = TransitionTable::null_machine();
        assert_eq!(decode_machine(&encode_machine(&null)), null);
    }

    #[test]
    fn trailing_bits_fail() {
        assert!(parse(&[true, false, false, false, true]).is_none());
    }

    #[test]
    fn invalid_write_code_fails() {
        // gamma(1), slot present, next = 1 (HALT, width 1), write = 11.
        assert!(parse(&[true, true, true, true, true, true, false, false]).is_none());
    }
}
