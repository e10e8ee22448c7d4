//! Bijective numeric codecs.
//!
//! Every object the lab manipulates (formulas, assignments, machines, BGS
//! indices) is ultimately a natural number. This module fixes the numberings:
//!
//! - the dyadic bijection between naturals and binary strings, which is what a
//!   machine sees on its tape;
//! - Cantor's diagonal pairing `pair(x, y) = (x + y)(x + y + 1)/2 + y`, and the
//!   triple `⟨m, a, b⟩ = pair(m, pair(a, b))`;
//! - sequence codes `seq([]) = 0`, `seq(h:t) = pair(h, seq(t)) + 1`;
//! - the CNF code built from sequence codes of literal codes.

use std::fmt;

use num_bigint::BigUint;
use num_integer::Roots;
use num_traits::{One, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use crate::error::CodecError;

/// Arbitrary-precision natural number.
pub type Natural = BigUint;

/// Version tag of the numeric codecs in this module. Any change to the
/// pairing, sequence, or CNF code must bump it.
pub const CODEC_VERSION: &str = "codec-1";

/// Dyadic representation of `n`: the `n`-th binary string in
/// length-then-lexicographic order, with `0 ↦ ""`.
pub fn to_dyadic(n: &Natural) -> String {
    let s = (n + 1u32).to_str_radix(2);
    s[1..].to_owned()
}

/// Inverse of [`to_dyadic`].
pub fn from_dyadic(s: &str) -> Result<Natural, CodecError> {
    if let Some(bad) = s.chars().find(|c| *c != '0' && *c != '1') {
        return Err(CodecError::NotBinary(bad));
    }
    let mut digits = Vec::with_capacity(s.len() + 1);
    digits.push(1u8);
    digits.extend(s.bytes().map(|b| b - b'0'));
    let n = BigUint::from_radix_be(&digits, 2).expect("binary digits");
    Ok(n - 1u32)
}

/// `|dyadic(n)| = floor(log2(n + 1))`, without materializing the string.
pub fn dyadic_len(n: &Natural) -> u64 {
    (n + 1u32).bits() - 1
}

/// Dyadic bits of `n` as booleans, `'1' ↦ true`.
pub fn dyadic_bits(n: &Natural) -> Vec<bool> {
    let m = n + 1u32;
    let len = m.bits() - 1;
    (0..len).rev().map(|i| m.bit(i)).collect()
}

/// Inverse of [`dyadic_bits`].
pub fn from_dyadic_bits(bits: &[bool]) -> Natural {
    let mut n = BigUint::one();
    for &b in bits {
        n <<= 1u32;
        if b {
            n += 1u32;
        }
    }
    n - 1u32
}

/// Cantor pairing on machine words. Valid while `x + y < 2^63`.
#[inline]
pub fn pair_u64(x: u64, y: u64) -> u128 {
    let s = x as u128 + y as u128;
    s * (s + 1) / 2 + y as u128
}

/// Inverse of [`pair_u64`] for any `z` up to `u64::MAX`.
#[inline]
pub fn unpair_u64(z: u64) -> (u64, u64) {
    let (x, y) = unpair_u128(z as u128);
    (x as u64, y as u64)
}

/// Cantor pairing in `u128`, or `None` on overflow.
#[inline]
fn pair_u128(x: u128, y: u128) -> Option<u128> {
    let s = x.checked_add(y)?;
    let tri = if s % 2 == 0 {
        (s / 2).checked_mul(s + 1)?
    } else {
        s.checked_mul(s.div_ceil(2))?
    };
    tri.checked_add(y)
}

/// Inverse of Cantor pairing for `z < 2^125`, where `8z + 1` fits.
#[inline]
fn unpair_u128(z: u128) -> (u128, u128) {
    let w = ((8 * z + 1).sqrt() - 1) / 2;
    let y = z - w * (w + 1) / 2;
    (w - y, y)
}

/// `⌊√n⌋` by integer Newton iteration from an overestimate seeded with the
/// top 124 bits; one step suffices below about 2^240.
fn isqrt_big(n: &Natural) -> Natural {
    let bits = n.bits();
    if bits <= 124 {
        return Natural::from(n.to_u128().expect("fits").sqrt());
    }
    let shift = (bits - 123) & !1;
    let top = (n >> shift).to_u128().expect("fits");
    let mut r = Natural::from(top.sqrt() + 1) << (shift / 2);
    loop {
        let next = (&r + n / &r) >> 1u32;
        if next >= r {
            return r;
        }
        r = next;
    }
}

/// Cantor's diagonal pairing, a bijection `ℕ × ℕ → ℕ` with `pair(0, 0) = 0`.
pub fn pair(x: &Natural, y: &Natural) -> Natural {
    if let (Some(a), Some(b)) = (x.to_u128(), y.to_u128()) {
        if let Some(z) = pair_u128(a, b) {
            return Natural::from(z);
        }
    }
    let s = x + y;
    let tri = (&s * (&s + 1u32)) >> 1u32;
    tri + y
}

/// The projections `(π₁ z, π₂ z)`.
pub fn unpair(z: &Natural) -> (Natural, Natural) {
    if let Some(small) = z.to_u128().filter(|&v| v < 1 << 125) {
        let (x, y) = unpair_u128(small);
        return (x.into(), y.into());
    }
    let w = (isqrt_big(&(z * 8u32 + 1u32)) - 1u32) >> 1u32;
    let t = (&w * (&w + 1u32)) >> 1u32;
    let y = z - t;
    (w - &y, y)
}

/// First projection `π₁`.
pub fn proj1(z: &Natural) -> Natural {
    unpair(z).0
}

/// Second projection `π₂`.
pub fn proj2(z: &Natural) -> Natural {
    unpair(z).1
}

/// `⟨m, a, b⟩ = pair(m, pair(a, b))`.
pub fn triple_encode(m: &Natural, a: &Natural, b: &Natural) -> Natural {
    pair(m, &pair(a, b))
}

pub fn triple_decode(n: &Natural) -> (Natural, Natural, Natural) {
    let (m, ab) = unpair(n);
    let (a, b) = unpair(&ab);
    (m, a, b)
}

/// Running value of a right fold of `seq`, kept in a word while it fits.
enum SeqAcc {
    Small(u128),
    Big(Natural),
}

impl SeqAcc {
    fn cons_small(self, h: u128) -> Self {
        match self {
            SeqAcc::Small(t) => match pair_u128(h, t).and_then(|z| z.checked_add(1)) {
                Some(z) => SeqAcc::Small(z),
                None => SeqAcc::Big(pair(&Natural::from(h), &Natural::from(t)) + 1u32),
            },
            big => big.cons(&Natural::from(h)),
        }
    }

    fn cons(self, h: &Natural) -> Self {
        match (self, h.to_u128()) {
            (acc @ SeqAcc::Small(_), Some(h)) => acc.cons_small(h),
            (SeqAcc::Small(t), None) => SeqAcc::Big(pair(h, &Natural::from(t)) + 1u32),
            (SeqAcc::Big(t), _) => SeqAcc::Big(pair(h, &t) + 1u32),
        }
    }

    fn finish(self) -> Natural {
        match self {
            SeqAcc::Small(v) => Natural::from(v),
            SeqAcc::Big(v) => v,
        }
    }
}

/// `seq([]) = 0`, `seq(h:t) = pair(h, seq(t)) + 1`.
pub fn seq_encode(items: &[Natural]) -> Natural {
    items
        .iter()
        .rev()
        .fold(SeqAcc::Small(0), |acc, h| acc.cons(h))
        .finish()
}

/// Inverse of [`seq_encode`]; every natural is the code of exactly one list.
pub fn seq_decode(code: &Natural) -> Vec<Natural> {
    let mut out = Vec::new();
    let mut rest = code.clone();
    while !rest.is_zero() {
        if let Some(small) = rest.to_u128().filter(|&v| v <= 1 << 125) {
            out.extend(seq_decode_small(small).into_iter().map(Natural::from));
            break;
        }
        let (h, t) = unpair(&(rest - 1u32));
        out.push(h);
        rest = t;
    }
    out
}

fn seq_decode_small(mut rest: u128) -> Vec<u128> {
    let mut out = Vec::new();
    while rest != 0 {
        let (h, t) = unpair_u128(rest - 1);
        out.push(h);
        rest = t;
    }
    out
}

/// A literal over variables numbered from 1.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Literal {
    pub var: u64,
    pub negated: bool,
}

impl Literal {
    pub fn pos(var: u64) -> Self {
        Literal {
            var,
            negated: false,
        }
    }

    pub fn neg(var: u64) -> Self {
        Literal { var, negated: true }
    }

    /// DIMACS-style signed form.
    pub fn from_signed(lit: i64) -> Option<Self> {
        match lit {
            0 => None,
            v if v > 0 => Some(Literal::pos(v as u64)),
            v => Some(Literal::neg(v.unsigned_abs())),
        }
    }

    pub fn signed(&self) -> i64 {
        if self.negated {
            -(self.var as i64)
        } else {
            self.var as i64
        }
    }

    /// `v ↦ 2v` for positive literals, `v ↦ 2v + 1` for negative ones.
    pub fn code(&self) -> Natural {
        Natural::from(self.var) * 2u32 + u32::from(self.negated)
    }
}

impl fmt::Display for Literal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.signed())
    }
}

pub type Clause = Vec<Literal>;

/// A CNF formula. Clause and literal order are part of the value.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct CnfFormula {
    pub clauses: Vec<Clause>,
}

impl CnfFormula {
    pub fn new(clauses: Vec<Clause>) -> Self {
        CnfFormula { clauses }
    }

    /// Builds a formula from DIMACS-style signed literals.
    pub fn from_signed(clauses: &[&[i64]]) -> Result<Self, CodecError> {
        let clauses = clauses
            .iter()
            .map(|c| {
                c.iter()
                    .map(|&l| Literal::from_signed(l).ok_or(CodecError::ZeroLiteral))
                    .collect::<Result<Vec<_>, _>>()
            })
            .collect::<Result<Vec<_>, _>>()?;
        Ok(CnfFormula { clauses })
    }

    /// Largest variable index occurring, 0 for a formula without literals.
    pub fn var_count(&self) -> u64 {
        self.clauses
            .iter()
            .flatten()
            .map(|l| l.var)
            .max()
            .unwrap_or(0)
    }

    pub fn is_empty(&self) -> bool {
        self.clauses.is_empty()
    }
}

impl fmt::Display for CnfFormula {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "p cnf {} {}", self.var_count(), self.clauses.len())?;
        for clause in &self.clauses {
            for lit in clause {
                write!(f, "{lit} ")?;
            }
            writeln!(f, "0")?;
        }
        Ok(())
    }
}

/// Outcome of [`decode_cnf`]. Decoding is total: every natural is either a
/// formula code or explicitly invalid.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum DecodedCnf {
    Valid(CnfFormula),
    Invalid(InvalidCnf),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum InvalidCnf {
    /// A literal code of 0 or 1 occurs.
    LiteralBelowTwo,
    /// A literal names a variable beyond `u64::MAX`.
    VariableOutOfRange,
}

impl DecodedCnf {
    pub fn valid(&self) -> Option<&CnfFormula> {
        match self {
            DecodedCnf::Valid(f) => Some(f),
            DecodedCnf::Invalid(_) => None,
        }
    }

    pub fn into_valid(self) -> Option<CnfFormula> {
        match self {
            DecodedCnf::Valid(f) => Some(f),
            DecodedCnf::Invalid(_) => None,
        }
    }
}

pub fn encode_clause(clause: &[Literal]) -> Natural {
    clause
        .iter()
        .rev()
        .fold(SeqAcc::Small(0), |acc, l| {
            acc.cons_small(u128::from(l.var) * 2 + u128::from(l.negated))
        })
        .finish()
}

/// Formula number `x = seq(clause codes)`, each clause code being the
/// sequence code of its literal codes.
pub fn encode_cnf(formula: &CnfFormula) -> Result<Natural, CodecError> {
    if formula.clauses.iter().flatten().any(|l| l.var == 0) {
        return Err(CodecError::ZeroVariable);
    }
    Ok(formula
        .clauses
        .iter()
        .rev()
        .fold(SeqAcc::Small(0), |acc, c| acc.cons(&encode_clause(c)))
        .finish())
}

pub fn decode_cnf(x: &Natural) -> DecodedCnf {
    let mut clauses = Vec::new();
    for clause_code in seq_decode(x) {
        let codes: Vec<Option<u128>> = match clause_code.to_u128().filter(|&v| v <= 1 << 125) {
            Some(small) => seq_decode_small(small).into_iter().map(Some).collect(),
            None => seq_decode(&clause_code)
                .iter()
                .map(ToPrimitive::to_u128)
                .collect(),
        };
        let mut clause = Vec::with_capacity(codes.len());
        for code in codes {
            let Some(code) = code else {
                return DecodedCnf::Invalid(InvalidCnf::VariableOutOfRange);
            };
            if code < 2 {
                return DecodedCnf::Invalid(InvalidCnf::LiteralBelowTwo);
            }
            let Ok(var) = u64::try_from(code / 2) else {
                return DecodedCnf::Invalid(InvalidCnf::VariableOutOfRange);
            };
            clause.push(Literal {
                var,
                negated: code % 2 == 1,
            });
        }
        clauses.push(clause);
    }
    DecodedCnf::Valid(CnfFormula { clauses })
}

/// A line of truth values `y`; bit `i` of `dyadic(y)` is variable `i + 1`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Assignment {
    pub y: Natural,
    pub bits: Vec<bool>,
}

impl Assignment {
    pub fn from_code(y: &Natural) -> Self {
        Assignment {
            y: y.clone(),
            bits: dyadic_bits(y),
        }
    }

    pub fn from_bits(bits: Vec<bool>) -> Self {
        Assignment {
            y: from_dyadic_bits(&bits),
            bits,
        }
    }

    /// Strict width: usable with `formula` only if `|bits| = varCount`.
    pub fn compatible_with(&self, formula: &CnfFormula) -> bool {
        self.bits.len() as u64 == formula.var_count()
    }

    pub fn value(&self, var: u64) -> Option<bool> {
        let idx = usize::try_from(var.checked_sub(1)?).ok()?;
        self.bits.get(idx).copied()
    }
}

/// Parses the DIMACS subset: optional `c` comment lines, a `p cnf V C` header,
/// then clauses terminated by `0` (a clause may span lines).
pub fn parse_dimacs(text: &str) -> Result<CnfFormula, CodecError> {
    let mut header: Option<(u64, usize)> = None;
    let mut clauses = Vec::new();
    let mut current = Vec::new();
    for (lineno, line) in text.lines().enumerate() {
        let line = line.trim();
        if line.is_empty() || line.starts_with('c') || line.starts_with('%') {
            continue;
        }
        if line.starts_with('p') {
            let parts: Vec<&str> = line.split_whitespace().collect();
            if header.is_some() || parts.len() != 4 || parts[1] != "cnf" {
                return Err(CodecError::Dimacs {
                    line: lineno + 1,
                    msg: "expected a single `p cnf V C` header".into(),
                });
            }
            let vars = parts[2].parse().map_err(|_| CodecError::Dimacs {
                line: lineno + 1,
                msg: format!("bad variable count `{}`", parts[2]),
            })?;
            let count = parts[3].parse().map_err(|_| CodecError::Dimacs {
                line: lineno + 1,
                msg: format!("bad clause count `{}`", parts[3]),
            })?;
            header = Some((vars, count));
            continue;
        }
        let Some((vars, _)) = header else {
            return Err(CodecError::Dimacs {
                line: lineno + 1,
                msg: "clause before `p cnf` header".into(),
            });
        };
        for tok in line.split_whitespace() {
            let lit: i64 = tok.parse().map_err(|_| CodecError::Dimacs {
                line: lineno + 1,
                msg: format!("bad literal `{tok}`"),
            })?;
            match Literal::from_signed(lit) {
                None => clauses.push(std::mem::take(&mut current)),
                Some(l) if l.var > vars => {
                    return Err(CodecError::Dimacs {
                        line: lineno + 1,
                        msg: format!("variable {} exceeds declared count {vars}", l.var),
                    })
                }
                Some(l) => current.push(l),
            }
        }
    }
    let Some((_, count)) = header else {
        return Err(CodecError::Dimacs {
            line: 0,
            msg: "missing `p cnf` header".into(),
        });
    };
    if !current.is_empty() {
        return Err(CodecError::Dimacs {
            line: 0,
            msg: "last clause is not terminated by 0".into(),
        });
    }
    if clauses.len() != count {
        return Err(CodecError::Dimacs {
            line: 0,
            msg: format!("header declares {count} clauses, found {}", clauses.len()),
        });
    }
    Ok(CnfFormula { clauses })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn n(v: u64) -> Natural {
        Natural::from(v)
    }

    /// All binary strings of length ≤ `max_len`, by length then lex.
    fn enumerate_strings(max_len: usize) -> Vec<String> {
        let mut out = vec![String::new()];
        let mut layer = vec![String::new()];
        for _ in 0..max_len {
            let next: Vec<String> = layer
                .iter()
                .flat_map(|s| [format!("{s}0"), format!("{s}1")])
                .collect();
            out.extend(next.iter().cloned());
            layer = next;
        }
        out
    }

    #[test]
    fn dyadic_matches_enumeration() {
        let strings = enumerate_strings(10);
        for (i, s) in strings.iter().enumerate() {
            assert_eq!(&to_dyadic(&n(i as u64)), s);
            assert_eq!(from_dyadic(s).unwrap(), n(i as u64));
            assert_eq!(dyadic_len(&n(i as u64)), s.len() as u64);
        }
        assert_eq!(to_dyadic(&n(0)), "");
        assert_eq!(to_dyadic(&n(1)), "0");
        assert_eq!(to_dyadic(&n(2)), "1");
        assert_eq!(from_dyadic("00").unwrap(), n(3));
    }

    #[test]
    fn from_dyadic_rejects_other_chars() {
        assert_eq!(from_dyadic("01x"), Err(CodecError::NotBinary('x')));
    }

    #[test]
    fn pair_matches_diagonal_enumeration() {
        // Walk the diagonals x + y = s with y ascending and index them.
        let mut idx = 0u64;
        for s in 0..40u64 {
            for y in 0..=s {
                let x = s - y;
                assert_eq!(pair(&n(x), &n(y)), n(idx), "pair({x},{y})");
                assert_eq!(unpair(&n(idx)), (n(x), n(y)));
                idx += 1;
            }
        }
        assert_eq!(pair(&n(0), &n(0)), n(0));
        assert_eq!(pair(&n(1), &n(2)), n(8));
        assert_eq!(unpair(&pair(&n(7), &n(11))), (n(7), n(11)));
    }

    #[test]
    fn big_and_small_paths_agree() {
        let big = Natural::from(u128::MAX) * 977u32 + 12345u32;
        let z = pair(&big, &n(3));
        assert_eq!(unpair(&z), (big.clone(), n(3)));
        let z = pair(&n(3), &big);
        assert_eq!(unpair(&z), (n(3), big));
        let edge = n(u64::MAX);
        let (x, y) = unpair(&edge);
        assert_eq!(pair(&x, &y), edge);
    }

    #[test]
    fn triple_examples() {
        assert_eq!(triple_encode(&n(0), &n(0), &n(0)), n(0));
        let t = triple_encode(&n(3), &n(2), &n(5));
        assert_eq!(triple_decode(&t), (n(3), n(2), n(5)));
    }

    #[test]
    fn seq_examples() {
        assert_eq!(seq_encode(&[]), n(0));
        // seq([5]) = pair(5, 0) + 1 = 15 + 1
        assert_eq!(seq_encode(&[n(5)]), n(16));
        assert_eq!(seq_decode(&n(188)), vec![n(2), n(5)]);
    }

    #[test]
    fn cnf_nested_code_by_hand() {
        // [[+1, -2], [+2]]: literal codes 2, 5 and 4.
        // clause 1: seq([5]) = pair(5,0)+1 = 16; seq([2,5]) = pair(2,16)+1 = 188
        // clause 2: seq([4]) = pair(4,0)+1 = 11
        // formula: seq([11]) = pair(11,0)+1 = 67; seq([188,11]) = pair(188,67)+1 = 32708
        let f = CnfFormula::from_signed(&[&[1, -2], &[2]]).unwrap();
        let x = encode_cnf(&f).unwrap();
        assert_eq!(x, n(32708));
        assert_eq!(decode_cnf(&x), DecodedCnf::Valid(f));
    }

    #[test]
    fn cnf_small_cases() {
        assert_eq!(encode_cnf(&CnfFormula::default()).unwrap(), n(0));
        assert_eq!(decode_cnf(&n(0)), DecodedCnf::Valid(CnfFormula::default()));
        let unit = CnfFormula::from_signed(&[&[1]]).unwrap();
        assert_eq!(encode_cnf(&unit).unwrap(), n(11));
        assert_eq!(decode_cnf(&n(11)), DecodedCnf::Valid(unit));
        // 1 = seq([0]): one empty clause.
        assert_eq!(
            decode_cnf(&n(1)),
            DecodedCnf::Valid(CnfFormula::new(vec![vec![]]))
        );
        // 2 = seq([1]); clause 1 = seq([0]) holds literal code 0.
        assert_eq!(
            decode_cnf(&n(2)),
            DecodedCnf::Invalid(InvalidCnf::LiteralBelowTwo)
        );
    }

    #[test]
    fn encode_rejects_variable_zero() {
        let f = CnfFormula::new(vec![vec![Literal::pos(0)]]);
        assert_eq!(encode_cnf(&f), Err(CodecError::ZeroVariable));
    }

    #[test]
    fn assignment_width() {
        let f = CnfFormula::from_signed(&[&[1, -2], &[2]]).unwrap();
        let y = from_dyadic("11").unwrap();
        let a = Assignment::from_code(&y);
        assert_eq!(a.bits, vec![true, true]);
        assert!(a.compatible_with(&f));
        assert!(!Assignment::from_code(&n(1)).compatible_with(&f));
        assert_eq!(
            Assignment::from_bits(vec![true, false]).y,
            from_dyadic("10").unwrap()
        );
    }

    #[test]
    fn dimacs_round_trip() {
        let text = "c demo\np cnf 3 2\n1 -2 0\n2 3\n 0\n";
        let f = parse_dimacs(text).unwrap();
        assert_eq!(f, CnfFormula::from_signed(&[&[1, -2], &[2, 3]]).unwrap());
        assert_eq!(parse_dimacs(&f.to_string()).unwrap(), f);
    }

    #[test]
    fn dimacs_errors() {
        assert!(parse_dimacs("1 2 0\n").is_err());
        assert!(parse_dimacs("p cnf 1 1\n2 0\n").is_err());
        assert!(parse_dimacs("p cnf 2 2\n1 0\n").is_err());
        assert!(parse_dimacs("p cnf 2 1\n1 2\n").is_err());
        assert!(parse_dimacs("p cnf 2 1\n1 x 0\n").is_err());
    }
}
