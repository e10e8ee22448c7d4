//! The verifier `V`, the truth-table decider `T`, and an independently
//! written brute-force satisfiability oracle.
//!
//! Conventions: `V(⟨0, 0⟩) = 1` (the empty formula is satisfied by the empty
//! line of truth values) and no formula `x > 0` is satisfied by `y = 0`.
//! Assignments must have exactly `varCount(x)` bits. Invalid formula codes
//! are unsatisfiable.

use num_traits::{One, Zero};

use crate::codec::{decode_cnf, unpair, Assignment, CnfFormula, DecodedCnf, Natural};
use crate::error::SatError;

/// Widest formula `T` and the brute oracle will enumerate by default.
pub const DEFAULT_WIDTH_LIMIT: u64 = 20;

/// `V(z)` for `z = ⟨x, y⟩`.
pub fn verify(z: &Natural) -> bool {
    let (x, y) = unpair(z);
    verify_pair(&x, &y)
}

pub fn verify_pair(x: &Natural, y: &Natural) -> bool {
    if y.is_zero() {
        return x.is_zero();
    }
    match decode_cnf(x) {
        DecodedCnf::Valid(f) => satisfies(&f, &Assignment::from_code(y)),
        DecodedCnf::Invalid(_) => false,
    }
}

/// Strict-width satisfaction check used by `V`.
pub fn satisfies(formula: &CnfFormula, assignment: &Assignment) -> bool {
    assignment.compatible_with(formula)
        && formula.clauses.iter().all(|clause| {
            clause
                .iter()
                .any(|lit| assignment.value(lit.var) == Some(!lit.negated))
        })
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DeciderResult {
    pub satisfiable: bool,
    /// Least satisfying assignment code; 0 when unsatisfiable and for the
    /// empty formula.
    pub witness: Natural,
}

impl DeciderResult {
    fn unsat() -> Self {
        DeciderResult {
            satisfiable: false,
            witness: Natural::zero(),
        }
    }
}

/// `T(x)`: tries every width-compatible `y` in increasing order and returns
/// the least one satisfying `x`.
pub fn decide(x: &Natural, width_limit: u64) -> Result<DeciderResult, SatError> {
    let formula = match decode_cnf(x) {
        DecodedCnf::Valid(f) => f,
        DecodedCnf::Invalid(_) => return Ok(DeciderResult::unsat()),
    };
    decide_formula(&formula, width_limit)
}

pub fn decide_formula(formula: &CnfFormula, width_limit: u64) -> Result<DeciderResult, SatError> {
    let v = formula.var_count();
    if v > width_limit.min(63) {
        return Err(SatError::WidthExceeded {
            var_count: v,
            limit: width_limit.min(63),
        });
    }
    if formula.is_empty() {
        return Ok(DeciderResult {
            satisfiable: true,
            witness: Natural::zero(),
        });
    }
    // Bit i of dyadic(y) (variable i + 1) sits at mask position v - 1 - i, so
    // the mask counts through width-v strings in lexicographic order and
    // y = 2^v - 1 + mask.
    let clauses: Vec<(u64, u64)> = formula
        .clauses
        .iter()
        .map(|c| {
            c.iter().fold((0u64, 0u64), |(pos, neg), lit| {
                let bit = 1u64 << (v - lit.var);
                if lit.negated {
                    (pos, neg | bit)
                } else {
                    (pos | bit, neg)
                }
            })
        })
        .collect();
    let full = (1u64 << v) - 1;
    for mask in 0..=full {
        if clauses
            .iter()
            .all(|&(pos, neg)| mask & pos != 0 || !mask & neg != 0)
        {
            let base = (Natural::one() << v as usize) - 1u32;
            return Ok(DeciderResult {
                satisfiable: true,
                witness: base + mask,
            });
        }
    }
    Ok(DeciderResult::unsat())
}

/// Independent brute-force oracle: counts through assignments as a vector
/// of booleans and evaluates signed literals directly.
pub fn satisfiable_brute(x: &Natural) -> Result<bool, SatError> {
    let Some(formula) = decode_cnf(x).into_valid() else {
        return Ok(false);
    };
    satisfiable_formula_brute(&formula)
}

pub fn satisfiable_formula_brute(formula: &CnfFormula) -> Result<bool, SatError> {
    let width = formula.var_count();
    if width > DEFAULT_WIDTH_LIMIT {
        return Err(SatError::WidthExceeded {
            var_count: width,
            limit: DEFAULT_WIDTH_LIMIT,
        });
    }
    let mut values = vec![false; width as usize];
    loop {
        if evaluate_brute(formula, &values) {
            return Ok(true);
        }
        // Odometer increment; wrapping past all-true ends the search.
        let mut i = 0;
        loop {
            if i == values.len() {
                return Ok(false);
            }
            values[i] = !values[i];
            if values[i] {
                break;
            }
            i += 1;
        }
    }
}

/// Evaluates `formula` under `values[v - 1]` for variable `v`, ignoring the
/// width convention.
pub fn evaluate_brute(formula: &CnfFormula, values: &[bool]) -> bool {
    for clause in &formula.clauses {
        let mut sat = false;
        for lit in clause {
            let signed = lit.signed();
            let value = values[(signed.unsigned_abs() - 1) as usize];
            if (signed > 0) == value {
                sat = true;
                break;
            }
        }
        if !sat {
            return false;
        }
    }
    true
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::codec::{encode_cnf, from_dyadic, pair};

    fn n(v: u64) -> Natural {
        Natural::from(v)
    }

    fn code(clauses: &[&[i64]]) -> Natural {
        encode_cnf(&CnfFormula::from_signed(clauses).unwrap()).unwrap()
    }

    #[test]
    fn empty_conventions() {
        assert!(verify(&pair(&n(0), &n(0))));
        assert!(!verify_pair(&code(&[&[1]]), &n(0)));
        assert!(!verify_pair(&n(0), &n(1)));
    }

    #[test]
    fn two_clause_example() {
        let x = code(&[&[1, -2], &[2]]);
        assert!(verify_pair(&x, &from_dyadic("11").unwrap()));
        assert!(!verify_pair(&x, &from_dyadic("10").unwrap()));
        assert!(!verify_pair(&x, &from_dyadic("01").unwrap()));
        // Width 3 is rejected even though the first two bits satisfy.
        assert!(!verify_pair(&x, &from_dyadic("110").unwrap()));
        let d = decide(&x, 20).unwrap();
        assert!(d.satisfiable);
        assert_eq!(d.witness, from_dyadic("11").unwrap());
    }

    #[test]
    fn decider_edge_cases() {
        assert_eq!(
            decide(&n(0), 20).unwrap(),
            DeciderResult {
                satisfiable: true,
                witness: n(0)
            }
        );
        assert_eq!(
            decide(&code(&[&[1], &[-1]]), 20).unwrap(),
            DeciderResult::unsat()
        );
        // One empty clause.
        assert_eq!(decide(&n(1), 20).unwrap(), DeciderResult::unsat());
        // Invalid code.
        assert_eq!(decide(&n(2), 20).unwrap(), DeciderResult::unsat());
        assert_eq!(
            decide(&code(&[&[5]]), 4),
            Err(SatError::WidthExceeded {
                var_count: 5,
                limit: 4
            })
        );
    }

    #[test]
    fn brute_basics() {
        assert!(satisfiable_brute(&n(0)).unwrap());
        assert!(!satisfiable_brute(&code(&[&[1], &[-1]])).unwrap());
        assert!(satisfiable_brute(&code(&[&[1, -2], &[2]])).unwrap());
        assert!(!satisfiable_brute(&n(1)).unwrap());
        assert!(satisfiable_brute(&code(&[&[21]])).is_err());
    }

    #[test]
    fn unit_clause_witnesses() {
        // [[+1]] = 11, witness "1" = 2; [[-1]] has witness "0" = 1.
        assert_eq!(decide(&n(11), 20).unwrap().witness, n(2));
        assert_eq!(decide(&code(&[&[-1]]), 20).unwrap().witness, n(1));
    }
}
