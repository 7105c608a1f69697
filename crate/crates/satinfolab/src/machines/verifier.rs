//! The two-head assignment verifier.
//!
//! The formula tape holds the clause rows of an encoded instance (the
//! variable-pair bits only, without the length header); the assignment tape
//! holds one bit per variable. The machine walks clause rows left to right.
//! Within a row, head F sits on the first bit of a variable pair while head
//! A sits on that variable's assigned value. Three states:
//!
//! * **scan** — if head A reads blank the current clause ran out of
//!   literals unsatisfied: reject. Otherwise look at head F: blank means
//!   every clause was cleared, accept; `0` means the variable is absent,
//!   skip the pair (F twice, A once); `1` means a literal is present, step
//!   F onto the polarity bit and decide.
//! * **decide** — compare the polarity bit under F with the value under A.
//!   A match in the satisfying sense clears the clause: fast-forward both
//!   heads to the end of the assignment tape, nudge F back one cell onto
//!   the next row boundary, rewind A, and resume scanning. Otherwise step
//!   past the pair and keep scanning.
//!
//! Steps count individual head movements, nothing else. The walk makes at
//! most `4n + 2` movements per clause, comfortably inside `6(nm + n + 1)`.

use super::MachineError;
use crate::codec::BitString;
use crate::machines::tape::{Symbol, Tape};

/// What the verifier concluded, and how many head movements it took.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct VerifyOutcome {
    pub accepted: bool,
    pub steps: u64,
}

enum State {
    Scan,
    Decide,
}

/// Runs the two-head walk. `formula` must be a whole number of `2n`-bit
/// clause rows where `n = assignment.len()`.
pub fn verify(formula: &BitString, assignment: &BitString) -> Result<VerifyOutcome, MachineError> {
    let n = assignment.len();
    if n == 0 {
        return Err(MachineError::EmptyAssignment);
    }
    if !formula.len().is_multiple_of(2 * n) {
        return Err(MachineError::FormulaLength {
            len: formula.len(),
            two_n: 2 * n,
        });
    }

    let mut f = Tape::from_bits(formula);
    let mut a = Tape::from_bits(assignment);
    let mut steps = 0u64;
    let mut state = State::Scan;

    loop {
        match state {
            State::Scan => {
                // Head A is consulted first so that a clause running out of
                // literals rejects before the formula head can wander past
                // the row boundary.
                match a.read() {
                    Symbol::Blank => return Ok(VerifyOutcome { accepted: false, steps }),
                    Symbol::Zero | Symbol::One => {}
                    sym => unreachable!("assignment tape holds only bits, found {sym:?}"),
                }
                match f.read() {
                    Symbol::Blank => return Ok(VerifyOutcome { accepted: true, steps }),
                    Symbol::Zero => {
                        f.move_right();
                        f.move_right();
                        a.move_right();
                        steps += 3;
                    }
                    Symbol::One => {
                        f.move_right();
                        steps += 1;
                        state = State::Decide;
                    }
                    sym => unreachable!("formula tape holds only bits and blanks, found {sym:?}"),
                }
            }
            State::Decide => {
                let negated = f
                    .read()
                    .as_bit()
                    .expect("pair bits come in twos on the formula tape");
                let value = a.read().as_bit().expect("checked in scan");
                if value != negated {
                    // Literal satisfied: this clause is done. Push head A to
                    // the end of the assignment and keep F in lockstep, two
                    // cells per variable.
                    while a.read() != Symbol::Blank {
                        a.move_right();
                        f.move_right();
                        f.move_right();
                        steps += 3;
                    }
                    // The double-steps overshoot the row boundary by one
                    // cell (the distance left is odd: we started on a
                    // polarity bit, not a pair boundary). Step back onto it.
                    f.move_left();
                    steps += 1;
                    while a.head() > 0 {
                        a.move_left();
                        steps += 1;
                    }
                    state = State::Scan;
                } else {
                    f.move_right();
                    a.move_right();
                    steps += 2;
                    state = State::Scan;
                }
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cnf::{Assignment, Clause, CnfInstance, Literal};
    use crate::codec::{decode_clause, encode_clause, BitString};

    fn bits(s: &str) -> BitString {
        s.parse().unwrap()
    }

    #[test]
    fn single_positive_literal_accepts_true() {
        let out = verify(&bits("10"), &bits("1")).unwrap();
        assert!(out.accepted);
        assert_eq!(out.steps, 6);
    }

    #[test]
    fn single_positive_literal_rejects_false() {
        let out = verify(&bits("10"), &bits("0")).unwrap();
        assert!(!out.accepted);
    }

    #[test]
    fn negated_literal_accepts_false() {
        let out = verify(&bits("11"), &bits("0")).unwrap();
        assert!(out.accepted);
    }

    #[test]
    fn contradiction_rejects_both_assignments() {
        // (x1) followed by (not x1): two rows at n = 1.
        let formula = bits("1011");
        assert!(!verify(&formula, &bits("0")).unwrap().accepted);
        assert!(!verify(&formula, &bits("1")).unwrap().accepted);
    }

    #[test]
    fn empty_clause_row_rejects() {
        assert!(!verify(&bits("0000"), &bits("10")).unwrap().accepted);
    }

    #[test]
    fn empty_formula_accepts_immediately() {
        let out = verify(&BitString::new(), &bits("101")).unwrap();
        assert!(out.accepted);
        assert_eq!(out.steps, 0);
    }

    #[test]
    fn empty_assignment_is_an_error() {
        assert_eq!(
            verify(&bits("10"), &BitString::new()),
            Err(MachineError::EmptyAssignment)
        );
    }

    #[test]
    fn ragged_formula_is_an_error() {
        assert_eq!(
            verify(&bits("101"), &bits("10")),
            Err(MachineError::FormulaLength { len: 3, two_n: 4 })
        );
    }

    /// The walk must agree with direct evaluation on every assignment of
    /// every formula in a small exhaustive sweep.
    #[test]
    fn agrees_with_evaluation_exhaustively() {
        for n in 1u32..=2 {
            for m in 1usize..=2 {
                let row_bits = 2 * n as usize;
                for formula_counter in 0u32..1 << (row_bits * m) {
                    let mut formula = BitString::new();
                    for i in (0..row_bits * m).rev() {
                        formula.push((formula_counter >> i) & 1 == 1);
                    }
                    let decoded = rows_to_instance(&formula, n);
                    for j in 0..1u64 << n {
                        let x = Assignment::from_counter(j, n);
                        let xbits: BitString = x.bits().iter().copied().collect();
                        let walked = verify(&formula, &xbits).unwrap();
                        assert_eq!(walked.accepted, decoded.evaluate(&x).unwrap());
                        let bound = 6 * (n as u64 * m as u64 + n as u64 + 1);
                        assert!(walked.steps <= bound, "steps {} > {}", walked.steps, bound);
                    }
                }
            }
        }
    }

    /// Reassembles clause rows through the decoder, which treats the
    /// unused `01` pair as an absent variable just like the walk does.
    fn rows_to_instance(formula: &BitString, n: u32) -> CnfInstance {
        let row = 2 * n as usize;
        let mut clauses = Vec::new();
        for start in (0..formula.len()).step_by(row) {
            let slice: BitString = (start..start + row)
                .map(|i| formula.get(i).unwrap())
                .collect();
            clauses.push(decode_clause(&slice, n).unwrap());
        }
        CnfInstance::new(n, clauses).unwrap()
    }

    /// Step counts stay within the linear envelope on encoded clauses.
    #[test]
    fn step_bound_on_wide_clauses() {
        let n = 9;
        let clause = Clause::new(vec![Literal::pos(4), Literal::neg(7), Literal::pos(9)]).unwrap();
        let row = encode_clause(&clause, n).unwrap();
        let mut formula = BitString::new();
        for _ in 0..5 {
            formula.extend_bits(&row);
        }
        for j in 0..1u64 << n {
            let x = Assignment::from_counter(j, n);
            let xbits: BitString = x.bits().iter().copied().collect();
            let out = verify(&formula, &xbits).unwrap();
            assert!(out.steps <= 6 * (9 * 5 + 9 + 1));
        }
    }
}
