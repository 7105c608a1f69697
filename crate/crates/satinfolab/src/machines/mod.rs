//! Tape-level machinery: the relation enumerator and the assignment
//! verifier, plus the output-tape dump format.
//!
//! The enumerator walks every instance/assignment pair in counter order and
//! emits one record per satisfying assignment (or a single empty-answer
//! record when a formula has none). The verifier is a deliberately literal
//! three-state, two-head walk over the formula and assignment tapes. Both
//! are cross-validated against direct evaluation and the brute-force oracle.

mod enumerator;
mod tape;
mod tape5;
mod verifier;

use thiserror::Error;

pub use enumerator::{enumerate_relation, EnumerationLimits, RelationEnumerator, RelationRecord};
pub use tape::{increment_tape, Symbol, Tape};
pub use tape5::{dump_tape5, dump_tape5_to_string, parse_tape5, Tape5Error};
pub use verifier::{verify, VerifyOutcome};

#[derive(Debug, Error, PartialEq, Eq)]
pub enum MachineError {
    #[error("cell {position} holds {symbol:?}, not a binary digit")]
    NonBinarySymbol { symbol: char, position: i64 },
    #[error("assignment tape is empty")]
    EmptyAssignment,
    #[error("formula tape holds {len} bits, not a multiple of 2n = {two_n}")]
    FormulaLength { len: usize, two_n: usize },
}
