//! A workbench for measuring the information content of SAT.
//!
//! The crate turns a set of pencil-and-paper constructions about how many bits
//! a satisfiability problem "costs" into running, testable code:
//!
//! * [`cnf`] — CNF formulas over variables `x1..xn`, assignments, evaluation,
//!   and DIMACS import/export.
//! * [`codec`] — the canonical binary encoding of instances (two bits per
//!   variable position per clause), plus the family of bit-budget formulas
//!   (encoding lengths, table sizes, Lambert-W based lower bounds).
//! * [`machines`] — tape-level enumerator and verifier: a relation enumerator
//!   that walks every instance/assignment pair in counter order, and a
//!   three-state verifier that checks one assignment against one formula.
//! * [`oracle`] — a deliberately simple brute-force solver used as ground
//!   truth everywhere else.
//! * [`table`] — a complete binary trie holding a precomputed answer for every
//!   bit string of a fixed length, with per-lookup step accounting.
//! * [`trbs`] — an encoder that maps arbitrary bit strings onto families of
//!   3-SAT instances (one instance per index, four clauses per variable) and
//!   the census machinery that probes when that construction works.
//!
//! The modules are intentionally layered: `oracle` trusts only `cnf`;
//! `machines`, `table` and `trbs` are each validated against `oracle`; the
//! `codec` formulas are validated against the concrete encoders.

pub mod cnf;
pub mod codec;
pub mod dimacs;
pub mod machines;
pub mod oracle;
pub mod table;
pub mod trbs;

pub use cnf::{Assignment, Clause, CnfError, CnfInstance, Literal};
pub use codec::{BitString, EncodedInstance};
pub use oracle::{Oracle, SolveResult};
