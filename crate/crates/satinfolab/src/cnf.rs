//! CNF formulas, assignments, and evaluation.
//!
//! A search problem here is always a conjunction of disjunctive clauses over
//! binary variables `x1..xn`. Variables are 1-based throughout the crate; an
//! [`Assignment`] stores the values of `x1..xn` in index order.

use std::fmt;

use thiserror::Error;

/// Errors raised by formula construction and evaluation.
#[derive(Debug, Error, PartialEq, Eq)]
pub enum CnfError {
    /// Variable index 0 is not a variable; indices start at 1.
    #[error("variable index 0 is invalid (variables are numbered from 1)")]
    ZeroVariable,
    /// A clause mentioned the same variable twice.
    #[error("variable x{var} appears more than once in a clause")]
    DuplicateVariable { var: u32 },
    /// A literal referred to a variable outside the instance's range.
    #[error("literal over x{var} is out of range for an instance over {n} variables")]
    VariableOutOfRange { var: u32, n: u32 },
    /// Instances must have at least one variable.
    #[error("an instance must have at least one variable")]
    NoVariables,
    /// Assignment width does not match the instance width.
    #[error("assignment has {actual} values but the instance has {expected} variables")]
    DimensionMismatch { expected: u32, actual: u32 },
}

/// A single literal: a variable index plus a polarity.
///
/// `negated == false` means the literal is `x_var`; `true` means `¬x_var`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Literal {
    var: u32,
    negated: bool,
}

impl Literal {
    /// Checked constructor; rejects variable index 0.
    pub fn new(var: u32, negated: bool) -> Result<Self, CnfError> {
        if var == 0 {
            return Err(CnfError::ZeroVariable);
        }
        Ok(Literal { var, negated })
    }

    /// The positive literal `x_var`. Panics on `var == 0`.
    pub fn pos(var: u32) -> Self {
        Self::new(var, false).expect("variable index must be >= 1")
    }

    /// The negated literal `¬x_var`. Panics on `var == 0`.
    pub fn neg(var: u32) -> Self {
        Self::new(var, true).expect("variable index must be >= 1")
    }

    pub fn var(&self) -> u32 {
        self.var
    }

    pub fn is_negated(&self) -> bool {
        self.negated
    }

    /// Convert from the DIMACS signed convention (`-3` is `¬x3`).
    pub fn from_dimacs(code: i64) -> Result<Self, CnfError> {
        if code == 0 {
            return Err(CnfError::ZeroVariable);
        }
        let var = u32::try_from(code.unsigned_abs()).map_err(|_| CnfError::VariableOutOfRange {
            var: u32::MAX,
            n: u32::MAX,
        })?;
        Self::new(var, code < 0)
    }

    /// Convert to the DIMACS signed convention.
    pub fn to_dimacs(&self) -> i64 {
        let v = i64::from(self.var);
        if self.negated {
            -v
        } else {
            v
        }
    }

    /// True under `assignment` iff the variable's value matches the polarity.
    fn holds_under(&self, assignment: &Assignment) -> bool {
        assignment.value(self.var) != self.negated
    }
}

impl fmt::Display for Literal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.negated {
            write!(f, "¬x{}", self.var)
        } else {
            write!(f, "x{}", self.var)
        }
    }
}

/// A disjunction of literals with at most one literal per variable.
///
/// Literals are kept sorted by ascending variable index, which is also the
/// order DIMACS emission uses. The empty clause is allowed and is false under
/// every assignment.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Clause {
    literals: Vec<Literal>,
}

impl Clause {
    /// Build a clause, normalizing literal order and rejecting duplicate
    /// variables (both `x ∨ x` and `x ∨ ¬x` are malformed here).
    pub fn new(mut literals: Vec<Literal>) -> Result<Self, CnfError> {
        literals.sort_by_key(Literal::var);
        for pair in literals.windows(2) {
            if pair[0].var() == pair[1].var() {
                return Err(CnfError::DuplicateVariable { var: pair[0].var() });
            }
        }
        Ok(Clause { literals })
    }

    /// The clause with no literals, false everywhere.
    pub fn empty() -> Self {
        Clause { literals: Vec::new() }
    }

    pub fn literals(&self) -> &[Literal] {
        &self.literals
    }

    pub fn len(&self) -> usize {
        self.literals.len()
    }

    pub fn is_empty(&self) -> bool {
        self.literals.is_empty()
    }

    /// Largest variable index mentioned, or 0 for the empty clause.
    pub fn max_var(&self) -> u32 {
        self.literals.last().map_or(0, Literal::var)
    }

    /// Disjunction over the literals. Callers must ensure every variable is
    /// within the assignment's width; [`CnfInstance::evaluate`] checks this.
    pub fn satisfied_by(&self, assignment: &Assignment) -> bool {
        self.literals.iter().any(|lit| lit.holds_under(assignment))
    }
}

impl fmt::Display for Clause {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.literals.is_empty() {
            return write!(f, "⊥");
        }
        let parts: Vec<String> = self.literals.iter().map(Literal::to_string).collect();
        write!(f, "({})", parts.join(" ∨ "))
    }
}

/// A CNF instance: a fixed variable count `n ≥ 1` and a clause list.
///
/// The clause list may be empty (the trivially true formula) and clauses may
/// repeat. There is no upper limit on the clause count here; the canonical
/// encoder in [`crate::codec`] imposes its own `m ≤ 2^(2n)` ceiling.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct CnfInstance {
    n: u32,
    clauses: Vec<Clause>,
}

impl CnfInstance {
    /// Build an instance, checking that every literal fits inside `n`.
    pub fn new(n: u32, clauses: Vec<Clause>) -> Result<Self, CnfError> {
        if n == 0 {
            return Err(CnfError::NoVariables);
        }
        for clause in &clauses {
            let max = clause.max_var();
            if max > n {
                return Err(CnfError::VariableOutOfRange { var: max, n });
            }
        }
        Ok(CnfInstance { n, clauses })
    }

    /// Number of variables `n`.
    pub fn num_vars(&self) -> u32 {
        self.n
    }

    /// Number of clauses `m`.
    pub fn num_clauses(&self) -> usize {
        self.clauses.len()
    }

    pub fn clauses(&self) -> &[Clause] {
        &self.clauses
    }

    /// Conjunction over all clauses.
    ///
    /// An instance with no clauses is true under every assignment; any empty
    /// clause makes the whole formula false.
    pub fn evaluate(&self, assignment: &Assignment) -> Result<bool, CnfError> {
        if assignment.len() != self.n {
            return Err(CnfError::DimensionMismatch {
                expected: self.n,
                actual: assignment.len(),
            });
        }
        Ok(self.clauses.iter().all(|c| c.satisfied_by(assignment)))
    }
}

impl fmt::Display for CnfInstance {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.clauses.is_empty() {
            return write!(f, "⊤[n={}]", self.n);
        }
        let parts: Vec<String> = self.clauses.iter().map(Clause::to_string).collect();
        write!(f, "{}", parts.join(" ∧ "))
    }
}

/// Values for `x1..xn`, in variable order (`bits[0]` is `x1`).
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Assignment {
    bits: Vec<bool>,
}

impl Assignment {
    pub fn new(bits: Vec<bool>) -> Self {
        Assignment { bits }
    }

    /// The `counter`-th assignment over `n` variables in ascending counter
    /// order: `x_n` is the least significant bit, so `x1` carries weight
    /// `2^(n-1)`. Counter 0 is all-false.
    pub fn from_counter(counter: u64, n: u32) -> Self {
        assert!((1..=63).contains(&n), "counter assignments support 1..=63 variables");
        let bits = (1..=n).map(|i| (counter >> (n - i)) & 1 == 1).collect();
        Assignment { bits }
    }

    /// Inverse of [`Assignment::from_counter`].
    pub fn to_counter(&self) -> u64 {
        assert!(self.bits.len() <= 63, "counter form supports up to 63 variables");
        self.bits
            .iter()
            .fold(0u64, |acc, &b| (acc << 1) | u64::from(b))
    }

    /// Width of the assignment (the `n` it is meant for).
    pub fn len(&self) -> u32 {
        self.bits.len() as u32
    }

    pub fn is_empty(&self) -> bool {
        self.bits.is_empty()
    }

    /// Value of `x_var` (1-based). Panics if the variable is out of range.
    pub fn value(&self, var: u32) -> bool {
        self.bits[(var - 1) as usize]
    }

    pub fn bits(&self) -> &[bool] {
        &self.bits
    }

    /// Parse a `0`/`1` string, most significant variable (`x1`) first.
    pub fn from_ascii(s: &str) -> Option<Self> {
        let mut bits = Vec::with_capacity(s.len());
        for ch in s.chars() {
            match ch {
                '0' => bits.push(false),
                '1' => bits.push(true),
                _ => return None,
            }
        }
        Some(Assignment { bits })
    }

    /// DIMACS model line: `v` followed by signed literals and a terminating 0.
    pub fn to_dimacs_model_line(&self) -> String {
        let mut parts = vec!["v".to_string()];
        for (idx, &b) in self.bits.iter().enumerate() {
            let var = idx as i64 + 1;
            parts.push(if b { var.to_string() } else { (-var).to_string() });
        }
        parts.push("0".to_string());
        parts.join(" ")
    }
}

impl fmt::Display for Assignment {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for &b in &self.bits {
            write!(f, "{}", if b { '1' } else { '0' })?;
        }
        Ok(())
    }
}

impl serde::Serialize for Assignment {
    fn serialize<S: serde::Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        serializer.serialize_str(&self.to_string())
    }
}
