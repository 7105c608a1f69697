//! Brute-force ground truth.
//!
//! The oracle sweeps assignments in ascending counter order (`x_n` least
//! significant) and evaluates the formula directly. It is written for
//! obviousness, not speed: every other component in the crate is judged
//! against it, so it must be auditable at a glance.

use thiserror::Error;

use crate::cnf::{Assignment, CnfError, CnfInstance};

/// Default ceiling on `n` for full sweeps (2^24 evaluations).
pub const DEFAULT_ORACLE_CAP: u32 = 24;

/// Ceiling on `n` for materializing the whole model set.
pub const MODEL_SET_CAP: u32 = 16;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum OracleError {
    #[error("instance has n = {n} variables, over the sweep cap {cap}")]
    CapExceeded { n: u32, cap: u32 },
    #[error(transparent)]
    Cnf(#[from] CnfError),
}

/// Verdict of a full sweep: the first satisfying assignment in counter
/// order, or none at all.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum SolveResult {
    Sat(Assignment),
    Unsat,
}

impl SolveResult {
    pub fn is_sat(&self) -> bool {
        matches!(self, SolveResult::Sat(_))
    }

    pub fn model(&self) -> Option<&Assignment> {
        match self {
            SolveResult::Sat(model) => Some(model),
            SolveResult::Unsat => None,
        }
    }
}

/// Exhaustive solver with a configurable cap on `n`.
#[derive(Debug, Clone, Copy)]
pub struct Oracle {
    cap: u32,
}

impl Default for Oracle {
    fn default() -> Self {
        Oracle { cap: DEFAULT_ORACLE_CAP }
    }
}

impl Oracle {
    pub fn new() -> Self {
        Self::default()
    }

    /// Oracle with a custom cap (clamped to 63 so counters fit in u64).
    pub fn with_cap(cap: u32) -> Self {
        Oracle { cap: cap.min(63) }
    }

    pub fn cap(&self) -> u32 {
        self.cap
    }

    fn check(&self, instance: &CnfInstance, cap: u32) -> Result<u32, OracleError> {
        let n = instance.num_vars();
        if n > cap {
            return Err(OracleError::CapExceeded { n, cap });
        }
        Ok(n)
    }

    /// Does assignment counter `j` satisfy the instance? Works on the raw
    /// counter to avoid materializing an `Assignment` per candidate.
    fn counter_satisfies(instance: &CnfInstance, j: u64) -> bool {
        let n = instance.num_vars();
        instance.clauses().iter().all(|clause| {
            clause
                .literals()
                .iter()
                .any(|lit| ((j >> (n - lit.var())) & 1 == 1) != lit.is_negated())
        })
    }

    /// First satisfying assignment in counter order, or `Unsat`.
    pub fn solve_brute(&self, instance: &CnfInstance) -> Result<SolveResult, OracleError> {
        let n = self.check(instance, self.cap)?;
        for j in 0..1u64 << n {
            if Self::counter_satisfies(instance, j) {
                return Ok(SolveResult::Sat(Assignment::from_counter(j, n)));
            }
        }
        Ok(SolveResult::Unsat)
    }

    /// Number of satisfying assignments.
    pub fn count_models(&self, instance: &CnfInstance) -> Result<u64, OracleError> {
        let n = self.check(instance, self.cap)?;
        Ok((0..1u64 << n)
            .filter(|&j| Self::counter_satisfies(instance, j))
            .count() as u64)
    }

    /// All satisfying assignments in counter order. Capped harder than the
    /// other sweeps because the result is materialized.
    pub fn model_set(&self, instance: &CnfInstance) -> Result<Vec<Assignment>, OracleError> {
        let n = self.check(instance, self.cap.min(MODEL_SET_CAP))?;
        Ok((0..1u64 << n)
            .filter(|&j| Self::counter_satisfies(instance, j))
            .map(|j| Assignment::from_counter(j, n))
            .collect())
    }
}
