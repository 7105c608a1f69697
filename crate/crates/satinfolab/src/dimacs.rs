//! DIMACS CNF import and export.
//!
//! The accepted dialect is the classic one: optional `c` comment lines, a
//! `p cnf <vars> <clauses>` header, then whitespace-separated signed literals
//! with each clause terminated by `0`. Clauses may span lines. Parsing is
//! strict: the clause count must match the header and no tokens may follow
//! the final clause.

use thiserror::Error;

use crate::cnf::{Clause, CnfError, CnfInstance, Literal};

#[derive(Debug, Error, PartialEq, Eq)]
pub enum DimacsError {
    #[error("missing `p cnf <vars> <clauses>` header")]
    MissingHeader,
    #[error("malformed header line: {0:?}")]
    BadHeader(String),
    #[error("bad literal token {0:?}")]
    BadLiteral(String),
    #[error("last clause is not terminated by 0")]
    UnterminatedClause,
    #[error("header promised {expected} clauses but the body has {found}")]
    ClauseCount { expected: usize, found: usize },
    #[error(transparent)]
    Cnf(#[from] CnfError),
}

/// Parse a DIMACS CNF document into an instance.
pub fn parse_dimacs(input: &str) -> Result<CnfInstance, DimacsError> {
    let mut lines = input.lines();
    let header = loop {
        match lines.next() {
            Some(line) => {
                let trimmed = line.trim();
                if trimmed.is_empty() || trimmed.starts_with('c') {
                    continue;
                }
                break trimmed.to_string();
            }
            None => return Err(DimacsError::MissingHeader),
        }
    };

    let fields: Vec<&str> = header.split_whitespace().collect();
    let (n, m) = match fields.as_slice() {
        ["p", "cnf", n, m] => {
            let n: u32 = n.parse().map_err(|_| DimacsError::BadHeader(header.clone()))?;
            let m: usize = m.parse().map_err(|_| DimacsError::BadHeader(header.clone()))?;
            (n, m)
        }
        _ => return Err(DimacsError::BadHeader(header)),
    };
    if n == 0 {
        return Err(DimacsError::BadHeader(header));
    }

    let mut clauses = Vec::with_capacity(m);
    let mut current: Vec<Literal> = Vec::new();
    for line in lines {
        let trimmed = line.trim();
        if trimmed.starts_with('c') {
            continue;
        }
        for token in trimmed.split_whitespace() {
            let code: i64 = token
                .parse()
                .map_err(|_| DimacsError::BadLiteral(token.to_string()))?;
            if code == 0 {
                clauses.push(Clause::new(std::mem::take(&mut current))?);
            } else {
                let lit = Literal::from_dimacs(code)?;
                if lit.var() > n {
                    return Err(CnfError::VariableOutOfRange { var: lit.var(), n }.into());
                }
                current.push(lit);
            }
        }
    }
    if !current.is_empty() {
        return Err(DimacsError::UnterminatedClause);
    }
    if clauses.len() != m {
        return Err(DimacsError::ClauseCount {
            expected: m,
            found: clauses.len(),
        });
    }
    Ok(CnfInstance::new(n, clauses)?)
}

/// Emit an instance as DIMACS CNF. Literals appear in the clause's
/// normalized (ascending variable) order; the empty clause becomes a bare
/// `0` line.
pub fn emit_dimacs(instance: &CnfInstance) -> String {
    let mut out = format!(
        "p cnf {} {}\n",
        instance.num_vars(),
        instance.num_clauses()
    );
    for clause in instance.clauses() {
        for lit in clause.literals() {
            out.push_str(&lit.to_dimacs().to_string());
            out.push(' ');
        }
        out.push_str("0\n");
    }
    out
}
