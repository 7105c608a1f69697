//! Encoding bit strings as families of 3-literal instances.
//!
//! The family is indexed by `j` in `0..2^n`. The instance for index `j`
//! stacks one *group* of four clauses per variable `i`. Writing `a < b`
//! for the two smallest other variables (the *support pair* of `i`) and
//! `y_i` for `x_i` taken with the polarity of digit `i` of `j` (digit 1 is
//! the most significant; a 1-digit keeps `x_i` positive):
//!
//! ```text
//! k1 = ( a or  b or y_i)      k3 = ( a or not b or y_i)
//! k2 = (not a or  b or y_i)   k4 = (not a or not b or y_i)
//! ```
//!
//! The four clauses cover every sign combination of the support pair, so
//! the group forces `y_i` outright and the whole instance has exactly one
//! satisfying assignment: the digit string of `j`. That gives a `1` bit a
//! satisfiable instance whose model *is* the index.
//!
//! A `0` bit is meant to become an unsatisfiable instance by *flipping*
//! the `y` literal in a fixed subset of `{k2, k3, k4}` in every group.
//! Whether a given flip pattern actually produces an unsatisfiable
//! instance depends on `j` — see [`census`], which maps the whole
//! landscape, and [`TrbsError::PatternExhausted`], raised by verified
//! encoding when no pattern in the family works. (Index 0 can never be
//! made unsatisfiable this way: the all-zeros assignment satisfies the
//! support literals of `k2..k4` and `k1` is never flipped.)

use std::fmt;
use std::io::{self, Read, Write};
use std::str::FromStr;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha20Rng;
use rayon::prelude::*;
use serde::Serialize;
use thiserror::Error;

use num_bigint::BigUint;
use num_traits::ToPrimitive;

use crate::cnf::{Assignment, Clause, CnfInstance, Literal};
use crate::codec::{
    decode_instance, encode_instance, logarithmic_length, paper_bit_length, uniform_length,
    BitString, CostModel, Decoded,
};
use crate::oracle::{Oracle, OracleError, SolveResult};

/// Largest `n` for which batches and censuses are materialized; `2^n`
/// instances of `4n` clauses get out of hand quickly.
pub const TRBS_MAX_N: u32 = 16;

#[derive(Debug, Error)]
pub enum TrbsError {
    #[error("the instance family needs at least 3 variables, got {n}")]
    TooFewVariables { n: u32 },
    #[error("n = {n} would materialize 2^{n} instances; the ceiling is n = {cap}")]
    FamilyTooLarge { n: u32, cap: u32 },
    #[error("index {index} is out of range for {n} variables")]
    IndexOutOfRange { index: u64, n: u32 },
    #[error("a batch over {n} variables carries exactly {expected} bits, got {actual}")]
    LengthMismatch {
        n: u32,
        expected: u64,
        actual: usize,
    },
    #[error(
        "no flip pattern makes index {} unsatisfiable; every variant stays satisfiable",
        .row.index
    )]
    PatternExhausted { row: CensusRow },
    #[error("flip patterns are nonempty ascending runs over {{2,3,4}}, got {input:?}")]
    BadPattern { input: String },
    #[error("uniform cost model needs K >= 2, got {k}")]
    UniformRange { k: u64 },
    #[error("bad batch file, line {line}: {reason}")]
    BadBatchFile { line: usize, reason: String },
    #[error("bad census file, line {line}: {reason}")]
    BadCensusFile { line: usize, reason: String },
    #[error(transparent)]
    Oracle(#[from] OracleError),
    #[error(transparent)]
    Io(#[from] io::Error),
}

/// A subset of the group clauses `{2, 3, 4}` whose `y` literal gets
/// negated. Stored as a bitmask: bit 0 for clause 2, bit 1 for clause 3,
/// bit 2 for clause 4.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct FlipPattern(u8);

/// Every candidate flip pattern, in the order verified encoding tries
/// them. The pair `{2,3}` leads because it is the one literal encoding
/// uses unconditionally.
pub const PATTERN_FAMILY: [FlipPattern; 7] = [
    FlipPattern(0b011),
    FlipPattern(0b001),
    FlipPattern(0b010),
    FlipPattern(0b100),
    FlipPattern(0b101),
    FlipPattern(0b110),
    FlipPattern(0b111),
];

impl FlipPattern {
    /// Builds a pattern from clause indices in `2..=4`.
    pub fn from_clauses(clauses: &[u8]) -> Option<FlipPattern> {
        let mut mask = 0u8;
        for &c in clauses {
            if !(2..=4).contains(&c) || mask & (1 << (c - 2)) != 0 {
                return None;
            }
            mask |= 1 << (c - 2);
        }
        if mask == 0 {
            None
        } else {
            Some(FlipPattern(mask))
        }
    }

    pub fn flips(self, clause: u8) -> bool {
        (2..=4).contains(&clause) && self.0 & (1 << (clause - 2)) != 0
    }

    pub fn clauses(self) -> Vec<u8> {
        (2u8..=4).filter(|&c| self.flips(c)).collect()
    }

    /// Compact form used in files and on the command line: `"23"`, `"4"`.
    pub fn digits(self) -> String {
        self.clauses().iter().map(|c| c.to_string()).collect()
    }
}

impl fmt::Display for FlipPattern {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.clauses().iter().map(u8::to_string).collect();
        write!(f, "{{{}}}", parts.join(","))
    }
}

impl FromStr for FlipPattern {
    type Err = TrbsError;

    fn from_str(s: &str) -> Result<FlipPattern, TrbsError> {
        let bad = || TrbsError::BadPattern {
            input: s.to_string(),
        };
        let digits: Vec<u8> = s
            .bytes()
            .map(|b| {
                if b.is_ascii_digit() {
                    Ok(b - b'0')
                } else {
                    Err(bad())
                }
            })
            .collect::<Result<_, _>>()?;
        if !digits.windows(2).all(|w| w[0] < w[1]) {
            return Err(bad());
        }
        FlipPattern::from_clauses(&digits).ok_or_else(bad)
    }
}

impl Serialize for FlipPattern {
    fn serialize<S: serde::Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        serializer.serialize_str(&self.digits())
    }
}

/// How zeros are encoded: `Literal` always flips `{2,3}` and trusts the
/// construction; `Verified` checks each candidate pattern against the
/// oracle and uses the first that really is unsatisfiable.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum TrbsMode {
    Literal,
    Verified,
}

impl fmt::Display for TrbsMode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            TrbsMode::Literal => "literal",
            TrbsMode::Verified => "verified",
        })
    }
}

impl FromStr for TrbsMode {
    type Err = String;

    fn from_str(s: &str) -> Result<TrbsMode, String> {
        match s {
            "literal" => Ok(TrbsMode::Literal),
            "verified" => Ok(TrbsMode::Verified),
            other => Err(format!("unknown mode {other:?}; use literal or verified")),
        }
    }
}

/// The two smallest variables other than `i`, ascending. Needs `n >= 3`.
pub fn support_pair(i: u32, n: u32) -> (u32, u32) {
    debug_assert!(n >= 3 && (1..=n).contains(&i));
    let mut others = (1..=n).filter(|&v| v != i);
    let a = others.next().expect("n >= 3 leaves at least two others");
    let b = others.next().expect("n >= 3 leaves at least two others");
    (a, b)
}

fn check_family(n: u32) -> Result<(), TrbsError> {
    if n < 3 {
        return Err(TrbsError::TooFewVariables { n });
    }
    if n > TRBS_MAX_N {
        return Err(TrbsError::FamilyTooLarge { n, cap: TRBS_MAX_N });
    }
    Ok(())
}

fn check_index(index: u64, n: u32) -> Result<(), TrbsError> {
    if index >= 1u64 << n {
        return Err(TrbsError::IndexOutOfRange { index, n });
    }
    Ok(())
}

/// Digit string of `j` as an assignment (digit 1, the most significant,
/// is `x1`).
pub fn index_digits(index: u64, n: u32) -> Assignment {
    Assignment::from_counter(index, n)
}

/// The four clauses of group `i`, with the `y` literal negated in the
/// clauses `pattern` selects. `digit` is digit `i` of the index.
fn group_clauses(i: u32, n: u32, digit: bool, pattern: Option<FlipPattern>) -> [Clause; 4] {
    let (a, b) = support_pair(i, n);
    [(1u8, false, false), (2, true, false), (3, false, true), (4, true, true)].map(
        |(k, neg_a, neg_b)| {
            let flipped = pattern.is_some_and(|p| p.flips(k));
            // digit 1 keeps x_i positive; a flip negates whatever that was.
            let y = Literal::new(i, digit == flipped).expect("i >= 1");
            Clause::new(vec![
                Literal::new(a, neg_a).unwrap(),
                Literal::new(b, neg_b).unwrap(),
                y,
            ])
            .expect("support variables and i are distinct")
        },
    )
}

fn family_instance(
    index: u64,
    n: u32,
    pattern: Option<FlipPattern>,
) -> Result<CnfInstance, TrbsError> {
    check_family(n)?;
    check_index(index, n)?;
    let digits = index_digits(index, n);
    let mut clauses = Vec::with_capacity(4 * n as usize);
    for i in 1..=n {
        clauses.extend(group_clauses(i, n, digits.value(i), pattern));
    }
    Ok(CnfInstance::new(n, clauses).expect("groups only use variables 1..=n"))
}

/// The instance whose unique satisfying assignment is the digit string of
/// `index`.
pub fn encode_index(index: u64, n: u32) -> Result<CnfInstance, TrbsError> {
    family_instance(index, n, None)
}

/// The index instance with `pattern` applied to every group.
pub fn encode_index_flipped(
    index: u64,
    n: u32,
    pattern: FlipPattern,
) -> Result<CnfInstance, TrbsError> {
    family_instance(index, n, Some(pattern))
}

/// One row of the pattern landscape for a single index: which patterns
/// produce an unsatisfiable instance, and the first that does.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CensusRow {
    pub index: u64,
    pub digits: Assignment,
    /// Parallel to [`PATTERN_FAMILY`]: `true` when that pattern's flipped
    /// instance is unsatisfiable.
    pub unsat_by_pattern: [bool; 7],
    pub certified: Option<FlipPattern>,
}

fn census_row(index: u64, n: u32, oracle: &Oracle) -> Result<CensusRow, TrbsError> {
    let mut unsat = [false; 7];
    for (slot, pattern) in unsat.iter_mut().zip(PATTERN_FAMILY) {
        let flipped = encode_index_flipped(index, n, pattern)?;
        *slot = !oracle.solve_brute(&flipped)?.is_sat();
    }
    let certified = unsat
        .iter()
        .position(|&u| u)
        .map(|at| PATTERN_FAMILY[at]);
    Ok(CensusRow {
        index,
        digits: index_digits(index, n),
        unsat_by_pattern: unsat,
        certified,
    })
}

/// The full pattern landscape over every index.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CensusReport {
    pub n: u32,
    pub rows: Vec<CensusRow>,
    /// Parallel to [`PATTERN_FAMILY`]: `true` when the pattern works for
    /// *every* index. Index 0 keeps these `false` at any `n`.
    pub pattern_always_unsat: [bool; 7],
    /// Indices no pattern can make unsatisfiable.
    pub exhausted_indices: Vec<u64>,
}

impl CensusReport {
    /// Fraction of (index, pattern) pairs whose flipped instance is
    /// unsatisfiable.
    pub fn unsat_fraction(&self) -> f64 {
        let unsat: usize = self
            .rows
            .iter()
            .map(|row| row.unsat_by_pattern.iter().filter(|&&u| u).count())
            .sum();
        unsat as f64 / (self.rows.len() * PATTERN_FAMILY.len()) as f64
    }
}

pub fn census(n: u32, oracle: &Oracle) -> Result<CensusReport, TrbsError> {
    check_family(n)?;
    let rows: Result<Vec<CensusRow>, TrbsError> = (0..1u64 << n)
        .into_par_iter()
        .map(|j| census_row(j, n, oracle))
        .collect();
    let rows = rows?;
    let mut always = [true; 7];
    for row in &rows {
        for (flag, &u) in always.iter_mut().zip(&row.unsat_by_pattern) {
            *flag &= u;
        }
    }
    let exhausted = rows
        .iter()
        .filter(|r| r.certified.is_none())
        .map(|r| r.index)
        .collect();
    Ok(CensusReport {
        n,
        rows,
        pattern_always_unsat: always,
        exhausted_indices: exhausted,
    })
}

/// An encoded bit string: one instance per bit, index order.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TrbsBatch {
    pub n: u32,
    pub mode: TrbsMode,
    pub bits: Vec<bool>,
    pub instances: Vec<CnfInstance>,
}

/// Encodes `bits` (exactly `2^n` of them, one per index) as a batch of
/// instances. In verified mode a zero whose every flip pattern stays
/// satisfiable raises [`TrbsError::PatternExhausted`] carrying the full
/// census row for that index.
pub fn encode_trbs(
    bits: &[bool],
    n: u32,
    mode: TrbsMode,
    oracle: &Oracle,
) -> Result<TrbsBatch, TrbsError> {
    check_family(n)?;
    let expected = 1u64 << n;
    if bits.len() as u64 != expected {
        return Err(TrbsError::LengthMismatch {
            n,
            expected,
            actual: bits.len(),
        });
    }
    let mut instances = Vec::with_capacity(bits.len());
    for (j, &bit) in bits.iter().enumerate() {
        let j = j as u64;
        if bit {
            instances.push(encode_index(j, n)?);
            continue;
        }
        match mode {
            TrbsMode::Literal => {
                instances.push(encode_index_flipped(j, n, PATTERN_FAMILY[0])?);
            }
            TrbsMode::Verified => {
                let row = census_row(j, n, oracle)?;
                match row.certified {
                    Some(pattern) => instances.push(encode_index_flipped(j, n, pattern)?),
                    None => return Err(TrbsError::PatternExhausted { row }),
                }
            }
        }
    }
    Ok(TrbsBatch {
        n,
        mode,
        bits: bits.to_vec(),
        instances,
    })
}

/// A satisfiable instance that was read as a `1` but whose first model is
/// not the digit string of its index — evidence that the instance did not
/// come from a faithful encoding.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct TrbsViolation {
    pub index: u64,
    pub expected: Assignment,
    pub found: Assignment,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct TrbsDecode {
    pub bits: Vec<bool>,
    pub violations: Vec<TrbsViolation>,
}

/// Reads a batch back by solving each instance: satisfiable means 1,
/// unsatisfiable means 0.
pub fn decode_trbs(batch: &TrbsBatch, oracle: &Oracle) -> Result<TrbsDecode, TrbsError> {
    check_family(batch.n)?;
    let mut bits = Vec::with_capacity(batch.instances.len());
    let mut violations = Vec::new();
    for (j, instance) in batch.instances.iter().enumerate() {
        match oracle.solve_brute(instance)? {
            SolveResult::Unsat => bits.push(false),
            SolveResult::Sat(model) => {
                bits.push(true);
                let expected = index_digits(j as u64, batch.n);
                if model != expected {
                    violations.push(TrbsViolation {
                        index: j as u64,
                        expected,
                        found: model,
                    });
                }
            }
        }
    }
    Ok(TrbsDecode { bits, violations })
}

/// Uniformly random bits; a seed makes the draw reproducible.
pub fn random_bits(len: usize, seed: Option<u64>) -> Vec<bool> {
    let mut rng = match seed {
        Some(s) => ChaCha20Rng::seed_from_u64(s),
        None => ChaCha20Rng::from_entropy(),
    };
    (0..len).map(|_| rng.gen()).collect()
}

/// What a whole batch costs under the canonical encoding and under a
/// per-number cost model.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct BatchSizeReport {
    pub n: u32,
    pub instance_count: u64,
    pub clauses_per_instance: u64,
    pub canonical_bits_per_instance: u64,
    pub canonical_total_bits: u128,
    pub cost: CostModel,
    pub model_bits_per_instance: u64,
    pub model_total_bits: u128,
}

pub fn batch_size_report(n: u32, cost: CostModel) -> Result<BatchSizeReport, TrbsError> {
    if n < 3 {
        return Err(TrbsError::TooFewVariables { n });
    }
    let count = 1u64 << n.min(63);
    let big_n = BigUint::from(n);
    let m = 4 * u64::from(n);
    let canonical = paper_bit_length(&big_n, &BigUint::from(m))
        .to_u64()
        .expect("small sizes");
    let model = match cost {
        CostModel::Uniform { k } => {
            if k < 2 {
                return Err(TrbsError::UniformRange { k });
            }
            uniform_length(&big_n, &BigUint::from(k))
        }
        CostModel::Logarithmic => logarithmic_length(&big_n),
    }
    .to_u64()
    .expect("small sizes");
    Ok(BatchSizeReport {
        n,
        instance_count: count,
        clauses_per_instance: m,
        canonical_bits_per_instance: canonical,
        canonical_total_bits: u128::from(count) * u128::from(canonical),
        cost,
        model_bits_per_instance: model,
        model_total_bits: u128::from(count) * u128::from(model),
    })
}

/// The candidate patterns a mode may apply to zero bits, in trial order.
pub fn mode_family(mode: TrbsMode) -> &'static [FlipPattern] {
    match mode {
        TrbsMode::Literal => &PATTERN_FAMILY[..1],
        TrbsMode::Verified => &PATTERN_FAMILY[..],
    }
}

fn family_digits(mode: TrbsMode) -> String {
    let parts: Vec<String> = mode_family(mode).iter().map(|p| p.digits()).collect();
    parts.join(",")
}

/// Batch file layout: a header line `trbsbatch 1 <n> <mode> <family> <len>`
/// (the family is the mode's candidate patterns in compact digit form), the
/// bit string on the second line, then one canonically encoded instance
/// per line in index order.
pub fn write_batch<W: Write>(batch: &TrbsBatch, mut out: W) -> io::Result<()> {
    writeln!(
        out,
        "trbsbatch 1 {} {} {} {}",
        batch.n,
        batch.mode,
        family_digits(batch.mode),
        batch.bits.len()
    )?;
    let bits: String = batch
        .bits
        .iter()
        .map(|&b| if b { '1' } else { '0' })
        .collect();
    writeln!(out, "{bits}")?;
    for instance in &batch.instances {
        let encoded = encode_instance(instance).expect("family instances always encode");
        writeln!(out, "{}", encoded.bits())?;
    }
    Ok(())
}

pub fn read_batch<R: Read>(mut input: R) -> Result<TrbsBatch, TrbsError> {
    let mut text = String::new();
    input.read_to_string(&mut text)?;
    let bad = |line: usize, reason: &str| TrbsError::BadBatchFile {
        line,
        reason: reason.to_string(),
    };
    let mut lines = text.lines();
    let header = lines.next().ok_or_else(|| bad(1, "missing header"))?;
    let fields: Vec<&str> = header.split_whitespace().collect();
    if fields.len() != 6 || fields[0] != "trbsbatch" || fields[1] != "1" {
        return Err(bad(1, "expected `trbsbatch 1 <n> <mode> <family> <len>`"));
    }
    let n: u32 = fields[2].parse().map_err(|_| bad(1, "bad n"))?;
    check_family(n)?;
    let mode: TrbsMode = fields[3].parse().map_err(|_| bad(1, "bad mode"))?;
    if fields[4] != family_digits(mode) {
        return Err(bad(1, "pattern family does not match the mode"));
    }
    let len: u64 = fields[5].parse().map_err(|_| bad(1, "bad length"))?;
    if len != 1u64 << n {
        return Err(bad(1, "length does not equal 2^n"));
    }

    let bits_line = lines.next().ok_or_else(|| bad(2, "missing bit string"))?;
    if bits_line.len() as u64 != len {
        return Err(bad(2, "bit string length does not match the header"));
    }
    let bits: Vec<bool> = bits_line
        .chars()
        .map(|c| match c {
            '0' => Ok(false),
            '1' => Ok(true),
            _ => Err(bad(2, "bit string must be 0s and 1s")),
        })
        .collect::<Result<_, _>>()?;

    let mut instances = Vec::with_capacity(bits.len());
    for (offset, line) in lines.enumerate() {
        let line_no = offset + 3;
        let encoded =
            BitString::from_ascii(line).map_err(|_| bad(line_no, "instance line is not binary"))?;
        match decode_instance(&encoded) {
            Decoded::Instance(instance) if instance.num_vars() == n => instances.push(instance),
            Decoded::Instance(_) => {
                return Err(bad(line_no, "instance has the wrong variable count"))
            }
            Decoded::Invalid => return Err(bad(line_no, "line does not decode to an instance")),
        }
    }
    if instances.len() as u64 != len {
        return Err(bad(
            text.lines().count(),
            "instance count does not match the header",
        ));
    }
    Ok(TrbsBatch {
        n,
        mode,
        bits,
        instances,
    })
}

/// Header line of the census CSV format.
pub const CENSUS_HEADER: &str = "n,index,pattern,verdict";

/// Census CSV: a flat table with one row per (index, pattern) pair, in
/// index-major order with patterns in family order. `verdict` is `unsat`
/// when that pattern's flipped instance has no models.
pub fn write_census_csv<W: Write>(report: &CensusReport, mut out: W) -> io::Result<()> {
    writeln!(out, "{CENSUS_HEADER}")?;
    for row in &report.rows {
        for (pattern, &unsat) in PATTERN_FAMILY.iter().zip(&row.unsat_by_pattern) {
            writeln!(
                out,
                "{},{},{},{}",
                report.n,
                row.index,
                pattern.digits(),
                if unsat { "unsat" } else { "sat" }
            )?;
        }
    }
    Ok(())
}

pub fn read_census_csv<R: Read>(mut input: R) -> Result<CensusReport, TrbsError> {
    let mut text = String::new();
    input.read_to_string(&mut text)?;
    let bad = |line: usize, reason: &str| TrbsError::BadCensusFile {
        line,
        reason: reason.to_string(),
    };
    let mut lines = text.lines().enumerate();
    match lines.next() {
        Some((_, header)) if header == CENSUS_HEADER => {}
        _ => return Err(bad(1, "missing or unexpected header")),
    }
    let mut n = 0u32;
    let mut rows: Vec<CensusRow> = Vec::new();
    // Verdicts of the index currently being assembled, in family order.
    let mut flags: Vec<bool> = Vec::new();
    for (idx, line) in lines {
        let line_no = idx + 1;
        let fields: Vec<&str> = line.split(',').collect();
        let [n_field, index_field, pattern_field, verdict_field] = fields.as_slice() else {
            return Err(bad(line_no, "expected `n,index,pattern,verdict`"));
        };
        let row_n: u32 = n_field.parse().map_err(|_| bad(line_no, "bad n"))?;
        if rows.is_empty() && flags.is_empty() {
            check_family(row_n)?;
            n = row_n;
        } else if row_n != n {
            return Err(bad(line_no, "inconsistent n"));
        }
        let index: u64 = index_field.parse().map_err(|_| bad(line_no, "bad index"))?;
        if index != rows.len() as u64 {
            return Err(bad(line_no, "rows must walk indices 0..2^n in order"));
        }
        if *pattern_field != PATTERN_FAMILY[flags.len()].digits() {
            return Err(bad(line_no, "patterns must follow family order"));
        }
        flags.push(match *verdict_field {
            "sat" => false,
            "unsat" => true,
            _ => return Err(bad(line_no, "verdict must be sat or unsat")),
        });
        if flags.len() == PATTERN_FAMILY.len() {
            let unsat: [bool; 7] = std::mem::take(&mut flags)
                .try_into()
                .expect("exactly seven flags");
            let certified = unsat.iter().position(|&u| u).map(|at| PATTERN_FAMILY[at]);
            rows.push(CensusRow {
                index,
                digits: index_digits(index, n),
                unsat_by_pattern: unsat,
                certified,
            });
        }
    }
    let last_line = text.lines().count();
    if !flags.is_empty() {
        return Err(bad(last_line, "final index is missing pattern rows"));
    }
    if rows.is_empty() || rows.len() as u64 != 1u64 << n {
        return Err(bad(last_line, "table must cover all indices 0..2^n"));
    }
    let mut always = [true; 7];
    for row in &rows {
        for (flag, &u) in always.iter_mut().zip(&row.unsat_by_pattern) {
            *flag &= u;
        }
    }
    let exhausted = rows
        .iter()
        .filter(|r| r.certified.is_none())
        .map(|r| r.index)
        .collect();
    Ok(CensusReport {
        n,
        rows,
        pattern_always_unsat: always,
        exhausted_indices: exhausted,
    })
}
