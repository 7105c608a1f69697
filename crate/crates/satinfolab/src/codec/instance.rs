//! The canonical binary encoding of CNF instances.
//!
//! A clause over `n` variables is a row of `n` two-bit codes, one per
//! variable position `i = 1..n`:
//!
//! | code | meaning            |
//! |------|--------------------|
//! | `00` | `x_i` absent       |
//! | `01` | `x_i` absent (alternate; accepted on decode, never emitted) |
//! | `10` | positive `x_i`     |
//! | `11` | negated `x_i`      |
//!
//! A whole instance is `gamma(n) ++ (m-1 in 2n bits) ++ m clause rows`:
//! a self-delimiting Elias gamma code for the variable count, then the
//! clause count (stored minus one, so the range `1..=2^(2n)` fits exactly
//! in `2n` bits), then the clause rows in order. Decoding demands an exact
//! parse — any spare or missing bits make the whole string invalid — but
//! invalidity is an ordinary value, not an error, because downstream
//! consumers (the solution table) classify arbitrary bit strings.

use thiserror::Error;

use crate::cnf::{Clause, CnfInstance, Literal};
use crate::codec::bits::BitString;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum CodecError {
    #[error("literal over x{var} cannot be encoded with n = {n}")]
    VariableOutOfRange { var: u32, n: u32 },
    #[error("clause row must hold exactly {expected} bits, found {actual}")]
    LengthMismatch { expected: usize, actual: usize },
    #[error("clause count {m} is outside the encodable range 1..={max} for n = {n}")]
    ClauseCountRange { m: usize, max: u128, n: u32 },
    #[error("bit string is not a canonical instance encoding")]
    Undecodable,
}

/// A bit string known to parse as a canonical instance encoding.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct EncodedInstance {
    raw: BitString,
}

impl EncodedInstance {
    /// Validate an arbitrary bit string by decoding it.
    pub fn from_bits(raw: BitString) -> Result<Self, CodecError> {
        match decode_instance(&raw) {
            Decoded::Instance(_) => Ok(EncodedInstance { raw }),
            Decoded::Invalid => Err(CodecError::Undecodable),
        }
    }

    pub fn bits(&self) -> &BitString {
        &self.raw
    }

    pub fn into_bits(self) -> BitString {
        self.raw
    }

    pub fn len(&self) -> usize {
        self.raw.len()
    }

    pub fn is_empty(&self) -> bool {
        self.raw.is_empty()
    }

    /// Decode back to the instance. Infallible by construction.
    pub fn decode(&self) -> CnfInstance {
        match decode_instance(&self.raw) {
            Decoded::Instance(inst) => inst,
            Decoded::Invalid => unreachable!("EncodedInstance holds validated bits"),
        }
    }
}

/// Result of decoding an arbitrary bit string.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Decoded {
    Instance(CnfInstance),
    /// The string is not an exact parse of any instance.
    Invalid,
}

impl Decoded {
    pub fn instance(&self) -> Option<&CnfInstance> {
        match self {
            Decoded::Instance(inst) => Some(inst),
            Decoded::Invalid => None,
        }
    }

    pub fn into_instance(self) -> Option<CnfInstance> {
        match self {
            Decoded::Instance(inst) => Some(inst),
            Decoded::Invalid => None,
        }
    }

    pub fn is_invalid(&self) -> bool {
        matches!(self, Decoded::Invalid)
    }
}

/// Append `value` as a big-endian field of `width` bits (width may exceed 64;
/// the value itself must fit in 64 bits).
fn push_uint_wide(out: &mut BitString, value: u64, width: usize) {
    if width > 64 {
        for _ in 0..width - 64 {
            out.push(false);
        }
        out.push_uint(value, 64);
    } else {
        out.push_uint(value, width as u32);
    }
}

/// Encode one clause as a row of `n` two-bit codes.
pub fn encode_clause(clause: &Clause, n: u32) -> Result<BitString, CodecError> {
    if clause.max_var() > n {
        return Err(CodecError::VariableOutOfRange {
            var: clause.max_var(),
            n,
        });
    }
    let mut out = BitString::with_capacity(2 * n as usize);
    let mut lits = clause.literals().iter().peekable();
    for i in 1..=n {
        match lits.peek() {
            Some(lit) if lit.var() == i => {
                out.push(true);
                out.push(lit.is_negated());
                lits.next();
            }
            _ => {
                out.push(false);
                out.push(false);
            }
        }
    }
    Ok(out)
}

/// Decode a `2n`-bit clause row. The only possible failure is a length
/// mismatch; all four two-bit codes are meaningful.
pub fn decode_clause(bits: &BitString, n: u32) -> Result<Clause, CodecError> {
    let expected = 2 * n as usize;
    if bits.len() != expected {
        return Err(CodecError::LengthMismatch {
            expected,
            actual: bits.len(),
        });
    }
    let mut literals = Vec::new();
    for i in 0..n {
        let present = bits.bit(2 * i as usize);
        let negated = bits.bit(2 * i as usize + 1);
        if present {
            literals.push(Literal::new(i + 1, negated).expect("i + 1 >= 1"));
        }
    }
    Ok(Clause::new(literals).expect("one code per variable position cannot duplicate"))
}

/// Largest encodable clause count for a given `n`: `2^(2n)`, saturating at
/// `u128::MAX` for widths past 128 bits (still far beyond any real `m`).
fn max_clause_count(n: u32) -> u128 {
    if 2 * n >= 128 {
        u128::MAX
    } else {
        1u128 << (2 * n)
    }
}

/// Encode a full instance. The clause count must lie in `1..=2^(2n)`.
pub fn encode_instance(instance: &CnfInstance) -> Result<EncodedInstance, CodecError> {
    let n = instance.num_vars();
    let m = instance.num_clauses();
    let max = max_clause_count(n);
    if m == 0 || m as u128 > max {
        return Err(CodecError::ClauseCountRange { m, max, n });
    }
    let mut out = BitString::with_capacity(2 * n as usize * (m + 1) + 16);
    out.push_gamma(u64::from(n));
    push_uint_wide(&mut out, (m - 1) as u64, 2 * n as usize);
    for clause in instance.clauses() {
        let row = encode_clause(clause, n)?;
        out.extend_bits(&row);
    }
    Ok(EncodedInstance { raw: out })
}

/// Decode an arbitrary bit string, demanding an exact parse.
pub fn decode_instance(bits: &BitString) -> Decoded {
    let mut reader = bits.reader();
    let Some(n64) = reader.read_gamma() else {
        return Decoded::Invalid;
    };
    let Ok(n) = u32::try_from(n64) else {
        return Decoded::Invalid;
    };
    // n >= 1 is guaranteed by the gamma code itself.

    // Clause-count field: 2n bits holding m - 1. Accumulate into a u128 with
    // an overflow flag; an overflowing count always fails the exact-length
    // check below because the clause region would dwarf any real string.
    let field_width = 2 * n as usize;
    if reader.remaining() < field_width {
        return Decoded::Invalid;
    }
    let mut m_minus_1: u128 = 0;
    let mut oversized = false;
    for _ in 0..field_width {
        let bit = reader.read_bit().expect("length checked above");
        if m_minus_1 > (u128::MAX - u128::from(bit)) / 2 {
            oversized = true;
        } else {
            m_minus_1 = m_minus_1 * 2 + u128::from(bit);
        }
    }
    let Some(required) = (|| {
        if oversized {
            return None;
        }
        let m = m_minus_1.checked_add(1)?;
        (2 * n as u128).checked_mul(m)
    })() else {
        return Decoded::Invalid;
    };
    if required != reader.remaining() as u128 {
        return Decoded::Invalid;
    }
    let m = (m_minus_1 + 1) as usize;

    let mut clauses = Vec::with_capacity(m);
    for _ in 0..m {
        let mut row = BitString::with_capacity(field_width);
        for _ in 0..field_width {
            row.push(reader.read_bit().expect("length checked above"));
        }
        match decode_clause(&row, n) {
            Ok(clause) => clauses.push(clause),
            Err(_) => return Decoded::Invalid,
        }
    }
    match CnfInstance::new(n, clauses) {
        Ok(inst) => Decoded::Instance(inst),
        Err(_) => Decoded::Invalid,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::dimacs::parse_dimacs;

    fn instance(text: &str) -> CnfInstance {
        parse_dimacs(text).unwrap()
    }

    #[test]
    fn clause_row_frozen_example() {
        // n = 2, (x1 ∨ ¬x2): pair 10 for x1, pair 11 for ¬x2.
        let c = Clause::new(vec![Literal::pos(1), Literal::neg(2)]).unwrap();
        assert_eq!(encode_clause(&c, 2).unwrap().to_string(), "1011");
    }

    #[test]
    fn alternate_absent_code_decodes_to_the_empty_clause() {
        let bits = BitString::from_ascii("0100").unwrap();
        assert_eq!(decode_clause(&bits, 2).unwrap(), Clause::empty());
    }

    #[test]
    fn clause_row_length_is_checked() {
        let bits = BitString::from_ascii("10").unwrap();
        assert_eq!(
            decode_clause(&bits, 2),
            Err(CodecError::LengthMismatch { expected: 4, actual: 2 })
        );
    }

    #[test]
    fn clause_codec_is_identity_after_code_normalization_n3() {
        // Exhaustive over all 2^6 rows at n = 3: decoding always succeeds,
        // and re-encoding returns the row with each 01 code rewritten to 00.
        for raw in 0..64u64 {
            let row = BitString::from_uint(raw, 6);
            let clause = decode_clause(&row, 3).unwrap();
            let back = encode_clause(&clause, 3).unwrap();
            let mut normalized = BitString::new();
            for i in 0..3 {
                let present = row.bit(2 * i);
                let negated = row.bit(2 * i + 1);
                normalized.push(present);
                normalized.push(present && negated);
            }
            assert_eq!(back, normalized, "row {row}");
        }
    }

    #[test]
    fn instance_encoding_frozen_examples() {
        // n=1, m=1, (x1): gamma(1)="1", m-field "00", clause "10".
        let one = instance("p cnf 1 1\n1 0\n");
        assert_eq!(encode_instance(&one).unwrap().bits().to_string(), "10010");
        // n=2, m=1, (¬x1): gamma(2)="010", m-field "0000", clause "1100".
        let two = instance("p cnf 2 1\n-1 0\n");
        assert_eq!(
            encode_instance(&two).unwrap().bits().to_string(),
            "01000001100"
        );
    }

    #[test]
    fn decode_inverts_encode() {
        for text in [
            "p cnf 1 1\n1 0\n",
            "p cnf 2 1\n-1 0\n",
            "p cnf 2 2\n1 -2 0\n2 0\n",
            "p cnf 3 4\n1 2 3 0\n-1 -2 0\n0\n3 0\n",
            "p cnf 5 1\n-5 0\n",
        ] {
            let inst = instance(text);
            let enc = encode_instance(&inst).unwrap();
            assert_eq!(decode_instance(enc.bits()), Decoded::Instance(inst));
        }
    }

    #[test]
    fn decode_demands_an_exact_parse() {
        for bad in [
            "",        // nothing
            "0",       // truncated gamma
            "100101",  // valid instance plus a spare bit
            "1001",    // clause row cut short
            "10",      // m-field cut short
            "010000011001", // valid n=2 instance plus a spare bit
        ] {
            let bits = BitString::from_ascii(bad).unwrap();
            assert_eq!(decode_instance(&bits), Decoded::Invalid, "input {bad:?}");
        }
    }

    #[test]
    fn clause_count_range_is_enforced() {
        let empty = CnfInstance::new(1, vec![]).unwrap();
        assert_eq!(
            encode_instance(&empty),
            Err(CodecError::ClauseCountRange { m: 0, max: 4, n: 1 })
        );
        let five = instance("p cnf 1 5\n1 0\n1 0\n1 0\n1 0\n1 0\n");
        assert_eq!(
            encode_instance(&five),
            Err(CodecError::ClauseCountRange { m: 5, max: 4, n: 1 })
        );
        // m = 4 = 2^(2n) is the ceiling and must encode: field holds 3.
        let four = instance("p cnf 1 4\n1 0\n1 0\n1 0\n1 0\n");
        let enc = encode_instance(&four).unwrap();
        assert_eq!(enc.bits().to_string(), "11110101010");
        assert_eq!(decode_instance(enc.bits()), Decoded::Instance(four));
    }

    #[test]
    fn validated_wrapper_accepts_and_rejects() {
        let good = BitString::from_ascii("10010").unwrap();
        let enc = EncodedInstance::from_bits(good).unwrap();
        assert_eq!(enc.decode().num_vars(), 1);
        let bad = BitString::from_ascii("100101").unwrap();
        assert_eq!(EncodedInstance::from_bits(bad), Err(CodecError::Undecodable));
    }

    #[test]
    fn encoded_length_formula() {
        // len = gamma_len(n) + 2n + 2nm with gamma_len = 2⌊log2 n⌋ + 1.
        for text in [
            "p cnf 1 1\n1 0\n",
            "p cnf 2 3\n1 0\n-2 0\n1 2 0\n",
            "p cnf 7 2\n1 -7 0\n0\n",
        ] {
            let inst = instance(text);
            let n = inst.num_vars() as usize;
            let m = inst.num_clauses();
            let floor_log = (u32::BITS - 1 - inst.num_vars().leading_zeros()) as usize;
            let expected = (2 * floor_log + 1) + 2 * n + 2 * n * m;
            assert_eq!(encode_instance(&inst).unwrap().len(), expected);
        }
    }
}
