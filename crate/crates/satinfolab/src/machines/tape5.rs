//! Text form of the enumerator's output tape.
//!
//! One block per formula, one block per line, using the five tape symbols
//! `0 1 b s E`. A block is:
//!
//! ```text
//! <n> b <m-1> b <clause bits> b <answer> b <answer> b ... b s
//! <n> b <m-1> b <clause bits> b E s
//! ```
//!
//! `<n>` and `<m-1>` are minimal binary numerals (no leading zeros),
//! answers are `n`-bit assignment strings in the order found, `E` marks a
//! formula with no satisfying assignment, and `s` ends the block. The
//! parser is a strict inverse: it rejects anything the dumper cannot emit.

use std::io::{self, Write};

use thiserror::Error;

use super::enumerator::RelationRecord;
use crate::cnf::Assignment;
use crate::codec::BitString;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum Tape5Error {
    #[error("line {line}: {reason}")]
    Malformed { line: usize, reason: String },
}

/// Writes records as blocks, grouping consecutive records that share a
/// formula. Returns the number of blocks written.
pub fn dump_tape5<W: Write>(
    records: impl IntoIterator<Item = RelationRecord>,
    mut out: W,
) -> io::Result<u64> {
    let mut blocks = 0u64;
    let mut open: Option<(u32, u64, BitString, Vec<Assignment>)> = None;
    for record in records {
        match record.answer {
            Some(answer) => {
                let same = open.as_ref().is_some_and(|(n, m, bits, _)| {
                    *n == record.n && *m == record.m && *bits == record.clause_bits
                });
                if same {
                    open.as_mut().unwrap().3.push(answer);
                } else {
                    if let Some(block) = open.take() {
                        write_block(&mut out, &block)?;
                        blocks += 1;
                    }
                    open = Some((record.n, record.m, record.clause_bits, vec![answer]));
                }
            }
            None => {
                if let Some(block) = open.take() {
                    write_block(&mut out, &block)?;
                    blocks += 1;
                }
                write_block(&mut out, &(record.n, record.m, record.clause_bits, Vec::new()))?;
                blocks += 1;
            }
        }
    }
    if let Some(block) = open.take() {
        write_block(&mut out, &block)?;
        blocks += 1;
    }
    Ok(blocks)
}

/// [`dump_tape5`] into a fresh string.
pub fn dump_tape5_to_string(records: impl IntoIterator<Item = RelationRecord>) -> String {
    let mut buf = Vec::new();
    dump_tape5(records, &mut buf).expect("writing to a Vec cannot fail");
    String::from_utf8(buf).expect("blocks are ASCII")
}

fn write_block<W: Write>(
    out: &mut W,
    (n, m, clause_bits, answers): &(u32, u64, BitString, Vec<Assignment>),
) -> io::Result<()> {
    write!(out, "{:b}b{:b}b{}b", n, m - 1, clause_bits)?;
    if answers.is_empty() {
        write!(out, "E")?;
    } else {
        for answer in answers {
            write!(out, "{answer}b")?;
        }
    }
    writeln!(out, "s")
}

/// Parses dumped blocks back into records, strictly: minimal numerals,
/// exact clause-row length, answer width, and block termination are all
/// enforced.
pub fn parse_tape5(input: &str) -> Result<Vec<RelationRecord>, Tape5Error> {
    let mut records = Vec::new();
    for (idx, line) in input.lines().enumerate() {
        let line_no = idx + 1;
        let bad = |reason: &str| Tape5Error::Malformed {
            line: line_no,
            reason: reason.to_string(),
        };
        let parts: Vec<&str> = line.split('b').collect();
        if parts.len() < 4 {
            return Err(bad("a block needs at least four b-separated fields"));
        }
        let n = parse_minimal_binary(parts[0]).ok_or_else(|| bad("bad variable count"))?;
        if n == 0 || n > u64::from(u32::MAX) {
            return Err(bad("variable count out of range"));
        }
        let n = n as u32;
        let m = parse_minimal_binary(parts[1])
            .and_then(|v| v.checked_add(1))
            .ok_or_else(|| bad("bad clause count"))?;
        let clause_bits =
            BitString::from_ascii(parts[2]).map_err(|_| bad("clause field is not binary"))?;
        let expected = 2u128 * u128::from(n) * u128::from(m);
        if clause_bits.len() as u128 != expected {
            return Err(bad("clause field length does not match 2 * n * m"));
        }

        let tail = &parts[3..];
        if tail == ["Es"] {
            records.push(RelationRecord {
                n,
                m,
                clause_bits,
                answer: None,
            });
            continue;
        }
        if tail.last() != Some(&"s") {
            return Err(bad("block does not end with s"));
        }
        let answers = &tail[..tail.len() - 1];
        if answers.is_empty() {
            return Err(bad("a block must list answers or E"));
        }
        for field in answers {
            if field.len() != n as usize {
                return Err(bad("answer width does not match the variable count"));
            }
            let answer = Assignment::from_ascii(field).ok_or_else(|| bad("answer is not binary"))?;
            records.push(RelationRecord {
                n,
                m,
                clause_bits: clause_bits.clone(),
                answer: Some(answer),
            });
        }
    }
    Ok(records)
}

/// Binary numeral with no leading zeros; `"0"` is the only numeral that
/// starts with `0`.
fn parse_minimal_binary(s: &str) -> Option<u64> {
    if s.is_empty() || (s.len() > 1 && s.starts_with('0')) {
        return None;
    }
    if s.len() > 63 || !s.bytes().all(|b| b == b'0' || b == b'1') {
        return None;
    }
    Some(u64::from_str_radix(s, 2).expect("checked binary"))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::machines::enumerator::{enumerate_relation, EnumerationLimits};

    fn record(n: u32, m: u64, bits: &str, answer: Option<&str>) -> RelationRecord {
        RelationRecord {
            n,
            m,
            clause_bits: bits.parse().unwrap(),
            answer: answer.map(|a| Assignment::from_ascii(a).unwrap()),
        }
    }

    #[test]
    fn single_answer_block() {
        let out = dump_tape5_to_string([record(1, 1, "10", Some("1"))]);
        assert_eq!(out, "1b0b10b1bs\n");
    }

    #[test]
    fn unit_formula_sweep_matches_frozen_dump() {
        let records = enumerate_relation(EnumerationLimits {
            max_n: 1,
            max_m: 1,
            max_records: u64::MAX,
        });
        let out = dump_tape5_to_string(records);
        assert_eq!(out, "1b0b00bEs\n1b0b01bEs\n1b0b10b1bs\n1b0b11b0bs\n");
    }

    #[test]
    fn multi_answer_records_fold_into_one_block() {
        let records = vec![
            record(2, 1, "1000", Some("10")),
            record(2, 1, "1000", Some("11")),
            record(2, 1, "0000", None),
        ];
        let out = dump_tape5_to_string(records.clone());
        assert_eq!(out, "10b0b1000b10b11bs\n10b0b0000bEs\n");
        assert_eq!(parse_tape5(&out).unwrap(), records);
    }

    #[test]
    fn round_trips_a_real_sweep() {
        let records: Vec<_> = enumerate_relation(EnumerationLimits {
            max_n: 2,
            max_m: 2,
            max_records: u64::MAX,
        })
        .collect();
        let out = dump_tape5_to_string(records.clone());
        assert_eq!(parse_tape5(&out).unwrap(), records);
        // Dumping the parsed records again is byte-identical.
        assert_eq!(dump_tape5_to_string(parse_tape5(&out).unwrap()), out);
    }

    #[test]
    fn rejects_padded_numerals() {
        assert!(parse_tape5("01b0b00bEs\n").is_err());
        assert!(parse_tape5("1b00b0000bEs\n").is_err());
    }

    #[test]
    fn rejects_length_mismatches() {
        // Clause field too short for n = 1, m = 2.
        assert!(parse_tape5("1b1b10bEs\n").is_err());
        // Answer width wrong for n = 2.
        assert!(parse_tape5("10b0b1000b1bs\n").is_err());
    }

    #[test]
    fn rejects_unterminated_and_empty_blocks() {
        assert!(parse_tape5("1b0b10b1b\n").is_err());
        assert!(parse_tape5("1b0b10bs\n").is_err());
        assert!(parse_tape5("1b0b10\n").is_err());
        assert!(parse_tape5("\n").is_err());
    }

    #[test]
    fn rejects_stray_symbols() {
        assert!(parse_tape5("1b0b1xbEs\n").is_err());
        assert!(parse_tape5("1b0b10bEbs\n").is_err());
    }

    #[test]
    fn error_reports_the_line_number() {
        let err = parse_tape5("1b0b10b1bs\n01b0b00bEs\n").unwrap_err();
        let Tape5Error::Malformed { line, .. } = err;
        assert_eq!(line, 2);
    }
}
