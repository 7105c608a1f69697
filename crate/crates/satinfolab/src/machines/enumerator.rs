//! The relation enumerator: sweeps every formula in counter order and runs
//! the verifier against every assignment, yielding one record per
//! satisfying assignment (or a single empty-answer record).
//!
//! Formulas are ordered by variable count `n` ascending, then clause count
//! `m` ascending from 1, then by the clause bits read as a binary counter.
//! For a fixed `n` the clause counter rolls over at `2^(2n)` clauses, the
//! point where every clause-row value has been exhausted. Assignments are
//! swept in counter order starting from all-zeros. All three counters are
//! kept on actual tapes and stepped with [`increment_tape`].

use serde::Serialize;
use std::collections::VecDeque;

use super::tape::{increment_tape, Tape};
use super::verifier::verify;
use crate::cnf::Assignment;
use crate::codec::BitString;

/// Where the sweep stops. `max_m` is clamped per `n` to the `2^(2n)`
/// rollover; `max_records` cuts the stream after that many records. Every
/// emitted record is complete, but a cap can shorten the final formula's
/// run of answers.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct EnumerationLimits {
    pub max_n: u32,
    pub max_m: u64,
    pub max_records: u64,
}

/// One line of the enumerated relation: a formula (identified by its
/// dimensions and raw clause bits) together with one satisfying assignment,
/// or `None` when the formula has no satisfying assignment at all.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct RelationRecord {
    pub n: u32,
    pub m: u64,
    pub clause_bits: BitString,
    pub answer: Option<Assignment>,
}

/// Iterator over the enumerated relation. Construct with
/// [`enumerate_relation`].
pub struct RelationEnumerator {
    limits: EnumerationLimits,
    n: u32,
    m: u64,
    clause_tape: Tape,
    pending: VecDeque<RelationRecord>,
    emitted: u64,
    exhausted: bool,
}

pub fn enumerate_relation(limits: EnumerationLimits) -> RelationEnumerator {
    let exhausted = limits.max_n == 0 || limits.max_m == 0;
    let mut e = RelationEnumerator {
        limits,
        n: 1,
        m: 1,
        clause_tape: Tape::new(),
        pending: VecDeque::new(),
        emitted: 0,
        exhausted,
    };
    if !e.exhausted {
        e.clause_tape = zero_tape(2);
    }
    e
}

/// `2^(2n)` clamped to `u64::MAX`: the number of distinct clause rows, and
/// the clause count at which the per-`n` sweep rolls over.
fn clause_rollover(n: u32) -> u64 {
    if n >= 32 {
        u64::MAX
    } else {
        1u64 << (2 * n)
    }
}

fn zero_tape(width: usize) -> Tape {
    Tape::from_bits(&(0..width).map(|_| false).collect::<BitString>())
}

impl RelationEnumerator {
    /// Sweeps the formula currently on the clause tape, buffering its
    /// records, then advances the (clause, m, n) counters to the next
    /// formula.
    fn sweep_current_formula(&mut self) {
        let width = 2 * self.n as usize * self.m as usize;
        let clause_bits = self.clause_tape.read_bits(width);

        let mut assignment_tape = zero_tape(self.n as usize);
        let mut any = false;
        loop {
            let xbits = assignment_tape.read_bits(self.n as usize);
            let outcome = verify(&clause_bits, &xbits).expect("tapes are well-formed by construction");
            if outcome.accepted {
                self.pending.push_back(RelationRecord {
                    n: self.n,
                    m: self.m,
                    clause_bits: clause_bits.clone(),
                    answer: Some(Assignment::new(xbits.iter().collect())),
                });
                any = true;
            }
            if increment_tape(&mut assignment_tape).expect("assignment tape is binary") {
                break;
            }
        }
        if !any {
            self.pending.push_back(RelationRecord {
                n: self.n,
                m: self.m,
                clause_bits,
                answer: None,
            });
        }

        if increment_tape(&mut self.clause_tape).expect("clause tape is binary") {
            self.m += 1;
            if self.m > self.limits.max_m.min(clause_rollover(self.n)) {
                self.m = 1;
                self.n += 1;
            }
            if self.n > self.limits.max_n {
                self.exhausted = true;
            } else {
                self.clause_tape = zero_tape(2 * self.n as usize * self.m as usize);
            }
        }
    }
}

impl Iterator for RelationEnumerator {
    type Item = RelationRecord;

    fn next(&mut self) -> Option<RelationRecord> {
        if self.emitted >= self.limits.max_records {
            return None;
        }
        while self.pending.is_empty() {
            if self.exhausted {
                return None;
            }
            self.sweep_current_formula();
        }
        self.emitted += 1;
        self.pending.pop_front()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cnf::CnfInstance;
    use crate::codec::Decoded;
    use crate::oracle::Oracle;

    fn limits(max_n: u32, max_m: u64, max_records: u64) -> EnumerationLimits {
        EnumerationLimits {
            max_n,
            max_m,
            max_records,
        }
    }

    #[test]
    fn first_four_records_cover_every_one_variable_unit_formula() {
        let records: Vec<_> = enumerate_relation(limits(1, 1, u64::MAX)).collect();
        assert_eq!(records.len(), 4);
        let summary: Vec<(String, Option<String>)> = records
            .iter()
            .map(|r| {
                (
                    r.clause_bits.to_string(),
                    r.answer.as_ref().map(|a| a.to_string()),
                )
            })
            .collect();
        assert_eq!(
            summary,
            vec![
                ("00".into(), None),            // empty clause: unsatisfiable
                ("01".into(), None),            // absent-variable row, also empty
                ("10".into(), Some("1".into())), // (x1)
                ("11".into(), Some("0".into())), // (not x1)
            ]
        );
        for r in &records {
            assert_eq!((r.n, r.m), (1, 1));
        }
    }

    #[test]
    fn record_cap_truncates_cleanly() {
        let records: Vec<_> = enumerate_relation(limits(2, 4, 7)).collect();
        assert_eq!(records.len(), 7);
        // The cap must cut on a record boundary, never corrupt a record.
        for r in &records {
            assert_eq!(r.clause_bits.len(), 2 * r.n as usize * r.m as usize);
        }
    }

    #[test]
    fn clause_count_rolls_over_to_the_next_variable_count() {
        // max_m far beyond the n = 1 rollover of 4: after m = 4 the sweep
        // must move on to n = 2 rather than enumerate impossible sizes.
        let records: Vec<_> = enumerate_relation(limits(2, 100, u64::MAX))
            .take_while(|r| r.n == 1)
            .collect();
        let max_m_seen = records.iter().map(|r| r.m).max().unwrap();
        assert_eq!(max_m_seen, 4);
    }

    #[test]
    fn formulas_appear_in_counter_order() {
        let records: Vec<_> = enumerate_relation(limits(2, 2, u64::MAX)).collect();
        let mut keys = Vec::new();
        for r in &records {
            let counter = r
                .clause_bits
                .iter()
                .fold(0u64, |acc, b| (acc << 1) | u64::from(b));
            let key = (r.n, r.m, counter);
            if keys.last() != Some(&key) {
                keys.push(key);
            }
        }
        let mut sorted = keys.clone();
        sorted.sort_unstable();
        sorted.dedup();
        assert_eq!(keys, sorted, "formula order must be strictly ascending");
        // Every (n, m) block is fully populated: 2^(2nm) formulas each.
        for (n, m) in [(1u32, 1u64), (1, 2), (2, 1), (2, 2)] {
            let count = keys.iter().filter(|k| (k.0, k.1) == (n, m)).count() as u64;
            assert_eq!(count, 1u64 << (2 * n as u64 * m), "block ({n}, {m})");
        }
    }

    /// Answers listed for each formula must be exactly the oracle's model
    /// set, in ascending counter order.
    #[test]
    fn answers_match_the_oracle_per_formula() {
        let oracle = Oracle::new();
        let records: Vec<_> = enumerate_relation(limits(2, 2, u64::MAX)).collect();
        let mut at = 0;
        while at < records.len() {
            let first = &records[at];
            let mut block = vec![first];
            while at + block.len() < records.len()
                && records[at + block.len()].clause_bits == first.clause_bits
                && records[at + block.len()].n == first.n
                && records[at + block.len()].m == first.m
            {
                block.push(&records[at + block.len()]);
            }
            let instance = rows_to_instance(&first.clause_bits, first.n);
            let expected: Vec<u64> = oracle
                .model_set(&instance)
                .unwrap()
                .iter()
                .map(Assignment::to_counter)
                .collect();
            let got: Vec<u64> = block
                .iter()
                .filter_map(|r| r.answer.as_ref())
                .map(Assignment::to_counter)
                .collect();
            if expected.is_empty() {
                assert_eq!(block.len(), 1);
                assert!(block[0].answer.is_none());
            } else {
                assert_eq!(got, expected);
            }
            at += block.len();
        }
    }

    fn rows_to_instance(bits: &BitString, n: u32) -> CnfInstance {
        // Route through the instance decoder by prepending the header.
        let mut full = BitString::new();
        full.push_gamma(n as u64);
        let m = bits.len() / (2 * n as usize);
        let mut header = BitString::new();
        header.push_uint(m as u64 - 1, 2 * n);
        full.extend_bits(&header);
        full.extend_bits(bits);
        match crate::codec::decode_instance(&full) {
            Decoded::Instance(inst) => inst,
            Decoded::Invalid => unreachable!("enumerated rows always decode"),
        }
    }
}
