//! Precomputed answer table: a perfect binary trie over every bit string
//! of a fixed length `L`, with one leaf per string.
//!
//! The trie is stored as a heap-layout arena — internals occupy indices
//! `0..2^L - 1`, the leaf for key `k` sits at `2^L - 1 + k` — but every
//! internal node carries its child indices explicitly and lookups follow
//! those stored pointers, never index arithmetic. Each leaf records what
//! the string *is*: not an encoded instance at all, an unsatisfiable
//! instance, or a satisfiable one together with its first satisfying
//! assignment in counter order.
//!
//! A lookup therefore costs exactly `L` pointer dereferences regardless of
//! the answer, and the arena costs `2^(L+1) - 1` nodes regardless of how
//! many keys decode. That rigidity is the point: the table trades all of
//! its space for constant-shape access, and [`Table::stats`] quantifies
//! the trade.

use std::io::{self, Read, Write};

use rayon::prelude::*;
use serde::Serialize;
use thiserror::Error;

use crate::cnf::Assignment;
use crate::codec::{decode_instance, BitString, Decoded};
use crate::oracle::{Oracle, OracleError};

/// Default ceiling on the trie depth; `2^23 - 1` nodes is about the most
/// that builds in interactive time. [`build_table_with_cap`] raises it.
pub const DEFAULT_TABLE_DEPTH_CAP: u32 = 22;

/// Absolute ceiling: node indices are `u32`, so `2^(L+1) - 1` must fit.
pub const HARD_TABLE_DEPTH_CAP: u32 = 30;

#[derive(Debug, Error)]
pub enum TableError {
    #[error("table depth {depth} is outside 1..={cap}")]
    DepthOutOfRange { depth: u32, cap: u32 },
    #[error("lookup key is {actual} bits, table depth is {expected}")]
    KeyWidth { expected: u32, actual: usize },
    #[error("corrupt table: {reason}")]
    CorruptTable { reason: String },
    #[error(transparent)]
    Io(#[from] io::Error),
    #[error(transparent)]
    Oracle(#[from] OracleError),
}

/// What a fixed-length bit string turned out to be.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum LeafValue {
    /// Not the encoding of any instance.
    Invalid,
    /// Encodes an instance with no satisfying assignment.
    Unsat,
    /// Encodes a satisfiable instance; `counter` is its first satisfying
    /// assignment in counter order, over `n` variables.
    Sat { n: u8, counter: u32 },
}

impl LeafValue {
    pub fn model(&self) -> Option<Assignment> {
        match *self {
            LeafValue::Sat { n, counter } => {
                Some(Assignment::from_counter(u64::from(counter), u32::from(n)))
            }
            _ => None,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Node {
    Internal { left: u32, right: u32 },
    Leaf(LeafValue),
}

/// The arena trie. Build with [`build_table`], persist with
/// [`write_table`] / [`read_table`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Table {
    depth: u32,
    nodes: Vec<Node>,
}

/// Result of one lookup. `steps` counts pointer dereferences (always the
/// depth); `bit_ops` charges each dereference for reading one key bit and
/// one child index of `depth + 1` bits.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LookupOutcome {
    pub value: LeafValue,
    pub steps: u64,
    pub bit_ops: u64,
}

/// Shape and content summary. Every field is reproducible from the table
/// bytes alone, so serializing stats is deterministic across runs.
#[derive(Debug, Clone, Serialize)]
pub struct TableStats {
    pub depth: u32,
    pub internal_count: u64,
    pub leaf_count: u64,
    pub yes_count: u64,
    pub no_count: u64,
    pub invalid_count: u64,
    /// Storage charged at two `depth + 1`-bit fields per node.
    pub total_bits: u64,
    pub serialized_bytes: u64,
    /// Order-0 entropy of the serialized bytes, in bits per byte.
    pub entropy_bits_per_byte: f64,
    pub mean_lookup_steps: f64,
}

pub fn build_table(depth: u32, oracle: &Oracle) -> Result<Table, TableError> {
    build_table_with_cap(depth, DEFAULT_TABLE_DEPTH_CAP, oracle)
}

/// Builds the trie over all `2^depth` keys, classifying leaves in
/// parallel. `cap` guards against accidentally huge depths and is itself
/// clamped to [`HARD_TABLE_DEPTH_CAP`].
pub fn build_table_with_cap(depth: u32, cap: u32, oracle: &Oracle) -> Result<Table, TableError> {
    let cap = cap.min(HARD_TABLE_DEPTH_CAP);
    if depth == 0 || depth > cap {
        return Err(TableError::DepthOutOfRange { depth, cap });
    }
    let internal = (1usize << depth) - 1;
    let leaves = 1usize << depth;
    let mut nodes = Vec::with_capacity(internal + leaves);
    for i in 0..internal {
        nodes.push(Node::Internal {
            left: (2 * i + 1) as u32,
            right: (2 * i + 2) as u32,
        });
    }
    let classified: Result<Vec<LeafValue>, OracleError> = (0..leaves as u64)
        .into_par_iter()
        .map(|key| classify(key, depth, oracle))
        .collect();
    nodes.extend(classified?.into_iter().map(Node::Leaf));
    Ok(Table { depth, nodes })
}

fn classify(key: u64, depth: u32, oracle: &Oracle) -> Result<LeafValue, OracleError> {
    let bits = BitString::from_uint(key, depth);
    match decode_instance(&bits) {
        Decoded::Invalid => Ok(LeafValue::Invalid),
        Decoded::Instance(instance) => match oracle.solve_brute(&instance)? {
            crate::oracle::SolveResult::Unsat => Ok(LeafValue::Unsat),
            crate::oracle::SolveResult::Sat(model) => Ok(LeafValue::Sat {
                n: instance.num_vars() as u8,
                counter: model.to_counter() as u32,
            }),
        },
    }
}

impl Table {
    pub fn depth(&self) -> u32 {
        self.depth
    }

    pub fn node_count(&self) -> u64 {
        self.nodes.len() as u64
    }

    /// Follows stored child pointers from the root, one per key bit.
    pub fn lookup(&self, key: &BitString) -> Result<LookupOutcome, TableError> {
        if key.len() != self.depth as usize {
            return Err(TableError::KeyWidth {
                expected: self.depth,
                actual: key.len(),
            });
        }
        let mut at = 0usize;
        let mut steps = 0u64;
        for bit in key.iter() {
            match self.nodes.get(at) {
                Some(&Node::Internal { left, right }) => {
                    at = if bit { right } else { left } as usize;
                    steps += 1;
                }
                _ => {
                    return Err(TableError::CorruptTable {
                        reason: format!("expected an internal node at index {at}"),
                    })
                }
            }
        }
        match self.nodes.get(at) {
            Some(&Node::Leaf(value)) => Ok(LookupOutcome {
                value,
                steps,
                bit_ops: steps * (u64::from(self.depth) + 1),
            }),
            _ => Err(TableError::CorruptTable {
                reason: format!("expected a leaf at index {at}"),
            }),
        }
    }

    /// Convenience for integer keys.
    pub fn lookup_key(&self, key: u64) -> Result<LookupOutcome, TableError> {
        self.lookup(&BitString::from_uint(key, self.depth))
    }

    pub fn stats(&self) -> TableStats {
        let mut yes = 0u64;
        let mut no = 0u64;
        let mut invalid = 0u64;
        let mut internal = 0u64;
        for node in &self.nodes {
            match node {
                Node::Internal { .. } => internal += 1,
                Node::Leaf(LeafValue::Sat { .. }) => yes += 1,
                Node::Leaf(LeafValue::Unsat) => no += 1,
                Node::Leaf(LeafValue::Invalid) => invalid += 1,
            }
        }
        let leaf_count = yes + no + invalid;

        let mut serialized = Vec::new();
        write_table(self, &mut serialized).expect("writing to a Vec cannot fail");

        // Lookups have constant shape, but measure instead of asserting.
        let sample_every = ((1u64 << self.depth) / (1 << 16)).max(1);
        let mut total_steps = 0u64;
        let mut samples = 0u64;
        let mut key = 0u64;
        while key < 1u64 << self.depth {
            total_steps += self.lookup_key(key).expect("in-range key").steps;
            samples += 1;
            key += sample_every;
        }

        TableStats {
            depth: self.depth,
            internal_count: internal,
            leaf_count,
            yes_count: yes,
            no_count: no,
            invalid_count: invalid,
            total_bits: self.node_count() * 2 * (u64::from(self.depth) + 1),
            serialized_bytes: serialized.len() as u64,
            entropy_bits_per_byte: byte_entropy(&serialized),
            mean_lookup_steps: total_steps as f64 / samples as f64,
        }
    }
}

fn byte_entropy(bytes: &[u8]) -> f64 {
    let mut histogram = [0u64; 256];
    for &b in bytes {
        histogram[b as usize] += 1;
    }
    let total = bytes.len() as f64;
    histogram
        .iter()
        .filter(|&&c| c > 0)
        .map(|&c| {
            let p = c as f64 / total;
            -p * p.log2()
        })
        .sum()
}

const TABLE_MAGIC: &[u8; 4] = b"STB1";

/// Serializes as magic, depth byte, then the node tree in preorder:
/// `0x00` for an internal node, `0x01` plus a leaf payload otherwise. The
/// preorder tags are redundant given the fixed shape, which makes them a
/// cheap integrity check on the way back in.
pub fn write_table<W: Write>(table: &Table, mut out: W) -> io::Result<()> {
    out.write_all(TABLE_MAGIC)?;
    out.write_all(&[table.depth as u8])?;
    write_node(table, 0, &mut out)?;
    Ok(())
}

fn write_node<W: Write>(table: &Table, at: usize, out: &mut W) -> io::Result<()> {
    match table.nodes[at] {
        Node::Internal { left, right } => {
            out.write_all(&[0x00])?;
            write_node(table, left as usize, out)?;
            write_node(table, right as usize, out)
        }
        Node::Leaf(value) => {
            out.write_all(&[0x01])?;
            match value {
                LeafValue::Invalid => out.write_all(&[0x00]),
                LeafValue::Unsat => out.write_all(&[0x01]),
                LeafValue::Sat { n, counter } => {
                    out.write_all(&[0x02, n])?;
                    out.write_all(&counter.to_be_bytes())
                }
            }
        }
    }
}

pub fn read_table<R: Read>(mut input: R) -> Result<Table, TableError> {
    let corrupt = |reason: &str| TableError::CorruptTable {
        reason: reason.to_string(),
    };
    let mut magic = [0u8; 4];
    input.read_exact(&mut magic).map_err(TableError::Io)?;
    if &magic != TABLE_MAGIC {
        return Err(corrupt("bad magic"));
    }
    let mut depth_byte = [0u8; 1];
    input.read_exact(&mut depth_byte)?;
    let depth = u32::from(depth_byte[0]);
    if depth == 0 || depth > HARD_TABLE_DEPTH_CAP {
        return Err(corrupt("depth out of range"));
    }
    let node_count = (1usize << (depth + 1)) - 1;
    let mut nodes = vec![Node::Leaf(LeafValue::Invalid); node_count];
    read_node(&mut input, &mut nodes, 0, depth)?;
    let mut rest = [0u8; 1];
    match input.read(&mut rest)? {
        0 => Ok(Table { depth, nodes }),
        _ => Err(corrupt("trailing bytes after the node tree")),
    }
}

/// Rebuilds the heap layout from the preorder stream. `remaining` is the
/// number of edge levels below the current node; zero means a leaf.
fn read_node<R: Read>(
    input: &mut R,
    nodes: &mut [Node],
    at: usize,
    remaining: u32,
) -> Result<(), TableError> {
    let corrupt = |reason: &str| TableError::CorruptTable {
        reason: reason.to_string(),
    };
    let mut tag = [0u8; 1];
    input.read_exact(&mut tag)?;
    match (tag[0], remaining) {
        (0x00, 0) => Err(corrupt("internal node where a leaf belongs")),
        (0x01, r) if r > 0 => Err(corrupt("leaf where an internal node belongs")),
        (0x00, _) => {
            let left = 2 * at + 1;
            let right = 2 * at + 2;
            nodes[at] = Node::Internal {
                left: left as u32,
                right: right as u32,
            };
            read_node(input, nodes, left, remaining - 1)?;
            read_node(input, nodes, right, remaining - 1)
        }
        (0x01, _) => {
            let mut kind = [0u8; 1];
            input.read_exact(&mut kind)?;
            let value = match kind[0] {
                0x00 => LeafValue::Invalid,
                0x01 => LeafValue::Unsat,
                0x02 => {
                    let mut n = [0u8; 1];
                    input.read_exact(&mut n)?;
                    let mut counter = [0u8; 4];
                    input.read_exact(&mut counter)?;
                    let counter = u32::from_be_bytes(counter);
                    if n[0] == 0 || n[0] > 63 || (n[0] < 32 && u64::from(counter) >= 1 << n[0]) {
                        return Err(corrupt("satisfying assignment out of range"));
                    }
                    LeafValue::Sat { n: n[0], counter }
                }
                other => return Err(corrupt(&format!("unknown leaf kind {other:#04x}"))),
            };
            nodes[at] = Node::Leaf(value);
            Ok(())
        }
        (other, _) => Err(corrupt(&format!("unknown node tag {other:#04x}"))),
    }
}
