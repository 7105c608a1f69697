//! A two-way infinite tape with a single head, plus the binary increment
//! routine the enumerator uses to step its counters.

use super::MachineError;
use crate::codec::BitString;

/// One tape cell. Unwritten cells read as [`Symbol::Blank`].
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Symbol {
    Zero,
    One,
    #[default]
    Blank,
    /// Block terminator on the output tape.
    BlockEnd,
    /// Marks a formula with no satisfying assignment on the output tape.
    EmptyAnswer,
}

impl Symbol {
    pub fn to_char(self) -> char {
        match self {
            Symbol::Zero => '0',
            Symbol::One => '1',
            Symbol::Blank => 'b',
            Symbol::BlockEnd => 's',
            Symbol::EmptyAnswer => 'E',
        }
    }

    pub fn from_char(c: char) -> Option<Symbol> {
        match c {
            '0' => Some(Symbol::Zero),
            '1' => Some(Symbol::One),
            'b' => Some(Symbol::Blank),
            's' => Some(Symbol::BlockEnd),
            'E' => Some(Symbol::EmptyAnswer),
            _ => None,
        }
    }

    pub fn from_bit(bit: bool) -> Symbol {
        if bit {
            Symbol::One
        } else {
            Symbol::Zero
        }
    }

    /// `Some(bit)` for `Zero`/`One`, `None` for everything else.
    pub fn as_bit(self) -> Option<bool> {
        match self {
            Symbol::Zero => Some(false),
            Symbol::One => Some(true),
            _ => None,
        }
    }
}

/// Tape cells are indexed by `i64`; both directions are unbounded and
/// default to blank. The head starts at cell 0.
#[derive(Debug, Clone, Default)]
pub struct Tape {
    nonneg: Vec<Symbol>,
    neg: Vec<Symbol>,
    head: i64,
}

impl Tape {
    pub fn new() -> Tape {
        Tape::default()
    }

    /// A tape whose cells `0..bits.len()` hold the given bits, head at 0.
    pub fn from_bits(bits: &BitString) -> Tape {
        let mut tape = Tape::new();
        for (i, bit) in bits.iter().enumerate() {
            tape.set(i as i64, Symbol::from_bit(bit));
        }
        tape
    }

    pub fn head(&self) -> i64 {
        self.head
    }

    pub fn get(&self, index: i64) -> Symbol {
        let slot = if index >= 0 {
            self.nonneg.get(index as usize)
        } else {
            self.neg.get((-index - 1) as usize)
        };
        slot.copied().unwrap_or(Symbol::Blank)
    }

    pub fn set(&mut self, index: i64, symbol: Symbol) {
        let (store, at) = if index >= 0 {
            (&mut self.nonneg, index as usize)
        } else {
            (&mut self.neg, (-index - 1) as usize)
        };
        if at >= store.len() {
            store.resize(at + 1, Symbol::Blank);
        }
        store[at] = symbol;
    }

    pub fn read(&self) -> Symbol {
        self.get(self.head)
    }

    pub fn write(&mut self, symbol: Symbol) {
        self.set(self.head, symbol);
    }

    pub fn move_left(&mut self) {
        self.head -= 1;
    }

    pub fn move_right(&mut self) {
        self.head += 1;
    }

    /// Teleports the head; used for setup, never counted as machine steps.
    pub fn seek(&mut self, index: i64) {
        self.head = index;
    }

    /// Collects cells `0..len` as a bit string.
    ///
    /// # Panics
    ///
    /// Panics if any cell in the range is not a binary digit.
    pub fn read_bits(&self, len: usize) -> BitString {
        (0..len as i64)
            .map(|i| {
                self.get(i)
                    .as_bit()
                    .unwrap_or_else(|| panic!("cell {i} is not a binary digit"))
            })
            .collect()
    }
}

/// Adds one to the binary number stored in cells `0..width` (cell 0 most
/// significant), where `width` is the extent of the contiguous binary run
/// starting at cell 0. Returns `true` when the counter wraps back to all
/// zeros. The head position is left unchanged.
pub fn increment_tape(tape: &mut Tape) -> Result<bool, MachineError> {
    let mut width = 0i64;
    loop {
        match tape.get(width) {
            Symbol::Zero | Symbol::One => width += 1,
            Symbol::Blank => break,
            other => {
                return Err(MachineError::NonBinarySymbol {
                    symbol: other.to_char(),
                    position: width,
                })
            }
        }
    }
    let mut at = width - 1;
    while at >= 0 {
        match tape.get(at) {
            Symbol::One => {
                tape.set(at, Symbol::Zero);
                at -= 1;
            }
            Symbol::Zero => {
                tape.set(at, Symbol::One);
                return Ok(false);
            }
            _ => unreachable!("cells below {width} were just scanned as binary"),
        }
    }
    Ok(true)
}
