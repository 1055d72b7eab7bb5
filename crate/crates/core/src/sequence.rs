//! Symbols, sequences and problem instances.

use std::fmt;

use crate::error::{Error, Result};

/// Widest supported number of X sequences; mismatch masks are `u64` bitsets.
pub const MAX_X_SEQUENCES: usize = 64;

/// One element of the alphabet, compared by code point.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Symbol(pub u32);

impl From<u8> for Symbol {
    fn from(b: u8) -> Self {
        Symbol(b as u32)
    }
}

impl From<char> for Symbol {
    fn from(c: char) -> Self {
        Symbol(c as u32)
    }
}

/// An ordered list of symbols. Paper-facing positions are 1-indexed: position
/// `p` is `symbols()[p - 1]`, and `prefix(i)` holds positions `1..=i`.
#[derive(Debug, Clone, Default, PartialEq, Eq, Hash)]
pub struct Sequence {
    symbols: Vec<Symbol>,
}

impl Sequence {
    pub fn new(symbols: Vec<Symbol>) -> Self {
        Sequence { symbols }
    }

    pub fn from_bytes(bytes: &[u8]) -> Self {
        Sequence {
            symbols: bytes.iter().copied().map(Symbol::from).collect(),
        }
    }

    pub fn len(&self) -> usize {
        self.symbols.len()
    }

    pub fn is_empty(&self) -> bool {
        self.symbols.is_empty()
    }

    pub fn symbols(&self) -> &[Symbol] {
        &self.symbols
    }

    /// Symbol at 1-indexed position `pos`.
    pub fn at(&self, pos: usize) -> Option<Symbol> {
        pos.checked_sub(1)
            .and_then(|k| self.symbols.get(k))
            .copied()
    }

    pub fn prefix(&self, i: usize) -> Option<&[Symbol]> {
        self.symbols.get(..i)
    }

    /// Bytes of the sequence when every code fits in a byte.
    pub fn to_bytes(&self) -> Option<Vec<u8>> {
        self.symbols
            .iter()
            .map(|s| u8::try_from(s.0).ok())
            .collect()
    }
}

impl From<&str> for Sequence {
    fn from(s: &str) -> Self {
        Sequence::from_bytes(s.as_bytes())
    }
}

impl fmt::Display for Sequence {
    /// Byte-coded sequences print as (lossy) UTF-8, anything wider as chars.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.to_bytes() {
            Some(bytes) => f.write_str(&String::from_utf8_lossy(&bytes)),
            None => {
                for s in &self.symbols {
                    let c = char::from_u32(s.0).unwrap_or(char::REPLACEMENT_CHARACTER);
                    write!(f, "{c}")?;
                }
                Ok(())
            }
        }
    }
}

/// The `s` X sequences (subsequence constraints) and `t` Y sequences
/// (substring constraints) of one problem.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Instance {
    xs: Vec<Sequence>,
    ys: Vec<Sequence>,
}

impl Instance {
    pub fn new(xs: Vec<Sequence>, ys: Vec<Sequence>) -> Result<Self> {
        if xs.is_empty() {
            return Err(Error::InvalidInstance(
                "at least one X sequence is required".into(),
            ));
        }
        if ys.is_empty() {
            return Err(Error::InvalidInstance(
                "at least one Y sequence is required".into(),
            ));
        }
        if xs.len() > MAX_X_SEQUENCES {
            return Err(Error::InvalidInstance(format!(
                "{} X sequences given, at most {MAX_X_SEQUENCES} are supported",
                xs.len()
            )));
        }
        Ok(Instance { xs, ys })
    }

    /// Convenience constructor for byte strings.
    pub fn from_strs(xs: &[&str], ys: &[&str]) -> Result<Self> {
        Instance::new(
            xs.iter().map(|s| Sequence::from(*s)).collect(),
            ys.iter().map(|s| Sequence::from(*s)).collect(),
        )
    }

    pub fn xs(&self) -> &[Sequence] {
        &self.xs
    }

    pub fn ys(&self) -> &[Sequence] {
        &self.ys
    }

    pub fn s(&self) -> usize {
        self.xs.len()
    }

    pub fn t(&self) -> usize {
        self.ys.len()
    }

    pub fn has_empty_sequence(&self) -> bool {
        self.xs.iter().chain(&self.ys).any(Sequence::is_empty)
    }

    /// Table extents `(m_1+1, …, m_s+1, n_1+1, …, n_t+1)`.
    pub fn dims(&self) -> Vec<usize> {
        self.xs
            .iter()
            .chain(&self.ys)
            .map(|q| q.len() + 1)
            .collect()
    }

    /// Number of interior cells, `∏ m_p · ∏ n_q`, or `None` on overflow.
    pub fn interior_cells(&self) -> Option<u64> {
        self.xs
            .iter()
            .chain(&self.ys)
            .try_fold(1u64, |acc, q| acc.checked_mul(q.len() as u64))
    }
}
