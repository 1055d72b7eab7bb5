//! Row-major stride arithmetic over the `(s+t)`-dimensional table.
//!
//! Coordinates are laid out `i_1, …, i_s, j_1, …, j_t` with `i_1` varying
//! slowest, so the outermost stride is the `i_1` layer.

use crate::dp::CellOutcome;
use crate::error::{contract, Error, Result};

/// A coordinate tuple `(i_1, …, i_s; j_1, …, j_t)`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct MultiIndex(pub Vec<usize>);

impl MultiIndex {
    pub fn coords(&self) -> &[usize] {
        &self.0
    }

    pub fn arity(&self) -> usize {
        self.0.len()
    }

    /// True when every coordinate is at least 1.
    pub fn is_interior(&self) -> bool {
        self.0.iter().all(|&c| c >= 1)
    }
}

impl From<Vec<usize>> for MultiIndex {
    fn from(coords: Vec<usize>) -> Self {
        MultiIndex(coords)
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Strides {
    dims: Vec<usize>,
    strides: Vec<usize>,
    total_cells: usize,
}

impl Strides {
    pub fn dims(&self) -> &[usize] {
        &self.dims
    }

    pub fn strides(&self) -> &[usize] {
        &self.strides
    }

    pub fn total_cells(&self) -> usize {
        self.total_cells
    }
}

pub fn make_strides(dims: &[usize]) -> Result<Strides> {
    if dims.is_empty() {
        return Err(contract("at least one dimension is required"));
    }
    if let Some(k) = dims.iter().position(|&d| d == 0) {
        return Err(contract(format!("extent of dimension {k} is zero")));
    }
    let mut strides = vec![1usize; dims.len()];
    for k in (0..dims.len() - 1).rev() {
        strides[k] = strides[k + 1]
            .checked_mul(dims[k + 1])
            .ok_or(Error::Overflow)?;
    }
    let total_cells = strides[0].checked_mul(dims[0]).ok_or(Error::Overflow)?;
    Ok(Strides {
        dims: dims.to_vec(),
        strides,
        total_cells,
    })
}

pub fn flatten(idx: &MultiIndex, strides: &Strides) -> Result<usize> {
    if idx.arity() != strides.dims.len() {
        return Err(contract(format!(
            "index has {} coordinates, table has {} dimensions",
            idx.arity(),
            strides.dims.len()
        )));
    }
    let mut offset = 0;
    for (k, (&c, (&d, &st))) in idx
        .0
        .iter()
        .zip(strides.dims.iter().zip(&strides.strides))
        .enumerate()
    {
        if c >= d {
            return Err(contract(format!("coordinate {k} is {c}, extent is {d}")));
        }
        offset += c * st;
    }
    Ok(offset)
}

/// Inverse of [`flatten`]. Only used by tests and table dumps.
pub fn unflatten(mut offset: usize, strides: &Strides) -> Result<MultiIndex> {
    if offset >= strides.total_cells {
        return Err(contract(format!(
            "offset {offset} outside table of {} cells",
            strides.total_cells
        )));
    }
    let coords = strides
        .strides
        .iter()
        .map(|&st| {
            let c = offset / st;
            offset %= st;
            c
        })
        .collect();
    Ok(MultiIndex(coords))
}

/// Subset of X positions `{1, …, s}`; position `p` is bit `p - 1`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default)]
pub struct MismatchMask(u64);

impl MismatchMask {
    pub const EMPTY: MismatchMask = MismatchMask(0);

    /// Mask from raw bits, checking that only the low `s` bits are set.
    pub fn from_bits(bits: u64, s: usize) -> Result<Self> {
        if s < 64 && bits >> s != 0 {
            return Err(contract(format!(
                "mask {bits:#b} has bits above position {s}"
            )));
        }
        Ok(MismatchMask(bits))
    }

    /// Mask holding the 1-indexed positions in `positions`.
    pub fn from_positions(positions: &[usize], s: usize) -> Result<Self> {
        let mut bits = 0u64;
        for &p in positions {
            if p == 0 || p > s {
                return Err(contract(format!("position {p} outside 1..={s}")));
            }
            bits |= 1 << (p - 1);
        }
        Ok(MismatchMask(bits))
    }

    pub fn full(s: usize) -> Self {
        MismatchMask(low_bits(s))
    }

    pub fn bits(self) -> u64 {
        self.0
    }

    pub fn is_empty(self) -> bool {
        self.0 == 0
    }

    pub fn is_full(self, s: usize) -> bool {
        self.0 == low_bits(s)
    }

    pub fn len(self) -> usize {
        self.0.count_ones() as usize
    }

    pub fn contains(self, p: usize) -> bool {
        (1..=64).contains(&p) && self.0 & (1 << (p - 1)) != 0
    }

    /// 1-indexed positions in increasing order.
    pub fn positions(self) -> impl Iterator<Item = usize> {
        let mut bits = self.0;
        std::iter::from_fn(move || {
            if bits == 0 {
                return None;
            }
            let p = bits.trailing_zeros() as usize + 1;
            bits &= bits - 1;
            Some(p)
        })
    }
}

fn low_bits(s: usize) -> u64 {
    if s >= 64 {
        u64::MAX
    } else {
        (1u64 << s) - 1
    }
}

/// The neighbour whose value determines the cell at `idx`.
///
/// `AllMatch` steps back along every coordinate; `Partial(mask)` steps back
/// along exactly the masked X coordinates.
pub fn recurrence_target(
    idx: &MultiIndex,
    outcome: &CellOutcome,
    s: usize,
    t: usize,
) -> Result<MultiIndex> {
    if idx.arity() != s + t {
        return Err(contract(format!(
            "index has {} coordinates, expected {}",
            idx.arity(),
            s + t
        )));
    }
    if !idx.is_interior() {
        return Err(contract("recurrence target requested for a boundary index"));
    }
    let mut coords = idx.0.clone();
    match outcome {
        CellOutcome::NotSame => return Err(contract("a NotSame cell has no recurrence target")),
        CellOutcome::AllMatch { .. } => coords.iter_mut().for_each(|c| *c -= 1),
        CellOutcome::Partial { mask, .. } => {
            if mask.is_empty() {
                return Err(contract("Partial outcome with an empty mask"));
            }
            for p in mask.positions() {
                if p > s {
                    return Err(contract(format!("mask position {p} outside 1..={s}")));
                }
                coords[p - 1] -= 1;
            }
        }
    }
    Ok(MultiIndex(coords))
}
