//! The `(s+t)`-dimensional table recurrence and the solver built on it.
//!
//! Cell `(i_1, …, i_s; j_1, …, j_t)` holds the length of the longest string
//! that is a subsequence of every X prefix `X_p[..i_p]` and a suffix of every
//! Y prefix `Y_q[..j_q]`. Any index with a zero coordinate is 0. The answer is
//! the maximum over interior cells, and the witness is the slice of `Y_1`
//! ending at the `j_1` coordinate of the first cell attaining it.

use std::fmt;
use std::time::Duration;

use crate::error::{contract, Error, Result};
use crate::multi_index::{
    flatten, make_strides, recurrence_target, unflatten, MismatchMask, MultiIndex, Strides,
};
use crate::sequence::{Instance, Sequence, Symbol};

pub const DEFAULT_MAX_CELLS: u64 = 100_000_000;

/// How a cell relates to its neighbours.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CellOutcome {
    /// The Y end symbols disagree; no non-empty common suffix exists.
    NotSame,
    /// Every X and Y end symbol equals `sigma`.
    AllMatch { sigma: Symbol },
    /// The Y ends agree on `sigma`; `mask` holds the X positions whose end
    /// symbol differs from it.
    Partial { sigma: Symbol, mask: MismatchMask },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Mode {
    /// Materialize the whole table.
    Full,
    /// Keep only the current and previous `i_1` layers.
    #[default]
    Rolling,
}

impl Mode {
    pub fn as_str(self) -> &'static str {
        match self {
            Mode::Full => "full",
            Mode::Rolling => "rolling",
        }
    }
}

impl fmt::Display for Mode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl std::str::FromStr for Mode {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "full" => Ok(Mode::Full),
            "rolling" => Ok(Mode::Rolling),
            other => Err(format!("unknown mode '{other}', expected full or rolling")),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SolveConfig {
    pub mode: Mode,
    /// Upper bound on resident table cells (whole table in full mode, the
    /// two-layer slab in rolling mode).
    pub max_cells: u64,
}

impl Default for SolveConfig {
    fn default() -> Self {
        SolveConfig {
            mode: Mode::Rolling,
            max_cells: DEFAULT_MAX_CELLS,
        }
    }
}

impl SolveConfig {
    pub fn full() -> Self {
        SolveConfig {
            mode: Mode::Full,
            ..Default::default()
        }
    }

    pub fn rolling() -> Self {
        SolveConfig::default()
    }
}

/// Measurements taken while solving. Not part of the answer.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub struct SolveStats {
    pub elapsed: Duration,
    /// Table cells held in memory at once.
    pub resident_cells: u64,
}

#[derive(Debug, Clone)]
pub struct Solution {
    pub length: usize,
    pub witness: Sequence,
    /// 1-indexed end position of the witness in `Y_1`; 0 for an empty answer.
    pub end_in_y1: usize,
    pub cells_computed: u64,
    pub stats: SolveStats,
}

impl Solution {
    pub fn empty() -> Self {
        Solution {
            length: 0,
            witness: Sequence::default(),
            end_in_y1: 0,
            cells_computed: 0,
            stats: SolveStats::default(),
        }
    }

    pub fn elapsed(&self) -> Duration {
        self.stats.elapsed
    }
}

/// Solutions compare by answer; `stats` is ignored.
impl PartialEq for Solution {
    fn eq(&self, other: &Self) -> bool {
        self.length == other.length
            && self.witness == other.witness
            && self.end_in_y1 == other.end_in_y1
            && self.cells_computed == other.cells_computed
    }
}

impl Eq for Solution {}

fn check_interior(instance: &Instance, idx: &MultiIndex) -> Result<()> {
    let (s, t) = (instance.s(), instance.t());
    if idx.arity() != s + t {
        return Err(contract(format!(
            "index has {} coordinates, expected {}",
            idx.arity(),
            s + t
        )));
    }
    let lens = instance.xs().iter().chain(instance.ys()).map(Sequence::len);
    for (k, (&c, len)) in idx.coords().iter().zip(lens).enumerate() {
        if c == 0 || c > len {
            return Err(contract(format!(
                "coordinate {k} is {c}, must lie in 1..={len}"
            )));
        }
    }
    Ok(())
}

pub fn classify_cell(instance: &Instance, idx: &MultiIndex) -> Result<CellOutcome> {
    check_interior(instance, idx)?;
    let s = instance.s();
    let coords = idx.coords();
    let mut y_ends = instance
        .ys()
        .iter()
        .zip(&coords[s..])
        .map(|(y, &j)| y.symbols()[j - 1]);
    let sigma = y_ends.next().expect("instance has at least one Y sequence");
    if y_ends.any(|u| u != sigma) {
        return Ok(CellOutcome::NotSame);
    }
    let mismatched: Vec<usize> = instance
        .xs()
        .iter()
        .zip(&coords[..s])
        .enumerate()
        .filter(|(_, (x, &i))| x.symbols()[i - 1] != sigma)
        .map(|(p, _)| p + 1)
        .collect();
    if mismatched.is_empty() {
        Ok(CellOutcome::AllMatch { sigma })
    } else {
        let mask = MismatchMask::from_positions(&mismatched, s)?;
        Ok(CellOutcome::Partial { sigma, mask })
    }
}

/// Value of the interior cell `idx` given its already-computed neighbours.
/// Neighbours with a zero coordinate are read as 0 without consulting `lookup`.
pub fn cell_value(
    instance: &Instance,
    idx: &MultiIndex,
    mut lookup: impl FnMut(&MultiIndex) -> u32,
) -> Result<u32> {
    let outcome = classify_cell(instance, idx)?;
    if outcome == CellOutcome::NotSame {
        return Ok(0);
    }
    let target = recurrence_target(idx, &outcome, instance.s(), instance.t())?;
    let prior = if target.is_interior() {
        lookup(&target)
    } else {
        0
    };
    Ok(match outcome {
        CellOutcome::AllMatch { .. } => prior + 1,
        _ => prior,
    })
}

pub fn reconstruct(y1: &Sequence, end_in_y1: usize, length: usize) -> Result<Sequence> {
    if length > end_in_y1 || end_in_y1 > y1.len() {
        return Err(contract(format!(
            "cannot take {length} symbols ending at {end_in_y1} from a sequence of length {}",
            y1.len()
        )));
    }
    Ok(Sequence::new(
        y1.symbols()[end_in_y1 - length..end_in_y1].to_vec(),
    ))
}

/// A fully materialized table, indexed by `(i_1, …, i_s; j_1, …, j_t)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DpTable {
    strides: Strides,
    cells: Vec<u32>,
}

impl DpTable {
    pub(crate) fn from_parts(strides: Strides, cells: Vec<u32>) -> Self {
        debug_assert_eq!(strides.total_cells(), cells.len());
        DpTable { strides, cells }
    }

    pub fn dims(&self) -> &[usize] {
        self.strides.dims()
    }

    pub fn strides(&self) -> &Strides {
        &self.strides
    }

    pub fn cells(&self) -> &[u32] {
        &self.cells
    }

    pub fn get(&self, idx: &MultiIndex) -> Result<u32> {
        Ok(self.cells[flatten(idx, &self.strides)?])
    }

    /// Interior cells in iteration order (lexicographic, `i_1` outermost).
    pub fn interior(&self) -> impl Iterator<Item = (MultiIndex, u32)> + '_ {
        self.cells.iter().enumerate().filter_map(|(off, &v)| {
            let idx = unflatten(off, &self.strides).expect("offset within table");
            idx.is_interior().then_some((idx, v))
        })
    }

    pub fn max_value(&self) -> u32 {
        self.cells.iter().copied().max().unwrap_or(0)
    }
}

/// Cells the given mode keeps resident, as an exact (unbounded) count.
pub fn resident_cells(instance: &Instance, mode: Mode) -> u128 {
    let dims = instance.dims();
    let layer: u128 = dims[1..].iter().map(|&d| d as u128).product();
    match mode {
        Mode::Full => layer * dims[0] as u128,
        Mode::Rolling => 2 * layer,
    }
}

pub fn solve(instance: &Instance, config: &SolveConfig) -> Result<Solution> {
    Ok(Engine::new(instance, config)?.run().0)
}

/// Solves in full mode and hands back the table alongside the solution.
pub fn solve_full(instance: &Instance, max_cells: u64) -> Result<(Solution, Option<DpTable>)> {
    let config = SolveConfig {
        mode: Mode::Full,
        max_cells,
    };
    let (solution, table) = Engine::new(instance, &config)?.run();
    Ok((solution, table))
}

struct Engine<'a> {
    instance: &'a Instance,
    mode: Mode,
    /// `None` when some sequence is empty and the interior is empty.
    layout: Option<Layout>,
}

struct Layout {
    dims: Vec<usize>,
    /// Row-major strides over all coordinates; `strides[0]` is the layer size.
    strides: Vec<usize>,
    buffer_len: usize,
}

impl<'a> Engine<'a> {
    fn new(instance: &'a Instance, config: &SolveConfig) -> Result<Self> {
        if instance.has_empty_sequence() {
            return Ok(Engine {
                instance,
                mode: config.mode,
                layout: None,
            });
        }
        let requested = resident_cells(instance, config.mode);
        if requested > config.max_cells as u128 {
            return Err(Error::BudgetExceeded {
                requested,
                budget: config.max_cells,
            });
        }
        let dims = instance.dims();
        let inner = make_strides(&dims[1..])?;
        let layer = inner.total_cells();
        let mut strides = Vec::with_capacity(dims.len());
        strides.push(layer);
        strides.extend_from_slice(inner.strides());
        let buffer_len = match config.mode {
            Mode::Full => layer.checked_mul(dims[0]),
            Mode::Rolling => layer.checked_mul(2),
        }
        .ok_or(Error::Overflow)?;
        Ok(Engine {
            instance,
            mode: config.mode,
            layout: Some(Layout {
                dims,
                strides,
                buffer_len,
            }),
        })
    }

    fn run(self) -> (Solution, Option<DpTable>) {
        let started = crate::clock::Stopwatch::start();
        let Some(layout) = self.layout else {
            let mut solution = Solution::empty();
            solution.stats.elapsed = started.elapsed();
            return (solution, None);
        };
        let (s, t) = (self.instance.s(), self.instance.t());
        let xs: Vec<&[Symbol]> = self.instance.xs().iter().map(Sequence::symbols).collect();
        let ys: Vec<&[Symbol]> = self.instance.ys().iter().map(Sequence::symbols).collect();
        let Layout {
            dims,
            strides,
            buffer_len,
        } = layout;
        let layer = strides[0];
        let rank = s + t;
        // Offset step of the all-coordinates diagonal within a layer.
        let inner_diagonal: usize = strides[1..].iter().sum();
        let full = self.mode == Mode::Full;
        let base = |i1: usize| if full { i1 * layer } else { (i1 & 1) * layer };

        let mut buf = vec![0u32; buffer_len];
        let mut coords = vec![1usize; rank];
        let mut best = 0u32;
        let mut end_in_y1 = 0usize;
        let mut computed = 0u64;

        for i1 in 1..dims[0] {
            let cur = base(i1);
            let prev = base(i1 - 1);
            coords[1..].fill(1);
            coords[0] = i1;
            let mut inner_off = inner_diagonal;
            loop {
                let sigma = ys[0][coords[s] - 1];
                let same = (1..t).all(|q| ys[q][coords[s + q] - 1] == sigma);
                let value = if !same {
                    0
                } else {
                    let mut mask = 0u64;
                    for p in 0..s {
                        if xs[p][coords[p] - 1] != sigma {
                            mask |= 1 << p;
                        }
                    }
                    if mask == 0 {
                        buf[prev + inner_off - inner_diagonal] + 1
                    } else {
                        let layer_base = if mask & 1 != 0 { prev } else { cur };
                        let mut step = 0;
                        let mut rest = mask & !1;
                        while rest != 0 {
                            step += strides[rest.trailing_zeros() as usize];
                            rest &= rest - 1;
                        }
                        buf[layer_base + inner_off - step]
                    }
                };
                buf[cur + inner_off] = value;
                computed += 1;
                if value > best {
                    best = value;
                    end_in_y1 = coords[s];
                }

                // Odometer over coordinates 1..rank, skipping the zero boundary.
                let mut k = rank - 1;
                loop {
                    if k == 0 {
                        break;
                    }
                    coords[k] += 1;
                    inner_off += strides[k];
                    if coords[k] < dims[k] {
                        break;
                    }
                    inner_off -= strides[k] * (coords[k] - 1);
                    coords[k] = 1;
                    k -= 1;
                }
                if k == 0 {
                    break;
                }
            }
        }

        let length = best as usize;
        let witness = reconstruct(&self.instance.ys()[0], end_in_y1, length)
            .expect("maximum lies inside Y_1");
        let solution = Solution {
            length,
            witness,
            end_in_y1,
            cells_computed: computed,
            stats: SolveStats {
                elapsed: started.elapsed(),
                resident_cells: buffer_len as u64,
            },
        };
        let table = full.then(|| {
            let strides = make_strides(&dims).expect("extents already validated");
            DpTable::from_parts(strides, buf)
        });
        (solution, table)
    }
}
