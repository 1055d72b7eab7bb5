//! Exact solver for the longest string that is a subsequence of every
//! sequence in one family and a substring of every sequence in another.
//!
//! ```
//! use mlcss_core::{solve, Instance, SolveConfig};
//!
//! let instance = Instance::from_strs(&["abcd", "bcd"], &["bdc", "bdd"]).unwrap();
//! let solution = solve(&instance, &SolveConfig::default()).unwrap();
//! assert_eq!(solution.witness.to_string(), "bd");
//! ```

pub mod bench;
mod clock;
pub mod dispatch;
pub mod dp;
pub mod error;
pub mod multi_index;
pub mod oracle;
pub mod sequence;

pub use dp::{
    cell_value, classify_cell, reconstruct, resident_cells, solve, solve_full, CellOutcome,
    DpTable, Mode, Solution, SolveConfig, SolveStats, DEFAULT_MAX_CELLS,
};
pub use error::{Error, Result};
pub use multi_index::{
    flatten, make_strides, recurrence_target, unflatten, MismatchMask, MultiIndex, Strides,
};
pub use sequence::{Instance, Sequence, Symbol};
