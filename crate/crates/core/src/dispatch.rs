//! Explicit per-subset recurrence dispatch.
//!
//! Enumerates one recurrence format per subset of mismatched X positions
//! (`2^s` of them) and fills a full table by walking coordinate tuples
//! directly. It shares no code with the solver's mask arithmetic and exists to
//! cross-check it.

use std::collections::BTreeMap;

use crate::dp::DpTable;
use crate::error::{contract, Result};
use crate::multi_index::{flatten, make_strides, MultiIndex};
use crate::sequence::Instance;

/// Largest `s` for which the branch table is built.
pub const MAX_BRANCH_S: usize = 16;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Format {
    /// Every X end matches: step back along all coordinates and add one.
    Diagonal,
    /// No X end matches: step back along every X coordinate.
    AllX,
    /// Some X ends match: step back along the mismatched X coordinates.
    SomeX,
}

#[derive(Debug, Clone)]
pub struct Branch {
    pub format: Format,
    /// Per-coordinate decrement applied to reach the neighbour.
    pub step: Vec<usize>,
    pub increment: u32,
}

/// One branch per subset of `{1, …, s}`, keyed by the sorted subset.
pub fn branch_table(s: usize, t: usize) -> Result<BTreeMap<Vec<usize>, Branch>> {
    if s == 0 || s > MAX_BRANCH_S {
        return Err(contract(format!(
            "branch table supports 1..={MAX_BRANCH_S} X sequences, got {s}"
        )));
    }
    let mut table = BTreeMap::new();
    for size in 0..=s {
        for subset in subsets_of_size(s, size) {
            let branch = if size == 0 {
                Branch {
                    format: Format::Diagonal,
                    step: vec![1; s + t],
                    increment: 1,
                }
            } else {
                let mut step = vec![0; s + t];
                for &p in &subset {
                    step[p - 1] = 1;
                }
                Branch {
                    format: if size == s {
                        Format::AllX
                    } else {
                        Format::SomeX
                    },
                    step,
                    increment: 0,
                }
            };
            table.insert(subset, branch);
        }
    }
    Ok(table)
}

/// Increasing `size`-subsets of `{1, …, n}` in lexicographic order.
fn subsets_of_size(n: usize, size: usize) -> Vec<Vec<usize>> {
    fn extend(
        start: usize,
        n: usize,
        size: usize,
        cur: &mut Vec<usize>,
        out: &mut Vec<Vec<usize>>,
    ) {
        if cur.len() == size {
            out.push(cur.clone());
            return;
        }
        for p in start..=n {
            cur.push(p);
            extend(p + 1, n, size, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    extend(1, n, size, &mut Vec::with_capacity(size), &mut out);
    out
}

/// Fills the full table using the explicit branch table.
pub fn branched_table(instance: &Instance) -> Result<DpTable> {
    let (s, t) = (instance.s(), instance.t());
    let branches = branch_table(s, t)?;
    let dims = instance.dims();
    let strides = make_strides(&dims)?;
    let mut cells = vec![0u32; strides.total_cells()];
    let mut idx = vec![1usize; s + t];
    if dims.iter().any(|&d| d < 2) {
        return Ok(DpTable::from_parts(strides, cells));
    }
    'cells: loop {
        let y_end = |q: usize| instance.ys()[q].symbols()[idx[s + q] - 1];
        let sigma = y_end(0);
        if (1..t).all(|q| y_end(q) == sigma) {
            let mismatched: Vec<usize> = (0..s)
                .filter(|&p| instance.xs()[p].symbols()[idx[p] - 1] != sigma)
                .map(|p| p + 1)
                .collect();
            let branch = &branches[&mismatched];
            let target: Vec<usize> = idx.iter().zip(&branch.step).map(|(c, d)| c - d).collect();
            let prior = cells[flatten(&MultiIndex(target), &strides)?];
            cells[flatten(&MultiIndex(idx.clone()), &strides)?] = prior + branch.increment;
        }

        for k in (0..s + t).rev() {
            idx[k] += 1;
            if idx[k] < dims[k] {
                continue 'cells;
            }
            idx[k] = 1;
        }
        break;
    }
    Ok(DpTable::from_parts(strides, cells))
}
