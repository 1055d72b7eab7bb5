//! Scaling measurements over a grid of problem shapes.
//!
//! Work is counted in table cells (exact) with wall time alongside. Resident
//! cells count live table entries, not process memory.

use std::io::Write;
use std::str::FromStr;
use std::time::Duration;

use crate::dp::{resident_cells, solve, Mode, SolveConfig, DEFAULT_MAX_CELLS};
use crate::error::{Error, Result};
use crate::oracle::{gen_random, GenParams};

pub const CSV_HEADER: [&str; 8] = [
    "s",
    "t",
    "m",
    "n",
    "mode",
    "cells",
    "elapsed_ms",
    "peak_cells_resident",
];

/// Axis values for a grid, parsed from `s=1,2;t=1,2;m=8,16;n=8,16`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GridSpec {
    pub s: Vec<usize>,
    pub t: Vec<usize>,
    pub m: Vec<usize>,
    pub n: Vec<usize>,
}

impl GridSpec {
    /// Every `(s, t, m, n)` tuple, `s` slowest.
    pub fn points(&self) -> Vec<(usize, usize, usize, usize)> {
        let mut out = Vec::new();
        for &s in &self.s {
            for &t in &self.t {
                for &m in &self.m {
                    for &n in &self.n {
                        out.push((s, t, m, n));
                    }
                }
            }
        }
        out
    }
}

impl FromStr for GridSpec {
    type Err = String;

    fn from_str(spec: &str) -> Result<Self, Self::Err> {
        let mut axes: [Option<Vec<usize>>; 4] = Default::default();
        for part in spec.split(';').map(str::trim).filter(|p| !p.is_empty()) {
            let (key, values) = part
                .split_once('=')
                .ok_or_else(|| format!("grid axis '{part}' is missing '='"))?;
            let slot = match key.trim() {
                "s" => 0,
                "t" => 1,
                "m" => 2,
                "n" => 3,
                other => return Err(format!("unknown grid axis '{other}'")),
            };
            let values = values
                .split(',')
                .map(|v| {
                    v.trim()
                        .parse::<usize>()
                        .map_err(|e| format!("axis {key}: '{v}': {e}"))
                })
                .collect::<Result<Vec<_>, _>>()?;
            if values.is_empty() {
                return Err(format!("axis {key} has no values"));
            }
            if (slot < 2) && values.contains(&0) {
                return Err(format!("axis {key} must be at least 1"));
            }
            axes[slot] = Some(values);
        }
        let [s, t, m, n] = axes;
        let need = |axis: Option<Vec<usize>>, name: &str| {
            axis.ok_or_else(|| format!("grid is missing axis {name}"))
        };
        Ok(GridSpec {
            s: need(s, "s")?,
            t: need(t, "t")?,
            m: need(m, "m")?,
            n: need(n, "n")?,
        })
    }
}

#[derive(Debug, Clone)]
pub struct BenchOptions {
    pub modes: Vec<Mode>,
    pub seed: u64,
    pub max_cells: u64,
    pub alphabet_size: u32,
    /// Timed runs per point; the fastest is reported.
    pub repeats: usize,
}

impl Default for BenchOptions {
    fn default() -> Self {
        BenchOptions {
            modes: vec![Mode::Full, Mode::Rolling],
            seed: 0,
            max_cells: DEFAULT_MAX_CELLS,
            alphabet_size: 4,
            repeats: 1,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BenchPoint {
    pub s: usize,
    pub t: usize,
    pub m: usize,
    pub n: usize,
    pub mode: Mode,
    pub cells: u64,
    pub elapsed: Duration,
    pub peak_cells_resident: u64,
    /// Answer length, kept so callers can check instrumentation left it alone.
    pub length: usize,
}

impl BenchPoint {
    pub fn elapsed_ms(&self) -> f64 {
        self.elapsed.as_secs_f64() * 1e3
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum BenchRecord {
    Measured(BenchPoint),
    /// The point needed more resident cells than the budget allows.
    Skipped {
        s: usize,
        t: usize,
        m: usize,
        n: usize,
        mode: Mode,
        cells: u128,
    },
}

/// Analytic work for a uniform point: `m^s · n^t`.
pub fn analytic_cells(s: usize, t: usize, m: usize, n: usize) -> u128 {
    (m as u128).pow(s as u32) * (n as u128).pow(t as u32)
}

/// Seed for the instance at a grid point; shared by every mode so modes see
/// the same input.
fn point_seed(seed: u64, s: usize, t: usize, m: usize, n: usize) -> u64 {
    let mut h = seed ^ 0x9e37_79b9_7f4a_7c15;
    for v in [s, t, m, n] {
        h = (h ^ v as u64).wrapping_mul(0x0100_0000_01b3);
    }
    h
}

pub fn run_point(
    s: usize,
    t: usize,
    m: usize,
    n: usize,
    mode: Mode,
    options: &BenchOptions,
) -> Result<BenchRecord> {
    let instance = gen_random(&GenParams {
        s,
        t,
        len_range_x: m..=m,
        len_range_y: n..=n,
        alphabet_size: options.alphabet_size,
        seed: point_seed(options.seed, s, t, m, n),
    })?;
    let config = SolveConfig {
        mode,
        max_cells: options.max_cells,
    };
    let mut best: Option<crate::dp::Solution> = None;
    for _ in 0..options.repeats.max(1) {
        match solve(&instance, &config) {
            Ok(sol) => {
                if best.as_ref().is_none_or(|b| sol.elapsed() < b.elapsed()) {
                    best = Some(sol);
                }
            }
            Err(Error::BudgetExceeded { .. }) => {
                return Ok(BenchRecord::Skipped {
                    s,
                    t,
                    m,
                    n,
                    mode,
                    cells: analytic_cells(s, t, m, n),
                })
            }
            Err(e) => return Err(e),
        }
    }
    let sol = best.expect("at least one run");
    let peak = if sol.cells_computed == 0 {
        0
    } else {
        resident_cells(&instance, mode) as u64
    };
    debug_assert_eq!(peak, sol.stats.resident_cells);
    Ok(BenchRecord::Measured(BenchPoint {
        s,
        t,
        m,
        n,
        mode,
        cells: sol.cells_computed,
        elapsed: sol.elapsed(),
        peak_cells_resident: sol.stats.resident_cells,
        length: sol.length,
    }))
}

/// Runs every grid point under every requested mode, sequentially.
pub fn run_grid(grid: &GridSpec, options: &BenchOptions) -> Result<Vec<BenchRecord>> {
    let mut records = Vec::new();
    for (s, t, m, n) in grid.points() {
        for &mode in &options.modes {
            records.push(run_point(s, t, m, n, mode, options)?);
        }
    }
    Ok(records)
}

/// Writes the records as CSV. Skipped points carry `skipped` in the timing
/// column and leave the resident column empty.
pub fn write_csv<W: Write>(records: &[BenchRecord], out: W) -> csv::Result<()> {
    let mut w = csv::Writer::from_writer(out);
    w.write_record(CSV_HEADER)?;
    for record in records {
        match record {
            BenchRecord::Measured(p) => w.write_record([
                p.s.to_string(),
                p.t.to_string(),
                p.m.to_string(),
                p.n.to_string(),
                p.mode.to_string(),
                p.cells.to_string(),
                format!("{:.3}", p.elapsed_ms()),
                p.peak_cells_resident.to_string(),
            ])?,
            BenchRecord::Skipped {
                s,
                t,
                m,
                n,
                mode,
                cells,
            } => w.write_record([
                s.to_string(),
                t.to_string(),
                m.to_string(),
                n.to_string(),
                mode.to_string(),
                cells.to_string(),
                "skipped".to_string(),
                String::new(),
            ])?,
        }
    }
    w.flush()?;
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_grid() {
        let g: GridSpec = "s=1,2;t=1,2;m=8,16,32;n=8,16,32".parse().unwrap();
        assert_eq!(g.s, vec![1, 2]);
        assert_eq!(g.n, vec![8, 16, 32]);
        assert_eq!(g.points().len(), 36);
        assert_eq!(g.points()[0], (1, 1, 8, 8));
    }

    #[test]
    fn rejects_bad_grids() {
        assert!("s=1;t=1;m=8".parse::<GridSpec>().is_err());
        assert!("s=1;t=1;m=8;n=x".parse::<GridSpec>().is_err());
        assert!("s=0;t=1;m=8;n=8".parse::<GridSpec>().is_err());
        assert!("q=1;s=1;t=1;m=8;n=8".parse::<GridSpec>().is_err());
        assert!("s1;t=1;m=8;n=8".parse::<GridSpec>().is_err());
    }

    #[test]
    fn analytic_examples() {
        assert_eq!(analytic_cells(2, 1, 32, 32), 32_768);
        assert_eq!(analytic_cells(1, 1, 16, 8) * 2, analytic_cells(1, 1, 32, 8));
    }

    #[test]
    fn over_budget_points_are_skipped() {
        let options = BenchOptions {
            modes: vec![Mode::Full, Mode::Rolling],
            max_cells: 1000,
            ..Default::default()
        };
        let grid: GridSpec = "s=2;t=1;m=16;n=16".parse().unwrap();
        let records = run_grid(&grid, &options).unwrap();
        assert!(matches!(
            records[0],
            BenchRecord::Skipped {
                mode: Mode::Full,
                ..
            }
        ));
        assert!(matches!(
            records[1],
            BenchRecord::Measured(BenchPoint {
                mode: Mode::Rolling,
                ..
            })
        ));

        let mut out = Vec::new();
        write_csv(&records, &mut out).unwrap();
        let text = String::from_utf8(out).unwrap();
        let lines: Vec<&str> = text.lines().collect();
        assert_eq!(
            lines[0],
            "s,t,m,n,mode,cells,elapsed_ms,peak_cells_resident"
        );
        assert_eq!(lines[1], "2,1,16,16,full,4096,skipped,");
        assert!(lines[2].starts_with("2,1,16,16,rolling,4096,"));
        assert!(lines[2].ends_with(",578"));
    }
}
