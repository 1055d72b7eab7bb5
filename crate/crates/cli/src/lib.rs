//! Command-line front end for the `mlcss` solver.

pub mod error;
pub mod ingest;

use std::fs::File;
use std::io::{self, Write};
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;

use mlcss_core::bench::{run_grid, write_csv, BenchOptions, GridSpec};
use mlcss_core::oracle::{gen_random, oracle_solve, verify, GenParams, ORACLE_GUARD};
use mlcss_core::{
    solve, solve_full, DpTable, Instance, Mode, Solution, SolveConfig, DEFAULT_MAX_CELLS,
};

pub use error::CliError;
pub use ingest::{load_sequences, Format};

#[derive(Debug, Parser)]
#[command(
    name = "mlcss",
    version,
    about = "Longest common subsequence-and-substring solver"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Solve one instance.
    Solve(SolveArgs),
    /// Compare the solver with the brute-force oracle on random instances.
    Check(CheckArgs),
    /// Measure cells, time and resident memory over a grid of shapes.
    Bench(BenchArgs),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum ModeArg {
    Full,
    Rolling,
}

impl From<ModeArg> for Mode {
    fn from(m: ModeArg) -> Self {
        match m {
            ModeArg::Full => Mode::Full,
            ModeArg::Rolling => Mode::Rolling,
        }
    }
}

#[derive(Debug, Clone, Args)]
pub struct SolveArgs {
    /// Subsequence constraint: an inline string or @file (repeatable).
    #[arg(long = "x", required = true, allow_hyphen_values = true)]
    pub x: Vec<String>,
    /// Substring constraint: an inline string or @file (repeatable).
    #[arg(long = "y", required = true, allow_hyphen_values = true)]
    pub y: Vec<String>,
    #[arg(long, value_enum, default_value_t = Format::Plain)]
    pub format: Format,
    /// Lowercase ASCII letters before solving.
    #[arg(long)]
    pub fold_case: bool,
    #[arg(long, value_enum, default_value_t = ModeArg::Rolling)]
    pub mode: ModeArg,
    #[arg(long, default_value_t = DEFAULT_MAX_CELLS)]
    pub max_cells: u64,
    #[arg(long)]
    pub json: bool,
    /// Print every interior cell (full mode only).
    #[arg(long)]
    pub dump_table: bool,
}

#[derive(Debug, Clone, Args)]
pub struct CheckArgs {
    #[arg(long, default_value_t = 100)]
    pub trials: u64,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    /// Number of X sequences per trial.
    #[arg(long, default_value_t = 2)]
    pub s: usize,
    /// Number of Y sequences per trial.
    #[arg(long, default_value_t = 2)]
    pub t: usize,
    #[arg(long, default_value_t = 6)]
    pub max_len_x: usize,
    #[arg(long, default_value_t = 6)]
    pub max_len_y: usize,
    #[arg(long, default_value_t = 2)]
    pub alphabet: u32,
    #[arg(long, value_enum, default_value_t = ModeArg::Rolling)]
    pub mode: ModeArg,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum BenchMode {
    Full,
    Rolling,
    Both,
}

#[derive(Debug, Clone, Args)]
pub struct BenchArgs {
    /// Axes, e.g. "s=1,2;t=1,2;m=8,16,32;n=8,16,32".
    #[arg(long)]
    pub grid: String,
    #[arg(long, value_enum, default_value_t = BenchMode::Both)]
    pub mode: BenchMode,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    #[arg(long, default_value_t = DEFAULT_MAX_CELLS)]
    pub max_cells: u64,
    /// Timed runs per point; the fastest is kept.
    #[arg(long, default_value_t = 3)]
    pub repeats: usize,
    #[arg(long, default_value_t = 4)]
    pub alphabet: u32,
    /// CSV destination; stdout when absent.
    #[arg(long)]
    pub out: Option<PathBuf>,
}

/// Fully resolved `solve` invocation.
#[derive(Debug, Clone)]
pub struct RunConfig {
    pub x_inputs: Vec<String>,
    pub y_inputs: Vec<String>,
    pub format: Format,
    pub fold_case: bool,
    pub mode: Mode,
    pub max_cells: u64,
    pub json: bool,
    pub dump_table: bool,
}

impl RunConfig {
    pub fn validate(&self) -> Result<(), CliError> {
        if self.x_inputs.is_empty() || self.y_inputs.is_empty() {
            return Err(CliError::Input(
                "at least one --x and one --y are required".into(),
            ));
        }
        if self.dump_table && self.mode != Mode::Full {
            return Err(CliError::Input("--dump-table requires --mode full".into()));
        }
        Ok(())
    }
}

impl From<SolveArgs> for RunConfig {
    fn from(a: SolveArgs) -> Self {
        RunConfig {
            x_inputs: a.x,
            y_inputs: a.y,
            format: a.format,
            fold_case: a.fold_case,
            mode: a.mode.into(),
            max_cells: a.max_cells,
            json: a.json,
            dump_table: a.dump_table,
        }
    }
}

/// The JSON document emitted by `solve --json`.
#[derive(Debug, Serialize)]
pub struct JsonReport {
    pub length: usize,
    pub witness: String,
    pub end_in_y1: usize,
    pub cells_computed: u64,
    pub elapsed_ms: f64,
    pub mode: &'static str,
}

impl JsonReport {
    pub fn new(solution: &Solution, mode: Mode) -> Self {
        JsonReport {
            length: solution.length,
            witness: solution.witness.to_string(),
            end_in_y1: solution.end_in_y1,
            cells_computed: solution.cells_computed,
            elapsed_ms: solution.elapsed().as_secs_f64() * 1e3,
            mode: mode.as_str(),
        }
    }
}

pub fn execute(
    command: Command,
    out: &mut dyn Write,
    diag: &mut dyn Write,
) -> Result<(), CliError> {
    match command {
        Command::Solve(args) => run(&args.into(), out, diag),
        Command::Check(args) => check(&args, out),
        Command::Bench(args) => bench(&args, out),
    }
}

pub fn run(config: &RunConfig, out: &mut dyn Write, diag: &mut dyn Write) -> Result<(), CliError> {
    config.validate()?;
    let xs = load_sequences(&config.x_inputs, config.format, config.fold_case)?;
    let ys = load_sequences(&config.y_inputs, config.format, config.fold_case)?;
    let instance = Instance::new(xs, ys)?;

    let (solution, table) = match config.mode {
        Mode::Full => solve_full(&instance, config.max_cells)?,
        Mode::Rolling => (
            solve(
                &instance,
                &SolveConfig {
                    mode: Mode::Rolling,
                    max_cells: config.max_cells,
                },
            )?,
            None,
        ),
    };

    if config.json {
        serde_json::to_writer(&mut *out, &JsonReport::new(&solution, config.mode))
            .map_err(io::Error::from)?;
        writeln!(out)?;
        if config.dump_table {
            dump_table(table.as_ref(), instance.s(), diag)?;
        }
    } else {
        writeln!(out, "length: {}", solution.length)?;
        write!(out, "witness: ")?;
        match solution.witness.to_bytes() {
            Some(bytes) => out.write_all(&bytes)?,
            None => write!(out, "{}", solution.witness)?,
        }
        writeln!(out)?;
        writeln!(out, "end_in_y1: {}", solution.end_in_y1)?;
        writeln!(out, "cells_computed: {}", solution.cells_computed)?;
        writeln!(
            out,
            "elapsed_ms: {:.3}",
            solution.elapsed().as_secs_f64() * 1e3
        )?;
        writeln!(out, "mode: {}", config.mode)?;
        if config.dump_table {
            dump_table(table.as_ref(), instance.s(), out)?;
        }
    }
    Ok(())
}

/// One `(i_1,…,i_s;j_1,…,j_t) value` line per interior cell, in iteration order.
fn dump_table(table: Option<&DpTable>, s: usize, out: &mut dyn Write) -> io::Result<()> {
    let Some(table) = table else {
        return Ok(());
    };
    for (idx, value) in table.interior() {
        let c = idx.coords();
        let join = |part: &[usize]| {
            part.iter()
                .map(ToString::to_string)
                .collect::<Vec<_>>()
                .join(",")
        };
        writeln!(out, "({};{}) {}", join(&c[..s]), join(&c[s..]), value)?;
    }
    Ok(())
}

/// Seed for trial `k` of a `check` run.
fn trial_seed(seed: u64, k: u64) -> u64 {
    seed.wrapping_mul(0x9e37_79b9_7f4a_7c15).wrapping_add(k)
}

pub fn check(args: &CheckArgs, out: &mut dyn Write) -> Result<(), CliError> {
    if args.max_len_y > ORACLE_GUARD {
        return Err(CliError::Input(format!(
            "--max-len-y {} exceeds the oracle limit of {ORACLE_GUARD}",
            args.max_len_y
        )));
    }
    let config = SolveConfig {
        mode: args.mode.into(),
        ..Default::default()
    };
    let mut agree = 0u64;
    let mut first_failure = None;
    for k in 0..args.trials {
        let instance = gen_random(&GenParams {
            s: args.s,
            t: args.t,
            len_range_x: 0..=args.max_len_x,
            len_range_y: 0..=args.max_len_y,
            alphabet_size: args.alphabet,
            seed: trial_seed(args.seed, k),
        })?;
        let got = solve(&instance, &config)?;
        let want = oracle_solve(&instance)?;
        if got.length == want.length && verify(&instance, &got.witness).passed() {
            agree += 1;
        } else if first_failure.is_none() {
            first_failure = Some((k, instance, got, want));
        }
    }
    writeln!(out, "{agree}/{} agree (seed {})", args.trials, args.seed)?;
    match first_failure {
        None => Ok(()),
        Some((k, instance, got, want)) => {
            writeln!(out, "first counterexample (trial {k}):")?;
            for (p, x) in instance.xs().iter().enumerate() {
                writeln!(out, "  X_{} = {x}", p + 1)?;
            }
            for (q, y) in instance.ys().iter().enumerate() {
                writeln!(out, "  Y_{} = {y}", q + 1)?;
            }
            writeln!(
                out,
                "  solver: length {} witness \"{}\"",
                got.length, got.witness
            )?;
            writeln!(
                out,
                "  oracle: length {} witness \"{}\"",
                want.length, want.witness
            )?;
            Err(CliError::Disagreement)
        }
    }
}

pub fn bench(args: &BenchArgs, out: &mut dyn Write) -> Result<(), CliError> {
    let grid: GridSpec = args.grid.parse().map_err(CliError::Input)?;
    let options = BenchOptions {
        modes: match args.mode {
            BenchMode::Full => vec![Mode::Full],
            BenchMode::Rolling => vec![Mode::Rolling],
            BenchMode::Both => vec![Mode::Full, Mode::Rolling],
        },
        seed: args.seed,
        max_cells: args.max_cells,
        alphabet_size: args.alphabet,
        repeats: args.repeats,
    };
    let records = run_grid(&grid, &options)?;
    let result = match &args.out {
        Some(path) => write_csv(&records, File::create(path)?),
        None => write_csv(&records, &mut *out),
    };
    result.map_err(|e| CliError::Io(io::Error::other(e)))
}
