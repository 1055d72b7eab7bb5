//! Browser bindings for the interactive demo in `www/`.
//!
//! Each export takes plain strings/numbers and returns a JSON string, so the
//! page needs no glue beyond `JSON.parse`. The `*_view` functions hold the
//! logic and are plain Rust so they can be tested natively.

use serde::Serialize;
use wasm_bindgen::prelude::*;

use mlcss_core::oracle::{gen_random, oracle_solve, verify, GenParams, ORACLE_GUARD};
use mlcss_core::{solve, solve_full, Instance, Mode, MultiIndex, Sequence, SolveConfig};

/// Cell budget for anything the page asks for.
pub const DEMO_MAX_CELLS: u64 = 4_000_000;

fn parse_lines(text: &str, side: &str) -> Result<Vec<Sequence>, String> {
    let seqs: Vec<Sequence> = text
        .lines()
        .map(str::trim)
        .filter(|l| !l.is_empty())
        .map(Sequence::from)
        .collect();
    if seqs.is_empty() {
        return Err(format!("enter at least one {side} sequence"));
    }
    Ok(seqs)
}

fn parse_instance(xs: &str, ys: &str) -> Result<Instance, String> {
    Instance::new(parse_lines(xs, "X")?, parse_lines(ys, "Y")?).map_err(|e| e.to_string())
}

#[derive(Debug, Serialize)]
pub struct SolveView {
    pub length: usize,
    pub witness: String,
    pub end_in_y1: usize,
    pub cells_computed: u64,
    pub resident_cells: u64,
    pub mode: &'static str,
}

pub fn solve_view(xs: &str, ys: &str, mode: &str) -> Result<SolveView, String> {
    let instance = parse_instance(xs, ys)?;
    let mode: Mode = mode.parse()?;
    let config = SolveConfig {
        mode,
        max_cells: DEMO_MAX_CELLS,
    };
    let sol = solve(&instance, &config).map_err(|e| e.to_string())?;
    Ok(SolveView {
        length: sol.length,
        witness: sol.witness.to_string(),
        end_in_y1: sol.end_in_y1,
        cells_computed: sol.cells_computed,
        resident_cells: sol.stats.resident_cells,
        mode: mode.as_str(),
    })
}

/// The `(i_1, j_1)` plane of the table with every other coordinate held at
/// its sequence's full length.
#[derive(Debug, Serialize)]
pub struct SliceView {
    pub x1: String,
    pub y1: String,
    pub rows: usize,
    pub cols: usize,
    /// Row-major `rows × cols` values for `i_1 = 1..=rows`, `j_1 = 1..=cols`.
    pub values: Vec<u32>,
    pub max: u32,
    /// Other coordinates, `(i_2, …, i_s; j_2, …, j_t)`.
    pub fixed_x: Vec<usize>,
    pub fixed_y: Vec<usize>,
}

pub fn slice_view(xs: &str, ys: &str) -> Result<SliceView, String> {
    let instance = parse_instance(xs, ys)?;
    let s = instance.s();
    let (_, table) = solve_full(&instance, DEMO_MAX_CELLS).map_err(|e| e.to_string())?;
    let x1 = &instance.xs()[0];
    let y1 = &instance.ys()[0];
    let (rows, cols) = (x1.len(), y1.len());
    let mut coords: Vec<usize> = instance
        .xs()
        .iter()
        .chain(instance.ys())
        .map(Sequence::len)
        .collect();
    let values = match &table {
        Some(table) => {
            let mut values = Vec::with_capacity(rows * cols);
            for i in 1..=rows {
                for j in 1..=cols {
                    coords[0] = i;
                    coords[s] = j;
                    values.push(
                        table
                            .get(&MultiIndex(coords.clone()))
                            .map_err(|e| e.to_string())?,
                    );
                }
            }
            values
        }
        None => vec![0; rows * cols],
    };
    Ok(SliceView {
        x1: x1.to_string(),
        y1: y1.to_string(),
        rows,
        cols,
        max: values.iter().copied().max().unwrap_or(0),
        values,
        fixed_x: coords[1..s].to_vec(),
        fixed_y: coords[s + 1..].to_vec(),
    })
}

#[derive(Debug, Serialize)]
pub struct Counterexample {
    pub xs: Vec<String>,
    pub ys: Vec<String>,
    pub solver_length: usize,
    pub oracle_length: usize,
    pub solver_witness: String,
    pub oracle_witness: String,
}

#[derive(Debug, Serialize)]
pub struct CheckView {
    pub trials: u32,
    pub agree: u32,
    pub counterexample: Option<Counterexample>,
}

pub fn check_view(
    trials: u32,
    seed: u64,
    s: usize,
    t: usize,
    max_len_x: usize,
    max_len_y: usize,
    alphabet: u32,
) -> Result<CheckView, String> {
    if max_len_y > ORACLE_GUARD {
        return Err(format!(
            "Y length is limited to {ORACLE_GUARD} for the oracle"
        ));
    }
    let mut agree = 0;
    let mut counterexample = None;
    for k in 0..trials {
        let instance = gen_random(&GenParams {
            s,
            t,
            len_range_x: 0..=max_len_x,
            len_range_y: 0..=max_len_y,
            alphabet_size: alphabet,
            seed: seed.wrapping_add(k as u64),
        })
        .map_err(|e| e.to_string())?;
        let config = SolveConfig {
            mode: Mode::Rolling,
            max_cells: DEMO_MAX_CELLS,
        };
        let got = solve(&instance, &config).map_err(|e| e.to_string())?;
        let want = oracle_solve(&instance).map_err(|e| e.to_string())?;
        if got.length == want.length && verify(&instance, &got.witness).passed() {
            agree += 1;
        } else if counterexample.is_none() {
            counterexample = Some(Counterexample {
                xs: instance.xs().iter().map(ToString::to_string).collect(),
                ys: instance.ys().iter().map(ToString::to_string).collect(),
                solver_length: got.length,
                oracle_length: want.length,
                solver_witness: got.witness.to_string(),
                oracle_witness: want.witness.to_string(),
            });
        }
    }
    Ok(CheckView {
        trials,
        agree,
        counterexample,
    })
}

fn to_json<T: Serialize>(view: Result<T, String>) -> Result<String, JsError> {
    let view = view.map_err(|e| JsError::new(&e))?;
    serde_json::to_string(&view).map_err(|e| JsError::new(&e.to_string()))
}

/// Solves the instance given as newline-separated X and Y sequences.
#[wasm_bindgen]
pub fn solve_instance(xs: &str, ys: &str, mode: &str) -> Result<String, JsError> {
    to_json(solve_view(xs, ys, mode))
}

#[wasm_bindgen]
pub fn table_slice(xs: &str, ys: &str) -> Result<String, JsError> {
    to_json(slice_view(xs, ys))
}

#[wasm_bindgen]
pub fn differential_check(
    trials: u32,
    seed: u32,
    s: u32,
    t: u32,
    max_len_x: u32,
    max_len_y: u32,
    alphabet: u32,
) -> Result<String, JsError> {
    to_json(check_view(
        trials,
        seed as u64,
        s as usize,
        t as usize,
        max_len_x as usize,
        max_len_y as usize,
        alphabet,
    ))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn solve_from_lines() {
        let v = solve_view("abcd\nbcd\n", "bdc\n  bdd  \n\n", "rolling").unwrap();
        assert_eq!((v.length, v.witness.as_str(), v.mode), (2, "bd", "rolling"));
        assert_eq!(v.cells_computed, 4 * 3 * 3 * 3);
        assert!(solve_view("", "ab", "full").is_err());
        assert!(solve_view("ab", "ab", "sideways").is_err());
    }

    #[test]
    fn slice_of_single_pair() {
        let v = slice_view("abc", "acb").unwrap();
        assert_eq!((v.rows, v.cols, v.max), (3, 3, 2));
        assert_eq!(v.values, vec![1, 0, 0, 1, 0, 1, 1, 2, 1]);
        assert!(v.fixed_x.is_empty() && v.fixed_y.is_empty());
    }

    #[test]
    fn slice_holds_other_coordinates_at_full_length() {
        let v = slice_view("abc\nac", "acb\nxac").unwrap();
        assert_eq!((v.fixed_x.clone(), v.fixed_y.clone()), (vec![2], vec![3]));
        // (i_1, j_1) = (3, 2) is "ac" against the full second X and Y.
        assert_eq!(v.values[2 * 3 + 1], 2);
    }

    #[test]
    fn check_agrees() {
        let v = check_view(50, 9, 2, 2, 6, 6, 2).unwrap();
        assert_eq!((v.trials, v.agree), (50, 50));
        assert!(v.counterexample.is_none());
        assert!(check_view(1, 0, 1, 1, 4, 65, 2).is_err());
    }
}
