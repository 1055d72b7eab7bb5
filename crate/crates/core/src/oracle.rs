//! Brute-force reference solver, answer verifier and random instance
//! generators. Nothing here touches the table recurrence.

use std::ops::RangeInclusive;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::dp::{Solution, SolveStats};
use crate::error::{contract, Error, Result};
use crate::sequence::{Instance, Sequence, Symbol};

/// Longest shortest-Y the oracle will enumerate.
pub const ORACLE_GUARD: usize = 64;

/// Greedy left-to-right embedding.
pub fn is_subsequence(needle: &[Symbol], haystack: &[Symbol]) -> bool {
    let mut rest = haystack.iter();
    needle.iter().all(|c| rest.any(|h| h == c))
}

pub fn occurs_as_substring(needle: &[Symbol], haystack: &[Symbol]) -> bool {
    find_substring(needle, haystack).is_some()
}

/// Start offset (0-indexed) of the first occurrence of `needle`.
fn find_substring(needle: &[Symbol], haystack: &[Symbol]) -> Option<usize> {
    if needle.is_empty() {
        return Some(0);
    }
    haystack.windows(needle.len()).position(|w| w == needle)
}

/// Exhaustive search over the substrings of a shortest Y sequence.
///
/// Among the longest qualifying candidates the one ending earliest in that
/// sequence wins. `end_in_y1` is the end of the candidate's first occurrence
/// in `Y_1`; `cells_computed` counts candidates examined.
pub fn oracle_solve(instance: &Instance) -> Result<Solution> {
    let shortest = instance
        .ys()
        .iter()
        .min_by_key(|y| y.len())
        .expect("instance has at least one Y sequence");
    if shortest.len() > ORACLE_GUARD {
        return Err(Error::OracleGuard {
            len: shortest.len(),
            limit: ORACLE_GUARD,
        });
    }
    let started = crate::clock::Stopwatch::start();
    let source = shortest.symbols();
    let mut examined = 0u64;
    for len in (1..=source.len()).rev() {
        for end in len..=source.len() {
            examined += 1;
            let candidate = &source[end - len..end];
            if qualifies(instance, candidate) {
                let y1 = instance.ys()[0].symbols();
                let start =
                    find_substring(candidate, y1).expect("qualifying candidate occurs in Y_1");
                return Ok(Solution {
                    length: len,
                    witness: Sequence::new(candidate.to_vec()),
                    end_in_y1: start + len,
                    cells_computed: examined,
                    stats: SolveStats {
                        elapsed: started.elapsed(),
                        resident_cells: 0,
                    },
                });
            }
        }
    }
    let mut empty = Solution::empty();
    empty.cells_computed = examined;
    Ok(empty)
}

fn qualifies(instance: &Instance, candidate: &[Symbol]) -> bool {
    instance
        .ys()
        .iter()
        .all(|y| occurs_as_substring(candidate, y.symbols()))
        && instance
            .xs()
            .iter()
            .all(|x| is_subsequence(candidate, x.symbols()))
}

/// Per-sequence outcome of checking a candidate answer.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Verification {
    /// `subsequence_of_x[p]` is true when the candidate embeds in `X_{p+1}`.
    pub subsequence_of_x: Vec<bool>,
    /// `substring_of_y[q]` is true when the candidate occurs in `Y_{q+1}`.
    pub substring_of_y: Vec<bool>,
}

impl Verification {
    pub fn passed(&self) -> bool {
        self.subsequence_of_x
            .iter()
            .chain(&self.substring_of_y)
            .all(|&ok| ok)
    }

    /// 1-indexed X positions that failed.
    pub fn failed_x(&self) -> Vec<usize> {
        failures(&self.subsequence_of_x)
    }

    /// 1-indexed Y positions that failed.
    pub fn failed_y(&self) -> Vec<usize> {
        failures(&self.substring_of_y)
    }
}

fn failures(results: &[bool]) -> Vec<usize> {
    results
        .iter()
        .enumerate()
        .filter(|(_, ok)| !**ok)
        .map(|(k, _)| k + 1)
        .collect()
}

pub fn verify(instance: &Instance, candidate: &Sequence) -> Verification {
    let c = candidate.symbols();
    Verification {
        subsequence_of_x: instance
            .xs()
            .iter()
            .map(|x| is_subsequence(c, x.symbols()))
            .collect(),
        substring_of_y: instance
            .ys()
            .iter()
            .map(|y| occurs_as_substring(c, y.symbols()))
            .collect(),
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GenParams {
    pub s: usize,
    pub t: usize,
    pub len_range_x: RangeInclusive<usize>,
    pub len_range_y: RangeInclusive<usize>,
    pub alphabet_size: u32,
    pub seed: u64,
}

impl GenParams {
    pub fn validate(&self) -> Result<()> {
        if self.s == 0 || self.t == 0 {
            return Err(contract("s and t must both be at least 1"));
        }
        if self.len_range_x.is_empty() || self.len_range_y.is_empty() {
            return Err(contract("length ranges must be non-empty"));
        }
        if self.alphabet_size == 0 {
            return Err(contract("alphabet must have at least one symbol"));
        }
        Ok(())
    }
}

/// Alphabet symbol `k`, counting from `'a'`.
pub fn alphabet_symbol(k: u32) -> Symbol {
    Symbol(b'a' as u32 + k)
}

fn random_symbol(rng: &mut ChaCha8Rng, alphabet_size: u32) -> Symbol {
    alphabet_symbol(rng.gen_range(0..alphabet_size))
}

fn random_sequence(rng: &mut ChaCha8Rng, len: usize, alphabet_size: u32) -> Sequence {
    Sequence::new(
        (0..len)
            .map(|_| random_symbol(rng, alphabet_size))
            .collect(),
    )
}

/// Deterministic random instance for `params` (including its seed).
pub fn gen_random(params: &GenParams) -> Result<Instance> {
    params.validate()?;
    let mut rng = ChaCha8Rng::seed_from_u64(params.seed);
    let xs = (0..params.s)
        .map(|_| {
            let len = rng.gen_range(params.len_range_x.clone());
            random_sequence(&mut rng, len, params.alphabet_size)
        })
        .collect();
    let ys = (0..params.t)
        .map(|_| {
            let len = rng.gen_range(params.len_range_y.clone());
            random_sequence(&mut rng, len, params.alphabet_size)
        })
        .collect();
    Instance::new(xs, ys)
}

/// An instance built around a known common string.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PlantedInstance {
    pub instance: Instance,
    pub planted: Sequence,
}

/// Random instance guaranteed to admit `planted_len` as a feasible length:
/// each X is the planted string with symbols inserted at random positions,
/// each Y is the planted string with random flanks.
pub fn gen_planted(params: &GenParams, planted_len: usize) -> Result<PlantedInstance> {
    params.validate()?;
    let min_len = (*params.len_range_x.start()).min(*params.len_range_y.start());
    if planted_len > min_len {
        return Err(contract(format!(
            "planted length {planted_len} exceeds the shortest allowed sequence length {min_len}"
        )));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(params.seed);
    let planted = random_sequence(&mut rng, planted_len, params.alphabet_size);

    let xs = (0..params.s)
        .map(|_| {
            let len = rng.gen_range(params.len_range_x.clone());
            let mut symbols = planted.symbols().to_vec();
            for _ in planted_len..len {
                let at = rng.gen_range(0..=symbols.len());
                symbols.insert(at, random_symbol(&mut rng, params.alphabet_size));
            }
            Sequence::new(symbols)
        })
        .collect();
    let ys = (0..params.t)
        .map(|_| {
            let len = rng.gen_range(params.len_range_y.clone());
            let left = rng.gen_range(0..=len - planted_len);
            let mut symbols = random_sequence(&mut rng, left, params.alphabet_size)
                .symbols()
                .to_vec();
            symbols.extend_from_slice(planted.symbols());
            let right = random_sequence(&mut rng, len - planted_len - left, params.alphabet_size);
            symbols.extend_from_slice(right.symbols());
            Sequence::new(symbols)
        })
        .collect();
    Ok(PlantedInstance {
        instance: Instance::new(xs, ys)?,
        planted,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn seq(s: &str) -> Sequence {
        Sequence::from(s)
    }

    fn params(
        s: usize,
        t: usize,
        lx: RangeInclusive<usize>,
        ly: RangeInclusive<usize>,
        a: u32,
        seed: u64,
    ) -> GenParams {
        GenParams {
            s,
            t,
            len_range_x: lx,
            len_range_y: ly,
            alphabet_size: a,
            seed,
        }
    }

    #[test]
    fn subsequence_examples() {
        assert!(is_subsequence(seq("ace").symbols(), seq("abcde").symbols()));
        assert!(is_subsequence(&[], seq("xyz").symbols()));
        assert!(!is_subsequence(seq("ba").symbols(), seq("ab").symbols()));
        assert!(!is_subsequence(seq("aa").symbols(), seq("a").symbols()));
    }

    #[test]
    fn substring_examples() {
        assert!(occurs_as_substring(
            seq("bd").symbols(),
            seq("bdc").symbols()
        ));
        assert!(occurs_as_substring(&[], seq("x").symbols()));
        assert!(occurs_as_substring(&[], &[]));
        assert!(!occurs_as_substring(
            seq("bc").symbols(),
            seq("bdc").symbols()
        ));
        assert!(!occurs_as_substring(
            seq("abc").symbols(),
            seq("ab").symbols()
        ));
    }

    #[test]
    fn oracle_examples() {
        let sol = oracle_solve(&Instance::from_strs(&["abab"], &["ba"]).unwrap()).unwrap();
        assert_eq!((sol.length, sol.witness.to_string()), (2, "ba".into()));

        let sol = oracle_solve(&Instance::from_strs(&["abc", "cba"], &["abc"]).unwrap()).unwrap();
        assert_eq!(sol.length, 1);

        let sol = oracle_solve(&Instance::from_strs(&["", "abc"], &["abc"]).unwrap()).unwrap();
        assert_eq!(sol.length, 0);
        let sol = oracle_solve(&Instance::from_strs(&["abc"], &["abc", ""]).unwrap()).unwrap();
        assert_eq!((sol.length, sol.end_in_y1), (0, 0));
    }

    #[test]
    fn oracle_tie_break_and_y1_position() {
        // Enumerates "cab" (the shortest Y); "c", "a", "b" all qualify and "c" ends first.
        let inst = Instance::from_strs(&["abc"], &["xxbxaxc", "cab"]).unwrap();
        let sol = oracle_solve(&inst).unwrap();
        assert_eq!(
            (sol.length, sol.witness.to_string(), sol.end_in_y1),
            (1, "c".into(), 7)
        );
    }

    #[test]
    fn oracle_guard() {
        let long = "a".repeat(ORACLE_GUARD + 1);
        let inst = Instance::from_strs(&["a"], &[&long]).unwrap();
        assert!(matches!(
            oracle_solve(&inst),
            Err(Error::OracleGuard { .. })
        ));
        let ok = "a".repeat(ORACLE_GUARD);
        let inst = Instance::from_strs(&["a"], &[&long, &ok]).unwrap();
        assert_eq!(oracle_solve(&inst).unwrap().length, 1);
    }

    #[test]
    fn verify_examples() {
        let inst = Instance::from_strs(&["ab"], &["ab"]).unwrap();
        assert!(verify(&inst, &seq("ab")).passed());
        let report = verify(&inst, &seq("ba"));
        assert!(!report.passed());
        assert_eq!(report.failed_x(), vec![1]);
        assert!(verify(&inst, &Sequence::default()).passed());
        let inst = Instance::from_strs(&["", "q"], &[""]).unwrap();
        assert!(verify(&inst, &Sequence::default()).passed());
    }

    #[test]
    fn generation_is_deterministic() {
        let p = params(3, 2, 0..=10, 0..=8, 3, 99);
        assert_eq!(gen_random(&p).unwrap(), gen_random(&p).unwrap());
        let q = GenParams {
            seed: 100,
            ..p.clone()
        };
        assert_ne!(gen_random(&p).unwrap(), gen_random(&q).unwrap());
    }

    #[test]
    fn degenerate_ranges() {
        let inst = gen_random(&params(2, 3, 0..=0, 0..=0, 4, 1)).unwrap();
        assert!(inst.xs().iter().chain(inst.ys()).all(Sequence::is_empty));

        let inst = gen_random(&params(2, 2, 3..=5, 2..=6, 1, 5)).unwrap();
        let a = alphabet_symbol(0);
        assert!(inst
            .xs()
            .iter()
            .chain(inst.ys())
            .all(|q| q.symbols().iter().all(|&c| c == a)));
    }

    #[test]
    fn invalid_params() {
        assert!(gen_random(&params(0, 1, 0..=1, 0..=1, 2, 0)).is_err());
        assert!(gen_random(&params(1, 1, 0..=1, 0..=1, 0, 0)).is_err());
        #[allow(clippy::reversed_empty_ranges)]
        let empty = params(1, 1, 3..=1, 0..=1, 2, 0);
        assert!(gen_random(&empty).is_err());
    }

    #[test]
    fn planted_string_is_feasible() {
        for seed in 0..50 {
            let p = params(3, 3, 5..=10, 5..=8, 3, seed);
            let planted = gen_planted(&p, 5).unwrap();
            assert_eq!(planted.planted.len(), 5);
            assert!(verify(&planted.instance, &planted.planted).passed());
            for q in planted.instance.xs() {
                assert!((5..=10).contains(&q.len()));
            }
            for q in planted.instance.ys() {
                assert!((5..=8).contains(&q.len()));
            }
        }
    }

    #[test]
    fn planted_length_must_fit() {
        assert!(gen_planted(&params(1, 1, 3..=5, 2..=5, 2, 0), 3).is_err());
        let zero = gen_planted(&params(1, 1, 0..=5, 0..=5, 2, 0), 0).unwrap();
        assert!(zero.planted.is_empty());
    }
}
