use mlcss_core::dispatch::branched_table;
use mlcss_core::oracle::{gen_planted, gen_random, oracle_solve, verify, GenParams};
use mlcss_core::{solve, solve_full, Instance, Mode, MultiIndex, SolveConfig, DEFAULT_MAX_CELLS};
use proptest::prelude::*;

fn inst(xs: &[&str], ys: &[&str]) -> Instance {
    Instance::from_strs(xs, ys).unwrap()
}

fn params(s: usize, t: usize, max_x: usize, max_y: usize, alphabet: u32, seed: u64) -> GenParams {
    GenParams {
        s,
        t,
        len_range_x: 0..=max_x,
        len_range_y: 0..=max_y,
        alphabet_size: alphabet,
        seed,
    }
}

// Expected values below were produced by the brute-force oracle and frozen.
#[test]
fn oracle_frozen_examples() {
    let sol = oracle_solve(&inst(&["abc"], &["acb"])).unwrap();
    assert_eq!(
        (sol.length, sol.witness.to_string(), sol.end_in_y1),
        (2, "ac".into(), 2)
    );

    let sol = oracle_solve(&inst(&["abcd", "bcd"], &["bdc", "bdd"])).unwrap();
    assert_eq!((sol.length, sol.witness.to_string()), (2, "bd".into()));

    let sol = oracle_solve(&inst(&["abab"], &["ba"])).unwrap();
    assert_eq!((sol.length, sol.witness.to_string()), (2, "ba".into()));
}

#[test]
fn solver_matches_frozen_examples() {
    let sol = solve(&inst(&["abc"], &["acb"]), &SolveConfig::default()).unwrap();
    assert_eq!(
        (sol.length, sol.witness.to_string(), sol.end_in_y1),
        (2, "ac".into(), 2)
    );
    let sol = solve(
        &inst(&["abcd", "bcd"], &["bdc", "bdd"]),
        &SolveConfig::default(),
    )
    .unwrap();
    assert_eq!((sol.length, sol.witness.to_string()), (2, "bd".into()));
    let sol = solve(&inst(&["abab"], &["ba"]), &SolveConfig::default()).unwrap();
    assert_eq!((sol.length, sol.witness.to_string()), (2, "ba".into()));
}

#[test]
fn seeded_differential_sweep() {
    for seed in 0..600 {
        let s = 1 + (seed % 3) as usize;
        let t = 1 + (seed / 3 % 3) as usize;
        let alphabet = 1 + (seed / 9 % 3) as u32;
        let p = params(s, t, 7, 6, alphabet, seed);
        let instance = gen_random(&p).unwrap();
        let want = oracle_solve(&instance).unwrap();
        let got = solve(&instance, &SolveConfig::default()).unwrap();
        assert_eq!(got.length, want.length, "seed {seed}: {instance:?}");
        assert!(verify(&instance, &got.witness).passed(), "seed {seed}");
        assert!(verify(&instance, &want.witness).passed(), "seed {seed}");
    }
}

#[test]
fn planted_lower_bound() {
    for seed in 0..100 {
        let planted_len = 1 + (seed % 5) as usize;
        let p = GenParams {
            s: 2,
            t: 2,
            len_range_x: 5..=9,
            len_range_y: 5..=8,
            alphabet_size: 4,
            seed,
        };
        let planted = gen_planted(&p, planted_len).unwrap();
        let sol = solve(&planted.instance, &SolveConfig::default()).unwrap();
        assert!(sol.length >= planted_len, "seed {seed}");
        assert!(verify(&planted.instance, &sol.witness).passed());
    }
}

#[test]
fn unary_alphabet_closed_form() {
    for seed in 0..40 {
        let p = params(
            1 + (seed % 3) as usize,
            1 + (seed % 2) as usize,
            9,
            9,
            1,
            seed,
        );
        let instance = gen_random(&p).unwrap();
        let min_len = instance
            .xs()
            .iter()
            .chain(instance.ys())
            .map(|q| q.len())
            .min()
            .unwrap();
        assert_eq!(
            solve(&instance, &SolveConfig::default()).unwrap().length,
            min_len
        );
    }
}

#[test]
fn dispatch_table_matches_solver_table() {
    for seed in 0..60 {
        let s = 1 + (seed % 3) as usize;
        let t = 1 + (seed / 3 % 2) as usize;
        let instance = gen_random(&params(s, t, 5, 5, 2, seed)).unwrap();
        let explicit = branched_table(&instance).unwrap();
        match solve_full(&instance, DEFAULT_MAX_CELLS).unwrap().1 {
            Some(table) => assert_eq!(table.cells(), explicit.cells(), "seed {seed}"),
            None => assert!(explicit.cells().iter().all(|&v| v == 0)),
        }
    }
}

#[test]
fn table_invariants() {
    for seed in 0..40 {
        let s = 1 + (seed % 2) as usize;
        let t = 1 + (seed / 2 % 2) as usize;
        let instance = gen_random(&params(s, t, 6, 6, 2, seed)).unwrap();
        let Some(table) = solve_full(&instance, DEFAULT_MAX_CELLS).unwrap().1 else {
            continue;
        };
        let dims = table.dims().to_vec();
        for off in 0..table.cells().len() {
            let idx = mlcss_core::unflatten(off, table.strides()).unwrap();
            let v = table.cells()[off] as usize;
            if !idx.is_interior() {
                assert_eq!(v, 0);
                continue;
            }
            assert!(v <= *idx.coords().iter().min().unwrap());
            for p in 0..s {
                let mut next = idx.coords().to_vec();
                next[p] += 1;
                if next[p] < dims[p] {
                    assert!(table.get(&MultiIndex(next)).unwrap() as usize >= v);
                }
            }
        }
    }
}

fn small_instance() -> impl Strategy<Value = Instance> {
    let seq = |max: usize| {
        prop::collection::vec(0u8..3, 0..=max).prop_map(|v| {
            mlcss_core::Sequence::from_bytes(&v.iter().map(|b| b'a' + b).collect::<Vec<_>>())
        })
    };
    (
        prop::collection::vec(seq(7), 1..=3),
        prop::collection::vec(seq(6), 1..=3),
    )
        .prop_map(|(xs, ys)| Instance::new(xs, ys).unwrap())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn agrees_with_oracle(instance in small_instance()) {
        let got = solve(&instance, &SolveConfig::default()).unwrap();
        let want = oracle_solve(&instance).unwrap();
        prop_assert_eq!(got.length, want.length);
        prop_assert!(verify(&instance, &got.witness).passed());
        prop_assert_eq!(got.witness.len(), got.length);
    }

    #[test]
    fn modes_agree(instance in small_instance()) {
        let full = solve(&instance, &SolveConfig { mode: Mode::Full, ..Default::default() }).unwrap();
        let rolling = solve(&instance, &SolveConfig { mode: Mode::Rolling, ..Default::default() }).unwrap();
        prop_assert_eq!(full, rolling);
    }

    #[test]
    fn extra_constraints_never_help(instance in small_instance(), extra in prop::collection::vec(0u8..3, 0..6), as_x: bool) {
        let base = solve(&instance, &SolveConfig::default()).unwrap().length;
        let extra = mlcss_core::Sequence::from_bytes(&extra.iter().map(|b| b'a' + b).collect::<Vec<_>>());
        let (mut xs, mut ys) = (instance.xs().to_vec(), instance.ys().to_vec());
        if as_x { xs.push(extra) } else { ys.push(extra) }
        let more = solve(&Instance::new(xs, ys).unwrap(), &SolveConfig::default()).unwrap().length;
        prop_assert!(more <= base);
    }

    #[test]
    fn duplicates_change_nothing(instance in small_instance(), pick: prop::sample::Index) {
        let base = solve(&instance, &SolveConfig::default()).unwrap().length;
        let mut xs = instance.xs().to_vec();
        xs.push(xs[pick.index(xs.len())].clone());
        let dup_x = Instance::new(xs, instance.ys().to_vec()).unwrap();
        prop_assert_eq!(solve(&dup_x, &SolveConfig::default()).unwrap().length, base);
        let mut ys = instance.ys().to_vec();
        ys.push(ys[pick.index(ys.len())].clone());
        let dup_y = Instance::new(instance.xs().to_vec(), ys).unwrap();
        prop_assert_eq!(solve(&dup_y, &SolveConfig::default()).unwrap().length, base);
    }

    #[test]
    fn permutation_invariant(instance in small_instance()) {
        let base = solve(&instance, &SolveConfig::default()).unwrap().length;
        let mut xs = instance.xs().to_vec();
        let mut ys = instance.ys().to_vec();
        xs.reverse();
        ys.rotate_left(1);
        let permuted = Instance::new(xs, ys).unwrap();
        prop_assert_eq!(solve(&permuted, &SolveConfig::default()).unwrap().length, base);
    }

    #[test]
    fn witness_is_the_recorded_y1_slice(instance in small_instance()) {
        let sol = solve(&instance, &SolveConfig::default()).unwrap();
        let rebuilt = mlcss_core::reconstruct(&instance.ys()[0], sol.end_in_y1, sol.length).unwrap();
        prop_assert_eq!(rebuilt, sol.witness);
        prop_assert_eq!(sol.end_in_y1 == 0, sol.length == 0);
    }
}
