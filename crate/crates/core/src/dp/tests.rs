use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::*;

/// Every point of the box, for brute-force comparisons.
fn box_points(lower: &[i64], upper: &[i64]) -> Vec<Vec<i64>> {
    let mut out = vec![Vec::new()];
    for (&l, &u) in lower.iter().zip(upper) {
        out = out
            .into_iter()
            .flat_map(|p| {
                (l..=u).map(move |v| {
                    let mut q = p.clone();
                    q.push(v);
                    q
                })
            })
            .collect();
    }
    out
}

fn brute_optimum(inst: &IlpInstance) -> Option<i64> {
    box_points(&inst.lower, &inst.upper)
        .into_iter()
        .filter(|x| inst.a.mul_vec(x).unwrap() == inst.b)
        .map(|x| inst.objective_value(&x).unwrap())
        .max()
}

fn ilp(rows: Vec<Vec<i64>>, b: Vec<i64>, l: Vec<i64>, u: Vec<i64>, c: Option<Vec<i64>>) -> IlpInstance {
    IlpInstance::from_rows(rows, b, l, u, c).unwrap()
}

#[test]
fn relevance_bound_examples() {
    assert_eq!(relevance_bound(0, 1, 2, 2).unwrap(), 16);
    assert_eq!(relevance_bound(3, 2, 3, 1).unwrap(), 192);
    assert!(relevance_bound(61, 2, 2, 2).is_err());
}

#[test]
fn relevant_count_odd_values() {
    assert_eq!(relevant_count(0, &[3], 16), 16);
    let direct = (-16i64..=16).filter(|v| v.rem_euclid(2) == 1).count() as u128;
    assert_eq!(relevant_count(0, &[3], 16), direct);
    // two dimensions, modulus 4
    let direct = (-10i64..=10).filter(|v| v.rem_euclid(4) == 2).count()
        * (-10i64..=10).filter(|v| v.rem_euclid(4) == 3).count();
    assert_eq!(relevant_count(1, &[-2, 7], 10), direct as u128);
}

#[test]
fn base_state_holds_only_zero() {
    let s = init_level(2, 3);
    assert_eq!(s.entries(), vec![(vec![0, 0], 0)]);
    assert_eq!(s.level(), None);
    assert_eq!(s.increment(&[0, 0]), Some(vec![0, 0, 0]));
}

#[test]
fn three_in_two_levels() {
    let inst = ilp(vec![vec![1]], vec![3], vec![0], vec![3], None);
    let problem = DpProblem::new(&inst).unwrap();
    let bounds = leveled_bounds(&inst).unwrap();
    assert_eq!(bounds.levels, vec![vec![1], vec![1]]);
    let (states, _) = run_levels(&problem, &bounds, &SolveOptions::default()).unwrap();
    let keys = |s: &LevelState| s.entries().into_iter().map(|(k, _)| k[0]).collect::<Vec<_>>();
    assert_eq!(keys(&states[1]), vec![1]);
    assert!(states[2].get(&[3]).is_some());
    assert_eq!(states[1].increment(&[1]), Some(vec![1]));
    assert_eq!(states[2].increment(&[3]), Some(vec![1]));
    let x = reconstruct(&states, &problem.a, &problem.b).unwrap();
    assert_eq!(x.values, vec![3]);
}

#[test]
fn zero_caps_only_filter() {
    let inst = ilp(vec![vec![1, 1]], vec![2], vec![0, 0], vec![3, 0], None);
    let problem = DpProblem::new(&inst).unwrap();
    let bounds = leveled_bounds(&inst).unwrap();
    let (states, _) = run_levels(&problem, &bounds, &SolveOptions::default()).unwrap();
    // column 1 has no steps at any level, so only column 0 contributes
    let (after, _) = advance_level(&states[0], &problem, &[0, 0], &SolveOptions::default()).unwrap();
    assert_eq!(after.entries(), vec![(vec![0], 0)]);
}

#[test]
fn missing_key_is_an_error() {
    let inst = ilp(vec![vec![2]], vec![1], vec![0], vec![5], None);
    let problem = DpProblem::new(&inst).unwrap();
    let bounds = leveled_bounds(&inst).unwrap();
    let (states, _) = run_levels(&problem, &bounds, &SolveOptions::default()).unwrap();
    assert!(matches!(
        reconstruct(&states, &problem.a, &problem.b),
        Err(Error::Invariant(_))
    ));
}

#[test]
fn unique_point() {
    let r = solve(&ilp(vec![vec![2, 1]], vec![3], vec![0, 0], vec![1, 1], Some(vec![1, 1]))).unwrap();
    assert_eq!(r.value(), Some(2));
    assert_eq!(r.witness().unwrap().values, vec![1, 1]);
}

#[test]
fn parity_infeasible() {
    let r = solve(&ilp(vec![vec![2]], vec![1], vec![0], vec![5], None)).unwrap();
    assert_eq!(r.status, SolveStatus::Infeasible);
}

#[test]
fn forced_coordinate() {
    let r = solve(&ilp(vec![vec![1]], vec![7], vec![0], vec![10], Some(vec![-1]))).unwrap();
    assert_eq!(r.value(), Some(-7));
    assert_eq!(r.witness().unwrap().values, vec![7]);
}

#[test]
fn negative_lower_bounds_and_duplicates() {
    let inst = ilp(
        vec![vec![1, 1, -1], vec![0, 0, 2]],
        vec![1, 2],
        vec![-3, -3, -2],
        vec![3, 3, 4],
        Some(vec![2, 2, 1]),
    );
    let r = solve(&inst).unwrap();
    assert_eq!(r.value(), brute_optimum(&inst));
    assert_eq!(r.stats.distinct_columns, 2);
    // greedy expansion fills the first merged member first
    assert_eq!(r.witness().unwrap().values, vec![3, -1, 1]);
}

#[test]
fn large_bounds_add_levels_only() {
    let small = ilp(vec![vec![3, -2]], vec![1], vec![0, 0], vec![1000, 1000], Some(vec![1, 1]));
    let big = ilp(vec![vec![3, -2]], vec![1], vec![0, 0], vec![1 << 20, 1 << 20], Some(vec![1, 1]));
    let (rs, rb) = (solve(&small).unwrap(), solve(&big).unwrap());
    assert_eq!(rs.stats.levels.len(), 10);
    assert_eq!(rb.stats.levels.len(), 21);
    // 3x − 2y = 1 maximizing x + y: x = 1 + 2t, y = 1 + 3t
    assert_eq!(rs.value(), Some(2 + 5 * 333));
    assert_eq!(rb.value(), Some(2 + 5 * ((1 << 20) - 1) / 3));
}

#[test]
fn empty_rows_and_columns() {
    let inst = IlpInstance::new(Matrix::zeros(0, 2), vec![], vec![0, 0], vec![2, 3], Some(vec![1, -1]))
        .unwrap();
    assert_eq!(solve(&inst).unwrap().value(), Some(2));
    let inst = IlpInstance::new(Matrix::zeros(1, 0), vec![0], vec![], vec![], None).unwrap();
    assert_eq!(solve(&inst).unwrap().value(), Some(0));
    let inst = IlpInstance::new(Matrix::zeros(1, 0), vec![4], vec![], vec![], None).unwrap();
    assert!(!solve(&inst).unwrap().is_feasible());
}

#[test]
fn objective_range_guard_is_capacity() {
    let inst = ilp(vec![vec![1]], vec![0], vec![0], vec![1 << 40], Some(vec![1 << 30]));
    assert!(solve(&inst).unwrap_err().is_capacity());
}

fn random_instance(rng: &mut ChaCha8Rng) -> IlpInstance {
    let m = rng.gen_range(1..=3);
    let n = rng.gen_range(1..=5);
    let delta = rng.gen_range(1..=3);
    let rows: Vec<Vec<i64>> = (0..m)
        .map(|_| (0..n).map(|_| rng.gen_range(-delta..=delta)).collect())
        .collect();
    let upper: Vec<i64> = (0..n).map(|_| rng.gen_range(0..=6)).collect();
    let x: Vec<i64> = upper.iter().map(|&u| rng.gen_range(0..=u)).collect();
    let mut b: Vec<i64> = rows
        .iter()
        .map(|r| r.iter().zip(&x).map(|(a, v)| a * v).sum())
        .collect();
    if rng.gen_bool(0.3) {
        b[0] += rng.gen_range(-2..=2);
    }
    let c = (0..n).map(|_| rng.gen_range(-5..=5)).collect();
    ilp(rows, b, vec![0; n], upper, Some(c))
}

#[test]
fn matches_enumeration_on_random_instances() {
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    for _ in 0..300 {
        let inst = random_instance(&mut rng);
        let r = solve(&inst).unwrap();
        assert_eq!(r.value(), brute_optimum(&inst), "{inst:?}");
        for s in &r.stats.levels {
            assert!(s.keys as u128 <= s.bound);
        }
    }
}

#[test]
fn parallel_tables_are_identical() {
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    for _ in 0..60 {
        let inst = random_instance(&mut rng);
        let problem = DpProblem::new(&inst).unwrap();
        let bounds = leveled_bounds(&inst).unwrap();
        let (serial, s1) = run_levels(&problem, &bounds, &SolveOptions { threads: 1 }).unwrap();
        let (par, s2) = run_levels(&problem, &bounds, &SolveOptions { threads: 4 }).unwrap();
        assert_eq!(s1, s2);
        for (a, b) in serial.iter().zip(&par) {
            assert_eq!(a.entries(), b.entries());
            for (key, _) in a.entries() {
                assert_eq!(a.increment(&key), b.increment(&key));
            }
        }
        assert_eq!(
            solve_with(&inst, &SolveOptions { threads: 1 }).unwrap(),
            solve_with(&inst, &SolveOptions { threads: 3 }).unwrap()
        );
    }
}

/// Level tables hold exactly the best value over all increments chosen so far.
#[test]
fn level_tables_match_partial_sums() {
    let mut rng = ChaCha8Rng::seed_from_u64(23);
    for _ in 0..40 {
        let mut inst = random_instance(&mut rng);
        inst.upper.iter_mut().for_each(|u| *u = (*u).min(5));
        let (inst, _) = merge_identical_columns(&inst).unwrap();
        let problem = DpProblem::new(&inst).unwrap();
        let bounds = leveled_bounds(&inst).unwrap();
        let (states, _) = run_levels(&problem, &bounds, &SolveOptions::default()).unwrap();
        let (m, n) = (problem.m(), problem.n());
        // partial[key] = best value over z^(0..j)
        let mut partial = std::collections::BTreeMap::from([(vec![0i64; m], 0i64)]);
        for j in 0..bounds.count() {
            let caps: Vec<i64> = bounds.levels[j].iter().map(|&c| i64::from(c)).collect();
            let mut next = std::collections::BTreeMap::new();
            for (key, val) in &partial {
                for z in box_points(&vec![0; n], &caps) {
                    let mut k2 = key.clone();
                    for r in 0..m {
                        for i in 0..n {
                            k2[r] += (1 << j) * problem.a.get(r, i) * z[i];
                        }
                    }
                    let v2 = val + (1 << j) * z.iter().zip(&problem.objective).map(|(a, b)| a * b).sum::<i64>();
                    let e = next.entry(k2).or_insert(i64::MIN);
                    *e = (*e).max(v2);
                }
            }
            partial = next;
            let modulus = 1i64 << (j + 1);
            let expected: Vec<(Vec<i64>, i64)> = partial
                .iter()
                .filter(|(k, _)| k.iter().zip(&problem.b).all(|(v, b)| (v - b).rem_euclid(modulus) == 0))
                .map(|(k, v)| (k.clone(), *v))
                .collect();
            let mut got = states[j + 1].entries();
            got.sort();
            assert_eq!(got, expected, "level {j}");
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn keys_respect_congruence_and_norm(
        rows in proptest::collection::vec(proptest::collection::vec(-3i64..=3, 3), 1..=2),
        upper in proptest::collection::vec(0i64..=20, 3),
        b in proptest::collection::vec(-30i64..=30, 2),
    ) {
        let m = rows.len();
        let inst = ilp(rows, b[..m].to_vec(), vec![0; 3], upper, None);
        let problem = DpProblem::new(&inst).unwrap();
        let bounds = leveled_bounds(&inst).unwrap();
        let (states, _) = run_levels(&problem, &bounds, &SolveOptions::default()).unwrap();
        for s in &states[1..] {
            for (key, _) in s.entries() {
                for (v, bv) in key.iter().zip(&problem.b) {
                    prop_assert_eq!((v - bv).rem_euclid(s.modulus()), 0);
                    prop_assert!(v.abs() <= s.norm_bound());
                }
            }
        }
    }

    #[test]
    fn repeated_runs_agree(seed in 0u64..1000) {
        let inst = random_instance(&mut ChaCha8Rng::seed_from_u64(seed));
        prop_assert_eq!(solve(&inst).unwrap(), solve(&inst).unwrap());
    }
}
