//! Acceptance criteria, run in order with one PASS/FAIL line each. Runs
//! without the libtest harness so the timing criteria are not measured
//! under parallel load.

use std::panic::{catch_unwind, AssertUnwindSafe};
use std::path::{Path, PathBuf};
use std::process::{Command, ExitCode};
use std::time::{Duration, Instant};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use fewcons::arith::{ceil_log2, floor_log2};
use fewcons::cover::build_cover;
use fewcons::dp::{level_key_bound, solve, SolveResult};
use fewcons::formats::{parse, serialize};
use fewcons::gen::{generate, scaling_instance, GenParams};
use fewcons::model::{
    verify_solution, ClosestStringInstance, DiscrepancyInstance, DistanceBound, SetKind, SetSystemInstance,
};
use fewcons::oracle::{all_feasible, oracle_solve, DEFAULT_BUDGET};
use fewcons::reductions::{build_equality_gadget, duality_search, pull_back, reduce, Rule};
use fewcons::transforms::block_matrix;
use fewcons::{Assignment, BinaryIlpInstance, IlpInstance, Instance, ProblemKind};

/// Largest target enumeration the reduction corpora may need.
const TARGET_BUDGET: u128 = 1 << 18;

type Verdict = Result<String, String>;

fn check(cond: bool, pass: String, fail: String) -> Verdict {
    if cond {
        Ok(pass)
    } else {
        Err(fail)
    }
}

fn run(no: u32, name: &str, f: impl FnOnce() -> Verdict) -> bool {
    let start = Instant::now();
    let verdict = catch_unwind(AssertUnwindSafe(f)).unwrap_or_else(|p| {
        let msg = p
            .downcast_ref::<String>()
            .cloned()
            .or_else(|| p.downcast_ref::<&str>().map(|s| s.to_string()))
            .unwrap_or_default();
        Err(format!("panicked: {msg}"))
    });
    let secs = start.elapsed().as_secs_f64();
    let (tag, detail, ok) = match verdict {
        Ok(d) => ("PASS", d, true),
        Err(d) => ("FAIL", d, false),
    };
    println!("{tag} criterion {no:>2} {name}: {detail} [{secs:.2}s]");
    ok
}

fn main() -> ExitCode {
    let results = [
        run(1, "cover sums", cover_sums),
        run(2, "solver matches oracle", solver_matches_oracle),
        run(3, "level table bound", level_table_bound),
        run(4, "logarithmic dependence on bounds", log_dependence),
        run(5, "equality gadget", equality_gadget),
        run(6, "reduction feasibility equivalence", reduction_equivalence),
        run(7, "pull-back soundness", pull_back_soundness),
        run(8, "size formulas", size_formulas),
        run(9, "n-fold block solutions", block_solutions),
        run(10, "cover/packing duality", duality),
        run(11, "format stability", format_stability),
    ];
    let failed = results.iter().filter(|&&ok| !ok).count();
    println!("{} of {} criteria passed", results.len() - failed, results.len());
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}

// ---- 1 ----

fn reachable_sums(coeffs: &[u8]) -> Vec<u64> {
    let total: u64 = coeffs.iter().enumerate().map(|(i, &c)| u64::from(c) << i).sum();
    let mut reach = vec![false; total as usize + 1];
    reach[0] = true;
    for (i, &c) in coeffs.iter().enumerate() {
        let step = 1usize << i;
        for _ in 0..c {
            for s in (step..reach.len()).rev() {
                reach[s] |= reach[s - step];
            }
        }
    }
    (0..=total).filter(|&s| reach[s as usize]).collect()
}

fn cover_sums() -> Verdict {
    let start = Instant::now();
    let mut bad = Vec::new();
    for k in 0..=4096u64 {
        let base = if k == 0 { 0 } else { floor_log2(k) };
        for h in [base, base + 3] {
            let cover = build_cover(k, h).map_err(|e| format!("k={k} h={h}: {e}"))?;
            if reachable_sums(&cover.coeffs) != (0..=k).collect::<Vec<_>>() {
                bad.push((k, h));
            }
        }
    }
    let elapsed = start.elapsed();
    check(
        bad.is_empty() && elapsed < Duration::from_secs(10),
        format!("8194 covers exact in {elapsed:.2?}"),
        format!("{} inexact covers (first {:?}), {elapsed:.2?}", bad.len(), bad.first()),
    )
}

// ---- 2, 3 ----

fn random_program(seed: u64) -> IlpInstance {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut params = GenParams::new(ProblemKind::Ilp, seed, rng.gen_range(1..=3), rng.gen_range(1..=6));
    params.delta = rng.gen_range(1..=3);
    params.umax = 10;
    params.cmax = 5;
    match generate(&params).unwrap() {
        Instance::Ilp(ilp) => ilp,
        other => panic!("generator returned {}", other.kind()),
    }
}

fn criterion_two_runs() -> Vec<(IlpInstance, SolveResult)> {
    (0..1000u64)
        .map(|seed| {
            let inst = random_program(seed);
            let result = solve(&inst).unwrap();
            (inst, result)
        })
        .collect()
}

fn solver_matches_oracle() -> Verdict {
    let start = Instant::now();
    let mut mismatches = Vec::new();
    let mut feasible = 0;
    for seed in 0..1000u64 {
        let inst = random_program(seed);
        let dp = solve(&inst).map_err(|e| format!("seed {seed}: {e}"))?;
        let wrapped = Instance::Ilp(inst);
        let oracle = oracle_solve(&wrapped, DEFAULT_BUDGET).map_err(|e| format!("seed {seed}: {e}"))?;
        let mut ok = dp.value() == oracle.value();
        if let Some(w) = dp.witness() {
            feasible += 1;
            let report = verify_solution(&wrapped, w).unwrap();
            ok &= report.ok() && report.value == dp.value();
        }
        if !ok {
            mismatches.push(seed);
        }
    }
    let elapsed = start.elapsed();
    check(
        mismatches.is_empty() && elapsed < Duration::from_secs(60),
        format!("1000/1000 agree ({feasible} feasible) in {elapsed:.2?}"),
        format!("{} mismatches (seeds {:?}), {elapsed:.2?}", mismatches.len(), &mismatches[..mismatches.len().min(5)]),
    )
}

fn level_table_bound() -> Verdict {
    let mut levels = 0;
    let mut violations = Vec::new();
    for (seed, (inst, result)) in criterion_two_runs().into_iter().enumerate() {
        let bound = level_key_bound(inst.m(), result.stats.distinct_columns, inst.delta());
        for level in &result.stats.levels {
            levels += 1;
            if level.keys as u128 > bound {
                violations.push((seed, level.level, level.keys, bound));
            }
        }
    }
    check(
        violations.is_empty(),
        format!("{levels} levels within (4mnΔ+1)^m"),
        format!("{} violations, first {:?}", violations.len(), violations.first()),
    )
}

// ---- 4 ----

fn best_time(inst: &IlpInstance) -> (Duration, SolveResult) {
    let mut best = Duration::MAX;
    let mut last = None;
    for _ in 0..3 {
        let t = Instant::now();
        let r = solve(inst).unwrap();
        best = best.min(t.elapsed());
        last = Some(r);
    }
    (best, last.unwrap())
}

fn log_dependence() -> Verdict {
    let start = Instant::now();
    let small = scaling_instance(1_000).unwrap();
    let large = scaling_instance(1_000_000).unwrap();
    let (t_small, r_small) = best_time(&small);
    let (t_large, r_large) = best_time(&large);
    let total = start.elapsed();
    if !(r_small.is_feasible() && r_large.is_feasible()) {
        return Err("scaling instances must be feasible".into());
    }
    let added = r_large.stats.levels.len() as i64 - r_small.stats.levels.len() as i64;
    let expected = i64::from(ceil_log2(1_000));
    let ratio = t_large.as_secs_f64() / t_small.as_secs_f64();
    check(
        added == expected && ratio < 3.0 && total < Duration::from_secs(30),
        format!("{added} extra levels, time ratio {ratio:.2}, total {total:.2?}"),
        format!("{added} extra levels (want {expected}), time ratio {ratio:.2}, total {total:.2?}"),
    )
}

// ---- 5 ----

fn equality_gadget() -> Verdict {
    let mut details = Vec::new();
    for k in 1..=3u32 {
        let g = build_equality_gadget(k).map_err(|e| e.to_string())?;
        let w = g.b.cols();
        let mut solutions = Vec::new();
        for mask in 0u32..(1 << (2 * w)) {
            let sign = |i: usize| if mask >> i & 1 == 1 { 1 } else { -1 };
            let z: Vec<i64> = (0..w).map(sign).collect();
            let z_bar: Vec<i64> = (w..2 * w).map(sign).collect();
            let lhs = g.b.mul_vec(&z).unwrap();
            let rhs = g.b_bar.mul_vec(&z_bar).unwrap();
            if lhs.iter().zip(&rhs).all(|(a, b)| a + b == 0) {
                solutions.push((z, z_bar));
            }
        }
        let expected = [(vec![1; w], vec![-1; w]), (vec![-1; w], vec![1; w])];
        let exact = solutions.len() == 2 && expected.iter().all(|e| solutions.contains(e));
        details.push(format!("k={k}: {} of 2^{}", solutions.len(), 2 * w));
        if !exact {
            return Err(format!("k={k} has {} solutions: {solutions:?}", solutions.len()));
        }
    }
    Ok(details.join(", "))
}

// ---- 6, 7 ----

fn random_bilp(rng: &mut ChaCha8Rng, max_m: usize, max_n: usize) -> Instance {
    let m = rng.gen_range(1..=max_m);
    let n = rng.gen_range(1..=max_n);
    let rows: Vec<Vec<i64>> = (0..m).map(|_| (0..n).map(|_| rng.gen_range(0..=1)).collect()).collect();
    let b = if rng.gen_bool(0.5) {
        let x: Vec<i64> = (0..n).map(|_| rng.gen_range(0..=1)).collect();
        rows.iter().map(|r| r.iter().zip(&x).map(|(a, v)| a * v).sum()).collect()
    } else {
        (0..m).map(|_| rng.gen_range(0..=n as i64)).collect()
    };
    Instance::Bilp(BinaryIlpInstance::from_rows(rows, n, b).unwrap())
}

fn random_ilp(rng: &mut ChaCha8Rng, max_n: usize, min_delta: i64, max_delta: i64, umax: i64) -> Instance {
    let m = rng.gen_range(1..=2);
    let n = rng.gen_range(1..=max_n);
    let delta = rng.gen_range(min_delta..=max_delta);
    let mut rows: Vec<Vec<i64>> = (0..m).map(|_| (0..n).map(|_| rng.gen_range(-delta..=delta)).collect()).collect();
    rows[0][0] = if rng.gen_bool(0.5) { delta } else { -delta };
    let lower: Vec<i64> = (0..n).map(|_| rng.gen_range(-1..=0)).collect();
    let upper: Vec<i64> = lower.iter().map(|&l| l + rng.gen_range(0..=umax)).collect();
    let b = if rng.gen_bool(0.5) {
        let x: Vec<i64> = lower.iter().zip(&upper).map(|(&l, &u)| rng.gen_range(l..=u)).collect();
        rows.iter().map(|r| r.iter().zip(&x).map(|(a, v)| a * v).sum()).collect()
    } else {
        (0..m).map(|_| rng.gen_range(-2 * delta..=2 * delta)).collect()
    };
    Instance::Ilp(IlpInstance::from_rows(rows, b, lower, upper, None).unwrap())
}

fn random_sets(rng: &mut ChaCha8Rng, count: usize, universe: usize) -> Vec<Vec<usize>> {
    (0..count).map(|_| (0..universe).filter(|_| rng.gen_bool(0.5)).collect()).collect()
}

/// One source and its threshold (for rules into ILPs).
fn random_source(rule: Rule, rng: &mut ChaCha8Rng) -> (Instance, Option<i64>) {
    match rule {
        Rule::CstringToIlp => {
            let (m, n) = (rng.gen_range(1..=3), rng.gen_range(1..=4));
            let strings = (0..m).map(|_| (0..n).map(|_| rng.gen_range(0..=1)).collect()).collect();
            let cs = ClosestStringInstance::new(n, strings, DistanceBound::Minimize).unwrap();
            (Instance::ClosestString(cs), Some(rng.gen_range(0..=n as i64)))
        }
        Rule::DiscToIlp => {
            let (m, n) = (rng.gen_range(1..=3), rng.gen_range(1..=5));
            let di = DiscrepancyInstance::new(n, random_sets(rng, m, n), None).unwrap();
            (Instance::Discrepancy(di), Some(rng.gen_range(0..=2)))
        }
        Rule::CoverToIlp => {
            let (universe, count) = (rng.gen_range(1..=3), rng.gen_range(1..=5));
            let b = rng.gen_range(0..=2.min(count as i64));
            let cover = SetSystemInstance::new(SetKind::Cover, universe, random_sets(rng, count, universe), b, None);
            (Instance::SetSystem(cover.unwrap()), Some(rng.gen_range(0..=count as i64)))
        }
        Rule::IlpToCstring | Rule::IlpToCover | Rule::Pm1 | Rule::ToNfold => (random_bilp(rng, 2, 3), None),
        Rule::IlpToDisc => (random_bilp(rng, 2, 4), None),
        Rule::ZeroOne => (random_ilp(rng, 2, 2, 3, 2), None),
        Rule::Binarize => (random_ilp(rng, 3, 1, 3, 3), None),
        Rule::Dualize => unreachable!("not part of the equivalence corpora"),
    }
}

const CORPUS_RULES: [Rule; 10] = [
    Rule::CstringToIlp,
    Rule::IlpToCstring,
    Rule::DiscToIlp,
    Rule::IlpToDisc,
    Rule::CoverToIlp,
    Rule::IlpToCover,
    Rule::Pm1,
    Rule::ZeroOne,
    Rule::Binarize,
    Rule::ToNfold,
];

#[derive(Default)]
struct RuleTally {
    sources: usize,
    feasible_sources: usize,
    skipped: usize,
    mismatches: usize,
    pulled_back: usize,
    unsound: usize,
}

/// Draws sources until 200 have enumerable targets (or attempts run out),
/// checking feasibility equivalence and every pull-back.
fn tally(rule: Rule) -> RuleTally {
    let mut rng = ChaCha8Rng::seed_from_u64(0xacce97 ^ rule.tag().len() as u64 ^ (rule as u64) << 8);
    let mut t = RuleTally::default();
    let mut attempts = 0;
    while t.sources < 200 && attempts < 4000 {
        attempts += 1;
        let (source, d) = random_source(rule, &mut rng);
        let trace = match reduce(rule, &source, d) {
            Ok(trace) => trace,
            Err(e) if e.is_capacity() => {
                t.skipped += 1;
                continue;
            }
            Err(e) => panic!("{rule}: {e}"),
        };
        let targets = match all_feasible(&trace.target, TARGET_BUDGET) {
            Ok(targets) => targets,
            Err(e) if e.is_capacity() => {
                t.skipped += 1;
                continue;
            }
            Err(e) => panic!("{rule}: {e}"),
        };
        let source_feasible = oracle_solve(&trace.source, DEFAULT_BUDGET).unwrap().is_feasible();
        t.sources += 1;
        t.feasible_sources += usize::from(source_feasible);
        t.mismatches += usize::from(source_feasible == targets.is_empty());
        for y in targets {
            t.pulled_back += 1;
            let sound = match pull_back(&trace, &Assignment::new(trace.target.kind(), y)) {
                Ok(x) => verify_solution(&trace.source, &x).unwrap().ok(),
                Err(_) => false,
            };
            t.unsound += usize::from(!sound);
        }
    }
    t
}

fn all_tallies() -> &'static [(Rule, RuleTally)] {
    use std::sync::OnceLock;
    static TALLIES: OnceLock<Vec<(Rule, RuleTally)>> = OnceLock::new();
    TALLIES.get_or_init(|| CORPUS_RULES.iter().map(|&r| (r, tally(r))).collect())
}

fn reduction_equivalence() -> Verdict {
    let mut bad = Vec::new();
    let mut lines = Vec::new();
    for (rule, t) in all_tallies() {
        lines.push(format!("{rule} {}/{}", t.feasible_sources, t.sources));
        if t.sources < 200 || t.mismatches > 0 {
            bad.push(format!(
                "{rule}: {} sources ({} skipped), {} mismatches",
                t.sources, t.skipped, t.mismatches
            ));
        }
    }
    check(
        bad.is_empty(),
        format!("feasible/total per rule: {}", lines.join(", ")),
        bad.join("; "),
    )
}

fn pull_back_soundness() -> Verdict {
    let total: usize = all_tallies().iter().map(|(_, t)| t.pulled_back).sum();
    let bad: Vec<String> = all_tallies()
        .iter()
        .filter(|(_, t)| t.unsound > 0)
        .map(|(rule, t)| format!("{rule}: {} of {} unsound", t.unsound, t.pulled_back))
        .collect();
    check(
        bad.is_empty() && total > 0,
        format!("{total} target solutions pulled back soundly"),
        format!("{} ({total} checked)", bad.join("; ")),
    )
}

// ---- 8 ----

fn size_formulas() -> Verdict {
    let mut rng = ChaCha8Rng::seed_from_u64(8);
    let mut failures = Vec::new();

    for _ in 0..50 {
        let (m, n) = (rng.gen_range(1..=4), rng.gen_range(1..=4));
        let delta = rng.gen_range(2..=9i64);
        let mut rows: Vec<Vec<i64>> = (0..m).map(|_| (0..n).map(|_| rng.gen_range(-delta..=delta)).collect()).collect();
        rows[rng.gen_range(0..m)][rng.gen_range(0..n)] = delta;
        let b = (0..m).map(|_| rng.gen_range(-5..=5)).collect();
        let src = Instance::Ilp(IlpInstance::from_rows(rows, b, vec![0; n], vec![2; n], None).unwrap());
        let target = reduce(Rule::ZeroOne, &src, None).unwrap().target;
        let want = 4 * m * (ceil_log2(delta as u64) as usize + 1);
        let got = target.as_ilp().unwrap().m();
        if got != want {
            failures.push(format!("zero-one m={m} Δ={delta}: {got} rows, want {want}"));
            break;
        }
    }

    for _ in 0..50 {
        let (m, n) = (rng.gen_range(1..=4), rng.gen_range(1..=40));
        let rows: Vec<Vec<i64>> = (0..m).map(|_| (0..n).map(|_| rng.gen_range(0..=1)).collect()).collect();
        let x: Vec<i64> = (0..n).map(|_| rng.gen_range(0..=1)).collect();
        let b = rows.iter().map(|r| r.iter().zip(&x).map(|(a, v)| a * v).sum()).collect();
        let src = Instance::Bilp(BinaryIlpInstance::from_rows(rows, n, b).unwrap());
        let Instance::Discrepancy(di) = reduce(Rule::IlpToDisc, &src, None).unwrap().target else {
            unreachable!()
        };
        let k = ceil_log2(n.max(2) as u64) as usize;
        let want = m + 2 * k - 1;
        if di.sets().len() != want {
            failures.push(format!(
                "ilp-to-disc m={m} n={n}: {} sets, want m+2k-1 = {want}",
                di.sets().len()
            ));
            break;
        }
    }

    for _ in 0..50 {
        let src = random_bilp(&mut rng, 4, 10);
        let (m, n) = (src.as_ilp().unwrap().m(), src.as_ilp().unwrap().n());
        let Instance::ClosestString(cs) = reduce(Rule::IlpToCstring, &src, None).unwrap().target else {
            unreachable!()
        };
        let strings = cs.strings();
        let (r1, r2) = (&strings[strings.len() - 2], &strings[strings.len() - 1]);
        let dist = r1.iter().zip(r2).filter(|(a, b)| a != b).count();
        if strings.len() != 2 * m + 4 || cs.n() != 6 * n || dist != 4 * n {
            failures.push(format!(
                "ilp-to-cstring m={m} n={n}: {} strings of length {}, anchors {dist} apart",
                strings.len(),
                cs.n()
            ));
            break;
        }
    }

    check(
        failures.is_empty(),
        "zero-one rows, ilp-to-disc sets and ilp-to-cstring shape exact on 150 shapes".into(),
        failures.join("; "),
    )
}

// ---- 9 ----

fn block_solutions() -> Verdict {
    let mut details = Vec::new();
    for m in 3..=5usize {
        let b = block_matrix(m);
        let cap = 1i64 << (m - 2);
        let mut e1 = vec![0; m];
        e1[0] = 1;
        let mut found = Vec::new();
        let mut x = vec![0i64; m];
        loop {
            if b.mul_vec(&x).unwrap() == e1 {
                found.push(x.clone());
            }
            let Some(i) = x.iter().position(|&v| v < cap) else { break };
            x[i] += 1;
            x[..i].iter_mut().for_each(|v| *v = 0);
        }
        let mut off = vec![0; m];
        off[m - 1] = 1;
        let mut on: Vec<i64> = (0..m as u32 - 1).map(|i| 1 << i).collect();
        on.push(0);
        found.sort();
        let mut want = vec![off, on];
        want.sort();
        if found != want {
            return Err(format!("m={m}: found {found:?}"));
        }
        details.push(format!("m={m}: 2 of {}", (cap + 1).pow(m as u32)));
    }
    Ok(details.join(", "))
}

// ---- 10 ----

fn bin() -> &'static str {
    env!("CARGO_BIN_EXE_fewcons")
}

fn duality() -> Verdict {
    let search = duality_search(3, 4, 2).map_err(|e| e.to_string())?;
    let documented = SetSystemInstance::new(SetKind::Cover, 2, vec![vec![0], vec![1], vec![0, 1]], 1, None).unwrap();
    let gap = search.gaps.iter().find(|g| g.cover == documented);
    let library_ok = search.forward_violations == 0
        && matches!(gap, Some(g) if g.opt_cover == Some(1) && g.opt_pack == Some(3));

    let out = Command::new(bin())
        .args(["duality-search", "--universe", "3", "--sets", "4", "--b", "2"])
        .output()
        .map_err(|e| e.to_string())?;
    let stdout = String::from_utf8_lossy(&out.stdout);
    let cli_ok = out.status.code() == Some(0)
        && stdout.lines().any(|l| l == "forward_violations 0")
        && stdout
            .lines()
            .any(|l| l == "gap universe 2 b 1 sets {1} {2} {1,2} opt_cover 1 opt_pack 3");
    check(
        library_ok && cli_ok,
        format!(
            "{} instances, 0 forward violations, {} gaps including the documented one",
            search.instances,
            search.gaps.len()
        ),
        format!(
            "forward violations {}, documented gap {:?}, command ok {cli_ok}",
            search.forward_violations,
            gap.map(|g| (g.opt_cover, g.opt_pack))
        ),
    )
}

// ---- 11 ----

fn corpus_dir() -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("../core/tests/corpus/v1")
}

const MALFORMED: [&str; 24] = [
    "",
    "LP\n",
    "ILP extra\n",
    "ILP\nm x\n",
    "ILP\nm -1\n",
    "ILP\nm 1\nn 1\nA\n1 2\n",
    "ILP\nm 1\nn 1\nA\n99999999999999999999\n",
    "ILP\nm 1\nn 2\nA\n1 1\nb 1\nl 0 0\nu 1\n",
    "ILP\nm 1\nn 1\nA\n1\nb 1\nl 0\nu 1\nc 1\nextra\n",
    "ILP\nm 2000000\n",
    "BILP\nm 1\nn 2\nA\n1 1\nb 1\nl 0 0\n",
    "BILP\nm 1\nn 1\nA\n3\nb 1\nc 1 2\n",
    "CSTRING\nm 1\nn 3\n0a1\n",
    "CSTRING\nm 1\nn 3\n01\n",
    "CSTRING\nm 2\nn 1\nd 1\n0\n",
    "SETSYS\nkind both\n",
    "SETSYS\nkind cover\nm 2\nn 1\nb 1\nS 3\n",
    "SETSYS\nkind cover\nm 2\nn 1\nb 1\nT 1\n",
    "DISC\nm 1\nn 2\nS 0\n",
    "DISC\nm 1\nn 2\nd\nS 1\n",
    "NFOLD\nm 1\nn 1\nA\n1\nB\n1\nb0 1\n",
    "SOL\nkind foo\nx 1\n",
    "TRACE\nrule nope\n",
    "ILP\nm 1\nn 1\nA\n1\nb 1\nl 0\nu 1 # ok\nc x\n",
];

fn format_stability() -> Verdict {
    let mut files = 0;
    for entry in std::fs::read_dir(corpus_dir()).map_err(|e| e.to_string())? {
        let path = entry.unwrap().path();
        let text = std::fs::read_to_string(&path).unwrap();
        let doc = parse(&text).map_err(|e| format!("{}: {e}", path.display()))?;
        if serialize(&doc) != text {
            return Err(format!("{} does not round-trip", path.display()));
        }
        files += 1;
    }
    let dir = tempfile::tempdir().map_err(|e| e.to_string())?;
    for (i, text) in MALFORMED.iter().enumerate() {
        let path = dir.path().join(format!("bad{i}"));
        std::fs::write(&path, text).unwrap();
        let out = Command::new(bin()).arg("oracle").arg(&path).output().map_err(|e| e.to_string())?;
        let stderr = String::from_utf8_lossy(&out.stderr);
        if out.status.code() != Some(3) || !(stderr.contains("line ") && stderr.contains("column ")) {
            return Err(format!("{text:?}: exit {:?}, stderr {stderr:?}", out.status.code()));
        }
    }
    Ok(format!(
        "{files} golden files byte-identical, {} malformed inputs exit 3 with positions",
        MALFORMED.len()
    ))
}
