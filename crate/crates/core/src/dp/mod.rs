//! Exact optimizer for ILPs with few rows and few distinct columns.
//!
//! Every upper bound is split into power-of-two covers; level `j` then adds
//! `2^j·A·z⁽ʲ⁾` with `0 ≤ z⁽ʲ⁾_i ≤ c_j(u_i)`. After level `j` only keys
//! congruent to `b` modulo `2^{j+1}` can still be completed, and their norm is
//! bounded by [`relevance_bound`], so each level's table stays small.

mod level;
mod sweep;

use std::fmt;

pub use level::LevelState;
use level::{Grid, ABSENT};

use crate::arith;
use crate::cover::{leveled_bounds, LevelBounds};
use crate::error::{Error, Result};
use crate::model::verify_ilp;
use crate::model::{
    merge_identical_columns, shift_to_zero_lower, Assignment, IlpInstance, Matrix, ProblemKind,
};

/// Dense grids above this many cells are refused as a capacity error.
pub const CELL_CAP: usize = 1 << 25;

/// `2^{j+2}·m·n·Δ`, the largest norm a key can have after level `j`.
pub fn relevance_bound(j: u32, m: usize, n: usize, delta: u64) -> Result<i64> {
    let overflow = Error::Overflow("relevance bound");
    let m = i64::try_from(m).map_err(|_| overflow.clone())?;
    let n = i64::try_from(n).map_err(|_| overflow.clone())?;
    let delta = i64::try_from(delta).map_err(|_| overflow.clone())?;
    let v = arith::pow2(j + 2).map_err(|_| overflow.clone())?;
    let v = arith::mul(arith::mul(arith::mul(v, m)?, n)?, delta)?;
    if v.unsigned_abs() > arith::MAGNITUDE_CAP {
        return Err(Error::Overflow("relevance bound"));
    }
    Ok(v)
}

/// Number of vectors `v ∈ [−bound, bound]^m` with `v ≡ b (mod 2^{j+1})`.
pub fn relevant_count(j: u32, b: &[i64], bound: i64) -> u128 {
    let modulus = 1i128 << (j + 1);
    b.iter()
        .map(|&r| {
            let (lo, hi, r) = (-(bound as i128), bound as i128, r as i128);
            let first = (lo - r).div_euclid(modulus) + i128::from((lo - r).rem_euclid(modulus) != 0);
            let last = (hi - r).div_euclid(modulus);
            (last - first + 1).max(0) as u128
        })
        .fold(1u128, |acc, c| acc.saturating_mul(c))
}

/// `(4mnΔ + 1)^m`: the per-level table-size bound (saturating).
pub fn level_key_bound(m: usize, n: usize, delta: u64) -> u128 {
    let side = 4u128
        .saturating_mul(m as u128)
        .saturating_mul(n as u128)
        .saturating_mul(u128::from(delta))
        .saturating_add(1);
    (0..m).fold(1u128, |acc, _| acc.saturating_mul(side))
}

/// Instance data the levels work on: zero lower bounds, distinct columns.
#[derive(Clone, Debug)]
pub struct DpProblem {
    pub a: Matrix,
    pub b: Vec<i64>,
    pub objective: Vec<i64>,
    pub upper: Vec<i64>,
    pub delta: u64,
}

impl DpProblem {
    pub fn new(inst: &IlpInstance) -> Result<Self> {
        inst.ensure_valid()?;
        if inst.lower.iter().any(|&l| l != 0) {
            return Err(Error::Precondition("lower bounds must be zero".into()));
        }
        let objective = inst.objective_or_zero();
        let mut total: u128 = 0;
        for (&c, &u) in objective.iter().zip(&inst.upper) {
            total += u128::from(c.unsigned_abs()) * u128::from(u.unsigned_abs());
        }
        if total > u128::from(arith::MAGNITUDE_CAP) {
            return Err(Error::Capacity(format!(
                "objective range Σ|c_i|·u_i = {total} exceeds 2^62"
            )));
        }
        Ok(Self {
            a: inst.a.clone(),
            b: inst.b.clone(),
            objective,
            upper: inst.upper.clone(),
            delta: inst.delta(),
        })
    }

    pub fn m(&self) -> usize {
        self.a.rows()
    }

    pub fn n(&self) -> usize {
        self.a.cols()
    }
}

#[derive(Clone, Copy, Debug, Default)]
pub struct SolveOptions {
    /// Worker threads for the sweeps; 0 or 1 runs the serial reference sweep.
    pub threads: usize,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LevelStats {
    pub level: u32,
    /// Keys kept after the residue filter.
    pub keys: usize,
    /// Cells of the dense working grid.
    pub cells: usize,
    /// Step relaxations attempted from present keys.
    pub relaxations: u64,
    /// `(4mnΔ+1)^m`.
    pub bound: u128,
}

impl fmt::Display for LevelStats {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "level {} keys {} bound {} relaxations {}",
            self.level, self.keys, self.bound, self.relaxations
        )
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct SolveStats {
    pub levels: Vec<LevelStats>,
    /// Columns after merging duplicates.
    pub distinct_columns: usize,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum SolveStatus {
    Optimal { value: i64, witness: Assignment },
    Infeasible,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SolveResult {
    pub status: SolveStatus,
    pub stats: SolveStats,
}

impl SolveResult {
    pub fn is_feasible(&self) -> bool {
        matches!(self.status, SolveStatus::Optimal { .. })
    }

    pub fn value(&self) -> Option<i64> {
        match &self.status {
            SolveStatus::Optimal { value, .. } => Some(*value),
            SolveStatus::Infeasible => None,
        }
    }

    pub fn witness(&self) -> Option<&Assignment> {
        match &self.status {
            SolveStatus::Optimal { witness, .. } => Some(witness),
            SolveStatus::Infeasible => None,
        }
    }
}

/// The state before level 0: only the zero key, with value 0.
pub fn init_level(m: usize, n: usize) -> LevelState {
    let words = n.div_ceil(32).max(1);
    let mut grid = Grid::new(vec![0; m], vec![1; m], words);
    grid.values[0] = 0;
    LevelState {
        level: None,
        modulus: 1,
        residue: vec![0; m],
        norm_bound: 0,
        n,
        grid,
    }
}

/// Extends `prev` by one level with per-column step caps `caps`.
pub fn advance_level(
    prev: &LevelState,
    problem: &DpProblem,
    caps: &[u8],
    opts: &SolveOptions,
) -> Result<(LevelState, LevelStats)> {
    let (m, n) = (problem.m(), problem.n());
    if caps.len() != n || prev.residue.len() != m || prev.n != n {
        return Err(Error::Precondition("level data does not match the problem".into()));
    }
    let j = prev.level.map_or(0, |l| l + 1);
    let step = arith::pow2(j)?;
    debug_assert_eq!(step, prev.modulus);
    let norm_bound = relevance_bound(j, m, n, problem.delta)?;
    let bound = level_key_bound(m, n, problem.delta);
    let words = prev.grid.words;

    // Working box: the previous box grown by every allowed step.
    let mut lo = prev.grid.lo.clone();
    let mut hi: Vec<i64> = (0..m)
        .map(|k| prev.grid.lo[k] + prev.grid.dims[k] as i64 - 1)
        .collect();
    for (i, &cap) in caps.iter().enumerate() {
        for k in 0..m {
            let d = i64::from(cap) * problem.a.get(k, i);
            if d < 0 {
                lo[k] += d;
            } else {
                hi[k] += d;
            }
        }
    }
    let empty = prev.is_empty();
    let dims: Vec<usize> = if empty {
        vec![0; m]
    } else {
        (0..m).map(|k| (hi[k] - lo[k] + 1) as usize).collect()
    };
    let cells = dims
        .iter()
        .try_fold(1usize, |acc, &d| acc.checked_mul(d))
        .filter(|&c| c <= CELL_CAP)
        .ok_or_else(|| {
            Error::Capacity(format!("level {j} table grid exceeds {CELL_CAP} cells"))
        })?;

    let mut cur = Grid::new(lo, dims, words);
    for (idx, &v) in prev.grid.values.iter().enumerate() {
        if v == ABSENT {
            continue;
        }
        let to = cur
            .index(&prev.grid.coords(idx))
            .ok_or_else(|| Error::Invariant("previous key outside working box".into()))?;
        cur.values[to] = v;
    }

    let pool = if opts.threads > 1 {
        Some(
            rayon::ThreadPoolBuilder::new()
                .num_threads(opts.threads)
                .build()
                .map_err(|e| Error::Capacity(format!("thread pool: {e}")))?,
        )
    } else {
        None
    };
    let mut next = cur.clone();
    let mut relaxations = 0u64;
    for (i, &cap) in caps.iter().enumerate() {
        if cap == 0 || cells == 0 {
            continue;
        }
        let column = problem.a.column(i);
        let layer = sweep::Layer::new(&cur, i, cap, &column, step, problem.objective[i])?;
        relaxations += match &pool {
            Some(pool) => pool.install(|| sweep::parallel(&cur, &mut next, &layer))?,
            None => sweep::serial(&cur, &mut next, &layer)?,
        };
        std::mem::swap(&mut cur, &mut next);
    }

    // Keep the keys that can still reach b: t ≡ p (mod 2).
    let parity: Vec<i64> = (0..m)
        .map(|k| ((problem.b[k] - prev.residue[k]) / step).rem_euclid(2))
        .collect();
    let residue: Vec<i64> = (0..m)
        .map(|k| arith::add(prev.residue[k], arith::mul(step, parity[k])?))
        .collect::<Result<_>>()?;
    let modulus = arith::mul(step, 2)?;
    let mut kept: Vec<(Vec<i64>, usize)> = Vec::new();
    'cells: for (idx, &v) in cur.values.iter().enumerate() {
        if v == ABSENT {
            continue;
        }
        let t = cur.coords(idx);
        let mut t2 = Vec::with_capacity(m);
        for k in 0..m {
            if (t[k] - parity[k]).rem_euclid(2) != 0 {
                continue 'cells;
            }
            let key = prev.residue[k] as i128 + step as i128 * t[k] as i128;
            if key.unsigned_abs() > norm_bound as u128 {
                continue 'cells;
            }
            t2.push((t[k] - parity[k]).div_euclid(2));
        }
        kept.push((t2, idx));
    }
    let (lo, dims) = if kept.is_empty() {
        (vec![0; m], vec![if m == 0 { 1 } else { 0 }; m])
    } else {
        let mut lo = kept[0].0.clone();
        let mut hi = lo.clone();
        for (t, _) in &kept {
            for k in 0..m {
                lo[k] = lo[k].min(t[k]);
                hi[k] = hi[k].max(t[k]);
            }
        }
        let dims = (0..m).map(|k| (hi[k] - lo[k] + 1) as usize).collect();
        (lo, dims)
    };
    let mut grid = Grid::new(lo, dims, words);
    for (t, idx) in &kept {
        let to = grid
            .index(t)
            .ok_or_else(|| Error::Invariant("kept key outside compacted box".into()))?;
        grid.values[to] = cur.values[*idx];
        grid.z[to * words..(to + 1) * words].copy_from_slice(cur.z_of(*idx));
    }
    let keys = kept.len();
    if (keys as u128) > bound {
        return Err(Error::Invariant(format!(
            "level {j} keeps {keys} keys, above the bound {bound}"
        )));
    }
    let state = LevelState {
        level: Some(j),
        modulus,
        residue,
        norm_bound,
        n,
        grid,
    };
    let stats = LevelStats {
        level: j,
        keys,
        cells,
        relaxations,
        bound,
    };
    Ok((state, stats))
}

/// Runs the base state and levels `0..=h`; `states[0]` is the base state.
pub fn run_levels(
    problem: &DpProblem,
    bounds: &LevelBounds,
    opts: &SolveOptions,
) -> Result<(Vec<LevelState>, Vec<LevelStats>)> {
    let mut states = vec![init_level(problem.m(), problem.n())];
    let mut stats = Vec::with_capacity(bounds.count());
    for j in 0..bounds.count() as u32 {
        let (state, s) = advance_level(states.last().unwrap(), problem, bounds.level(j), opts)?;
        states.push(state);
        stats.push(s);
    }
    Ok((states, stats))
}

/// Walks back from key `b` in the last state and sums `2^j·z⁽ʲ⁾`.
pub fn reconstruct(states: &[LevelState], a: &Matrix, b: &[i64]) -> Result<Assignment> {
    let n = a.cols();
    let mut x = vec![0i64; n];
    let mut key = b.to_vec();
    for state in states.iter().rev() {
        let Some(j) = state.level else {
            if state.get(&key) != Some(0) || key.iter().any(|&v| v != 0) {
                return Err(Error::Invariant("chain does not end at the zero key".into()));
            }
            return Ok(Assignment::new(ProblemKind::Ilp, x));
        };
        let z = state
            .increment(&key)
            .ok_or_else(|| Error::Invariant(format!("key {key:?} missing at level {j}")))?;
        let pred = state.predecessor(&key, a).expect("present key");
        for (xi, &zi) in x.iter_mut().zip(&z) {
            *xi = arith::add(*xi, i64::from(zi) << j)?;
        }
        key = pred;
    }
    Err(Error::Invariant("no base state".into()))
}

pub fn solve(inst: &IlpInstance) -> Result<SolveResult> {
    solve_with(inst, &SolveOptions::default())
}

pub fn solve_with(inst: &IlpInstance, opts: &SolveOptions) -> Result<SolveResult> {
    inst.ensure_valid()?;
    let (shifted, shift) = shift_to_zero_lower(inst)?;
    let (merged, merge) = merge_identical_columns(&shifted)?;
    let bounds = leveled_bounds(&merged)?;
    let problem = DpProblem::new(&merged)?;
    let mut stats = SolveStats {
        levels: Vec::new(),
        distinct_columns: problem.n(),
    };
    let top = relevance_bound(bounds.h, problem.m(), problem.n(), problem.delta)
        .map_err(|_| Error::Capacity(format!("relevance bound at level {} exceeds 2^62", bounds.h)))?;
    let infeasible = |stats| SolveResult {
        status: SolveStatus::Infeasible,
        stats,
    };
    if problem.b.iter().any(|v| v.unsigned_abs() > top.unsigned_abs()) {
        return Ok(infeasible(stats));
    }
    let (states, level_stats) = run_levels(&problem, &bounds, opts)?;
    stats.levels = level_stats;
    let last = states.last().expect("base state");
    let Some(best) = last.get(&problem.b) else {
        return Ok(infeasible(stats));
    };
    let merged_x = reconstruct(&states, &problem.a, &problem.b)?;
    let x = shift.unshift(&merge.expand(&merged_x.values))?;
    let value = arith::add(best, shift.constant)?;
    let report = verify_ilp(inst, &x)?;
    if report.value != Some(value) {
        return Err(Error::Invariant(format!(
            "reconstructed solution fails verification ({report}) or value differs from {value}"
        )));
    }
    Ok(SolveResult {
        status: SolveStatus::Optimal {
            value,
            witness: Assignment::new(ProblemKind::Ilp, x),
        },
        stats,
    })
}

#[cfg(test)]
mod tests;
