//! Exhaustive reference solvers, one per problem kind.
//!
//! These re-implement each problem's definition directly and share no code
//! with the verifier or the solvers, so that agreement means something.

mod ilp;

use std::cmp::Ordering;

use crate::error::{Error, Result};
use crate::model::{
    Assignment, ClosestStringInstance, DiscrepancyInstance, DistanceBound, IlpInstance, Instance,
    NFoldInstance, SetKind, SetSystemInstance,
};

pub const DEFAULT_BUDGET: u128 = 1 << 22;

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum OracleStatus {
    Optimal { value: i64, witness: Assignment },
    Infeasible,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OracleResult {
    pub status: OracleStatus,
    /// Candidates the enumeration had to consider.
    pub candidates: u128,
}

impl OracleResult {
    pub fn is_feasible(&self) -> bool {
        matches!(self.status, OracleStatus::Optimal { .. })
    }

    pub fn value(&self) -> Option<i64> {
        match &self.status {
            OracleStatus::Optimal { value, .. } => Some(*value),
            OracleStatus::Infeasible => None,
        }
    }

    pub fn witness(&self) -> Option<&Assignment> {
        match &self.status {
            OracleStatus::Optimal { witness, .. } => Some(witness),
            OracleStatus::Infeasible => None,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
enum Sense {
    Max,
    Min,
}

fn over_budget(candidates: u128, budget: u128) -> Result<()> {
    if candidates > budget {
        return Err(Error::Capacity(format!(
            "{candidates} candidates exceed the oracle budget of {budget}"
        )));
    }
    Ok(())
}

/// Best value first, then the lexicographically smallest witness.
pub fn oracle_solve(inst: &Instance, budget: u128) -> Result<OracleResult> {
    let sense = match inst {
        Instance::Ilp(_) | Instance::Bilp(_) => Sense::Max,
        Instance::SetSystem(s) if s.kind() == SetKind::Packing => Sense::Max,
        _ => Sense::Min,
    };
    let mut best: Option<(i64, Vec<i64>)> = None;
    let candidates = for_each_feasible(inst, budget, |x, value| {
        let better = match &best {
            None => true,
            Some((bv, bx)) => {
                let by_value = match sense {
                    Sense::Max => value.cmp(bv),
                    Sense::Min => bv.cmp(&value),
                };
                by_value == Ordering::Greater || (by_value == Ordering::Equal && x < bx.as_slice())
            }
        };
        if better {
            best = Some((value, x.to_vec()));
        }
    })?;
    let status = match best {
        Some((value, x)) => OracleStatus::Optimal {
            value,
            witness: Assignment::new(inst.kind(), x),
        },
        None => OracleStatus::Infeasible,
    };
    Ok(OracleResult { status, candidates })
}

/// Calls `f(x, value)` for every feasible assignment; returns the candidate count.
pub fn for_each_feasible(
    inst: &Instance,
    budget: u128,
    mut f: impl FnMut(&[i64], i64),
) -> Result<u128> {
    match inst {
        Instance::Ilp(p) => ilp_each(p, budget, &mut f),
        Instance::Bilp(p) => ilp_each(p.as_ilp(), budget, &mut f),
        Instance::ClosestString(p) => cstring_each(p, budget, &mut f),
        Instance::Discrepancy(p) => disc_each(p, budget, &mut f),
        Instance::SetSystem(p) => setsys_each(p, budget, &mut f),
        Instance::NFold(p) => nfold_each(p, nfold_block_cap(p.block_rows()), budget, &mut f),
    }
}

/// Every feasible assignment, in enumeration order.
pub fn all_feasible(inst: &Instance, budget: u128) -> Result<Vec<Vec<i64>>> {
    let mut out = Vec::new();
    for_each_feasible(inst, budget, |x, _| out.push(x.to_vec()))?;
    Ok(out)
}

fn ilp_each(inst: &IlpInstance, budget: u128, f: &mut dyn FnMut(&[i64], i64)) -> Result<u128> {
    inst.ensure_valid()?;
    let elim = ilp::Eliminated::new(inst)?;
    let candidates = elim.candidates(inst);
    over_budget(candidates, budget)?;
    let c = inst.objective_or_zero();
    let mut overflow = false;
    elim.for_each(inst, |x| {
        let value = x
            .iter()
            .zip(&c)
            .try_fold(0i64, |acc, (&xi, &ci)| acc.checked_add(xi.checked_mul(ci)?));
        match value {
            Some(v) => f(x, v),
            None => overflow = true,
        }
    })?;
    if overflow {
        return Err(Error::Overflow("oracle objective"));
    }
    Ok(candidates)
}

/// Calls `g` on every 0/1 vector of length `n` in lexicographic order.
fn each_binary(n: usize, budget: u128, mut g: impl FnMut(&[i64])) -> Result<u128> {
    let candidates = if n >= 127 { u128::MAX } else { 1u128 << n };
    over_budget(candidates, budget)?;
    let mut x = vec![0i64; n];
    loop {
        g(&x);
        let mut k = n;
        loop {
            if k == 0 {
                return Ok(candidates);
            }
            k -= 1;
            if x[k] == 0 {
                x[k] = 1;
                break;
            }
            x[k] = 0;
        }
    }
}

fn cstring_each(
    inst: &ClosestStringInstance,
    budget: u128,
    f: &mut dyn FnMut(&[i64], i64),
) -> Result<u128> {
    let limits: Vec<Option<i64>> = (0..inst.m())
        .map(|j| match inst.bound() {
            DistanceBound::Uniform(d) => Some(*d),
            DistanceBound::PerString(ds) => Some(ds[j]),
            DistanceBound::Minimize => None,
        })
        .collect();
    each_binary(inst.n(), budget, |t| {
        let mut worst = 0;
        for (s, limit) in inst.strings().iter().zip(&limits) {
            let dist = s.iter().zip(t).filter(|(&a, &b)| i64::from(a) != b).count() as i64;
            if limit.is_some_and(|d| dist > d) {
                return;
            }
            worst = worst.max(dist);
        }
        f(t, worst);
    })
}

fn disc_each(
    inst: &DiscrepancyInstance,
    budget: u128,
    f: &mut dyn FnMut(&[i64], i64),
) -> Result<u128> {
    each_binary(inst.universe(), budget, |bits| {
        let chi: Vec<i64> = bits.iter().map(|&b| 2 * b - 1).collect();
        let disc = inst
            .sets()
            .iter()
            .map(|s| s.iter().map(|&e| chi[e]).sum::<i64>().abs())
            .max()
            .unwrap_or(0);
        if inst.target().is_none_or(|d| disc <= d) {
            f(&chi, disc);
        }
    })
}

fn setsys_each(
    inst: &SetSystemInstance,
    budget: u128,
    f: &mut dyn FnMut(&[i64], i64),
) -> Result<u128> {
    let mut counts = vec![0i64; inst.universe()];
    each_binary(inst.sets().len(), budget, |pick| {
        counts.iter_mut().for_each(|c| *c = 0);
        for (set, _) in inst.sets().iter().zip(pick).filter(|(_, &p)| p == 1) {
            for &e in set {
                counts[e] += 1;
            }
        }
        let size: i64 = pick.iter().sum();
        let ok = match inst.kind() {
            SetKind::Cover => {
                counts.iter().all(|&c| c >= inst.b()) && inst.card().is_none_or(|d| size <= d)
            }
            SetKind::Packing => {
                counts.iter().all(|&c| c <= inst.b()) && inst.card().is_none_or(|d| size >= d)
            }
        };
        if ok {
            f(pick, size);
        }
    })
}

/// Per-coordinate search cap for n-fold blocks: `2^{m−2}`, the largest entry
/// of the block solutions `to_nfold` relies on.
pub fn nfold_block_cap(block_rows: usize) -> i64 {
    1i64 << block_rows.saturating_sub(2).min(40)
}

/// Bounded n-fold enumeration: each block ranges over `[0, cap]^m`.
pub fn nfold_each(
    inst: &NFoldInstance,
    cap: i64,
    budget: u128,
    f: &mut dyn FnMut(&[i64], i64),
) -> Result<u128> {
    let mb = inst.block_rows();
    let mut per_block: Vec<Vec<Vec<i64>>> = Vec::with_capacity(inst.blocks());
    let mut candidates = 0u128;
    for i in 0..inst.blocks() {
        let block = IlpInstance::new(
            inst.diagonal(i).clone(),
            inst.rhs(i).to_vec(),
            vec![0; mb],
            vec![cap; mb],
            None,
        )?;
        let mut sols = Vec::new();
        candidates = candidates.saturating_add(ilp_each(&block, budget, &mut |x, _| sols.push(x.to_vec()))?);
        per_block.push(sols);
    }
    let combos = per_block
        .iter()
        .fold(1u128, |acc, s| acc.saturating_mul(s.len() as u128));
    candidates = candidates.saturating_add(combos);
    over_budget(candidates, budget)?;
    if per_block.iter().any(Vec::is_empty) {
        return Ok(candidates);
    }
    // Odometer over block choices, first block slowest.
    let mut pick = vec![0usize; inst.blocks()];
    let mut x = Vec::with_capacity(inst.blocks() * mb);
    loop {
        let mut sum = vec![0i64; mb];
        x.clear();
        for (i, &p) in pick.iter().enumerate() {
            let xi = &per_block[i][p];
            let a = inst.coupling(i);
            for (r, s) in sum.iter_mut().enumerate() {
                *s += (0..mb).map(|c| a.get(r, c) * xi[c]).sum::<i64>();
            }
            x.extend_from_slice(xi);
        }
        if sum == inst.b0() {
            f(&x, 0);
        }
        let mut k = pick.len();
        loop {
            if k == 0 {
                return Ok(candidates);
            }
            k -= 1;
            if pick[k] + 1 < per_block[k].len() {
                pick[k] += 1;
                break;
            }
            pick[k] = 0;
        }
    }
}
