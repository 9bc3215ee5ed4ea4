//! Set Multi-Cover ↔ binary ILP, and the cover/packing complement map.

use crate::error::{Error, Result};
use crate::model::{
    verify_solution, Assignment, BinaryIlpInstance, IlpInstance, Instance, Matrix, ProblemKind, SetKind,
    SetSystemInstance,
};
use crate::oracle::{for_each_feasible, oracle_solve};

/// Cover with at most `d` sets as an ILP over `[x (n), card slack, surplus (m)]`:
/// `Σx + slack = d` and `Ax − surplus = b`, surplus in `[0, n]`. Maximizing
/// the objective `−Σx` minimizes the cover. Returns the ILP and the bound used.
pub fn cover_to_ilp(inst: &SetSystemInstance, d: Option<i64>) -> Result<(IlpInstance, i64)> {
    if inst.kind() != SetKind::Cover {
        return Err(Error::Precondition("cover_to_ilp needs a cover instance".into()));
    }
    let (m, n) = (inst.universe(), inst.sets().len());
    let d = d.or(inst.card()).unwrap_or(n as i64).min(n as i64);
    let cols = n + 1 + m;
    let mut a = Matrix::zeros(m + 1, cols);
    for i in 0..n {
        a.set(0, i, 1);
    }
    a.set(0, n, 1);
    for (i, set) in inst.sets().iter().enumerate() {
        for &e in set {
            a.set(1 + e, i, 1);
        }
    }
    for e in 0..m {
        a.set(1 + e, n + 1 + e, -1);
    }
    let mut b = vec![d];
    b.extend(std::iter::repeat_n(inst.b(), m));
    let upper = std::iter::repeat_n(1, n)
        .chain(std::iter::once(d.max(0)))
        .chain(std::iter::repeat_n(n as i64, m))
        .collect();
    let objective = std::iter::repeat_n(-1, n).chain(std::iter::repeat_n(0, 1 + m)).collect();
    Ok((IlpInstance::new(a, b, vec![0; cols], upper, Some(objective))?, d))
}

/// Result of [`ilp_to_cover`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CoverEncoding {
    pub instance: SetSystemInstance,
    /// Source columns are the first `n` sets.
    pub n: usize,
    /// Optimum of the uniform instance when the source is feasible (`3n`);
    /// also emitted as its cardinality bound.
    pub target_value: i64,
    pub trivial: bool,
}

/// Uniform Set Multi-Cover instance whose covers of size `3n` are exactly
/// the feasible points of `Ax = b`.
///
/// Sets `X_i, X̄_i` (2n) and fresh `F_1..F_{2n}`; elements `v_j` (in `X_i`
/// iff `A_ji = 1`), `w_j` (in `X_i` iff `A_ji = 0`, and in every `X̄_i`), a
/// cardinality element `e*` in all `X, X̄`, and `e_new` in every fresh set.
/// Non-uniform demands `b_j`, `n − b_j`, `n` are topped up to `2n` by adding
/// each old element to `2n − demand` fresh sets, lowest index first.
pub fn ilp_to_cover(inst: &BinaryIlpInstance) -> Result<CoverEncoding> {
    inst.require_zero_one()?;
    let (m, n) = (inst.m(), inst.n());
    let b = inst.b();
    if b.iter().any(|&v| v < 0 || v > n as i64) {
        let instance = SetSystemInstance::new(SetKind::Cover, 1, vec![], 1, None)?;
        return Ok(CoverEncoding {
            instance,
            n,
            target_value: 3 * n as i64,
            trivial: true,
        });
    }
    let fresh = 2 * n;
    let e_star = 2 * m;
    let e_new = 2 * m + 1;
    let mut sets: Vec<Vec<usize>> = vec![Vec::new(); 2 * n + fresh];
    for i in 0..n {
        for j in 0..m {
            if inst.a().get(j, i) == 1 {
                sets[i].push(j);
            } else {
                sets[i].push(m + j);
            }
            sets[n + i].push(m + j);
        }
        sets[i].push(e_star);
        sets[n + i].push(e_star);
    }
    let demands: Vec<i64> = b
        .iter()
        .copied()
        .chain(b.iter().map(|&v| n as i64 - v))
        .chain(std::iter::once(n as i64))
        .collect();
    for (v, &dem) in demands.iter().enumerate() {
        for f in 0..(fresh as i64 - dem) as usize {
            sets[2 * n + f].push(v);
        }
    }
    for f in 0..fresh {
        sets[2 * n + f].push(e_new);
    }
    let target_value = 3 * n as i64;
    let instance = SetSystemInstance::new(
        SetKind::Cover,
        2 * m + 2,
        sets,
        fresh as i64,
        Some(target_value),
    )?;
    Ok(CoverEncoding {
        instance,
        n,
        target_value,
        trivial: false,
    })
}

/// Complements every set, swaps cover and packing, and maps the threshold
/// to `n − b` and the cardinality bound to `n − card` (`n` sets).
pub fn dualize(inst: &SetSystemInstance) -> Result<SetSystemInstance> {
    let n = inst.sets().len() as i64;
    if inst.b() > n {
        return Err(Error::Precondition(format!(
            "threshold {} exceeds the {} sets",
            inst.b(),
            n
        )));
    }
    let sets = inst
        .sets()
        .iter()
        .map(|s| (0..inst.universe()).filter(|e| !s.contains(e)).collect())
        .collect();
    SetSystemInstance::new(
        inst.kind().dual(),
        inst.universe(),
        sets,
        n - inst.b(),
        inst.card().map(|d| n - d),
    )
}

/// One instance where the packing optimum of the dual exceeds `n − opt_cover`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DualityGap {
    pub cover: SetSystemInstance,
    /// `None` when no cover exists.
    pub opt_cover: Option<i64>,
    pub opt_pack: Option<i64>,
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct DualitySearch {
    pub instances: usize,
    /// Cover-feasible selections whose complement is not packing-feasible.
    pub forward_violations: usize,
    pub gaps: Vec<DualityGap>,
}

/// Exhaustive check over covers with universe `1..=max_universe`,
/// `1..=max_sets` sets (as multisets of subsets) and `b ∈ 0..=max_b`.
pub fn duality_search(max_universe: usize, max_sets: usize, max_b: i64) -> Result<DualitySearch> {
    let mut out = DualitySearch::default();
    for universe in 1..=max_universe {
        let subsets: Vec<Vec<usize>> = (0..1u32 << universe)
            .map(|mask| (0..universe).filter(|&e| mask >> e & 1 == 1).collect())
            .collect();
        for count in 1..=max_sets {
            for pick in multisets(subsets.len(), count) {
                let sets: Vec<Vec<usize>> = pick.iter().map(|&p| subsets[p].clone()).collect();
                for b in 0..=max_b.min(count as i64) {
                    let cover = SetSystemInstance::new(SetKind::Cover, universe, sets.clone(), b, None)?;
                    check_duality(&cover, &mut out)?;
                }
            }
        }
    }
    Ok(out)
}

/// Non-decreasing index tuples of length `len` over `0..choices`.
fn multisets(choices: usize, len: usize) -> Vec<Vec<usize>> {
    fn extend(start: usize, choices: usize, len: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == len {
            out.push(cur.clone());
            return;
        }
        for c in start..choices {
            cur.push(c);
            extend(c, choices, len, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    extend(0, choices, len, &mut Vec::with_capacity(len), &mut out);
    out
}

fn check_duality(cover: &SetSystemInstance, out: &mut DualitySearch) -> Result<()> {
    let n = cover.sets().len() as i64;
    let pack = Instance::SetSystem(dualize(cover)?);
    out.instances += 1;
    let mut complements = Vec::new();
    for_each_feasible(&Instance::SetSystem(cover.clone()), u128::MAX, |sel, _| {
        complements.push(sel.iter().map(|&v| 1 - v).collect::<Vec<i64>>());
    })?;
    for sel in complements {
        if !verify_solution(&pack, &Assignment::new(ProblemKind::SetSystem, sel))?.ok() {
            out.forward_violations += 1;
        }
    }
    let opt_cover = oracle_solve(&Instance::SetSystem(cover.clone()), u128::MAX)?.value();
    let opt_pack = oracle_solve(&pack, u128::MAX)?.value();
    let gap = match (opt_cover, opt_pack) {
        (Some(c), Some(p)) => p > n - c,
        (None, Some(_)) => true,
        _ => false,
    };
    if gap {
        out.gaps.push(DualityGap {
            cover: cover.clone(),
            opt_cover,
            opt_pack,
        });
    }
    Ok(())
}
