//! Discrepancy ↔ binary ILP.

use crate::arith::ceil_log2;
use crate::error::{Error, Result};
use crate::model::{BinaryIlpInstance, DiscrepancyInstance, IlpInstance, Matrix};

/// Colorings of discrepancy at most `d` as an ILP over `[x (n), s (m), s' (m)]`
/// with `χ = 2x − 1`: rows `2Ax + s = A𝟏 + d` and `−2Ax + s' = −A𝟏 + d`.
pub fn disc_to_ilp(inst: &DiscrepancyInstance, d: Option<i64>) -> Result<(IlpInstance, i64)> {
    let d = d
        .or(inst.target())
        .ok_or_else(|| Error::Precondition("minimize mode needs a discrepancy bound".into()))?;
    let (m, n) = (inst.sets().len(), inst.universe());
    let mut a = Matrix::zeros(2 * m, n + 2 * m);
    let mut b = Vec::with_capacity(2 * m);
    let mut upper = vec![1; n];
    for (r, set) in inst.sets().iter().enumerate() {
        for &e in set {
            a.set(r, e, 2);
            a.set(m + r, e, -2);
        }
        a.set(r, n + r, 1);
        a.set(m + r, n + m + r, 1);
        b.push(set.len() as i64 + d);
    }
    for r in 0..m {
        b.push(-(inst.sets()[r].len() as i64) + d);
    }
    for _ in 0..2 {
        upper.extend(inst.sets().iter().map(|s| (s.len() as i64 + d).max(0)));
    }
    let ilp = IlpInstance::new(a, b, vec![0; n + 2 * m], upper, None)?;
    Ok((ilp, d))
}

/// Matrices `B, B̄ ∈ {0,1}^{(2k−1)×2^{k−1}}` such that `Bz + B̄z̄ = 0` has
/// exactly the sign solutions `z = −z̄ = ±𝟏`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DiscrepancyGadget {
    pub k: u32,
    pub b: Matrix,
    pub b_bar: Matrix,
}

/// Doubling recursion from `B = B̄ = (1)`: append a zero block on the right,
/// then two balancing rows (halves swapped between `B` and `B̄`).
pub fn build_equality_gadget(k: u32) -> Result<DiscrepancyGadget> {
    if k == 0 {
        return Err(Error::Precondition("gadget needs k ≥ 1".into()));
    }
    if k > 24 {
        return Err(Error::Capacity(format!("gadget with 2^{k} columns")));
    }
    let mut b = vec![vec![1i64]];
    let mut b_bar = vec![vec![1i64]];
    for _ in 1..k {
        let w = b[0].len();
        let grow = |rows: &mut Vec<Vec<i64>>, first: bool| {
            for row in rows.iter_mut() {
                row.resize(2 * w, 0);
            }
            let left: Vec<i64> = (0..2 * w).map(|i| i64::from(i < w)).collect();
            let right: Vec<i64> = (0..2 * w).map(|i| i64::from(i >= w)).collect();
            if first {
                rows.push(left);
                rows.push(right);
            } else {
                rows.push(right);
                rows.push(left);
            }
        };
        grow(&mut b, true);
        grow(&mut b_bar, false);
    }
    let w = 1usize << (k - 1);
    Ok(DiscrepancyGadget {
        k,
        b: Matrix::from_rows(b, w)?,
        b_bar: Matrix::from_rows(b_bar, w)?,
    })
}

/// Where the blocks of an `ilp_to_disc` universe sit.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct DiscLayout {
    /// Source variables `y`, elements `0..n`.
    pub n: usize,
    /// `z` and `z̄` have `2^k` elements each.
    pub k: u32,
    /// True when the source was rejected up front (`‖2b − A𝟏‖∞ > n`).
    pub trivial: bool,
}

impl DiscLayout {
    pub fn z_block(&self) -> std::ops::Range<usize> {
        self.n..self.n + (1 << self.k)
    }

    /// `χ ↦ x`: orient so the `z` block is `−1`, then `x = (1 + y)/2`.
    pub fn pull_back(&self, chi: &[i64]) -> Vec<i64> {
        let flip = chi[self.z_block()].iter().any(|&v| v != -1);
        chi[..self.n]
            .iter()
            .map(|&c| {
                let y = if flip { -c } else { c };
                (1 + y) / 2
            })
            .collect()
    }
}

/// Discrepancy-zero instance over `n + 2^{k+1}` elements (`y, z, z̄`) with
/// `m + 2k + 1` sets, `k = ⌈log₂ max(n, 2)⌉`, feasible exactly when `Ax = b`
/// is. The gadget needs width `2^k ≥ n`, hence parameter `k + 1`.
pub fn ilp_to_disc(inst: &BinaryIlpInstance) -> Result<(DiscrepancyInstance, DiscLayout)> {
    inst.require_zero_one()?;
    let (m, n) = (inst.m(), inst.n());
    let k = ceil_log2(n.max(2) as u64);
    let row_sums: Vec<i64> = (0..m).map(|j| inst.a().row(j).iter().sum()).collect();
    let target: Vec<i64> = (0..m).map(|j| 2 * inst.b()[j] - row_sums[j]).collect();
    if target.iter().any(|v| v.unsigned_abs() > n as u64) {
        let inst = DiscrepancyInstance::new(1, vec![vec![0]], Some(0))?;
        return Ok((inst, DiscLayout { n, k, trivial: true }));
    }
    let gadget = build_equality_gadget(k + 1)?;
    let w = 1usize << k;
    let universe = n + 2 * w;
    let mut sets = Vec::with_capacity(m + 2 * k as usize + 1);
    for j in 0..m {
        let mut set: Vec<usize> = (0..n).filter(|&i| inst.a().get(j, i) == 1).collect();
        // z = −𝟏 and z̄ = 𝟏 must contribute −b'_j: ones of C (in z) when
        // b'_j ≥ 0, of C̄ (in z̄) otherwise, at the lowest positions.
        let t = target[j];
        let base = if t >= 0 { n } else { n + w };
        set.extend((0..t.unsigned_abs() as usize).map(|i| base + i));
        sets.push(set);
    }
    for r in 0..gadget.b.rows() {
        let mut set: Vec<usize> = (0..w).filter(|&i| gadget.b.get(r, i) == 1).map(|i| n + i).collect();
        set.extend((0..w).filter(|&i| gadget.b_bar.get(r, i) == 1).map(|i| n + w + i));
        sets.push(set);
    }
    let out = DiscrepancyInstance::new(universe, sets, Some(0))?;
    Ok((out, DiscLayout { n, k, trivial: false }))
}
