//! Bounded variables to binary ones, by unary expansion after an optional
//! proximity trim around an optimal vertex of the relaxation.

use crate::arith;
use crate::error::{Error, Result};
use crate::lp::{lp_vertex, LpOutcome, LpScalar};
use crate::model::{BinaryIlpInstance, IlpInstance, Matrix};

/// Expansions wider than this many binary columns are refused.
pub const BINARIZE_COLUMN_CAP: usize = 1 << 20;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BinarizeTrace {
    /// Lower bounds after trimming; `x_i = lower_i + Σ duplicates`.
    pub lower: Vec<i64>,
    /// Duplicate columns per original variable, in order.
    pub copies: Vec<usize>,
    /// `cᵀℓ'`, added back to target objective values.
    pub constant: i64,
    /// Whether bounds were trimmed around the relaxation vertex.
    pub trimmed: bool,
}

impl BinarizeTrace {
    pub fn pull_back(&self, y: &[i64]) -> Vec<i64> {
        let mut offset = 0;
        self.lower
            .iter()
            .zip(&self.copies)
            .map(|(&l, &c)| {
                let s: i64 = y[offset..offset + c].iter().sum();
                offset += c;
                l + s
            })
            .collect()
    }
}

/// `m·(2mΔ+1)^m`, or `None` when it does not fit in 64 bits.
pub fn proximity_radius(m: usize, delta: u64) -> Option<i64> {
    let m64 = i64::try_from(m).ok()?;
    let base = m64.checked_mul(2)?.checked_mul(delta as i64)?.checked_add(1)?;
    let pow = base.checked_pow(u32::try_from(m).ok()?)?;
    let r = pow.checked_mul(m64)?;
    (r.unsigned_abs() < arith::MAGNITUDE_CAP).then_some(r)
}

/// Trims `[ℓ, u]` to the proximity box when that is smaller, or returns `None`.
fn trimmed_bounds(inst: &IlpInstance) -> Result<Option<(Vec<i64>, Vec<i64>)>> {
    let Some(radius) = proximity_radius(inst.m(), inst.delta()) else {
        return Ok(None);
    };
    let wide = inst
        .lower
        .iter()
        .zip(&inst.upper)
        .any(|(&l, &u)| (u as i128 - l as i128) > 2 * radius as i128);
    if !wide {
        return Ok(None);
    }
    let LpOutcome::Vertex(x) = lp_vertex(inst)? else {
        return Ok(None);
    };
    let mut lower = Vec::with_capacity(inst.n());
    let mut upper = Vec::with_capacity(inst.n());
    for ((v, &l), &u) in x.iter().zip(&inst.lower).zip(&inst.upper) {
        let (lo, hi) = match (v.ceil_i64(), v.floor_i64()) {
            (Some(c), Some(f)) => (c.saturating_sub(radius), f.saturating_add(radius)),
            _ => return Err(Error::Overflow("relaxation vertex")),
        };
        lower.push(l.max(lo));
        upper.push(u.min(hi));
    }
    Ok(Some((lower, upper)))
}

pub fn binarize(inst: &IlpInstance, use_proximity: bool) -> Result<(BinaryIlpInstance, BinarizeTrace)> {
    inst.ensure_valid()?;
    let trim = if use_proximity { trimmed_bounds(inst)? } else { None };
    let trimmed = trim.is_some();
    let (lower, upper) = trim.unwrap_or_else(|| (inst.lower.clone(), inst.upper.clone()));
    let mut copies = Vec::with_capacity(inst.n());
    let mut total = 0usize;
    for (&l, &u) in lower.iter().zip(&upper) {
        let c = usize::try_from(u as i128 - l as i128).unwrap_or(usize::MAX);
        total = total.saturating_add(c);
        copies.push(c);
    }
    if total > BINARIZE_COLUMN_CAP {
        return Err(Error::Capacity(format!(
            "binary expansion needs {total} columns, cap is {BINARIZE_COLUMN_CAP}"
        )));
    }
    let mut columns = Vec::with_capacity(total);
    let mut objective = inst.objective.as_ref().map(|_| Vec::with_capacity(total));
    for (i, &c) in copies.iter().enumerate() {
        let col = inst.a.column(i);
        for _ in 0..c {
            columns.push(col.clone());
            if let (Some(obj), Some(src)) = (objective.as_mut(), inst.objective.as_ref()) {
                obj.push(src[i]);
            }
        }
    }
    let a = Matrix::from_columns(&columns, inst.m())?;
    let shift = inst.a.mul_vec(&lower)?;
    let b = inst
        .b
        .iter()
        .zip(&shift)
        .map(|(&b, &s)| arith::sub(b, s))
        .collect::<Result<Vec<_>>>()?;
    let constant = inst.objective_value(&lower)?;
    let target = BinaryIlpInstance::new(a, b, objective)?;
    Ok((
        target,
        BinarizeTrace {
            lower,
            copies,
            constant,
            trimmed,
        },
    ))
}
