//! Rewriting an ILP with entries up to Δ into one with a 0/1 matrix.
//!
//! Every original row `j` becomes `4(k+1)` rows, `k = ⌈log₂ Δ⌉`: bit rows
//! `r⁺_i`, `r⁻_i` receive the binary digits of positive and negative entries,
//! and companion rows `r'⁺_i`, `r'⁻_i` tie pairs of auxiliary columns
//! together. The auxiliary columns move carries between adjacent bit rows so
//! that, summed with weights `2^i`, every solution reproduces row `j`.

use crate::arith::{self, ceil_log2};
use crate::error::{Error, Result};
use crate::model::{IlpInstance, Matrix};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct BitRowLayout {
    pub k: u32,
    pub m: usize,
}

impl BitRowLayout {
    fn block(&self) -> usize {
        4 * (self.k as usize + 1)
    }

    /// Total rows, `4m(k+1)`.
    pub fn rows(&self) -> usize {
        self.m * self.block()
    }

    pub fn plus(&self, j: usize, i: usize) -> usize {
        j * self.block() + 2 * i
    }

    pub fn plus_companion(&self, j: usize, i: usize) -> usize {
        self.plus(j, i) + 1
    }

    pub fn minus(&self, j: usize, i: usize) -> usize {
        j * self.block() + 2 * (self.k as usize + 1) + 2 * i
    }

    pub fn minus_companion(&self, j: usize, i: usize) -> usize {
        self.minus(j, i) + 1
    }

    /// Auxiliary columns per original row: `5k + 3`.
    pub fn aux_per_row(&self) -> usize {
        5 * self.k as usize + 3
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ZeroOneTrace {
    pub layout: BitRowLayout,
    /// The original columns are the first `original_n` target columns.
    pub original_n: usize,
    /// Box bound `U` of the auxiliary columns.
    pub aux_bound: i64,
}

impl ZeroOneTrace {
    pub fn pull_back(&self, x: &[i64]) -> Vec<i64> {
        x[..self.original_n].to_vec()
    }
}

/// Requires `Δ ≥ 2`; auxiliary columns get the box `[−U, U]` with
/// `U = (k+2)·Σ_i max(|ℓ_i|, |u_i|)·Δ`.
pub fn zero_one_matrix(inst: &IlpInstance) -> Result<(IlpInstance, ZeroOneTrace)> {
    inst.ensure_valid()?;
    let delta = inst.delta();
    if delta < 2 {
        return Err(Error::Precondition(format!("needs Δ ≥ 2, got {delta}")));
    }
    let (m, n) = (inst.m(), inst.n());
    let k = ceil_log2(delta);
    let layout = BitRowLayout { k, m };
    let mut mass = 0i64;
    for (&l, &u) in inst.lower.iter().zip(&inst.upper) {
        mass = arith::add(mass, l.abs().max(u.abs()))?;
    }
    let aux_bound = arith::mul(arith::mul(i64::from(k) + 2, mass)?, delta as i64)?;
    if aux_bound.unsigned_abs() >= arith::MAGNITUDE_CAP {
        return Err(Error::Overflow("auxiliary bound"));
    }

    let ku = k as usize;
    let cols = n + m * layout.aux_per_row();
    let mut a = Matrix::zeros(layout.rows(), cols);
    let mut b = vec![0i64; layout.rows()];
    for j in 0..m {
        for c in 0..n {
            let v = inst.a.get(j, c);
            for i in 0..=ku {
                if (v.unsigned_abs() >> i) & 1 == 1 {
                    let row = if v > 0 { layout.plus(j, i) } else { layout.minus(j, i) };
                    a.set(row, c, 1);
                }
            }
        }
        b[layout.plus(j, 0)] = inst.b[j];
        let mut col = n + j * layout.aux_per_row();
        let mut place = |rows: &[usize]| {
            for &r in rows {
                a.set(r, col, 1);
            }
            col += 1;
        };
        for i in 0..ku {
            // carry from the positive side of bit i to the negative side of bit i+1
            place(&[layout.plus(j, i), layout.plus_companion(j, i), layout.minus(j, i + 1)]);
        }
        for i in 0..ku {
            place(&[layout.minus(j, i), layout.minus_companion(j, i), layout.plus(j, i + 1)]);
        }
        for i in 0..=ku {
            place(&[layout.plus_companion(j, i), layout.minus(j, i)]);
        }
        for i in 0..=ku {
            place(&[layout.minus_companion(j, i), layout.plus(j, i)]);
        }
        for i in 0..=ku {
            place(&[layout.minus(j, i), layout.plus(j, i)]);
        }
    }
    let aux = cols - n;
    let lower = inst.lower.iter().copied().chain(std::iter::repeat_n(-aux_bound, aux)).collect();
    let upper = inst.upper.iter().copied().chain(std::iter::repeat_n(aux_bound, aux)).collect();
    let objective = inst
        .objective
        .as_ref()
        .map(|c| c.iter().copied().chain(std::iter::repeat_n(0, aux)).collect());
    let target = IlpInstance::new(a, b, lower, upper, objective)?;
    Ok((
        target,
        ZeroOneTrace {
            layout,
            original_n: n,
            aux_bound,
        },
    ))
}
