//! Embedding a binary ILP into an n-fold ILP with entries in `{−2,…,2}`.
//!
//! Each source column becomes one block whose diagonal matrix admits exactly
//! two nonnegative solutions: `(0,…,0,1)` (column off) and the geometric
//! `(1,2,…,2^{m−2},0)` (column on). The coupling rows hold signed digits `λ`
//! with `Σ λ_l 2^l = A_ji`, so the geometric solution contributes `A_ji`.

use crate::error::{Error, Result};
use crate::model::{BinaryIlpInstance, Matrix, NFoldInstance};

/// Digits `λ ∈ {−2,…,2}^w` with `Σ λ_i 2^i = v`; requires `|v| ≤ 2^{w+1} − 2`.
pub fn signed_digits(v: i64, width: u32) -> Result<Vec<i64>> {
    let limit = if width >= 61 { i64::MAX } else { (1i64 << (width + 1)) - 2 };
    if v.unsigned_abs() > limit as u64 {
        return Err(Error::Precondition(format!(
            "|{v}| exceeds {limit}, the reach of {width} digits in {{-2,…,2}}"
        )));
    }
    let mut rest = v.unsigned_abs() as i64;
    let mut digits = vec![0i64; width as usize];
    for i in (0..width as usize).rev() {
        let d = (rest >> i).min(2);
        digits[i] = d;
        rest -= d << i;
    }
    debug_assert_eq!(rest, 0);
    if v < 0 {
        digits.iter_mut().for_each(|d| *d = -*d);
    }
    Ok(digits)
}

/// The `m×m` diagonal block: row 0 is `e_1 + e_m`, row 1 is zero, and row
/// `r ≥ 2` reads `2·x_{r−2} − x_{r−1} = 0`.
pub fn block_matrix(m: usize) -> Matrix {
    let mut b = Matrix::zeros(m, m);
    if m == 0 {
        return b;
    }
    b.set(0, 0, 1);
    b.set(0, m - 1, b.get(0, m - 1) + 1);
    for r in 2..m {
        b.set(r, r - 2, 2);
        b.set(r, r - 1, -1);
    }
    b
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NFoldTrace {
    pub block_rows: usize,
    pub blocks: usize,
}

impl NFoldTrace {
    /// `x_i` is the first coordinate of block `i`.
    pub fn pull_back(&self, y: &[i64]) -> Vec<i64> {
        (0..self.blocks).map(|i| y[i * self.block_rows]).collect()
    }
}

/// Rows are padded with zero rows up to at least three, the smallest size
/// for which the block matrix has its two-solution property.
pub fn to_nfold(inst: &BinaryIlpInstance) -> Result<(NFoldInstance, NFoldTrace)> {
    let (m, n) = (inst.m(), inst.n());
    let mb = m.max(3);
    let width = (mb - 1) as u32;
    let b_block = block_matrix(mb);
    let mut coupling = Vec::with_capacity(n);
    for i in 0..n {
        let mut a = Matrix::zeros(mb, mb);
        for j in 0..m {
            for (l, d) in signed_digits(inst.a().get(j, i), width)?.into_iter().enumerate() {
                a.set(j, l, d);
            }
        }
        coupling.push(a);
    }
    let mut b0 = inst.b().to_vec();
    b0.resize(mb, 0);
    let mut e1 = vec![0; mb];
    e1[0] = 1;
    let target = NFoldInstance::new(mb, coupling, vec![b_block; n], b0, vec![e1; n])?;
    Ok((
        target,
        NFoldTrace {
            block_rows: mb,
            blocks: n,
        },
    ))
}
