//! Enumeration of `{Ax = b, ℓ ≤ x ≤ u} ∩ ℤⁿ`.
//!
//! Plain box enumeration is hopeless once slack and carry columns appear, so
//! the system is first brought to reduced row echelon form over the
//! rationals. Only the non-pivot columns are enumerated; every pivot column is
//! then determined, and checked for integrality and bounds.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, ToPrimitive, Zero};

use crate::error::{Error, Result};
use crate::model::IlpInstance;

/// `scale·x_col = rhs − Σ coef·x_free`.
struct PivotRow {
    col: usize,
    scale: i128,
    rhs: i128,
    coefs: Vec<(usize, i128)>,
}

pub(crate) struct Eliminated {
    pivots: Vec<PivotRow>,
    /// Non-pivot columns in increasing index order.
    free: Vec<usize>,
    inconsistent: bool,
}

fn to_i128(v: &BigInt) -> Result<i128> {
    v.to_i128()
        .ok_or_else(|| Error::Capacity("eliminated system coefficients exceed 128 bits".into()))
}

impl Eliminated {
    pub fn new(inst: &IlpInstance) -> Result<Self> {
        let (m, n) = (inst.m(), inst.n());
        let q = |v: i64| BigRational::from_integer(BigInt::from(v));
        let mut rows: Vec<Vec<BigRational>> = (0..m)
            .map(|r| {
                let mut row: Vec<_> = inst.a.row(r).iter().map(|&v| q(v)).collect();
                row.push(q(inst.b[r]));
                row
            })
            .collect();
        // Prefer wide columns as pivots so that narrow ones get enumerated.
        let mut order: Vec<usize> = (0..n).collect();
        order.sort_by_key(|&i| (std::cmp::Reverse(inst.upper[i] as i128 - inst.lower[i] as i128), i));
        let mut pivot_cols = Vec::new();
        let mut r = 0;
        for &c in &order {
            if r == m {
                break;
            }
            let Some(p) = (r..m).find(|&i| !rows[i][c].is_zero()) else {
                continue;
            };
            rows.swap(r, p);
            let lead = rows[r][c].clone();
            for v in rows[r].iter_mut() {
                *v /= lead.clone();
            }
            let pivot = rows[r].clone();
            for (i, row) in rows.iter_mut().enumerate() {
                if i != r && !row[c].is_zero() {
                    let f = row[c].clone();
                    for (v, pv) in row.iter_mut().zip(&pivot) {
                        *v -= f.clone() * pv;
                    }
                }
            }
            pivot_cols.push(c);
            r += 1;
        }
        let inconsistent = rows[r..].iter().any(|row| !row[n].is_zero());
        let mut is_pivot = vec![false; n];
        pivot_cols.iter().for_each(|&c| is_pivot[c] = true);
        let free: Vec<usize> = (0..n).filter(|&c| !is_pivot[c]).collect();
        let mut pivots = Vec::with_capacity(pivot_cols.len());
        for (row, &col) in rows.iter().zip(&pivot_cols) {
            let scale = row
                .iter()
                .fold(BigInt::one(), |acc, v| acc.lcm(v.denom()));
            let int = |v: &BigRational| to_i128(&(v * BigRational::from_integer(scale.clone())).to_integer());
            let coefs = free
                .iter()
                .enumerate()
                .filter(|(_, &f)| !row[f].is_zero())
                .map(|(k, &f)| Ok((k, int(&row[f])?)))
                .collect::<Result<Vec<_>>>()?;
            pivots.push(PivotRow {
                col,
                scale: to_i128(&scale)?,
                rhs: int(&row[n])?,
                coefs,
            });
        }
        Ok(Self {
            pivots,
            free,
            inconsistent,
        })
    }

    /// Number of free-column assignments to try.
    pub fn candidates(&self, inst: &IlpInstance) -> u128 {
        if self.inconsistent {
            return 0;
        }
        self.free.iter().fold(1u128, |acc, &f| {
            acc.saturating_mul((inst.upper[f] as i128 - inst.lower[f] as i128 + 1) as u128)
        })
    }

    /// Visits every integer solution; free columns advance lexicographically.
    pub fn for_each(&self, inst: &IlpInstance, mut f: impl FnMut(&[i64])) -> Result<()> {
        if self.inconsistent {
            return Ok(());
        }
        let n = inst.n();
        let mut x = inst.lower.clone();
        let mut vals: Vec<i64> = self.free.iter().map(|&c| inst.lower[c]).collect();
        'outer: loop {
            for (k, &c) in self.free.iter().enumerate() {
                x[c] = vals[k];
            }
            let mut ok = true;
            for p in &self.pivots {
                let mut num = p.rhs;
                for &(k, coef) in &p.coefs {
                    num = coef
                        .checked_mul(i128::from(vals[k]))
                        .and_then(|t| num.checked_sub(t))
                        .ok_or_else(|| Error::Capacity("oracle arithmetic exceeds 128 bits".into()))?;
                }
                if num % p.scale != 0 {
                    ok = false;
                    break;
                }
                let v = num / p.scale;
                if v < i128::from(inst.lower[p.col]) || v > i128::from(inst.upper[p.col]) {
                    ok = false;
                    break;
                }
                x[p.col] = v as i64;
            }
            if ok {
                debug_assert_eq!(x.len(), n);
                f(&x);
            }
            // odometer, last free column fastest
            let mut k = self.free.len();
            loop {
                if k == 0 {
                    break 'outer;
                }
                k -= 1;
                if vals[k] < inst.upper[self.free[k]] {
                    vals[k] += 1;
                    break;
                }
                vals[k] = inst.lower[self.free[k]];
            }
        }
        Ok(())
    }
}
