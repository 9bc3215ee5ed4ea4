//! Vertex solutions of the continuous relaxation `{Ax = b, ℓ ≤ x ≤ u}`.
//!
//! A dense two-phase tableau simplex with Bland's rule, generic over the
//! scalar type. Exact results come from [`Rational`]; `f64` is available for
//! quick estimates but is never used for anything that must be sound.

use std::fmt::Debug;
use std::marker::PhantomData;
use std::ops::Neg;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{Num, ToPrimitive, Zero};

use crate::error::{Error, Result};
use crate::model::IlpInstance;

/// Tableaus above this many entries are refused.
pub const TABLEAU_CAP: usize = 1 << 24;

pub trait LpScalar: Clone + PartialOrd + Num + Neg<Output = Self> + Debug {
    fn from_i64(v: i64) -> Self;
    /// Zero test; exact for rationals, tolerant for floats.
    fn is_negligible(&self) -> bool;
    fn floor_i64(&self) -> Option<i64>;
    fn ceil_i64(&self) -> Option<i64>;
}

impl LpScalar for BigRational {
    fn from_i64(v: i64) -> Self {
        BigRational::from_integer(BigInt::from(v))
    }

    fn is_negligible(&self) -> bool {
        self.is_zero()
    }

    fn floor_i64(&self) -> Option<i64> {
        self.floor().to_integer().to_i64()
    }

    fn ceil_i64(&self) -> Option<i64> {
        self.ceil().to_integer().to_i64()
    }
}

impl LpScalar for f64 {
    fn from_i64(v: i64) -> Self {
        v as f64
    }

    fn is_negligible(&self) -> bool {
        self.abs() < 1e-9
    }

    fn floor_i64(&self) -> Option<i64> {
        let f = (self + 1e-9).floor();
        (f.is_finite() && f.abs() < 9.2e18).then_some(f as i64)
    }

    fn ceil_i64(&self) -> Option<i64> {
        let c = (self - 1e-9).ceil();
        (c.is_finite() && c.abs() < 9.2e18).then_some(c as i64)
    }
}

pub type Rational = BigRational;

#[derive(Clone, Debug, PartialEq)]
pub enum LpOutcome<T> {
    Vertex(Vec<T>),
    Infeasible,
}

impl<T> LpOutcome<T> {
    pub fn vertex(&self) -> Option<&[T]> {
        match self {
            LpOutcome::Vertex(v) => Some(v),
            LpOutcome::Infeasible => None,
        }
    }
}

/// Entry point for one scalar type; see [`ExactSimplex`] and [`FloatSimplex`].
pub struct Simplex<T>(PhantomData<T>);

pub type ExactSimplex = Simplex<Rational>;
pub type FloatSimplex = Simplex<f64>;

/// An exact vertex, optimal for the objective when one is present.
pub fn lp_vertex(inst: &IlpInstance) -> Result<LpOutcome<Rational>> {
    ExactSimplex::vertex(inst)
}

struct Tableau<T> {
    /// Each row: coefficients, then the right-hand side.
    rows: Vec<Vec<T>>,
    basis: Vec<usize>,
    cols: usize,
}

impl<T: LpScalar> Tableau<T> {
    fn pivot(&mut self, r: usize, c: usize) {
        let p = self.rows[r][c].clone();
        for v in self.rows[r].iter_mut() {
            *v = v.clone() / p.clone();
        }
        let pivot_row = self.rows[r].clone();
        for (i, row) in self.rows.iter_mut().enumerate() {
            if i == r || row[c].is_negligible() {
                continue;
            }
            let f = row[c].clone();
            for (v, pv) in row.iter_mut().zip(&pivot_row) {
                if !pv.is_negligible() {
                    *v = v.clone() - f.clone() * pv.clone();
                }
            }
            row[c] = T::zero();
        }
        self.basis[r] = c;
    }

    fn reduced_cost(&self, cost: &[T], j: usize) -> T {
        let mut d = cost[j].clone();
        for (row, &bv) in self.rows.iter().zip(&self.basis) {
            if !cost[bv].is_negligible() && !row[j].is_negligible() {
                d = d - cost[bv].clone() * row[j].clone();
            }
        }
        d
    }

    /// Maximizes `cost` over columns with `allowed[j]`, Bland's rule throughout.
    fn maximize(&mut self, cost: &[T], allowed: &[bool]) {
        let rhs = self.cols;
        loop {
            let basic: Vec<bool> = {
                let mut b = vec![false; self.cols];
                self.basis.iter().for_each(|&j| b[j] = true);
                b
            };
            let entering = (0..self.cols).find(|&j| {
                allowed[j] && !basic[j] && {
                    let d = self.reduced_cost(cost, j);
                    !d.is_negligible() && d > T::zero()
                }
            });
            let Some(c) = entering else { return };
            let mut leave: Option<(usize, T)> = None;
            for (r, row) in self.rows.iter().enumerate() {
                if row[c].is_negligible() || row[c] < T::zero() {
                    continue;
                }
                let ratio = row[rhs].clone() / row[c].clone();
                let better = match &leave {
                    None => true,
                    Some((lr, best)) => {
                        ratio < *best
                            || (!(*best < ratio) && self.basis[r] < self.basis[*lr])
                    }
                };
                if better {
                    leave = Some((r, ratio));
                }
            }
            // Boxed variables keep the problem bounded.
            let (r, _) = leave.expect("bounded relaxation");
            self.pivot(r, c);
        }
    }
}

impl<T: LpScalar> Simplex<T> {
    pub fn vertex(inst: &IlpInstance) -> Result<LpOutcome<T>> {
        inst.ensure_valid()?;
        let (m, n) = (inst.m(), inst.n());
        let free: Vec<usize> = (0..n).filter(|&i| inst.lower[i] < inst.upper[i]).collect();
        let nf = free.len();
        // columns: y (nf), bound slacks (nf), artificials (m), then rhs
        let cols = 2 * nf + m;
        let size = (m + nf).saturating_mul(cols + 1);
        if size > TABLEAU_CAP {
            return Err(Error::Capacity(format!("simplex tableau with {size} entries")));
        }
        let big = |v: i128| -> Result<T> {
            i64::try_from(v)
                .map(T::from_i64)
                .map_err(|_| Error::Overflow("relaxation right-hand side"))
        };
        let mut rows = Vec::with_capacity(m + nf);
        let mut basis = Vec::with_capacity(m + nf);
        for r in 0..m {
            let mut rhs = i128::from(inst.b[r]);
            for i in 0..n {
                rhs -= i128::from(inst.a.get(r, i)) * i128::from(inst.lower[i]);
            }
            let sign = if rhs < 0 { -1 } else { 1 };
            let mut row = vec![T::zero(); cols + 1];
            for (p, &i) in free.iter().enumerate() {
                row[p] = T::from_i64(sign * inst.a.get(r, i));
            }
            row[2 * nf + r] = T::one();
            row[cols] = big(rhs * i128::from(sign))?;
            rows.push(row);
            basis.push(2 * nf + r);
        }
        for (p, &i) in free.iter().enumerate() {
            let mut row = vec![T::zero(); cols + 1];
            row[p] = T::one();
            row[nf + p] = T::one();
            row[cols] = big(i128::from(inst.upper[i]) - i128::from(inst.lower[i]))?;
            rows.push(row);
            basis.push(nf + p);
        }
        let mut t = Tableau { rows, basis, cols };

        let mut phase1 = vec![T::zero(); cols];
        phase1[2 * nf..].iter_mut().for_each(|c| *c = -T::one());
        t.maximize(&phase1, &vec![true; cols]);
        let infeasibility = t
            .rows
            .iter()
            .zip(&t.basis)
            .filter(|(_, &bv)| bv >= 2 * nf)
            .fold(T::zero(), |acc, (row, _)| acc + row[cols].clone());
        if !infeasibility.is_negligible() {
            return Ok(LpOutcome::Infeasible);
        }
        // Drive zero-level artificials out of the basis; drop redundant rows.
        let mut r = 0;
        while r < t.rows.len() {
            if t.basis[r] < 2 * nf {
                r += 1;
                continue;
            }
            match (0..2 * nf).find(|&j| !t.rows[r][j].is_negligible()) {
                Some(c) => {
                    t.pivot(r, c);
                    r += 1;
                }
                None => {
                    t.rows.remove(r);
                    t.basis.remove(r);
                }
            }
        }
        if let Some(c) = &inst.objective {
            let mut cost = vec![T::zero(); cols];
            for (p, &i) in free.iter().enumerate() {
                cost[p] = T::from_i64(c[i]);
            }
            let allowed: Vec<bool> = (0..cols).map(|j| j < 2 * nf).collect();
            t.maximize(&cost, &allowed);
        }
        let mut x: Vec<T> = inst.lower.iter().map(|&l| T::from_i64(l)).collect();
        for (row, &bv) in t.rows.iter().zip(&t.basis) {
            if bv < nf {
                let i = free[bv];
                x[i] = x[i].clone() + row[cols].clone();
            }
        }
        Ok(LpOutcome::Vertex(x))
    }
}

/// `Ax = b` and the box, checked exactly.
pub fn is_feasible_point(inst: &IlpInstance, x: &[Rational]) -> bool {
    let within = x.iter().zip(&inst.lower).zip(&inst.upper).all(|((v, &l), &u)| {
        *v >= Rational::from_i64(l) && *v <= Rational::from_i64(u)
    });
    within
        && (0..inst.m()).all(|r| {
            let lhs = (0..inst.n()).fold(Rational::zero(), |acc, i| {
                acc + Rational::from_i64(inst.a.get(r, i)) * x[i].clone()
            });
            lhs == Rational::from_i64(inst.b[r])
        })
}

/// Coordinates sitting at one of their bounds.
pub fn tight_count(inst: &IlpInstance, x: &[Rational]) -> usize {
    x.iter()
        .zip(&inst.lower)
        .zip(&inst.upper)
        .filter(|((v, &l), &u)| **v == Rational::from_i64(l) || **v == Rational::from_i64(u))
        .count()
}
