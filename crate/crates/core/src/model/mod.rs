//! Domain types shared by every solver and reduction.

mod preprocess;
mod problems;
mod report;
mod verify;

pub use preprocess::{merge_identical_columns, shift_to_zero_lower, MergeGroup, MergeTrace, ShiftTrace};
pub use problems::{
    ClosestStringInstance, DiscrepancyInstance, DistanceBound, NFoldInstance, SetKind,
    SetSystemInstance,
};
pub use report::{validate_instance, ValidationReport, Violation};
pub use verify::verify_solution;
pub(crate) use problems::hamming;
pub(crate) use verify::verify_ilp;

use std::fmt;

use crate::arith;
use crate::error::{Error, Result};

/// Dense row-major integer matrix.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct Matrix {
    rows: usize,
    cols: usize,
    data: Vec<i64>,
}

impl Matrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Self {
            rows,
            cols,
            data: vec![0; rows * cols],
        }
    }

    /// Builds a matrix from rows; `cols` is needed when there are no rows.
    pub fn from_rows(rows: Vec<Vec<i64>>, cols: usize) -> Result<Self> {
        let nrows = rows.len();
        let mut data = Vec::with_capacity(nrows * cols);
        for (r, row) in rows.into_iter().enumerate() {
            if row.len() != cols {
                return Err(Error::Precondition(format!(
                    "row {} has {} entries, expected {}",
                    r + 1,
                    row.len(),
                    cols
                )));
            }
            data.extend(row);
        }
        Ok(Self {
            rows: nrows,
            cols,
            data,
        })
    }

    pub fn from_columns(columns: &[Vec<i64>], rows: usize) -> Result<Self> {
        let mut m = Self::zeros(rows, columns.len());
        for (c, col) in columns.iter().enumerate() {
            if col.len() != rows {
                return Err(Error::Precondition(format!(
                    "column {} has {} entries, expected {}",
                    c + 1,
                    col.len(),
                    rows
                )));
            }
            for (r, &v) in col.iter().enumerate() {
                m.set(r, c, v);
            }
        }
        Ok(m)
    }

    #[inline]
    pub fn rows(&self) -> usize {
        self.rows
    }

    #[inline]
    pub fn cols(&self) -> usize {
        self.cols
    }

    #[inline]
    pub fn get(&self, r: usize, c: usize) -> i64 {
        self.data[r * self.cols + c]
    }

    #[inline]
    pub fn set(&mut self, r: usize, c: usize, v: i64) {
        self.data[r * self.cols + c] = v;
    }

    pub fn row(&self, r: usize) -> &[i64] {
        &self.data[r * self.cols..(r + 1) * self.cols]
    }

    pub fn column(&self, c: usize) -> Vec<i64> {
        (0..self.rows).map(|r| self.get(r, c)).collect()
    }

    pub fn entries(&self) -> &[i64] {
        &self.data
    }

    /// Largest absolute entry (Δ). Zero for an empty matrix.
    pub fn max_abs(&self) -> u64 {
        self.data.iter().map(|v| v.unsigned_abs()).max().unwrap_or(0)
    }

    /// `A x` with overflow checking.
    pub fn mul_vec(&self, x: &[i64]) -> Result<Vec<i64>> {
        debug_assert_eq!(x.len(), self.cols);
        (0..self.rows).map(|r| arith::dot(self.row(r), x)).collect()
    }

    pub fn to_rows(&self) -> Vec<Vec<i64>> {
        (0..self.rows).map(|r| self.row(r).to_vec()).collect()
    }
}

/// `max cᵀx  s.t.  A x = b,  ℓ ≤ x ≤ u,  x ∈ ℤⁿ`.
///
/// Fields are public so that malformed instances can be represented and
/// reported by [`validate_instance`]; every algorithm validates first.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct IlpInstance {
    pub a: Matrix,
    pub b: Vec<i64>,
    pub lower: Vec<i64>,
    pub upper: Vec<i64>,
    pub objective: Option<Vec<i64>>,
}

impl IlpInstance {
    pub fn new(
        a: Matrix,
        b: Vec<i64>,
        lower: Vec<i64>,
        upper: Vec<i64>,
        objective: Option<Vec<i64>>,
    ) -> Result<Self> {
        let inst = Self {
            a,
            b,
            lower,
            upper,
            objective,
        };
        inst.ensure_valid()?;
        Ok(inst)
    }

    /// Convenience constructor from row vectors.
    pub fn from_rows(
        rows: Vec<Vec<i64>>,
        b: Vec<i64>,
        lower: Vec<i64>,
        upper: Vec<i64>,
        objective: Option<Vec<i64>>,
    ) -> Result<Self> {
        let n = lower.len();
        Self::new(Matrix::from_rows(rows, n)?, b, lower, upper, objective)
    }

    #[inline]
    pub fn m(&self) -> usize {
        self.a.rows()
    }

    #[inline]
    pub fn n(&self) -> usize {
        self.a.cols()
    }

    pub fn delta(&self) -> u64 {
        self.a.max_abs()
    }

    /// Objective coefficients, with an absent objective read as zero.
    pub fn objective_or_zero(&self) -> Vec<i64> {
        self.objective.clone().unwrap_or_else(|| vec![0; self.n()])
    }

    pub fn objective_value(&self, x: &[i64]) -> Result<i64> {
        match &self.objective {
            Some(c) => arith::dot(c, x),
            None => Ok(0),
        }
    }

    pub fn ensure_valid(&self) -> Result<()> {
        let report = validate_instance(self);
        if report.ok() {
            Ok(())
        } else {
            Err(Error::InvalidInstance(report))
        }
    }

    pub fn is_binary(&self) -> bool {
        self.lower.iter().all(|&l| l == 0) && self.upper.iter().all(|&u| u == 1)
    }
}

/// An ILP with bounds fixed to `{0, 1}`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct BinaryIlpInstance(IlpInstance);

impl BinaryIlpInstance {
    pub fn new(a: Matrix, b: Vec<i64>, objective: Option<Vec<i64>>) -> Result<Self> {
        let n = a.cols();
        Ok(Self(IlpInstance::new(
            a,
            b,
            vec![0; n],
            vec![1; n],
            objective,
        )?))
    }

    pub fn from_rows(rows: Vec<Vec<i64>>, n: usize, b: Vec<i64>) -> Result<Self> {
        Self::new(Matrix::from_rows(rows, n)?, b, None)
    }

    /// Wraps an ILP whose bounds are already exactly `{0, 1}`.
    pub fn try_from_ilp(inst: IlpInstance) -> Result<Self> {
        inst.ensure_valid()?;
        if !inst.is_binary() {
            return Err(Error::Precondition(
                "bounds are not exactly {0,1}".to_string(),
            ));
        }
        Ok(Self(inst))
    }

    /// True when every entry of `A` is 0 or 1.
    pub fn zero_one_matrix(&self) -> bool {
        self.0.a.entries().iter().all(|&v| v == 0 || v == 1)
    }

    pub fn as_ilp(&self) -> &IlpInstance {
        &self.0
    }

    pub fn into_ilp(self) -> IlpInstance {
        self.0
    }

    pub fn m(&self) -> usize {
        self.0.m()
    }

    pub fn n(&self) -> usize {
        self.0.n()
    }

    pub fn a(&self) -> &Matrix {
        &self.0.a
    }

    pub fn b(&self) -> &[i64] {
        &self.0.b
    }

    pub(crate) fn require_zero_one(&self) -> Result<()> {
        if self.zero_one_matrix() {
            Ok(())
        } else {
            Err(Error::Precondition("constraint matrix must be 0/1".into()))
        }
    }
}

/// The problem a file, instance or solution belongs to.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum ProblemKind {
    Ilp,
    Bilp,
    ClosestString,
    Discrepancy,
    SetSystem,
    NFold,
}

impl ProblemKind {
    pub const ALL: [ProblemKind; 6] = [
        ProblemKind::Ilp,
        ProblemKind::Bilp,
        ProblemKind::ClosestString,
        ProblemKind::Discrepancy,
        ProblemKind::SetSystem,
        ProblemKind::NFold,
    ];

    /// Stable lowercase tag used in solution files.
    pub fn tag(self) -> &'static str {
        match self {
            ProblemKind::Ilp => "ilp",
            ProblemKind::Bilp => "bilp",
            ProblemKind::ClosestString => "cstring",
            ProblemKind::Discrepancy => "disc",
            ProblemKind::SetSystem => "setsys",
            ProblemKind::NFold => "nfold",
        }
    }

    pub fn from_tag(tag: &str) -> Option<Self> {
        Self::ALL.into_iter().find(|k| k.tag() == tag)
    }
}

impl fmt::Display for ProblemKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.tag())
    }
}

/// Any problem instance the toolkit understands.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Instance {
    Ilp(IlpInstance),
    Bilp(BinaryIlpInstance),
    ClosestString(ClosestStringInstance),
    Discrepancy(DiscrepancyInstance),
    SetSystem(SetSystemInstance),
    NFold(NFoldInstance),
}

impl Instance {
    pub fn kind(&self) -> ProblemKind {
        match self {
            Instance::Ilp(_) => ProblemKind::Ilp,
            Instance::Bilp(_) => ProblemKind::Bilp,
            Instance::ClosestString(_) => ProblemKind::ClosestString,
            Instance::Discrepancy(_) => ProblemKind::Discrepancy,
            Instance::SetSystem(_) => ProblemKind::SetSystem,
            Instance::NFold(_) => ProblemKind::NFold,
        }
    }

    /// Length of a solution vector for this instance.
    pub fn solution_len(&self) -> usize {
        match self {
            Instance::Ilp(i) => i.n(),
            Instance::Bilp(i) => i.n(),
            Instance::ClosestString(i) => i.n(),
            Instance::Discrepancy(i) => i.universe(),
            Instance::SetSystem(i) => i.sets().len(),
            Instance::NFold(i) => i.blocks() * i.block_rows(),
        }
    }

    /// The ILP view of ILP-like instances.
    pub fn as_ilp(&self) -> Option<&IlpInstance> {
        match self {
            Instance::Ilp(i) => Some(i),
            Instance::Bilp(i) => Some(i.as_ilp()),
            _ => None,
        }
    }
}

/// A solution vector tagged with the problem it solves.
///
/// Encodings: ILP values as-is; strings as 0/1 characters; colorings as ±1;
/// set selections as 0/1 indicators; n-fold as concatenated blocks.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Assignment {
    pub kind: ProblemKind,
    pub values: Vec<i64>,
}

impl Assignment {
    pub fn new(kind: ProblemKind, values: Vec<i64>) -> Self {
        Self { kind, values }
    }
}
