//! Exact tools for integer linear programs with few constraints.

pub mod arith;
pub mod cover;
pub mod dp;
mod error;
pub mod formats;
pub mod gen;
pub mod lp;
pub mod model;
pub mod oracle;
pub mod reductions;
pub mod transforms;

pub use error::{Error, Result};
pub use model::{
    Assignment, BinaryIlpInstance, IlpInstance, Instance, Matrix, ProblemKind, ValidationReport,
};
pub use lp::{ExactSimplex, FloatSimplex, Rational};
