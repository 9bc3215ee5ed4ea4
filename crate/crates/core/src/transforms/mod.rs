//! ILP-to-ILP normalizations: 0/1 constraint matrices, binary variables, and
//! an n-fold embedding of binary ILPs.

mod binarize;
mod nfold;
mod zero_one;

pub use binarize::{binarize, proximity_radius, BinarizeTrace, BINARIZE_COLUMN_CAP};
pub use nfold::{block_matrix, signed_digits, to_nfold, NFoldTrace};
pub use zero_one::{zero_one_matrix, BitRowLayout, ZeroOneTrace};
