//! Power-of-two covers: coefficients `c_0..c_h ∈ {0,1,2}` such that the
//! bounded sums `Σ 2^i x_i` with `0 ≤ x_i ≤ c_i` are exactly `{0, …, k}`.

use crate::arith::floor_log2;
use crate::error::{Error, Result};
use crate::model::IlpInstance;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CoverCoeffs {
    /// The covered integer.
    pub k: u64,
    /// Top level; `coeffs` has `h + 1` entries.
    pub h: u32,
    pub coeffs: Vec<u8>,
    /// `2^{⌊log₂ k⌋} − 1`, the all-ones low part.
    pub bottom: u64,
    /// `k − bottom`.
    pub top: u64,
}

impl CoverCoeffs {
    /// `Σ coeffs[i]·2^i`; equals `k` for every constructed cover.
    pub fn total(&self) -> u64 {
        self.coeffs
            .iter()
            .enumerate()
            .map(|(i, &c)| u64::from(c) << i)
            .sum()
    }
}

/// Builds the cover of `k` with `h + 1` levels.
///
/// The construction always runs at `h' = ⌊log₂ k⌋` and zero-pads up to `h`:
/// taking the low part as `2^h − 1` for a larger `h` would make the top part
/// negative.
pub fn build_cover(k: u64, h: u32) -> Result<CoverCoeffs> {
    if k == 0 {
        return Ok(CoverCoeffs {
            k,
            h,
            coeffs: vec![0; h as usize + 1],
            bottom: 0,
            top: 0,
        });
    }
    let base = floor_log2(k);
    if h < base {
        return Err(Error::Precondition(format!(
            "cover of {k} needs at least {base} levels above zero, got {h}"
        )));
    }
    if h >= 63 {
        return Err(Error::Capacity(format!("{h} cover levels")));
    }
    let bottom = (1u64 << base) - 1;
    let top = k - bottom;
    let bit = |v: u64, i: u32| ((v >> i) & 1) as u8;
    let coeffs = (0..=h).map(|i| bit(bottom, i) + bit(top, i)).collect();
    Ok(CoverCoeffs {
        k,
        h,
        coeffs,
        bottom,
        top,
    })
}

/// Per-level bounds `c_j(u_i)` for every column of a zero-lower-bound instance.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LevelBounds {
    pub h: u32,
    /// `levels[j][i] = c_j(u_i)`.
    pub levels: Vec<Vec<u8>>,
}

impl LevelBounds {
    pub fn level(&self, j: u32) -> &[u8] {
        &self.levels[j as usize]
    }

    /// Number of levels, `h + 1`.
    pub fn count(&self) -> usize {
        self.levels.len()
    }
}

/// Decomposes each upper bound with a cover at the common height
/// `h = ⌊log₂ max u_i⌋` (zero when every bound is at most one).
pub fn leveled_bounds(inst: &IlpInstance) -> Result<LevelBounds> {
    if inst.lower.iter().any(|&l| l != 0) {
        return Err(Error::Precondition("lower bounds must be zero".into()));
    }
    if let Some(&u) = inst.upper.iter().find(|&&u| u < 0) {
        return Err(Error::Precondition(format!("negative upper bound {u}")));
    }
    let max_u = inst.upper.iter().copied().max().unwrap_or(0) as u64;
    let h = if max_u <= 1 { 0 } else { floor_log2(max_u) };
    let mut levels = vec![vec![0u8; inst.n()]; h as usize + 1];
    for (i, &u) in inst.upper.iter().enumerate() {
        let cover = build_cover(u as u64, h)?;
        for (j, &c) in cover.coeffs.iter().enumerate() {
            levels[j][i] = c;
        }
    }
    Ok(LevelBounds { h, levels })
}
