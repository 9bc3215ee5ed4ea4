//! One variable layer: every present key may take 0, 1 or 2 copies of the
//! column. Both sweeps keep the smallest step on ties, so their tables agree.

use rayon::prelude::*;

use super::level::{Grid, ABSENT};
use crate::arith;
use crate::error::{Error, Result};

pub(super) struct Layer {
    var: usize,
    cap: usize,
    /// `s·A_i` in grid coordinates, for `s = 0..=cap`.
    moves: Vec<Vec<i64>>,
    /// Flat-index offset of each step.
    offsets: Vec<isize>,
    /// `s·2^j·c_i`.
    weights: Vec<i64>,
}

impl Layer {
    pub fn new(grid: &Grid, var: usize, cap: u8, column: &[i64], step: i64, c: i64) -> Result<Self> {
        let cap = usize::from(cap);
        let mut moves = Vec::with_capacity(cap + 1);
        let mut offsets = Vec::with_capacity(cap + 1);
        let mut weights = Vec::with_capacity(cap + 1);
        for s in 0..=cap as i64 {
            let mv: Vec<i64> = column.iter().map(|&a| s * a).collect();
            offsets.push(
                mv.iter()
                    .zip(&grid.strides)
                    .map(|(&d, &st)| d as isize * st as isize)
                    .sum(),
            );
            moves.push(mv);
            weights.push(arith::mul(arith::mul(s, step)?, c)?);
        }
        Ok(Self {
            var,
            cap,
            moves,
            offsets,
            weights,
        })
    }

    fn mark(&self, z: &mut [u64], s: usize) {
        z[self.var / 32] |= (s as u64) << (2 * (self.var % 32));
    }
}

/// Reference sweep: scatter from every present key of `old` into `new`.
pub(super) fn serial(old: &Grid, new: &mut Grid, layer: &Layer) -> Result<u64> {
    let w = old.words;
    new.values.copy_from_slice(&old.values);
    new.z.copy_from_slice(&old.z);
    let mut relaxations = 0;
    for s in 1..=layer.cap {
        let (off, weight) = (layer.offsets[s], layer.weights[s]);
        for (idx, &v) in old.values.iter().enumerate() {
            if v == ABSENT {
                continue;
            }
            relaxations += 1;
            let cand = v.checked_add(weight).ok_or(Error::Overflow("partial value"))?;
            let to = (idx as isize + off) as usize;
            if cand > new.values[to] {
                new.values[to] = cand;
                let dst = &mut new.z[to * w..(to + 1) * w];
                dst.copy_from_slice(old.z_of(idx));
                layer.mark(dst, s);
            }
        }
    }
    Ok(relaxations)
}

const CHUNK: usize = 2048;

/// Data-parallel sweep: every target cell gathers its best source.
pub(super) fn parallel(old: &Grid, new: &mut Grid, layer: &Layer) -> Result<u64> {
    let w = old.words;
    let m = old.dims.len();
    new.values
        .par_chunks_mut(CHUNK)
        .zip(new.z.par_chunks_mut(CHUNK * w))
        .enumerate()
        .map(|(chunk, (values, zs))| -> Result<u64> {
            let mut relaxations = 0;
            let mut coords = vec![0i64; m];
            for (off, slot) in values.iter_mut().enumerate() {
                let idx = chunk * CHUNK + off;
                let mut rest = idx;
                for k in 0..m {
                    coords[k] = (rest / old.strides[k]) as i64;
                    rest %= old.strides[k];
                }
                let (mut best, mut best_s, mut best_src) = (old.values[idx], 0, idx);
                'steps: for s in 1..=layer.cap {
                    for k in 0..m {
                        let c = coords[k] - layer.moves[s][k];
                        if c < 0 || c >= old.dims[k] as i64 {
                            continue 'steps;
                        }
                    }
                    let src = (idx as isize - layer.offsets[s]) as usize;
                    let v = old.values[src];
                    if v == ABSENT {
                        continue;
                    }
                    relaxations += 1;
                    let cand = v
                        .checked_add(layer.weights[s])
                        .ok_or(Error::Overflow("partial value"))?;
                    if cand > best {
                        (best, best_s, best_src) = (cand, s, src);
                    }
                }
                *slot = best;
                let dst = &mut zs[off * w..(off + 1) * w];
                dst.copy_from_slice(old.z_of(best_src));
                if best_s > 0 {
                    layer.mark(dst, best_s);
                }
            }
            Ok(relaxations)
        })
        .try_reduce(|| 0, |a, b| Ok(a + b))
}
