use crate::model::Matrix;

/// Marker for "no partial solution reaches this key".
pub(crate) const ABSENT: i64 = i64::MIN;

/// Dense table over a box of lattice coordinates `t`; the key of a cell is
/// `residue + modulus · t`.
#[derive(Clone, Debug)]
pub(crate) struct Grid {
    pub lo: Vec<i64>,
    pub dims: Vec<usize>,
    pub strides: Vec<usize>,
    pub values: Vec<i64>,
    /// Packed increments, two bits per variable, `words` u64s per cell.
    pub z: Vec<u64>,
    pub words: usize,
}

impl Grid {
    pub fn new(lo: Vec<i64>, dims: Vec<usize>, words: usize) -> Self {
        let mut strides = vec![1usize; dims.len()];
        for k in (0..dims.len().saturating_sub(1)).rev() {
            strides[k] = strides[k + 1] * dims[k + 1];
        }
        let cells: usize = dims.iter().product();
        Self {
            lo,
            dims,
            strides,
            values: vec![ABSENT; cells],
            z: vec![0; cells * words],
            words,
        }
    }

    pub fn index(&self, t: &[i64]) -> Option<usize> {
        let mut idx = 0usize;
        for k in 0..t.len() {
            let off = t[k] - self.lo[k];
            if off < 0 || off as usize >= self.dims[k] {
                return None;
            }
            idx += off as usize * self.strides[k];
        }
        Some(idx)
    }

    pub fn coords(&self, mut idx: usize) -> Vec<i64> {
        let mut t = vec![0; self.dims.len()];
        for k in 0..self.dims.len() {
            t[k] = self.lo[k] + (idx / self.strides[k]) as i64;
            idx %= self.strides[k];
        }
        t
    }

    pub fn z_of(&self, idx: usize) -> &[u64] {
        &self.z[idx * self.words..(idx + 1) * self.words]
    }
}

pub(crate) fn unpack(z: &[u64], n: usize) -> Vec<u8> {
    (0..n)
        .map(|i| ((z[i / 32] >> (2 * (i % 32))) & 3) as u8)
        .collect()
}

/// Optimal partial values for every reachable relevant right-hand side after
/// one level (or the base state before level 0).
#[derive(Clone, Debug)]
pub struct LevelState {
    pub(crate) level: Option<u32>,
    pub(crate) modulus: i64,
    pub(crate) residue: Vec<i64>,
    pub(crate) norm_bound: i64,
    pub(crate) n: usize,
    pub(crate) grid: Grid,
}

impl LevelState {
    /// `None` for the base state.
    pub fn level(&self) -> Option<u32> {
        self.level
    }

    /// Keys are congruent to the residue modulo `2^{j+1}` (1 for the base).
    pub fn modulus(&self) -> i64 {
        self.modulus
    }

    pub fn residue(&self) -> &[i64] {
        &self.residue
    }

    /// `2^{j+2}·m·n·Δ`; zero for the base state.
    pub fn norm_bound(&self) -> i64 {
        self.norm_bound
    }

    /// Number of stored keys.
    pub fn len(&self) -> usize {
        self.grid.values.iter().filter(|&&v| v != ABSENT).count()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    fn cell_of(&self, key: &[i64]) -> Option<usize> {
        if key.len() != self.residue.len() {
            return None;
        }
        let mut t = Vec::with_capacity(key.len());
        for (&v, &r) in key.iter().zip(&self.residue) {
            let d = v.checked_sub(r)?;
            if d.rem_euclid(self.modulus) != 0 {
                return None;
            }
            t.push(d.div_euclid(self.modulus));
        }
        let idx = self.grid.index(&t)?;
        (self.grid.values[idx] != ABSENT).then_some(idx)
    }

    /// Best value of a partial solution reaching `key`.
    pub fn get(&self, key: &[i64]) -> Option<i64> {
        self.cell_of(key).map(|idx| self.grid.values[idx])
    }

    /// The increment `z⁽ʲ⁾` chosen at this level for `key`.
    pub fn increment(&self, key: &[i64]) -> Option<Vec<u8>> {
        self.cell_of(key)
            .map(|idx| unpack(self.grid.z_of(idx), self.n))
    }

    /// `key − 2^j·A·z⁽ʲ⁾`, the key of the previous state this entry extends.
    pub fn predecessor(&self, key: &[i64], a: &Matrix) -> Option<Vec<i64>> {
        let j = self.level?;
        let z = self.increment(key)?;
        let step = 1i64 << j;
        let mut pred = key.to_vec();
        for (i, &zi) in z.iter().enumerate() {
            if zi == 0 {
                continue;
            }
            for (r, p) in pred.iter_mut().enumerate() {
                *p -= step * i64::from(zi) * a.get(r, i);
            }
        }
        Some(pred)
    }

    /// All `(key, value)` pairs in grid order.
    pub fn entries(&self) -> Vec<(Vec<i64>, i64)> {
        self.grid
            .values
            .iter()
            .enumerate()
            .filter(|(_, &v)| v != ABSENT)
            .map(|(idx, &v)| {
                let key = self
                    .grid
                    .coords(idx)
                    .iter()
                    .zip(&self.residue)
                    .map(|(&t, &r)| r + self.modulus * t)
                    .collect();
                (key, v)
            })
            .collect()
    }
}
