use crate::error::{Error, Result};
use crate::model::Matrix;

/// How a Closest String instance bounds the Hamming distances.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum DistanceBound {
    /// Every string must be within `d` of the center.
    Uniform(i64),
    /// String `j` must be within `d_j`.
    PerString(Vec<i64>),
    /// No bound; minimize the maximum distance.
    Minimize,
}

/// Closest String over the binary alphabet.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct ClosestStringInstance {
    n: usize,
    strings: Vec<Vec<u8>>,
    bound: DistanceBound,
}

impl ClosestStringInstance {
    /// Strings are given as `0`/`1` bytes. Per-string bounds above `n` are
    /// clamped to `n`.
    pub fn new(n: usize, strings: Vec<Vec<u8>>, bound: DistanceBound) -> Result<Self> {
        if n == 0 && !strings.is_empty() {
            return Err(Error::Precondition("strings must be non-empty".into()));
        }
        for (j, s) in strings.iter().enumerate() {
            if s.len() != n {
                return Err(Error::Precondition(format!(
                    "string {} has length {}, expected {}",
                    j + 1,
                    s.len(),
                    n
                )));
            }
            if let Some(&c) = s.iter().find(|&&c| c > 1) {
                return Err(Error::Precondition(format!(
                    "string {} contains symbol {} outside {{0,1}}",
                    j + 1,
                    c
                )));
            }
        }
        let bound = match bound {
            DistanceBound::PerString(d) => {
                if d.len() != strings.len() {
                    return Err(Error::Precondition(format!(
                        "{} bounds for {} strings",
                        d.len(),
                        strings.len()
                    )));
                }
                DistanceBound::PerString(d.into_iter().map(|v| v.min(n as i64)).collect())
            }
            other => other,
        };
        Ok(Self { n, strings, bound })
    }

    /// Parses strings written with the characters `0` and `1`.
    pub fn from_strs(strings: &[&str], bound: DistanceBound) -> Result<Self> {
        let n = strings.first().map_or(0, |s| s.len());
        let parsed = strings
            .iter()
            .map(|s| {
                s.bytes()
                    .map(|c| match c {
                        b'0' => Ok(0),
                        b'1' => Ok(1),
                        _ => Err(Error::Precondition(format!("invalid symbol {:?}", c as char))),
                    })
                    .collect::<Result<Vec<u8>>>()
            })
            .collect::<Result<Vec<_>>>()?;
        Self::new(n, parsed, bound)
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn m(&self) -> usize {
        self.strings.len()
    }

    pub fn strings(&self) -> &[Vec<u8>] {
        &self.strings
    }

    pub fn bound(&self) -> &DistanceBound {
        &self.bound
    }

    /// Bound for string `j`, `None` in minimize mode.
    pub fn bound_for(&self, j: usize) -> Option<i64> {
        match &self.bound {
            DistanceBound::Uniform(d) => Some(*d),
            DistanceBound::PerString(d) => Some(d[j]),
            DistanceBound::Minimize => None,
        }
    }
}

/// Hamming distance between two equal-length 0/1 vectors.
pub(crate) fn hamming<T: PartialEq>(a: &[T], b: &[T]) -> usize {
    a.iter().zip(b).filter(|(x, y)| x != y).count()
}

fn check_sets(sets: &[Vec<usize>], universe: usize) -> Result<Vec<Vec<usize>>> {
    sets.iter()
        .enumerate()
        .map(|(i, s)| {
            let mut s = s.clone();
            s.sort_unstable();
            s.dedup();
            if let Some(&e) = s.iter().find(|&&e| e >= universe) {
                return Err(Error::Precondition(format!(
                    "set {} contains element {} outside a universe of size {}",
                    i + 1,
                    e + 1,
                    universe
                )));
            }
            Ok(s)
        })
        .collect()
}

/// Discrepancy Minimization over a universe `{0..n}` (0-indexed internally).
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct DiscrepancyInstance {
    universe: usize,
    sets: Vec<Vec<usize>>,
    target: Option<i64>,
}

impl DiscrepancyInstance {
    /// `target = None` means minimize.
    pub fn new(universe: usize, sets: Vec<Vec<usize>>, target: Option<i64>) -> Result<Self> {
        let sets = check_sets(&sets, universe)?;
        Ok(Self {
            universe,
            sets,
            target,
        })
    }

    pub fn universe(&self) -> usize {
        self.universe
    }

    pub fn sets(&self) -> &[Vec<usize>] {
        &self.sets
    }

    pub fn target(&self) -> Option<i64> {
        self.target
    }

    /// The m×n incidence matrix.
    pub fn incidence(&self) -> Matrix {
        incidence(&self.sets, self.universe)
    }
}

pub(crate) fn incidence(sets: &[Vec<usize>], universe: usize) -> Matrix {
    let mut a = Matrix::zeros(sets.len(), universe);
    for (r, s) in sets.iter().enumerate() {
        for &e in s {
            a.set(r, e, 1);
        }
    }
    a
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum SetKind {
    Cover,
    Packing,
}

impl SetKind {
    pub fn tag(self) -> &'static str {
        match self {
            SetKind::Cover => "cover",
            SetKind::Packing => "packing",
        }
    }

    pub fn dual(self) -> Self {
        match self {
            SetKind::Cover => SetKind::Packing,
            SetKind::Packing => SetKind::Cover,
        }
    }
}

/// Set Multi-Cover or Set Multi-Packing.
///
/// Cover: every element lies in at least `b` chosen sets, fewest sets wins,
/// `card` bounds `|I|` from above. Packing: at most `b`, most sets wins,
/// `card` bounds `|I|` from below.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct SetSystemInstance {
    kind: SetKind,
    universe: usize,
    sets: Vec<Vec<usize>>,
    b: i64,
    card: Option<i64>,
}

impl SetSystemInstance {
    pub fn new(
        kind: SetKind,
        universe: usize,
        sets: Vec<Vec<usize>>,
        b: i64,
        card: Option<i64>,
    ) -> Result<Self> {
        if b < 0 {
            return Err(Error::Precondition(format!("threshold b = {b} is negative")));
        }
        let sets = check_sets(&sets, universe)?;
        Ok(Self {
            kind,
            universe,
            sets,
            b,
            card,
        })
    }

    pub fn kind(&self) -> SetKind {
        self.kind
    }

    pub fn universe(&self) -> usize {
        self.universe
    }

    pub fn sets(&self) -> &[Vec<usize>] {
        &self.sets
    }

    pub fn b(&self) -> i64 {
        self.b
    }

    pub fn card(&self) -> Option<i64> {
        self.card
    }

    /// Element-by-set incidence matrix (universe × sets).
    pub fn incidence(&self) -> Matrix {
        let mut a = Matrix::zeros(self.universe, self.sets.len());
        for (i, s) in self.sets.iter().enumerate() {
            for &e in s {
                a.set(e, i, 1);
            }
        }
        a
    }
}

/// n-fold ILP: `Σ A_i x⁽ⁱ⁾ = b⁽⁰⁾`, `B_i x⁽ⁱ⁾ = b⁽ⁱ⁾`, `x⁽ⁱ⁾ ∈ ℤ^m_{≥0}`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct NFoldInstance {
    block_rows: usize,
    coupling: Vec<Matrix>,
    diagonal: Vec<Matrix>,
    b0: Vec<i64>,
    rhs: Vec<Vec<i64>>,
}

impl NFoldInstance {
    pub fn new(
        block_rows: usize,
        coupling: Vec<Matrix>,
        diagonal: Vec<Matrix>,
        b0: Vec<i64>,
        rhs: Vec<Vec<i64>>,
    ) -> Result<Self> {
        let n = coupling.len();
        if diagonal.len() != n || rhs.len() != n {
            return Err(Error::Precondition(format!(
                "{} coupling blocks, {} diagonal blocks, {} block right-hand sides",
                n,
                diagonal.len(),
                rhs.len()
            )));
        }
        let square = |mat: &Matrix| mat.rows() == block_rows && mat.cols() == block_rows;
        if !coupling.iter().chain(&diagonal).all(square) {
            return Err(Error::Precondition(format!(
                "every block must be {block_rows}×{block_rows}"
            )));
        }
        if b0.len() != block_rows || rhs.iter().any(|r| r.len() != block_rows) {
            return Err(Error::Precondition(format!(
                "right-hand sides must have length {block_rows}"
            )));
        }
        Ok(Self {
            block_rows,
            coupling,
            diagonal,
            b0,
            rhs,
        })
    }

    /// Block dimension m.
    pub fn block_rows(&self) -> usize {
        self.block_rows
    }

    /// Number of blocks n.
    pub fn blocks(&self) -> usize {
        self.coupling.len()
    }

    pub fn coupling(&self, i: usize) -> &Matrix {
        &self.coupling[i]
    }

    pub fn diagonal(&self, i: usize) -> &Matrix {
        &self.diagonal[i]
    }

    pub fn b0(&self) -> &[i64] {
        &self.b0
    }

    pub fn rhs(&self, i: usize) -> &[i64] {
        &self.rhs[i]
    }

    pub fn max_abs(&self) -> u64 {
        self.coupling
            .iter()
            .chain(&self.diagonal)
            .map(Matrix::max_abs)
            .max()
            .unwrap_or(0)
    }
}
