//! Closest String ↔ binary ILP, via the ±1 system.

use crate::error::{Error, Result};
use crate::model::{BinaryIlpInstance, ClosestStringInstance, DistanceBound, IlpInstance, Matrix};

/// Closest String as an ILP over `[x (n), slack (m)]`.
///
/// Row `j`: `Σ_{s_j[i]=0} x_i − Σ_{s_j[i]=1} x_i + slack_j = d_j − ones(s_j)`,
/// i.e. distance plus slack equals `d_j`. Bounds above `n` are clamped to `n`;
/// a negative bound leaves the row unsatisfiable. Returns the ILP and the
/// effective bounds.
pub fn cstring_to_ilp(inst: &ClosestStringInstance, d: Option<i64>) -> Result<(IlpInstance, Vec<i64>)> {
    let (m, n) = (inst.m(), inst.n());
    let bounds: Vec<i64> = (0..m)
        .map(|j| {
            d.or_else(|| inst.bound_for(j))
                .map(|v| v.min(n as i64))
                .ok_or_else(|| Error::Precondition("minimize mode needs a distance bound".into()))
        })
        .collect::<Result<_>>()?;
    let mut a = Matrix::zeros(m, n + m);
    let mut b = Vec::with_capacity(m);
    for (j, s) in inst.strings().iter().enumerate() {
        let ones = s.iter().filter(|&&c| c == 1).count() as i64;
        for (i, &c) in s.iter().enumerate() {
            a.set(j, i, if c == 0 { 1 } else { -1 });
        }
        a.set(j, n + j, 1);
        b.push(bounds[j] - ones);
    }
    let lower = vec![0; n + m];
    let upper = std::iter::repeat_n(1, n)
        .chain(bounds.iter().map(|&d| d.max(0)))
        .collect();
    Ok((IlpInstance::new(a, b, lower, upper, None)?, bounds))
}

/// `C·(x, x̄) ≤ c` with `C ∈ {−1,1}^{(2m+2)×2n}`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Pm1System {
    pub c: Matrix,
    pub rhs: Vec<i64>,
    pub n: usize,
}

impl Pm1System {
    /// Entries equal to −1 in row `r`.
    pub fn negatives(&self, r: usize) -> i64 {
        self.c.row(r).iter().filter(|&&v| v < 0).count() as i64
    }

    /// The inequalities as equalities with slack columns in
    /// `[0, max(0, c_r + #negatives_r)]`, over `[x, x̄, slack]`.
    pub fn to_ilp(&self) -> Result<IlpInstance> {
        let rows = self.c.rows();
        let width = 2 * self.n;
        let mut a = Matrix::zeros(rows, width + rows);
        for r in 0..rows {
            for i in 0..width {
                a.set(r, i, self.c.get(r, i));
            }
            a.set(r, width + r, 1);
        }
        let upper = std::iter::repeat_n(1, width)
            .chain((0..rows).map(|r| (self.rhs[r] + self.negatives(r)).max(0)))
            .collect();
        IlpInstance::new(a, self.rhs.clone(), vec![0; width + rows], upper, None)
    }
}

/// Rewrites `Ax = b` over 0/1 `A` as a ±1 system on `(x, x̄)` whose 0/1
/// solutions have coordinate sum `n`: rows `A'x − 𝟏x̄ ≤ b'`,
/// `−A'x + 𝟏x̄ ≤ −b'`, `Σ ≤ n`, `−Σ ≤ −n` with `A' = 2A − 𝟏`, `b' = 2b − n𝟏`.
pub fn to_pm1_system(inst: &BinaryIlpInstance) -> Result<Pm1System> {
    inst.require_zero_one()?;
    let (m, n) = (inst.m(), inst.n());
    let mut c = Matrix::zeros(2 * m + 2, 2 * n);
    let mut rhs = Vec::with_capacity(2 * m + 2);
    for j in 0..m {
        let bp = 2 * inst.b()[j] - n as i64;
        for i in 0..n {
            let ap = 2 * inst.a().get(j, i) - 1;
            c.set(j, i, ap);
            c.set(j, n + i, -1);
            c.set(m + j, i, -ap);
            c.set(m + j, n + i, 1);
        }
        rhs.push(bp);
    }
    for j in 0..m {
        rhs.push(-rhs[j]);
    }
    for i in 0..2 * n {
        c.set(2 * m, i, 1);
        c.set(2 * m + 1, i, -1);
    }
    rhs.push(n as i64);
    rhs.push(-(n as i64));
    Ok(Pm1System { c, rhs, n })
}

/// Closest String instance with `2m + 4` strings of length `6n` and uniform
/// bound `2n`, solvable exactly when the ILP is feasible. The `bool` marks
/// the degenerate `n = 0` encoding (single-character strings).
pub fn ilp_to_cstring(inst: &BinaryIlpInstance) -> Result<(ClosestStringInstance, bool)> {
    inst.require_zero_one()?;
    let n = inst.n();
    if n == 0 {
        // No variables: feasible exactly when b = 0.
        let strings = if inst.b().iter().all(|&v| v == 0) {
            vec![vec![0]]
        } else {
            vec![vec![0], vec![1]]
        };
        return Ok((ClosestStringInstance::new(1, strings, DistanceBound::Uniform(0))?, true));
    }
    let sys = to_pm1_system(inst)?;
    let len = 6 * n;
    let two_n = 2 * n as i64;
    let mut strings = Vec::with_capacity(sys.c.rows() + 2);
    for r in 0..sys.c.rows() {
        let d = sys.rhs[r] + sys.negatives(r);
        if d < 0 {
            // Row unsatisfiable: no string within 2n of both anchors is
            // within 2n of the all-ones string.
            strings.push(vec![1; len]);
            continue;
        }
        let d = d.min(two_n) as usize;
        let mut s: Vec<u8> = sys.c.row(r).iter().map(|&v| u8::from(v < 0)).collect();
        s.extend(std::iter::repeat_n(1, n));
        s.extend(std::iter::repeat_n(0, n));
        s.extend(std::iter::repeat_n(1, 2 * n - d));
        s.extend(std::iter::repeat_n(0, d));
        strings.push(s);
    }
    strings.push(vec![0; len]);
    let mut r2 = vec![1; 4 * n];
    r2.extend(std::iter::repeat_n(0, 2 * n));
    strings.push(r2);
    Ok((ClosestStringInstance::new(len, strings, DistanceBound::Uniform(two_n))?, false))
}
