//! Seeded random instances. Identical parameters give identical instances
//! on every platform.
//!
//! Right-hand sides are planted (`b = Ax` for a random in-bounds `x`) with
//! probability ½ and uniform otherwise, so corpora mix feasible and
//! infeasible cases.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::model::{
    BinaryIlpInstance, ClosestStringInstance, DiscrepancyInstance, DistanceBound, IlpInstance,
    Instance, Matrix, NFoldInstance, ProblemKind, SetKind, SetSystemInstance,
};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GenParams {
    pub kind: ProblemKind,
    pub seed: u64,
    /// Rows, strings, sets, universe size (set systems) or block rows.
    pub m: usize,
    /// Columns, string length, universe size (discrepancy), sets or blocks.
    pub n: usize,
    pub delta: i64,
    pub umax: i64,
    /// Objective entries are drawn from `[−cmax, cmax]`; zero means none.
    pub cmax: i64,
}

impl GenParams {
    pub fn new(kind: ProblemKind, seed: u64, m: usize, n: usize) -> Self {
        Self {
            kind,
            seed,
            m,
            n,
            delta: 3,
            umax: 10,
            cmax: 5,
        }
    }
}

/// Draws one instance of `params.kind`.
pub fn generate(params: &GenParams) -> Result<Instance> {
    if params.delta < 0 || params.umax < 0 || params.cmax < 0 {
        return Err(Error::Precondition("delta, umax and cmax must be non-negative".into()));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(params.seed);
    let (m, n) = (params.m, params.n);
    let rng = &mut rng;
    let inst = match params.kind {
        ProblemKind::Ilp => {
            let d = params.delta;
            let a = random_matrix(rng, m, n, -d, d)?;
            let upper: Vec<i64> = (0..n).map(|_| rng.gen_range(0..=params.umax)).collect();
            let b = if rng.gen_bool(0.5) {
                let x: Vec<i64> = upper.iter().map(|&u| rng.gen_range(0..=u)).collect();
                a.mul_vec(&x)?
            } else {
                let span = crate::arith::mul(d, params.umax)?;
                (0..m).map(|_| rng.gen_range(-span..=span)).collect()
            };
            let objective = (params.cmax > 0)
                .then(|| (0..n).map(|_| rng.gen_range(-params.cmax..=params.cmax)).collect());
            Instance::Ilp(IlpInstance::new(a, b, vec![0; n], upper, objective)?)
        }
        ProblemKind::Bilp => {
            let a = random_matrix(rng, m, n, 0, 1)?;
            let b = if rng.gen_bool(0.5) {
                let x: Vec<i64> = (0..n).map(|_| rng.gen_range(0..=1)).collect();
                a.mul_vec(&x)?
            } else {
                (0..m).map(|_| rng.gen_range(0..=n as i64)).collect()
            };
            Instance::Bilp(BinaryIlpInstance::new(a, b, None)?)
        }
        ProblemKind::ClosestString => {
            let strings = (0..m).map(|_| (0..n).map(|_| rng.gen_range(0..=1u8)).collect()).collect();
            let d = rng.gen_range(0..=n as i64);
            Instance::ClosestString(ClosestStringInstance::new(n, strings, DistanceBound::Uniform(d))?)
        }
        ProblemKind::Discrepancy => {
            let sets = random_sets(rng, m, n);
            let d = rng.gen_range(0..=2);
            Instance::Discrepancy(DiscrepancyInstance::new(n, sets, Some(d))?)
        }
        ProblemKind::SetSystem => {
            let sets = random_sets(rng, n, m);
            let b = rng.gen_range(1..=2);
            Instance::SetSystem(SetSystemInstance::new(SetKind::Cover, m, sets, b, None)?)
        }
        ProblemKind::NFold => {
            let d = params.delta;
            let mut coupling = Vec::with_capacity(n);
            let mut diagonal = Vec::with_capacity(n);
            for _ in 0..n {
                coupling.push(random_matrix(rng, m, m, -d, d)?);
                diagonal.push(random_matrix(rng, m, m, -d, d)?);
            }
            let (b0, rhs) = if rng.gen_bool(0.5) {
                let mut b0 = vec![0; m];
                let mut rhs = Vec::with_capacity(n);
                for i in 0..n {
                    let x: Vec<i64> = (0..m).map(|_| rng.gen_range(0..=params.umax.min(2))).collect();
                    for (acc, v) in b0.iter_mut().zip(coupling[i].mul_vec(&x)?) {
                        *acc = crate::arith::add(*acc, v)?;
                    }
                    rhs.push(diagonal[i].mul_vec(&x)?);
                }
                (b0, rhs)
            } else {
                let span = crate::arith::mul(2, d)?;
                let row = |rng: &mut ChaCha8Rng| (0..m).map(|_| rng.gen_range(-span..=span)).collect::<Vec<i64>>();
                let b0 = row(rng);
                (b0, (0..n).map(|_| row(rng)).collect())
            };
            Instance::NFold(NFoldInstance::new(m, coupling, diagonal, b0, rhs)?)
        }
    };
    Ok(inst)
}

/// The fixed scaling family: two rows, 30 distinct columns with entries in
/// `[−5, 5]` (some entry ±5), common upper bound `upper`, objective in
/// `[−5, 5]`, and `b = Ax` for `x_i = ⌊upper · r_i⌋` with fixed `r_i ∈ [0, 1)`.
/// Only the bounds and `b` depend on `upper`.
pub fn scaling_instance(upper: i64) -> Result<IlpInstance> {
    if upper < 0 {
        return Err(Error::Precondition("upper bound must be non-negative".into()));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(0x5ca1e);
    let mut pool: Vec<[i64; 2]> = (-5..=5)
        .flat_map(|p| (-5..=5).map(move |q| [p, q]))
        .filter(|c| *c != [0, 0])
        .collect();
    let mut columns = Vec::with_capacity(30);
    columns.push([5, -3]);
    pool.retain(|c| *c != [5, -3]);
    while columns.len() < 30 {
        let i = rng.gen_range(0..pool.len());
        columns.push(pool.swap_remove(i));
    }
    let cols: Vec<Vec<i64>> = columns.iter().map(|c| c.to_vec()).collect();
    let a = Matrix::from_columns(&cols, 2)?;
    let objective: Vec<i64> = (0..30).map(|_| rng.gen_range(-5..=5)).collect();
    let x = (0..30)
        .map(|_| {
            let r: f64 = rng.gen_range(0.0..1.0);
            (upper as f64 * r).floor() as i64
        })
        .collect::<Vec<i64>>();
    let b = a.mul_vec(&x)?;
    IlpInstance::new(a, b, vec![0; 30], vec![upper; 30], Some(objective))
}

fn random_matrix(rng: &mut ChaCha8Rng, rows: usize, cols: usize, lo: i64, hi: i64) -> Result<Matrix> {
    let data = (0..rows).map(|_| (0..cols).map(|_| rng.gen_range(lo..=hi)).collect()).collect();
    Matrix::from_rows(data, cols)
}

/// `count` random subsets of `0..universe`, each element kept with
/// probability ½.
fn random_sets(rng: &mut ChaCha8Rng, count: usize, universe: usize) -> Vec<Vec<usize>> {
    (0..count).map(|_| (0..universe).filter(|_| rng.gen_bool(0.5)).collect()).collect()
}
