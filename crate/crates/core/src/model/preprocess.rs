//! The two normalizations every solver path applies: moving lower bounds to
//! zero and merging identical columns.

use std::collections::HashMap;

use crate::arith;
use crate::error::Result;
use crate::model::{IlpInstance, Matrix};

/// Records `x_original = x_shifted + shift`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ShiftTrace {
    pub shift: Vec<i64>,
    /// `cᵀℓ`, the objective offset lost by the shift.
    pub constant: i64,
}

impl ShiftTrace {
    pub fn unshift(&self, x: &[i64]) -> Result<Vec<i64>> {
        x.iter().zip(&self.shift).map(|(&v, &l)| arith::add(v, l)).collect()
    }

    pub fn shift(&self, x: &[i64]) -> Result<Vec<i64>> {
        x.iter().zip(&self.shift).map(|(&v, &l)| arith::sub(v, l)).collect()
    }
}

/// Rewrites the instance over `x − ℓ`: bounds `[0, u − ℓ]`, right-hand side `b − Aℓ`.
pub fn shift_to_zero_lower(inst: &IlpInstance) -> Result<(IlpInstance, ShiftTrace)> {
    inst.ensure_valid()?;
    let al = inst.a.mul_vec(&inst.lower)?;
    let b = inst
        .b
        .iter()
        .zip(&al)
        .map(|(&b, &v)| arith::sub(b, v))
        .collect::<Result<Vec<_>>>()?;
    let upper = inst
        .upper
        .iter()
        .zip(&inst.lower)
        .map(|(&u, &l)| arith::sub(u, l))
        .collect::<Result<Vec<_>>>()?;
    let constant = inst.objective_value(&inst.lower)?;
    let shifted = IlpInstance {
        a: inst.a.clone(),
        b,
        lower: vec![0; inst.n()],
        upper,
        objective: inst.objective.clone(),
    };
    Ok((
        shifted,
        ShiftTrace {
            shift: inst.lower.clone(),
            constant,
        },
    ))
}

/// Original columns folded into one merged column, with their upper bounds.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MergeGroup {
    pub members: Vec<usize>,
    pub upper: Vec<i64>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MergeTrace {
    pub original_n: usize,
    pub groups: Vec<MergeGroup>,
}

impl MergeTrace {
    /// Splits merged values back over group members, filling members in
    /// index order up to their bounds.
    pub fn expand(&self, merged: &[i64]) -> Vec<i64> {
        let mut x = vec![0; self.original_n];
        for (group, &total) in self.groups.iter().zip(merged) {
            let mut rest = total;
            for (&i, &u) in group.members.iter().zip(&group.upper) {
                let take = rest.min(u);
                x[i] = take;
                rest -= take;
            }
            debug_assert_eq!(rest, 0, "merged value exceeds group capacity");
        }
        x
    }
}

/// Merges columns that agree in `A` and in the objective (when present),
/// summing their upper bounds. Requires zero lower bounds.
pub fn merge_identical_columns(inst: &IlpInstance) -> Result<(IlpInstance, MergeTrace)> {
    inst.ensure_valid()?;
    if inst.lower.iter().any(|&l| l != 0) {
        return Err(crate::Error::Precondition(
            "merging requires zero lower bounds; shift first".into(),
        ));
    }
    let mut index: HashMap<(Vec<i64>, i64), usize> = HashMap::new();
    let mut groups: Vec<MergeGroup> = Vec::new();
    let mut columns: Vec<Vec<i64>> = Vec::new();
    let mut objective = Vec::new();
    let mut upper: Vec<i64> = Vec::new();
    for i in 0..inst.n() {
        let col = inst.a.column(i);
        let c = inst.objective.as_ref().map_or(0, |c| c[i]);
        let g = *index.entry((col.clone(), c)).or_insert_with(|| {
            groups.push(MergeGroup {
                members: Vec::new(),
                upper: Vec::new(),
            });
            columns.push(col);
            objective.push(c);
            upper.push(0);
            groups.len() - 1
        });
        groups[g].members.push(i);
        groups[g].upper.push(inst.upper[i]);
        upper[g] = arith::add(upper[g], inst.upper[i])?;
    }
    let merged = IlpInstance {
        a: Matrix::from_columns(&columns, inst.m())?,
        b: inst.b.clone(),
        lower: vec![0; groups.len()],
        upper,
        objective: inst.objective.as_ref().map(|_| objective),
    };
    Ok((
        merged,
        MergeTrace {
            original_n: inst.n(),
            groups,
        },
    ))
}

#[cfg(test)]
mod tests {
    use std::collections::BTreeSet;

    use proptest::prelude::*;

    use super::*;

    /// All integer points of a box, last coordinate fastest.
    fn box_points(lower: &[i64], upper: &[i64]) -> Vec<Vec<i64>> {
        let mut out = vec![vec![]];
        for (&l, &u) in lower.iter().zip(upper) {
            out = out
                .into_iter()
                .flat_map(|p| {
                    (l..=u).map(move |v| {
                        let mut q = p.clone();
                        q.push(v);
                        q
                    })
                })
                .collect();
        }
        out
    }

    fn feasible(inst: &IlpInstance) -> Vec<Vec<i64>> {
        box_points(&inst.lower, &inst.upper)
            .into_iter()
            .filter(|x| inst.a.mul_vec(x).unwrap() == inst.b)
            .collect()
    }

    fn optimum(inst: &IlpInstance) -> Option<i64> {
        feasible(inst)
            .iter()
            .map(|x| inst.objective_value(x).unwrap())
            .max()
    }

    #[test]
    fn zero_lower_bounds_shift_is_identity() {
        let inst =
            IlpInstance::from_rows(vec![vec![1, 2]], vec![3], vec![0, 0], vec![3, 3], None).unwrap();
        let (shifted, trace) = shift_to_zero_lower(&inst).unwrap();
        assert_eq!(shifted, inst);
        assert_eq!(trace.constant, 0);
    }

    #[test]
    fn shift_substitutes_lower_bound() {
        let inst = IlpInstance::from_rows(vec![vec![1]], vec![5], vec![2], vec![7], None).unwrap();
        let (shifted, _) = shift_to_zero_lower(&inst).unwrap();
        assert_eq!(shifted.b, vec![3]);
        assert_eq!(shifted.upper, vec![5]);
        assert_eq!(shifted.lower, vec![0]);
    }

    #[test]
    fn shift_overflow_is_reported() {
        let big = (1i64 << 62) - 1;
        let inst =
            IlpInstance::from_rows(vec![vec![big, big]], vec![0], vec![big, big], vec![big, big], None)
                .unwrap();
        assert!(shift_to_zero_lower(&inst).unwrap_err().is_capacity());
    }

    #[test]
    fn identical_columns_merge() {
        let inst = IlpInstance::from_rows(
            vec![vec![1, 1]],
            vec![1],
            vec![0, 0],
            vec![1, 1],
            Some(vec![1, 1]),
        )
        .unwrap();
        let (merged, trace) = merge_identical_columns(&inst).unwrap();
        assert_eq!(merged.n(), 1);
        assert_eq!(merged.upper, vec![2]);
        assert_eq!(trace.expand(&[1]), vec![1, 0]);
        assert_eq!(trace.expand(&[2]), vec![1, 1]);
    }

    #[test]
    fn differing_objective_prevents_merge() {
        let inst = IlpInstance::from_rows(
            vec![vec![1, 1]],
            vec![1],
            vec![0, 0],
            vec![1, 1],
            Some(vec![1, 2]),
        )
        .unwrap();
        let (merged, _) = merge_identical_columns(&inst).unwrap();
        assert_eq!(merged.n(), 2);
    }

    fn small_instance(max_n: usize, max_u: i64, neg_lower: bool) -> impl Strategy<Value = IlpInstance> {
        (1usize..=2, 1usize..=max_n).prop_flat_map(move |(m, n)| {
            let lo = if neg_lower { -2i64 } else { 0 };
            (
                proptest::collection::vec(-1i64..=1, m * n),
                proptest::collection::vec(-3i64..=3, m),
                proptest::collection::vec(lo..=0, n),
                proptest::collection::vec(0i64..=max_u, n),
                proptest::collection::vec(-2i64..=2, n),
            )
                .prop_map(move |(a, b, l, width, c)| {
                    let rows = a.chunks(n).map(|r| r.to_vec()).collect();
                    let u = l.iter().zip(&width).map(|(l, w)| l + w).collect();
                    IlpInstance::from_rows(rows, b, l, u, Some(c)).unwrap()
                })
        })
    }

    proptest! {
        #[test]
        fn shift_is_a_feasible_set_bijection(inst in small_instance(3, 3, true)) {
            let (shifted, trace) = shift_to_zero_lower(&inst).unwrap();
            let mut mapped: Vec<Vec<i64>> = feasible(&shifted)
                .iter()
                .map(|x| trace.unshift(x).unwrap())
                .collect();
            mapped.sort();
            let mut direct = feasible(&inst);
            direct.sort();
            prop_assert_eq!(&mapped, &direct);
            for x in &direct {
                let y = trace.shift(x).unwrap();
                prop_assert_eq!(
                    inst.objective_value(x).unwrap(),
                    shifted.objective_value(&y).unwrap() + trace.constant
                );
                prop_assert_eq!(&trace.unshift(&y).unwrap(), x);
            }
        }

        #[test]
        fn merge_preserves_optimum(inst in small_instance(5, 3, false)) {
            let (merged, trace) = merge_identical_columns(&inst).unwrap();
            prop_assert_eq!(optimum(&inst), optimum(&merged));
            for y in feasible(&merged) {
                let x = trace.expand(&y);
                prop_assert!(inst.a.mul_vec(&x).unwrap() == inst.b);
                prop_assert!(x.iter().zip(&inst.upper).all(|(v, u)| *v >= 0 && v <= u));
                prop_assert_eq!(inst.objective_value(&x).unwrap(), merged.objective_value(&y).unwrap());
            }
        }

        #[test]
        fn merge_preserves_achievable_pairs(inst in small_instance(5, 3, false)) {
            let (merged, _) = merge_identical_columns(&inst).unwrap();
            let pairs = |i: &IlpInstance| -> BTreeSet<(Vec<i64>, i64)> {
                box_points(&i.lower, &i.upper)
                    .iter()
                    .map(|x| (i.a.mul_vec(x).unwrap(), i.objective_value(x).unwrap()))
                    .collect()
            };
            prop_assert_eq!(pairs(&inst), pairs(&merged));
        }
    }
}
