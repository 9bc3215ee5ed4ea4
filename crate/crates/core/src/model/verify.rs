use crate::arith;
use crate::error::{Error, Result};
use crate::model::hamming;
use crate::model::{
    Assignment, ClosestStringInstance, DiscrepancyInstance, IlpInstance, Instance, NFoldInstance,
    ProblemKind, SetKind, SetSystemInstance, ValidationReport, Violation,
};

fn compatible(inst: ProblemKind, sol: ProblemKind) -> bool {
    use ProblemKind::{Bilp, Ilp};
    inst == sol || matches!((inst, sol), (Ilp, Bilp) | (Bilp, Ilp))
}

/// Checks `sol` against the defining constraints of `inst`'s problem.
///
/// A feasible solution gets its objective value in the report: `cᵀx` for
/// ILPs, the maximum distance or discrepancy, the selection size for set
/// systems, and zero for n-fold programs.
pub fn verify_solution(inst: &Instance, sol: &Assignment) -> Result<ValidationReport> {
    if !compatible(inst.kind(), sol.kind) {
        return Err(Error::KindMismatch {
            expected: inst.kind(),
            found: sol.kind,
        });
    }
    let expected = inst.solution_len();
    if sol.values.len() != expected {
        return Err(Error::LengthMismatch {
            expected,
            actual: sol.values.len(),
        });
    }
    let x = &sol.values;
    match inst {
        Instance::Ilp(i) => verify_ilp(i, x),
        Instance::Bilp(i) => verify_ilp(i.as_ilp(), x),
        Instance::ClosestString(i) => Ok(verify_cstring(i, x)),
        Instance::Discrepancy(i) => Ok(verify_disc(i, x)),
        Instance::SetSystem(i) => Ok(verify_setsys(i, x)),
        Instance::NFold(i) => verify_nfold(i, x),
    }
}

pub(crate) fn verify_ilp(inst: &IlpInstance, x: &[i64]) -> Result<ValidationReport> {
    let mut report = ValidationReport::default();
    for (i, ((&v, &l), &u)) in x.iter().zip(&inst.lower).zip(&inst.upper).enumerate() {
        if v < l || v > u {
            report.push(Violation::OutOfBounds {
                column: i + 1,
                lower: l,
                upper: u,
                actual: v,
            });
        }
    }
    let ax = inst.a.mul_vec(x)?;
    for (r, (&lhs, &rhs)) in ax.iter().zip(&inst.b).enumerate() {
        if lhs != rhs {
            report.push(Violation::Row {
                row: r + 1,
                expected: rhs,
                actual: lhs,
            });
        }
    }
    if report.ok() {
        report.value = Some(inst.objective_value(x)?);
    }
    Ok(report)
}

fn verify_cstring(inst: &ClosestStringInstance, t: &[i64]) -> ValidationReport {
    let mut report = ValidationReport::default();
    for (i, &c) in t.iter().enumerate() {
        if c != 0 && c != 1 {
            report.push(Violation::Symbol {
                index: i + 1,
                actual: c,
            });
        }
    }
    if !report.ok() {
        return report;
    }
    let mut worst = 0i64;
    for (j, s) in inst.strings().iter().enumerate() {
        let t8: Vec<u8> = t.iter().map(|&c| c as u8).collect();
        let d = hamming(&t8, s) as i64;
        worst = worst.max(d);
        if let Some(bound) = inst.bound_for(j) {
            if d > bound {
                report.push(Violation::Distance {
                    string: j + 1,
                    bound,
                    actual: d,
                });
            }
        }
    }
    if report.ok() {
        report.value = Some(worst);
    }
    report
}

fn verify_disc(inst: &DiscrepancyInstance, chi: &[i64]) -> ValidationReport {
    let mut report = ValidationReport::default();
    for (i, &c) in chi.iter().enumerate() {
        if c != 1 && c != -1 {
            report.push(Violation::Symbol {
                index: i + 1,
                actual: c,
            });
        }
    }
    if !report.ok() {
        return report;
    }
    let mut worst = 0i64;
    for (j, s) in inst.sets().iter().enumerate() {
        let d = s.iter().map(|&e| chi[e]).sum::<i64>().abs();
        worst = worst.max(d);
        if let Some(bound) = inst.target() {
            if d > bound {
                report.push(Violation::Discrepancy {
                    set: j + 1,
                    bound,
                    actual: d,
                });
            }
        }
    }
    if report.ok() {
        report.value = Some(worst);
    }
    report
}

fn verify_setsys(inst: &SetSystemInstance, pick: &[i64]) -> ValidationReport {
    let mut report = ValidationReport::default();
    for (i, &c) in pick.iter().enumerate() {
        if c != 0 && c != 1 {
            report.push(Violation::Symbol {
                index: i + 1,
                actual: c,
            });
        }
    }
    if !report.ok() {
        return report;
    }
    let mut counts = vec![0i64; inst.universe()];
    for (s, _) in inst.sets().iter().zip(pick).filter(|(_, &p)| p == 1) {
        for &e in s {
            counts[e] += 1;
        }
    }
    let size: i64 = pick.iter().sum();
    for (e, &c) in counts.iter().enumerate() {
        match inst.kind() {
            SetKind::Cover if c < inst.b() => report.push(Violation::Undercovered {
                element: e + 1,
                demand: inst.b(),
                actual: c,
            }),
            SetKind::Packing if c > inst.b() => report.push(Violation::Overpacked {
                element: e + 1,
                capacity: inst.b(),
                actual: c,
            }),
            _ => {}
        }
    }
    if let Some(card) = inst.card() {
        let broken = match inst.kind() {
            SetKind::Cover => size > card,
            SetKind::Packing => size < card,
        };
        if broken {
            report.push(Violation::Cardinality {
                bound: card,
                actual: size,
            });
        }
    }
    if report.ok() {
        report.value = Some(size);
    }
    report
}

fn verify_nfold(inst: &NFoldInstance, x: &[i64]) -> Result<ValidationReport> {
    let mut report = ValidationReport::default();
    let m = inst.block_rows();
    for (i, &v) in x.iter().enumerate() {
        if v < 0 {
            report.push(Violation::Negative {
                index: i + 1,
                actual: v,
            });
        }
    }
    let mut coupled = vec![0i64; m];
    for (i, block) in x.chunks(m.max(1)).enumerate().take(inst.blocks()) {
        let bx = inst.diagonal(i).mul_vec(block)?;
        for (r, (&lhs, &rhs)) in bx.iter().zip(inst.rhs(i)).enumerate() {
            if lhs != rhs {
                report.push(Violation::Block {
                    block: i + 1,
                    row: r + 1,
                    expected: rhs,
                    actual: lhs,
                });
            }
        }
        let ax = inst.coupling(i).mul_vec(block)?;
        for (acc, v) in coupled.iter_mut().zip(ax) {
            *acc = arith::add(*acc, v)?;
        }
    }
    for (r, (&lhs, &rhs)) in coupled.iter().zip(inst.b0()).enumerate() {
        if lhs != rhs {
            report.push(Violation::Row {
                row: r + 1,
                expected: rhs,
                actual: lhs,
            });
        }
    }
    if report.ok() {
        report.value = Some(0);
    }
    Ok(report)
}
