use std::fmt;

use crate::arith::MAGNITUDE_CAP;
use crate::model::IlpInstance;

/// One failed check. Indices in messages are 1-based.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Violation {
    Dimension {
        what: &'static str,
        expected: usize,
        actual: usize,
    },
    BoundInversion {
        column: usize,
        lower: i64,
        upper: i64,
    },
    MagnitudeCap {
        what: &'static str,
        index: usize,
        value: i64,
    },
    Row {
        row: usize,
        expected: i64,
        actual: i64,
    },
    OutOfBounds {
        column: usize,
        lower: i64,
        upper: i64,
        actual: i64,
    },
    Symbol {
        index: usize,
        actual: i64,
    },
    Distance {
        string: usize,
        bound: i64,
        actual: i64,
    },
    Discrepancy {
        set: usize,
        bound: i64,
        actual: i64,
    },
    Undercovered {
        element: usize,
        demand: i64,
        actual: i64,
    },
    Overpacked {
        element: usize,
        capacity: i64,
        actual: i64,
    },
    Cardinality {
        bound: i64,
        actual: i64,
    },
    Negative {
        index: usize,
        actual: i64,
    },
    Block {
        block: usize,
        row: usize,
        expected: i64,
        actual: i64,
    },
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match *self {
            Violation::Dimension {
                what,
                expected,
                actual,
            } => write!(f, "dimension mismatch in {what}: expected {expected}, got {actual}"),
            Violation::BoundInversion {
                column,
                lower,
                upper,
            } => write!(f, "bound inversion at column {column}: {lower} > {upper}"),
            Violation::MagnitudeCap { what, index, value } => {
                write!(f, "magnitude cap exceeded by {what} entry {index}: {value}")
            }
            Violation::Row {
                row,
                expected,
                actual,
            } => write!(f, "row {row}: expected {expected}, got {actual}"),
            Violation::OutOfBounds {
                column,
                lower,
                upper,
                actual,
            } => write!(f, "column {column}: {actual} outside [{lower}, {upper}]"),
            Violation::Symbol { index, actual } => {
                write!(f, "position {index}: invalid symbol {actual}")
            }
            Violation::Distance {
                string,
                bound,
                actual,
            } => write!(f, "string {string}: distance {actual} exceeds {bound}"),
            Violation::Discrepancy { set, bound, actual } => {
                write!(f, "set {set}: discrepancy {actual} exceeds {bound}")
            }
            Violation::Undercovered {
                element,
                demand,
                actual,
            } => write!(f, "element {element} covered {actual} times, needs {demand}"),
            Violation::Overpacked {
                element,
                capacity,
                actual,
            } => write!(f, "element {element} packed {actual} times, allows {capacity}"),
            Violation::Cardinality { bound, actual } => {
                write!(f, "selection size {actual} violates cardinality bound {bound}")
            }
            Violation::Negative { index, actual } => {
                write!(f, "position {index}: negative value {actual}")
            }
            Violation::Block {
                block,
                row,
                expected,
                actual,
            } => write!(f, "block {block} row {row}: expected {expected}, got {actual}"),
        }
    }
}

/// Outcome of a validation or feasibility check.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct ValidationReport {
    pub violations: Vec<Violation>,
    /// Objective value of a feasible solution, when one was checked.
    pub value: Option<i64>,
}

impl ValidationReport {
    pub fn ok(&self) -> bool {
        self.violations.is_empty()
    }

    pub(crate) fn push(&mut self, v: Violation) {
        self.violations.push(v);
    }
}

impl fmt::Display for ValidationReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.ok() {
            return f.write_str("ok");
        }
        for (i, v) in self.violations.iter().enumerate() {
            if i > 0 {
                f.write_str("; ")?;
            }
            write!(f, "{v}")?;
        }
        Ok(())
    }
}

fn cap_check(report: &mut ValidationReport, what: &'static str, values: &[i64]) {
    for (i, &v) in values.iter().enumerate() {
        if v.unsigned_abs() >= MAGNITUDE_CAP {
            report.push(Violation::MagnitudeCap {
                what,
                index: i + 1,
                value: v,
            });
        }
    }
}

/// Checks dimensions, bound order and the 2^62 magnitude cap.
pub fn validate_instance(inst: &IlpInstance) -> ValidationReport {
    let mut report = ValidationReport::default();
    let (m, n) = (inst.m(), inst.n());
    let dims: [(&'static str, usize, usize); 3] = [
        ("b", m, inst.b.len()),
        ("l", n, inst.lower.len()),
        ("u", n, inst.upper.len()),
    ];
    for (what, expected, actual) in dims {
        if expected != actual {
            report.push(Violation::Dimension {
                what,
                expected,
                actual,
            });
        }
    }
    if let Some(c) = &inst.objective {
        if c.len() != n {
            report.push(Violation::Dimension {
                what: "c",
                expected: n,
                actual: c.len(),
            });
        }
        cap_check(&mut report, "c", c);
    }
    for (i, (&l, &u)) in inst.lower.iter().zip(&inst.upper).enumerate() {
        if l > u {
            report.push(Violation::BoundInversion {
                column: i + 1,
                lower: l,
                upper: u,
            });
        }
    }
    cap_check(&mut report, "A", inst.a.entries());
    cap_check(&mut report, "b", &inst.b);
    cap_check(&mut report, "l", &inst.lower);
    cap_check(&mut report, "u", &inst.upper);
    report
}
