//! Benchmark suites: wall time and per-level table sizes.

use std::time::Instant;

use fewcons::dp::{solve_with, SolveOptions};
use fewcons::gen::{generate, scaling_instance, GenParams};
use fewcons::ProblemKind;

use crate::{Failure, Outcome};

pub const SUITES: [&str; 2] = ["scaling", "random"];

pub fn run(suite: &str, threads: usize) -> Outcome {
    let opts = SolveOptions { threads };
    match suite {
        "scaling" => {
            println!("{:>10} {:>6} {:>10} {:>10} {:>14} {:>10}", "upper", "level", "keys", "cells", "relaxations", "bound");
            for upper in [1_000, 1_000_000] {
                let inst = scaling_instance(upper)?;
                let start = Instant::now();
                let result = solve_with(&inst, &opts)?;
                let elapsed = start.elapsed();
                for l in &result.stats.levels {
                    println!(
                        "{:>10} {:>6} {:>10} {:>10} {:>14} {:>10}",
                        upper, l.level, l.keys, l.cells, l.relaxations, l.bound
                    );
                }
                println!(
                    "upper {} levels {} value {} time_ms {:.1}",
                    upper,
                    result.stats.levels.len(),
                    result.value().map_or("infeasible".into(), |v| v.to_string()),
                    elapsed.as_secs_f64() * 1e3
                );
            }
            Ok(())
        }
        "random" => {
            println!("{:>5} {:>5} {:>9} {:>9} {:>10}", "m", "n", "solved", "feasible", "time_ms");
            for (m, n) in [(1, 6), (2, 6), (3, 6), (2, 12), (3, 12)] {
                let start = Instant::now();
                let mut feasible = 0;
                for seed in 0..100 {
                    let inst = generate(&GenParams::new(ProblemKind::Ilp, seed, m, n))?;
                    let ilp = inst.as_ilp().expect("generated an ILP");
                    feasible += usize::from(solve_with(ilp, &opts)?.is_feasible());
                }
                println!(
                    "{:>5} {:>5} {:>9} {:>9} {:>10.1}",
                    m,
                    n,
                    100,
                    feasible,
                    start.elapsed().as_secs_f64() * 1e3
                );
            }
            Ok(())
        }
        _ => Err(Failure::Usage(format!(
            "unknown suite `{suite}`; expected one of {}",
            SUITES.join(", ")
        ))),
    }
}
