//! `fewcons` command-line front end.

mod bench;

use std::fmt::Write as _;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use fewcons::dp::{solve_with, SolveOptions};
use fewcons::formats::{
    parse_instance, parse_solution, parse_trace, serialize_instance, serialize_solution,
    serialize_trace,
};
use fewcons::gen::{generate, GenParams};
use fewcons::model::verify_solution;
use fewcons::oracle::{oracle_solve, DEFAULT_BUDGET};
use fewcons::reductions::{duality_search, pull_back, reduce, Rule};
use fewcons::{Error, Instance, ProblemKind};

#[derive(Parser)]
#[command(name = "fewcons", version, about = "Exact tools for integer programs with few constraints")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Solve an ILP or BILP with the level-by-level dynamic program.
    Solve {
        input: PathBuf,
        #[arg(long)]
        out: Option<PathBuf>,
        /// Print per-level table sizes.
        #[arg(long)]
        stats: bool,
        #[arg(long, default_value_t = 1)]
        threads: usize,
    },
    /// Solve any instance by exhaustive search.
    Oracle {
        input: PathBuf,
        #[arg(long)]
        out: Option<PathBuf>,
        #[arg(long, default_value_t = DEFAULT_BUDGET)]
        budget: u128,
    },
    /// Apply a reduction rule.
    Reduce {
        #[arg(long)]
        rule: Rule,
        input: PathBuf,
        output: PathBuf,
        #[arg(long)]
        trace: Option<PathBuf>,
        /// Threshold for rules into ILPs (distance, discrepancy, cover size).
        #[arg(long, allow_hyphen_values = true)]
        d: Option<i64>,
    },
    /// Map a target solution back through a trace.
    Pullback {
        #[arg(long)]
        trace: PathBuf,
        solution: PathBuf,
        output: PathBuf,
    },
    /// Check a solution against an instance.
    Verify { instance: PathBuf, solution: PathBuf },
    /// Write a seeded random instance.
    Gen {
        #[arg(long, value_parser = parse_kind)]
        kind: ProblemKind,
        #[arg(long)]
        seed: u64,
        #[arg(long)]
        m: usize,
        #[arg(long)]
        n: usize,
        #[arg(long, default_value_t = 3)]
        delta: i64,
        #[arg(long, default_value_t = 10)]
        umax: i64,
        #[arg(long, default_value_t = 5)]
        cmax: i64,
        #[arg(long)]
        out: PathBuf,
    },
    /// Run a benchmark suite and print per-level statistics.
    Bench {
        #[arg(long)]
        suite: String,
        #[arg(long, default_value_t = 1)]
        threads: usize,
    },
    /// Search small covers for instances where the complement map loses optimality.
    DualitySearch {
        #[arg(long, default_value_t = 3)]
        universe: usize,
        #[arg(long, default_value_t = 4)]
        sets: usize,
        #[arg(long, default_value_t = 2)]
        b: i64,
    },
}

fn parse_kind(s: &str) -> Result<ProblemKind, String> {
    ProblemKind::from_tag(s).ok_or_else(|| {
        let tags: Vec<&str> = ProblemKind::ALL.iter().map(|k| k.tag()).collect();
        format!("unknown kind `{s}`; expected one of {}", tags.join(", "))
    })
}

/// Failure classes, one per exit code.
enum Failure {
    Infeasible(String),
    Usage(String),
    Format(String),
    Capacity(String),
    Internal(String),
}

impl Failure {
    fn code(&self) -> u8 {
        match self {
            Failure::Infeasible(_) => 1,
            Failure::Usage(_) => 2,
            Failure::Format(_) => 3,
            Failure::Capacity(_) => 4,
            Failure::Internal(_) => 5,
        }
    }

    fn message(&self) -> &str {
        match self {
            Failure::Infeasible(m)
            | Failure::Usage(m)
            | Failure::Format(m)
            | Failure::Capacity(m)
            | Failure::Internal(m) => m,
        }
    }
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        let msg = e.to_string();
        match e {
            Error::Overflow(_) | Error::Capacity(_) => Failure::Capacity(msg),
            Error::Precondition(_) => Failure::Usage(msg),
            Error::Format(_) | Error::InvalidInstance(_) | Error::KindMismatch { .. } | Error::LengthMismatch { .. } => {
                Failure::Format(msg)
            }
            Error::TargetInfeasible(_) => Failure::Infeasible(msg),
            Error::Invariant(_) => Failure::Internal(msg),
        }
    }
}

type Outcome = Result<(), Failure>;

fn read(path: &Path) -> Result<String, Failure> {
    std::fs::read_to_string(path).map_err(|e| Failure::Usage(format!("{}: {e}", path.display())))
}

fn write(path: &Path, text: &str) -> Outcome {
    std::fs::write(path, text).map_err(|e| Failure::Usage(format!("{}: {e}", path.display())))
}

fn with_path(path: &Path) -> impl Fn(fewcons::formats::FormatError) -> Failure + '_ {
    move |e| Failure::Format(format!("{}: {e}", path.display()))
}

fn load_instance(path: &Path) -> Result<Instance, Failure> {
    parse_instance(&read(path)?).map_err(with_path(path))
}

fn distinct(paths: &[&Path]) -> Outcome {
    for (i, a) in paths.iter().enumerate() {
        if paths[i + 1..].contains(a) {
            return Err(Failure::Usage(format!("{} is given twice", a.display())));
        }
    }
    Ok(())
}

fn run(cli: Cli) -> Outcome {
    match cli.command {
        Command::Solve {
            input,
            out,
            stats,
            threads,
        } => {
            let inst = load_instance(&input)?;
            let ilp = inst
                .as_ilp()
                .ok_or_else(|| Failure::Usage(format!("solve takes an ILP or BILP, not {}", inst.kind())))?;
            let result = solve_with(ilp, &SolveOptions { threads })?;
            let mut text = match result.value() {
                Some(v) => format!("FEASIBLE {v}\n"),
                None => "INFEASIBLE\n".to_string(),
            };
            if stats {
                let _ = writeln!(text, "distinct_columns {}", result.stats.distinct_columns);
                for level in &result.stats.levels {
                    let _ = writeln!(text, "{level}");
                }
            }
            print!("{text}");
            match result.witness() {
                Some(w) => {
                    if let Some(out) = out {
                        let sol = fewcons::Assignment::new(inst.kind(), w.values.clone());
                        write(&out, &serialize_solution(&sol))?;
                    }
                    Ok(())
                }
                None => Err(Failure::Infeasible(String::new())),
            }
        }
        Command::Oracle { input, out, budget } => {
            let inst = load_instance(&input)?;
            let result = oracle_solve(&inst, budget)?;
            match (result.value(), result.witness()) {
                (Some(v), Some(w)) => {
                    println!("FEASIBLE {v}");
                    if let Some(out) = out {
                        write(&out, &serialize_solution(w))?;
                    }
                    Ok(())
                }
                _ => {
                    println!("INFEASIBLE");
                    Err(Failure::Infeasible(String::new()))
                }
            }
        }
        Command::Reduce {
            rule,
            input,
            output,
            trace,
            d,
        } => {
            let mut paths = vec![input.as_path(), output.as_path()];
            paths.extend(trace.as_deref());
            distinct(&paths)?;
            let inst = load_instance(&input)?;
            let t = reduce(rule, &inst, d)?;
            write(&output, &serialize_instance(&t.target))?;
            if let Some(path) = trace {
                write(&path, &serialize_trace(&t))?;
            }
            println!("{rule}: {} -> {}", t.source.kind(), t.target.kind());
            Ok(())
        }
        Command::Pullback {
            trace,
            solution,
            output,
        } => {
            distinct(&[&trace, &solution, &output])?;
            let t = parse_trace(&read(&trace)?).map_err(with_path(&trace))?;
            let sol = parse_solution(&read(&solution)?).map_err(with_path(&solution))?;
            let back = pull_back(&t, &sol).map_err(|e| match e {
                Error::Precondition(m) => Failure::Infeasible(m),
                other => other.into(),
            })?;
            write(&output, &serialize_solution(&back))
        }
        Command::Verify { instance, solution } => {
            let inst = load_instance(&instance)?;
            let sol = parse_solution(&read(&solution)?).map_err(with_path(&solution))?;
            let report = verify_solution(&inst, &sol)?;
            if report.ok() {
                println!("OK {}", report.value.unwrap_or(0));
                Ok(())
            } else {
                println!("VIOLATED");
                for v in &report.violations {
                    println!("{v}");
                }
                Err(Failure::Infeasible(String::new()))
            }
        }
        Command::Gen {
            kind,
            seed,
            m,
            n,
            delta,
            umax,
            cmax,
            out,
        } => {
            let params = GenParams {
                kind,
                seed,
                m,
                n,
                delta,
                umax,
                cmax,
            };
            write(&out, &serialize_instance(&generate(&params)?))
        }
        Command::Bench { suite, threads } => bench::run(&suite, threads),
        Command::DualitySearch { universe, sets, b } => {
            let search = duality_search(universe, sets, b)?;
            println!("instances {}", search.instances);
            println!("forward_violations {}", search.forward_violations);
            println!("gaps {}", search.gaps.len());
            for gap in &search.gaps {
                let sets: Vec<String> = gap
                    .cover
                    .sets()
                    .iter()
                    .map(|s| {
                        let items: Vec<String> = s.iter().map(|e| (e + 1).to_string()).collect();
                        format!("{{{}}}", items.join(","))
                    })
                    .collect();
                let show = |v: Option<i64>| v.map_or("none".to_string(), |v| v.to_string());
                println!(
                    "gap universe {} b {} sets {} opt_cover {} opt_pack {}",
                    gap.cover.universe(),
                    gap.cover.b(),
                    sets.join(" "),
                    show(gap.opt_cover),
                    show(gap.opt_pack)
                );
            }
            if search.forward_violations > 0 {
                return Err(Failure::Internal("forward direction violated".into()));
            }
            Ok(())
        }
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { 2 } else { 0 });
        }
    };
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(failure) => {
            if !failure.message().is_empty() {
                eprintln!("error: {}", failure.message());
            }
            ExitCode::from(failure.code())
        }
    }
}
