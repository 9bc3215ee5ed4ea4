//! Polynomial-time maps between ILPs and the combinatorial problems, each
//! with a trace that carries target solutions back to the source.

mod cstring;
mod disc;
mod setsys;

use std::fmt;
use std::str::FromStr;

pub use cstring::{cstring_to_ilp, ilp_to_cstring, to_pm1_system, Pm1System};
pub use disc::{build_equality_gadget, disc_to_ilp, ilp_to_disc, DiscLayout, DiscrepancyGadget};
pub use setsys::{
    cover_to_ilp, dualize, duality_search, ilp_to_cover, CoverEncoding, DualityGap, DualitySearch,
};

use crate::error::{Error, Result};
use crate::model::{
    verify_solution, Assignment, BinaryIlpInstance, DiscrepancyInstance, DistanceBound, Instance,
    SetSystemInstance,
};
use crate::transforms::{
    binarize, to_nfold, zero_one_matrix, BinarizeTrace, BitRowLayout, NFoldTrace, ZeroOneTrace,
};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Rule {
    CstringToIlp,
    IlpToCstring,
    DiscToIlp,
    IlpToDisc,
    CoverToIlp,
    IlpToCover,
    Dualize,
    Pm1,
    ZeroOne,
    Binarize,
    ToNfold,
}

impl Rule {
    pub const ALL: [Rule; 11] = [
        Rule::CstringToIlp,
        Rule::IlpToCstring,
        Rule::DiscToIlp,
        Rule::IlpToDisc,
        Rule::CoverToIlp,
        Rule::IlpToCover,
        Rule::Dualize,
        Rule::Pm1,
        Rule::ZeroOne,
        Rule::Binarize,
        Rule::ToNfold,
    ];

    /// Stable tag used on the command line and in trace files.
    pub fn tag(self) -> &'static str {
        match self {
            Rule::CstringToIlp => "cstring-to-ilp",
            Rule::IlpToCstring => "ilp-to-cstring",
            Rule::DiscToIlp => "disc-to-ilp",
            Rule::IlpToDisc => "ilp-to-disc",
            Rule::CoverToIlp => "cover-to-ilp",
            Rule::IlpToCover => "ilp-to-cover",
            Rule::Dualize => "dualize",
            Rule::Pm1 => "pm1",
            Rule::ZeroOne => "zero-one",
            Rule::Binarize => "binarize",
            Rule::ToNfold => "to-nfold",
        }
    }
}

impl fmt::Display for Rule {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.tag())
    }
}

impl FromStr for Rule {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, Self::Err> {
        Self::ALL
            .into_iter()
            .find(|r| r.tag() == s)
            .ok_or_else(|| format!("unknown rule `{s}`"))
    }
}

/// Everything a pull-back needs beyond the target solution.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum TraceParams {
    /// Target columns `[x (n), slack]`; `bounds` are the effective radii.
    CstringToIlp { n: usize, bounds: Vec<i64> },
    /// `degenerate` marks the `n = 0` single-character encoding.
    IlpToCstring { n: usize, degenerate: bool },
    DiscToIlp { n: usize, bound: i64 },
    IlpToDisc(DiscLayout),
    CoverToIlp { n: usize, bound: i64 },
    IlpToCover { n: usize, target_value: i64, trivial: bool },
    Dualize { n: usize },
    /// Target columns `[x (n), x̄ (n), slack]`.
    Pm1 { n: usize },
    ZeroOne(ZeroOneTrace),
    Binarize(BinarizeTrace),
    ToNfold(NFoldTrace),
}

fn flag(b: bool) -> i64 {
    i64::from(b)
}

impl TraceParams {
    pub fn rule(&self) -> Rule {
        match self {
            TraceParams::CstringToIlp { .. } => Rule::CstringToIlp,
            TraceParams::IlpToCstring { .. } => Rule::IlpToCstring,
            TraceParams::DiscToIlp { .. } => Rule::DiscToIlp,
            TraceParams::IlpToDisc(_) => Rule::IlpToDisc,
            TraceParams::CoverToIlp { .. } => Rule::CoverToIlp,
            TraceParams::IlpToCover { .. } => Rule::IlpToCover,
            TraceParams::Dualize { .. } => Rule::Dualize,
            TraceParams::Pm1 { .. } => Rule::Pm1,
            TraceParams::ZeroOne(_) => Rule::ZeroOne,
            TraceParams::Binarize(_) => Rule::Binarize,
            TraceParams::ToNfold(_) => Rule::ToNfold,
        }
    }

    /// Key/value integer lines, in a fixed order per rule.
    pub fn to_pairs(&self) -> Vec<(&'static str, Vec<i64>)> {
        match self {
            TraceParams::CstringToIlp { n, bounds } => vec![("n", vec![*n as i64]), ("d", bounds.clone())],
            TraceParams::IlpToCstring { n, degenerate } => {
                vec![("n", vec![*n as i64]), ("degenerate", vec![flag(*degenerate)])]
            }
            TraceParams::DiscToIlp { n, bound } | TraceParams::CoverToIlp { n, bound } => {
                vec![("n", vec![*n as i64]), ("d", vec![*bound])]
            }
            TraceParams::IlpToDisc(l) => vec![
                ("n", vec![l.n as i64]),
                ("k", vec![i64::from(l.k)]),
                ("trivial", vec![flag(l.trivial)]),
            ],
            TraceParams::IlpToCover {
                n,
                target_value,
                trivial,
            } => vec![
                ("n", vec![*n as i64]),
                ("target", vec![*target_value]),
                ("trivial", vec![flag(*trivial)]),
            ],
            TraceParams::Dualize { n } | TraceParams::Pm1 { n } => vec![("n", vec![*n as i64])],
            TraceParams::ZeroOne(t) => vec![
                ("n", vec![t.original_n as i64]),
                ("m", vec![t.layout.m as i64]),
                ("k", vec![i64::from(t.layout.k)]),
                ("aux", vec![t.aux_bound]),
            ],
            TraceParams::Binarize(t) => vec![
                ("lower", t.lower.clone()),
                ("copies", t.copies.iter().map(|&c| c as i64).collect()),
                ("constant", vec![t.constant]),
                ("trimmed", vec![flag(t.trimmed)]),
            ],
            TraceParams::ToNfold(t) => vec![
                ("block_rows", vec![t.block_rows as i64]),
                ("blocks", vec![t.blocks as i64]),
            ],
        }
    }

    /// Inverse of [`TraceParams::to_pairs`]. Keys must appear exactly as
    /// emitted; the error names the first offending key.
    pub fn from_pairs(rule: Rule, pairs: &[(String, Vec<i64>)]) -> std::result::Result<Self, String> {
        let mut it = pairs.iter();
        let mut next = |key: &str| -> std::result::Result<&[i64], String> {
            match it.next() {
                Some((k, v)) if k == key => Ok(v),
                Some((k, _)) => Err(format!("key `{key}`, found `{k}`")),
                None => Err(format!("key `{key}`")),
            }
        };
        fn one(key: &str, v: &[i64]) -> std::result::Result<i64, String> {
            match v {
                [x] => Ok(*x),
                _ => Err(format!("one integer after `{key}`")),
            }
        }
        fn count(key: &str, v: i64) -> std::result::Result<usize, String> {
            usize::try_from(v).map_err(|_| format!("non-negative `{key}`"))
        }
        fn boolean(key: &str, v: i64) -> std::result::Result<bool, String> {
            match v {
                0 => Ok(false),
                1 => Ok(true),
                _ => Err(format!("0 or 1 after `{key}`")),
            }
        }
        macro_rules! get {
            ($key:literal) => {
                next($key).and_then(|v| one($key, v))
            };
        }
        let params = match rule {
            Rule::CstringToIlp => {
                let n = count("n", get!("n")?)?;
                let bounds = next("d")?.to_vec();
                TraceParams::CstringToIlp { n, bounds }
            }
            Rule::IlpToCstring => TraceParams::IlpToCstring {
                n: count("n", get!("n")?)?,
                degenerate: boolean("degenerate", get!("degenerate")?)?,
            },
            Rule::DiscToIlp => TraceParams::DiscToIlp {
                n: count("n", get!("n")?)?,
                bound: get!("d")?,
            },
            Rule::CoverToIlp => TraceParams::CoverToIlp {
                n: count("n", get!("n")?)?,
                bound: get!("d")?,
            },
            Rule::IlpToDisc => {
                let n = count("n", get!("n")?)?;
                let k = u32::try_from(get!("k")?).map_err(|_| "non-negative `k`".to_string())?;
                let trivial = boolean("trivial", get!("trivial")?)?;
                TraceParams::IlpToDisc(DiscLayout { n, k, trivial })
            }
            Rule::IlpToCover => TraceParams::IlpToCover {
                n: count("n", get!("n")?)?,
                target_value: get!("target")?,
                trivial: boolean("trivial", get!("trivial")?)?,
            },
            Rule::Dualize => TraceParams::Dualize {
                n: count("n", get!("n")?)?,
            },
            Rule::Pm1 => TraceParams::Pm1 {
                n: count("n", get!("n")?)?,
            },
            Rule::ZeroOne => {
                let original_n = count("n", get!("n")?)?;
                let m = count("m", get!("m")?)?;
                let k = u32::try_from(get!("k")?).map_err(|_| "non-negative `k`".to_string())?;
                let aux_bound = get!("aux")?;
                TraceParams::ZeroOne(ZeroOneTrace {
                    layout: BitRowLayout { k, m },
                    original_n,
                    aux_bound,
                })
            }
            Rule::Binarize => {
                let lower = next("lower")?.to_vec();
                let copies = next("copies")?
                    .iter()
                    .map(|&c| count("copies", c))
                    .collect::<std::result::Result<Vec<_>, _>>()?;
                if copies.len() != lower.len() {
                    return Err("as many `copies` as `lower` entries".into());
                }
                let constant = get!("constant")?;
                let trimmed = boolean("trimmed", get!("trimmed")?)?;
                TraceParams::Binarize(BinarizeTrace {
                    lower,
                    copies,
                    constant,
                    trimmed,
                })
            }
            Rule::ToNfold => TraceParams::ToNfold(NFoldTrace {
                block_rows: count("block_rows", get!("block_rows")?)?,
                blocks: count("blocks", get!("blocks")?)?,
            }),
        };
        match it.next() {
            Some((k, _)) => Err(format!("end of parameters, found `{k}`")),
            None => Ok(params),
        }
    }

    /// Length of the source solution the pull-back produces.
    fn source_len(&self) -> usize {
        match self {
            TraceParams::CstringToIlp { n, .. }
            | TraceParams::IlpToCstring { n, .. }
            | TraceParams::DiscToIlp { n, .. }
            | TraceParams::CoverToIlp { n, .. }
            | TraceParams::IlpToCover { n, .. }
            | TraceParams::Dualize { n }
            | TraceParams::Pm1 { n } => *n,
            TraceParams::IlpToDisc(l) => l.n,
            TraceParams::ZeroOne(t) => t.original_n,
            TraceParams::Binarize(t) => t.lower.len(),
            TraceParams::ToNfold(t) => t.blocks,
        }
    }
}

/// One applied reduction: its parameters and both instances. The target is
/// kept so that pull-back can refuse infeasible solutions.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ReductionTrace {
    pub params: TraceParams,
    pub source: Instance,
    pub target: Instance,
}

impl ReductionTrace {
    pub fn rule(&self) -> Rule {
        self.params.rule()
    }
}

fn binary_source(inst: &Instance, rule: Rule) -> Result<BinaryIlpInstance> {
    match inst {
        Instance::Bilp(b) => Ok(b.clone()),
        Instance::Ilp(i) => BinaryIlpInstance::try_from_ilp(i.clone()),
        other => Err(Error::Precondition(format!(
            "{rule} needs a binary ILP, got {}",
            other.kind()
        ))),
    }
}

fn wrong_kind(rule: Rule, inst: &Instance) -> Error {
    Error::Precondition(format!("{rule} cannot take a {} instance", inst.kind()))
}

/// Applies `rule` to `source`. `d` overrides the threshold for the rules
/// into ILPs (distance, discrepancy, cover size); the recorded source then
/// carries that threshold so pull-backs are checked against it.
pub fn reduce(rule: Rule, source: &Instance, d: Option<i64>) -> Result<ReductionTrace> {
    let (params, source, target) = match rule {
        Rule::CstringToIlp => {
            let Instance::ClosestString(cs) = source else {
                return Err(wrong_kind(rule, source));
            };
            let (ilp, bounds) = cstring_to_ilp(cs, d)?;
            let src = match d {
                Some(d) => {
                    crate::model::ClosestStringInstance::new(cs.n(), cs.strings().to_vec(), DistanceBound::Uniform(d))?
                }
                None => cs.clone(),
            };
            (
                TraceParams::CstringToIlp { n: cs.n(), bounds },
                Instance::ClosestString(src),
                Instance::Ilp(ilp),
            )
        }
        Rule::DiscToIlp => {
            let Instance::Discrepancy(di) = source else {
                return Err(wrong_kind(rule, source));
            };
            let (ilp, bound) = disc_to_ilp(di, d)?;
            let src = DiscrepancyInstance::new(di.universe(), di.sets().to_vec(), Some(bound))?;
            (
                TraceParams::DiscToIlp {
                    n: di.universe(),
                    bound,
                },
                Instance::Discrepancy(src),
                Instance::Ilp(ilp),
            )
        }
        Rule::CoverToIlp => {
            let Instance::SetSystem(ss) = source else {
                return Err(wrong_kind(rule, source));
            };
            let (ilp, bound) = cover_to_ilp(ss, d)?;
            let card = if d.is_some() { Some(bound) } else { ss.card() };
            let src = SetSystemInstance::new(ss.kind(), ss.universe(), ss.sets().to_vec(), ss.b(), card)?;
            (
                TraceParams::CoverToIlp {
                    n: ss.sets().len(),
                    bound,
                },
                Instance::SetSystem(src),
                Instance::Ilp(ilp),
            )
        }
        Rule::Dualize => {
            let Instance::SetSystem(ss) = source else {
                return Err(wrong_kind(rule, source));
            };
            let dual = dualize(ss)?;
            (
                TraceParams::Dualize { n: ss.sets().len() },
                source.clone(),
                Instance::SetSystem(dual),
            )
        }
        Rule::IlpToCstring => {
            let bin = binary_source(source, rule)?;
            let (cs, degenerate) = ilp_to_cstring(&bin)?;
            (
                TraceParams::IlpToCstring { n: bin.n(), degenerate },
                source.clone(),
                Instance::ClosestString(cs),
            )
        }
        Rule::IlpToDisc => {
            let bin = binary_source(source, rule)?;
            let (di, layout) = ilp_to_disc(&bin)?;
            (TraceParams::IlpToDisc(layout), source.clone(), Instance::Discrepancy(di))
        }
        Rule::IlpToCover => {
            let bin = binary_source(source, rule)?;
            let enc = ilp_to_cover(&bin)?;
            (
                TraceParams::IlpToCover {
                    n: enc.n,
                    target_value: enc.target_value,
                    trivial: enc.trivial,
                },
                source.clone(),
                Instance::SetSystem(enc.instance),
            )
        }
        Rule::Pm1 => {
            let bin = binary_source(source, rule)?;
            let sys = to_pm1_system(&bin)?;
            (TraceParams::Pm1 { n: bin.n() }, source.clone(), Instance::Ilp(sys.to_ilp()?))
        }
        Rule::ZeroOne => {
            let ilp = source.as_ilp().ok_or_else(|| wrong_kind(rule, source))?;
            let (target, trace) = zero_one_matrix(ilp)?;
            (TraceParams::ZeroOne(trace), source.clone(), Instance::Ilp(target))
        }
        Rule::Binarize => {
            let ilp = source.as_ilp().ok_or_else(|| wrong_kind(rule, source))?;
            let (target, trace) = binarize(ilp, true)?;
            (TraceParams::Binarize(trace), source.clone(), Instance::Bilp(target))
        }
        Rule::ToNfold => {
            let bin = binary_source(source, rule)?;
            let (target, trace) = to_nfold(&bin)?;
            (TraceParams::ToNfold(trace), source.clone(), Instance::NFold(target))
        }
    };
    Ok(ReductionTrace {
        params,
        source,
        target,
    })
}

/// Maps a feasible target solution to a feasible source solution. The
/// solution is checked against the target first. For `dualize` from a
/// cover, packings whose complement is not a cover are refused.
pub fn pull_back(trace: &ReductionTrace, sol: &Assignment) -> Result<Assignment> {
    let report = verify_solution(&trace.target, sol)?;
    if !report.ok() {
        return Err(Error::TargetInfeasible(report));
    }
    let y = &sol.values;
    let x = match &trace.params {
        TraceParams::CstringToIlp { n, .. }
        | TraceParams::IlpToCstring { n, .. }
        | TraceParams::CoverToIlp { n, .. }
        | TraceParams::IlpToCover { n, .. }
        | TraceParams::Pm1 { n } => y[..*n].to_vec(),
        TraceParams::DiscToIlp { n, .. } => y[..*n].iter().map(|&v| 2 * v - 1).collect(),
        TraceParams::IlpToDisc(layout) => layout.pull_back(y),
        TraceParams::Dualize { .. } => y.iter().map(|&v| 1 - v).collect(),
        TraceParams::ZeroOne(t) => t.pull_back(y),
        TraceParams::Binarize(t) => t.pull_back(y),
        TraceParams::ToNfold(t) => t.pull_back(y),
    };
    debug_assert_eq!(x.len(), trace.params.source_len());
    let x = Assignment::new(trace.source.kind(), x);
    if let TraceParams::Dualize { .. } = trace.params {
        // Complementing is sound from covers to packings only; a packing
        // whose complement is not a cover has no preimage.
        if !verify_solution(&trace.source, &x)?.ok() {
            return Err(Error::Precondition(
                "the complement of this selection is infeasible for the source".into(),
            ));
        }
    }
    Ok(x)
}
