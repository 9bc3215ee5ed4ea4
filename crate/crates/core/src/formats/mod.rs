//! Line-oriented text formats for every document type.
//!
//! Every document starts with a header tag on its own line; the sections
//! that follow are keyword lines (`m 2`, `b 3 1`) and bare integer rows.
//! `#` starts a comment. Set elements are 1-based on disk.

mod cursor;

use std::fmt::Write as _;

use thiserror::Error;

use crate::model::{
    Assignment, BinaryIlpInstance, ClosestStringInstance, DiscrepancyInstance, DistanceBound,
    IlpInstance, Instance, Matrix, NFoldInstance, ProblemKind, SetKind, SetSystemInstance,
};
use crate::reductions::{reduce, ReductionTrace, Rule, TraceParams};
use cursor::{Cursor, Line};

/// A parse failure with its 1-based position.
#[derive(Clone, Debug, PartialEq, Eq, Error)]
#[error("line {line}, column {column}: expected {expected}, found {found}")]
pub struct FormatError {
    pub line: usize,
    pub column: usize,
    pub expected: String,
    pub found: String,
}

/// Anything a file can hold.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Document {
    Instance(Instance),
    Solution(Assignment),
    Trace(ReductionTrace),
}

type Parsed<T> = Result<T, FormatError>;

pub fn parse(text: &str) -> Parsed<Document> {
    let mut cur = Cursor::new(text);
    let doc = match cur.peek_keyword() {
        Some("SOL") => Document::Solution(solution(&mut cur)?),
        Some("TRACE") => Document::Trace(trace(&mut cur)?),
        _ => Document::Instance(instance(&mut cur)?),
    };
    cur.finish()?;
    Ok(doc)
}

fn wrong_document(text: &str, expected: &str) -> FormatError {
    let cur = Cursor::new(text);
    match cur.peek() {
        Some(line) => line.error(0, expected),
        None => FormatError {
            line: 1,
            column: 1,
            expected: expected.into(),
            found: "end of input".into(),
        },
    }
}

pub fn parse_instance(text: &str) -> Parsed<Instance> {
    match parse(text)? {
        Document::Instance(i) => Ok(i),
        _ => Err(wrong_document(text, "an instance header")),
    }
}

pub fn parse_solution(text: &str) -> Parsed<Assignment> {
    match parse(text)? {
        Document::Solution(s) => Ok(s),
        _ => Err(wrong_document(text, "`SOL`")),
    }
}

pub fn parse_trace(text: &str) -> Parsed<ReductionTrace> {
    match parse(text)? {
        Document::Trace(t) => Ok(t),
        _ => Err(wrong_document(text, "`TRACE`")),
    }
}

/// Constructor failures are reported against the line that declared the
/// offending object.
fn invalid(line: &Line<'_>, err: crate::Error) -> FormatError {
    line.error(0, format!("a valid document ({err})"))
}

fn header<'a>(cur: &mut Cursor<'a>, expected: &str) -> Parsed<Line<'a>> {
    let line = cur.next_line(expected)?;
    line.finish(1)?;
    Ok(line)
}

fn instance(cur: &mut Cursor<'_>) -> Parsed<Instance> {
    const TAGS: &str = "one of `ILP`, `BILP`, `CSTRING`, `DISC`, `SETSYS`, `NFOLD`";
    let head = cur.next_line(TAGS)?;
    head.finish(1)?;
    let inst = match head.tokens[0].text {
        "ILP" => Instance::Ilp(ilp(cur, true)?),
        "BILP" => {
            let raw = ilp(cur, false)?;
            Instance::Bilp(BinaryIlpInstance::new(raw.a, raw.b, raw.objective).map_err(|e| invalid(&head, e))?)
        }
        "CSTRING" => Instance::ClosestString(cstring(cur, &head)?),
        "DISC" => Instance::Discrepancy(disc(cur, &head)?),
        "SETSYS" => Instance::SetSystem(setsys(cur, &head)?),
        "NFOLD" => Instance::NFold(nfold(cur, &head)?),
        _ => return Err(head.error(0, TAGS)),
    };
    Ok(inst)
}

/// Reads the body of an ILP or BILP. ILPs are not validated here so that
/// malformed bounds reach the validator with a full report.
fn ilp(cur: &mut Cursor<'_>, bounds: bool) -> Parsed<IlpInstance> {
    let m = cur.keyword_count("m")?;
    let n = cur.keyword_count("n")?;
    cur.keyword("A")?.finish(1)?;
    let rows = cur.matrix(m, n)?;
    let b = cur.keyword_row("b", m)?;
    let (lower, upper) = if bounds {
        (cur.keyword_row("l", n)?, cur.keyword_row("u", n)?)
    } else {
        (vec![0; n], vec![1; n])
    };
    let objective = match cur.peek_keyword() {
        Some("c") => Some(cur.keyword_row("c", n)?),
        _ => None,
    };
    let a = Matrix::from_rows(rows, n).expect("rows were read with n entries");
    Ok(IlpInstance {
        a,
        b,
        lower,
        upper,
        objective,
    })
}

fn cstring(cur: &mut Cursor<'_>, head: &Line<'_>) -> Parsed<ClosestStringInstance> {
    let m = cur.keyword_count("m")?;
    let n = cur.keyword_count("n")?;
    let bound = match cur.peek_keyword() {
        Some("d") => DistanceBound::Uniform(cur.keyword_int("d")?),
        Some("D") => DistanceBound::PerString(cur.keyword_row("D", m)?),
        _ => DistanceBound::Minimize,
    };
    let mut strings = Vec::new();
    for _ in 0..m {
        let line = cur.next_line("a 0/1 string")?;
        line.finish(1)?;
        let tok = line.tokens[0];
        let mut s = Vec::with_capacity(n);
        for (i, ch) in tok.text.chars().enumerate() {
            match ch {
                '0' => s.push(0),
                '1' => s.push(1),
                _ => {
                    return Err(FormatError {
                        line: line.no,
                        column: tok.col + i,
                        expected: "`0` or `1`".into(),
                        found: format!("`{ch}`"),
                    })
                }
            }
        }
        if s.len() != n {
            return Err(line.error(0, format!("a string of length {n}")));
        }
        strings.push(s);
    }
    ClosestStringInstance::new(n, strings, bound).map_err(|e| invalid(head, e))
}

/// `count` lines `S e1 e2 …` with 1-based elements in `1..=universe`.
fn set_lines(cur: &mut Cursor<'_>, count: usize, universe: usize) -> Parsed<Vec<Vec<usize>>> {
    let mut sets = Vec::new();
    for _ in 0..count {
        let line = cur.keyword("S")?;
        let mut set = Vec::with_capacity(line.tokens.len() - 1);
        for i in 1..line.tokens.len() {
            let v = line.int(i)?;
            match usize::try_from(v) {
                Ok(e) if (1..=universe).contains(&e) => set.push(e - 1),
                _ => return Err(line.error(i, format!("an element in 1..={universe}"))),
            }
        }
        sets.push(set);
    }
    Ok(sets)
}

fn disc(cur: &mut Cursor<'_>, head: &Line<'_>) -> Parsed<DiscrepancyInstance> {
    let m = cur.keyword_count("m")?;
    let n = cur.keyword_count("n")?;
    let target = match cur.peek_keyword() {
        Some("d") => Some(cur.keyword_int("d")?),
        _ => None,
    };
    let sets = set_lines(cur, m, n)?;
    DiscrepancyInstance::new(n, sets, target).map_err(|e| invalid(head, e))
}

fn setsys(cur: &mut Cursor<'_>, head: &Line<'_>) -> Parsed<SetSystemInstance> {
    let line = cur.keyword("kind")?;
    let kind = match line.tokens.get(1).map(|t| t.text) {
        Some("cover") => SetKind::Cover,
        Some("packing") => SetKind::Packing,
        _ => return Err(line.error(1, "`cover` or `packing`")),
    };
    line.finish(2)?;
    let m = cur.keyword_count("m")?;
    let n = cur.keyword_count("n")?;
    let b = cur.keyword_int("b")?;
    let card = match cur.peek_keyword() {
        Some("card") => Some(cur.keyword_int("card")?),
        _ => None,
    };
    let sets = set_lines(cur, n, m)?;
    SetSystemInstance::new(kind, m, sets, b, card).map_err(|e| invalid(head, e))
}

fn nfold(cur: &mut Cursor<'_>, head: &Line<'_>) -> Parsed<NFoldInstance> {
    let m = cur.keyword_count("m")?;
    let n = cur.keyword_count("n")?;
    let mut coupling = Vec::new();
    let mut diagonal = Vec::new();
    for _ in 0..n {
        cur.keyword("A")?.finish(1)?;
        coupling.push(Matrix::from_rows(cur.matrix(m, m)?, m).expect("rows were read with m entries"));
        cur.keyword("B")?.finish(1)?;
        diagonal.push(Matrix::from_rows(cur.matrix(m, m)?, m).expect("rows were read with m entries"));
    }
    let b0 = cur.keyword_row("b0", m)?;
    let mut rhs = Vec::new();
    for _ in 0..n {
        rhs.push(cur.keyword_row("b", m)?);
    }
    NFoldInstance::new(m, coupling, diagonal, b0, rhs).map_err(|e| invalid(head, e))
}

fn solution(cur: &mut Cursor<'_>) -> Parsed<Assignment> {
    header(cur, "`SOL`")?;
    let line = cur.keyword("kind")?;
    let kind = line
        .tokens
        .get(1)
        .and_then(|t| ProblemKind::from_tag(t.text))
        .ok_or_else(|| line.error(1, "a problem kind tag"))?;
    line.finish(2)?;
    let values = cur.keyword("x")?.ints(1, None)?;
    Ok(Assignment::new(kind, values))
}

fn trace(cur: &mut Cursor<'_>) -> Parsed<ReductionTrace> {
    header(cur, "`TRACE`")?;
    let rule_line = cur.keyword("rule")?;
    let rule: Rule = rule_line
        .tokens
        .get(1)
        .and_then(|t| t.text.parse().ok())
        .ok_or_else(|| rule_line.error(1, "a reduction rule tag"))?;
    rule_line.finish(2)?;
    let mut pairs = Vec::new();
    while let Some(kw) = cur.peek_keyword() {
        if kw == "source" {
            break;
        }
        let line = cur.next_line("a parameter line")?;
        pairs.push((kw.to_string(), line.ints(1, None)?));
    }
    let params = TraceParams::from_pairs(rule, &pairs).map_err(|e| rule_line.error(0, e))?;
    cur.keyword("source")?.finish(1)?;
    let source = instance(cur)?;
    let target_line = cur.keyword("target")?;
    target_line.finish(1)?;
    let target = instance(cur)?;
    let parsed = ReductionTrace {
        params,
        source,
        target,
    };
    // A trace is only trusted if it is what the rule produces on its source.
    match reduce(rule, &parsed.source, None) {
        Ok(expected) if expected == parsed => Ok(parsed),
        _ => Err(target_line.error(0, format!("a trace that `{rule}` reproduces from its source"))),
    }
}

fn push_row(out: &mut String, kw: &str, values: &[i64]) {
    out.push_str(kw);
    for v in values {
        let _ = write!(out, " {v}");
    }
    out.push('\n');
}

fn push_matrix(out: &mut String, rows: &[Vec<i64>]) {
    for row in rows.iter().filter(|r| !r.is_empty()) {
        let line: Vec<String> = row.iter().map(i64::to_string).collect();
        out.push_str(&line.join(" "));
        out.push('\n');
    }
}

fn push_sets(out: &mut String, sets: &[Vec<usize>]) {
    for s in sets {
        let one_based: Vec<i64> = s.iter().map(|&e| e as i64 + 1).collect();
        push_row(out, "S", &one_based);
    }
}

fn write_instance(out: &mut String, inst: &Instance) {
    match inst {
        Instance::Ilp(i) => {
            let _ = write!(out, "ILP\nm {}\nn {}\nA\n", i.m(), i.n());
            push_matrix(out, &i.a.to_rows());
            push_row(out, "b", &i.b);
            push_row(out, "l", &i.lower);
            push_row(out, "u", &i.upper);
            if let Some(c) = &i.objective {
                push_row(out, "c", c);
            }
        }
        Instance::Bilp(bi) => {
            let i = bi.as_ilp();
            let _ = write!(out, "BILP\nm {}\nn {}\nA\n", i.m(), i.n());
            push_matrix(out, &i.a.to_rows());
            push_row(out, "b", &i.b);
            if let Some(c) = &i.objective {
                push_row(out, "c", c);
            }
        }
        Instance::ClosestString(cs) => {
            let _ = write!(out, "CSTRING\nm {}\nn {}\n", cs.m(), cs.n());
            match cs.bound() {
                DistanceBound::Uniform(d) => {
                    let _ = writeln!(out, "d {d}");
                }
                DistanceBound::PerString(ds) => push_row(out, "D", ds),
                DistanceBound::Minimize => {}
            }
            for s in cs.strings() {
                out.extend(s.iter().map(|&c| if c == 1 { '1' } else { '0' }));
                out.push('\n');
            }
        }
        Instance::Discrepancy(di) => {
            let _ = write!(out, "DISC\nm {}\nn {}\n", di.sets().len(), di.universe());
            if let Some(d) = di.target() {
                let _ = writeln!(out, "d {d}");
            }
            push_sets(out, di.sets());
        }
        Instance::SetSystem(ss) => {
            let _ = write!(
                out,
                "SETSYS\nkind {}\nm {}\nn {}\nb {}\n",
                ss.kind().tag(),
                ss.universe(),
                ss.sets().len(),
                ss.b()
            );
            if let Some(card) = ss.card() {
                let _ = writeln!(out, "card {card}");
            }
            push_sets(out, ss.sets());
        }
        Instance::NFold(nf) => {
            let _ = write!(out, "NFOLD\nm {}\nn {}\n", nf.block_rows(), nf.blocks());
            for i in 0..nf.blocks() {
                out.push_str("A\n");
                push_matrix(out, &nf.coupling(i).to_rows());
                out.push_str("B\n");
                push_matrix(out, &nf.diagonal(i).to_rows());
            }
            push_row(out, "b0", nf.b0());
            for i in 0..nf.blocks() {
                push_row(out, "b", nf.rhs(i));
            }
        }
    }
}

pub fn serialize_instance(inst: &Instance) -> String {
    let mut out = String::new();
    write_instance(&mut out, inst);
    out
}

pub fn serialize_solution(sol: &Assignment) -> String {
    let mut out = format!("SOL\nkind {}\n", sol.kind.tag());
    push_row(&mut out, "x", &sol.values);
    out
}

pub fn serialize_trace(trace: &ReductionTrace) -> String {
    let mut out = format!("TRACE\nrule {}\n", trace.rule());
    for (key, values) in trace.params.to_pairs() {
        push_row(&mut out, key, &values);
    }
    out.push_str("source\n");
    write_instance(&mut out, &trace.source);
    out.push_str("target\n");
    write_instance(&mut out, &trace.target);
    out
}

pub fn serialize(doc: &Document) -> String {
    match doc {
        Document::Instance(i) => serialize_instance(i),
        Document::Solution(s) => serialize_solution(s),
        Document::Trace(t) => serialize_trace(t),
    }
}
