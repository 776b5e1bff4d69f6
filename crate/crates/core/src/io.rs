//! Text formats. All indices in files are 1-based.
//!
//! * Matrix: a line with `n`, then `n` lines of `n` characters from `{0,1}`.
//! * Graph: a line `n m`, then `m` lines `u v` with `1 <= u < v <= n`.
//! * Witness: one call `i j` per line.
//! * J-order witness: a line `left`, its calls, a line `right`, its calls.
//! * Reduction metadata: `REDUCTION <name> source_n=<n> [k=<k>]`.
//!
//! Trailing whitespace and blank lines at the end of a file are ignored.

use std::fmt::Write as _;

use crate::error::ParseError;
use crate::generators::{CallPair, CallSequence};
use crate::graph::Graph;
use crate::matrix::BoolMatrix;
use crate::solve::GjpWitness;

fn content_lines(text: &str) -> Vec<(usize, &str)> {
    let mut lines: Vec<(usize, &str)> = text
        .lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l.trim_end()))
        .collect();
    while lines.last().is_some_and(|(_, l)| l.is_empty()) {
        lines.pop();
    }
    lines
}

fn parse_usize(line: usize, token: &str, what: &str) -> Result<usize, ParseError> {
    token
        .parse()
        .map_err(|_| ParseError::new(line, format!("expected {what}, found {token:?}")))
}

fn parse_fields<const K: usize>(
    line: usize,
    text: &str,
    what: [&str; K],
) -> Result<[usize; K], ParseError> {
    let tokens: Vec<&str> = text.split_whitespace().collect();
    if tokens.len() != K {
        return Err(ParseError::new(
            line,
            format!("expected {K} fields, found {}", tokens.len()),
        ));
    }
    let mut out = [0; K];
    for (slot, (tok, w)) in out.iter_mut().zip(tokens.iter().zip(what)) {
        *slot = parse_usize(line, tok, w)?;
    }
    Ok(out)
}

pub fn parse_bmat(text: &str) -> Result<BoolMatrix, ParseError> {
    let lines = content_lines(text);
    let Some(&(first, header)) = lines.first() else {
        return Err(ParseError::new(1, "empty input"));
    };
    let [n] = parse_fields(first, header, ["dimension"])?;
    if n == 0 {
        return Err(ParseError::new(first, "dimension must be at least 1"));
    }
    let body = &lines[1..];
    if body.len() != n {
        let at = body.get(n).map_or(first + body.len() + 1, |(l, _)| *l);
        return Err(ParseError::new(
            at,
            format!("expected {n} matrix rows, found {}", body.len()),
        ));
    }
    let mut m = BoolMatrix::zeros(n);
    for (i, &(line, row)) in body.iter().enumerate() {
        let row = row.trim_start();
        if row.chars().count() != n {
            return Err(ParseError::new(
                line,
                format!("row has {} entries, expected {n}", row.chars().count()),
            ));
        }
        for (j, ch) in row.chars().enumerate() {
            match ch {
                '0' => {}
                '1' => m.set(i, j, true),
                other => {
                    return Err(ParseError::new(
                        line,
                        format!("invalid character {other:?}"),
                    ));
                }
            }
        }
    }
    Ok(m)
}

pub fn write_bmat(m: &BoolMatrix) -> String {
    let mut s = format!("{}\n", m.dim());
    for row in m.row_strings() {
        s.push_str(&row);
        s.push('\n');
    }
    s
}

pub fn parse_graph(text: &str) -> Result<Graph, ParseError> {
    let lines = content_lines(text);
    let Some(&(first, header)) = lines.first() else {
        return Err(ParseError::new(1, "empty input"));
    };
    let [n, m] = parse_fields(first, header, ["vertex count", "edge count"])?;
    if n == 0 {
        return Err(ParseError::new(first, "vertex count must be at least 1"));
    }
    let body = &lines[1..];
    if body.len() != m {
        return Err(ParseError::new(
            first,
            format!("header declares {m} edges, found {} lines", body.len()),
        ));
    }
    let mut g = Graph::empty(n);
    for &(line, text) in body {
        let [u, v] = parse_fields(line, text, ["vertex", "vertex"])?;
        if !(1 <= u && u < v && v <= n) {
            return Err(ParseError::new(
                line,
                format!("edge {u} {v} must satisfy 1 <= u < v <= {n}"),
            ));
        }
        if !g
            .add_edge(u, v)
            .map_err(|e| ParseError::new(line, e.to_string()))?
        {
            return Err(ParseError::new(line, format!("duplicate edge {u} {v}")));
        }
    }
    Ok(g)
}

pub fn write_graph(g: &Graph) -> String {
    let mut s = format!("{} {}\n", g.vertex_count(), g.edge_count());
    for (u, v) in g.edges() {
        let _ = writeln!(s, "{u} {v}");
    }
    s
}

fn parse_call(line: usize, text: &str) -> Result<CallPair, ParseError> {
    let [i, j] = parse_fields(line, text, ["index", "index"])?;
    CallPair::new(i, j).map_err(|e| ParseError::new(line, e.to_string()))
}

/// Blank lines between calls are skipped.
pub fn parse_witness(text: &str) -> Result<CallSequence, ParseError> {
    content_lines(text)
        .into_iter()
        .filter(|(_, l)| !l.trim().is_empty())
        .map(|(line, l)| parse_call(line, l))
        .collect()
}

pub fn write_witness(w: &CallSequence) -> String {
    let mut s = String::new();
    for p in w.iter() {
        let _ = writeln!(s, "{p}");
    }
    s
}

pub fn parse_gjp_witness(text: &str) -> Result<GjpWitness, ParseError> {
    let mut left = CallSequence::new();
    let mut right = CallSequence::new();
    let mut section: Option<bool> = None;
    let mut seen = (false, false);
    for (line, l) in content_lines(text) {
        match l.trim() {
            "" => {}
            "left" if !seen.0 && !seen.1 => {
                seen.0 = true;
                section = Some(false);
            }
            "right" if !seen.1 => {
                seen.1 = true;
                section = Some(true);
            }
            "left" | "right" => {
                return Err(ParseError::new(
                    line,
                    format!("unexpected section header {l:?}"),
                ));
            }
            call => {
                let p = parse_call(line, call)?;
                match section {
                    Some(false) => left.push(p),
                    Some(true) => right.push(p),
                    None => {
                        return Err(ParseError::new(line, "call before a section header"));
                    }
                }
            }
        }
    }
    if !(seen.0 && seen.1) {
        let last = text.lines().count().max(1);
        return Err(ParseError::new(
            last,
            "expected both `left` and `right` sections",
        ));
    }
    Ok(GjpWitness { left, right })
}

pub fn write_gjp_witness(w: &GjpWitness) -> String {
    format!(
        "left\n{}right\n{}",
        write_witness(&w.left),
        write_witness(&w.right)
    )
}

/// Sidecar describing how a reduced instance was produced.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ReductionMeta {
    pub name: String,
    pub source_n: usize,
    pub k: Option<usize>,
}

pub fn parse_meta(text: &str) -> Result<ReductionMeta, ParseError> {
    let lines = content_lines(text);
    let Some(&(line, l)) = lines.first() else {
        return Err(ParseError::new(1, "empty input"));
    };
    let mut tokens = l.split_whitespace();
    if tokens.next() != Some("REDUCTION") {
        return Err(ParseError::new(line, "expected `REDUCTION`"));
    }
    let name = tokens
        .next()
        .ok_or_else(|| ParseError::new(line, "missing reduction name"))?
        .to_string();
    let mut source_n = None;
    let mut k = None;
    for tok in tokens {
        match tok.split_once('=') {
            Some(("source_n", v)) => source_n = Some(parse_usize(line, v, "source_n")?),
            Some(("k", v)) => k = Some(parse_usize(line, v, "k")?),
            _ => return Err(ParseError::new(line, format!("unknown field {tok:?}"))),
        }
    }
    let source_n = source_n.ok_or_else(|| ParseError::new(line, "missing source_n"))?;
    Ok(ReductionMeta { name, source_n, k })
}

pub fn write_meta(meta: &ReductionMeta) -> String {
    match meta.k {
        Some(k) => format!("REDUCTION {} source_n={} k={k}\n", meta.name, meta.source_n),
        None => format!("REDUCTION {} source_n={}\n", meta.name, meta.source_n),
    }
}
