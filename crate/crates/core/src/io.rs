//! Text formats: DIMACS edge files for graphs and collision graphs, and
//! family files (`#` comments, one member per line, 1-indexed, `*` = blank).

use std::fs;
use std::path::Path;

use crate::collision::CollisionGraph;
use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::perm::{BlankedPermutation, Family};

/// DIMACS text with the given comment lines; edges sorted.
pub fn format_dimacs(g: &Graph, comments: &[String]) -> String {
    let mut out = String::new();
    for c in comments {
        out.push_str("c ");
        out.push_str(c);
        out.push('\n');
    }
    out.push_str(&format!("p edge {} {}\n", g.n(), g.m()));
    for (u, v) in g.edges() {
        out.push_str(&format!("e {} {}\n", u + 1, v + 1));
    }
    out
}

pub fn parse_dimacs(text: &str) -> Result<Graph> {
    let mut graph: Option<(Graph, usize)> = None;
    let mut seen = 0usize;
    for (i, raw) in text.lines().enumerate() {
        let line = i + 1;
        let toks: Vec<&str> = raw.split_whitespace().collect();
        match toks.first().copied() {
            None | Some("c") => {}
            Some("p") => {
                if graph.is_some() {
                    return Err(Error::parse(line, "second problem line"));
                }
                if toks.len() != 4 || toks[1] != "edge" {
                    return Err(Error::parse(line, "expected `p edge <n> <m>`"));
                }
                let n = number(toks[2], line)?;
                let m = number(toks[3], line)?;
                graph = Some((Graph::empty(n), m));
            }
            Some("e") => {
                let (g, _) = graph
                    .as_mut()
                    .ok_or_else(|| Error::parse(line, "edge before problem line"))?;
                if toks.len() != 3 {
                    return Err(Error::parse(line, "expected `e <u> <v>`"));
                }
                let u = vertex(toks[1], g.n(), line)?;
                let v = vertex(toks[2], g.n(), line)?;
                if u == v {
                    return Err(Error::parse(line, format!("self-loop at vertex {}", u + 1)));
                }
                g.add_edge(u, v)?;
                seen += 1;
            }
            Some(other) => return Err(Error::parse(line, format!("unknown line type `{other}`"))),
        }
    }
    let (g, m) = graph.ok_or_else(|| Error::parse(0, "missing problem line"))?;
    if seen != m {
        return Err(Error::parse(
            0,
            format!("problem line declares {m} edges, found {seen}"),
        ));
    }
    Ok(g)
}

fn number(tok: &str, line: usize) -> Result<usize> {
    tok.parse()
        .map_err(|_| Error::parse(line, format!("`{tok}` is not a non-negative integer")))
}

fn vertex(tok: &str, n: usize, line: usize) -> Result<usize> {
    let v = number(tok, line)?;
    if v == 0 || v > n {
        return Err(Error::parse(line, format!("vertex {v} outside 1..={n}")));
    }
    Ok(v - 1)
}

/// Family text: `#` header lines, then members in family order.
pub fn format_family(f: &Family, header: &[String]) -> String {
    let mut out = String::new();
    for h in header {
        out.push_str("# ");
        out.push_str(h);
        out.push('\n');
    }
    for m in f.members() {
        out.push_str(&m.to_string());
        out.push('\n');
    }
    out
}

/// Parses a family file. Repeated members are kept so a verifier can name
/// the offending pair.
pub fn parse_family(text: &str) -> Result<Family> {
    let mut rows = Vec::new();
    let mut width: Option<usize> = None;
    let mut first_line = 0;
    for (i, raw) in text.lines().enumerate() {
        let line = i + 1;
        let body = raw.trim();
        if body.is_empty() || body.starts_with('#') {
            continue;
        }
        let entries = body
            .split_whitespace()
            .map(|t| match t {
                "*" => Ok(None),
                _ => {
                    let v = number(t, line)?;
                    if v == 0 {
                        return Err(Error::parse(line, "vertices are 1-indexed"));
                    }
                    Ok(Some(v - 1))
                }
            })
            .collect::<Result<Vec<_>>>()?;
        match width {
            None => {
                width = Some(entries.len());
                first_line = line;
            }
            Some(w) if w != entries.len() => {
                return Err(Error::parse(
                    line,
                    format!("{} tokens, but line {first_line} has {w}", entries.len()),
                ));
            }
            _ => {}
        }
        let row =
            BlankedPermutation::new(entries).map_err(|e| Error::parse(line, e.to_string()))?;
        rows.push((line, row));
    }
    if rows.is_empty() {
        return Err(Error::EmptyFamily);
    }
    let lines: Vec<usize> = rows.iter().map(|(l, _)| *l).collect();
    Family::indexed(rows.into_iter().map(|(_, r)| r).collect()).map_err(|e| match e {
        Error::SupportMismatch { index } => Error::parse(
            lines[index],
            "member uses a different vertex set than the first member",
        ),
        other => other,
    })
}

/// Collision graph as DIMACS, with a `c family <name>` provenance line.
pub fn format_collision(h: &CollisionGraph) -> String {
    let comments: Vec<String> = h
        .family_ref()
        .map(|f| format!("family {f}"))
        .into_iter()
        .collect();
    format_dimacs(h.graph(), &comments)
}

pub fn read_graph(path: &Path) -> Result<Graph> {
    parse_dimacs(&fs::read_to_string(path)?)
}

pub fn read_family(path: &Path) -> Result<Family> {
    parse_family(&fs::read_to_string(path)?)
}

pub fn write_text(path: &Path, text: &str) -> Result<()> {
    fs::write(path, text)?;
    Ok(())
}
