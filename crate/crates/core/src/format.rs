//! Line-based text formats.
//!
//! Temporal graphs (`.tg`):
//!
//! ```text
//! tg 1
//! t <lifetime>
//! v <name>            one per vertex, in index order
//! e <u> <v> <time>    one per temporal edge
//! ```
//!
//! Reconfiguration sequences (`.tgs`): a `tgs 1` header followed by one
//! `r <u> <v> <from> <to>` line per op. Vertex-cover inputs are edge lists
//! with one `u v` pair per line; a lone name declares an isolated vertex.
//!
//! In all three, lines whose first non-blank character is `#` and blank lines
//! are ignored. Parsing is strict and reports 1-based line numbers.

use std::collections::BTreeSet;
use std::fmt::Write as _;

use crate::error::{Error, Result};
use crate::graph::{TemporalGraph, Time, VertexId};
use crate::hardness::VcInstance;
use crate::sequence::{ReconfigSequence, RelabelOp};

pub const GRAPH_FORMAT_VERSION: u32 = 1;
pub const SEQUENCE_FORMAT_VERSION: u32 = 1;

fn parse_err(line: usize, message: impl Into<String>) -> Error {
    Error::Parse { line, message: message.into() }
}

/// Non-comment, non-blank lines with their 1-based numbers, split into tokens.
fn content_lines(text: &str) -> impl Iterator<Item = (usize, Vec<&str>)> {
    text.lines().enumerate().filter_map(|(i, line)| {
        let trimmed = line.trim();
        if trimmed.is_empty() || trimmed.starts_with('#') {
            None
        } else {
            Some((i + 1, trimmed.split_whitespace().collect()))
        }
    })
}

fn expect_arity(line: usize, tokens: &[&str], n: usize) -> Result<()> {
    if tokens.len() != n {
        return Err(parse_err(
            line,
            format!("`{}` expects {} argument(s), found {}", tokens[0], n - 1, tokens.len() - 1),
        ));
    }
    Ok(())
}

fn parse_time(line: usize, token: &str) -> Result<Time> {
    token.parse::<Time>().map_err(|_| parse_err(line, format!("invalid time label `{token}`")))
}

fn check_header(first: Option<(usize, Vec<&str>)>, magic: &str, version: u32) -> Result<()> {
    let Some((line, tokens)) = first else {
        return Err(parse_err(1, format!("missing `{magic} {version}` header")));
    };
    if tokens.len() != 2 || tokens[0] != magic {
        return Err(parse_err(line, format!("expected `{magic} {version}` header")));
    }
    if tokens[1] != version.to_string() {
        return Err(parse_err(line, format!("unsupported {magic} format version `{}`", tokens[1])));
    }
    Ok(())
}

pub fn parse_graph(text: &str) -> Result<TemporalGraph> {
    let mut lines = content_lines(text);
    check_header(lines.next(), "tg", GRAPH_FORMAT_VERSION)?;

    let mut lifetime: Option<Time> = None;
    let mut names: Vec<String> = Vec::new();
    let mut skeleton: Option<TemporalGraph> = None;
    let mut seen = BTreeSet::new();
    let mut edges = Vec::new();
    let mut last_line = 1;

    for (line, tokens) in lines {
        last_line = line;
        match tokens[0] {
            "t" => {
                expect_arity(line, &tokens, 2)?;
                if lifetime.is_some() {
                    return Err(parse_err(line, "lifetime declared twice"));
                }
                let t = parse_time(line, tokens[1])?;
                if t == 0 {
                    return Err(parse_err(line, "lifetime must be at least 1"));
                }
                lifetime = Some(t);
            }
            "v" => {
                expect_arity(line, &tokens, 2)?;
                if skeleton.is_some() {
                    return Err(parse_err(line, "vertex declared after the first edge"));
                }
                if names.iter().any(|n| n == tokens[1]) {
                    return Err(parse_err(line, format!("duplicate vertex `{}`", tokens[1])));
                }
                names.push(tokens[1].to_string());
            }
            "e" => {
                expect_arity(line, &tokens, 4)?;
                let Some(t_max) = lifetime else {
                    return Err(parse_err(line, "edge before lifetime declaration"));
                };
                if skeleton.is_none() {
                    let g = TemporalGraph::new(names.clone(), t_max, std::iter::empty())
                        .map_err(|e| parse_err(line, e.to_string()))?;
                    skeleton = Some(g);
                }
                let g = skeleton.as_ref().expect("initialised above");
                let lookup =
                    |s: &str| g.vertex_id(s).ok_or_else(|| parse_err(line, format!("undeclared vertex `{s}`")));
                let (a, b) = (lookup(tokens[1])?, lookup(tokens[2])?);
                let edge = crate::graph::StaticEdge::new(a, b)
                    .map_err(|_| parse_err(line, format!("self-loop on `{}`", tokens[1])))?;
                let t = parse_time(line, tokens[3])?;
                if t == 0 || t > t_max {
                    return Err(parse_err(line, format!("time label {t} outside of [1, {t_max}]")));
                }
                if !seen.insert(edge.at(t)) {
                    return Err(parse_err(line, "duplicate temporal edge"));
                }
                edges.push(edge.at(t));
            }
            other => return Err(parse_err(line, format!("unknown directive `{other}`"))),
        }
    }

    let lifetime = lifetime.ok_or_else(|| parse_err(last_line, "missing lifetime declaration"))?;
    match skeleton {
        Some(g) => g.with_edges(edges),
        None => TemporalGraph::new(names, lifetime, edges),
    }
    .map_err(|e| parse_err(last_line, e.to_string()))
}

pub fn write_graph(g: &TemporalGraph) -> String {
    let mut out = String::new();
    writeln!(out, "tg {GRAPH_FORMAT_VERSION}").unwrap();
    writeln!(out, "t {}", g.lifetime()).unwrap();
    for name in g.vertex_names() {
        writeln!(out, "v {name}").unwrap();
    }
    for te in g.edges() {
        writeln!(out, "e {}", g.describe_edge(te)).unwrap();
    }
    out
}

/// Parses a sequence, resolving vertex names against `g`.
pub fn parse_sequence(text: &str, g: &TemporalGraph) -> Result<ReconfigSequence> {
    let mut lines = content_lines(text);
    check_header(lines.next(), "tgs", SEQUENCE_FORMAT_VERSION)?;
    let mut seq = ReconfigSequence::new();
    for (line, tokens) in lines {
        if tokens[0] != "r" {
            return Err(parse_err(line, format!("unknown directive `{}`", tokens[0])));
        }
        expect_arity(line, &tokens, 5)?;
        let lookup = |s: &str| -> Result<VertexId> {
            g.vertex_id(s).ok_or_else(|| parse_err(line, format!("undeclared vertex `{s}`")))
        };
        let (a, b) = (lookup(tokens[1])?, lookup(tokens[2])?);
        let edge = crate::graph::StaticEdge::new(a, b)
            .map_err(|_| parse_err(line, format!("self-loop on `{}`", tokens[1])))?;
        let (from, to) = (parse_time(line, tokens[3])?, parse_time(line, tokens[4])?);
        for t in [from, to] {
            if t == 0 || t > g.lifetime() {
                return Err(parse_err(line, format!("time label {t} outside of [1, {}]", g.lifetime())));
            }
        }
        let op = RelabelOp::new(edge, from, to).map_err(|e| parse_err(line, e.to_string()))?;
        seq.push(op);
    }
    Ok(seq)
}

pub fn write_sequence(seq: &ReconfigSequence, g: &TemporalGraph) -> String {
    let mut out = String::new();
    writeln!(out, "tgs {SEQUENCE_FORMAT_VERSION}").unwrap();
    for op in seq {
        writeln!(out, "r {} {} {}", g.describe_pair(op.edge), op.from, op.to).unwrap();
    }
    out
}

/// Edge-list input for the vertex-cover reduction. `k` is supplied separately.
pub fn parse_edge_list(text: &str, k: usize) -> Result<VcInstance> {
    let mut vertices = Vec::new();
    let mut edges = Vec::new();
    for (line, tokens) in content_lines(text) {
        match tokens.as_slice() {
            [v] => vertices.push(v.to_string()),
            [a, b] => edges.push((a.to_string(), b.to_string())),
            _ => return Err(parse_err(line, "expected `u v` or a single vertex name")),
        }
    }
    VcInstance::new(vertices, edges, k)
}

/// Writes the instance as an edge list that [`parse_edge_list`] reads back.
pub fn write_edge_list(inst: &VcInstance) -> String {
    let mut out = String::new();
    writeln!(out, "# vertex cover instance, k = {}", inst.k()).unwrap();
    for v in inst.isolated_vertices() {
        writeln!(out, "{}", inst.name(v)).unwrap();
    }
    for &(a, b) in inst.edges() {
        writeln!(out, "{} {}", inst.name(a), inst.name(b)).unwrap();
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;

    #[test]
    fn graph_round_trip() {
        let g = fixtures::chain2();
        let text = write_graph(&g);
        assert!(text.starts_with("tg 1\nt 2\nv a\n"));
        assert_eq!(parse_graph(&text).unwrap(), g);
    }

    #[test]
    fn comments_and_blank_lines_are_ignored() {
        let text = "# leading comment\ntg 1\n\nt 1\n  # indented comment\nv x\nv y\ne y x 1\n";
        let g = parse_graph(text).unwrap();
        assert_eq!(g.edge_count(), 1);
        assert_eq!(g.vertex_names(), ["x", "y"]);
    }

    fn line_of(text: &str) -> usize {
        match parse_graph(text).unwrap_err() {
            Error::Parse { line, .. } => line,
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn strict_parsing_reports_lines() {
        assert_eq!(line_of("tg 2\n"), 1);
        assert_eq!(line_of("t 1\n"), 1);
        assert_eq!(line_of("tg 1\nt 1\nv a\nv b\nq a\n"), 5);
        assert_eq!(line_of("tg 1\nt 1\nv a\nv b\ne a b 1\ne b a 1\n"), 6);
        assert_eq!(line_of("tg 1\nt 2\nv a\nv b\ne a b 3\n"), 5);
        assert_eq!(line_of("tg 1\nt 2\nv a\ne a z 1\n"), 4);
        assert_eq!(line_of("tg 1\nt 2\nv a\ne a a 1\n"), 4);
        assert_eq!(line_of("tg 1\nv a\nv b\ne a b 1\n"), 4);
        assert_eq!(line_of("tg 1\nt 1\nt 2\n"), 3);
        assert_eq!(line_of("tg 1\nt 1\nv a\nv a\n"), 4);
        assert_eq!(line_of("tg 1\nt 0\n"), 2);
        assert_eq!(line_of("tg 1\nt 1\nv a extra\n"), 3);
        assert_eq!(line_of("tg 1\nv a\n"), 2);
        assert_eq!(line_of(""), 1);
    }

    #[test]
    fn sequence_round_trip_and_errors() {
        let g = fixtures::chain2();
        let bc = g.edge_by_names("b", "c").unwrap();
        let seq = ReconfigSequence::from(vec![RelabelOp::new(bc, 1, 2).unwrap()]);
        let text = write_sequence(&seq, &g);
        assert_eq!(text, "tgs 1\nr b c 1 2\n");
        assert_eq!(parse_sequence(&text, &g).unwrap(), seq);
        assert_eq!(parse_sequence("tgs 1\n", &g).unwrap().len(), 0);
        assert!(parse_sequence("tgs 1\nr b c 1 1\n", &g).is_err());
        assert!(parse_sequence("tgs 1\nr b c 1 3\n", &g).is_err());
        assert!(parse_sequence("tgs 1\nr b z 1 2\n", &g).is_err());
        assert!(parse_sequence("tg 1\n", &g).is_err());
        assert!(parse_sequence("tgs 1\nx b c 1 2\n", &g).is_err());
    }

    #[test]
    fn edge_list_parsing() {
        let inst = parse_edge_list("# triangle\na b\nb c\nc a\nlonely\n", 2).unwrap();
        assert_eq!(inst.vertex_count(), 4);
        assert_eq!(inst.edges().len(), 3);
        let again = parse_edge_list(&write_edge_list(&inst), 2).unwrap();
        assert_eq!(again, inst);
        assert!(parse_edge_list("a b c\n", 1).is_err());
        assert!(parse_edge_list("a a\n", 1).is_err());
    }
}
