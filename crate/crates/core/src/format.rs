//! Plain-text graph and list-assignment formats.
//!
//! Graph files hold either a single `join <p> <a> <b>` line, or `n <count>`
//! followed by `e <u> <v>` lines with 0-based vertex ids. List files hold an
//! optional `k <int>` header and one `<id>: c1 c2 ...` line per vertex, where
//! ids are `w1..`, `x1..`, `y1..` for join graphs and integers otherwise.
//! Blank lines and lines starting with `#` are ignored in both.

use std::fmt::Write as _;

use thiserror::Error;

use crate::model::{Adjacency, Color, GenericGraph, JoinGraph, ListAssignment, Vertex};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
#[error("{}{message}", line.map(|l| format!("line {l}: ")).unwrap_or_default())]
pub struct ParseError {
    pub line: Option<usize>,
    pub message: String,
}

impl ParseError {
    fn at(line: usize, message: impl Into<String>) -> Self {
        Self { line: Some(line), message: message.into() }
    }

    fn whole(message: impl Into<String>) -> Self {
        Self { line: None, message: message.into() }
    }
}

/// A graph read from a file.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum GraphSpec {
    Join(JoinGraph),
    Generic(GenericGraph),
}

impl GraphSpec {
    pub fn order(&self) -> usize {
        match self {
            GraphSpec::Join(g) => g.order(),
            GraphSpec::Generic(g) => g.order(),
        }
    }

    pub fn label(&self, v: Vertex) -> String {
        match self {
            GraphSpec::Join(g) => g.label(v),
            GraphSpec::Generic(_) => v.to_string(),
        }
    }

    fn parse_vertex(&self, id: &str) -> Option<Vertex> {
        match self {
            GraphSpec::Join(g) => g.parse_label(id),
            GraphSpec::Generic(g) => id.parse().ok().filter(|&v| v < g.order()),
        }
    }
}

fn content_lines(text: &str) -> impl Iterator<Item = (usize, &str)> {
    text.lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l.trim()))
        .filter(|(_, l)| !l.is_empty() && !l.starts_with('#'))
}

fn parse_num<T: std::str::FromStr>(line: usize, tok: Option<&str>, what: &str) -> Result<T, ParseError> {
    let tok = tok.ok_or_else(|| ParseError::at(line, format!("missing {what}")))?;
    tok.parse().map_err(|_| ParseError::at(line, format!("invalid {what} `{tok}`")))
}

pub fn parse_graph(text: &str) -> Result<GraphSpec, ParseError> {
    let mut lines = content_lines(text);
    let (ln, first) = lines.next().ok_or_else(|| ParseError::whole("empty graph file"))?;
    let mut toks = first.split_whitespace();
    match toks.next() {
        Some("join") => {
            let p = parse_num(ln, toks.next(), "p")?;
            let a = parse_num(ln, toks.next(), "a")?;
            let b = parse_num(ln, toks.next(), "b")?;
            if let Some(extra) = toks.next() {
                return Err(ParseError::at(ln, format!("unexpected token `{extra}`")));
            }
            if let Some((ln, _)) = lines.next() {
                return Err(ParseError::at(ln, "content after join line"));
            }
            JoinGraph::new(p, a, b).map(GraphSpec::Join).map_err(|e| ParseError::at(ln, e.to_string()))
        }
        Some("n") => {
            let n = parse_num(ln, toks.next(), "vertex count")?;
            let mut g = GenericGraph::empty(n).map_err(|e| ParseError::at(ln, e.to_string()))?;
            for (ln, line) in lines {
                let mut toks = line.split_whitespace();
                if toks.next() != Some("e") {
                    return Err(ParseError::at(ln, "expected `e <u> <v>`"));
                }
                let u = parse_num(ln, toks.next(), "vertex")?;
                let v = parse_num(ln, toks.next(), "vertex")?;
                if let Some(extra) = toks.next() {
                    return Err(ParseError::at(ln, format!("unexpected token `{extra}`")));
                }
                g.add_edge(u, v).map_err(|e| ParseError::at(ln, e.to_string()))?;
            }
            Ok(GraphSpec::Generic(g))
        }
        _ => Err(ParseError::at(ln, "expected `join <p> <a> <b>` or `n <count>`")),
    }
}

pub fn write_graph(graph: &GraphSpec) -> String {
    match graph {
        GraphSpec::Join(g) => format!("join {} {} {}\n", g.p(), g.a(), g.b()),
        GraphSpec::Generic(g) => {
            let mut out = format!("n {}\n", g.order());
            for (u, v) in g.edges() {
                let _ = writeln!(out, "e {u} {v}");
            }
            out
        }
    }
}

pub fn parse_lists(text: &str, graph: &GraphSpec) -> Result<ListAssignment, ParseError> {
    let n = graph.order();
    let mut lists: Vec<Option<Vec<Color>>> = vec![None; n];
    let mut declared_k = None;
    for (ln, line) in content_lines(text) {
        if let Some(rest) = line.strip_prefix("k ") {
            if declared_k.is_some() || lists.iter().any(Option::is_some) {
                return Err(ParseError::at(ln, "`k` header must come first and only once"));
            }
            declared_k = Some(parse_num::<usize>(ln, Some(rest.trim()), "k")?);
            continue;
        }
        let (id, colors) = line
            .split_once(':')
            .ok_or_else(|| ParseError::at(ln, "expected `<id>: c1 c2 ...`"))?;
        let id = id.trim();
        let v = graph
            .parse_vertex(id)
            .ok_or_else(|| ParseError::at(ln, format!("unknown vertex `{id}`")))?;
        if lists[v].is_some() {
            return Err(ParseError::at(ln, format!("duplicate list for `{id}`")));
        }
        let mut list = Vec::new();
        for tok in colors.split_whitespace() {
            let c: Color = parse_num(ln, Some(tok), "color")?;
            if list.contains(&c) {
                return Err(ParseError::at(ln, format!("repeated color {c}")));
            }
            list.push(c);
        }
        if list.is_empty() {
            return Err(ParseError::at(ln, format!("empty list for `{id}`")));
        }
        if let Some(k) = declared_k {
            if list.len() != k {
                return Err(ParseError::at(ln, format!("list has {} colors, header says k = {k}", list.len())));
            }
        }
        lists[v] = Some(list);
    }
    let lists = lists
        .into_iter()
        .enumerate()
        .map(|(v, l)| l.ok_or_else(|| ParseError::whole(format!("missing list for `{}`", graph.label(v)))))
        .collect::<Result<Vec<_>, _>>()?;
    ListAssignment::new(lists).map_err(|e| ParseError::whole(e.to_string()))
}

pub fn write_lists(graph: &GraphSpec, lists: &ListAssignment) -> String {
    let mut out = String::new();
    if let Some(k) = lists.uniform_size() {
        let _ = writeln!(out, "k {k}");
    }
    for (v, list) in lists.lists().iter().enumerate() {
        let _ = write!(out, "{}:", graph.label(v));
        for c in list {
            let _ = write!(out, " {c}");
        }
        out.push('\n');
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn join_graph_round_trip() {
        let g = parse_graph("# a comment\njoin 1 2 9\n").unwrap();
        assert_eq!(g, GraphSpec::Join(JoinGraph::new(1, 2, 9).unwrap()));
        assert_eq!(parse_graph(&write_graph(&g)).unwrap(), g);
    }

    #[test]
    fn edge_list_round_trip() {
        let g = parse_graph("n 3\ne 0 1\ne 1 2\n").unwrap();
        let GraphSpec::Generic(ref inner) = g else { panic!() };
        assert_eq!(inner.edges(), vec![(0, 1), (1, 2)]);
        assert_eq!(parse_graph(&write_graph(&g)).unwrap(), g);
    }

    #[test]
    fn graph_errors_carry_line_numbers() {
        let err = parse_graph("n 3\ne 0 1\ne 1 7\n").unwrap_err();
        assert_eq!(err.line, Some(3));
        let err = parse_graph("\njoin 1 3 2\n").unwrap_err();
        assert_eq!(err.line, Some(2));
        assert!(parse_graph("").is_err());
        assert_eq!(parse_graph("tree 4").unwrap_err().line, Some(1));
    }

    #[test]
    fn lists_round_trip_and_validate() {
        let g = GraphSpec::Join(JoinGraph::new(0, 2, 2).unwrap());
        let text = "k 2\nx1: 1 2\nx2: 3 4\ny1: 1 3\ny2: 2 4\n";
        let la = parse_lists(text, &g).unwrap();
        assert_eq!(la.list(3), &[2, 4]);
        assert_eq!(write_lists(&g, &la), text);

        let err = parse_lists("k 2\nx1: 1 2\nx2: 3\n", &g).unwrap_err();
        assert_eq!(err.line, Some(3));
        let err = parse_lists("x1: 1\nx2: 1\ny1: 1\n", &g).unwrap_err();
        assert!(err.message.contains("y2"), "{err}");
        assert_eq!(parse_lists("x1: 1\nx1: 2\n", &g).unwrap_err().line, Some(2));
        assert_eq!(parse_lists("q1: 1\n", &g).unwrap_err().line, Some(1));
    }
}
