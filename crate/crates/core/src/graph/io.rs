//! graph6, plain edge-list and DOT serialization.
//!
//! graph6 follows the nauty format description: a size prefix `N(n)`
//! followed by the upper triangle of the adjacency matrix, column by column,
//! packed six bits per byte with 63 added to each byte.

use std::fmt::Write as _;

use serde::{Deserialize, Serialize};

use super::{Graph, MAX_VERTICES};
use crate::error::{Error, Result};

const HEADER: &str = ">>graph6<<";

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum GraphFormat {
    Graph6,
    EdgeList,
    Dot,
}

impl std::str::FromStr for GraphFormat {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "g6" | "graph6" => Ok(GraphFormat::Graph6),
            "edges" | "edge-list" | "edgelist" => Ok(GraphFormat::EdgeList),
            "dot" => Ok(GraphFormat::Dot),
            other => Err(Error::Parameter(format!("unknown graph format `{other}`"))),
        }
    }
}

pub fn to_graph6(g: &Graph) -> String {
    let n = g.n();
    let mut out = String::new();
    if n <= 62 {
        out.push((n as u8 + 63) as char);
    } else {
        out.push(126 as char);
        for shift in [12, 6, 0] {
            out.push((((n >> shift) & 0x3f) as u8 + 63) as char);
        }
    }
    let mut acc = 0u8;
    let mut filled = 0;
    for j in 1..n {
        for i in 0..j {
            acc = (acc << 1) | g.has_edge(i, j) as u8;
            filled += 1;
            if filled == 6 {
                out.push((acc + 63) as char);
                acc = 0;
                filled = 0;
            }
        }
    }
    if filled > 0 {
        out.push(((acc << (6 - filled)) + 63) as char);
    }
    out
}

/// Parses one graph6 string. An optional `>>graph6<<` header and trailing
/// whitespace are accepted; error positions are byte offsets into `s`.
pub fn from_graph6(s: &str) -> Result<Graph> {
    let bytes = s.trim_end().as_bytes();
    let mut pos = 0;
    if bytes.starts_with(HEADER.as_bytes()) {
        pos = HEADER.len();
    }
    let err = |pos: usize, msg: &str| Error::Parse { pos, msg: msg.to_string() };
    let first = *bytes.get(pos).ok_or_else(|| err(pos, "empty graph6 string"))?;
    match first {
        b':' => return Err(err(pos, "sparse6 input is not supported")),
        b'&' => return Err(err(pos, "digraph6 input is not supported")),
        _ => {}
    }
    for (i, &b) in bytes.iter().enumerate().skip(pos) {
        if !(63..=126).contains(&b) {
            return Err(err(i, &format!("byte 0x{b:02x} outside the graph6 range 63..=126")));
        }
    }
    let n;
    if first < 126 {
        n = (first - 63) as usize;
        pos += 1;
    } else {
        if bytes.get(pos + 1) == Some(&126) {
            return Err(err(pos + 1, "graphs with more than 258047 vertices are not supported"));
        }
        if bytes.len() < pos + 4 {
            return Err(err(bytes.len(), "truncated size prefix"));
        }
        n = bytes[pos + 1..pos + 4].iter().fold(0usize, |acc, &b| (acc << 6) | (b - 63) as usize);
        pos += 4;
    }
    if n > MAX_VERTICES {
        return Err(err(0, &format!("graph has {n} vertices, at most {MAX_VERTICES} are supported")));
    }
    let pairs = n * n.saturating_sub(1) / 2;
    let needed = pairs.div_ceil(6);
    let body = &bytes[pos..];
    if body.len() != needed {
        let at = if body.len() < needed { bytes.len() } else { pos + needed };
        return Err(err(at, &format!("expected {needed} adjacency bytes for {n} vertices, found {}", body.len())));
    }
    let mut g = Graph::new(n);
    let mut k = 0;
    for j in 1..n {
        for i in 0..j {
            let byte = body[k / 6] - 63;
            if byte >> (5 - k % 6) & 1 == 1 {
                g.add_edge(i, j)?;
            }
            k += 1;
        }
    }
    Ok(g)
}

/// `n m` header line followed by one `u v` line per edge.
pub fn to_edge_list(g: &Graph) -> String {
    let mut out = format!("{} {}\n", g.n(), g.m());
    for (u, v) in g.edges() {
        let _ = writeln!(out, "{u} {v}");
    }
    out
}

pub fn from_edge_list(s: &str) -> Result<Graph> {
    let mut offset = 0;
    let mut lines = Vec::new();
    for line in s.split_inclusive('\n') {
        let trimmed = line.trim();
        if !trimmed.is_empty() && !trimmed.starts_with('#') {
            lines.push((offset, trimmed));
        }
        offset += line.len();
    }
    let mut iter = lines.into_iter();
    let (hpos, header) = iter.next().ok_or(Error::Parse { pos: 0, msg: "missing `n m` header".into() })?;
    let nums = parse_numbers(header, hpos, 2)?;
    let (n, m) = (nums[0], nums[1]);
    let mut g = Graph::try_new(n).map_err(|e| Error::Parse { pos: hpos, msg: e.to_string() })?;
    let mut count = 0;
    for (pos, line) in iter {
        let uv = parse_numbers(line, pos, 2)?;
        g.add_edge(uv[0], uv[1]).map_err(|e| Error::Parse { pos, msg: e.to_string() })?;
        count += 1;
    }
    if count != m || g.m() != m {
        return Err(Error::Parse {
            pos: s.len(),
            msg: format!("header announces {m} edges, found {count} distinct lines"),
        });
    }
    Ok(g)
}

fn parse_numbers(line: &str, pos: usize, expected: usize) -> Result<Vec<usize>> {
    let nums: std::result::Result<Vec<usize>, _> = line.split_whitespace().map(str::parse::<usize>).collect();
    match nums {
        Ok(v) if v.len() == expected => Ok(v),
        _ => Err(Error::Parse { pos, msg: format!("expected {expected} non-negative integers, found `{line}`") }),
    }
}

/// DOT rendering. Bipartite graphs draw the white class unfilled and the
/// black class filled; other graphs draw every vertex filled.
pub fn to_dot(g: &Graph) -> String {
    let parts = g.bipartition();
    let mut out = String::new();
    let name = g.name().unwrap_or("G").replace('"', "'");
    let _ = writeln!(out, "graph \"{name}\" {{");
    let _ = writeln!(out, "  node [shape=circle, style=filled, fontsize=10];");
    for v in 0..g.n() {
        let filled = parts.is_none_or(|p| !p.is_white(v));
        if filled {
            let _ = writeln!(out, "  {v} [fillcolor=black, fontcolor=white];");
        } else {
            let _ = writeln!(out, "  {v} [fillcolor=white, fontcolor=black];");
        }
    }
    for (u, v) in g.edges() {
        let _ = writeln!(out, "  {u} -- {v};");
    }
    out.push_str("}\n");
    out
}

/// Reads the DOT subset written by [`to_dot`]: numeric node ids, node
/// statements and `--` edge chains, attributes ignored.
pub fn from_dot(s: &str) -> Result<Graph> {
    let open = s.find('{').ok_or(Error::Parse { pos: 0, msg: "missing `{`".into() })?;
    let close = s.rfind('}').ok_or(Error::Parse { pos: s.len(), msg: "missing `}`".into() })?;
    let head = s[..open].trim();
    if !head.starts_with("graph") && !head.starts_with("strict graph") {
        return Err(Error::Parse { pos: 0, msg: "expected an undirected `graph` header".into() });
    }
    let name =
        head.split_once(' ').map(|(_, rest)| rest.trim().trim_matches('"').to_string()).filter(|x| !x.is_empty());
    let body = &s[open + 1..close];
    let mut nodes: Vec<usize> = Vec::new();
    let mut edges: Vec<(usize, usize)> = Vec::new();
    let mut offset = open + 1;
    for stmt in body.split([';', '\n']) {
        let pos = offset;
        offset += stmt.len() + 1;
        let stmt = match stmt.find('[') {
            Some(i) => &stmt[..i],
            None => stmt,
        }
        .trim();
        if stmt.is_empty()
            || stmt.starts_with("node")
            || stmt.starts_with("edge")
            || stmt.starts_with("graph")
            || stmt.contains('=')
        {
            continue;
        }
        let ids: std::result::Result<Vec<usize>, _> =
            stmt.split("--").map(|t| t.trim().trim_matches('"').parse::<usize>()).collect();
        let ids = ids.map_err(|_| Error::Parse { pos, msg: format!("cannot read statement `{stmt}`") })?;
        nodes.extend(&ids);
        for w in ids.windows(2) {
            edges.push((w[0], w[1]));
        }
    }
    let n = nodes.iter().max().map_or(0, |&m| m + 1);
    let mut g = Graph::from_edges(n, &edges).map_err(|e| Error::Parse { pos: open, msg: e.to_string() })?;
    if let Some(name) = name {
        if name != "G" {
            g.set_name(Some(name));
        }
    }
    Ok(g)
}

pub fn write_graph(g: &Graph, format: GraphFormat) -> String {
    match format {
        GraphFormat::Graph6 => to_graph6(g) + "\n",
        GraphFormat::EdgeList => to_edge_list(g),
        GraphFormat::Dot => to_dot(g),
    }
}

/// Guesses the format of `s`: DOT if it starts with a `graph` keyword, edge
/// list if the first line is two integers, graph6 otherwise.
pub fn detect_format(s: &str) -> GraphFormat {
    let t = s.trim_start();
    if t.starts_with("graph") || t.starts_with("strict") {
        return GraphFormat::Dot;
    }
    let first = t.lines().find(|l| !l.trim().is_empty() && !l.trim_start().starts_with('#')).unwrap_or("");
    let fields: Vec<&str> = first.split_whitespace().collect();
    if fields.len() == 2 && fields.iter().all(|f| f.parse::<usize>().is_ok()) {
        GraphFormat::EdgeList
    } else {
        GraphFormat::Graph6
    }
}

pub fn read_graph(s: &str) -> Result<Graph> {
    match detect_format(s) {
        GraphFormat::Dot => from_dot(s),
        GraphFormat::EdgeList => from_edge_list(s),
        GraphFormat::Graph6 => {
            let start = s.len() - s.trim_start().len();
            let line = s.trim_start().lines().next().unwrap_or("");
            from_graph6(line).map_err(|e| shift(e, start))
        }
    }
}

/// Reads a stream of graphs: one graph6 string per line, or a single graph
/// in one of the other formats. Blank lines are skipped.
pub fn read_graphs(s: &str) -> Result<Vec<Graph>> {
    match detect_format(s) {
        GraphFormat::Graph6 => {
            let mut out = Vec::new();
            let mut offset = 0;
            for line in s.split_inclusive('\n') {
                if !line.trim().is_empty() {
                    out.push(from_graph6(line).map_err(|e| shift(e, offset))?);
                }
                offset += line.len();
            }
            Ok(out)
        }
        _ => Ok(vec![read_graph(s)?]),
    }
}

fn shift(e: Error, by: usize) -> Error {
    match e {
        Error::Parse { pos, msg } => Error::Parse { pos: pos + by, msg },
        other => other,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn petersen() -> Graph {
        let mut g = Graph::new(10);
        for i in 0..5 {
            g.add_edge(i, (i + 1) % 5).unwrap();
            g.add_edge(i, i + 5).unwrap();
            g.add_edge(5 + i, 5 + (i + 2) % 5).unwrap();
        }
        g
    }

    #[test]
    fn graph6_known_strings() {
        // nauty's geng -cb 4 prints these three graphs
        let star = from_graph6("CF").unwrap();
        assert_eq!(star.edges(), vec![(0, 3), (1, 3), (2, 3)]);
        let c4 = from_graph6("C]").unwrap();
        assert_eq!(c4.m(), 4);
        assert!(c4.is_regular(2));
        assert_eq!(to_graph6(&c4), "C]");
        assert_eq!(to_graph6(&Graph::new(0)), "?");
        assert_eq!(to_graph6(&Graph::new(1)), "@");
        // worked example from the graph6 format description
        let g = from_graph6("DQc").unwrap();
        assert_eq!(g.edges(), vec![(0, 2), (0, 4), (1, 3), (3, 4)]);
    }

    #[test]
    fn graph6_round_trip_and_header() {
        let g = petersen();
        let s = to_graph6(&g);
        assert_eq!(from_graph6(&s).unwrap(), g);
        assert_eq!(from_graph6(&format!(">>graph6<<{s}\n")).unwrap(), g);
    }

    #[test]
    fn graph6_errors_carry_positions() {
        match from_graph6("C]x\u{7f}") {
            Err(Error::Parse { pos, .. }) => assert_eq!(pos, 3),
            other => panic!("unexpected {other:?}"),
        }
        match from_graph6("I????") {
            Err(Error::Parse { pos, .. }) => assert_eq!(pos, 5),
            other => panic!("unexpected {other:?}"),
        }
        assert!(from_graph6(":Fa@x^").is_err());
        assert!(from_graph6("").is_err());
    }

    #[test]
    fn edge_list_round_trip() {
        let g = petersen();
        let text = to_edge_list(&g);
        assert!(text.starts_with("10 15\n"));
        assert_eq!(from_edge_list(&text).unwrap(), g);
        assert!(from_edge_list("3 2\n0 1\n").is_err());
        assert!(from_edge_list("3 1\n0 0\n").is_err());
    }

    #[test]
    fn dot_round_trip() {
        let g = petersen().with_name("petersen");
        let text = to_dot(&g);
        let back = from_dot(&text).unwrap();
        assert_eq!(back, g);
        assert_eq!(back.name(), Some("petersen"));
        let mut isolated = Graph::new(3);
        isolated.add_edge(0, 1).unwrap();
        assert_eq!(from_dot(&to_dot(&isolated)).unwrap(), isolated);
    }

    #[test]
    fn detection() {
        assert_eq!(detect_format("C]\n"), GraphFormat::Graph6);
        assert_eq!(detect_format("4 4\n0 1\n"), GraphFormat::EdgeList);
        assert_eq!(detect_format("graph G {}"), GraphFormat::Dot);
        assert_eq!(read_graphs("CF\nC]\n\nCU\n").unwrap().len(), 3);
    }
}
