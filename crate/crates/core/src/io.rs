//! Text formats.
//!
//! * degree sequence: integers on one line, separated by whitespace or commas
//! * pairs file: one `out in` pair per non-empty line
//! * edge list: `n m`, then `m` lines `i j` (0-based); directed lists use the same layout
//! * adjacency matrix: `n` rows of `n` 0/1 entries, symmetric, zero diagonal
//! * b-matching instance: `n m`, the b-vector, then `m` lines `i j w`
//!
//! Blank lines and lines starting with `#` are ignored everywhere.

use std::fmt::Write as _;

use crate::bmatching::{Matching, MatchingInstance};
use crate::error::{Error, Result};
use crate::graph::{DegreeSequence, DiGraph, DirectedDegreeSequence, SimpleGraph};

fn content_lines(text: &str) -> impl Iterator<Item = (usize, &str)> {
    text.lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l.trim()))
        .filter(|(_, l)| !l.is_empty() && !l.starts_with('#'))
}

fn tokens(line: &str) -> impl Iterator<Item = &str> {
    line.split(|c: char| c.is_whitespace() || c == ',').filter(|t| !t.is_empty())
}

fn parse_err(line: usize, msg: impl Into<String>) -> Error {
    Error::Parse(format!("line {line}: {}", msg.into()))
}

fn ints<T: std::str::FromStr>(line_no: usize, line: &str) -> Result<Vec<T>> {
    tokens(line)
        .map(|t| t.parse::<T>().map_err(|_| parse_err(line_no, format!("bad number {t:?}"))))
        .collect()
}

/// Negative entries are rejected with [`Error::NegativeDegree`].
pub fn parse_degree_sequence(text: &str) -> Result<DegreeSequence> {
    let mut lines = content_lines(text);
    let Some((no, line)) = lines.next() else {
        return Ok(DegreeSequence(Vec::new()));
    };
    if let Some((extra, _)) = lines.next() {
        return Err(parse_err(extra, "degree sequence must be on a single line"));
    }
    let raw: Vec<i64> = ints(no, line)?;
    DegreeSequence::from_signed(&raw)
}

pub fn parse_pairs(text: &str) -> Result<DirectedDegreeSequence> {
    let mut out = Vec::new();
    for (no, line) in content_lines(text) {
        let v: Vec<i64> = ints(no, line)?;
        if v.len() != 2 {
            return Err(parse_err(no, format!("expected `out in`, found {} values", v.len())));
        }
        if let Some(&bad) = v.iter().find(|&&x| x < 0) {
            return Err(Error::NegativeDegree { index: out.len(), value: bad });
        }
        out.push((v[0] as usize, v[1] as usize));
    }
    Ok(DirectedDegreeSequence(out))
}

fn parse_pair_list(text: &str) -> Result<(usize, Vec<(usize, usize)>)> {
    let mut lines = content_lines(text);
    let (no, head) = lines.next().ok_or_else(|| Error::Parse("empty edge list".into()))?;
    let h: Vec<usize> = ints(no, head)?;
    let [n, m] = h[..] else {
        return Err(parse_err(no, "header must be `n m`"));
    };
    let mut pairs = Vec::with_capacity(m);
    for (no, line) in lines {
        let v: Vec<usize> = ints(no, line)?;
        let [i, j] = v[..] else {
            return Err(parse_err(no, "expected `i j`"));
        };
        pairs.push((i, j));
    }
    if pairs.len() != m {
        return Err(Error::Parse(format!("header promises {m} edges, found {}", pairs.len())));
    }
    Ok((n, pairs))
}

pub fn parse_edge_list(text: &str) -> Result<SimpleGraph> {
    let (n, pairs) = parse_pair_list(text)?;
    SimpleGraph::new(n, pairs)
}

pub fn parse_directed_edge_list(text: &str) -> Result<DiGraph> {
    let (n, pairs) = parse_pair_list(text)?;
    DiGraph::new(n, pairs)
}

pub fn parse_adjacency_matrix(text: &str) -> Result<SimpleGraph> {
    let rows: Vec<Vec<u8>> = content_lines(text).map(|(no, l)| ints(no, l)).collect::<Result<_>>()?;
    let n = rows.len();
    let mut edges = Vec::new();
    for (i, row) in rows.iter().enumerate() {
        if row.len() != n {
            return Err(Error::InvalidMatrix(format!("row {i} has {} entries, expected {n}", row.len())));
        }
        for (j, &x) in row.iter().enumerate() {
            if x > 1 {
                return Err(Error::InvalidMatrix(format!("entry ({i},{j}) = {x} is not 0/1")));
            }
            if x != rows[j][i] {
                return Err(Error::InvalidMatrix(format!("entries ({i},{j}) and ({j},{i}) differ")));
            }
            if i == j && x != 0 {
                return Err(Error::InvalidMatrix(format!("diagonal entry {i} is non-zero")));
            }
            if i < j && x == 1 {
                edges.push((i, j));
            }
        }
    }
    SimpleGraph::new(n, edges)
}

/// Adjacency matrix when the first content line has more than two entries
/// or the text is a single `0`; edge list otherwise.
pub fn parse_graph_auto(text: &str) -> Result<SimpleGraph> {
    let first = content_lines(text).next().map(|(_, l)| tokens(l).count()).unwrap_or(0);
    let rows = content_lines(text).count();
    if first > 2 || (first == 1 && rows == 1) || (first == 2 && rows == 2 && looks_like_matrix(text)) {
        parse_adjacency_matrix(text)
    } else {
        parse_edge_list(text)
    }
}

// `n m` then one edge versus a 2x2 matrix: only the matrix has a 0 in the corner with 0/1 entries
fn looks_like_matrix(text: &str) -> bool {
    let cells: Vec<&str> = content_lines(text).flat_map(|(_, l)| tokens(l)).collect();
    cells.len() == 4 && cells[0] == "0" && cells[3] == "0" && cells[1] == cells[2]
}

pub fn parse_instance(text: &str) -> Result<MatchingInstance> {
    let mut lines = content_lines(text);
    let (no, head) = lines.next().ok_or_else(|| Error::MalformedInstance("empty instance".into()))?;
    let h: Vec<usize> = ints(no, head)?;
    let [n, m] = h[..] else {
        return Err(Error::MalformedInstance("header must be `n m`".into()));
    };
    let (no, bline) = lines.next().ok_or_else(|| Error::MalformedInstance("missing b-vector".into()))?;
    let b: Vec<usize> = ints(no, bline)?;
    if b.len() != n {
        return Err(Error::MalformedInstance(format!("b-vector has {} entries, expected {n}", b.len())));
    }
    let mut edges = Vec::with_capacity(m);
    for (no, line) in lines {
        let t: Vec<&str> = tokens(line).collect();
        let [i, j, w] = t[..] else {
            return Err(parse_err(no, "expected `i j w`"));
        };
        let p = |s: &str| s.parse::<usize>().map_err(|_| parse_err(no, format!("bad node {s:?}")));
        let w = w.parse::<i64>().map_err(|_| parse_err(no, format!("bad weight {w:?}")))?;
        edges.push((p(i)?, p(j)?, w));
    }
    if edges.len() != m {
        return Err(Error::MalformedInstance(format!("header promises {m} edges, found {}", edges.len())));
    }
    MatchingInstance::from_weighted_edges(n, &edges, b)
}

pub fn format_edge_list(g: &SimpleGraph) -> String {
    let mut s = format!("{} {}\n", g.node_count(), g.edge_count());
    for &(u, v) in g.edges() {
        let _ = writeln!(s, "{u} {v}");
    }
    s
}

pub fn format_directed_edge_list(g: &DiGraph) -> String {
    let mut s = format!("{} {}\n", g.node_count(), g.arcs().len());
    for &(u, v) in g.arcs() {
        let _ = writeln!(s, "{u} {v}");
    }
    s
}

pub fn format_adjacency_matrix(g: &SimpleGraph) -> String {
    let mut s = String::new();
    for row in g.adjacency_matrix() {
        let line: Vec<String> = row.iter().map(u8::to_string).collect();
        s.push_str(&line.join(" "));
        s.push('\n');
    }
    s
}

/// Chosen edges as `i j`, then `weight W`.
pub fn format_matching(m: &Matching) -> String {
    let mut s = String::new();
    for &(u, v) in &m.edges {
        let _ = writeln!(s, "{u} {v}");
    }
    let _ = writeln!(s, "weight {}", m.weight);
    s
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn degree_sequences() {
        assert_eq!(parse_degree_sequence("3 2 2,2, 2 1\n").unwrap().0, vec![3, 2, 2, 2, 2, 1]);
        assert_eq!(parse_degree_sequence("# c\n\n1 1").unwrap().0, vec![1, 1]);
        assert!(matches!(parse_degree_sequence("1 -1"), Err(Error::NegativeDegree { index: 1, value: -1 })));
        assert!(matches!(parse_degree_sequence("1 x"), Err(Error::Parse(_))));
        assert!(matches!(parse_degree_sequence("1\n1"), Err(Error::Parse(_))));
    }

    #[test]
    fn pairs() {
        let d = parse_pairs("1 0\n0,1\n").unwrap();
        assert_eq!(d.0, vec![(1, 0), (0, 1)]);
        assert!(parse_pairs("1 0 3").is_err());
        assert!(matches!(parse_pairs("1 -2"), Err(Error::NegativeDegree { .. })));
    }

    #[test]
    fn edge_list_round_trip() {
        let g = SimpleGraph::new(4, [(0, 1), (1, 2), (2, 3)]).unwrap();
        let text = format_edge_list(&g);
        assert_eq!(text, "4 3\n0 1\n1 2\n2 3\n");
        assert_eq!(parse_edge_list(&text).unwrap(), g);
        assert_eq!(parse_graph_auto(&text).unwrap(), g);
        assert!(matches!(parse_edge_list("3 2\n0 1\n"), Err(Error::Parse(_))));
        assert!(matches!(parse_edge_list("3 1\n0 0\n"), Err(Error::SelfLoop(0))));
    }

    #[test]
    fn matrix_round_trip() {
        let g = SimpleGraph::new(3, [(0, 1), (1, 2)]).unwrap();
        let text = format_adjacency_matrix(&g);
        assert_eq!(text, "0 1 0\n1 0 1\n0 1 0\n");
        assert_eq!(parse_adjacency_matrix(&text).unwrap(), g);
        assert_eq!(parse_graph_auto(&text).unwrap(), g);
        assert_eq!(parse_graph_auto("0 1\n1 0\n").unwrap(), SimpleGraph::new(2, [(0, 1)]).unwrap());
        assert!(matches!(parse_adjacency_matrix("0 1\n0 0"), Err(Error::InvalidMatrix(_))));
        assert!(matches!(parse_adjacency_matrix("1 0\n0 0"), Err(Error::InvalidMatrix(_))));
    }

    #[test]
    fn directed_list() {
        let g = parse_directed_edge_list("2 2\n0 1\n1 0\n").unwrap();
        assert_eq!(g.arcs().len(), 2);
        assert_eq!(format_directed_edge_list(&g), "2 2\n0 1\n1 0\n");
    }

    #[test]
    fn instance() {
        let text = "4 5\n2 1 1 2\n0 1 1\n0 2 4\n0 3 2\n1 3 3\n2 3 3\n";
        let inst = parse_instance(text).unwrap();
        assert_eq!(inst.b(), &[2, 1, 1, 2]);
        assert_eq!(inst.weight_of(3, 0), Some(2));
        assert!(matches!(parse_instance("2 1\n1\n0 1 1"), Err(Error::MalformedInstance(_))));
        assert!(matches!(parse_instance("2 1\n1 1\n0 1 x"), Err(Error::Parse(_))));
    }
}
