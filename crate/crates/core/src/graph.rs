//! Graph representations, degree bookkeeping, Randić index evaluation and
//! connectivity queries.
//!
//! Nodes are dense `0..n` indices. Graph values are immutable once built;
//! every "modifying" operation returns a new graph.

use std::collections::VecDeque;
use std::fmt;

use crate::error::{Error, Result};

/// Undirected simple graph.
///
/// Keeps both a sorted edge list (each edge as `(u, v)` with `u < v`) and
/// sorted per-node adjacency lists.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct SimpleGraph {
    n: usize,
    edges: Vec<(usize, usize)>,
    adj: Vec<Vec<usize>>,
}

impl SimpleGraph {
    /// Builds a graph, rejecting self-loops, repeated edges and endpoints
    /// outside `0..n`. Edge orientation in the input does not matter.
    pub fn new(n: usize, edges: impl IntoIterator<Item = (usize, usize)>) -> Result<Self> {
        let mut list = Vec::new();
        for (u, v) in edges {
            for node in [u, v] {
                if node >= n {
                    return Err(Error::NodeOutOfRange { node, n });
                }
            }
            if u == v {
                return Err(Error::SelfLoop(u));
            }
            list.push((u.min(v), u.max(v)));
        }
        list.sort_unstable();
        if let Some(w) = list.windows(2).find(|w| w[0] == w[1]) {
            return Err(Error::DuplicateEdge(w[0].0, w[0].1));
        }
        let mut adj = vec![Vec::new(); n];
        for &(u, v) in &list {
            adj[u].push(v);
            adj[v].push(u);
        }
        for a in &mut adj {
            a.sort_unstable();
        }
        Ok(SimpleGraph { n, edges: list, adj })
    }

    pub fn empty(n: usize) -> Self {
        SimpleGraph { n, edges: Vec::new(), adj: vec![Vec::new(); n] }
    }

    pub fn complete(n: usize) -> Self {
        let edges = (0..n).flat_map(|u| (u + 1..n).map(move |v| (u, v)));
        SimpleGraph::new(n, edges).expect("complete graph is simple")
    }

    pub fn node_count(&self) -> usize {
        self.n
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    /// Sorted edges, each with the smaller endpoint first.
    pub fn edges(&self) -> &[(usize, usize)] {
        &self.edges
    }

    pub fn neighbors(&self, u: usize) -> &[usize] {
        &self.adj[u]
    }

    pub fn degree(&self, u: usize) -> usize {
        self.adj[u].len()
    }

    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        u < self.n && v < self.n && self.adj[u].binary_search(&v).is_ok()
    }

    pub fn degree_sequence(&self) -> DegreeSequence {
        DegreeSequence(self.adj.iter().map(Vec::len).collect())
    }

    /// Relabels node `i` as `perm[i]`.
    pub fn permuted(&self, perm: &[usize]) -> Result<Self> {
        if perm.len() != self.n {
            return Err(Error::InvalidParameter(format!(
                "permutation of length {} for {} nodes",
                perm.len(),
                self.n
            )));
        }
        SimpleGraph::new(self.n, self.edges.iter().map(|&(u, v)| (perm[u], perm[v])))
    }

    /// Dense 0/1 adjacency matrix. Only meant for I/O on small graphs.
    pub fn adjacency_matrix(&self) -> Vec<Vec<u8>> {
        let mut m = vec![vec![0u8; self.n]; self.n];
        for &(u, v) in &self.edges {
            m[u][v] = 1;
            m[v][u] = 1;
        }
        m
    }
}

/// Directed simple graph: no self-loops, no parallel arcs.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct DiGraph {
    n: usize,
    arcs: Vec<(usize, usize)>,
    out_deg: Vec<usize>,
    in_deg: Vec<usize>,
}

impl DiGraph {
    pub fn new(n: usize, arcs: impl IntoIterator<Item = (usize, usize)>) -> Result<Self> {
        let mut list = Vec::new();
        for (u, v) in arcs {
            for node in [u, v] {
                if node >= n {
                    return Err(Error::NodeOutOfRange { node, n });
                }
            }
            if u == v {
                return Err(Error::SelfLoop(u));
            }
            list.push((u, v));
        }
        list.sort_unstable();
        if let Some(w) = list.windows(2).find(|w| w[0] == w[1]) {
            return Err(Error::DuplicateEdge(w[0].0, w[0].1));
        }
        let mut out_deg = vec![0; n];
        let mut in_deg = vec![0; n];
        for &(u, v) in &list {
            out_deg[u] += 1;
            in_deg[v] += 1;
        }
        Ok(DiGraph { n, arcs: list, out_deg, in_deg })
    }

    pub fn node_count(&self) -> usize {
        self.n
    }

    pub fn arc_count(&self) -> usize {
        self.arcs.len()
    }

    pub fn arcs(&self) -> &[(usize, usize)] {
        &self.arcs
    }

    pub fn has_arc(&self, u: usize, v: usize) -> bool {
        self.arcs.binary_search(&(u, v)).is_ok()
    }

    pub fn out_degree(&self, u: usize) -> usize {
        self.out_deg[u]
    }

    pub fn in_degree(&self, u: usize) -> usize {
        self.in_deg[u]
    }

    pub fn degree(&self, u: usize, sign: Sign) -> usize {
        match sign {
            Sign::Out => self.out_deg[u],
            Sign::In => self.in_deg[u],
        }
    }

    pub fn degree_sequence(&self) -> DirectedDegreeSequence {
        DirectedDegreeSequence(self.out_deg.iter().copied().zip(self.in_deg.iter().copied()).collect())
    }

    /// The digraph with every arc reversed.
    pub fn reversed(&self) -> Self {
        DiGraph::new(self.n, self.arcs.iter().map(|&(u, v)| (v, u))).expect("reversal keeps simplicity")
    }
}

/// Degree sequence of an undirected graph.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Default)]
pub struct DegreeSequence(pub Vec<usize>);

impl DegreeSequence {
    pub fn new(d: Vec<usize>) -> Self {
        DegreeSequence(d)
    }

    /// Accepts signed input and rejects negative entries.
    pub fn from_signed(d: &[i64]) -> Result<Self> {
        d.iter()
            .enumerate()
            .map(|(index, &value)| {
                usize::try_from(value).map_err(|_| Error::NegativeDegree { index, value })
            })
            .collect::<Result<Vec<_>>>()
            .map(DegreeSequence)
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn sum(&self) -> usize {
        self.0.iter().sum()
    }

    pub fn as_slice(&self) -> &[usize] {
        &self.0
    }
}

impl From<Vec<usize>> for DegreeSequence {
    fn from(d: Vec<usize>) -> Self {
        DegreeSequence(d)
    }
}

impl fmt::Display for DegreeSequence {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.0.iter().map(usize::to_string).collect();
        write!(f, "({})", parts.join(","))
    }
}

/// Sequence of `(out-degree, in-degree)` pairs.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Default)]
pub struct DirectedDegreeSequence(pub Vec<(usize, usize)>);

impl DirectedDegreeSequence {
    pub fn new(pairs: Vec<(usize, usize)>) -> Self {
        DirectedDegreeSequence(pairs)
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn out_degrees(&self) -> Vec<usize> {
        self.0.iter().map(|p| p.0).collect()
    }

    pub fn in_degrees(&self) -> Vec<usize> {
        self.0.iter().map(|p| p.1).collect()
    }

    pub fn degree(&self, i: usize, sign: Sign) -> usize {
        match sign {
            Sign::Out => self.0[i].0,
            Sign::In => self.0[i].1,
        }
    }

    /// Pair sequence of the reversed digraph (in and out swapped).
    pub fn swapped(&self) -> Self {
        DirectedDegreeSequence(self.0.iter().map(|&(o, i)| (i, o)).collect())
    }

    pub fn is_balanced(&self) -> bool {
        self.out_degrees().iter().sum::<usize>() == self.in_degrees().iter().sum::<usize>()
    }
}

/// Which degree of an arc endpoint enters a directed Randić term:
/// `Out` is the `+` superscript, `In` is `-`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Sign {
    Out,
    In,
}

impl Sign {
    pub const ALL: [Sign; 2] = [Sign::Out, Sign::In];

    pub fn symbol(self) -> char {
        match self {
            Sign::Out => '+',
            Sign::In => '-',
        }
    }

    /// Parses a `(p, q)` pair written as two characters from `{+,-}`.
    pub fn parse_pair(s: &str) -> Result<(Sign, Sign)> {
        let signs: Vec<Sign> = s
            .chars()
            .map(|c| match c {
                '+' => Ok(Sign::Out),
                '-' => Ok(Sign::In),
                other => Err(Error::Parse(format!("invalid sign '{other}' in '{s}'"))),
            })
            .collect::<Result<_>>()?;
        match signs.as_slice() {
            [p, q] => Ok((*p, *q)),
            _ => Err(Error::Parse(format!("expected two signs, got '{s}'"))),
        }
    }

    pub fn flipped(self) -> Sign {
        match self {
            Sign::Out => Sign::In,
            Sign::In => Sign::Out,
        }
    }

    pub fn all_pairs() -> [(Sign, Sign); 4] {
        [(Sign::Out, Sign::Out), (Sign::Out, Sign::In), (Sign::In, Sign::Out), (Sign::In, Sign::In)]
    }
}

/// `R_alpha(G)`: sum over edges of `(d_i d_j)^alpha`, degrees taken in `G`.
pub fn randic_index(g: &SimpleGraph, alpha: f64) -> Result<f64> {
    if alpha == 0.0 {
        return Err(Error::ZeroAlpha);
    }
    if alpha == 1.0 {
        return randic_index_exact(g).map(|r| r as f64);
    }
    Ok(g.edges()
        .iter()
        .map(|&(u, v)| ((g.degree(u) * g.degree(v)) as f64).powf(alpha))
        .sum())
}

/// `R_1(G)` in exact integer arithmetic.
pub fn randic_index_exact(g: &SimpleGraph) -> Result<u64> {
    g.edges().iter().try_fold(0u64, |acc, &(u, v)| {
        let prod = (g.degree(u) as u64)
            .checked_mul(g.degree(v) as u64)
            .ok_or(Error::Overflow("degree product"))?;
        acc.checked_add(prod).ok_or(Error::Overflow("Randić sum"))
    })
}

/// `R^{pq}(G)`: sum over arcs `i -> j` of `d_i^p * d_j^q`.
pub fn directed_randic(g: &DiGraph, p: Sign, q: Sign) -> Result<u64> {
    g.arcs().iter().try_fold(0u64, |acc, &(i, j)| {
        let prod = (g.degree(i, p) as u64)
            .checked_mul(g.degree(j, q) as u64)
            .ok_or(Error::Overflow("degree product"))?;
        acc.checked_add(prod).ok_or(Error::Overflow("directed Randić sum"))
    })
}

/// Maximal connected node sets, each sorted, ordered by smallest member.
pub fn connected_components(g: &SimpleGraph) -> Vec<Vec<usize>> {
    let n = g.node_count();
    let mut seen = vec![false; n];
    let mut comps = Vec::new();
    let mut queue = VecDeque::new();
    for start in 0..n {
        if seen[start] {
            continue;
        }
        seen[start] = true;
        queue.push_back(start);
        let mut comp = Vec::new();
        while let Some(u) = queue.pop_front() {
            comp.push(u);
            for &v in g.neighbors(u) {
                if !seen[v] {
                    seen[v] = true;
                    queue.push_back(v);
                }
            }
        }
        comp.sort_unstable();
        comps.push(comp);
    }
    comps
}

/// Component id of each node, numbered as in [`connected_components`].
pub fn component_labels(g: &SimpleGraph) -> Vec<usize> {
    let mut labels = vec![0; g.node_count()];
    for (c, comp) in connected_components(g).iter().enumerate() {
        for &u in comp {
            labels[u] = c;
        }
    }
    labels
}

pub fn is_connected(g: &SimpleGraph) -> bool {
    g.node_count() >= 1 && connected_components(g).len() == 1
}

#[cfg(test)]
mod tests {
    use super::*;

    fn worked_solution() -> SimpleGraph {
        // 1-indexed edges {12,13,16,25,34,45}
        let one_based = [(1, 2), (1, 3), (1, 6), (2, 5), (3, 4), (4, 5)];
        SimpleGraph::new(6, one_based.iter().map(|&(u, v)| (u - 1, v - 1))).unwrap()
    }

    #[test]
    fn rejects_loops_duplicates_and_range() {
        assert_eq!(SimpleGraph::new(3, [(1, 1)]), Err(Error::SelfLoop(1)));
        assert_eq!(SimpleGraph::new(3, [(0, 1), (1, 0)]), Err(Error::DuplicateEdge(0, 1)));
        assert_eq!(SimpleGraph::new(3, [(0, 3)]), Err(Error::NodeOutOfRange { node: 3, n: 3 }));
        assert!(DiGraph::new(2, [(0, 1), (1, 0)]).is_ok());
        assert!(DiGraph::new(2, [(0, 1), (0, 1)]).is_err());
    }

    #[test]
    fn degree_sequences() {
        assert_eq!(SimpleGraph::complete(3).degree_sequence().0, vec![2, 2, 2]);
        assert_eq!(SimpleGraph::empty(3).degree_sequence().0, vec![0, 0, 0]);
        assert_eq!(worked_solution().degree_sequence().0, vec![3, 2, 2, 2, 2, 1]);
    }

    #[test]
    fn randic_examples() {
        assert_eq!(randic_index_exact(&worked_solution()).unwrap(), 27);
        let path = SimpleGraph::new(3, [(0, 1), (1, 2)]).unwrap();
        assert_eq!(randic_index(&path, 1.0).unwrap(), 4.0);
        assert_eq!(randic_index_exact(&SimpleGraph::complete(3)).unwrap(), 12);
        assert_eq!(randic_index(&path, 0.0), Err(Error::ZeroAlpha));
        let r = randic_index(&path, -0.5).unwrap();
        assert!((r - 2.0 / 2f64.sqrt()).abs() < 1e-12);
    }

    #[test]
    fn directed_examples() {
        let arc = DiGraph::new(2, [(0, 1)]).unwrap();
        assert_eq!(directed_randic(&arc, Sign::Out, Sign::In).unwrap(), 1);
        assert_eq!(directed_randic(&arc, Sign::Out, Sign::Out).unwrap(), 0);
        let cycle = DiGraph::new(3, [(0, 1), (1, 2), (2, 0)]).unwrap();
        for (p, q) in Sign::all_pairs() {
            assert_eq!(directed_randic(&cycle, p, q).unwrap(), 3);
        }
    }

    #[test]
    fn components() {
        let g = SimpleGraph::new(4, [(0, 1), (1, 2), (0, 2)]).unwrap();
        assert_eq!(connected_components(&g), vec![vec![0, 1, 2], vec![3]]);
        assert_eq!(connected_components(&worked_solution()).len(), 1);
        let two = SimpleGraph::new(4, [(0, 1), (2, 3)]).unwrap();
        assert_eq!(connected_components(&two), vec![vec![0, 1], vec![2, 3]]);
        assert!(!is_connected(&two));
        assert!(is_connected(&SimpleGraph::complete(4)));
        assert!(is_connected(&SimpleGraph::empty(1)));
        assert!(!is_connected(&SimpleGraph::empty(0)));
    }

    #[test]
    fn sign_parsing() {
        assert_eq!(Sign::parse_pair("+-").unwrap(), (Sign::Out, Sign::In));
        assert!(Sign::parse_pair("+").is_err());
        assert!(Sign::parse_pair("+x").is_err());
    }

    #[test]
    fn negative_degrees_rejected() {
        assert_eq!(
            DegreeSequence::from_signed(&[1, -2]),
            Err(Error::NegativeDegree { index: 1, value: -2 })
        );
    }
}
