//! Exact minimum-weight perfect b-matching.
//!
//! General hosts are reduced to perfect 1-matching: node `v` becomes `b_v`
//! clones, and host edge `(u, v)` becomes two gadget nodes `x_u - x_v`
//! joined to every clone of `u` and `v` respectively. Either `x_u` and `x_v`
//! match each other (edge unused) or each matches a clone (edge used), so
//! perfect matchings of the gadget graph correspond one-to-one (up to clone
//! symmetry) with perfect b-matchings of the host. The edge weight sits on
//! the clone-to-`x_u` edges.
//!
//! Bipartite hosts go through min-cost flow instead.

pub mod blossom;
pub mod flow;

use crate::error::{Error, Result};
use crate::graph::SimpleGraph;

use self::flow::FlowNetwork;

/// Default cap on `Σb + 2|E|`, the node count of the gadget graph.
pub const DEFAULT_CLONE_BUDGET: usize = 200_000;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Objective {
    Min,
    Max,
}

impl Objective {
    pub fn as_str(self) -> &'static str {
        match self {
            Objective::Min => "min",
            Objective::Max => "max",
        }
    }
}

#[derive(Debug, Clone, Copy)]
pub struct SolverOptions {
    pub clone_budget: usize,
}

impl Default for SolverOptions {
    fn default() -> Self {
        SolverOptions { clone_budget: DEFAULT_CLONE_BUDGET }
    }
}

/// Host graph, integer edge weights (aligned with `host.edges()`) and degree targets.
#[derive(Debug, Clone, PartialEq)]
pub struct MatchingInstance {
    host: SimpleGraph,
    weights: Vec<i64>,
    b: Vec<usize>,
}

impl MatchingInstance {
    /// `weights[k]` belongs to `host.edges()[k]`. Every `b_i` must be positive.
    pub fn new(host: SimpleGraph, weights: Vec<i64>, b: Vec<usize>) -> Result<Self> {
        if weights.len() != host.edge_count() {
            return Err(Error::MalformedInstance(format!(
                "{} weights for {} host edges",
                weights.len(),
                host.edge_count()
            )));
        }
        if b.len() != host.node_count() {
            return Err(Error::MalformedInstance(format!(
                "b has length {}, host has {} nodes",
                b.len(),
                host.node_count()
            )));
        }
        if let Some(i) = b.iter().position(|&x| x == 0) {
            return Err(Error::MalformedInstance(format!("b_{i} must be positive")));
        }
        Ok(MatchingInstance { host, weights, b })
    }

    /// Builds the host from `(u, v, w)` triples in any order.
    pub fn from_weighted_edges(n: usize, edges: &[(usize, usize, i64)], b: Vec<usize>) -> Result<Self> {
        let host = SimpleGraph::new(n, edges.iter().map(|&(u, v, _)| (u, v)))?;
        let mut weights = vec![0; host.edge_count()];
        for &(u, v, w) in edges {
            let k = host.edges().binary_search(&(u.min(v), u.max(v))).expect("edge in host");
            weights[k] = w;
        }
        MatchingInstance::new(host, weights, b)
    }

    /// Complete host `K_n` with weights read from the off-diagonal of `h`.
    pub fn from_matrix(h: &WeightMatrix, b: Vec<usize>) -> Result<Self> {
        let host = SimpleGraph::complete(h.size());
        let weights = host.edges().iter().map(|&(u, v)| h.get(u, v)).collect();
        MatchingInstance::new(host, weights, b)
    }

    pub fn host(&self) -> &SimpleGraph {
        &self.host
    }

    pub fn weights(&self) -> &[i64] {
        &self.weights
    }

    pub fn b(&self) -> &[usize] {
        &self.b
    }

    pub fn weight_of(&self, u: usize, v: usize) -> Option<i64> {
        let k = self.host.edges().binary_search(&(u.min(v), u.max(v))).ok()?;
        Some(self.weights[k])
    }

    pub fn gadget_size(&self) -> usize {
        self.b.iter().sum::<usize>() + 2 * self.host.edge_count()
    }
}

/// A perfect b-matching: chosen host edges (smaller endpoint first, sorted)
/// and their total weight.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Matching {
    pub edges: Vec<(usize, usize)>,
    pub weight: i64,
}

impl Matching {
    /// The subgraph `(N, M)` induced by the matching.
    pub fn to_graph(&self, n: usize) -> SimpleGraph {
        SimpleGraph::new(n, self.edges.iter().copied()).expect("matching edges come from a simple host")
    }
}

/// Minimum-weight perfect b-matching. `Ok(None)` means infeasible.
pub fn solve_min_bmatching(inst: &MatchingInstance) -> Result<Option<Matching>> {
    solve_bmatching(inst, Objective::Min, &SolverOptions::default())
}

/// Maximum-weight perfect b-matching. `Ok(None)` means infeasible.
pub fn solve_max_bmatching(inst: &MatchingInstance) -> Result<Option<Matching>> {
    solve_bmatching(inst, Objective::Max, &SolverOptions::default())
}

pub fn solve_bmatching(inst: &MatchingInstance, objective: Objective, opts: &SolverOptions) -> Result<Option<Matching>> {
    let host = &inst.host;
    let n = host.node_count();
    let total_b: usize = inst.b.iter().sum();
    if total_b % 2 == 1 || (0..n).any(|v| inst.b[v] > host.degree(v)) {
        return Ok(None);
    }
    let needed = inst.gadget_size();
    if needed > opts.clone_budget {
        return Err(Error::BudgetExceeded { needed, budget: opts.clone_budget });
    }

    let mut clone_start = Vec::with_capacity(n + 1);
    clone_start.push(0);
    for &bv in &inst.b {
        clone_start.push(clone_start.last().unwrap() + bv);
    }
    let sign = match objective {
        Objective::Min => 1,
        Objective::Max => -1,
    };
    let mut gadget_edges = Vec::with_capacity(host.edges().iter().map(|&(u, v)| inst.b[u] + inst.b[v] + 1).sum());
    for (e, (&(u, v), &w)) in host.edges().iter().zip(&inst.weights).enumerate() {
        let xu = total_b + 2 * e;
        let xv = xu + 1;
        for c in clone_start[u]..clone_start[u + 1] {
            gadget_edges.push((c, xu, sign * w));
        }
        gadget_edges.push((xu, xv, 0));
        for c in clone_start[v]..clone_start[v + 1] {
            gadget_edges.push((xv, c, 0));
        }
    }
    let chosen = blossom::min_weight_perfect_matching(needed, &gadget_edges).map_err(Error::Solver)?;
    let Some(chosen) = chosen else {
        return Ok(None);
    };
    let mut used = vec![false; host.edge_count()];
    for k in chosen {
        let (a, x, _) = gadget_edges[k];
        if a < total_b && x >= total_b && (x - total_b).is_multiple_of(2) {
            used[(x - total_b) / 2] = true;
        }
    }
    let mut edges = Vec::new();
    let mut weight = 0i64;
    for (k, &e) in host.edges().iter().enumerate() {
        if used[k] {
            edges.push(e);
            weight = weight.checked_add(inst.weights[k]).ok_or(Error::Overflow("matching weight"))?;
        }
    }
    let m = Matching { edges, weight };
    check_degrees(&m.edges, &inst.b)?;
    Ok(Some(m))
}

fn check_degrees(edges: &[(usize, usize)], b: &[usize]) -> Result<()> {
    let mut deg = vec![0usize; b.len()];
    for &(u, v) in edges {
        deg[u] += 1;
        deg[v] += 1;
    }
    if deg != b {
        return Err(Error::Solver(format!("matching degrees {deg:?} differ from b {b:?}")));
    }
    Ok(())
}

/// Host with left part `0..left` and right part `0..right`; edges go left → right.
#[derive(Debug, Clone, PartialEq)]
pub struct BipartiteInstance {
    pub left: usize,
    pub right: usize,
    pub edges: Vec<(usize, usize, i64)>,
    pub b_left: Vec<usize>,
    pub b_right: Vec<usize>,
}

impl BipartiteInstance {
    pub fn new(
        left: usize,
        right: usize,
        edges: Vec<(usize, usize, i64)>,
        b_left: Vec<usize>,
        b_right: Vec<usize>,
    ) -> Result<Self> {
        if b_left.len() != left || b_right.len() != right {
            return Err(Error::MalformedInstance("b vector length does not match part size".into()));
        }
        let mut seen = std::collections::HashSet::new();
        for &(i, j, _) in &edges {
            if i >= left || j >= right {
                return Err(Error::MalformedInstance(format!("edge ({i},{j}) outside parts")));
            }
            if !seen.insert((i, j)) {
                return Err(Error::MalformedInstance(format!("duplicate edge ({i},{j})")));
            }
        }
        Ok(BipartiteInstance { left, right, edges, b_left, b_right })
    }

    /// The same instance on a general host: left node `i` is `i`, right node `j` is `left + j`.
    pub fn to_general(&self) -> Result<MatchingInstance> {
        let edges: Vec<_> = self.edges.iter().map(|&(i, j, w)| (i, self.left + j, w)).collect();
        let b = self.b_left.iter().chain(&self.b_right).copied().collect();
        MatchingInstance::from_weighted_edges(self.left + self.right, &edges, b)
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BipartiteMatching {
    /// `(left, right)` pairs, sorted.
    pub edges: Vec<(usize, usize)>,
    pub weight: i64,
}

pub fn solve_min_bipartite_bmatching(inst: &BipartiteInstance) -> Result<Option<BipartiteMatching>> {
    solve_bipartite_bmatching(inst, Objective::Min)
}

/// Perfect b-matching on a bipartite host via min-cost flow. `Ok(None)` when
/// the part totals differ or the flow cannot saturate every target.
pub fn solve_bipartite_bmatching(inst: &BipartiteInstance, objective: Objective) -> Result<Option<BipartiteMatching>> {
    let total: usize = inst.b_left.iter().sum();
    if total != inst.b_right.iter().sum::<usize>() {
        return Ok(None);
    }
    let (l, r) = (inst.left, inst.right);
    let (s, t) = (l + r, l + r + 1);
    let mut net = FlowNetwork::new(l + r + 2);
    for (i, &bi) in inst.b_left.iter().enumerate() {
        net.add_arc(s, i, bi as i64, 0);
    }
    for (j, &bj) in inst.b_right.iter().enumerate() {
        net.add_arc(l + j, t, bj as i64, 0);
    }
    let sign = match objective {
        Objective::Min => 1,
        Objective::Max => -1,
    };
    let ids: Vec<usize> = inst.edges.iter().map(|&(i, j, w)| net.add_arc(i, l + j, 1, sign * w)).collect();
    let (flow, _) = net.min_cost_flow(s, t, total as i64);
    if flow != total as i64 {
        return Ok(None);
    }
    let mut edges = Vec::new();
    let mut weight = 0i64;
    for (&(i, j, w), &id) in inst.edges.iter().zip(&ids) {
        if net.flow_on(id) == 1 {
            edges.push((i, j));
            weight = weight.checked_add(w).ok_or(Error::Overflow("matching weight"))?;
        }
    }
    edges.sort_unstable();
    let mut dl = vec![0; l];
    let mut dr = vec![0; r];
    for &(i, j) in &edges {
        dl[i] += 1;
        dr[j] += 1;
    }
    if dl != inst.b_left || dr != inst.b_right {
        return Err(Error::Solver("bipartite matching degrees differ from targets".into()));
    }
    Ok(Some(BipartiteMatching { edges, weight }))
}

/// Square integer matrix, row-major.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct WeightMatrix {
    n: usize,
    data: Vec<i64>,
}

impl WeightMatrix {
    pub fn from_rows(rows: Vec<Vec<i64>>) -> Result<Self> {
        let n = rows.len();
        if rows.iter().any(|r| r.len() != n) {
            return Err(Error::InvalidMatrix("matrix is not square".into()));
        }
        Ok(WeightMatrix { n, data: rows.into_iter().flatten().collect() })
    }

    pub fn size(&self) -> usize {
        self.n
    }

    pub fn get(&self, i: usize, j: usize) -> i64 {
        self.data[i * self.n + j]
    }

    pub fn rows(&self) -> Vec<Vec<i64>> {
        self.data.chunks(self.n.max(1)).take(self.n).map(<[i64]>::to_vec).collect()
    }

    pub fn max_entry(&self) -> i64 {
        self.data.iter().copied().max().unwrap_or(0)
    }
}

/// `H2 = (1 + max H)·M − H`, with `M` all ones off the diagonal.
///
/// All perfect b-matchings for a fixed `b` have `Σb/2` edges, so a matching
/// is minimum under `H` exactly when it is maximum under `H2`.
pub fn max_transform(h: &WeightMatrix) -> Result<WeightMatrix> {
    let n = h.size();
    for i in 0..n {
        if h.get(i, i) != 0 {
            return Err(Error::InvalidMatrix(format!("non-zero diagonal at {i}")));
        }
        for j in 0..n {
            if h.get(i, j) < 0 {
                return Err(Error::InvalidMatrix(format!("negative entry at ({i},{j})")));
            }
            if h.get(i, j) != h.get(j, i) {
                return Err(Error::InvalidMatrix(format!("asymmetric at ({i},{j})")));
            }
        }
    }
    let top = 1 + h.max_entry();
    let data = (0..n * n)
        .map(|idx| if idx / n == idx % n { 0 } else { top - h.data[idx] })
        .collect();
    Ok(WeightMatrix { n, data })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn four_node_instance() -> MatchingInstance {
        // 1-indexed {12:3, 14:2, 32:7, 24:4, 34:1}
        let edges = [(0, 1, 3), (0, 3, 2), (2, 1, 7), (1, 3, 4), (2, 3, 1)];
        MatchingInstance::from_weighted_edges(4, &edges, vec![2, 1, 1, 2]).unwrap()
    }

    #[test]
    fn four_node_example() {
        let m = solve_min_bmatching(&four_node_instance()).unwrap().unwrap();
        assert_eq!(m.weight, 6);
        assert_eq!(m.edges, vec![(0, 1), (0, 3), (2, 3)]);
        // it is the only perfect b-matching, so it is also the maximum
        assert_eq!(solve_max_bmatching(&four_node_instance()).unwrap().unwrap(), m);
    }

    #[test]
    fn odd_triangle_infeasible() {
        let inst = MatchingInstance::new(SimpleGraph::complete(3), vec![1; 3], vec![1, 1, 1]).unwrap();
        assert_eq!(solve_min_bmatching(&inst).unwrap(), None);
    }

    #[test]
    fn b_exceeding_host_degree_is_infeasible() {
        let host = SimpleGraph::new(3, [(0, 1), (1, 2)]).unwrap();
        let inst = MatchingInstance::new(host, vec![1, 1], vec![2, 2, 2]).unwrap();
        assert_eq!(solve_min_bmatching(&inst).unwrap(), None);
    }

    #[test]
    fn malformed_instances_rejected() {
        let host = SimpleGraph::complete(3);
        assert!(matches!(MatchingInstance::new(host.clone(), vec![1; 2], vec![1; 3]), Err(Error::MalformedInstance(_))));
        assert!(matches!(MatchingInstance::new(host.clone(), vec![1; 3], vec![1; 2]), Err(Error::MalformedInstance(_))));
        assert!(matches!(MatchingInstance::new(host, vec![1; 3], vec![0, 1, 1]), Err(Error::MalformedInstance(_))));
    }

    #[test]
    fn budget_guard() {
        let inst = MatchingInstance::new(SimpleGraph::complete(6), vec![1; 15], vec![2; 6]).unwrap();
        let err = solve_bmatching(&inst, Objective::Min, &SolverOptions { clone_budget: 10 }).unwrap_err();
        assert_eq!(err, Error::BudgetExceeded { needed: 42, budget: 10 });
    }

    #[test]
    fn complete_graph_with_degree_products() {
        let d = [3i64, 2, 2, 2, 2, 1];
        let rows = (0..6).map(|i| (0..6).map(|j| if i == j { 0 } else { d[i] * d[j] }).collect()).collect();
        let h = WeightMatrix::from_rows(rows).unwrap();
        let inst = MatchingInstance::from_matrix(&h, d.iter().map(|&x| x as usize).collect()).unwrap();
        assert_eq!(solve_min_bmatching(&inst).unwrap().unwrap().weight, 27);
    }

    #[test]
    fn bipartite_examples() {
        let inst = BipartiteInstance::new(
            2,
            2,
            vec![(0, 0, 5), (0, 1, 1), (1, 0, 1), (1, 1, 5)],
            vec![1, 1],
            vec![1, 1],
        )
        .unwrap();
        let m = solve_min_bipartite_bmatching(&inst).unwrap().unwrap();
        assert_eq!(m.edges, vec![(0, 1), (1, 0)]);
        assert_eq!(m.weight, 2);
        let general = solve_min_bmatching(&inst.to_general().unwrap()).unwrap().unwrap();
        assert_eq!(general.weight, 2);

        let unbalanced = BipartiteInstance::new(
            2,
            2,
            vec![(0, 0, 1), (0, 1, 1), (1, 0, 1), (1, 1, 1)],
            vec![2, 1],
            vec![1, 1],
        )
        .unwrap();
        assert_eq!(solve_min_bipartite_bmatching(&unbalanced).unwrap(), None);

        let unsaturable = BipartiteInstance::new(2, 2, vec![(0, 0, 1), (1, 0, 1)], vec![1, 1], vec![1, 1]).unwrap();
        assert_eq!(solve_min_bipartite_bmatching(&unsaturable).unwrap(), None);
    }

    #[test]
    fn transform_examples() {
        let d = [3i64, 2, 2, 2, 2, 1];
        let rows = (0..6).map(|i| (0..6).map(|j| if i == j { 0 } else { d[i] * d[j] }).collect()).collect();
        let h2 = max_transform(&WeightMatrix::from_rows(rows).unwrap()).unwrap();
        assert_eq!(h2.get(0, 1), 1);
        assert_eq!(h2.get(0, 5), 4);
        assert_eq!(h2.get(3, 3), 0);

        let zeros = WeightMatrix::from_rows(vec![vec![0; 3]; 3]).unwrap();
        assert_eq!(
            max_transform(&zeros).unwrap().rows(),
            vec![vec![0, 1, 1], vec![1, 0, 1], vec![1, 1, 0]]
        );

        let asym = WeightMatrix::from_rows(vec![vec![0, 1], vec![2, 0]]).unwrap();
        assert!(max_transform(&asym).is_err());
        let neg = WeightMatrix::from_rows(vec![vec![0, -1], vec![-1, 0]]).unwrap();
        assert!(max_transform(&neg).is_err());
        let diag = WeightMatrix::from_rows(vec![vec![1, 0], vec![0, 0]]).unwrap();
        assert!(max_transform(&diag).is_err());
    }
}
