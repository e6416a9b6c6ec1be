//! Two-switch repair of disconnected realizations, and percent differences.

use rand::Rng;

use crate::error::{Error, Result};
use crate::graph::{connected_components, randic_index_exact, SimpleGraph};
use crate::graphic::{apply_two_switch, has_connected_realization, TwoSwitch};

#[derive(Debug, Clone, PartialEq)]
pub struct ConnectReport {
    pub graph: SimpleGraph,
    pub switches: Vec<TwoSwitch>,
    pub r_before: u64,
    pub r_after: u64,
}

impl ConnectReport {
    pub fn switch_count(&self) -> usize {
        self.switches.len()
    }

    /// `switches=k R_before=x R_after=y pct=z`
    pub fn summary_line(&self) -> String {
        let pct = if self.r_before > 0 {
            format!("{:.2}", percent_difference(self.r_after as f64, self.r_before as f64).unwrap_or(0.0))
        } else {
            "nan".into()
        };
        format!(
            "switches={} R_before={} R_after={} pct={}",
            self.switches.len(),
            self.r_before,
            self.r_after,
            pct
        )
    }
}

/// Joins the components of `g` one pair at a time with cross-component
/// two-switches until the graph is connected.
///
/// Each switch removes one random edge from each of two components and
/// reconnects the four endpoints across them. At least one removed edge is
/// a non-bridge of its component, so both components stay in one piece and
/// each switch merges exactly two components. The pair chosen is the two
/// smallest components that include a cyclic one; since `|E| ≥ n − 1`, a
/// cyclic component exists whenever more than one component remains.
/// Of the two reconnections `(a,d),(c,b)` and `(a,c),(b,d)` the one with
/// the smaller degree-product sum is used, the first on ties.
pub fn connect_by_two_switches<R: Rng>(g: &SimpleGraph, rng: &mut R) -> Result<ConnectReport> {
    let d = g.degree_sequence();
    if !has_connected_realization(&d) {
        return Err(Error::Precondition(format!("degree sequence {d} has no connected realization")));
    }
    let r_before = randic_index_exact(g)?;
    let mut current = g.clone();
    let mut switches = Vec::new();
    loop {
        let comps = connected_components(&current);
        if comps.len() <= 1 {
            break;
        }
        if let Some(c) = comps.iter().find(|c| c.len() == 1) {
            return Err(Error::Precondition(format!("component {{{}}} has no edges", c[0])));
        }
        let (first, second) = pick_components(&current, &comps)?;
        let s = cross_switch(&current, &comps[first], &comps[second], rng)?;
        let next = apply_two_switch(&current, &s)?;
        debug_assert_eq!(connected_components(&next).len(), comps.len() - 1);
        switches.push(s);
        current = next;
    }
    let r_after = randic_index_exact(&current)?;
    Ok(ConnectReport { graph: current, switches, r_before, r_after })
}

/// Indices of the two components to merge; the first one is cyclic.
fn pick_components(g: &SimpleGraph, comps: &[Vec<usize>]) -> Result<(usize, usize)> {
    let mut order: Vec<usize> = (0..comps.len()).collect();
    order.sort_by_key(|&c| (comps[c].len(), comps[c][0]));
    let cyclic = |c: usize| component_edges(g, &comps[c]) >= comps[c].len();
    let (a, b) = (order[0], order[1]);
    if cyclic(a) {
        return Ok((a, b));
    }
    if cyclic(b) {
        return Ok((b, a));
    }
    let c = order
        .iter()
        .copied()
        .find(|&c| cyclic(c))
        .ok_or_else(|| Error::Precondition("every component is a tree; no degree-preserving join exists".into()))?;
    Ok((c, a))
}

fn component_edges(g: &SimpleGraph, comp: &[usize]) -> usize {
    comp.iter().map(|&u| g.degree(u)).sum::<usize>() / 2
}

fn cross_switch<R: Rng>(g: &SimpleGraph, cyclic: &[usize], other: &[usize], rng: &mut R) -> Result<TwoSwitch> {
    let bridges = bridges(g);
    let inner: Vec<(usize, usize)> = edges_within(g, cyclic).into_iter().filter(|e| !bridges.contains(e)).collect();
    let outer = edges_within(g, other);
    if inner.is_empty() || outer.is_empty() {
        return Err(Error::Precondition("component without a usable edge".into()));
    }
    let (a, b) = inner[rng.random_range(0..inner.len())];
    let (c, d) = outer[rng.random_range(0..outer.len())];
    let deg = |x: usize| g.degree(x) as u64;
    // (a,d),(c,b) versus (a,c),(b,d)
    let first = deg(a) * deg(d) + deg(c) * deg(b);
    let second = deg(a) * deg(c) + deg(b) * deg(d);
    Ok(if second < first { TwoSwitch::new(a, b, d, c) } else { TwoSwitch::new(a, b, c, d) })
}

fn edges_within(g: &SimpleGraph, comp: &[usize]) -> Vec<(usize, usize)> {
    let mut out: Vec<(usize, usize)> = comp
        .iter()
        .flat_map(|&u| g.neighbors(u).iter().filter(move |&&v| u < v).map(move |&v| (u, v)))
        .collect();
    out.sort_unstable();
    out
}

/// Bridges of `g` as sorted `(u, v)` pairs with `u < v`, by iterative lowlink DFS.
pub fn bridges(g: &SimpleGraph) -> std::collections::BTreeSet<(usize, usize)> {
    let n = g.node_count();
    let mut disc = vec![usize::MAX; n];
    let mut low = vec![0usize; n];
    let mut out = std::collections::BTreeSet::new();
    let mut time = 0;
    for root in 0..n {
        if disc[root] != usize::MAX {
            continue;
        }
        // (node, parent, next neighbor index)
        let mut stack = vec![(root, usize::MAX, 0usize)];
        disc[root] = time;
        low[root] = time;
        time += 1;
        while let Some(&mut (u, parent, ref mut idx)) = stack.last_mut() {
            if *idx < g.degree(u) {
                let v = g.neighbors(u)[*idx];
                *idx += 1;
                if v == parent {
                    continue;
                }
                if disc[v] == usize::MAX {
                    disc[v] = time;
                    low[v] = time;
                    time += 1;
                    stack.push((v, u, 0));
                } else {
                    low[u] = low[u].min(disc[v]);
                }
            } else {
                stack.pop();
                if parent != usize::MAX {
                    low[parent] = low[parent].min(low[u]);
                    if low[u] > disc[parent] {
                        out.insert((parent.min(u), parent.max(u)));
                    }
                }
            }
        }
    }
    out
}

/// `100 · (value − reference) / reference`.
pub fn percent_difference(value: f64, reference: f64) -> Result<f64> {
    if reference.is_nan() || reference <= 0.0 {
        return Err(Error::Precondition(format!("reference must be positive, got {reference}")));
    }
    Ok(100.0 * (value - reference) / reference)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::is_connected;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn disjoint_cycles(count: usize, len: usize) -> SimpleGraph {
        let edges = (0..count).flat_map(|c| (0..len).map(move |i| (c * len + i, c * len + (i + 1) % len)));
        SimpleGraph::new(count * len, edges).unwrap()
    }

    #[test]
    fn two_triangles() {
        let g = disjoint_cycles(2, 3);
        let rep = connect_by_two_switches(&g, &mut ChaCha8Rng::seed_from_u64(0)).unwrap();
        assert!(is_connected(&rep.graph));
        assert_eq!(rep.switch_count(), 1);
        assert_eq!(rep.graph.degree_sequence().0, vec![2; 6]);
        assert_eq!(rep.r_before, 24);
        assert_eq!(rep.r_after, 24);
    }

    #[test]
    fn already_connected_is_untouched() {
        let g = SimpleGraph::complete(4);
        let rep = connect_by_two_switches(&g, &mut ChaCha8Rng::seed_from_u64(0)).unwrap();
        assert_eq!(rep.graph, g);
        assert_eq!(rep.switch_count(), 0);
    }

    #[test]
    fn three_four_cycles() {
        let g = disjoint_cycles(3, 4);
        let rep = connect_by_two_switches(&g, &mut ChaCha8Rng::seed_from_u64(11)).unwrap();
        assert!(is_connected(&rep.graph));
        assert_eq!(rep.switch_count(), 2);
        assert_eq!(rep.graph.degree_sequence().0, vec![2; 12]);
        let mut h = g.clone();
        let mut comps = connected_components(&h).len();
        for s in &rep.switches {
            h = apply_two_switch(&h, s).unwrap();
            let now = connected_components(&h).len();
            assert_eq!(now, comps - 1);
            comps = now;
        }
        assert_eq!(h, rep.graph);
    }

    #[test]
    fn tree_plus_cycle() {
        // a path (all bridges) next to a 4-cycle: the cycle must supply the non-bridge edge
        let g = SimpleGraph::new(7, [(0, 1), (1, 2), (3, 4), (4, 5), (5, 6), (6, 3)]).unwrap();
        for seed in 0..20 {
            let rep = connect_by_two_switches(&g, &mut ChaCha8Rng::seed_from_u64(seed)).unwrap();
            assert!(is_connected(&rep.graph));
            assert_eq!(rep.switch_count(), 1);
            assert_eq!(rep.graph.degree_sequence(), g.degree_sequence());
        }
    }

    #[test]
    fn preconditions() {
        let mut rng = ChaCha8Rng::seed_from_u64(0);
        let two_edges = SimpleGraph::new(4, [(0, 1), (2, 3)]).unwrap();
        assert!(matches!(connect_by_two_switches(&two_edges, &mut rng), Err(Error::Precondition(_))));
        let with_isolated = SimpleGraph::new(4, [(0, 1), (1, 2), (2, 0)]).unwrap();
        assert!(matches!(connect_by_two_switches(&with_isolated, &mut rng), Err(Error::Precondition(_))));
    }

    #[test]
    fn bridge_detection() {
        let g = SimpleGraph::new(6, [(0, 1), (1, 2), (2, 0), (2, 3), (3, 4), (4, 5), (5, 3)]).unwrap();
        assert_eq!(bridges(&g).into_iter().collect::<Vec<_>>(), vec![(2, 3)]);
        let path = SimpleGraph::new(3, [(0, 1), (1, 2)]).unwrap();
        assert_eq!(bridges(&path).len(), 2);
    }

    #[test]
    fn percent_examples() {
        assert_eq!(percent_difference(27.0, 27.0).unwrap(), 0.0);
        let p = percent_difference(33.0, 27.0).unwrap();
        assert_eq!(format!("{p:.2}"), "22.22");
        assert!(percent_difference(1.0, 0.0).is_err());
        assert!(percent_difference(1.0, -1.0).is_err());
    }

    #[test]
    fn summary_line_format() {
        let rep = ConnectReport { graph: SimpleGraph::empty(0), switches: vec![], r_before: 27, r_after: 33 };
        assert_eq!(rep.summary_line(), "switches=0 R_before=27 R_after=33 pct=22.22");
    }
}
