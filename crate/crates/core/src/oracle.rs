//! Brute-force enumeration of labeled realizations, used to certify the
//! solver on small inputs.
//!
//! Enumeration walks the upper-triangular adjacency pair by pair, deciding
//! each edge in or out, and prunes a branch as soon as a node's residual
//! degree exceeds the partners still available to it. Every labeled
//! realization is produced exactly once, lazily.

use std::collections::{HashSet, VecDeque};

use crate::bmatching::Objective;
use crate::error::{Error, Result};
use crate::graph::{
    directed_randic, is_connected, randic_index_exact, DegreeSequence, DiGraph, DirectedDegreeSequence, Sign,
    SimpleGraph,
};
use crate::graphic::{apply_two_switch, TwoSwitch};

/// Undirected inputs are accepted when `n <= 7`, or when `n <= 10` and `Σd <= 24`.
pub const MAX_NODES_ANY_SUM: usize = 7;
pub const MAX_NODES: usize = 10;
pub const MAX_DEGREE_SUM: usize = 24;
pub const MAX_DIRECTED_NODES: usize = 6;

fn check_caps(d: &DegreeSequence) -> Result<()> {
    let n = d.len();
    if n <= MAX_NODES_ANY_SUM || (n <= MAX_NODES && d.sum() <= MAX_DEGREE_SUM) {
        Ok(())
    } else {
        Err(Error::CapExceeded(format!(
            "n = {n}, sum = {}; limits are n <= {MAX_NODES_ANY_SUM}, or n <= {MAX_NODES} with sum <= {MAX_DEGREE_SUM}",
            d.sum()
        )))
    }
}

/// Lazy stream of every labeled simple graph whose degree sequence is `d`.
pub fn enumerate_realizations(d: &DegreeSequence) -> Result<Realizations> {
    check_caps(d)?;
    let n = d.len();
    let pairs = (0..n).flat_map(|i| (i + 1..n).map(move |j| (i, j))).collect();
    Ok(Realizations {
        n,
        pairs,
        residual: d.0.clone(),
        path: Vec::new(),
        descending: d.sum().is_multiple_of(2),
        exhausted: false,
    })
}

pub struct Realizations {
    n: usize,
    pairs: Vec<(usize, usize)>,
    residual: Vec<usize>,
    path: Vec<bool>,
    descending: bool,
    exhausted: bool,
}

impl Realizations {
    /// Partners after `j` still able to take an edge from `i`.
    fn available(&self, j: usize) -> usize {
        (j + 1..self.n).filter(|&x| self.residual[x] > 0).count()
    }

    fn can(&self, k: usize, include: bool) -> bool {
        let (i, j) = self.pairs[k];
        if include {
            self.residual[i] > 0 && self.residual[j] > 0 && self.residual[i] - 1 <= self.available(j)
        } else {
            self.residual[i] <= self.available(j)
        }
    }

    fn set(&mut self, k: usize, include: bool) {
        let (i, j) = self.pairs[k];
        if include {
            self.residual[i] -= 1;
            self.residual[j] -= 1;
        }
        self.path.push(include);
    }
}

impl Iterator for Realizations {
    type Item = SimpleGraph;

    fn next(&mut self) -> Option<SimpleGraph> {
        loop {
            if self.exhausted {
                return None;
            }
            if self.descending {
                let k = self.path.len();
                if k == self.pairs.len() {
                    self.descending = false;
                    if self.residual.iter().all(|&r| r == 0) {
                        let edges = self.pairs.iter().zip(&self.path).filter(|(_, &inc)| inc).map(|(&e, _)| e);
                        return Some(SimpleGraph::new(self.n, edges).expect("distinct pairs"));
                    }
                    continue;
                }
                if self.can(k, true) {
                    self.set(k, true);
                } else if self.can(k, false) {
                    self.set(k, false);
                } else {
                    self.descending = false;
                }
            } else {
                match self.path.pop() {
                    None => self.exhausted = true,
                    Some(true) => {
                        let k = self.path.len();
                        let (i, j) = self.pairs[k];
                        self.residual[i] += 1;
                        self.residual[j] += 1;
                        if self.can(k, false) {
                            self.set(k, false);
                            self.descending = true;
                        }
                    }
                    Some(false) => {}
                }
            }
        }
    }
}

/// Exact optimum of `R_1` over all (optionally only connected) realizations.
/// `Ok(None)` when no qualifying realization exists.
pub fn brute_optimum(
    d: &DegreeSequence,
    objective: Objective,
    connected_only: bool,
) -> Result<Option<(u64, SimpleGraph)>> {
    let mut best: Option<(u64, SimpleGraph)> = None;
    for g in enumerate_realizations(d)? {
        if connected_only && !is_connected(&g) {
            continue;
        }
        let r = randic_index_exact(&g)?;
        let better = match (&best, objective) {
            (None, _) => true,
            (Some((b, _)), Objective::Min) => r < *b,
            (Some((b, _)), Objective::Max) => r > *b,
        };
        if better {
            best = Some((r, g));
        }
    }
    Ok(best)
}

pub fn brute_min_randic(d: &DegreeSequence, connected_only: bool) -> Result<Option<(u64, SimpleGraph)>> {
    brute_optimum(d, Objective::Min, connected_only)
}

pub fn brute_max_randic(d: &DegreeSequence, connected_only: bool) -> Result<Option<(u64, SimpleGraph)>> {
    brute_optimum(d, Objective::Max, connected_only)
}

/// Lazy stream of every simple digraph (no loops, no parallel arcs) with
/// the given `(out, in)` pairs.
pub fn enumerate_directed_realizations(d: &DirectedDegreeSequence) -> Result<DirectedRealizations> {
    let n = d.len();
    if n > MAX_DIRECTED_NODES {
        return Err(Error::CapExceeded(format!("n = {n} exceeds {MAX_DIRECTED_NODES}")));
    }
    let pairs = (0..n).flat_map(|i| (0..n).filter(move |&j| j != i).map(move |j| (i, j))).collect();
    Ok(DirectedRealizations {
        n,
        pairs,
        out: d.out_degrees(),
        inn: d.in_degrees(),
        path: Vec::new(),
        descending: d.is_balanced(),
        exhausted: !d.is_balanced(),
    })
}

pub struct DirectedRealizations {
    n: usize,
    pairs: Vec<(usize, usize)>,
    out: Vec<usize>,
    inn: Vec<usize>,
    path: Vec<bool>,
    descending: bool,
    exhausted: bool,
}

impl DirectedRealizations {
    fn available(&self, i: usize, j: usize) -> usize {
        (j + 1..self.n).filter(|&x| x != i && self.inn[x] > 0).count()
    }

    fn can(&self, k: usize, include: bool) -> bool {
        let (i, j) = self.pairs[k];
        if include {
            self.out[i] > 0 && self.inn[j] > 0 && self.out[i] - 1 <= self.available(i, j)
        } else {
            self.out[i] <= self.available(i, j)
        }
    }

    fn set(&mut self, k: usize, include: bool) {
        let (i, j) = self.pairs[k];
        if include {
            self.out[i] -= 1;
            self.inn[j] -= 1;
        }
        self.path.push(include);
    }
}

impl Iterator for DirectedRealizations {
    type Item = DiGraph;

    fn next(&mut self) -> Option<DiGraph> {
        loop {
            if self.exhausted {
                return None;
            }
            if self.descending {
                let k = self.path.len();
                if k == self.pairs.len() {
                    self.descending = false;
                    if self.out.iter().chain(&self.inn).all(|&r| r == 0) {
                        let arcs = self.pairs.iter().zip(&self.path).filter(|(_, &inc)| inc).map(|(&e, _)| e);
                        return Some(DiGraph::new(self.n, arcs).expect("distinct pairs"));
                    }
                    continue;
                }
                if self.can(k, true) {
                    self.set(k, true);
                } else if self.can(k, false) {
                    self.set(k, false);
                } else {
                    self.descending = false;
                }
            } else {
                match self.path.pop() {
                    None => self.exhausted = true,
                    Some(true) => {
                        let k = self.path.len();
                        let (i, j) = self.pairs[k];
                        self.out[i] += 1;
                        self.inn[j] += 1;
                        if self.can(k, false) {
                            self.set(k, false);
                            self.descending = true;
                        }
                    }
                    Some(false) => {}
                }
            }
        }
    }
}

/// Exact optimum of `R^{pq}` over all simple digraphs realizing `d`.
pub fn brute_directed_optimum(
    d: &DirectedDegreeSequence,
    p: Sign,
    q: Sign,
    objective: Objective,
) -> Result<Option<(u64, DiGraph)>> {
    let mut best: Option<(u64, DiGraph)> = None;
    for g in enumerate_directed_realizations(d)? {
        let r = directed_randic(&g, p, q)?;
        let better = match (&best, objective) {
            (None, _) => true,
            (Some((b, _)), Objective::Min) => r < *b,
            (Some((b, _)), Objective::Max) => r > *b,
        };
        if better {
            best = Some((r, g));
        }
    }
    Ok(best)
}

/// Every graph one valid two-switch away from `g`.
pub fn two_switch_neighbors(g: &SimpleGraph) -> Vec<SimpleGraph> {
    let edges = g.edges();
    let mut out = Vec::new();
    for (x, &(a, b)) in edges.iter().enumerate() {
        for &(c, d) in &edges[x + 1..] {
            // the two reconnections of {a,b} and {c,d}
            for s in [TwoSwitch::new(a, b, c, d), TwoSwitch::new(a, b, d, c)] {
                if let Ok(h) = apply_two_switch(g, &s) {
                    out.push(h);
                }
            }
        }
    }
    out
}

/// Breadth-first closure of `start` under two-switches: the metagraph
/// component containing `start`.
pub fn metagraph_component(start: &SimpleGraph) -> HashSet<SimpleGraph> {
    let mut seen = HashSet::new();
    seen.insert(start.clone());
    let mut queue = VecDeque::from([start.clone()]);
    while let Some(g) = queue.pop_front() {
        for h in two_switch_neighbors(&g) {
            if seen.insert(h.clone()) {
                queue.push_back(h);
            }
        }
    }
    seen
}

/// Every sequence of length `n` with entries in `0..=max_entry`, in lexicographic order.
pub fn all_sequences(n: usize, max_entry: usize) -> impl Iterator<Item = DegreeSequence> {
    let base = max_entry + 1;
    let total = base.pow(n as u32);
    (0..total).map(move |mut code| {
        let mut d = vec![0; n];
        for slot in d.iter_mut().rev() {
            *slot = code % base;
            code /= base;
        }
        DegreeSequence(d)
    })
}

/// Non-increasing sequences of length `n` with entries in `0..=max_entry`.
pub fn sorted_sequences(n: usize, max_entry: usize) -> Vec<DegreeSequence> {
    fn rec(n: usize, cap: usize, cur: &mut Vec<usize>, out: &mut Vec<DegreeSequence>) {
        if cur.len() == n {
            out.push(DegreeSequence(cur.clone()));
            return;
        }
        for x in (0..=cap).rev() {
            cur.push(x);
            rec(n, x, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    rec(n, max_entry, &mut Vec::new(), &mut out);
    out
}
