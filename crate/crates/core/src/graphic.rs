//! Graphic-sequence tests, Havel-Hakimi realization and two-switches.

use rand::Rng;

use crate::error::{Error, Result};
use crate::graph::{DegreeSequence, SimpleGraph};

/// How Havel-Hakimi chooses the node to lay off next.
pub enum HavelHakimiMode<'a, R: Rng> {
    /// Largest residual degree first, lowest index on ties.
    MaxDegreeFirst,
    /// Uniformly random node among those with positive residual degree.
    RandomIndex(&'a mut R),
}

/// Deterministic Havel-Hakimi. `None` means `d` is not graphic.
pub fn havel_hakimi(d: &DegreeSequence) -> Option<SimpleGraph> {
    havel_hakimi_with::<rand::rngs::ThreadRng>(d, HavelHakimiMode::MaxDegreeFirst)
}

/// Havel-Hakimi with a seeded random choice of the node laid off at each step.
pub fn havel_hakimi_random<R: Rng>(d: &DegreeSequence, rng: &mut R) -> Option<SimpleGraph> {
    havel_hakimi_with(d, HavelHakimiMode::RandomIndex(rng))
}

pub fn havel_hakimi_with<R: Rng>(d: &DegreeSequence, mut mode: HavelHakimiMode<'_, R>) -> Option<SimpleGraph> {
    let n = d.len();
    if d.sum() % 2 == 1 {
        return None;
    }
    let mut residual = d.0.clone();
    let mut edges = Vec::with_capacity(d.sum() / 2);
    // Connecting any node to the highest-residual others preserves graphicity,
    // so the choice of `i` only affects which realization comes out.
    loop {
        let active: Vec<usize> = (0..n).filter(|&i| residual[i] > 0).collect();
        if active.is_empty() {
            break;
        }
        let i = match &mut mode {
            HavelHakimiMode::MaxDegreeFirst => *active
                .iter()
                .max_by(|&&a, &&b| residual[a].cmp(&residual[b]).then(b.cmp(&a)))
                .expect("non-empty"),
            HavelHakimiMode::RandomIndex(rng) => active[rng.random_range(0..active.len())],
        };
        let k = residual[i];
        let mut others: Vec<usize> = active.into_iter().filter(|&j| j != i).collect();
        if others.len() < k {
            return None;
        }
        others.sort_by(|&a, &b| residual[b].cmp(&residual[a]).then(a.cmp(&b)));
        for &j in &others[..k] {
            residual[j] -= 1;
            edges.push((i, j));
        }
        residual[i] = 0;
    }
    Some(SimpleGraph::new(n, edges).expect("Havel-Hakimi never repeats an edge"))
}

/// Erdős–Gallai: with `d` sorted non-increasingly, for every `k`,
/// `sum_{i<=k} d_i <= k(k-1) + sum_{i>k} min(d_i, k)`, and the total is even.
pub fn erdos_gallai(d: &DegreeSequence) -> bool {
    let mut s = d.0.clone();
    s.sort_unstable_by(|a, b| b.cmp(a));
    if s.iter().sum::<usize>() % 2 == 1 {
        return false;
    }
    let n = s.len();
    let mut prefix = 0usize;
    for k in 1..=n {
        prefix += s[k - 1];
        let tail: usize = s[k..].iter().map(|&x| x.min(k)).sum();
        if prefix > k * (k - 1) + tail {
            return false;
        }
    }
    true
}

pub fn is_graphic(d: &DegreeSequence) -> bool {
    let graphic = havel_hakimi(d).is_some();
    debug_assert_eq!(graphic, erdos_gallai(d), "Havel-Hakimi and Erdős–Gallai disagree on {d}");
    graphic
}

/// Whether some *connected* simple graph realizes `d`: every entry positive,
/// even sum of at least `2(n-1)`, and graphic. A single node needs `d = (0)`.
pub fn has_connected_realization(d: &DegreeSequence) -> bool {
    let n = d.len();
    match n {
        0 => false,
        1 => d.0[0] == 0,
        _ => d.0.iter().all(|&x| x >= 1) && d.sum() >= 2 * (n - 1) && is_graphic(d),
    }
}

/// Replace edges `(a,b), (c,d)` by `(a,d), (c,b)`.
///
/// The alternative pairing `(a,c), (b,d)` is the switch `TwoSwitch::new(a, b, d, c)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct TwoSwitch {
    pub a: usize,
    pub b: usize,
    pub c: usize,
    pub d: usize,
}

impl TwoSwitch {
    pub fn new(a: usize, b: usize, c: usize, d: usize) -> Self {
        TwoSwitch { a, b, c, d }
    }

    pub fn removed(&self) -> [(usize, usize); 2] {
        [(self.a, self.b), (self.c, self.d)]
    }

    pub fn added(&self) -> [(usize, usize); 2] {
        [(self.a, self.d), (self.c, self.b)]
    }

    /// The switch that undoes this one.
    pub fn inverse(&self) -> Self {
        TwoSwitch { a: self.a, b: self.d, c: self.c, d: self.b }
    }

    pub fn validate(&self, g: &SimpleGraph) -> Result<()> {
        let nodes = [self.a, self.b, self.c, self.d];
        if let Some(&node) = nodes.iter().find(|&&x| x >= g.node_count()) {
            return Err(Error::NodeOutOfRange { node, n: g.node_count() });
        }
        for i in 0..4 {
            for j in i + 1..4 {
                if nodes[i] == nodes[j] {
                    return Err(Error::InvalidSwitch(format!("node {} repeated in {:?}", nodes[i], nodes)));
                }
            }
        }
        for (u, v) in self.removed() {
            if !g.has_edge(u, v) {
                return Err(Error::InvalidSwitch(format!("edge ({u},{v}) to remove is absent")));
            }
        }
        for (u, v) in self.added() {
            if g.has_edge(u, v) {
                return Err(Error::InvalidSwitch(format!("edge ({u},{v}) to add is already present")));
            }
        }
        Ok(())
    }
}

pub fn apply_two_switch(g: &SimpleGraph, s: &TwoSwitch) -> Result<SimpleGraph> {
    s.validate(g)?;
    let removed = s.removed().map(|(u, v)| (u.min(v), u.max(v)));
    let kept = g.edges().iter().copied().filter(|e| !removed.contains(e));
    SimpleGraph::new(g.node_count(), kept.chain(s.added()))
}

/// Applies a uniformly random valid two-switch.
///
/// Proposals pick two distinct edges and an orientation for each; after
/// `4·|E|` rejected proposals (or with fewer than two edges) `g` is returned
/// unchanged.
pub fn random_two_switch<R: Rng>(g: &SimpleGraph, rng: &mut R) -> SimpleGraph {
    match propose_two_switch(g, rng) {
        Some(s) => apply_two_switch(g, &s).expect("proposal was validated"),
        None => g.clone(),
    }
}

/// The switch [`random_two_switch`] would apply, if any.
pub fn propose_two_switch<R: Rng>(g: &SimpleGraph, rng: &mut R) -> Option<TwoSwitch> {
    let m = g.edge_count();
    if m < 2 {
        return None;
    }
    for _ in 0..4 * m {
        let i = rng.random_range(0..m);
        let mut j = rng.random_range(0..m - 1);
        if j >= i {
            j += 1;
        }
        let (mut a, mut b) = g.edges()[i];
        let (mut c, mut d) = g.edges()[j];
        if rng.random::<bool>() {
            std::mem::swap(&mut a, &mut b);
        }
        if rng.random::<bool>() {
            std::mem::swap(&mut c, &mut d);
        }
        let s = TwoSwitch::new(a, b, c, d);
        if s.validate(g).is_ok() {
            return Some(s);
        }
    }
    None
}
