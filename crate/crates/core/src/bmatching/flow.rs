//! Min-cost flow by successive shortest paths with Johnson potentials.

use std::cmp::Reverse;
use std::collections::BinaryHeap;

#[derive(Debug, Clone)]
struct Arc {
    to: usize,
    cap: i64,
    cost: i64,
}

/// Residual network stored as paired arcs: arc `2e` is forward, `2e + 1` its reverse.
#[derive(Debug, Clone)]
pub struct FlowNetwork {
    n: usize,
    arcs: Vec<Arc>,
    out: Vec<Vec<usize>>,
}

impl FlowNetwork {
    pub fn new(n: usize) -> Self {
        FlowNetwork { n, arcs: Vec::new(), out: vec![Vec::new(); n] }
    }

    /// Adds an arc and returns its id for [`FlowNetwork::flow_on`].
    pub fn add_arc(&mut self, from: usize, to: usize, cap: i64, cost: i64) -> usize {
        let id = self.arcs.len();
        self.arcs.push(Arc { to, cap, cost });
        self.arcs.push(Arc { to: from, cap: 0, cost: -cost });
        self.out[from].push(id);
        self.out[to].push(id + 1);
        id
    }

    pub fn flow_on(&self, id: usize) -> i64 {
        self.arcs[id + 1].cap
    }

    /// Pushes up to `limit` units from `s` to `t` at minimum cost.
    /// Returns `(flow, cost)`. Negative arc costs are allowed as long as
    /// the initial network has no negative cycle.
    pub fn min_cost_flow(&mut self, s: usize, t: usize, limit: i64) -> (i64, i64) {
        let mut potential = self.bellman_ford(s);
        let (mut flow, mut cost) = (0i64, 0i64);
        let mut dist = vec![i64::MAX; self.n];
        let mut prev = vec![usize::MAX; self.n];
        while flow < limit {
            dist.iter_mut().for_each(|d| *d = i64::MAX);
            prev.iter_mut().for_each(|p| *p = usize::MAX);
            dist[s] = 0;
            let mut heap = BinaryHeap::new();
            heap.push(Reverse((0i64, s)));
            while let Some(Reverse((d, u))) = heap.pop() {
                if d > dist[u] {
                    continue;
                }
                for &id in &self.out[u] {
                    let arc = &self.arcs[id];
                    if arc.cap <= 0 || potential[arc.to] == i64::MAX {
                        continue;
                    }
                    let nd = d + arc.cost + potential[u] - potential[arc.to];
                    if nd < dist[arc.to] {
                        dist[arc.to] = nd;
                        prev[arc.to] = id;
                        heap.push(Reverse((nd, arc.to)));
                    }
                }
            }
            if dist[t] == i64::MAX {
                break;
            }
            for v in 0..self.n {
                if dist[v] != i64::MAX && potential[v] != i64::MAX {
                    potential[v] += dist[v];
                }
            }
            let mut push = limit - flow;
            let mut v = t;
            while v != s {
                let id = prev[v];
                push = push.min(self.arcs[id].cap);
                v = self.arcs[id ^ 1].to;
            }
            let mut v = t;
            while v != s {
                let id = prev[v];
                self.arcs[id].cap -= push;
                self.arcs[id ^ 1].cap += push;
                cost += push * self.arcs[id].cost;
                v = self.arcs[id ^ 1].to;
            }
            flow += push;
        }
        (flow, cost)
    }

    /// Shortest distances from `s` over arcs with capacity; `i64::MAX` if unreachable.
    fn bellman_ford(&self, s: usize) -> Vec<i64> {
        let mut dist = vec![i64::MAX; self.n];
        dist[s] = 0;
        for _ in 0..self.n {
            let mut changed = false;
            for u in 0..self.n {
                if dist[u] == i64::MAX {
                    continue;
                }
                for &id in &self.out[u] {
                    let arc = &self.arcs[id];
                    if arc.cap > 0 && dist[u] + arc.cost < dist[arc.to] {
                        dist[arc.to] = dist[u] + arc.cost;
                        changed = true;
                    }
                }
            }
            if !changed {
                break;
            }
        }
        dist
    }
}
