//! Maximum-weight maximum-cardinality matching on general graphs
//! (Edmonds' primal-dual blossom method, O(n³)), and the minimum-weight
//! perfect matching built on top of it.
//!
//! The layout follows the classic array-based formulation: vertices are
//! `0..n`, non-trivial blossoms take ids `n..2n`, and every edge `k`
//! contributes two endpoints `2k` and `2k + 1`. Vertex duals are stored
//! doubled so that all arithmetic stays integral for integer weights.
//!
//! After solving, the dual solution is checked against the primal one
//! (dual feasibility, tight matched edges, full positive-dual blossoms).
//! A failed check is reported as a solver error rather than a wrong answer.

const NONE: usize = usize::MAX;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum Label {
    Free,
    S,
    T,
}

#[derive(Clone, Copy, PartialEq, Eq)]
enum Delta {
    VertexDual,
    Edge(usize),
    SBlossomEdge(usize),
    Expand(usize),
}

struct Solver<'a> {
    n: usize,
    edges: &'a [(usize, usize, i64)],
    endpoint: Vec<usize>,
    neighbend: Vec<Vec<usize>>,
    mate: Vec<usize>,
    label: Vec<Label>,
    // scan marker used by `scan_blossom`
    marked: Vec<bool>,
    labelend: Vec<usize>,
    inblossom: Vec<usize>,
    blossomparent: Vec<usize>,
    blossomchilds: Vec<Vec<usize>>,
    blossombase: Vec<usize>,
    blossomendps: Vec<Vec<usize>>,
    bestedge: Vec<usize>,
    blossombestedges: Vec<Option<Vec<usize>>>,
    unusedblossoms: Vec<usize>,
    dualvar: Vec<i64>,
    allowedge: Vec<bool>,
    queue: Vec<usize>,
}

/// Result of [`max_weight_matching`]: `mate[v]` is the partner of `v`.
#[derive(Debug, Clone)]
pub struct GeneralMatching {
    pub mate: Vec<Option<usize>>,
    /// Doubled vertex duals followed by blossom duals, as left by the solver.
    pub vertex_duals: Vec<i64>,
}

/// Maximum-weight matching among maximum-cardinality matchings.
///
/// `edges` holds `(u, v, w)` with `u != v`, both `< n`, at most one edge
/// per pair. Returns `Err` with a diagnostic if the internal optimality
/// certificate fails.
pub fn max_weight_matching(n: usize, edges: &[(usize, usize, i64)]) -> Result<GeneralMatching, String> {
    if edges.is_empty() {
        return Ok(GeneralMatching { mate: vec![None; n], vertex_duals: vec![0; n] });
    }
    let mut s = Solver::new(n, edges);
    s.run();
    s.certify()?;
    let mate = s
        .mate
        .iter()
        .map(|&p| if p == NONE { None } else { Some(s.endpoint[p]) })
        .collect();
    Ok(GeneralMatching { mate, vertex_duals: s.dualvar[..n].to_vec() })
}

/// Minimum-weight perfect matching. `Ok(None)` when no perfect matching exists;
/// otherwise the indices of the chosen edges, sorted.
pub fn min_weight_perfect_matching(n: usize, edges: &[(usize, usize, i64)]) -> Result<Option<Vec<usize>>, String> {
    if n % 2 == 1 {
        return Ok(None);
    }
    if n == 0 {
        return Ok(Some(Vec::new()));
    }
    // Every perfect matching has n/2 edges, so maximizing (top - w) over
    // maximum-cardinality matchings minimizes w.
    let top = edges.iter().map(|e| e.2).max().unwrap_or(0).saturating_add(1);
    let flipped: Vec<(usize, usize, i64)> = edges
        .iter()
        .map(|&(u, v, w)| top.checked_sub(w).map(|x| (u, v, x)).ok_or_else(|| "weight range overflow".to_string()))
        .collect::<Result<_, _>>()?;
    let m = max_weight_matching(n, &flipped)?;
    if m.mate.iter().any(Option::is_none) {
        return Ok(None);
    }
    let mut chosen: Vec<usize> = edges
        .iter()
        .enumerate()
        .filter(|(_, &(u, v, _))| m.mate[u] == Some(v))
        .map(|(k, _)| k)
        .collect();
    chosen.sort_unstable();
    if chosen.len() * 2 != n {
        return Err("matched edge count inconsistent with mate array".into());
    }
    Ok(Some(chosen))
}

impl<'a> Solver<'a> {
    fn new(n: usize, edges: &'a [(usize, usize, i64)]) -> Self {
        let nedge = edges.len();
        let maxweight = edges.iter().map(|e| e.2).max().unwrap_or(0).max(0);
        let mut endpoint = Vec::with_capacity(2 * nedge);
        let mut neighbend = vec![Vec::new(); n];
        for (k, &(i, j, _)) in edges.iter().enumerate() {
            endpoint.push(i);
            endpoint.push(j);
            neighbend[i].push(2 * k + 1);
            neighbend[j].push(2 * k);
        }
        let mut blossombase: Vec<usize> = (0..n).collect();
        blossombase.extend(std::iter::repeat_n(NONE, n));
        let mut dualvar = vec![maxweight; n];
        dualvar.extend(std::iter::repeat_n(0, n));
        Solver {
            n,
            edges,
            endpoint,
            neighbend,
            mate: vec![NONE; n],
            label: vec![Label::Free; 2 * n],
            marked: vec![false; 2 * n],
            labelend: vec![NONE; 2 * n],
            inblossom: (0..n).collect(),
            blossomparent: vec![NONE; 2 * n],
            blossomchilds: vec![Vec::new(); 2 * n],
            blossombase,
            blossomendps: vec![Vec::new(); 2 * n],
            bestedge: vec![NONE; 2 * n],
            blossombestedges: vec![None; 2 * n],
            unusedblossoms: (n..2 * n).rev().collect(),
            dualvar,
            allowedge: vec![false; nedge],
            queue: Vec::new(),
        }
    }

    fn slack(&self, k: usize) -> i64 {
        let (i, j, w) = self.edges[k];
        self.dualvar[i] + self.dualvar[j] - 2 * w
    }

    fn leaves(&self, b: usize) -> Vec<usize> {
        if b < self.n {
            return vec![b];
        }
        let mut out = Vec::new();
        let mut stack = vec![b];
        while let Some(t) = stack.pop() {
            if t < self.n {
                out.push(t);
            } else {
                stack.extend(self.blossomchilds[t].iter().rev().copied());
            }
        }
        out
    }

    fn assign_label(&mut self, w: usize, t: Label, p: usize) {
        // iterative: a T label immediately propagates an S label to the mate
        let (mut w, mut t, mut p) = (w, t, p);
        loop {
            let b = self.inblossom[w];
            debug_assert!(self.label[w] == Label::Free && self.label[b] == Label::Free);
            self.label[w] = t;
            self.label[b] = t;
            self.labelend[w] = p;
            self.labelend[b] = p;
            self.bestedge[w] = NONE;
            self.bestedge[b] = NONE;
            match t {
                Label::S => {
                    let leaves = self.leaves(b);
                    self.queue.extend(leaves);
                    return;
                }
                Label::T => {
                    let base = self.blossombase[b];
                    let mb = self.mate[base];
                    debug_assert!(mb != NONE);
                    w = self.endpoint[mb];
                    t = Label::S;
                    p = mb ^ 1;
                }
                Label::Free => unreachable!(),
            }
        }
    }

    /// Traces back from `v` and `w` to find a new blossom base, or `NONE`
    /// when the two trees are distinct (an augmenting path).
    fn scan_blossom(&mut self, v: usize, w: usize) -> usize {
        let mut path = Vec::new();
        let mut base = NONE;
        let (mut v, mut w) = (v, w);
        while v != NONE || w != NONE {
            let mut b = self.inblossom[v];
            if self.marked[b] {
                base = self.blossombase[b];
                break;
            }
            debug_assert_eq!(self.label[b], Label::S);
            path.push(b);
            self.marked[b] = true;
            if self.labelend[b] == NONE {
                v = NONE;
            } else {
                v = self.endpoint[self.labelend[b]];
                b = self.inblossom[v];
                debug_assert_eq!(self.label[b], Label::T);
                v = self.endpoint[self.labelend[b]];
            }
            if w != NONE {
                std::mem::swap(&mut v, &mut w);
            }
        }
        for b in path {
            self.marked[b] = false;
        }
        base
    }

    fn add_blossom(&mut self, base: usize, k: usize) {
        let (mut v, mut w, _) = self.edges[k];
        let bb = self.inblossom[base];
        let mut bv = self.inblossom[v];
        let mut bw = self.inblossom[w];
        let b = self.unusedblossoms.pop().expect("blossom ids exhausted");
        self.blossombase[b] = base;
        self.blossomparent[b] = NONE;
        self.blossomparent[bb] = b;
        let mut path = Vec::new();
        let mut endps = Vec::new();
        while bv != bb {
            self.blossomparent[bv] = b;
            path.push(bv);
            endps.push(self.labelend[bv]);
            v = self.endpoint[self.labelend[bv]];
            bv = self.inblossom[v];
        }
        path.push(bb);
        path.reverse();
        endps.reverse();
        endps.push(2 * k);
        while bw != bb {
            self.blossomparent[bw] = b;
            path.push(bw);
            endps.push(self.labelend[bw] ^ 1);
            w = self.endpoint[self.labelend[bw]];
            bw = self.inblossom[w];
        }
        debug_assert_eq!(self.label[bb], Label::S);
        self.label[b] = Label::S;
        self.labelend[b] = self.labelend[bb];
        self.dualvar[b] = 0;
        self.blossomchilds[b] = path.clone();
        self.blossomendps[b] = endps;
        for leaf in self.leaves(b) {
            if self.label[self.inblossom[leaf]] == Label::T {
                // former T vertices become S and must be scanned
                self.queue.push(leaf);
            }
            self.inblossom[leaf] = b;
        }
        let mut bestedgeto = vec![NONE; 2 * self.n];
        for &sub in &path {
            let nblists: Vec<Vec<usize>> = match self.blossombestedges[sub].take() {
                Some(list) => vec![list],
                None => self
                    .leaves(sub)
                    .into_iter()
                    .map(|leaf| self.neighbend[leaf].iter().map(|p| p / 2).collect())
                    .collect(),
            };
            for nblist in nblists {
                for k in nblist {
                    let (mut i, mut j, _) = self.edges[k];
                    if self.inblossom[j] == b {
                        std::mem::swap(&mut i, &mut j);
                    }
                    let _ = i;
                    let bj = self.inblossom[j];
                    if bj != b
                        && self.label[bj] == Label::S
                        && (bestedgeto[bj] == NONE || self.slack(k) < self.slack(bestedgeto[bj]))
                    {
                        bestedgeto[bj] = k;
                    }
                }
            }
            self.bestedge[sub] = NONE;
        }
        let list: Vec<usize> = bestedgeto.into_iter().filter(|&k| k != NONE).collect();
        let mut best = NONE;
        for &k in &list {
            if best == NONE || self.slack(k) < self.slack(best) {
                best = k;
            }
        }
        self.blossombestedges[b] = Some(list);
        self.bestedge[b] = best;
    }

    fn expand_blossom(&mut self, b: usize, endstage: bool) {
        let childs = self.blossomchilds[b].clone();
        for &s in &childs {
            self.blossomparent[s] = NONE;
            if s < self.n {
                self.inblossom[s] = s;
            } else if endstage && self.dualvar[s] == 0 {
                self.expand_blossom(s, endstage);
            } else {
                for leaf in self.leaves(s) {
                    self.inblossom[leaf] = s;
                }
            }
        }
        if !endstage && self.label[b] == Label::T {
            // Relabel the even-length path from the entry child to the base.
            let len = childs.len() as isize;
            let at = |j: isize| j.rem_euclid(len) as usize;
            let entrychild = self.inblossom[self.endpoint[self.labelend[b] ^ 1]];
            let mut j = childs.iter().position(|&c| c == entrychild).expect("entry child") as isize;
            let (jstep, endptrick): (isize, usize) = if j & 1 == 1 {
                j -= len;
                (1, 0)
            } else {
                (-1, 1)
            };
            let mut p = self.labelend[b];
            while j != 0 {
                let q = self.endpoint[p ^ 1];
                self.label[q] = Label::Free;
                let r = self.blossomendps[b][at(j - endptrick as isize)] ^ endptrick ^ 1;
                let rq = self.endpoint[r];
                self.label[rq] = Label::Free;
                self.assign_label(q, Label::T, p);
                self.allowedge[self.blossomendps[b][at(j - endptrick as isize)] / 2] = true;
                j += jstep;
                p = self.blossomendps[b][at(j - endptrick as isize)] ^ endptrick;
                self.allowedge[p / 2] = true;
                j += jstep;
            }
            let bv = childs[at(j)];
            let q = self.endpoint[p ^ 1];
            self.label[q] = Label::T;
            self.label[bv] = Label::T;
            self.labelend[q] = p;
            self.labelend[bv] = p;
            self.bestedge[bv] = NONE;
            j += jstep;
            while childs[at(j)] != entrychild {
                let bv = childs[at(j)];
                if self.label[bv] == Label::S {
                    j += jstep;
                    continue;
                }
                let reached = self.leaves(bv).into_iter().find(|&v| self.label[v] != Label::Free);
                if let Some(v) = reached {
                    debug_assert_eq!(self.label[v], Label::T);
                    debug_assert_eq!(self.inblossom[v], bv);
                    self.label[v] = Label::Free;
                    let m = self.endpoint[self.mate[self.blossombase[bv]]];
                    self.label[m] = Label::Free;
                    let le = self.labelend[v];
                    self.assign_label(v, Label::T, le);
                }
                j += jstep;
            }
        }
        self.label[b] = Label::Free;
        self.labelend[b] = NONE;
        self.blossomchilds[b] = Vec::new();
        self.blossomendps[b] = Vec::new();
        self.blossombase[b] = NONE;
        self.blossombestedges[b] = None;
        self.bestedge[b] = NONE;
        self.unusedblossoms.push(b);
    }

    /// Swaps matched and unmatched edges along the even path from `v` to the
    /// base of `b`, rotating the child list so `v` becomes the new base.
    fn augment_blossom(&mut self, b: usize, v: usize) {
        let mut t = v;
        while self.blossomparent[t] != b {
            t = self.blossomparent[t];
        }
        if t >= self.n {
            self.augment_blossom(t, v);
        }
        let len = self.blossomchilds[b].len() as isize;
        let at = |j: isize| j.rem_euclid(len) as usize;
        let i = self.blossomchilds[b].iter().position(|&c| c == t).expect("child") as isize;
        let mut j = i;
        let (jstep, endptrick): (isize, usize) = if i & 1 == 1 {
            j -= len;
            (1, 0)
        } else {
            (-1, 1)
        };
        while j != 0 {
            j += jstep;
            let t = self.blossomchilds[b][at(j)];
            let p = self.blossomendps[b][at(j - endptrick as isize)] ^ endptrick;
            if t >= self.n {
                self.augment_blossom(t, self.endpoint[p]);
            }
            j += jstep;
            let t = self.blossomchilds[b][at(j)];
            if t >= self.n {
                self.augment_blossom(t, self.endpoint[p ^ 1]);
            }
            self.mate[self.endpoint[p]] = p ^ 1;
            self.mate[self.endpoint[p ^ 1]] = p;
        }
        let i = i as usize;
        self.blossomchilds[b].rotate_left(i);
        self.blossomendps[b].rotate_left(i);
        self.blossombase[b] = self.blossombase[self.blossomchilds[b][0]];
        debug_assert_eq!(self.blossombase[b], v);
    }

    fn augment_matching(&mut self, k: usize) {
        let (v, w, _) = self.edges[k];
        for (s0, p0) in [(v, 2 * k + 1), (w, 2 * k)] {
            let (mut s, mut p) = (s0, p0);
            loop {
                let bs = self.inblossom[s];
                debug_assert_eq!(self.label[bs], Label::S);
                if bs >= self.n {
                    self.augment_blossom(bs, s);
                }
                self.mate[s] = p;
                if self.labelend[bs] == NONE {
                    break;
                }
                let t = self.endpoint[self.labelend[bs]];
                let bt = self.inblossom[t];
                debug_assert_eq!(self.label[bt], Label::T);
                s = self.endpoint[self.labelend[bt]];
                let j = self.endpoint[self.labelend[bt] ^ 1];
                debug_assert_eq!(self.blossombase[bt], t);
                if bt >= self.n {
                    self.augment_blossom(bt, j);
                }
                self.mate[j] = self.labelend[bt];
                p = self.labelend[bt] ^ 1;
            }
        }
    }

    fn run(&mut self) {
        let n = self.n;
        for _stage in 0..n {
            self.label.iter_mut().for_each(|l| *l = Label::Free);
            self.bestedge.iter_mut().for_each(|e| *e = NONE);
            for b in n..2 * n {
                self.blossombestedges[b] = None;
            }
            self.allowedge.iter_mut().for_each(|a| *a = false);
            self.queue.clear();
            for v in 0..n {
                if self.mate[v] == NONE && self.label[self.inblossom[v]] == Label::Free {
                    self.assign_label(v, Label::S, NONE);
                }
            }
            let mut augmented = false;
            loop {
                while !augmented {
                    let Some(v) = self.queue.pop() else { break };
                    debug_assert_eq!(self.label[self.inblossom[v]], Label::S);
                    for idx in 0..self.neighbend[v].len() {
                        let p = self.neighbend[v][idx];
                        let k = p / 2;
                        let w = self.endpoint[p];
                        if self.inblossom[v] == self.inblossom[w] {
                            continue;
                        }
                        let mut kslack = 0;
                        if !self.allowedge[k] {
                            kslack = self.slack(k);
                            if kslack <= 0 {
                                self.allowedge[k] = true;
                            }
                        }
                        let bw = self.inblossom[w];
                        if self.allowedge[k] {
                            match self.label[bw] {
                                Label::Free => self.assign_label(w, Label::T, p ^ 1),
                                Label::S => {
                                    let base = self.scan_blossom(v, w);
                                    if base != NONE {
                                        self.add_blossom(base, k);
                                    } else {
                                        self.augment_matching(k);
                                        augmented = true;
                                        break;
                                    }
                                }
                                Label::T => {
                                    if self.label[w] == Label::Free {
                                        self.label[w] = Label::T;
                                        self.labelend[w] = p ^ 1;
                                    }
                                }
                            }
                        } else if self.label[bw] == Label::S {
                            let b = self.inblossom[v];
                            if self.bestedge[b] == NONE || kslack < self.slack(self.bestedge[b]) {
                                self.bestedge[b] = k;
                            }
                        } else if self.label[w] == Label::Free
                            && (self.bestedge[w] == NONE || kslack < self.slack(self.bestedge[w]))
                        {
                            self.bestedge[w] = k;
                        }
                    }
                }
                if augmented {
                    break;
                }

                let mut delta = 0i64;
                let mut choice: Option<Delta> = None;
                for v in 0..n {
                    if self.label[self.inblossom[v]] == Label::Free && self.bestedge[v] != NONE {
                        let d = self.slack(self.bestedge[v]);
                        if choice.is_none() || d < delta {
                            delta = d;
                            choice = Some(Delta::Edge(self.bestedge[v]));
                        }
                    }
                }
                for b in 0..2 * n {
                    if self.blossomparent[b] == NONE && self.label[b] == Label::S && self.bestedge[b] != NONE {
                        let kslack = self.slack(self.bestedge[b]);
                        debug_assert_eq!(kslack % 2, 0);
                        let d = kslack / 2;
                        if choice.is_none() || d < delta {
                            delta = d;
                            choice = Some(Delta::SBlossomEdge(self.bestedge[b]));
                        }
                    }
                }
                for b in n..2 * n {
                    if self.blossombase[b] != NONE
                        && self.blossomparent[b] == NONE
                        && self.label[b] == Label::T
                        && (choice.is_none() || self.dualvar[b] < delta)
                    {
                        delta = self.dualvar[b];
                        choice = Some(Delta::Expand(b));
                    }
                }
                let choice = match choice {
                    Some(c) => c,
                    None => {
                        // no further progress possible: the matching has maximum cardinality
                        delta = self.dualvar[..n].iter().copied().min().unwrap_or(0).max(0);
                        Delta::VertexDual
                    }
                };

                for v in 0..n {
                    match self.label[self.inblossom[v]] {
                        Label::S => self.dualvar[v] -= delta,
                        Label::T => self.dualvar[v] += delta,
                        Label::Free => {}
                    }
                }
                for b in n..2 * n {
                    if self.blossombase[b] != NONE && self.blossomparent[b] == NONE {
                        match self.label[b] {
                            Label::S => self.dualvar[b] += delta,
                            Label::T => self.dualvar[b] -= delta,
                            Label::Free => {}
                        }
                    }
                }

                match choice {
                    Delta::VertexDual => break,
                    Delta::Edge(k) => {
                        self.allowedge[k] = true;
                        let (mut i, j, _) = self.edges[k];
                        if self.label[self.inblossom[i]] == Label::Free {
                            i = j;
                        }
                        debug_assert_eq!(self.label[self.inblossom[i]], Label::S);
                        self.queue.push(i);
                    }
                    Delta::SBlossomEdge(k) => {
                        self.allowedge[k] = true;
                        let (i, _, _) = self.edges[k];
                        debug_assert_eq!(self.label[self.inblossom[i]], Label::S);
                        self.queue.push(i);
                    }
                    Delta::Expand(b) => self.expand_blossom(b, false),
                }
            }
            if !augmented {
                break;
            }
            for b in n..2 * n {
                if self.blossomparent[b] == NONE
                    && self.blossombase[b] != NONE
                    && self.label[b] == Label::S
                    && self.dualvar[b] == 0
                {
                    self.expand_blossom(b, true);
                }
            }
        }
    }

    /// Complementary slackness and dual feasibility for the final solution.
    fn certify(&self) -> Result<(), String> {
        let n = self.n;
        let vmin = self.dualvar[..n].iter().copied().min().unwrap_or(0);
        let offset = (-vmin).max(0);
        if let Some(b) = (n..2 * n).find(|&b| self.blossombase[b] != NONE && self.dualvar[b] < 0) {
            return Err(format!("negative blossom dual at {b}"));
        }
        let chain = |mut v: usize| {
            let mut c = vec![v];
            while self.blossomparent[v] != NONE {
                v = self.blossomparent[v];
                c.push(v);
            }
            c.reverse();
            c
        };
        for (k, &(i, j, w)) in self.edges.iter().enumerate() {
            let mut s = self.dualvar[i] + self.dualvar[j] - 2 * w;
            for (bi, bj) in chain(i).into_iter().zip(chain(j)) {
                if bi != bj {
                    break;
                }
                s += 2 * self.dualvar[bi];
            }
            if s < 0 {
                return Err(format!("edge {k} ({i},{j}) has negative reduced cost {s}"));
            }
            let mi = self.mate[i] != NONE && self.mate[i] / 2 == k;
            let mj = self.mate[j] != NONE && self.mate[j] / 2 == k;
            if mi != mj {
                return Err(format!("edge {k} matched on one side only"));
            }
            if mi && s != 0 {
                return Err(format!("matched edge {k} ({i},{j}) not tight (slack {s})"));
            }
        }
        for v in 0..n {
            if self.mate[v] == NONE && self.dualvar[v] + offset != 0 {
                return Err(format!("unmatched vertex {v} has non-minimal dual"));
            }
        }
        for b in n..2 * n {
            if self.blossombase[b] != NONE && self.dualvar[b] > 0 {
                if self.blossomendps[b].len() % 2 != 1 {
                    return Err(format!("blossom {b} has even length"));
                }
                for &p in self.blossomendps[b].iter().skip(1).step_by(2) {
                    if self.mate[self.endpoint[p]] != p ^ 1 || self.mate[self.endpoint[p ^ 1]] != p {
                        return Err(format!("blossom {b} with positive dual is not full"));
                    }
                }
            }
        }
        Ok(())
    }
}
