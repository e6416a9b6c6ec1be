//! Randić-index optimization over all realizations of a degree sequence.
//!
//! A realization of `d` is exactly a perfect `d`-matching of the complete
//! graph, and with edge weights `d_i·d_j` the matching weight equals the
//! Randić index of the realization. Minimizing the matching weight therefore
//! minimizes the index; maximizing runs the same solver on the transformed
//! weights `(1 + max H) − H`.

use crate::bmatching::{
    self, solve_bipartite_bmatching, BipartiteInstance, MatchingInstance, Objective, SolverOptions, WeightMatrix,
};
use crate::error::{Error, Result};
use crate::graph::{
    directed_randic, is_connected, randic_index, randic_index_exact, DegreeSequence, DiGraph,
    DirectedDegreeSequence, Sign, SimpleGraph,
};
use crate::graphic::is_graphic;

/// Scale applied to real-valued weights `(d_i d_j)^alpha` before rounding.
pub const ALPHA_WEIGHT_SCALE: f64 = 1e6;

#[derive(Debug, Clone, PartialEq)]
pub struct OptimizationResult {
    pub realization: SimpleGraph,
    pub index_value: u64,
    pub objective: Objective,
    pub connected: bool,
}

#[derive(Debug, Clone, PartialEq)]
pub struct DirectedOptimizationResult {
    pub realization: DiGraph,
    pub index_value: u64,
    pub objective: Objective,
    pub pq: (Sign, Sign),
}

/// Result of optimizing `R_alpha` for `alpha != 1` with scaled integer weights.
#[derive(Debug, Clone, PartialEq)]
pub struct AlphaOptimizationResult {
    pub realization: SimpleGraph,
    pub alpha: f64,
    pub index_value: f64,
    pub objective: Objective,
    pub connected: bool,
    /// Upper bound on how far `index_value` can be from the true optimum
    /// because of weight rounding: `|E| / scale`.
    pub rounding_bound: f64,
}

/// Matching instance on the positive-degree nodes of `d`, together with
/// the original index of each instance node.
#[derive(Debug, Clone)]
pub struct RandicInstance {
    pub instance: MatchingInstance,
    pub nodes: Vec<usize>,
}

/// Complete host on the non-zero entries of `d` with `w_ij = d_i d_j`
/// (`Min`), or the transformed weights `(1 + max H) − H` (`Max`).
pub fn build_instance(d: &DegreeSequence, objective: Objective) -> Result<RandicInstance> {
    if !is_graphic(d) {
        return Err(Error::NotGraphic);
    }
    let nodes: Vec<usize> = (0..d.len()).filter(|&i| d.0[i] > 0).collect();
    let h = degree_product_matrix(&nodes.iter().map(|&i| d.0[i]).collect::<Vec<_>>())?;
    let h = match objective {
        Objective::Min => h,
        Objective::Max => bmatching::max_transform(&h)?,
    };
    let b = nodes.iter().map(|&i| d.0[i]).collect();
    Ok(RandicInstance { instance: MatchingInstance::from_matrix(&h, b)?, nodes })
}

/// `H[i][j] = d_i d_j` off the diagonal, zero on it.
pub fn degree_product_matrix(d: &[usize]) -> Result<WeightMatrix> {
    let n = d.len();
    let rows = (0..n)
        .map(|i| {
            (0..n)
                .map(|j| {
                    if i == j {
                        Ok(0)
                    } else {
                        (d[i] as i64).checked_mul(d[j] as i64).ok_or(Error::Overflow("degree product"))
                    }
                })
                .collect::<Result<Vec<i64>>>()
        })
        .collect::<Result<Vec<_>>>()?;
    WeightMatrix::from_rows(rows)
}

pub fn minimize_randic(d: &DegreeSequence) -> Result<OptimizationResult> {
    optimize_randic(d, Objective::Min, &SolverOptions::default())
}

pub fn maximize_randic(d: &DegreeSequence) -> Result<OptimizationResult> {
    optimize_randic(d, Objective::Max, &SolverOptions::default())
}

/// Global optimum of `R_1` over every realization of `d`, connected or not.
pub fn optimize_randic(d: &DegreeSequence, objective: Objective, opts: &SolverOptions) -> Result<OptimizationResult> {
    let built = build_instance(d, objective)?;
    let realization = solve_to_realization(d.len(), &built, opts)?;
    let index_value = randic_index_exact(&realization)?;
    Ok(OptimizationResult {
        connected: is_connected(&realization),
        realization,
        index_value,
        objective,
    })
}

fn solve_to_realization(n: usize, built: &RandicInstance, opts: &SolverOptions) -> Result<SimpleGraph> {
    // The instance is always minimized; `Max` is encoded in its weights.
    let m = bmatching::solve_bmatching(&built.instance, Objective::Min, opts)?
        .ok_or_else(|| Error::Solver("graphic sequence produced an infeasible instance".into()))?;
    SimpleGraph::new(n, m.edges.iter().map(|&(u, v)| (built.nodes[u], built.nodes[v])))
}

/// Optimizes `R_alpha` using weights `round(scale·(d_i d_j)^alpha)`.
/// Exact for `alpha = 1` up to the rounding bound reported in the result.
pub fn optimize_randic_alpha(d: &DegreeSequence, alpha: f64, objective: Objective) -> Result<AlphaOptimizationResult> {
    if alpha == 0.0 {
        return Err(Error::ZeroAlpha);
    }
    if !is_graphic(d) {
        return Err(Error::NotGraphic);
    }
    let nodes: Vec<usize> = (0..d.len()).filter(|&i| d.0[i] > 0).collect();
    let k = nodes.len();
    let mut rows = vec![vec![0i64; k]; k];
    for i in 0..k {
        for j in 0..k {
            if i != j {
                let w = ((d.0[nodes[i]] * d.0[nodes[j]]) as f64).powf(alpha) * ALPHA_WEIGHT_SCALE;
                if !w.is_finite() || w >= i64::MAX as f64 / 4.0 {
                    return Err(Error::Overflow("scaled alpha weight"));
                }
                rows[i][j] = w.round() as i64;
            }
        }
    }
    let h = WeightMatrix::from_rows(rows)?;
    let h = match objective {
        Objective::Min => h,
        Objective::Max => bmatching::max_transform(&h)?,
    };
    let b = nodes.iter().map(|&i| d.0[i]).collect();
    let built = RandicInstance { instance: MatchingInstance::from_matrix(&h, b)?, nodes };
    let realization = solve_to_realization(d.len(), &built, &SolverOptions::default())?;
    let index_value = randic_index(&realization, alpha)?;
    Ok(AlphaOptimizationResult {
        connected: is_connected(&realization),
        rounding_bound: realization.edge_count() as f64 / ALPHA_WEIGHT_SCALE,
        realization,
        alpha,
        index_value,
        objective,
    })
}

/// Optimizes `R^{pq}` over simple digraphs with out/in degrees `d`.
///
/// Solved as a perfect b-matching on `K_{n,n}` minus `{(i+, i-)}` with
/// `b+ = d+`, `b- = d-` and `w_ij = d_i^p d_j^q`; matching edge `(i+, j-)`
/// is the arc `i -> j`.
pub fn optimize_directed_randic(
    d: &DirectedDegreeSequence,
    p: Sign,
    q: Sign,
    objective: Objective,
) -> Result<DirectedOptimizationResult> {
    let inst = build_directed_instance(d, p, q)?;
    let m = solve_bipartite_bmatching(&inst, objective)?.ok_or_else(|| {
        Error::Precondition(format!("pair sequence {:?} has no simple digraph realization", d.0))
    })?;
    let realization = DiGraph::new(d.len(), m.edges.iter().copied())?;
    let index_value = directed_randic(&realization, p, q)?;
    debug_assert_eq!(index_value as i64, m.weight);
    Ok(DirectedOptimizationResult { realization, index_value, objective, pq: (p, q) })
}

pub fn minimize_directed_randic(d: &DirectedDegreeSequence, p: Sign, q: Sign) -> Result<DirectedOptimizationResult> {
    optimize_directed_randic(d, p, q, Objective::Min)
}

pub fn build_directed_instance(d: &DirectedDegreeSequence, p: Sign, q: Sign) -> Result<BipartiteInstance> {
    let n = d.len();
    let mut edges = Vec::with_capacity(n * n.saturating_sub(1));
    for i in 0..n {
        for j in 0..n {
            if i != j {
                let w = (d.degree(i, p) as i64)
                    .checked_mul(d.degree(j, q) as i64)
                    .ok_or(Error::Overflow("degree product"))?;
                edges.push((i, j, w));
            }
        }
    }
    BipartiteInstance::new(n, n, edges, d.out_degrees(), d.in_degrees())
}

/// `R(G) / U_b`, where `U_b` is the maximum index over all realizations of
/// the degree sequence of `G`.
pub fn normalized_randic(g: &SimpleGraph) -> Result<f64> {
    if g.edge_count() == 0 {
        return Err(Error::Precondition("graph has no edges; the normalizer is zero".into()));
    }
    let r = randic_index_exact(g)?;
    let max = maximize_randic(&g.degree_sequence())?.index_value;
    Ok(r as f64 / max as f64)
}

/// `original / maximum`; both must be positive.
pub fn normalize_value(original: f64, maximum: f64) -> Result<f64> {
    if maximum.is_nan() || maximum <= 0.0 || original < 0.0 {
        return Err(Error::Precondition(format!("cannot normalize {original} by {maximum}")));
    }
    Ok(original / maximum)
}

/// Ratio as a percentage with at most two decimals and no trailing zeros,
/// e.g. `0.94604 -> "94.6%"`.
pub fn format_percent(ratio: f64) -> String {
    let s = format!("{:.2}", ratio * 100.0);
    let s = s.trim_end_matches('0').trim_end_matches('.');
    format!("{s}%")
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ds(d: &[usize]) -> DegreeSequence {
        DegreeSequence(d.to_vec())
    }

    #[test]
    fn instance_matches_printed_matrix() {
        let built = build_instance(&ds(&[3, 2, 2, 2, 2, 1]), Objective::Min).unwrap();
        let inst = &built.instance;
        let expected_first_row = [0, 6, 6, 6, 6, 3];
        for (j, &w) in expected_first_row.iter().enumerate().skip(1) {
            assert_eq!(inst.weight_of(0, j), Some(w));
        }
        assert_eq!(inst.weight_of(1, 5), Some(2));
        assert_eq!(inst.weight_of(2, 4), Some(4));

        let k2 = build_instance(&ds(&[1, 1]), Objective::Min).unwrap().instance;
        assert_eq!(k2.host().edges(), &[(0, 1)]);
        assert_eq!(k2.weights(), &[1]);
        assert_eq!(k2.b(), &[1, 1]);

        let k3 = build_instance(&ds(&[2, 2, 2]), Objective::Min).unwrap().instance;
        assert_eq!(k3.weights(), &[4, 4, 4]);

        assert_eq!(build_instance(&ds(&[3, 1]), Objective::Min).unwrap_err(), Error::NotGraphic);
    }

    #[test]
    fn minimize_examples() {
        let r = minimize_randic(&ds(&[3, 2, 2, 2, 2, 1])).unwrap();
        assert_eq!(r.index_value, 27);
        assert_eq!(r.realization.degree_sequence().0, vec![3, 2, 2, 2, 2, 1]);
        assert_eq!(minimize_randic(&ds(&[1, 1, 1, 1])).unwrap().index_value, 2);
        assert_eq!(minimize_randic(&ds(&[1, 1, 1])).unwrap_err(), Error::NotGraphic);
    }

    #[test]
    fn maximize_examples() {
        assert_eq!(maximize_randic(&ds(&[2, 2, 2])).unwrap().index_value, 12);
        assert_eq!(maximize_randic(&ds(&[1, 1, 1, 1])).unwrap().index_value, 2);
        assert!(maximize_randic(&ds(&[3, 2, 2, 2, 2, 1])).unwrap().index_value >= 27);
    }

    #[test]
    fn zero_degrees_reattached_as_isolated() {
        let r = minimize_randic(&ds(&[0, 2, 2, 0, 2])).unwrap();
        assert_eq!(r.realization.node_count(), 5);
        assert_eq!(r.realization.degree_sequence().0, vec![0, 2, 2, 0, 2]);
        assert_eq!(r.index_value, 12);
        assert!(!r.connected);
        let empty = minimize_randic(&ds(&[0, 0])).unwrap();
        assert_eq!(empty.index_value, 0);
    }

    #[test]
    fn directed_examples() {
        let two_cycle = DirectedDegreeSequence(vec![(1, 1), (1, 1)]);
        for (p, q) in Sign::all_pairs() {
            let r = minimize_directed_randic(&two_cycle, p, q).unwrap();
            assert_eq!(r.index_value, 2);
            assert_eq!(r.realization.arcs(), &[(0, 1), (1, 0)]);
        }
        let arc = DirectedDegreeSequence(vec![(1, 0), (0, 1)]);
        assert_eq!(minimize_directed_randic(&arc, Sign::Out, Sign::Out).unwrap().index_value, 0);
        let bad = DirectedDegreeSequence(vec![(1, 0), (1, 0)]);
        assert!(minimize_directed_randic(&bad, Sign::Out, Sign::Out).is_err());
        // a single node cannot carry a loop
        let lonely = DirectedDegreeSequence(vec![(1, 1)]);
        assert!(minimize_directed_randic(&lonely, Sign::Out, Sign::Out).is_err());
    }

    #[test]
    fn alpha_one_agrees_with_exact() {
        let d = ds(&[4, 3, 3, 2, 2, 2, 1, 1]);
        let exact = minimize_randic(&d).unwrap();
        let scaled = optimize_randic_alpha(&d, 1.0, Objective::Min).unwrap();
        assert_eq!(scaled.index_value, exact.index_value as f64);
        assert_eq!(optimize_randic_alpha(&d, 0.0, Objective::Min).unwrap_err(), Error::ZeroAlpha);
        let neg = optimize_randic_alpha(&d, -0.5, Objective::Max).unwrap();
        assert_eq!(neg.realization.degree_sequence().0, d.0);
    }

    #[test]
    fn normalization() {
        assert_eq!(normalized_randic(&SimpleGraph::complete(3)).unwrap(), 1.0);
        assert!(normalized_randic(&SimpleGraph::empty(3)).is_err());
        let ratio = normalize_value(172910.5, 182773.6).unwrap();
        assert_eq!(format_percent(ratio), "94.6%");
        assert_eq!(format_percent(normalize_value(182098.8, 192005.4).unwrap()), "94.84%");
        assert_eq!(format_percent(normalize_value(146719.0, 155715.5).unwrap()), "94.22%");
        assert_eq!(format_percent(normalize_value(4354002.0, 4366974.0).unwrap()), "99.7%");
        assert_eq!(format_percent(1.0), "100%");
        assert!(normalize_value(1.0, 0.0).is_err());
    }
}
