//! Seeded random graph generators.
//!
//! All generators take the random stream explicitly. [`SeededRng`]
//! (ChaCha with 8 rounds, seeded from a `u64`) is the stream used by the
//! CLI and the experiment harness, so a seed fully determines a graph.

use rand::seq::index::sample;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::graph::SimpleGraph;

pub type SeededRng = ChaCha8Rng;

pub fn seeded_rng(seed: u64) -> SeededRng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Each of the `C(n,2)` pairs becomes an edge iff its uniform draw is `< p`.
pub fn erdos_renyi<R: Rng>(n: usize, p: f64, rng: &mut R) -> Result<SimpleGraph> {
    if !(0.0..=1.0).contains(&p) {
        return Err(Error::InvalidParameter(format!("p = {p} outside [0, 1]")));
    }
    if n == 0 {
        return Err(Error::InvalidParameter("n must be at least 1".into()));
    }
    let mut edges = Vec::new();
    for u in 0..n {
        for v in u + 1..n {
            if rng.random::<f64>() < p {
                edges.push((u, v));
            }
        }
    }
    SimpleGraph::new(n, edges)
}

/// Random geometric graph in the unit square: edge iff squared distance `<= r²`.
pub fn geometric<R: Rng>(n: usize, r: f64, rng: &mut R) -> Result<SimpleGraph> {
    Ok(geometric_with_points(n, r, rng)?.0)
}

/// Like [`geometric`], also returning the sampled coordinates.
pub fn geometric_with_points<R: Rng>(n: usize, r: f64, rng: &mut R) -> Result<(SimpleGraph, Vec<(f64, f64)>)> {
    if r.is_nan() || r < 0.0 {
        return Err(Error::InvalidParameter(format!("radius {r} must be non-negative")));
    }
    let points: Vec<(f64, f64)> = (0..n).map(|_| (rng.random::<f64>(), rng.random::<f64>())).collect();
    Ok((geometric_from_points(&points, r), points))
}

pub fn geometric_from_points(points: &[(f64, f64)], r: f64) -> SimpleGraph {
    let r2 = r * r;
    let n = points.len();
    let mut edges = Vec::new();
    for u in 0..n {
        for v in u + 1..n {
            let dx = points[u].0 - points[v].0;
            let dy = points[u].1 - points[v].1;
            if dx * dx + dy * dy <= r2 {
                edges.push((u, v));
            }
        }
    }
    SimpleGraph::new(n, edges).expect("pairs are distinct")
}

/// Barabási–Albert preferential attachment.
///
/// Starts from a clique on `min_degree + 1` nodes; every later node links
/// to `min_degree` distinct existing nodes drawn with probability
/// proportional to their current degree.
pub fn scale_free<R: Rng>(n: usize, min_degree: usize, rng: &mut R) -> Result<SimpleGraph> {
    if min_degree < 1 {
        return Err(Error::InvalidParameter("min_degree must be at least 1".into()));
    }
    if n <= min_degree {
        return Err(Error::InvalidParameter(format!("n = {n} must exceed min_degree = {min_degree}")));
    }
    let seed = min_degree + 1;
    let mut edges = Vec::new();
    // every edge endpoint once: sampling from this list is degree-proportional
    let mut ends = Vec::new();
    for u in 0..seed {
        for v in u + 1..seed {
            edges.push((u, v));
            ends.push(u);
            ends.push(v);
        }
    }
    let mut targets = Vec::with_capacity(min_degree);
    for new in seed..n {
        targets.clear();
        while targets.len() < min_degree {
            let t = ends[rng.random_range(0..ends.len())];
            if !targets.contains(&t) {
                targets.push(t);
            }
        }
        for &t in &targets {
            edges.push((t, new));
            ends.push(t);
            ends.push(new);
        }
    }
    SimpleGraph::new(n, edges)
}

/// Uniform random permutation of `0..n`.
pub fn random_permutation<R: Rng>(n: usize, rng: &mut R) -> Vec<usize> {
    sample(rng, n, n).into_vec()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graphic::has_connected_realization;

    #[test]
    fn er_extremes() {
        let mut rng = seeded_rng(1);
        assert_eq!(erdos_renyi(10, 0.0, &mut rng).unwrap().edge_count(), 0);
        assert_eq!(erdos_renyi(10, 1.0, &mut rng).unwrap(), SimpleGraph::complete(10));
        assert!(erdos_renyi(10, 1.5, &mut rng).is_err());
        assert!(erdos_renyi(0, 0.5, &mut rng).is_err());
    }

    #[test]
    fn geometric_extremes() {
        let mut rng = seeded_rng(2);
        assert_eq!(geometric(10, 0.0, &mut rng).unwrap().edge_count(), 0);
        assert_eq!(geometric(10, 2f64.sqrt(), &mut rng).unwrap(), SimpleGraph::complete(10));
        assert!(geometric(10, -1.0, &mut rng).is_err());
    }

    #[test]
    fn scale_free_basics() {
        let mut rng = seeded_rng(3);
        assert_eq!(scale_free(3, 2, &mut rng).unwrap(), SimpleGraph::complete(3));
        for _ in 0..50 {
            let g = scale_free(25, 2, &mut rng).unwrap();
            let d = g.degree_sequence();
            assert!(d.0.iter().all(|&x| x >= 2));
            assert!(has_connected_realization(&d));
        }
        assert!(scale_free(2, 2, &mut rng).is_err());
        assert!(scale_free(5, 0, &mut rng).is_err());
    }

    #[test]
    fn determinism() {
        for f in [
            |r: &mut SeededRng| erdos_renyi(30, 0.2, r).unwrap(),
            |r: &mut SeededRng| geometric(30, 0.3, r).unwrap(),
            |r: &mut SeededRng| scale_free(30, 2, r).unwrap(),
        ] {
            assert_eq!(f(&mut seeded_rng(9)), f(&mut seeded_rng(9)));
            assert_ne!(f(&mut seeded_rng(9)), f(&mut seeded_rng(10)));
        }
    }

    #[test]
    fn permutation_is_bijective() {
        let mut p = random_permutation(20, &mut seeded_rng(4));
        p.sort_unstable();
        assert_eq!(p, (0..20).collect::<Vec<_>>());
    }
}
