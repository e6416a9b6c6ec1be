use randic::generators::{erdos_renyi, geometric, scale_free, seeded_rng};
use randic::graph::SimpleGraph;

fn mean_degree(g: &SimpleGraph) -> f64 {
    2.0 * g.edge_count() as f64 / g.node_count() as f64
}

#[test]
fn er_mean_degree() {
    // expected (n-1)p = 24 * 4.25 / 25 = 4.08
    let n = 25;
    let p = 4.25 / n as f64;
    let mut rng = seeded_rng(2024);
    let trials = 2000;
    let mean: f64 = (0..trials).map(|_| mean_degree(&erdos_renyi(n, p, &mut rng).unwrap())).sum::<f64>() / trials as f64;
    assert!((mean - 4.08).abs() / 4.08 < 0.05, "mean degree {mean}");
}

#[test]
fn geometric_mean_degree() {
    // away from the boundary the expected degree is (n-1)πr² ≈ 6n/n;
    // the square's edges cut it to roughly 5
    let n = 25;
    let r = (6.0 / (std::f64::consts::PI * n as f64)).sqrt();
    assert!((r - 0.276).abs() < 1e-3);
    let mut rng = seeded_rng(7);
    let trials = 2000;
    let mean: f64 = (0..trials).map(|_| mean_degree(&geometric(n, r, &mut rng).unwrap())).sum::<f64>() / trials as f64;
    let interior = (n - 1) as f64 * std::f64::consts::PI * r * r;
    assert!(mean < interior && mean > 0.75 * interior, "mean degree {mean}, interior {interior}");
}

#[test]
fn scale_free_heavy_tail() {
    let mut rng = seeded_rng(99);
    let g = scale_free(1000, 2, &mut rng).unwrap();
    let mut d = g.degree_sequence().0;
    d.sort_unstable();
    let median = d[d.len() / 2];
    let max = *d.last().unwrap();
    assert!(d[0] >= 2);
    assert!(max > 3 * median, "max {max}, median {median}");
    // |E| = C(3,2) + 2(n-3)
    assert_eq!(g.edge_count(), 3 + 2 * 997);
}
