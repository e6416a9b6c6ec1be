use randic::bmatching::Objective;
use randic::graph::{DegreeSequence, DirectedDegreeSequence, Sign};
use randic::graphic::{has_connected_realization, is_graphic};
use randic::oracle::{all_sequences, brute_directed_optimum, brute_max_randic, brute_min_randic, sorted_sequences};
use randic::randic_opt::{maximize_randic, minimize_randic, optimize_directed_randic};

#[test]
fn solver_matches_oracle_up_to_five_nodes() {
    for n in 1..=5 {
        for d in all_sequences(n, n - 1) {
            let lo = brute_min_randic(&d, false).unwrap();
            let hi = brute_max_randic(&d, false).unwrap();
            assert_eq!(lo.is_some(), is_graphic(&d), "{d}");
            if let (Some((lo, _)), Some((hi, _))) = (lo, hi) {
                assert_eq!(minimize_randic(&d).unwrap().index_value, lo, "min {d}");
                assert_eq!(maximize_randic(&d).unwrap().index_value, hi, "max {d}");
            } else {
                assert!(minimize_randic(&d).is_err());
            }
        }
    }
}

#[test]
fn connected_condition_up_to_five_nodes() {
    for n in 0..=5usize {
        for d in all_sequences(n, n.saturating_sub(1)) {
            let brute = brute_min_randic(&d, true).unwrap().is_some();
            assert_eq!(has_connected_realization(&d), brute, "{d}");
        }
    }
}

/// Optima computed by the enumerator and frozen.
#[test]
fn frozen_fixtures() {
    let cases: &[(&[usize], u64, u64, Option<u64>)] = &[
        // (sequence, min, max, connected min)
        (&[3, 2, 2, 2, 2, 1], 27, 28, Some(27)),
        (&[1, 1, 1, 1], 2, 2, None),
        (&[2, 2, 2, 2, 2, 2], 24, 24, Some(24)),
        (&[3, 3, 2, 2, 1, 1], 30, 34, Some(30)),
        (&[4, 1, 1, 1, 1], 16, 16, Some(16)),
        (&[3, 3, 3, 3, 2, 2], 60, 61, Some(60)),
        (&[4, 4, 2, 2, 2, 2, 2], 68, 72, Some(68)),
    ];
    for &(d, lo, hi, conn) in cases {
        let d = DegreeSequence(d.to_vec());
        assert_eq!(brute_min_randic(&d, false).unwrap().unwrap().0, lo, "brute min {d}");
        assert_eq!(brute_max_randic(&d, false).unwrap().unwrap().0, hi, "brute max {d}");
        assert_eq!(brute_min_randic(&d, true).unwrap().map(|x| x.0), conn, "connected {d}");
        assert_eq!(minimize_randic(&d).unwrap().index_value, lo, "min {d}");
        assert_eq!(maximize_randic(&d).unwrap().index_value, hi, "max {d}");
    }
}

#[test]
fn directed_matches_oracle_small() {
    let mut checked = 0;
    for n in 2..=3usize {
        let outs = all_sequences(n, n - 1).collect::<Vec<_>>();
        for o in &outs {
            for i in &outs {
                let d = DirectedDegreeSequence(o.0.iter().copied().zip(i.0.iter().copied()).collect());
                for (p, q) in Sign::all_pairs() {
                    for obj in [Objective::Min, Objective::Max] {
                        let brute = brute_directed_optimum(&d, p, q, obj).unwrap().map(|x| x.0);
                        let solved = optimize_directed_randic(&d, p, q, obj).ok().map(|r| r.index_value);
                        assert_eq!(brute, solved, "{:?} {p:?}{q:?} {obj:?}", d.0);
                        checked += brute.is_some() as usize;
                    }
                }
            }
        }
    }
    assert!(checked > 50);
}

#[test]
fn sorted_six_node_sequences() {
    for d in sorted_sequences(6, 5).into_iter().filter(is_graphic) {
        let lo = brute_min_randic(&d, false).unwrap().unwrap().0;
        assert_eq!(minimize_randic(&d).unwrap().index_value, lo, "{d}");
    }
}
