use num_complex::Complex64;
use proptest::prelude::*;
use spinfoam::cli::parse_complex;
use spinfoam::perturbation::{dilute_config_count, intersecting_pairs, simplex_insertion_pairs};
use spinfoam::qalgebra::{format_complex, Level};
use spinfoam::recoupling::{admissible_fifteen_j_labels, fifteen_j, fifteen_j_mirror, theta, Triple};
use spinfoam::statesum::{fixtures, pachner_move, PachnerMove};
use spinfoam::tl_oracle::{library, oracle_eval_network};

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn complex_text_round_trip(re in -1e3f64..1e3, im in -1e3f64..1e3) {
        let z = Complex64::new(re, im);
        let back = parse_complex(&format_complex(z, 12)).unwrap();
        prop_assert!((back - z).norm() < 1e-11);
    }

    #[test]
    fn theta_is_symmetric(r in 3u32..9, a in 0u32..7, b in 0u32..7, c in 0u32..7) {
        let lv = Level::new(r).unwrap();
        let t = |x, y, z| theta(Triple::new(x, y, z), &lv).value();
        let v = t(a, b, c);
        prop_assert!((v - t(b, c, a)).norm() < 1e-12);
        prop_assert!((v - t(c, b, a)).norm() < 1e-12);
    }

    #[test]
    fn mirror_is_the_conjugate(i in 0usize..2080) {
        let lv = Level::new(4).unwrap();
        let labels = admissible_fifteen_j_labels(&lv);
        let l = labels[i % labels.len()];
        prop_assert!((fifteen_j_mirror(l, &lv).value() - fifteen_j(l, &lv).value().conj()).norm() < 1e-12);
    }

    #[test]
    fn hopf_link_matches_its_formula(r in 3u32..6, x in 0u32..4, y in 0u32..4) {
        let lv = Level::new(r).unwrap();
        prop_assume!(lv.is_admissible(x) && lv.is_admissible(y));
        // (−1)^{x+y} [(x+1)(y+1)]
        let sign = if (x + y) % 2 == 0 { 1.0 } else { -1.0 };
        let expected = sign * lv.qint(((x + 1) * (y + 1)) as i64);
        let got = oracle_eval_network(&library::hopf(x, y), &lv).unwrap();
        prop_assert!((got - expected).norm() < 1e-10, "{got} vs {expected}");
    }

    #[test]
    fn one_five_moves_keep_the_manifold_closed(k in 0usize..10) {
        let t = fixtures::s4_refined();
        let site = t.sorted_simplex(k % t.simplices.len());
        let moved = pachner_move(&t, PachnerMove::OneFive, &site).unwrap();
        let (a, b) = (t.f_vector(), moved.f_vector());
        prop_assert_eq!([b[0] - a[0], b[1] - a[1], b[2] - a[2], b[3] - a[3], b[4] - a[4]], [1, 5, 10, 10, 4]);
        prop_assert_eq!(moved.euler_characteristic(), 2);
        prop_assert!(moved.orientation.is_some());
        for &s in &moved.simplices {
            prop_assert_eq!(simplex_insertion_pairs(s).len(), 30);
        }
    }
}

#[test]
fn dilute_counts_at_small_n() {
    for (_, t) in fixtures::all() {
        let n = t.simplices.len();
        assert_eq!(dilute_config_count(0, &t).unwrap(), 1.into());
        // the δ subtraction is a leading-order device: on small
        // triangulations the n = 1 value can be negative
        let delta = intersecting_pairs(&t) as i64;
        assert_eq!(dilute_config_count(1, &t).unwrap(), (15 * n as i64 - delta).into());
        assert!(dilute_config_count(n + 1, &t).is_err());
    }
}
