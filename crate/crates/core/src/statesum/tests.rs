use super::*;
use crate::error::Error;
use crate::qalgebra::Level;

fn lv(r: u32) -> Level {
    Level::new(r).unwrap()
}

fn z(t: &Triangulation4, r: u32, strategy: Strategy) -> num_complex::Complex64 {
    crane_yetter(t, &lv(r), strategy).unwrap().value()
}

#[test]
fn fixtures_have_expected_shapes() {
    let shapes = [
        ("s4", [6, 15, 20, 15, 6], 2),
        ("s4-refined", [7, 20, 30, 25, 10], 2),
        ("cp2", [9, 36, 84, 90, 36], 3),
        ("s2xs2", [16, 84, 216, 240, 96], 4),
    ];
    for ((name, t), (want, f, chi)) in fixtures::all().into_iter().zip(shapes) {
        assert_eq!(name, want);
        assert_eq!(t.f_vector(), f, "{name}");
        assert_eq!(t.euler_characteristic(), chi, "{name}");
        assert!(t.orientation.is_some(), "{name}");
    }
}

#[test]
fn normalisation_exponents() {
    assert_eq!(eta_exponent(&fixtures::s4()), -10.0);
    assert_eq!(eta_exponent(&fixtures::s4_refined()), -14.0);
    assert_eq!(eta_exponent(&fixtures::cp2()), -28.5);
}

#[test]
fn sphere_is_one() {
    let s4 = fixtures::s4();
    for r in 3..=5 {
        let v = z(&s4, r, Strategy::Contract);
        assert!((v - 1.0).norm() < 1e-9, "r={r}: {v}");
    }
}

#[test]
fn strategies_agree() {
    let s4 = fixtures::s4();
    let a = z(&s4, 3, Strategy::Enumerate);
    let b = z(&s4, 3, Strategy::EnumerateUnpruned);
    let c = z(&s4, 3, Strategy::Contract);
    assert!((a - b).norm() < 1e-12 && (a - c).norm() < 1e-12, "{a} {b} {c}");
    let threaded = Options {
        threads: 4,
        ..Options::default()
    };
    let d = crane_yetter_with(&s4, &lv(4), &threaded).unwrap().value();
    assert!((d - z(&s4, 4, Strategy::Contract)).norm() < 1e-12);
}

#[test]
fn one_five_move_preserves_the_sum() {
    let s4 = fixtures::s4();
    let moved = pachner_move(&s4, PachnerMove::OneFive, &s4.sorted_simplex(0)).unwrap();
    assert_eq!(moved.f_vector(), [7, 20, 30, 25, 10]);
    for r in 3..=4 {
        let before = z(&s4, r, Strategy::Contract);
        let after = z(&moved, r, Strategy::Contract);
        assert!((before - after).norm() < 1e-9, "r={r}: {before} vs {after}");
    }
}

#[test]
fn two_four_move_preserves_the_sum() {
    let t = fixtures::s4_refined();
    let moved = t
        .tetrahedra
        .iter()
        .find_map(|q| pachner_move(&t, PachnerMove::TwoFour, q).ok())
        .expect("some facet admits a 2-4 move");
    assert_eq!(moved.f_vector()[4], t.f_vector()[4] + 2);
    let before = z(&t, 3, Strategy::Contract);
    let after = z(&moved, 3, Strategy::Contract);
    assert!((before - after).norm() < 1e-9, "{before} vs {after}");
}

#[test]
fn signature_check() {
    let s4 = fixtures::s4();
    let ok = check_signature(&s4, &lv(3), &Options::default()).unwrap();
    assert!(ok.pass);
    let mut wrong = s4.clone();
    wrong.signature = Some(1);
    assert!(!check_signature(&wrong, &lv(3), &Options::default()).unwrap().pass);
    wrong.signature = None;
    assert_eq!(
        check_signature(&wrong, &lv(3), &Options::default()).unwrap_err(),
        Error::MissingSignature
    );
}

#[test]
fn unorientable_input_is_rejected() {
    let mut t = fixtures::s4();
    t.orientation = None;
    assert_eq!(
        crane_yetter(&t, &lv(3), Strategy::Contract).unwrap_err(),
        Error::NonOrientable
    );
}

#[test]
fn contraction_respects_its_cap() {
    let opts = Options {
        cap: 16,
        ..Options::default()
    };
    let err = crane_yetter_with(&fixtures::s4(), &lv(4), &opts).unwrap_err();
    assert!(matches!(err, Error::ResourceCap { .. }), "{err:?}");
}

#[test]
fn handle_counts_of_the_sphere() {
    let h = handle_counts(&fixtures::s4());
    assert_eq!((h.h1, h.h2, h.h3, h.h4), (10, 20, 15, 6));
}

#[test]
fn text_round_trip() {
    let t = fixtures::cp2();
    let back = load_triangulation(&t.to_text()).unwrap();
    assert_eq!(back.simplices, t.simplices);
    assert_eq!(back.signature, Some(1));
}

#[test]
fn malformed_triangulations() {
    assert!(matches!(
        load_triangulation("simplex 0 1 2 3\n"),
        Err(Error::Parse { line: 1, .. })
    ));
    assert!(matches!(
        load_triangulation("frob 1\n"),
        Err(Error::Parse { line: 1, .. })
    ));
    assert!(matches!(
        load_triangulation("simplex 0 1 2 3 3\n"),
        Err(Error::RepeatedVertex { .. })
    ));
    assert!(matches!(
        load_triangulation("simplex 0 1 2 3 4\n"),
        Err(Error::NonManifoldFacet { .. })
    ));
    assert_eq!(
        load_triangulation("# nothing\n").unwrap_err(),
        Error::EmptyTriangulation
    );
}
