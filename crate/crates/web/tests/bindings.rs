use spinfoam_web::{dilute_gas, state_sum, symbol};

#[test]
fn theta_symbol() {
    assert_eq!(
        symbol("theta", "2,1,1", 5).unwrap(),
        "theta = 1.618033988750+0.000000000000i\n"
    );
}

#[test]
fn symbol_errors_are_one_line() {
    let e = symbol("theta", "9,1,1", 5).unwrap_err();
    assert!(!e.contains('\n') && e.contains("not admissible"), "{e}");
}

#[test]
fn sphere_from_name_and_text() {
    assert_eq!(
        state_sum("s4", 4, "contract").unwrap(),
        "Z0 = 1.000000000000+0.000000000000i\n"
    );
    let text = spinfoam::statesum::fixtures::s4().to_text();
    assert_eq!(
        state_sum(&text, 3, "enumerate").unwrap(),
        "Z0 = 1.000000000000+0.000000000000i\n"
    );
    assert!(state_sum("simplex 0 1 2 3 4\n", 3, "contract").is_err());
}

#[test]
fn dilute_gas_rows() {
    let out = dilute_gas(5, 0.3, "1").unwrap();
    assert!(out.lines().any(|l| l.starts_with("Z ")), "{out}");
    assert!(dilute_gas(3, 0.3, "1").is_err());
}
