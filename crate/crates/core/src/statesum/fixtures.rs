//! Bundled triangulations.

use super::triangulation::{load_triangulation, Triangulation4};

pub const S4: &str = include_str!("../../fixtures/s4.tri");
pub const S4_REFINED: &str = include_str!("../../fixtures/s4_refined.tri");
pub const CP2: &str = include_str!("../../fixtures/cp2.tri");
pub const S2XS2: &str = include_str!("../../fixtures/s2xs2.tri");

/// Boundary of the 5-simplex: the 4-sphere on 6 vertices.
pub fn s4() -> Triangulation4 {
    load_triangulation(S4).expect("bundled fixture")
}

/// The 4-sphere after one 1-5 move.
pub fn s4_refined() -> Triangulation4 {
    load_triangulation(S4_REFINED).expect("bundled fixture")
}

/// The 9-vertex complex projective plane.
pub fn cp2() -> Triangulation4 {
    load_triangulation(CP2).expect("bundled fixture")
}

/// `S² × S²` as the staircase triangulation of `∂Δ³ × ∂Δ³`.
pub fn s2xs2() -> Triangulation4 {
    load_triangulation(S2XS2).expect("bundled fixture")
}

/// Every bundled fixture with a short name.
pub fn all() -> Vec<(&'static str, Triangulation4)> {
    vec![
        ("s4", s4()),
        ("s4-refined", s4_refined()),
        ("cp2", cp2()),
        ("s2xs2", s2xs2()),
    ]
}
