//! Perturbative corrections around the Crane–Yetter state sum.
//!
//! The perturbation inserts adjoint-coloured edges between pairs of
//! triangles of a 4-simplex that meet in a single vertex. In the dilute-gas
//! limit only the universal coefficients `z₂`, `z₃` survive, and the
//! partition function becomes `Z(M, g) = e^{−g z₂} Z₀(M)` with
//! `g = (λ − λ₀)² N`.

use num_bigint::BigInt;
use num_complex::Complex64;
use num_integer::binomial;
use num_rational::Ratio;
use num_traits::ToPrimitive;

use crate::error::{Error, Result};
use crate::qalgebra::{global_constants, Level, QComplex, SpinLabel};
use crate::recoupling::{eval_insertion_graph, theta, InsertionGraph, InsertionKind, Triple};
use crate::statesum::Triangulation4;

/// Weight of the second-order term per simplex.
pub const Z2_PREFACTOR: f64 = 3.0 / 5.0;
/// Weight of the third-order terms: `30 / (3! · 5³)`.
pub const Z3_PREFACTOR: f64 = 30.0 / (6.0 * 125.0);
/// Power of `η` multiplying the two-circle graphs (`Γ₂`, `Γ₃`).
pub const ETA_POWER_TWO_CIRCLES: i32 = -2;
/// Power of `η` multiplying the three-circle chain `Γ₃′`.
pub const ETA_POWER_THREE_CIRCLES: i32 = -3;
/// Ordered pairs of triangles of one 4-simplex meeting in one vertex.
pub const INSERTIONS_PER_SIMPLEX: usize = 30;

#[derive(Clone, Debug)]
pub struct ZCoefficients {
    pub z1: QComplex,
    pub z2: QComplex,
    pub z3: QComplex,
    pub level: Level,
}

fn adjoint_level(level: &Level) -> Result<()> {
    if level.is_admissible(SpinLabel::ADJOINT.0) {
        Ok(())
    } else {
        Err(Error::AdjointExcluded(level.r()))
    }
}

/// `Σ_Λ Δ_Λ θ(A, Λ, Λ)`.
fn dressed_theta_sum(level: &Level) -> f64 {
    level
        .labels()
        .map(|l| level.dim(l.0) * theta(Triple::new(2, l.0, l.0), level).re())
        .sum()
}

/// `z₂ = (3/5) η⁻² Δ_A⁻¹ (Σ_Λ Δ_Λ θ(A,Λ,Λ))²`.
pub fn z2_closed_form(level: &Level) -> Result<QComplex> {
    adjoint_level(level)?;
    let eta = global_constants(level).eta.re();
    let s = dressed_theta_sum(level);
    Ok(QComplex::real(
        Z2_PREFACTOR * eta.powi(ETA_POWER_TWO_CIRCLES) * s * s / level.dim(2),
    ))
}

/// `z₂` summed directly over evaluated double dumbbells:
/// `(3/5) η⁻² Σ_{Λ,Λ′} Δ_Λ Δ_Λ′ ⟨Γ₂(Λ,Λ′)⟩`.
pub fn z2_from_graphs(level: &Level) -> Result<QComplex> {
    adjoint_level(level)?;
    let eta = global_constants(level).eta.re();
    let mut s = Complex64::new(0.0, 0.0);
    for a in level.labels() {
        for b in level.labels() {
            let g = InsertionGraph::new(InsertionKind::Gamma2, &[a.0, b.0])?;
            s += level.dim(a.0) * level.dim(b.0) * eval_insertion_graph(&g, level)?.value();
        }
    }
    Ok(QComplex::new(Z2_PREFACTOR * eta.powi(ETA_POWER_TWO_CIRCLES) * s))
}

/// The two bracketed sums of `z₃`: over `Δ_Λ Δ_Λ′ ⟨Γ₃(Λ,Λ′)⟩` and over
/// `Δ_Λ Δ_Λ′ Δ_Λ″ ⟨Γ₃′(Λ,Λ′,Λ″)⟩`.
pub fn z3_terms(level: &Level) -> Result<(Complex64, Complex64)> {
    adjoint_level(level)?;
    let labels: Vec<u32> = level.labels().map(|l| l.0).collect();
    let mut two = Complex64::new(0.0, 0.0);
    let mut three = Complex64::new(0.0, 0.0);
    for &a in &labels {
        for &b in &labels {
            let g = InsertionGraph::new(InsertionKind::Gamma3, &[a, b])?;
            two += level.dim(a) * level.dim(b) * eval_insertion_graph(&g, level)?.value();
            for &c in &labels {
                let g = InsertionGraph::new(InsertionKind::Gamma3Chain, &[a, b, c])?;
                three += level.dim(a) * level.dim(b) * level.dim(c) * eval_insertion_graph(&g, level)?.value();
            }
        }
    }
    Ok((two, three))
}

pub fn z_coefficients(level: &Level) -> Result<ZCoefficients> {
    let z2 = z2_closed_form(level)?;
    let eta = global_constants(level).eta.re();
    let (two, three) = z3_terms(level)?;
    let z3 = Z3_PREFACTOR * (eta.powi(ETA_POWER_TWO_CIRCLES) * two + eta.powi(ETA_POWER_THREE_CIRCLES) * three);
    Ok(ZCoefficients {
        z1: QComplex::real(0.0),
        z2,
        z3: QComplex::new(z3),
        level: level.clone(),
    })
}

fn shared_vertices(a: &[u32; 3], b: &[u32; 3]) -> usize {
    a.iter().filter(|v| b.contains(v)).count()
}

/// Ordered pairs of triangles of `simplex` that have exactly one vertex in
/// common, by brute force over its ten triangles.
pub fn simplex_insertion_pairs(simplex: [u32; 5]) -> Vec<([u32; 3], [u32; 3])> {
    let mut tris = Vec::with_capacity(10);
    for i in 0..5 {
        for j in i + 1..5 {
            for k in j + 1..5 {
                tris.push([simplex[i], simplex[j], simplex[k]]);
            }
        }
    }
    let mut out = Vec::new();
    for a in &tris {
        for b in &tris {
            if shared_vertices(a, b) == 1 {
                out.push((*a, *b));
            }
        }
    }
    out
}

/// Total number of insertions, `30 N`.
pub fn insertion_count(t: &Triangulation4) -> usize {
    t.simplices.iter().map(|&s| simplex_insertion_pairs(s).len()).sum()
}

/// Pairs of distinct 4-simplices whose vertex sets intersect.
pub fn intersecting_pairs(t: &Triangulation4) -> usize {
    let s = &t.simplices;
    let mut n = 0;
    for i in 0..s.len() {
        for j in i + 1..s.len() {
            if s[i].iter().any(|v| s[j].contains(v)) {
                n += 1;
            }
        }
    }
    n
}

/// `15ⁿ C(N, n) − δ` dilute-gas configurations with `n` occupied simplices;
/// the empty configuration is counted once.
pub fn dilute_config_count(n: usize, t: &Triangulation4) -> Result<BigInt> {
    let simplices = t.simplices.len();
    if n > simplices {
        return Err(Error::TooManyInsertions { n, simplices });
    }
    if n == 0 {
        return Ok(BigInt::from(1));
    }
    let choose = binomial(BigInt::from(simplices), BigInt::from(n));
    Ok(BigInt::from(15).pow(n as u32) * choose - BigInt::from(intersecting_pairs(t)))
}

/// `Z(M, g) = e^{−g z₂} Z₀(M)`.
pub fn partition_dilute(z0: QComplex, g: f64, level: &Level) -> Result<QComplex> {
    let z2 = z2_closed_form(level)?.value();
    Ok(QComplex::new((-g * z2).exp() * z0.value()))
}

#[derive(Clone, Copy, Debug)]
pub struct PartialSum {
    pub lhs: Complex64,
    pub rhs: Complex64,
    pub residual: f64,
}

/// Truncated perturbation series at `P = √N` against its resummed form
/// `[1 + i z₃ (λ−λ₀)³] e^{−g z₂}`.
pub fn partial_sum_asymptotics(lambda: Complex64, lambda0: Complex64, n: u64, level: &Level) -> Result<PartialSum> {
    let z = z_coefficients(level)?;
    partial_sum_with(lambda, lambda0, n, z.z2.value(), z.z3.value())
}

/// [`partial_sum_asymptotics`] with explicit `z₂`, `z₃`.
pub fn partial_sum_with(
    lambda: Complex64,
    lambda0: Complex64,
    n: u64,
    z2: Complex64,
    z3: Complex64,
) -> Result<PartialSum> {
    if n == 0 {
        return Err(Error::InvalidArgument("the simplex count N must be at least 1".into()));
    }
    let i = Complex64::i();
    let dl = lambda - lambda0;
    let nf = n as f64;
    let p = nf.sqrt();
    // i^{2m} (λ−λ₀)^{2m} z₂^m N^m / m! built term by term
    let step = i * i * dl * dl * z2 * nf;
    let mut lhs = Complex64::new(0.0, 0.0);
    let mut term = Complex64::new(1.0, 0.0);
    let mut m = 0u64;
    while (m as f64) <= p / 2.0 {
        lhs += term;
        m += 1;
        term *= step / m as f64;
    }
    let mut term = i.powi(3) * dl.powi(3) * z3;
    let mut m = 0u64;
    while (m as f64) <= (p - 3.0) / 2.0 {
        lhs += term;
        m += 1;
        term *= step / m as f64;
    }
    let g = dl * dl * nf;
    let rhs = (1.0 + i * z3 * dl.powi(3)) * (-g * z2).exp();
    Ok(PartialSum {
        lhs,
        rhs,
        residual: (lhs - rhs).norm(),
    })
}

/// `R(k) = k(2k+1) / (4(k+2))`, the exponent of the signature phase at
/// level `k = r − 2`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CyPhase {
    pub k: u32,
    pub r: Ratio<i64>,
}

impl CyPhase {
    /// `e^{−iπσR(k)}`.
    pub fn phase(&self, sigma: i64) -> QComplex {
        let r = self.r.to_f64().expect("small rational");
        QComplex::new(Complex64::from_polar(1.0, -std::f64::consts::PI * sigma as f64 * r))
    }
}

pub fn cy_phase(k: u32) -> Result<CyPhase> {
    if k == 0 {
        return Err(Error::InvalidArgument("the level k must be at least 1".into()));
    }
    let k64 = k as i64;
    Ok(CyPhase {
        k,
        r: Ratio::new(k64 * (2 * k64 + 1), 4 * (k64 + 2)),
    })
}

/// `R` continued to complex arguments.
fn r_of(x: Complex64) -> Complex64 {
    x * (2.0 * x + 1.0) / (4.0 * (x + 2.0))
}

/// `E(M, λ) = exp(−i c₂/λ − iπ σ R(4π/λ))`. The formula depends on `λ`
/// alone; `level` only has to be valid.
pub fn ff_prefactor(lambda: Complex64, c2: f64, sigma: i64, _level: &Level) -> Result<QComplex> {
    if lambda == Complex64::new(0.0, 0.0) {
        return Err(Error::ZeroCoupling);
    }
    let i = Complex64::i();
    let pi = std::f64::consts::PI;
    let h = r_of(4.0 * pi / lambda);
    Ok(QComplex::new((-i * c2 / lambda - i * pi * sigma as f64 * h).exp()))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::statesum::fixtures;

    fn lv(r: u32) -> Level {
        Level::new(r).unwrap()
    }

    #[test]
    fn z2_two_ways() {
        for r in 4..=8 {
            let a = z2_closed_form(&lv(r)).unwrap().value();
            let b = z2_from_graphs(&lv(r)).unwrap().value();
            assert!((a - b).norm() <= 1e-10 * a.norm().max(1.0), "r={r}: {a} {b}");
            assert!(a.norm() > 0.0);
        }
    }

    #[test]
    fn z2_at_four_uses_only_the_fundamental() {
        let l = lv(4);
        let eta = global_constants(&l).eta.re();
        let t = theta(Triple::new(2, 1, 1), &l).re();
        let want = 0.6 / eta / eta * (l.dim(1) * t).powi(2) / l.dim(2);
        assert!((z2_closed_form(&l).unwrap().re() - want).abs() < 1e-12);
    }

    #[test]
    fn adjoint_is_needed() {
        assert_eq!(z_coefficients(&lv(3)).unwrap_err(), Error::AdjointExcluded(3));
        assert!(partition_dilute(QComplex::real(1.0), 0.1, &lv(3)).is_err());
    }

    #[test]
    fn z1_vanishes() {
        for r in 4..=6 {
            assert_eq!(z_coefficients(&lv(r)).unwrap().z1.value(), Complex64::new(0.0, 0.0));
        }
    }

    #[test]
    fn insertion_pairs() {
        for (_, t) in fixtures::all() {
            for &s in &t.simplices {
                let pairs = simplex_insertion_pairs(s);
                assert_eq!(pairs.len(), INSERTIONS_PER_SIMPLEX);
                assert!(pairs.iter().all(|(a, b)| shared_vertices(a, b) == 1));
            }
        }
        assert_eq!(insertion_count(&fixtures::s4()), 180);
        let unordered = simplex_insertion_pairs([0, 1, 2, 3, 4])
            .iter()
            .filter(|(a, b)| a < b)
            .count();
        assert_eq!(unordered, 15);
    }

    #[test]
    fn dilute_counts() {
        let s4 = fixtures::s4();
        assert_eq!(intersecting_pairs(&s4), 15);
        assert_eq!(dilute_config_count(0, &s4).unwrap(), BigInt::from(1));
        assert_eq!(dilute_config_count(1, &s4).unwrap(), BigInt::from(75));
        assert_eq!(dilute_config_count(6, &s4).unwrap(), BigInt::from(15).pow(6) - 15);
        assert_eq!(
            dilute_config_count(7, &s4).unwrap_err(),
            Error::TooManyInsertions { n: 7, simplices: 6 }
        );
    }

    #[test]
    fn dilute_partition_function() {
        let l = lv(5);
        let z0 = QComplex::real(1.0);
        assert_eq!(
            partition_dilute(z0.clone(), 0.0, &l).unwrap().value(),
            Complex64::new(1.0, 0.0)
        );
        let near = partition_dilute(z0.clone(), 1e-8, &l).unwrap().value();
        assert!((near - 1.0).norm() < 1e-6);
        let a = partition_dilute(z0.clone(), 0.2, &l).unwrap().value();
        let b = partition_dilute(z0.clone(), 0.3, &l).unwrap().value();
        let ab = partition_dilute(z0, 0.5, &l).unwrap().value();
        assert!((a * b - ab).norm() < 1e-12);
    }

    #[test]
    fn partial_sums() {
        let l = lv(5);
        let lam0 = Complex64::new(0.3, 0.0);
        let same = partial_sum_asymptotics(lam0, lam0, 100, &l).unwrap();
        assert!((same.lhs - 1.0).norm() < 1e-15 && (same.rhs - 1.0).norm() < 1e-15);
        let mut last = f64::INFINITY;
        for n in [100u64, 10_000, 1_000_000] {
            let dl = (0.1 / n as f64).sqrt();
            let p = partial_sum_asymptotics(lam0 + dl, lam0, n, &l).unwrap();
            assert!(p.residual <= last);
            last = p.residual;
        }
        assert!(last < 1e-3);
    }

    #[test]
    fn partial_sum_without_cubic_term_is_the_exponential_series() {
        let z2 = Complex64::new(0.7, -0.2);
        let n = 400u64;
        let dl = Complex64::new(0.05, 0.0);
        let p = partial_sum_with(dl, Complex64::new(0.0, 0.0), n, z2, Complex64::new(0.0, 0.0)).unwrap();
        let x = -dl * dl * z2 * n as f64;
        let mut want = Complex64::new(0.0, 0.0);
        let mut term = Complex64::new(1.0, 0.0);
        for m in 0..=10u32 {
            want += term;
            term *= x / (m + 1) as f64;
        }
        assert!((p.lhs - want).norm() < 1e-12);
        assert!(partial_sum_with(dl, dl, 0, z2, z2).is_err());
    }

    #[test]
    fn signature_phase_exponent() {
        assert_eq!(cy_phase(1).unwrap().r, Ratio::new(1, 4));
        assert_eq!(cy_phase(2).unwrap().r, Ratio::new(5, 8));
        for k in 1..10 {
            assert!((cy_phase(k).unwrap().phase(0).value() - 1.0).norm() < 1e-15);
        }
        assert!(cy_phase(0).is_err());
    }

    #[test]
    fn ff_prefactor_values() {
        let l = lv(5);
        let one = ff_prefactor(Complex64::new(1.3, 0.0), 0.0, 0, &l).unwrap().value();
        assert!((one - 1.0).norm() < 1e-15);
        let lam = Complex64::new(4.0 * std::f64::consts::PI, 0.0);
        let v = ff_prefactor(lam, 0.0, 1, &l).unwrap().value();
        assert!((v - Complex64::from_polar(1.0, -std::f64::consts::PI / 4.0)).norm() < 1e-12);
        let u = ff_prefactor(Complex64::new(0.7, 0.0), 2.5, -3, &l).unwrap();
        assert!((u.norm() - 1.0).abs() < 1e-12);
        assert_eq!(
            ff_prefactor(Complex64::new(0.0, 0.0), 1.0, 1, &l).unwrap_err(),
            Error::ZeroCoupling
        );
    }
}
