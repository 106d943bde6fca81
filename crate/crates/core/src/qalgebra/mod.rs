//! Scalar layer: quantum integers, admissible spins, quantum dimensions,
//! ribbon twists and the global constants at level `r`.
//!
//! Conventions are those of Kauffman–Lins: `A = exp(iπ/2r)`, `q = A²`,
//! the loop value is `−A² − A⁻²`, and the signed quantum dimension is
//! `Δ_n = (−1)ⁿ [n+1]`.

mod cyclotomic;

use std::f64::consts::PI;
use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};

use num_complex::Complex64;

pub use cyclotomic::{cyclotomic_polynomial, Cyclotomic, CyclotomicField};

use crate::error::{Error, Result};

/// Root-of-unity level: `q = exp(iπ/r)` with `r ≥ 3`.
///
/// Holds precomputed quantum integers and factorials so that the hot paths
/// of the recoupling layer are table lookups.
#[derive(Clone, Debug)]
pub struct Level {
    r: u32,
    qint: Vec<f64>,
    qfact: Vec<f64>,
    exact: Option<CyclotomicField>,
}

impl PartialEq for Level {
    fn eq(&self, other: &Self) -> bool {
        self.r == other.r
    }
}

impl Level {
    pub fn new(r: u32) -> Result<Level> {
        if r < 3 {
            return Err(Error::InvalidLevel(r));
        }
        let span = 4 * r as usize + 4;
        let s1 = (PI / r as f64).sin();
        let mut qint = Vec::with_capacity(span);
        for n in 0..span {
            if (n as u32).is_multiple_of(r) {
                qint.push(0.0);
            } else {
                qint.push((n as f64 * PI / r as f64).sin() / s1);
            }
        }
        let mut qfact = Vec::with_capacity(span);
        let mut acc = 1.0;
        qfact.push(1.0);
        for n in 1..span {
            acc *= qint[n];
            qfact.push(acc);
        }
        Ok(Level {
            r,
            qint,
            qfact,
            exact: None,
        })
    }

    /// Enables exact cyclotomic forms on values returned by this module.
    pub fn with_exact(mut self) -> Level {
        self.exact = Some(CyclotomicField::new(4 * self.r));
        self
    }

    pub fn r(&self) -> u32 {
        self.r
    }

    /// The WRT level `k = r − 2`.
    pub fn k(&self) -> u32 {
        self.r - 2
    }

    /// Largest admissible label `r − 2`.
    pub fn max_label(&self) -> u32 {
        self.r - 2
    }

    pub fn exact_field(&self) -> Option<&CyclotomicField> {
        self.exact.as_ref()
    }

    /// `[n]` as a real number; defined for every integer.
    pub fn qint(&self, n: i64) -> f64 {
        let r2 = 2 * self.r as i64;
        let m = n.rem_euclid(r2);
        // [n + 2r] = [n]
        if (m as usize) < self.qint.len() {
            self.qint[m as usize]
        } else {
            (m as f64 * PI / self.r as f64).sin() / (PI / self.r as f64).sin()
        }
    }

    /// `[n]! = [1][2]…[n]`; zero once `n ≥ r`.
    pub fn qfact(&self, n: u32) -> f64 {
        if n >= self.r {
            return 0.0;
        }
        self.qfact[n as usize]
    }

    /// `A^k` with `A = exp(iπ/2r)`.
    pub fn a_pow(&self, k: i64) -> Complex64 {
        let m = k.rem_euclid(4 * self.r as i64) as f64;
        Complex64::from_polar(1.0, m * PI / (2.0 * self.r as f64))
    }

    /// Signed dimension `Δ_n = (−1)ⁿ[n+1]` as a raw float.
    pub fn dim(&self, n: u32) -> f64 {
        let v = self.qint(n as i64 + 1);
        if n.is_multiple_of(2) {
            v
        } else {
            -v
        }
    }

    /// Twist `μ_n = (−1)ⁿ A^{n(n+2)}` as a raw complex number.
    pub fn twist_raw(&self, n: u32) -> Complex64 {
        let phase = self.a_pow((n * (n + 2)) as i64);
        if n.is_multiple_of(2) {
            phase
        } else {
            -phase
        }
    }

    pub fn is_admissible(&self, n: u32) -> bool {
        n <= self.r - 2
    }

    pub fn check(&self, n: SpinLabel) -> Result<()> {
        if self.is_admissible(n.0) {
            Ok(())
        } else {
            Err(Error::InadmissibleLabel {
                label: n.0,
                level: self.r,
            })
        }
    }

    /// Admissible labels `0..=r-2`.
    pub fn labels(&self) -> impl Iterator<Item = SpinLabel> + Clone {
        (0..=self.r - 2).map(SpinLabel)
    }
}

/// Irrep label stored as twice the spin: `n = 2j`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct SpinLabel(pub u32);

impl SpinLabel {
    pub const TRIVIAL: SpinLabel = SpinLabel(0);
    pub const FUNDAMENTAL: SpinLabel = SpinLabel(1);
    /// The adjoint representation of su(2): spin one.
    pub const ADJOINT: SpinLabel = SpinLabel(2);

    pub fn twice_spin(self) -> u32 {
        self.0
    }

    pub fn spin(self) -> f64 {
        self.0 as f64 / 2.0
    }

    pub fn admissible_at(self, level: &Level) -> bool {
        level.is_admissible(self.0)
    }
}

impl fmt::Display for SpinLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

impl From<u32> for SpinLabel {
    fn from(n: u32) -> Self {
        SpinLabel(n)
    }
}

/// Complex scalar with an optional exact cyclotomic form.
#[derive(Clone, Debug)]
pub struct QComplex {
    value: Complex64,
    exact: Option<Cyclotomic>,
}

impl QComplex {
    pub fn new(value: Complex64) -> QComplex {
        QComplex { value, exact: None }
    }

    pub fn real(x: f64) -> QComplex {
        QComplex::new(Complex64::new(x, 0.0))
    }

    pub fn from_exact(exact: Cyclotomic) -> QComplex {
        QComplex {
            value: exact.to_complex(),
            exact: Some(exact),
        }
    }

    pub fn value(&self) -> Complex64 {
        self.value
    }

    pub fn re(&self) -> f64 {
        self.value.re
    }

    pub fn im(&self) -> f64 {
        self.value.im
    }

    pub fn norm(&self) -> f64 {
        self.value.norm()
    }

    pub fn exact(&self) -> Option<&Cyclotomic> {
        self.exact.as_ref()
    }

    /// Largest relative gap between the exact form and the float, if any.
    pub fn exact_discrepancy(&self) -> Option<f64> {
        self.exact.as_ref().map(|e| {
            let d = (e.to_complex() - self.value).norm();
            d / self.value.norm().max(1.0)
        })
    }

    pub fn conj(&self) -> QComplex {
        // exact conjugation would need the Galois action; drop the exact form
        QComplex::new(self.value.conj())
    }

    pub fn inv(&self) -> QComplex {
        QComplex {
            value: self.value.inv(),
            exact: self.exact.as_ref().and_then(Cyclotomic::inv),
        }
    }

    pub fn powi(&self, e: i32) -> QComplex {
        let value = self.value.powi(e);
        let exact = self.exact.as_ref().and_then(|x| {
            if e >= 0 {
                Some(x.pow(e as u32))
            } else {
                x.inv().map(|y| y.pow(e.unsigned_abs()))
            }
        });
        QComplex { value, exact }
    }
}

impl From<Complex64> for QComplex {
    fn from(value: Complex64) -> Self {
        QComplex::new(value)
    }
}

impl From<f64> for QComplex {
    fn from(x: f64) -> Self {
        QComplex::real(x)
    }
}

impl PartialEq for QComplex {
    fn eq(&self, other: &Self) -> bool {
        self.value == other.value
    }
}

fn zip_exact(
    a: &Option<Cyclotomic>,
    b: &Option<Cyclotomic>,
    f: impl FnOnce(&Cyclotomic, &Cyclotomic) -> Option<Cyclotomic>,
) -> Option<Cyclotomic> {
    match (a, b) {
        (Some(x), Some(y)) if x.order() == y.order() => f(x, y),
        _ => None,
    }
}

impl Add for QComplex {
    type Output = QComplex;
    fn add(self, rhs: QComplex) -> QComplex {
        QComplex {
            value: self.value + rhs.value,
            exact: zip_exact(&self.exact, &rhs.exact, |x, y| Some(x + y)),
        }
    }
}

impl Sub for QComplex {
    type Output = QComplex;
    fn sub(self, rhs: QComplex) -> QComplex {
        QComplex {
            value: self.value - rhs.value,
            exact: zip_exact(&self.exact, &rhs.exact, |x, y| Some(x - y)),
        }
    }
}

impl Mul for QComplex {
    type Output = QComplex;
    fn mul(self, rhs: QComplex) -> QComplex {
        QComplex {
            value: self.value * rhs.value,
            exact: zip_exact(&self.exact, &rhs.exact, |x, y| Some(x * y)),
        }
    }
}

impl Div for QComplex {
    type Output = QComplex;
    fn div(self, rhs: QComplex) -> QComplex {
        QComplex {
            value: self.value / rhs.value,
            exact: zip_exact(&self.exact, &rhs.exact, |x, y| y.inv().map(|yi| x * &yi)),
        }
    }
}

impl Neg for QComplex {
    type Output = QComplex;
    fn neg(self) -> QComplex {
        QComplex {
            value: -self.value,
            exact: self.exact.map(|x| -x),
        }
    }
}

/// Renders `re±im i` with a fixed number of decimals; negative zero prints
/// as `+0`.
pub fn format_complex(z: Complex64, decimals: usize) -> String {
    let clean = |x: f64| {
        let s = format!("{x:.decimals$}");
        if s.trim_start_matches('-').chars().all(|c| c == '0' || c == '.') {
            s.trim_start_matches('-').to_string()
        } else {
            s
        }
    };
    let re = clean(z.re);
    let im = clean(z.im);
    if im.starts_with('-') {
        format!("{re}{im}i")
    } else {
        format!("{re}+{im}i")
    }
}

fn exact_qint(field: &CyclotomicField, n: i64) -> Cyclotomic {
    // [n] = Σ_{j=0}^{n-1} q^{n-1-2j}, q = ζ²
    if n == 0 {
        return field.zero();
    }
    let m = n.abs();
    let mut acc = field.zero();
    for j in 0..m {
        acc = &acc + &field.zeta_pow(2 * (m - 1 - 2 * j));
    }
    if n < 0 {
        -acc
    } else {
        acc
    }
}

/// The quantum integer `[n] = sin(nπ/r)/sin(π/r)`.
pub fn quantum_integer(n: i64, level: &Level) -> QComplex {
    let value = Complex64::new(level.qint(n), 0.0);
    QComplex {
        value,
        exact: level.exact_field().map(|f| exact_qint(f, n)),
    }
}

/// Labels with nonzero quantum dimension at this level, ascending.
pub fn admissible_spins(level: &Level) -> Vec<SpinLabel> {
    level.labels().collect()
}

/// Signed quantum dimension `Δ_n = (−1)ⁿ[n+1]`.
pub fn quantum_dim(n: SpinLabel, level: &Level) -> Result<QComplex> {
    level.check(n)?;
    let q = quantum_integer(n.0 as i64 + 1, level);
    Ok(if n.0.is_multiple_of(2) { q } else { -q })
}

/// Unsigned quantum dimension `|Δ_n| = [n+1]`.
pub fn quantum_dim_unsigned(n: SpinLabel, level: &Level) -> Result<QComplex> {
    level.check(n)?;
    Ok(quantum_integer(n.0 as i64 + 1, level))
}

/// Ribbon twist `μ_n = (−1)ⁿ A^{n(n+2)}`.
pub fn twist(n: SpinLabel, level: &Level) -> Result<QComplex> {
    level.check(n)?;
    let value = level.twist_raw(n.0);
    let exact = level.exact_field().map(|f| {
        let p = f.zeta_pow((n.0 * (n.0 + 2)) as i64);
        if n.0.is_multiple_of(2) {
            p
        } else {
            -p
        }
    });
    Ok(QComplex { value, exact })
}

/// `η = Σ Δ²`, and the Gauss sums `κ± = Σ Δ² μ^{±1}`.
#[derive(Clone, Debug)]
pub struct GlobalConstants {
    pub eta: QComplex,
    pub kappa_plus: QComplex,
    pub kappa_minus: QComplex,
}

pub fn global_constants(level: &Level) -> GlobalConstants {
    let zero = || match level.exact_field() {
        Some(f) => QComplex::from_exact(f.zero()),
        None => QComplex::real(0.0),
    };
    let (mut eta, mut kp, mut km) = (zero(), zero(), zero());
    for n in level.labels() {
        let d = quantum_dim(n, level).expect("label from level");
        let d2 = d.clone() * d;
        let mu = twist(n, level).expect("label from level");
        eta = eta + d2.clone();
        kp = kp + d2.clone() * mu.clone();
        km = km + d2 * mu.inv();
    }
    GlobalConstants {
        eta,
        kappa_plus: kp,
        kappa_minus: km,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn close(a: f64, b: f64, tol: f64) -> bool {
        (a - b).abs() <= tol * b.abs().max(1.0)
    }

    #[test]
    fn level_below_three_is_rejected() {
        assert_eq!(Level::new(2).unwrap_err(), Error::InvalidLevel(2));
        assert!(Level::new(3).is_ok());
    }

    #[test]
    fn quantum_integer_examples() {
        for r in 3..12 {
            let l = Level::new(r).unwrap();
            assert!(close(quantum_integer(1, &l).re(), 1.0, 1e-15));
            assert!(quantum_integer(r as i64, &l).re().abs() < 1e-15);
        }
        let l4 = Level::new(4).unwrap();
        assert!(close(quantum_integer(2, &l4).re(), 2f64.sqrt(), 1e-15));
    }

    #[test]
    fn reflection_symmetry() {
        for r in 3..12 {
            let l = Level::new(r).unwrap();
            for n in 0..=r as i64 {
                let a = quantum_integer(n, &l).re();
                let b = quantum_integer(r as i64 - n, &l).re();
                assert!((a - b).abs() < 1e-12, "r={r} n={n}");
            }
        }
    }

    #[test]
    fn admissible_spin_sets() {
        let l3 = Level::new(3).unwrap();
        assert_eq!(admissible_spins(&l3), vec![SpinLabel(0), SpinLabel(1)]);
        let l4 = Level::new(4).unwrap();
        assert_eq!(admissible_spins(&l4), vec![SpinLabel(0), SpinLabel(1), SpinLabel(2)]);
        // n = 2 at r = 3 has [3]_3 = 0
        assert!(quantum_integer(3, &l3).re().abs() < 1e-15);
        assert!(quantum_dim(SpinLabel(2), &l3).is_err());
    }

    #[test]
    fn dimension_examples() {
        let l4 = Level::new(4).unwrap();
        assert!(close(quantum_dim(SpinLabel(0), &l4).unwrap().re(), 1.0, 1e-15));
        assert!(close(
            quantum_dim(SpinLabel(1), &l4).unwrap().re(),
            -(2f64.sqrt()),
            1e-15
        ));
        assert!(close(quantum_dim(SpinLabel(2), &l4).unwrap().re(), 1.0, 1e-14));
        assert_eq!(
            quantum_dim(SpinLabel(3), &l4).unwrap_err(),
            Error::InadmissibleLabel { label: 3, level: 4 }
        );
        for r in 3..12 {
            let l = Level::new(r).unwrap();
            for n in l.labels() {
                let d = quantum_dim(n, &l).unwrap();
                assert!(d.im() == 0.0 && d.re().abs() > 1e-12);
                assert!(close(quantum_dim_unsigned(n, &l).unwrap().re(), d.re().abs(), 1e-15));
            }
        }
    }

    #[test]
    fn twist_examples() {
        let l4 = Level::new(4).unwrap();
        let mu1 = twist(SpinLabel(1), &l4).unwrap().value();
        let expect = -Complex64::from_polar(1.0, 3.0 * PI / 8.0);
        assert!((mu1 - expect).norm() < 1e-15);
        let l5 = Level::new(5).unwrap();
        for n in l5.labels() {
            assert!((twist(n, &l5).unwrap().norm() - 1.0).abs() < 1e-15);
        }
        assert!((twist(SpinLabel(0), &l5).unwrap().value() - 1.0).norm() < 1e-15);
    }

    #[test]
    fn gauss_sum_identities() {
        let l3 = Level::new(3).unwrap();
        assert!(close(global_constants(&l3).eta.re(), 2.0, 1e-15));
        for r in 3..=10 {
            let l = Level::new(r).unwrap();
            let c = global_constants(&l);
            let eta = c.eta.value();
            let prod = c.kappa_plus.value() * c.kappa_minus.value();
            assert!((prod - eta).norm() / eta.norm() < 1e-10, "r={r}");
            assert!((c.kappa_plus.value().norm_sqr() - eta.re).abs() / eta.re < 1e-10);
        }
    }

    #[test]
    fn exact_forms_agree_with_floats() {
        for r in 3..=8 {
            let l = Level::new(r).unwrap().with_exact();
            for n in 0..=r as i64 {
                let q = quantum_integer(n, &l);
                assert!(q.exact_discrepancy().unwrap() < 1e-12);
            }
            for n in l.labels() {
                assert!(quantum_dim(n, &l).unwrap().exact_discrepancy().unwrap() < 1e-12);
                assert!(twist(n, &l).unwrap().exact_discrepancy().unwrap() < 1e-12);
            }
            let c = global_constants(&l);
            assert!(c.eta.exact_discrepancy().unwrap() < 1e-12);
            assert!(c.kappa_plus.exact_discrepancy().unwrap() < 1e-12);
            // κ⁺κ⁻ = η holds exactly in the field
            let prod = c.kappa_plus.exact().unwrap() * c.kappa_minus.exact().unwrap();
            assert_eq!(&prod, c.eta.exact().unwrap());
        }
    }

    #[test]
    fn complex_formatting() {
        assert_eq!(
            format_complex(Complex64::new(1.0, -0.0), 12),
            "1.000000000000+0.000000000000i"
        );
        assert_eq!(format_complex(Complex64::new(-0.5, -0.25), 3), "-0.500-0.250i");
        assert_eq!(format_complex(Complex64::new(-1e-20, 2.0), 2), "0.00+2.00i");
    }
}
