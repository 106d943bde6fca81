//! Exact arithmetic in the cyclotomic field `Q(ζ_N)`.
//!
//! Elements are stored as rational coefficient vectors in the power basis
//! `1, ζ, …, ζ^{φ(N)-1}`, always reduced modulo the cyclotomic polynomial
//! `Φ_N`. Only what the scalar layer needs is provided: ring operations,
//! inversion and conversion to a floating complex number.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::sync::Arc;

use num_bigint::BigInt;
use num_complex::Complex64;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

/// Integer cyclotomic polynomial `Φ_n`, lowest degree first.
pub fn cyclotomic_polynomial(n: u32) -> Vec<BigInt> {
    assert!(n >= 1);
    // x^n - 1
    let mut num = vec![BigInt::zero(); n as usize + 1];
    num[0] = BigInt::from(-1);
    num[n as usize] = BigInt::one();
    for d in 1..n {
        if n.is_multiple_of(d) {
            let phi_d = cyclotomic_polynomial(d);
            num = exact_div_monic(&num, &phi_d);
        }
    }
    num
}

fn exact_div_monic(num: &[BigInt], den: &[BigInt]) -> Vec<BigInt> {
    let mut rem = num.to_vec();
    let dn = den.len() - 1;
    let qn = rem.len() - 1 - dn;
    let mut quot = vec![BigInt::zero(); qn + 1];
    for k in (0..=qn).rev() {
        let c = rem[k + dn].clone();
        if c.is_zero() {
            continue;
        }
        for (j, dj) in den.iter().enumerate() {
            rem[k + j] -= &c * dj;
        }
        quot[k] = c;
    }
    debug_assert!(rem.iter().all(|c| c.is_zero()));
    quot
}

#[derive(Debug)]
struct Field {
    order: u32,
    modulus: Vec<BigRational>,
}

/// An element of `Q(ζ_N)` with `ζ = exp(2πi/N)`.
#[derive(Clone)]
pub struct Cyclotomic {
    field: Arc<Field>,
    coeffs: Vec<BigRational>,
}

impl PartialEq for Cyclotomic {
    fn eq(&self, other: &Self) -> bool {
        self.field.order == other.field.order && self.coeffs == other.coeffs
    }
}

impl fmt::Debug for Cyclotomic {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let terms: Vec<String> = self
            .coeffs
            .iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .map(|(k, c)| format!("({c})ζ^{k}"))
            .collect();
        if terms.is_empty() {
            write!(f, "0 in Q(ζ_{})", self.field.order)
        } else {
            write!(f, "{} in Q(ζ_{})", terms.join(" + "), self.field.order)
        }
    }
}

/// Factory for elements of a fixed cyclotomic field.
#[derive(Clone, Debug)]
pub struct CyclotomicField {
    field: Arc<Field>,
}

impl CyclotomicField {
    pub fn new(order: u32) -> Self {
        let modulus = cyclotomic_polynomial(order)
            .into_iter()
            .map(BigRational::from_integer)
            .collect();
        CyclotomicField {
            field: Arc::new(Field { order, modulus }),
        }
    }

    pub fn order(&self) -> u32 {
        self.field.order
    }

    pub fn degree(&self) -> usize {
        self.field.modulus.len() - 1
    }

    pub fn zero(&self) -> Cyclotomic {
        Cyclotomic {
            field: self.field.clone(),
            coeffs: vec![BigRational::zero(); self.degree()],
        }
    }

    pub fn from_integer(&self, n: i64) -> Cyclotomic {
        self.from_rational(BigRational::from_integer(BigInt::from(n)))
    }

    pub fn from_rational(&self, q: BigRational) -> Cyclotomic {
        let mut z = self.zero();
        z.coeffs[0] = q;
        z
    }

    /// `ζ^k` for any integer `k`.
    pub fn zeta_pow(&self, k: i64) -> Cyclotomic {
        let n = self.field.order as i64;
        let k = k.rem_euclid(n) as usize;
        let mut poly = vec![BigRational::zero(); k + 1];
        poly[k] = BigRational::one();
        Cyclotomic::reduce(self.field.clone(), poly)
    }
}

impl Cyclotomic {
    fn reduce(field: Arc<Field>, mut poly: Vec<BigRational>) -> Cyclotomic {
        let deg = field.modulus.len() - 1;
        while poly.len() > deg {
            let top = poly.pop().unwrap();
            if top.is_zero() {
                continue;
            }
            let shift = poly.len() - deg;
            for j in 0..deg {
                let t = &top * &field.modulus[j];
                poly[shift + j] -= t;
            }
        }
        poly.resize(deg, BigRational::zero());
        Cyclotomic { field, coeffs: poly }
    }

    pub fn order(&self) -> u32 {
        self.field.order
    }

    pub fn coefficients(&self) -> &[BigRational] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(|c| c.is_zero())
    }

    pub fn to_complex(&self) -> Complex64 {
        let n = self.field.order as f64;
        self.coeffs
            .iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .map(|(k, c)| {
                let angle = 2.0 * std::f64::consts::PI * k as f64 / n;
                Complex64::from_polar(rational_to_f64(c), angle)
            })
            .sum()
    }

    /// Multiplicative inverse via the extended Euclidean algorithm in `Q[x]`.
    /// Returns `None` for zero.
    pub fn inv(&self) -> Option<Cyclotomic> {
        if self.is_zero() {
            return None;
        }
        let m = self.field.modulus.clone();
        let a = trim(self.coeffs.clone());
        // invariant: s * a ≡ r (mod m)
        let (mut r0, mut r1) = (m, a);
        let (mut s0, mut s1) = (vec![], vec![BigRational::one()]);
        while !(r1.len() == 1 && !r1[0].is_zero()) {
            let (q, r) = poly_divmod(&r0, &r1);
            let s2 = poly_sub(&s0, &poly_mul(&q, &s1));
            r0 = std::mem::replace(&mut r1, r);
            s0 = std::mem::replace(&mut s1, s2);
            if r1.is_empty() {
                return None;
            }
        }
        let c = r1[0].clone();
        let inv: Vec<BigRational> = s1.into_iter().map(|x| x / &c).collect();
        Some(Cyclotomic::reduce(self.field.clone(), inv))
    }

    pub fn pow(&self, mut e: u32) -> Cyclotomic {
        let mut base = self.clone();
        let mut acc = CyclotomicField {
            field: self.field.clone(),
        }
        .from_integer(1);
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &base;
            }
            base = &base * &base;
            e >>= 1;
        }
        acc
    }
}

fn rational_to_f64(q: &BigRational) -> f64 {
    match (q.numer().to_f64(), q.denom().to_f64()) {
        (Some(n), Some(d)) if n.is_finite() && d.is_finite() => n / d,
        _ => {
            // fall back to scaled division for very large components
            let shift = q.numer().bits().max(q.denom().bits()) as i64 - 900;
            let shift = shift.max(0) as usize;
            let n = (q.numer() >> shift).to_f64().unwrap_or(0.0);
            let d = (q.denom() >> shift).to_f64().unwrap_or(1.0);
            if q.is_negative() && n > 0.0 {
                -n / d
            } else {
                n / d
            }
        }
    }
}

fn trim(mut p: Vec<BigRational>) -> Vec<BigRational> {
    while p.last().is_some_and(|c| c.is_zero()) {
        p.pop();
    }
    p
}

fn poly_mul(a: &[BigRational], b: &[BigRational]) -> Vec<BigRational> {
    if a.is_empty() || b.is_empty() {
        return vec![];
    }
    let mut out = vec![BigRational::zero(); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        if x.is_zero() {
            continue;
        }
        for (j, y) in b.iter().enumerate() {
            out[i + j] += x * y;
        }
    }
    trim(out)
}

fn poly_sub(a: &[BigRational], b: &[BigRational]) -> Vec<BigRational> {
    let n = a.len().max(b.len());
    let mut out = vec![BigRational::zero(); n];
    for (i, x) in a.iter().enumerate() {
        out[i] += x;
    }
    for (i, y) in b.iter().enumerate() {
        out[i] -= y;
    }
    trim(out)
}

fn poly_divmod(a: &[BigRational], b: &[BigRational]) -> (Vec<BigRational>, Vec<BigRational>) {
    let mut rem = trim(a.to_vec());
    let b = trim(b.to_vec());
    let db = b.len() - 1;
    let lead = b[db].clone();
    if rem.len() < b.len() {
        return (vec![], rem);
    }
    let mut quot = vec![BigRational::zero(); rem.len() - db];
    while rem.len() >= b.len() {
        let k = rem.len() - 1 - db;
        let c = rem.last().unwrap() / &lead;
        for (j, bj) in b.iter().enumerate() {
            rem[k + j] -= &c * bj;
        }
        quot[k] = c;
        rem.pop();
        rem = trim(rem);
    }
    (trim(quot), rem)
}

impl Add for &Cyclotomic {
    type Output = Cyclotomic;
    fn add(self, rhs: &Cyclotomic) -> Cyclotomic {
        assert_eq!(self.field.order, rhs.field.order, "mixed cyclotomic fields");
        let coeffs = self.coeffs.iter().zip(&rhs.coeffs).map(|(a, b)| a + b).collect();
        Cyclotomic {
            field: self.field.clone(),
            coeffs,
        }
    }
}

impl Sub for &Cyclotomic {
    type Output = Cyclotomic;
    fn sub(self, rhs: &Cyclotomic) -> Cyclotomic {
        self + &(-rhs)
    }
}

impl Neg for &Cyclotomic {
    type Output = Cyclotomic;
    fn neg(self) -> Cyclotomic {
        Cyclotomic {
            field: self.field.clone(),
            coeffs: self.coeffs.iter().map(|c| -c).collect(),
        }
    }
}

impl Mul for &Cyclotomic {
    type Output = Cyclotomic;
    fn mul(self, rhs: &Cyclotomic) -> Cyclotomic {
        assert_eq!(self.field.order, rhs.field.order, "mixed cyclotomic fields");
        let mut prod = vec![BigRational::zero(); 2 * self.coeffs.len()];
        for (i, x) in self.coeffs.iter().enumerate() {
            if x.is_zero() {
                continue;
            }
            for (j, y) in rhs.coeffs.iter().enumerate() {
                if !y.is_zero() {
                    prod[i + j] += x * y;
                }
            }
        }
        Cyclotomic::reduce(self.field.clone(), prod)
    }
}

macro_rules! forward_owned {
    ($tr:ident, $m:ident) => {
        impl $tr for Cyclotomic {
            type Output = Cyclotomic;
            fn $m(self, rhs: Cyclotomic) -> Cyclotomic {
                (&self).$m(&rhs)
            }
        }
    };
}
forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);

impl Neg for Cyclotomic {
    type Output = Cyclotomic;
    fn neg(self) -> Cyclotomic {
        -&self
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn coeffs_i64(p: &[BigInt]) -> Vec<i64> {
        p.iter().map(|c| c.to_i64().unwrap()).collect()
    }

    #[test]
    fn small_cyclotomic_polynomials() {
        assert_eq!(coeffs_i64(&cyclotomic_polynomial(1)), vec![-1, 1]);
        assert_eq!(coeffs_i64(&cyclotomic_polynomial(4)), vec![1, 0, 1]);
        assert_eq!(coeffs_i64(&cyclotomic_polynomial(12)), vec![1, 0, -1, 0, 1]);
        assert_eq!(coeffs_i64(&cyclotomic_polynomial(20)).len(), 9);
    }

    #[test]
    fn zeta_is_a_primitive_root() {
        let f = CyclotomicField::new(20);
        let z = f.zeta_pow(1);
        assert_eq!(z.pow(20), f.from_integer(1));
        assert!(z.pow(10) == f.from_integer(-1));
        let w = z.to_complex();
        assert!((w - Complex64::from_polar(1.0, std::f64::consts::PI / 10.0)).norm() < 1e-14);
    }

    #[test]
    fn inverse_roundtrip() {
        let f = CyclotomicField::new(24);
        let x = &(&f.zeta_pow(3) + &f.from_integer(2)) - &f.zeta_pow(-5);
        let y = x.inv().unwrap();
        assert_eq!(&x * &y, f.from_integer(1));
        assert!(f.zero().inv().is_none());
    }
}
