//! Per-level lookup tables for θ, Tet, Δ and braid eigenvalues.
//!
//! Tables are built once per level and shared through a write-once cache:
//! concurrent readers never block each other and two threads racing to
//! build the same level insert identical values.

use std::collections::HashMap;
use std::sync::{Arc, OnceLock, RwLock};

use num_complex::Complex64;

use crate::qalgebra::Level;

/// Dense tables indexed by labels `0..d` with `d = r − 1`.
#[derive(Debug)]
pub struct Tables {
    pub r: u32,
    pub d: usize,
    dim: Vec<f64>,
    theta: Vec<f64>,
    theta_inv: Vec<f64>,
    tet: Vec<f64>,
    braid: Vec<Complex64>,
}

static CACHE: OnceLock<RwLock<HashMap<u32, Arc<Tables>>>> = OnceLock::new();

/// Shared tables for `level`, built on first use.
pub fn tables(level: &Level) -> Arc<Tables> {
    let cache = CACHE.get_or_init(|| RwLock::new(HashMap::new()));
    if let Some(t) = cache.read().expect("table cache poisoned").get(&level.r()) {
        return Arc::clone(t);
    }
    let built = Arc::new(Tables::build(level));
    let mut w = cache.write().expect("table cache poisoned");
    Arc::clone(w.entry(level.r()).or_insert(built))
}

pub(crate) fn triple_ok(r: u32, a: u32, b: u32, c: u32) -> bool {
    (a + b + c).is_multiple_of(2) && a <= b + c && b <= a + c && c <= a + b && a + b + c <= 2 * r - 4
}

pub(crate) fn theta_raw(l: &Level, a: u32, b: u32, c: u32) -> f64 {
    if !triple_ok(l.r(), a, b, c) {
        return 0.0;
    }
    let mut s = [a, b, c];
    s.sort_unstable();
    let [a, b, c] = s;
    let m = (a + b - c) / 2;
    let n = (b + c - a) / 2;
    let p = (a + c - b) / 2;
    let sign = if (m + n + p) % 2 == 0 { 1.0 } else { -1.0 };
    sign * l.qfact(m + n + p + 1) * l.qfact(m) * l.qfact(n) * l.qfact(p)
        / (l.qfact(m + n) * l.qfact(n + p) * l.qfact(m + p))
}

/// `Tet[A B E; C D F]`: vertex triples (A,D,E), (B,C,E), (A,B,F), (C,D,F).
pub(crate) fn tet_raw(l: &Level, x: [u32; 6]) -> f64 {
    let [a, b, e, c, d, f] = x;
    let r = l.r();
    if !(triple_ok(r, a, d, e) && triple_ok(r, b, c, e) && triple_ok(r, a, b, f) && triple_ok(r, c, d, f)) {
        return 0.0;
    }
    let ai = [(a + d + e) / 2, (b + c + e) / 2, (a + b + f) / 2, (c + d + f) / 2];
    let bj = [(b + d + e + f) / 2, (a + c + e + f) / 2, (a + b + c + d) / 2];
    let mut num = 1.0;
    for &bb in &bj {
        for &aa in &ai {
            num *= l.qfact(bb - aa);
        }
    }
    let den: f64 = x.iter().map(|&n| l.qfact(n)).product();
    let lo = *ai.iter().max().unwrap();
    let hi = *bj.iter().min().unwrap();
    let mut sum = 0.0;
    for s in lo..=hi {
        let top = l.qfact(s + 1);
        if top == 0.0 {
            continue;
        }
        let mut bot = 1.0;
        for &aa in &ai {
            bot *= l.qfact(s - aa);
        }
        for &bb in &bj {
            bot *= l.qfact(bb - s);
        }
        let sign = if s % 2 == 0 { 1.0 } else { -1.0 };
        sum += sign * top / bot;
    }
    num / den * sum
}

/// Eigenvalue of the half-twist on a vertex `(a, b; c)`.
pub(crate) fn braid_raw(l: &Level, a: u32, b: u32, c: u32) -> Complex64 {
    if !triple_ok(l.r(), a, b, c) {
        return Complex64::new(0.0, 0.0);
    }
    let e = (c * (c + 2)) as i64 - (a * (a + 2)) as i64 - (b * (b + 2)) as i64;
    let phase = l.a_pow(e / 2);
    if ((a + b - c) / 2).is_multiple_of(2) {
        phase
    } else {
        -phase
    }
}

impl Tables {
    fn build(level: &Level) -> Tables {
        let r = level.r();
        let d = (r - 1) as usize;
        let dim = (0..d as u32).map(|n| level.dim(n)).collect();
        let mut theta = vec![0.0; d * d * d];
        let mut theta_inv = vec![0.0; d * d * d];
        let mut braid = vec![Complex64::new(0.0, 0.0); d * d * d];
        for a in 0..d {
            for b in 0..d {
                for c in 0..d {
                    let i = (a * d + b) * d + c;
                    let t = theta_raw(level, a as u32, b as u32, c as u32);
                    theta[i] = t;
                    theta_inv[i] = if t == 0.0 { 0.0 } else { 1.0 / t };
                    braid[i] = braid_raw(level, a as u32, b as u32, c as u32);
                }
            }
        }
        let mut tet = vec![0.0; d.pow(6)];
        let mut x = [0u32; 6];
        for (i, slot) in tet.iter_mut().enumerate() {
            let mut k = i;
            for j in (0..6).rev() {
                x[j] = (k % d) as u32;
                k /= d;
            }
            *slot = tet_raw(level, x);
        }
        Tables {
            r,
            d,
            dim,
            theta,
            theta_inv,
            tet,
            braid,
        }
    }

    #[inline]
    pub fn dim(&self, n: u32) -> f64 {
        self.dim[n as usize]
    }

    #[inline]
    pub fn theta(&self, a: u32, b: u32, c: u32) -> f64 {
        self.theta[(a as usize * self.d + b as usize) * self.d + c as usize]
    }

    /// `1/θ`, with the convention `1/0 = 0` on inadmissible triples.
    #[inline]
    pub fn theta_inv(&self, a: u32, b: u32, c: u32) -> f64 {
        self.theta_inv[(a as usize * self.d + b as usize) * self.d + c as usize]
    }

    #[inline]
    pub fn tet(&self, x: [u32; 6]) -> f64 {
        let mut i = 0usize;
        for v in x {
            i = i * self.d + v as usize;
        }
        self.tet[i]
    }

    #[inline]
    pub fn braid(&self, a: u32, b: u32, c: u32, sign: i8) -> Complex64 {
        let z = self.braid[(a as usize * self.d + b as usize) * self.d + c as usize];
        if sign >= 0 {
            z
        } else {
            z.conj()
        }
    }

    #[inline]
    pub fn admissible(&self, a: u32, b: u32, c: u32) -> bool {
        triple_ok(self.r, a, b, c)
    }
}
