//! The normalized Crane–Yetter state sum.
//!
//! `Z₀ = η^{−(h1+h2+h3−h4+1)/2} · η^{h1} · Σ Π_t Δ_t Π_τ w_τ Π_σ A₅(σ)`
//!
//! where the sum runs over labels of triangles `t` and intertwiner labels
//! of tetrahedra `τ`, `w_τ = Δ_e / (θ(a,b,e) θ(c,d,e))` normalizes the
//! intertwiner basis, and `A₅` is the 15j network of the simplex (its
//! mirror image on negatively oriented simplices).

use std::collections::HashMap;
use std::fmt;
use std::str::FromStr;

use num_complex::Complex64;

use super::contract::contract;
use super::triangulation::{handle_counts, Triangulation4};
use crate::error::{Error, Result};
use crate::qalgebra::{global_constants, Level, QComplex};
use crate::recoupling::{fifteen_j_expression, fifteen_j_raw, tables, Factor, Tables};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Strategy {
    /// Depth-first sum over colourings with admissibility pruning.
    Enumerate,
    /// The same sum without rule-based pruning: every triangle colouring is
    /// visited and only exactly-zero partial products are skipped.
    EnumerateUnpruned,
    /// Sparse tensor-network contraction.
    Contract,
}

impl fmt::Display for Strategy {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Strategy::Enumerate => "enumerate",
            Strategy::EnumerateUnpruned => "enumerate-unpruned",
            Strategy::Contract => "contract",
        })
    }
}

impl FromStr for Strategy {
    type Err = String;
    fn from_str(s: &str) -> std::result::Result<Self, String> {
        match s {
            "enumerate" => Ok(Strategy::Enumerate),
            "enumerate-unpruned" => Ok(Strategy::EnumerateUnpruned),
            "contract" => Ok(Strategy::Contract),
            other => Err(format!("unknown strategy `{other}`")),
        }
    }
}

#[derive(Clone, Copy, Debug)]
pub struct Options {
    pub strategy: Strategy,
    pub threads: usize,
    /// Most nonzero entries any intermediate tensor of the contraction may
    /// hold.
    pub cap: u128,
}

impl Default for Options {
    fn default() -> Self {
        Options {
            strategy: Strategy::Contract,
            threads: 1,
            cap: 1 << 25,
        }
    }
}

/// Exponent of `η` in the normalization.
pub fn eta_exponent(t: &Triangulation4) -> f64 {
    let h = handle_counts(t);
    let (h1, h2, h3, h4) = (h.h1 as f64, h.h2 as f64, h.h3 as f64, h.h4 as f64);
    -(h1 + h2 + h3 - h4 + 1.0) / 2.0 + h1
}

pub fn crane_yetter(t: &Triangulation4, level: &Level, strategy: Strategy) -> Result<QComplex> {
    crane_yetter_with(
        t,
        level,
        &Options {
            strategy,
            ..Options::default()
        },
    )
}

pub fn crane_yetter_with(t: &Triangulation4, level: &Level, opts: &Options) -> Result<QComplex> {
    let raw = state_sum(t, level, opts)?;
    let eta = global_constants(level).eta.re();
    Ok(QComplex::new(raw * eta.powf(eta_exponent(t))))
}

/// The unnormalized sum over colourings.
pub fn state_sum(t: &Triangulation4, level: &Level, opts: &Options) -> Result<Complex64> {
    let orientation = t.orientation.as_ref().ok_or(Error::NonOrientable)?;
    let tb = tables(level);
    match opts.strategy {
        Strategy::Contract => {
            let (factors, n) = factor_graph(t, orientation);
            contract(&factors, n, &tb, opts.cap, opts.threads)
        }
        Strategy::Enumerate => Ok(Enumerator::new(t, orientation, level, &tb, true).run()),
        Strategy::EnumerateUnpruned => Ok(Enumerator::new(t, orientation, level, &tb, false).run()),
    }
}

/// Triangles of tetrahedron `q`, opposite its vertices in ascending order.
fn tet_triangles(t: &Triangulation4, q: usize) -> [usize; 4] {
    let w = t.tetrahedra[q];
    [0, 1, 2, 3].map(|j| {
        let mut f = [0u32; 3];
        let mut k = 0;
        for (i, &v) in w.iter().enumerate() {
            if i != j {
                f[k] = v;
                k += 1;
            }
        }
        t.triangles.binary_search(&f).expect("face of a tetrahedron")
    })
}

/// Factor graph of the state sum: triangle variables first, then
/// tetrahedron variables, then one block of summed variables per simplex.
pub fn factor_graph(t: &Triangulation4, orientation: &[i8]) -> (Vec<Factor>, usize) {
    let n2 = t.triangles.len();
    let n3 = t.tetrahedra.len();
    let mut factors = Vec::new();
    for v in 0..n2 {
        factors.push(Factor::Dim { v, power: 1 });
    }
    for q in 0..n3 {
        let e = n2 + q;
        let f = tet_triangles(t, q);
        factors.push(Factor::Dim { v: e, power: 1 });
        factors.push(Factor::Theta {
            v: [f[0], f[1], e],
            power: -1,
        });
        factors.push(Factor::Theta {
            v: [f[2], f[3], e],
            power: -1,
        });
    }
    let expr = fifteen_j_expression();
    let mirror = expr.mirror();
    let mut next = n2 + n3;
    for k in 0..t.simplices.len() {
        let e = if orientation[k] > 0 { expr } else { &mirror };
        let mut ext = Vec::with_capacity(15);
        ext.extend(t.simplex_triangles[k].iter().copied());
        ext.extend(t.simplex_tetrahedra[k].iter().map(|&q| n2 + q));
        let base = next;
        for f in &e.factors {
            factors.push(f.map_vars(|v| if v < 15 { ext[v] } else { base + v - 15 }));
        }
        next += e.internal;
    }
    (factors, next)
}

struct Enumerator<'a> {
    t: &'a Triangulation4,
    orientation: &'a [i8],
    level: &'a Level,
    tb: &'a Tables,
    pruned: bool,
    tri_order: Vec<usize>,
    // tetrahedra completed right after assigning tri_order[i]
    tets_done_at: Vec<Vec<usize>>,
    tet_tris: Vec<[usize; 4]>,
    tet_order: Vec<usize>,
    // simplices completed right after assigning tet_order[i]
    simp_done_at: Vec<Vec<usize>>,
    tri: Vec<u32>,
    tet: Vec<u32>,
    cache: HashMap<([u32; 15], bool), Complex64>,
}

impl<'a> Enumerator<'a> {
    fn new(t: &'a Triangulation4, orientation: &'a [i8], level: &'a Level, tb: &'a Tables, pruned: bool) -> Self {
        let n2 = t.triangles.len();
        let n3 = t.tetrahedra.len();
        let tet_tris: Vec<[usize; 4]> = (0..n3).map(|q| tet_triangles(t, q)).collect();
        let mut tri_order = Vec::new();
        let mut placed = vec![false; n2];
        let mut tet_order = Vec::new();
        let mut tplaced = vec![false; n3];
        for k in 0..t.simplices.len() {
            for &f in &t.simplex_triangles[k] {
                if !placed[f] {
                    placed[f] = true;
                    tri_order.push(f);
                }
            }
            for &q in &t.simplex_tetrahedra[k] {
                if !tplaced[q] {
                    tplaced[q] = true;
                    tet_order.push(q);
                }
            }
        }
        let pos: HashMap<usize, usize> = tri_order.iter().enumerate().map(|(i, &f)| (f, i)).collect();
        let mut tets_done_at = vec![Vec::new(); n2];
        for (q, fs) in tet_tris.iter().enumerate() {
            let last = fs.iter().map(|f| pos[f]).max().expect("four faces");
            tets_done_at[last].push(q);
        }
        let tpos: HashMap<usize, usize> = tet_order.iter().enumerate().map(|(i, &q)| (q, i)).collect();
        let mut simp_done_at = vec![Vec::new(); n3];
        for k in 0..t.simplices.len() {
            let last = t.simplex_tetrahedra[k]
                .iter()
                .map(|q| tpos[q])
                .max()
                .expect("five facets");
            simp_done_at[last].push(k);
        }
        Enumerator {
            t,
            orientation,
            level,
            tb,
            pruned,
            tri_order,
            tets_done_at,
            tet_tris,
            tet_order,
            simp_done_at,
            tri: vec![0; n2],
            tet: vec![0; n3],
            cache: HashMap::new(),
        }
    }

    fn run(&mut self) -> Complex64 {
        self.triangles(0, Complex64::new(1.0, 0.0))
    }

    fn tet_can_close(&self, q: usize) -> bool {
        let f = self.tet_tris[q].map(|i| self.tri[i]);
        (0..self.tb.d as u32).any(|e| self.tb.admissible(f[0], f[1], e) && self.tb.admissible(f[2], f[3], e))
    }

    fn triangles(&mut self, i: usize, acc: Complex64) -> Complex64 {
        if i == self.tri_order.len() {
            return acc * self.intertwiners(0, Complex64::new(1.0, 0.0));
        }
        let f = self.tri_order[i];
        let mut sum = Complex64::new(0.0, 0.0);
        for x in 0..self.tb.d as u32 {
            self.tri[f] = x;
            if self.pruned && !self.tets_done_at[i].iter().all(|&q| self.tet_can_close(q)) {
                continue;
            }
            let w = acc * self.tb.dim(x);
            sum += self.triangles(i + 1, w);
        }
        sum
    }

    fn intertwiners(&mut self, i: usize, acc: Complex64) -> Complex64 {
        if i == self.tet_order.len() {
            return acc;
        }
        let q = self.tet_order[i];
        let f = self.tet_tris[q].map(|k| self.tri[k]);
        let mut sum = Complex64::new(0.0, 0.0);
        for e in 0..self.tb.d as u32 {
            if self.pruned && !(self.tb.admissible(f[0], f[1], e) && self.tb.admissible(f[2], f[3], e)) {
                continue;
            }
            self.tet[q] = e;
            let mut w = acc * self.tb.dim(e) * self.tb.theta_inv(f[0], f[1], e) * self.tb.theta_inv(f[2], f[3], e);
            if w == Complex64::new(0.0, 0.0) {
                continue;
            }
            for j in 0..self.simp_done_at[i].len() {
                let k = self.simp_done_at[i][j];
                w *= self.amplitude(k);
                if w == Complex64::new(0.0, 0.0) {
                    break;
                }
            }
            if w == Complex64::new(0.0, 0.0) {
                continue;
            }
            sum += self.intertwiners(i + 1, w);
        }
        sum
    }

    fn amplitude(&mut self, k: usize) -> Complex64 {
        let mut labels = [0u32; 15];
        for (j, &f) in self.t.simplex_triangles[k].iter().enumerate() {
            labels[j] = self.tri[f];
        }
        for (j, &q) in self.t.simplex_tetrahedra[k].iter().enumerate() {
            labels[10 + j] = self.tet[q];
        }
        let mirror = self.orientation[k] < 0;
        let level = self.level;
        *self
            .cache
            .entry((labels, mirror))
            .or_insert_with(|| fifteen_j_raw(&labels, mirror, level))
    }
}

/// Result of comparing `Z₀` with `κ^σ`, where `κ = κ⁺/√η` is the phase of
/// the Gauss sum (the normalisation under which `Z₀(S⁴) = 1`).
#[derive(Clone, Debug)]
pub struct SignatureCheck {
    pub computed: QComplex,
    pub expected: QComplex,
    pub pass: bool,
}

pub fn check_signature(t: &Triangulation4, level: &Level, opts: &Options) -> Result<SignatureCheck> {
    let sigma = t.signature.ok_or(Error::MissingSignature)?;
    let computed = crane_yetter_with(t, level, opts)?;
    let g = global_constants(level);
    let kappa = g.kappa_plus.value() / g.eta.re().sqrt();
    let expected = QComplex::new(kappa.powi(sigma as i32));
    let pass = (computed.value() - expected.value()).norm() < 1e-6;
    Ok(SignatureCheck {
        computed,
        expected,
        pass,
    })
}
