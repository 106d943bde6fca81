//! Temperley–Lieb diagrams and Jones–Wenzl projectors.

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::qalgebra::Level;

/// A planar matching of `n` bottom points (`0..n`) and `n` top points
/// (`n..2n`), both read left to right.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct TLDiagram {
    n: usize,
    partner: Vec<u8>,
}

impl TLDiagram {
    pub fn identity(n: usize) -> TLDiagram {
        let mut partner = vec![0u8; 2 * n];
        for i in 0..n {
            partner[i] = (n + i) as u8;
            partner[n + i] = i as u8;
        }
        TLDiagram { n, partner }
    }

    /// The generator `e_i`: a cap on bottom `i, i+1` and a cup on top.
    pub fn generator(n: usize, i: usize) -> TLDiagram {
        assert!(i + 1 < n);
        let mut d = TLDiagram::identity(n);
        d.partner[i] = (i + 1) as u8;
        d.partner[i + 1] = i as u8;
        d.partner[n + i] = (n + i + 1) as u8;
        d.partner[n + i + 1] = (n + i) as u8;
        d
    }

    pub fn strands(&self) -> usize {
        self.n
    }

    /// Partner of point `p` (bottom `0..n`, top `n..2n`).
    pub fn partner(&self, p: usize) -> usize {
        self.partner[p] as usize
    }

    pub fn is_identity(&self) -> bool {
        *self == TLDiagram::identity(self.n)
    }

    /// Stacks `other` on top of `self`; returns the diagram and the number
    /// of closed loops formed in the middle.
    pub fn compose(&self, other: &TLDiagram) -> (TLDiagram, usize) {
        let n = self.n;
        assert_eq!(n, other.n);
        // middle points: self's top i == other's bottom i
        let mut partner = vec![u8::MAX; 2 * n];
        let mut seen = vec![false; n];
        // walk from an outer point until the path exits
        let exit = |start_self: bool, p: usize, seen: &mut [bool]| -> usize {
            let (mut in_self, mut q) = (start_self, p);
            loop {
                let t = if in_self { self.partner(q) } else { other.partner(q) };
                if in_self {
                    if t < n {
                        return t;
                    }
                    seen[t - n] = true;
                    in_self = false;
                    q = t - n;
                } else {
                    if t >= n {
                        return t;
                    }
                    seen[t] = true;
                    in_self = true;
                    q = t + n;
                }
            }
        };
        for p in 0..n {
            if partner[p] == u8::MAX {
                let e = exit(true, p, &mut seen);
                partner[p] = e as u8;
                partner[e] = p as u8;
            }
        }
        for p in n..2 * n {
            if partner[p] == u8::MAX {
                let e = exit(false, p, &mut seen);
                partner[p] = e as u8;
                partner[e] = p as u8;
            }
        }
        let mut loops = 0;
        for m in 0..n {
            if seen[m] {
                continue;
            }
            loops += 1;
            let mut q = m;
            loop {
                seen[q] = true;
                let t = self.partner(q + n) - n;
                seen[t] = true;
                q = other.partner(t);
                if q == m {
                    break;
                }
            }
        }
        (TLDiagram { n, partner }, loops)
    }
}

/// Formal linear combination of diagrams on `n` strands.
#[derive(Clone, Debug)]
pub struct TLElement {
    pub n: usize,
    pub terms: Vec<(TLDiagram, Complex64)>,
}

impl TLElement {
    pub fn from_diagram(d: TLDiagram) -> TLElement {
        TLElement {
            n: d.strands(),
            terms: vec![(d, Complex64::new(1.0, 0.0))],
        }
    }

    fn collect(n: usize, raw: impl IntoIterator<Item = (TLDiagram, Complex64)>) -> TLElement {
        let mut terms: Vec<(TLDiagram, Complex64)> = Vec::new();
        let mut index: std::collections::HashMap<TLDiagram, usize> = std::collections::HashMap::new();
        for (d, c) in raw {
            match index.get(&d) {
                Some(&i) => {
                    let t: &mut (TLDiagram, Complex64) = &mut terms[i];
                    t.1 += c;
                }
                None => {
                    index.insert(d.clone(), terms.len());
                    terms.push((d, c));
                }
            }
        }
        terms.retain(|(_, c)| c.norm() > 1e-13);
        terms.sort_by(|a, b| a.0.cmp(&b.0));
        TLElement { n, terms }
    }

    pub fn compose(&self, other: &TLElement, loop_value: f64) -> TLElement {
        let mut raw = Vec::new();
        for (a, ca) in &self.terms {
            for (b, cb) in &other.terms {
                let (d, loops) = a.compose(b);
                raw.push((d, ca * cb * loop_value.powi(loops as i32)));
            }
        }
        TLElement::collect(self.n, raw)
    }

    pub fn sub(&self, other: &TLElement) -> TLElement {
        TLElement::collect(
            self.n,
            self.terms
                .iter()
                .cloned()
                .chain(other.terms.iter().map(|(d, c)| (d.clone(), -c))),
        )
    }

    pub fn scale(&self, s: f64) -> TLElement {
        TLElement {
            n: self.n,
            terms: self.terms.iter().map(|(d, c)| (d.clone(), c * s)).collect(),
        }
    }

    /// `x ⊗ 1`: one more strand on the right.
    pub fn extend(&self) -> TLElement {
        let n = self.n;
        let terms = self
            .terms
            .iter()
            .map(|(d, c)| {
                let mut p = vec![0u8; 2 * (n + 1)];
                let map = |q: usize| if q < n { q } else { q + 1 };
                for q in 0..2 * n {
                    p[map(q)] = map(d.partner(q)) as u8;
                }
                p[n] = (2 * n + 1) as u8;
                p[2 * n + 1] = n as u8;
                (TLDiagram { n: n + 1, partner: p }, *c)
            })
            .collect();
        TLElement { n: n + 1, terms }
    }

    pub fn approx_eq(&self, other: &TLElement, tol: f64) -> bool {
        let diff = self.sub(other);
        diff.terms.iter().all(|(_, c)| c.norm() <= tol)
    }

    pub fn is_zero(&self, tol: f64) -> bool {
        self.terms.iter().all(|(_, c)| c.norm() <= tol)
    }
}

/// The Jones–Wenzl idempotent `P_n`, by Wenzl's recursion
/// `P_{k+1} = P_k ⊗ 1 − (Δ_{k−1}/Δ_k) (P_k ⊗ 1) e_k (P_k ⊗ 1)`.
pub fn jones_wenzl(n: u32, level: &Level) -> Result<TLElement> {
    if !level.is_admissible(n) {
        return Err(Error::ProjectorDegenerate { n, level: level.r() });
    }
    let d = level.dim(1);
    let mut p = TLElement::from_diagram(TLDiagram::identity(n.min(1) as usize));
    for k in 1..n {
        let pk = p.extend();
        let e = TLElement::from_diagram(TLDiagram::generator(k as usize + 1, k as usize - 1));
        let mid = pk.compose(&e, d).compose(&pk, d);
        p = pk.sub(&mid.scale(level.dim(k - 1) / level.dim(k)));
    }
    Ok(p)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_projectors() {
        let l = Level::new(5).unwrap();
        let p0 = jones_wenzl(0, &l).unwrap();
        assert_eq!(p0.n, 0);
        assert_eq!(p0.terms.len(), 1);
        assert_eq!(p0.terms[0].1, Complex64::new(1.0, 0.0));
        let p1 = jones_wenzl(1, &l).unwrap();
        assert_eq!(p1.terms.len(), 1);
        assert!(p1.terms[0].0.is_identity());
        let p2 = jones_wenzl(2, &l).unwrap();
        assert_eq!(p2.terms.len(), 2);
        assert!(p2.compose(&p2, l.dim(1)).approx_eq(&p2, 1e-12));
    }

    #[test]
    fn idempotent_and_killed_by_caps() {
        for r in 3..=6 {
            let l = Level::new(r).unwrap();
            let d = l.dim(1);
            for n in 0..=r - 2 {
                let p = jones_wenzl(n, &l).unwrap();
                assert!(p.compose(&p, d).approx_eq(&p, 1e-11), "r={r} n={n}");
                for i in 0..(n as usize).saturating_sub(1) {
                    let e = TLElement::from_diagram(TLDiagram::generator(n as usize, i));
                    assert!(e.compose(&p, d).is_zero(1e-11));
                    assert!(p.compose(&e, d).is_zero(1e-11));
                }
            }
        }
    }

    #[test]
    fn trace_is_the_quantum_dimension() {
        for r in 3..=6 {
            let l = Level::new(r).unwrap();
            for n in 0..=r - 2 {
                let p = jones_wenzl(n, &l).unwrap();
                // closing bottom i to top i leaves loops
                let mut tr = Complex64::new(0.0, 0.0);
                for (dg, c) in &p.terms {
                    let m = n as usize;
                    let close = |p: usize| if p < m { p + m } else { p - m };
                    let mut seen = vec![false; 2 * m];
                    let mut loops = 0;
                    for s in 0..2 * m {
                        if seen[s] {
                            continue;
                        }
                        loops += 1;
                        let mut q = s;
                        while !seen[q] {
                            seen[q] = true;
                            let t = dg.partner(q);
                            seen[t] = true;
                            q = close(t);
                        }
                    }
                    tr += c * l.dim(1).powi(loops);
                }
                assert!((tr.re - l.dim(n)).abs() < 1e-11, "r={r} n={n}");
            }
        }
    }

    #[test]
    fn degenerate_projector_is_an_error() {
        let l = Level::new(4).unwrap();
        assert_eq!(
            jones_wenzl(3, &l).unwrap_err(),
            Error::ProjectorDegenerate { n: 3, level: 4 }
        );
    }
}
