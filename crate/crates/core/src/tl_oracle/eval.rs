//! Evaluation of closed networks by Temperley–Lieb expansion.
//!
//! Every edge carries one Jones–Wenzl projector; vertices are fixed strand
//! matchings; every elementary crossing is resolved with the Kauffman
//! bracket. The pieces are absorbed one at a time into a state that maps
//! a matching of the currently open strand ends to its coefficient; closed
//! loops contribute `d = −A² − A⁻²`.

use std::collections::HashMap;

use num_complex::Complex64;

use super::network::NetworkSpec;
use super::tl::jones_wenzl;
use crate::error::{Error, Result};
use crate::qalgebra::Level;

struct Atom {
    points: Vec<u32>,
    // local partner arrays
    terms: Vec<(Vec<u8>, Complex64)>,
}

struct Builder {
    next: u32,
    atoms: Vec<Atom>,
}

impl Builder {
    fn fresh(&mut self, n: usize) -> Vec<u32> {
        let v: Vec<u32> = (self.next..self.next + n as u32).collect();
        self.next += n as u32;
        v
    }

    fn matching(&mut self, points: Vec<u32>, pairs: &[(usize, usize)]) {
        let mut p = vec![u8::MAX; points.len()];
        for &(a, b) in pairs {
            p[a] = b as u8;
            p[b] = a as u8;
        }
        debug_assert!(p.iter().all(|&x| x != u8::MAX));
        self.atoms.push(Atom {
            points,
            terms: vec![(p, Complex64::new(1.0, 0.0))],
        });
    }
}

fn projector_atom(b: &mut Builder, bottom: &[u32], top: &[u32], level: &Level) -> Result<()> {
    let n = bottom.len();
    if n == 0 {
        return Ok(());
    }
    let p = jones_wenzl(n as u32, level)?;
    let mut points = bottom.to_vec();
    points.extend_from_slice(top);
    let terms = p
        .terms
        .iter()
        .map(|(d, c)| ((0..2 * n).map(|i| d.partner(i) as u8).collect(), *c))
        .collect();
    b.atoms.push(Atom { points, terms });
    Ok(())
}

fn check(net: &NetworkSpec, level: &Level) -> Result<()> {
    net.check_closed()?;
    let r = level.r();
    for (name, c) in &net.edges {
        if !level.is_admissible(*c) {
            return Err(Error::Network(format!(
                "edge `{name}` colour {c} exceeds the level bound {}",
                r - 2
            )));
        }
    }
    for c in &net.loops {
        if !level.is_admissible(*c) {
            return Err(Error::ProjectorDegenerate { n: *c, level: r });
        }
    }
    for (_, legs) in &net.vertices {
        let [a, b, c] = legs.map(|e| net.edges[e].1);
        let ok = (a + b + c) % 2 == 0 && a <= b + c && b <= a + c && c <= a + b && a + b + c <= 2 * r - 4;
        if !ok {
            return Err(Error::InadmissibleVertex(a, b, c, r));
        }
    }
    for (name, legs) in &net.crossings {
        let c = legs.map(|e| net.edges[e].1);
        if c[0] != c[2] || c[1] != c[3] {
            return Err(Error::Network(format!(
                "crossing `{name}`: strand colours change across it"
            )));
        }
    }
    Ok(())
}

fn build(net: &NetworkSpec, level: &Level) -> Result<Builder> {
    check(net, level)?;
    let mut b = Builder {
        next: 0,
        atoms: Vec::new(),
    };
    let color = |e: usize| net.edges[e].1 as usize;
    // strand ends of each edge, per attachment
    let ends: Vec<[Vec<u32>; 2]> = (0..net.edges.len())
        .map(|e| [b.fresh(color(e)), b.fresh(color(e))])
        .collect();
    for (e, [u, v]) in ends.iter().enumerate() {
        // strand k at one end meets strand n−1−k at the other
        let top: Vec<u32> = v.iter().rev().copied().collect();
        projector_atom(&mut b, u, &top, level)?;
        let _ = e;
    }
    let mut used = vec![0usize; net.edges.len()];
    let mut take = |e: usize| {
        let i = used[e];
        used[e] += 1;
        ends[e][i].clone()
    };
    for (_, legs) in &net.vertices {
        let [x, y, z] = legs.map(&mut take);
        let (a, bb, c) = (x.len(), y.len(), z.len());
        let kxy = (a + bb - c) / 2;
        let kyz = (bb + c - a) / 2;
        let kzx = (c + a - bb) / 2;
        let mut pairs = Vec::new();
        for t in 0..kxy {
            pairs.push((a - 1 - t, a + t));
        }
        for t in 0..kyz {
            pairs.push((a + bb - 1 - t, a + bb + t));
        }
        for t in 0..kzx {
            pairs.push((a + bb + c - 1 - t, t));
        }
        let points = [x, y, z].concat();
        b.matching(points, &pairs);
    }
    let a_pos = level.a_pow(1);
    let a_neg = level.a_pow(-1);
    for (_, legs) in &net.crossings {
        let [h0, h1, h2, h3] = legs.map(&mut take);
        let (na, nb) = (h0.len(), h1.len());
        if na == 0 || nb == 0 {
            let mut pairs = Vec::new();
            for k in 0..na {
                pairs.push((k, na + nb + (na - 1 - k)));
            }
            for m in 0..nb {
                pairs.push((na + m, 2 * na + nb + (nb - 1 - m)));
            }
            b.matching([h0, h1, h2, h3].concat(), &pairs);
            continue;
        }
        // horizontal wires between columns, vertical wires between rows
        let hw: Vec<Vec<u32>> = (0..na).map(|_| b.fresh(nb.saturating_sub(1))).collect();
        let vw: Vec<Vec<u32>> = (0..na.saturating_sub(1)).map(|_| b.fresh(nb)).collect();
        for l in 0..na {
            for m in 0..nb {
                let east = if m == 0 { h0[l] } else { hw[l][m - 1] };
                let west = if m == nb - 1 { h2[na - 1 - l] } else { hw[l][m] };
                let south = if l == 0 { h3[nb - 1 - m] } else { vw[l - 1][m] };
                let north = if l == na - 1 { h1[m] } else { vw[l][m] };
                // local order E, N, W, S; the east-west strand is over
                let smooth_a = vec![3u8, 2, 1, 0];
                let smooth_b = vec![1u8, 0, 3, 2];
                b.atoms.push(Atom {
                    points: vec![east, north, west, south],
                    terms: vec![(smooth_a, a_pos), (smooth_b, a_neg)],
                });
            }
        }
    }
    for &c in &net.loops {
        let n = c as usize;
        let bottom = b.fresh(n);
        let top = b.fresh(n);
        projector_atom(&mut b, &bottom, &top, level)?;
        let pairs: Vec<(usize, usize)> = (0..n).map(|i| (i, n + i)).collect();
        b.matching([bottom, top].concat(), &pairs);
    }
    Ok(b)
}

/// Scalar value of a closed network.
pub fn oracle_eval_network(net: &NetworkSpec, level: &Level) -> Result<Complex64> {
    let b = build(net, level)?;
    let npts = b.next as usize;
    let d = level.dim(1);
    let mut absorbed = vec![false; b.atoms.len()];
    let mut in_open = vec![false; npts];
    let mut open: Vec<u32> = Vec::new();
    let mut state: HashMap<Vec<u8>, Complex64> = HashMap::new();
    state.insert(Vec::new(), Complex64::new(1.0, 0.0));

    const NONE: u32 = u32::MAX;
    let mut ps = vec![NONE; npts];
    let mut pa = vec![NONE; npts];
    let mut in_atom = vec![false; npts];
    let mut seen = vec![false; npts];

    for _ in 0..b.atoms.len() {
        // smallest resulting boundary first
        let pick = (0..b.atoms.len())
            .filter(|&i| !absorbed[i])
            .min_by_key(|&i| {
                let shared = b.atoms[i].points.iter().filter(|&&p| in_open[p as usize]).count();
                (
                    b.atoms[i].points.len() as i64 - 2 * shared as i64,
                    std::cmp::Reverse(shared),
                    i,
                )
            })
            .expect("atoms remain");
        absorbed[pick] = true;
        let atom = &b.atoms[pick];
        for &p in &atom.points {
            in_atom[p as usize] = true;
        }
        let mut new_open: Vec<u32> = open
            .iter()
            .chain(atom.points.iter())
            .copied()
            .filter(|&p| in_open[p as usize] != in_atom[p as usize])
            .collect();
        new_open.sort_unstable();
        let mut pos = HashMap::with_capacity(new_open.len());
        for (i, &p) in new_open.iter().enumerate() {
            pos.insert(p, i);
        }
        let shared: Vec<u32> = atom.points.iter().copied().filter(|&p| in_open[p as usize]).collect();

        let mut next: HashMap<Vec<u8>, Complex64> = HashMap::with_capacity(state.len());
        for (key, coef) in &state {
            for (i, &k) in key.iter().enumerate() {
                ps[open[i] as usize] = open[k as usize];
            }
            for (ap, ac) in &atom.terms {
                for (i, &k) in ap.iter().enumerate() {
                    pa[atom.points[i] as usize] = atom.points[k as usize];
                }
                let mut out = vec![0u8; new_open.len()];
                for &g in &new_open {
                    if seen[g as usize] {
                        continue;
                    }
                    let mut cur = g;
                    let mut on_state = in_open[g as usize];
                    let end = loop {
                        let nx = if on_state { ps[cur as usize] } else { pa[cur as usize] };
                        if in_open[nx as usize] && in_atom[nx as usize] {
                            seen[nx as usize] = true;
                            cur = nx;
                            on_state = !on_state;
                        } else {
                            break nx;
                        }
                    };
                    seen[g as usize] = true;
                    seen[end as usize] = true;
                    out[pos[&g]] = pos[&end] as u8;
                    out[pos[&end]] = pos[&g] as u8;
                }
                let mut loops = 0;
                for &s in &shared {
                    if seen[s as usize] {
                        continue;
                    }
                    loops += 1;
                    let mut cur = s;
                    loop {
                        seen[cur as usize] = true;
                        let t = ps[cur as usize];
                        seen[t as usize] = true;
                        cur = pa[t as usize];
                        if seen[cur as usize] {
                            break;
                        }
                    }
                }
                for &g in new_open.iter().chain(shared.iter()) {
                    seen[g as usize] = false;
                }
                let c = coef * ac * d.powi(loops);
                if c != Complex64::new(0.0, 0.0) {
                    *next.entry(out).or_insert(Complex64::new(0.0, 0.0)) += c;
                }
            }
        }
        for &p in &shared {
            in_open[p as usize] = false;
        }
        for &p in &atom.points {
            in_atom[p as usize] = false;
            if !shared.contains(&p) {
                in_open[p as usize] = true;
            }
        }
        open = new_open;
        state = next;
    }
    debug_assert!(open.is_empty());
    Ok(state.get(&Vec::new()).copied().unwrap_or(Complex64::new(0.0, 0.0)))
}
