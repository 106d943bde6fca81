//! Tensor-network contraction by variable elimination.
//!
//! Every factor becomes a sparse tensor over its variables (each ranging
//! over the `d` labels of the level), keeping only nonzero entries under a
//! packed label key; admissibility makes most entries vanish. An
//! elimination order is planned symbolically first: randomised greedy
//! passes (smallest intermediate, then least fill-in) are scored by total
//! work and the cheapest is kept. Eliminating a variable hash-joins the
//! tensors that mention it and sums it out.

use std::collections::hash_map::DefaultHasher;
use std::collections::HashMap as StdHashMap;
use std::hash::BuildHasherDefault;

use num_complex::Complex64;
use rand::{rngs::StdRng, RngExt, SeedableRng};

use crate::error::{Error, Result};
use crate::recoupling::{Factor, Tables};

type Key = u128;
// fixed hasher keys keep the summation order, and so the result, reproducible
type HashMap<K, V> = StdHashMap<K, V, BuildHasherDefault<DefaultHasher>>;

#[derive(Clone, Debug)]
struct Tensor {
    // ascending variable ids; the first one sits in the lowest bits
    vars: Vec<usize>,
    entries: Vec<(Key, Complex64)>,
}

#[derive(Clone, Copy)]
struct Packing {
    bits: u32,
    mask: Key,
}

impl Packing {
    fn new(d: usize) -> Packing {
        let bits = (usize::BITS - (d.max(2) - 1).leading_zeros()).max(1);
        Packing {
            bits,
            mask: (1 << bits) - 1,
        }
    }

    fn max_vars(self) -> usize {
        (Key::BITS / self.bits) as usize
    }

    fn get(self, key: Key, pos: usize) -> Key {
        (key >> (pos as u32 * self.bits)) & self.mask
    }

    /// Moves the labels at positions `from[i]` to positions `to[i]`.
    fn remap(self, key: Key, moves: &[(usize, usize)]) -> Key {
        moves
            .iter()
            .fold(0, |acc, &(f, t)| acc | (self.get(key, f) << (t as u32 * self.bits)))
    }
}

impl Tensor {
    fn from_factor(f: &Factor, t: &Tables, labels: &mut [u32], pk: Packing) -> Tensor {
        let mut vars = f.vars();
        vars.sort_unstable();
        vars.dedup();
        let d = t.d;
        let size = d.pow(vars.len() as u32);
        let mut entries = Vec::new();
        for idx in 0..size {
            let mut k = idx;
            let mut key: Key = 0;
            for (pos, &v) in vars.iter().enumerate() {
                let x = k % d;
                labels[v] = x as u32;
                key |= (x as Key) << (pos as u32 * pk.bits);
                k /= d;
            }
            let z = f.value(t, labels);
            if z != Complex64::new(0.0, 0.0) {
                entries.push((key, z));
            }
        }
        Tensor { vars, entries }
    }
}

/// Sum over all labellings of `num_vars` variables of the product of
/// `factors`. `cap` bounds the number of nonzero entries of any
/// intermediate tensor.
pub fn contract(factors: &[Factor], num_vars: usize, t: &Tables, cap: u128, threads: usize) -> Result<Complex64> {
    let d = t.d;
    let pk = Packing::new(d);
    let mut labels = vec![0u32; num_vars];
    let mut tensors: Vec<Tensor> = factors
        .iter()
        .map(|f| Tensor::from_factor(f, t, &mut labels, pk))
        .collect();
    let mut scalar = Complex64::new(1.0, 0.0);
    let mut alive = vec![true; num_vars];
    // variables that no factor mentions sum to a multiplicity of d
    let mut mentioned = vec![false; num_vars];
    for tn in &tensors {
        tn.vars.iter().for_each(|&v| mentioned[v] = true);
    }
    for v in 0..num_vars {
        if !mentioned[v] {
            scalar *= d as f64;
            alive[v] = false;
        }
    }
    let mut rest = Vec::new();
    for tn in tensors.drain(..) {
        if tn.vars.is_empty() {
            scalar *= tn.entries.first().map_or(Complex64::new(0.0, 0.0), |e| e.1);
        } else {
            rest.push(tn);
        }
    }
    tensors = rest;
    let sets: Vec<Vec<usize>> = tensors.iter().map(|tn| tn.vars.clone()).collect();
    let (order, widest) = plan(&sets, &alive, d);
    if widest > pk.max_vars() {
        return Err(Error::ResourceCap {
            entries: (d as u128).saturating_pow(widest as u32),
            cap,
        });
    }
    for v in order {
        if scalar == Complex64::new(0.0, 0.0) || tensors.iter().any(|tn| tn.entries.is_empty()) {
            return Ok(Complex64::new(0.0, 0.0));
        }
        let (take, keep): (Vec<Tensor>, Vec<Tensor>) =
            tensors.into_iter().partition(|tn| tn.vars.binary_search(&v).is_ok());
        tensors = keep;
        let out = eliminate(take, v, pk, cap, threads)?;
        if out.vars.is_empty() {
            scalar *= out.entries.first().map_or(Complex64::new(0.0, 0.0), |e| e.1);
        } else {
            tensors.push(out);
        }
    }
    for tn in &tensors {
        scalar *= tn.entries.first().map_or(Complex64::new(0.0, 0.0), |e| e.1);
    }
    Ok(scalar)
}

const PLAN_TRIALS: usize = 64;

/// Elimination order for the variables marked `alive`, with the widest
/// intermediate tensor it creates.
fn plan(sets: &[Vec<usize>], alive: &[bool], d: usize) -> (Vec<usize>, usize) {
    let mut rng = StdRng::seed_from_u64(0x5eed);
    let mut best: Option<(f64, usize, Vec<usize>)> = None;
    for trial in 0..PLAN_TRIALS {
        let fill = trial % 2 == 1;
        let noise = if trial < 2 {
            0.0
        } else {
            0.5 + (trial as f64) / PLAN_TRIALS as f64
        };
        let (order, peak, work) = greedy(sets, alive, d, fill, noise, &mut rng);
        if best.as_ref().is_none_or(|(w, p, _)| (peak, work) < (*p, *w)) {
            best = Some((work, peak, order));
        }
    }
    let (_, peak, order) = best.expect("at least one trial");
    (order, peak)
}

fn greedy(
    sets: &[Vec<usize>],
    alive: &[bool],
    d: usize,
    min_fill: bool,
    noise: f64,
    rng: &mut StdRng,
) -> (Vec<usize>, usize, f64) {
    let n = alive.len();
    let mut sets: Vec<Option<Vec<usize>>> = sets.iter().cloned().map(Some).collect();
    let mut touching: Vec<Vec<usize>> = vec![Vec::new(); n];
    for (i, s) in sets.iter().enumerate() {
        for &v in s.as_ref().expect("live set") {
            touching[v].push(i);
        }
    }
    let mut alive = alive.to_vec();
    let mut order = Vec::new();
    let (mut peak, mut work) = (0usize, 0.0f64);
    let ld = (d as f64).ln();
    loop {
        let mut choice: Option<(f64, usize, Vec<usize>)> = None;
        for v in (0..n).filter(|&v| alive[v]) {
            let mut union: Vec<usize> = Vec::new();
            let mut own = 0usize;
            for &i in &touching[v] {
                let s = sets[i].as_ref().expect("live set");
                own = own.max(s.len() - 1);
                union.extend(s.iter().copied().filter(|&w| w != v));
            }
            union.sort_unstable();
            union.dedup();
            let base = if min_fill {
                (union.len() - own.min(union.len())) as f64 + 0.01 * union.len() as f64
            } else {
                union.len() as f64
            };
            let score = base + noise * rng.random::<f64>();
            if choice.as_ref().is_none_or(|(c, _, _)| score < *c) {
                choice = Some((score, v, union));
            }
        }
        let Some((_, v, union)) = choice else { break };
        peak = peak.max(union.len());
        work += ((union.len() + 1) as f64 * ld).exp();
        let merged: Vec<usize> = std::mem::take(&mut touching[v]);
        for &i in &merged {
            let s = sets[i].take().expect("live set");
            for w in s {
                if w != v {
                    touching[w].retain(|&j| j != i);
                }
            }
        }
        let id = sets.len();
        for &w in &union {
            touching[w].push(id);
        }
        sets.push(Some(union));
        alive[v] = false;
        order.push(v);
    }
    (order, peak, work)
}

/// Joins `parts` (all mentioning `v`) and sums `v` out.
fn eliminate(mut parts: Vec<Tensor>, v: usize, pk: Packing, cap: u128, threads: usize) -> Result<Tensor> {
    parts.sort_by_key(|tn| tn.entries.len());
    let mut acc = parts.remove(0);
    while !parts.is_empty() {
        // next: the part sharing the most variables, then the smallest
        let k = (0..parts.len())
            .max_by_key(|&i| {
                let shared = parts[i]
                    .vars
                    .iter()
                    .filter(|w| acc.vars.binary_search(w).is_ok())
                    .count();
                (shared, std::cmp::Reverse(parts[i].entries.len()))
            })
            .expect("a part");
        let b = parts.remove(k);
        let drop = if parts.is_empty() { Some(v) } else { None };
        acc = join(&acc, &b, drop, pk, cap, threads)?;
    }
    if acc.vars.binary_search(&v).is_ok() {
        acc = sum_out(&acc, v, pk);
    }
    Ok(acc)
}

fn positions(vars: &[usize], out: &[usize]) -> Vec<(usize, usize)> {
    vars.iter()
        .enumerate()
        .filter_map(|(i, w)| out.binary_search(w).ok().map(|j| (i, j)))
        .collect()
}

fn sum_out(a: &Tensor, v: usize, pk: Packing) -> Tensor {
    let vars: Vec<usize> = a.vars.iter().copied().filter(|&w| w != v).collect();
    let moves = positions(&a.vars, &vars);
    let mut m: HashMap<Key, Complex64> = HashMap::default();
    for &(k, z) in &a.entries {
        *m.entry(pk.remap(k, &moves)).or_default() += z;
    }
    Tensor {
        vars,
        entries: m.into_iter().collect(),
    }
}

/// Product of `a` and `b`, summing over `drop` if given.
fn join(a: &Tensor, b: &Tensor, drop: Option<usize>, pk: Packing, cap: u128, threads: usize) -> Result<Tensor> {
    let shared: Vec<usize> = a
        .vars
        .iter()
        .copied()
        .filter(|w| b.vars.binary_search(w).is_ok())
        .collect();
    let mut out: Vec<usize> = a
        .vars
        .iter()
        .chain(&b.vars)
        .copied()
        .filter(|&w| Some(w) != drop)
        .collect();
    out.sort_unstable();
    out.dedup();
    if out.len() > pk.max_vars() {
        return Err(Error::ResourceCap {
            entries: u128::MAX,
            cap,
        });
    }
    let (sa, sb) = (positions(&a.vars, &shared), positions(&b.vars, &shared));
    let (oa, ob) = (positions(&a.vars, &out), positions(&b.vars, &out));
    let mut index: HashMap<Key, Vec<(Key, Complex64)>> = HashMap::default();
    for &(k, z) in &b.entries {
        index.entry(pk.remap(k, &sb)).or_default().push((pk.remap(k, &ob), z));
    }
    let run = |chunk: &[(Key, Complex64)]| -> Result<Vec<(Key, Complex64)>> {
        let mut flat = Vec::new();
        let mut summed: HashMap<Key, Complex64> = HashMap::default();
        for &(k, z) in chunk {
            let Some(ms) = index.get(&pk.remap(k, &sa)) else {
                continue;
            };
            let ka = pk.remap(k, &oa);
            for &(kb, zb) in ms {
                if drop.is_some() {
                    *summed.entry(ka | kb).or_default() += z * zb;
                } else {
                    flat.push((ka | kb, z * zb));
                }
            }
            if (flat.len() + summed.len()) as u128 > cap {
                return Err(Error::ResourceCap {
                    entries: (flat.len() + summed.len()) as u128,
                    cap,
                });
            }
        }
        if drop.is_some() {
            flat.extend(summed);
        }
        Ok(flat)
    };
    let threads = threads.max(1);
    let parts: Vec<Vec<(Key, Complex64)>> = if threads == 1 || a.entries.len() < 1 << 12 {
        vec![run(&a.entries)?]
    } else {
        let chunk = a.entries.len().div_ceil(threads);
        std::thread::scope(|s| {
            let hs: Vec<_> = a.entries.chunks(chunk).map(|c| s.spawn(move || run(c))).collect();
            hs.into_iter()
                .map(|h| h.join().expect("worker"))
                .collect::<Result<Vec<_>>>()
        })?
    };
    let entries: Vec<(Key, Complex64)> = if drop.is_some() && parts.len() > 1 {
        let mut m: HashMap<Key, Complex64> = HashMap::default();
        for p in parts {
            for (k, z) in p {
                *m.entry(k).or_default() += z;
            }
        }
        m.into_iter().collect()
    } else {
        parts.into_iter().flatten().collect()
    };
    if entries.len() as u128 > cap {
        return Err(Error::ResourceCap {
            entries: entries.len() as u128,
            cap,
        });
    }
    Ok(Tensor { vars: out, entries })
}
