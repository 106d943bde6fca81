//! Closed simplicial 4-manifolds.

use std::collections::{BTreeSet, HashMap};
use std::fmt::Write;

use crate::error::{Error, Result};

/// A pure 4-dimensional simplicial complex with its face lattice indexed.
#[derive(Clone, Debug)]
pub struct Triangulation4 {
    pub name: String,
    pub signature: Option<i64>,
    pub euler: Option<i64>,
    /// Simplices as written in the source.
    pub simplices: Vec<[u32; 5]>,
    pub vertices: Vec<u32>,
    pub edges: Vec<[u32; 2]>,
    pub triangles: Vec<[u32; 3]>,
    pub tetrahedra: Vec<[u32; 4]>,
    /// Per simplex (vertices sorted): triangle ids by omitted local pair
    /// in the order 01, 02, 03, 04, 12, 13, 14, 23, 24, 34.
    pub simplex_triangles: Vec<[usize; 10]>,
    /// Per simplex: tetrahedron id omitting local vertex `i`.
    pub simplex_tetrahedra: Vec<[usize; 5]>,
    /// Coherent orientation of the sorted simplices, if one exists; the
    /// first simplex in its written order is positive.
    pub orientation: Option<Vec<i8>>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct HandleCounts {
    pub h1: usize,
    pub h2: usize,
    pub h3: usize,
    pub h4: usize,
}

pub fn sorted<const K: usize>(mut x: [u32; K]) -> [u32; K] {
    x.sort_unstable();
    x
}

fn drop_index<const K: usize, const J: usize>(x: &[u32; K], skip: &[usize]) -> [u32; J] {
    let mut out = [0u32; J];
    let mut k = 0;
    for (i, &v) in x.iter().enumerate() {
        if !skip.contains(&i) {
            out[k] = v;
            k += 1;
        }
    }
    out
}

/// Sign of the permutation sorting `x`.
fn parity(x: &[u32]) -> i8 {
    let mut s = 1;
    for i in 0..x.len() {
        for j in i + 1..x.len() {
            if x[i] > x[j] {
                s = -s;
            }
        }
    }
    s
}

const PAIRS: [(usize, usize); 10] = [
    (0, 1),
    (0, 2),
    (0, 3),
    (0, 4),
    (1, 2),
    (1, 3),
    (1, 4),
    (2, 3),
    (2, 4),
    (3, 4),
];

impl Triangulation4 {
    /// Validates and indexes a list of 4-simplices.
    pub fn from_simplices(
        name: impl Into<String>,
        simplices: Vec<[u32; 5]>,
        signature: Option<i64>,
        euler: Option<i64>,
    ) -> Result<Triangulation4> {
        if simplices.is_empty() {
            return Err(Error::EmptyTriangulation);
        }
        let mut seen = BTreeSet::new();
        for (i, s) in simplices.iter().enumerate() {
            let ss = sorted(*s);
            if let Some(w) = ss.windows(2).find(|w| w[0] == w[1]) {
                return Err(Error::RepeatedVertex { index: i, vertex: w[0] });
            }
            if !seen.insert(ss) {
                return Err(Error::DuplicateSimplex(*s));
            }
        }
        let sorted_s: Vec<[u32; 5]> = simplices.iter().map(|&s| sorted(s)).collect();
        let mut facets: HashMap<[u32; 4], Vec<(usize, usize)>> = HashMap::new();
        for (k, s) in sorted_s.iter().enumerate() {
            for i in 0..5 {
                facets.entry(drop_index(s, &[i])).or_default().push((k, i));
            }
        }
        let mut bad: Vec<(&[u32; 4], usize)> = facets
            .iter()
            .filter(|(_, v)| v.len() != 2)
            .map(|(f, v)| (f, v.len()))
            .collect();
        bad.sort();
        if let Some((f, count)) = bad.first() {
            return Err(Error::NonManifoldFacet {
                facet: **f,
                count: *count,
            });
        }

        let mut vset = BTreeSet::new();
        let mut eset = BTreeSet::new();
        let mut tset = BTreeSet::new();
        let mut qset = BTreeSet::new();
        for s in &sorted_s {
            for &v in s {
                vset.insert(v);
            }
            for i in 0..5 {
                qset.insert(drop_index::<5, 4>(s, &[i]));
            }
            for &(i, j) in &PAIRS {
                tset.insert(drop_index::<5, 3>(s, &[i, j]));
                let keep: Vec<u32> = [i, j].iter().map(|&k| s[k]).collect();
                eset.insert([keep[0], keep[1]]);
            }
        }
        let triangles: Vec<[u32; 3]> = tset.into_iter().collect();
        let tetrahedra: Vec<[u32; 4]> = qset.into_iter().collect();
        let tid: HashMap<[u32; 3], usize> = triangles.iter().enumerate().map(|(i, &t)| (t, i)).collect();
        let qid: HashMap<[u32; 4], usize> = tetrahedra.iter().enumerate().map(|(i, &t)| (t, i)).collect();
        let simplex_triangles = sorted_s
            .iter()
            .map(|s| PAIRS.map(|(i, j)| tid[&drop_index::<5, 3>(s, &[i, j])]))
            .collect();
        let simplex_tetrahedra = sorted_s
            .iter()
            .map(|s| [0, 1, 2, 3, 4].map(|i| qid[&drop_index::<5, 4>(s, &[i])]))
            .collect();

        let orientation = orient(&sorted_s, &simplices[0], &facets);
        let t = Triangulation4 {
            name: name.into(),
            signature,
            euler,
            simplices,
            vertices: vset.into_iter().collect(),
            edges: eset.into_iter().collect(),
            triangles,
            tetrahedra,
            simplex_triangles,
            simplex_tetrahedra,
            orientation,
        };
        if let Some(declared) = euler {
            let computed = t.euler_characteristic();
            if declared != computed {
                return Err(Error::EulerMismatch { declared, computed });
            }
        }
        Ok(t)
    }

    /// Face counts `(n₀, …, n₄)`.
    pub fn f_vector(&self) -> [usize; 5] {
        [
            self.vertices.len(),
            self.edges.len(),
            self.triangles.len(),
            self.tetrahedra.len(),
            self.simplices.len(),
        ]
    }

    pub fn euler_characteristic(&self) -> i64 {
        let n = self.f_vector();
        n[0] as i64 - n[1] as i64 + n[2] as i64 - n[3] as i64 + n[4] as i64
    }

    /// Simplex `k` with its vertices ascending.
    pub fn sorted_simplex(&self, k: usize) -> [u32; 5] {
        sorted(self.simplices[k])
    }

    pub fn to_text(&self) -> String {
        let mut s = String::new();
        writeln!(s, "name {}", self.name).unwrap();
        if let Some(sig) = self.signature {
            writeln!(s, "signature {sig}").unwrap();
        }
        if let Some(e) = self.euler {
            writeln!(s, "euler {e}").unwrap();
        }
        for x in &self.simplices {
            writeln!(s, "simplex {} {} {} {} {}", x[0], x[1], x[2], x[3], x[4]).unwrap();
        }
        s
    }
}

fn orient(sorted_s: &[[u32; 5]], first: &[u32; 5], facets: &HashMap<[u32; 4], Vec<(usize, usize)>>) -> Option<Vec<i8>> {
    // the facet omitting position i inherits (−1)^i from the simplex;
    // neighbours must induce opposite orientations
    let mut sign = vec![0i8; sorted_s.len()];
    for start in 0..sorted_s.len() {
        if sign[start] != 0 {
            continue;
        }
        sign[start] = if start == 0 { parity(first) } else { 1 };
        let mut stack = vec![start];
        while let Some(k) = stack.pop() {
            for i in 0..5 {
                let f = drop_index::<5, 4>(&sorted_s[k], &[i]);
                for &(k2, j) in &facets[&f] {
                    if k2 == k {
                        continue;
                    }
                    let want = if (i + j) % 2 == 0 { -sign[k] } else { sign[k] };
                    if sign[k2] == 0 {
                        sign[k2] = want;
                        stack.push(k2);
                    } else if sign[k2] != want {
                        return None;
                    }
                }
            }
        }
    }
    Some(sign)
}

/// Parses the line-oriented triangulation format.
pub fn load_triangulation(source: &str) -> Result<Triangulation4> {
    let mut name = String::from("unnamed");
    let mut signature = None;
    let mut euler = None;
    let mut simplices = Vec::new();
    for (i, raw) in source.lines().enumerate() {
        let line_no = i + 1;
        let line = raw.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let err = |msg: String| Error::Parse { line: line_no, msg };
        let (key, rest) = line.split_once(char::is_whitespace).unwrap_or((line, ""));
        let rest = rest.trim();
        match key {
            "name" => {
                if rest.is_empty() {
                    return Err(err("`name` needs a value".into()));
                }
                name = rest.to_string();
            }
            "signature" => {
                signature = Some(
                    rest.parse::<i64>()
                        .map_err(|_| err(format!("bad signature `{rest}`")))?,
                )
            }
            "euler" => {
                euler = Some(
                    rest.parse::<i64>()
                        .map_err(|_| err(format!("bad euler characteristic `{rest}`")))?,
                )
            }
            "simplex" => {
                let vs: Vec<u32> = rest
                    .split_whitespace()
                    .map(|t| t.parse::<u32>().map_err(|_| err(format!("bad vertex id `{t}`"))))
                    .collect::<Result<_>>()?;
                if vs.len() != 5 {
                    return Err(err(format!("a simplex needs 5 vertices, got {}", vs.len())));
                }
                simplices.push([vs[0], vs[1], vs[2], vs[3], vs[4]]);
            }
            other => return Err(err(format!("unknown keyword `{other}`"))),
        }
    }
    Triangulation4::from_simplices(name, simplices, signature, euler)
}

/// Handle counts with a single 0-handle: `h1 = n₃ − n₄ + 1`, `h2 = n₂`,
/// `h3 = n₁`, `h4 = n₀`.
pub fn handle_counts(t: &Triangulation4) -> HandleCounts {
    let n = t.f_vector();
    HandleCounts {
        h1: n[3] + 1 - n[4],
        h2: n[2],
        h3: n[1],
        h4: n[0],
    }
}
