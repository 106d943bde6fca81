//! Coloured ribbon networks and their text format.
//!
//! ```text
//! # theta network
//! edge a 2
//! edge b 1
//! edge c 1
//! vertex u a b c
//! vertex v a c b
//! ```
//!
//! `vertex` lists its three edges counter-clockwise; `crossing` lists four
//! edges counter-clockwise with the first and third forming the over
//! strand; `loop <colour>` adds an unknotted component. Every edge must be
//! used exactly twice.

use std::collections::HashMap;
use std::fmt::Write;

use crate::error::{Error, Result};

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct NetworkSpec {
    pub edges: Vec<(String, u32)>,
    pub vertices: Vec<(String, [usize; 3])>,
    /// Legs counter-clockwise; the strand `legs[0]–legs[2]` passes over.
    pub crossings: Vec<(String, [usize; 4])>,
    pub loops: Vec<u32>,
}

impl NetworkSpec {
    pub fn new() -> NetworkSpec {
        NetworkSpec::default()
    }

    pub fn edge(&mut self, name: impl Into<String>, color: u32) -> usize {
        self.edges.push((name.into(), color));
        self.edges.len() - 1
    }

    pub fn vertex(&mut self, legs: [usize; 3]) {
        let name = format!("v{}", self.vertices.len());
        self.vertices.push((name, legs));
    }

    pub fn crossing(&mut self, legs: [usize; 4]) {
        let name = format!("x{}", self.crossings.len());
        self.crossings.push((name, legs));
    }

    pub fn add_loop(&mut self, color: u32) {
        self.loops.push(color);
    }

    pub fn parse(text: &str) -> Result<NetworkSpec> {
        let mut net = NetworkSpec::new();
        let mut by_name: HashMap<String, usize> = HashMap::new();
        let mut pending: Vec<(usize, String, Vec<String>)> = Vec::new();
        for (i, raw) in text.lines().enumerate() {
            let line_no = i + 1;
            let line = raw.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let toks: Vec<&str> = line.split_whitespace().collect();
            let err = |msg: String| Error::Parse { line: line_no, msg };
            let color = |s: &str| s.parse::<u32>().map_err(|_| err(format!("bad colour `{s}`")));
            match toks[0] {
                "edge" if toks.len() == 3 => {
                    if by_name.contains_key(toks[1]) {
                        return Err(err(format!("edge `{}` declared twice", toks[1])));
                    }
                    let e = net.edge(toks[1], color(toks[2])?);
                    by_name.insert(toks[1].to_string(), e);
                }
                "loop" if toks.len() == 2 => net.add_loop(color(toks[1])?),
                "vertex" if toks.len() == 5 => pending.push((
                    line_no,
                    toks[1].into(),
                    toks[2..].iter().map(|s| s.to_string()).collect(),
                )),
                "crossing" if toks.len() == 6 => pending.push((
                    line_no,
                    toks[1].into(),
                    toks[2..].iter().map(|s| s.to_string()).collect(),
                )),
                kw @ ("edge" | "loop" | "vertex" | "crossing") => {
                    return Err(err(format!("wrong number of fields for `{kw}`")))
                }
                other => return Err(err(format!("unknown keyword `{other}`"))),
            }
        }
        for (line, name, legs) in pending {
            let mut ids = Vec::new();
            for l in &legs {
                let id = by_name.get(l).ok_or_else(|| Error::Parse {
                    line,
                    msg: format!("unknown edge `{l}`"),
                })?;
                ids.push(*id);
            }
            if ids.len() == 3 {
                net.vertices.push((name, [ids[0], ids[1], ids[2]]));
            } else {
                net.crossings.push((name, [ids[0], ids[1], ids[2], ids[3]]));
            }
        }
        net.check_closed()?;
        Ok(net)
    }

    /// Every edge has both ends attached.
    pub fn check_closed(&self) -> Result<()> {
        let mut uses = vec![0usize; self.edges.len()];
        for (_, legs) in &self.vertices {
            legs.iter().for_each(|&e| uses[e] += 1);
        }
        for (_, legs) in &self.crossings {
            legs.iter().for_each(|&e| uses[e] += 1);
        }
        for (e, &u) in uses.iter().enumerate() {
            if u != 2 {
                return Err(Error::Network(format!(
                    "edge `{}` has {} attached ends (a closed network needs 2)",
                    self.edges[e].0, u
                )));
            }
        }
        Ok(())
    }

    pub fn to_text(&self) -> String {
        let mut s = String::new();
        for (n, c) in &self.edges {
            writeln!(s, "edge {n} {c}").unwrap();
        }
        for c in &self.loops {
            writeln!(s, "loop {c}").unwrap();
        }
        let name = |e: usize| self.edges[e].0.as_str();
        for (n, l) in &self.vertices {
            writeln!(s, "vertex {n} {} {} {}", name(l[0]), name(l[1]), name(l[2])).unwrap();
        }
        for (n, l) in &self.crossings {
            writeln!(
                s,
                "crossing {n} {} {} {} {}",
                name(l[0]),
                name(l[1]),
                name(l[2]),
                name(l[3])
            )
            .unwrap();
        }
        s
    }
}

/// Standard closed networks, built independently of the recoupling layer.
pub mod library {
    use super::NetworkSpec;

    pub fn theta(a: u32, b: u32, c: u32) -> NetworkSpec {
        let mut n = NetworkSpec::new();
        let ea = n.edge("a", a);
        let eb = n.edge("b", b);
        let ec = n.edge("c", c);
        n.vertex([ea, eb, ec]);
        n.vertex([ea, ec, eb]);
        n
    }

    /// `Tet[a b e; c d f]`: vertex triples (a,d,e), (b,c,e), (a,b,f), (c,d,f).
    pub fn tet(a: u32, b: u32, c: u32, d: u32, e: u32, f: u32) -> NetworkSpec {
        let mut n = NetworkSpec::new();
        let ea = n.edge("a", a);
        let eb = n.edge("b", b);
        let ec = n.edge("c", c);
        let ed = n.edge("d", d);
        let ee = n.edge("e", e);
        let ef = n.edge("f", f);
        // (c,d,f) in the middle, the other three around it
        n.vertex([ed, ec, ef]);
        n.vertex([ee, ed, ea]);
        n.vertex([eb, ec, ee]);
        n.vertex([ea, ef, eb]);
        n
    }

    /// The 4-simplex network. `faces` are ordered 01, 02, 03, 04, 12, 13,
    /// 14, 23, 24, 34 (triangle `ij` omits local vertices `i`, `j`), and
    /// `intertwiners[i]` labels the tetrahedron omitting vertex `i`.
    pub fn fifteen_j(faces: [u32; 10], intertwiners: [u32; 5]) -> NetworkSpec {
        let mut n = NetworkSpec::new();
        let names = ["01", "02", "03", "04", "12", "13", "14", "23", "24", "34"];
        let mut t = Vec::new();
        for (k, nm) in names.iter().enumerate() {
            t.push(n.edge(format!("t{nm}"), faces[k]));
        }
        let t03b = n.edge("t03'", faces[2]);
        let t14b = n.edge("t14'", faces[6]);
        let e: Vec<usize> = (0..5).map(|i| n.edge(format!("e{i}"), intertwiners[i])).collect();
        let [t01, t02, t03, t04, t12, t13, t14, t23, t24, t34] =
            [t[0], t[1], t[2], t[3], t[4], t[5], t[6], t[7], t[8], t[9]];
        // stubs between a vertex and a half-twist or kink
        let h03 = n.edge("h03", faces[2]);
        let h04 = n.edge("h04", faces[3]);
        let g04 = n.edge("g04", faces[3]);
        let g14 = n.edge("g14", faces[6]);
        let k03 = n.edge("k03", faces[2]);
        let k13 = n.edge("k13", faces[5]);
        let k14 = n.edge("k14", faces[6]);
        let l03 = n.edge("l03", faces[2]);
        let l13 = n.edge("l13", faces[5]);
        let l14 = n.edge("l14", faces[6]);
        // each tetrahedron node split into the pair of triangles opposite
        // its two smallest vertices and the pair opposite its two largest
        n.vertex([t02, t01, e[0]]);
        n.vertex([h04, h03, e[0]]);
        n.vertex([t01, t12, e[1]]);
        n.vertex([k13, k14, e[1]]);
        n.vertex([t12, t02, e[2]]);
        n.vertex([t24, t23, e[2]]);
        n.vertex([k03, t13, e[3]]);
        n.vertex([t23, t34, e[3]]);
        n.vertex([g14, g04, e[4]]);
        n.vertex([t34, t24, e[4]]);
        // the 03 strand runs over the 14 strand
        n.crossing([t03, t14, t03b, t14b]);
        // framing: half-twists at two vertices and a kink on 03, 13, 14
        n.crossing([t03, t04, h03, h04]);
        n.crossing([t04, t14b, g04, g14]);
        n.crossing([t03b, l03, l03, k03]);
        n.crossing([l13, l13, t13, k13]);
        n.crossing([t14, l14, l14, k14]);
        n
    }

    /// Two circles (`x`, `y`) joined by one edge of colour `a`.
    pub fn gamma1(a: u32, x: u32, y: u32) -> NetworkSpec {
        let mut n = NetworkSpec::new();
        let s = n.edge("s", a);
        let p = n.edge("p", x);
        let q = n.edge("q", y);
        n.vertex([s, p, p]);
        n.vertex([s, q, q]);
        n
    }

    fn two_leg_circle(n: &mut NetworkSpec, x: usize, y: usize, color: u32, tag: &str) {
        let r = n.edge(format!("{tag}r"), color);
        let s = n.edge(format!("{tag}s"), color);
        n.vertex([x, r, s]);
        n.vertex([y, s, r]);
    }

    /// Two circles joined by two edges of colour `a`.
    pub fn gamma2(a: u32, x: u32, y: u32) -> NetworkSpec {
        let mut n = NetworkSpec::new();
        let s1 = n.edge("s1", a);
        let s2 = n.edge("s2", a);
        two_leg_circle(&mut n, s1, s2, x, "c1");
        two_leg_circle(&mut n, s1, s2, y, "c2");
        n
    }

    /// Circle `y` joined by one edge each to circles `x` and `z`.
    pub fn gamma2_wedge(a: u32, x: u32, y: u32, z: u32) -> NetworkSpec {
        let mut n = NetworkSpec::new();
        let s1 = n.edge("s1", a);
        let s2 = n.edge("s2", a);
        let p = n.edge("p", x);
        let q = n.edge("q", z);
        n.vertex([s1, p, p]);
        two_leg_circle(&mut n, s1, s2, y, "c");
        n.vertex([s2, q, q]);
        n
    }

    /// Outer circle `x` and inner circle `y` joined by three spokes.
    pub fn gamma3(a: u32, x: u32, y: u32) -> NetworkSpec {
        let mut n = NetworkSpec::new();
        let s: Vec<usize> = (0..3).map(|i| n.edge(format!("s{i}"), a)).collect();
        let p: Vec<usize> = (0..3).map(|i| n.edge(format!("p{i}"), x)).collect();
        let q: Vec<usize> = (0..3).map(|i| n.edge(format!("q{i}"), y)).collect();
        for i in 0..3 {
            n.vertex([p[(i + 2) % 3], p[i], s[i]]);
            n.vertex([q[(i + 2) % 3], s[i], q[i]]);
        }
        n
    }

    /// Three circles in a cycle, neighbours joined by one edge.
    pub fn gamma3_chain(a: u32, x: u32, y: u32, z: u32) -> NetworkSpec {
        let mut n = NetworkSpec::new();
        let s: Vec<usize> = (0..3).map(|i| n.edge(format!("s{i}"), a)).collect();
        for (i, c) in [x, y, z].into_iter().enumerate() {
            two_leg_circle(&mut n, s[(i + 2) % 3], s[i], c, &format!("c{i}"));
        }
        n
    }

    /// Two unknots of colours `x` and `y` forming a Hopf link.
    pub fn hopf(x: u32, y: u32) -> NetworkSpec {
        let mut n = NetworkSpec::new();
        let xo = n.edge("x_out", x);
        let xi = n.edge("x_in", x);
        let yo = n.edge("y_out", y);
        let yi = n.edge("y_in", y);
        // upper crossing: y over; lower crossing: x over
        n.crossing([yo, xo, yi, xi]);
        n.crossing([xi, yi, xo, yo]);
        n
    }

    /// A single unknot of colour `x` with one positive curl.
    pub fn curl(x: u32) -> NetworkSpec {
        let mut n = NetworkSpec::new();
        let a = n.edge("a", x);
        let b = n.edge("b", x);
        // the small lobe `b` sits to the east of the crossing
        n.crossing([b, b, a, a]);
        n
    }
}
