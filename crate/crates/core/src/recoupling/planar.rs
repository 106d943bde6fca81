//! Symbolic reduction of ribbon spin networks.
//!
//! A [`Diagram`] is a rotation system: every node lists its half-edges in
//! counter-clockwise order. Nodes are trivalent vertices or four-valent
//! crossings. Reduction removes crossings by fusion, then repeatedly applies
//! the smallest available local move (zero-edge removal, bridge vanishing,
//! bubble, triangle, F-move) until only free loops remain. Labels stay
//! symbolic throughout, so the result is an [`Expression`] in the external
//! labels that can be evaluated at any level or fed to a contraction.

use super::expr::{Expression, Factor, Var};
use crate::error::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct EdgeId(usize);

#[derive(Clone, Debug)]
struct Node {
    legs: Vec<usize>,
    // crossings only: true when the strand legs[0]–legs[2] passes over
    even_over: Option<bool>,
}

#[derive(Clone, Debug)]
enum Class {
    Root { zero: bool },
    Child(Var),
}

#[derive(Clone, Debug)]
pub struct Diagram {
    external: usize,
    classes: Vec<Class>,
    // half-edges
    node: Vec<usize>,
    twin: Vec<usize>,
    var: Vec<Var>,
    nodes: Vec<Option<Node>>,
    // edge id -> its two half-edges; attachment cursor
    edges: Vec<([usize; 2], usize)>,
    factors: Vec<Factor>,
}

const DETACHED: usize = usize::MAX;
const KINK_SIGN: i8 = -1;

impl Diagram {
    /// New diagram whose variables `0..external` are the caller's labels.
    pub fn new(external: usize) -> Diagram {
        Diagram {
            external,
            classes: vec![Class::Root { zero: false }; external],
            node: Vec::new(),
            twin: Vec::new(),
            var: Vec::new(),
            nodes: Vec::new(),
            edges: Vec::new(),
            factors: Vec::new(),
        }
    }

    pub fn fresh_var(&mut self) -> Var {
        self.classes.push(Class::Root { zero: false });
        self.classes.len() - 1
    }

    /// Declares an edge carrying label `v`; attach its two ends with
    /// [`Diagram::vertex`] or [`Diagram::crossing`].
    pub fn edge(&mut self, v: Var) -> EdgeId {
        let h = self.node.len();
        self.node.extend([DETACHED, DETACHED]);
        self.twin.extend([h + 1, h]);
        self.var.extend([v, v]);
        self.edges.push(([h, h + 1], 0));
        EdgeId(self.edges.len() - 1)
    }

    /// A closed loop with no vertices.
    pub fn free_loop(&mut self, v: Var) {
        self.factors.push(Factor::Dim { v, power: 1 });
    }

    fn attach(&mut self, e: EdgeId, n: usize) -> Result<usize> {
        let (hs, used) = &mut self.edges[e.0];
        if *used >= 2 {
            return Err(Error::Network(format!("edge {} attached more than twice", e.0)));
        }
        let h = hs[*used];
        *used += 1;
        self.node[h] = n;
        Ok(h)
    }

    /// Trivalent vertex with legs in counter-clockwise order.
    pub fn vertex(&mut self, legs: [EdgeId; 3]) -> Result<()> {
        let n = self.nodes.len();
        self.nodes.push(None);
        let mut hs = Vec::with_capacity(3);
        for e in legs {
            hs.push(self.attach(e, n)?);
        }
        self.nodes[n] = Some(Node {
            legs: hs,
            even_over: None,
        });
        Ok(())
    }

    /// Crossing with legs in counter-clockwise order; strands run
    /// `legs[0]–legs[2]` and `legs[1]–legs[3]`.
    pub fn crossing(&mut self, legs: [EdgeId; 4], even_over: bool) -> Result<()> {
        let n = self.nodes.len();
        self.nodes.push(None);
        let mut hs = Vec::with_capacity(4);
        for e in legs {
            hs.push(self.attach(e, n)?);
        }
        let (a0, a2, b1, b3) = (self.var[hs[0]], self.var[hs[2]], self.var[hs[1]], self.var[hs[3]]);
        self.unify(a0, a2);
        self.unify(b1, b3);
        self.nodes[n] = Some(Node {
            legs: hs,
            even_over: Some(even_over),
        });
        Ok(())
    }

    fn find(&mut self, v: Var) -> Var {
        let mut root = v;
        while let Class::Child(p) = self.classes[root] {
            root = p;
        }
        let mut cur = v;
        while let Class::Child(p) = self.classes[cur] {
            self.classes[cur] = Class::Child(root);
            cur = p;
        }
        root
    }

    fn is_zero(&mut self, v: Var) -> bool {
        let r = self.find(v);
        matches!(self.classes[r], Class::Root { zero: true })
    }

    fn set_zero(&mut self, v: Var) {
        let r = self.find(v);
        self.classes[r] = Class::Root { zero: true };
    }

    fn unify(&mut self, a: Var, b: Var) {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra == rb {
            return;
        }
        let z = self.is_zero(ra) || self.is_zero(rb);
        let (keep, drop) = if ra < rb { (ra, rb) } else { (rb, ra) };
        self.classes[drop] = Class::Child(keep);
        self.classes[keep] = Class::Root { zero: z };
    }

    fn legs(&self, n: usize) -> &[usize] {
        &self.nodes[n].as_ref().expect("live node").legs
    }

    /// Next half-edge counter-clockwise at the same node.
    fn next(&self, h: usize) -> usize {
        let legs = self.legs(self.node[h]);
        let i = legs.iter().position(|&x| x == h).expect("leg of its node");
        legs[(i + 1) % legs.len()]
    }

    fn live_halfedges(&self) -> Vec<usize> {
        let mut out = Vec::new();
        for n in self.nodes.iter().flatten() {
            out.extend_from_slice(&n.legs);
        }
        out
    }

    fn new_node(&mut self, legs: Vec<usize>) -> usize {
        let n = self.nodes.len();
        for &h in &legs {
            self.node[h] = n;
        }
        self.nodes.push(Some(Node { legs, even_over: None }));
        n
    }

    fn new_edge_pair(&mut self, v: Var) -> (usize, usize) {
        let h = self.node.len();
        self.node.extend([DETACHED, DETACHED]);
        self.twin.extend([h + 1, h]);
        self.var.extend([v, v]);
        (h, h + 1)
    }

    /// Joins the far ends of half-edges `x` and `y` (both about to vanish),
    /// creating a free loop if they were the two ends of one edge.
    fn splice(&mut self, x: usize, y: usize) {
        self.unify(self.var[x], self.var[y]);
        let (tx, ty) = (self.twin[x], self.twin[y]);
        if tx == y {
            self.factors.push(Factor::Dim {
                v: self.var[x],
                power: 1,
            });
        } else {
            self.twin[tx] = ty;
            self.twin[ty] = tx;
        }
    }

    fn check_complete(&self) -> Result<()> {
        for (i, (_, used)) in self.edges.iter().enumerate() {
            if *used != 2 {
                return Err(Error::Network(format!("edge {i} has a free end")));
            }
        }
        Ok(())
    }

    /// Reduces the diagram to an expression in the external labels.
    pub fn reduce(mut self) -> Result<Expression> {
        self.check_complete()?;
        loop {
            if let Some(n) = self
                .nodes
                .iter()
                .position(|n| matches!(n, Some(Node { even_over: Some(_), .. })))
            {
                self.remove_crossing(n);
                continue;
            }
            if self.remove_zero_edge() {
                continue;
            }
            let hs = self.live_halfedges();
            if hs.is_empty() {
                break;
            }
            let (face_of, faces) = self.faces(&hs);
            self.check_planar(&hs, faces.len())?;
            if let Some(&h) = hs.iter().find(|&&h| face_of[h] == face_of[self.twin[h]]) {
                // a bridge carries the trivial label or the network vanishes
                let v = self.var[h];
                self.set_zero(v);
                continue;
            }
            let f = faces.iter().min_by_key(|f| f.len()).expect("a face");
            match f.len() {
                2 => self.bubble(f[0], f[1]),
                3 if self.distinct_nodes(f) => self.triangle(f[0], f[1], f[2]),
                _ => self.fmove(f[0]),
            }
        }
        Ok(self.finish())
    }

    fn distinct_nodes(&self, f: &[usize]) -> bool {
        let ns: Vec<usize> = f.iter().map(|&h| self.node[h]).collect();
        ns[0] != ns[1] && ns[1] != ns[2] && ns[0] != ns[2]
    }

    fn faces(&self, hs: &[usize]) -> (Vec<usize>, Vec<Vec<usize>>) {
        let mut face_of = vec![usize::MAX; self.node.len()];
        let mut faces = Vec::new();
        for &h0 in hs {
            if face_of[h0] != usize::MAX {
                continue;
            }
            let id = faces.len();
            let mut f = Vec::new();
            let mut h = h0;
            loop {
                face_of[h] = id;
                f.push(h);
                h = self.next(self.twin[h]);
                if h == h0 {
                    break;
                }
            }
            faces.push(f);
        }
        (face_of, faces)
    }

    fn check_planar(&self, hs: &[usize], nfaces: usize) -> Result<()> {
        let live: Vec<usize> = (0..self.nodes.len()).filter(|&n| self.nodes[n].is_some()).collect();
        let mut parent: Vec<usize> = (0..self.nodes.len()).collect();
        fn root(p: &mut [usize], mut x: usize) -> usize {
            while p[x] != x {
                p[x] = p[p[x]];
                x = p[x];
            }
            x
        }
        for &h in hs {
            let (a, b) = (
                root(&mut parent, self.node[h]),
                root(&mut parent, self.node[self.twin[h]]),
            );
            parent[a] = b;
        }
        let comps = live.iter().filter(|&&n| root(&mut parent, n) == n).count();
        let v = live.len() as i64;
        let e = hs.len() as i64 / 2;
        if v - e + nfaces as i64 != 2 * comps as i64 {
            return Err(Error::Network("rotation system is not planar".into()));
        }
        Ok(())
    }

    fn remove_crossing(&mut self, n: usize) {
        let node = self.nodes[n].take().expect("crossing");
        let [h0, h1, h2, h3] = [node.legs[0], node.legs[1], node.legs[2], node.legs[3]];
        if let Some(i) = (0..4).find(|&i| self.twin[node.legs[i]] == node.legs[(i + 1) % 4]) {
            // a kink: the loop leaves over and returns under or vice versa
            let over_first = (i % 2 == 0) == (node.even_over == Some(true));
            let v = self.var[node.legs[i]];
            self.factors.push(Factor::Twist {
                v,
                sign: if over_first { KINK_SIGN } else { -KINK_SIGN },
            });
            self.splice(node.legs[(i + 2) % 4], node.legs[(i + 3) % 4]);
            return;
        }
        let (a, b) = (self.var[h0], self.var[h1]);
        let c = self.fresh_var();
        let sign = if node.even_over == Some(true) { 1 } else { -1 };
        self.factors.push(Factor::Dim { v: c, power: 1 });
        self.factors.push(Factor::Theta {
            v: [a, b, c],
            power: -1,
        });
        self.factors.push(Factor::Braid { v: [a, b, c], sign });
        let (hu, hw) = self.new_edge_pair(c);
        self.new_node(vec![h0, h1, hu]);
        self.new_node(vec![h2, h3, hw]);
    }

    fn remove_zero_edge(&mut self) -> bool {
        let hs = self.live_halfedges();
        let Some(&h) = hs.iter().find(|&&h| {
            let v = self.var[h];
            self.is_zero(v)
        }) else {
            return false;
        };
        let t = self.twin[h];
        let (u, w) = (self.node[h], self.node[t]);
        if u == w {
            // 0-coloured self-loop: the third leg must be trivial as well
            let other = self
                .legs(u)
                .iter()
                .copied()
                .find(|&x| x != h && x != t)
                .expect("third leg");
            let v = self.var[other];
            self.set_zero(v);
            self.nodes[u] = None;
            let far = self.twin[other];
            if far == other {
                return true;
            }
            let fw = self.node[far];
            let rest: Vec<usize> = self.legs(fw).iter().copied().filter(|&x| x != far).collect();
            self.nodes[fw] = None;
            self.splice(rest[0], rest[1]);
            return true;
        }
        for (end, n) in [(h, u), (t, w)] {
            let rest: Vec<usize> = self.legs(n).iter().copied().filter(|&x| x != end).collect();
            self.nodes[n] = None;
            self.splice(rest[0], rest[1]);
        }
        true
    }

    fn bubble(&mut self, h1: usize, h2: usize) {
        let (u, v) = (self.node[h1], self.node[h2]);
        let hx = self.next(h1);
        let hy = self.next(h2);
        let (x, y, p, q) = (self.var[hx], self.var[hy], self.var[h1], self.var[h2]);
        self.factors.push(Factor::Theta { v: [x, p, q], power: 1 });
        self.factors.push(Factor::Dim { v: x, power: -1 });
        self.nodes[u] = None;
        self.nodes[v] = None;
        self.splice(hx, hy);
        let _ = y;
    }

    fn triangle(&mut self, h1: usize, h2: usize, h3: usize) {
        let (u, v, w) = (self.node[h1], self.node[h2], self.node[h3]);
        let (xu, xv, xw) = (self.next(h1), self.next(h2), self.next(h3));
        let [p, q, s] = [h1, h2, h3].map(|h| self.var[h]);
        let [a, b, c] = [xu, xv, xw].map(|h| self.var[h]);
        self.factors.push(Factor::Tet { v: [a, b, p, q, s, c] });
        self.factors.push(Factor::Theta {
            v: [a, b, c],
            power: -1,
        });
        self.nodes[u] = None;
        self.nodes[v] = None;
        self.nodes[w] = None;
        self.new_node(vec![xu, xw, xv]);
    }

    fn fmove(&mut self, hj: usize) {
        let hj2 = self.twin[hj];
        let (u, v) = (self.node[hj], self.node[hj2]);
        let ha = self.next(hj);
        let hb = self.next(ha);
        let hc = self.next(hj2);
        let hd = self.next(hc);
        let [a, b, c, d, j] = [ha, hb, hc, hd, hj].map(|h| self.var[h]);
        let i = self.fresh_var();
        self.factors.push(Factor::Tet { v: [a, b, i, c, d, j] });
        self.factors.push(Factor::Dim { v: i, power: 1 });
        self.factors.push(Factor::Theta {
            v: [a, d, i],
            power: -1,
        });
        self.factors.push(Factor::Theta {
            v: [b, c, i],
            power: -1,
        });
        self.nodes[u] = None;
        self.nodes[v] = None;
        let (hx, hy) = self.new_edge_pair(i);
        self.new_node(vec![hd, ha, hx]);
        self.new_node(vec![hb, hc, hy]);
    }

    fn finish(mut self) -> Expression {
        let n = self.classes.len();
        let mut factors = Vec::new();
        let mut target = vec![usize::MAX; n];
        // external variables keep their indices; the smallest external in a
        // class represents it
        for v in 0..self.external {
            let r = self.find(v);
            if target[r] == usize::MAX {
                target[r] = v;
                if self.is_zero(r) {
                    factors.push(Factor::IsZero(v));
                }
            } else {
                factors.push(Factor::Same(v, target[r]));
            }
        }
        // summed variables are numbered in first-use order
        let mut internal = 0usize;
        let raw = std::mem::take(&mut self.factors);
        let mut body = Vec::with_capacity(raw.len());
        for f in &raw {
            for v in f.vars() {
                let r = self.find(v);
                if target[r] == usize::MAX {
                    target[r] = self.external + internal;
                    internal += 1;
                    if self.is_zero(r) {
                        factors.push(Factor::IsZero(target[r]));
                    }
                }
            }
            body.push(f.map_vars(|v| {
                let mut r = v;
                while let Class::Child(p) = self.classes[r] {
                    r = p;
                }
                target[r]
            }));
        }
        factors.extend(body);
        Expression {
            external: self.external,
            internal,
            factors,
        }
    }
}
