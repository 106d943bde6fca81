//! Spin-network evaluation: θ, tetrahedral and 15j networks, and the
//! decorated-circle insertion graphs.
//!
//! θ and Tet use the Kauffman–Lins closed forms. Every other network is
//! built as a ribbon [`Diagram`] and reduced symbolically to a sum-product
//! [`Expression`] in θ/Tet/Δ/braid factors.

mod expr;
mod planar;
mod tables;

use std::sync::OnceLock;

use num_complex::Complex64;

pub use expr::{Expression, Factor, Plan, Var};
pub use planar::{Diagram, EdgeId};
pub use tables::{tables, Tables};

use crate::error::{Error, Result};
use crate::qalgebra::{Level, QComplex, SpinLabel};

/// Three labels meeting at a trivalent vertex.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Triple {
    pub a: SpinLabel,
    pub b: SpinLabel,
    pub c: SpinLabel,
}

impl Triple {
    pub fn new(a: u32, b: u32, c: u32) -> Triple {
        Triple {
            a: SpinLabel(a),
            b: SpinLabel(b),
            c: SpinLabel(c),
        }
    }

    fn raw(self) -> (u32, u32, u32) {
        (self.a.0, self.b.0, self.c.0)
    }
}

/// Truncated fusion rule: even sum, triangle inequality, `a+b+c ≤ 2r−4`.
pub fn is_admissible(t: Triple, level: &Level) -> bool {
    let (a, b, c) = t.raw();
    tables::triple_ok(level.r(), a, b, c)
}

pub fn theta(t: Triple, level: &Level) -> QComplex {
    let (a, b, c) = t.raw();
    QComplex::real(tables::theta_raw(level, a, b, c))
}

/// `Tet[a b e; c d f]`: the tetrahedral network with vertex triples
/// (a,d,e), (b,c,e), (a,b,f), (c,d,f).
pub fn tet(
    a: SpinLabel,
    b: SpinLabel,
    c: SpinLabel,
    d: SpinLabel,
    e: SpinLabel,
    f: SpinLabel,
    level: &Level,
) -> QComplex {
    QComplex::real(tables::tet_raw(level, [a.0, b.0, e.0, c.0, d.0, f.0]))
}

/// Recoupling coefficient taking the H-shaped network with internal edge
/// `j` (vertices (a,b,j), (c,d,j)) to the I-shaped network with internal
/// edge `i` (vertices (d,a,i), (b,c,i)).
pub fn six_j(a: u32, b: u32, c: u32, d: u32, i: u32, j: u32, level: &Level) -> QComplex {
    let t = tables::tet_raw(level, [a, b, i, c, d, j]);
    let th = tables::theta_raw(level, a, d, i) * tables::theta_raw(level, b, c, i);
    if th == 0.0 {
        return QComplex::real(0.0);
    }
    QComplex::real(t * level.dim(i) / th)
}

/// Half-twist eigenvalue `λ^{ab}_c = (−1)^{(a+b−c)/2} A^{[c(c+2)−a(a+2)−b(b+2)]/2}`.
pub fn braid(a: u32, b: u32, c: u32, level: &Level) -> QComplex {
    QComplex::new(tables::braid_raw(level, a, b, c))
}

/// Labels of one 4-simplex network.
///
/// `faces` are indexed by the triangle's missing pair of local vertices in
/// lexicographic order `01, 02, 03, 04, 12, 13, 14, 23, 24, 34` (triangle
/// `ij` omits vertices `i` and `j`); `intertwiners[i]` labels the
/// tetrahedron omitting vertex `i`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct FifteenJLabels {
    pub faces: [SpinLabel; 10],
    pub intertwiners: [SpinLabel; 5],
}

/// Position of the triangle omitting local vertices `i ≠ j`.
pub fn face_index(i: usize, j: usize) -> usize {
    let (i, j) = if i < j { (i, j) } else { (j, i) };
    const IDX: [[usize; 5]; 5] = [
        [9, 0, 1, 2, 3],
        [0, 9, 4, 5, 6],
        [1, 4, 9, 7, 8],
        [2, 5, 7, 9, 9],
        [3, 6, 8, 9, 9],
    ];
    debug_assert!(i != j);
    IDX[i][j]
}

impl FifteenJLabels {
    pub fn new(faces: [u32; 10], intertwiners: [u32; 5]) -> FifteenJLabels {
        FifteenJLabels {
            faces: faces.map(SpinLabel),
            intertwiners: intertwiners.map(SpinLabel),
        }
    }

    pub fn zero() -> FifteenJLabels {
        FifteenJLabels::new([0; 10], [0; 5])
    }

    pub fn as_array(&self) -> [u32; 15] {
        let mut out = [0; 15];
        for (o, f) in out.iter_mut().zip(self.faces.iter().chain(self.intertwiners.iter())) {
            *o = f.0;
        }
        out
    }

    /// The four triangle labels of tetrahedron `i`, split into the pair
    /// opposite its two smallest remaining vertices and the pair opposite
    /// its two largest, each with the intertwiner.
    pub fn recoupling_triples(&self, i: usize) -> [Triple; 2] {
        let js: Vec<usize> = (0..5).filter(|&j| j != i).collect();
        let f = |j: usize| self.faces[face_index(i, j)].0;
        let e = self.intertwiners[i].0;
        [Triple::new(f(js[0]), f(js[1]), e), Triple::new(f(js[2]), f(js[3]), e)]
    }

    /// True when every tetrahedron's two recoupling triples are admissible.
    pub fn is_admissible(&self, level: &Level) -> bool {
        (0..5).all(|i| self.recoupling_triples(i).iter().all(|&t| is_admissible(t, level)))
    }
}

/// Every 15j labelling whose recoupling triples are all admissible.
pub fn admissible_fifteen_j_labels(level: &Level) -> Vec<FifteenJLabels> {
    let r = level.r();
    let d = r - 1;
    let mut out = Vec::new();
    let mut faces = [0u32; 10];
    let total = (d as u64).pow(10);
    for code in 0..total {
        let mut k = code;
        for f in faces.iter_mut() {
            *f = (k % d as u64) as u32;
            k /= d as u64;
        }
        let probe = FifteenJLabels::new(faces, [0; 5]);
        let mut choices: Vec<Vec<u32>> = Vec::with_capacity(5);
        for i in 0..5 {
            let [t1, t2] = probe.recoupling_triples(i);
            let c: Vec<u32> = (0..d)
                .filter(|&e| tables::triple_ok(r, t1.a.0, t1.b.0, e) && tables::triple_ok(r, t2.a.0, t2.b.0, e))
                .collect();
            if c.is_empty() {
                break;
            }
            choices.push(c);
        }
        if choices.len() < 5 {
            continue;
        }
        let mut idx = [0usize; 5];
        loop {
            let e = [0, 1, 2, 3, 4].map(|i| choices[i][idx[i]]);
            out.push(FifteenJLabels::new(faces, e));
            let mut i = 0;
            while i < 5 {
                idx[i] += 1;
                if idx[i] < choices[i].len() {
                    break;
                }
                idx[i] = 0;
                i += 1;
            }
            if i == 5 {
                break;
            }
        }
    }
    out
}

/// The 4-simplex ribbon network.
///
/// Node `i` (the tetrahedron omitting vertex `i`) is split into two
/// trivalent vertices joined by the intertwiner edge; triangle edges run
/// between the nodes that contain them. The framing is the one induced by
/// the boundary of a 4-simplex: blackboard framing on a projection with a
/// single crossing (`03` over `14`), corrected by half-twists at two
/// vertices and one kink each on `03`, `13` and `14`.
pub fn fifteen_j_diagram() -> Diagram {
    let mut d = Diagram::new(15);
    let t = |i: usize, j: usize| face_index(i, j);
    let e = |i: usize| 10 + i;
    let t01 = d.edge(t(0, 1));
    let t02 = d.edge(t(0, 2));
    let t03a = d.edge(t(0, 3));
    let t03b = d.edge(t(0, 3));
    let t04 = d.edge(t(0, 4));
    let t12 = d.edge(t(1, 2));
    let t13 = d.edge(t(1, 3));
    let t14a = d.edge(t(1, 4));
    let t14b = d.edge(t(1, 4));
    let t23 = d.edge(t(2, 3));
    let t24 = d.edge(t(2, 4));
    let t34 = d.edge(t(3, 4));
    let es: Vec<EdgeId> = (0..5).map(|i| d.edge(e(i))).collect();
    // stubs between a vertex and a half-twist or kink
    let h03 = d.edge(t(0, 3));
    let h04 = d.edge(t(0, 4));
    let g04 = d.edge(t(0, 4));
    let g14 = d.edge(t(1, 4));
    let k03 = d.edge(t(0, 3));
    let k13 = d.edge(t(1, 3));
    let k14 = d.edge(t(1, 4));
    let l03 = d.edge(t(0, 3));
    let l13 = d.edge(t(1, 3));
    let l14 = d.edge(t(1, 4));
    let build = |d: &mut Diagram| -> Result<()> {
        d.vertex([t02, t01, es[0]])?;
        d.vertex([h04, h03, es[0]])?;
        d.vertex([t01, t12, es[1]])?;
        d.vertex([k13, k14, es[1]])?;
        d.vertex([t12, t02, es[2]])?;
        d.vertex([t24, t23, es[2]])?;
        d.vertex([k03, t13, es[3]])?;
        d.vertex([t23, t34, es[3]])?;
        d.vertex([g14, g04, es[4]])?;
        d.vertex([t34, t24, es[4]])?;
        d.crossing([t03a, t14a, t03b, t14b], true)?;
        d.crossing([t03a, t04, h03, h04], true)?;
        d.crossing([t04, t14b, g04, g14], true)?;
        d.crossing([t03b, l03, l03, k03], true)?;
        d.crossing([l13, l13, t13, k13], true)?;
        d.crossing([t14a, l14, l14, k14], true)
    };
    build(&mut d).expect("fixed network is well formed");
    d
}

fn fifteen_j_plans() -> &'static (Plan, Plan) {
    static PLANS: OnceLock<(Plan, Plan)> = OnceLock::new();
    PLANS.get_or_init(|| {
        let e = fifteen_j_diagram().reduce().expect("4-simplex network reduces");
        (e.plan(), e.mirror().plan())
    })
}

/// Symbolic form of the 4-simplex network in its 15 labels (faces first,
/// then intertwiners).
pub fn fifteen_j_expression() -> &'static Expression {
    fifteen_j_plans().0.expression()
}

/// 4-simplex network value; zero on inadmissible labels.
pub fn fifteen_j(labels: FifteenJLabels, level: &Level) -> QComplex {
    QComplex::new(fifteen_j_raw(&labels.as_array(), false, level))
}

/// Value of the mirror-image network (complex conjugate on real labels).
pub fn fifteen_j_mirror(labels: FifteenJLabels, level: &Level) -> QComplex {
    QComplex::new(fifteen_j_raw(&labels.as_array(), true, level))
}

pub(crate) fn fifteen_j_raw(labels: &[u32; 15], mirror: bool, level: &Level) -> Complex64 {
    if labels.iter().any(|&n| !level.is_admissible(n)) {
        return Complex64::new(0.0, 0.0);
    }
    let plans = fifteen_j_plans();
    let p = if mirror { &plans.1 } else { &plans.0 };
    p.evaluate(&tables(level), labels)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum InsertionKind {
    /// Two circles joined by one adjoint edge.
    Gamma1,
    /// Two circles joined by two adjoint edges.
    Gamma2,
    /// A circle with two adjoint edges to two circles carrying one each.
    Gamma2Wedge,
    /// Two circles joined by three adjoint edges.
    Gamma3,
    /// Three circles in a cycle, neighbours joined by one adjoint edge.
    Gamma3Chain,
}

impl InsertionKind {
    pub const ALL: [InsertionKind; 5] = [
        InsertionKind::Gamma1,
        InsertionKind::Gamma2,
        InsertionKind::Gamma2Wedge,
        InsertionKind::Gamma3,
        InsertionKind::Gamma3Chain,
    ];

    pub fn arity(self) -> usize {
        match self {
            InsertionKind::Gamma1 | InsertionKind::Gamma2 | InsertionKind::Gamma3 => 2,
            InsertionKind::Gamma2Wedge | InsertionKind::Gamma3Chain => 3,
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            InsertionKind::Gamma1 => "gamma1",
            InsertionKind::Gamma2 => "gamma2",
            InsertionKind::Gamma2Wedge => "gamma2-wedge",
            InsertionKind::Gamma3 => "gamma3",
            InsertionKind::Gamma3Chain => "gamma3-chain",
        }
    }

    pub fn from_name(s: &str) -> Option<InsertionKind> {
        InsertionKind::ALL.into_iter().find(|k| k.name() == s)
    }
}

/// A decorated-circle graph; every connecting edge carries the adjoint.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct InsertionGraph {
    pub kind: InsertionKind,
    pub colors: Vec<SpinLabel>,
}

impl InsertionGraph {
    pub fn new(kind: InsertionKind, colors: &[u32]) -> Result<InsertionGraph> {
        if colors.len() != kind.arity() {
            return Err(Error::Network(format!(
                "{} takes {} circle colours, got {}",
                kind.name(),
                kind.arity(),
                colors.len()
            )));
        }
        Ok(InsertionGraph {
            kind,
            colors: colors.iter().map(|&c| SpinLabel(c)).collect(),
        })
    }
}

/// Ribbon diagram of an insertion graph. External variable 0 is the
/// connecting colour, 1.. are the circle colours.
pub fn insertion_diagram(kind: InsertionKind) -> Diagram {
    let mut d = Diagram::new(1 + kind.arity());
    let a = 0;
    // a circle with a single leg
    fn one_leg(d: &mut Diagram, x: EdgeId, c: Var) -> Result<()> {
        let p = d.edge(c);
        d.vertex([x, p, p])
    }
    // a circle with two legs
    fn two_legs(d: &mut Diagram, x: EdgeId, y: EdgeId, c: Var) -> Result<()> {
        let r = d.edge(c);
        let s = d.edge(c);
        d.vertex([x, r, s])?;
        d.vertex([y, s, r])
    }
    let build = |d: &mut Diagram| -> Result<()> {
        match kind {
            InsertionKind::Gamma1 => {
                let x = d.edge(a);
                one_leg(d, x, 1)?;
                one_leg(d, x, 2)
            }
            InsertionKind::Gamma2 => {
                let x = d.edge(a);
                let y = d.edge(a);
                two_legs(d, x, y, 1)?;
                two_legs(d, x, y, 2)
            }
            InsertionKind::Gamma2Wedge => {
                let x = d.edge(a);
                let y = d.edge(a);
                one_leg(d, x, 1)?;
                two_legs(d, x, y, 2)?;
                one_leg(d, y, 3)
            }
            InsertionKind::Gamma3 => {
                // outer circle coloured 1, inner circle coloured 2, spokes
                let xs: Vec<EdgeId> = (0..3).map(|_| d.edge(a)).collect();
                let ps: Vec<EdgeId> = (0..3).map(|_| d.edge(1)).collect();
                let qs: Vec<EdgeId> = (0..3).map(|_| d.edge(2)).collect();
                for i in 0..3 {
                    d.vertex([ps[(i + 2) % 3], ps[i], xs[i]])?;
                }
                for i in 0..3 {
                    d.vertex([qs[(i + 2) % 3], xs[i], qs[i]])?;
                }
                Ok(())
            }
            InsertionKind::Gamma3Chain => {
                let xs: Vec<EdgeId> = (0..3).map(|_| d.edge(a)).collect();
                for i in 0..3 {
                    two_legs(d, xs[(i + 2) % 3], xs[i], 1 + i)?;
                }
                Ok(())
            }
        }
    };
    build(&mut d).expect("fixed network is well formed");
    d
}

fn insertion_plan(kind: InsertionKind) -> &'static Plan {
    static PLANS: OnceLock<Vec<Plan>> = OnceLock::new();
    let plans = PLANS.get_or_init(|| {
        InsertionKind::ALL
            .iter()
            .map(|&k| insertion_diagram(k).reduce().expect("insertion graph reduces").plan())
            .collect()
    });
    let i = InsertionKind::ALL.iter().position(|&k| k == kind).expect("known kind");
    &plans[i]
}

/// Planar evaluation of an insertion graph.
pub fn eval_insertion_graph(g: &InsertionGraph, level: &Level) -> Result<QComplex> {
    if !level.is_admissible(SpinLabel::ADJOINT.0) {
        return Err(Error::AdjointExcluded(level.r()));
    }
    for &c in &g.colors {
        level.check(c)?;
    }
    let mut ext = vec![SpinLabel::ADJOINT.0];
    ext.extend(g.colors.iter().map(|c| c.0));
    Ok(QComplex::new(insertion_plan(g.kind).evaluate(&tables(level), &ext)))
}
