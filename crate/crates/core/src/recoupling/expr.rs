//! Sum-product expressions over spin labels.
//!
//! An [`Expression`] is `Σ_{internal labels} Π factors`, where each factor is
//! one of the elementary recoupling scalars. Variables `0..external` are
//! supplied by the caller; the rest are summed over all labels at the level.

use num_complex::Complex64;

use super::tables::Tables;

pub type Var = usize;

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Factor {
    /// `Δ_v^power`
    Dim { v: Var, power: i32 },
    /// `θ(a,b,c)^power`, with `θ⁻¹ = 0` on inadmissible triples.
    Theta { v: [Var; 3], power: i32 },
    /// `Tet[v0 v1 v2; v3 v4 v5]`
    Tet { v: [Var; 6] },
    /// Half-twist eigenvalue `λ^{ab}_c`, conjugated for `sign < 0`.
    Braid { v: [Var; 3], sign: i8 },
    /// Twist eigenvalue `μ_v`, inverted for `sign < 0`.
    Twist { v: Var, sign: i8 },
    /// `δ(v, 0)`
    IsZero(Var),
    /// `δ(a, b)`
    Same(Var, Var),
}

impl Factor {
    pub fn vars(&self) -> Vec<Var> {
        match self {
            Factor::Dim { v, .. } => vec![*v],
            Factor::Theta { v, .. } | Factor::Braid { v, .. } => v.to_vec(),
            Factor::Tet { v } => v.to_vec(),
            Factor::IsZero(v) | Factor::Twist { v, .. } => vec![*v],
            Factor::Same(a, b) => vec![*a, *b],
        }
    }

    pub fn map_vars(&self, f: impl Fn(Var) -> Var) -> Factor {
        match self {
            Factor::Dim { v, power } => Factor::Dim {
                v: f(*v),
                power: *power,
            },
            Factor::Theta { v, power } => Factor::Theta {
                v: v.map(&f),
                power: *power,
            },
            Factor::Tet { v } => Factor::Tet { v: v.map(&f) },
            Factor::Braid { v, sign } => Factor::Braid {
                v: v.map(&f),
                sign: *sign,
            },
            Factor::Twist { v, sign } => Factor::Twist { v: f(*v), sign: *sign },
            Factor::IsZero(v) => Factor::IsZero(f(*v)),
            Factor::Same(a, b) => Factor::Same(f(*a), f(*b)),
        }
    }

    /// Value at the given assignment (`labels` indexed by variable).
    #[inline]
    pub fn value(&self, t: &Tables, labels: &[u32]) -> Complex64 {
        let re = |x: f64| Complex64::new(x, 0.0);
        match self {
            Factor::Dim { v, power } => re(t.dim(labels[*v]).powi(*power)),
            Factor::Theta { v, power } => {
                let [a, b, c] = v.map(|i| labels[i]);
                match *power {
                    1 => re(t.theta(a, b, c)),
                    -1 => re(t.theta_inv(a, b, c)),
                    p if p >= 0 => re(t.theta(a, b, c).powi(p)),
                    p => re(t.theta_inv(a, b, c).powi(-p)),
                }
            }
            Factor::Tet { v } => re(t.tet(v.map(|i| labels[i]))),
            Factor::Braid { v, sign } => {
                let [a, b, c] = v.map(|i| labels[i]);
                t.braid(a, b, c, *sign)
            }
            // λ^{aa}_0 = μ_a⁻¹
            Factor::Twist { v, sign } => t.braid(labels[*v], labels[*v], 0, -*sign),
            Factor::IsZero(v) => re(if labels[*v] == 0 { 1.0 } else { 0.0 }),
            Factor::Same(a, b) => re(if labels[*a] == labels[*b] { 1.0 } else { 0.0 }),
        }
    }
}

#[derive(Clone, Debug, Default, PartialEq)]
pub struct Expression {
    pub external: usize,
    pub internal: usize,
    pub factors: Vec<Factor>,
}

/// A fixed summation order for an [`Expression`]: internal variables are
/// bound one at a time and each factor is applied as soon as all of its
/// variables are bound, so zero partial products prune whole subtrees.
#[derive(Clone, Debug)]
pub struct Plan {
    expr: Expression,
    order: Vec<Var>,
    // stage[k]: factors completed once order[..k] is bound
    stage: Vec<Vec<usize>>,
}

impl Expression {
    pub fn num_vars(&self) -> usize {
        self.external + self.internal
    }

    /// Mirror image: all braid and twist phases conjugated.
    pub fn mirror(&self) -> Expression {
        let mut out = self.clone();
        for f in &mut out.factors {
            if let Factor::Braid { sign, .. } | Factor::Twist { sign, .. } = f {
                *sign = -*sign;
            }
        }
        out
    }

    pub fn plan(&self) -> Plan {
        let n = self.num_vars();
        let mut bound = vec![false; n];
        for b in bound.iter_mut().take(self.external) {
            *b = true;
        }
        let vars: Vec<Vec<Var>> = self.factors.iter().map(Factor::vars).collect();
        let mut done = vec![false; self.factors.len()];
        let mut stage = vec![Vec::new()];
        let mut order = Vec::new();
        let complete = |bound: &[bool], done: &mut [bool], out: &mut Vec<usize>| {
            for (i, vs) in vars.iter().enumerate() {
                if !done[i] && vs.iter().all(|&v| bound[v]) {
                    done[i] = true;
                    out.push(i);
                }
            }
        };
        complete(&bound, &mut done, &mut stage[0]);
        while order.len() < self.internal {
            // bind the variable that closes the most factors, then the one
            // touching the most open factors
            let best = (self.external..n)
                .filter(|&v| !bound[v])
                .max_by_key(|&v| {
                    let mut closes = 0;
                    let mut touches = 0;
                    for (i, vs) in vars.iter().enumerate() {
                        if done[i] || !vs.contains(&v) {
                            continue;
                        }
                        touches += 1;
                        if vs.iter().all(|&w| w == v || bound[w]) {
                            closes += 1;
                        }
                    }
                    (closes, touches, std::cmp::Reverse(v))
                })
                .expect("unbound internal variable");
            bound[best] = true;
            order.push(best);
            let mut s = Vec::new();
            complete(&bound, &mut done, &mut s);
            stage.push(s);
        }
        Plan {
            expr: self.clone(),
            order,
            stage,
        }
    }

    /// One-shot evaluation; prefer [`Plan::evaluate`] in loops.
    pub fn evaluate(&self, t: &Tables, external: &[u32]) -> Complex64 {
        self.plan().evaluate(t, external)
    }
}

impl Plan {
    pub fn expression(&self) -> &Expression {
        &self.expr
    }

    pub fn evaluate(&self, t: &Tables, external: &[u32]) -> Complex64 {
        assert_eq!(external.len(), self.expr.external, "external label count");
        let mut labels = vec![0u32; self.expr.num_vars()];
        labels[..external.len()].copy_from_slice(external);
        let mut acc = Complex64::new(1.0, 0.0);
        for &f in &self.stage[0] {
            acc *= self.expr.factors[f].value(t, &labels);
            if acc == Complex64::new(0.0, 0.0) {
                return acc;
            }
        }
        acc * self.descend(t, &mut labels, 0)
    }

    fn descend(&self, t: &Tables, labels: &mut [u32], k: usize) -> Complex64 {
        if k == self.order.len() {
            return Complex64::new(1.0, 0.0);
        }
        let v = self.order[k];
        let mut sum = Complex64::new(0.0, 0.0);
        'label: for x in 0..t.d as u32 {
            labels[v] = x;
            let mut acc = Complex64::new(1.0, 0.0);
            for &f in &self.stage[k + 1] {
                acc *= self.expr.factors[f].value(t, labels);
                if acc == Complex64::new(0.0, 0.0) {
                    continue 'label;
                }
            }
            sum += acc * self.descend(t, labels, k + 1);
        }
        sum
    }
}
