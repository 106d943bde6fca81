//! Bistellar (Pachner) moves `A * ∂B → ∂A * B` in dimension four.

use std::collections::BTreeSet;
use std::fmt;
use std::str::FromStr;

use super::triangulation::{sorted, Triangulation4};
use crate::error::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum PachnerMove {
    /// Cone a 4-simplex from a new interior vertex.
    OneFive,
    /// Replace two simplices sharing a facet by four around a new edge.
    TwoFour,
    /// Replace three simplices around a triangle by three around the
    /// complementary triangle.
    ThreeThree,
}

impl PachnerMove {
    pub fn label(self) -> &'static str {
        match self {
            PachnerMove::OneFive => "1-5",
            PachnerMove::TwoFour => "2-4",
            PachnerMove::ThreeThree => "3-3",
        }
    }

    fn site_size(self) -> usize {
        match self {
            PachnerMove::OneFive => 5,
            PachnerMove::TwoFour => 4,
            PachnerMove::ThreeThree => 3,
        }
    }
}

impl fmt::Display for PachnerMove {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.label())
    }
}

impl FromStr for PachnerMove {
    type Err = String;
    fn from_str(s: &str) -> std::result::Result<Self, String> {
        match s {
            "1-5" => Ok(PachnerMove::OneFive),
            "2-4" => Ok(PachnerMove::TwoFour),
            "3-3" => Ok(PachnerMove::ThreeThree),
            other => Err(format!("unknown move `{other}` (expected 1-5, 2-4 or 3-3)")),
        }
    }
}

/// Applies `mv` at `site` (the vertex set of the simplex, facet or
/// triangle being replaced) and returns the new triangulation.
pub fn pachner_move(t: &Triangulation4, mv: PachnerMove, site: &[u32]) -> Result<Triangulation4> {
    let fail = |msg: String| Error::PachnerSite { mv: mv.label(), msg };
    if site.len() != mv.site_size() {
        return Err(fail(format!(
            "site needs {} vertices, got {}",
            mv.site_size(),
            site.len()
        )));
    }
    let a: BTreeSet<u32> = site.iter().copied().collect();
    if a.len() != site.len() {
        return Err(fail("site repeats a vertex".into()));
    }
    let contains = |s: &[u32; 5]| a.iter().all(|v| s.contains(v));
    let cofaces: Vec<usize> = (0..t.simplices.len()).filter(|&k| contains(&t.simplices[k])).collect();
    // link of A: the vertices of B
    let mut b: BTreeSet<u32> = BTreeSet::new();
    for &k in &cofaces {
        b.extend(t.simplices[k].iter().filter(|v| !a.contains(v)));
    }
    let (want_cofaces, new_vertex) = match mv {
        PachnerMove::OneFive => (1, true),
        PachnerMove::TwoFour => (2, false),
        PachnerMove::ThreeThree => (3, false),
    };
    if cofaces.len() != want_cofaces {
        return Err(fail(format!(
            "site lies in {} simplices, the move needs {}",
            cofaces.len(),
            want_cofaces
        )));
    }
    if new_vertex {
        let v = t.vertices.last().copied().unwrap_or(0) + 1;
        b.insert(v);
    } else {
        // B must not already be a face of the triangulation
        let bv: Vec<u32> = b.iter().copied().collect();
        let present = t.simplices.iter().any(|s| bv.iter().all(|v| s.contains(v)));
        if present {
            return Err(fail(format!("the complementary face {bv:?} already exists")));
        }
    }
    if a.len() + b.len() != 6 {
        return Err(fail("the site is not a bistellar configuration".into()));
    }
    let av: Vec<u32> = a.iter().copied().collect();
    let bv: Vec<u32> = b.iter().copied().collect();
    let mut simplices: Vec<[u32; 5]> = t
        .simplices
        .iter()
        .enumerate()
        .filter(|(k, _)| !cofaces.contains(k))
        .map(|(_, s)| *s)
        .collect();
    // ∂A * B
    for skip in 0..av.len() {
        let mut s: Vec<u32> = av
            .iter()
            .enumerate()
            .filter(|&(i, _)| i != skip)
            .map(|(_, &v)| v)
            .collect();
        s.extend_from_slice(&bv);
        simplices.push(sorted([s[0], s[1], s[2], s[3], s[4]]));
    }
    let name = format!("{} + {}", t.name, mv.label());
    Triangulation4::from_simplices(name, simplices, t.signature, t.euler)
}
