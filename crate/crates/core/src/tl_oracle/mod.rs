//! Independent verification path: networks are expanded into
//! Temperley–Lieb diagrams through Jones–Wenzl projectors and evaluated by
//! loop counting, with crossings resolved by the Kauffman bracket.
//!
//! This module shares only the scalar layer with [`crate::recoupling`] and
//! never calls into it. It is exponential in the number of strands and is
//! meant for desk-scale checks (`r ≤ 6`, a few dozen strands).

mod eval;
mod network;
mod tl;

pub use eval::oracle_eval_network;
pub use network::{library, NetworkSpec};
pub use tl::{jones_wenzl, TLDiagram, TLElement};
