//! Triangulated closed 4-manifolds, Pachner moves and the Crane–Yetter
//! state sum.

mod contract;
mod crane_yetter;
pub mod fixtures;
mod pachner;
mod triangulation;

pub use contract::contract;
pub use crane_yetter::{
    check_signature, crane_yetter, crane_yetter_with, eta_exponent, factor_graph, state_sum, Options, SignatureCheck,
    Strategy,
};
pub use pachner::{pachner_move, PachnerMove};
pub use triangulation::{handle_counts, load_triangulation, HandleCounts, Triangulation4};

#[cfg(test)]
mod tests;
