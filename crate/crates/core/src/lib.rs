//! Quantum spin-network evaluation at a root of unity, the Crane–Yetter
//! state sum on triangulated closed 4-manifolds, and the dilute-gas
//! quantities of four-dimensional spin-foam perturbation theory.
//!
//! The crate is organised bottom-up:
//!
//! * [`qalgebra`]: quantum integers, dimensions, twists and the global
//!   constants `η`, `κ±` at level `r`.
//! * [`recoupling`]: θ, tetrahedral and 15j networks, the insertion graphs
//!   and a planar reduction engine that turns any ribbon diagram into a
//!   sum-product expression over labels.
//! * [`tl_oracle`]: an independent Temperley–Lieb evaluator used to verify
//!   everything in [`recoupling`].
//! * [`statesum`]: triangulations, Pachner moves and the Crane–Yetter state
//!   sum evaluated by enumeration or by tensor-network contraction.
//! * [`perturbation`]: `z₁, z₂, z₃`, insertion combinatorics, the dilute-gas
//!   partition function and large-`N` asymptotics.
//! * [`cli`]: the command-line front end.

pub mod cli;
pub mod error;
pub mod perturbation;
pub mod qalgebra;
pub mod recoupling;
pub mod statesum;
pub mod tl_oracle;

pub use error::{Error, Result};
pub use qalgebra::{Level, QComplex, SpinLabel};
