//! Determinantal point processes with interlacing structure: GUE eigenvalues
//! and minors, exact TASEP formulas and simulators, 2+1 dimensional
//! interlacing growth with its lozenge tilings, and Aztec diamond shuffling.
//! Every exact kernel has a Monte Carlo counterpart in [`verify`].

// `!(x > 0.0)` is used on purpose so that NaN is rejected too
#![allow(clippy::neg_cmp_op_on_partial_ord)]
#![allow(clippy::needless_range_loop)]

pub mod aztec;
pub mod detpp;
pub mod error;
pub mod growth;
pub mod gue;
pub mod orthopoly;
pub mod quadrature;
pub mod rng;
pub mod special;
pub mod stats;
pub mod svg;
pub mod tasep;
pub mod verify;

pub use error::{Error, Result};
