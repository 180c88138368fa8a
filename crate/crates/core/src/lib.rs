//! Local homology inference for stratified spaces from finite samples.
//!
//! A sample `P` of a compact set is turned into nested pairs of complexes
//! `(X_a(P), X_a(P - B_b(p)))`; the rank of the map between two such pairs
//! estimates the local homology at `p` and drives point classification.

pub mod cli;
pub mod complexes;
pub mod error;
pub mod explorer;
pub mod fieldla;
pub mod geometry;
pub mod io;
pub mod pipeline;
pub mod plot;
pub mod relhom;
pub mod scales;

pub use error::{Error, Result};
