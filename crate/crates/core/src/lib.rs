//! Exact evaluation of the multivariate Tutte polynomial and certification of
//! zero-free regions for graphs and matroids.

pub mod arith;
pub mod certify;
pub mod error;
pub mod graph;
pub mod hunt;
pub mod io;
pub mod matroid;
pub mod regions;
pub mod roots;
pub mod tutte;
pub mod weights;

pub use error::{Error, Result};
