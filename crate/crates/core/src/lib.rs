//! Exact geometry of numbers for rational polytopes.

pub mod error;
pub mod body;
pub mod exact;
pub mod graph;
pub mod io;
pub mod lab;
pub mod lattice;
pub mod minima;

pub use error::{Error, Result};
