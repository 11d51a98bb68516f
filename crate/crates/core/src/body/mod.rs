//! Rational polytopes and the named bodies.

pub mod dd;
pub mod polytope;
pub mod special;
pub mod volume;

pub use polytope::{Flags, Halfspace, Polytope};
