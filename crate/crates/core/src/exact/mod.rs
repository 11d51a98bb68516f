//! Exact scalars, matrices and integer normal forms.

pub mod matrix;
pub mod normal_form;
pub mod rational;

pub use matrix::{determinant, solve_linear, IntMatrix, RatMatrix};
pub use normal_form::{hermite_normal_form, smith_normal_form};
pub use rational::{format_rational, parse_rational, Rational};
