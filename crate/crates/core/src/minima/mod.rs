//! Successive minima, lattice width, covering radius and intermediate
//! covering minima.

pub mod covering;
pub mod flats;
pub mod planes;
pub mod report;
pub mod successive;

use num::{Signed, Zero};
use serde::Serialize;

use crate::exact::rational::{format_rational, Rational};

pub use covering::{covering_radius, is_covering, Coverage};
pub use planes::covering_minimum;
pub use report::{covering_product, covering_product_with_bound, density, minima_report, MinimaReport};
pub use successive::{lattice_width, mu_1, shortest_vector, successive_minima};

/// A closed rational interval `[lo, hi]`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Interval {
    pub lo: Rational,
    pub hi: Rational,
    pub certified_exact: bool,
}

impl Interval {
    pub fn exact(v: Rational) -> Self {
        Interval { lo: v.clone(), hi: v, certified_exact: true }
    }

    pub fn new(lo: Rational, hi: Rational) -> Self {
        assert!(lo <= hi, "interval bounds out of order");
        let certified_exact = lo == hi;
        Interval { lo, hi, certified_exact }
    }

    pub fn width(&self) -> Rational {
        &self.hi - &self.lo
    }

    pub fn contains(&self, x: &Rational) -> bool {
        &self.lo <= x && x <= &self.hi
    }

    pub fn midpoint(&self) -> Rational {
        (&self.lo + &self.hi) / Rational::from_integer(2.into())
    }

    /// Product of two intervals of nonnegative numbers.
    pub fn mul(&self, other: &Interval) -> Interval {
        debug_assert!(!self.lo.is_negative() && !other.lo.is_negative());
        Interval {
            lo: &self.lo * &other.lo,
            hi: &self.hi * &other.hi,
            certified_exact: self.certified_exact && other.certified_exact,
        }
    }

    /// Multiplication by a nonnegative scalar.
    pub fn scale(&self, t: &Rational) -> Interval {
        debug_assert!(!t.is_negative());
        Interval { lo: &self.lo * t, hi: &self.hi * t, certified_exact: self.certified_exact || t.is_zero() }
    }

    /// `x^e` for an interval of nonnegative numbers.
    pub fn pow(&self, e: u32) -> Interval {
        Interval {
            lo: crate::exact::rational::pow(&self.lo, e),
            hi: crate::exact::rational::pow(&self.hi, e),
            certified_exact: self.certified_exact,
        }
    }
}

#[derive(Serialize)]
struct IntervalJson {
    lo: String,
    hi: String,
    certified_exact: bool,
}

impl Serialize for Interval {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        IntervalJson { lo: format_rational(&self.lo), hi: format_rational(&self.hi), certified_exact: self.certified_exact }
            .serialize(s)
    }
}

/// Tracks the span of a growing list of rational vectors.
#[derive(Clone)]
pub(crate) struct SpanTracker {
    rows: Vec<Vec<Rational>>,
    pivots: Vec<usize>,
}

impl SpanTracker {
    pub(crate) fn new() -> Self {
        SpanTracker { rows: Vec::new(), pivots: Vec::new() }
    }

    pub(crate) fn rank(&self) -> usize {
        self.rows.len()
    }

    /// Adds `v` if it is independent of the vectors seen so far.
    pub(crate) fn insert(&mut self, v: &[Rational]) -> bool {
        let mut w = v.to_vec();
        for (row, &p) in self.rows.iter().zip(&self.pivots) {
            if !w[p].is_zero() {
                let f = &w[p] / &row[p];
                for (x, y) in w.iter_mut().zip(row) {
                    *x -= &f * y;
                }
            }
        }
        match w.iter().position(|x| !x.is_zero()) {
            Some(p) => {
                self.rows.push(w);
                self.pivots.push(p);
                true
            }
            None => false,
        }
    }
}
