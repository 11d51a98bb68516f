use serde::Serialize;

use super::planes::{covering_minimum, DEFAULT_SEARCH_BOUND};
use super::successive::{lattice_width, successive_minima};
use super::Interval;
use crate::body::Polytope;
use crate::error::{Error, Result};
use crate::exact::rational::{format_rational, one, Rational};
use crate::lattice::Lattice;

/// `vol(k) / det(l)`.
pub fn density(k: &Polytope, l: &Lattice) -> Result<Rational> {
    if k.dim() != l.dim() {
        return Err(Error::Dimension("body and lattice dimensions differ".into()));
    }
    Ok(k.volume() / l.det_abs())
}

/// `μ_1 ⋯ μ_n · vol / det`, searching planes up to the default bound.
pub fn covering_product(k: &Polytope, l: &Lattice, tol: &Rational) -> Result<Interval> {
    covering_product_with_bound(k, l, tol, DEFAULT_SEARCH_BOUND)
}

pub fn covering_product_with_bound(k: &Polytope, l: &Lattice, tol: &Rational, search_bound: usize) -> Result<Interval> {
    let mus = all_covering_minima(k, l, tol, search_bound)?;
    Ok(product(&mus, &density(k, l)?))
}

fn all_covering_minima(k: &Polytope, l: &Lattice, tol: &Rational, search_bound: usize) -> Result<Vec<Interval>> {
    (1..=k.dim()).map(|i| covering_minimum(k, l, i, search_bound, tol)).collect()
}

fn product(mus: &[Interval], d: &Rational) -> Interval {
    mus.iter().fold(Interval::exact(one()), |acc, m| acc.mul(m)).scale(d)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MinimaReport {
    pub lambdas: Vec<Rational>,
    pub mus: Vec<Interval>,
    pub width: Rational,
    pub density: Rational,
    pub covering_product: Interval,
    /// `λ_1 ⋯ λ_n · vol / det`, at most `2^n` by Minkowski's second theorem.
    pub minkowski2_lhs: Rational,
}

pub fn minima_report(k: &Polytope, l: &Lattice, tol: &Rational, search_bound: usize) -> Result<MinimaReport> {
    let lambdas = successive_minima(k, l)?;
    let (width, _) = lattice_width(k, l)?;
    let density = density(k, l)?;
    let mus = all_covering_minima(k, l, tol, search_bound)?;
    let covering_product = product(&mus, &density);
    let minkowski2_lhs = lambdas.iter().product::<Rational>() * &density;
    Ok(MinimaReport { lambdas, mus, width, density, covering_product, minkowski2_lhs })
}

#[derive(Serialize)]
struct ReportJson<'a> {
    lambdas: Vec<String>,
    mus: &'a [Interval],
    width: String,
    density: String,
    covering_product: &'a Interval,
    minkowski2_lhs: String,
}

impl Serialize for MinimaReport {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        ReportJson {
            lambdas: self.lambdas.iter().map(format_rational).collect(),
            mus: &self.mus,
            width: format_rational(&self.width),
            density: format_rational(&self.density),
            covering_product: &self.covering_product,
            minkowski2_lhs: format_rational(&self.minkowski2_lhs),
        }
        .serialize(s)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::body::special::{cross_polytope, cube, makai_simplex};
    use crate::exact::rational::{int, pow, rat};
    use crate::lattice::special_lattice;

    #[test]
    fn densities() {
        for n in 1..=4u32 {
            let z = Lattice::integer(n as usize);
            let c = cube(n as usize).unwrap();
            assert_eq!(density(&c, &z).unwrap(), pow(&int(2), n));
            assert_eq!(density(&c.scale(&rat(1, 2)).unwrap(), &z).unwrap(), int(1));
        }
        for n in 2..=4u32 {
            let cb = special_lattice("checkerboard", n as usize).unwrap();
            let fact: i64 = (1..=n as i64).product();
            let want = pow(&int(2), n - 1) / int(fact);
            assert_eq!(density(&cross_polytope(n as usize).unwrap(), &cb).unwrap(), want);
        }
    }

    #[test]
    fn products_of_equality_bodies() {
        let t = rat(1, 64);
        for n in 1..=3 {
            let z = Lattice::integer(n);
            assert_eq!(covering_product(&cube(n).unwrap(), &z, &t).unwrap(), Interval::exact(int(1)));
            assert_eq!(covering_product(&cross_polytope(n).unwrap(), &z, &t).unwrap(), Interval::exact(int(1)));
        }
        let tri = covering_product(&makai_simplex(2).unwrap(), &Lattice::integer(2), &t).unwrap();
        assert!(tri.contains(&rat(3, 4)), "{tri:?}");
    }

    #[test]
    fn report_json_uses_strings() {
        let r = minima_report(&cube(2).unwrap(), &Lattice::integer(2), &rat(1, 16), 1).unwrap();
        assert_eq!(r.minkowski2_lhs, int(4));
        let v = serde_json::to_value(&r).unwrap();
        assert_eq!(v["lambdas"][0], "1");
        assert_eq!(v["mus"][0]["lo"], "1/2");
        assert_eq!(v["density"], "4");
    }
}
