//! Intermediate covering minima `μ_i`, `1 < i < n`.
//!
//! `μ_i` is the largest covering radius of a projection onto an
//! `i`-dimensional lattice plane. The search below visits the planes spanned
//! by short lattice vectors, which gives a lower bound; an upper bound comes
//! from `μ_n` or, when it succeeds, from the flat certificate.

use std::collections::HashSet;

use num::bigint::BigInt;
use num::{Signed, Zero};
use rayon::prelude::*;

use super::covering::{covering_radius, covering_radius_with_budget, DEFAULT_BOX_BUDGET};
use super::flats::{meets_every_flat, DEFAULT_MAX_CELLS};
use super::successive::mu_1;
use super::Interval;
use crate::body::{Halfspace, Polytope};
use crate::error::{Error, Result};
use crate::exact::normal_form::saturate;
use crate::exact::rational::{half, primitive_integer, to_rational_vec, zero, Rational};
use crate::lattice::{project_lattice, Lattice, LatticePlane};

pub const DEFAULT_SEARCH_BOUND: usize = 2;

/// Box budget for the first pass over all planes.
const SCREEN_BUDGET: usize = 200;

/// Grid cap for the certificate tried at `μ_1` before any plane search.
const QUICK_CELLS: usize = 4_096;

/// Planes that get the full budget after screening.
const REFINE_COUNT: usize = 6;

/// `max_{|J| = i} ||1_J / 2||_K` for an unconditional body, the value of
/// `μ_i(K, Z^n)`.
pub fn unconditional_minimum(k: &Polytope, i: usize) -> Result<Rational> {
    let n = k.dim();
    let mut best = zero();
    for mask in 0u64..(1 << n) {
        if mask.count_ones() as usize != i {
            continue;
        }
        let y: Vec<Rational> = (0..n).map(|j| if mask >> j & 1 == 1 { half() } else { zero() }).collect();
        best = best.max(k.gauge(&y)?);
    }
    Ok(best)
}

/// The unconditional body `U` with `k = U ∩ R^n_{>=0}`, if there is one.
pub fn orthant_closure(k: &Polytope) -> Result<Option<Polytope>> {
    let n = k.dim();
    if n > 12 || k.vertices().iter().flatten().any(Signed::is_negative) {
        return Ok(None);
    }
    let mut pts = Vec::new();
    for v in k.vertices() {
        for mask in 0u64..(1 << n) {
            let p: Vec<Rational> = (0..n).map(|j| if mask >> j & 1 == 1 { -&v[j] } else { v[j].clone() }).collect();
            pts.push(p);
        }
    }
    let u = Polytope::from_points(&pts)?;
    if !u.origin_interior() {
        return Ok(None);
    }
    let mut hs: Vec<Halfspace> = u.halfspaces().to_vec();
    for j in 0..n {
        let mut a = vec![zero(); n];
        a[j] = -Rational::from_integer(1.into());
        hs.push(Halfspace::new(a, zero())?);
    }
    let piece = Polytope::from_halfspaces(&hs, n)?;
    Ok(piece.same_set(k).then_some(u))
}

/// Canonical integer basis of the span of `vectors`.
fn span_key(vectors: &[Vec<Rational>], n: usize) -> Vec<Vec<BigInt>> {
    let ints: Vec<Vec<BigInt>> = vectors.iter().map(|v| primitive_integer(v)).collect();
    saturate(&ints, n)
}

/// All `i`-dimensional planes spanned by vectors of `l` with max-norm at
/// most `bound`, as saturated integer bases.
pub fn lattice_planes(l: &Lattice, i: usize, bound: usize) -> Vec<LatticePlane> {
    let n = l.dim();
    let mut vecs: Vec<Vec<Rational>> = l
        .enumerate_box(&Rational::from_integer(bound.into()))
        .into_iter()
        .filter(|v| v.iter().find(|x| !x.is_zero()).is_some_and(Signed::is_positive))
        .collect();
    vecs.sort_by_key(|v| v.iter().map(|x| x.abs()).sum::<Rational>());
    let mut level: Vec<Vec<Vec<BigInt>>> = Vec::new();
    let mut seen = HashSet::new();
    for v in &vecs {
        let s = span_key(std::slice::from_ref(v), n);
        if seen.insert(s.clone()) {
            level.push(s);
        }
    }
    for d in 1..i {
        let mut next = Vec::new();
        let mut seen = HashSet::new();
        for basis in &level {
            for v in &vecs {
                let mut gens: Vec<Vec<Rational>> = basis.iter().map(|b| to_rational_vec(b)).collect();
                gens.push(v.clone());
                let s = span_key(&gens, n);
                if s.len() == d + 1 && seen.insert(s.clone()) {
                    next.push(s);
                }
            }
        }
        level = next;
    }
    level
        .into_iter()
        .map(|s| LatticePlane { ambient_dim: n, dim: s.len(), spanning_vectors: s })
        .collect()
}

/// Covering radius of the orthogonal projection onto `plane`; `None` when
/// the search gives up on it.
fn projected_radius(k: &Polytope, l: &Lattice, plane: &LatticePlane, tol: &Rational, budget: usize) -> Result<Option<Interval>> {
    let body = k.project_body(plane)?;
    let lattice = project_lattice(l, plane)?.lattice;
    match covering_radius_with_budget(&body, &lattice, tol, budget) {
        Ok(r) => Ok(Some(r)),
        Err(Error::Budget(_)) => Ok(None),
        Err(e) => Err(e),
    }
}

/// Lower bound for `μ_i` from the plane search, and whether every searched
/// plane is known to stay at or below it.
fn plane_search(k: &Polytope, l: &Lattice, i: usize, bound: usize, tol: &Rational) -> Result<(Rational, bool)> {
    let planes = lattice_planes(l, i, bound);
    let screened: Vec<Option<Interval>> = planes
        .par_iter()
        .map(|p| projected_radius(k, l, p, tol, SCREEN_BUDGET))
        .collect::<Result<_>>()?;
    let mut lo = screened.iter().flatten().map(|r| r.lo.clone()).max().unwrap_or_else(zero);
    let mut order: Vec<usize> = (0..planes.len()).filter(|&x| screened[x].is_some()).collect();
    order.sort_by(|&a, &b| screened[b].as_ref().map(|r| &r.hi).cmp(&screened[a].as_ref().map(|r| &r.hi)));
    let mut finals = screened.clone();
    for idx in order.into_iter().take(REFINE_COUNT) {
        let r = screened[idx].as_ref().expect("filtered");
        if r.hi <= lo || r.certified_exact {
            continue;
        }
        let refined = projected_radius(k, l, &planes[idx], tol, DEFAULT_BOX_BUDGET)?;
        if let Some(r) = &refined {
            lo = lo.max(r.lo.clone());
        }
        finals[idx] = refined;
    }
    let tight = finals.iter().all(|r| r.as_ref().is_some_and(|r| r.hi <= lo));
    Ok((lo, tight))
}

/// `μ_i(k, l)` as an interval: exact for unconditional bodies (and their
/// orthant pieces) with `Z^n`, for `i = 1` and for the cases handled exactly
/// by [`covering_radius`]; otherwise the plane search bounds it from below
/// and the flat certificate may close the gap.
pub fn covering_minimum(k: &Polytope, l: &Lattice, i: usize, search_bound: usize, tol: &Rational) -> Result<Interval> {
    let n = k.dim();
    if l.dim() != n {
        return Err(Error::Dimension("body and lattice dimensions differ".into()));
    }
    if i == 0 || i > n {
        return Err(Error::InvalidArgument(format!("index {i} outside 1..={n}")));
    }
    if !tol.is_positive() {
        return Err(Error::InvalidArgument("tolerance must be positive".into()));
    }
    if i == 1 {
        return Ok(Interval::exact(mu_1(k, l)?));
    }
    if l.is_standard() {
        if k.is_unconditional() {
            return Ok(Interval::exact(unconditional_minimum(k, i)?));
        }
        if let Some(u) = orthant_closure(k)? {
            let two = Rational::from_integer(2.into());
            return Ok(Interval::exact(unconditional_minimum(&u, i)? * two));
        }
    }
    if i == n {
        return covering_radius(k, l, tol);
    }
    let first = mu_1(k, l)?;
    if meets_every_flat(k, l, &first, n - i, QUICK_CELLS)? {
        return Ok(Interval::exact(first));
    }
    let (found, tight) = plane_search(k, l, i, search_bound, tol)?;
    let lo = found.clone().max(first.clone());
    if found > first && tight && meets_every_flat(k, l, &found, n - i, DEFAULT_MAX_CELLS)? {
        return Ok(Interval::exact(found));
    }
    let top = covering_radius(k, l, tol)?;
    Ok(Interval::new(lo.clone(), top.hi.max(lo)))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::body::special::{cross_polytope, cube, pni, standard_simplex};
    use crate::exact::rational::{int, rat};
    use crate::lattice::special_lattice;

    #[test]
    fn plane_counts() {
        assert_eq!(lattice_planes(&Lattice::integer(3), 2, 1).len(), 25);
        assert_eq!(lattice_planes(&Lattice::integer(3), 1, 1).len(), 13);
        assert_eq!(lattice_planes(&Lattice::integer(4), 3, 1).len(), 680);
    }

    #[test]
    fn pni_closed_form() {
        let z = Lattice::integer(4);
        let p = pni(4, 2).unwrap();
        let t = rat(1, 64);
        let got: Vec<Rational> = (1..=4).map(|j| covering_minimum(&p, &z, j, 2, &t).unwrap().lo).collect();
        assert_eq!(got, vec![rat(1, 2), rat(1, 2), rat(3, 4), int(1)]);
    }

    #[test]
    fn standard_simplex_minima() {
        for n in 2..=4 {
            let s = standard_simplex(n).unwrap();
            let z = Lattice::integer(n);
            for i in 1..=n {
                let m = covering_minimum(&s, &z, i, 1, &rat(1, 64)).unwrap();
                assert_eq!(m, Interval::exact(int(i as i64)), "n = {n}, i = {i}");
            }
        }
    }

    #[test]
    fn checkerboard_minima() {
        for n in 3..=4 {
            let cb = special_lattice("checkerboard", n).unwrap();
            let t = rat(1, 64);
            let c = covering_minimum(&cube(n).unwrap(), &cb, n - 1, 1, &t).unwrap();
            assert_eq!(c, Interval::exact(rat(1, 2)), "n = {n}");
            let x = covering_minimum(&cross_polytope(n).unwrap(), &cb, 2, 1, &t).unwrap();
            assert_eq!(x, Interval::exact(int(1)), "n = {n}");
        }
    }

    #[test]
    fn unconditional_closed_form_matches_general_routes() {
        use crate::lab::random::{random_unconditional, rng};
        use crate::minima::covering::{covering_radius_search, is_covering, Coverage, DEFAULT_BOX_BUDGET};
        let mut r = rng(5);
        let t = rat(1, 64);
        for s in 0..12 {
            let n = 2 + s % 2;
            let k = random_unconditional(&mut r, n);
            let z = Lattice::integer(n);
            let top = unconditional_minimum(&k, n).unwrap();
            let bb = covering_radius_search(&k, &z, &t, DEFAULT_BOX_BUDGET).unwrap().interval;
            assert!(bb.contains(&top), "{bb:?} vs {top}");
            assert_eq!(is_covering(&k, &z, &top).unwrap(), Coverage::Covered);
            if n == 3 {
                let mid = unconditional_minimum(&k, 2).unwrap();
                let (found, _) = plane_search(&k, &z, 2, 1, &t).unwrap();
                assert!(found <= mid, "{found} > {mid}");
                assert!(found >= &mid - &t, "{found} << {mid}");
            }
        }
    }

    #[test]
    fn index_out_of_range() {
        let z = Lattice::integer(2);
        assert!(covering_minimum(&cube(2).unwrap(), &z, 0, 1, &rat(1, 8)).is_err());
        assert!(covering_minimum(&cube(2).unwrap(), &z, 3, 1, &rat(1, 8)).is_err());
    }
}
