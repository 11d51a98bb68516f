//! Named bodies with closed-form vertex and facet lists.

use num::bigint::BigInt;
use num::{One, Signed, Zero};

use super::polytope::{Halfspace, Polytope};
use crate::error::{Error, Result};
use crate::exact::rational::{binomial, factorial, int, one, pow, zero, Rational};

fn sign_vectors(n: usize) -> Vec<Vec<Rational>> {
    (0..1u64 << n)
        .map(|mask| (0..n).map(|i| if mask >> i & 1 == 1 { int(-1) } else { int(1) }).collect())
        .collect()
}

fn unit(n: usize, j: usize, s: i64) -> Vec<Rational> {
    let mut v = vec![zero(); n];
    v[j] = int(s);
    v
}

fn check_dim(n: usize) -> Result<()> {
    if n == 0 {
        return Err(Error::InvalidArgument("dimension must be positive".into()));
    }
    Ok(())
}

/// `{±1}`-combinations of exactly `i` coordinate vectors.
fn pni_vertices(n: usize, i: usize) -> Vec<Vec<Rational>> {
    let mut out = Vec::new();
    for support in 0..1u64 << n {
        if support.count_ones() as usize != i {
            continue;
        }
        let idx: Vec<usize> = (0..n).filter(|j| support >> j & 1 == 1).collect();
        for signs in 0..1u64 << i {
            let mut v = vec![zero(); n];
            for (k, &j) in idx.iter().enumerate() {
                v[j] = if signs >> k & 1 == 1 { int(-1) } else { int(1) };
            }
            out.push(v);
        }
    }
    out
}

fn cube_facets(n: usize) -> Vec<Halfspace> {
    (0..n)
        .flat_map(|j| [1, -1].map(|s| Halfspace { a: unit(n, j, s), b: one() }))
        .collect()
}

fn cross_facets(n: usize, rhs: i64) -> Vec<Halfspace> {
    sign_vectors(n).into_iter().map(|s| Halfspace { a: s, b: int(rhs) }).collect()
}

/// `[-1, 1]^n`.
pub fn cube(n: usize) -> Result<Polytope> {
    check_dim(n)?;
    Ok(Polytope::from_reps_unchecked(n, sign_vectors(n), cube_facets(n)))
}

/// `conv{±e_j}`.
pub fn cross_polytope(n: usize) -> Result<Polytope> {
    check_dim(n)?;
    let verts = (0..n).flat_map(|j| [unit(n, j, 1), unit(n, j, -1)]).collect();
    Ok(Polytope::from_reps_unchecked(n, verts, cross_facets(n, 1)))
}

/// The cube cut by `i` times the cross-polytope.
pub fn pni(n: usize, i: usize) -> Result<Polytope> {
    check_dim(n)?;
    if i == 0 || i > n {
        return Err(Error::InvalidArgument(format!("need 1 <= i <= n, got i = {i}, n = {n}")));
    }
    let mut hs = Vec::new();
    if i >= 2 || n == 1 {
        hs.extend(cube_facets(n));
    }
    if i < n {
        hs.extend(cross_facets(n, i as i64));
    }
    Ok(Polytope::from_reps_unchecked(n, pni_vertices(n, i), hs))
}

/// `conv{e_1, ..., e_n, -1}`.
pub fn makai_simplex(n: usize) -> Result<Polytope> {
    check_dim(n)?;
    let mut verts: Vec<Vec<Rational>> = (0..n).map(|j| unit(n, j, 1)).collect();
    verts.push(vec![int(-1); n]);
    let mut hs = vec![Halfspace { a: vec![one(); n], b: one() }];
    for j in 0..n {
        let mut a = vec![one(); n];
        a[j] = int(-(n as i64));
        hs.push(Halfspace { a, b: one() });
    }
    Ok(Polytope::from_reps_unchecked(n, verts, hs))
}

/// `{x >= 0 : v . x <= 1}`.
pub fn weighted_simplex(v: &[Rational]) -> Result<Polytope> {
    let n = v.len();
    check_dim(n)?;
    if v.iter().any(|x| !x.is_positive()) {
        return Err(Error::InvalidArgument("simplex weights must be positive".into()));
    }
    let mut verts = vec![vec![zero(); n]];
    for (j, w) in v.iter().enumerate() {
        let mut e = vec![zero(); n];
        e[j] = w.recip();
        verts.push(e);
    }
    let mut hs: Vec<Halfspace> = (0..n).map(|j| Halfspace { a: unit(n, j, -1), b: zero() }).collect();
    hs.push(Halfspace::new(v.to_vec(), one())?);
    Ok(Polytope::from_reps_unchecked(n, verts, hs))
}

/// `conv{0, e_1, ..., e_n}`.
pub fn standard_simplex(n: usize) -> Result<Polytope> {
    weighted_simplex(&vec![one(); n])
}

/// `sum_j [-e_j, e_j] + [-1, 1]`; its support function is
/// `sum |y_j| + |sum y_j|`.
pub fn zonotope(n: usize) -> Result<Polytope> {
    check_dim(n)?;
    let gens: Vec<Vec<Rational>> = (0..n).map(|j| unit(n, j, 1)).chain([vec![one(); n]]).collect();
    let mut pts = Vec::new();
    for s in sign_vectors(n + 1) {
        let mut p = vec![zero(); n];
        for (g, sg) in gens.iter().zip(&s) {
            for (x, y) in p.iter_mut().zip(g) {
                *x += sg * y;
            }
        }
        pts.push(p);
    }
    Polytope::from_points(&pts)
}

pub fn polar_zonotope(n: usize) -> Result<Polytope> {
    zonotope(n)?.polar()
}

/// Whether the increments `mus[i] - mus[i-1]` (with `mus[-1] = 0`) never
/// increase. Exactly then the rays through the vertices of `q_body(mus)`
/// cut its boundary into congruent simplices, and its covering product
/// is 1; otherwise the hull folds outward and the product exceeds 1.
pub fn has_concave_increments(mus: &[Rational]) -> bool {
    let mut prev = Rational::zero();
    let mut step: Option<Rational> = None;
    for m in mus {
        let d = m - &prev;
        if step.as_ref().is_some_and(|s| &d > s) {
            return false;
        }
        step = Some(d);
        prev = m.clone();
    }
    true
}

/// Hull of `(1 / 2 mu_i) P_{n,i}` over `i`.
pub fn q_body(mus: &[Rational]) -> Result<Polytope> {
    let n = mus.len();
    check_dim(n)?;
    if mus.iter().any(|m| !m.is_positive()) {
        return Err(Error::InvalidArgument("minima must be positive".into()));
    }
    if mus.windows(2).any(|w| w[0] > w[1]) {
        return Err(Error::InvalidArgument("minima must be non-decreasing".into()));
    }
    let mut pts = Vec::new();
    for (k, mu) in mus.iter().enumerate() {
        let s = (int(2) * mu).recip();
        pts.extend(pni_vertices(n, k + 1).into_iter().map(|v| v.into_iter().map(|x| x * &s).collect::<Vec<_>>()));
    }
    Polytope::from_points(&pts)
}

/// Eulerian number `A(n, k) = sum_j (-1)^j C(n+1, j) (k - j)^n`.
pub fn eulerian(n: u32, k: u32) -> BigInt {
    let mut acc = BigInt::zero();
    for j in 0..=k {
        let term = binomial(n + 1, j) * num::pow::pow(BigInt::from(k - j), n as usize);
        if j % 2 == 0 {
            acc += term;
        } else {
            acc -= term;
        }
    }
    acc
}

/// Closed-form volume `(2^n / n!) sum_{k<=i} (-1)^k C(n,k) (i-k)^n`.
pub fn pni_volume_formula(n: u32, i: u32) -> Result<Rational> {
    if i == 0 || i > n {
        return Err(Error::InvalidArgument("need 1 <= i <= n".into()));
    }
    let mut acc = BigInt::zero();
    for k in 0..=i {
        let term = binomial(n, k) * num::pow::pow(BigInt::from(i - k), n as usize);
        if k % 2 == 0 {
            acc += term;
        } else {
            acc -= term;
        }
    }
    Ok(Rational::new(acc * (BigInt::one() << n), factorial(n)))
}

/// Volume of `T_n`, `(n+1)/n!`.
pub fn makai_simplex_volume(n: u32) -> Rational {
    Rational::new(BigInt::from(n + 1), factorial(n))
}

pub fn cube_volume(n: u32) -> Rational {
    pow(&int(2), n)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::rational::{int_vec, rat};

    #[test]
    fn reps_are_consistent() {
        for n in 1..=4 {
            assert!(cube(n).unwrap().reps_consistent());
            assert!(cross_polytope(n).unwrap().reps_consistent());
            assert!(makai_simplex(n).unwrap().reps_consistent());
            assert!(standard_simplex(n).unwrap().reps_consistent());
            for i in 1..=n {
                assert!(pni(n, i).unwrap().reps_consistent(), "P({n},{i})");
            }
        }
    }

    #[test]
    fn hand_written_reps_match_conversion() {
        for n in 1..=4 {
            for i in 1..=n {
                let p = pni(n, i).unwrap();
                let q = Polytope::from_points(p.vertices()).unwrap();
                assert_eq!(p.halfspaces(), q.halfspaces(), "P({n},{i})");
                let r = Polytope::from_halfspaces(p.halfspaces(), n).unwrap();
                assert_eq!(p.vertices(), r.vertices());
            }
            let t = makai_simplex(n).unwrap();
            assert_eq!(Polytope::from_points(t.vertices()).unwrap().halfspaces(), t.halfspaces());
        }
    }

    #[test]
    fn named_identities() {
        assert!(pni(3, 3).unwrap().same_set(&cube(3).unwrap()));
        assert!(pni(3, 1).unwrap().same_set(&cross_polytope(3).unwrap()));
        assert!(weighted_simplex(&[one(), one()]).unwrap().same_set(&standard_simplex(2).unwrap()));
        assert!(pni(1, 1).is_ok());
        assert!(pni(3, 4).is_err());
        assert!(pni(3, 0).is_err());
    }

    #[test]
    fn flags() {
        let c = cube(3).unwrap();
        assert!(c.is_unconditional() && c.origin_interior());
        let t = makai_simplex(3).unwrap();
        assert!(!t.is_o_symmetric() && t.origin_interior());
        let s = standard_simplex(2).unwrap();
        assert!(!s.origin_interior());
        assert!(zonotope(3).unwrap().is_o_symmetric());
        assert!(!zonotope(3).unwrap().is_unconditional());
    }

    #[test]
    fn volumes() {
        assert_eq!(cube(3).unwrap().volume(), int(8));
        assert_eq!(makai_simplex(3).unwrap().volume(), rat(2, 3));
        assert_eq!(pni(3, 2).unwrap().volume(), rat(20, 3));
        assert_eq!(pni_volume_formula(3, 2).unwrap(), rat(20, 3));
        assert_eq!(pni_volume_formula(4, 2).unwrap(), int(8));
        assert_eq!(pni(4, 2).unwrap().volume(), int(8));
        assert_eq!(polar_zonotope(2).unwrap().volume(), rat(3, 4));
        assert_eq!(polar_zonotope(3).unwrap().volume(), rat(5, 12));
        assert_eq!(cross_polytope(4).unwrap().volume(), rat(16, 24));
    }

    #[test]
    fn eulerian_numbers() {
        assert_eq!(eulerian(3, 1), BigInt::from(1));
        assert_eq!(eulerian(3, 2), BigInt::from(4));
        assert_eq!(eulerian(4, 2), BigInt::from(11));
        for n in 1..=10u32 {
            let s: BigInt = (1..=n).map(|k| eulerian(n, k)).sum();
            assert_eq!(s, factorial(n));
        }
    }

    #[test]
    fn gauges_and_supports() {
        let c2 = cube(2).unwrap();
        assert_eq!(c2.gauge(&[rat(1, 2), rat(1, 2)]).unwrap(), rat(1, 2));
        assert_eq!(c2.support(&int_vec(&[1, 1])), int(2));
        let c3s = cross_polytope(3).unwrap();
        assert_eq!(c3s.gauge(&[rat(1, 2), rat(1, 2), rat(1, 2)]).unwrap(), rat(3, 2));
        let z2s = polar_zonotope(2).unwrap();
        assert_eq!(z2s.gauge(&int_vec(&[1, 1])).unwrap(), int(4));
        assert_eq!(zonotope(2).unwrap().support(&int_vec(&[1, 0])), int(2));
        assert_eq!(makai_simplex(2).unwrap().support(&int_vec(&[1, 1])), int(1));
        assert!(standard_simplex(2).unwrap().gauge(&int_vec(&[1, 1])).is_err());
    }

    #[test]
    fn q_bodies() {
        let half = rat(1, 2);
        assert!(q_body(&[half.clone(), half.clone(), half.clone()]).unwrap().same_set(&cube(3).unwrap()));
        assert!(q_body(&[rat(1, 2), int(1), rat(3, 2)]).unwrap().same_set(&cross_polytope(3).unwrap()));
        let q = q_body(&[rat(1, 2), rat(3, 4)]).unwrap();
        assert_eq!(q.volume() * rat(1, 2) * rat(3, 4), int(1));
        assert!(q_body(&[int(1), rat(1, 2)]).is_err());
        assert!(has_concave_increments(&[rat(1, 2), int(1), rat(3, 2)]));
        assert!(has_concave_increments(&[rat(1, 2), rat(1, 2), rat(1, 2)]));
        assert!(!has_concave_increments(&[rat(1, 2), rat(1, 2), rat(3, 4)]));
        assert!(!has_concave_increments(&[rat(1, 4), int(1)]));
    }
}
