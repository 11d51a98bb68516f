use num::{One, Signed, Zero};

use super::SpanTracker;
use crate::body::Polytope;
use crate::error::{Error, Result};
use crate::exact::rational::{rat, Rational};
use crate::lattice::Lattice;

/// The body whose successive minima define those of `k`: `k` itself when
/// it is o-symmetric, otherwise `(k - k) / 2`.
pub fn symmetrized(k: &Polytope) -> Result<Polytope> {
    if k.is_o_symmetric() {
        Ok(k.clone())
    } else {
        k.difference_body()?.scale(&rat(1, 2))
    }
}

/// Body whose gauge at `v` is the width `h_K(v) + h_K(-v)`, the polar of
/// the difference body.
pub fn width_body(k: &Polytope) -> Result<Polytope> {
    if k.is_o_symmetric() {
        k.polar()?.scale(&rat(1, 2))
    } else {
        k.difference_body()?.polar()
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Minima {
    pub values: Vec<Rational>,
    pub vectors: Vec<Vec<Rational>>,
}

fn check(s: &Polytope, l: &Lattice) -> Result<()> {
    if s.dim() != l.dim() {
        return Err(Error::Dimension("body and lattice dimensions differ".into()));
    }
    if !s.origin_interior() {
        return Err(Error::OriginNotInterior);
    }
    Ok(())
}

/// Lattice points `x != 0` with `gauge(x) <= t`, sorted by gauge, then
/// lexicographically.
fn short_points(s: &Polytope, l: &Lattice, t: &Rational) -> Result<Vec<(Rational, Vec<Rational>)>> {
    let mut pts: Vec<(Rational, Vec<Rational>)> = Vec::new();
    for x in l.points_in(&s.scale(t)?)? {
        if x.iter().all(Zero::is_zero) {
            continue;
        }
        pts.push((s.gauge(&x)?, x));
    }
    pts.sort();
    Ok(pts)
}

/// All successive minima of an o-symmetric body with the origin inside.
pub fn minima_of_symmetric(s: &Polytope, l: &Lattice) -> Result<Minima> {
    check(s, l)?;
    let n = l.dim();
    let gauges: Vec<Rational> = l.basis().columns().iter().map(|c| s.gauge(c)).collect::<Result<_>>()?;
    let t_max = gauges.iter().max().expect("nonempty").clone();
    let mut t = gauges.iter().min().expect("nonempty").clone();
    loop {
        let pts = short_points(s, l, &t)?;
        let mut span = SpanTracker::new();
        let mut out = Minima { values: Vec::new(), vectors: Vec::new() };
        for (g, x) in pts {
            if span.insert(&x) {
                out.values.push(g);
                out.vectors.push(x);
                if span.rank() == n {
                    return Ok(out);
                }
            }
        }
        if t >= t_max {
            return Err(Error::InvalidArgument("lattice basis does not span".into()));
        }
        t = (&t * Rational::from_integer(2.into())).min(t_max.clone());
    }
}

/// `λ_1, ..., λ_n` of `k` (through its symmetrization when `k` is not
/// o-symmetric).
pub fn successive_minima(k: &Polytope, l: &Lattice) -> Result<Vec<Rational>> {
    Ok(minima_of_symmetric(&symmetrized(k)?, l)?.values)
}

/// A shortest nonzero lattice vector for the gauge of `s` and its length.
pub fn shortest_vector(s: &Polytope, l: &Lattice) -> Result<(Rational, Vec<Rational>)> {
    check(s, l)?;
    let t = l
        .basis()
        .columns()
        .iter()
        .map(|c| s.gauge(c))
        .collect::<Result<Vec<_>>>()?
        .into_iter()
        .min()
        .expect("nonempty");
    short_points(s, l, &t)?
        .into_iter()
        .next()
        .ok_or_else(|| Error::InvalidArgument("no short vector found".into()))
}

/// Lattice width of `k` and a dual lattice direction attaining it.
pub fn lattice_width(k: &Polytope, l: &Lattice) -> Result<(Rational, Vec<Rational>)> {
    let w = width_body(k)?;
    let (width, dir) = shortest_vector(&w, &l.dual())?;
    debug_assert_eq!(width, k.width_in(&dir));
    Ok((width, dir))
}

/// First covering minimum, the reciprocal of the lattice width.
pub fn mu_1(k: &Polytope, l: &Lattice) -> Result<Rational> {
    let (w, _) = lattice_width(k, l)?;
    if !w.is_positive() {
        return Err(Error::Degenerate);
    }
    Ok(Rational::one() / w)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::body::special::{cross_polytope, cube, makai_simplex, pni};
    use crate::exact::rational::{int, int_vec};
    use crate::lattice::special_lattice;

    #[test]
    fn cube_and_cross() {
        for n in 1..=4 {
            let z = Lattice::integer(n);
            assert_eq!(successive_minima(&cube(n).unwrap(), &z).unwrap(), vec![int(1); n]);
            assert_eq!(successive_minima(&cross_polytope(n).unwrap(), &z).unwrap(), vec![int(1); n]);
            assert_eq!(mu_1(&cube(n).unwrap(), &z).unwrap(), rat(1, 2));
            assert_eq!(mu_1(&cross_polytope(n).unwrap(), &z).unwrap(), rat(1, 2));
        }
    }

    #[test]
    fn makai_simplex_width() {
        for n in 1..=4 {
            let (w, _) = lattice_width(&makai_simplex(n).unwrap(), &Lattice::integer(n)).unwrap();
            assert_eq!(w, int(2));
        }
    }

    #[test]
    fn checkerboard_width() {
        let cb = special_lattice("checkerboard", 2).unwrap();
        let (w, d) = lattice_width(&cube(2).unwrap(), &cb).unwrap();
        assert_eq!(w, int(2));
        assert!(cb.dual().contains(&d));
    }

    #[test]
    fn strong_duality_on_cube() {
        let z = Lattice::integer(3);
        let l1 = successive_minima(&cube(3).unwrap(), &z).unwrap()[0].clone();
        let m1 = mu_1(&cross_polytope(3).unwrap(), &z).unwrap();
        assert_eq!(l1 * m1, rat(1, 2));
    }

    #[test]
    fn non_symmetric_uses_half_difference_body() {
        let t = makai_simplex(2).unwrap();
        let lam = successive_minima(&t, &Lattice::integer(2)).unwrap();
        // (T - T)/2 is the hexagon with vertices ±(1,-1)/2, ±(1,2)/2, ±(2,1)/2,
        // edge 2x - y = 3/2 puts e_1 at gauge 4/3
        assert_eq!(lam, vec![rat(4, 3), rat(4, 3)]);
        let p = pni(3, 2).unwrap();
        assert_eq!(successive_minima(&p, &Lattice::integer(3)).unwrap(), vec![int(1); 3]);
        let sv = shortest_vector(&cube(2).unwrap(), &Lattice::integer(2)).unwrap();
        assert_eq!(sv.1, int_vec(&[-1, -1]));
    }
}
