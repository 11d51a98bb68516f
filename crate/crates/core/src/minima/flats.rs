//! Certificate that `μK + Λ` meets every affine flat of a given dimension.
//!
//! The torus `R^n / mZ^n` (with `mZ^n ⊆ Λ`) is cut into a grid of cubes.
//! A cube is dropped when one translate of `μK`, or the union of two, contains
//! it. Two remaining cubes are joined when the face they share is not covered
//! in the same sense. A flat avoiding `μK + Λ` lies in one joined class, and
//! the lift of that class stays within bounded distance of the span of its
//! translation group, so a flat of dimension `k` needs a class whose
//! translations have rank at least `k`.

use std::collections::HashMap;

use num::bigint::BigInt;
use num::integer::Integer;
use num::{Signed, ToPrimitive, Zero};

use super::covering::{is_covering_with_depth, Coverage};
use super::SpanTracker;
use crate::body::{Halfspace, Polytope};
use crate::error::{Error, Result};
use crate::exact::normal_form::integer_kernel;
use crate::exact::rational::{ceil_int, dot, floor_int, lcm_denominators, to_rational_vec, Rational};
use crate::exact::{IntMatrix, RatMatrix};
use crate::lattice::Lattice;

/// Default cap on the number of grid cubes per attempt.
pub const DEFAULT_MAX_CELLS: usize = 70_000;

/// Grid cap once sections have failed; joined classes rarely have low rank
/// for flats of dimension two or more.
const SMALL_GRID: usize = 5_000;

/// Translates tried in pairs when no single one contains a box.
const PAIR_CANDIDATES: usize = 8;

struct Translate {
    rhs: Vec<i128>,
    lo: Vec<i128>,
    hi: Vec<i128>,
}

struct Grid {
    n: usize,
    normals: Vec<Vec<i128>>,
    translates: Vec<Translate>,
    /// cubes per axis on the torus
    side: i64,
    /// cube edge in scaled units
    step: i128,
}

fn to_i128(r: &Rational) -> Result<i128> {
    if !r.is_integer() {
        return Err(Error::NotIntegral);
    }
    r.to_integer().to_i128().ok_or(Error::Budget("coordinate overflow".into()))
}

/// `max a.x` over the box `[lo, hi]`.
fn box_max(a: &[i128], lo: &[i128], hi: &[i128]) -> i128 {
    a.iter().zip(lo.iter().zip(hi)).map(|(&c, (&l, &h))| (c * l).max(c * h)).sum()
}

/// Whether `max c.x` over `{x in [lo, hi] : a.x >= beta}` is at most `gamma`,
/// via the one-multiplier dual `min_{t >= 0} max_box (c + t a).x - t beta`.
fn cut_max_at_most(c: &[i128], gamma: i128, a: &[i128], beta: i128, lo: &[i128], hi: &[i128]) -> bool {
    if box_max(a, lo, hi) < beta {
        return true;
    }
    let mut candidates: Vec<(i128, i128)> = vec![(0, 1)];
    for (&ci, &ai) in c.iter().zip(a) {
        if ai != 0 && (ci > 0) == (ai < 0) && ci != 0 {
            let (p, q) = if ai < 0 { (ci, -ai) } else { (-ci, ai) };
            candidates.push((p, q));
        }
    }
    candidates.iter().any(|&(p, q)| {
        let w: Vec<i128> = c.iter().zip(a).map(|(&ci, &ai)| q * ci + p * ai).collect();
        box_max(&w, lo, hi) - p * beta <= q * gamma
    })
}

impl Grid {
    /// The box minus `p` lies in `q`.
    fn rest_inside(&self, p: &Translate, q: &Translate, lo: &[i128], hi: &[i128]) -> bool {
        self.normals.iter().zip(&p.rhs).all(|(a, &beta)| {
            self.normals.iter().zip(&q.rhs).all(|(c, &gamma)| cut_max_at_most(c, gamma, a, beta, lo, hi))
        })
    }

    /// Largest facet violation of the box against a translate.
    fn excess(&self, t: &Translate, lo: &[i128], hi: &[i128]) -> i128 {
        self.normals.iter().zip(&t.rhs).map(|(a, &b)| box_max(a, lo, hi) - b).max().unwrap_or(0)
    }

    fn covered(&self, lo: &[i128], hi: &[i128]) -> bool {
        let mut near: Vec<(i128, &Translate)> = self
            .translates
            .iter()
            .filter(|t| (0..self.n).all(|i| t.lo[i] <= hi[i] && lo[i] <= t.hi[i]))
            .map(|t| (self.excess(t, lo, hi), t))
            .collect();
        if near.iter().any(|(e, _)| *e <= 0) {
            return true;
        }
        near.sort_by_key(|(e, _)| *e);
        let near: Vec<&Translate> = near.into_iter().take(PAIR_CANDIDATES).map(|(_, t)| t).collect();
        for (x, p) in near.iter().enumerate() {
            for q in &near[x + 1..] {
                if self.rest_inside(p, q, lo, hi) || self.rest_inside(q, p, lo, hi) {
                    return true;
                }
            }
        }
        false
    }
}

struct Classes {
    parent: Vec<usize>,
    /// offset of a cube's lift relative to its parent, in torus periods
    offset: Vec<Vec<i64>>,
    cycles: Vec<Vec<Vec<i64>>>,
}

impl Classes {
    fn new(count: usize, n: usize) -> Self {
        Classes { parent: (0..count).collect(), offset: vec![vec![0; n]; count], cycles: vec![Vec::new(); count] }
    }

    fn find(&mut self, x: usize) -> (usize, Vec<i64>) {
        let p = self.parent[x];
        if p == x {
            return (x, self.offset[x].clone());
        }
        let (root, off_p) = self.find(p);
        let off: Vec<i64> = self.offset[x].iter().zip(&off_p).map(|(a, b)| a + b).collect();
        self.parent[x] = root;
        self.offset[x] = off.clone();
        (root, off)
    }

    /// The lift of `a` touches the lift of `b` shifted by `w` periods.
    fn join(&mut self, a: usize, b: usize, w: &[i64]) {
        let (ra, oa) = self.find(a);
        let (rb, ob) = self.find(b);
        let shift: Vec<i64> = (0..w.len()).map(|i| w[i] + oa[i] - ob[i]).collect();
        if ra == rb {
            if shift.iter().any(|&s| s != 0) {
                self.cycles[ra].push(shift);
            }
        } else {
            self.parent[rb] = ra;
            self.offset[rb] = shift;
            let moved = std::mem::take(&mut self.cycles[rb]);
            self.cycles[ra].extend(moved);
        }
    }
}

fn translation_rank(gens: &[Vec<i64>]) -> usize {
    let mut span = SpanTracker::new();
    for g in gens {
        let v: Vec<Rational> = g.iter().map(|&x| Rational::from_integer(x.into())).collect();
        span.insert(&v);
    }
    span.rank()
}

fn build_grid(k: &Polytope, l: &Lattice, mu: &Rational, per_unit: i64, period: i64) -> Result<Grid> {
    let n = k.dim();
    let body = k.scale(mu)?;
    let mut denoms: Vec<Rational> = body.halfspaces().iter().map(|h| h.b.clone()).collect();
    denoms.extend(l.basis().entries().iter().cloned());
    denoms.extend(body.vertices().iter().flatten().cloned());
    let unit = lcm_denominators(&denoms).lcm(&per_unit.into());
    let unit_r = Rational::from_integer(unit.clone());
    let unit_i = unit.to_i128().ok_or(Error::Budget("grid unit overflow".into()))?;
    let normals: Vec<Vec<i128>> = body
        .halfspaces()
        .iter()
        .map(|h| h.a.iter().map(to_i128).collect::<Result<Vec<_>>>())
        .collect::<Result<_>>()?;
    let vmin: Vec<Rational> = (0..n).map(|i| body.vertices().iter().map(|v| v[i].clone()).min().expect("vertex")).collect();
    let vmax: Vec<Rational> = (0..n).map(|i| body.vertices().iter().map(|v| v[i].clone()).max().expect("vertex")).collect();
    let span = Rational::from_integer(period.into());
    let one = Rational::from_integer(1.into());
    let lo: Vec<Rational> = vmax.iter().map(|m| -m - &one).collect();
    let hi: Vec<Rational> = vmin.iter().map(|m| &span - m + &one).collect();
    let mut translates = Vec::new();
    for z in l.enumerate_in_box(&lo, &hi) {
        let rhs = body
            .halfspaces()
            .iter()
            .map(|h| {
                let s: Rational = h.a.iter().zip(&z).map(|(a, x)| a * x).sum::<Rational>() + &h.b;
                to_i128(&(s * &unit_r))
            })
            .collect::<Result<Vec<_>>>()?;
        let tl = (0..n)
            .map(|i| to_i128(&Rational::from_integer(floor_int(&((&z[i] + &vmin[i]) * &unit_r)))))
            .collect::<Result<Vec<_>>>()?;
        let th = (0..n)
            .map(|i| to_i128(&Rational::from_integer(ceil_int(&((&z[i] + &vmax[i]) * &unit_r)))))
            .collect::<Result<Vec<_>>>()?;
        translates.push(Translate { rhs, lo: tl, hi: th });
    }
    Ok(Grid { n, normals, translates, side: period * per_unit, step: unit_i / per_unit as i128 })
}

fn decode(mut idx: usize, side: i64, n: usize) -> Vec<i64> {
    let mut c = vec![0; n];
    for x in c.iter_mut() {
        *x = (idx % side as usize) as i64;
        idx /= side as usize;
    }
    c
}

fn encode(c: &[i64], side: i64) -> usize {
    c.iter().rev().fold(0usize, |acc, &x| acc * side as usize + x as usize)
}

/// Runs the certificate on one grid; `true` when every class has
/// translation rank below `flat_dim`.
fn certify_on(grid: &Grid, flat_dim: usize) -> bool {
    let n = grid.n;
    let side = grid.side;
    let count = (side as usize).pow(n as u32);
    let step = grid.step;
    let cell_box = |c: &[i64]| -> (Vec<i128>, Vec<i128>) {
        let lo: Vec<i128> = c.iter().map(|&x| x as i128 * step).collect();
        let hi: Vec<i128> = lo.iter().map(|x| x + step).collect();
        (lo, hi)
    };
    let open: Vec<bool> = (0..count)
        .map(|idx| {
            let (lo, hi) = cell_box(&decode(idx, side, n));
            !grid.covered(&lo, &hi)
        })
        .collect();
    if !open.iter().any(|&o| o) {
        return true;
    }
    let dirs: Vec<Vec<i64>> = (0..3usize.pow(n as u32))
        .map(|mut t| {
            (0..n)
                .map(|_| {
                    let d = (t % 3) as i64 - 1;
                    t /= 3;
                    d
                })
                .collect::<Vec<i64>>()
        })
        .filter(|d| d.iter().find(|&&x| x != 0).is_some_and(|&x| x > 0))
        .collect();
    let mut classes = Classes::new(count, n);
    let mut face_cache: HashMap<(Vec<i128>, Vec<i128>), bool> = HashMap::new();
    for idx in (0..count).filter(|&i| open[i]) {
        let c = decode(idx, side, n);
        let (lo, hi) = cell_box(&c);
        for d in &dirs {
            let t: Vec<i64> = c.iter().zip(d).map(|(a, b)| a + b).collect();
            let w: Vec<i64> = t.iter().map(|x| x.div_euclid(side)).collect();
            let b: Vec<i64> = t.iter().map(|x| x.rem_euclid(side)).collect();
            let bi = encode(&b, side);
            if !open[bi] {
                continue;
            }
            let mut flo = lo.clone();
            let mut fhi = hi.clone();
            for i in 0..n {
                match d[i] {
                    1 => flo[i] = hi[i],
                    -1 => fhi[i] = lo[i],
                    _ => {}
                }
            }
            // faces are compared modulo the torus so translated copies share a cache entry
            let period = side as i128 * step;
            let shift: Vec<i128> = flo.iter().map(|x| x.div_euclid(period) * period).collect();
            let key_lo: Vec<i128> = flo.iter().zip(&shift).map(|(x, s)| x - s).collect();
            let key_hi: Vec<i128> = fhi.iter().zip(&shift).map(|(x, s)| x - s).collect();
            let covered = *face_cache
                .entry((key_lo.clone(), key_hi.clone()))
                .or_insert_with(|| grid.covered(&key_lo, &key_hi));
            if !covered {
                classes.join(idx, bi, &w);
            }
        }
    }
    (0..count)
        .filter(|&i| open[i] && classes.parent[i] == i)
        .all(|r| translation_rank(&classes.cycles[r]) < flat_dim)
}

fn grid_certificate(k: &Polytope, l: &Lattice, mu: &Rational, flat_dim: usize, max_cells: usize) -> Result<bool> {
    let n = k.dim();
    let inv = l.basis().inverse()?;
    let period = lcm_denominators(inv.entries()).to_i64().ok_or(Error::Budget("torus period overflow".into()))?;
    let mut per_unit = 1i64;
    while ((period * per_unit) as usize).checked_pow(n as u32).is_some_and(|c| c <= max_cells) {
        let grid = build_grid(k, l, mu, per_unit, period)?;
        if certify_on(&grid, flat_dim) {
            return Ok(true);
        }
        per_unit *= 2;
    }
    Ok(false)
}

/// Section of `body` by the hyperplane through `x0` orthogonal to `h`, a
/// dual vector with dual-basis coordinates `coeffs`. The hyperplane is
/// parametrized by the coordinates other than one where `h` is nonzero, so
/// the remaining axes keep their directions.
fn section(body: &Polytope, l: &Lattice, h: &[Rational], coeffs: &[BigInt], x0: &[Rational]) -> Result<Option<(Polytope, Lattice)>> {
    let n = body.dim();
    let drop = (0..n).filter(|&i| !h[i].is_zero()).max_by_key(|&i| h[i].abs()).ok_or(Error::Degenerate)?;
    let keep: Vec<usize> = (0..n).filter(|&i| i != drop).collect();
    let row = IntMatrix::from_rows(vec![coeffs.to_vec()])?;
    let kernel = IntMatrix::from_columns(&integer_kernel(&row))?.to_rat();
    let full = l.basis().mul(&kernel)?;
    let rows: Vec<Vec<Rational>> = keep.iter().map(|&i| full.row(i).to_vec()).collect();
    let lattice = Lattice::new(RatMatrix::from_rows(rows)?)?;
    let mut hs = Vec::new();
    for hf in body.halfspaces() {
        let ratio = &hf.a[drop] / &h[drop];
        let a: Vec<Rational> = keep.iter().map(|&j| &hf.a[j] - &ratio * &h[j]).collect();
        let b = &hf.b - dot(&hf.a, x0);
        if a.iter().all(Zero::is_zero) {
            if b.is_negative() {
                return Ok(None);
            }
            continue;
        }
        hs.push(Halfspace::new(a, b)?);
    }
    match Polytope::from_halfspaces(&hs, n - 1) {
        Ok(p) if p.origin_interior() => Ok(Some((p, lattice))),
        _ => Ok(None),
    }
}

/// Sections through the centroid by lattice hyperplanes `h⊥`: a flat not
/// parallel to `h⊥` crosses the section level in a flat one dimension lower.
fn by_sections(k: &Polytope, l: &Lattice, mu: &Rational, flat_dim: usize, max_cells: usize) -> Result<bool> {
    let n = k.dim();
    let body = k.scale(mu)?;
    let x0 = body.centroid();
    let dual = l.dual();
    let need = n - flat_dim + 1;
    let mut cands: Vec<(Rational, Vec<BigInt>, Vec<Rational>)> = Vec::new();
    for t in 1..3usize.pow(n as u32) {
        let mut r = t;
        let coeffs: Vec<BigInt> = (0..n)
            .map(|_| {
                let d = (r % 3) as i64 - 1;
                r /= 3;
                BigInt::from(d)
            })
            .collect();
        if coeffs.iter().find(|c| !c.is_zero()).is_some_and(|c| c.is_negative()) {
            continue;
        }
        let h = dual.basis().mul_vec(&to_rational_vec(&coeffs));
        cands.push((dot(&h, &h), coeffs, h));
    }
    cands.sort();
    let mut span = SpanTracker::new();
    for (_, coeffs, h) in cands {
        let mut probe = span.clone();
        if !probe.insert(&h) {
            continue;
        }
        let Some((sec, sub)) = section(&body, l, &h, &coeffs, &x0)? else { continue };
        let one = Rational::from_integer(1.into());
        let ok = if flat_dim == 1 {
            is_covering_with_depth(&sec, &sub, &one, 12, 20_000)? == Coverage::Covered
        } else {
            meets_every_flat(&sec, &sub, &one, flat_dim - 1, max_cells)?
        };
        if ok {
            span = probe;
            if span.rank() >= need {
                return Ok(true);
            }
        }
    }
    Ok(false)
}

/// Tries to prove that `μK + Λ` meets every affine flat of dimension
/// `flat_dim`. `false` means no proof was found, not that a missing flat
/// exists.
pub fn meets_every_flat(k: &Polytope, l: &Lattice, mu: &Rational, flat_dim: usize, max_cells: usize) -> Result<bool> {
    let n = k.dim();
    if l.dim() != n {
        return Err(Error::Dimension("body and lattice dimensions differ".into()));
    }
    if flat_dim == 0 || flat_dim >= n {
        return Err(Error::InvalidArgument("flat dimension must lie in 1..n".into()));
    }
    if !mu.is_positive() {
        return Ok(false);
    }
    if flat_dim == 1 {
        return Ok(grid_certificate(k, l, mu, 1, max_cells)? || by_sections(k, l, mu, 1, max_cells)?);
    }
    if by_sections(k, l, mu, flat_dim, max_cells)? {
        return Ok(true);
    }
    grid_certificate(k, l, mu, flat_dim, max_cells.min(SMALL_GRID))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::body::special::{cross_polytope, cube, standard_simplex};
    use crate::exact::rational::{int, rat};
    use crate::lattice::special_lattice;

    #[test]
    fn cut_lp_matches_hand_values() {
        // max x + y on [0,2]^2 with x - y >= 1 is 3
        let (lo, hi) = (vec![0, 0], vec![2, 2]);
        assert!(cut_max_at_most(&[1, 1], 3, &[1, -1], 1, &lo, &hi));
        assert!(!cut_max_at_most(&[1, 1], 2, &[1, -1], 1, &lo, &hi));
        // empty cut
        assert!(cut_max_at_most(&[1, 1], -100, &[1, 0], 3, &lo, &hi));
    }

    #[test]
    fn cube_tiling_meets_lines_at_half() {
        let z = Lattice::integer(2);
        assert!(meets_every_flat(&cube(2).unwrap(), &z, &rat(1, 2), 1, DEFAULT_MAX_CELLS).unwrap());
        assert!(!meets_every_flat(&cube(2).unwrap(), &z, &rat(3, 8), 1, DEFAULT_MAX_CELLS).unwrap());
    }

    #[test]
    fn checkerboard_cube_meets_lines() {
        for n in 3..=4 {
            let cb = special_lattice("checkerboard", n).unwrap();
            let c = cube(n).unwrap();
            assert!(meets_every_flat(&c, &cb, &rat(1, 2), 1, DEFAULT_MAX_CELLS).unwrap(), "n = {n}");
            assert!(!meets_every_flat(&c, &cb, &rat(7, 16), 1, DEFAULT_MAX_CELLS).unwrap(), "n = {n}");
        }
    }

    #[test]
    fn checkerboard_cross_polytope() {
        for n in 3..=4 {
            let cb = special_lattice("checkerboard", n).unwrap();
            let c = cross_polytope(n).unwrap();
            assert!(meets_every_flat(&c, &cb, &int(1), n - 2, DEFAULT_MAX_CELLS).unwrap(), "n = {n}");
        }
    }

    #[test]
    fn simplex_meets_flats() {
        let s = standard_simplex(3).unwrap();
        let z = Lattice::integer(3);
        assert!(meets_every_flat(&s, &z, &int(2), 1, DEFAULT_MAX_CELLS).unwrap());
        assert!(!meets_every_flat(&s, &z, &rat(15, 8), 1, DEFAULT_MAX_CELLS).unwrap());
    }
}
