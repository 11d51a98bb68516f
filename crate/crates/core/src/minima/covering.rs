//! Covering radius `μ_n(K, Λ)`.
//!
//! General bodies go through a branch and bound over the fundamental cell
//! `B [0,1]^n`. With `K` translated to its centroid, the gauge in cell
//! coordinates is `max_j G_j . u` and the covering radius is
//! `max_u min_k max_j G_j . (u - k)`. Boxes are dyadic cubes handled in
//! fixed-point `i128` arithmetic at scale `2^SCALE_BITS`.

use std::cmp::Ordering;
use std::collections::BinaryHeap;
use std::rc::Rc;

use num::bigint::BigInt;
use num::integer::Integer;
use num::{One, Signed, ToPrimitive, Zero};

use super::Interval;
use crate::body::Polytope;
use crate::error::{Error, Result};
use crate::exact::rational::{ceil_int, floor_int, half, lcm_denominators, Rational};
use crate::exact::RatMatrix;
use crate::graph::{build_graph, simplex_covering_radius, MAX_VERTICES};
use crate::lattice::Lattice;

const SCALE_BITS: u32 = 40;
const SCALE: i128 = 1 << SCALE_BITS;

/// Default number of boxes the branch and bound may expand.
pub const DEFAULT_BOX_BUDGET: usize = 400_000;

/// `num / (den * SCALE)` with `den > 0`.
#[derive(Clone, Copy, Debug)]
struct Frac {
    num: i128,
    den: i128,
}

fn cmp_frac(a: Frac, b: Frac) -> Ordering {
    match (a.num.checked_mul(b.den), b.num.checked_mul(a.den)) {
        (Some(x), Some(y)) => x.cmp(&y),
        _ => (BigInt::from(a.num) * BigInt::from(b.den)).cmp(&(BigInt::from(b.num) * BigInt::from(a.den))),
    }
}

fn frac_max(a: Frac, b: Frac) -> Frac {
    if cmp_frac(a, b) == Ordering::Less {
        b
    } else {
        a
    }
}

fn frac_to_rat(f: Frac) -> Rational {
    Rational::new(BigInt::from(f.num), BigInt::from(f.den) * BigInt::from(SCALE))
}

/// Compares `f` with a rational.
fn cmp_frac_rat(f: Frac, r: &Rational) -> Ordering {
    let lhs = BigInt::from(f.num) * r.denom();
    let rhs = r.numer() * BigInt::from(f.den) * BigInt::from(SCALE);
    lhs.cmp(&rhs)
}

/// Gauge of a translated body in the coordinates of a lattice basis.
#[derive(Clone, Debug)]
pub(crate) struct CellForm {
    n: usize,
    rows: Vec<Vec<i128>>,
    betas: Vec<i128>,
    l1: Vec<i128>,
    /// Translation applied to the body (its centroid).
    shift: Vec<Rational>,
    basis: RatMatrix,
    /// Coordinate ranges of `B^{-1} (K - shift)`.
    body_lo: Vec<Rational>,
    body_hi: Vec<Rational>,
}

fn to_i128(x: &BigInt) -> Result<i128> {
    x.to_i128()
        .filter(|v| v.unsigned_abs() < 1u128 << 80)
        .ok_or_else(|| Error::Budget("coefficients too large for fixed-point search".into()))
}

impl CellForm {
    pub(crate) fn new(k: &Polytope, l: &Lattice) -> Result<Self> {
        let n = k.dim();
        if l.dim() != n {
            return Err(Error::Dimension("body and lattice dimensions differ".into()));
        }
        let shift = k.centroid();
        let kc = k.translate(&shift.iter().map(|x| -x).collect::<Vec<_>>());
        let b = l.basis().clone();
        let mut rows = Vec::new();
        let mut betas = Vec::new();
        let mut l1 = Vec::new();
        for h in kc.halfspaces() {
            let g: Vec<Rational> = (0..n)
                .map(|c| (0..n).fold(Rational::zero(), |acc, r| acc + &h.a[r] * &b[(r, c)]))
                .map(|x| x / &h.b)
                .collect();
            let q = lcm_denominators(&g);
            let ints: Vec<BigInt> = g.iter().map(|x| (x * Rational::from_integer(q.clone())).to_integer()).collect();
            let gcd = ints.iter().fold(q.clone(), |acc, x| acc.gcd(x));
            let ints: Vec<BigInt> = ints.into_iter().map(|x| x / &gcd).collect();
            let beta = &q / &gcd;
            let r: Vec<i128> = ints.iter().map(to_i128).collect::<Result<_>>()?;
            l1.push(r.iter().map(|x| x.abs()).sum());
            rows.push(r);
            betas.push(to_i128(&beta)?);
        }
        let binv = b.inverse()?;
        let imgs: Vec<Vec<Rational>> = kc.vertices().iter().map(|v| binv.mul_vec(v)).collect();
        let body_lo = (0..n).map(|i| imgs.iter().map(|p| p[i].clone()).min().expect("nonempty")).collect();
        let body_hi = (0..n).map(|i| imgs.iter().map(|p| p[i].clone()).max().expect("nonempty")).collect();
        Ok(CellForm { n, rows, betas, l1, shift, basis: b, body_lo, body_hi })
    }

    /// Integer vectors `k` with `u - k ∈ radius * B^{-1}(K - shift)` for
    /// some `u` in the unit cell.
    fn candidate_box(&self, radius: &Rational) -> Result<Vec<Vec<i64>>> {
        let mut ranges = Vec::new();
        for i in 0..self.n {
            let lo = floor_int(&(-(radius * &self.body_hi[i])));
            let hi = ceil_int(&(Rational::one() - radius * &self.body_lo[i]));
            let lo = lo.to_i64().ok_or_else(|| Error::Budget("candidate range".into()))?;
            let hi = hi.to_i64().ok_or_else(|| Error::Budget("candidate range".into()))?;
            ranges.push((lo, hi));
        }
        let total: f64 = ranges.iter().map(|(a, b)| (b - a + 1) as f64).product();
        if total > 2e6 {
            return Err(Error::Budget("too many candidate lattice points".into()));
        }
        let mut out = vec![Vec::new()];
        for (lo, hi) in ranges {
            let mut next = Vec::new();
            for p in &out {
                for v in lo..=hi {
                    let mut q: Vec<i64> = p.clone();
                    q.push(v);
                    next.push(q);
                }
            }
            out = next;
        }
        Ok(out)
    }

    /// Evaluates the gauge bounds of every candidate on a box.
    fn eval_box(&self, center: &[i128], half: i128, cands: &[Vec<i64>]) -> Result<BoxEval> {
        let mut per = Vec::with_capacity(cands.len());
        let mut y = vec![0i128; self.n];
        for k in cands {
            for i in 0..self.n {
                y[i] = center[i] - SCALE * k[i] as i128;
            }
            let mut fc: Option<Frac> = None;
            let mut ub: Option<Frac> = None;
            let mut lb: Option<Frac> = None;
            for (j, row) in self.rows.iter().enumerate() {
                let mut t: i128 = 0;
                for i in 0..self.n {
                    t = row[i]
                        .checked_mul(y[i])
                        .and_then(|p| t.checked_add(p))
                        .ok_or_else(|| Error::Budget("fixed-point overflow".into()))?;
                }
                let slack = half * self.l1[j];
                let d = self.betas[j];
                let c = Frac { num: t, den: d };
                let u = Frac { num: t + slack, den: d };
                let l = Frac { num: t - slack, den: d };
                fc = Some(fc.map_or(c, |x| frac_max(x, c)));
                ub = Some(ub.map_or(u, |x| frac_max(x, u)));
                lb = Some(lb.map_or(l, |x| frac_max(x, l)));
            }
            per.push((fc.expect("facets"), ub.expect("facets"), lb.expect("facets")));
        }
        let mut best: Option<(Frac, usize)> = None;
        let mut box_ub: Option<Frac> = None;
        for (i, (fc, ub, _)) in per.iter().enumerate() {
            if best.map_or(true, |(b, _)| cmp_frac(*fc, b) == Ordering::Less) {
                best = Some((*fc, i));
            }
            if box_ub.map_or(true, |b| cmp_frac(*ub, b) == Ordering::Less) {
                box_ub = Some(*ub);
            }
        }
        Ok(BoxEval { per, center_value: best.map(|b| b.0), ub: box_ub })
    }

    /// Exact value at the cell point `a / q`, `None` if arithmetic would
    /// overflow or there are no candidates.
    fn exact_value(&self, a: &[i64], q: i64, cands: &[Vec<i64>]) -> Option<Rational> {
        let mut best: Option<Frac> = None;
        for k in cands {
            let mut worst: Option<Frac> = None;
            for (row, &beta) in self.rows.iter().zip(&self.betas) {
                let mut t: i128 = 0;
                for i in 0..self.n {
                    let y = (a[i] as i128) - (q as i128) * (k[i] as i128);
                    t = t.checked_add(row[i].checked_mul(y)?)?;
                }
                let f = Frac { num: t, den: beta.checked_mul(q as i128)? };
                worst = Some(worst.map_or(f, |w| frac_max(w, f)));
            }
            let w = worst?;
            if best.map_or(true, |b| cmp_frac(w, b) == Ordering::Less) {
                best = Some(w);
            }
        }
        // integer coordinates here, so no `SCALE` factor in the denominator
        best.map(|f| Rational::new(BigInt::from(f.num), BigInt::from(f.den)))
    }

    /// Point of the original space for cell coordinates `u`, shifted as for
    /// the dilate `mu K`.
    fn to_space(&self, u: &[Rational], mu: &Rational) -> Vec<Rational> {
        self.basis.mul_vec(u).iter().zip(&self.shift).map(|(x, s)| x + mu * s).collect()
    }

    fn root(&self) -> (Vec<i128>, i128) {
        (vec![SCALE / 2; self.n], SCALE / 2)
    }

    fn children(&self, center: &[i128], half: i128) -> Vec<Vec<i128>> {
        let h = half / 2;
        (0..1u32 << self.n)
            .map(|mask| {
                (0..self.n)
                    .map(|i| if mask >> i & 1 == 1 { center[i] + h } else { center[i] - h })
                    .collect()
            })
            .collect()
    }
}

fn center_to_rat(c: &[i128]) -> Vec<Rational> {
    c.iter().map(|&x| Rational::new(BigInt::from(x), BigInt::from(SCALE))).collect()
}

struct BoxEval {
    /// For each candidate: value at the center, upper and lower bound over
    /// the box.
    per: Vec<(Frac, Frac, Frac)>,
    center_value: Option<Frac>,
    ub: Option<Frac>,
}

impl BoxEval {
    fn keep(&self, cands: &[Vec<i64>], cap: Frac) -> Vec<Vec<i64>> {
        cands
            .iter()
            .zip(&self.per)
            .filter(|(_, (_, _, lb))| cmp_frac(*lb, cap) != Ordering::Greater)
            .map(|(k, _)| k.clone())
            .collect()
    }
}

struct Node {
    ub: Frac,
    center: Vec<i128>,
    half: i128,
    cands: Rc<Vec<Vec<i64>>>,
}

impl PartialEq for Node {
    fn eq(&self, other: &Self) -> bool {
        cmp_frac(self.ub, other.ub) == Ordering::Equal
    }
}
impl Eq for Node {}
impl PartialOrd for Node {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}
impl Ord for Node {
    fn cmp(&self, other: &Self) -> Ordering {
        cmp_frac(self.ub, other.ub)
    }
}

#[derive(Clone, Debug)]
pub struct SearchResult {
    pub interval: Interval,
    /// A point of the fundamental cell (in space coordinates, for the body
    /// as given) whose distance to the lattice is `interval.lo`.
    pub deep_hole: Vec<Rational>,
    pub boxes: usize,
    pub converged: bool,
}

/// Grid points `a / q` of the unit cell used to seed the lower bound.
fn seed_points(n: usize) -> Vec<(Vec<i64>, i64)> {
    let qmax: i64 = match n {
        1 | 2 => 12,
        3 => 4,
        4 => 3,
        _ => 2,
    };
    let mut out = Vec::new();
    for q in 2..=qmax {
        let mut pts: Vec<Vec<i64>> = vec![Vec::new()];
        for _ in 0..n {
            let mut next = Vec::new();
            for p in &pts {
                for a in 0..q {
                    let mut r = p.clone();
                    r.push(a);
                    next.push(r);
                }
            }
            pts = next;
        }
        out.extend(pts.into_iter().map(|p| (p, q)));
    }
    out
}

/// Branch and bound for the covering radius; the returned interval always
/// brackets the true value, and has width at most `tol` when `converged`.
pub fn covering_radius_search(k: &Polytope, l: &Lattice, tol: &Rational, budget: usize) -> Result<SearchResult> {
    let form = CellForm::new(k, l)?;
    let (c0, h0) = form.root();
    let zero = vec![vec![0i64; form.n]];
    let e0 = form.eval_box(&c0, h0, &zero)?;
    let u0 = frac_to_rat(e0.ub.expect("one candidate"));
    let all = form.candidate_box(&u0)?;
    let e = form.eval_box(&c0, h0, &all)?;
    let root_ub = e.ub.expect("nonempty");
    let root_cands = Rc::new(e.keep(&all, root_ub));

    let mut lo = frac_to_rat(e.center_value.expect("nonempty"));
    let mut lo_point = center_to_rat(&c0);
    for (a, q) in seed_points(form.n) {
        if let Some(v) = form.exact_value(&a, q, &root_cands) {
            if v > lo {
                lo = v;
                lo_point = a.iter().map(|&x| Rational::new(x.into(), q.into())).collect();
            }
        }
    }

    let mut heap = BinaryHeap::new();
    heap.push(Node { ub: root_ub, center: c0, half: h0, cands: root_cands });
    let mut boxes = 0usize;
    let mut converged = false;
    loop {
        let Some(top) = heap.peek() else {
            converged = true;
            break;
        };
        let hi = frac_to_rat(top.ub);
        if &hi - &lo <= *tol {
            converged = true;
            break;
        }
        if boxes >= budget || top.half < 4 {
            break;
        }
        let node = heap.pop().expect("peeked");
        boxes += 1;
        for child in form.children(&node.center, node.half) {
            let half = node.half / 2;
            let ev = form.eval_box(&child, half, &node.cands)?;
            let (Some(fc), Some(ub)) = (ev.center_value, ev.ub) else {
                continue;
            };
            if cmp_frac_rat(fc, &lo) == Ordering::Greater {
                lo = frac_to_rat(fc);
                lo_point = center_to_rat(&child);
            }
            if cmp_frac_rat(ub, &lo) == Ordering::Greater {
                let cands = Rc::new(ev.keep(&node.cands, ub));
                heap.push(Node { ub, center: child, half, cands });
            }
        }
    }
    let hi = heap.peek().map(|t| frac_to_rat(t.ub)).filter(|h| h > &lo).unwrap_or_else(|| lo.clone());
    let deep_hole = form.to_space(&lo_point, &lo);
    Ok(SearchResult { interval: Interval::new(lo, hi), deep_hole, boxes, converged })
}

/// Outcome of a covering decision.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Coverage {
    Covered,
    /// A point outside `mu K + Λ`.
    NotCovered(Vec<Rational>),
    /// Subdivision reached its depth limit without a decision.
    Unknown,
}

pub const DEFAULT_DEPTH: u32 = 20;

/// Decides whether `mu K + Λ = R^n` by subdividing the fundamental cell.
pub fn is_covering(k: &Polytope, l: &Lattice, mu: &Rational) -> Result<Coverage> {
    is_covering_with_depth(k, l, mu, DEFAULT_DEPTH, 4_000_000)
}

pub fn is_covering_with_depth(k: &Polytope, l: &Lattice, mu: &Rational, depth: u32, budget: usize) -> Result<Coverage> {
    if !mu.is_positive() {
        return Err(Error::InvalidArgument("mu must be positive".into()));
    }
    let depth = depth.min(SCALE_BITS - 2);
    let form = CellForm::new(k, l)?;
    let (c0, h0) = form.root();
    let all = form.candidate_box(mu)?;
    let mut stack: Vec<(Vec<i128>, i128, u32, Rc<Vec<Vec<i64>>>)> = vec![(c0, h0, 0, Rc::new(all))];
    let mut unknown = false;
    let mut boxes = 0usize;
    while let Some((center, half, level, cands)) = stack.pop() {
        boxes += 1;
        if boxes > budget {
            return Ok(Coverage::Unknown);
        }
        let ev = form.eval_box(&center, half, &cands)?;
        let (Some(fc), Some(ub)) = (ev.center_value, ev.ub) else {
            return Ok(Coverage::NotCovered(form.to_space(&center_to_rat(&center), mu)));
        };
        if cmp_frac_rat(ub, mu) != Ordering::Greater {
            continue;
        }
        if cmp_frac_rat(fc, mu) == Ordering::Greater {
            return Ok(Coverage::NotCovered(form.to_space(&center_to_rat(&center), mu)));
        }
        if level >= depth {
            unknown = true;
            continue;
        }
        // keep candidates that may cover part of the box and may be nearest
        let kept: Vec<Vec<i64>> = cands
            .iter()
            .zip(&ev.per)
            .filter(|(_, (_, _, lb))| {
                cmp_frac(*lb, ub) != Ordering::Greater && cmp_frac_rat(*lb, mu) != Ordering::Greater
            })
            .map(|(k, _)| k.clone())
            .collect();
        let kept = Rc::new(kept);
        for child in form.children(&center, half) {
            stack.push((child, half / 2, level + 1, kept.clone()));
        }
    }
    Ok(if unknown { Coverage::Unknown } else { Coverage::Covered })
}

/// Exact covering radius when `k` is a simplex and the quotient graph of the
/// transformed lattice is small enough.
pub fn simplex_radius_via_graph(k: &Polytope, l: &Lattice) -> Result<Option<Rational>> {
    let n = k.dim();
    let verts = k.vertices();
    if verts.len() != n + 1 {
        return Ok(None);
    }
    // weighted simplex {x >= 0, v.x <= 1} with an integral lattice
    if l.is_integral() {
        if let Some(w) = weighted_simplex_weights(verts) {
            let ok = l.det_abs().to_integer().to_u64().is_some_and(|d| d <= MAX_VERTICES / 10);
            if ok {
                return Ok(Some(simplex_covering_radius(&w, l)?));
            }
        }
    }
    let mut best: Option<(BigInt, Lattice, Rational)> = None;
    for apex in 0..=n {
        let cols: Vec<Vec<Rational>> = (0..=n)
            .filter(|&i| i != apex)
            .map(|i| verts[i].iter().zip(&verts[apex]).map(|(a, b)| a - b).collect())
            .collect();
        let v = RatMatrix::from_columns(&cols)?;
        let m = v.inverse()?.mul(l.basis())?;
        let scale = Rational::from_integer(lcm_denominators(m.entries()));
        let sub = Lattice::new(m.scale(&scale))?;
        let det = sub.det_abs().to_integer();
        if best.as_ref().map_or(true, |(d, _, _)| &det < d) {
            best = Some((det, sub, scale));
        }
    }
    let (det, sub, scale) = best.expect("n + 1 apexes");
    if det > BigInt::from(MAX_VERTICES / 10) {
        return Ok(None);
    }
    let ones = vec![Rational::one(); n];
    let g = build_graph(&sub, &ones)?;
    let r = g.diameter() + Rational::from_integer(BigInt::from(n));
    Ok(Some(r / scale))
}

fn weighted_simplex_weights(verts: &[Vec<Rational>]) -> Option<Vec<Rational>> {
    let n = verts[0].len();
    let mut w = vec![None; n];
    let mut has_origin = false;
    for v in verts {
        let nz: Vec<usize> = (0..n).filter(|&i| !v[i].is_zero()).collect();
        match nz.as_slice() {
            [] => has_origin = true,
            [i] if v[*i].is_positive() => w[*i] = Some(v[*i].recip()),
            _ => return None,
        }
    }
    if !has_origin {
        return None;
    }
    w.into_iter().collect()
}

/// Covering radius: exact for unconditional bodies with `Z^n` and for
/// simplices (quotient graph), otherwise a certified bracket of width at
/// most `tol` from the branch and bound.
pub fn covering_radius(k: &Polytope, l: &Lattice, tol: &Rational) -> Result<Interval> {
    covering_radius_with_budget(k, l, tol, DEFAULT_BOX_BUDGET)
}

/// [`covering_radius`] with an explicit box budget for the search.
pub fn covering_radius_with_budget(k: &Polytope, l: &Lattice, tol: &Rational, budget: usize) -> Result<Interval> {
    if !tol.is_positive() {
        return Err(Error::InvalidArgument("tolerance must be positive".into()));
    }
    if k.dim() != l.dim() {
        return Err(Error::Dimension("body and lattice dimensions differ".into()));
    }
    if k.is_unconditional() && l.is_standard() {
        return Ok(Interval::exact(k.gauge(&vec![half(); k.dim()])?));
    }
    if let Some(r) = simplex_radius_via_graph(k, l)? {
        return Ok(Interval::exact(r));
    }
    Ok(covering_radius_search(k, l, tol, budget)?.interval)
}
