use std::collections::HashSet;

use num::bigint::BigInt;
use num::{Signed, Zero};

use super::dd::extreme_rays;
use crate::error::{Error, Result};
use crate::exact::rational::{dot, lcm_denominators, primitive_integer, to_rational_vec, vadd, vsub, Rational};
use crate::exact::RatMatrix;
use crate::lattice::LatticePlane;

/// `a . x <= b`, with `a` a primitive integer vector.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Halfspace {
    pub a: Vec<Rational>,
    pub b: Rational,
}

impl Halfspace {
    /// Rescales `(a, b)` by a positive factor so that `a` is primitive.
    pub fn new(a: Vec<Rational>, b: Rational) -> Result<Self> {
        if a.iter().all(Zero::is_zero) {
            return Err(Error::InvalidArgument("halfspace normal is zero".into()));
        }
        let l = Rational::from_integer(lcm_denominators(&a));
        let scaled: Vec<Rational> = a.iter().map(|x| x * &l).collect();
        let prim = primitive_integer(&scaled);
        let pa = to_rational_vec(&prim);
        // scaled = g * prim for a positive integer g
        let k = scaled.iter().position(|x| !x.is_zero()).expect("nonzero");
        let g = &scaled[k] / &pa[k];
        Ok(Halfspace { a: pa, b: b * l / g })
    }

    pub fn value(&self, x: &[Rational]) -> Rational {
        dot(&self.a, x)
    }

    pub fn contains(&self, x: &[Rational]) -> bool {
        self.value(x) <= self.b
    }

    pub fn is_tight(&self, x: &[Rational]) -> bool {
        self.value(x) == self.b
    }
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct Flags {
    pub origin_interior: bool,
    pub o_symmetric: bool,
    pub unconditional: bool,
}

/// A full-dimensional rational polytope carrying both its vertices and its
/// facet halfspaces, each list sorted.
#[derive(Clone, Debug)]
pub struct Polytope {
    dim: usize,
    vertices: Vec<Vec<Rational>>,
    halfspaces: Vec<Halfspace>,
    flags: Flags,
    /// `a_j / b_j` for every facet, present when the origin is interior.
    gauge_rows: Vec<Vec<Rational>>,
}

impl PartialEq for Polytope {
    fn eq(&self, other: &Self) -> bool {
        self.same_set(other)
    }
}

pub fn affine_rank(points: &[Vec<Rational>]) -> usize {
    if points.len() <= 1 {
        return 0;
    }
    let rows: Vec<Vec<Rational>> = points[1..].iter().map(|p| vsub(p, &points[0])).collect();
    RatMatrix::from_rows(rows).expect("equal lengths").rank()
}

fn to_int_row(v: &[Rational]) -> Vec<BigInt> {
    let l = Rational::from_integer(lcm_denominators(v));
    v.iter().map(|x| (x * &l).to_integer()).collect()
}

impl Polytope {
    /// Convex hull of a finite point set.
    pub fn from_points(points: &[Vec<Rational>]) -> Result<Self> {
        let d = points.first().map(Vec::len).ok_or(Error::Degenerate)?;
        if d == 0 || points.iter().any(|p| p.len() != d) {
            return Err(Error::Dimension("points must share a positive dimension".into()));
        }
        let mut pts: Vec<Vec<Rational>> = points.to_vec();
        pts.sort();
        pts.dedup();
        if affine_rank(&pts) < d {
            return Err(Error::Degenerate);
        }
        let c = centroid(&pts);
        // vertices of the polar of (P - c) are the facet normals
        let cons: Vec<Vec<BigInt>> = pts
            .iter()
            .map(|p| {
                let w = vsub(p, &c);
                let mut row = vec![Rational::from_integer(1.into())];
                row.extend(w.into_iter().map(|x| -x));
                to_int_row(&row)
            })
            .collect();
        let rays = extreme_rays(&cons, d + 1)?;
        let mut hs = Vec::new();
        for r in rays {
            if !r[0].is_positive() {
                return Err(Error::Degenerate);
            }
            let t = Rational::from_integer(r[0].clone());
            let y: Vec<Rational> = r[1..].iter().map(|x| Rational::from_integer(x.clone()) / &t).collect();
            let b = Rational::from_integer(1.into()) + dot(&y, &c);
            hs.push(Halfspace::new(y, b)?);
        }
        hs.sort();
        hs.dedup();
        let verts: Vec<Vec<Rational>> = pts
            .into_iter()
            .filter(|p| {
                let normals: Vec<Vec<Rational>> = hs.iter().filter(|h| h.is_tight(p)).map(|h| h.a.clone()).collect();
                normals.len() >= d && RatMatrix::from_rows(normals).expect("rect").rank() == d
            })
            .collect();
        Ok(Self::assemble(d, verts, hs))
    }

    /// Intersection of halfspaces; must be bounded and full-dimensional.
    pub fn from_halfspaces(halfspaces: &[Halfspace], d: usize) -> Result<Self> {
        if d == 0 || halfspaces.iter().any(|h| h.a.len() != d) {
            return Err(Error::Dimension("halfspace normals must have length d".into()));
        }
        let mut cons: Vec<Vec<BigInt>> = halfspaces
            .iter()
            .map(|h| {
                let mut row = vec![h.b.clone()];
                row.extend(h.a.iter().map(|x| -x));
                to_int_row(&row)
            })
            .collect();
        let mut t_row = vec![BigInt::zero(); d + 1];
        t_row[0] = BigInt::from(1);
        cons.push(t_row);
        let rays = extreme_rays(&cons, d + 1)?;
        let mut verts = Vec::new();
        for r in rays {
            if r[0].is_zero() {
                return Err(Error::InvalidArgument("halfspaces describe an unbounded set".into()));
            }
            let t = Rational::from_integer(r[0].clone());
            verts.push(r[1..].iter().map(|x| Rational::from_integer(x.clone()) / &t).collect::<Vec<_>>());
        }
        verts.sort();
        verts.dedup();
        if affine_rank(&verts) < d {
            return Err(Error::Degenerate);
        }
        let mut hs: Vec<Halfspace> = halfspaces
            .iter()
            .map(|h| Halfspace::new(h.a.clone(), h.b.clone()))
            .collect::<Result<_>>()?;
        hs.sort();
        hs.dedup();
        let hs: Vec<Halfspace> = hs
            .into_iter()
            .filter(|h| {
                let tight: Vec<Vec<Rational>> = verts.iter().filter(|v| h.is_tight(v)).cloned().collect();
                tight.len() >= d && affine_rank(&tight) == d - 1
            })
            .collect();
        Ok(Self::assemble(d, verts, hs))
    }

    /// Trusted constructor for bodies whose two representations are known
    /// in closed form.
    pub fn from_reps_unchecked(d: usize, vertices: Vec<Vec<Rational>>, halfspaces: Vec<Halfspace>) -> Self {
        let mut vertices = vertices;
        vertices.sort();
        vertices.dedup();
        let mut halfspaces = halfspaces;
        halfspaces.sort();
        halfspaces.dedup();
        Self::assemble(d, vertices, halfspaces)
    }

    fn assemble(dim: usize, vertices: Vec<Vec<Rational>>, halfspaces: Vec<Halfspace>) -> Self {
        let origin_interior = halfspaces.iter().all(|h| h.b.is_positive());
        let set: HashSet<&Vec<Rational>> = vertices.iter().collect();
        let o_symmetric = vertices.iter().all(|v| set.contains(&v.iter().map(|x| -x).collect::<Vec<_>>()));
        let unconditional = o_symmetric
            && vertices.iter().all(|v| {
                (0..dim).all(|i| {
                    let mut w = v.clone();
                    w[i] = -&w[i];
                    set.contains(&w)
                })
            });
        let gauge_rows = if origin_interior {
            halfspaces.iter().map(|h| h.a.iter().map(|x| x / &h.b).collect()).collect()
        } else {
            Vec::new()
        };
        Polytope {
            dim,
            vertices,
            halfspaces,
            flags: Flags { origin_interior, o_symmetric, unconditional },
            gauge_rows,
        }
    }

    /// Checks that every vertex satisfies every halfspace, with at least
    /// `dim` tight facets, and every facet is tight at `dim` vertices.
    pub fn reps_consistent(&self) -> bool {
        let d = self.dim;
        self.vertices.iter().all(|v| {
            self.halfspaces.iter().all(|h| h.contains(v)) && self.halfspaces.iter().filter(|h| h.is_tight(v)).count() >= d
        }) && self
            .halfspaces
            .iter()
            .all(|h| self.vertices.iter().filter(|v| h.is_tight(v)).count() >= d)
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn vertices(&self) -> &[Vec<Rational>] {
        &self.vertices
    }

    pub fn halfspaces(&self) -> &[Halfspace] {
        &self.halfspaces
    }

    pub fn flags(&self) -> Flags {
        self.flags
    }

    pub fn is_o_symmetric(&self) -> bool {
        self.flags.o_symmetric
    }

    pub fn is_unconditional(&self) -> bool {
        self.flags.unconditional
    }

    pub fn origin_interior(&self) -> bool {
        self.flags.origin_interior
    }

    /// Rows `a_j / b_j`; the gauge is the maximum of their products with
    /// the argument.
    pub fn gauge_rows(&self) -> Result<&[Vec<Rational>]> {
        if !self.flags.origin_interior {
            return Err(Error::OriginNotInterior);
        }
        Ok(&self.gauge_rows)
    }

    pub fn gauge(&self, y: &[Rational]) -> Result<Rational> {
        let rows = self.gauge_rows()?;
        if y.len() != self.dim {
            return Err(Error::Dimension("gauge argument has wrong length".into()));
        }
        Ok(rows.iter().map(|g| dot(g, y)).fold(Rational::zero(), |m, v| if v > m { v } else { m }))
    }

    pub fn support(&self, x: &[Rational]) -> Rational {
        self.vertices.iter().map(|v| dot(v, x)).max().expect("nonempty")
    }

    /// Width `h(x) + h(-x)`.
    pub fn width_in(&self, x: &[Rational]) -> Rational {
        let vals: Vec<Rational> = self.vertices.iter().map(|v| dot(v, x)).collect();
        vals.iter().max().expect("nonempty") - vals.iter().min().expect("nonempty")
    }

    pub fn contains(&self, x: &[Rational]) -> bool {
        self.halfspaces.iter().all(|h| h.contains(x))
    }

    pub fn contains_interior(&self, x: &[Rational]) -> bool {
        self.halfspaces.iter().all(|h| h.value(x) < h.b)
    }

    pub fn same_set(&self, other: &Polytope) -> bool {
        self.dim == other.dim && self.vertices == other.vertices
    }

    pub fn centroid(&self) -> Vec<Rational> {
        centroid(&self.vertices)
    }

    pub fn polar(&self) -> Result<Polytope> {
        if !self.flags.origin_interior {
            return Err(Error::OriginNotInterior);
        }
        let verts = self.gauge_rows.clone();
        let hs = self
            .vertices
            .iter()
            .map(|v| Halfspace::new(v.clone(), Rational::from_integer(1.into())))
            .collect::<Result<Vec<_>>>()?;
        Ok(Self::from_reps_unchecked(self.dim, verts, hs))
    }

    /// `K - K`.
    pub fn difference_body(&self) -> Result<Polytope> {
        let mut pts = Vec::with_capacity(self.vertices.len() * self.vertices.len());
        for v in &self.vertices {
            for w in &self.vertices {
                pts.push(vsub(v, w));
            }
        }
        Self::from_points(&pts)
    }

    pub fn translate(&self, t: &[Rational]) -> Polytope {
        let verts = self.vertices.iter().map(|v| vadd(v, t)).collect();
        let hs = self
            .halfspaces
            .iter()
            .map(|h| Halfspace { a: h.a.clone(), b: &h.b + h.value(t) })
            .collect();
        Self::from_reps_unchecked(self.dim, verts, hs)
    }

    /// `s K` for `s > 0`.
    pub fn scale(&self, s: &Rational) -> Result<Polytope> {
        if !s.is_positive() {
            return Err(Error::InvalidArgument("scale factor must be positive".into()));
        }
        let verts = self.vertices.iter().map(|v| v.iter().map(|x| x * s).collect()).collect();
        let hs = self.halfspaces.iter().map(|h| Halfspace { a: h.a.clone(), b: &h.b * s }).collect();
        Ok(Self::from_reps_unchecked(self.dim, verts, hs))
    }

    pub fn negate(&self) -> Polytope {
        let verts = self.vertices.iter().map(|v| v.iter().map(|x| -x).collect()).collect();
        let hs = self
            .halfspaces
            .iter()
            .map(|h| Halfspace { a: h.a.iter().map(|x| -x).collect(), b: h.b.clone() })
            .collect();
        Self::from_reps_unchecked(self.dim, verts, hs)
    }

    /// Image under a nonsingular linear map.
    pub fn linear_image(&self, m: &RatMatrix) -> Result<Polytope> {
        if m.rows() != self.dim || m.cols() != self.dim {
            return Err(Error::Dimension("linear map must be square of the body dimension".into()));
        }
        let inv_t = m.inverse()?.transpose();
        let verts = self.vertices.iter().map(|v| m.mul_vec(v)).collect();
        let hs = self
            .halfspaces
            .iter()
            .map(|h| Halfspace::new(inv_t.mul_vec(&h.a), h.b.clone()))
            .collect::<Result<Vec<_>>>()?;
        Ok(Self::from_reps_unchecked(self.dim, verts, hs))
    }

    /// Orthogonal projection onto `plane`, in the plane's frame coordinates.
    pub fn project_body(&self, plane: &LatticePlane) -> Result<Polytope> {
        if plane.ambient_dim != self.dim {
            return Err(Error::Dimension("plane lives in another dimension".into()));
        }
        let pts: Vec<Vec<Rational>> = self.vertices.iter().map(|v| plane.project_coords(v)).collect();
        Self::from_points(&pts)
    }

    /// Projection onto the coordinates listed in `index_set`.
    pub fn coordinate_projection(&self, index_set: &[usize]) -> Result<Polytope> {
        check_indices(index_set, self.dim)?;
        let pts: Vec<Vec<Rational>> =
            self.vertices.iter().map(|v| index_set.iter().map(|&j| v[j].clone()).collect()).collect();
        Self::from_points(&pts)
    }

    /// `K ∩ span(e_j : j in J)` in the coordinates `J`.
    pub fn coordinate_section(&self, index_set: &[usize]) -> Result<Polytope> {
        check_indices(index_set, self.dim)?;
        let hs: Vec<Halfspace> = self
            .halfspaces
            .iter()
            .filter_map(|h| {
                let a: Vec<Rational> = index_set.iter().map(|&j| h.a[j].clone()).collect();
                if a.iter().all(Zero::is_zero) {
                    if h.b.is_negative() {
                        Some(Err(Error::Degenerate))
                    } else {
                        None
                    }
                } else {
                    Some(Halfspace::new(a, h.b.clone()))
                }
            })
            .collect::<Result<_>>()?;
        Self::from_halfspaces(&hs, index_set.len())
    }

    pub fn volume(&self) -> Rational {
        super::volume::volume(self)
    }
}

fn check_indices(index_set: &[usize], d: usize) -> Result<()> {
    if index_set.is_empty() || index_set.iter().any(|&j| j >= d) {
        return Err(Error::InvalidArgument("coordinate index set out of range".into()));
    }
    let mut s = index_set.to_vec();
    s.sort_unstable();
    s.dedup();
    if s.len() != index_set.len() {
        return Err(Error::InvalidArgument("repeated coordinate index".into()));
    }
    Ok(())
}

pub fn centroid(points: &[Vec<Rational>]) -> Vec<Rational> {
    let d = points[0].len();
    let n = Rational::from_integer(BigInt::from(points.len()));
    let mut c = vec![Rational::zero(); d];
    for p in points {
        for (x, y) in c.iter_mut().zip(p) {
            *x += y;
        }
    }
    c.into_iter().map(|x| x / &n).collect()
}

pub fn gauge(k: &Polytope, y: &[Rational]) -> Result<Rational> {
    k.gauge(y)
}

pub fn support(k: &Polytope, x: &[Rational]) -> Rational {
    k.support(x)
}

pub fn polar(k: &Polytope) -> Result<Polytope> {
    k.polar()
}

pub fn difference_body(k: &Polytope) -> Result<Polytope> {
    k.difference_body()
}

pub fn project_body(k: &Polytope, plane: &LatticePlane) -> Result<Polytope> {
    k.project_body(plane)
}

pub fn coordinate_section(k: &Polytope, index_set: &[usize]) -> Result<Polytope> {
    k.coordinate_section(index_set)
}

pub fn volume(k: &Polytope) -> Rational {
    k.volume()
}
