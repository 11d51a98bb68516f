//! Full-rank lattices, their duals and quotients, lattice planes, sections
//! and projections.

use num::bigint::BigInt;
use num::integer::Integer;
use num::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::exact::normal_form::{column_lattice_basis, hnf_general, integer_kernel, saturate, snf_general};
use crate::exact::rational::{ceil_int, floor_int, lcm_denominators, to_rational_vec, Rational};
use crate::exact::{IntMatrix, RatMatrix};

/// A full-rank lattice `B Z^n`; the columns of `basis` generate it.
#[derive(Clone, Debug)]
pub struct Lattice {
    basis: RatMatrix,
    det_abs: Rational,
    tri: RatMatrix,
    name: Option<String>,
}

impl PartialEq for Lattice {
    fn eq(&self, other: &Self) -> bool {
        self.same_lattice(other)
    }
}

impl Lattice {
    pub fn new(basis: RatMatrix) -> Result<Self> {
        if !basis.is_square() {
            return Err(Error::Dimension("lattice basis must be square".into()));
        }
        let det = basis.determinant()?;
        if det.is_zero() {
            return Err(Error::Rank("lattice basis is singular".into()));
        }
        let tri = triangular_basis(&basis);
        Ok(Lattice { basis, det_abs: det.abs(), tri, name: None })
    }

    pub fn from_columns(cols: &[Vec<Rational>]) -> Result<Self> {
        Self::new(RatMatrix::from_columns(cols)?)
    }

    pub fn integer(n: usize) -> Self {
        Self::new(RatMatrix::identity(n)).expect("identity").with_name("Zn")
    }

    pub fn with_name(mut self, name: &str) -> Self {
        self.name = Some(name.to_string());
        self
    }

    pub fn name(&self) -> Option<&str> {
        self.name.as_deref()
    }

    pub fn dim(&self) -> usize {
        self.basis.rows()
    }

    pub fn basis(&self) -> &RatMatrix {
        &self.basis
    }

    /// Lower-triangular basis with positive diagonal (scaled column HNF).
    pub fn triangular_basis(&self) -> &RatMatrix {
        &self.tri
    }

    pub fn det_abs(&self) -> &Rational {
        &self.det_abs
    }

    pub fn dual(&self) -> Lattice {
        let inv = self.basis.inverse().expect("nonsingular basis");
        Lattice::new(inv.transpose()).expect("nonsingular dual")
    }

    pub fn scaled(&self, t: &Rational) -> Result<Lattice> {
        Lattice::new(self.basis.scale(t))
    }

    /// Image under a nonsingular linear map.
    pub fn transformed(&self, m: &RatMatrix) -> Result<Lattice> {
        Lattice::new(m.mul(&self.basis)?)
    }

    /// Coefficients of `x` in the basis.
    pub fn coordinates(&self, x: &[Rational]) -> Vec<Rational> {
        self.basis.solve(x).expect("nonsingular basis")
    }

    pub fn contains(&self, x: &[Rational]) -> bool {
        x.len() == self.dim() && self.coordinates(x).iter().all(|c| c.is_integer())
    }

    pub fn same_lattice(&self, other: &Lattice) -> bool {
        self.dim() == other.dim()
            && self.det_abs == other.det_abs
            && other.basis.columns().iter().all(|c| self.contains(c))
    }

    pub fn is_integral(&self) -> bool {
        self.basis.is_integral()
    }

    pub fn is_standard(&self) -> bool {
        self.det_abs.is_one() && self.is_integral()
    }

    pub fn int_basis(&self) -> Result<IntMatrix> {
        self.basis.to_int()
    }

    /// All lattice points `x` with `lo_i <= x_i <= hi_i`.
    pub fn enumerate_in_box(&self, lo: &[Rational], hi: &[Rational]) -> Vec<Vec<Rational>> {
        let n = self.dim();
        let mut out = Vec::new();
        let mut coeffs: Vec<BigInt> = Vec::with_capacity(n);
        let mut point: Vec<Rational> = Vec::with_capacity(n);
        self.enum_rec(lo, hi, &mut coeffs, &mut point, &mut out);
        out
    }

    fn enum_rec(
        &self,
        lo: &[Rational],
        hi: &[Rational],
        coeffs: &mut Vec<BigInt>,
        point: &mut Vec<Rational>,
        out: &mut Vec<Vec<Rational>>,
    ) {
        let i = coeffs.len();
        let n = self.dim();
        if i == n {
            out.push(point.clone());
            return;
        }
        let t = &self.tri;
        let s = (0..i).fold(Rational::zero(), |acc, j| acc + &t[(i, j)] * Rational::from_integer(coeffs[j].clone()));
        let d = &t[(i, i)];
        let cmin = ceil_int(&((&lo[i] - &s) / d));
        let cmax = floor_int(&((&hi[i] - &s) / d));
        let mut c = cmin;
        while c <= cmax {
            point.push(&s + d * Rational::from_integer(c.clone()));
            coeffs.push(c.clone());
            self.enum_rec(lo, hi, coeffs, point, out);
            coeffs.pop();
            point.pop();
            c += 1;
        }
    }

    /// All lattice points of max-norm at most `bound`.
    pub fn enumerate_box(&self, bound: &Rational) -> Vec<Vec<Rational>> {
        let n = self.dim();
        let lo = vec![-bound.clone(); n];
        let hi = vec![bound.clone(); n];
        self.enumerate_in_box(&lo, &hi)
    }

    /// All lattice points of `k`. Each basis coefficient is bounded by the
    /// projection of `k` (in basis coordinates) onto the leading ones, so
    /// long thin bodies cost about as much as their lattice points.
    pub fn points_in(&self, k: &crate::body::Polytope) -> Result<Vec<Vec<Rational>>> {
        let n = self.dim();
        if k.dim() != n {
            return Err(Error::Dimension("body and lattice dimensions differ".into()));
        }
        let coeff = k.linear_image(&self.basis.inverse()?)?;
        let mut shadows = Vec::with_capacity(n);
        for i in 1..=n {
            let pts: Vec<Vec<Rational>> = coeff.vertices().iter().map(|v| v[..i].to_vec()).collect();
            let q = if i == n { coeff.clone() } else { crate::body::Polytope::from_points(&pts)? };
            shadows.push(q.halfspaces().to_vec());
        }
        let mut out = Vec::new();
        let mut c: Vec<Rational> = Vec::with_capacity(n);
        self.points_rec(&shadows, &mut c, &mut out);
        Ok(out)
    }

    fn points_rec(&self, shadows: &[Vec<crate::body::Halfspace>], c: &mut Vec<Rational>, out: &mut Vec<Vec<Rational>>) {
        let i = c.len();
        if i == shadows.len() {
            out.push(self.basis.mul_vec(c));
            return;
        }
        let (mut lo, mut hi): (Option<Rational>, Option<Rational>) = (None, None);
        for h in &shadows[i] {
            let rest = (0..i).fold(h.b.clone(), |acc, j| acc - &h.a[j] * &c[j]);
            let a = &h.a[i];
            if a.is_zero() {
                if rest.is_negative() {
                    return;
                }
            } else if a.is_positive() {
                let b = rest / a;
                hi = Some(hi.map_or(b.clone(), |x| x.min(b)));
            } else {
                let b = rest / a;
                lo = Some(lo.map_or(b.clone(), |x| x.max(b)));
            }
        }
        let (Some(lo), Some(hi)) = (lo, hi) else { return };
        let mut v = ceil_int(&lo);
        let top = floor_int(&hi);
        while v <= top {
            c.push(Rational::from_integer(v.clone()));
            self.points_rec(shadows, c, out);
            c.pop();
            v += 1;
        }
    }
}

pub fn dual_lattice(l: &Lattice) -> Lattice {
    l.dual()
}

pub fn enumerate_lattice_points(l: &Lattice, box_bound: &Rational) -> Result<Vec<Vec<Rational>>> {
    if !box_bound.is_positive() {
        return Err(Error::InvalidArgument("box bound must be positive".into()));
    }
    Ok(l.enumerate_box(box_bound))
}

fn triangular_basis(basis: &RatMatrix) -> RatMatrix {
    let l = Rational::from_integer(lcm_denominators(basis.entries()));
    let m = basis.scale(&l).to_int().expect("cleared denominators");
    let h = hnf_general(&m).h;
    h.to_rat().scale(&l.recip())
}

/// Named lattices: `Zn`, `checkerboard` and `makai`.
pub fn special_lattice(name: &str, n: usize) -> Result<Lattice> {
    if n == 0 {
        return Err(Error::InvalidArgument("dimension must be positive".into()));
    }
    let int_cols = |cols: Vec<Vec<i64>>| -> Result<Lattice> {
        let cols: Vec<Vec<Rational>> = cols
            .into_iter()
            .map(|c| c.into_iter().map(|x| Rational::from_integer(x.into())).collect())
            .collect();
        Lattice::from_columns(&cols)
    };
    match name {
        "Zn" | "Z" | "integer" | "standard" => Ok(Lattice::integer(n)),
        "checkerboard" | "Do" | "D" => {
            if n < 2 {
                return Err(Error::InvalidArgument("checkerboard lattice needs n >= 2".into()));
            }
            // {2e_1, e_1 + e_j}
            let mut cols = Vec::new();
            let mut c = vec![0; n];
            c[0] = 2;
            cols.push(c);
            for j in 1..n {
                let mut c = vec![0; n];
                c[0] = 1;
                c[j] = 1;
                cols.push(c);
            }
            Ok(int_cols(cols)?.with_name("checkerboard"))
        }
        "makai" | "Lambda" => {
            if n < 2 {
                return Err(Error::InvalidArgument("makai lattice needs n >= 2".into()));
            }
            let cols = (0..n)
                .map(|j| (0..n).map(|i| if i == j { n as i64 } else { -1 }).collect())
                .collect();
            Ok(int_cols(cols)?.with_name("makai"))
        }
        _ => Err(Error::InvalidArgument(format!("unknown lattice name {name:?}"))),
    }
}

/// `Z^n / sub` for an integral sublattice, indexed through its SNF.
#[derive(Clone, Debug)]
pub struct QuotientGroup {
    n: usize,
    /// All invariant factors `d_1 | ... | d_n`.
    factors: Vec<BigInt>,
    /// Row operations of the SNF; coset coordinates are `P x mod d`.
    p: IntMatrix,
    p_inv: IntMatrix,
    order: BigInt,
}

impl QuotientGroup {
    pub fn new(sub: &Lattice) -> Result<Self> {
        let b = sub.int_basis().map_err(|_| Error::NotIntegral)?;
        let s = snf_general(&b);
        let order = s.d.iter().fold(BigInt::one(), |acc, d| acc * d);
        let p_inv = s.p.to_rat().inverse()?.to_int()?;
        Ok(QuotientGroup { n: sub.dim(), factors: s.d, p: s.p, p_inv, order })
    }

    pub fn dim(&self) -> usize {
        self.n
    }

    pub fn invariant_factors(&self) -> &[BigInt] {
        &self.factors
    }

    /// Factors greater than one.
    pub fn nontrivial_factors(&self) -> Vec<BigInt> {
        self.factors.iter().filter(|d| !d.is_one()).cloned().collect()
    }

    pub fn order(&self) -> &BigInt {
        &self.order
    }

    /// Canonical coset coordinates of an integer vector, one per factor,
    /// each in `[0, d_i)`.
    pub fn coords(&self, x: &[BigInt]) -> Vec<BigInt> {
        let y = self.p.mul_vec(x);
        y.iter().zip(&self.factors).map(|(v, d)| v.mod_floor(d)).collect()
    }

    /// Coordinates restricted to the nontrivial factors.
    pub fn short_coords(&self, x: &[BigInt]) -> Vec<BigInt> {
        self.coords(x)
            .into_iter()
            .zip(&self.factors)
            .filter(|(_, d)| !d.is_one())
            .map(|(c, _)| c)
            .collect()
    }

    /// Integer vector representing the coset with the given full coordinates.
    pub fn representative(&self, coords: &[BigInt]) -> Vec<BigInt> {
        self.p_inv.mul_vec(coords)
    }

    /// One representative per coset, in mixed-radix order of the SNF
    /// coordinates.
    pub fn representatives(&self) -> Vec<Vec<BigInt>> {
        let mut out = Vec::new();
        let mut cur = vec![BigInt::zero(); self.n];
        loop {
            out.push(self.representative(&cur));
            let mut k = 0;
            loop {
                if k == self.n {
                    return out;
                }
                cur[k] += 1;
                if cur[k] < self.factors[k] {
                    break;
                }
                cur[k] = BigInt::zero();
                k += 1;
            }
        }
    }

    pub fn same_coset(&self, a: &[BigInt], b: &[BigInt]) -> bool {
        self.coords(a) == self.coords(b)
    }
}

pub fn quotient_group(sub: &Lattice) -> Result<(Vec<BigInt>, Vec<Vec<BigInt>>)> {
    let q = QuotientGroup::new(sub)?;
    let reps = q.representatives();
    Ok((q.factors, reps))
}

/// A linear subspace spanned by integer vectors.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LatticePlane {
    pub ambient_dim: usize,
    pub dim: usize,
    pub spanning_vectors: Vec<Vec<BigInt>>,
}

impl LatticePlane {
    pub fn new(spanning_vectors: Vec<Vec<BigInt>>) -> Result<Self> {
        let ambient_dim = spanning_vectors
            .first()
            .map(Vec::len)
            .ok_or_else(|| Error::InvalidArgument("a plane needs at least one vector".into()))?;
        if spanning_vectors.iter().any(|v| v.len() != ambient_dim) {
            return Err(Error::Dimension("spanning vectors differ in length".into()));
        }
        let m = IntMatrix::from_columns(&spanning_vectors)?;
        if m.to_rat().rank() != spanning_vectors.len() {
            return Err(Error::Rank("spanning vectors are dependent".into()));
        }
        Ok(LatticePlane { ambient_dim, dim: spanning_vectors.len(), spanning_vectors })
    }

    pub fn from_i64(vectors: &[&[i64]]) -> Result<Self> {
        Self::new(vectors.iter().map(|v| v.iter().map(|&x| BigInt::from(x)).collect()).collect())
    }

    /// `span(e_j : j in J)`.
    pub fn coordinate(n: usize, index_set: &[usize]) -> Result<Self> {
        let vecs = index_set
            .iter()
            .map(|&j| {
                let mut v = vec![BigInt::zero(); n];
                if j >= n {
                    return Err(Error::InvalidArgument(format!("index {j} out of range")));
                }
                v[j] = BigInt::one();
                Ok(v)
            })
            .collect::<Result<Vec<_>>>()?;
        Self::new(vecs)
    }

    /// The same subspace with a basis of `Z^n ∩ L` in canonical form.
    pub fn saturated(&self) -> LatticePlane {
        let s = saturate(&self.spanning_vectors, self.ambient_dim);
        LatticePlane { ambient_dim: self.ambient_dim, dim: s.len(), spanning_vectors: s }
    }

    /// Matrix whose columns are the spanning vectors.
    pub fn frame(&self) -> RatMatrix {
        let cols: Vec<Vec<Rational>> = self.spanning_vectors.iter().map(|v| to_rational_vec(v)).collect();
        RatMatrix::from_columns(&cols).expect("equal lengths")
    }

    pub fn gram(&self) -> RatMatrix {
        let f = self.frame();
        f.transpose().mul(&f).expect("conformable")
    }

    /// Orthogonal complement as a saturated plane; `None` for the full space.
    pub fn orthogonal_complement(&self) -> Option<LatticePlane> {
        let ft = IntMatrix::from_rows(self.spanning_vectors.clone()).expect("equal lengths");
        let k = integer_kernel(&ft);
        if k.is_empty() {
            return None;
        }
        Some(LatticePlane { ambient_dim: self.ambient_dim, dim: k.len(), spanning_vectors: k }.saturated())
    }

    /// Coordinates in this plane's frame of the orthogonal projection of `x`.
    pub fn project_coords(&self, x: &[Rational]) -> Vec<Rational> {
        let f = self.frame();
        let rhs = f.transpose().mul_vec(x);
        self.gram().solve(&rhs).expect("independent frame")
    }
}

/// A lattice living in a subspace, written in the coordinates of a frame.
/// Actual vectors are `frame * lattice.basis * c`.
#[derive(Clone, Debug)]
pub struct EmbeddedLattice {
    pub plane: LatticePlane,
    pub lattice: Lattice,
}

impl EmbeddedLattice {
    /// Squared Euclidean determinant: `det(B)^2 det(F^T F)`.
    pub fn euclidean_det_sq(&self) -> Rational {
        let d = self.lattice.det_abs();
        d * d * self.plane.gram().determinant().expect("square gram")
    }
}

/// `Z^n ∩ L` in the coordinates of a saturated basis of `L`.
pub fn section_lattice(plane: &LatticePlane) -> EmbeddedLattice {
    let sat = plane.saturated();
    let k = sat.dim;
    EmbeddedLattice { plane: sat, lattice: Lattice::integer(k) }
}

/// `Λ | L` in the frame coordinates of `plane` (which spans `L`).
pub fn project_lattice(l: &Lattice, plane: &LatticePlane) -> Result<EmbeddedLattice> {
    if plane.ambient_dim != l.dim() {
        return Err(Error::Dimension("plane and lattice dimensions differ".into()));
    }
    let f = plane.frame();
    let gens = plane.gram().inverse()?.mul(&f.transpose())?.mul(l.basis())?;
    let basis = lattice_basis_from_generators(&gens)?;
    Ok(EmbeddedLattice { plane: plane.clone(), lattice: Lattice::new(basis)? })
}

/// Basis of the lattice generated by the (rational) columns of `gens`,
/// assuming that group is discrete and of full rank in its row space.
pub fn lattice_basis_from_generators(gens: &RatMatrix) -> Result<RatMatrix> {
    let l = Rational::from_integer(lcm_denominators(gens.entries()));
    let m = gens.scale(&l).to_int()?;
    let b = column_lattice_basis(&m);
    if b.cols() != gens.rows() {
        return Err(Error::Rank("generators do not span the space".into()));
    }
    Ok(b.to_rat().scale(&l.recip()))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::rational::{int, int_vec, rat};

    fn bi(v: &[i64]) -> Vec<BigInt> {
        v.iter().map(|&x| BigInt::from(x)).collect()
    }

    #[test]
    fn duals() {
        let z = Lattice::integer(3);
        assert!(z.dual().same_lattice(&z));
        let cb = special_lattice("checkerboard", 2).unwrap();
        let d = cb.dual();
        assert_eq!(d.det_abs(), &rat(1, 2));
        for x in cb.enumerate_box(&int(2)) {
            for y in d.enumerate_box(&int(1)) {
                let ip = crate::exact::rational::dot(&x, &y);
                assert!(ip.is_integer());
            }
        }
        let two = Lattice::integer(2).scaled(&int(2)).unwrap();
        assert!(two.dual().same_lattice(&Lattice::integer(2).scaled(&rat(1, 2)).unwrap()));
    }

    #[test]
    fn enumeration() {
        assert_eq!(Lattice::integer(2).enumerate_box(&int(1)).len(), 9);
        let cb = special_lattice("checkerboard", 2).unwrap();
        let mut pts = cb.enumerate_box(&int(1));
        pts.sort();
        let mut want = vec![int_vec(&[0, 0]), int_vec(&[1, 1]), int_vec(&[-1, -1]), int_vec(&[1, -1]), int_vec(&[-1, 1])];
        want.sort();
        assert_eq!(pts, want);
        let two = Lattice::integer(2).scaled(&int(2)).unwrap();
        assert_eq!(two.enumerate_box(&int(3)).len(), 9);
        assert!(enumerate_lattice_points(&two, &int(0)).is_err());
    }

    #[test]
    fn named_lattices() {
        assert_eq!(special_lattice("checkerboard", 4).unwrap().det_abs(), &int(2));
        let m3 = special_lattice("makai", 3).unwrap();
        assert_eq!(m3.det_abs(), &int(16));
        let m4 = special_lattice("makai", 4).unwrap();
        for i in 0..=4 {
            let mut x = vec![int(i); 4];
            x[0] += int(5);
            assert!(m4.contains(&x));
        }
        assert!(!m4.contains(&int_vec(&[1, 0, 0, 0])));
        assert!(special_lattice("nope", 3).is_err());
    }

    #[test]
    fn quotients() {
        let two = Lattice::integer(2).scaled(&int(2)).unwrap();
        let (f, reps) = quotient_group(&two).unwrap();
        assert_eq!(f, bi(&[2, 2]));
        assert_eq!(reps.len(), 4);
        let (_, reps) = quotient_group(&special_lattice("checkerboard", 3).unwrap()).unwrap();
        assert_eq!(reps.len(), 2);
        let m3 = special_lattice("makai", 3).unwrap();
        let q = QuotientGroup::new(&m3).unwrap();
        assert_eq!(q.order(), &BigInt::from(16));
        let mut seen = std::collections::HashSet::new();
        for a in 0..4 {
            for b in 0..4 {
                seen.insert(q.coords(&bi(&[a, b, 0])));
            }
        }
        assert_eq!(seen.len(), 16);
        assert!(q.same_coset(&bi(&[1, 1, 1]), &bi(&[0, 0, 0])));
        assert!(QuotientGroup::new(&Lattice::integer(2).scaled(&rat(1, 2)).unwrap()).is_err());
    }

    #[test]
    fn sections_and_projections() {
        let s = section_lattice(&LatticePlane::coordinate(3, &[0, 1]).unwrap());
        assert_eq!(s.euclidean_det_sq(), int(1));
        let s = section_lattice(&LatticePlane::from_i64(&[&[2, 2]]).unwrap());
        assert_eq!(s.euclidean_det_sq(), int(2));
        let s = section_lattice(&LatticePlane::from_i64(&[&[1, 1, 0], &[0, 1, 1]]).unwrap());
        assert_eq!(s.euclidean_det_sq(), int(3));

        let z2 = Lattice::integer(2);
        let p = project_lattice(&z2, &LatticePlane::coordinate(2, &[0]).unwrap()).unwrap();
        assert_eq!(p.euclidean_det_sq(), int(1));
        let p = project_lattice(&z2, &LatticePlane::from_i64(&[&[1, -1]]).unwrap()).unwrap();
        assert_eq!(p.euclidean_det_sq(), rat(1, 2));
        let z3 = Lattice::integer(3);
        let p = project_lattice(&z3, &LatticePlane::coordinate(3, &[0, 1]).unwrap()).unwrap();
        assert!(p.lattice.same_lattice(&Lattice::integer(2)));
    }

    #[test]
    fn complement_identity() {
        let z3 = Lattice::integer(3);
        let l = LatticePlane::from_i64(&[&[1, 2, 3]]).unwrap();
        let perp = l.orthogonal_complement().unwrap();
        assert_eq!(perp.dim, 2);
        let sec = section_lattice(&l);
        let proj = project_lattice(&z3, &perp).unwrap();
        assert_eq!(sec.euclidean_det_sq() * proj.euclidean_det_sq(), int(1));
    }
}
