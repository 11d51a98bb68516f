//! Integer normal forms.
//!
//! Conventions (column style): `H = M * U` with `U` unimodular. The nonzero
//! columns of `H` come first and form an echelon: column `c` has its pivot in
//! row `pivot_rows[c]`, pivot rows strictly increase, the pivot is positive,
//! entries above the pivot are zero, and entries of earlier columns in a
//! pivot row are reduced into `[0, pivot)`. For a square nonsingular input
//! this is the usual lower-triangular HNF.

use num::bigint::BigInt;
use num::integer::Integer;
use num::{One, Signed, Zero};

use super::matrix::IntMatrix;
use crate::error::{Error, Result};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Hnf {
    pub h: IntMatrix,
    pub u: IntMatrix,
    pub rank: usize,
    pub pivot_rows: Vec<usize>,
}

/// Column HNF of an arbitrary integer matrix.
pub fn hnf_general(m: &IntMatrix) -> Hnf {
    let rows = m.rows();
    let cols = m.cols();
    let mut h = m.clone();
    let mut u = IntMatrix::identity(cols);
    let mut r = 0usize;
    let mut pivot_rows = Vec::new();
    for i in 0..rows {
        if r == cols {
            break;
        }
        // clear row i to the right of column r using extended gcd steps
        for j in r + 1..cols {
            if h[(i, j)].is_zero() {
                continue;
            }
            let a = h[(i, r)].clone();
            let b = h[(i, j)].clone();
            let eg = a.extended_gcd(&b);
            let (g, x, y) = (eg.gcd, eg.x, eg.y);
            let p = -(&b / &g);
            let q = &a / &g;
            combine_columns(&mut h, r, j, &x, &y, &p, &q);
            combine_columns(&mut u, r, j, &x, &y, &p, &q);
        }
        if h[(i, r)].is_zero() {
            continue;
        }
        if h[(i, r)].is_negative() {
            h.negate_col(r);
            u.negate_col(r);
        }
        let pivot = h[(i, r)].clone();
        for c in 0..r {
            let f = h[(i, c)].div_floor(&pivot);
            if !f.is_zero() {
                let nf = -f;
                h.add_col_multiple(c, r, &nf);
                u.add_col_multiple(c, r, &nf);
            }
        }
        pivot_rows.push(i);
        r += 1;
    }
    Hnf { h, u, rank: r, pivot_rows }
}

/// (col_a, col_b) <- (x*col_a + y*col_b, p*col_a + q*col_b)
fn combine_columns(m: &mut IntMatrix, a: usize, b: usize, x: &BigInt, y: &BigInt, p: &BigInt, q: &BigInt) {
    for i in 0..m.rows() {
        let va = m[(i, a)].clone();
        let vb = m[(i, b)].clone();
        m[(i, a)] = x * &va + y * &vb;
        m[(i, b)] = p * &va + q * &vb;
    }
}

/// Column HNF of a full-column-rank matrix; returns `(H, U)` with `H = m*U`.
pub fn hermite_normal_form(m: &IntMatrix) -> Result<(IntMatrix, IntMatrix)> {
    let r = hnf_general(m);
    if r.rank < m.cols() {
        return Err(Error::Rank(format!(
            "hermite_normal_form needs full column rank, got rank {} of {}",
            r.rank,
            m.cols()
        )));
    }
    Ok((r.h, r.u))
}

/// Keeps only the nonzero columns of an HNF, i.e. a canonical basis of the
/// lattice generated by the columns of `m`.
pub fn column_lattice_basis(m: &IntMatrix) -> IntMatrix {
    let r = hnf_general(m);
    let cols: Vec<Vec<BigInt>> = (0..r.rank).map(|j| r.h.column(j)).collect();
    if cols.is_empty() {
        return IntMatrix::zeros(m.rows(), 0);
    }
    IntMatrix::from_columns(&cols).expect("columns share length")
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Snf {
    /// Diagonal entries, nonnegative, with the divisibility chain.
    pub d: Vec<BigInt>,
    pub p: IntMatrix,
    pub q: IntMatrix,
}

/// Smith normal form of any integer matrix: `P*m*Q` is diagonal with
/// `d_1 | d_2 | ...`; zero entries (if any) come last.
pub fn snf_general(m: &IntMatrix) -> Snf {
    let rows = m.rows();
    let cols = m.cols();
    let mut a = m.clone();
    let mut p = IntMatrix::identity(rows);
    let mut q = IntMatrix::identity(cols);
    let steps = rows.min(cols);
    for t in 0..steps {
        // smallest nonzero entry of the remaining block
        let Some((pi, pj)) = min_abs_entry(&a, t) else {
            break;
        };
        a.swap_rows(t, pi);
        p.swap_rows(t, pi);
        a.swap_cols(t, pj);
        q.swap_cols(t, pj);
        loop {
            let mut dirty = false;
            for i in t + 1..rows {
                if a[(i, t)].is_zero() {
                    continue;
                }
                let f = -a[(i, t)].div_floor(&a[(t, t)]);
                a.add_row_multiple(i, t, &f);
                p.add_row_multiple(i, t, &f);
                if !a[(i, t)].is_zero() {
                    dirty = true;
                }
            }
            for j in t + 1..cols {
                if a[(t, j)].is_zero() {
                    continue;
                }
                let f = -a[(t, j)].div_floor(&a[(t, t)]);
                a.add_col_multiple(j, t, &f);
                q.add_col_multiple(j, t, &f);
                if !a[(t, j)].is_zero() {
                    dirty = true;
                }
            }
            if !dirty {
                // enforce divisibility of the rest of the block
                let pivot = a[(t, t)].clone();
                let bad = (t + 1..rows)
                    .flat_map(|i| (t + 1..cols).map(move |j| (i, j)))
                    .find(|&(i, j)| !a[(i, j)].is_multiple_of(&pivot));
                match bad {
                    None => break,
                    Some((i, _)) => {
                        let one = BigInt::one();
                        a.add_row_multiple(t, i, &one);
                        p.add_row_multiple(t, i, &one);
                        continue;
                    }
                }
            }
            // move the smallest entry of row/column t to the pivot
            let mut best = (t, t);
            for i in t..rows {
                if !a[(i, t)].is_zero() && a[(i, t)].abs() < a[best].abs() {
                    best = (i, t);
                }
            }
            for j in t..cols {
                if !a[(t, j)].is_zero() && a[(t, j)].abs() < a[best].abs() {
                    best = (t, j);
                }
            }
            if best.0 != t {
                a.swap_rows(t, best.0);
                p.swap_rows(t, best.0);
            }
            if best.1 != t {
                a.swap_cols(t, best.1);
                q.swap_cols(t, best.1);
            }
        }
        if a[(t, t)].is_negative() {
            a.negate_row(t);
            p.negate_row(t);
        }
    }
    let d = (0..steps).map(|i| a[(i, i)].clone()).collect();
    Snf { d, p, q }
}

fn min_abs_entry(a: &IntMatrix, t: usize) -> Option<(usize, usize)> {
    let mut best: Option<(usize, usize)> = None;
    for i in t..a.rows() {
        for j in t..a.cols() {
            if a[(i, j)].is_zero() {
                continue;
            }
            if best.map_or(true, |b| a[(i, j)].abs() < a[b].abs()) {
                best = Some((i, j));
            }
        }
    }
    best
}

/// SNF of a square nonsingular matrix; returns `(d, P, Q)`.
pub fn smith_normal_form(m: &IntMatrix) -> Result<(Vec<BigInt>, IntMatrix, IntMatrix)> {
    if m.rows() != m.cols() {
        return Err(Error::Dimension("smith_normal_form needs a square matrix".into()));
    }
    let s = snf_general(m);
    if s.d.iter().any(Zero::is_zero) || s.d.len() < m.rows() {
        return Err(Error::Rank("smith_normal_form needs a nonsingular matrix".into()));
    }
    Ok((s.d, s.p, s.q))
}

/// Basis (as columns) of the integer kernel `{x in Z^n : m x = 0}`.
pub fn integer_kernel(m: &IntMatrix) -> Vec<Vec<BigInt>> {
    let r = hnf_general(m);
    (r.rank..m.cols()).map(|j| r.u.column(j)).collect()
}

/// Basis of `Z^n ∩ span(vectors)`; the input may be dependent.
pub fn saturate(vectors: &[Vec<BigInt>], n: usize) -> Vec<Vec<BigInt>> {
    if vectors.is_empty() {
        return Vec::new();
    }
    let m = IntMatrix::from_columns(vectors).expect("equal lengths");
    assert_eq!(m.rows(), n);
    let s = snf_general(&m);
    let k = s.d.iter().filter(|x| !x.is_zero()).count();
    // columns of P^{-1} for the nonzero invariant factors span the saturation
    let pinv = s.p.to_rat().inverse().expect("unimodular").to_int().expect("integral inverse");
    let basis: Vec<Vec<BigInt>> = (0..k).map(|j| pinv.column(j)).collect();
    let hm = IntMatrix::from_columns(&basis).expect("equal lengths");
    let c = column_lattice_basis(&hm);
    (0..c.cols()).map(|j| c.column(j)).collect()
}
