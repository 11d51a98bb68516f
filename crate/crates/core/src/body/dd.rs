//! Double description method for pointed polyhedral cones.
//!
//! The cone is `{z : c_k . z >= 0}`; the result is its list of extreme rays,
//! each a primitive integer vector.

use num::bigint::BigInt;
use num::integer::Integer;
use num::{Signed, Zero};

use crate::error::{Error, Result};
use crate::exact::rational::{primitive_integer, Rational};
use crate::exact::RatMatrix;

#[derive(Clone)]
struct Ray {
    v: Vec<BigInt>,
    tight: Vec<u64>,
}

fn bit_set(bits: &mut [u64], k: usize) {
    bits[k / 64] |= 1 << (k % 64);
}

fn bits_and(a: &[u64], b: &[u64]) -> Vec<u64> {
    a.iter().zip(b).map(|(x, y)| x & y).collect()
}

fn bits_subset(a: &[u64], b: &[u64]) -> bool {
    a.iter().zip(b).all(|(x, y)| x & !y == 0)
}

fn popcount(a: &[u64]) -> usize {
    a.iter().map(|x| x.count_ones() as usize).sum()
}

fn idot(a: &[BigInt], b: &[BigInt]) -> BigInt {
    a.iter().zip(b).fold(BigInt::zero(), |acc, (x, y)| acc + x * y)
}

fn make_primitive(v: Vec<BigInt>) -> Vec<BigInt> {
    let g = v.iter().fold(BigInt::zero(), |acc, x| acc.gcd(x));
    if g.is_zero() {
        return v;
    }
    v.into_iter().map(|x| x / &g).collect()
}

/// Extreme rays of `{z in R^d : c . z >= 0 for all c in constraints}`.
///
/// The constraint matrix must have rank `d` (so the cone is pointed).
pub fn extreme_rays(constraints: &[Vec<BigInt>], d: usize) -> Result<Vec<Vec<BigInt>>> {
    if constraints.iter().any(|c| c.len() != d) {
        return Err(Error::Dimension("constraint length differs from cone dimension".into()));
    }
    let m = constraints.len();
    let words = m.div_ceil(64).max(1);

    // greedy choice of d independent rows for the starting simplicial cone
    let mut chosen: Vec<usize> = Vec::new();
    let mut echelon: Vec<Vec<Rational>> = Vec::new();
    for (k, c) in constraints.iter().enumerate() {
        let mut v: Vec<Rational> = c.iter().cloned().map(Rational::from_integer).collect();
        for row in &echelon {
            let p = row.iter().position(|x| !x.is_zero()).expect("nonzero row");
            if !v[p].is_zero() {
                let f = &v[p] / &row[p];
                for (x, y) in v.iter_mut().zip(row) {
                    *x -= &f * y;
                }
            }
        }
        if v.iter().any(|x| !x.is_zero()) {
            echelon.push(v);
            chosen.push(k);
            if chosen.len() == d {
                break;
            }
        }
    }
    if chosen.len() < d {
        return Err(Error::Degenerate);
    }
    let a0 = RatMatrix::from_rows(
        chosen
            .iter()
            .map(|&k| constraints[k].iter().cloned().map(Rational::from_integer).collect())
            .collect(),
    )?;
    let inv = a0.inverse()?;
    let mut rays: Vec<Ray> = (0..d)
        .map(|j| {
            let v = primitive_integer(&inv.column(j));
            Ray { v, tight: vec![0; words] }
        })
        .collect();
    let mut done = vec![false; m];
    for &k in &chosen {
        done[k] = true;
    }
    for r in rays.iter_mut() {
        for &k in &chosen {
            if idot(&constraints[k], &r.v).is_zero() {
                bit_set(&mut r.tight, k);
            }
        }
    }

    let order: Vec<usize> = (0..m).filter(|&k| !done[k]).collect();
    for k in order {
        let c = &constraints[k];
        let vals: Vec<BigInt> = rays.iter().map(|r| idot(c, &r.v)).collect();
        let pos: Vec<usize> = (0..rays.len()).filter(|&i| vals[i].is_positive()).collect();
        let neg: Vec<usize> = (0..rays.len()).filter(|&i| vals[i].is_negative()).collect();
        let zer: Vec<usize> = (0..rays.len()).filter(|&i| vals[i].is_zero()).collect();
        if neg.is_empty() {
            for &i in &zer {
                bit_set(&mut rays[i].tight, k);
            }
            done[k] = true;
            continue;
        }
        let mut next: Vec<Ray> = Vec::with_capacity(pos.len() + zer.len());
        for &i in pos.iter() {
            next.push(rays[i].clone());
        }
        for &i in zer.iter() {
            let mut r = rays[i].clone();
            bit_set(&mut r.tight, k);
            next.push(r);
        }
        for &p in &pos {
            for &q in &neg {
                let common = bits_and(&rays[p].tight, &rays[q].tight);
                if popcount(&common) + 2 < d {
                    continue;
                }
                let adjacent = (0..rays.len())
                    .all(|r| r == p || r == q || !bits_subset(&common, &rays[r].tight));
                if !adjacent {
                    continue;
                }
                let vp = &vals[p];
                let vq = -&vals[q];
                let v: Vec<BigInt> = rays[q].v.iter().zip(&rays[p].v).map(|(a, b)| vp * a + &vq * b).collect();
                let v = make_primitive(v);
                let mut tight = common;
                bit_set(&mut tight, k);
                next.push(Ray { v, tight });
            }
        }
        rays = next;
        done[k] = true;
    }
    Ok(rays.into_iter().map(|r| r.v).collect())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn bi(rows: &[&[i64]]) -> Vec<Vec<BigInt>> {
        rows.iter().map(|r| r.iter().map(|&x| BigInt::from(x)).collect()).collect()
    }

    #[test]
    fn orthant() {
        let rays = extreme_rays(&bi(&[&[1, 0, 0], &[0, 1, 0], &[0, 0, 1]]), 3).unwrap();
        assert_eq!(rays.len(), 3);
    }

    #[test]
    fn square_cone() {
        // homogenized square |x| <= t, |y| <= t
        let c = bi(&[&[1, -1, 0], &[1, 1, 0], &[1, 0, -1], &[1, 0, 1]]);
        let mut rays = extreme_rays(&c, 3).unwrap();
        rays.sort();
        assert_eq!(rays, bi(&[&[1, -1, -1], &[1, -1, 1], &[1, 1, -1], &[1, 1, 1]]));
    }

    #[test]
    fn rank_deficient() {
        assert!(extreme_rays(&bi(&[&[1, 0, 0], &[0, 1, 0]]), 3).is_err());
    }
}
