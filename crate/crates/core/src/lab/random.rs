//! Seeded random bodies and lattices with small denominators.

use rand::Rng;
use rand_chacha::ChaCha8Rng;
use rand::SeedableRng;

use crate::body::polytope::centroid;
use crate::body::Polytope;
use crate::exact::rational::{int, rat, Rational};
use crate::exact::RatMatrix;
use crate::lattice::Lattice;

pub const MAX_DENOMINATOR: i64 = 16;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// A rational in `[lo, hi]` with denominator `q`.
fn coord(rng: &mut ChaCha8Rng, lo: i64, hi: i64, q: i64) -> Rational {
    rat(rng.gen_range(lo * q..=hi * q), q)
}

fn denominator(rng: &mut ChaCha8Rng) -> i64 {
    const CHOICES: [i64; 5] = [1, 2, 3, 4, 8];
    CHOICES[rng.gen_range(0..CHOICES.len())]
}

fn point(rng: &mut ChaCha8Rng, n: usize, lo: i64, hi: i64, q: i64) -> Vec<Rational> {
    (0..n).map(|_| coord(rng, lo, hi, q)).collect()
}

/// Retries `make` until it returns a full-dimensional body.
fn sample(rng: &mut ChaCha8Rng, mut make: impl FnMut(&mut ChaCha8Rng) -> Vec<Vec<Rational>>) -> Polytope {
    loop {
        if let Ok(k) = Polytope::from_points(&make(rng)) {
            return k;
        }
    }
}

/// Hull of a few random points, translated so its vertex centroid is the
/// origin.
pub fn random_body(rng: &mut ChaCha8Rng, n: usize) -> Polytope {
    let q = denominator(rng);
    let count = rng.gen_range(n + 1..=n + 4);
    let k = sample(rng, |r| (0..count).map(|_| point(r, n, -2, 2, q)).collect());
    let c: Vec<Rational> = centroid(k.vertices()).into_iter().map(|x| -x).collect();
    k.translate(&c)
}

/// A random simplex with its vertex centroid at the origin.
pub fn random_simplex(rng: &mut ChaCha8Rng, n: usize) -> Polytope {
    let q = denominator(rng);
    let k = sample(rng, |r| (0..=n).map(|_| point(r, n, -2, 2, q)).collect());
    let c: Vec<Rational> = centroid(k.vertices()).into_iter().map(|x| -x).collect();
    k.translate(&c)
}

/// Hull of random points and their negatives.
pub fn random_symmetric(rng: &mut ChaCha8Rng, n: usize) -> Polytope {
    let q = denominator(rng);
    let count = rng.gen_range(n..=n + 2);
    sample(rng, |r| {
        let pts: Vec<Vec<Rational>> = (0..count).map(|_| point(r, n, -2, 2, q)).collect();
        pts.iter().cloned().chain(pts.iter().map(|p| p.iter().map(|x| -x).collect())).collect()
    })
}

/// Random points in the positive orthant reflected through every
/// coordinate hyperplane.
pub fn random_unconditional(rng: &mut ChaCha8Rng, n: usize) -> Polytope {
    let q = denominator(rng);
    let count = rng.gen_range(1..=n + 1);
    sample(rng, |r| {
        let mut pts = Vec::new();
        for _ in 0..count {
            let p: Vec<Rational> = (0..n).map(|_| rat(r.gen_range(q / 2 + 1..=2 * q), q)).collect();
            for mask in 0u64..1 << n {
                pts.push(p.iter().enumerate().map(|(j, x)| if mask >> j & 1 == 1 { -x } else { x.clone() }).collect());
            }
        }
        pts
    })
}

/// A random nonsingular lattice with small integer or half-integer entries.
pub fn random_lattice(rng: &mut ChaCha8Rng, n: usize) -> Lattice {
    loop {
        let q = if rng.gen_bool(0.5) { 1 } else { 2 };
        let rows: Vec<Vec<Rational>> = (0..n)
            .map(|i| (0..n).map(|j| if i == j { coord(rng, 1, 2, q) } else { coord(rng, -1, 1, q) }).collect())
            .collect();
        if let Ok(l) = Lattice::new(RatMatrix::from_rows(rows).expect("square")) {
            return l;
        }
    }
}

/// An integer sublattice of `Z^n` of small index.
pub fn random_sublattice(rng: &mut ChaCha8Rng, n: usize) -> Lattice {
    loop {
        let rows: Vec<Vec<Rational>> = (0..n)
            .map(|i| (0..n).map(|j| if i == j { int(rng.gen_range(1..=3)) } else { int(rng.gen_range(-1..=1)) }).collect())
            .collect();
        if let Ok(l) = Lattice::new(RatMatrix::from_rows(rows).expect("square")) {
            return l;
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn same_seed_same_bodies() {
        let (mut a, mut b) = (rng(7), rng(7));
        for n in 1..=3 {
            assert!(random_body(&mut a, n).same_set(&random_body(&mut b, n)));
            assert_eq!(random_lattice(&mut a, n), random_lattice(&mut b, n));
        }
    }

    #[test]
    fn generators_are_well_formed() {
        let mut a = rng(7);
        for n in 1..=3 {
            let k = random_body(&mut a, n);
            assert!(k.origin_interior());
            assert!(random_symmetric(&mut a, n).is_o_symmetric());
            assert!(random_unconditional(&mut a, n).is_unconditional());
            assert!(random_simplex(&mut a, n).origin_interior());
            assert!(random_sublattice(&mut a, n).is_integral());
            assert_eq!(random_lattice(&mut a, n).dim(), n);
        }
    }
}
