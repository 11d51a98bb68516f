//! Random search for small covering products in dimensions 2 and 3.

use num::One;
use rand::Rng;
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use super::random::{random_simplex, random_unconditional, rng};
use crate::body::polytope::centroid;
use crate::body::special::{has_concave_increments, makai_simplex, pni, q_body};
use crate::body::Polytope;
use crate::error::{Error, Result};
use crate::exact::rational::{factorial, format_rational, int, pow, rat, Rational};
use crate::io::body_to_json;
use crate::lattice::Lattice;
use crate::minima::planes::unconditional_minimum;
use crate::minima::{covering_product_with_bound, Interval};

#[derive(Clone, Debug)]
pub struct ExplorationLog {
    pub seed: u64,
    pub samples: usize,
    pub min_product_found: Interval,
    pub witness_body: Polytope,
    /// `(n+1)/2^n`, the conjectured lower bound, attained by `T_n`.
    pub conjectured_bound: Rational,
    /// Samples whose whole interval lies below the conjectured bound.
    pub below_conjecture: usize,
    /// Samples whose interval lies below `1/n! - tol`; must stay zero.
    pub floor_violations: usize,
    /// Random monotone sequences tried as minima of `q_body`, and how many
    /// of the resulting bodies have exactly those minima.
    pub q_body_trials: usize,
    pub q_body_realized: usize,
    /// Trials whose `q_body` has covering product exactly 1.
    pub q_body_extremal: usize,
    /// Trials where product 1 disagrees with concave increments of the
    /// body's own minima; expected zero.
    pub q_body_rule_mismatches: usize,
}

impl Serialize for ExplorationLog {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        serde_json::json!({
            "seed": self.seed,
            "samples": self.samples,
            "min_product_found": self.min_product_found,
            "witness_body": body_to_json(&self.witness_body),
            "conjectured_bound": format_rational(&self.conjectured_bound),
            "below_conjecture": self.below_conjecture,
            "floor_violations": self.floor_violations,
            "q_body_trials": self.q_body_trials,
            "q_body_realized": self.q_body_realized,
            "q_body_extremal": self.q_body_extremal,
            "q_body_rule_mismatches": self.q_body_rule_mismatches,
        })
        .serialize(s)
    }
}

/// Moves every vertex by up to `1/8` in each coordinate and recenters.
fn perturb(r: &mut ChaCha8Rng, k: &Polytope) -> Polytope {
    loop {
        let pts: Vec<Vec<Rational>> = k
            .vertices()
            .iter()
            .map(|v| v.iter().map(|x| x + rat(r.gen_range(-2..=2), 16)).collect())
            .collect();
        if let Ok(p) = Polytope::from_points(&pts) {
            let c: Vec<Rational> = centroid(p.vertices()).into_iter().map(|x| -x).collect();
            return p.translate(&c);
        }
    }
}

/// Perturbs the positive-orthant vertices of `P_{n,i}` and reflects them.
fn perturbed_unconditional(r: &mut ChaCha8Rng, n: usize) -> Result<Polytope> {
    let i = r.gen_range(1..=n);
    let base = pni(n, i)?;
    let mut pts = Vec::new();
    for v in base.vertices().iter().filter(|v| v.iter().all(|x| *x >= int(0))) {
        let p: Vec<Rational> = v.iter().map(|x| x + rat(r.gen_range(0..=3), 16)).collect();
        for mask in 0u64..1 << n {
            pts.push(p.iter().enumerate().map(|(j, x)| if mask >> j & 1 == 1 { -x } else { x.clone() }).collect());
        }
    }
    Polytope::from_points(&pts)
}

/// A non-decreasing sequence of `n` positive rationals with denominator 8.
fn random_minima(r: &mut ChaCha8Rng, n: usize) -> Vec<Rational> {
    let mut m = rat(r.gen_range(2..=8), 8);
    let mut out = Vec::new();
    for _ in 0..n {
        out.push(m.clone());
        m += rat(r.gen_range(0..=4), 8);
    }
    out
}

fn sample_body(r: &mut ChaCha8Rng, n: usize, idx: usize) -> Result<Polytope> {
    match idx % 4 {
        0 if idx == 0 => makai_simplex(n),
        0 | 1 => Ok(random_simplex(r, n)),
        2 => Ok(perturb(r, &makai_simplex(n)?)),
        _ => {
            if r.gen_bool(0.5) {
                perturbed_unconditional(r, n)
            } else {
                Ok(random_unconditional(r, n))
            }
        }
    }
}

/// Covering products of `samples` bodies (the first is `T_n`), keeping the
/// smallest. Deterministic in `seed`.
pub fn explore_conjecture(n: usize, samples: usize, seed: u64, tol: &Rational) -> Result<ExplorationLog> {
    if !(2..=3).contains(&n) {
        return Err(Error::InvalidArgument("exploration runs in dimension 2 or 3".into()));
    }
    if samples == 0 {
        return Err(Error::InvalidArgument("need at least one sample".into()));
    }
    let z = Lattice::integer(n);
    let mut r = rng(seed);
    let conjectured_bound = int(n as i64 + 1) / pow(&int(2), n as u32);
    let floor = Rational::new(1.into(), factorial(n as u32)) - tol;
    let mut best: Option<(Interval, Polytope)> = None;
    let (mut below_conjecture, mut floor_violations) = (0, 0);
    for idx in 0..samples {
        let k = sample_body(&mut r, n, idx)?;
        let p = covering_product_with_bound(&k, &z, tol, 1)?;
        if p.hi < conjectured_bound {
            below_conjecture += 1;
        }
        if p.hi < floor {
            floor_violations += 1;
        }
        if best.as_ref().map_or(true, |(b, _)| (&p.lo, &p.hi) < (&b.lo, &b.hi)) {
            best = Some((p, k));
        }
    }
    let mut q_body_realized = 0;
    let mut q_body_extremal = 0;
    let mut q_body_rule_mismatches = 0;
    let q_body_trials = samples;
    for _ in 0..q_body_trials {
        let mus = random_minima(&mut r, n);
        let q = q_body(&mus)?;
        let got: Vec<Rational> = (1..=n).map(|i| unconditional_minimum(&q, i)).collect::<Result<_>>()?;
        if got == mus {
            q_body_realized += 1;
        }
        let extremal = got.iter().product::<Rational>() * q.volume() == Rational::one();
        q_body_extremal += usize::from(extremal);
        q_body_rule_mismatches += usize::from(extremal != has_concave_increments(&got));
    }
    let (min_product_found, witness_body) = best.expect("at least one sample");
    Ok(ExplorationLog {
        seed,
        samples,
        min_product_found,
        witness_body,
        conjectured_bound,
        below_conjecture,
        floor_violations,
        q_body_trials,
        q_body_realized,
        q_body_extremal,
        q_body_rule_mismatches,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn planar_exploration_respects_the_planar_bound() {
        let t = rat(1, 64);
        let log = explore_conjecture(2, 12, 11, &t).unwrap();
        assert!(log.min_product_found.lo >= rat(3, 4) - &t, "{:?}", log.min_product_found);
        assert_eq!(log.floor_violations, 0);
        assert_eq!(log.below_conjecture, 0);
        assert_eq!(log.q_body_rule_mismatches, 0);
        let again = explore_conjecture(2, 12, 11, &t).unwrap();
        assert_eq!(again.min_product_found, log.min_product_found);
        assert!(again.witness_body.same_set(&log.witness_body));
    }

    #[test]
    fn simplex_is_the_first_sample() {
        let log = explore_conjecture(3, 1, 0, &rat(1, 16)).unwrap();
        assert!(log.witness_body.same_set(&makai_simplex(3).unwrap()));
        assert!(log.min_product_found.lo <= log.conjectured_bound);
        assert!(log.min_product_found.hi >= rat(1, 6));
        let v = serde_json::to_value(&log).unwrap();
        assert_eq!(v["conjectured_bound"], "1/2");
    }

    #[test]
    fn rejects_other_dimensions() {
        assert!(explore_conjecture(4, 1, 0, &rat(1, 16)).is_err());
        assert!(explore_conjecture(2, 0, 0, &rat(1, 16)).is_err());
    }
}
