//! Named suites that recompute the exact claims and report one record per
//! check. Failures are records, never errors.

use num::{One, Signed, Zero};
use rand::Rng;
use serde::Serialize;

use super::linforms::linear_forms_minimum;
use super::random::{random_body, random_lattice, random_symmetric, random_unconditional, rng};
use crate::body::special::{
    cross_polytope, cube, has_concave_increments, makai_simplex, makai_simplex_volume, pni, pni_volume_formula, q_body,
    standard_simplex,
};
use crate::body::Polytope;
use crate::error::Result;
use crate::exact::rational::{binomial, factorial, format_rational, int, pow, rat, Rational};
use crate::exact::RatMatrix;
use crate::graph::{build_graph, lemma46_check, makai_witness, simplex_covering_radius};
use crate::lattice::{special_lattice, Lattice};
use crate::minima::planes::{orthant_closure, unconditional_minimum};
use crate::minima::{covering_minimum, covering_product_with_bound, covering_radius, minima_report, mu_1, successive_minima, Interval};

/// Tolerance for covering radii that are only bracketed.
pub const VERIFY_TOL: (i64, i64) = (1, 256);

fn tol() -> Rational {
    rat(VERIFY_TOL.0, VERIFY_TOL.1)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Quantity {
    Exact(Rational),
    Range(Interval),
    Text(String),
}

impl Quantity {
    fn describe(&self) -> String {
        match self {
            Quantity::Exact(r) => format_rational(r),
            Quantity::Range(i) => {
                let tag = if i.certified_exact { "" } else { "~" };
                format!("{tag}[{}, {}]", format_rational(&i.lo), format_rational(&i.hi))
            }
            Quantity::Text(t) => t.clone(),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Status {
    Pass,
    Fail,
    Skipped(String),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct VerificationRecord {
    pub claim_id: String,
    pub expected: String,
    pub computed: Quantity,
    pub status: Status,
}

impl VerificationRecord {
    pub fn passed(&self) -> bool {
        self.status == Status::Pass
    }

    pub fn failed(&self) -> bool {
        self.status == Status::Fail
    }

    pub fn csv_row(&self) -> String {
        let status = match &self.status {
            Status::Pass => "pass".to_string(),
            Status::Fail => "fail".to_string(),
            Status::Skipped(r) => format!("skipped: {r}"),
        };
        [self.claim_id.as_str(), &self.expected, &self.computed.describe(), &status]
            .iter()
            .map(|f| format!("\"{}\"", f.replace('"', "\"\"")))
            .collect::<Vec<_>>()
            .join(",")
    }
}

#[derive(Serialize)]
struct RecordJson<'a> {
    claim_id: &'a str,
    expected: &'a str,
    computed: serde_json::Value,
    status: &'a str,
    #[serde(skip_serializing_if = "Option::is_none")]
    reason: Option<&'a str>,
}

impl Serialize for VerificationRecord {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let computed = match &self.computed {
            Quantity::Exact(r) => serde_json::Value::String(format_rational(r)),
            Quantity::Range(i) => serde_json::to_value(i).map_err(serde::ser::Error::custom)?,
            Quantity::Text(t) => serde_json::Value::String(t.clone()),
        };
        let (status, reason) = match &self.status {
            Status::Pass => ("pass", None),
            Status::Fail => ("fail", None),
            Status::Skipped(r) => ("skipped", Some(r.as_str())),
        };
        RecordJson { claim_id: &self.claim_id, expected: &self.expected, computed, status, reason }.serialize(s)
    }
}

fn record(id: String, expected: String, computed: Quantity, ok: bool) -> VerificationRecord {
    let status = if ok { Status::Pass } else { Status::Fail };
    VerificationRecord { claim_id: id, expected, computed, status }
}

fn equals(id: String, expected: &Rational, computed: &Rational) -> VerificationRecord {
    record(id, format_rational(expected), Quantity::Exact(computed.clone()), expected == computed)
}

/// Passes only when the interval is certified and equals `expected`.
fn exact_interval(id: String, expected: &Rational, computed: &Interval) -> VerificationRecord {
    let ok = computed.certified_exact && &computed.lo == expected;
    record(id, format_rational(expected), Quantity::Range(computed.clone()), ok)
}

fn holds(id: String, expected: &str, computed: Quantity, ok: bool) -> VerificationRecord {
    record(id, expected.to_string(), computed, ok)
}

fn errored(id: String, expected: String, e: crate::error::Error) -> VerificationRecord {
    record(id, expected, Quantity::Text(format!("error: {e}")), false)
}

fn skipped(id: &str, expected: &str, reason: &str) -> VerificationRecord {
    VerificationRecord {
        claim_id: id.into(),
        expected: expected.into(),
        computed: Quantity::Text(String::new()),
        status: Status::Skipped(reason.into()),
    }
}

/// Runs `f`, turning an error into a failed record.
fn guarded(id: String, expected: String, f: impl FnOnce() -> Result<VerificationRecord>) -> VerificationRecord {
    f().unwrap_or_else(|e| errored(id, expected, e))
}

fn dims(n: Option<usize>, lo: usize, hi: usize) -> Vec<usize> {
    match n {
        Some(n) if (lo..=hi).contains(&n) => vec![n],
        Some(_) => Vec::new(),
        None => (lo..=hi).collect(),
    }
}

fn fact(n: usize) -> Rational {
    Rational::from_integer(factorial(n as u32))
}

/// `μ_j(P_{n,i})` against `1/2` and `j/2i`, and the Eulerian volume formula
/// against the triangulation.
pub fn pni_suite(n: Option<usize>) -> Vec<VerificationRecord> {
    let mut out = Vec::new();
    for n in dims(n, 1, 5) {
        let z = Lattice::integer(n);
        for i in 1..=n {
            let Ok(p) = pni(n, i) else { continue };
            for j in 1..=n {
                let want = if j <= i { rat(1, 2) } else { rat(j as i64, 2 * i as i64) };
                let id = format!("pni-minima[n={n},i={i},j={j}]");
                out.push(guarded(id.clone(), format_rational(&want), || {
                    Ok(exact_interval(id, &want, &covering_minimum(&p, &z, j, 1, &tol())?))
                }));
            }
            let id = format!("pni-volume[n={n},i={i}]");
            out.push(guarded(id.clone(), "triangulation volume".into(), || {
                Ok(equals(id, &pni_volume_formula(n as u32, i as u32)?, &p.volume()))
            }));
        }
    }
    out
}

/// `μ_i(S_1, Z^n) = i`.
pub fn simplex_suite(n: Option<usize>) -> Vec<VerificationRecord> {
    let mut out = Vec::new();
    for n in dims(n, 1, 4) {
        let z = Lattice::integer(n);
        for i in 1..=n {
            let id = format!("simplex-minima[n={n},i={i}]");
            let want = int(i as i64);
            out.push(guarded(id.clone(), format_rational(&want), || {
                Ok(exact_interval(id, &want, &covering_minimum(&standard_simplex(n)?, &z, i, 1, &tol())?))
            }));
        }
    }
    out
}

/// Diameter of the makai quotient graph, its witness vertex, and
/// `μ_n(T_n) = n/2`.
pub fn makai_suite(n: Option<usize>) -> Vec<VerificationRecord> {
    let mut out = Vec::new();
    for n in dims(n, 2, 7) {
        let c = Rational::from_integer(binomial(n as u32, 2));
        let id = format!("makai-diameter[n={n}]");
        out.push(guarded(id.clone(), format_rational(&c), || {
            let l = special_lattice("makai", n)?;
            let g = build_graph(&l, &vec![Rational::one(); n])?;
            let d = g.distances_from_origin();
            let at_witness = &d[g.coset_index(&makai_witness(n)) as usize];
            let diam = d.iter().max().expect("nonempty").clone();
            Ok(record(
                id,
                format!("{} attained at (2, ..., n)", format_rational(&c)),
                Quantity::Exact(diam.clone()),
                diam == c && at_witness == &c,
            ))
        }));
        let want = rat(n as i64, 2);
        let id = format!("makai-radius[n={n}]");
        out.push(guarded(id.clone(), format_rational(&want), || {
            let l = special_lattice("makai", n)?;
            let r = simplex_covering_radius(&vec![Rational::one(); n], &l)? / int(n as i64 + 1);
            Ok(equals(id, &want, &r))
        }));
        if n <= 4 {
            let id = format!("makai-radius-direct[n={n}]");
            out.push(guarded(id.clone(), format_rational(&want), || {
                Ok(exact_interval(id, &want, &covering_radius(&makai_simplex(n)?, &Lattice::integer(n), &tol())?))
            }));
        }
    }
    out
}

/// The exponential upper bound for the covering product of `T_n`, from
/// `μ_j(T_n) <= min(j, n/2)`, checked as
/// `product^15 (16/15)^{7n} <= (n+1)^15`.
pub fn makai_bound_suite(n: Option<usize>) -> Vec<VerificationRecord> {
    dims(n, 6, 12)
        .into_iter()
        .map(|n| {
            let half_n = rat(n as i64, 2);
            let mut prod = makai_simplex_volume(n as u32);
            for j in 1..=n {
                prod *= int(j as i64).min(half_n.clone());
            }
            let lhs = pow(&prod, 15) * pow(&rat(16, 15), 7 * n as u32);
            let rhs = pow(&int(n as i64 + 1), 15);
            holds(format!("makai-product-bound[n={n}]"), "product^15 (16/15)^(7n) <= (n+1)^15", Quantity::Exact(prod), lhs <= rhs)
        })
        .collect()
}

/// The parallelogram equality case: the square against a lattice of
/// determinant 8, written as a parallelogram against `Z^2`.
pub fn schnell_parallelogram() -> Result<Polytope> {
    let pts = [rat(1, 2), rat(1, 2), rat(1, 4), rat(-1, 4)];
    let (a, b) = (vec![pts[0].clone(), pts[1].clone()], vec![pts[2].clone(), pts[3].clone()]);
    let neg = |v: &Vec<Rational>| v.iter().map(|x| -x).collect::<Vec<_>>();
    Polytope::from_points(&[a.clone(), neg(&a), b.clone(), neg(&b)])
}

/// Planar covering products: `3/4` for the extremal triangle and
/// parallelogram, and never below `3/4` on random planar bodies.
pub fn schnell_suite(samples: usize, seed: u64) -> Vec<VerificationRecord> {
    let z = Lattice::integer(2);
    let three_quarters = rat(3, 4);
    let mut out = Vec::new();
    let id = "schnell-triangle".to_string();
    out.push(guarded(id.clone(), "3/4".into(), || {
        Ok(exact_interval(id, &three_quarters, &covering_product_with_bound(&makai_simplex(2)?, &z, &tol(), 1)?))
    }));
    let id = "schnell-parallelogram".to_string();
    out.push(guarded(id.clone(), "3/4".into(), || {
        let p = covering_product_with_bound(&schnell_parallelogram()?, &z, &tol(), 1)?;
        let ok = p.contains(&three_quarters) && p.width() <= tol();
        Ok(holds(id, "3/4 within 1/256", Quantity::Range(p), ok))
    }));
    for shape in ["trapezoid", "pentagon", "hexagon"] {
        out.push(skipped(&format!("schnell-{shape}"), "3/4", "no coordinates available for this equality body"));
    }
    let mut r = rng(seed);
    for s in 0..samples {
        let k = random_body(&mut r, 2);
        let id = format!("schnell[sample={s}]");
        out.push(guarded(id.clone(), ">= 3/4".into(), || {
            let p = covering_product_with_bound(&k, &z, &tol(), 1)?;
            let ok = p.hi >= three_quarters;
            Ok(holds(id, "interval reaches 3/4 or above", Quantity::Range(p), ok))
        }));
    }
    out
}

/// Covering product at least `1/n!` (up to `1/256`) on random bodies.
pub fn product_floor_suite(n: usize, samples: usize, seed: u64) -> Vec<VerificationRecord> {
    let z = Lattice::integer(n);
    let floor = fact(n).recip() - rat(1, 256);
    let mut r = rng(seed);
    (0..samples)
        .map(|s| {
            let k = random_body(&mut r, n);
            let id = format!("product-floor[n={n},sample={s}]");
            guarded(id.clone(), format!(">= 1/{}! - 1/256", n), || {
                let p = covering_product_with_bound(&k, &z, &rat(1, 16), 1)?;
                let ok = p.lo >= floor;
                Ok(holds(id, &format!(">= 1/{n}! - 1/256"), Quantity::Range(p), ok))
            })
        })
        .collect()
}

fn product_of(mus: &[Rational], vol: &Rational) -> Rational {
    mus.iter().product::<Rational>() * vol
}

fn unconditional_minima(k: &Polytope) -> Result<Vec<Rational>> {
    (1..=k.dim()).map(|i| unconditional_minimum(k, i)).collect()
}

/// Unconditional covering products: exactly 1 for `C_n`, `C_n*` and the
/// bodies `Q_K` whose minima have concave increments, strictly above 1 for
/// random bodies that differ from their `Q_K`, and 5/4 for a `Q_K` that
/// folds.
pub fn unconditional_suite(n: Option<usize>, samples: usize, seed: u64) -> Vec<VerificationRecord> {
    let mut out = Vec::new();
    let one = Rational::one();
    let mut r = rng(seed);
    for n in dims(n, 1, 4) {
        let z = Lattice::integer(n);
        for (name, body) in [("cube", cube(n)), ("cross", cross_polytope(n))] {
            let id = format!("unconditional-product[{name},n={n}]");
            out.push(guarded(id.clone(), "1".into(), || {
                Ok(exact_interval(id, &one, &covering_product_with_bound(&body?, &z, &tol(), 1)?))
            }));
        }
        let mut found = 0;
        while found < samples {
            let k = random_unconditional(&mut r, n);
            let Ok(mus) = unconditional_minima(&k) else { continue };
            if !has_concave_increments(&mus) {
                continue;
            }
            let id = format!("unconditional-product[q-body,n={n},sample={found}]");
            found += 1;
            out.push(guarded(id.clone(), "1".into(), || {
                Ok(exact_interval(id, &one, &covering_product_with_bound(&q_body(&mus)?, &z, &tol(), 1)?))
            }));
        }
        if n == 3 {
            // K = Q_K, yet mu_1 + mu_3 > 2 mu_2 folds the boundary outward
            let id = "unconditional-product[q-body-fold,n=3]".to_string();
            let want = rat(5, 4);
            out.push(guarded(id.clone(), "5/4".into(), || {
                let q = q_body(&[rat(1, 2), rat(1, 2), rat(3, 4)])?;
                Ok(exact_interval(id, &want, &covering_product_with_bound(&q, &z, &tol(), 1)?))
            }));
        }
        if n == 1 {
            continue;
        }
        let mut found = 0;
        while found < samples {
            let k = random_unconditional(&mut r, n);
            let Ok(mus) = unconditional_minima(&k) else { continue };
            let Ok(q) = q_body(&mus) else { continue };
            if q.same_set(&k) {
                continue;
            }
            let id = format!("unconditional-product-strict[n={n},sample={found}]");
            found += 1;
            out.push(guarded(id.clone(), "> 1".into(), || {
                let p = covering_product_with_bound(&k, &z, &tol(), 1)?;
                let ok = p.certified_exact && p.lo > one && p.lo == product_of(&mus, &k.volume());
                Ok(holds(id, "> 1", Quantity::Range(p), ok))
            }));
        }
    }
    out
}

/// `S = K ∩ R^n_{>=0}`: `μ_i(S) = 2 μ_i(K)` and covering product at least 1.
pub fn orthant_suite(n: Option<usize>, samples: usize, seed: u64) -> Vec<VerificationRecord> {
    let mut out = Vec::new();
    let mut r = rng(seed);
    for n in dims(n, 2, 4) {
        let z = Lattice::integer(n);
        for s in 0..samples {
            let k = random_unconditional(&mut r, n);
            let id = format!("orthant-minima[n={n},sample={s}]");
            out.push(guarded(id.clone(), "mu_i(S) = 2 mu_i(K), product >= 1".into(), || {
                let piece = orthant_piece(&k)?;
                let closure = orthant_closure(&piece)?;
                let mut ok = closure.as_ref().is_some_and(|u| u.same_set(&k));
                // the first minimum is computed from the width, independently of
                // the closed form
                ok &= mu_1(&piece, &z)? == int(2) * mu_1(&k, &z)?;
                let mut mus = Vec::new();
                for i in 1..=n {
                    let m = covering_minimum(&piece, &z, i, 1, &tol())?;
                    ok &= m.certified_exact && m.lo == int(2) * unconditional_minimum(&k, i)?;
                    mus.push(m.lo);
                }
                let p = product_of(&mus, &piece.volume());
                ok &= p >= Rational::one();
                Ok(holds(id, "mu_i(S) = 2 mu_i(K), product >= 1", Quantity::Exact(p), ok))
            }));
        }
    }
    out
}

fn orthant_piece(k: &Polytope) -> Result<Polytope> {
    let n = k.dim();
    let mut hs = k.halfspaces().to_vec();
    for j in 0..n {
        let mut a = vec![Rational::zero(); n];
        a[j] = -Rational::one();
        hs.push(crate::body::Halfspace::new(a, Rational::zero())?);
    }
    Polytope::from_halfspaces(&hs, n)
}

/// For unconditional bodies: `μ_i^n vol >= μ_i(P_{n,i})^n vol(P_{n,i})`,
/// Meyer's section inequality, and `(μ_i^n vol n!)^i >= i!^n`.
pub fn unconditional_bounds_suite(n: Option<usize>, samples: usize, seed: u64) -> Vec<VerificationRecord> {
    let mut out = Vec::new();
    let mut r = rng(seed);
    for n in dims(n, 2, 4) {
        for s in 0..samples {
            let k = random_unconditional(&mut r, n);
            for i in 1..=n {
                let id = format!("unconditional-extremal[n={n},i={i},sample={s}]");
                out.push(guarded(id.clone(), ">= value at P_{n,i}".into(), || {
                    let lhs = pow(&unconditional_minimum(&k, i)?, n as u32) * k.volume();
                    let p = pni(n, i)?;
                    let rhs = pow(&unconditional_minimum(&p, i)?, n as u32) * p.volume();
                    Ok(holds(id, &format!(">= {}", format_rational(&rhs)), Quantity::Exact(lhs.clone()), lhs >= rhs))
                }));
                let id = format!("coordinate-cover-bound[n={n},i={i},sample={s}]");
                out.push(guarded(id.clone(), "(mu_i^n vol n!)^i >= i!^n".into(), || {
                    let lhs = pow(&unconditional_minimum(&k, i)?, n as u32) * k.volume();
                    let ok = pow(&(lhs.clone() * fact(n)), i as u32) >= pow(&fact(i), n as u32);
                    Ok(holds(id, "(mu_i^n vol n!)^i >= i!^n", Quantity::Exact(lhs), ok))
                }));
                let id = format!("meyer[n={n},i={i},sample={s}]");
                out.push(guarded(id.clone(), "(n! vol)^(i C) >= i!^(n C) prod vol_i(K ∩ L_J)^n".into(), || {
                    let c = binomial(n as u32, i as u32).try_into().unwrap_or(u32::MAX);
                    let mut sections = Rational::one();
                    for mask in 0u64..1 << n {
                        if mask.count_ones() as usize == i {
                            let idx: Vec<usize> = (0..n).filter(|j| mask >> j & 1 == 1).collect();
                            sections *= k.coordinate_section(&idx)?.volume();
                        }
                    }
                    let lhs = pow(&(fact(n) * k.volume()), i as u32 * c);
                    let rhs = pow(&fact(i), n as u32 * c) * pow(&sections, n as u32);
                    Ok(holds(id, "(n! vol)^(i C) >= i!^(n C) prod vol_i^n", Quantity::Exact(sections), lhs >= rhs))
                }));
            }
        }
    }
    out
}

/// The two strict inequalities separating the checkerboard lattice from
/// the unconditional extremal bodies.
pub fn checkerboard_suite(n: Option<usize>) -> Vec<VerificationRecord> {
    let mut out = Vec::new();
    for n in dims(n, 3, 4) {
        let id = format!("checkerboard-cube[n={n}]");
        out.push(guarded(id.clone(), "(n!-1)/n! > 1/2".into(), || {
            let z = Lattice::integer(n);
            let cb = special_lattice("checkerboard", n)?;
            let p = pni(n, n - 1)?;
            let left = pow(&covering_minimum(&p, &z, n - 1, 1, &tol())?.lo, n as u32) * p.volume();
            let m = covering_minimum(&cube(n)?, &cb, n - 1, 1, &tol())?;
            let right = pow(&m.lo, n as u32) * cube(n)?.volume() / cb.det_abs();
            let want_left = (fact(n) - int(1)) / fact(n);
            let ok = m.certified_exact && left == want_left && right == rat(1, 2) && left > right;
            Ok(holds(id, "(n!-1)/n! > 1/2", Quantity::Text(format!("{} > {}", format_rational(&left), format_rational(&right))), ok))
        }));
        let id = format!("checkerboard-cross[n={n}]");
        out.push(guarded(id.clone(), "(2^n-n)/n! > 2^(n-1)/n!".into(), || {
            let z = Lattice::integer(n);
            let cb = special_lattice("checkerboard", n)?;
            let p = pni(n, 2)?;
            let left = pow(&covering_minimum(&p, &z, 2, 1, &tol())?.lo, n as u32) * p.volume();
            let x = cross_polytope(n)?;
            let m = covering_minimum(&x, &cb, 2, 1, &tol())?;
            let right = pow(&m.lo, n as u32) * x.volume() / cb.det_abs();
            let two_n = pow(&int(2), n as u32);
            let ok = m.certified_exact
                && left == (two_n.clone() - int(n as i64)) / fact(n)
                && right == two_n / int(2) / fact(n)
                && left > right;
            Ok(holds(id, "(2^n-n)/n! > 2^(n-1)/n!", Quantity::Text(format!("{} > {}", format_rational(&left), format_rational(&right))), ok))
        }));
    }
    out
}

/// `λ_1(K, Λ) μ_1(K*, Λ*) = 1/2` for symmetric `K`.
pub fn duality_suite(samples: usize, seed: u64) -> Vec<VerificationRecord> {
    let mut r = rng(seed);
    let half = rat(1, 2);
    (0..samples)
        .map(|s| {
            let n = 1 + s % 3;
            let k = random_symmetric(&mut r, n);
            let l = random_lattice(&mut r, n);
            let id = format!("duality[n={n},sample={s}]");
            guarded(id.clone(), "1/2".into(), || {
                let lam = successive_minima(&k, &l)?[0].clone();
                let mu = mu_1(&k.polar()?, &l.dual())?;
                Ok(equals(id, &half, &(lam * mu)))
            })
        })
        .collect()
}

/// Minkowski's second theorem, the covering-radius volume bound, Jarník's
/// inequality and monotonicity of both minima sequences on random bodies
/// and lattices.
pub fn minkowski_suite(samples: usize, seed: u64) -> Vec<VerificationRecord> {
    let mut r = rng(seed);
    let mut out = Vec::new();
    for s in 0..samples {
        let n = 1 + s % 3;
        let k = random_body(&mut r, n);
        let l = if s % 2 == 0 { Lattice::integer(n) } else { random_lattice(&mut r, n) };
        let id = format!("minkowski[n={n},sample={s}]");
        out.push(guarded(id.clone(), "see checks".into(), || {
            let t = rat(1, 16);
            let rep = minima_report(&k, &l, &t, 1)?;
            let det = l.det_abs();
            let vol = k.volume();
            let two_n = pow(&int(2), n as u32);
            let mu_n = &rep.mus[n - 1];
            let mut fails = Vec::new();
            if rep.minkowski2_lhs > two_n {
                fails.push("second theorem");
            }
            if &(pow(&mu_n.hi, n as u32) * &vol) < det || &(pow(&(&mu_n.lo + &t), n as u32) * &vol) < det {
                fails.push("covering volume");
            }
            if rep.lambdas[n - 1] > int(2) * &mu_n.hi {
                fails.push("jarnik");
            }
            if rep.lambdas.windows(2).any(|w| w[0] > w[1]) {
                fails.push("lambda order");
            }
            if rep.mus.windows(2).any(|w| w[0].lo > w[1].hi) {
                fails.push("mu order");
            }
            if rep.width.recip() != rep.mus[0].lo {
                fails.push("width");
            }
            let text = if fails.is_empty() { "all hold".to_string() } else { format!("violated: {}", fails.join(", ")) };
            Ok(holds(
                id,
                "prod lambda vol <= 2^n det; mu_n^n vol >= det; lambda_n <= 2 mu_n; both sequences ordered",
                Quantity::Text(text),
                fails.is_empty(),
            ))
        }));
    }
    out
}

/// `vol(K ∩ L) vol(K | L^⊥) <= C(n, i) vol(K)` for coordinate planes.
pub fn rogers_shephard_suite(samples: usize, seed: u64) -> Vec<VerificationRecord> {
    let mut r = rng(seed);
    let mut out = Vec::new();
    for s in 0..samples {
        let n = 2 + s % 3;
        let k = random_body(&mut r, n);
        for mask in 1u64..(1 << n) - 1 {
            let sec: Vec<usize> = (0..n).filter(|j| mask >> j & 1 == 1).collect();
            let proj: Vec<usize> = (0..n).filter(|j| mask >> j & 1 == 0).collect();
            let id = format!("rogers-shephard[n={n},sample={s},section={sec:?}]");
            out.push(guarded(id.clone(), "<= C(n,i) vol".into(), || {
                let lhs = k.coordinate_section(&sec)?.volume() * k.coordinate_projection(&proj)?.volume();
                let rhs = Rational::from_integer(binomial(n as u32, proj.len() as u32)) * k.volume();
                Ok(holds(id, &format!("<= {}", format_rational(&rhs)), Quantity::Exact(lhs.clone()), lhs <= rhs))
            }));
        }
    }
    out
}

/// Equality cases of the first-minimum bounds: `μ_1(C_n*)^n vol = 1/n!` and
/// `μ_1(T_n)^n vol(T_n) = (n+1)/(2^n n!)`.
pub fn makai_equality_suite(n: Option<usize>) -> Vec<VerificationRecord> {
    let mut out = Vec::new();
    for n in dims(n, 1, 4) {
        let z = Lattice::integer(n);
        let id = format!("makai-equality[cross,n={n}]");
        let want = fact(n).recip();
        out.push(guarded(id.clone(), format_rational(&want), || {
            let x = cross_polytope(n)?;
            Ok(equals(id, &want, &(pow(&mu_1(&x, &z)?, n as u32) * x.volume())))
        }));
        let id = format!("makai-equality[simplex,n={n}]");
        let want = int(n as i64 + 1) / (pow(&int(2), n as u32) * fact(n));
        out.push(guarded(id.clone(), format_rational(&want), || {
            let t = makai_simplex(n)?;
            Ok(equals(id, &want, &(pow(&mu_1(&t, &z)?, n as u32) * t.volume())))
        }));
    }
    out
}

/// `vol(C_n) vol(C_n*) = 4^n / n!`.
pub fn mahler_suite(n: Option<usize>) -> Vec<VerificationRecord> {
    dims(n, 1, 5)
        .into_iter()
        .map(|n| {
            let id = format!("mahler-cube[n={n}]");
            let want = pow(&int(4), n as u32) / fact(n);
            guarded(id.clone(), format_rational(&want), || {
                let c = cube(n)?;
                Ok(equals(id, &want, &(c.volume() * c.polar()?.volume())))
            })
        })
        .collect()
}

/// The sharp linear-forms examples, with the constants checked through
/// `min^n = c^n |det|`.
pub fn linforms_suite() -> Vec<VerificationRecord> {
    let cases: [(&str, RatMatrix, i64, Rational, i64); 2] = [
        ("linform-n2", RatMatrix::from_i64_rows(&[&[1, -2], &[1, 1]]), 4, rat(16, 3), 3),
        ("linform-n3", RatMatrix::from_i64_rows(&[&[3, 3, -4], &[3, -4, 3], &[-4, 3, 3]]), 12, rat(864, 49), 98),
    ];
    cases
        .into_iter()
        .map(|(id, a, want, c_pow, det)| {
            let expected = format!("{want} at e_1, {want}^n = {} * {det}", format_rational(&c_pow));
            guarded(id.to_string(), expected.clone(), || {
                let n = a.rows();
                let m = linear_forms_minimum(&a, 10)?;
                let mut e1 = vec![0; n];
                e1[0] = 1;
                let d = a.determinant()?.abs();
                let ok = m.certified
                    && m.value == int(want)
                    && m.argmin == e1
                    && d == int(det)
                    && pow(&m.value, n as u32) == c_pow * d;
                Ok(record(id.to_string(), expected, Quantity::Exact(m.value), ok))
            })
        })
        .collect()
}

/// The residue pattern of `σ_w` and its sum identity: every `w` for
/// `n <= 5`, `random` samples per dimension for `n = 6..8`.
pub fn sigma_suite(n: Option<usize>, random: usize, seed: u64) -> Vec<VerificationRecord> {
    let mut out = Vec::new();
    let mut r = rng(seed);
    for n in dims(n, 2, 8) {
        let ws: Vec<Vec<i64>> = if n <= 5 {
            let m = n as i64 + 1;
            let total = (m as usize).pow(n as u32 - 1);
            (0..total)
                .map(|mut c| {
                    (0..n - 1)
                        .map(|_| {
                            let d = (c % m as usize) as i64;
                            c /= m as usize;
                            d
                        })
                        .collect()
                })
                .collect()
        } else {
            (0..random).map(|_| (0..n - 1).map(|_| r.gen_range(0..=n as i64)).collect()).collect()
        };
        let mut bad = 0usize;
        let mut first_bad = None;
        for w in &ws {
            match lemma46_check(n, w) {
                Ok(rep) if rep.passes => {}
                _ => {
                    bad += 1;
                    first_bad.get_or_insert_with(|| w.clone());
                }
            }
        }
        let text = match first_bad {
            None => format!("{} of {} pass", ws.len(), ws.len()),
            Some(w) => format!("{bad} of {} fail, first w = {w:?}", ws.len()),
        };
        let expected = if n % 2 == 0 { "values distinct, sum (n+1)C(n,2)" } else { "no triple, even gaps, sum (n+1)C(n,2)" };
        out.push(holds(format!("sigma-pattern[n={n}]"), expected, Quantity::Text(text), bad == 0));
    }
    out
}

pub const SUITES: [&str; 18] = [
    "pni",
    "simplex",
    "makai",
    "makai-bound",
    "schnell",
    "product-floor",
    "unconditional",
    "orthant",
    "unconditional-bounds",
    "checkerboard",
    "duality",
    "minkowski",
    "rogers-shephard",
    "makai-equality",
    "mahler",
    "linforms",
    "sigma",
    "flatness",
];

const SEED: u64 = 20_240_101;

/// Runs one suite (or `all`), optionally restricted to dimension `n`.
/// Records come back sorted by `claim_id`.
pub fn verify_paper(suite: &str, n: Option<usize>) -> Option<Vec<VerificationRecord>> {
    let names: Vec<&str> = if suite == "all" { SUITES.to_vec() } else { vec![SUITES.iter().find(|s| **s == suite)?] };
    let mut out = Vec::new();
    for name in names {
        out.extend(run_suite(name, n));
    }
    out.sort_by(|a, b| a.claim_id.cmp(&b.claim_id));
    Some(out)
}

fn run_suite(name: &str, n: Option<usize>) -> Vec<VerificationRecord> {
    let only = |lo: usize, hi: usize| n.map_or(true, |n| (lo..=hi).contains(&n));
    match name {
        "pni" => pni_suite(n),
        "simplex" => simplex_suite(n),
        "makai" => makai_suite(n),
        "makai-bound" => makai_bound_suite(n),
        "schnell" if only(2, 2) => schnell_suite(20, SEED),
        "product-floor" => dims(n, 2, 3).into_iter().flat_map(|d| product_floor_suite(d, if d == 2 { 20 } else { 5 }, SEED)).collect(),
        "unconditional" => unconditional_suite(n, 3, SEED),
        "orthant" => orthant_suite(n, 3, SEED),
        "unconditional-bounds" => unconditional_bounds_suite(n, 3, SEED),
        "checkerboard" => checkerboard_suite(n),
        "duality" if n.is_none() => duality_suite(12, SEED),
        "minkowski" if n.is_none() => minkowski_suite(9, SEED),
        "rogers-shephard" if n.is_none() => rogers_shephard_suite(6, SEED),
        "makai-equality" => makai_equality_suite(n),
        "mahler" => mahler_suite(n),
        "linforms" if n.is_none() => linforms_suite(),
        "sigma" => sigma_suite(n, 2_000, SEED),
        "flatness" => vec![skipped("flatness-bound", "mu_i^n vol >= i!/n! Flt(n)^-(n-i)", "unspecified constant")],
        _ => Vec::new(),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn all_pass(records: &[VerificationRecord]) {
        assert!(!records.is_empty());
        for r in records {
            assert!(r.passed(), "{r:?}");
        }
    }

    #[test]
    fn pni_table_in_three_dimensions() {
        let recs = pni_suite(Some(3));
        assert_eq!(recs.iter().filter(|r| r.claim_id.starts_with("pni-minima")).count(), 9);
        all_pass(&recs);
    }

    #[test]
    fn small_exact_suites() {
        all_pass(&makai_equality_suite(None));
        all_pass(&mahler_suite(None));
        all_pass(&makai_bound_suite(None));
        all_pass(&linforms_suite());
        all_pass(&checkerboard_suite(Some(3)));
        all_pass(&makai_suite(Some(4)));
        all_pass(&sigma_suite(Some(4), 0, 1));
    }

    #[test]
    fn sampled_suites() {
        all_pass(&duality_suite(6, 3));
        all_pass(&unconditional_suite(Some(2), 2, 3));
        all_pass(&orthant_suite(Some(2), 2, 3));
        all_pass(&unconditional_bounds_suite(Some(3), 1, 3));
        all_pass(&rogers_shephard_suite(3, 3));
        all_pass(&minkowski_suite(3, 3));
    }

    #[test]
    fn schnell_records() {
        let recs = schnell_suite(3, 5);
        assert_eq!(recs.iter().filter(|r| matches!(r.status, Status::Skipped(_))).count(), 3);
        assert!(recs.iter().all(|r| !r.failed()), "{recs:?}");
    }

    #[test]
    fn unknown_suite_and_serialization() {
        assert!(verify_paper("nope", None).is_none());
        let recs = verify_paper("flatness", None).unwrap();
        let v = serde_json::to_value(&recs).unwrap();
        assert_eq!(v[0]["status"], "skipped");
        assert_eq!(v[0]["reason"], "unspecified constant");
        let row = linforms_suite()[0].csv_row();
        assert!(row.starts_with("\"linform-n2\""), "{row}");
    }
}
