//! Acceptance suite: one PASS/FAIL line per criterion. Runs as a plain
//! binary so the lines reach the terminal under `cargo test`.

use std::process::ExitCode;
use std::time::{Duration, Instant};

use latcov_core::body::special::{cross_polytope, cube, makai_simplex};
use latcov_core::exact::rational::{format_rational, rat, Rational};
use latcov_core::lab::verify::{
    checkerboard_suite, duality_suite, linforms_suite, makai_suite, minkowski_suite, pni_suite, product_floor_suite,
    rogers_shephard_suite, sigma_suite, unconditional_bounds_suite, unconditional_suite, VerificationRecord,
};
use latcov_core::lattice::Lattice;
use latcov_core::minima::{covering_product_with_bound, Interval};

const SEED: u64 = 7_331;

struct Outcome {
    ok: bool,
    detail: String,
}

/// All records pass, at least `min` of them match `prefix`, and the run
/// stays inside `budget`.
fn from_records(records: &[VerificationRecord], checks: &[(&str, usize)], took: Duration, budget: Option<Duration>) -> Outcome {
    let failed: Vec<&str> = records.iter().filter(|r| !r.passed()).map(|r| r.claim_id.as_str()).collect();
    let mut ok = failed.is_empty();
    let mut parts = Vec::new();
    for (prefix, min) in checks {
        let count = records.iter().filter(|r| r.claim_id.starts_with(prefix) && r.passed()).count();
        ok &= count >= *min;
        parts.push(format!("{prefix}: {count} passed (need {min})"));
    }
    if let Some(b) = budget {
        ok &= took <= b;
        parts.push(format!("{:.1}s (limit {}s)", took.as_secs_f64(), b.as_secs()));
    } else {
        parts.push(format!("{:.1}s", took.as_secs_f64()));
    }
    if !failed.is_empty() {
        parts.push(format!("failing: {}", failed.iter().take(5).cloned().collect::<Vec<_>>().join(" ")));
    }
    Outcome { ok, detail: parts.join("; ") }
}

fn timed<T>(f: impl FnOnce() -> T) -> (T, Duration) {
    let t = Instant::now();
    let v = f();
    (v, t.elapsed())
}

fn exact_product(k: latcov_core::body::Polytope, want: &Rational) -> (bool, String) {
    match covering_product_with_bound(&k, &Lattice::integer(k.dim()), &rat(1, 256), 1) {
        Ok(p) => (p.certified_exact && &p.lo == want, describe(&p)),
        Err(e) => (false, e.to_string()),
    }
}

fn describe(p: &Interval) -> String {
    if p.certified_exact {
        format_rational(&p.lo)
    } else {
        format!("[{}, {}]", format_rational(&p.lo), format_rational(&p.hi))
    }
}

fn criterion(k: usize) -> Outcome {
    match k {
        1 => {
            let (r, t) = timed(|| pni_suite(None));
            // 55 minima and 15 volumes for n <= 5
            from_records(&r, &[("pni-minima", 55), ("pni-volume", 15)], t, Some(Duration::from_secs(60)))
        }
        2 => {
            let (r, t) = timed(|| makai_suite(None));
            from_records(&r, &[("makai-diameter", 6), ("makai-radius[", 6)], t, None)
        }
        3 => {
            let (r, t) = timed(|| {
                [
                    ("T_2", makai_simplex(2), rat(3, 4)),
                    ("C_2", cube(2), rat(1, 1)),
                    ("C_2*", cross_polytope(2), rat(1, 1)),
                ]
                .into_iter()
                .map(|(name, body, want)| {
                    let (ok, got) = match body {
                        Ok(b) => exact_product(b, &want),
                        Err(e) => (false, e.to_string()),
                    };
                    (ok, format!("{name} = {got}"))
                })
                .collect::<Vec<_>>()
            });
            let ok = r.iter().all(|(ok, _)| *ok);
            let detail = r.iter().map(|(_, d)| d.as_str()).collect::<Vec<_>>().join(", ");
            Outcome { ok, detail: format!("{detail}; {:.1}s", t.as_secs_f64()) }
        }
        4 => {
            let (r, t) = timed(|| {
                let mut r = product_floor_suite(2, 120, SEED);
                r.extend(product_floor_suite(3, 80, SEED + 1));
                r
            });
            from_records(&r, &[("product-floor[n=2", 120), ("product-floor[n=3", 80)], t, None)
        }
        5 => {
            let (r, t) = timed(|| unconditional_suite(None, 10, SEED));
            // 4 dimensions x 10 q-bodies, 3 dimensions x 10 strict bodies
            from_records(
                &r,
                &[
                    ("unconditional-product[cube", 4),
                    ("unconditional-product[cross", 4),
                    ("unconditional-product[q-body", 20),
                    ("unconditional-product-strict", 20),
                ],
                t,
                None,
            )
        }
        6 => {
            let (r, t) = timed(linforms_suite);
            from_records(&r, &[("linform-n2", 1), ("linform-n3", 1)], t, Some(Duration::from_secs(10)))
        }
        7 => {
            let (r, t) = timed(|| checkerboard_suite(None));
            from_records(&r, &[("checkerboard-cube", 2), ("checkerboard-cross", 2)], t, None)
        }
        8 => {
            let (r, t) = timed(|| duality_suite(50, SEED));
            from_records(&r, &[("duality", 50)], t, None)
        }
        9 => {
            let (r, t) = timed(|| sigma_suite(None, 10_000, SEED));
            from_records(&r, &[("sigma-pattern", 7)], t, None)
        }
        10 => {
            let (r, t) = timed(|| {
                let mut r = minkowski_suite(30, SEED);
                r.extend(rogers_shephard_suite(30, SEED));
                r.extend(unconditional_bounds_suite(None, 8, SEED));
                r
            });
            from_records(&r, &[("minkowski", 30), ("rogers-shephard", 30), ("meyer", 24), ("unconditional-extremal", 24)], t, None)
        }
        _ => unreachable!(),
    }
}

const TITLES: [&str; 10] = [
    "covering minima and volumes of the coordinate-cover bodies, n <= 5",
    "quotient-graph diameter and mu_n(T_n) = n/2, n = 2..7",
    "planar covering products: T_2 = 3/4, C_2 = C_2* = 1",
    "covering product floor 1/n! - 1/256 on 200 random bodies",
    "unconditional covering products: = 1 on extremal bodies, > 1 otherwise",
    "sharp linear-forms examples, radius 10, certified",
    "checkerboard strict inequalities, n = 3, 4",
    "lambda_1 mu_1 of the polar pair = 1/2 on 50 random pairs",
    "sigma residue pattern and sum identity, n = 2..8",
    "Minkowski, Rogers-Shephard, Meyer and ordering properties",
];

fn main() -> ExitCode {
    let only: Option<usize> = std::env::args().skip(1).find_map(|a| a.parse().ok());
    let mut all = true;
    for k in 1..=10 {
        if only.is_some_and(|o| o != k) {
            continue;
        }
        let o = criterion(k);
        all &= o.ok;
        let tag = if o.ok { "PASS" } else { "FAIL" };
        println!("{tag} criterion {k:>2}: {} ({})", TITLES[k - 1], o.detail);
    }
    if all {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
