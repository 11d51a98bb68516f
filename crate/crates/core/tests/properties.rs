use num::{BigInt, One, Signed, Zero};
use proptest::prelude::*;

use latcov_core::body::special::makai_simplex;
use latcov_core::exact::normal_form::{hermite_normal_form, smith_normal_form};
use latcov_core::exact::rational::{format_rational, int, parse_rational, pow, vscale, Rational};
use latcov_core::exact::{IntMatrix, RatMatrix};
use latcov_core::graph::{build_graph, lemma46_check};
use latcov_core::lab::random::{random_body, random_lattice, random_symmetric, rng};
use latcov_core::lattice::{special_lattice, Lattice};
use latcov_core::minima::{mu_1, successive_minima};

fn small_rational() -> impl Strategy<Value = Rational> {
    (-50i64..=50, 1i64..=12).prop_map(|(p, q)| Rational::new(p.into(), q.into()))
}

fn positive_rational() -> impl Strategy<Value = Rational> {
    (1i64..=20, 1i64..=8).prop_map(|(p, q)| Rational::new(p.into(), q.into()))
}

fn point(n: usize) -> impl Strategy<Value = Vec<Rational>> {
    proptest::collection::vec(small_rational(), n)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn rational_text_round_trip(p in any::<i64>(), q in 1i64..=i64::MAX) {
        let r = Rational::new(p.into(), q.into());
        prop_assert_eq!(parse_rational(&format_rational(&r)).unwrap(), r);
    }

    #[test]
    fn gauge_is_positively_homogeneous(seed in any::<u64>(), n in 1usize..=3, y in point(3), t in positive_rational()) {
        let k = random_body(&mut rng(seed), n);
        let y = &y[..n];
        prop_assert_eq!(k.gauge(&vscale(y, &t)).unwrap(), t * k.gauge(y).unwrap());
    }

    #[test]
    fn support_is_the_polar_gauge(seed in any::<u64>(), n in 1usize..=3, x in point(3)) {
        let k = random_body(&mut rng(seed), n);
        let x = &x[..n];
        let p = k.polar().unwrap();
        prop_assert_eq!(k.support(x), p.gauge(x).unwrap());
        prop_assert!(p.polar().unwrap().same_set(&k));
    }

    #[test]
    fn volume_scales_and_is_translation_invariant(seed in any::<u64>(), n in 1usize..=3, t in positive_rational(), v in point(3)) {
        let k = random_body(&mut rng(seed), n);
        prop_assert_eq!(k.scale(&t).unwrap().volume(), pow(&t, n as u32) * k.volume());
        prop_assert_eq!(k.translate(&v[..n]).volume(), k.volume());
    }

    #[test]
    fn dual_lattice_is_an_involution(seed in any::<u64>(), n in 1usize..=4) {
        let l = random_lattice(&mut rng(seed), n);
        let d = l.dual();
        prop_assert_eq!(d.det_abs() * l.det_abs(), Rational::one());
        prop_assert!(d.dual().same_lattice(&l));
    }

    #[test]
    fn successive_minima_scale_inversely(seed in any::<u64>(), n in 1usize..=3, t in positive_rational()) {
        let mut r = rng(seed);
        let k = random_symmetric(&mut r, n);
        let l = random_lattice(&mut r, n);
        let lam = successive_minima(&k, &l).unwrap();
        let scaled = successive_minima(&k.scale(&t).unwrap(), &l).unwrap();
        prop_assert!(lam.windows(2).all(|w| w[0] <= w[1]));
        for (a, b) in lam.iter().zip(&scaled) {
            prop_assert_eq!(a, &(b * &t));
        }
        // Minkowski's second theorem, both sides
        let fact: i64 = (1..=n as i64).product();
        let prod = lam.iter().product::<Rational>() * k.volume() / l.det_abs();
        prop_assert!(prod <= pow(&int(2), n as u32));
        prop_assert!(prod * int(fact) >= pow(&int(2), n as u32));
    }

    #[test]
    fn polar_duality_of_first_minima(seed in any::<u64>(), n in 1usize..=3) {
        let mut r = rng(seed);
        let k = random_symmetric(&mut r, n);
        let l = random_lattice(&mut r, n);
        let lam = successive_minima(&k, &l).unwrap()[0].clone();
        prop_assert_eq!(lam * mu_1(&k.polar().unwrap(), &l.dual()).unwrap(), Rational::new(1.into(), 2.into()));
    }

    #[test]
    fn graph_diameter_is_linear_in_weights(n in 2usize..=5, c in positive_rational()) {
        let l = special_lattice("makai", n).unwrap();
        let ones = vec![Rational::one(); n];
        let base = build_graph(&l, &ones).unwrap().diameter();
        let scaled = build_graph(&l, &vscale(&ones, &c)).unwrap().diameter();
        prop_assert_eq!(scaled, base * c);
    }

    #[test]
    fn sigma_sum_identity(n in 2usize..=8, seed in proptest::collection::vec(0i64..=8, 7)) {
        let w: Vec<i64> = seed[..n - 1].iter().map(|x| x % (n as i64 + 1)).collect();
        let rep = lemma46_check(n, &w).unwrap();
        prop_assert!(rep.passes);
    }

    #[test]
    fn normal_forms_are_consistent(rows in proptest::collection::vec(proptest::collection::vec(-9i64..=9, 3), 3)) {
        let r: Vec<&[i64]> = rows.iter().map(|v| v.as_slice()).collect();
        let m = IntMatrix::from_i64_rows(&r);
        let det = m.determinant().unwrap();
        prop_assume!(!det.is_zero());
        let (h, u) = hermite_normal_form(&m).unwrap();
        prop_assert_eq!(m.mul(&u).unwrap(), h.clone());
        prop_assert_eq!(u.determinant().unwrap().abs(), BigInt::one());
        for i in 0..3 {
            prop_assert!(h[(i, i)].is_positive());
            for j in i + 1..3 {
                prop_assert!(h[(i, j)].is_zero());
            }
        }
        let (d, _, _) = smith_normal_form(&m).unwrap();
        prop_assert_eq!(d.iter().product::<BigInt>(), det.abs());
        prop_assert!(d.windows(2).all(|w| (&w[1] % &w[0]).is_zero()));
    }
}

#[test]
fn integer_lattice_of_a_linear_image() {
    // T_2 against Z^2 equals its image under a unimodular map against Z^2
    let a = RatMatrix::from_i64_rows(&[&[1, 1], &[0, 1]]);
    let t = makai_simplex(2).unwrap();
    let z = Lattice::integer(2);
    let img = t.linear_image(&a).unwrap();
    assert_eq!(successive_minima(&t, &z).unwrap(), successive_minima(&img, &z).unwrap());
    assert_eq!(mu_1(&t, &z).unwrap(), mu_1(&img, &z).unwrap());
}
