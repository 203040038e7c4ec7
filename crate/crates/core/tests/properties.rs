use cvgeom::feq::{cauchy_residual, exact_oracle, extract_f_on_q2, fit_r2_descriptor, GridFunction1D, R2Options};
use cvgeom::feq::{additive_grid, multiplicative_grid};
use cvgeom::polytope::construct::{interval_product, make_double_pyramid, random_polytope};
use cvgeom::polytope::{convex_hull, Hyperplane, LinearMap, Polytope, Side};
use cvgeom::scalar::{frac, int, Scalar};
use cvgeom::smooth::{cone_measure_integral, BodyModel, Ellipsoid, PiecewiseCurve, QuadratureOptions};
use cvgeom::valuation::{
    check_sl_invariance, check_valuation_identity, decompose, ellipsoid_closed_form, even_odd_split, evaluate,
    omega_phi_quadrature, ConcFn, DecomposeOptions, ValuationSpec, Value,
};
use nalgebra::DMatrix;
use num_traits::{Pow, Signed, Zero};
use proptest::prelude::*;
use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn polytope(seed: u64, n: usize) -> Polytope {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let extra = (seed % 7) as usize;
    random_polytope(&mut rng, n, extra)
}

fn rational() -> impl Strategy<Value = Scalar> {
    (-12i64..=12, 1i64..=6).prop_map(|(p, q)| frac(p, q))
}

fn positive() -> impl Strategy<Value = Scalar> {
    (1i64..=12, 1i64..=6).prop_map(|(p, q)| frac(p, q))
}

fn matrix(n: usize) -> impl Strategy<Value = Vec<Vec<Scalar>>> {
    proptest::collection::vec(proptest::collection::vec(rational(), n), n)
}

/// A product of elementary shears: always in SL(n).
fn unimodular(n: usize) -> impl Strategy<Value = LinearMap> {
    proptest::collection::vec((0..n, 1..n, rational()), 1..5).prop_map(move |shears| {
        shears.into_iter().fold(LinearMap::identity(n), |acc, (i, di, c)| {
            let j = (i + di) % n;
            let mut m: Vec<Vec<Scalar>> = (0..n)
                .map(|r| (0..n).map(|s| if r == s { int(1) } else { int(0) }).collect())
                .collect();
            m[i][j] = c;
            acc.compose(&LinearMap::new(m).unwrap())
        })
    })
}

fn composite() -> impl Strategy<Value = (Scalar, Scalar, Scalar)> {
    (rational(), rational(), rational())
}

fn spec((c0, c1, c2): &(Scalar, Scalar, Scalar)) -> ValuationSpec {
    ValuationSpec::composite(c0.clone(), c1.clone(), c2.clone(), None)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn polar_is_an_involution(seed in any::<u64>(), n in 2usize..=4) {
        let p = polytope(seed, n);
        prop_assert_eq!(p.polar().polar(), p);
    }

    #[test]
    fn volume_scales_by_determinant(seed in any::<u64>(), m in matrix(3), n in 2usize..=3) {
        let m: Vec<Vec<Scalar>> = m.into_iter().take(n).map(|r| r.into_iter().take(n).collect()).collect();
        let Ok(a) = LinearMap::new(m) else { return Ok(()) };
        let p = polytope(seed, n);
        prop_assert_eq!(p.apply_linear(&a).unwrap().volume(), a.det().abs() * p.volume());
    }

    #[test]
    fn double_pyramid_polar_is_a_product(seed in any::<u64>(), n in 1usize..=3, a in positive(), b in positive()) {
        let base = polytope(seed, n);
        let pyramid = make_double_pyramid(&base, &a, &b).unwrap();
        let product = interval_product(&base.polar(), &-a.recip(), &b.recip()).unwrap();
        prop_assert_eq!(pyramid.polar(), product);
    }

    #[test]
    fn volume_ignores_vertex_order(seed in any::<u64>(), n in 2usize..=4) {
        let p = polytope(seed, n);
        let mut pts = p.vertices().to_vec();
        pts.shuffle(&mut ChaCha8Rng::seed_from_u64(seed ^ 0x5eed));
        let q = convex_hull(&pts).unwrap();
        prop_assert_eq!(q.volume(), p.volume());
    }

    #[test]
    fn moment_vector_is_contravariant(seed in any::<u64>(), m in matrix(2)) {
        let Ok(a) = LinearMap::new(m) else { return Ok(()) };
        let p = polytope(seed, 2);
        let m = p.moment_vector_of_polar();
        let lhs = p.apply_linear(&a).unwrap().moment_vector_of_polar();
        let inv = a.inverse_matrix();
        let scale = a.det().abs().recip();
        for r in 0..2 {
            let rhs = (0..2).fold(Scalar::zero(), |acc, j| acc + &inv[j][r] * &m[j]) * &scale;
            prop_assert_eq!(&lhs[r], &rhs);
        }
    }

    #[test]
    fn split_volumes_add_up(seed in any::<u64>(), n in 2usize..=3, normal in proptest::collection::vec(rational(), 3), t in (-1i64..=1, 2i64..=8)) {
        let p = polytope(seed, n);
        let normal: Vec<Scalar> = normal.into_iter().take(n).collect();
        if normal.iter().all(Zero::is_zero) {
            return Ok(());
        }
        let h = Hyperplane::new(normal, frac(t.0, t.1)).unwrap();
        if let Ok((lo, hi)) = p.split_volumes(&h) {
            prop_assert_eq!(lo + hi, p.volume());
        }
    }

    #[test]
    fn composite_identity_is_exact(seed in any::<u64>(), n in 2usize..=3, c in composite(), s in 1i64..=4, t in 1i64..=4) {
        let p = polytope(seed, n);
        let k = (seed % n as u64) as usize;
        let below = p.clip(&Hyperplane::coordinate(n, k, frac(s, 8)), Side::Below).unwrap();
        let above = p.clip(&Hyperplane::coordinate(n, k, frac(-t, 8)), Side::Above).unwrap();
        let r = check_valuation_identity(&spec(&c), &below, &above).unwrap();
        prop_assert!(r.is_zero(), "{}", r);
    }

    #[test]
    fn composite_is_sl_invariant_on_polytopes(seed in any::<u64>(), c in composite(), a in unimodular(3), n in 2usize..=3) {
        let a = if n == 3 { a } else {
            let m = a.matrix();
            match LinearMap::new(vec![vec![m[0][0].clone(), m[0][1].clone()], vec![m[1][0].clone(), m[1][1].clone()]]) {
                Ok(b) if b.is_unimodular() => b,
                _ => return Ok(()),
            }
        };
        let body = BodyModel::Polytope(polytope(seed, n));
        prop_assert!(check_sl_invariance(&spec(&c), &body, &a).unwrap().is_zero());
    }

    #[test]
    fn parity_split_is_exact(seed in any::<u64>(), k in 0usize..2) {
        // A valuation with a genuinely odd part: volume plus the first moment coordinate.
        let oracle = ValuationSpec::oracle("skewed", |b: &BodyModel| match b {
            BodyModel::Polytope(p) => Ok(Value::Exact(p.volume() + &p.moment_vector_of_polar()[0])),
            _ => Ok(Value::float(0.0)),
        });
        let (even, odd) = even_odd_split(&oracle, k);
        let p = polytope(seed, 2);
        let q = p.apply_linear(&LinearMap::reflection(2, k)).unwrap();
        let [bp, bq] = [p, q].map(BodyModel::Polytope);
        let (e, o, full) = (even.call(&bp).unwrap(), odd.call(&bp).unwrap(), oracle.evaluate(&bp).unwrap());
        prop_assert!(e.add(&o).sub(&full).is_zero());
        prop_assert!(even.call(&bq).unwrap().sub(&e).is_zero());
        prop_assert!(odd.call(&bq).unwrap().add(&o).is_zero());
    }

    #[test]
    fn pure_components_are_homogeneous(seed in any::<u64>(), n in 2usize..=3, t in positive()) {
        let p = polytope(seed, n);
        let tp = p.dilate(&t).unwrap();
        let ev = |s: &ValuationSpec, q: &Polytope| s.evaluate_polytope(q).unwrap().as_exact().unwrap().clone();
        let e = n as i32;
        prop_assert_eq!(ev(&ValuationSpec::euler(), &tp), ev(&ValuationSpec::euler(), &p));
        prop_assert_eq!(ev(&ValuationSpec::volume(), &tp), Pow::pow(&t, e) * ev(&ValuationSpec::volume(), &p));
        prop_assert_eq!(ev(&ValuationSpec::polar_volume(), &tp), Pow::pow(&t, -e) * ev(&ValuationSpec::polar_volume(), &p));
    }

    #[test]
    fn omega_vanishes_on_polytopes(seed in any::<u64>(), n in 2usize..=4, p in 0.1f64..10.0) {
        let spec = ValuationSpec::omega(ConcFn::power(p).unwrap());
        let v = evaluate(&spec, &BodyModel::Polytope(polytope(seed, n))).unwrap();
        prop_assert!(v.as_exact().is_some_and(Zero::is_zero));
    }

    #[test]
    fn q2_description_of_composites((c0, c1, c2) in composite()) {
        let s = spec(&(c0.clone(), c1.clone(), c2.clone()));
        let abcd = [frac(1, 2), int(1), int(2)];
        let r = extract_f_on_q2(exact_oracle(&s), &multiplicative_grid(), &abcd).unwrap();
        prop_assert!(r.max_residual.is_zero());
        for (x, v) in r.f.iter() {
            prop_assert_eq!(v, &(&c0 / int(4) + &c1 * x / int(2) + &c2 / x));
        }
    }

    #[test]
    fn r2_descriptor_of_composites((c0, c1, c2) in composite()) {
        let s = spec(&(c0.clone(), c1.clone(), c2.clone()));
        let fit = fit_r2_descriptor(exact_oracle(&s), &R2Options::default()).unwrap();
        prop_assert!(fit.k_residual.is_zero() && fit.f_residual.is_zero());
        prop_assert_eq!(&fit.k, &(-&c2 / int(2)));
        prop_assert_eq!(&fit.c1, &c2);
        prop_assert_eq!(&fit.c2, &(&c0 / int(4)));
        prop_assert_eq!(&fit.c3, &(&c1 / int(2)));
        prop_assert!(fit.c1_is_minus_2k);
    }

    #[test]
    fn linear_functions_solve_cauchy(s in rational()) {
        let f = GridFunction1D::from_fn(additive_grid(), |x| &s * x).unwrap();
        let r = cauchy_residual(&f).unwrap();
        prop_assert!(r.max_residual.is_zero());
        prop_assert_eq!(r.slope, s);
    }
}

fn spd(n: usize) -> impl Strategy<Value = DMatrix<f64>> {
    proptest::collection::vec(-1.0f64..1.0, n * n).prop_map(move |v| {
        let m = DMatrix::from_row_slice(n, n, &v);
        &m * m.transpose() + DMatrix::identity(n, n) * 0.5
    })
}

fn rel(a: f64, b: f64) -> f64 {
    (a - b).abs() / b.abs()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(12))]

    #[test]
    fn cone_mass_is_n_times_volume(m2 in spd(2), m3 in spd(3), a in 0.05f64..0.95, seed in any::<u64>()) {
        let opts = QuadratureOptions::default();
        let bodies = vec![
            BodyModel::ball(2, 1.0 + a).unwrap(),
            BodyModel::ball(3, a).unwrap(),
            BodyModel::Ellipsoid(Ellipsoid::new(m2).unwrap()),
            BodyModel::Ellipsoid(Ellipsoid::new(m3).unwrap()),
            BodyModel::Piecewise2D(PiecewiseCurve::disc_cap_left(a).unwrap()),
            BodyModel::Piecewise2D(PiecewiseCurve::disc_lens(a).unwrap()),
        ];
        for b in &bodies {
            let mass = cone_measure_integral(b, |_| 1.0, &opts).unwrap();
            prop_assert!(mass.converged);
            let expected = b.dim() as f64 * b.volume();
            prop_assert!(rel(mass.value, expected) < 1e-6, "{:?}: {} vs {}", b, mass.value, expected);
        }
        for n in 2..=4 {
            let p = polytope(seed, n);
            let mass = cone_measure_integral(&BodyModel::Polytope(p.clone()), |_| 1.0, &opts).unwrap();
            let expected = n as f64 * cvgeom::scalar::to_f64(&p.volume());
            prop_assert!(rel(mass.value, expected) < 1e-12);
        }
    }

    #[test]
    fn omega_is_sl_invariant_on_balls(a in unimodular(2), b in unimodular(3), p in 0.5f64..4.0) {
        let opts = QuadratureOptions::default();
        let phi = ConcFn::power(p).unwrap();
        for (n, map) in [(2, a), (3, b)] {
            let ball = BodyModel::ball(n, 1.0).unwrap();
            let image = ball.apply_linear(&map).unwrap();
            let x = omega_phi_quadrature(&ball, &phi, &opts).unwrap();
            let y = omega_phi_quadrature(&image, &phi, &opts).unwrap();
            prop_assert!(x.converged && y.converged);
            prop_assert!(rel(y.value, x.value) < 1e-6, "n={}: {} vs {}", n, y.value, x.value);
        }
    }

    #[test]
    fn omega_matches_closed_form_on_ellipsoids(m2 in spd(2), m3 in spd(3), p in 0.5f64..4.0) {
        let opts = QuadratureOptions::default();
        let phi = ConcFn::power(p).unwrap();
        for m in [m2, m3] {
            let e = Ellipsoid::new(m).unwrap();
            let closed = ellipsoid_closed_form(e.dim(), e.det(), &phi);
            let quad = omega_phi_quadrature(&BodyModel::Ellipsoid(e), &phi, &opts).unwrap();
            prop_assert!(quad.converged);
            prop_assert!(rel(quad.value, closed) < 1e-6, "{} vs {}", quad.value, closed);
        }
    }

    #[test]
    fn similarities_keep_caps_convex(a in 0.05f64..0.95, theta in 0.0f64..6.28, s in 0.2f64..5.0, flip in any::<bool>()) {
        let (c, sn) = (theta.cos() * s, theta.sin() * s);
        let m = if flip { [[c, sn], [sn, -c]] } else { [[c, -sn], [sn, c]] };
        let cap = PiecewiseCurve::disc_cap_left(a).unwrap();
        let image = cap.apply_similarity(m).unwrap();
        prop_assert!(rel(image.area(), s * s * cap.area()) < 1e-12);
    }

    #[test]
    fn decompose_inverts_composites(c in composite(), p in prop::option::of(0.5f64..3.0)) {
        let phi = p.map(|p| ConcFn::power(p).unwrap());
        let spec = ValuationSpec::composite(c.0.clone(), c.1.clone(), c.2.clone(), phi.clone());
        let r = decompose(&spec, &DecomposeOptions::default()).unwrap();
        prop_assert_eq!((&r.c0, &r.c1, &r.c2), (&c.0, &c.1, &c.2));
        for sample in &r.phi_samples {
            let expected = phi.as_ref().map_or(0.0, |f| f.eval(sample.s, 2));
            prop_assert!((sample.phi - expected).abs() < 1e-6, "{:?} vs {}", sample, expected);
        }
    }
}
