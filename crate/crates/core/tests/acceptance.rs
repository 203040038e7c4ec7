//! End-to-end acceptance criteria. Each criterion prints one PASS/FAIL
//! line; the process exits non-zero if any fails.

use std::f64::consts::PI;
use std::process::ExitCode;
use std::time::{Duration, Instant};

use cvgeom::feq::{exact_oracle, extract_f_on_q2, fit_r2_descriptor, multiplicative_grid, R2Options};
use cvgeom::polytope::construct::{
    cube, inscribed_polygon, interval_product, make_double_pyramid, make_r2, random_polytope, random_positive,
};
use cvgeom::polytope::{fibonacci_directions, Hyperplane, LinearMap, Polytope, Side};
use cvgeom::scalar::{frac, int, Scalar};
use cvgeom::smooth::{BodyError, BodyModel, Ellipsoid, PiecewiseCurve, QuadratureOptions};
use cvgeom::valuation::{
    check_valuation_identity, check_valuation_identity_with, decompose, evaluate, homogeneity_degree,
    omega_phi_quadrature, usc_probe, ConcFn, DecomposeOptions, ValuationSpec,
};
use nalgebra::DMatrix;
use num_traits::{One, Signed, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

type Verdict = Result<String, String>;

fn rng(stream: u64) -> ChaCha8Rng {
    let mut r = ChaCha8Rng::seed_from_u64(20_240_229);
    r.set_stream(stream);
    r
}

fn small<R: Rng>(r: &mut R) -> Scalar {
    frac(r.gen_range(-6..=6), r.gen_range(1..=4))
}

fn ensure(ok: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if ok {
        Ok(())
    } else {
        Err(msg())
    }
}

fn within(elapsed: Duration, limit: Duration) -> Result<(), String> {
    ensure(elapsed < limit, || format!("took {elapsed:.2?}, limit {limit:?}"))
}

fn polar_and_pyramids() -> Verdict {
    let start = Instant::now();
    let mut r = rng(1);
    for i in 0..200 {
        let n = 2 + i % 3;
        let extra = r.gen_range(0..=6);
        let p = random_polytope(&mut r, n, extra);
        ensure(p.polar().polar() == p, || format!("P** ≠ P for case {i}"))?;
        let extra = r.gen_range(0..=3);
        let base = random_polytope(&mut r, n - 1, extra);
        let a = random_positive(&mut r, 8, 4);
        let b = random_positive(&mut r, 8, 4);
        let pyramid = make_double_pyramid(&base, &a, &b).map_err(|e| e.to_string())?;
        let product = interval_product(&base.polar(), &-a.recip(), &b.recip()).map_err(|e| e.to_string())?;
        ensure(pyramid.polar() == product, || format!("pyramid polar ≠ product for case {i}"))?;
    }
    let elapsed = start.elapsed();
    within(elapsed, Duration::from_secs(10))?;
    Ok(format!("200 polytopes in {elapsed:.2?}"))
}

fn r2_formulas() -> Verdict {
    let scales = [frac(1, 2), int(1), int(2)];
    let shifts = [frac(-1, 4), int(0), frac(1, 4)];
    let (mut checked, mut excluded) = (0, 0);
    for a in &scales {
        for b in &scales {
            for c in &scales {
                for d in &scales {
                    for x in &shifts {
                        for y in &shifts {
                            let Ok(p) = make_r2(a, b, c, d, x, y) else {
                                excluded += 1;
                                continue;
                            };
                            let one = Scalar::one();
                            let v = (a * c + b * c + a * d + b * d) / int(2);
                            let inv = &one / (a * c) + &one / (b * c) + &one / (a * d) + &one / (b * d);
                            let shear = (&one / (b * b) - &one / (a * a)) * (x + y) / int(2);
                            let v_polar = inv - shear;
                            ensure(p.volume() == v, || format!("V₂ mismatch at {a},{b},{c},{d},{x},{y}"))?;
                            ensure(p.polar().volume() == v_polar, || {
                                format!("V₂(P*) mismatch at {a},{b},{c},{d},{x},{y}")
                            })?;
                            checked += 1;
                        }
                    }
                }
            }
        }
    }
    ensure(checked > 0, || "no admissible parameters".into())?;
    Ok(format!("{checked} admissible points exact, {excluded} outside the class"))
}

fn kappa(n: usize) -> f64 {
    match n {
        2 => PI,
        3 => 4.0 * PI / 3.0,
        _ => unreachable!(),
    }
}

fn ellipsoid_closed_forms() -> Verdict {
    let start = Instant::now();
    let phis = [
        ConcFn::power(1.0).unwrap(),
        ConcFn::power(2.0).unwrap(),
        ConcFn::table(vec![[0.5, 0.5], [2.0, 1.0], [8.0, 1.5]]).unwrap(),
    ];
    let opts = QuadratureOptions::default();
    let mut r = rng(3);
    let mut worst: f64 = 0.0;
    for i in 0..20 {
        let n = 2 + i % 2;
        let entries: Vec<f64> = (0..n * n).map(|_| r.gen_range(-1.0..1.0)).collect();
        let m = DMatrix::from_row_slice(n, n, &entries) + DMatrix::identity(n, n) * 1.5;
        let e = Ellipsoid::from_linear_image(&m).map_err(|e| e.to_string())?;
        let det = m.determinant().abs();
        let body = BodyModel::Ellipsoid(e);
        for phi in &phis {
            let closed = n as f64 * kappa(n) * det * phi.eval(det.powi(-2), n);
            let quad = omega_phi_quadrature(&body, phi, &opts).map_err(|e| e.to_string())?;
            let rel = (quad.value - closed).abs() / closed;
            ensure(quad.converged && rel < 1e-6, || {
                format!("ellipsoid {i}, {phi:?}: quadrature {} vs {closed}", quad.value)
            })?;
            worst = worst.max(rel);
        }
    }
    let elapsed = start.elapsed();
    within(elapsed, Duration::from_secs(30))?;
    Ok(format!("60 integrals, worst relative error {worst:.1e}, {elapsed:.2?}"))
}

fn vanishing_on_polytopes() -> Verdict {
    let phis = [
        ConcFn::power(0.5).unwrap(),
        ConcFn::power(1.0).unwrap(),
        ConcFn::power(7.0).unwrap(),
        ConcFn::affine_cap(2.0, 3.0).unwrap(),
        ConcFn::table(vec![[1.0, 1.0], [4.0, 2.0]]).unwrap(),
    ];
    let mut r = rng(4);
    let mut count = 0;
    for i in 0..30 {
        let n = 2 + i % 3;
        let extra = r.gen_range(0..=5);
        let body = BodyModel::Polytope(random_polytope(&mut r, n, extra));
        for phi in &phis {
            let v = evaluate(&ValuationSpec::omega(phi.clone()), &body).map_err(|e| e.to_string())?;
            ensure(v.as_exact().is_some_and(Zero::is_zero), || format!("Ω ≠ 0 exactly: {v:?}"))?;
            count += 1;
        }
    }
    Ok(format!("{count} evaluations exactly zero"))
}

fn homogeneity_table() -> Verdict {
    let n = 2.0;
    let ball = BodyModel::ball(2, 1.0).map_err(|e| e.to_string())?;
    let grid = [0.5, 0.75, 1.0, 1.5, 2.0];
    let mut fits = Vec::new();
    for (label, p) in [("1", 1.0), ("2", 2.0), ("n", n)] {
        let spec = ValuationSpec::omega(ConcFn::power(p).unwrap());
        let fit = homogeneity_degree(&spec, &ball, &grid).map_err(|e| e.to_string())?;
        let expected = n * (n - p) / (n + p);
        ensure((fit.degree - expected).abs() < 1e-4, || {
            format!("p={p}: fitted {} vs {expected}", fit.degree)
        })?;
        fits.push(format!("p={label}: {:.6}", (fit.degree * 1e6).round() / 1e6 + 0.0));
    }
    Ok(fits.join(", "))
}

fn valuation_identity() -> Verdict {
    let mut r = rng(6);
    for i in 0..50 {
        let spec = ValuationSpec::composite(small(&mut r), small(&mut r), small(&mut r), None);
        let n = 2 + i % 2;
        let extra = r.gen_range(0..=5);
        let p = random_polytope(&mut r, n, extra);
        let k = r.gen_range(0..n);
        let below = p
            .clip(&Hyperplane::coordinate(n, k, frac(r.gen_range(1..=4), 8)), Side::Below)
            .map_err(|e| e.to_string())?;
        let above = p
            .clip(&Hyperplane::coordinate(n, k, frac(-r.gen_range(1..=4), 8)), Side::Above)
            .map_err(|e| e.to_string())?;
        let res = check_valuation_identity(&spec, &below, &above).map_err(|e| e.to_string())?;
        ensure(res.as_exact().is_some_and(Zero::is_zero), || format!("pair {i}: residual {res:?}"))?;
    }
    let spec = ValuationSpec::omega(ConcFn::power(1.0).unwrap());
    let mut worst: f64 = 0.0;
    for a in [0.1, 0.3, 0.5, 0.7, 0.9] {
        let piece = |c: Result<PiecewiseCurve, _>| c.map(BodyModel::Piecewise2D).map_err(|e: BodyError| e.to_string());
        let k = piece(PiecewiseCurve::disc_cap_left(a))?;
        let l = piece(PiecewiseCurve::disc_cap_right(a))?;
        let inter = piece(PiecewiseCurve::disc_lens(a))?;
        let union = BodyModel::ball(2, 1.0).map_err(|e| e.to_string())?;
        let res = check_valuation_identity_with(&spec, &k, &l, &union, &inter).map_err(|e| e.to_string())?;
        ensure(res.converged() && res.to_f64() < 1e-6, || format!("disc caps a={a}: residual {}", res.to_f64()))?;
        worst = worst.max(res.to_f64());
    }
    Ok(format!("50 exact pairs, 5 disc-cap pairs (worst {worst:.1e})"))
}

fn usc_gap() -> Verdict {
    let ms: Vec<usize> = (2..=9).map(|k| 1 << k).collect();
    let sequence = ms
        .iter()
        .map(|&m| inscribed_polygon(m).map(BodyModel::Polytope))
        .collect::<Result<Vec<_>, _>>()
        .map_err(|e| e.to_string())?;
    let spec = ValuationSpec::omega(ConcFn::power(1.0).unwrap());
    for (m, body) in ms.iter().zip(&sequence) {
        let v = evaluate(&spec, body).map_err(|e| e.to_string())?;
        ensure(v.as_exact().is_some_and(Zero::is_zero), || format!("Ω({m}-gon) = {v:?}"))?;
    }
    let disc = BodyModel::ball(2, 1.0).map_err(|e| e.to_string())?;
    // usc_probe itself refuses sequences whose support gap does not decrease.
    let report = usc_probe(&spec, &sequence, &disc, &fibonacci_directions(2, 2048), 1e-6).map_err(|e| e.to_string())?;
    ensure(report.support_gaps.windows(2).all(|w| w[1] < w[0]), || "support gap not monotone".into())?;
    ensure((report.limit_value - 2.0 * PI).abs() < 1e-6, || format!("Ω(B²) = {}", report.limit_value))?;
    Ok(format!(
        "m = 4..512 all zero, gap {:.2e} → {:.2e}, Ω(B²) = {:.9}",
        report.support_gaps[0],
        report.support_gaps.last().unwrap(),
        report.limit_value
    ))
}

fn decomposition_round_trip() -> Verdict {
    let mut r = rng(8);
    let mut worst: f64 = 0.0;
    for i in 0..10 {
        let (c0, c1, c2) = (small(&mut r), small(&mut r), small(&mut r));
        let phi = match i % 3 {
            0 => ConcFn::power(r.gen_range(0.5..3.0)).unwrap(),
            1 => ConcFn::affine_cap(r.gen_range(0.5..2.0), r.gen_range(0.5..2.0)).unwrap(),
            _ => ConcFn::table(vec![[1.0, r.gen_range(0.5..1.0)], [3.0, 1.2]]).unwrap(),
        };
        let spec = ValuationSpec::composite(c0.clone(), c1.clone(), c2.clone(), Some(phi.clone()));
        let rep = decompose(&spec, &DecomposeOptions::default()).map_err(|e| e.to_string())?;
        ensure((&rep.c0, &rep.c1, &rep.c2) == (&c0, &c1, &c2), || {
            format!("draw {i}: recovered ({}, {}, {}) vs ({c0}, {c1}, {c2})", rep.c0, rep.c1, rep.c2)
        })?;
        for s in &rep.phi_samples {
            let err = (s.phi - phi.eval(s.s, 2)).abs();
            ensure(err < 1e-6, || format!("draw {i}: φ({}) off by {err:.1e}", s.s))?;
            worst = worst.max(err);
        }
    }
    Ok(format!("10 draws exact, worst φ error {worst:.1e}"))
}

fn feq_exactness() -> Verdict {
    let q = |v: i64| int(v);
    // (spec, F on Q², k, c1, c2, c3)
    let cases: [(&str, ValuationSpec, fn(&Scalar) -> Scalar, [Scalar; 4]); 3] = [
        ("V₀", ValuationSpec::euler(), |_| frac(1, 4), [q(0), q(0), frac(1, 4), q(0)]),
        ("V₂", ValuationSpec::volume(), |s| s / int(2), [q(0), q(0), q(0), frac(1, 2)]),
        ("V₂∘*", ValuationSpec::polar_volume(), |s| s.recip(), [frac(-1, 2), q(1), q(0), q(0)]),
    ];
    let abcd = [frac(1, 2), int(1), int(2)];
    for (name, spec, f, [k, c1, c2, c3]) in cases {
        let q2 = extract_f_on_q2(exact_oracle(&spec), &multiplicative_grid(), &abcd).map_err(|e| e.to_string())?;
        ensure(q2.max_residual.is_zero(), || format!("{name}: Q² residual {}", q2.max_residual))?;
        for (s, v) in q2.f.iter() {
            ensure(*v == f(s), || format!("{name}: F({s}) = {v}"))?;
        }
        let fit = fit_r2_descriptor(exact_oracle(&spec), &R2Options::default()).map_err(|e| e.to_string())?;
        ensure(fit.k_residual.is_zero() && fit.f_residual.is_zero(), || format!("{name}: non-zero fit residual"))?;
        ensure((&fit.k, &fit.c1, &fit.c2, &fit.c3) == (&k, &c1, &c2, &c3), || {
            format!("{name}: k={}, c=({}, {}, {})", fit.k, fit.c1, fit.c2, fit.c3)
        })?;
        ensure(fit.c1_is_minus_2k && fit.c1 == -int(2) * &fit.k, || format!("{name}: c₁ ≠ −2k"))?;
    }
    Ok("V₀, V₂, V₂∘* exact".into())
}

fn mahler() -> Verdict {
    let square = cube(2);
    let product = square.volume() * square.polar().volume();
    ensure(product == int(8), || format!("square: {product}"))?;
    let disc = BodyModel::ball(2, 1.0).map_err(|e| e.to_string())?;
    let polar = disc.polar_volume(&QuadratureOptions::default());
    let disc_product = disc.volume() * polar.value;
    ensure((disc_product - PI * PI).abs() < 1e-10, || format!("disc: {disc_product}"))?;
    ensure(8.0 <= disc_product, || "square product exceeds the disc's".into())?;
    Ok(format!("square 8, disc {disc_product:.12}"))
}

fn moment_contravariance() -> Verdict {
    let mut r = rng(11);
    let mut done = 0;
    while done < 50 {
        let extra = r.gen_range(0..=5);
        let p: Polytope = random_polytope(&mut r, 2, extra);
        let m: Vec<Vec<Scalar>> = (0..2)
            .map(|_| (0..2).map(|_| frac(r.gen_range(-4..=4), r.gen_range(1..=3))).collect())
            .collect();
        let Ok(a) = LinearMap::new(m) else { continue };
        let lhs = p.apply_linear(&a).map_err(|e| e.to_string())?.moment_vector_of_polar();
        let mv = p.moment_vector_of_polar();
        let inv = a.inverse_matrix();
        let scale = a.det().abs().recip();
        for row in 0..2 {
            let rhs = (0..2).fold(Scalar::zero(), |acc, j| acc + &inv[j][row] * &mv[j]) * &scale;
            ensure(lhs[row] == rhs, || format!("pair {done}: {} vs {rhs}", lhs[row]))?;
        }
        done += 1;
    }
    Ok("50 pairs exact".into())
}

fn main() -> ExitCode {
    let criteria: [(&str, fn() -> Verdict); 11] = [
        ("polar involution and double-pyramid product", polar_and_pyramids),
        ("explicit area formulas on the off-axis class", r2_formulas),
        ("Ω closed form on ellipsoids", ellipsoid_closed_forms),
        ("Ω vanishes on polytopes", vanishing_on_polytopes),
        ("homogeneity degrees of Ω_p", homogeneity_table),
        ("valuation identity", valuation_identity),
        ("upper semicontinuity gap on inscribed polygons", usc_gap),
        ("decomposition round trip", decomposition_round_trip),
        ("functional-equation descriptors", feq_exactness),
        ("Mahler volume products", mahler),
        ("moment vector contravariance", moment_contravariance),
    ];
    let mut failed = 0;
    for (i, (name, check)) in criteria.iter().enumerate() {
        match check() {
            Ok(detail) => println!("PASS {:>2} {name}: {detail}", i + 1),
            Err(detail) => {
                failed += 1;
                println!("FAIL {:>2} {name}: {detail}", i + 1);
            }
        }
    }
    println!("{} of {} criteria passed", criteria.len() - failed, criteria.len());
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
