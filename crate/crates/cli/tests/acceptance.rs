//! Acceptance suite: one line per criterion, non-zero exit if any fails.

use std::f64::consts::PI;
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::process::Command;
use std::time::{Duration, Instant};

use heisenberg_core::analysis::{
    fit_circle, fit_distance_expansion, match_euler_spiral, reconstruct_isometry, TheoremFitConfig,
};
use heisenberg_core::connections::{
    eps_distance_sq_samples, fit_eps_samples, koszul_matches_table, lc_cov_deriv, rational_epsilon,
    tw_cov_deriv, EpsMetric, RiemannianFitConfig,
};
use heisenberg_core::curves::{integrate_curve, motion_residuals, project, ThetaProfile};
use heisenberg_core::distance::{distance, distance_from_origin, invert_psi, psi};
use heisenberg_core::geodesics::{geodesic_point, minimality_horizon, GeodesicParams};
use heisenberg_core::group::Point;
use heisenberg_core::series::{
    curve_series, fraction_string, integer, inv_sinc2_phi_series, phi_series, rational,
    xy_sq_series, PowerSeries,
};
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::Zero;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde_json::Value;

type Check = Result<String, String>;
type Criterion = (u32, &'static str, fn() -> Check, Duration);

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn random_rational(rng: &mut ChaCha8Rng) -> BigRational {
    BigRational::new(
        BigInt::from(rng.random_range(-9i64..=9)),
        BigInt::from(rng.random_range(1i64..=6)),
    )
}

/// Polynomial coefficients `θᵢ = θ⁽ⁱ⁾(0) / i!` from a derivative jet with `θ(0) = 0`.
fn polynomial_from_jet(derivs: &[BigRational]) -> Vec<BigRational> {
    let mut out = vec![BigRational::zero()];
    let mut fact = BigInt::from(1);
    for (i, d) in derivs.iter().enumerate() {
        fact *= BigInt::from(i + 1);
        out.push(d / BigRational::from_integer(fact.clone()));
    }
    out
}

fn cli(args: &[&str]) -> Result<Value, String> {
    let out = Command::new(env!("CARGO_BIN_EXE_heisenberg"))
        .args(args)
        .output()
        .map_err(|e| e.to_string())?;
    if out.status.code() != Some(0) {
        return Err(format!(
            "{args:?} exited with {:?}: {}",
            out.status.code(),
            String::from_utf8_lossy(&out.stderr)
        ));
    }
    serde_json::from_slice(&out.stdout).map_err(|e| e.to_string())
}

fn exact_theorem() -> Check {
    let v = cli(&["verify-theorem", "--mode", "exact", "--jet", "0,0,1"])?;
    let coeffs = &v["results"]["coefficients"];
    ensure(v["results"]["t6_coefficient"] == "-1/180", || {
        format!("t^6 = {}", v["results"]["t6_coefficient"])
    })?;
    for i in 3..=5 {
        ensure(coeffs[i] == "0/1", || format!("t^{i} = {}", coeffs[i]))?;
    }
    let mut rng = ChaCha8Rng::seed_from_u64(2024);
    let jets = 6;
    for _ in 0..jets {
        let derivs: Vec<BigRational> = (0..4).map(|_| random_rational(&mut rng)).collect();
        let poly = polynomial_from_jet(&derivs);
        let arg = poly
            .iter()
            .map(fraction_string)
            .collect::<Vec<_>>()
            .join(",");
        let v = cli(&["verify-theorem", "--mode", "exact", "--jet", &arg])?;
        let b = &derivs[1];
        let expected = fraction_string(&(-(b * b) / integer(720)));
        ensure(v["results"]["t6_coefficient"] == expected.as_str(), || {
            format!(
                "jet {derivs:?}: t^6 = {} vs {expected}",
                v["results"]["t6_coefficient"]
            )
        })?;
        ensure(
            v["assertions"]
                .as_array()
                .is_some_and(|a| a.iter().all(|x| x["pass"] == true)),
            || format!("jet {derivs:?}: {}", v["assertions"]),
        )?;
    }
    Ok(format!(
        "t^6 = -1/180, t^3..t^5 = 0; {jets} random jets give -b^2/720"
    ))
}

fn exact_ladder() -> Check {
    let phi = phi_series(5);
    ensure(
        phi.coeff(1) == &integer(6) && phi.coeff(3) == &rational(-144, 5),
        || format!("phi = {phi}"),
    )?;
    let inv = inv_sinc2_phi_series(4);
    ensure(
        inv.coeffs()
            == [
                integer(1),
                integer(0),
                integer(12),
                integer(0),
                rational(-144, 5),
            ],
        || format!("1/sinc^2(phi) = {inv}"),
    )?;
    let mut rng = ChaCha8Rng::seed_from_u64(77);
    for _ in 0..10 {
        let derivs: Vec<BigRational> = (0..3).map(|_| random_rational(&mut rng)).collect();
        let (d1, d2, d3) = (&derivs[0], &derivs[1], &derivs[2]);
        let poly = polynomial_from_jet(&derivs);
        let z = curve_series(&poly, 6).map_err(|e| e.to_string())?.z;
        ensure(z.coeff(3) == &(d1 / integer(12)), || {
            format!("z t^3 for {derivs:?}")
        })?;
        ensure(z.coeff(4) == &(d2 / integer(24)), || {
            format!("z t^4 for {derivs:?}")
        })?;
        ensure(
            z.coeff(5) == &(d3 / integer(80) - d1 * d1 * d1 / integer(240)),
            || format!("z t^5 for {derivs:?}"),
        )?;
        let r2 = xy_sq_series(&poly, 6).map_err(|e| e.to_string())?;
        let expect = [
            integer(0),
            integer(0),
            integer(1),
            integer(0),
            -(d1 * d1) / integer(12),
            -(d1 * d2) / integer(12),
            (integer(-18) * d1 * d3 - integer(16) * d2 * d2 + integer(2) * d1 * d1 * d1 * d1)
                / integer(720),
        ];
        ensure(r2.coeffs() == expect, || {
            format!("x^2+y^2 for {derivs:?}: {r2}")
        })?;
    }
    Ok("phi, 1/sinc^2(phi), z and x^2+y^2 coefficients exact on 10 random jets".into())
}

fn numeric_theorem() -> Check {
    let (_, fit) = fit_distance_expansion(
        &ThetaProfile::new(vec![0.0, 0.0, 1.0]),
        &TheoremFitConfig::default(),
    )
    .map_err(|e| e.to_string())?;
    let c6 = fit.coefficient(6).ok_or("no t^6 term")?;
    let rel = (c6 + 1.0 / 180.0).abs() * 180.0;
    ensure(rel <= 0.02, || {
        format!("c6 = {c6}, relative error {rel:.3e}")
    })?;
    Ok(format!("c6 = {c6:.6e}, relative error {rel:.2e}"))
}

fn distance_correctness() -> Check {
    let mut worst: f64 = 0.0;
    for omega in [0.0, 0.5, -0.5, 2.0, -2.0, 6.0, -6.0] {
        for theta0 in [0.0, 1.3, -2.4] {
            let g = GeodesicParams::new(omega, theta0);
            let horizon = minimality_horizon(&g);
            let t_max = if horizon.is_finite() {
                0.99 * horizon
            } else {
                10.0
            };
            for i in 1..=100 {
                let t = t_max * i as f64 / 100.0;
                let d = distance_from_origin(&geodesic_point(&g, t));
                worst = worst.max((d - t).abs());
            }
        }
    }
    ensure(worst <= 1e-9, || {
        format!("geodesic |d - t| up to {worst:e}")
    })?;
    let axis = distance_from_origin(&Point::new(0.0, 0.0, 1.0));
    ensure((axis - 2.0 * PI.sqrt()).abs() <= 1e-10, || {
        format!("d(0,(0,0,1)) = {axis}")
    })?;
    let mut rng = ChaCha8Rng::seed_from_u64(4);
    let mut rp = || {
        Point::new(
            rng.random_range(-1.0..1.0),
            rng.random_range(-1.0..1.0),
            rng.random_range(-1.0..1.0),
        )
    };
    let mut inv_err: f64 = 0.0;
    let mut angles = ChaCha8Rng::seed_from_u64(5);
    for _ in 0..1000 {
        let (p, q, g) = (rp(), rp(), rp());
        let a = angles.random_range(-PI..PI);
        let r = angles.random_range(0.1..10.0);
        let d = distance(&p, &q);
        inv_err = inv_err
            .max((distance(&g.mul(&p), &g.mul(&q)) - d).abs())
            .max((distance(&p.rotate(a), &q.rotate(a)) - d).abs())
            .max((distance(&p.dilate(&r).unwrap(), &q.dilate(&r).unwrap()) - r * d).abs());
    }
    ensure(inv_err <= 1e-10, || format!("invariance error {inv_err:e}"))?;
    Ok(format!(
        "geodesic error {worst:.1e}, invariance error {inv_err:.1e} over 1000 cases"
    ))
}

fn connection_identities() -> Check {
    for (n, d) in [(1, 100), (1, 10), (1, 1)] {
        ensure(koszul_matches_table(&rational_epsilon(n, d)), || {
            format!("Koszul table differs at eps = {n}/{d}")
        })?;
    }
    let mut rng = ChaCha8Rng::seed_from_u64(55);
    let mut worst: f64 = 0.0;
    for _ in 0..20 {
        let deg = rng.random_range(1..=5);
        let profile = ThetaProfile::new((0..=deg).map(|_| rng.random_range(-2.0..2.0)).collect());
        for t in [-0.8, -0.1, 0.0, 0.5, 1.0] {
            let h = profile.h(&t).map_err(|e| e.to_string())?;
            let tw = tw_cov_deriv(&profile, t, Point::origin()).map_err(|e| e.to_string())?;
            ensure(tw.components.c == 0.0, || {
                "TW derivative is not horizontal".into()
            })?;
            worst = worst.max((tw.components.a.hypot(tw.components.b) - h.abs()).abs());
            for e in [0.01, 0.1, 1.0] {
                let eps = EpsMetric::new(e).unwrap();
                let lc =
                    lc_cov_deriv(&profile, t, &eps, Point::origin()).map_err(|e| e.to_string())?;
                worst = worst.max((eps.norm(&lc.components) - h.abs()).abs());
            }
        }
    }
    ensure(worst <= 1e-14, || format!("norm error {worst:e}"))?;
    Ok(format!(
        "Koszul table exact; norm error {worst:.1e} on 20 profiles"
    ))
}

fn riemannian_expansion() -> Check {
    let eps = EpsMetric::new(0.1).unwrap();
    let config = RiemannianFitConfig::for_epsilon(&eps);
    let mut parts = Vec::new();
    for h in [1.0, 2.0] {
        let profile = ThetaProfile::new(vec![0.0, h]);
        let samples =
            eps_distance_sq_samples(&profile, &eps, &config).map_err(|e| e.to_string())?;
        let c4 = fit_eps_samples(&samples, &config.powers)
            .map_err(|e| e.to_string())?
            .coefficient(4)
            .unwrap();
        let expected = -h * h / 12.0;
        let rel = ((c4 - expected) / expected).abs();
        let drift = samples.iter().map(|s| s.energy_drift).fold(0.0, f64::max);
        ensure(rel <= 0.05, || {
            format!("h = {h}: c4 = {c4}, relative error {rel:.3e}")
        })?;
        ensure(drift <= 1e-10, || {
            format!("h = {h}: energy drift {drift:e}")
        })?;
        parts.push(format!("h={h}: c4={c4:.5} ({rel:.1e})"));
    }
    // for reference: the fixed window [0.05, 0.4] sits past the quartic regime at eps = 0.1
    let fixed = RiemannianFitConfig::geometric(0.05, 0.4, 12);
    let samples = eps_distance_sq_samples(&ThetaProfile::new(vec![0.0, 1.0]), &eps, &fixed)
        .map_err(|e| e.to_string())?;
    let c4_fixed = fit_eps_samples(&samples, &fixed.powers)
        .map_err(|e| e.to_string())?
        .coefficient(4)
        .unwrap();
    parts.push(format!("window [0.05,0.4] would give {c4_fixed:.4}"));
    Ok(parts.join("; "))
}

fn isometry_reconstruction() -> Check {
    let mut rng = ChaCha8Rng::seed_from_u64(8);
    let mut worst: f64 = 0.0;
    for _ in 0..5 {
        let coeffs: Vec<f64> = (0..4).map(|_| rng.random_range(-1.5..1.5)).collect();
        let mut other = coeffs.clone();
        other[0] += rng.random_range(-PI..PI);
        let start = Point::new(
            rng.random_range(-2.0..2.0),
            rng.random_range(-2.0..2.0),
            rng.random_range(-2.0..2.0),
        );
        let z1 = integrate_curve(&ThetaProfile::new(coeffs), 1.0, 1e-4, Point::origin())
            .map_err(|e| e.to_string())?;
        let z2 = integrate_curve(&ThetaProfile::new(other), 1.0, 1e-4, start)
            .map_err(|e| e.to_string())?;
        worst = worst.max(
            reconstruct_isometry(&z1, &z2)
                .map_err(|e| e.to_string())?
                .residual,
        );
    }
    ensure(worst <= 1e-8, || format!("residual {worst:e}"))?;
    Ok(format!("max residual {worst:.1e} over 5 random pairs"))
}

fn euler_spirals() -> Check {
    let mut rng = ChaCha8Rng::seed_from_u64(42);
    let mut worst: f64 = 0.0;
    for _ in 0..10 {
        let k = rng.random_range(0.5..5.0) * if rng.random_bool(0.5) { 1.0 } else { -1.0 };
        let profile = ThetaProfile::new(vec![
            rng.random_range(-PI..PI),
            rng.random_range(-2.0..2.0),
            0.5 * k,
        ]);
        let pc = project(
            &integrate_curve(&profile, 2.0, 1e-3, Point::origin()).map_err(|e| e.to_string())?,
        );
        worst = worst.max(
            match_euler_spiral(&pc, k)
                .map_err(|e| e.to_string())?
                .residual,
        );
    }
    ensure(worst <= 1e-6, || format!("spiral residual {worst:e}"))?;
    let mut radius_err: f64 = 0.0;
    for h in [0.5, -2.0, 3.0] {
        let pc = project(
            &integrate_curve(
                &ThetaProfile::new(vec![0.4, h]),
                3.0,
                1e-3,
                Point::new(0.3, 0.1, -0.2),
            )
            .map_err(|e| e.to_string())?,
        );
        radius_err = radius_err
            .max((fit_circle(&pc).map_err(|e| e.to_string())?.radius - 1.0 / h.abs()).abs());
    }
    ensure(radius_err <= 1e-8, || {
        format!("circle radius error {radius_err:e}")
    })?;
    Ok(format!(
        "spiral residual {worst:.1e} over 10 k; circle radius error {radius_err:.1e}"
    ))
}

fn property_suites() -> Check {
    let mut rng = ChaCha8Rng::seed_from_u64(99);
    for _ in 0..200 {
        let mut q = || {
            Point::new(
                random_rational(&mut rng),
                random_rational(&mut rng),
                random_rational(&mut rng),
            )
        };
        let (p, q_, r) = (q(), q(), q());
        ensure(p.mul(&q_).mul(&r) == p.mul(&q_.mul(&r)), || {
            "exact associativity".into()
        })?;
        ensure(p.mul(&p.inverse()) == Point::origin(), || {
            "exact inverse".into()
        })?;
    }
    let mut prev = f64::NEG_INFINITY;
    let mut round_trip: f64 = 0.0;
    for i in 0..=2000 {
        let u = -3.1 + 6.2 * i as f64 / 2000.0;
        let v = psi(u).map_err(|e| e.to_string())?;
        ensure(v > prev, || format!("psi not increasing at {u}"))?;
        prev = v;
        round_trip = round_trip.max((invert_psi(v, 1e-15).map_err(|e| e.to_string())? - u).abs());
    }
    ensure(round_trip <= 1e-12, || {
        format!("psi round trip {round_trip:e}")
    })?;
    let mut motion: f64 = 0.0;
    for _ in 0..10 {
        let coeffs: Vec<f64> = (0..4).map(|_| rng.random_range(-1.0..1.0)).collect();
        let traj = integrate_curve(&ThetaProfile::new(coeffs), 1.0, 1e-3, Point::origin())
            .map_err(|e| e.to_string())?;
        let m = motion_residuals(&traj).map_err(|e| e.to_string())?;
        motion = motion.max(m.speed).max(m.horizontality);
    }
    ensure(motion <= 1e-8, || format!("motion residual {motion:e}"))?;
    for order in 2..=12 {
        let mut coeffs = vec![BigRational::zero(), integer(rng.random_range(1..=5))];
        coeffs.extend((2..=order).map(|_| random_rational(&mut rng)));
        let s = PowerSeries::new(coeffs);
        let inv = s.revert().map_err(|e| e.to_string())?;
        ensure(
            s.compose(&inv).map_err(|e| e.to_string())? == PowerSeries::variable(order),
            || format!("reversion at order {order}"),
        )?;
    }
    Ok(format!("group exact, psi round trip {round_trip:.1e}, motion residual {motion:.1e}, reversion orders 2..12"))
}

fn main() {
    let criteria: [Criterion; 9] = [
        (
            1,
            "exact sixth-order coefficient",
            exact_theorem,
            Duration::from_secs(5),
        ),
        (
            2,
            "exact series ladder",
            exact_ladder,
            Duration::from_secs(5),
        ),
        (
            3,
            "numeric sixth-order fit",
            numeric_theorem,
            Duration::from_secs(30),
        ),
        (
            4,
            "distance correctness",
            distance_correctness,
            Duration::MAX,
        ),
        (
            5,
            "connection identities",
            connection_identities,
            Duration::MAX,
        ),
        (
            6,
            "riemannian quartic term",
            riemannian_expansion,
            Duration::from_secs(120),
        ),
        (
            7,
            "isometry reconstruction",
            isometry_reconstruction,
            Duration::MAX,
        ),
        (8, "euler spirals", euler_spirals, Duration::MAX),
        (9, "property suites", property_suites, Duration::MAX),
    ];
    let mut failures = 0;
    for (n, name, f, limit) in criteria {
        let start = Instant::now();
        let outcome = catch_unwind(AssertUnwindSafe(f)).unwrap_or_else(|_| Err("panicked".into()));
        let elapsed = start.elapsed();
        let outcome = match outcome {
            Ok(detail) if elapsed > limit => {
                Err(format!("{detail}; took {elapsed:?}, limit {limit:?}"))
            }
            other => other,
        };
        match outcome {
            Ok(detail) => println!(
                "criterion {n} [{name}]: PASS ({:.2}s) {detail}",
                elapsed.as_secs_f64()
            ),
            Err(detail) => {
                failures += 1;
                println!(
                    "criterion {n} [{name}]: FAIL ({:.2}s) {detail}",
                    elapsed.as_secs_f64()
                );
            }
        }
    }
    println!("acceptance: {} of 9 criteria passed", 9 - failures);
    if failures > 0 {
        std::process::exit(1);
    }
}
