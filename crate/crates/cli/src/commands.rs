use heisenberg_core::analysis::{
    fit_circle, fit_distance_expansion, match_euler_spiral, reconstruct_isometry, TheoremFitConfig,
};
use heisenberg_core::connections::{
    eps_distance_sq_samples, fit_eps_samples, EpsMetric, RiemannianFitConfig,
};
use heisenberg_core::curves::{integrate_curve, motion_residuals, project, ThetaProfile};
use heisenberg_core::distance::{distance, distance_from_origin};
use heisenberg_core::geodesics::{
    geodesic_heading, geodesic_point, minimality_horizon, GeodesicParams,
};
use heisenberg_core::group::Point;
use heisenberg_core::series::{
    curve_series, distance_sq_series, fraction_string, integer, inv_sinc2_phi_series, phi_series,
    psi_series, xy_sq_series, PowerSeries,
};
use num_rational::BigRational;
use num_traits::Zero;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde_json::{json, Value};

use crate::args::*;
use crate::parse;
use crate::report::{Assertion, Report, Table};
use crate::CliError;

/// Motion residual bound along integrated curves.
const MOTION_TOL: f64 = 1e-8;

fn point_json(p: &Point) -> Value {
    json!([p.x, p.y, p.z])
}

pub fn distance_cmd(a: &DistanceArgs) -> Result<Report, CliError> {
    let q = parse::point("point", &a.point)?;
    let p = match &a.from {
        Some(s) => parse::point("from", s)?,
        None => Point::origin(),
    };
    let d = distance(&p, &q);
    let mut r = Report::new("distance", Format::Json);
    r.param("from", point_json(&p));
    r.param("point", point_json(&q));
    r.results = json!({ "distance": d });
    r.assertions.push(Assertion::new(
        "distance.finite",
        d.is_finite() && d >= 0.0,
        format!("distance {d}"),
    ));
    r.table = Some(Table::Rows {
        header: vec!["x0", "y0", "z0", "x", "y", "z", "distance"],
        rows: vec![vec![p.x, p.y, p.z, q.x, q.y, q.z, d]],
    });
    Ok(r)
}

fn sample_times(t_end: f64, step: f64) -> Vec<f64> {
    let n = (t_end / step * (1.0 - 1e-12)).ceil().max(1.0) as usize;
    (0..=n)
        .map(|i| if i == n { t_end } else { i as f64 * step })
        .collect()
}

pub fn geodesic_cmd(a: &GeodesicArgs) -> Result<Report, CliError> {
    let omega = parse::number("omega", &a.omega)?;
    let theta0 = parse::number("theta0", &a.theta0)?;
    let t_end = parse::positive("t-end", &a.t_end)?;
    let step = parse::positive("step", &a.step)?;
    let g = GeodesicParams::new(omega, theta0);
    let times = sample_times(t_end, step);
    let rows: Vec<Vec<f64>> = times
        .iter()
        .map(|&t| {
            let p = geodesic_point(&g, t);
            vec![t, p.x, p.y, p.z, geodesic_heading(&g, t)]
        })
        .collect();
    let end = geodesic_point(&g, t_end);
    let d = distance_from_origin(&end);
    let horizon = minimality_horizon(&g);
    let mut r = Report::new("geodesic", Format::Csv);
    r.param("omega", omega);
    r.param("theta0", theta0);
    r.param("t_end", t_end);
    r.param("step", step);
    r.results = json!({
        "end": point_json(&end),
        "distance_to_end": d,
        "minimality_horizon": if horizon.is_finite() { json!(horizon) } else { json!("inf") },
        "samples": rows.len(),
    });
    if t_end <= 0.99 * horizon {
        r.assertions.push(Assertion::close(
            "geodesics.distance_equals_length",
            d,
            t_end,
            1e-9,
        ));
    } else {
        r.assertions.push(Assertion::at_most(
            "geodesics.distance_at_most_length",
            d - t_end,
            1e-9,
        ));
    }
    r.table = Some(Table::Rows {
        header: vec!["t", "x", "y", "z", "theta"],
        rows,
    });
    Ok(r)
}

pub fn integrate_cmd(a: &IntegrateArgs) -> Result<Report, CliError> {
    let jet = parse::numbers("jet", &a.jet)?;
    let t_end = parse::positive("t-end", &a.t_end)?;
    let step = parse::positive("step", &a.step)?;
    let start = match &a.point {
        Some(s) => parse::point("point", s)?,
        None => Point::origin(),
    };
    let traj = integrate_curve(&ThetaProfile::new(jet.clone()), t_end, step, start)?;
    let mut r = Report::new("integrate", Format::Csv);
    r.param("jet", jet);
    r.param("t_end", t_end);
    r.param("step", step);
    r.param("point", point_json(&start));
    let mut results = json!({
        "samples": traj.samples.len(),
        "end": point_json(&traj.end().point),
        "end_theta": traj.end().theta,
        "method": traj.method.name(),
        "error_estimate": traj.error_estimate,
    });
    if traj.samples.len() >= 6 {
        let m = motion_residuals(&traj)?;
        results["speed_residual"] = json!(m.speed);
        results["horizontality_residual"] = json!(m.horizontality);
        r.assertions
            .push(Assertion::at_most("curves.unit_speed", m.speed, MOTION_TOL));
        r.assertions.push(Assertion::at_most(
            "curves.horizontality",
            m.horizontality,
            MOTION_TOL,
        ));
    }
    r.results = results;
    r.table = Some(Table::Raw(traj.to_csv()));
    Ok(r)
}

fn fraction_list(s: &PowerSeries) -> Vec<String> {
    s.to_fraction_strings()
}

pub fn theorem_cmd(a: &TheoremArgs) -> Result<Report, CliError> {
    match a.mode {
        Mode::Exact => theorem_exact(a),
        Mode::Numeric => theorem_numeric(a),
    }
}

fn theorem_exact(a: &TheoremArgs) -> Result<Report, CliError> {
    let jet = parse::fractions("jet", &a.jet)?;
    if a.order < 6 {
        return Err(CliError::Config(format!(
            "--order must be at least 6, got {}",
            a.order
        )));
    }
    let d2 = distance_sq_series(&jet, a.order)?;
    let theta2 = jet.get(2).cloned().unwrap_or_else(BigRational::zero);
    let k0 = &theta2 * integer(2);
    let expected = -(&k0 * &k0) / integer(720);
    let mut r = Report::new("verify-theorem", Format::Json);
    r.param("mode", "exact");
    r.param("jet", jet.iter().map(fraction_string).collect::<Vec<_>>());
    r.param("order", a.order);
    r.results = json!({
        "coefficients": fraction_list(&d2),
        "k0": fraction_string(&k0),
        "t6_coefficient": fraction_string(d2.coeff(6)),
        "expected": fraction_string(&expected),
    });
    let leading = d2.coeff(0).is_zero() && d2.coeff(1).is_zero() && d2.coeff(2) == &integer(1);
    r.assertions.push(Assertion::new(
        "series.leading_term_is_t2",
        leading,
        format!(
            "t^0..t^2 = {}, {}, {}",
            d2.coeff(0),
            d2.coeff(1),
            d2.coeff(2)
        ),
    ));
    let middle = (3..=5).all(|i| d2.coeff(i).is_zero());
    r.assertions.push(Assertion::new(
        "series.t3_to_t5_vanish",
        middle,
        format!(
            "t^3..t^5 = {}, {}, {}",
            d2.coeff(3),
            d2.coeff(4),
            d2.coeff(5)
        ),
    ));
    r.assertions.push(Assertion::new(
        "series.t6_coefficient",
        d2.coeff(6) == &expected,
        format!(
            "t^6 = {}, expected -k(0)^2/720 = {}",
            fraction_string(d2.coeff(6)),
            fraction_string(&expected)
        ),
    ));
    r.table = Some(Table::Raw({
        let mut s = String::from("power,coefficient\n");
        for (i, c) in d2.to_fraction_strings().iter().enumerate() {
            s.push_str(&format!("{i},{c}\n"));
        }
        s
    }));
    Ok(r)
}

fn theorem_numeric(a: &TheoremArgs) -> Result<Report, CliError> {
    let jet = parse::numbers("jet", &a.jet)?;
    let window = parse::window("window", &a.window)?;
    let step = parse::positive("step", &a.step)?;
    let tol = parse::positive("tolerance", &a.tolerance)?;
    let config = TheoremFitConfig {
        window,
        samples: a.samples,
        step,
        ..TheoremFitConfig::default()
    };
    let profile = ThetaProfile::new(jet.clone());
    let (samples, fit) = fit_distance_expansion(&profile, &config)?;
    let k0 = profile.k(&0.0)?;
    let expected = -k0 * k0 / 720.0;
    let c6 = fit.coefficient(6).unwrap_or(f64::NAN);
    let mut r = Report::new("verify-theorem", Format::Json);
    r.param("mode", "numeric");
    r.param("jet", jet);
    r.param("window", json!([window.0, window.1]));
    r.param("samples", a.samples);
    r.param("step", step);
    r.param("tolerance", tol);
    r.results = json!({
        "fit": fit.to_json(),
        "t6_coefficient": c6,
        "expected": expected,
        "k0": k0,
    });
    let (bound, kind) = if expected != 0.0 {
        (tol * expected.abs(), "relative")
    } else {
        (1e-6, "absolute")
    };
    let mut check = Assertion::close("analysis.t6_fit", c6, expected, bound);
    check.detail.push_str(&format!(" ({kind})"));
    r.assertions.push(check);
    r.table = Some(Table::Rows {
        header: vec!["t", "distance_sq"],
        rows: samples.iter().map(|&(t, v)| vec![t, v]).collect(),
    });
    Ok(r)
}

pub fn riemannian_cmd(a: &RiemannianArgs) -> Result<Report, CliError> {
    let jet = parse::numbers("jet", &a.jet)?;
    let eps_value = parse::positive("eps", &a.eps)?;
    let eps = EpsMetric::new(eps_value)?;
    let step = parse::positive("step", &a.step)?;
    let tol = parse::positive("tolerance", &a.tolerance)?;
    let window = match &a.window {
        Some(w) => parse::window("window", w)?,
        None => (0.1 * eps_value, eps_value),
    };
    if a.samples < 5 {
        return Err(CliError::Config(format!(
            "--samples must be at least 5, got {}",
            a.samples
        )));
    }
    let mut config = RiemannianFitConfig::geometric(window.0, window.1, a.samples);
    config.step = step;
    let profile = ThetaProfile::new(jet.clone());
    let samples = eps_distance_sq_samples(&profile, &eps, &config)?;
    let fit = fit_eps_samples(&samples, &config.powers)?;
    let h0 = profile.h(&0.0)?;
    let expected = -h0 * h0 / 12.0;
    let c4 = fit.coefficient(4).unwrap_or(f64::NAN);
    let drift = samples.iter().map(|s| s.energy_drift).fold(0.0, f64::max);
    let mut r = Report::new("verify-riemannian", Format::Json);
    r.param("jet", jet);
    r.param("eps", eps_value);
    r.param("window", json!([window.0, window.1]));
    r.param("samples", a.samples);
    r.param("step", step);
    r.param("tolerance", tol);
    r.results = json!({
        "fit": fit.to_json(),
        "t4_coefficient": c4,
        "expected": expected,
        "h0": h0,
        "max_energy_drift": drift,
    });
    let bound = if expected != 0.0 {
        tol * expected.abs()
    } else {
        1e-3
    };
    r.assertions
        .push(Assertion::close("connections.t4_fit", c4, expected, bound));
    r.assertions
        .push(Assertion::at_most("connections.energy_drift", drift, 1e-10));
    r.table = Some(Table::Rows {
        header: vec!["t", "distance_sq", "shooting_residual", "energy_drift"],
        rows: samples
            .iter()
            .map(|s| vec![s.t, s.distance_sq, s.shooting_residual, s.energy_drift])
            .collect(),
    });
    Ok(r)
}

pub fn spiral_cmd(a: &SpiralArgs) -> Result<Report, CliError> {
    let jet = parse::numbers("jet", &a.jet)?;
    if jet.len() > 3 && jet[3..].iter().any(|&c| c != 0.0) {
        return Err(CliError::Config(
            "--jet must have degree at most 2 (constant geodesic curvature)".into(),
        ));
    }
    let t_end = parse::positive("t-end", &a.t_end)?;
    let step = parse::positive("step", &a.step)?;
    let tol = parse::positive("tolerance", &a.tolerance)?;
    let profile = ThetaProfile::new(jet.clone());
    let h0 = profile.h(&0.0)?;
    let k = profile.k(&0.0)?;
    let traj = integrate_curve(&profile, t_end, step, Point::origin())?;
    let pc = project(&traj);
    let mut r = Report::new("spiral", Format::Json);
    r.param("jet", jet);
    r.param("t_end", t_end);
    r.param("step", step);
    r.param("tolerance", tol);
    if k != 0.0 {
        let m = match_euler_spiral(&pc, k)?;
        r.results = json!({
            "kind": "euler_spiral",
            "k": k,
            "a": m.a,
            "b": m.b,
            "c": m.c,
            "reflect": m.reflect,
            "residual": m.residual,
        });
        r.assertions.push(Assertion::at_most(
            "analysis.spiral_residual",
            m.residual,
            tol,
        ));
    } else if h0 != 0.0 {
        let c = fit_circle(&pc)?;
        r.results = json!({
            "kind": "circle",
            "h": h0,
            "center": [c.center.0, c.center.1],
            "radius": c.radius,
            "expected_radius": 1.0 / h0.abs(),
            "residual": c.residual,
        });
        r.assertions.push(Assertion::close(
            "analysis.circle_radius",
            c.radius,
            1.0 / h0.abs(),
            1e-8,
        ));
    } else {
        return Err(CliError::Config(
            "heading is constant: the projection is a straight line".into(),
        ));
    }
    r.table = Some(Table::Rows {
        header: vec!["t", "x", "y"],
        rows: pc.samples.iter().map(|&(t, x, y)| vec![t, x, y]).collect(),
    });
    Ok(r)
}

pub fn isometry_cmd(a: &IsometryArgs) -> Result<Report, CliError> {
    let jet = parse::numbers("jet", &a.jet)?;
    if jet.is_empty() {
        return Err(CliError::Config(
            "--jet needs at least one coefficient".into(),
        ));
    }
    let t_end = parse::positive("t-end", &a.t_end)?;
    let step = parse::positive("step", &a.step)?;
    let tol = parse::positive("tolerance", &a.tolerance)?;
    let mut rng = ChaCha8Rng::seed_from_u64(a.seed);
    let start = Point::new(
        rng.random_range(-1.0..1.0),
        rng.random_range(-1.0..1.0),
        rng.random_range(-1.0..1.0),
    );
    let turn: f64 = rng.random_range(-std::f64::consts::PI..std::f64::consts::PI);
    let mut shifted = jet.clone();
    shifted[0] += turn;
    let z1 = integrate_curve(
        &ThetaProfile::new(jet.clone()),
        t_end,
        step,
        Point::origin(),
    )?;
    let z2 = integrate_curve(&ThetaProfile::new(shifted), t_end, step, start)?;
    let rec = reconstruct_isometry(&z1, &z2)?;
    let mut r = Report::new("isometry", Format::Json);
    r.param("jet", jet);
    r.param("seed", a.seed);
    r.param("t_end", t_end);
    r.param("step", step);
    r.param("tolerance", tol);
    r.results = json!({
        "second_start": point_json(&start),
        "second_heading_shift": turn,
        "angle": rec.isometry.angle,
        "translation": point_json(&rec.isometry.translation),
        "residual": rec.residual,
        "sr_residual": rec.sr_residual,
    });
    r.assertions.push(Assertion::at_most(
        "analysis.isometry_residual",
        rec.residual,
        tol,
    ));
    r.assertions.push(Assertion::close(
        "analysis.isometry_angle",
        rec.isometry.angle,
        -turn,
        1e-12,
    ));
    Ok(r)
}

pub fn series_cmd(a: &SeriesArgs) -> Result<Report, CliError> {
    if a.mode != Mode::Exact {
        return Err(CliError::Config(
            "series-dump only supports --mode exact".into(),
        ));
    }
    if a.order < 2 {
        return Err(CliError::Config(format!(
            "--order must be at least 2, got {}",
            a.order
        )));
    }
    let n = a.order;
    let psi = psi_series(n);
    let phi = phi_series(n);
    let inv = inv_sinc2_phi_series(n);
    let mut r = Report::new("series-dump", Format::Json);
    r.param("mode", "exact");
    r.param("order", n);
    let mut results = json!({
        "psi": fraction_list(&psi),
        "phi": fraction_list(&phi),
        "inv_sinc2_phi": fraction_list(&inv),
    });
    let round_trip = psi.compose(&phi)? == PowerSeries::<BigRational>::variable(n);
    r.assertions.push(Assertion::new(
        "series.reversion_round_trip",
        round_trip,
        "psi(phi(u)) = u through the order",
    ));
    let mut columns = vec![
        psi.to_fraction_strings(),
        phi.to_fraction_strings(),
        inv.to_fraction_strings(),
    ];
    let mut header = String::from("power,psi,phi,inv_sinc2_phi");
    if let Some(j) = &a.jet {
        let jet = parse::fractions("jet", j)?;
        r.param("jet", jet.iter().map(fraction_string).collect::<Vec<_>>());
        let cs = curve_series(&jet, n)?;
        let r2 = xy_sq_series(&jet, n)?;
        let d2 = distance_sq_series(&jet, n)?;
        results["z"] = json!(fraction_list(&cs.z));
        results["xy_sq"] = json!(fraction_list(&r2));
        results["distance_sq"] = json!(fraction_list(&d2));
        columns.extend([
            cs.z.to_fraction_strings(),
            r2.to_fraction_strings(),
            d2.to_fraction_strings(),
        ]);
        header.push_str(",z,xy_sq,distance_sq");
    }
    r.results = results;
    let mut csv = header;
    csv.push('\n');
    for i in 0..=n {
        csv.push_str(&i.to_string());
        for c in &columns {
            csv.push(',');
            csv.push_str(&c[i]);
        }
        csv.push('\n');
    }
    r.table = Some(Table::Raw(csv));
    Ok(r)
}
