//! Unit-speed horizontal curves generated by a heading profile `θ(t)`.
//!
//! A curve with velocity `cos θ X1 + sin θ X2` solves
//!
//! ```text
//! ẋ = cos θ,   ẏ = sin θ,   ż = −(y/2) cos θ + (x/2) sin θ
//! ```
//!
//! Its characteristic deviation is `h = θ̇` and its geodesic curvature is
//! `k = θ̈`. The planar projection `(x, y)` is a unit-speed curve whose signed
//! Euclidean curvature equals `h`.

use num_traits::{Num, ToPrimitive};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::group::Point;

/// Polynomial heading profile `θ(t) = Σ θᵢ tⁱ` on `(−T, T)`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ThetaProfile<T = f64> {
    coeffs: Vec<T>,
    halfwidth: f64,
}

impl<T: Num + Clone + ToPrimitive> ThetaProfile<T> {
    /// Profile defined on the whole real line.
    pub fn new(coeffs: Vec<T>) -> Self {
        Self {
            coeffs,
            halfwidth: f64::INFINITY,
        }
    }

    pub fn with_halfwidth(coeffs: Vec<T>, halfwidth: f64) -> Result<Self> {
        if halfwidth.is_nan() || halfwidth <= 0.0 {
            return Err(Error::Invalid(format!(
                "domain half-width must be positive, got {halfwidth}"
            )));
        }
        Ok(Self { coeffs, halfwidth })
    }

    pub fn coeffs(&self) -> &[T] {
        &self.coeffs
    }

    pub fn halfwidth(&self) -> f64 {
        self.halfwidth
    }

    /// Coefficient of `tⁱ` (zero past the end of the list).
    pub fn coeff(&self, i: usize) -> T {
        self.coeffs.get(i).cloned().unwrap_or_else(T::zero)
    }

    /// Coefficients of the `order`-th derivative.
    pub fn derivative_coeffs(&self, order: usize) -> Vec<T> {
        let mut c = self.coeffs.clone();
        for _ in 0..order {
            if c.is_empty() {
                break;
            }
            c = c
                .iter()
                .enumerate()
                .skip(1)
                .map(|(i, v)| from_usize::<T>(i) * v.clone())
                .collect();
        }
        c
    }

    /// `θ^(order)(0)`.
    pub fn jet(&self, order: usize) -> T {
        let mut f = T::one();
        for i in 2..=order {
            f = f * from_usize::<T>(i);
        }
        f * self.coeff(order)
    }

    fn check(&self, t: &T) -> Result<()> {
        let tf = t.to_f64().unwrap_or(f64::NAN);
        if !(tf.abs() < self.halfwidth) {
            return Err(Error::OutOfDomain {
                t: tf,
                halfwidth: self.halfwidth,
            });
        }
        Ok(())
    }

    fn eval_derivative(&self, order: usize, t: &T) -> Result<T> {
        self.check(t)?;
        Ok(horner(&self.derivative_coeffs(order), t))
    }

    pub fn theta(&self, t: &T) -> Result<T> {
        self.eval_derivative(0, t)
    }

    /// Characteristic deviation `h(t) = θ̇(t)`.
    pub fn h(&self, t: &T) -> Result<T> {
        self.eval_derivative(1, t)
    }

    /// Geodesic curvature `k(t) = θ̈(t)`.
    pub fn k(&self, t: &T) -> Result<T> {
        self.eval_derivative(2, t)
    }

    /// Profile of the dilated curve `δ_r ∘ ζ(· / r)`: `θ_r(t) = θ(t / r)`.
    pub fn dilate(&self, r: &T) -> Result<Self>
    where
        T: PartialOrd,
    {
        if !(*r > T::zero()) {
            return Err(Error::NonPositiveDilation(r.to_f64().unwrap_or(f64::NAN)));
        }
        let mut scale = T::one();
        let coeffs = self
            .coeffs
            .iter()
            .map(|c| {
                let v = c.clone() / scale.clone();
                scale = scale.clone() * r.clone();
                v
            })
            .collect();
        let rf = r.to_f64().unwrap_or(f64::NAN);
        Ok(Self {
            coeffs,
            halfwidth: self.halfwidth * rf,
        })
    }

    pub fn to_f64(&self) -> ThetaProfile<f64> {
        ThetaProfile {
            coeffs: self
                .coeffs
                .iter()
                .map(|c| c.to_f64().unwrap_or(f64::NAN))
                .collect(),
            halfwidth: self.halfwidth,
        }
    }
}

fn from_usize<T: Num>(n: usize) -> T {
    let mut v = T::zero();
    for _ in 0..n {
        v = v + T::one();
    }
    v
}

fn horner<T: Num + Clone>(coeffs: &[T], t: &T) -> T {
    coeffs
        .iter()
        .rev()
        .fold(T::zero(), |acc, c| acc * t.clone() + c.clone())
}

impl ThetaProfile<f64> {
    /// Geodesic profile `θ(t) = ω t + θ₀`.
    pub fn affine(omega: f64, theta0: f64) -> Self {
        Self::new(vec![theta0, omega])
    }

    fn theta_f(&self, t: f64) -> f64 {
        horner(&self.coeffs, &t)
    }
}

/// Characteristic deviation `h(t) = θ̇(t)`.
pub fn characteristic_deviation(profile: &ThetaProfile, t: f64) -> Result<f64> {
    profile.h(&t)
}

/// Geodesic curvature `k(t) = θ̈(t)`.
pub fn geodesic_curvature(profile: &ThetaProfile, t: f64) -> Result<f64> {
    profile.k(&t)
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Sample {
    pub t: f64,
    pub point: Point,
    pub theta: f64,
}

/// Integration scheme used to produce a [`Trajectory`].
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Integrator {
    /// Classical fixed-step fourth-order Runge–Kutta.
    Rk4,
}

impl Integrator {
    pub fn name(&self) -> &'static str {
        match self {
            Integrator::Rk4 => "rk4",
        }
    }

    /// Order of the local truncation error.
    pub fn local_order(&self) -> u32 {
        match self {
            Integrator::Rk4 => 5,
        }
    }
}

/// Sampled horizontal curve `ζ(t)` with its heading.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Trajectory {
    pub samples: Vec<Sample>,
    pub step: f64,
    pub method: Integrator,
    /// Richardson estimate of the global error at the final time
    /// (max-norm difference between step and half-step runs, divided by 15).
    pub error_estimate: f64,
}

impl Trajectory {
    pub fn start(&self) -> &Sample {
        &self.samples[0]
    }

    pub fn end(&self) -> &Sample {
        self.samples
            .last()
            .expect("trajectory has at least one sample")
    }

    pub fn times(&self) -> impl Iterator<Item = f64> + '_ {
        self.samples.iter().map(|s| s.t)
    }

    /// CSV rendering with header `t,x,y,z,theta`, LF line endings and 17
    /// significant digits.
    pub fn to_csv(&self) -> String {
        let mut out = String::from("t,x,y,z,theta\n");
        for s in &self.samples {
            out.push_str(&format!(
                "{},{},{},{},{}\n",
                fmt17(s.t),
                fmt17(s.point.x),
                fmt17(s.point.y),
                fmt17(s.point.z),
                fmt17(s.theta)
            ));
        }
        out
    }
}

/// Round-trip decimal formatting with 17 significant digits.
pub fn fmt17(v: f64) -> String {
    if v == 0.0 {
        return "0".into();
    }
    format!("{v:.16e}")
}

fn rhs(profile: &ThetaProfile, t: f64, p: &Point) -> Point {
    let (s, c) = profile.theta_f(t).sin_cos();
    Point::new(c, s, 0.5 * (p.x * s - p.y * c))
}

fn rk4_step(profile: &ThetaProfile, t: f64, p: &Point, dt: f64) -> Point {
    let axpy =
        |p: &Point, k: &Point, a: f64| Point::new(p.x + a * k.x, p.y + a * k.y, p.z + a * k.z);
    let k1 = rhs(profile, t, p);
    let k2 = rhs(profile, t + 0.5 * dt, &axpy(p, &k1, 0.5 * dt));
    let k3 = rhs(profile, t + 0.5 * dt, &axpy(p, &k2, 0.5 * dt));
    let k4 = rhs(profile, t + dt, &axpy(p, &k3, dt));
    Point::new(
        p.x + dt / 6.0 * (k1.x + 2.0 * k2.x + 2.0 * k3.x + k4.x),
        p.y + dt / 6.0 * (k1.y + 2.0 * k2.y + 2.0 * k3.y + k4.y),
        p.z + dt / 6.0 * (k1.z + 2.0 * k2.z + 2.0 * k3.z + k4.z),
    )
}

fn run_rk4(profile: &ThetaProfile, t_end: f64, step: f64, start: Point) -> Vec<Sample> {
    let n = (t_end / step * (1.0 - 1e-12)).ceil() as usize;
    let mut samples = Vec::with_capacity(n + 1);
    let mut p = start;
    samples.push(Sample {
        t: 0.0,
        point: p,
        theta: profile.theta_f(0.0),
    });
    for i in 0..n {
        let t0 = i as f64 * step;
        let t1 = if i + 1 == n {
            t_end
        } else {
            (i + 1) as f64 * step
        };
        if t1 <= t0 {
            break;
        }
        p = rk4_step(profile, t0, &p, t1 - t0);
        samples.push(Sample {
            t: t1,
            point: p,
            theta: profile.theta_f(t1),
        });
    }
    samples
}

/// Integrate the horizontal curve with heading `profile` from `start` over
/// `[0, t_end]` with the fixed step `step` (the last step is shortened to land
/// on `t_end`).
pub fn integrate_curve(
    profile: &ThetaProfile,
    t_end: f64,
    step: f64,
    start: Point,
) -> Result<Trajectory> {
    if !(step > 0.0) || !step.is_finite() {
        return Err(Error::NonPositiveStep(step));
    }
    if !(t_end >= 0.0) || t_end >= profile.halfwidth() {
        return Err(Error::OutOfDomain {
            t: t_end,
            halfwidth: profile.halfwidth(),
        });
    }
    let samples = run_rk4(profile, t_end, step, start);
    let error_estimate = if samples.len() > 1 {
        let fine = run_rk4(profile, t_end, 0.5 * step, start);
        let a = samples.last().unwrap().point;
        let b = fine.last().unwrap().point;
        a.max_abs_diff(&b) / 15.0
    } else {
        0.0
    };
    Ok(Trajectory {
        samples,
        step,
        method: Integrator::Rk4,
        error_estimate,
    })
}

/// Planar curve `π ∘ ζ` sampled on the trajectory's time grid.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PlanarCurve {
    pub samples: Vec<(f64, f64, f64)>,
}

pub fn project(traj: &Trajectory) -> PlanarCurve {
    PlanarCurve {
        samples: traj
            .samples
            .iter()
            .map(|s| (s.t, s.point.x, s.point.y))
            .collect(),
    }
}

/// Finite-difference weights for the derivatives of order `0..=max_order` at
/// `x0` from values at `nodes` (Fornberg's recursion). Returns
/// `weights[order][node]`.
pub(crate) fn fd_weights(x0: f64, nodes: &[f64], max_order: usize) -> Vec<Vec<f64>> {
    let n = nodes.len();
    let mut w = vec![vec![0.0; n]; max_order + 1];
    w[0][0] = 1.0;
    let mut c1 = 1.0;
    let mut c4 = nodes[0] - x0;
    for i in 1..n {
        let mn = i.min(max_order);
        let mut c2 = 1.0;
        let c5 = c4;
        c4 = nodes[i] - x0;
        for j in 0..i {
            let c3 = nodes[i] - nodes[j];
            c2 *= c3;
            if j == i - 1 {
                for k in (1..=mn).rev() {
                    w[k][i] = c1 * (k as f64 * w[k - 1][i - 1] - c5 * w[k][i - 1]) / c2;
                }
                w[0][i] = -c1 * c5 * w[0][i - 1] / c2;
            }
            for k in (1..=mn).rev() {
                w[k][j] = (c4 * w[k][j] - k as f64 * w[k - 1][j]) / c3;
            }
            w[0][j] = c4 * w[0][j] / c3;
        }
        c1 = c2;
    }
    w
}

/// Node indices used to differentiate at sample `i` of `n`: five centered
/// nodes in the interior, six one-sided nodes at the two samples nearest
/// each end.
pub(crate) fn stencil_nodes(i: usize, n: usize) -> std::ops::Range<usize> {
    if i >= 2 && i + 2 < n {
        i - 2..i + 3
    } else if i < 2 {
        0..6.min(n)
    } else {
        n.saturating_sub(6)..n
    }
}

/// First and second derivative of sampled data `(ts, values)` at index `i`.
pub(crate) fn stencil_derivatives(ts: &[f64], values: &[f64], i: usize) -> (f64, f64) {
    let range = stencil_nodes(i, ts.len());
    let w = fd_weights(ts[i], &ts[range.clone()], 2);
    let apply = |k: usize| -> f64 {
        w[k].iter()
            .zip(&values[range.clone()])
            .map(|(a, b)| a * b)
            .sum()
    };
    (apply(1), apply(2))
}

impl PlanarCurve {
    pub fn len(&self) -> usize {
        self.samples.len()
    }

    pub fn is_empty(&self) -> bool {
        self.samples.is_empty()
    }

    /// Index of the sample nearest to `t`.
    pub(crate) fn locate(&self, t: f64) -> Result<usize> {
        let n = self.samples.len();
        let (lo, hi) = match (self.samples.first(), self.samples.last()) {
            (Some(a), Some(b)) => (a.0, b.0),
            _ => {
                return Err(Error::OutOfRange {
                    t,
                    lo: 0.0,
                    hi: 0.0,
                })
            }
        };
        if n < 6 {
            return Err(Error::TooFewSamples { needed: 6, got: n });
        }
        let tol = 1e-9 * (hi - lo).abs().max(1.0);
        if !(t >= lo - tol && t <= hi + tol) {
            return Err(Error::OutOfRange { t, lo, hi });
        }
        let i = self.samples.partition_point(|s| s.0 < t);
        Ok(if i == 0 {
            0
        } else if i >= n || (t - self.samples[i - 1].0) <= (self.samples[i].0 - t) {
            (i - 1).min(n - 1)
        } else {
            i
        })
    }

    /// Velocity and acceleration at the sample nearest `t`.
    pub fn derivatives(&self, t: f64) -> Result<((f64, f64), (f64, f64))> {
        let i = self.locate(t)?;
        let ts: Vec<f64> = self.samples.iter().map(|s| s.0).collect();
        let xs: Vec<f64> = self.samples.iter().map(|s| s.1).collect();
        let ys: Vec<f64> = self.samples.iter().map(|s| s.2).collect();
        let (dx, ddx) = stencil_derivatives(&ts, &xs, i);
        let (dy, ddy) = stencil_derivatives(&ts, &ys, i);
        Ok(((dx, dy), (ddx, ddy)))
    }
}

/// Signed Euclidean curvature `(ẋÿ − ẏẍ) / (ẋ² + ẏ²)^{3/2}` of the planar
/// curve at the sample nearest `t`. Positive means counterclockwise turning.
pub fn planar_curvature(pc: &PlanarCurve, t: f64) -> Result<f64> {
    let ((dx, dy), (ddx, ddy)) = pc.derivatives(t)?;
    Ok((dx * ddy - dy * ddx) / (dx * dx + dy * dy).powf(1.5))
}

/// Largest finite-difference deviations from unit speed and horizontality
/// along a trajectory.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct MotionResiduals {
    /// `max |ẋ² + ẏ² − 1|`.
    pub speed: f64,
    /// `max |ż − (x ẏ − y ẋ) / 2|`.
    pub horizontality: f64,
}

pub fn motion_residuals(traj: &Trajectory) -> Result<MotionResiduals> {
    let n = traj.samples.len();
    if n < 6 {
        return Err(Error::TooFewSamples { needed: 6, got: n });
    }
    let ts: Vec<f64> = traj.times().collect();
    let coord = |f: fn(&Point) -> f64| traj.samples.iter().map(|s| f(&s.point)).collect::<Vec<_>>();
    let (xs, ys, zs) = (coord(|p| p.x), coord(|p| p.y), coord(|p| p.z));
    let mut out = MotionResiduals {
        speed: 0.0,
        horizontality: 0.0,
    };
    for i in 0..n {
        let (dx, _) = stencil_derivatives(&ts, &xs, i);
        let (dy, _) = stencil_derivatives(&ts, &ys, i);
        let (dz, _) = stencil_derivatives(&ts, &zs, i);
        out.speed = out.speed.max((dx * dx + dy * dy - 1.0).abs());
        out.horizontality = out
            .horizontality
            .max((dz - 0.5 * (xs[i] * dy - ys[i] * dx)).abs());
    }
    Ok(out)
}

/// Dilate a curve: `ξ_r(t) = δ_r(ζ(t / r))`, resampled at times `r t`, with the
/// matching profile `θ_r(t) = θ(t / r)`.
pub fn dilate_curve(
    traj: &Trajectory,
    profile: &ThetaProfile,
    r: f64,
) -> Result<(Trajectory, ThetaProfile)> {
    let new_profile = profile.dilate(&r)?;
    let samples = traj
        .samples
        .iter()
        .map(|s| Sample {
            t: r * s.t,
            point: s.point.dilate_unchecked(&r),
            theta: s.theta,
        })
        .collect();
    Ok((
        Trajectory {
            samples,
            step: r * traj.step,
            method: traj.method,
            error_estimate: r.max(r * r) * traj.error_estimate,
        },
        new_profile,
    ))
}

/// Outcome of checking the radial identities on a window of a trajectory.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RadialIdentityReport {
    pub window: (f64, f64),
    /// max relative error of `x² + y² = 4 ∫₀ᵗ∫₀ᵘ (−θ̇ ż + ½)`.
    pub radial_rel_error: f64,
    /// max absolute error of `z‴ = θ̈ ∫₀ᵗ(−θ̇ż + ½) − θ̇² ż + θ̇/2`.
    pub third_derivative_error: f64,
    pub tolerance: f64,
    pub pass: bool,
}

/// Check the two radial identities satisfied by curves leaving the origin
/// with some nonzero θ-jet, over the samples with `t` in `window`.
///
/// The double integral is evaluated as `∫₀ᵗ (t − s) f(s) ds` with the
/// composite Simpson rule (trapezoid on a trailing odd interval); `z‴` is
/// taken from the exact expression `z̈ = θ̇ (x ẋ + y ẏ) / 2` differentiated
/// once with finite differences.
pub fn verify_radial_identities(
    traj: &Trajectory,
    profile: &ThetaProfile,
    window: (f64, f64),
    tolerance: f64,
) -> Result<RadialIdentityReport> {
    let n = traj.samples.len();
    if n < 5 {
        return Err(Error::TooFewSamples { needed: 5, got: n });
    }
    if traj.start().point != Point::origin() || traj.start().t != 0.0 {
        return Err(Error::Invalid(
            "radial identities need a trajectory starting at the origin at t = 0".into(),
        ));
    }
    let ts: Vec<f64> = traj.times().collect();
    let h_vals: Vec<f64> = ts.iter().map(|t| profile.h(t)).collect::<Result<_>>()?;
    let k_vals: Vec<f64> = ts.iter().map(|t| profile.k(t)).collect::<Result<_>>()?;
    // ż from the horizontality constraint, z̈ from its derivative.
    let zdot: Vec<f64> = traj
        .samples
        .iter()
        .map(|s| {
            let (sn, cs) = s.theta.sin_cos();
            0.5 * (s.point.x * sn - s.point.y * cs)
        })
        .collect();
    let zddot: Vec<f64> = traj
        .samples
        .iter()
        .zip(&h_vals)
        .map(|(s, h)| {
            let (sn, cs) = s.theta.sin_cos();
            0.5 * h * (s.point.x * cs + s.point.y * sn)
        })
        .collect();
    let f: Vec<f64> = zdot
        .iter()
        .zip(&h_vals)
        .map(|(zd, h)| -h * zd + 0.5)
        .collect();
    let single = cumulative_integral(&ts, &f);

    let mut radial_rel_error: f64 = 0.0;
    let mut third_derivative_error: f64 = 0.0;
    for (i, s) in traj.samples.iter().enumerate() {
        if s.t < window.0 || s.t > window.1 || i == 0 {
            continue;
        }
        let weighted: Vec<f64> = ts[..=i]
            .iter()
            .zip(&f)
            .map(|(u, fv)| (s.t - u) * fv)
            .collect();
        let double = 4.0 * simpson(&ts[..=i], &weighted);
        let r2 = s.point.x.powi(2) + s.point.y.powi(2);
        radial_rel_error =
            radial_rel_error.max((r2 - double).abs() / r2.abs().max(f64::MIN_POSITIVE));
        {
            let (z3, _) = stencil_derivatives(&ts, &zddot, i);
            let rhs = k_vals[i] * single[i] - h_vals[i].powi(2) * zdot[i] + 0.5 * h_vals[i];
            third_derivative_error = third_derivative_error.max((z3 - rhs).abs());
        }
    }
    let pass = radial_rel_error <= tolerance && third_derivative_error <= tolerance.sqrt();
    Ok(RadialIdentityReport {
        window,
        radial_rel_error,
        third_derivative_error,
        tolerance,
        pass,
    })
}

/// Composite Simpson rule on a uniform grid; a trailing odd interval is closed
/// with a cubic correction (Simpson 3/8 on the last three intervals).
pub(crate) fn simpson(ts: &[f64], f: &[f64]) -> f64 {
    let n = ts.len();
    match n {
        0 | 1 => 0.0,
        2 => 0.5 * (ts[1] - ts[0]) * (f[0] + f[1]),
        3 => (ts[2] - ts[0]) / 6.0 * (f[0] + 4.0 * f[1] + f[2]),
        _ => {
            let intervals = n - 1;
            let (even_end, tail) = if intervals.is_multiple_of(2) {
                (n - 1, false)
            } else {
                (n - 4, true)
            };
            let mut acc = 0.0;
            let mut i = 0;
            while i + 2 <= even_end {
                acc += (ts[i + 2] - ts[i]) / 6.0 * (f[i] + 4.0 * f[i + 1] + f[i + 2]);
                i += 2;
            }
            if tail {
                let j = n - 4;
                acc +=
                    (ts[j + 3] - ts[j]) / 8.0 * (f[j] + 3.0 * f[j + 1] + 3.0 * f[j + 2] + f[j + 3]);
            }
            acc
        }
    }
}

fn cumulative_integral(ts: &[f64], f: &[f64]) -> Vec<f64> {
    (0..ts.len())
        .map(|i| simpson(&ts[..=i], &f[..=i]))
        .collect()
}
