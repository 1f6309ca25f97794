//! Projections of curves with constant geodesic curvature are Euler spirals.
//!
//! With `θ(t) = θ₀ + θ₁ t + k t²/2` and `k ≠ 0`, write
//! `θ = σ((a t + b)² + c)` where `σ = sign k`, `a = √(|k|/2)`,
//! `b = σ θ₁ / (2a)` and `c = σ θ₀ − b²`. The projection is then
//!
//! ```text
//! P(t) = P(t₀) + (1/a) diag(1, σ) Rot(c) (F(a t + b) − F(a t₀ + b))
//! ```
//!
//! with `F = (C, S)` the Fresnel pair.

use nalgebra::{DMatrix, DVector};
use serde::{Deserialize, Serialize};

use super::fresnel::fresnel;
use crate::curves::{stencil_derivatives, PlanarCurve};
use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SpiralMatch {
    pub a: f64,
    pub b: f64,
    pub c: f64,
    /// `true` when the heading turns clockwise (`k < 0`).
    pub reflect: bool,
    /// Largest planar distance between the samples and the Fresnel model.
    pub residual: f64,
}

impl SpiralMatch {
    /// Parameters for the heading `θ₀ + θ₁ t + k t²/2`.
    pub fn from_heading(theta0: f64, theta1: f64, k: f64) -> Result<Self> {
        if k == 0.0 || !k.is_finite() {
            return Err(Error::ZeroCurvature);
        }
        let sigma = k.signum();
        let a = (k.abs() / 2.0).sqrt();
        let b = sigma * theta1 / (2.0 * a);
        Ok(Self {
            a,
            b,
            c: sigma * theta0 - b * b,
            reflect: k < 0.0,
            residual: 0.0,
        })
    }

    /// Model displacement `P(t) − P(t₀)`.
    pub fn displacement(&self, t0: f64, t: f64) -> (f64, f64) {
        let (c0, s0) = fresnel(self.a * t0 + self.b);
        let (c1, s1) = fresnel(self.a * t + self.b);
        let (dc, ds) = (c1 - c0, s1 - s0);
        let (sn, cs) = self.c.sin_cos();
        let sigma = if self.reflect { -1.0 } else { 1.0 };
        (
            (cs * dc - sn * ds) / self.a,
            sigma * (sn * dc + cs * ds) / self.a,
        )
    }
}

fn unwrap(angles: &mut [f64]) {
    for i in 1..angles.len() {
        let d = angles[i] - angles[i - 1];
        angles[i] -= (d / std::f64::consts::TAU).round() * std::f64::consts::TAU;
    }
}

/// Match the planar curve with the Euler spiral of constant geodesic
/// curvature `k_const`. The heading's affine part is estimated by least
/// squares on the unwrapped tangent angles with the known quadratic term
/// removed; the residual compares every sample with the Fresnel model.
pub fn match_euler_spiral(pc: &PlanarCurve, k_const: f64) -> Result<SpiralMatch> {
    if k_const == 0.0 || !k_const.is_finite() {
        return Err(Error::ZeroCurvature);
    }
    let n = pc.len();
    if n < 6 {
        return Err(Error::TooFewSamples { needed: 6, got: n });
    }
    let ts: Vec<f64> = pc.samples.iter().map(|s| s.0).collect();
    let xs: Vec<f64> = pc.samples.iter().map(|s| s.1).collect();
    let ys: Vec<f64> = pc.samples.iter().map(|s| s.2).collect();
    let mut heading: Vec<f64> = (0..n)
        .map(|i| {
            let (dx, _) = stencil_derivatives(&ts, &xs, i);
            let (dy, _) = stencil_derivatives(&ts, &ys, i);
            dy.atan2(dx)
        })
        .collect();
    unwrap(&mut heading);
    let design = DMatrix::from_fn(n, 2, |i, j| if j == 0 { 1.0 } else { ts[i] });
    let rhs = DVector::from_fn(n, |i, _| heading[i] - 0.5 * k_const * ts[i] * ts[i]);
    let affine = design
        .svd(true, true)
        .solve(&rhs, 0.0)
        .map_err(|e| Error::Invalid(e.to_string()))?;
    let mut m = SpiralMatch::from_heading(affine[0], affine[1], k_const)?;
    let (t0, x0, y0) = pc.samples[0];
    m.residual = pc
        .samples
        .iter()
        .map(|&(t, x, y)| {
            let (dx, dy) = m.displacement(t0, t);
            (x0 + dx - x).hypot(y0 + dy - y)
        })
        .fold(0.0, f64::max);
    Ok(m)
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct CircleFit {
    pub center: (f64, f64),
    pub radius: f64,
    /// Largest deviation `| |p − center| − radius |` over the samples.
    pub residual: f64,
}

/// Algebraic least-squares circle through the samples
/// (`x² + y² + D x + E y + F = 0`).
pub fn fit_circle(pc: &PlanarCurve) -> Result<CircleFit> {
    let n = pc.len();
    if n < 3 {
        return Err(Error::TooFewSamples { needed: 3, got: n });
    }
    // center the data first for conditioning
    let mx = pc.samples.iter().map(|s| s.1).sum::<f64>() / n as f64;
    let my = pc.samples.iter().map(|s| s.2).sum::<f64>() / n as f64;
    let a = DMatrix::from_fn(n, 3, |i, j| {
        let (_, x, y) = pc.samples[i];
        match j {
            0 => x - mx,
            1 => y - my,
            _ => 1.0,
        }
    });
    let b = DVector::from_fn(n, |i, _| {
        let (_, x, y) = pc.samples[i];
        -((x - mx).powi(2) + (y - my).powi(2))
    });
    let svd = a.svd(true, true);
    let smax = svd.singular_values.max();
    if svd.singular_values.iter().any(|&s| !(s > 1e-12 * smax)) {
        return Err(Error::RankDeficient);
    }
    let sol = svd
        .solve(&b, 0.0)
        .map_err(|e| Error::Invalid(e.to_string()))?;
    let (cx, cy) = (-sol[0] / 2.0, -sol[1] / 2.0);
    let radius = (cx * cx + cy * cy - sol[2]).sqrt();
    let center = (cx + mx, cy + my);
    let residual = pc
        .samples
        .iter()
        .map(|&(_, x, y)| ((x - center.0).hypot(y - center.1) - radius).abs())
        .fold(0.0, f64::max);
    Ok(CircleFit {
        center,
        radius,
        residual,
    })
}
