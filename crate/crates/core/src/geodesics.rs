//! Arc-length geodesics of the Heisenberg group.
//!
//! From the origin, the geodesic with projection curvature `ω` and initial
//! heading `θ₀` is
//!
//! ```text
//! x(t) = (sin(ωt + θ₀) − sin θ₀) / ω
//! y(t) = (cos θ₀ − cos(ωt + θ₀)) / ω
//! z(t) = (ωt − sin ωt) / (2ω²)
//! ```
//!
//! degenerating to the straight line `(t cos θ₀, t sin θ₀, 0)` when `ω = 0`.
//! Geodesics from other points are left translates.

use serde::{Deserialize, Serialize};
use std::f64::consts::TAU;

use crate::group::Point;

/// Below this value of `|ωt|` the closed forms are replaced by their Taylor
/// expansions.
pub const SERIES_THRESHOLD: f64 = 0.1;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct GeodesicParams {
    pub omega: f64,
    pub theta0: f64,
    pub base: Point,
}

impl GeodesicParams {
    pub fn new(omega: f64, theta0: f64) -> Self {
        Self {
            omega,
            theta0,
            base: Point::origin(),
        }
    }

    pub fn with_base(mut self, base: Point) -> Self {
        self.base = base;
        self
    }

    pub fn point(&self, t: f64) -> Point {
        geodesic_point(self, t)
    }
}

// sin a / a
fn sinc(a: f64) -> f64 {
    if a.abs() < SERIES_THRESHOLD {
        let a2 = a * a;
        1.0 - a2 / 6.0
            * (1.0 - a2 / 20.0 * (1.0 - a2 / 42.0 * (1.0 - a2 / 72.0 * (1.0 - a2 / 110.0))))
    } else {
        a.sin() / a
    }
}

// (1 − cos a) / a
fn versinc(a: f64) -> f64 {
    if a.abs() < SERIES_THRESHOLD {
        let a2 = a * a;
        a / 2.0 * (1.0 - a2 / 12.0 * (1.0 - a2 / 30.0 * (1.0 - a2 / 56.0 * (1.0 - a2 / 90.0))))
    } else {
        2.0 * (0.5 * a).sin().powi(2) / a
    }
}

// (a − sin a) / a³
fn area_factor(a: f64) -> f64 {
    if a.abs() < SERIES_THRESHOLD {
        let a2 = a * a;
        (1.0 - a2 / 20.0 * (1.0 - a2 / 42.0 * (1.0 - a2 / 72.0 * (1.0 - a2 / 110.0)))) / 6.0
    } else {
        (a - a.sin()) / (a * a * a)
    }
}

/// Point at arc length `t` along the geodesic `g`.
pub fn geodesic_point(g: &GeodesicParams, t: f64) -> Point {
    let a = g.omega * t;
    let (s0, c0) = g.theta0.sin_cos();
    let (sa, va) = (sinc(a), versinc(a));
    let local = Point::new(
        t * (c0 * sa - s0 * va),
        t * (s0 * sa + c0 * va),
        0.5 * t * t * a * area_factor(a),
    );
    g.base.mul(&local)
}

/// Heading of the geodesic at time `t`.
pub fn geodesic_heading(g: &GeodesicParams, t: f64) -> f64 {
    g.theta0 + g.omega * t
}

/// Length up to which the geodesic is minimizing: `2π / |ω|`, infinite for
/// straight lines. At that time the projection closes a full circle and the
/// curve meets the vertical line through its start.
pub fn minimality_horizon(g: &GeodesicParams) -> f64 {
    if g.omega == 0.0 {
        f64::INFINITY
    } else {
        TAU / g.omega.abs()
    }
}
