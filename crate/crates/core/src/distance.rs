//! Sub-Riemannian distance in closed form.
//!
//! For a point with `r² = x² + y² > 0`,
//!
//! ```text
//! d²(0, p) = r² / sinc²(φ(z / r²))
//! ```
//!
//! where `φ` inverts the odd, increasing map
//! `ψ(u) = ¼ (u / sin²u − cot u)` on `(−π, π)`. Points on the z-axis sit at
//! distance `2 √(π |z|)`. Distances between arbitrary points follow by left
//! translation.

use std::f64::consts::PI;
use std::sync::OnceLock;

use crate::error::{Error, Result};
use crate::group::Point;
use crate::series::psi_series;

/// Below this `|u|` the series of `ψ` replaces the closed form.
pub const PSI_SERIES_RADIUS: f64 = 1e-2;

/// Iteration cap for [`invert_psi`].
pub const INVERT_PSI_MAX_ITER: usize = 200;

/// Default residual tolerance used by [`distance_from_origin`].
pub const DEFAULT_PSI_TOL: f64 = 1e-15;

const PSI_SERIES_ORDER: usize = 11;

fn psi_odd_coeffs() -> &'static [f64] {
    static COEFFS: OnceLock<Vec<f64>> = OnceLock::new();
    COEFFS.get_or_init(|| {
        let s = psi_series(PSI_SERIES_ORDER).to_f64();
        s.into_iter().skip(1).step_by(2).collect()
    })
}

/// `ψ` on its domain; `|u| ≥ π` is rejected.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PsiDomain {
    u: f64,
}

impl PsiDomain {
    pub fn new(u: f64) -> Result<Self> {
        if !(u.abs() < PI) {
            return Err(Error::PsiDomain(u));
        }
        Ok(Self { u })
    }

    pub fn value(&self) -> f64 {
        self.u
    }
}

fn psi_unchecked(u: f64) -> f64 {
    if u.abs() < PSI_SERIES_RADIUS {
        let u2 = u * u;
        let c = psi_odd_coeffs();
        u * c.iter().rev().fold(0.0, |acc, &ci| acc * u2 + ci)
    } else {
        // 1 − cos 2u = 2 sin²u, evaluated without cancellation near 0 and π
        let s = u.sin();
        (2.0 * u - (2.0 * u).sin()) / (8.0 * s * s)
    }
}

fn psi_prime_unchecked(u: f64) -> f64 {
    if u.abs() < PSI_SERIES_RADIUS {
        let u2 = u * u;
        let c = psi_odd_coeffs();
        c.iter()
            .enumerate()
            .rev()
            .fold(0.0, |acc, (k, &ci)| acc * u2 + (2 * k + 1) as f64 * ci)
    } else {
        let (s, co) = u.sin_cos();
        (s - u * co) / (2.0 * s * s * s)
    }
}

/// `ψ(u) = (2u − sin 2u) / (4 (1 − cos 2u))` for `|u| < π`, with `ψ(0) = 0`.
pub fn psi(u: f64) -> Result<f64> {
    PsiDomain::new(u)?;
    Ok(psi_unchecked(u))
}

/// `ψ'(u)`.
pub fn psi_prime(u: f64) -> Result<f64> {
    PsiDomain::new(u)?;
    Ok(psi_prime_unchecked(u))
}

/// Solve `ψ(u) = v` for `u ∈ (−π, π)`.
///
/// Safeguarded Newton iteration inside a bracket that is kept throughout;
/// steps leaving the bracket are replaced by bisection. Stops once
/// `|ψ(u) − v| ≤ tol · max(1, |v|)`, or when the bracket has shrunk to
/// adjacent floating-point numbers (the closest representable root).
pub fn invert_psi(v: f64, tol: f64) -> Result<f64> {
    if !(tol > 0.0) {
        return Err(Error::Invalid(format!(
            "tolerance must be positive, got {tol}"
        )));
    }
    if !v.is_finite() {
        return Err(Error::Invalid(format!("cannot invert psi at {v}")));
    }
    if v == 0.0 {
        return Ok(0.0);
    }
    let target = v.abs();
    let threshold = tol * target.max(1.0);

    let mut lo = 0.0_f64;
    let mut hi = PI;
    let mut u = if target < 0.1 {
        6.0 * target - 144.0 / 5.0 * target.powi(3)
    } else {
        // ψ(u) ≈ π / (4 sin²u) as u → π
        let s2 = (PI / (4.0 * target)).min(1.0);
        PI - s2.sqrt().asin()
    };
    if !(u > lo && u < hi) {
        u = 0.5 * (lo + hi);
    }

    let mut residual = f64::INFINITY;
    for _ in 0..INVERT_PSI_MAX_ITER {
        let f = psi_unchecked(u) - target;
        residual = f.abs();
        if residual <= threshold {
            return Ok(u.copysign(v));
        }
        if f > 0.0 {
            hi = u;
        } else {
            lo = u;
        }
        let mid = 0.5 * (lo + hi);
        if mid <= lo || mid >= hi {
            return Ok(u.copysign(v));
        }
        let newton = u - f / psi_prime_unchecked(u);
        u = if newton > lo && newton < hi && newton.is_finite() {
            newton
        } else {
            mid
        };
    }
    Err(Error::NoConvergence {
        what: "invert_psi",
        iterations: INVERT_PSI_MAX_ITER,
        residual,
    })
}

/// `sin(u) / u`, with the series near zero.
pub(crate) fn sinc(u: f64) -> f64 {
    if u.abs() < 1e-4 {
        1.0 - u * u / 6.0
    } else {
        u.sin() / u
    }
}

/// Sub-Riemannian distance from the origin.
pub fn distance_from_origin(p: &Point) -> f64 {
    let r2 = p.x * p.x + p.y * p.y;
    if r2 == 0.0 {
        return 2.0 * (PI * p.z.abs()).sqrt();
    }
    if p.z == 0.0 {
        return r2.sqrt();
    }
    let v = p.z / r2;
    let u = match invert_psi(v, DEFAULT_PSI_TOL) {
        Ok(u) => u,
        // Unreachable for finite input: the bracket always collapses.
        Err(_) => return f64::NAN,
    };
    r2.sqrt() / sinc(u)
}

/// Sub-Riemannian distance `d(p, q) = d(0, p⁻¹ * q)`.
pub fn distance(p: &Point, q: &Point) -> f64 {
    distance_from_origin(&p.inverse().mul(q))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::geodesics::{geodesic_point, GeodesicParams};
    use std::f64::consts::FRAC_PI_2;

    #[test]
    fn psi_values() {
        assert!((psi(FRAC_PI_2).unwrap() - PI / 8.0).abs() < 1e-15);
        assert_eq!(psi(0.0).unwrap(), 0.0);
        let u: f64 = 1e-2;
        let approx = u / 6.0 + u.powi(3) / 45.0;
        assert!(((psi(u).unwrap() - approx) / approx).abs() <= 1e-8);
        assert!(matches!(psi(PI), Err(Error::PsiDomain(_))));
        assert!(psi(-4.0).is_err());
    }

    #[test]
    fn psi_matches_defining_formula() {
        for u in [0.02_f64, 0.5, 1.0, 2.0, 3.0, -1.7] {
            let direct = 0.25 * (u / u.sin().powi(2) - 1.0 / u.tan());
            assert!((psi(u).unwrap() - direct).abs() < 1e-13 * direct.abs().max(1.0));
        }
    }

    #[test]
    fn psi_series_and_closed_form_agree_at_switch() {
        let u = PSI_SERIES_RADIUS;
        let s = u.sin();
        let closed = (2.0 * u - (2.0 * u).sin()) / (8.0 * s * s);
        let series = psi_unchecked(u * (1.0 - 1e-12));
        assert!(((closed - series) / series).abs() < 1e-9);
        let h = 1e-6;
        for u in [0.005, 0.3, 2.5] {
            let fd = (psi_unchecked(u + h) - psi_unchecked(u - h)) / (2.0 * h);
            assert!((psi_prime(u).unwrap() - fd).abs() < 1e-6 * fd.max(1.0));
        }
    }

    #[test]
    fn invert_psi_values() {
        assert_eq!(invert_psi(0.0, 1e-14).unwrap(), 0.0);
        assert!((invert_psi(PI / 8.0, 1e-15).unwrap() - FRAC_PI_2).abs() < 1e-14);
        let v: f64 = 0.01;
        let approx = 6.0 * v - 144.0 / 5.0 * v.powi(3);
        let u = invert_psi(v, 1e-15).unwrap();
        // next term is (46656/175) v⁵ ≈ 2.7e-8
        assert!((u - approx).abs() < 5e-8);
        let longer = approx + 46656.0 / 175.0 * v.powi(5) - 373248.0 / 125.0 * v.powi(7)
            + 2470155264.0 / 67375.0 * v.powi(9);
        assert!((u - longer).abs() < 2e-15);
        assert!(invert_psi(1.0, 0.0).is_err());
        let u = invert_psi(-3.0, 1e-15).unwrap();
        assert!(u < 0.0 && (psi(u).unwrap() + 3.0).abs() < 1e-14);
        let far = invert_psi(1e12, 1e-15).unwrap();
        assert!(far > PI - 1e-2 && far < PI);
    }

    #[test]
    fn distance_examples() {
        assert_eq!(distance_from_origin(&Point::new(1.0, 0.0, 0.0)), 1.0);
        assert!((distance_from_origin(&Point::new(0.0, 0.0, 1.0)) - 2.0 * PI.sqrt()).abs() < 1e-10);
        assert_eq!(distance_from_origin(&Point::origin()), 0.0);
        let g = GeodesicParams::new(2.0, 0.3);
        assert!((distance_from_origin(&geodesic_point(&g, 0.7)) - 0.7).abs() < 1e-10);
        let p = Point::new(0.3, -1.0, 2.0);
        assert_eq!(distance(&p, &p), 0.0);
    }

    #[test]
    fn z_axis_continuity() {
        for s in [0.0, 1.0, 2.5] {
            let rho = 1e-4;
            let d = distance_from_origin(&Point::new(rho * f64::cos(s), rho * f64::sin(s), 1.0));
            assert!((d - 2.0 * PI.sqrt()).abs() < 1e-3);
        }
    }

    #[test]
    fn horizon_oracle() {
        // Past one full loop the curve is no longer minimizing.
        for omega in [2.0 * PI, PI] {
            let g = GeodesicParams::new(omega, 0.0);
            let horizon = crate::geodesics::minimality_horizon(&g);
            let before = 0.999 * horizon;
            assert!((distance_from_origin(&geodesic_point(&g, before)) - before).abs() < 1e-9);
            let after = 1.05 * horizon;
            assert!(distance_from_origin(&geodesic_point(&g, after)) < after - 1e-3);
        }
    }
}
