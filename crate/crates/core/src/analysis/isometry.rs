//! Recovering the isometry between two curves with the same
//! characteristic deviation.

use serde::{Deserialize, Serialize};

use crate::curves::Trajectory;
use crate::distance::distance;
use crate::error::{Error, Result};
use crate::group::{Isometry, Point};

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Reconstruction {
    pub isometry: Isometry,
    /// Largest Euclidean distance in ℝ³ between `ζ₂(t)` and `ι(ζ₁(t))`.
    pub residual: f64,
    /// The same maximum measured with the sub-Riemannian distance.
    pub sr_residual: f64,
}

/// Find `ι = L_u ∘ R_α` with `ζ₂ ≈ ι ∘ ζ₁` from the initial data alone:
/// `α = θ₁(0) − θ₂(0)` aligns the headings and `u = ζ₂(0) * (R_α ζ₁(0))⁻¹`
/// moves the start. The remaining samples only measure the residual.
pub fn reconstruct_isometry(zeta1: &Trajectory, zeta2: &Trajectory) -> Result<Reconstruction> {
    let (n1, n2) = (zeta1.samples.len(), zeta2.samples.len());
    if n1 != n2 {
        return Err(Error::Invalid(format!(
            "time grids differ in length: {n1} vs {n2}"
        )));
    }
    if n1 == 0 {
        return Err(Error::TooFewSamples { needed: 1, got: 0 });
    }
    let span = (zeta1.end().t - zeta1.start().t).abs().max(1.0);
    if zeta1
        .samples
        .iter()
        .zip(&zeta2.samples)
        .any(|(a, b)| (a.t - b.t).abs() > 1e-12 * span)
    {
        return Err(Error::Invalid(
            "trajectories are not on the same time grid".into(),
        ));
    }
    let s1 = zeta1.start();
    let s2 = zeta2.start();
    let alpha = s1.theta - s2.theta;
    let u = s2.point.mul(&s1.point.rotate(alpha).inverse());
    let isometry = Isometry::new(u, alpha);
    let mut residual = 0.0_f64;
    let mut sr_residual = 0.0_f64;
    for (a, b) in zeta1.samples.iter().zip(&zeta2.samples) {
        let mapped: Point = isometry.apply(&a.point);
        residual = residual.max(mapped.euclidean_distance(&b.point));
        sr_residual = sr_residual.max(distance(&mapped, &b.point));
    }
    Ok(Reconstruction {
        isometry,
        residual,
        sr_residual,
    })
}
