//! Numerical estimate of the `t⁶` coefficient of `d²(ζ(0), ζ(t))`.

use serde::{Deserialize, Serialize};

use super::fit::{fit_taylor, geometric_grid, FitReport, Polynomial};
use crate::curves::{integrate_curve, ThetaProfile};
use crate::distance::distance_from_origin;
use crate::error::Result;
use crate::group::Point;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TheoremFitConfig {
    pub window: (f64, f64),
    pub samples: usize,
    pub powers: Vec<u32>,
    /// Largest integration step; short curves use `t / 50`.
    pub step: f64,
}

impl Default for TheoremFitConfig {
    fn default() -> Self {
        Self {
            window: (0.05, 0.5),
            samples: 12,
            powers: vec![6, 7, 8],
            step: 1e-3,
        }
    }
}

/// `(t, d²(ζ(0), ζ(t)))` on the configured geometric grid, for the curve
/// leaving the origin.
pub fn distance_sq_samples(
    profile: &ThetaProfile,
    config: &TheoremFitConfig,
) -> Result<Vec<(f64, f64)>> {
    geometric_grid(config.window.0, config.window.1, config.samples)
        .into_iter()
        .map(|t| {
            let traj = integrate_curve(profile, t, config.step.min(t / 50.0), Point::origin())?;
            let d = distance_from_origin(&traj.end().point);
            Ok((t, d * d))
        })
        .collect()
}

/// Fit `d² − t²` against the configured powers.
pub fn fit_distance_expansion(
    profile: &ThetaProfile,
    config: &TheoremFitConfig,
) -> Result<(Vec<(f64, f64)>, FitReport)> {
    let samples = distance_sq_samples(profile, config)?;
    let report = fit_taylor(&samples, &Polynomial::monomial(2, 1.0), &config.powers)?;
    Ok((samples, report))
}
