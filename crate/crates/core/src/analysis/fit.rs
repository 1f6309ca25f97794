//! Least-squares extraction of Taylor coefficients from sampled data.

use std::collections::BTreeMap;

use nalgebra::{DMatrix, DVector};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Dense polynomial `Σ coeffs[i] tⁱ`.
#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
pub struct Polynomial {
    pub coeffs: Vec<f64>,
}

impl Polynomial {
    pub fn new(coeffs: Vec<f64>) -> Self {
        Self { coeffs }
    }

    pub fn zero() -> Self {
        Self::default()
    }

    /// `c tᵖ`.
    pub fn monomial(p: usize, c: f64) -> Self {
        let mut coeffs = vec![0.0; p + 1];
        coeffs[p] = c;
        Self { coeffs }
    }

    pub fn eval(&self, t: f64) -> f64 {
        self.coeffs.iter().rev().fold(0.0, |acc, &c| acc * t + c)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct CoefficientEstimate {
    pub estimate: f64,
    pub stderr: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct FitReport {
    pub coefficients: BTreeMap<u32, CoefficientEstimate>,
    pub window: (f64, f64),
    pub model_powers: Vec<u32>,
    /// Euclidean norm of the fit residual vector.
    pub residual_norm: f64,
}

impl FitReport {
    pub fn coefficient(&self, power: u32) -> Option<f64> {
        self.coefficients.get(&power).map(|c| c.estimate)
    }

    pub fn to_json(&self) -> serde_json::Value {
        serde_json::to_value(self).expect("fit report serializes")
    }
}

/// Relative singular-value cutoff below which the design matrix counts as
/// rank deficient.
const RANK_TOL: f64 = 1e-13;

/// Fit `value − fixed_part(t) ≈ Σ_p c_p tᵖ` by least squares.
///
/// Columns are normalized before an SVD solve; standard errors come from
/// `σ² (AᵀA)⁻¹` with `σ² = RSS / (n − m)`.
pub fn fit_taylor(
    samples: &[(f64, f64)],
    fixed_part: &Polynomial,
    powers: &[u32],
) -> Result<FitReport> {
    let mut powers = powers.to_vec();
    powers.sort_unstable();
    powers.dedup();
    let m = powers.len();
    let n = samples.len();
    if m == 0 {
        return Err(Error::Invalid("no model powers".into()));
    }
    if n < m + 2 {
        return Err(Error::TooFewSamples {
            needed: m + 2,
            got: n,
        });
    }
    let mut ts: Vec<f64> = Vec::with_capacity(n);
    for &(t, v) in samples {
        if !(t > 0.0) || !t.is_finite() || !v.is_finite() {
            return Err(Error::Invalid(format!("bad sample ({t}, {v})")));
        }
        ts.push(t);
    }
    let mut sorted = ts.clone();
    sorted.sort_by(f64::total_cmp);
    if sorted.windows(2).any(|w| w[0] == w[1]) {
        return Err(Error::Invalid("sample times must be distinct".into()));
    }

    let mut a = DMatrix::from_fn(n, m, |i, j| ts[i].powi(powers[j] as i32));
    let b = DVector::from_fn(n, |i, _| samples[i].1 - fixed_part.eval(samples[i].0));
    let scales: Vec<f64> = (0..m).map(|j| a.column(j).norm()).collect();
    for (j, s) in scales.iter().enumerate() {
        a.column_mut(j).scale_mut(1.0 / s);
    }
    let svd = a.clone().svd(true, true);
    let smax = svd.singular_values.max();
    if svd.singular_values.iter().any(|&s| !(s > RANK_TOL * smax)) {
        return Err(Error::RankDeficient);
    }
    let x = svd
        .solve(&b, 0.0)
        .map_err(|e| Error::Invalid(e.to_string()))?;
    let resid = &b - &a * &x;
    let rss = resid.norm_squared();
    let sigma2 = rss / (n - m) as f64;
    let v_t = svd.v_t.as_ref().expect("requested V");
    let coefficients = powers
        .iter()
        .enumerate()
        .map(|(j, &p)| {
            // (AᵀA)⁻¹_jj = Σ_k V_jk² / s_k²
            let var: f64 = (0..m)
                .map(|k| (v_t[(k, j)] / svd.singular_values[k]).powi(2))
                .sum();
            (
                p,
                CoefficientEstimate {
                    estimate: x[j] / scales[j],
                    stderr: (sigma2 * var).sqrt() / scales[j],
                },
            )
        })
        .collect();
    Ok(FitReport {
        coefficients,
        window: (sorted[0], sorted[n - 1]),
        model_powers: powers,
        residual_norm: rss.sqrt(),
    })
}

/// `n` points spaced geometrically on `[lo, hi]`.
pub fn geometric_grid(lo: f64, hi: f64, n: usize) -> Vec<f64> {
    if n == 1 {
        return vec![lo];
    }
    let ratio = (hi / lo).powf(1.0 / (n - 1) as f64);
    (0..n)
        .map(|i| {
            if i + 1 == n {
                hi
            } else {
                lo * ratio.powi(i as i32)
            }
        })
        .collect()
}
