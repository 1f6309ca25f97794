use heisenberg_core::group::Point;
use heisenberg_core::series::parse_fraction;
use num_rational::BigRational;
use num_traits::ToPrimitive;

use crate::CliError;

fn items(s: &str) -> Vec<&str> {
    s.split(',').map(str::trim).collect()
}

/// Decimal or `p/q`.
pub fn number(name: &str, s: &str) -> Result<f64, CliError> {
    let s = s.trim();
    let v = if s.contains('/') {
        parse_fraction(s)
            .ok()
            .and_then(|q| q.to_f64())
            .ok_or_else(|| CliError::Config(format!("--{name}: cannot parse '{s}'")))?
    } else {
        s.parse::<f64>()
            .map_err(|_| CliError::Config(format!("--{name}: cannot parse '{s}'")))?
    };
    if !v.is_finite() {
        return Err(CliError::Config(format!("--{name}: '{s}' is not finite")));
    }
    Ok(v)
}

pub fn positive(name: &str, s: &str) -> Result<f64, CliError> {
    let v = number(name, s)?;
    if v <= 0.0 {
        return Err(CliError::Config(format!(
            "--{name} must be positive, got {v}"
        )));
    }
    Ok(v)
}

pub fn numbers(name: &str, s: &str) -> Result<Vec<f64>, CliError> {
    items(s).into_iter().map(|x| number(name, x)).collect()
}

/// Exact fractions `p/q` or integers; decimals are rejected.
pub fn fractions(name: &str, s: &str) -> Result<Vec<BigRational>, CliError> {
    items(s)
        .into_iter()
        .map(|x| {
            parse_fraction(x).map_err(|_| {
                CliError::Config(format!("--{name}: '{x}' is not an exact fraction p/q (use --mode numeric for decimals)"))
            })
        })
        .collect()
}

pub fn point(name: &str, s: &str) -> Result<Point, CliError> {
    match numbers(name, s)?.as_slice() {
        &[x, y, z] => Ok(Point::new(x, y, z)),
        other => Err(CliError::Config(format!(
            "--{name} needs three values, got {}",
            other.len()
        ))),
    }
}

pub fn window(name: &str, s: &str) -> Result<(f64, f64), CliError> {
    match numbers(name, s)?.as_slice() {
        &[lo, hi] if lo > 0.0 && hi > lo => Ok((lo, hi)),
        _ => Err(CliError::Config(format!(
            "--{name} needs 0 < t_min < t_max, got '{s}'"
        ))),
    }
}
