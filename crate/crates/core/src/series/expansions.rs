//! Exact expansions behind the small-time behaviour of the distance along a
//! horizontal curve.
//!
//! The chain is: `ψ(u) = (2u − sin 2u) / (4(1 − cos 2u))`, its inverse `φ`,
//! `1 / sinc²(φ(u))`, the coordinate series `x, y, z` of a curve leaving the
//! origin, and finally
//!
//! ```text
//! d²(ζ(0), ζ(t)) = (x² + y²) / sinc²(φ(z / (x² + y²)))
//! ```
//!
//! expanded in `t`.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

use super::{integer, HeadingPoly, PowerSeries};
use crate::error::{Error, Result};

/// Default truncation order for curve expansions: one past the `t⁶` term.
pub const DEFAULT_ORDER: usize = 8;

fn factorial(n: usize) -> BigInt {
    (1..=n).fold(BigInt::one(), |acc, k| acc * BigInt::from(k))
}

fn inv_factorial(n: usize, sign: i64) -> BigRational {
    BigRational::new(BigInt::from(sign), factorial(n))
}

pub fn sin_series(order: usize) -> PowerSeries {
    PowerSeries::new(
        (0..=order)
            .map(|i| match i % 4 {
                1 => inv_factorial(i, 1),
                3 => inv_factorial(i, -1),
                _ => BigRational::zero(),
            })
            .collect(),
    )
}

pub fn cos_series(order: usize) -> PowerSeries {
    PowerSeries::new(
        (0..=order)
            .map(|i| match i % 4 {
                0 => inv_factorial(i, 1),
                2 => inv_factorial(i, -1),
                _ => BigRational::zero(),
            })
            .collect(),
    )
}

/// `sin(u) / u = Σ (−1)ᵏ u²ᵏ / (2k + 1)!`.
pub fn sinc_series(order: usize) -> PowerSeries {
    PowerSeries::new(
        (0..=order)
            .map(|i| match i % 4 {
                0 => inv_factorial(i + 1, 1),
                2 => inv_factorial(i + 1, -1),
                _ => BigRational::zero(),
            })
            .collect(),
    )
}

/// Taylor series of `ψ` at 0, from the series of `2u − sin 2u` and
/// `4(1 − cos 2u)`.
pub fn psi_series(order: usize) -> PowerSeries {
    let two_u = PowerSeries::<BigRational>::variable(order + 3).scale(&integer(2));
    let num = two_u
        .try_sub(
            &sin_series(order + 3)
                .compose(&two_u)
                .expect("2u vanishes at 0"),
        )
        .expect("same order")
        .shift_down(3)
        .expect("2u − sin 2u = O(u³)");
    let den = PowerSeries::one(order + 3)
        .try_sub(
            &cos_series(order + 3)
                .compose(&two_u)
                .expect("2u vanishes at 0"),
        )
        .expect("same order")
        .scale(&integer(4))
        .shift_down(2)
        .expect("1 − cos 2u = O(u²)")
        .truncate(order);
    let quotient = num.try_div(&den).expect("denominator starts at 8");
    // ψ = u · quotient
    quotient.shift_up(1).truncate(order)
}

/// Series of `φ = ψ⁻¹`.
pub fn phi_series(order: usize) -> PowerSeries {
    psi_series(order)
        .revert()
        .expect("ψ(0) = 0 and ψ'(0) = 1/6")
}

/// `1 / sinc²(φ(u))`.
pub fn inv_sinc2_phi_series(order: usize) -> PowerSeries {
    let sinc_phi = sinc_series(order)
        .compose(&phi_series(order))
        .expect("φ(0) = 0");
    sinc_phi.pow(2).recip().expect("sinc(0) = 1")
}

/// Coordinate series of the horizontal curve leaving the origin with heading
/// `θ(t) = θ₀ + Σ_{i≥1} θᵢ tⁱ`.
///
/// `x` and `y` depend on the initial heading and carry the symbols
/// `cos θ₀, sin θ₀`; `z` is heading-free.
#[derive(Debug, Clone, PartialEq)]
pub struct CurveSeries {
    pub x: PowerSeries<HeadingPoly>,
    pub y: PowerSeries<HeadingPoly>,
    pub z: PowerSeries,
}

/// `theta` holds the polynomial coefficients `θ₀, θ₁, …` of the heading; the
/// value of `θ₀` only enters through the symbols `cos θ₀, sin θ₀`.
pub fn curve_series(theta: &[BigRational], order: usize) -> Result<CurveSeries> {
    if order < 2 {
        return Err(Error::Invalid(format!(
            "curve series needs order ≥ 2, got {order}"
        )));
    }
    let mut shift: Vec<BigRational> = theta.iter().take(order + 1).cloned().collect();
    if shift.is_empty() {
        shift.push(BigRational::zero());
    }
    shift[0] = BigRational::zero();
    let s = PowerSeries::from_polynomial(&shift, order);
    let lift = |p: PowerSeries| p.map(|q| HeadingPoly::from(q.clone()));
    let cos_s = lift(cos_series(order).compose(&s)?);
    let sin_s = lift(sin_series(order).compose(&s)?);
    let (c, sn) = (HeadingPoly::cos(), HeadingPoly::sin());

    let xdot = cos_s.scale(&c).try_sub(&sin_s.scale(&sn))?;
    let ydot = sin_s.scale(&c).try_add(&cos_s.scale(&sn))?;
    let x = xdot.integral();
    let y = ydot.integral();
    let zdot = x
        .try_mul(&ydot)?
        .try_sub(&y.try_mul(&xdot)?)?
        .scale(&HeadingPoly::from(BigRational::new(1.into(), 2.into())));
    let z = zdot.integral().heading_free()?;
    Ok(CurveSeries { x, y, z })
}

/// `x² + y²` along the curve; heading symbols must cancel.
pub fn xy_sq_series(theta: &[BigRational], order: usize) -> Result<PowerSeries> {
    let cs = curve_series(theta, order)?;
    cs.x.try_mul(&cs.x)?
        .try_add(&cs.y.try_mul(&cs.y)?)?
        .heading_free()
}

/// Expansion of `d²(ζ(0), ζ(t))` through `tᴺ`.
pub fn distance_sq_series(theta: &[BigRational], order: usize) -> Result<PowerSeries> {
    if order < 2 {
        return Err(Error::Invalid(format!(
            "distance series needs order ≥ 2, got {order}"
        )));
    }
    // z/(x²+y²) = t·(z/t³)/((x²+y²)/t²) loses two orders.
    let work = order + 2;
    let cs = curve_series(theta, work)?;
    let r2 =
        cs.x.try_mul(&cs.x)?
            .try_add(&cs.y.try_mul(&cs.y)?)?
            .heading_free()?;
    let num = cs.z.shift_down(3)?;
    let den = r2.shift_down(2)?.truncate(num.order());
    let ratio = num.try_div(&den)?.shift_up(1);
    debug_assert_eq!(ratio.order(), order);
    let correction = inv_sinc2_phi_series(order).compose(&ratio)?;
    r2.truncate(order).try_mul(&correction)
}

pub fn distance_sq_series_default(theta: &[BigRational]) -> Result<PowerSeries> {
    distance_sq_series(theta, DEFAULT_ORDER)
}
