//! Truncated univariate power series with exact coefficients.
//!
//! A [`PowerSeries`] of order `N` stores `c₀, …, c_N` and stands for
//! `Σ cᵢ tⁱ + O(t^{N+1})`. Binary operations require equal orders and never
//! extend the order; operations that lose precision (division by `tᵏ`) lower
//! it explicitly.

mod expansions;
mod heading;

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::error::{Error, Result};

pub use expansions::{
    cos_series, curve_series, distance_sq_series, distance_sq_series_default, inv_sinc2_phi_series,
    phi_series, psi_series, sin_series, sinc_series, xy_sq_series, CurveSeries, DEFAULT_ORDER,
};
pub use heading::HeadingPoly;

/// Exact coefficient ring for series.
pub trait Coefficient:
    Clone
    + PartialEq
    + fmt::Debug
    + Zero
    + One
    + Add<Output = Self>
    + Sub<Output = Self>
    + Mul<Output = Self>
    + Neg<Output = Self>
    + From<BigRational>
{
}

impl<T> Coefficient for T where
    T: Clone
        + PartialEq
        + fmt::Debug
        + Zero
        + One
        + Add<Output = T>
        + Sub<Output = T>
        + Mul<Output = T>
        + Neg<Output = T>
        + From<BigRational>
{
}

pub fn rational(n: i64, d: i64) -> BigRational {
    BigRational::new(BigInt::from(n), BigInt::from(d))
}

pub fn integer(n: i64) -> BigRational {
    BigRational::from_integer(BigInt::from(n))
}

#[derive(Debug, Clone, PartialEq)]
pub struct PowerSeries<R = BigRational> {
    coeffs: Vec<R>,
}

/// Arithmetic selector for [`ps_arith`].
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SeriesOp {
    Add,
    Sub,
    Mul,
    Div,
}

impl<R: Coefficient> PowerSeries<R> {
    /// Series with the given coefficients; the order is `coeffs.len() − 1`.
    pub fn new(coeffs: Vec<R>) -> Self {
        assert!(!coeffs.is_empty(), "a series needs at least c0");
        Self { coeffs }
    }

    /// Polynomial coefficients padded with zeros (or truncated) to `order`.
    pub fn from_polynomial(poly: &[R], order: usize) -> Self {
        let coeffs = (0..=order)
            .map(|i| poly.get(i).cloned().unwrap_or_else(R::zero))
            .collect();
        Self { coeffs }
    }

    pub fn zero(order: usize) -> Self {
        Self {
            coeffs: vec![R::zero(); order + 1],
        }
    }

    pub fn one(order: usize) -> Self {
        Self::constant(R::one(), order)
    }

    pub fn constant(c: R, order: usize) -> Self {
        let mut s = Self::zero(order);
        s.coeffs[0] = c;
        s
    }

    /// The series `t`.
    pub fn variable(order: usize) -> Self {
        let mut s = Self::zero(order);
        if order >= 1 {
            s.coeffs[1] = R::one();
        }
        s
    }

    pub fn order(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn coeffs(&self) -> &[R] {
        &self.coeffs
    }

    /// Coefficient of `tⁱ`.
    ///
    /// # Panics
    /// If `i` exceeds the order: that coefficient is unknown.
    pub fn coeff(&self, i: usize) -> &R {
        &self.coeffs[i]
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(Zero::is_zero)
    }

    /// Drop coefficients above `order`.
    pub fn truncate(&self, order: usize) -> Self {
        assert!(order <= self.order(), "truncate cannot raise the order");
        Self {
            coeffs: self.coeffs[..=order].to_vec(),
        }
    }

    fn check_order(&self, other: &Self) -> Result<()> {
        if self.order() != other.order() {
            return Err(Error::OrderMismatch(self.order(), other.order()));
        }
        Ok(())
    }

    pub fn try_add(&self, other: &Self) -> Result<Self> {
        self.check_order(other)?;
        Ok(self.zip_with(other, |a, b| a.clone() + b.clone()))
    }

    pub fn try_sub(&self, other: &Self) -> Result<Self> {
        self.check_order(other)?;
        Ok(self.zip_with(other, |a, b| a.clone() - b.clone()))
    }

    pub fn try_mul(&self, other: &Self) -> Result<Self> {
        self.check_order(other)?;
        Ok(self.mul_unchecked(other))
    }

    fn zip_with(&self, other: &Self, f: impl Fn(&R, &R) -> R) -> Self {
        Self {
            coeffs: self
                .coeffs
                .iter()
                .zip(&other.coeffs)
                .map(|(a, b)| f(a, b))
                .collect(),
        }
    }

    fn mul_unchecked(&self, other: &Self) -> Self {
        let n = self.order();
        let mut out = vec![R::zero(); n + 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs[..=n - i].iter().enumerate() {
                out[i + j] = out[i + j].clone() + a.clone() * b.clone();
            }
        }
        Self { coeffs: out }
    }

    pub fn scale(&self, k: &R) -> Self {
        Self {
            coeffs: self.coeffs.iter().map(|c| c.clone() * k.clone()).collect(),
        }
    }

    pub fn pow(&self, e: u32) -> Self {
        let mut acc = Self::one(self.order());
        for _ in 0..e {
            acc = acc.mul_unchecked(self);
        }
        acc
    }

    /// `outer ∘ inner`, by Horner's scheme. The inner series must vanish at 0.
    pub fn compose(&self, inner: &Self) -> Result<Self> {
        self.check_order(inner)?;
        if !inner.coeffs[0].is_zero() {
            return Err(Error::NonzeroInnerConstant);
        }
        let mut acc = Self::constant(self.coeffs[self.order()].clone(), self.order());
        for c in self.coeffs.iter().rev().skip(1) {
            acc = acc.mul_unchecked(inner);
            acc.coeffs[0] = acc.coeffs[0].clone() + c.clone();
        }
        Ok(acc)
    }

    pub fn derivative(&self) -> Self {
        let n = self.order();
        let mut coeffs: Vec<R> = (1..=n)
            .map(|i| self.coeffs[i].clone() * R::from(integer(i as i64)))
            .collect();
        if coeffs.is_empty() {
            coeffs.push(R::zero());
        }
        // the top coefficient of the derivative is unknown; keep order n − 1
        Self { coeffs }
    }

    /// `∫₀ᵗ`, truncated to the same order.
    pub fn integral(&self) -> Self {
        let n = self.order();
        let mut coeffs = vec![R::zero(); n + 1];
        for i in 0..n {
            coeffs[i + 1] = self.coeffs[i].clone() * R::from(rational(1, i as i64 + 1));
        }
        Self { coeffs }
    }

    /// Divide by `tᵏ`. The first `k` coefficients must vanish; the order drops
    /// by `k`.
    pub fn shift_down(&self, k: usize) -> Result<Self> {
        if k > self.order() {
            return Err(Error::Invalid(format!(
                "cannot divide an order-{} series by t^{k}",
                self.order()
            )));
        }
        if self.coeffs[..k].iter().any(|c| !c.is_zero()) {
            return Err(Error::Invalid(format!("series is not divisible by t^{k}")));
        }
        Ok(Self {
            coeffs: self.coeffs[k..].to_vec(),
        })
    }

    /// Multiply by `tᵏ`; the order rises by `k`.
    pub fn shift_up(&self, k: usize) -> Self {
        let mut coeffs = vec![R::zero(); k];
        coeffs.extend(self.coeffs.iter().cloned());
        Self { coeffs }
    }

    pub fn map<S: Coefficient>(&self, f: impl Fn(&R) -> S) -> PowerSeries<S> {
        PowerSeries {
            coeffs: self.coeffs.iter().map(f).collect(),
        }
    }
}

impl PowerSeries<BigRational> {
    /// `self / other`, solving for the quotient coefficients one by one.
    pub fn try_div(&self, other: &Self) -> Result<Self> {
        self.check_order(other)?;
        let b0 = &other.coeffs[0];
        if b0.is_zero() {
            return Err(Error::ZeroLeadingCoefficient);
        }
        let n = self.order();
        let mut q: Vec<BigRational> = Vec::with_capacity(n + 1);
        for k in 0..=n {
            let mut acc = self.coeffs[k].clone();
            for j in 0..k {
                acc -= &q[j] * &other.coeffs[k - j];
            }
            q.push(acc / b0);
        }
        Ok(Self { coeffs: q })
    }

    pub fn recip(&self) -> Result<Self> {
        Self::one(self.order()).try_div(self)
    }

    /// Compositional inverse: `r` with `self ∘ r = t` through the order.
    ///
    /// Lagrange inversion: `[tᵏ] r = (1/k) [uᵏ⁻¹] (u / s(u))ᵏ`.
    pub fn revert(&self) -> Result<Self> {
        let n = self.order();
        if n < 1 || !self.coeffs[0].is_zero() || self.coeffs[1].is_zero() {
            return Err(Error::NotInvertible);
        }
        let w = self.shift_down(1)?.recip()?;
        let mut r = Self::zero(n);
        let mut power = w.clone();
        for k in 1..=n {
            r.coeffs[k] = power.coeffs[k - 1].clone() / BigRational::from_integer(BigInt::from(k));
            if k < n {
                power = power.mul_unchecked(&w);
            }
        }
        Ok(r)
    }

    /// Coefficients as `"num/den"` strings.
    pub fn to_fraction_strings(&self) -> Vec<String> {
        self.coeffs.iter().map(fraction_string).collect()
    }

    pub fn to_f64(&self) -> Vec<f64> {
        use num_traits::ToPrimitive;
        self.coeffs
            .iter()
            .map(|c| c.to_f64().unwrap_or(f64::NAN))
            .collect()
    }

    /// JSON array of `"num/den"` strings.
    pub fn to_json(&self) -> serde_json::Value {
        serde_json::Value::from(self.to_fraction_strings())
    }

    pub fn from_fraction_strings<S: AsRef<str>>(items: &[S]) -> Result<Self> {
        if items.is_empty() {
            return Err(Error::Invalid("empty coefficient list".into()));
        }
        let coeffs = items
            .iter()
            .map(|s| parse_fraction(s.as_ref()))
            .collect::<Result<Vec<_>>>()?;
        Ok(Self { coeffs })
    }
}

impl PowerSeries<HeadingPoly> {
    /// Drop the heading symbols, failing if any coefficient still depends on
    /// the initial heading.
    pub fn heading_free(&self) -> Result<PowerSeries<BigRational>> {
        let coeffs = self
            .coeffs
            .iter()
            .enumerate()
            .map(|(i, c)| {
                c.to_rational()
                    .ok_or_else(|| Error::HeadingDependent(format!("t^{i}: {c}")))
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(PowerSeries { coeffs })
    }
}

/// `"num/den"` rendering, always with an explicit denominator.
pub fn fraction_string(q: &BigRational) -> String {
    format!("{}/{}", q.numer(), q.denom())
}

/// Parse `"p/q"` or an integer.
pub fn parse_fraction(s: &str) -> Result<BigRational> {
    let s = s.trim();
    let bad = || Error::Invalid(format!("not a fraction: {s:?}"));
    match s.split_once('/') {
        Some((n, d)) => {
            let n: BigInt = n.trim().parse().map_err(|_| bad())?;
            let d: BigInt = d.trim().parse().map_err(|_| bad())?;
            if d.is_zero() {
                return Err(bad());
            }
            Ok(BigRational::new(n, d))
        }
        None => Ok(BigRational::from_integer(s.parse().map_err(|_| bad())?)),
    }
}

/// Truncated arithmetic on two series of the same order.
pub fn ps_arith(a: &PowerSeries, b: &PowerSeries, op: SeriesOp) -> Result<PowerSeries> {
    match op {
        SeriesOp::Add => a.try_add(b),
        SeriesOp::Sub => a.try_sub(b),
        SeriesOp::Mul => a.try_mul(b),
        SeriesOp::Div => a.try_div(b),
    }
}

pub fn ps_compose<R: Coefficient>(
    outer: &PowerSeries<R>,
    inner: &PowerSeries<R>,
) -> Result<PowerSeries<R>> {
    outer.compose(inner)
}

pub fn ps_revert(s: &PowerSeries) -> Result<PowerSeries> {
    s.revert()
}

impl<R: Coefficient + fmt::Display> fmt::Display for PowerSeries<R> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut wrote = false;
        for (i, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            if wrote {
                write!(f, " + ")?;
            }
            wrote = true;
            match i {
                0 => write!(f, "{c}")?,
                1 => write!(f, "({c})·t")?,
                _ => write!(f, "({c})·t^{i}")?,
            }
        }
        if !wrote {
            write!(f, "0")?;
        }
        write!(f, " + O(t^{})", self.order() + 1)
    }
}
