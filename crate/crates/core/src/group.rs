//! Group structure of the Heisenberg group: points, the left-invariant frame,
//! left translations, rotations about the z-axis and dilations.
//!
//! Points are plain coordinate triples. Tangent vectors are expressed on the
//! frame `X1 = ∂x − (y/2)∂z`, `X2 = ∂y + (x/2)∂z`, `X3 = ∂z`; the horizontal
//! distribution is spanned by `X1, X2`.

use num_traits::{Num, ToPrimitive};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// A point `(x, y, z)` of the Heisenberg group.
///
/// The scalar is generic so that the group law can be evaluated exactly over
/// rationals; every metric operation works in `f64`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default, Serialize, Deserialize)]
pub struct Point<T = f64> {
    pub x: T,
    pub y: T,
    pub z: T,
}

impl<T> Point<T> {
    pub const fn new(x: T, y: T, z: T) -> Self {
        Self { x, y, z }
    }
}

fn half<T: Num>() -> T {
    T::one() / (T::one() + T::one())
}

impl<T: Num + Clone> Point<T> {
    pub fn origin() -> Self {
        Self::new(T::zero(), T::zero(), T::zero())
    }

    /// Group law `p * q`.
    pub fn mul(&self, q: &Self) -> Self {
        let cross = self.x.clone() * q.y.clone() - self.y.clone() * q.x.clone();
        Self::new(
            self.x.clone() + q.x.clone(),
            self.y.clone() + q.y.clone(),
            self.z.clone() + q.z.clone() + half::<T>() * cross,
        )
    }

    pub fn inverse(&self) -> Self {
        let neg = |v: &T| T::zero() - v.clone();
        Self::new(neg(&self.x), neg(&self.y), neg(&self.z))
    }

    /// Dilation `δ_r (x, y, z) = (r x, r y, r² z)`.
    pub fn dilate(&self, r: &T) -> Result<Self>
    where
        T: PartialOrd + ToPrimitive,
    {
        if !(*r > T::zero()) {
            return Err(Error::NonPositiveDilation(r.to_f64().unwrap_or(f64::NAN)));
        }
        Ok(self.dilate_unchecked(r))
    }

    pub(crate) fn dilate_unchecked(&self, r: &T) -> Self {
        Self::new(
            r.clone() * self.x.clone(),
            r.clone() * self.y.clone(),
            r.clone() * r.clone() * self.z.clone(),
        )
    }
}

impl Point<f64> {
    pub fn is_finite(&self) -> bool {
        self.x.is_finite() && self.y.is_finite() && self.z.is_finite()
    }

    /// Rotation `R_α` about the z-axis:
    /// `(x, y, z) ↦ (x cos α + y sin α, −x sin α + y cos α, z)`.
    pub fn rotate(&self, alpha: f64) -> Self {
        let (s, c) = alpha.sin_cos();
        Self::new(c * self.x + s * self.y, -s * self.x + c * self.y, self.z)
    }

    /// Euclidean distance of the ambient coordinates.
    pub fn euclidean_distance(&self, other: &Self) -> f64 {
        ((self.x - other.x).powi(2) + (self.y - other.y).powi(2) + (self.z - other.z).powi(2))
            .sqrt()
    }

    pub fn max_abs_diff(&self, other: &Self) -> f64 {
        (self.x - other.x)
            .abs()
            .max((self.y - other.y).abs())
            .max((self.z - other.z).abs())
    }
}

/// Group law `p * q`.
pub fn mul<T: Num + Clone>(p: &Point<T>, q: &Point<T>) -> Point<T> {
    p.mul(q)
}

pub fn inverse<T: Num + Clone>(p: &Point<T>) -> Point<T> {
    p.inverse()
}

pub fn rotate(alpha: f64, p: &Point) -> Point {
    p.rotate(alpha)
}

pub fn dilate(r: f64, p: &Point) -> Result<Point> {
    p.dilate(&r)
}

/// Coefficients `(a, b, c)` of a tangent vector on the frame `(X1, X2, X3)`.
#[derive(Debug, Clone, Copy, PartialEq, Default, Serialize, Deserialize)]
pub struct TangentVec {
    pub a: f64,
    pub b: f64,
    pub c: f64,
}

impl TangentVec {
    pub const fn new(a: f64, b: f64, c: f64) -> Self {
        Self { a, b, c }
    }

    pub const fn horizontal(a: f64, b: f64) -> Self {
        Self { a, b, c: 0.0 }
    }

    pub fn is_horizontal(&self) -> bool {
        self.c == 0.0
    }

    /// Frame coefficients of the ambient vector `(vx, vy, vz)` based at `base`.
    pub fn from_ambient(base: &Point, vx: f64, vy: f64, vz: f64) -> Self {
        // vz = c − (y/2) a + (x/2) b
        let c = vz + 0.5 * base.y * vx - 0.5 * base.x * vy;
        Self::new(vx, vy, c)
    }

    /// Ambient components `(∂x, ∂y, ∂z)` of this vector based at `base`.
    pub fn to_ambient(&self, base: &Point) -> [f64; 3] {
        [
            self.a,
            self.b,
            self.c - 0.5 * base.y * self.a + 0.5 * base.x * self.b,
        ]
    }

    /// Push-forward by the dilation `δ_r`: frame coefficients scale by `r`
    /// horizontally and `r²` vertically.
    pub fn dilate(&self, r: f64) -> Result<Self> {
        if r <= 0.0 {
            return Err(Error::NonPositiveDilation(r));
        }
        Ok(Self::new(r * self.a, r * self.b, r * r * self.c))
    }

    /// Push-forward by `R_α`, which maps `X1 ↦ cos α X1 − sin α X2` and
    /// `X2 ↦ sin α X1 + cos α X2`.
    pub fn rotate(&self, alpha: f64) -> Self {
        let (s, c) = alpha.sin_cos();
        Self::new(c * self.a + s * self.b, -s * self.a + c * self.b, self.c)
    }
}

/// Sub-Riemannian norm of a horizontal vector.
pub fn sr_norm(v: &TangentVec) -> Result<f64> {
    if !v.is_horizontal() {
        return Err(Error::NotHorizontal(v.c));
    }
    Ok(v.a.hypot(v.b))
}

/// The isometry `L_u ∘ R_α`: rotate about the z-axis first, then left
/// translate by `u`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Isometry {
    pub translation: Point,
    pub angle: f64,
}

impl Default for Isometry {
    fn default() -> Self {
        Self::identity()
    }
}

impl Isometry {
    pub fn identity() -> Self {
        Self {
            translation: Point::origin(),
            angle: 0.0,
        }
    }

    pub fn new(translation: Point, angle: f64) -> Self {
        Self { translation, angle }
    }

    pub fn rotation(angle: f64) -> Self {
        Self::new(Point::origin(), angle)
    }

    pub fn translation(u: Point) -> Self {
        Self::new(u, 0.0)
    }

    pub fn apply(&self, p: &Point) -> Point {
        self.translation.mul(&p.rotate(self.angle))
    }

    /// `self ∘ other`. Rotations are automorphisms of the group law, so
    /// `L_u R_α L_v R_β = L_{u * R_α v} R_{α+β}`.
    pub fn compose(&self, other: &Isometry) -> Isometry {
        Isometry::new(
            self.translation.mul(&other.translation.rotate(self.angle)),
            self.angle + other.angle,
        )
    }

    pub fn inverse(&self) -> Isometry {
        let angle = -self.angle;
        Isometry::new(self.translation.inverse().rotate(angle), angle)
    }

    /// Heading of a horizontal velocity after applying the isometry.
    pub fn map_heading(&self, theta: f64) -> f64 {
        theta - self.angle
    }
}

pub fn apply_isometry(i: &Isometry, p: &Point) -> Point {
    i.apply(p)
}
