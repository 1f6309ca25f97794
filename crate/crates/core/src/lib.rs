//! Sub-Riemannian geometry of the Heisenberg group.
//!
//! The crate evaluates exact Carnot–Carathéodory distances, integrates
//! unit-speed horizontal curves from a heading profile, and checks the
//! small-time expansion of the distance between two points of such a curve
//! both with exact rational series and with numerical coefficient fits.
//!
//! Modules:
//! - [`group`]: points, frame vectors, group law, rotations, dilations.
//! - [`curves`]: heading profiles, curve integration, planar projection.
//! - [`geodesics`]: closed-form geodesics.
//! - [`distance`]: the distance function and the `ψ`/`φ` pair.
//! - [`series`]: exact truncated power series and the distance expansion.
//! - [`connections`]: Levi-Civita and Tanaka–Webster derivatives, ε-distances.
//! - [`analysis`]: coefficient fitting, isometry recovery, Euler spirals.

#![allow(clippy::neg_cmp_op_on_partial_ord, clippy::needless_range_loop)]

pub mod analysis;
pub mod connections;
pub mod curves;
pub mod distance;
pub mod error;
pub mod geodesics;
pub mod group;
pub mod series;

pub use curves::{PlanarCurve, ThetaProfile, Trajectory};
pub use error::{Error, Result};
pub use geodesics::GeodesicParams;
pub use group::{Isometry, Point, TangentVec};
pub use series::PowerSeries;
