//! Numerical experiments built on the geometric core: Taylor coefficient
//! fits, recovery of the isometry between congruent curves, and Euler
//! spiral matching.

pub mod fit;
pub mod fresnel;
pub mod isometry;
pub mod spiral;
pub mod theorem;

pub use fit::{fit_taylor, CoefficientEstimate, FitReport, Polynomial};
pub use fresnel::fresnel;
pub use isometry::{reconstruct_isometry, Reconstruction};
pub use spiral::{fit_circle, match_euler_spiral, CircleFit, SpiralMatch};
pub use theorem::{fit_distance_expansion, TheoremFitConfig};
