//! Numerical toolkit for Ma-Minda classes of starlike and convex functions.
//!
//! The crate is organised bottom-up: [`series`] and [`jet`] carry the
//! arithmetic, [`psi`] and [`region`] describe the generators and their
//! image domains, [`numerics`] holds the scalar solvers, and the remaining
//! modules compute extremal functions, distortion bounds, Bohr radii,
//! convolution tests, radius constants and subordination checks.

pub mod bohr;
pub mod convolution;
pub mod distortion;
pub mod error;
pub mod extremal;
pub mod jet;
pub mod numerics;
pub mod psi;
pub mod radius;
pub mod region;
pub mod series;
pub mod subordination;

pub use error::{Error, NumericsError, PsiError, Result, SeriesError};
pub use psi::{PsiParams, PsiSpec};
pub use region::{Region, RegionState, RegionVerdict};
pub use series::TruncatedSeries;
