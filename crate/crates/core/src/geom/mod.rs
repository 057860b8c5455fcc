//! Model surfaces, their points and geodesics, the canonical closed 2-form on
//! each surface, and numerical integration of that form over parameterized
//! sheets and closed geodesic loops.
//!
//! Every surface here is either flat (the Euclidean plane, the phase plane and
//! the flat torus, whose universal cover is the plane) or the round unit
//! sphere. Geodesics are therefore available in closed form; the only numerical
//! machinery is the quadrature in [`quadrature`].

mod filling;
mod geodesic;
mod point;
pub mod quadrature;
mod surface;
mod taille_value;

pub use filling::{integrate_over_loop, integrate_over_loop_from, integrate_over_loop_with, Integrator, LoopIntegral};
pub use geodesic::{distance, geodesic_between, geodesic_triangle_area, GeodesicSegment};
pub(crate) use geodesic::winding_of;
pub use point::Point;
pub use quadrature::{integrate_form_over_sheet, midpoint_sum, SheetIntegral};
pub use surface::{Surface, SurfaceKind};
pub use taille_value::TailleValue;

use thiserror::Error;

/// Endpoint-match tolerance, in intrinsic distance.
pub const ENDPOINT_TOL: f64 = 1e-9;

/// Minimum-distance-to-antipode below which sphere geodesics are treated as
/// non-unique, and half-period tie tolerance on the torus.
pub const CUT_LOCUS_TOL: f64 = 1e-9;

/// Default quadrature tolerance.
pub const DEFAULT_TOL: f64 = 1e-8;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum GeomError {
    #[error("invalid surface: {0}")]
    InvalidSurface(String),
    #[error("invalid input: {0}")]
    InvalidInput(String),
    #[error("point does not belong to a {0} surface")]
    SurfaceMismatch(&'static str),
    #[error("shortest geodesic is not unique")]
    NonUniqueGeodesic,
    #[error("arclength {value} outside [0, {length}]")]
    OutOfRange { value: f64, length: f64 },
    #[error("quadrature hit the refinement limit (value {value}, error estimate {error_estimate})")]
    RefinementLimit { value: f64, error_estimate: f64 },
    #[error("no admissible apex for a cone filling of the loop")]
    NoFillingApex,
}
