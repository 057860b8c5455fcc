//! End-to-end scenarios: the de Broglie wavelength on the phase plane,
//! Bohr's closed-orbit condition, the deflected particle on the unit sphere,
//! and the non-triviality of the restricted cocycle on a triangulated
//! sphere.

mod bohr;
mod debroglie;
mod nontriviality;
mod sphere;
mod triangulation;

pub use bohr::{bohr_check, phase_plane_circle, BohrResult};
pub use debroglie::{debroglie, debroglie_path, wavelength_from_trace, DeBroglieConfig, DeBroglieResult};
pub use nontriviality::{nontriviality_report, restricted_omega, ContinuityReport, ModTailleReport, NontrivialityReport, RealReport};
pub use sphere::{sphere_experiment, SphereConfig, SphereExperimentResult};
pub use triangulation::{build_triangulated_sphere, TriangulatedSphere, MAX_LEVEL};

use thiserror::Error;

use crate::cohomology::CohomError;
use crate::deformation::DeformationError;
use crate::geom::GeomError;
use crate::paths::PathError;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum ExperimentError {
    #[error("only {wraps} phase wraps captured; at least 4 are needed")]
    InsufficientSamples { wraps: usize },
    #[error("invalid input: {0}")]
    InvalidInput(String),
    #[error("subdivision level {0} exceeds the maximum of {MAX_LEVEL}")]
    LevelTooLarge(u32),
    #[error("quantization needs a positive taille")]
    InvalidTaille,
    #[error(transparent)]
    Deformation(#[from] DeformationError),
    #[error(transparent)]
    Geom(#[from] GeomError),
    #[error(transparent)]
    Path(#[from] PathError),
    #[error(transparent)]
    Cohom(#[from] CohomError),
}
