use std::f64::consts::PI;

use serde::{Deserialize, Serialize};

use super::ExperimentError;
use crate::geom::{distance, integrate_over_loop_with, Integrator, Surface, TailleValue, ENDPOINT_TOL};
use crate::paths::Path;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct BohrResult {
    pub enclosed: TailleValue,
    pub enclosed_real: f64,
    pub quantum_n: i64,
    /// `n · enclosed / τ`.
    pub action_ratio: f64,
    pub quantized: bool,
}

/// A closed polyline approximating the circle of radius `r` about
/// `(q0, p0)` with `segments` equal chords, starting at angle `phase`.
/// `clockwise` refers to the (q, p) picture; on the phase plane that is the
/// positive sense of dp∧dq.
pub fn phase_plane_circle(
    surface: Surface,
    center: [f64; 2],
    r: f64,
    segments: usize,
    phase: f64,
    clockwise: bool,
) -> Result<Path, ExperimentError> {
    if segments < 3 || !(r.is_finite() && r > 0.0) {
        return Err(ExperimentError::InvalidInput("a circle needs r > 0 and at least 3 segments".into()));
    }
    let sense = if clockwise { -1.0 } else { 1.0 };
    let pts = (0..=segments)
        .map(|k| {
            let a = phase + sense * 2.0 * PI * (k % segments) as f64 / segments as f64;
            surface.point(&[center[0] + r * a.cos(), center[1] + r * a.sin()])
        })
        .collect::<Result<Vec<_>, _>>()?;
    Ok(Path::from_waypoints(surface, &pts)?)
}

/// Integrates the form over the cone from the base point of the closed path
/// and tests whether `n · enclosed / τ` is within `tol` of an integer.
pub fn bohr_check(
    surface: &Surface,
    path: &Path,
    n: i64,
    tol: f64,
    integrator: Integrator,
) -> Result<BohrResult, ExperimentError> {
    let tau = surface.taille();
    if tau <= 0.0 {
        return Err(ExperimentError::InvalidTaille);
    }
    if path.surface() != *surface {
        return Err(crate::paths::PathError::SurfaceMismatch.into());
    }
    if distance(surface, &path.start(), &path.end())? > ENDPOINT_TOL || path.winding() != [0, 0] {
        return Err(ExperimentError::InvalidInput("path must be closed and contractible".into()));
    }
    let loop_ = integrate_over_loop_with(surface, path.segments(), Some(&path.start()), integrator)?;
    let ratio = n as f64 * loop_.value / tau;
    Ok(BohrResult {
        enclosed: TailleValue::new(loop_.value, tau),
        enclosed_real: loop_.value,
        quantum_n: n,
        action_ratio: ratio,
        quantized: (ratio - ratio.round()).abs() <= tol,
    })
}
