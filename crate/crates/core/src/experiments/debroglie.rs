use std::f64::consts::PI;

use serde::{Deserialize, Serialize};

use super::ExperimentError;
use crate::deformation::{deflection_trace, GeometricCocycle, Parameter, PhaseTrace};
use crate::geom::{Integrator, Surface};
use crate::paths::Path;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct DeBroglieConfig {
    pub h: f64,
    pub p: f64,
    pub x_max: f64,
    pub samples: usize,
    #[serde(default)]
    pub integrator: Integrator,
}

impl Default for DeBroglieConfig {
    fn default() -> Self {
        DeBroglieConfig {
            h: 1.0,
            p: 2.0,
            x_max: 2.0,
            samples: 2000,
            integrator: Integrator::default(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct DeBroglieResult {
    pub config: DeBroglieConfig,
    pub trace: PhaseTrace,
    pub wraps: usize,
    pub wavelength_estimate: f64,
    pub wavelength_closed_form: f64,
}

/// The two legs: up the momentum axis from rest to momentum `p`, then along
/// the position axis for `x_max`.
pub fn debroglie_path(surface: Surface, p: f64, x_max: f64) -> Result<(Path, Path), ExperimentError> {
    let pt = |q: f64, m: f64| surface.point(&[q, m]);
    let kick = Path::from_waypoints(surface, &[pt(0.0, 0.0)?, pt(0.0, p)?])?;
    let drift = Path::from_waypoints(surface, &[pt(0.0, p)?, pt(x_max, p)?])?;
    Ok((kick, drift))
}

/// Mean spacing between successive crossings of the unwrapped weight phase
/// through multiples of 2π, the starting zero phase counted as the first
/// crossing. Needs at least four crossings.
pub fn wavelength_from_trace(trace: &PhaseTrace) -> Result<(f64, usize), ExperimentError> {
    let pts: Vec<(f64, f64)> = trace
        .samples
        .iter()
        .filter_map(|s| s.weight.map(|w| (s.x, w.arg())))
        .collect();
    let Some(&(x0, a0)) = pts.first() else {
        return Err(ExperimentError::InsufficientSamples { wraps: 0 });
    };
    // Unwrap, measuring phase from the first sample.
    let mut unwrapped = Vec::with_capacity(pts.len());
    let mut prev = a0;
    let mut acc = 0.0;
    unwrapped.push((x0, 0.0));
    for &(x, a) in &pts[1..] {
        let mut d = a - prev;
        d -= 2.0 * PI * (d / (2.0 * PI)).round();
        acc += d;
        prev = a;
        unwrapped.push((x, acc));
    }
    let sign = if unwrapped.last().is_some_and(|u| u.1 < 0.0) { -1.0 } else { 1.0 };
    let mut crossings = vec![x0];
    let mut k = 1.0;
    for w in unwrapped.windows(2) {
        let (xa, ya) = (w[0].0, sign * w[0].1);
        let (xb, yb) = (w[1].0, sign * w[1].1);
        while yb >= 2.0 * PI * k && ya < 2.0 * PI * k {
            let target = 2.0 * PI * k;
            crossings.push(xa + (target - ya) * (xb - xa) / (yb - ya));
            k += 1.0;
        }
    }
    let wraps = crossings.len();
    if wraps < 4 {
        return Err(ExperimentError::InsufficientSamples { wraps });
    }
    Ok(((crossings[wraps - 1] - crossings[0]) / (wraps - 1) as f64, wraps))
}

/// Samples the n = 1 deflection weight along the position leg and measures
/// its wavelength.
pub fn debroglie(config: DeBroglieConfig) -> Result<DeBroglieResult, ExperimentError> {
    let DeBroglieConfig { h, p, x_max, samples, integrator } = config;
    for (name, v) in [("h", h), ("p", p), ("x_max", x_max)] {
        if !(v.is_finite() && v > 0.0) {
            return Err(ExperimentError::InvalidInput(format!("{name} must be positive, got {v}")));
        }
    }
    if samples < 2 {
        return Err(ExperimentError::InvalidInput("at least two samples are needed".into()));
    }
    let surface = Surface::phase_plane(h)?;
    let cx = GeometricCocycle::new(surface, Parameter::Quantum(1), integrator)?;
    let (kick, drift) = debroglie_path(surface, p, x_max)?;
    let xs: Vec<f64> = (0..samples).map(|i| x_max * i as f64 / (samples - 1) as f64).collect();
    let trace = deflection_trace(&cx, &kick, &drift, &xs)?;
    let (wavelength_estimate, wraps) = wavelength_from_trace(&trace)?;
    Ok(DeBroglieResult {
        config,
        trace,
        wraps,
        wavelength_estimate,
        wavelength_closed_form: h / p,
    })
}
