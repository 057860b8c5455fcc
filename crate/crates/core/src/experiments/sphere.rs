use std::f64::consts::PI;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use super::ExperimentError;
use crate::deformation::{deflection_trace, CocycleEval, GeometricCocycle, Parameter, PhaseTrace};
use crate::geom::{GeodesicSegment, Integrator, Surface};
use crate::paths::Path;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SphereConfig {
    /// Starting colatitude in degrees, 0 (north pole) through 90 (equator).
    pub theta0_deg: f64,
    pub n: i64,
    pub samples_per_circuit: usize,
    pub circuits: usize,
    #[serde(default = "exact")]
    pub integrator: Integrator,
}

fn exact() -> Integrator {
    Integrator::Exact
}

impl Default for SphereConfig {
    fn default() -> Self {
        SphereConfig {
            theta0_deg: 0.0,
            n: 1,
            samples_per_circuit: 360,
            circuits: 1,
            integrator: Integrator::Exact,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SphereExperimentResult {
    pub config: SphereConfig,
    pub trace: PhaseTrace,
    /// Real deflection phase after one full circuit.
    pub circuit_phase: f64,
    /// `2π n · circuit_phase / τ`.
    pub total_phase_change: f64,
    /// Weight at the end of each circuit.
    pub circuit_end_weights: Vec<Complex64>,
    /// Largest departure of the weight's argument from `nφ/2`, reported when
    /// the start is the pole.
    pub linearity_deviation: Option<f64>,
    /// Largest distance of a defined weight from the nearer of ±1.
    pub max_sign_deviation: f64,
    /// Longitudes (interpolated between samples) where the weight's real
    /// part changes sign.
    pub sign_flips: Vec<f64>,
    /// Longitude of the steepest change in unwrapped weight phase.
    pub steepest_longitude: Option<f64>,
    /// Whether the deflection at longitude π is exceptional.
    pub undefined_at_pi: bool,
}

fn wrap(a: f64) -> f64 {
    a - 2.0 * PI * (a / (2.0 * PI)).round()
}

/// A particle moves down the meridian at longitude 0 from colatitude θ₀ to
/// the equator, then eastward along the equator; the deflection weight is
/// sampled on a half-offset longitude grid (which skips φ = π) together
/// with the exact circuit ends.
pub fn sphere_experiment(config: SphereConfig) -> Result<SphereExperimentResult, ExperimentError> {
    let SphereConfig {
        theta0_deg,
        n,
        samples_per_circuit: per,
        circuits,
        integrator,
    } = config;
    if !(0.0..=90.0).contains(&theta0_deg) {
        return Err(ExperimentError::InvalidInput(format!("theta0 {theta0_deg} outside [0, 90]")));
    }
    if per < 2 || circuits == 0 {
        return Err(ExperimentError::InvalidInput("need at least 2 samples and 1 circuit".into()));
    }
    let s = Surface::unit_sphere();
    let cx = GeometricCocycle::new(s, Parameter::Quantum(n), integrator)?;
    let theta0 = theta0_deg.to_radians();
    let equator = s.point(&[1.0, 0.0, 0.0])?;
    let descent = if theta0_deg == 90.0 {
        Path::point(s, equator)?
    } else {
        let top = s.sphere_point(theta0, 0.0)?;
        let down = GeodesicSegment::new(s, top, &[theta0.cos(), 0.0, -theta0.sin()], PI / 2.0 - theta0)?;
        Path::from_segments(s, vec![down])?
    };
    let orbit = Path::from_segments(
        s,
        vec![GeodesicSegment::new(s, equator, &[0.0, 1.0, 0.0], 2.0 * PI * circuits as f64)?],
    )?;

    let step = 2.0 * PI / per as f64;
    let mut xs: Vec<f64> = (0..per * circuits).map(|i| (i as f64 + 0.5) * step).collect();
    xs.extend((1..=circuits).map(|k| 2.0 * PI * k as f64));
    xs.sort_by(f64::total_cmp);
    let trace = deflection_trace(&cx, &descent, &orbit, &xs)?;

    let circuit_end_weights = (1..=circuits)
        .map(|k| {
            let x = 2.0 * PI * k as f64;
            trace
                .samples
                .iter()
                .find(|smp| smp.x == x)
                .and_then(|smp| smp.weight)
                .ok_or_else(|| ExperimentError::InvalidInput(format!("deflection undefined at {x}")))
        })
        .collect::<Result<Vec<_>, _>>()?;
    let circuit_phase = trace
        .samples
        .iter()
        .find(|smp| smp.x == 2.0 * PI)
        .and_then(|smp| smp.real)
        .expect("circuit end is defined");
    let total_phase_change = 2.0 * PI * n as f64 * circuit_phase / cx.taille();

    let defined: Vec<(f64, Complex64)> = trace.samples.iter().filter_map(|smp| smp.weight.map(|w| (smp.x, w))).collect();
    let linearity_deviation = (theta0_deg == 0.0).then(|| {
        defined
            .iter()
            .map(|&(x, w)| wrap(w.arg() - n as f64 * x / 2.0).abs())
            .fold(0.0, f64::max)
    });
    let max_sign_deviation = defined
        .iter()
        .map(|&(_, w)| (w - 1.0).norm().min((w + 1.0).norm()))
        .fold(0.0, f64::max);
    let sign_flips = defined
        .windows(2)
        .filter(|p| p[0].1.re * p[1].1.re < 0.0)
        .map(|p| {
            let (xa, ra, xb, rb) = (p[0].0, p[0].1.re, p[1].0, p[1].1.re);
            xa + ra * (xb - xa) / (ra - rb)
        })
        .collect();
    let steepest_longitude = defined
        .windows(2)
        .map(|p| {
            let slope = wrap(p[1].1.arg() - p[0].1.arg()).abs() / (p[1].0 - p[0].0);
            (slope, 0.5 * (p[0].0 + p[1].0))
        })
        .max_by(|a, b| a.0.total_cmp(&b.0))
        .map(|(_, x)| x.rem_euclid(2.0 * PI));
    let undefined_at_pi = matches!(cx.deflection_phase(&descent, &orbit, PI)?, CocycleEval::Undefined(_));

    Ok(SphereExperimentResult {
        config,
        trace,
        circuit_phase,
        total_phase_change,
        circuit_end_weights,
        linearity_deviation,
        max_sign_deviation,
        sign_flips,
        steepest_longitude,
        undefined_at_pi,
    })
}
