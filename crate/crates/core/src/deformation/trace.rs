use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use super::{CocycleEval, DeformationError, GeometricCocycle};
use crate::geom::TailleValue;
use crate::paths::Path;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct TraceSample {
    pub x: f64,
    /// Phase class; `None` at exceptional samples.
    pub phi: Option<TailleValue>,
    /// Real representative behind `phi`.
    pub real: Option<f64>,
    pub weight: Option<Complex64>,
}

impl TraceSample {
    pub fn is_defined(&self) -> bool {
        self.weight.is_some()
    }
}

/// Sampled phase and weight along a path. Exceptional samples are kept and
/// marked, never interpolated over.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PhaseTrace {
    pub taille: f64,
    pub samples: Vec<TraceSample>,
}

impl PhaseTrace {
    fn from_evals(cx: &GeometricCocycle, evals: impl IntoIterator<Item = (f64, CocycleEval)>) -> PhaseTrace {
        let samples = evals
            .into_iter()
            .map(|(x, e)| match e {
                CocycleEval::Defined { value, real } => TraceSample {
                    x,
                    phi: Some(value),
                    real: Some(real),
                    weight: Some(cx.weight(real)),
                },
                CocycleEval::Zero | CocycleEval::Undefined(_) => TraceSample {
                    x,
                    phi: None,
                    real: None,
                    weight: None,
                },
            })
            .collect();
        PhaseTrace {
            taille: cx.taille(),
            samples,
        }
    }

    /// CSV with columns `x, phi, taille, w_re, w_im, defined`; floats carry
    /// 17 significant digits, undefined samples leave value columns empty.
    pub fn to_csv(&self) -> Result<String, csv::Error> {
        let mut w = csv::Writer::from_writer(Vec::new());
        w.write_record(["x", "phi", "taille", "w_re", "w_im", "defined"])?;
        let f = |v: f64| format!("{v:.16e}");
        for s in &self.samples {
            let (phi, re, im) = match (s.phi, s.weight) {
                (Some(p), Some(z)) => (f(p.value()), f(z.re), f(z.im)),
                _ => (String::new(), String::new(), String::new()),
            };
            let defined = if s.is_defined() { "1" } else { "0" };
            w.write_record([f(s.x), phi, f(self.taille), re, im, defined.to_string()])?;
        }
        let bytes = w.into_inner().map_err(|e| e.into_error())?;
        Ok(String::from_utf8(bytes).expect("csv output is utf-8"))
    }
}

/// Phase function and weight of `g` at each sample arclength.
pub fn weight_function(cx: &GeometricCocycle, g: &Path, samples: &[f64]) -> Result<PhaseTrace, DeformationError> {
    let evals = samples
        .iter()
        .map(|&x| Ok((x, cx.phase_function(g, x)?)))
        .collect::<Result<Vec<_>, DeformationError>>()?;
    Ok(PhaseTrace::from_evals(cx, evals))
}

/// Deflection phase and weight of `g2` after `g1` at each sample arclength
/// along `g2`.
pub fn deflection_trace(
    cx: &GeometricCocycle,
    g1: &Path,
    g2: &Path,
    samples: &[f64],
) -> Result<PhaseTrace, DeformationError> {
    let evals = samples
        .iter()
        .map(|&x| Ok((x, cx.deflection_phase(g1, g2, x)?)))
        .collect::<Result<Vec<_>, DeformationError>>()?;
    Ok(PhaseTrace::from_evals(cx, evals))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::geom::{GeodesicSegment, Surface};
    use std::f64::consts::PI;

    #[test]
    fn zero_quantum_number_gives_unit_weight() {
        let s = Surface::unit_sphere();
        let cx = GeometricCocycle::quantum(s, 0).unwrap();
        let start = s.point(&[1.0, 0.0, 0.0]).unwrap();
        let g = Path::from_segments(s, vec![GeodesicSegment::new(s, start, &[0.0, 0.6, 0.8], 2.0).unwrap()]).unwrap();
        let trace = weight_function(&cx, &g, &[0.0, 0.5, 1.0, 2.0]).unwrap();
        for smp in &trace.samples {
            assert_eq!(smp.weight.unwrap(), Complex64::new(1.0, 0.0));
        }
    }

    #[test]
    fn equator_trace_and_csv() {
        let s = Surface::unit_sphere();
        let cx = GeometricCocycle::quantum(s, 1).unwrap();
        let start = s.point(&[1.0, 0.0, 0.0]).unwrap();
        let g = Path::from_segments(s, vec![GeodesicSegment::new(s, start, &[0.0, 1.0, 0.0], 2.0 * PI).unwrap()]).unwrap();
        let trace = weight_function(&cx, &g, &[1.0, PI, 4.0]).unwrap();
        assert!((trace.samples[0].weight.unwrap() - 1.0).norm() < 1e-9);
        assert!(!trace.samples[1].is_defined());
        assert!((trace.samples[2].weight.unwrap() + 1.0).norm() < 1e-9);
        let csv = trace.to_csv().unwrap();
        let lines: Vec<&str> = csv.lines().collect();
        assert_eq!(lines[0], "x,phi,taille,w_re,w_im,defined");
        assert!(lines[2].ends_with(",,,0"));
        assert!(lines[1].starts_with("1.0000000000000000e0,"));
    }
}
