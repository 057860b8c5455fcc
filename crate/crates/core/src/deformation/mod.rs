//! The geometric 2-cocycle on the path semigroup: the form integrated over a
//! filling of the triangle of shortest geodesics, reduced modulo the taille;
//! the phase and weight functions along a path; and the deflection weight.

mod trace;

pub use trace::{deflection_trace, weight_function, PhaseTrace, TraceSample};

use std::f64::consts::PI;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::geom::{
    geodesic_between, integrate_over_loop_with, GeodesicSegment, GeomError, Integrator, Surface, TailleValue,
};
use crate::paths::{homotopy_concat, Path, PathError};

#[derive(Debug, Clone, PartialEq, Error)]
pub enum DeformationError {
    #[error(transparent)]
    Geom(#[from] GeomError),
    #[error(transparent)]
    Path(#[from] PathError),
    #[error("invalid cocycle parameters: {0}")]
    InvalidParameter(String),
    #[error("value undefined: {0}")]
    Undefined(UndefinedReason),
}

/// Which required geodesic (or filling) failed to exist uniquely.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum UndefinedReason {
    /// No unique shortest geodesic homotopic to the first path.
    First,
    /// No unique shortest geodesic homotopic to the second path.
    Second,
    /// No unique shortest geodesic homotopic to the concatenation.
    Chord,
    /// The loop admits no cone filling.
    NoApex,
}

impl std::fmt::Display for UndefinedReason {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            UndefinedReason::First => "shortest geodesic for the first path is not unique",
            UndefinedReason::Second => "shortest geodesic for the second path is not unique",
            UndefinedReason::Chord => "shortest geodesic for the concatenation is not unique",
            UndefinedReason::NoApex => "loop has no cone filling",
        })
    }
}

/// Quantum number `n` for a positive taille, or a real `λ` when the taille
/// is zero.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Parameter {
    Quantum(i64),
    Lambda(f64),
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct GeometricCocycle {
    surface: Surface,
    parameter: Parameter,
    integrator: Integrator,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum CocycleEval {
    /// `real` is the integral over the chosen filling; `value` its class.
    Defined { value: TailleValue, real: f64 },
    /// The product of the two paths is the semigroup zero.
    Zero,
    Undefined(UndefinedReason),
}

impl CocycleEval {
    pub fn value(&self) -> Option<TailleValue> {
        match self {
            CocycleEval::Defined { value, .. } => Some(*value),
            _ => None,
        }
    }

    pub fn real(&self) -> Option<f64> {
        match self {
            CocycleEval::Defined { real, .. } => Some(*real),
            _ => None,
        }
    }
}

impl GeometricCocycle {
    /// The parameter must match the taille: `Quantum` needs τ > 0, `Lambda`
    /// needs τ = 0.
    pub fn new(surface: Surface, parameter: Parameter, integrator: Integrator) -> Result<Self, DeformationError> {
        match (parameter, surface.taille() > 0.0) {
            (Parameter::Quantum(_), true) => {}
            (Parameter::Lambda(l), false) if l.is_finite() => {}
            (Parameter::Quantum(_), false) => {
                return Err(DeformationError::InvalidParameter(format!(
                    "{} has taille 0; use a lambda parameter",
                    surface.name()
                )))
            }
            (Parameter::Lambda(_), _) => {
                return Err(DeformationError::InvalidParameter(format!(
                    "{} needs a finite lambda only when its taille is 0",
                    surface.name()
                )))
            }
        }
        if let Integrator::Quadrature { tol } = integrator {
            if !(tol.is_finite() && tol > 0.0) {
                return Err(DeformationError::InvalidParameter(format!("tolerance {tol}")));
            }
        }
        Ok(GeometricCocycle {
            surface,
            parameter,
            integrator,
        })
    }

    pub fn quantum(surface: Surface, n: i64) -> Result<Self, DeformationError> {
        Self::new(surface, Parameter::Quantum(n), Integrator::default())
    }

    pub fn lambda(surface: Surface, lambda: f64) -> Result<Self, DeformationError> {
        Self::new(surface, Parameter::Lambda(lambda), Integrator::default())
    }

    pub fn with_integrator(self, integrator: Integrator) -> Result<Self, DeformationError> {
        Self::new(self.surface, self.parameter, integrator)
    }

    pub fn surface(&self) -> Surface {
        self.surface
    }

    pub fn parameter(&self) -> Parameter {
        self.parameter
    }

    pub fn integrator(&self) -> Integrator {
        self.integrator
    }

    pub fn taille(&self) -> f64 {
        self.surface.taille()
    }

    /// `exp(2nπi·v/τ)`, or the positive real `exp(λv)` when τ = 0.
    pub fn weight(&self, v: f64) -> Complex64 {
        match self.parameter {
            Parameter::Quantum(n) => Complex64::from_polar(1.0, 2.0 * PI * n as f64 * v / self.taille()),
            Parameter::Lambda(l) => Complex64::new((l * v).exp(), 0.0),
        }
    }

    fn check(&self, p: &Path) -> Result<(), DeformationError> {
        if p.surface() != self.surface {
            return Err(PathError::SurfaceMismatch.into());
        }
        Ok(())
    }

    /// Integral over a cone filling of a closed loop; `None` when no filling
    /// exists.
    fn loop_integral(&self, segs: &[GeodesicSegment]) -> Result<Option<f64>, DeformationError> {
        match integrate_over_loop_with(&self.surface, segs, None, self.integrator) {
            Ok(r) => Ok(Some(r.value)),
            Err(GeomError::NoFillingApex) => Ok(None),
            Err(e) => Err(e.into()),
        }
    }

    fn defined(&self, real: Option<f64>) -> CocycleEval {
        match real {
            Some(real) => CocycleEval::Defined {
                value: TailleValue::new(real, self.taille()),
                real,
            },
            None => CocycleEval::Undefined(UndefinedReason::NoApex),
        }
    }

    /// Shortest geodesic homotopic to `p` with its endpoints.
    fn shortest(&self, p: &Path) -> Option<GeodesicSegment> {
        geodesic_between(&self.surface, &p.start(), &p.end(), Some(p.winding())).ok()
    }

    /// ω̃(γ, γ′): the form integrated over a filling of the geodesic
    /// triangle ζ, ζ′, ζ″⁻¹, where ζ, ζ′ and ζ″ are the shortest geodesics
    /// homotopic to γ, γ′ and γγ′.
    pub fn omega_tilde(&self, g1: &Path, g2: &Path) -> Result<CocycleEval, DeformationError> {
        self.check(g1)?;
        self.check(g2)?;
        let Some(class) = homotopy_concat(&g1.homotopy_class(), &g2.homotopy_class()) else {
            return Ok(CocycleEval::Zero);
        };
        let Some(z1) = self.shortest(g1) else {
            return Ok(CocycleEval::Undefined(UndefinedReason::First));
        };
        let Some(z2) = self.shortest(g2) else {
            return Ok(CocycleEval::Undefined(UndefinedReason::Second));
        };
        let Ok(z3) = geodesic_between(&self.surface, &g1.start(), &g2.end(), Some(class.class())) else {
            return Ok(CocycleEval::Undefined(UndefinedReason::Chord));
        };
        let real = self.loop_integral(&[z1, z2, z3.reversed()])?;
        Ok(self.defined(real))
    }

    /// δω̃(γ, γ′, γ″) measured as a distance from 0 in ℝ/τℝ (or ℝ). Zero
    /// when any product vanishes.
    pub fn cocycle_residual(&self, g1: &Path, g2: &Path, g3: &Path) -> Result<f64, DeformationError> {
        let (Some(g12), Some(g23)) = (g1.concat(g2), g2.concat(g3)) else {
            return Ok(0.0);
        };
        let terms = [
            self.omega_tilde(g2, g3)?,
            self.omega_tilde(&g12, g3)?,
            self.omega_tilde(g1, &g23)?,
            self.omega_tilde(g1, g2)?,
        ];
        let mut v = [0.0; 4];
        for (slot, t) in v.iter_mut().zip(&terms) {
            match t {
                CocycleEval::Defined { real, .. } => *slot = *real,
                CocycleEval::Zero => {}
                CocycleEval::Undefined(r) => return Err(DeformationError::Undefined(*r)),
            }
        }
        let d = v[0] - v[1] + v[2] - v[3];
        Ok(TailleValue::new(d, self.taille()).distance(&TailleValue::zero(self.taille())))
    }

    /// φ_γ(x): the form integrated over a filling of the loop made of the
    /// shortest geodesic from γ(0) to γ(x) (homotopic to the prefix) and the
    /// prefix traversed backwards. With this orientation
    /// ω̃(γ, γ′) = φ(γ) + φ(γ′) − φ(γγ′) wherever everything is defined.
    pub fn phase_function(&self, g: &Path, x: f64) -> Result<CocycleEval, DeformationError> {
        self.check(g)?;
        let prefix = g.prefix(x)?;
        let Some(chord) = self.shortest(&prefix) else {
            return Ok(CocycleEval::Undefined(UndefinedReason::Chord));
        };
        let mut segs = vec![chord];
        segs.extend(prefix.reverse().segments().iter().copied());
        let real = self.loop_integral(&segs)?;
        Ok(self.defined(real))
    }

    /// The phase of the deflection weight f(γ, γ′(x)): the form over a
    /// filling of ζ (shortest geodesic homotopic to γ), the part of γ′ up to
    /// x, and the shortest geodesic from γ(0) to γ′(x) traversed backwards.
    /// When that part of γ′ is itself shortest this is ω̃(γ, prefix(γ′, x)).
    pub fn deflection_phase(&self, g1: &Path, g2: &Path, x: f64) -> Result<CocycleEval, DeformationError> {
        self.check(g1)?;
        self.check(g2)?;
        let prefix = g2.prefix(x)?;
        let Some(class) = homotopy_concat(&g1.homotopy_class(), &prefix.homotopy_class()) else {
            return Ok(CocycleEval::Zero);
        };
        let Some(z1) = self.shortest(g1) else {
            return Ok(CocycleEval::Undefined(UndefinedReason::First));
        };
        let Ok(chord) = geodesic_between(&self.surface, &g1.start(), &prefix.end(), Some(class.class())) else {
            return Ok(CocycleEval::Undefined(UndefinedReason::Chord));
        };
        let mut segs = vec![z1];
        segs.extend(prefix.segments().iter().copied());
        segs.push(chord.reversed());
        let real = self.loop_integral(&segs)?;
        Ok(self.defined(real))
    }

    /// The deflection weight itself; `None` where undefined or zero.
    pub fn deflection_weight(&self, g1: &Path, g2: &Path, x: f64) -> Result<Option<Complex64>, DeformationError> {
        Ok(self.deflection_phase(g1, g2, x)?.real().map(|v| self.weight(v)))
    }
}
