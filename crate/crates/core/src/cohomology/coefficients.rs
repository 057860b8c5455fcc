use std::fmt::Debug;

use num_complex::Complex64;
use serde::{de::DeserializeOwned, Serialize};

use super::CohomError;
use crate::geom::TailleValue;

/// An abelian coefficient group, written additively or multiplicatively.
pub trait CoefficientGroup: Clone + Debug + PartialEq {
    type Value: Clone + Debug + PartialEq + Serialize + DeserializeOwned;

    fn identity(&self) -> Self::Value;
    fn combine(&self, a: &Self::Value, b: &Self::Value) -> Self::Value;
    fn inverse(&self, a: &Self::Value) -> Self::Value;
    fn distance(&self, a: &Self::Value, b: &Self::Value) -> f64;
    fn normalize(&self, a: Self::Value) -> Self::Value {
        a
    }
    fn is_additive(&self) -> bool;
}

/// ℝ under addition.
#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct AdditiveReal;

impl CoefficientGroup for AdditiveReal {
    type Value = f64;

    fn identity(&self) -> f64 {
        0.0
    }
    fn combine(&self, a: &f64, b: &f64) -> f64 {
        a + b
    }
    fn inverse(&self, a: &f64) -> f64 {
        -a
    }
    fn distance(&self, a: &f64, b: &f64) -> f64 {
        (a - b).abs()
    }
    fn is_additive(&self) -> bool {
        true
    }
}

/// ℝ/τℝ; values are stored reduced into [0, τ).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct AdditiveModTaille {
    taille: f64,
}

impl AdditiveModTaille {
    pub fn new(taille: f64) -> Result<Self, CohomError> {
        if taille.is_finite() && taille > 0.0 {
            Ok(AdditiveModTaille { taille })
        } else {
            Err(CohomError::InvalidTaille(taille))
        }
    }

    pub fn taille(&self) -> f64 {
        self.taille
    }
}

impl CoefficientGroup for AdditiveModTaille {
    type Value = f64;

    fn identity(&self) -> f64 {
        0.0
    }
    fn combine(&self, a: &f64, b: &f64) -> f64 {
        self.normalize(a + b)
    }
    fn inverse(&self, a: &f64) -> f64 {
        self.normalize(-a)
    }
    fn distance(&self, a: &f64, b: &f64) -> f64 {
        TailleValue::new(*a, self.taille).distance(&TailleValue::new(*b, self.taille))
    }
    fn normalize(&self, a: f64) -> f64 {
        TailleValue::new(a, self.taille).value()
    }
    fn is_additive(&self) -> bool {
        true
    }
}

/// Nonzero reals under multiplication.
#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct MultiplicativeReal;

impl CoefficientGroup for MultiplicativeReal {
    type Value = f64;

    fn identity(&self) -> f64 {
        1.0
    }
    fn combine(&self, a: &f64, b: &f64) -> f64 {
        a * b
    }
    fn inverse(&self, a: &f64) -> f64 {
        1.0 / a
    }
    fn distance(&self, a: &f64, b: &f64) -> f64 {
        (a - b).abs()
    }
    fn is_additive(&self) -> bool {
        false
    }
}

/// The unit circle in ℂ under multiplication.
#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct UnitComplex;

impl CoefficientGroup for UnitComplex {
    type Value = Complex64;

    fn identity(&self) -> Complex64 {
        Complex64::new(1.0, 0.0)
    }
    fn combine(&self, a: &Complex64, b: &Complex64) -> Complex64 {
        a * b
    }
    fn inverse(&self, a: &Complex64) -> Complex64 {
        a.inv()
    }
    fn distance(&self, a: &Complex64, b: &Complex64) -> f64 {
        (a - b).norm()
    }
    fn is_additive(&self) -> bool {
        false
    }
}
