use std::ops::{Add, Neg, Sub};

use serde::{Deserialize, Serialize};

use super::surface::wrap;

/// A real number carried modulo a taille τ ≥ 0. With τ > 0 the stored value
/// lies in [0, τ); with τ = 0 it is a plain real.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct TailleValue {
    value: f64,
    taille: f64,
}

impl TailleValue {
    pub fn new(value: f64, taille: f64) -> Self {
        assert!(taille >= 0.0 && taille.is_finite(), "taille must be finite and nonnegative");
        let value = if taille > 0.0 { wrap(value, taille) } else { value };
        TailleValue { value, taille }
    }

    pub fn zero(taille: f64) -> Self {
        TailleValue::new(0.0, taille)
    }

    pub fn value(&self) -> f64 {
        self.value
    }

    pub fn taille(&self) -> f64 {
        self.taille
    }

    /// Representative in [−τ/2, τ/2) (the plain value when τ = 0).
    pub fn centered(&self) -> f64 {
        if self.taille > 0.0 && self.value >= self.taille / 2.0 {
            self.value - self.taille
        } else {
            self.value
        }
    }

    /// Distance in ℝ/τℝ (plain distance when τ = 0).
    pub fn distance(&self, other: &TailleValue) -> f64 {
        (*self - *other).centered().abs()
    }

    pub fn approx_eq(&self, other: &TailleValue, tol: f64) -> bool {
        self.distance(other) <= tol
    }

    pub fn times(&self, n: i64) -> TailleValue {
        TailleValue::new(self.value * n as f64, self.taille)
    }
}

impl Add for TailleValue {
    type Output = TailleValue;

    fn add(self, rhs: TailleValue) -> TailleValue {
        debug_assert_eq!(self.taille, rhs.taille);
        TailleValue::new(self.value + rhs.value, self.taille)
    }
}

impl Sub for TailleValue {
    type Output = TailleValue;

    fn sub(self, rhs: TailleValue) -> TailleValue {
        debug_assert_eq!(self.taille, rhs.taille);
        TailleValue::new(self.value - rhs.value, self.taille)
    }
}

impl Neg for TailleValue {
    type Output = TailleValue;

    fn neg(self) -> TailleValue {
        TailleValue::new(-self.value, self.taille)
    }
}
