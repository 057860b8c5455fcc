use nalgebra::{Vector2, Vector3};
use serde::{Deserialize, Serialize};

/// A point of a model surface. Planar coordinates serve the plane, the phase
/// plane (read as (q, p)) and the torus (reduced to its fundamental domain);
/// sphere points are unit 3-vectors.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum Point {
    Planar(Vector2<f64>),
    Sphere(Vector3<f64>),
}

impl Point {
    pub fn planar(&self) -> Option<(f64, f64)> {
        match self {
            Point::Planar(v) => Some((v.x, v.y)),
            Point::Sphere(_) => None,
        }
    }

    pub fn sphere(&self) -> Option<Vector3<f64>> {
        match self {
            Point::Sphere(v) => Some(*v),
            Point::Planar(_) => None,
        }
    }

    pub fn coords(&self) -> Vec<f64> {
        match self {
            Point::Planar(v) => vec![v.x, v.y],
            Point::Sphere(v) => vec![v.x, v.y, v.z],
        }
    }

    /// Cover coordinates: planar points embedded with z = 0.
    pub(crate) fn cover(&self) -> Vector3<f64> {
        match self {
            Point::Planar(v) => Vector3::new(v.x, v.y, 0.0),
            Point::Sphere(v) => *v,
        }
    }
}
