use std::f64::consts::PI;

use nalgebra::{Vector2, Vector3};
use serde::{Deserialize, Serialize};

use super::{GeomError, Point};

/// The four model geometries.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum SurfaceKind {
    EuclideanPlane,
    /// Flat (q, p) plane. The form is dp∧dq, so a path that first climbs
    /// the momentum axis and then moves in +q encloses positive area.
    PhasePlane { planck_h: f64 },
    UnitSphere,
    FlatTorus { lx: f64, ly: f64 },
}

/// A model surface: metric, canonical closed 2-form scaled by `form_scale`,
/// and the declared taille of that form.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "SurfaceSpec", into = "SurfaceSpec")]
pub struct Surface {
    kind: SurfaceKind,
    form_scale: f64,
}

#[derive(Serialize, Deserialize)]
struct SurfaceSpec {
    #[serde(flatten)]
    kind: SurfaceKind,
    #[serde(default = "unit_scale")]
    form_scale: f64,
}

fn unit_scale() -> f64 {
    1.0
}

impl TryFrom<SurfaceSpec> for Surface {
    type Error = GeomError;

    fn try_from(spec: SurfaceSpec) -> Result<Self, Self::Error> {
        Surface::new(spec.kind, spec.form_scale)
    }
}

impl From<Surface> for SurfaceSpec {
    fn from(s: Surface) -> Self {
        SurfaceSpec {
            kind: s.kind,
            form_scale: s.form_scale,
        }
    }
}

fn positive(name: &str, v: f64) -> Result<(), GeomError> {
    if v.is_finite() && v > 0.0 {
        Ok(())
    } else {
        Err(GeomError::InvalidSurface(format!("{name} must be positive, got {v}")))
    }
}

impl Surface {
    pub fn new(kind: SurfaceKind, form_scale: f64) -> Result<Self, GeomError> {
        positive("form_scale", form_scale)?;
        match kind {
            SurfaceKind::PhasePlane { planck_h } => positive("planck_h", planck_h)?,
            SurfaceKind::FlatTorus { lx, ly } => {
                positive("lx", lx)?;
                positive("ly", ly)?;
            }
            SurfaceKind::EuclideanPlane | SurfaceKind::UnitSphere => {}
        }
        Ok(Surface { kind, form_scale })
    }

    pub fn euclidean_plane() -> Self {
        Surface {
            kind: SurfaceKind::EuclideanPlane,
            form_scale: 1.0,
        }
    }

    pub fn unit_sphere() -> Self {
        Surface {
            kind: SurfaceKind::UnitSphere,
            form_scale: 1.0,
        }
    }

    pub fn phase_plane(planck_h: f64) -> Result<Self, GeomError> {
        Surface::new(SurfaceKind::PhasePlane { planck_h }, 1.0)
    }

    pub fn flat_torus(lx: f64, ly: f64) -> Result<Self, GeomError> {
        Surface::new(SurfaceKind::FlatTorus { lx, ly }, 1.0)
    }

    pub fn with_form_scale(self, form_scale: f64) -> Result<Self, GeomError> {
        Surface::new(self.kind, form_scale)
    }

    pub fn kind(&self) -> SurfaceKind {
        self.kind
    }

    pub fn form_scale(&self) -> f64 {
        self.form_scale
    }

    pub fn name(&self) -> &'static str {
        match self.kind {
            SurfaceKind::EuclideanPlane => "plane",
            SurfaceKind::PhasePlane { .. } => "phase-plane",
            SurfaceKind::UnitSphere => "sphere",
            SurfaceKind::FlatTorus { .. } => "torus",
        }
    }

    /// The declared taille of the canonical form. The torus has trivial π₂,
    /// the plane is contractible, the sphere's π₂ generator has area 4π, and
    /// the phase plane carries the declared value h/2.
    pub fn taille(&self) -> f64 {
        match self.kind {
            SurfaceKind::EuclideanPlane | SurfaceKind::FlatTorus { .. } => 0.0,
            SurfaceKind::UnitSphere => 4.0 * PI * self.form_scale,
            SurfaceKind::PhasePlane { planck_h } => planck_h / 2.0,
        }
    }

    pub fn is_sphere(&self) -> bool {
        matches!(self.kind, SurfaceKind::UnitSphere)
    }

    pub fn periods(&self) -> Option<(f64, f64)> {
        match self.kind {
            SurfaceKind::FlatTorus { lx, ly } => Some((lx, ly)),
            _ => None,
        }
    }

    /// +1 for dx∧dy, −1 for the phase plane's dp∧dq.
    pub(crate) fn orientation_sign(&self) -> f64 {
        match self.kind {
            SurfaceKind::PhasePlane { .. } => -1.0,
            _ => 1.0,
        }
    }

    /// Density of the canonical form on two tangent vectors, both given in
    /// cover coordinates, at the cover point `at` (only used on the sphere).
    pub(crate) fn form(&self, at: &Vector3<f64>, u: &Vector3<f64>, v: &Vector3<f64>) -> f64 {
        if self.is_sphere() {
            self.form_scale * at.dot(&u.cross(v))
        } else {
            self.form_scale * self.orientation_sign() * (u.x * v.y - u.y * v.x)
        }
    }

    /// Builds a point from raw coordinates: two for the flat surfaces, three
    /// (a unit vector) for the sphere. Torus coordinates are reduced into the
    /// fundamental domain; sphere vectors within 1e-9 of unit norm are
    /// renormalized.
    pub fn point(&self, coords: &[f64]) -> Result<Point, GeomError> {
        if coords.iter().any(|c| !c.is_finite()) {
            return Err(GeomError::InvalidInput("non-finite coordinate".into()));
        }
        match (self.kind, coords.len()) {
            (SurfaceKind::UnitSphere, 3) => {
                let v = Vector3::new(coords[0], coords[1], coords[2]);
                let norm = v.norm();
                if (norm - 1.0).abs() > 1e-9 {
                    return Err(GeomError::InvalidInput(format!(
                        "sphere point has norm {norm}"
                    )));
                }
                Ok(Point::Sphere(v / norm))
            }
            (SurfaceKind::UnitSphere, n) => Err(GeomError::InvalidInput(format!(
                "sphere points take 3 coordinates, got {n}"
            ))),
            (_, 2) => Ok(self.reduce(Vector2::new(coords[0], coords[1]))),
            (_, n) => Err(GeomError::InvalidInput(format!(
                "planar points take 2 coordinates, got {n}"
            ))),
        }
    }

    /// Sphere point at colatitude `theta` and longitude `phi` (radians).
    pub fn sphere_point(&self, theta: f64, phi: f64) -> Result<Point, GeomError> {
        if !self.is_sphere() {
            return Err(GeomError::SurfaceMismatch("sphere"));
        }
        Ok(Point::Sphere(Vector3::new(
            theta.sin() * phi.cos(),
            theta.sin() * phi.sin(),
            theta.cos(),
        )))
    }

    /// Maps a planar cover position to a point, reducing modulo the lattice
    /// on the torus.
    pub(crate) fn reduce(&self, v: Vector2<f64>) -> Point {
        match self.kind {
            SurfaceKind::FlatTorus { lx, ly } => Point::Planar(Vector2::new(wrap(v.x, lx), wrap(v.y, ly))),
            _ => Point::Planar(v),
        }
    }

    /// Maps a cover position (planar embedded with z = 0, or a sphere vector)
    /// to a point of the surface.
    pub(crate) fn point_from_cover(&self, v: &Vector3<f64>) -> Point {
        if self.is_sphere() {
            Point::Sphere(v.normalize())
        } else {
            self.reduce(Vector2::new(v.x, v.y))
        }
    }

    pub(crate) fn check(&self, p: &Point) -> Result<(), GeomError> {
        match (self.is_sphere(), p) {
            (true, Point::Sphere(_)) | (false, Point::Planar(_)) => Ok(()),
            _ => Err(GeomError::SurfaceMismatch(self.name())),
        }
    }
}

pub(crate) fn wrap(x: f64, period: f64) -> f64 {
    let r = x.rem_euclid(period);
    if r >= period {
        0.0
    } else {
        r
    }
}
