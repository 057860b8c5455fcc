//! Piecewise-geodesic paths under concatenation (a semigroup with zero),
//! their homotopy classes, and finite formal sums over them.

mod algebra;
mod homotopy;
mod spec;

pub use algebra::{algebra_mul, BasisElement, BasisProduct, BasisWeight, FormalSum};
pub use homotopy::{homotopy_concat, HomotopyTriple};
pub use spec::{PathSpec, SegmentSpec};

use nalgebra::Vector2;
use thiserror::Error;

use crate::geom::{distance, geodesic_between, GeodesicSegment, GeomError, Point, Surface, ENDPOINT_TOL};

/// Grid used to canonicalize coordinates in basis keys.
pub const KEY_GRID: f64 = 1e-12;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum PathError {
    #[error(transparent)]
    Geom(#[from] GeomError),
    #[error("arclength {value} outside [0, {length}]")]
    OutOfRange { value: f64, length: f64 },
    #[error("segment {index} starts {gap} away from the previous end")]
    Discontinuous { index: usize, gap: f64 },
    #[error("paths live on different surfaces")]
    SurfaceMismatch,
    #[error("a path needs at least one point")]
    Empty,
    #[error("weight is undefined on a needed product")]
    UndefinedWeight,
    #[error("invalid path description: {0}")]
    Spec(String),
}

/// An arclength-parameterized concatenation of geodesic segments.
/// Zero-length segments are dropped; a path with no segments is the point
/// path at `start`.
#[derive(Debug, Clone, PartialEq)]
pub struct Path {
    surface: Surface,
    start: Point,
    segments: Vec<GeodesicSegment>,
    /// Arclength at the end of each segment.
    cumulative: Vec<f64>,
}

impl Path {
    pub fn point(surface: Surface, p: Point) -> Result<Path, PathError> {
        distance(&surface, &p, &p)?;
        Ok(Path {
            surface,
            start: p,
            segments: Vec::new(),
            cumulative: Vec::new(),
        })
    }

    pub fn from_segments(surface: Surface, segments: Vec<GeodesicSegment>) -> Result<Path, PathError> {
        let first = segments.first().ok_or(PathError::Empty)?;
        let start = first.start();
        let mut path = Path::point(surface, start)?;
        let mut end = start;
        for (index, seg) in segments.into_iter().enumerate() {
            if seg.surface() != surface {
                return Err(PathError::SurfaceMismatch);
            }
            let gap = distance(&surface, &end, &seg.start())?;
            if gap > ENDPOINT_TOL {
                return Err(PathError::Discontinuous { index, gap });
            }
            if seg.length() > 0.0 {
                end = seg.end();
                path.push(seg);
            }
        }
        Ok(path)
    }

    /// Consecutive waypoints joined by unique shortest geodesics.
    pub fn from_waypoints(surface: Surface, points: &[Point]) -> Result<Path, PathError> {
        let first = points.first().ok_or(PathError::Empty)?;
        let mut path = Path::point(surface, *first)?;
        for w in points.windows(2) {
            let seg = geodesic_between(&surface, &w[0], &w[1], None)?;
            if seg.length() > 0.0 {
                path.push(seg);
            }
        }
        Ok(path)
    }

    fn push(&mut self, seg: GeodesicSegment) {
        let total = self.length() + seg.length();
        self.segments.push(seg);
        self.cumulative.push(total);
    }

    pub fn surface(&self) -> Surface {
        self.surface
    }

    pub fn start(&self) -> Point {
        self.start
    }

    pub fn end(&self) -> Point {
        self.segments.last().map_or(self.start, |s| s.end())
    }

    pub fn segments(&self) -> &[GeodesicSegment] {
        &self.segments
    }

    pub fn length(&self) -> f64 {
        self.cumulative.last().copied().unwrap_or(0.0)
    }

    pub fn is_point(&self) -> bool {
        self.segments.is_empty()
    }

    /// The concatenation `self` then `other`, or `None` (the semigroup zero)
    /// when `other` does not start where `self` ends.
    pub fn concat(&self, other: &Path) -> Option<Path> {
        if self.surface != other.surface {
            return None;
        }
        if distance(&self.surface, &self.end(), &other.start).ok()? > ENDPOINT_TOL {
            return None;
        }
        let mut out = self.clone();
        for seg in &other.segments {
            out.push(*seg);
        }
        Some(out)
    }

    pub fn reverse(&self) -> Path {
        let mut out = Path {
            surface: self.surface,
            start: self.end(),
            segments: Vec::with_capacity(self.segments.len()),
            cumulative: Vec::with_capacity(self.segments.len()),
        };
        for seg in self.segments.iter().rev() {
            out.push(seg.reversed());
        }
        out
    }

    fn check_range(&self, x: f64) -> Result<(), PathError> {
        if (0.0..=self.length()).contains(&x) {
            Ok(())
        } else {
            Err(PathError::OutOfRange {
                value: x,
                length: self.length(),
            })
        }
    }

    /// Index of the segment containing arclength `x`, and the offset into it.
    fn locate(&self, x: f64) -> Option<(usize, f64)> {
        if self.segments.is_empty() {
            return None;
        }
        let i = self.cumulative.partition_point(|&c| c < x).min(self.segments.len() - 1);
        let before = if i == 0 { 0.0 } else { self.cumulative[i - 1] };
        Some((i, (x - before).clamp(0.0, self.segments[i].length())))
    }

    pub fn evaluate(&self, x: f64) -> Result<Point, PathError> {
        self.check_range(x)?;
        Ok(match self.locate(x) {
            None => self.start,
            Some((i, s)) => self.segments[i].point_at(s),
        })
    }

    /// The restriction to `[0, x]`; its length is exactly `x`.
    pub fn prefix(&self, x: f64) -> Result<Path, PathError> {
        self.check_range(x)?;
        let mut out = Path::point(self.surface, self.start)?;
        let Some((i, s)) = self.locate(x) else {
            return Ok(out);
        };
        for seg in &self.segments[..i] {
            out.push(*seg);
        }
        if s > 0.0 {
            let seg = self.segments[i].sub(0.0, s);
            out.segments.push(seg);
            out.cumulative.push(x);
        }
        // Pin the recorded length to x exactly.
        if let Some(last) = out.cumulative.last_mut() {
            *last = x;
        }
        Ok(out)
    }

    /// Total displacement of the lift (flat surfaces).
    pub(crate) fn displacement(&self) -> Vector2<f64> {
        self.segments.iter().map(|s| s.displacement()).sum()
    }

    /// Lattice translation between the lifted end and the reduced end on the
    /// torus; `[0, 0]` elsewhere.
    pub fn winding(&self) -> [i64; 2] {
        crate::geom::winding_of(&self.surface, &self.start, &self.displacement())
    }

    pub fn homotopy_class(&self) -> HomotopyTriple {
        HomotopyTriple::new(self.surface, self.start, self.end(), self.winding())
    }

    /// Pointwise comparison at every breakpoint of either path and between
    /// them.
    pub fn approx_eq(&self, other: &Path, tol: f64) -> bool {
        if self.surface != other.surface || (self.length() - other.length()).abs() > tol {
            return false;
        }
        let len = self.length().min(other.length());
        let mut xs: Vec<f64> = std::iter::once(0.0)
            .chain(self.cumulative.iter().copied())
            .chain(other.cumulative.iter().copied())
            .map(|x| x.min(len))
            .collect();
        xs.sort_by(f64::total_cmp);
        let mids: Vec<f64> = xs.windows(2).map(|w| 0.5 * (w[0] + w[1])).collect();
        xs.extend(mids);
        xs.iter().all(|&x| match (self.evaluate(x), other.evaluate(x)) {
            (Ok(a), Ok(b)) => distance(&self.surface, &a, &b).is_ok_and(|d| d <= tol),
            _ => false,
        })
    }

    /// Canonical key: collinear consecutive segments merged, coordinates
    /// rounded to [`KEY_GRID`].
    pub fn key(&self) -> PathKey {
        let mut merged: Vec<GeodesicSegment> = Vec::new();
        for seg in &self.segments {
            if let Some(last) = merged.last_mut() {
                let t = last.tangent_at(last.length());
                if (t - seg.direction()).norm() < 1e-12 {
                    *last = GeodesicSegment::raw(
                        self.surface,
                        last.start(),
                        last.direction(),
                        last.length() + seg.length(),
                    );
                    continue;
                }
            }
            merged.push(*seg);
        }
        let q = |v: f64| (v / KEY_GRID).round() as i64;
        let mut key = vec![self.surface.is_sphere() as i64];
        key.extend(self.start.coords().into_iter().map(q));
        for seg in merged {
            key.extend(seg.direction().iter().map(|&v| q(v)));
            key.push(q(seg.length()));
        }
        PathKey(key)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct PathKey(Vec<i64>);
