use serde::{Deserialize, Serialize};

use super::{Path, PathError};
use crate::geom::{GeodesicSegment, Point, Surface};

/// JSON form of a path: either waypoints joined by shortest geodesics, or
/// explicit segments. The surface may be omitted when the caller supplies
/// one.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PathSpec {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub surface: Option<Surface>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub waypoints: Option<Vec<Vec<f64>>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub segments: Option<Vec<SegmentSpec>>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SegmentSpec {
    pub start: Vec<f64>,
    pub dir: Vec<f64>,
    pub len: f64,
}

impl PathSpec {
    pub fn into_path(&self, default_surface: Option<Surface>) -> Result<Path, PathError> {
        let surface = match (self.surface, default_surface) {
            (Some(a), Some(b)) if a != b => return Err(PathError::SurfaceMismatch),
            (Some(s), _) | (None, Some(s)) => s,
            (None, None) => return Err(PathError::Spec("no surface given".into())),
        };
        match (&self.waypoints, &self.segments) {
            (Some(w), None) => {
                let pts = w
                    .iter()
                    .map(|c| surface.point(c))
                    .collect::<Result<Vec<Point>, _>>()?;
                Path::from_waypoints(surface, &pts)
            }
            (None, Some(segs)) => {
                let segs = segs
                    .iter()
                    .map(|s| GeodesicSegment::new(surface, surface.point(&s.start)?, &s.dir, s.len))
                    .collect::<Result<Vec<_>, _>>()?;
                Path::from_segments(surface, segs)
            }
            _ => Err(PathError::Spec("exactly one of waypoints or segments is required".into())),
        }
    }

    pub fn parse(json: &str, default_surface: Option<Surface>) -> Result<Path, PathError> {
        let spec: PathSpec = serde_json::from_str(json).map_err(|e| PathError::Spec(e.to_string()))?;
        spec.into_path(default_surface)
    }

    /// Segment form of an existing path, surface included. Point paths
    /// become a single waypoint.
    pub fn from_path(path: &Path) -> PathSpec {
        if path.is_point() {
            return PathSpec {
                surface: Some(path.surface()),
                waypoints: Some(vec![path.start().coords()]),
                segments: None,
            };
        }
        let segments = path
            .segments()
            .iter()
            .map(|s| {
                let dir = s.direction();
                SegmentSpec {
                    start: s.start().coords(),
                    dir: if path.surface().is_sphere() { dir.iter().copied().collect() } else { vec![dir.x, dir.y] },
                    len: s.length(),
                }
            })
            .collect();
        PathSpec {
            surface: Some(path.surface()),
            waypoints: None,
            segments: Some(segments),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn waypoints_json() {
        let p = PathSpec::parse(r#"{"surface":{"kind":"euclidean_plane"},"waypoints":[[0,0],[1,0],[1,1]]}"#, None).unwrap();
        assert_eq!(p.length(), 2.0);
        let q = PathSpec::parse(r#"{"waypoints":[[0,0,1],[1,0,0]]}"#, Some(Surface::unit_sphere())).unwrap();
        assert!((q.length() - std::f64::consts::FRAC_PI_2).abs() < 1e-15);
    }

    #[test]
    fn antipodal_waypoints_are_rejected() {
        let r = PathSpec::parse(r#"{"waypoints":[[0,0,1],[0,0,-1]]}"#, Some(Surface::unit_sphere()));
        assert!(matches!(r, Err(PathError::Geom(crate::geom::GeomError::NonUniqueGeodesic))));
    }

    #[test]
    fn segments_round_trip() {
        let p = PathSpec::parse(r#"{"waypoints":[[0,0],[1,0],[1,1]]}"#, Some(Surface::euclidean_plane())).unwrap();
        let json = serde_json::to_string(&PathSpec::from_path(&p)).unwrap();
        let back = PathSpec::parse(&json, None).unwrap();
        assert!(back.approx_eq(&p, 1e-15));
    }

    #[test]
    fn malformed_specs() {
        let s = Some(Surface::euclidean_plane());
        assert!(PathSpec::parse(r#"{}"#, s).is_err());
        assert!(PathSpec::parse(r#"{"waypoints":[[0,0]],"segments":[]}"#, s).is_err());
        assert!(PathSpec::parse(r#"{"waypoints":[[0,0]]}"#, None).is_err());
        assert!(PathSpec::parse(r#"{"waypoints":[[0,0,0]]}"#, s).is_err());
        assert!(PathSpec::parse(r#"{"segments":[{"start":[0,0],"dir":[2,0],"len":1}]}"#, s).is_err());
    }
}
