use std::f64::consts::PI;

use nalgebra::{Vector2, Vector3};

use super::{GeomError, Point, Surface, SurfaceKind, CUT_LOCUS_TOL};

/// An arclength-parameterized geodesic segment: `start`, a unit tangent
/// `direction` at `start` and a `length`. Planar directions carry z = 0.
/// Segments of length zero have a zero direction.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GeodesicSegment {
    surface: Surface,
    start: Point,
    direction: Vector3<f64>,
    length: f64,
}

impl GeodesicSegment {
    pub fn new(surface: Surface, start: Point, direction: &[f64], length: f64) -> Result<Self, GeomError> {
        surface.check(&start)?;
        if !(length.is_finite() && length >= 0.0) {
            return Err(GeomError::InvalidInput(format!("segment length {length}")));
        }
        let dir = match (start, direction.len()) {
            (Point::Planar(_), 2) => Vector3::new(direction[0], direction[1], 0.0),
            (Point::Sphere(_), 3) => Vector3::new(direction[0], direction[1], direction[2]),
            (_, n) => {
                return Err(GeomError::InvalidInput(format!(
                    "direction has {n} components on a {} surface",
                    surface.name()
                )))
            }
        };
        if length == 0.0 {
            return Ok(GeodesicSegment {
                surface,
                start,
                direction: Vector3::zeros(),
                length,
            });
        }
        if (dir.norm() - 1.0).abs() > 1e-9 {
            return Err(GeomError::InvalidInput(format!(
                "direction has norm {}",
                dir.norm()
            )));
        }
        let dir = match start {
            Point::Sphere(p) => {
                if dir.dot(&p).abs() > 1e-9 {
                    return Err(GeomError::InvalidInput(
                        "sphere direction is not tangent at the start point".into(),
                    ));
                }
                (dir - p * dir.dot(&p)).normalize()
            }
            Point::Planar(_) => dir.normalize(),
        };
        Ok(GeodesicSegment {
            surface,
            start,
            direction: dir,
            length,
        })
    }

    pub(crate) fn raw(surface: Surface, start: Point, direction: Vector3<f64>, length: f64) -> Self {
        GeodesicSegment {
            surface,
            start,
            direction,
            length,
        }
    }

    /// Zero-length segment at `p`.
    pub fn constant(surface: Surface, p: Point) -> Self {
        GeodesicSegment::raw(surface, p, Vector3::zeros(), 0.0)
    }

    pub fn surface(&self) -> Surface {
        self.surface
    }

    pub fn start(&self) -> Point {
        self.start
    }

    pub fn direction(&self) -> Vector3<f64> {
        self.direction
    }

    pub fn length(&self) -> f64 {
        self.length
    }

    pub fn end(&self) -> Point {
        self.point_at(self.length)
    }

    /// Cover coordinates at arclength `s`, continuing from the start's own
    /// coordinates (no lattice reduction).
    pub(crate) fn cover_at(&self, s: f64) -> Vector3<f64> {
        match self.start {
            Point::Planar(p) => Vector3::new(p.x, p.y, 0.0) + self.direction * s,
            Point::Sphere(p) => p * s.cos() + self.direction * s.sin(),
        }
    }

    pub(crate) fn tangent_at(&self, s: f64) -> Vector3<f64> {
        match self.start {
            Point::Planar(_) => self.direction,
            Point::Sphere(p) => -p * s.sin() + self.direction * s.cos(),
        }
    }

    pub(crate) fn point_at(&self, s: f64) -> Point {
        self.surface.point_from_cover(&self.cover_at(s))
    }

    pub fn evaluate(&self, s: f64) -> Result<Point, GeomError> {
        if !(0.0..=self.length).contains(&s) {
            return Err(GeomError::OutOfRange {
                value: s,
                length: self.length,
            });
        }
        Ok(self.point_at(s))
    }

    /// Sub-segment between arclengths `s0 ≤ s1`.
    pub(crate) fn sub(&self, s0: f64, s1: f64) -> GeodesicSegment {
        let s1 = s1.max(s0);
        if s1 - s0 <= 0.0 {
            return GeodesicSegment::constant(self.surface, self.point_at(s0));
        }
        let direction = match self.start {
            Point::Planar(_) => self.direction,
            Point::Sphere(_) => self.tangent_at(s0).normalize(),
        };
        GeodesicSegment::raw(self.surface, self.point_at(s0), direction, s1 - s0)
    }

    pub fn reversed(&self) -> GeodesicSegment {
        if self.length == 0.0 {
            return *self;
        }
        let direction = -self.tangent_at(self.length);
        let direction = match self.start {
            Point::Planar(_) => direction,
            Point::Sphere(_) => direction.normalize(),
        };
        GeodesicSegment::raw(self.surface, self.end(), direction, self.length)
    }

    /// Displacement of the lift in the planar cover.
    pub(crate) fn displacement(&self) -> Vector2<f64> {
        Vector2::new(self.direction.x, self.direction.y) * self.length
    }

    /// Lattice vector between the lifted end and the reduced end, on the torus.
    pub fn winding(&self) -> [i64; 2] {
        winding_of(&self.surface, &self.start, &self.displacement())
    }
}

pub(crate) fn winding_of(surface: &Surface, start: &Point, displacement: &Vector2<f64>) -> [i64; 2] {
    match (surface.kind(), start) {
        (SurfaceKind::FlatTorus { lx, ly }, Point::Planar(s)) => {
            let lifted = s + displacement;
            let end = surface.reduce(lifted);
            let (ex, ey) = end.planar().expect("planar");
            [
                ((lifted.x - ex) / lx).round() as i64,
                ((lifted.y - ey) / ly).round() as i64,
            ]
        }
        _ => [0, 0],
    }
}

fn sphere_angle(a: &Vector3<f64>, b: &Vector3<f64>) -> f64 {
    a.cross(b).norm().atan2(a.dot(b))
}

fn same_surface(surface: &Surface, points: &[&Point]) -> Result<(), GeomError> {
    points.iter().try_for_each(|p| surface.check(p))
}

/// The unique shortest geodesic from `a` to `b`. On the torus `class_hint`
/// picks the lattice translate of `b` (the winding of the result); without a
/// hint the shortest translate is used.
pub fn geodesic_between(
    surface: &Surface,
    a: &Point,
    b: &Point,
    class_hint: Option<[i64; 2]>,
) -> Result<GeodesicSegment, GeomError> {
    same_surface(surface, &[a, b])?;
    match (a, b) {
        (Point::Sphere(pa), Point::Sphere(pb)) => {
            let theta = sphere_angle(pa, pb);
            if theta > PI - CUT_LOCUS_TOL {
                return Err(GeomError::NonUniqueGeodesic);
            }
            if theta == 0.0 {
                return Ok(GeodesicSegment::constant(*surface, *a));
            }
            let dir = (pb - pa * pa.dot(pb)).normalize();
            Ok(GeodesicSegment::raw(*surface, *a, dir, theta))
        }
        (Point::Planar(pa), Point::Planar(pb)) => {
            let d = match surface.kind() {
                SurfaceKind::FlatTorus { lx, ly } => {
                    let raw = pb - pa;
                    match class_hint {
                        Some([kx, ky]) => raw + Vector2::new(kx as f64 * lx, ky as f64 * ly),
                        None => Vector2::new(nearest_image(raw.x, lx)?, nearest_image(raw.y, ly)?),
                    }
                }
                _ => pb - pa,
            };
            let len = d.norm();
            if len == 0.0 {
                return Ok(GeodesicSegment::constant(*surface, *a));
            }
            let dir = d / len;
            Ok(GeodesicSegment::raw(*surface, *a, Vector3::new(dir.x, dir.y, 0.0), len))
        }
        _ => unreachable!("checked by same_surface"),
    }
}

/// Shortest lattice image of a displacement component in (−L, L).
fn nearest_image(d: f64, period: f64) -> Result<f64, GeomError> {
    let r = d - (d / period).round() * period;
    if (r.abs() - period / 2.0).abs() < CUT_LOCUS_TOL {
        return Err(GeomError::NonUniqueGeodesic);
    }
    Ok(r)
}

/// Intrinsic distance.
pub fn distance(surface: &Surface, a: &Point, b: &Point) -> Result<f64, GeomError> {
    same_surface(surface, &[a, b])?;
    Ok(match (a, b) {
        (Point::Sphere(pa), Point::Sphere(pb)) => sphere_angle(pa, pb),
        (Point::Planar(pa), Point::Planar(pb)) => {
            let d = pb - pa;
            match surface.kind() {
                SurfaceKind::FlatTorus { lx, ly } => {
                    let dx = d.x - (d.x / lx).round() * lx;
                    let dy = d.y - (d.y / ly).round() * ly;
                    dx.hypot(dy)
                }
                _ => d.norm(),
            }
        }
        _ => unreachable!("checked by same_surface"),
    })
}

/// Integral of the canonical form over the geodesic triangle `a, b, c` (in
/// that order), from closed formulas: the shoelace formula on flat surfaces
/// (on compatible lifts for the torus) and the oriented spherical excess on
/// the sphere. The third side is the shortest geodesic homotopic to the
/// concatenation of the first two.
pub fn geodesic_triangle_area(surface: &Surface, a: &Point, b: &Point, c: &Point) -> Result<f64, GeomError> {
    let ab = geodesic_between(surface, a, b, None)?;
    let bc = geodesic_between(surface, b, c, None)?;
    match (a, b, c) {
        (Point::Sphere(pa), Point::Sphere(pb), Point::Sphere(pc)) => {
            geodesic_between(surface, a, c, None)?;
            Ok(surface.form_scale() * oriented_excess(pa, pb, pc))
        }
        _ => {
            let hint = [ab.winding()[0] + bc.winding()[0], ab.winding()[1] + bc.winding()[1]];
            geodesic_between(surface, a, c, Some(hint))?;
            let u = ab.displacement();
            let v = u + bc.displacement();
            Ok(surface.form_scale() * surface.orientation_sign() * 0.5 * (u.x * v.y - u.y * v.x))
        }
    }
}

/// Signed area of the spherical triangle, positive when counter-clockwise
/// seen from outside.
pub(crate) fn oriented_excess(a: &Vector3<f64>, b: &Vector3<f64>, c: &Vector3<f64>) -> f64 {
    let det = a.dot(&b.cross(c));
    let denom = 1.0 + a.dot(b) + b.dot(c) + c.dot(a);
    2.0 * det.atan2(denom)
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_abs_diff_eq;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn plane() -> Surface {
        Surface::euclidean_plane()
    }

    fn sphere() -> Surface {
        Surface::unit_sphere()
    }

    fn torus() -> Surface {
        Surface::flat_torus(1.0, 1.0).unwrap()
    }

    #[test]
    fn plane_segment() {
        let s = plane();
        let g = geodesic_between(&s, &s.point(&[0.0, 0.0]).unwrap(), &s.point(&[3.0, 4.0]).unwrap(), None).unwrap();
        assert_abs_diff_eq!(g.length(), 5.0);
        assert_abs_diff_eq!(g.direction().x, 0.6);
        assert_abs_diff_eq!(g.direction().y, 0.8);
        let mid = g.evaluate(2.5).unwrap().planar().unwrap();
        assert_abs_diff_eq!(mid.0, 1.5);
        assert_abs_diff_eq!(mid.1, 2.0);
        assert!(matches!(g.evaluate(5.5), Err(GeomError::OutOfRange { .. })));
    }

    #[test]
    fn evaluate_endpoints() {
        let s = plane();
        let g = geodesic_between(&s, &s.point(&[0.0, 0.0]).unwrap(), &s.point(&[2.0, 0.0]).unwrap(), None).unwrap();
        assert_eq!(g.evaluate(1.0).unwrap().planar().unwrap(), (1.0, 0.0));
        assert_eq!(g.evaluate(0.0).unwrap(), g.start());
        assert_eq!(g.evaluate(g.length()).unwrap().planar().unwrap(), (2.0, 0.0));
    }

    #[test]
    fn sphere_meridian() {
        let s = sphere();
        let n = s.point(&[0.0, 0.0, 1.0]).unwrap();
        let e = s.point(&[1.0, 0.0, 0.0]).unwrap();
        let g = geodesic_between(&s, &n, &e, None).unwrap();
        assert_abs_diff_eq!(g.length(), PI / 2.0, epsilon = 1e-15);
        let end = g.evaluate(PI / 2.0).unwrap().sphere().unwrap();
        assert_abs_diff_eq!((end - Vector3::x()).norm(), 0.0, epsilon = 1e-15);
    }

    #[test]
    fn sphere_antipodes_are_not_unique() {
        let s = sphere();
        let n = s.point(&[0.0, 0.0, 1.0]).unwrap();
        let south = s.point(&[0.0, 0.0, -1.0]).unwrap();
        assert_eq!(geodesic_between(&s, &n, &south, None), Err(GeomError::NonUniqueGeodesic));
        assert_abs_diff_eq!(distance(&s, &n, &south).unwrap(), PI);
    }

    #[test]
    fn torus_crosses_the_seam() {
        let t = torus();
        let a = t.point(&[0.1, 0.0]).unwrap();
        let b = t.point(&[0.9, 0.0]).unwrap();
        let g = geodesic_between(&t, &a, &b, None).unwrap();
        assert_abs_diff_eq!(g.length(), 0.2, epsilon = 1e-15);
        assert_abs_diff_eq!(g.direction().x, -1.0);
        assert_eq!(g.winding(), [-1, 0]);
        let end = g.end().planar().unwrap();
        assert_abs_diff_eq!(end.0, 0.9, epsilon = 1e-15);
        assert_abs_diff_eq!(distance(&t, &a, &b).unwrap(), 0.2, epsilon = 1e-15);

        let hinted = geodesic_between(&t, &a, &b, Some([0, 0])).unwrap();
        assert_abs_diff_eq!(hinted.length(), 0.8, epsilon = 1e-15);
        assert_eq!(hinted.winding(), [0, 0]);

        let half = t.point(&[0.6, 0.0]).unwrap();
        assert_eq!(geodesic_between(&t, &a, &half, None), Err(GeomError::NonUniqueGeodesic));
    }

    #[test]
    fn mismatched_points_are_rejected() {
        let s = sphere();
        let p = plane().point(&[0.0, 0.0]).unwrap();
        let n = s.point(&[0.0, 0.0, 1.0]).unwrap();
        assert!(matches!(geodesic_between(&s, &n, &p, None), Err(GeomError::SurfaceMismatch(_))));
        assert!(distance(&s, &p, &p).is_err());
    }

    #[test]
    fn triangle_areas() {
        let s = plane();
        let (a, b, c) = (
            s.point(&[0.0, 0.0]).unwrap(),
            s.point(&[1.0, 0.0]).unwrap(),
            s.point(&[1.0, 1.0]).unwrap(),
        );
        assert_abs_diff_eq!(geodesic_triangle_area(&s, &a, &b, &c).unwrap(), 0.5);
        assert_abs_diff_eq!(geodesic_triangle_area(&s, &a, &c, &b).unwrap(), -0.5);

        let sp = sphere();
        let (n, x, y) = (
            sp.point(&[0.0, 0.0, 1.0]).unwrap(),
            sp.point(&[1.0, 0.0, 0.0]).unwrap(),
            sp.point(&[0.0, 1.0, 0.0]).unwrap(),
        );
        assert_abs_diff_eq!(geodesic_triangle_area(&sp, &n, &x, &y).unwrap(), PI / 2.0, epsilon = 1e-14);
        // Girard: three right angles, excess 3π/2 − π.
        assert_abs_diff_eq!(geodesic_triangle_area(&sp, &n, &y, &x).unwrap(), -PI / 2.0, epsilon = 1e-14);

        let pp = Surface::phase_plane(1.0).unwrap();
        let area = geodesic_triangle_area(
            &pp,
            &pp.point(&[0.0, 0.0]).unwrap(),
            &pp.point(&[0.0, 2.0]).unwrap(),
            &pp.point(&[1.0, 2.0]).unwrap(),
        )
        .unwrap();
        assert_abs_diff_eq!(area, 1.0);
    }

    #[test]
    fn reversal_matches_swapped_endpoints() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        for s in [plane(), sphere(), torus()] {
            for _ in 0..200 {
                let (a, b) = (random_point(&s, &mut rng), random_point(&s, &mut rng));
                let (Ok(ab), Ok(ba)) = (
                    geodesic_between(&s, &a, &b, None),
                    geodesic_between(&s, &b, &a, None),
                ) else {
                    continue;
                };
                let rev = ab.reversed();
                assert_abs_diff_eq!(rev.length(), ba.length(), epsilon = 1e-12);
                for k in 0..=8 {
                    let x = ba.length() * k as f64 / 8.0;
                    let d = distance(&s, &rev.point_at(x), &ba.point_at(x)).unwrap();
                    assert!(d < 1e-9, "{} reversal mismatch {d}", s.name());
                }
            }
        }
    }

    #[test]
    fn distance_is_a_metric() {
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        for s in [plane(), sphere(), torus()] {
            for _ in 0..1000 {
                let (a, b, c) = (
                    random_point(&s, &mut rng),
                    random_point(&s, &mut rng),
                    random_point(&s, &mut rng),
                );
                let ab = distance(&s, &a, &b).unwrap();
                let ba = distance(&s, &b, &a).unwrap();
                let bc = distance(&s, &b, &c).unwrap();
                let ac = distance(&s, &a, &c).unwrap();
                assert!((ab - ba).abs() < 1e-9);
                assert!(ac <= ab + bc + 1e-9);
            }
        }
        let s = plane();
        assert_abs_diff_eq!(
            distance(&s, &s.point(&[0.0, 0.0]).unwrap(), &s.point(&[1.0, 1.0]).unwrap()).unwrap(),
            2f64.sqrt()
        );
    }

    fn random_point(s: &Surface, rng: &mut impl Rng) -> Point {
        if s.is_sphere() {
            let v = Vector3::new(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0));
            Point::Sphere(v.normalize())
        } else {
            s.point(&[rng.gen_range(-2.0..2.0), rng.gen_range(-2.0..2.0)]).unwrap()
        }
    }
}
