#![allow(dead_code)]

use std::f64::consts::PI;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use taille_core::geom::{GeodesicSegment, Point, Surface};
use taille_core::paths::Path;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

pub fn surfaces() -> Vec<Surface> {
    vec![
        Surface::euclidean_plane(),
        Surface::unit_sphere(),
        Surface::flat_torus(2.0, 3.0).unwrap(),
    ]
}

pub fn random_point(s: &Surface, rng: &mut impl Rng) -> Point {
    if s.is_sphere() {
        let z: f64 = rng.gen_range(-1.0..1.0);
        let phi: f64 = rng.gen_range(0.0..2.0 * PI);
        let r = (1.0 - z * z).sqrt();
        return s.point(&[r * phi.cos(), r * phi.sin(), z]).unwrap();
    }
    match s.periods() {
        Some((lx, ly)) => s.point(&[rng.gen_range(0.0..lx), rng.gen_range(0.0..ly)]).unwrap(),
        None => s.point(&[rng.gen_range(-2.0..2.0), rng.gen_range(-2.0..2.0)]).unwrap(),
    }
}

/// A unit vector tangent at `p`.
pub fn random_direction(p: &Point, rng: &mut impl Rng) -> Vec<f64> {
    match p {
        Point::Planar(_) => {
            let a: f64 = rng.gen_range(0.0..2.0 * PI);
            vec![a.cos(), a.sin()]
        }
        Point::Sphere(v) => loop {
            let w = nalgebra::Vector3::new(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0));
            let t = w - v * v.dot(&w);
            if t.norm() > 0.1 {
                let t = t.normalize();
                break vec![t.x, t.y, t.z];
            }
        },
    }
}

/// One to three geodesic pieces from `start`; on the torus pieces may be
/// long enough to wind.
pub fn random_path_from(s: &Surface, start: Point, rng: &mut impl Rng) -> Path {
    let pieces = rng.gen_range(1..=3);
    let mut segs = Vec::new();
    let mut at = start;
    for _ in 0..pieces {
        let max = if s.periods().is_some() { 4.0 } else { 1.2 };
        let seg = GeodesicSegment::new(*s, at, &random_direction(&at, rng), rng.gen_range(0.05..max)).unwrap();
        at = seg.end();
        segs.push(seg);
    }
    Path::from_segments(*s, segs).unwrap()
}

pub fn random_path(s: &Surface, rng: &mut impl Rng) -> Path {
    let start = random_point(s, rng);
    random_path_from(s, start, rng)
}

/// Three composable paths.
pub fn random_triple(s: &Surface, rng: &mut impl Rng) -> (Path, Path, Path) {
    let g1 = random_path(s, rng);
    let g2 = random_path_from(s, g1.end(), rng);
    let g3 = random_path_from(s, g2.end(), rng);
    (g1, g2, g3)
}

/// A path inside the cap of geodesic radius `radius` about `center`,
/// through `pieces + 1` random waypoints.
pub fn random_cap_path(center: &nalgebra::Vector3<f64>, radius: f64, start: Option<Point>, pieces: usize, rng: &mut impl Rng) -> Path {
    let s = Surface::unit_sphere();
    let mut pts = vec![start.unwrap_or_else(|| random_cap_point(center, radius, rng))];
    pts.extend((0..pieces).map(|_| random_cap_point(center, radius, rng)));
    Path::from_waypoints(s, &pts).unwrap()
}

pub fn random_cap_point(center: &nalgebra::Vector3<f64>, radius: f64, rng: &mut impl Rng) -> Point {
    let helper = if center.x.abs() < 0.9 { nalgebra::Vector3::x() } else { nalgebra::Vector3::y() };
    let e1 = center.cross(&helper).normalize();
    let e2 = center.cross(&e1);
    // Uniform in area on the cap.
    let c = 1.0 - rng.gen_range(0.0..1.0) * (1.0 - radius.cos());
    let r = c.acos();
    let a: f64 = rng.gen_range(0.0..2.0 * PI);
    let v = center * r.cos() + (e1 * a.cos() + e2 * a.sin()) * r.sin();
    Point::Sphere(v.normalize())
}
