//! Integration of the canonical form over a cone filling of a closed,
//! contractible loop of geodesic segments.
//!
//! On flat surfaces the loop is lifted to the planar cover and coned off from
//! its lifted base point. On the sphere the apex is chosen to keep its
//! antipode as far from the loop as possible, so that every cone ray is a
//! unique minimizing arc; the filling is then the one that stays on the
//! apex's side of the loop.

use std::f64::consts::{FRAC_PI_4, PI};

use nalgebra::{Vector2, Vector3};

use serde::{Deserialize, Serialize};

use super::geodesic::oriented_excess;
use super::quadrature::integrate_form_over_sheet;
use super::{distance, GeodesicSegment, GeomError, Point, Surface, DEFAULT_TOL, ENDPOINT_TOL};

/// Smallest admissible distance between the apex's antipode and the loop.
const MIN_APEX_MARGIN: f64 = 1e-6;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LoopIntegral {
    pub value: f64,
    pub error_estimate: f64,
    pub apex: Point,
}

/// A straight (flat) or great-circle piece in cover coordinates.
struct Piece {
    seg: GeodesicSegment,
    offset: Vector3<f64>,
    s0: f64,
    s1: f64,
}

impl Piece {
    fn at(&self, t: f64) -> Vector3<f64> {
        self.seg.cover_at(self.s0 + t * (self.s1 - self.s0)) + self.offset
    }
}

fn pieces(surface: &Surface, segs: &[GeodesicSegment]) -> Result<Vec<Piece>, GeomError> {
    let segs: Vec<&GeodesicSegment> = segs.iter().filter(|s| s.length() > 0.0).collect();
    let Some(first) = segs.first() else {
        return Ok(Vec::new());
    };
    for w in segs.windows(2) {
        if distance(surface, &w[0].end(), &w[1].start())? > ENDPOINT_TOL {
            return Err(GeomError::InvalidInput("loop segments are not contiguous".into()));
        }
    }
    let mut out = Vec::new();
    if surface.is_sphere() {
        let last = segs.last().expect("nonempty");
        if distance(surface, &last.end(), &first.start())? > ENDPOINT_TOL {
            return Err(GeomError::InvalidInput("loop is not closed".into()));
        }
        for seg in segs {
            let n = (seg.length() / FRAC_PI_4).ceil().max(1.0) as usize;
            for k in 0..n {
                out.push(Piece {
                    seg: *seg,
                    offset: Vector3::zeros(),
                    s0: seg.length() * k as f64 / n as f64,
                    s1: seg.length() * (k + 1) as f64 / n as f64,
                });
            }
        }
    } else {
        // Lift: each segment is translated so that it starts where the
        // previous one ended in the cover.
        let origin = first.start().cover();
        let mut pos = origin;
        for seg in segs {
            out.push(Piece {
                seg: *seg,
                offset: pos - seg.start().cover(),
                s0: 0.0,
                s1: seg.length(),
            });
            let d: Vector2<f64> = seg.displacement();
            pos += Vector3::new(d.x, d.y, 0.0);
        }
        if (pos - origin).norm() > ENDPOINT_TOL {
            return Err(GeomError::InvalidInput(
                "loop is not closed or not contractible".into(),
            ));
        }
    }
    Ok(out)
}

/// Smallest value of `q · x` over a piece: the cosine of the largest
/// distance from `q` to the arc.
fn min_dot(q: &Vector3<f64>, piece: &Piece) -> f64 {
    let p = piece.seg.cover_at(piece.s0);
    let d = piece.seg.tangent_at(piece.s0);
    let len = piece.s1 - piece.s0;
    let (a, b) = (q.dot(&p), q.dot(&d));
    let mut m = a.min(a * len.cos() + b * len.sin());
    // Interior minimum where s − atan2(b, a) = π.
    let mut s = b.atan2(a) + PI;
    while s > len {
        s -= 2.0 * PI;
    }
    while s < 0.0 {
        s += 2.0 * PI;
    }
    if s <= len {
        m = m.min(a * s.cos() + b * s.sin());
    }
    m
}

/// Distance between the antipode of `apex` and the loop.
fn apex_margin(apex: &Vector3<f64>, pieces: &[Piece]) -> f64 {
    let m = pieces.iter().map(|p| min_dot(apex, p)).fold(1.0, f64::min);
    PI - m.clamp(-1.0, 1.0).acos()
}

fn best_sphere_apex(pieces: &[Piece]) -> Result<Vector3<f64>, GeomError> {
    let mut candidates = Vec::with_capacity(28);
    let centroid: Vector3<f64> = pieces
        .iter()
        .flat_map(|p| [p.at(0.0), p.at(0.5)])
        .sum();
    if centroid.norm() > 1e-9 {
        candidates.push(centroid.normalize());
    }
    for i in -1..=1 {
        for j in -1..=1 {
            for k in -1..=1 {
                if (i, j, k) != (0, 0, 0) {
                    candidates.push(Vector3::new(i as f64, j as f64, k as f64).normalize());
                }
            }
        }
    }
    let (best, margin) = candidates
        .into_iter()
        .map(|c| (c, apex_margin(&c, pieces)))
        .fold((Vector3::zeros(), f64::NEG_INFINITY), |acc, x| if x.1 > acc.1 { x } else { acc });
    if margin <= MIN_APEX_MARGIN {
        return Err(GeomError::NoFillingApex);
    }
    Ok(best)
}

/// How the cone pieces are integrated.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(tag = "method", rename_all = "snake_case")]
pub enum Integrator {
    /// Romberg quadrature of the pulled-back form on each cone sheet, to a
    /// total error estimate of `tol`.
    Quadrature { tol: f64 },
    /// Each cone piece is a geodesic triangle with the apex; sum their
    /// signed areas in closed form.
    Exact,
}

impl Default for Integrator {
    fn default() -> Self {
        Integrator::Quadrature { tol: DEFAULT_TOL }
    }
}

fn integrate_cone(
    surface: &Surface,
    pieces: &[Piece],
    apex: Vector3<f64>,
    integrator: Integrator,
) -> Result<(f64, f64), GeomError> {
    let tol = match integrator {
        Integrator::Exact => return Ok((cone_exact(surface, pieces, &apex), 0.0)),
        Integrator::Quadrature { tol } => tol / pieces.len().max(1) as f64,
    };
    let mut value = 0.0;
    let mut err = 0.0;
    for piece in pieces {
        let r = if surface.is_sphere() {
            // Normalized chords trace the minimizing arcs from the apex.
            let sheet = |s: f64, t: f64| (apex * (1.0 - s) + piece.at(t) * s).normalize();
            integrate_form_over_sheet(surface, &sheet, tol)?
        } else {
            let sheet = |s: f64, t: f64| apex * (1.0 - s) + piece.at(t) * s;
            integrate_form_over_sheet(surface, &sheet, tol)?
        };
        value += r.value;
        err += r.error_estimate;
    }
    Ok((value, err))
}

fn cone_exact(surface: &Surface, pieces: &[Piece], apex: &Vector3<f64>) -> f64 {
    let c = surface.form_scale();
    pieces
        .iter()
        .map(|piece| {
            let (p0, p1) = (piece.at(0.0), piece.at(1.0));
            if surface.is_sphere() {
                c * oriented_excess(apex, &p0, &p1)
            } else {
                let (u, v) = (p0 - apex, p1 - apex);
                c * surface.orientation_sign() * 0.5 * (u.x * v.y - u.y * v.x)
            }
        })
        .sum()
}

/// Integral of the canonical form over a cone filling of the closed loop
/// `segs`, with an automatically chosen apex.
pub fn integrate_over_loop(surface: &Surface, segs: &[GeodesicSegment], tol: f64) -> Result<LoopIntegral, GeomError> {
    integrate_over_loop_with(surface, segs, None, Integrator::Quadrature { tol })
}

/// As [`integrate_over_loop`], coning from a given apex. On flat surfaces
/// the apex is placed in the lift's fundamental domain copy nearest the
/// loop's base point; on the sphere its antipode must stay off the loop.
pub fn integrate_over_loop_from(
    surface: &Surface,
    segs: &[GeodesicSegment],
    apex: &Point,
    tol: f64,
) -> Result<LoopIntegral, GeomError> {
    integrate_over_loop_with(surface, segs, Some(apex), Integrator::Quadrature { tol })
}

/// Cone-filling integral with an optional apex and a choice of integrator.
pub fn integrate_over_loop_with(
    surface: &Surface,
    segs: &[GeodesicSegment],
    apex: Option<&Point>,
    integrator: Integrator,
) -> Result<LoopIntegral, GeomError> {
    if let Integrator::Quadrature { tol } = integrator {
        if !(tol.is_finite() && tol > 0.0) {
            return Err(GeomError::InvalidInput(format!("tolerance {tol}")));
        }
    }
    if let Some(p) = apex {
        surface.check(p)?;
    }
    let pieces = pieces(surface, segs)?;
    let Some(first) = pieces.first() else {
        let apex = match apex {
            Some(p) => *p,
            None => segs
                .first()
                .map(|s| s.start())
                .ok_or_else(|| GeomError::InvalidInput("empty loop".into()))?,
        };
        return Ok(LoopIntegral {
            value: 0.0,
            error_estimate: 0.0,
            apex,
        });
    };
    let a = match apex {
        None if surface.is_sphere() => best_sphere_apex(&pieces)?,
        None => first.at(0.0),
        Some(Point::Sphere(v)) => {
            if apex_margin(v, &pieces) <= MIN_APEX_MARGIN {
                return Err(GeomError::NoFillingApex);
            }
            *v
        }
        Some(p @ Point::Planar(_)) => {
            let base = first.at(0.0);
            let delta = p.cover() - base;
            let shift = match surface.periods() {
                Some((lx, ly)) => Vector3::new(
                    delta.x - (delta.x / lx).round() * lx,
                    delta.y - (delta.y / ly).round() * ly,
                    0.0,
                ),
                None => delta,
            };
            base + shift
        }
    };
    let (value, error_estimate) = integrate_cone(surface, &pieces, a, integrator)?;
    Ok(LoopIntegral {
        value,
        error_estimate,
        apex: surface.point_from_cover(&a),
    })
}
