//! Romberg extrapolation of the tensor midpoint rule on dyadic grids.
//!
//! A sheet is a map `[0,1]² → cover coordinates`. Its partial derivatives are
//! central differences over each cell (edge-midpoint samples), so both the
//! quadrature and the differencing errors expand in even powers of the mesh
//! width and Richardson extrapolation applies.

use nalgebra::Vector3;

use super::{GeomError, Surface};

/// Deepest dyadic level tried before giving up (4096 × 4096 cells).
pub const MAX_LEVEL: u32 = 12;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SheetIntegral {
    pub value: f64,
    pub error_estimate: f64,
    /// Finest dyadic level evaluated.
    pub level: u32,
}

/// Tensor midpoint rule with `2^level` cells per side.
pub fn midpoint_sum(surface: &Surface, sheet: &dyn Fn(f64, f64) -> Vector3<f64>, level: u32) -> f64 {
    let n = 1usize << level;
    let h = 1.0 / n as f64;
    let sphere = surface.is_sphere();
    let mut total = 0.0;
    for i in 0..n {
        let s = (i as f64 + 0.5) * h;
        let mut row = 0.0;
        for j in 0..n {
            let t = (j as f64 + 0.5) * h;
            let ds = sheet(s + 0.5 * h, t) - sheet(s - 0.5 * h, t);
            let dt = sheet(s, t + 0.5 * h) - sheet(s, t - 0.5 * h);
            let at = if sphere { sheet(s, t).normalize() } else { Vector3::zeros() };
            // Differences are not divided by h: the cell area h² cancels.
            row += surface.form(&at, &ds, &dt);
        }
        total += row;
    }
    total
}

/// Integral of the surface's canonical form over `sheet`, refined until the
/// Romberg error estimate drops below `tol`.
pub fn integrate_form_over_sheet(
    surface: &Surface,
    sheet: &dyn Fn(f64, f64) -> Vector3<f64>,
    tol: f64,
) -> Result<SheetIntegral, GeomError> {
    if !(tol.is_finite() && tol > 0.0) {
        return Err(GeomError::InvalidInput(format!("tolerance {tol}")));
    }
    let first = if surface.is_sphere() { 2 } else { 1 };
    let mut rows: Vec<Vec<f64>> = Vec::new();
    let mut last = (0.0, f64::INFINITY);
    for level in first..=MAX_LEVEL {
        let mut row = vec![midpoint_sum(surface, sheet, level)];
        if let Some(prev) = rows.last() {
            for j in 1..=prev.len() {
                let factor = 4f64.powi(j as i32) - 1.0;
                row.push(row[j - 1] + (row[j - 1] - prev[j - 1]) / factor);
            }
        }
        let k = row.len() - 1;
        if k > 0 {
            let value = row[k];
            let err = (row[k] - row[k - 1]).abs();
            last = (value, err);
            if !value.is_finite() {
                return Err(GeomError::InvalidInput("sheet produced a non-finite integrand".into()));
            }
            if err <= tol || err <= 1e-14 * value.abs().max(1.0) {
                return Ok(SheetIntegral {
                    value,
                    error_estimate: err,
                    level,
                });
            }
        }
        rows.push(row);
    }
    Err(GeomError::RefinementLimit {
        value: last.0,
        error_estimate: last.1,
    })
}
