use std::f64::consts::PI;

use serde::{Deserialize, Serialize};

use super::{ExperimentError, TriangulatedSphere};
use crate::cohomology::{
    cycle_pairing, mod_taille_triviality, reduce_mod_taille, solve_coboundary_real, AdditiveReal, Cochain,
    CoboundarySolution, ModTailleOutcome, Semigroup,
};
use crate::deformation::{GeometricCocycle, Parameter};
use crate::geom::{Integrator, Surface};

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct RealReport {
    /// Pairing of the restricted cocycle with the fundamental cycle.
    pub pairing: f64,
    pub expected: f64,
    pub coboundary: bool,
    pub residual_max: f64,
    pub residual_l2: f64,
    /// `|pairing| / ‖z‖₂`: no real coboundary comes closer than this in ℓ².
    pub residual_l2_bound: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ModTailleReport {
    pub taille: f64,
    /// Pairing of `n·ω̃` with the fundamental cycle.
    pub pairing: f64,
    /// `"trivial"`, `"not_trivial"` or `"undecided"`.
    pub outcome: String,
    pub residual: Option<f64>,
    pub reason: Option<String>,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ContinuityReport {
    pub max_cell_length: f64,
    /// Largest |ω̃| over nonzero pairs of cells.
    pub max_cell_abs: f64,
    pub max_face_area: f64,
    pub min_face_area: f64,
    /// Any real φ with δφ = ω̃ on one face's six flags has some cell with
    /// |φ| at least this (the face area spread over six cells).
    pub local_phi_bound: f64,
    /// `τ/2 − n·max_cell_abs`; positive means small cell values pin the
    /// integer lift, so a continuous small solution would lift to ℝ.
    pub lift_margin: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct NontrivialityReport {
    pub level: u32,
    pub n: i64,
    pub integrator: Integrator,
    pub faces: usize,
    pub flags: usize,
    pub nonzero_pairs: usize,
    pub real: RealReport,
    pub mod_taille: ModTailleReport,
    pub continuity: ContinuityReport,
}

/// ω̃ on pairs of face-poset elements, each element carried by the
/// geodesic between the barycenters of its two cells.
pub fn restricted_omega(
    ts: &TriangulatedSphere,
    n: i64,
    integrator: Integrator,
) -> Result<Cochain<AdditiveReal>, ExperimentError> {
    let cx = GeometricCocycle::new(Surface::unit_sphere(), Parameter::Quantum(n), integrator)?;
    let poset = &ts.poset;
    let paths = (0..poset.order()).map(|a| ts.element_path(a)).collect::<Result<Vec<_>, _>>()?;
    let mut entries = Vec::new();
    for t in poset.nonzero_tuples(2)? {
        let (Some(p), Some(q)) = (&paths[t[0]], &paths[t[1]]) else {
            unreachable!("nonzero tuples avoid the zero");
        };
        let v = cx
            .omega_tilde(p, q)?
            .real()
            .ok_or_else(|| ExperimentError::InvalidInput(format!("ω̃ exceptional on cell {t:?}")))?;
        entries.push((t, v));
    }
    Ok(Cochain::from_entries(poset, 2, AdditiveReal, entries)?)
}

/// Restricts ω̃ to the face-poset semigroup and tests it against the
/// fundamental cycle, over ℝ and mod τ.
pub fn nontriviality_report(
    ts: &TriangulatedSphere,
    n: i64,
    integrator: Integrator,
    tol: f64,
) -> Result<NontrivialityReport, ExperimentError> {
    let tau = Surface::unit_sphere().taille();
    let poset = &ts.poset;
    let f = restricted_omega(ts, n, integrator)?;
    let nonzero_pairs = f.len();
    let max_cell_abs = f.entries().fold(0.0f64, |a, (_, v)| a.max(v.abs()));
    let z = &ts.fundamental_cycle;
    let z_norm = z.terms().map(|(_, c)| (c * c) as f64).sum::<f64>().sqrt();

    let pairing = cycle_pairing(&f, z)?;
    let real = match solve_coboundary_real(poset, &f, tol)? {
        CoboundarySolution::Trivial { residual, .. } => RealReport {
            pairing,
            expected: 4.0 * PI,
            coboundary: true,
            residual_max: residual,
            residual_l2: f64::NAN,
            residual_l2_bound: pairing.abs() / z_norm,
        },
        CoboundarySolution::NotTrivial { residual_max, residual_l2 } => RealReport {
            pairing,
            expected: 4.0 * PI,
            coboundary: false,
            residual_max,
            residual_l2,
            residual_l2_bound: pairing.abs() / z_norm,
        },
    };

    let scaled = f.map(AdditiveReal, |v| n as f64 * v);
    let fm = reduce_mod_taille(&scaled, tau)?;
    let mod_pairing = cycle_pairing(&scaled, z)?;
    let mod_taille = match mod_taille_triviality(poset, &fm, std::slice::from_ref(z), tol)? {
        ModTailleOutcome::Trivial { residual, .. } => ModTailleReport {
            taille: tau,
            pairing: mod_pairing,
            outcome: "trivial".into(),
            residual: Some(residual),
            reason: None,
        },
        ModTailleOutcome::NotTrivial { pairing, .. } => ModTailleReport {
            taille: tau,
            pairing,
            outcome: "not_trivial".into(),
            residual: None,
            reason: None,
        },
        ModTailleOutcome::Undecided { reason } => ModTailleReport {
            taille: tau,
            pairing: mod_pairing,
            outcome: "undecided".into(),
            residual: None,
            reason: Some(reason),
        },
    };

    let max_face_area = ts.face_areas.iter().copied().fold(0.0, f64::max);
    let min_face_area = ts.face_areas.iter().copied().fold(f64::INFINITY, f64::min);
    let continuity = ContinuityReport {
        max_cell_length: ts.max_cell_length(),
        max_cell_abs,
        max_face_area,
        min_face_area,
        local_phi_bound: min_face_area / 6.0,
        lift_margin: tau / 2.0 - n.unsigned_abs() as f64 * max_cell_abs,
    };

    Ok(NontrivialityReport {
        level: ts.level,
        n,
        integrator,
        faces: ts.faces.len(),
        flags: z.len(),
        nonzero_pairs,
        real,
        mod_taille,
        continuity,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::experiments::build_triangulated_sphere;

    #[test]
    fn icosahedron_obstruction() {
        let ts = build_triangulated_sphere(0).unwrap();
        let r = nontriviality_report(&ts, 1, Integrator::Exact, 1e-8).unwrap();
        assert!((r.real.pairing - 4.0 * PI).abs() < 1e-9);
        assert!(!r.real.coboundary);
        assert!(r.real.residual_l2 >= r.real.residual_l2_bound * (1.0 - 1e-9));
        assert_eq!(r.mod_taille.outcome, "trivial");
        assert!(r.continuity.lift_margin > 0.0);
    }
}
