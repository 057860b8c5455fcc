//! End-to-end acceptance run: one PASS/FAIL line per criterion.

mod common;

use std::f64::consts::PI;
use std::time::Instant;

use rand::Rng;

use taille_core::cohomology::{
    coboundary, cocycle_basis, coherent_deform, cup_sum, exp_lambda, is_cocycle, AdditiveReal, Cochain, FiniteSemigroup,
    MultiplicativeReal, Semigroup,
};
use taille_core::deformation::{CocycleEval, DeformationError, GeometricCocycle, Parameter};
use taille_core::experiments::{
    bohr_check, build_triangulated_sphere, debroglie, nontriviality_report, phase_plane_circle, restricted_omega, sphere_experiment,
    DeBroglieConfig, SphereConfig,
};
use taille_core::geom::{Integrator, Surface};

type Outcome = Result<String, String>;

/// Prefix for a failure that is not the documented one.
const UNEXPECTED: &str = "unexpected: ";

fn check(cond: bool, detail: String) -> Outcome {
    if cond {
        Ok(detail)
    } else {
        Err(detail)
    }
}

fn wrap(a: f64) -> f64 {
    a - 2.0 * PI * (a / (2.0 * PI)).round()
}

fn random_real(s: &impl Semigroup, arity: usize, rng: &mut impl Rng) -> Cochain<AdditiveReal> {
    Cochain::from_fn(s, arity, AdditiveReal, |_| rng.gen_range(-1.0..1.0)).unwrap()
}

fn debroglie_reproduction() -> Outcome {
    // The last case stands in for h = 6.62607015e-34 after rescaling h to 1.
    let cases = [(1.0, 2.0, 2.0), (2.0, 1.0, 10.0), (1.0, 3.0, 2.0)];
    let mut notes = Vec::new();
    let mut pass = true;
    for (h, p, x_max) in cases {
        let t = Instant::now();
        let r = debroglie(DeBroglieConfig {
            h,
            p,
            x_max,
            ..Default::default()
        })
        .map_err(|e| e.to_string())?;
        let secs = t.elapsed().as_secs_f64();
        let rel = (r.wavelength_estimate - h / p).abs() / (h / p);
        pass &= rel < 1e-6 && secs < 1.0;
        notes.push(format!("h={h} p={p}: rel err {rel:.1e} in {secs:.3}s"));
    }
    check(pass, notes.join("; "))
}

fn sphere_total_phase() -> Outcome {
    let t = Instant::now();
    let mut worst = 0.0f64;
    let mut linear = f64::NAN;
    for theta0 in [0.0, 30.0, 45.0, 60.0, 90.0] {
        for n in 1..=3 {
            let r = sphere_experiment(SphereConfig {
                theta0_deg: theta0,
                n,
                ..Default::default()
            })
            .map_err(|e| e.to_string())?;
            worst = worst.max(wrap(r.total_phase_change - n as f64 * PI).abs());
            if theta0 == 0.0 && n == 1 {
                linear = r.linearity_deviation.unwrap_or(f64::INFINITY);
            }
        }
    }
    let secs = t.elapsed().as_secs_f64();
    check(
        worst < 1e-6 && linear < 1e-8 && secs < 10.0,
        format!("max |total − nπ| mod 2π = {worst:.1e}, pole linearity {linear:.1e}, {secs:.2}s"),
    )
}

fn sign_flips() -> Outcome {
    let r = sphere_experiment(SphereConfig {
        theta0_deg: 90.0,
        n: 1,
        circuits: 2,
        ..Default::default()
    })
    .map_err(|e| e.to_string())?;
    let first_positive = r.trace.samples[0].weight.is_some_and(|w| (w - 1.0).norm() < 1e-9);
    let flips_ok = r.sign_flips.len() == 2
        && (r.sign_flips[0] - PI).abs() < 1e-9
        && (r.sign_flips[1] - 3.0 * PI).abs() < 1e-9;
    let after_one = (r.circuit_end_weights[0] + 1.0).norm() < 1e-9;
    let after_two = (r.circuit_end_weights[1] - 1.0).norm() < 1e-9;
    check(
        r.max_sign_deviation < 1e-9 && first_positive && flips_ok && r.undefined_at_pi && after_one && after_two,
        format!(
            "max |w ∓ 1| {:.1e}, flips at {:?}, undefined at π: {}, w after 1 circuit {:.3}, after 2 {:.3}",
            r.max_sign_deviation, r.sign_flips, r.undefined_at_pi, r.circuit_end_weights[0], r.circuit_end_weights[1]
        ),
    )
}

fn taille_and_identities() -> Outcome {
    let mut notes = Vec::new();
    let sphere_taille = Surface::unit_sphere().taille();
    let mut pass = sphere_taille == 4.0 * PI;
    notes.push(format!("taille(sphere) = {sphere_taille}"));

    let tol = 1e-9;
    let bound = f64::max(1e-8, tol);
    let mut rng = common::rng(4);
    for s in common::surfaces() {
        let cx = GeometricCocycle::new(
            s,
            if s.taille() > 0.0 { Parameter::Quantum(1) } else { Parameter::Lambda(1.0) },
            Integrator::Quadrature { tol },
        )
        .map_err(|e| e.to_string())?;
        let (mut done, mut skipped, mut worst) = (0, 0, 0.0f64);
        while done < 500 {
            let (g1, g2, g3) = common::random_triple(&s, &mut rng);
            match cx.cocycle_residual(&g1, &g2, &g3) {
                Ok(r) => {
                    worst = worst.max(r);
                    done += 1;
                }
                Err(DeformationError::Undefined(_)) => skipped += 1,
                Err(e) => return Err(e.to_string()),
            }
        }
        pass &= worst < bound;
        notes.push(format!("{} residual {worst:.1e} ({skipped} inadmissible skipped)", s.name()));
    }

    let mut dd = 0.0f64;
    for (_, s) in FiniteSemigroup::catalog() {
        for arity in 1..=3 {
            let f = random_real(&s, arity, &mut rng);
            let ddf = coboundary(&s, &coboundary(&s, &f).unwrap()).unwrap();
            dd = dd.max(ddf.entries().fold(0.0, |a, (_, v)| a.max(v.abs())));
        }
    }
    pass &= dd < 1e-12;
    notes.push(format!("δδ max {dd:.1e}"));

    // The identity is stated for all arities, but the cup sum is not
    // bilinear: expanding both sides leaves
    //   ((−1)^m [k odd] − (−1)^m) F(a₁..a_m) + ([m odd] − 1) G(a_{m+2}..),
    // which vanishes only when m and k are both odd. Every instance is
    // checked against the stated identity; the residue formula is checked
    // too so that a failure here is the known one and nothing else.
    let (mut holds, mut explained) = (0, 0);
    for _ in 0..100 {
        let n = rng.gen_range(3..=6);
        let s = FiniteSemigroup::random_repaired(n, rng.gen_range(0.3..0.9), &mut rng);
        let (m, k) = (rng.gen_range(1..=2), rng.gen_range(1..=2));
        let f = random_real(&s, m, &mut rng);
        let g = random_real(&s, k, &mut rng);
        let lhs = coboundary(&s, &cup_sum(&s, &f, &g).unwrap()).unwrap();
        let a = cup_sum(&s, &coboundary(&s, &f).unwrap(), &g).unwrap();
        let b = cup_sum(&s, &f, &coboundary(&s, &g).unwrap()).unwrap();
        let sign = if m % 2 == 0 { 1.0 } else { -1.0 };
        let rhs = Cochain::from_fn(&s, m + k + 1, AdditiveReal, |t| a.get(t) + sign * b.get(t)).unwrap();
        if lhs.distance(&rhs) < 1e-12 {
            holds += 1;
        }
        let cf = sign * ((k % 2) as f64 - 1.0);
        let cg = (m % 2) as f64 - 1.0;
        let residue = Cochain::from_fn(&s, m + k + 1, AdditiveReal, |t| {
            rhs.get(t) + cf * f.get(&t[..m]) + cg * g.get(&t[m + 1..])
        })
        .unwrap();
        if lhs.distance(&residue) < 1e-12 {
            explained += 1;
        }
    }
    notes.push(format!(
        "Leibniz holds on {holds}/100 (fails for even arities; residue formula matches {explained}/100)"
    ));
    if !pass || explained != 100 {
        return Err(format!("{UNEXPECTED}{}", notes.join("; ")));
    }
    check(holds == 100, notes.join("; "))
}

fn coherent_deformations() -> Outcome {
    let mut rng = common::rng(5);
    let (mut assoc, mut iso, mut count) = (0.0f64, 0.0f64, 0);
    for (_, s) in FiniteSemigroup::catalog() {
        assert!(s.order() <= 12);
        // Exact cocycles f = δg, g with positive values.
        for _ in 0..3 {
            let g = Cochain::from_fn(&s, 1, MultiplicativeReal, |_| rng.gen_range(0.2..3.0)).unwrap();
            let f = coboundary(&s, &g).unwrap();
            let d = coherent_deform(&s, f, 1e-9).map_err(|e| e.to_string())?;
            assoc = assoc.max(d.associativity_defect());
            iso = iso.max(d.isomorphism_defect(&g));
            count += 1;
        }
        // Cocycles that need not be exact: exponentials of real cocycles.
        let basis = cocycle_basis(&s, 2).map_err(|e| e.to_string())?;
        if !basis.is_empty() {
            let coeffs: Vec<f64> = basis.iter().map(|_| rng.gen_range(-1.0..1.0)).collect();
            let z = Cochain::from_fn(&s, 2, AdditiveReal, |t| {
                basis.iter().zip(&coeffs).map(|(b, c)| c * b.get(t)).sum()
            })
            .unwrap();
            let f = exp_lambda(&z, 1.0);
            if is_cocycle(&s, &f, 1e-9).unwrap().is_cocycle {
                let d = coherent_deform(&s, f, 1e-9).map_err(|e| e.to_string())?;
                assoc = assoc.max(d.associativity_defect());
                count += 1;
            }
        }
    }
    check(
        assoc < 1e-12 && iso < 1e-12,
        format!("{count} deformations: associativity defect {assoc:.1e}, isomorphism defect {iso:.1e}"),
    )
}

fn nontriviality_pipeline() -> Outcome {
    let t = Instant::now();
    let ts = build_triangulated_sphere(1).map_err(|e| e.to_string())?;
    let r = nontriviality_report(&ts, 1, Integrator::Quadrature { tol: 1e-10 }, 1e-8).map_err(|e| e.to_string())?;
    let pairing_ok = (r.real.pairing - 4.0 * PI).abs() < 1e-6 && !r.real.coboundary;
    let k = (r.mod_taille.pairing / r.mod_taille.taille).round();
    let mod_ok = (r.mod_taille.pairing - k * r.mod_taille.taille).abs() < 1e-6 && r.mod_taille.outcome == "trivial";
    let mut face_max = Vec::new();
    let mut cell_max = Vec::new();
    for level in 0..=3 {
        let ts = build_triangulated_sphere(level).map_err(|e| e.to_string())?;
        let f = restricted_omega(&ts, 1, Integrator::Exact).map_err(|e| e.to_string())?;
        face_max.push(ts.face_areas.iter().copied().fold(0.0, f64::max));
        cell_max.push(f.entries().fold(0.0f64, |a, (_, v)| a.max(v.abs())));
    }
    let shrinks = face_max.windows(2).all(|w| w[1] < w[0]) && cell_max.windows(2).all(|w| w[1] < w[0]);
    let secs = t.elapsed().as_secs_f64();
    check(
        pairing_ok && mod_ok && shrinks && secs < 30.0,
        format!(
            "pairing {:.9} (4π = {:.9}), mod-4π outcome {}, face maxima {:?}, cell maxima {:?}, {secs:.2}s",
            r.real.pairing,
            4.0 * PI,
            r.mod_taille.outcome,
            face_max.iter().map(|v| format!("{v:.4}")).collect::<Vec<_>>(),
            cell_max.iter().map(|v| format!("{v:.4}")).collect::<Vec<_>>(),
        ),
    )
}

fn bohr_property() -> Outcome {
    let half = 0.5f64;
    // (taille, radius, n)
    let grid = [
        (PI, 1.0, 1),
        (PI, 1.0, 2),
        (PI, 2f64.sqrt(), 1),
        (PI, 0.5, 1),
        (PI, 0.5, 4),
        (PI, half.sqrt(), 2),
        (PI, 1.2, 5),
        (1.0, 1.0, 1),
        (1.0, 1.0, 0),
        (1.0, 1.0 / PI.sqrt(), 1),
        (1.0, (2.0 / PI).sqrt(), 3),
        (1.0, 0.7, 2),
        (PI / 2.0, 1.0, 1),
        (PI / 2.0, 0.5, 3),
        (PI / 2.0, 0.5, 2),
        (2.0 * PI, 1.0, 1),
        (2.0 * PI, 1.0, 2),
        (2.0 * PI, 3f64.sqrt(), 2),
        (2.0 * PI, 0.9, 1),
        (3.0, 1.0, 3),
    ];
    let (mut agree, mut trues) = (0, 0);
    let mut bad = Vec::new();
    for &(tau, r, n) in &grid {
        let s = Surface::phase_plane(2.0 * tau).map_err(|e| e.to_string())?;
        let circle = phase_plane_circle(s, [0.3, -0.2], r, 1 << 18, 0.0, true).map_err(|e| e.to_string())?;
        let res = bohr_check(&s, &circle, n, 1e-9, Integrator::Exact).map_err(|e| e.to_string())?;
        let ratio = n as f64 * PI * r * r / tau;
        let expected = (ratio - ratio.round()).abs() < 1e-9;
        trues += expected as usize;
        if res.quantized == expected {
            agree += 1;
        } else {
            bad.push(format!("τ={tau:.4} r={r:.4} n={n}"));
        }
    }
    check(
        agree == grid.len() && trues > 0 && trues < grid.len(),
        format!("{agree}/{} agree ({trues} quantized){}", grid.len(), if bad.is_empty() { String::new() } else { format!("; mismatches {bad:?}") }),
    )
}

fn local_coboundary() -> Outcome {
    let s = Surface::unit_sphere();
    let cx = GeometricCocycle::new(s, Parameter::Quantum(1), Integrator::Quadrature { tol: 1e-11 }).map_err(|e| e.to_string())?;
    let mut rng = common::rng(8);
    let mut worst = 0.0f64;
    let real = |e: CocycleEval| e.real().ok_or_else(|| format!("unexpected {e:?}"));
    for _ in 0..100 {
        let center = match common::random_point(&s, &mut rng) {
            taille_core::geom::Point::Sphere(v) => v,
            _ => unreachable!(),
        };
        let pieces = rng.gen_range(1..=3);
        let g1 = common::random_cap_path(&center, 0.5, None, pieces, &mut rng);
        let pieces = rng.gen_range(1..=3);
        let g2 = common::random_cap_path(&center, 0.5, Some(g1.end()), pieces, &mut rng);
        let g12 = g1.concat(&g2).ok_or("composable paths must concatenate")?;
        let w = real(cx.omega_tilde(&g1, &g2).map_err(|e| e.to_string())?)?;
        let phi = |g: &taille_core::paths::Path| -> Result<f64, String> {
            real(cx.phase_function(g, g.length()).map_err(|e| e.to_string())?)
        };
        let d = w - (phi(&g1)? + phi(&g2)? - phi(&g12)?);
        worst = worst.max(d.abs());
    }
    check(worst < 1e-8, format!("max |ω̃ − δφ| = {worst:.1e} over 100 pairs"))
}

type Criterion = (&'static str, fn() -> Outcome);

fn main() {
    let criteria: [Criterion; 8] = [
        ("1 de Broglie wavelength", debroglie_reproduction),
        ("2 sphere total phase", sphere_total_phase),
        ("3 equatorial sign flips", sign_flips),
        ("4 taille and cocycle identities", taille_and_identities),
        ("5 coherent deformation algebra", coherent_deformations),
        ("6 non-triviality pipeline", nontriviality_pipeline),
        ("7 Bohr quantization", bohr_property),
        ("8 local coboundary", local_coboundary),
    ];
    // Criteria that cannot be met as stated; they still run and must still
    // report FAIL, for the documented reason and no other.
    let known_unattainable: [(&str, &str); 1] = [(
        "4 taille and cocycle identities",
        "the cup-sum Leibniz rule does not hold for even arities",
    )];
    let (mut passed, mut unexpected) = (0, 0);
    for (name, run) in criteria {
        let t = Instant::now();
        let outcome = run();
        let secs = t.elapsed().as_secs_f64();
        let known = known_unattainable.iter().find(|(k, _)| *k == name).map(|(_, why)| *why);
        match (outcome, known) {
            (Ok(detail), None) => {
                passed += 1;
                println!("criterion {name}: PASS ({detail}) [{secs:.2}s]");
            }
            (Ok(detail), Some(_)) => {
                unexpected += 1;
                println!("criterion {name}: PASS, but was listed as unattainable ({detail}) [{secs:.2}s]");
            }
            (Err(detail), Some(_)) if detail.starts_with(UNEXPECTED) => {
                unexpected += 1;
                println!("criterion {name}: FAIL ({detail}) [{secs:.2}s]");
            }
            (Err(detail), Some(why)) => println!("criterion {name}: FAIL, known: {why} ({detail}) [{secs:.2}s]"),
            (Err(detail), None) => {
                unexpected += 1;
                println!("criterion {name}: FAIL ({detail}) [{secs:.2}s]");
            }
        }
    }
    println!(
        "acceptance: {passed}/8 criteria passed, {} known unattainable, {unexpected} unexpected",
        known_unattainable.len()
    );
    if unexpected > 0 {
        std::process::exit(1);
    }
}
