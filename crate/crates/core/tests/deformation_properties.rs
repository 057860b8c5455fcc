mod common;

use proptest::prelude::*;
use rand::Rng;

use taille_core::deformation::{deflection_trace, weight_function, CocycleEval, GeometricCocycle, Parameter};
use taille_core::geom::{GeodesicSegment, Integrator, Point, Surface, TailleValue};
use taille_core::paths::Path;

fn real(e: CocycleEval) -> f64 {
    e.real().expect("defined")
}

fn cap_center(rng: &mut impl Rng) -> nalgebra::Vector3<f64> {
    match common::random_point(&Surface::unit_sphere(), rng) {
        Point::Sphere(v) => v,
        _ => unreachable!(),
    }
}

fn planar(p: &Point) -> (f64, f64) {
    match p {
        Point::Planar(v) => (v.x, v.y),
        _ => unreachable!(),
    }
}

/// Signed area of a planar triangle by the shoelace formula.
fn shoelace(a: (f64, f64), b: (f64, f64), c: (f64, f64)) -> f64 {
    0.5 * ((b.0 - a.0) * (c.1 - a.1) - (c.0 - a.0) * (b.1 - a.1))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(32))]

    #[test]
    fn plane_cocycle_is_the_chord_triangle_area(seed in any::<u64>(), lambda in -1.0f64..1.0) {
        let s = Surface::euclidean_plane();
        let cx = GeometricCocycle::new(s, Parameter::Lambda(lambda), Integrator::Exact).unwrap();
        let mut rng = common::rng(seed);
        let g1 = common::random_path(&s, &mut rng);
        let g2 = common::random_path_from(&s, g1.end(), &mut rng);
        let v = real(cx.omega_tilde(&g1, &g2).unwrap());
        let area = shoelace(planar(&g1.start()), planar(&g1.end()), planar(&g2.end()));
        prop_assert!((v - area).abs() < 1e-10, "{} vs {}", v, area);
    }

    #[test]
    fn cocycle_depends_only_on_endpoints(seed in any::<u64>(), pieces in 1usize..4) {
        let s = Surface::unit_sphere();
        let cx = GeometricCocycle::new(s, Parameter::Quantum(1), Integrator::Exact).unwrap();
        let mut rng = common::rng(seed);
        let c = cap_center(&mut rng);
        let g1 = common::random_cap_path(&c, 0.6, None, pieces, &mut rng);
        let g2 = common::random_cap_path(&c, 0.6, Some(g1.end()), pieces, &mut rng);
        // Same endpoints, different route.
        let mid = common::random_cap_point(&c, 0.6, &mut rng);
        let h1 = Path::from_waypoints(s, &[g1.start(), mid, g1.end()]).unwrap();
        let a = cx.omega_tilde(&g1, &g2).unwrap().value().unwrap();
        let b = cx.omega_tilde(&h1, &g2).unwrap().value().unwrap();
        prop_assert!(a.distance(&b) < 1e-9);
    }

    #[test]
    fn weights_have_unit_modulus(seed in any::<u64>(), n in -4i64..=4, planar in any::<bool>()) {
        let s = if planar { Surface::phase_plane(0.7).unwrap() } else { Surface::unit_sphere() };
        let cx = GeometricCocycle::new(s, Parameter::Quantum(n), Integrator::Exact).unwrap();
        let mut rng = common::rng(seed);
        let g1 = common::random_path(&s, &mut rng);
        let g2 = common::random_path_from(&s, g1.end(), &mut rng);
        let xs: Vec<f64> = (0..=16).map(|k| g2.length() * k as f64 / 16.0).collect();
        for trace in [weight_function(&cx, &g2, &xs).unwrap(), deflection_trace(&cx, &g1, &g2, &xs).unwrap()] {
            for smp in trace.samples.iter().filter(|s| s.is_defined()) {
                prop_assert!((smp.weight.unwrap().norm() - 1.0).abs() < 1e-12);
            }
        }
    }

    #[test]
    fn cocycle_is_locally_a_coboundary(seed in any::<u64>()) {
        let s = Surface::unit_sphere();
        let cx = GeometricCocycle::new(s, Parameter::Quantum(1), Integrator::Exact).unwrap();
        let mut rng = common::rng(seed);
        let c = cap_center(&mut rng);
        let g1 = common::random_cap_path(&c, 0.5, None, 2, &mut rng);
        let g2 = common::random_cap_path(&c, 0.5, Some(g1.end()), 2, &mut rng);
        let g12 = g1.concat(&g2).unwrap();
        let phi = |g: &Path| real(cx.phase_function(g, g.length()).unwrap());
        let lhs = real(cx.omega_tilde(&g1, &g2).unwrap());
        let rhs = phi(&g1) + phi(&g2) - phi(&g12);
        let tau = cx.taille();
        prop_assert!(TailleValue::new(lhs, tau).distance(&TailleValue::new(rhs, tau)) < 1e-9);
    }

    #[test]
    fn cocycle_identity_on_random_triples(seed in any::<u64>(), which in 0usize..3) {
        let s = common::surfaces()[which];
        let p = if s.taille() > 0.0 { Parameter::Quantum(1) } else { Parameter::Lambda(1.0) };
        let cx = GeometricCocycle::new(s, p, Integrator::Exact).unwrap();
        let mut rng = common::rng(seed);
        let (g1, g2, g3) = if s.is_sphere() {
            let c = cap_center(&mut rng);
            let g1 = common::random_cap_path(&c, 0.8, None, 2, &mut rng);
            let g2 = common::random_cap_path(&c, 0.8, Some(g1.end()), 2, &mut rng);
            let g3 = common::random_cap_path(&c, 0.8, Some(g2.end()), 2, &mut rng);
            (g1, g2, g3)
        } else {
            common::random_triple(&s, &mut rng)
        };
        match cx.cocycle_residual(&g1, &g2, &g3) {
            Ok(r) => prop_assert!(r < 1e-9, "residual {}", r),
            // Shortest geodesics may be ambiguous on the torus.
            Err(_) => prop_assert!(s.periods().is_some()),
        }
    }

    #[test]
    fn deflection_ends_at_the_cocycle_for_geodesic_pieces(seed in any::<u64>()) {
        let s = Surface::unit_sphere();
        let cx = GeometricCocycle::new(s, Parameter::Quantum(2), Integrator::Exact).unwrap();
        let mut rng = common::rng(seed);
        let c = cap_center(&mut rng);
        let g1 = common::random_cap_path(&c, 0.7, None, 1, &mut rng);
        let end = common::random_cap_point(&c, 0.7, &mut rng);
        let g2 = Path::from_waypoints(s, &[g1.end(), end]).unwrap();
        let a = cx.deflection_phase(&g1, &g2, g2.length()).unwrap().value().unwrap();
        let b = cx.omega_tilde(&g1, &g2).unwrap().value().unwrap();
        prop_assert!(a.distance(&b) < 1e-9);
    }
}

#[test]
fn quadrature_and_exact_integrators_agree() {
    let s = Surface::unit_sphere();
    let exact = GeometricCocycle::new(s, Parameter::Quantum(1), Integrator::Exact).unwrap();
    let quad = exact.with_integrator(Integrator::Quadrature { tol: 1e-11 }).unwrap();
    let mut rng = common::rng(5);
    for _ in 0..20 {
        let c = cap_center(&mut rng);
        let g1 = common::random_cap_path(&c, 0.9, None, 2, &mut rng);
        let g2 = common::random_cap_path(&c, 0.9, Some(g1.end()), 2, &mut rng);
        let a = real(exact.omega_tilde(&g1, &g2).unwrap());
        let b = real(quad.omega_tilde(&g1, &g2).unwrap());
        assert!((a - b).abs() < 1e-9, "{a} vs {b}");
    }
}

#[test]
fn disjoint_paths_give_zero() {
    let s = Surface::euclidean_plane();
    let cx = GeometricCocycle::lambda(s, 1.0).unwrap();
    let a = s.point(&[0.0, 0.0]).unwrap();
    let g1 = Path::from_segments(s, vec![GeodesicSegment::new(s, a, &[1.0, 0.0], 1.0).unwrap()]).unwrap();
    assert_eq!(cx.omega_tilde(&g1, &g1).unwrap(), CocycleEval::Zero);
}
