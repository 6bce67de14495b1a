mod common;

use std::f64::consts::PI;

use common::oracle::{p1_hand_integrand, p1_quadrature};
use common::*;
use num_complex::Complex64 as C;
use torkernel::numeric::{cycle_parametrization, ParamPoint};
use torkernel::{build_kernel, estimate_c, integrand_omega, verify_representation, Error, KernelReport, MonteCarloConfig, NuMode};

fn report(f: &torkernel::Fan) -> KernelReport {
    build_kernel(f, NuMode::Normalized).unwrap()
}

#[test]
fn p1_integrand_matches_hand_assembly() {
    let r = report(&p1());
    let spec = cycle_parametrization::<f64>(&r, &[1.0]).unwrap();
    for &(t, a, b) in &[(0.5, 0.0, 0.0), (0.2, 1.0, -0.3), (0.9, 2.5, 4.0)] {
        let p = ParamPoint { free: vec![t], theta: vec![a, b] };
        let got = integrand_omega(&r, &spec, &p, &[C::new(0.0, 0.0); 2]).unwrap();
        let want = p1_hand_integrand(t, a, b);
        assert!((got - want).norm() <= 1e-12 * want.norm(), "{got} vs {want}");
    }
}

#[test]
fn p1_quadrature_oracle_is_closed_form() {
    // the integrand reduces to 1 / (t^2 + (1-t)^2), so C = 4π^2 * π/2
    let c = p1_quadrature(60);
    assert!((c.re - 2.0 * PI.powi(3)).abs() < 1e-3 * 2.0 * PI.powi(3), "{c}");
    assert!(c.im.abs() < 1e-9);
}

#[test]
fn p1_estimate_within_noise_of_quadrature() {
    let r = report(&p1());
    let s = estimate_c::<f64>(&r, &[1.0], &MonteCarloConfig::new(200_000, 11)).unwrap();
    let oracle = 2.0 * PI.powi(3);
    assert!((s.estimate.re - oracle).abs() < 4.0 * s.std_error, "{:?}", s);
    assert!(s.estimate.im.abs() / s.estimate.norm() < 1e-3);
}

#[test]
fn torus_shift_preserves_modulus() {
    for (name, f) in golden() {
        let r = report(&f);
        let rho = vec![1.0; r.rank()];
        let spec = cycle_parametrization::<f64>(&r, &rho).unwrap();
        let zero = vec![C::new(0.0, 0.0); r.d()];
        // vertex centroid, an interior point of the polytope
        let nv = spec.vertices.len() as f64;
        let mid: Vec<f64> = (0..spec.free.len())
            .map(|k| spec.vertices.iter().map(|v| v[spec.free[k]]).sum::<f64>() / nv)
            .collect();
        let theta: Vec<f64> = (0..r.d()).map(|j| 0.3 + 0.7 * j as f64).collect();
        let shift: Vec<f64> = (0..r.d()).map(|j| 1.1 * (j + 1) as f64).collect();
        let p = ParamPoint { free: mid.clone(), theta: theta.clone() };
        let q = ParamPoint {
            free: mid,
            theta: theta.iter().zip(&shift).map(|(a, b)| a + b).collect(),
        };
        let a = integrand_omega(&r, &spec, &p, &zero).unwrap();
        let b = integrand_omega(&r, &spec, &q, &zero).unwrap();
        assert!((a.norm() - b.norm()).abs() <= 1e-10 * a.norm(), "{name}: {a} vs {b}");
    }
}

#[test]
fn estimates_are_deterministic() {
    let r = report(&p2());
    let cfg = MonteCarloConfig::new(20_000, 3);
    let a = estimate_c::<f64>(&r, &[1.0], &cfg).unwrap();
    let b = estimate_c::<f64>(&r, &[1.0], &cfg).unwrap();
    assert_eq!(a, b);
    assert_eq!(a.estimate.re.to_bits(), b.estimate.re.to_bits());
    let c = estimate_c::<f64>(&r, &[1.0], &cfg.with_workers(3)).unwrap();
    assert_eq!(c.workers, 3);
    assert!((a.estimate - c.estimate).norm() < 5.0 * (a.std_error + c.std_error));
}

#[test]
fn std_error_scales_as_inverse_sqrt() {
    let r = report(&p1());
    let mean_err = |n: usize| -> f64 {
        (0..8u64)
            .map(|seed| estimate_c::<f64>(&r, &[1.0], &MonteCarloConfig::new(n, 100 + seed)).unwrap().std_error)
            .sum::<f64>()
            / 8.0
    };
    let ratio = mean_err(40_000) / mean_err(20_000);
    let ideal = 1.0 / 2f64.sqrt();
    assert!(ratio > 0.8 * ideal && ratio < 1.2 * ideal, "ratio {ratio}");
}

#[test]
fn vanishing_moments() {
    for (f, alpha) in [(p1(), vec![1, 0]), (p1xp1(), vec![0, 1, 0, 0]), (hirzebruch1(), vec![1, 0, 0, 1])] {
        let r = report(&f);
        let rho = vec![1.0; r.rank()];
        let zeta = vec![C::new(0.0, 0.0); r.d()];
        let rep = verify_representation(&r, &rho, &alpha, &zeta, &MonteCarloConfig::new(100_000, 5)).unwrap();
        assert!(rep.integral.estimate.norm() < 3.0 * rep.integral.std_error, "{:?}", rep.integral);
    }
}

#[test]
fn constant_function_reproduced_exactly_at_origin() {
    let r = report(&p1xp1());
    let zeta = vec![C::new(0.0, 0.0); 4];
    let rep = verify_representation(&r, &[1.0, 1.0], &[0; 4], &zeta, &MonteCarloConfig::new(10_000, 1)).unwrap();
    assert_eq!(rep.value, C::new(1.0, 0.0));
    assert_eq!(rep.relative_error, 0.0);
}

#[test]
fn p1_c_does_not_depend_on_rho() {
    let r = report(&p1());
    let a = estimate_c::<f64>(&r, &[1.0], &MonteCarloConfig::new(200_000, 21)).unwrap();
    let b = estimate_c::<f64>(&r, &[2.5], &MonteCarloConfig::new(200_000, 22)).unwrap();
    let combined = (a.std_error.powi(2) + b.std_error.powi(2)).sqrt();
    assert!((a.estimate - b.estimate).norm() < 4.0 * combined, "{:?} vs {:?}", a.estimate, b.estimate);
}

#[test]
fn p2_constant_phase_and_seed_agreement() {
    // C for P² comes out on the imaginary axis with this parametrization
    let r = report(&p2());
    let a = estimate_c::<f64>(&r, &[1.0], &MonteCarloConfig::new(1_000_000, 7)).unwrap();
    let b = estimate_c::<f64>(&r, &[1.0], &MonteCarloConfig::new(1_000_000, 8)).unwrap();
    assert!(a.estimate.norm() > 0.0);
    assert!(a.estimate.re.abs() / a.estimate.norm() < 1e-2, "{}", a.estimate);
    let combined = (a.std_error.powi(2) + b.std_error.powi(2)).sqrt();
    assert!((a.estimate - b.estimate).norm() < 3.0 * combined, "{} vs {}", a.estimate, b.estimate);
}

#[test]
fn p1xp1_representation() {
    let r = report(&p1xp1());
    let zeta = [C::new(0.2, 0.1), C::new(0.0, 0.0), C::new(0.0, 0.0), C::new(0.3, 0.0)];
    let rep = verify_representation(&r, &[1.0, 1.0], &[1, 0, 0, 1], &zeta, &MonteCarloConfig::new(400_000, 9)).unwrap();
    assert!(rep.relative_error < 0.05, "{:?}", rep);
}

#[test]
fn p1xp1_cycle_shape() {
    let r = report(&p1xp1());
    let spec = cycle_parametrization::<f64>(&r, &[1.0, 1.0]).unwrap();
    assert_eq!(spec.parameter_dim(), 6);
    assert_eq!(spec.free.len(), 2);
    let radii = spec.radii(&[0.25, 0.75]);
    // r1 + r3 = 1 and r2 + r4 = 1 with the free pair taking the given values
    assert!((radii[0] + radii[2] - 1.0).abs() < 1e-15);
    assert!((radii[1] + radii[3] - 1.0).abs() < 1e-15);
    assert!(spec.lower.iter().all(|&x| x == 0.0) && spec.upper.iter().all(|&x| x == 1.0));
}

#[test]
fn cycle_errors() {
    let r = report(&p2());
    assert!(matches!(cycle_parametrization::<f64>(&r, &[-1.0]), Err(Error::Cycle(_))));
    assert!(estimate_c::<f64>(&r, &[0.0], &MonteCarloConfig::new(10, 1)).is_err());
}

#[test]
fn zeta_outside_domain_is_reported() {
    let r = report(&p1());
    let zeta = [C::new(0.9, 0.0), C::new(0.6, 0.0)];
    let err = verify_representation(&r, &[1.0], &[1, 0], &zeta, &MonteCarloConfig::new(10, 1)).unwrap_err();
    assert!(matches!(err, Error::Domain(_)), "{err}");
    assert!(err.to_string().contains("rho[1]"), "{err}");
}
