use super::*;
use crate::contour::{beta_general, beta_invariant, make_grid, sheet_indices, Side};
use crate::surface::{lattice_distance, sigma_map, SurfaceParams};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use std::f64::consts::PI;

const I: C64 = C64::new(0.0, 1.0);

fn p2() -> SurfaceParams {
    SurfaceParams::new(2.0).unwrap()
}

fn real_point(params: &SurfaceParams, x: f64, sign: f64) -> SurfacePoint {
    let rho = ((1.0 + x * x) * (params.k0 * params.k0 + x * x)).sqrt();
    SurfacePoint::Finite { xi: C64::new(x, 0.0), tau: C64::new(sign * rho, 0.0) }
}

#[test]
fn alpha_norm_identities_at_random_points() {
    let s = p2();
    let k0 = s.k0;
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    let ap = alpha_pm(&s, Side::Plus);
    let am = alpha_pm(&s, Side::Minus);
    for _ in 0..200 {
        let x: f64 = rng.gen_range(-20.0..20.0);
        let (p, q) = (real_point(&s, x, 1.0), real_point(&s, x, -1.0));
        let xc = C64::new(x, 0.0);
        let plus = ap.eval(&p).unwrap() * ap.eval(&q).unwrap();
        let minus = am.eval(&p).unwrap() * am.eval(&q).unwrap();
        assert!((plus - (k0 - 1.0) / 2.0 * (xc + I) / (xc - I)).norm() < 1e-12);
        assert!((minus - (k0 - 1.0) / 2.0 * (xc - I) / (xc + I)).norm() < 1e-12);
    }
}

#[test]
fn r_nu_norm_identity_at_random_points() {
    let s = p2();
    let k0 = s.k0;
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    for _ in 0..20 {
        let beta = C64::new(rng.gen_range(-0.95..0.95) * s.k, rng.gen_range(-0.99..1.0) * s.kp);
        let r = make_r_nu(&s, beta).unwrap();
        for _ in 0..200 {
            let x: f64 = rng.gen_range(-20.0..20.0);
            let xc = C64::new(x, 0.0);
            let prod = r.eval(&real_point(&s, x, 1.0)).unwrap() * r.eval(&real_point(&s, x, -1.0)).unwrap();
            let expect = r.nu * r.nu - (xc - I) * (xc + I * k0) / ((xc + I) * (xc - I * k0));
            assert!((prod - expect).norm() < 1e-12 * (1.0 + r.nu.norm_sqr()));
        }
    }
}

#[test]
fn r_nu_zeros_lie_on_the_curve() {
    let s = p2();
    for beta in [C64::new(0.5, 0.3), C64::new(-0.7, -1.1), C64::new(1.2, 2.0)] {
        let r = make_r_nu(&s, beta).unwrap();
        assert!((s.quartic(r.z0) - r.tau0 * r.tau0).norm() < 1e-10);
        assert!(r.z0.im < 0.0);
        for (z, t) in [(r.z0, r.tau0), r.second_zero()] {
            let v = r.function.num_a.eval(z) + r.function.num_b.eval(z) * t;
            assert!(v.norm() < 1e-10, "{beta} {v}");
        }
    }
}

#[test]
fn branch_point_member_has_zero_nu() {
    let s = p2();
    let r = make_r_nu(&s, C64::new(0.0, s.kp)).unwrap();
    assert_eq!(r.nu, C64::new(0.0, 0.0));
    assert!((r.z0 + I * s.k0).norm() < 1e-9);
    assert!((r.second_zero().0 - I).norm() < 1e-9);
    assert!(matches!(make_r_nu(&s, C64::new(1.5 * s.k, 0.0)), Err(Error::Domain(_))));
    assert!(matches!(make_r_nu(&s, C64::new(0.0, 0.0)), Err(Error::Domain(_))));
}

#[test]
fn sheet_indices_of_blocks() {
    let s = p2();
    let g = make_grid(&s, 256).unwrap();
    let ind = |f: &dyn SurfaceFunction| sheet_indices(&eval_on_gamma(f, &g).unwrap()).unwrap();
    assert_eq!(ind(&alpha_pm(&s, Side::Plus)), (0, -1));
    assert_eq!(ind(&alpha_pm(&s, Side::Minus)), (0, 1));
    assert_eq!(ind(&Starred(Arc::new(alpha_pm(&s, Side::Plus)))), (-1, 0));
    assert_eq!(ind(&make_s(&s)), (-1, 0));
    assert_eq!(ind(&unit_u(&s)), (-1, 1));
    assert_eq!(ind(&RationalSurfaceFunction::cayley(&s)), (1, 1));
    assert_eq!(ind(&make_r_nu(&s, C64::new(0.4, -0.8)).unwrap()), (0, 0));
}

#[test]
fn invariants_of_blocks() {
    let s = p2();
    let g = make_grid(&s, 1024).unwrap();
    let beta = |f: &dyn SurfaceFunction| beta_invariant(&eval_on_gamma(f, &g).unwrap()).unwrap().raw;
    let (bu, n1, n2) = beta_general(&eval_on_gamma(&unit_u(&s), &g).unwrap()).unwrap();
    assert_eq!((n1, n2), (-1, 1));
    assert!(lattice_distance(&s, bu.raw - 2.0 * s.k) < 1e-9);
    for b in [C64::new(0.5, 0.3), C64::new(-0.7, -1.1), C64::new(0.0, s.kp)] {
        let r = make_r_nu(&s, b).unwrap();
        assert!(lattice_distance(&s, beta(&r) - b) < 1e-9, "{b}");
    }
    // alpha_+ on its own needs index normalization first; its product with the
    // minus unit has zero indices and invariant 2(K + iK') = 2K mod L
    let both = Product::new()
        .with(Arc::new(alpha_pm(&s, Side::Plus)), 1)
        .with(Arc::new(alpha_pm(&s, Side::Minus)), 1);
    assert!(lattice_distance(&s, beta(&both) - 2.0 * s.k) < 1e-9);
}

#[test]
fn r_nu_samples_have_constant_even_part() {
    let s = p2();
    let g = make_grid(&s, 128).unwrap();
    let r = make_r_nu(&s, C64::new(0.3, 0.5)).unwrap();
    let f = eval_on_gamma(&r, &g).unwrap();
    let (e, o) = crate::contour::decompose(&f);
    for j in 0..g.n {
        assert!((e[j] - r.nu).norm() < 1e-13);
        if let Some(x) = g.xi(j) {
            let xc = C64::new(x, 0.0);
            assert!((o[j] - 1.0 / ((xc + I) * (xc - I * s.k0))).norm() < 1e-13);
        }
    }
    // the generic rational path agrees with the node shortcut, including infinity
    for j in [0, g.inf_index, g.zero_index, 17] {
        for sg in [1.0, -1.0] {
            let a = r.function.eval(&node_point(&g, j, sg)).unwrap();
            assert!((a - r.eval_node(&g, j, sg).unwrap()).norm() < 1e-12);
        }
    }
}

#[test]
fn q_and_cayley_are_star_invariant() {
    let s = p2();
    let g = make_grid(&s, 64).unwrap();
    for f in [RationalSurfaceFunction::q(&s), RationalSurfaceFunction::cayley(&s)] {
        let b = eval_on_gamma(&f, &g).unwrap();
        assert!(b.max_diff(&b.star()) < 1e-14);
    }
    let q = eval_on_gamma(&RationalSurfaceFunction::q(&s), &g).unwrap();
    let x = g.xi(3).unwrap();
    let xc = C64::new(x, 0.0);
    let expect = (xc + I) * (xc + 2.0 * I) / ((xc - I) * (xc - 2.0 * I));
    assert!((q.f1[3] - expect).norm() < 1e-14);
}

#[test]
fn lambda_plus_has_no_limit_at_infinity() {
    let s = p2();
    let g = make_grid(&s, 64).unwrap();
    let r = eval_on_gamma(&RationalSurfaceFunction::lambda_plus(&s), &g);
    assert!(matches!(r, Err(Error::PoleOnContour(_))));
}

/// Winding of S around a small loop in the lattice coordinate, evaluated
/// through the surface points sigma(z) and the Abel-Jacobi map.
fn loop_winding(f: &ThetaEllipticFunction, center: C64, radius: f64) -> i64 {
    let s = f.params;
    let m = 64;
    let vals: Vec<C64> = (0..m)
        .map(|j| {
            let z = center + C64::from_polar(radius, 2.0 * PI * j as f64 / m as f64);
            f.eval(&sigma_map(&s, z)).unwrap()
        })
        .collect();
    let total: f64 = (0..m).map(|j| (vals[(j + 1) % m] / vals[j]).arg()).sum();
    (total / (2.0 * PI)).round() as i64
}

#[test]
fn s_has_the_prescribed_divisor() {
    let s = p2();
    let f = make_s(&s);
    let k = s.k;
    assert_eq!(loop_winding(&f, C64::new(-k / 5.0, 0.0), 0.05), 2);
    assert_eq!(loop_winding(&f, C64::new(k, 0.0), 0.05), -1);
    assert_eq!(loop_winding(&f, C64::new(-7.0 * k / 5.0, 0.0), 0.05), -1);
    assert_eq!(loop_winding(&f, C64::new(0.3, 0.7), 0.05), 0);
    assert!((f.eval(&SurfacePoint::Infinity(crate::surface::Sheet::One)).unwrap() - 1.0).norm() < 1e-12);
}

#[test]
fn s_is_doubly_periodic_and_its_log_derivative_has_integer_periods() {
    let s = p2();
    let f = make_s(&s);
    let base = C64::new(0.37, 0.61);
    // the horizontal cycle (the lift of the loop around [-i, i]) carries no
    // winding; the vertical one is homologous to the sheet-one contour run
    // backwards, so it carries -ind_1 S = 1 turn
    for (period, turns) in [(C64::new(4.0 * s.k, 0.0), 0.0), (C64::new(0.0, 2.0 * s.kp), 1.0)] {
        let a = f.eval_z(base).unwrap();
        let b = f.eval_z(base + period).unwrap();
        assert!((a - b).norm() < 1e-12 * a.norm());
        // d log S integrated along the cycle: total phase change
        let m = 4000;
        let mut phase = 0.0;
        let mut prev = a;
        for j in 1..=m {
            let v = f.eval_z(base + period * (j as f64 / m as f64)).unwrap();
            phase += (v / prev).arg();
            prev = v;
        }
        assert!((phase - 2.0 * PI * turns).abs() < 1e-9, "{period} {phase}");
    }
}

#[test]
fn divisor_must_sum_to_zero() {
    let s = p2();
    let r = ThetaEllipticFunction::new(&s, vec![(C64::new(0.1, 0.0), 1)], vec![(C64::new(0.2, 0.0), 1)]);
    assert!(matches!(r, Err(Error::Domain(_))));
}

#[test]
fn node_and_generic_evaluation_of_s_agree() {
    let s = p2();
    let g = make_grid(&s, 64).unwrap();
    let f = make_s(&s);
    for j in [0, 10, g.inf_index, 40, g.zero_index] {
        for sg in [1.0, -1.0] {
            let a = f.eval(&node_point(&g, j, sg)).unwrap();
            let b = f.eval_node(&g, j, sg).unwrap();
            assert!((a - b).norm() < 1e-8 * (1.0 + a.norm()), "{j} {sg} {a} {b}");
        }
    }
}

#[test]
fn parallel_and_sequential_sampling_agree() {
    let s = p2();
    let g = make_grid(&s, 256).unwrap();
    let f = make_s(&s);
    let a = eval_on_gamma_with(Exec::Sequential, &f, &g).unwrap();
    let b = eval_on_gamma_with(Exec::Parallel, &f, &g).unwrap();
    assert_eq!(a.f1, b.f1);
    assert_eq!(a.f2, b.f2);
}
