use proptest::prelude::*;
use qdeform::checks::{all_pass, Tolerances};
use qdeform::kahlerian::{
    self, jgroup_inv, jgroup_mul, kernel_k, kernel_ktau, left_translation_det, modular_function,
    right_translation_det, validate_tau, JGroupElement, KahlerianConfig, KahlerianError,
};
use qdeform::tensorkit::C64;

fn el(c: &[f64]) -> JGroupElement {
    JGroupElement::from_coords(c)
}

/// The d = 1 law written out with `ω₀((p,q),(p',q')) = pq' − qp'`.
fn law_d1(x: &[f64; 4], y: &[f64; 4]) -> [f64; 4] {
    let [a, p, q, t] = *x;
    let [a2, p2, q2, t2] = *y;
    let e = (-a2).exp();
    [
        a + a2,
        e * p + p2,
        e * q + q2,
        (-2.0 * a2).exp() * t + t2 + 0.5 * e * (p * q2 - q * p2),
    ]
}

/// Central-difference Jacobian determinant of a map on R^4.
fn fd_det(f: impl Fn([f64; 4]) -> [f64; 4], at: [f64; 4]) -> f64 {
    let h = 1e-6;
    let mut m = nalgebra::Matrix4::<f64>::zeros();
    for j in 0..4 {
        let mut up = at;
        let mut dn = at;
        up[j] += h;
        dn[j] -= h;
        let (fu, fd) = (f(up), f(dn));
        for i in 0..4 {
            m[(i, j)] = (fu[i] - fd[i]) / (2.0 * h);
        }
    }
    m.determinant()
}

#[test]
fn law_matches_hand_formula() {
    let x = [0.3, -1.0, 0.5, 2.0];
    let y = [-0.7, 0.25, 1.5, -0.4];
    let got = jgroup_mul(&el(&x), &el(&y), 1).unwrap().coords();
    let want = law_d1(&x, &y);
    for (g, w) in got.iter().zip(want) {
        assert!((g - w).abs() < 1e-14);
    }
}

#[test]
fn jacobians_against_finite_differences() {
    let g = [0.4, 0.3, -1.1, 0.9];
    let x = [-0.2, 1.0, 0.6, -0.5];
    let left = fd_det(|p| law_d1(&g, &p), x);
    let right = fd_det(|p| law_d1(&p, &g), x);
    assert!((left - 1.0).abs() < 1e-7, "{left}");
    assert!((left_translation_det(&el(&g), &el(&x)) - left).abs() < 1e-7);
    assert!((right_translation_det(&el(&g), &el(&x)) - right).abs() < 1e-7);
    assert!((right - modular_function(&el(&g), 1)).abs() < 1e-7);
}

#[test]
fn d0_group_is_the_ax_plus_b_like_factor() {
    let x = el(&[0.5, 1.0]);
    let y = el(&[-0.25, 2.0]);
    let p = jgroup_mul(&x, &y, 0).unwrap();
    assert!((p.a - 0.25).abs() < 1e-15);
    assert!((p.t - ((0.5f64).exp() * 1.0 + 2.0)).abs() < 1e-14);
}

#[test]
fn kernel_conjugation_flips_theta() {
    let x = el(&[0.3, -1.0, 0.5, 2.0]);
    let y = el(&[-0.7, 0.25, 1.5, -0.4]);
    let k = kernel_k(2.0, &x, &y).unwrap();
    let km = kernel_k(-2.0, &x, &y).unwrap();
    assert!((k.conj() - km).norm() <= 1e-12 * k.norm().max(1.0));
}

#[test]
fn zero_tau_is_the_plain_kernel() {
    let x = el(&[0.3, -1.0, 0.5, 2.0]);
    let y = el(&[-0.7, 0.25, 1.5, -0.4]);
    let zero = |_: f64| C64::new(0.0, 0.0);
    assert_eq!(kernel_ktau(2.0, Some(&zero), &x, &y).unwrap(), kernel_k(2.0, &x, &y).unwrap());
}

#[test]
fn input_errors() {
    let x = el(&[0.0, 1.0, 1.0, 0.0]);
    assert_eq!(kernel_k(0.0, &x, &x), Err(KahlerianError::ThetaZero));
    assert!(matches!(jgroup_mul(&x, &x, 2), Err(KahlerianError::Dimension { .. })));
    let real = |x: f64| C64::new(x, 0.0);
    assert!(validate_tau(&real, 2.0).is_err());
    assert!(validate_tau(&kahlerian::default_tau, 2.0).is_ok());
}

#[test]
fn seeded_battery_passes_for_small_d() {
    let tol = Tolerances::default();
    for d in [0, 1, 2] {
        let cfg = KahlerianConfig {
            d,
            samples: 1000,
            ..KahlerianConfig::default()
        };
        let checks = kahlerian::verify(&cfg, None).unwrap();
        assert!(all_pass(&checks, &tol), "d={d}: {checks:?}");
        assert_eq!(checks, kahlerian::verify(&cfg, None).unwrap());
    }
}

fn coord() -> impl Strategy<Value = f64> {
    -2.0f64..2.0
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(256))]

    #[test]
    fn group_axioms(x in prop::array::uniform4(coord()), y in prop::array::uniform4(coord()), z in prop::array::uniform4(coord())) {
        let (x, y, z) = (el(&x), el(&y), el(&z));
        let xy_z = jgroup_mul(&jgroup_mul(&x, &y, 1).unwrap(), &z, 1).unwrap();
        let x_yz = jgroup_mul(&x, &jgroup_mul(&y, &z, 1).unwrap(), 1).unwrap();
        prop_assert!(xy_z.distance(&x_yz) <= 1e-9 * (1.0 + xy_z.coords().iter().fold(0.0f64, |m, c| m.max(c.abs()))));
        let xi = jgroup_inv(&x, 1).unwrap();
        let e = JGroupElement::identity(1);
        prop_assert!(jgroup_mul(&x, &xi, 1).unwrap().distance(&e) <= 1e-9);
        prop_assert!(jgroup_mul(&xi, &x, 1).unwrap().distance(&e) <= 1e-9);
    }

    #[test]
    fn modular_function_is_multiplicative(x in prop::array::uniform4(coord()), y in prop::array::uniform4(coord())) {
        let (x, y) = (el(&x), el(&y));
        let xy = jgroup_mul(&x, &y, 1).unwrap();
        let lhs = modular_function(&xy, 1);
        let rhs = modular_function(&x, 1) * modular_function(&y, 1);
        prop_assert!((lhs - rhs).abs() <= 1e-12 * rhs);
    }

    #[test]
    fn kernel_level_symmetry(x in prop::array::uniform4(coord()), y in prop::array::uniform4(coord())) {
        let (x, y) = (el(&x), el(&y));
        let yi = jgroup_inv(&y, 1).unwrap();
        let yx = jgroup_mul(&yi, &x, 1).unwrap();
        let k = kernel_k(2.0, &x, &y).unwrap();
        let k2 = kernel_k(2.0, &yx, &yi).unwrap();
        prop_assert!((k2.conj() - k).norm() <= 1e-9 * k.norm().max(1.0));
    }
}
