use proptest::prelude::*;
use qdeform::tensorkit::linalg::{
    self, adj_mul, defect, kron, mul, op_norm, permute_legs, place, psd_sqrt, sandwich, slice,
    unitary_exp, CMat,
};
use qdeform::tensorkit::{
    antilinear_polar, tensor_residual, AntilinearOperator, OperatorSpan, C64,
};

fn mat(n: usize, vals: &[f64]) -> CMat {
    CMat::from_fn(n, n, |r, c| {
        let k = 2 * (r * n + c);
        C64::new(vals[k % vals.len()], vals[(k + 1) % vals.len()])
    })
}

fn entries(len: usize) -> impl Strategy<Value = Vec<f64>> {
    prop::collection::vec(-1.0f64..1.0, len)
}

/// Entry-wise definition of `x` on legs `(i, k)` of `dims = [a, b, c]`.
fn place_13_by_hand(x: &CMat, a: usize, b: usize, c: usize) -> CMat {
    let n = a * b * c;
    CMat::from_fn(n, n, |r, s| {
        let (r0, r1, r2) = (r / (b * c), (r / c) % b, r % c);
        let (s0, s1, s2) = (s / (b * c), (s / c) % b, s % c);
        if r1 != s1 {
            return C64::new(0.0, 0.0);
        }
        x[(r0 * c + r2, s0 * c + s2)]
    })
}

#[test]
fn placement_matches_index_formula() {
    let x = mat(6, &[0.3, -1.2, 0.7, 2.0, 0.1, -0.4, 1.1]);
    let placed = place(&x, &[0, 2], &[2, 3, 3]);
    assert_eq!(placed, place_13_by_hand(&x, 2, 3, 3));
}

#[test]
fn slice_against_trace_pairing() {
    let x = mat(6, &[0.5, 0.2, -0.3, 0.9, 1.4]);
    let rho = mat(2, &[0.1, 0.2, 0.3, -0.4]);
    // ω(a) = Tr(ρᵀ a) on the first leg
    let by_hand = CMat::from_fn(3, 3, |r, c| {
        let mut s = C64::new(0.0, 0.0);
        for i in 0..2 {
            for j in 0..2 {
                s += rho[(i, j)] * x[(i * 3 + r, j * 3 + c)];
            }
        }
        s
    });
    assert!(defect(&slice(&x, 0, &[2, 3], &rho), &by_hand) < 1e-14);
}

#[test]
fn trivial_dimension_legs_are_harmless() {
    let x = mat(3, &[1.0, 2.0, 3.0]);
    assert_eq!(place(&x, &[1], &[1, 3, 1]), x);
}

#[test]
fn polar_decomposition_reassembles() {
    let m = mat(3, &[0.9, 0.1, -0.2, 0.5, 1.3, 0.4, -0.7]);
    let s = AntilinearOperator::new(m);
    let (j, delta) = antilinear_polar(&s).unwrap();
    let root = psd_sqrt(&delta);
    let v = linalg::CVec::from_fn(3, |i, _| C64::new(i as f64 + 0.5, 1.0 - i as f64));
    let lhs = s.apply(&v);
    let rhs = j.apply(&(&root * &v));
    assert!((lhs - rhs).norm() < 1e-12);
    let jj = j.compose(&j.adjoint());
    assert!(defect(&jj, &CMat::identity(3, 3)) < 1e-12);
}

#[test]
fn singular_polar_is_refused() {
    let s = AntilinearOperator::new(CMat::zeros(2, 2));
    assert!(antilinear_polar(&s).is_err());
}

#[test]
fn op_norm_exact_then_bounded() {
    let d = CMat::from_diagonal(&linalg::CVec::from_fn(4, |i, _| C64::new(i as f64, 0.0)));
    assert!((op_norm(&d) - 3.0).abs() < 1e-12);
    // above the exact limit the value is an upper bound
    let big = CMat::identity(100, 100);
    assert!(op_norm(&big) >= 1.0);
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn fast_products_match_nalgebra(v in entries(64), w in entries(64)) {
        let a = mat(8, &v);
        let b = mat(8, &w);
        prop_assert!(defect(&mul(&a, &b), &(&a * &b)) < 1e-12);
        prop_assert!(defect(&adj_mul(&a, &b), &(a.adjoint() * &b)) < 1e-12);
        prop_assert!(defect(&sandwich(&a, &b), &(&a * &b * a.adjoint())) < 1e-11);
    }

    #[test]
    fn permutation_round_trip(v in entries(72)) {
        let x = mat(12, &v);
        let dims = [2, 3, 2];
        let p = permute_legs(&x, &dims, &[2, 0, 1]);
        let back = permute_legs(&p, &[2, 2, 3], &[1, 2, 0]);
        prop_assert_eq!(back, x);
    }

    #[test]
    fn kron_is_placement_of_both_legs(v in entries(8), w in entries(18)) {
        let a = mat(2, &v);
        let b = mat(3, &w);
        let both = place(&a, &[0], &[2, 3]) * place(&b, &[1], &[2, 3]);
        prop_assert!(defect(&both, &kron(&a, &b)) < 1e-13);
    }

    #[test]
    fn conjugation_by_unitary(v in entries(32), w in entries(72)) {
        let h = mat(4, &v);
        let u = unitary_exp(&((&h + h.adjoint()) * C64::new(0.5, 0.0)));
        prop_assert!(linalg::unitarity_defect(&u) < 1e-12);
        let y = mat(12, &w);
        let dims = [2, 3, 2];
        let fast = linalg::conjugate(&u, &[2, 0], &dims, &y);
        let pu = place(&u, &[2, 0], &dims);
        prop_assert!(defect(&fast, &(&pu * &y * pu.adjoint())) < 1e-12);
    }

    #[test]
    fn span_contains_its_generators(v in entries(32), w in entries(32)) {
        let a = mat(4, &v);
        let b = mat(4, &w);
        let s = OperatorSpan::from_generators(4, [a.clone(), b.clone()].iter());
        prop_assert!(s.dim() <= 2);
        prop_assert!(s.residual(&(a * C64::new(0.5, -2.0) + b)) < 1e-10);
    }

    #[test]
    fn tensor_residual_vanishes_on_products(v in entries(8), w in entries(8)) {
        let a = mat(2, &v);
        let b = mat(2, &w);
        let diag = OperatorSpan::from_generators(2, [linalg::unit(2, 0, 0), linalg::unit(2, 1, 1)].iter());
        let full = OperatorSpan::full(2);
        let d = CMat::from_diagonal(&a.diagonal());
        prop_assert!(tensor_residual(&diag, &full, &kron(&d, &b)) < 1e-12);
        // an off-diagonal first leg is orthogonal to diag ⊗ M2
        let off = &a - &d;
        let r = tensor_residual(&diag, &full, &kron(&off, &CMat::identity(2, 2)));
        prop_assert!(off.norm() < 1e-6 || r > 1e-6);
    }
}
