use qdeform::cocycles::{bicharacter_cocycle, enumerate_bicharacters, DualCocycle};
use qdeform::fqg::{FiniteGroup, FiniteQuantumGroup};
use qdeform::tensorkit::linalg::{self, CMat};
use qdeform::tensorkit::C64;
use qdeform::twisted::TwistedGroupAlgebra;

fn sigma() -> DualCocycle {
    let g = FiniteGroup::abelian(&[2, 2]).unwrap();
    let q = FiniteQuantumGroup::group_algebra(&g);
    let b = &enumerate_bicharacters(&g).unwrap()[0];
    assert!(b.is_antisymmetric_nontrivial());
    bicharacter_cocycle(&q, &b.table(), "sigma").unwrap()
}

/// Center dimension by solving `Σ c_k [b_k, b_j] = 0` for all `j` with an
/// SVD of the stacked commutator matrix.
fn center_by_solve(basis: &[CMat]) -> usize {
    let k = basis.len();
    let side = basis[0].nrows();
    let rows = k * side * side;
    let mut m = CMat::zeros(rows, k);
    for (c, x) in basis.iter().enumerate() {
        for (j, y) in basis.iter().enumerate() {
            let comm = x * y - y * x;
            for (e, v) in comm.iter().enumerate() {
                m[(j * side * side + e, c)] = *v;
            }
        }
    }
    let sv = m.singular_values();
    let top = sv.iter().cloned().fold(0.0, f64::max).max(1.0);
    k - sv.iter().filter(|&&s| s > 1e-9 * top).count()
}

#[test]
fn sigma_twisted_algebra_is_a_full_matrix_algebra() {
    let t = TwistedGroupAlgebra::build(&sigma()).unwrap();
    let r = t.report();
    assert_eq!(r.dim, 4);
    assert_eq!(r.center_dim, 1);
    assert_eq!(center_by_solve(&t.span.basis()), 1);
    let rel = t.translation_relation_defect().unwrap();
    assert!(rel <= 1e-12, "{rel:e}");
}

#[test]
fn center_follows_the_antisymmetrization() {
    for factors in [vec![2], vec![3], vec![4], vec![2, 2]] {
        let g = FiniteGroup::abelian(&factors).unwrap();
        let q = FiniteQuantumGroup::group_algebra(&g);
        let n = g.order();
        for b in enumerate_bicharacters(&g).unwrap() {
            let c = bicharacter_cocycle(&q, &b.table(), "b").unwrap();
            let t = TwistedGroupAlgebra::build(&c).unwrap();
            let close = |x: f64, y: f64| {
                let d = (x - y).rem_euclid(1.0);
                d < 1e-9 || d > 1.0 - 1e-9
            };
            let radical = (0..n)
                .filter(|&s| (0..n).all(|u| close(b.turns(s, u), b.turns(u, s))))
                .count();
            assert_eq!(center_by_solve(&t.span.basis()), radical, "{} {:?}", g.name, b.exponents);
        }
    }
}

#[test]
fn trivial_cocycle_gives_back_m() {
    let g = FiniteGroup::s3();
    for q in [FiniteQuantumGroup::function_algebra(&g), FiniteQuantumGroup::group_algebra(&g)] {
        let t = TwistedGroupAlgebra::build(&DualCocycle::trivial(&q)).unwrap();
        assert!(t.span.distance(&q.m).unwrap() <= 1e-8, "{:?}", q.kind);
    }
}

#[test]
fn quantization_and_regularity() {
    let t = TwistedGroupAlgebra::build(&sigma()).unwrap();
    assert!(t.quantization_span().distance(&t.span).unwrap() <= 1e-10);
    assert!(t.equivariance_defect() <= 1e-10);
    let reg = t.regularity();
    assert_eq!(reg.product_dim, 16);
    assert!(reg.regular());
    let r = t.report();
    for d in [r.beta_range, r.beta_on_generator, r.beta_multiplicative, r.beta_coaction] {
        assert!(d <= 1e-10, "{r:?}");
    }
}

#[test]
fn average_of_identity_counts_points() {
    let t = TwistedGroupAlgebra::build(&sigma()).unwrap();
    let (s, _) = t.average(&CMat::identity(4, 4)).unwrap();
    assert!((s - C64::new(4.0, 0.0)).norm() < 1e-12);
    let neg = CMat::identity(4, 4) * C64::new(-1.0, 0.0);
    assert!(t.average(&neg).is_err());
}

#[test]
fn fourier_product_is_represented() {
    let t = TwistedGroupAlgebra::build(&sigma()).unwrap();
    let n = t.n();
    for s in 0..n {
        for r in 0..n {
            let mut f1 = vec![C64::new(0.0, 0.0); n];
            let mut f2 = f1.clone();
            f1[s] = C64::new(1.0, 0.0);
            f2[r] = C64::new(1.0, 0.0);
            let p = t.fourier_product(&f1, &f2);
            let d = linalg::defect(&(t.pi(&f1) * t.pi(&f2)), &t.pi(&p));
            assert!(d <= 1e-10, "{s} {r}: {d:e}");
        }
    }
}
