use qdeform::fqg::{pentagon_defect, FiniteGroup, FiniteQuantumGroup, GroupError};
use qdeform::tensorkit::linalg::{defect, kron, unit, CMat};
use qdeform::tensorkit::ONE;

fn groups() -> Vec<FiniteGroup> {
    vec![
        FiniteGroup::cyclic(1),
        FiniteGroup::cyclic(2),
        FiniteGroup::cyclic(3),
        FiniteGroup::cyclic(4),
        FiniteGroup::abelian(&[2, 2]).unwrap(),
        FiniteGroup::s3(),
    ]
}

/// Left translation `δ_t ↦ δ_{st}` written out directly.
fn translation(g: &FiniteGroup, s: usize) -> CMat {
    let n = g.order();
    CMat::from_fn(n, n, |r, c| if r == g.mul(s, c) { ONE } else { ONE * 0.0 })
}

#[test]
fn function_algebra_coproduct_is_composition() {
    for g in groups() {
        let q = FiniteQuantumGroup::function_algebra(&g);
        let n = g.order();
        for s in 0..n {
            // Δ(δ_s)(a, b) = [ab = s]
            let want = CMat::from_fn(n * n, n * n, |r, c| {
                let (a, b) = (r / n, r % n);
                if r == c && g.mul(a, b) == s {
                    ONE
                } else {
                    ONE * 0.0
                }
            });
            assert!(defect(&q.delta(&unit(n, s, s)), &want) < 1e-12, "{} s={s}", g.name);
        }
    }
}

#[test]
fn group_algebra_translations_are_grouplike() {
    for g in groups() {
        let q = FiniteQuantumGroup::group_algebra(&g);
        for s in 0..g.order() {
            let l = translation(&g, s);
            assert!(defect(&q.delta(&l), &kron(&l, &l)) < 1e-12, "{} s={s}", g.name);
        }
    }
}

#[test]
fn pentagon_and_duality_for_small_groups() {
    for g in groups() {
        for q in [FiniteQuantumGroup::function_algebra(&g), FiniteQuantumGroup::group_algebra(&g)] {
            let n = q.n;
            for (name, u) in [("W", &q.w), ("W^", &q.what), ("V", &q.v)] {
                let d = pentagon_defect(u, n);
                assert!(d <= 1e-10, "{} {:?} {name}: {d:e}", g.name, q.kind);
            }
            let r = q.invariants();
            assert!(r.coproduct_agreement <= 1e-10);
            assert!(r.worst() <= 1e-10, "{} {:?}: {r:?}", g.name, q.kind);
            assert!(q.span_distance(&q.dual().dual()) <= 1e-8);
        }
        let fa = FiniteQuantumGroup::function_algebra(&g);
        let ga = FiniteQuantumGroup::group_algebra(&g);
        assert!(fa.dual().span_distance(&ga) <= 1e-8, "{}", g.name);
    }
}

#[test]
fn dimensions_of_both_pictures() {
    // C(S3) is commutative of dimension 6; C*(S3) = C ⊕ C ⊕ M2 has center 3
    let g = FiniteGroup::s3();
    let fa = FiniteQuantumGroup::function_algebra(&g);
    let ga = FiniteQuantumGroup::group_algebra(&g);
    assert_eq!(fa.m.dim(), 6);
    assert_eq!(fa.m.center_dim(), 6);
    assert_eq!(ga.m.dim(), 6);
    assert_eq!(ga.m.center_dim(), 3);
}

#[test]
fn trivial_group_has_unit_structure_maps() {
    let g = FiniteGroup::cyclic(1);
    for q in [FiniteQuantumGroup::function_algebra(&g), FiniteQuantumGroup::group_algebra(&g)] {
        let one = CMat::identity(1, 1);
        assert_eq!(q.w, one);
        assert_eq!(q.what, one);
        assert_eq!(q.v, one);
        assert_eq!(q.delta(&one), one);
    }
}

#[test]
fn bad_tables_are_rejected() {
    assert_eq!(
        FiniteGroup::from_table("x", vec![vec![0, 1], vec![0, 1]]),
        Err(GroupError::NotLatin { row: 1, col: 0, value: 0 })
    );
    assert!(FiniteGroup::parse("group x order 2\ntable\n0 1\n").is_err());
    assert!(FiniteGroup::parse("nonsense").is_err());
    assert!(FiniteGroup::parse("group z4 order 5\nabelian 4\n").is_err());
}
