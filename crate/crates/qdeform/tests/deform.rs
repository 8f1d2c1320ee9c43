use proptest::prelude::*;
use qdeform::checks::{all_pass, Check, Tolerances};
use qdeform::cocycles::{bicharacter_cocycle, enumerate_bicharacters, random_dual_unitary, DualCocycle};
use qdeform::deform::{
    deform, verify_cohomology_invariance, verify_dual_action_case, verify_stages,
    verify_ttwisted, verify_tva, CrossedProduct, DeformError, GSystem, OpSystem,
};
use qdeform::fqg::{FiniteGroup, FiniteQuantumGroup};
use rand::SeedableRng;

const PRESETS: [&str; 5] = [
    "translation",
    "trivial",
    "matrix",
    "dual-crossed-scalars",
    "dual-crossed-dual",
];

fn cocycle(factors: &[usize], index: usize) -> DualCocycle {
    let g = FiniteGroup::abelian(factors).unwrap();
    let q = FiniteQuantumGroup::group_algebra(&g);
    let b = &enumerate_bicharacters(&g).unwrap()[index];
    bicharacter_cocycle(&q, &b.table(), "b").unwrap()
}

fn assert_pass(what: &str, checks: &[Check]) {
    let tol = Tolerances::default();
    let bad: Vec<_> = checks.iter().filter(|c| !c.passes(&tol)).collect();
    assert!(all_pass(checks, &tol), "{what}: {bad:?}");
}

#[test]
fn z2_pairs_pass_every_verifier() {
    let c = cocycle(&[2], 1);
    for p in PRESETS {
        let s = GSystem::preset(&c.q, p).unwrap();
        assert_pass(p, &s.report());
        let d = deform(&s, &c).unwrap();
        assert_eq!(d.dim(), s.a.dim(), "{p}");
        assert_pass(p, &d.report());
        assert_pass(p, &d.action_report());
        assert_pass(p, &d.fixed_point_report());
        assert_pass(p, &CrossedProduct::build(&s).report(&s));
        assert_pass(p, &verify_ttwisted(&d));
        assert_pass(p, &verify_tva(&d));
        let inv = c.dual_weight_gns().unwrap().cocycle_on_deformed(&c);
        let stages = verify_stages(&s, &c, &inv).unwrap();
        assert!(stages.iter().any(|c| c.name.starts_with("round trip")));
        assert_pass(p, &stages);
    }
}

#[test]
fn matrix_algebra_keeps_its_dimension_under_sigma() {
    let c = cocycle(&[2, 2], 0);
    let s = GSystem::preset(&c.q, "matrix").unwrap();
    let d = deform(&s, &c).unwrap();
    assert_eq!(s.a.dim(), 16);
    assert_eq!(d.dim(), 16);
    assert_pass("matrix", &d.fixed_point_report());
}

#[test]
fn trivial_cocycle_deforms_to_alpha_of_a() {
    let g = FiniteGroup::cyclic(3);
    let q = FiniteQuantumGroup::group_algebra(&g);
    let c = DualCocycle::trivial(&q);
    for p in ["translation", "matrix"] {
        let s = GSystem::preset(&q, p).unwrap();
        let d = deform(&s, &c).unwrap();
        assert!(d.span.distance(&s.alpha_span()).unwrap() <= 1e-8, "{p}");
    }
}

#[test]
fn translation_of_s3_with_trivial_cocycle() {
    let q = FiniteQuantumGroup::function_algebra(&FiniteGroup::s3());
    let c = DualCocycle::trivial(&q);
    let s = GSystem::preset(&q, "trivial").unwrap();
    let d = deform(&s, &c).unwrap();
    assert_eq!(d.dim(), 1);
    assert_pass("s3 trivial", &verify_ttwisted(&d));
}

#[test]
fn dual_action_case_for_klein_group() {
    let c = cocycle(&[2, 2], 0);
    for op in [OpSystem::scalars(&c.q), OpSystem::dual(&c.q)] {
        assert_pass(&op.name, &op.report());
        let (_, checks) = verify_dual_action_case(&op, &c).unwrap();
        assert_pass(&op.name, &checks);
    }
}

#[test]
fn unknown_preset_is_an_error() {
    let q = FiniteQuantumGroup::group_algebra(&FiniteGroup::cyclic(2));
    assert!(matches!(GSystem::preset(&q, "nope"), Err(DeformError::UnknownPreset(_))));
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(12))]

    #[test]
    fn coboundaries_conjugate_the_deformation(seed in 0u64..1_000_000, preset in 0usize..4) {
        let c = cocycle(&[2, 2], 0);
        let s = GSystem::preset(&c.q, PRESETS[preset]).unwrap();
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(seed);
        let us: Vec<_> = (0..2).map(|_| random_dual_unitary(&c.q, &mut rng)).collect();
        let checks = verify_cohomology_invariance(&s, &c, &us).unwrap();
        let tol = Tolerances::default();
        prop_assert!(all_pass(&checks, &tol), "{:?}", checks);
    }
}
