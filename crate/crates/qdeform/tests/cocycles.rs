use proptest::prelude::*;
use qdeform::cocycles::{
    bicharacter_cocycle, enumerate_bicharacters, random_dual_unitary, scalar_cocycle,
    DualCocycle, Provenance,
};
use qdeform::fqg::{FiniteGroup, FiniteQuantumGroup};
use rand::SeedableRng;

/// All homomorphisms into the circle, found by trying every assignment of
/// `m`-th roots of unity (`m` the group order) to the elements.
fn characters(g: &FiniteGroup) -> Vec<Vec<usize>> {
    let n = g.order();
    let total = n.pow(n as u32);
    (0..total)
        .map(|mut k| {
            (0..n)
                .map(|_| {
                    let d = k % n;
                    k /= n;
                    d
                })
                .collect::<Vec<_>>()
        })
        .filter(|chi| {
            (0..n).all(|a| (0..n).all(|b| chi[g.mul(a, b)] == (chi[a] + chi[b]) % n))
        })
        .collect()
}

/// Bicharacters counted as homomorphisms from the group to its character
/// group, by exhaustive search.
fn brute_force_bicharacters(g: &FiniteGroup) -> usize {
    let n = g.order();
    let chars = characters(g);
    let m = chars.len();
    let total = m.pow(n as u32);
    (0..total)
        .filter(|&k| {
            let mut k = k;
            let pick: Vec<&Vec<usize>> = (0..n)
                .map(|_| {
                    let c = &chars[k % m];
                    k /= m;
                    c
                })
                .collect();
            (0..n).all(|a| {
                (0..n).all(|b| {
                    (0..n).all(|t| pick[g.mul(a, b)][t] == (pick[a][t] + pick[b][t]) % n)
                })
            })
        })
        .count()
}

fn abelian() -> Vec<FiniteGroup> {
    vec![
        FiniteGroup::cyclic(1),
        FiniteGroup::cyclic(2),
        FiniteGroup::cyclic(3),
        FiniteGroup::cyclic(4),
        FiniteGroup::abelian(&[2, 2]).unwrap(),
    ]
}

#[test]
fn enumeration_matches_exhaustive_count() {
    for g in abelian() {
        let got = enumerate_bicharacters(&g).unwrap().len();
        assert_eq!(got, brute_force_bicharacters(&g), "{}", g.name);
    }
    assert_eq!(enumerate_bicharacters(&FiniteGroup::cyclic(2)).unwrap().len(), 2);
    assert_eq!(enumerate_bicharacters(&FiniteGroup::cyclic(1)).unwrap().len(), 1);
    let klein = FiniteGroup::abelian(&[2, 2]).unwrap();
    assert_eq!(enumerate_bicharacters(&klein).unwrap().len(), 16);
}

#[test]
fn antisymmetric_bicharacters_come_first_and_are_distinct() {
    for g in abelian() {
        let bs = enumerate_bicharacters(&g).unwrap();
        let first_sym = bs.iter().position(|b| !b.is_antisymmetric_nontrivial());
        if let Some(k) = first_sym {
            assert!(bs[k..].iter().all(|b| !b.is_antisymmetric_nontrivial()));
        }
        for i in 0..bs.len() {
            for j in 0..i {
                assert_ne!(bs[i].table(), bs[j].table(), "{} {i} {j}", g.name);
            }
        }
    }
    let klein = FiniteGroup::abelian(&[2, 2]).unwrap();
    let bs = enumerate_bicharacters(&klein).unwrap();
    assert_eq!(bs.iter().filter(|b| b.is_antisymmetric_nontrivial()).count(), 8);
}

#[test]
fn every_bicharacter_cocycle_verifies() {
    for g in abelian() {
        let q = FiniteQuantumGroup::group_algebra(&g);
        for b in enumerate_bicharacters(&g).unwrap() {
            let c = bicharacter_cocycle(&q, &b.table(), "b").unwrap();
            let r = c.verify();
            assert!(r.passes(), "{} {:?}: {r:?}", g.name, b.exponents);
            assert!(r.rewritten <= 1e-10 && r.rewritten2 <= 1e-10);
            let d = c.dual_weight_gns().unwrap().report(&c);
            assert!(d.unitarity <= 1e-10, "{d:?}");
            assert!(d.pentagon <= 1e-10, "{d:?}");
            assert!(d.implements <= 1e-10, "{d:?}");
            assert!(d.ecocycle4 <= 1e-10, "{d:?}");
        }
    }
}

#[test]
fn trivial_cocycle_changes_nothing() {
    let g = FiniteGroup::s3();
    for q in [FiniteQuantumGroup::function_algebra(&g), FiniteQuantumGroup::group_algebra(&g)] {
        let c = DualCocycle::trivial(&q);
        assert!(c.verify().passes());
        let d = c.dual_weight_gns().unwrap();
        assert!(qdeform::tensorkit::linalg::defect(&d.what_omega, &q.what) < 1e-10);
    }
}

#[test]
fn non_cocycle_is_caught() {
    let q = FiniteQuantumGroup::group_algebra(&FiniteGroup::cyclic(3));
    let mut t = vec![vec![0.0; 3]; 3];
    t[1][1] = 0.1;
    let c = scalar_cocycle(&q, &t, Provenance::Raw, "bad").unwrap();
    assert_eq!(c.verify().failure(), Some("cocycle identity"));
    assert!(c.clone().verified().is_err());
    // the bicharacter constructor refuses the table outright
    assert!(bicharacter_cocycle(&q, &t, "bad").is_err());
}

#[test]
fn nonabelian_enumeration_is_an_error() {
    assert!(enumerate_bicharacters(&FiniteGroup::s3()).is_err());
}

#[test]
fn inverse_on_deformed_dual_is_a_cocycle() {
    let g = FiniteGroup::abelian(&[2, 2]).unwrap();
    let q = FiniteQuantumGroup::group_algebra(&g);
    let b = &enumerate_bicharacters(&g).unwrap()[0];
    let c = bicharacter_cocycle(&q, &b.table(), "sigma").unwrap();
    let inv = c.dual_weight_gns().unwrap().cocycle_on_deformed(&c);
    assert!(inv.verify().passes());
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn coboundary_twists_stay_cocycles(seed in 0u64..1_000_000, which in 0usize..16) {
        let g = FiniteGroup::abelian(&[2, 2]).unwrap();
        let q = FiniteQuantumGroup::group_algebra(&g);
        let b = &enumerate_bicharacters(&g).unwrap()[which];
        let c = bicharacter_cocycle(&q, &b.table(), "b").unwrap();
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(seed);
        let u = random_dual_unitary(&q, &mut rng);
        let cu = c.coboundary_twist(&u).unwrap();
        let r = cu.verify();
        prop_assert!(r.passes(), "{:?}", r);
    }

    #[test]
    fn s3_coboundaries_of_the_trivial_cocycle(seed in 0u64..1_000_000) {
        let q = FiniteQuantumGroup::function_algebra(&FiniteGroup::s3());
        let c = DualCocycle::trivial(&q);
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(seed);
        let u = random_dual_unitary(&q, &mut rng);
        let cu = c.coboundary_twist(&u).unwrap();
        prop_assert!(cu.verify().passes());
        prop_assert!(cu.deformed_coassociativity() <= 1e-10);
    }
}
