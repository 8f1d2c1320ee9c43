//! Twisting a cocycle by a coboundary conjugates the deformation.
use qdeform::cocycles::{bicharacter_cocycle, enumerate_bicharacters, random_dual_unitary};
use qdeform::deform::{verify_cohomology_invariance, GSystem};
use qdeform::fqg::{FiniteGroup, FiniteQuantumGroup};
use rand::SeedableRng;

fn main() {
    let g = FiniteGroup::cyclic(4);
    let q = FiniteQuantumGroup::group_algebra(&g);
    let b = &enumerate_bicharacters(&g).unwrap()[1];
    let c = bicharacter_cocycle(&q, &b.table(), "psi").unwrap();
    let s = GSystem::preset(&q, "matrix").unwrap();
    let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(7);
    let us: Vec<_> = (0..10).map(|_| random_dual_unitary(&q, &mut rng)).collect();
    for ch in verify_cohomology_invariance(&s, &c, &us).unwrap() {
        println!("{:<50} {:.1e}", ch.name, ch.defect);
    }
}
