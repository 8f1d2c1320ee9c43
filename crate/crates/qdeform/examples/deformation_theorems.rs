//! Twisted crossed products, crossed product recovery and deformation in
//! stages for the translation action of Z3.
use qdeform::cocycles::{bicharacter_cocycle, enumerate_bicharacters};
use qdeform::deform::{deform, verify_stages, verify_ttwisted, verify_tva, GSystem};
use qdeform::fqg::{FiniteGroup, FiniteQuantumGroup};

fn main() {
    let g = FiniteGroup::cyclic(3);
    let q = FiniteQuantumGroup::group_algebra(&g);
    let b = &enumerate_bicharacters(&g).unwrap()[1];
    let c = bicharacter_cocycle(&q, &b.table(), "psi").unwrap();
    let s = GSystem::preset(&q, "translation").unwrap();
    let d = deform(&s, &c).unwrap();
    let inverse = c.dual_weight_gns().unwrap().cocycle_on_deformed(&c);
    let mut checks = verify_ttwisted(&d);
    checks.extend(verify_tva(&d));
    checks.extend(verify_stages(&s, &c, &inverse).unwrap());
    for ch in checks {
        println!("{:<70} {:.1e}", ch.name, ch.defect);
    }
}
