//! Enumerate bicharacter cocycles and check the deformed multiplicative unitary.
use qdeform::cocycles::{bicharacter_cocycle, enumerate_bicharacters};
use qdeform::fqg::{FiniteGroup, FiniteQuantumGroup};

fn main() {
    let g = FiniteGroup::abelian(&[2, 2]).unwrap();
    let q = FiniteQuantumGroup::group_algebra(&g);
    let all = enumerate_bicharacters(&g).unwrap();
    println!("{} bicharacters on {}", all.len(), g.name);
    for b in all.iter().take(4) {
        let c = bicharacter_cocycle(&q, &b.table(), "b").unwrap();
        let r = c.verify();
        let d = c.dual_weight_gns().unwrap().report(&c);
        println!(
            "{:?} antisymmetric {}: cocycle {:.1e}, W^_Omega pentagon {:.1e}, implements {:.1e}",
            b.exponents,
            b.is_antisymmetric_nontrivial(),
            r.identity,
            d.pentagon,
            d.implements
        );
    }
}
