//! Deform M4 under the conjugation action of Z2 x Z2 and compare with the
//! fixed points of the diagonal action.
use qdeform::checks::{all_pass, Tolerances};
use qdeform::cocycles::{bicharacter_cocycle, enumerate_bicharacters};
use qdeform::deform::{deform, GSystem};
use qdeform::fqg::{FiniteGroup, FiniteQuantumGroup};

fn main() {
    let g = FiniteGroup::abelian(&[2, 2]).unwrap();
    let q = FiniteQuantumGroup::group_algebra(&g);
    let sigma = &enumerate_bicharacters(&g).unwrap()[0];
    let c = bicharacter_cocycle(&q, &sigma.table(), "sigma").unwrap();
    let s = GSystem::preset(&q, "matrix").unwrap();
    let d = deform(&s, &c).unwrap();
    println!("dim A {} dim A_Omega {}", s.a.dim(), d.dim());
    let tol = Tolerances::default();
    for (what, checks) in [
        ("system", s.report()),
        ("deformed", d.report()),
        ("action", d.action_report()),
        ("fixed points", d.fixed_point_report()),
    ] {
        println!("{what}: {}", if all_pass(&checks, &tol) { "pass" } else { "FAIL" });
        for ch in checks {
            println!("  {:<55} {:.1e}", ch.name, ch.defect);
        }
    }
}
