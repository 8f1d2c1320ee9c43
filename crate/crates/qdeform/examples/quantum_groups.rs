//! C(G) and C*(G) for small groups: pentagon, duality, modular conjugations.
use qdeform::fqg::{FiniteGroup, FiniteQuantumGroup};

fn main() {
    let groups = [
        FiniteGroup::cyclic(3),
        FiniteGroup::abelian(&[2, 2]).unwrap(),
        FiniteGroup::s3(),
    ];
    for g in &groups {
        for q in [FiniteQuantumGroup::function_algebra(g), FiniteQuantumGroup::group_algebra(g)] {
            let r = q.invariants();
            println!(
                "{} {:?}: pentagon W {:.1e} W^ {:.1e} V {:.1e}, worst invariant {:.1e}",
                g.name, q.kind, r.pentagon_w, r.pentagon_what, r.pentagon_v, r.worst()
            );
            println!("  bidual distance {:.1e}", q.span_distance(&q.dual().dual()));
        }
        let fa = FiniteQuantumGroup::function_algebra(g);
        let ga = FiniteQuantumGroup::group_algebra(g);
        println!("  dual of C(G) vs C*(G): {:.1e}", fa.dual().span_distance(&ga));
    }
    // groups are read from a small text format
    let g = FiniteGroup::parse("group v order 4\nabelian 2 2\n").unwrap();
    print!("{}", g.to_file_string());
}
