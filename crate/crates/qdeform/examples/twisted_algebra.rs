//! The twisted group algebra of the antisymmetric bicharacter on Z2 x Z2.
use qdeform::cocycles::{bicharacter_cocycle, enumerate_bicharacters};
use qdeform::fqg::{FiniteGroup, FiniteQuantumGroup};
use qdeform::twisted::TwistedGroupAlgebra;

fn main() {
    let g = FiniteGroup::abelian(&[2, 2]).unwrap();
    let q = FiniteQuantumGroup::group_algebra(&g);
    let sigma = &enumerate_bicharacters(&g).unwrap()[0];
    let c = bicharacter_cocycle(&q, &sigma.table(), "sigma").unwrap();
    let t = TwistedGroupAlgebra::build(&c).unwrap();
    let r = t.report();
    println!("dim {} center {} (a full matrix algebra M2)", r.dim, r.center_dim);
    println!("translation relations {:.1e}", t.translation_relation_defect().unwrap());
    println!("beta coaction {:.1e}", r.beta_coaction);
    println!(
        "quantization span distance {:.1e}, equivariance {:.1e}",
        t.quantization_span().distance(&t.span).unwrap(),
        t.equivariance_defect()
    );
    let reg = t.regularity();
    println!("regular: {} ({} of {})", reg.regular(), reg.product_dim, reg.full_dim);
}
