//! Oscillatory kernels on the elementary normal j-group.
use qdeform::kahlerian::{self, kernel_k, JGroupElement, KahlerianConfig};
use rand::SeedableRng;

fn main() {
    let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(1);
    let x = JGroupElement::random(1, 2.0, &mut rng);
    let y = JGroupElement::random(1, 2.0, &mut rng);
    println!("x = {:?}", x.coords());
    println!("K_2(x, y) = {}", kernel_k(2.0, &x, &y).unwrap());
    println!("modular function at x: {:.6}", kahlerian::modular_function(&x, 1));

    let cfg = KahlerianConfig {
        samples: 2000,
        ..KahlerianConfig::default()
    };
    for ch in kahlerian::verify(&cfg, None).unwrap() {
        println!("{:<55} {:.1e}", ch.name, ch.defect);
    }
}
