//! Leg placement and operator spans on a three-fold tensor product.
use qdeform::tensorkit::linalg::{defect, flip, kron, place, unit};
use qdeform::tensorkit::{CMat, OperatorSpan};

fn main() {
    let dims = [2, 3, 2];
    let x = unit(2, 0, 1);
    let y = unit(2, 1, 1);
    // x on leg 0 and y on leg 2 is x ⊗ 1 ⊗ y
    let placed = place(&kron(&x, &y), &[0, 2], &dims);
    let direct = kron(&kron(&x, &CMat::identity(3, 3)), &y);
    println!("placement defect {:.1e}", defect(&placed, &direct));

    // the flip swaps the order of a product
    let f = flip(2, 2);
    let swapped = &f * kron(&x, &y) * &f;
    println!("flip defect {:.1e}", defect(&swapped, &kron(&y, &x)));

    let diag = OperatorSpan::from_generators(2, [unit(2, 0, 0), unit(2, 1, 1)].iter());
    println!(
        "diagonal 2x2: dim {} algebra defect {:.1e} center {}",
        diag.dim(),
        diag.algebra_defect(),
        diag.center_dim()
    );
    println!("distance from M2 to itself {:.1e}", OperatorSpan::full(2).distance(&OperatorSpan::full(2)).unwrap());
}
