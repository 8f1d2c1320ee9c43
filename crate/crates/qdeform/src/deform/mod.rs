//! G-algebras, crossed products, twisted crossed products and the
//! cocycle deformation `A_Ω` together with verifiers for its properties.

mod algebra;
mod system;
mod theorems;

pub use algebra::{deform, deform_with, g_points, DeformedAlgebra};
pub use system::{star_closure, CrossedProduct, GSystem, OpSystem, TwistedCrossedProduct};
pub use theorems::{
    verify_cohomology_invariance, verify_dual_action_case, verify_stages, verify_ttwisted,
    verify_tva, BlockRank,
};

use crate::cocycles::CocycleError;
use crate::tensorkit::linalg::{self, place, CMat};
use crate::twisted::TwistedError;
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum DeformError {
    #[error("system `{name}` fails `{check}` (defect {defect:.3e})")]
    InvalidSystem {
        name: String,
        check: String,
        defect: f64,
    },
    #[error("unknown algebra preset `{0}`")]
    UnknownPreset(String),
    #[error("shape mismatch: {0}")]
    Shape(String),
    #[error("deformed span is not a *-algebra (defect {0:.3e})")]
    NotClosed(f64),
    #[error(transparent)]
    Twisted(#[from] TwistedError),
    #[error(transparent)]
    Cocycle(#[from] CocycleError),
}

/// `W*_{12}(1⊗y)W_{12}` for `y` on `H ⊗ H_d`: the coproduct implemented by
/// `w` applied to the first leg of `y`.
pub(crate) fn lift_left(w: &CMat, y: &CMat, n: usize, d: usize) -> CMat {
    let dims = [n, n, d];
    linalg::conjugate(&w.adjoint(), &[0, 1], &dims, &place(y, &[1, 2], &dims))
}

/// `(u)_{21}(1⊗y)(u)*_{21}` for `u` on `H ⊗ H` and `y` on `H ⊗ H_d`.
pub(crate) fn flip_conjugate(u: &CMat, y: &CMat, n: usize, d: usize) -> CMat {
    let dims = [n, n, d];
    linalg::conjugate(u, &[1, 0], &dims, &place(y, &[1, 2], &dims))
}
