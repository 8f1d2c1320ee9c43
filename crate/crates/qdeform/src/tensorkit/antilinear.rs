use super::linalg::{conj, CMat, CVec};
use super::TensorError;

/// `ξ ↦ M · conj(ξ)` in the standard basis.
#[derive(Clone, Debug, PartialEq)]
pub struct AntilinearOperator {
    pub matrix: CMat,
}

impl AntilinearOperator {
    pub fn new(matrix: CMat) -> Self {
        Self { matrix }
    }

    /// Entrywise complex conjugation.
    pub fn conjugation(n: usize) -> Self {
        Self::new(CMat::identity(n, n))
    }

    pub fn dim(&self) -> usize {
        self.matrix.nrows()
    }

    pub fn apply(&self, v: &CVec) -> CVec {
        &self.matrix * v.map(|z| z.conj())
    }

    /// `self ∘ other`, which is linear.
    pub fn compose(&self, other: &AntilinearOperator) -> CMat {
        &self.matrix * conj(&other.matrix)
    }

    /// `self ∘ l`.
    pub fn after_linear(&self, l: &CMat) -> AntilinearOperator {
        Self::new(&self.matrix * conj(l))
    }

    /// `l ∘ self`.
    pub fn before_linear(&self, l: &CMat) -> AntilinearOperator {
        Self::new(l * &self.matrix)
    }

    /// `self ∘ x ∘ other` for a linear `x`.
    pub fn sandwich(&self, x: &CMat, other: &AntilinearOperator) -> CMat {
        &self.matrix * conj(x) * conj(&other.matrix)
    }

    /// `self ∘ x ∘ self`.
    pub fn conjugate(&self, x: &CMat) -> CMat {
        self.sandwich(x, self)
    }

    pub fn tensor(&self, other: &AntilinearOperator) -> AntilinearOperator {
        Self::new(self.matrix.kronecker(&other.matrix))
    }

    /// Antilinear adjoint: `⟨s*ξ, η⟩ = ⟨sη, ξ⟩` with the inner product linear
    /// in the first slot.
    pub fn adjoint(&self) -> AntilinearOperator {
        Self::new(self.matrix.transpose())
    }

    pub fn inverse(&self) -> Result<AntilinearOperator, TensorError> {
        let inv = self
            .matrix
            .clone()
            .try_inverse()
            .ok_or(TensorError::Singular)?;
        Ok(Self::new(conj(&inv)))
    }

    /// `‖J ∘ J - 1‖`.
    pub fn involution_defect(&self) -> f64 {
        let sq = self.compose(self);
        super::linalg::defect(&sq, &CMat::identity(self.dim(), self.dim()))
    }
}

/// Tomita-style polar decomposition `s = J Δ^{1/2}` with `Δ = s* s`.
pub fn antilinear_polar(
    s: &AntilinearOperator,
) -> Result<(AntilinearOperator, CMat), TensorError> {
    let svd = s.matrix.clone().svd(true, true);
    let smax = svd.singular_values.iter().cloned().fold(0.0, f64::max);
    let smin = svd.singular_values.iter().cloned().fold(f64::INFINITY, f64::min);
    if smax == 0.0 || smin <= 1e-12 * smax {
        return Err(TensorError::Singular);
    }
    let u = svd.u.unwrap();
    let vt = svd.v_t.unwrap();
    let j = AntilinearOperator::new(&u * &vt);
    let sig2 = CMat::from_diagonal(&svd.singular_values.map(|x| (x * x).into()));
    // Δ = s*s = Mᵀ conj(M) = conj(M* M)
    let delta = conj(&(vt.adjoint() * sig2 * &vt));
    Ok((j, delta))
}
