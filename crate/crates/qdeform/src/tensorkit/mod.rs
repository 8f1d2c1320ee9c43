//! Dense complex linear algebra on small tensor products.
//!
//! The index kernels in [`linalg`] work on bare matrices plus a list of leg
//! dimensions. [`LegOperator`] adds labels on top for callers that want
//! leg bookkeeping checked.

pub mod antilinear;
pub mod linalg;
pub mod span;

pub use antilinear::{antilinear_polar, AntilinearOperator};
pub use linalg::{c, CMat, CVec, C64, ONE, TOL_IDENTITY, TOL_SPAN, ZERO};
pub use span::{product_span, tensor_residual, OperatorSpan};

use std::collections::HashSet;
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum TensorError {
    #[error("duplicate leg label `{0}`")]
    DuplicateLabel(String),
    #[error("unknown leg label `{0}`")]
    UnknownLabel(String),
    #[error("dimension mismatch: expected {expected}, got {got}")]
    DimensionMismatch { expected: usize, got: usize },
    #[error("operator is singular")]
    Singular,
    #[error("spans live on different ambient spaces")]
    AmbientMismatch,
    #[error("invalid Hilbert space: {0}")]
    InvalidSpace(String),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HilbertSpace {
    pub label: String,
    pub basis_names: Vec<String>,
}

impl HilbertSpace {
    pub fn new(label: &str, basis_names: Vec<String>) -> Result<Self, TensorError> {
        if basis_names.is_empty() {
            return Err(TensorError::InvalidSpace(format!("`{label}` has dimension 0")));
        }
        let mut seen = HashSet::new();
        for b in &basis_names {
            if !seen.insert(b) {
                return Err(TensorError::InvalidSpace(format!(
                    "`{label}` repeats basis name `{b}`"
                )));
            }
        }
        Ok(Self {
            label: label.to_string(),
            basis_names,
        })
    }

    /// `C^n` with basis names `0..n`.
    pub fn numbered(label: &str, n: usize) -> Result<Self, TensorError> {
        Self::new(label, (0..n).map(|i| i.to_string()).collect())
    }

    pub fn dim(&self) -> usize {
        self.basis_names.len()
    }
}

/// A matrix on `spaces[0] ⊗ spaces[1] ⊗ ...`, row-major mixed radix.
#[derive(Clone, Debug, PartialEq)]
pub struct LegOperator {
    pub spaces: Vec<HilbertSpace>,
    pub entries: CMat,
}

impl LegOperator {
    pub fn new(spaces: Vec<HilbertSpace>, entries: CMat) -> Result<Self, TensorError> {
        check_distinct(&spaces)?;
        let n: usize = spaces.iter().map(|s| s.dim()).product();
        if entries.nrows() != n || entries.ncols() != n {
            return Err(TensorError::DimensionMismatch {
                expected: n,
                got: entries.nrows(),
            });
        }
        Ok(Self { spaces, entries })
    }

    pub fn identity(spaces: Vec<HilbertSpace>) -> Result<Self, TensorError> {
        let n = spaces.iter().map(|s| s.dim()).product();
        Self::new(spaces, CMat::identity(n, n))
    }

    pub fn dims(&self) -> Vec<usize> {
        self.spaces.iter().map(|s| s.dim()).collect()
    }

    pub fn labels(&self) -> Vec<&str> {
        self.spaces.iter().map(|s| s.label.as_str()).collect()
    }

    fn position(&self, label: &str) -> Result<usize, TensorError> {
        self.spaces
            .iter()
            .position(|s| s.label == label)
            .ok_or_else(|| TensorError::UnknownLabel(label.to_string()))
    }

    pub fn kron(&self, other: &LegOperator) -> Result<LegOperator, TensorError> {
        let mut spaces = self.spaces.clone();
        spaces.extend(other.spaces.iter().cloned());
        LegOperator::new(spaces, linalg::kron(&self.entries, &other.entries))
    }

    /// Extend by the identity to `ambient`, with leg `k` of `self` landing on
    /// the ambient leg labelled `target[k]`.
    pub fn place(
        &self,
        target: &[&str],
        ambient: &[HilbertSpace],
    ) -> Result<LegOperator, TensorError> {
        if target.len() != self.spaces.len() {
            return Err(TensorError::DimensionMismatch {
                expected: self.spaces.len(),
                got: target.len(),
            });
        }
        check_distinct(ambient)?;
        let mut legs = Vec::with_capacity(target.len());
        for (k, t) in target.iter().enumerate() {
            let p = ambient
                .iter()
                .position(|s| s.label == *t)
                .ok_or_else(|| TensorError::UnknownLabel(t.to_string()))?;
            if legs.contains(&p) {
                return Err(TensorError::DuplicateLabel(t.to_string()));
            }
            if ambient[p].dim() != self.spaces[k].dim() {
                return Err(TensorError::DimensionMismatch {
                    expected: self.spaces[k].dim(),
                    got: ambient[p].dim(),
                });
            }
            legs.push(p);
        }
        let dims: Vec<usize> = ambient.iter().map(|s| s.dim()).collect();
        LegOperator::new(ambient.to_vec(), linalg::place(&self.entries, &legs, &dims))
    }

    /// Contract `leg` against `ω(a) = Tr(ρᵀ a)`.
    pub fn slice(&self, leg: &str, rho: &CMat) -> Result<LegOperator, TensorError> {
        let p = self.position(leg)?;
        let d = self.spaces[p].dim();
        if rho.nrows() != d || rho.ncols() != d {
            return Err(TensorError::DimensionMismatch {
                expected: d,
                got: rho.nrows(),
            });
        }
        let entries = linalg::slice(&self.entries, p, &self.dims(), rho);
        let spaces = self
            .spaces
            .iter()
            .enumerate()
            .filter(|(k, _)| *k != p)
            .map(|(_, s)| s.clone())
            .collect::<Vec<_>>();
        if spaces.is_empty() {
            // a full contraction is a scalar on the trivial space
            let one = HilbertSpace::numbered("scalar", 1)?;
            return LegOperator::new(vec![one], entries);
        }
        LegOperator::new(spaces, entries)
    }

    /// Reorder legs to the given label order.
    pub fn permute(&self, order: &[&str]) -> Result<LegOperator, TensorError> {
        if order.len() != self.spaces.len() {
            return Err(TensorError::DimensionMismatch {
                expected: self.spaces.len(),
                got: order.len(),
            });
        }
        let mut perm = Vec::with_capacity(order.len());
        for l in order {
            let p = self.position(l)?;
            if perm.contains(&p) {
                return Err(TensorError::DuplicateLabel(l.to_string()));
            }
            perm.push(p);
        }
        let entries = linalg::permute_legs(&self.entries, &self.dims(), &perm);
        let spaces = perm.iter().map(|&p| self.spaces[p].clone()).collect();
        LegOperator::new(spaces, entries)
    }

    pub fn compose(&self, other: &LegOperator) -> Result<LegOperator, TensorError> {
        if self.labels() != other.labels() {
            return Err(TensorError::AmbientMismatch);
        }
        LegOperator::new(self.spaces.clone(), &self.entries * &other.entries)
    }

    pub fn adjoint(&self) -> LegOperator {
        LegOperator {
            spaces: self.spaces.clone(),
            entries: self.entries.adjoint(),
        }
    }
}

fn check_distinct(spaces: &[HilbertSpace]) -> Result<(), TensorError> {
    let mut seen = HashSet::new();
    for s in spaces {
        if !seen.insert(s.label.as_str()) {
            return Err(TensorError::DuplicateLabel(s.label.clone()));
        }
    }
    Ok(())
}
