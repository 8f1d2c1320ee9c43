use super::group::FiniteGroup;
use crate::tensorkit::linalg::{
    self, conj, defect, first_leg_slices, flip, kron, last_leg_slices, op_norm, CMat, CVec,
};
use crate::tensorkit::{antilinear_polar, AntilinearOperator, OperatorSpan, TensorError, C64, ONE};
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum QuantumGroupError {
    #[error("W is not unitary (defect {0:.3e})")]
    NotUnitary(f64),
    #[error("slice algebra has dimension {got}, expected {expected}")]
    WrongDimension { got: usize, expected: usize },
    #[error("cyclic vector is not separating for the slice algebra")]
    NotCyclic,
    #[error("no vector implements the dual GNS map (residual {0:.3e})")]
    NoDualVector(f64),
    #[error(transparent)]
    Tensor(#[from] TensorError),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Kind {
    /// `C(G)` acting diagonally on `ℓ²(G)`.
    FunctionAlgebra,
    /// `C*(Γ)` generated by left translations.
    GroupAlgebra,
}

impl Kind {
    fn flipped(&self) -> Kind {
        match self {
            Kind::FunctionAlgebra => Kind::GroupAlgebra,
            Kind::GroupAlgebra => Kind::FunctionAlgebra,
        }
    }
}

/// A finite quantum group in its GNS picture on `H = ℓ²(G)`.
#[derive(Clone, Debug)]
pub struct FiniteQuantumGroup {
    pub kind: Kind,
    pub group: FiniteGroup,
    pub n: usize,
    pub w: CMat,
    pub what: CMat,
    pub v: CMat,
    /// Cyclic vector of the Haar weight: `Λ(x) = x ξ₀`.
    pub xi0: CVec,
    /// Cyclic vector of the dual Haar weight.
    pub xihat0: CVec,
    pub j: AntilinearOperator,
    pub jhat: AntilinearOperator,
    pub m: OperatorSpan,
    pub mhat: OperatorSpan,
}

/// Modular involution of the GNS construction `x ↦ x ξ` on the algebra
/// spanned by `basis`.
pub fn gns_modular(basis: &[CMat], xi: &CVec) -> Result<AntilinearOperator, QuantumGroupError> {
    let n = xi.len();
    if basis.len() != n {
        return Err(QuantumGroupError::WrongDimension {
            got: basis.len(),
            expected: n,
        });
    }
    let mut b = CMat::zeros(n, n);
    let mut y = CMat::zeros(n, n);
    for (k, x) in basis.iter().enumerate() {
        b.set_column(k, &(x * xi));
        y.set_column(k, &(x.adjoint() * xi));
    }
    let binv = conj(&b).try_inverse().ok_or(QuantumGroupError::NotCyclic)?;
    let s = AntilinearOperator::new(y * binv);
    let (j, _) = antilinear_polar(&s)?;
    Ok(j)
}

/// Vector `ξ̂₀` with `(ω⊗ι)(W) ξ̂₀ = ξ(ω)`, where `⟨ξ(ω), x ξ₀⟩ = ω(x*)`.
fn dual_vector(w: &CMat, m_basis: &[CMat], xi0: &CVec) -> Result<CVec, QuantumGroupError> {
    let n = xi0.len();
    let mut b = CMat::zeros(n, n);
    for (k, x) in m_basis.iter().enumerate() {
        b.set_column(k, &(x * xi0));
    }
    let bt_inv = b
        .transpose()
        .try_inverse()
        .ok_or(QuantumGroupError::NotCyclic)?;
    let lambdas = first_leg_slices(w, n);
    let mut lhs = CMat::zeros(n * n * n, n);
    let mut rhs = CVec::zeros(n * n * n);
    for i in 0..n {
        for jj in 0..n {
            let r = CVec::from_iterator(n, m_basis.iter().map(|x| x[(jj, i)]));
            let xi = (&bt_inv * r).map(|z| z.conj());
            let k = i * n + jj;
            lhs.view_mut((k * n, 0), (n, n)).copy_from(&lambdas[k]);
            rhs.rows_mut(k * n, n).copy_from(&xi);
        }
    }
    let svd = lhs.clone().svd(true, true);
    let sol = svd
        .solve(&rhs, 1e-12)
        .map_err(|_| QuantumGroupError::NoDualVector(f64::INFINITY))?;
    let res = (&lhs * &sol - &rhs).norm();
    if res > 1e-9 * rhs.norm().max(1.0) {
        return Err(QuantumGroupError::NoDualVector(res));
    }
    Ok(sol)
}

fn basis_of(gens: &[CMat], n: usize) -> OperatorSpan {
    OperatorSpan::from_generators(n, gens.iter())
}

/// `‖U₁₂U₁₃U₂₃ − U₂₃U₁₂‖`.
pub fn pentagon_defect(u: &CMat, n: usize) -> f64 {
    let dims = [n, n, n];
    let u12 = linalg::place(u, &[0, 1], &dims);
    let u23 = linalg::place(u, &[1, 2], &dims);
    let lhs = linalg::apply_left(u, &[0, 2], &dims, &u23);
    let lhs = linalg::mul(&u12, &lhs);
    defect(&lhs, &linalg::mul(&u23, &u12))
}

impl FiniteQuantumGroup {
    /// Build everything from a multiplicative unitary and the cyclic vector
    /// of its Haar weight.
    pub fn from_unitary(
        kind: Kind,
        group: FiniteGroup,
        w: CMat,
        xi0: CVec,
    ) -> Result<Self, QuantumGroupError> {
        let n = xi0.len();
        let ud = linalg::unitarity_defect(&w);
        if ud > 1e-9 {
            return Err(QuantumGroupError::NotUnitary(ud));
        }
        let m = basis_of(&last_leg_slices(&w, n), n);
        let mhat = basis_of(&first_leg_slices(&w, n), n);
        for s in [&m, &mhat] {
            if s.dim() != n {
                return Err(QuantumGroupError::WrongDimension {
                    got: s.dim(),
                    expected: n,
                });
            }
        }
        let sigma = flip(n, n);
        let what = &sigma * w.adjoint() * &sigma;
        let m_basis = m.basis();
        let j = gns_modular(&m_basis, &xi0)?;
        let xihat0 = dual_vector(&w, &m_basis, &xi0)?;
        let jhat = gns_modular(&mhat.basis(), &xihat0)?;
        let jj = jhat.tensor(&jhat);
        let v = jj.conjugate(&what);
        Ok(Self {
            kind,
            group,
            n,
            w,
            what,
            v,
            xi0,
            xihat0,
            j,
            jhat,
            m,
            mhat,
        })
    }

    /// `C(G)` with counting-measure Haar weight.
    pub fn function_algebra(g: &FiniteGroup) -> Self {
        let n = g.order();
        let mut w = CMat::zeros(n * n, n * n);
        for a in 0..n {
            for b in 0..n {
                w[(a * n + g.mul(a, b), a * n + b)] = ONE;
            }
        }
        let xi0 = CVec::from_element(n, ONE);
        Self::from_unitary(Kind::FunctionAlgebra, g.clone(), w, xi0)
            .expect("function algebra data is consistent")
    }

    /// `C*(Γ)` with the trace `τ(λ_s) = δ_{s,e}`.
    pub fn group_algebra(g: &FiniteGroup) -> Self {
        let n = g.order();
        let mut w = CMat::zeros(n * n, n * n);
        for a in 0..n {
            for b in 0..n {
                w[(g.mul(g.inv(b), a) * n + b, a * n + b)] = ONE;
            }
        }
        let mut xi0 = CVec::zeros(n);
        xi0[g.identity()] = ONE;
        Self::from_unitary(Kind::GroupAlgebra, g.clone(), w, xi0)
            .expect("group algebra data is consistent")
    }

    pub fn dual(&self) -> Self {
        Self::from_unitary(
            self.kind.flipped(),
            self.group.clone(),
            self.what.clone(),
            self.xihat0.clone(),
        )
        .expect("dual of a valid quantum group")
    }

    /// `Λ(x) = x ξ₀`.
    pub fn lambda(&self, x: &CMat) -> CVec {
        x * &self.xi0
    }

    /// `Λ̂(y) = y ξ̂₀`.
    pub fn lambda_hat(&self, y: &CMat) -> CVec {
        y * &self.xihat0
    }

    /// Haar weight `φ(x) = ⟨x ξ₀, ξ₀⟩`.
    pub fn haar(&self, x: &CMat) -> C64 {
        self.xi0.dotc(&(x * &self.xi0))
    }

    pub fn one(&self) -> CMat {
        CMat::identity(self.n, self.n)
    }

    pub fn sigma(&self) -> CMat {
        flip(self.n, self.n)
    }

    /// `Δ(x) = W*(1⊗x)W`.
    pub fn delta(&self, x: &CMat) -> CMat {
        self.w.adjoint() * kron(&self.one(), x) * &self.w
    }

    /// `V(x⊗1)V*`.
    pub fn delta_via_v(&self, x: &CMat) -> CMat {
        &self.v * kron(x, &self.one()) * self.v.adjoint()
    }

    /// `Δ̂(y) = Ŵ*(1⊗y)Ŵ`.
    pub fn delta_hat(&self, y: &CMat) -> CMat {
        self.what.adjoint() * kron(&self.one(), y) * &self.what
    }

    /// `Ŵ^op = (J⊗J)Ŵ(J⊗J)`, the multiplicative unitary of `Ĝ^op`.
    pub fn what_op(&self) -> CMat {
        self.j.tensor(&self.j).conjugate(&self.what)
    }

    /// `Δ̂^op(y) = Σ Δ̂(y) Σ`.
    pub fn delta_hat_op(&self, y: &CMat) -> CMat {
        let s = self.sigma();
        &s * self.delta_hat(y) * &s
    }

    /// `Ĵ x Ĵ`.
    pub fn jhat_conj(&self, x: &CMat) -> CMat {
        self.jhat.conjugate(x)
    }

    /// The linear unitary `JĴ`.
    pub fn j_jhat(&self) -> CMat {
        self.j.compose(&self.jhat)
    }

    /// The linear unitary `ĴJ`.
    pub fn jhat_j(&self) -> CMat {
        self.jhat.compose(&self.j)
    }

    /// Points of `Ĝ` used to identify functions on the group with elements
    /// of `M̂`: `e_ss` for a group algebra, `λ_s` for a function algebra.
    pub fn mhat_point(&self, s: usize) -> CMat {
        let g = &self.group;
        let n = self.n;
        match self.kind {
            Kind::GroupAlgebra => linalg::unit(n, s, s),
            Kind::FunctionAlgebra => {
                let mut l = CMat::zeros(n, n);
                for t in 0..n {
                    l[(g.mul(s, t), t)] = ONE;
                }
                l
            }
        }
    }

    /// Points of `G` on the `M` side: left translations for a group algebra,
    /// diagonal projections for a function algebra.
    pub fn m_point(&self, s: usize) -> CMat {
        let g = &self.group;
        let n = self.n;
        match self.kind {
            Kind::FunctionAlgebra => linalg::unit(n, s, s),
            Kind::GroupAlgebra => {
                let mut l = CMat::zeros(n, n);
                for t in 0..n {
                    l[(g.mul(s, t), t)] = ONE;
                }
                l
            }
        }
    }

    pub fn invariants(&self) -> QuantumGroupReport {
        let n = self.n;
        let m_basis = self.m.basis();
        let coproduct_agreement = m_basis
            .iter()
            .map(|x| defect(&self.delta(x), &self.delta_via_v(x)))
            .fold(0.0, f64::max);
        let mm = tensor_span(&self.m, &self.m);
        let coproduct_range = m_basis
            .iter()
            .map(|x| mm.residual(&self.delta(x)))
            .fold(0.0, f64::max);
        let jhat_j = self.jhat.tensor(&self.j);
        let antipode = defect(&jhat_j.conjugate(&self.w.adjoint()), &self.w);
        let dual_span = basis_of(&first_leg_slices(&self.w, n), n)
            .distance(&self.mhat)
            .unwrap_or(1.0);
        QuantumGroupReport {
            unitarity_w: linalg::unitarity_defect(&self.w),
            unitarity_what: linalg::unitarity_defect(&self.what),
            unitarity_v: linalg::unitarity_defect(&self.v),
            pentagon_w: pentagon_defect(&self.w, n),
            pentagon_what: pentagon_defect(&self.what, n),
            pentagon_v: pentagon_defect(&self.v, n),
            coproduct_agreement,
            coproduct_range,
            antipode,
            dual_span,
            j_involution: self.j.involution_defect(),
            jhat_involution: self.jhat.involution_defect(),
        }
    }

    /// Projection distance between `M` spans and between `M̂` spans.
    pub fn span_distance(&self, other: &FiniteQuantumGroup) -> f64 {
        let a = self.m.distance(&other.m).unwrap_or(1.0);
        let b = self.mhat.distance(&other.mhat).unwrap_or(1.0);
        a.max(b)
    }

    /// `Ŵ^op ∈ M̂ ⊗ M'` residual, with `M' = JMJ`.
    pub fn what_op_residual(&self) -> f64 {
        let jmj = OperatorSpan::from_owned(
            self.n,
            self.m.basis().iter().map(|x| self.j.conjugate(x)).collect(),
        );
        tensor_span(&self.mhat, &jmj).residual(&self.what_op())
    }

    /// Largest `‖J x J − conj(x)‖` over a basis of `M`.
    pub fn j_is_conjugation_on_m(&self) -> f64 {
        self.m
            .basis()
            .iter()
            .map(|x| op_norm(&(self.j.conjugate(x) - conj(x))))
            .fold(0.0, f64::max)
    }
}

/// `span{a ⊗ b}`.
pub fn tensor_span(a: &OperatorSpan, b: &OperatorSpan) -> OperatorSpan {
    let mut out = OperatorSpan::empty(a.side() * b.side());
    let bb = b.basis();
    for x in a.basis() {
        for y in &bb {
            out.push(&kron(&x, y));
        }
    }
    out
}

#[derive(Clone, Debug, PartialEq)]
pub struct QuantumGroupReport {
    pub unitarity_w: f64,
    pub unitarity_what: f64,
    pub unitarity_v: f64,
    pub pentagon_w: f64,
    pub pentagon_what: f64,
    pub pentagon_v: f64,
    pub coproduct_agreement: f64,
    pub coproduct_range: f64,
    pub antipode: f64,
    pub dual_span: f64,
    pub j_involution: f64,
    pub jhat_involution: f64,
}

impl QuantumGroupReport {
    pub fn worst(&self) -> f64 {
        [
            self.unitarity_w,
            self.unitarity_what,
            self.unitarity_v,
            self.pentagon_w,
            self.pentagon_what,
            self.pentagon_v,
            self.coproduct_agreement,
            self.coproduct_range,
            self.antipode,
            self.dual_span,
            self.j_involution,
            self.jhat_involution,
        ]
        .into_iter()
        .fold(0.0, f64::max)
    }
}
