use super::{lift_left, DeformError};
use crate::checks::Check;
use crate::cocycles::DualCocycle;
use crate::fqg::{tensor_span, FiniteQuantumGroup};
use crate::tensorkit::linalg::{self, defect, kron, place, CMat};
use crate::tensorkit::{product_span, tensor_residual, OperatorSpan};
use crate::twisted::TwistedGroupAlgebra;

/// A unital *-algebra `A ⊂ B(H_A)` with a left coaction of `G` implemented
/// as `α(a) = U(1⊗a)U*`.
#[derive(Clone, Debug)]
pub struct GSystem {
    pub q: FiniteQuantumGroup,
    pub name: String,
    /// Dimension of `H_A`.
    pub dim: usize,
    pub a: OperatorSpan,
    /// Unitary on `H ⊗ H_A`.
    pub u: CMat,
}

/// Smallest *-algebra containing the generators and the unit.
pub fn star_closure(side: usize, gens: &[CMat]) -> OperatorSpan {
    let mut s = OperatorSpan::empty(side);
    s.push(&CMat::identity(side, side));
    for g in gens {
        s.push(g);
        s.push(&g.adjoint());
    }
    loop {
        let b = s.basis();
        let before = s.dim();
        for x in &b {
            for y in &b {
                s.push(&linalg::mul(x, y));
            }
        }
        if s.dim() == before {
            return s;
        }
    }
}

impl GSystem {
    pub fn new(
        q: &FiniteQuantumGroup,
        name: &str,
        dim: usize,
        gens: &[CMat],
        u: CMat,
    ) -> Result<Self, DeformError> {
        if u.nrows() != q.n * dim {
            return Err(DeformError::Shape(format!(
                "implementing unitary has side {}, expected {}",
                u.nrows(),
                q.n * dim
            )));
        }
        let s = Self {
            q: q.clone(),
            name: name.to_string(),
            dim,
            a: star_closure(dim, gens),
            u,
        };
        if let Some(c) = s.report().into_iter().find(|c| !c.passes(&Default::default())) {
            return Err(DeformError::InvalidSystem {
                name: name.to_string(),
                check: c.name,
                defect: c.defect,
            });
        }
        Ok(s)
    }

    /// `A = M` with `α = Δ`.
    pub fn translation(q: &FiniteQuantumGroup) -> Self {
        Self::new(q, "translation", q.n, &q.m.basis(), q.w.adjoint()).expect("translation system")
    }

    /// `A = C` with the unit coaction.
    pub fn trivial(q: &FiniteQuantumGroup) -> Self {
        let one = CMat::identity(1, 1);
        Self::new(q, "trivial", 1, &[one], CMat::identity(q.n, q.n)).expect("trivial system")
    }

    /// `A = B(H)` with the coaction `a ↦ W*(1⊗a)W`.
    pub fn matrix(q: &FiniteQuantumGroup) -> Self {
        let n = q.n;
        let gens: Vec<CMat> = (0..n)
            .flat_map(|i| (0..n).map(move |j| linalg::unit(n, i, j)))
            .collect();
        Self::new(q, "matrix", n, &gens, q.w.adjoint()).expect("matrix system")
    }

    /// The crossed product `Ĝ^op ⋉ B` with its dual action of `G`.
    pub fn dual_crossed(op: &OpSystem) -> Self {
        let q = &op.q;
        let n = q.n;
        let jj = q.j_jhat();
        let gens: Vec<CMat> = q
            .m
            .basis()
            .iter()
            .map(|x| q.j.conjugate(x))
            .flat_map(|jxj| {
                op.b.basis()
                    .into_iter()
                    .map(move |b| linalg::mul(&kron(&jxj, &CMat::identity(op.dim, op.dim)), &op.gamma(&b)))
            })
            .collect();
        let core = place(&jj, &[1], &[n, n]) * q.w.adjoint() * place(&q.jhat_j(), &[1], &[n, n]);
        let u = kron(&core, &CMat::identity(op.dim, op.dim));
        let name = format!("dual-crossed-{}", op.name);
        Self::new(q, &name, n * op.dim, &gens, u).expect("dual crossed product system")
    }

    /// Preset by name: `translation`, `trivial`, `matrix`, `dual-crossed-scalars`,
    /// `dual-crossed-dual`.
    pub fn preset(q: &FiniteQuantumGroup, name: &str) -> Result<Self, DeformError> {
        match name {
            "translation" => Ok(Self::translation(q)),
            "trivial" => Ok(Self::trivial(q)),
            "matrix" => Ok(Self::matrix(q)),
            "dual-crossed-scalars" => Ok(Self::dual_crossed(&OpSystem::scalars(q))),
            "dual-crossed-dual" => Ok(Self::dual_crossed(&OpSystem::dual(q))),
            other => Err(DeformError::UnknownPreset(other.to_string())),
        }
    }

    pub fn n(&self) -> usize {
        self.q.n
    }

    pub fn alpha(&self, a: &CMat) -> CMat {
        let one = CMat::identity(self.n(), self.n());
        linalg::sandwich(&self.u, &kron(&one, a))
    }

    pub fn alpha_basis(&self) -> Vec<CMat> {
        self.a.basis().iter().map(|a| self.alpha(a)).collect()
    }

    pub fn alpha_span(&self) -> OperatorSpan {
        OperatorSpan::from_owned(self.n() * self.dim, self.alpha_basis())
    }

    /// `(ι⊗α)(x)` for `x` on `K ⊗ H_A`; output legs `(K, G, A)`.
    pub fn alpha_right(&self, x: &CMat) -> CMat {
        let k = x.nrows() / self.dim;
        let dims = [k, self.n(), self.dim];
        linalg::conjugate(&self.u, &[1, 2], &dims, &place(x, &[0, 2], &dims))
    }

    /// Coaction law, range, cancellation and injectivity.
    pub fn report(&self) -> Vec<Check> {
        let q = &self.q;
        let n = self.n();
        let basis = self.a.basis();
        let images: Vec<CMat> = basis.iter().map(|a| self.alpha(a)).collect();
        let mut hom: f64 = 0.0;
        for (x, ax) in basis.iter().zip(&images) {
            hom = hom.max(defect(&self.alpha(&x.adjoint()), &ax.adjoint()));
        }
        let coaction = images
            .iter()
            .map(|ax| {
                let l = self.alpha_right(ax);
                let r = lift_left(&q.w, ax, n, self.dim);
                defect(&l, &r)
            })
            .fold(0.0, f64::max);
        let range = images
            .iter()
            .map(|ax| tensor_residual(&q.m, &self.a, ax))
            .fold(0.0, f64::max);
        let img = OperatorSpan::from_generators(n * self.dim, images.iter());
        let m1 = OperatorSpan::from_owned(
            n * self.dim,
            q.m.basis()
                .iter()
                .map(|x| kron(x, &CMat::identity(self.dim, self.dim)))
                .collect(),
        );
        let prod = product_span(&m1, &img);
        let cancel = prod
            .basis()
            .iter()
            .map(|x| tensor_residual(&q.m, &self.a, x))
            .fold(0.0, f64::max);
        vec![
            Check::span("A is a *-algebra", "g-algebra", self.a.algebra_defect()),
            Check::identity("alpha is *-preserving", "g-action", hom),
            Check::identity("coaction law", "g-action", coaction),
            Check::span("alpha(A) in M (x) A", "g-action", range),
            Check::span("cancellation: products lie in M (x) A", "g-action-cancellation", cancel),
            Check::exact(
                "cancellation: products fill M (x) A",
                "g-action-cancellation",
                prod.dim(),
                q.m.dim() * self.a.dim(),
            ),
            Check::exact("alpha injective", "g-action", img.dim(), self.a.dim()),
        ]
    }
}

/// A `Ĝ^op`-algebra `B` with coaction `γ(b) = U(1⊗b)U*`, the input of a
/// dual crossed product.
#[derive(Clone, Debug)]
pub struct OpSystem {
    pub q: FiniteQuantumGroup,
    pub name: String,
    pub dim: usize,
    pub b: OperatorSpan,
    pub u: CMat,
}

impl OpSystem {
    pub fn scalars(q: &FiniteQuantumGroup) -> Self {
        Self {
            q: q.clone(),
            name: "scalars".into(),
            dim: 1,
            b: OperatorSpan::full(1),
            u: CMat::identity(q.n, q.n),
        }
    }

    /// `B = M̂` with `γ = Δ̂^op`, implemented by `(Ŵ^op)*`.
    pub fn dual(q: &FiniteQuantumGroup) -> Self {
        Self {
            q: q.clone(),
            name: "dual".into(),
            dim: q.n,
            b: q.mhat.clone(),
            u: q.what_op().adjoint(),
        }
    }

    pub fn gamma(&self, b: &CMat) -> CMat {
        let one = CMat::identity(self.q.n, self.q.n);
        linalg::sandwich(&self.u, &kron(&one, b))
    }

    /// Coaction law for `Δ̂^op` and range in `M̂ ⊗ B`.
    pub fn report(&self) -> Vec<Check> {
        let q = &self.q;
        let n = q.n;
        let wop = q.what_op();
        let mb = tensor_span(&q.mhat, &self.b);
        let mut law: f64 = 0.0;
        let mut range: f64 = 0.0;
        for b in self.b.basis() {
            let g = self.gamma(&b);
            let dims = [n, n, self.dim];
            let l = linalg::conjugate(&self.u, &[1, 2], &dims, &place(&g, &[0, 2], &dims));
            let r = lift_left(&wop, &g, n, self.dim);
            law = law.max(defect(&l, &r));
            range = range.max(mb.residual(&g));
        }
        vec![
            Check::identity("op coaction law", "dual-crossed-product", law),
            Check::span("gamma(B) in M^ (x) B", "dual-crossed-product", range),
        ]
    }
}

/// `G ⋉ A = [(M̂⊗1) α(A)]` with its dual action.
#[derive(Clone, Debug)]
pub struct CrossedProduct {
    pub span: OperatorSpan,
}

impl CrossedProduct {
    pub fn build(s: &GSystem) -> Self {
        let q = &s.q;
        let one = CMat::identity(s.dim, s.dim);
        let m1 = OperatorSpan::from_owned(
            s.n() * s.dim,
            q.mhat.basis().iter().map(|y| kron(y, &one)).collect(),
        );
        Self {
            span: product_span(&m1, &s.alpha_span()),
        }
    }

    /// `α̂(x) = (Ŵ^op⊗1)*(1⊗x)(Ŵ^op⊗1)` on legs `(Ĝ, G, A)`.
    pub fn dual_action(s: &GSystem, x: &CMat) -> CMat {
        let n = s.n();
        let dims = [n, n, s.dim];
        let x23 = place(x, &[1, 2], &dims);
        linalg::conjugate(&s.q.what_op().adjoint(), &[0, 1], &dims, &x23)
    }

    /// Dual action identities and Takesaki–Takai duality.
    pub fn report(&self, s: &GSystem) -> Vec<Check> {
        let q = &s.q;
        let n = s.n();
        let d = s.dim;
        let one_a = CMat::identity(d, d);
        let one = q.one();
        let dims = [n, n, d];
        let alpha = s.alpha_basis();
        let fixes_alpha = alpha
            .iter()
            .map(|ax| defect(&Self::dual_action(s, ax), &kron(&one, ax)))
            .fold(0.0, f64::max);
        let mhat = q.mhat.basis();
        let on_dual = mhat
            .iter()
            .map(|y| {
                defect(
                    &Self::dual_action(s, &kron(y, &one_a)),
                    &kron(&q.delta_hat_op(y), &one_a),
                )
            })
            .fold(0.0, f64::max);
        let range = self
            .span
            .basis()
            .iter()
            .map(|x| tensor_residual(&q.mhat, &self.span, &Self::dual_action(s, x)))
            .fold(0.0, f64::max);
        // double crossed product, moved by Ad(W*⊗1)
        let side = n * n * d;
        let wstar = q.w.adjoint();
        let jmj: Vec<CMat> = q.m.basis().iter().map(|x| q.j.conjugate(x)).collect();
        let dop: Vec<CMat> = mhat.iter().map(|y| q.delta_hat_op(y)).collect();
        let mut moved = OperatorSpan::empty(side);
        let mut double = OperatorSpan::empty(side);
        for x in &jmj {
            let x1 = place(x, &[0], &dims);
            for y in &dop {
                let xy = linalg::mul(&x1, &place(y, &[0, 1], &dims));
                let gs: Vec<CMat> = alpha.iter().map(|a| linalg::mul(&xy, &place(a, &[1, 2], &dims))).collect();
                let ms: Vec<CMat> = gs.iter().map(|g| linalg::conjugate(&wstar, &[0, 1], &dims, g)).collect();
                double.extend(&gs);
                moved.extend(&ms);
            }
        }
        let mut tt = OperatorSpan::empty(side);
        let k = product_span(
            &OperatorSpan::from_owned(n, jmj.clone()),
            &q.mhat,
        );
        let aa: Vec<CMat> = alpha.iter().map(|a| s.alpha_right(a)).collect();
        for x in k.basis() {
            let x1 = place(&x, &[0], &dims);
            let row: Vec<CMat> = aa.iter().map(|y| linalg::mul(&x1, y)).collect();
            tt.extend(&row);
        }
        vec![
            Check::identity("dual action fixes alpha(A)", "dual-action", fixes_alpha),
            Check::identity("dual action on M^ is the opposite coproduct", "dual-action", on_dual),
            Check::span("dual action lands in M^ (x) crossed product", "dual-action", range),
            Check::exact("regularity of G: dim [J M J M^]", "takesaki-takai", k.dim(), n * n),
            Check::span("Takesaki-Takai span", "takesaki-takai", moved.distance(&tt).unwrap_or(1.0)),
            Check::exact(
                "double crossed product dimension",
                "takesaki-takai",
                double.dim(),
                n * n * s.a.dim(),
            ),
        ]
    }
}

/// `Ĝ^op ⋉_{γ,Ω} B = [(JĴ C*_r(Ĝ;Ω) ĴJ ⊗ 1) γ(B)]`.
#[derive(Clone, Debug)]
pub struct TwistedCrossedProduct {
    pub span: OperatorSpan,
    pub reversed: OperatorSpan,
}

impl TwistedCrossedProduct {
    pub fn build(op: &OpSystem, t: &TwistedGroupAlgebra) -> Self {
        let q = &op.q;
        let one = CMat::identity(op.dim, op.dim);
        let jj = q.j_jhat();
        let hj = q.jhat_j();
        let left: Vec<CMat> = t
            .span
            .basis()
            .iter()
            .map(|y| kron(&(&jj * y * &hj), &one))
            .collect();
        let gb: Vec<CMat> = op.b.basis().iter().map(|b| op.gamma(b)).collect();
        let side = q.n * op.dim;
        let mut span = OperatorSpan::empty(side);
        let mut reversed = OperatorSpan::empty(side);
        for x in &left {
            for g in &gb {
                span.push(&linalg::mul(x, g));
                reversed.push(&linalg::mul(g, x));
            }
        }
        Self { span, reversed }
    }

    /// `W_Ω = Σ Ŵ_Ω* Σ`.
    pub fn w_omega(c: &DualCocycle, what_omega: &CMat) -> CMat {
        let s = c.q.sigma();
        &s * what_omega.adjoint() * &s
    }

    /// The `G_Ω` action `Ad((1⊗JĴ⊗1)(W_Ω*⊗1)(1⊗ĴJ⊗1))(1⊗x)`.
    pub fn action(op: &OpSystem, w_omega: &CMat, x: &CMat) -> CMat {
        let q = &op.q;
        let n = q.n;
        let dims = [n, n, op.dim];
        let core = place(&q.j_jhat(), &[1], &[n, n])
            * w_omega.adjoint()
            * place(&q.jhat_j(), &[1], &[n, n]);
        linalg::conjugate(&core, &[0, 1], &dims, &place(x, &[1, 2], &dims))
    }

    pub fn report(&self, op: &OpSystem, t: &TwistedGroupAlgebra) -> Vec<Check> {
        let q = &op.q;
        let n = q.n;
        let wo = Self::w_omega(&t.c, &t.dual.what_omega);
        let m_omega = OperatorSpan::from_owned(n, linalg::last_leg_slices(&wo, n));
        let mut range: f64 = 0.0;
        let mut law: f64 = 0.0;
        for x in self.span.basis() {
            let ax = Self::action(op, &wo, &x);
            range = range.max(tensor_residual(&m_omega, &self.span, &ax));
            // (ι⊗α̂)α̂ = (Δ_Ω⊗ι)α̂
            let d = n * op.dim;
            let dims = [n, n, d];
            let l = {
                let inner: CMat = place(&ax, &[0, 2], &dims);
                // α̂ acts on the last two legs of (G, G, K⊗B)
                let core = place(&q.j_jhat(), &[1], &[n, n])
                    * wo.adjoint()
                    * place(&q.jhat_j(), &[1], &[n, n]);
                let dims4 = [n, n, n, op.dim];
                linalg::conjugate(&core, &[1, 2], &dims4, &inner)
            };
            let r = lift_left(&wo, &ax, n, d);
            law = law.max(defect(&l, &r));
        }
        vec![
            Check::span("twisted crossed product is a *-algebra", "twisted-crossed-product", self.span.algebra_defect()),
            Check::span(
                "both product orders span the same space",
                "twisted-crossed-product",
                self.span.distance(&self.reversed).unwrap_or(1.0),
            ),
            Check::exact(
                "dimension",
                "twisted-crossed-product",
                self.span.dim(),
                t.span.dim() * op.b.dim(),
            ),
            Check::span("G_Omega action lands in C(G_Omega) (x) span", "twisted-crossed-product", range),
            Check::identity("G_Omega coaction law", "twisted-crossed-product", law),
        ]
    }
}
