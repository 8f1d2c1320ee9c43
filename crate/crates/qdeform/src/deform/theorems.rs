use super::{deform, flip_conjugate, CrossedProduct, DeformError, DeformedAlgebra, GSystem};
use super::{OpSystem, TwistedCrossedProduct};
use crate::checks::Check;
use crate::cocycles::{product_cocycle, DualCocycle};
use crate::tensorkit::linalg::{self, defect, first_leg_slices, kron, place, CMat, CVec};
use crate::tensorkit::{product_span, OperatorSpan, TOL_SPAN};

/// Accumulates elements of `B(H) ⊗ B(H_rest)` through their first-leg
/// blocks written in coordinates of a span, so that membership in
/// `K ⊗ span` and the dimension of the accumulated space are cheap.
pub struct BlockRank<'a> {
    span: &'a OperatorSpan,
    n: usize,
    columns: Vec<CVec>,
    pub residual: f64,
}

impl<'a> BlockRank<'a> {
    pub fn new(span: &'a OperatorSpan, n: usize) -> Self {
        Self {
            span,
            n,
            columns: Vec::new(),
            residual: 0.0,
        }
    }

    pub fn push(&mut self, x: &CMat) {
        let k = self.span.dim();
        let mut v = CVec::zeros(self.n * self.n * k);
        for (b, blk) in first_leg_slices(x, self.n).iter().enumerate() {
            self.residual = self.residual.max(self.span.residual(blk));
            v.rows_mut(b * k, k).copy_from(&self.span.coords(blk));
        }
        self.columns.push(v);
    }

    pub fn rank(&self) -> usize {
        if self.columns.is_empty() {
            return 0;
        }
        linalg::rank(&CMat::from_columns(&self.columns), 1e-9)
    }

    /// `n² · dim(span)`, the dimension of `K ⊗ span`.
    pub fn full(&self) -> usize {
        self.n * self.n * self.span.dim()
    }
}

/// The isomorphism of the twisted double crossed product with `K ⊗ A_Ω`,
/// checked through its action on the three kinds of generators and on the
/// whole algebra.
pub fn verify_ttwisted(d: &DeformedAlgebra) -> Vec<Check> {
    let q = d.q();
    let s = &d.system;
    let n = d.n();
    let dims = [n, n, s.dim];
    let one = q.one();
    let jxj = q.jhat_conj(&d.t.dual.x);
    let u = kron(&jxj.adjoint(), &one) * place(&d.t.wo, &[1, 0], &[n, n]) * kron(&jxj, &one);
    let jj = q.j_jhat();
    let hj = q.jhat_j();
    let twisted: Vec<CMat> = d.t.span.basis().iter().map(|y| &jj * y * &hj).collect();
    let a = twisted
        .iter()
        .map(|x| {
            let x1 = kron(x, &one);
            defect(&linalg::sandwich(&u, &x1), &x1)
        })
        .fold(0.0, f64::max);
    let b = q
        .mhat
        .basis()
        .iter()
        .map(|y| defect(&linalg::sandwich(&u, &q.delta_hat_op(y)), &kron(y, &one)))
        .fold(0.0, f64::max);
    let c = s
        .alpha_basis()
        .iter()
        .zip(&d.eta)
        .map(|(ax, e)| {
            let l = linalg::conjugate(&u, &[0, 1], &dims, &place(ax, &[1, 2], &dims));
            let r = linalg::conjugate(&jxj.adjoint(), &[0], &dims, e);
            defect(&l, &r)
        })
        .fold(0.0, f64::max);
    let cp = CrossedProduct::build(s);
    let mut blocks = BlockRank::new(&d.span, n);
    for x in &twisted {
        let x1 = place(x, &[0], &dims);
        for z in cp.span.basis() {
            let g = linalg::mul(&x1, &CrossedProduct::dual_action(s, &z));
            blocks.push(&linalg::conjugate(&u, &[0, 1], &dims, &g));
        }
    }
    vec![
        Check::identity("(a) fixes the twisted algebra leg", "twisted-double-crossed", a),
        Check::identity("(b) opposite coproduct goes to the first leg", "twisted-double-crossed", b),
        Check::identity("(c) alpha(A) goes to eta_Omega(alpha(A))", "twisted-double-crossed", c),
        Check::span("(d) image lies in K (x) A_Omega", "twisted-double-crossed", blocks.residual),
        Check::exact(
            "(d) image fills K (x) A_Omega",
            "twisted-double-crossed",
            blocks.rank(),
            blocks.full(),
        ),
    ]
}

/// Deformation of a dual crossed product against the twisted crossed
/// product.
pub fn verify_dual_action_case(
    op: &OpSystem,
    c: &DualCocycle,
) -> Result<(DeformedAlgebra, Vec<Check>), DeformError> {
    let q = &op.q;
    let n = q.n;
    let s = GSystem::dual_crossed(op);
    let d = deform(&s, c)?;
    let tcp = TwistedCrossedProduct::build(op, &d.t);
    let dims = [n, n, op.dim];
    let z = place(&q.j_jhat(), &[1], &[n, n])
        * place(&d.t.z.adjoint(), &[1, 0], &[n, n])
        * place(&q.jhat_j(), &[1], &[n, n]);
    let moved = OperatorSpan::from_owned(
        d.span.side(),
        d.span
            .basis()
            .iter()
            .map(|x| linalg::conjugate(&z, &[0, 1], &dims, x))
            .collect(),
    );
    let target = OperatorSpan::from_owned(
        d.span.side(),
        tcp.span.basis().iter().map(|x| kron(&q.one(), x)).collect(),
    );
    let commutes = op
        .b
        .basis()
        .iter()
        .map(|b| {
            let g = place(&op.gamma(b), &[1, 2], &dims);
            let zg = linalg::apply_left(&z, &[0, 1], &dims, &g);
            let gz = linalg::apply_right(&g, &z, &[0, 1], &dims);
            linalg::op_norm(&(zg - gz))
        })
        .fold(0.0, f64::max);
    let mut checks = vec![
        Check::identity("unitary commutes with 1 (x) gamma(B)", "dual-action-deformation", commutes),
        Check::span(
            "deformation maps onto 1 (x) twisted crossed product",
            "dual-action-deformation",
            moved.distance(&target).unwrap_or(1.0),
        ),
    ];
    checks.extend(tcp.report(op, &d.t));
    Ok((d, checks))
}

/// Deformation in stages for `Ω₁` a cocycle on the deformed dual.
pub fn verify_stages(
    s: &GSystem,
    c: &DualCocycle,
    c1: &DualCocycle,
) -> Result<Vec<Check>, DeformError> {
    let n = s.n();
    let d = deform(s, c)?;
    let prod = product_cocycle(c1, c);
    let dp = deform(s, &prod)?;
    let wo = &d.t.wo;
    let wp = &dp.t.dual.what_omega;
    let o1 = &c1.omega;
    let dim = s.dim;
    // (A_Ω)_{Ω₁}: deform A_Ω under α_Ω with Ŵ_{Ω₁Ω}Ω₁
    let p = wp * o1;
    let side = n * n * dim;
    let mut staged = OperatorSpan::empty(side);
    let etas: Vec<CMat> = d
        .span
        .basis()
        .iter()
        .map(|x| flip_conjugate(&p, &d.alpha_omega(x), n, n * dim))
        .collect();
    for nu in 0..n * n {
        for e in &etas {
            staged.push(&first_leg_slices(e, n)[nu]);
        }
    }
    let theta_u = &d.t.dual.what_omega * o1.adjoint();
    let theta = OperatorSpan::from_owned(
        side,
        dp.span
            .basis()
            .iter()
            .map(|x| flip_conjugate(&theta_u, x, n, dim))
            .collect(),
    );
    let dims = [n, n, n];
    let lhs = linalg::conjugate(wo, &[1, 2], &dims, &place(&(wp * &prod.omega), &[0, 1], &dims));
    let rhs = linalg::mul(&place(&p, &[0, 1], &dims), &place(wo, &[0, 2], &dims));
    let mut checks = vec![
        Check::identity("Omega_1 is a cocycle on the deformed dual", "stages", c1.verify().identity),
        Check::identity("Omega_1 Omega is a cocycle", "stages", prod.verify().identity),
        Check::identity("stage identity", "stages", defect(&lhs, &rhs)),
        Check::span(
            "conjugation maps A_{Omega_1 Omega} onto (A_Omega)_{Omega_1}",
            "stages",
            theta.distance(&staged).unwrap_or(1.0),
        ),
    ];
    let trivial_product = linalg::defect(&prod.omega, &CMat::identity(n * n, n * n));
    if trivial_product <= TOL_SPAN {
        let eta_span = OperatorSpan::from_generators(side, d.eta.iter());
        checks.push(Check::span(
            "round trip: A_{Omega* Omega} = alpha(A)",
            "stages",
            dp.span.distance(&s.alpha_span()).unwrap_or(1.0),
        ));
        checks.push(Check::span(
            "round trip: (A_Omega)_{Omega*} = eta_Omega(alpha(A))",
            "stages",
            staged.distance(&eta_span).unwrap_or(1.0),
        ));
    }
    Ok(checks)
}

/// `A_{Ω_u} = Ad(u⊗1) A_Ω` and `η_{Ω_u} = Ad(ĴuĴ⊗u⊗1) η_Ω` for each `u`.
pub fn verify_cohomology_invariance(
    s: &GSystem,
    c: &DualCocycle,
    us: &[CMat],
) -> Result<Vec<Check>, DeformError> {
    let q = &s.q;
    let n = s.n();
    let d = deform(s, c)?;
    let dims = [n, n, s.dim];
    let one_a = CMat::identity(s.dim, s.dim);
    let mut cocycle: f64 = 0.0;
    let mut span: f64 = 0.0;
    let mut eta: f64 = 0.0;
    for u in us {
        let cu = c.coboundary_twist(u)?;
        cocycle = cocycle.max(cu.verify().identity);
        let du = deform(s, &cu)?;
        let u1 = kron(u, &one_a);
        let moved = OperatorSpan::from_owned(
            d.span.side(),
            d.span.basis().iter().map(|x| linalg::sandwich(&u1, x)).collect(),
        );
        span = span.max(moved.distance(&du.span).unwrap_or(1.0));
        let v = kron(&q.jhat_conj(u), u);
        for (e, eu) in d.eta.iter().zip(&du.eta) {
            eta = eta.max(defect(eu, &linalg::conjugate(&v, &[0, 1], &dims, e)));
        }
    }
    Ok(vec![
        Check::identity("twisted cocycles verify", "cohomology-invariance", cocycle),
        Check::span("Ad(u (x) 1) A_Omega = A_{Omega_u}", "cohomology-invariance", span),
        Check::identity("eta_{Omega_u} = Ad(JuJ (x) u (x) 1) eta_Omega", "cohomology-invariance", eta),
    ])
}

/// The crossed product recovered from `A_Ω`, and `η_Ω` as an isomorphism
/// onto the crossed product of the deformed action.
pub fn verify_tva(d: &DeformedAlgebra) -> Vec<Check> {
    let q = d.q();
    let s = &d.system;
    let n = d.n();
    let dims = [n, n, s.dim];
    let one_a = CMat::identity(s.dim, s.dim);
    let cp = CrossedProduct::build(s);
    let mhat1 = OperatorSpan::from_owned(
        n * s.dim,
        q.mhat.basis().iter().map(|y| kron(y, &one_a)).collect(),
    );
    let recovered = product_span(&mhat1, &d.span);
    let wo = d.w_omega();
    let omega = &d.c().omega;
    let eta1 = |x: &CMat| {
        let a = CrossedProduct::dual_action(s, x);
        let b = linalg::conjugate(omega, &[1, 0], &dims, &a);
        linalg::conjugate(&wo.adjoint(), &[0, 1], &dims, &b)
    };
    let on_dual = q
        .mhat
        .basis()
        .iter()
        .map(|y| {
            defect(
                &eta1(&kron(y, &one_a)),
                &kron(&kron(y, &q.one()), &one_a),
            )
        })
        .fold(0.0, f64::max);
    let on_alpha = s
        .alpha_basis()
        .iter()
        .zip(&d.eta)
        .map(|(ax, e)| defect(&eta1(ax), e))
        .fold(0.0, f64::max);
    let side = n * n * s.dim;
    let image = OperatorSpan::from_owned(side, cp.span.basis().iter().map(eta1).collect());
    let one_rest = CMat::identity(n * s.dim, n * s.dim);
    let mhat11 = OperatorSpan::from_owned(
        side,
        q.mhat.basis().iter().map(|y| kron(y, &one_rest)).collect(),
    );
    let alpha_o = OperatorSpan::from_owned(
        side,
        d.span.basis().iter().map(|x| d.alpha_omega(x)).collect(),
    );
    let deformed_cp = product_span(&mhat11, &alpha_o);
    vec![
        Check::span(
            "[(M^ (x) 1) A_Omega] = crossed product",
            "crossed-product-recovery",
            recovered.distance(&cp.span).unwrap_or(1.0),
        ),
        Check::identity("eta_Omega(y (x) 1) = y (x) 1 (x) 1", "crossed-product-recovery", on_dual),
        Check::identity("eta_Omega agrees on alpha(A)", "crossed-product-recovery", on_alpha),
        Check::span(
            "eta_Omega maps the crossed product onto that of alpha_Omega",
            "crossed-product-recovery",
            image.distance(&deformed_cp).unwrap_or(1.0),
        ),
    ]
}
