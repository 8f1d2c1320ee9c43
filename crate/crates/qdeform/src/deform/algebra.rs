use super::{flip_conjugate, lift_left, DeformError, GSystem};
use crate::checks::Check;
use crate::cocycles::DualCocycle;
use crate::fqg::{tensor_span, FiniteQuantumGroup, Kind};
use crate::tensorkit::linalg::{self, defect, first_leg_slices, kron, place, slice, CMat};
use crate::tensorkit::{product_span, tensor_residual, OperatorSpan, C64, TOL_SPAN};
use crate::twisted::TwistedGroupAlgebra;
use std::f64::consts::TAU;

/// `A_Ω = [(T_ν⊗ι)α(A)]` inside `B(H ⊗ H_A)`.
#[derive(Clone, Debug)]
pub struct DeformedAlgebra {
    pub system: GSystem,
    pub t: TwistedGroupAlgebra,
    /// `η_Ω(α(a))` on `(H, H, H_A)` for the basis of `A`, in basis order.
    pub eta: Vec<CMat>,
    pub span: OperatorSpan,
    pub closure_defect: f64,
}

pub fn deform(s: &GSystem, c: &DualCocycle) -> Result<DeformedAlgebra, DeformError> {
    deform_with(s, TwistedGroupAlgebra::build(c)?)
}

pub fn deform_with(s: &GSystem, t: TwistedGroupAlgebra) -> Result<DeformedAlgebra, DeformError> {
    let n = s.n();
    let eta: Vec<CMat> = s.alpha_basis().iter().map(|ax| t.eta(ax)).collect();
    let slices: Vec<Vec<CMat>> = eta.iter().map(|e| first_leg_slices(e, n)).collect();
    // functional index first, then basis index
    let mut span = OperatorSpan::empty(n * s.dim);
    for nu in 0..n * n {
        for sl in &slices {
            span.push(&sl[nu]);
        }
    }
    let closure_defect = span.algebra_defect();
    if closure_defect > TOL_SPAN {
        return Err(DeformError::NotClosed(closure_defect));
    }
    Ok(DeformedAlgebra {
        system: s.clone(),
        t,
        eta,
        span,
        closure_defect,
    })
}

/// Points of `G` as density matrices of evaluation functionals on `M`,
/// each paired with the index of its inverse. Available when `G` is a
/// genuine group: always for function algebras, and for group algebras of
/// abelian groups given by invariant factors.
pub fn g_points(q: &FiniteQuantumGroup) -> Option<Vec<(CMat, usize)>> {
    let n = q.n;
    let g = &q.group;
    match q.kind {
        Kind::FunctionAlgebra => Some(
            (0..n)
                .map(|s| (linalg::unit(n, s, s), g.inv(s)))
                .collect(),
        ),
        Kind::GroupAlgebra => {
            let f = g.factors.as_ref()?;
            let digits = |mut i: usize| {
                let mut d = vec![0; f.len()];
                for k in (0..f.len()).rev() {
                    d[k] = i % f[k];
                    i /= f[k];
                }
                d
            };
            let encode = |d: &[usize]| d.iter().zip(f).fold(0, |acc, (x, m)| acc * m + x);
            let chi = |k: &[usize], s: usize| {
                let ds = digits(s);
                let turns: f64 = k
                    .iter()
                    .zip(&ds)
                    .zip(f)
                    .map(|((a, b), m)| (a * b % m) as f64 / *m as f64)
                    .sum();
                C64::from_polar(1.0, TAU * turns)
            };
            Some(
                (0..n)
                    .map(|k| {
                        let dk = digits(k);
                        let rho = CMat::from_fn(n, n, |i, j| {
                            chi(&dk, i) * chi(&dk, j).conj() / C64::new(n as f64, 0.0)
                        });
                        let inv: Vec<usize> = dk.iter().zip(f).map(|(a, m)| (m - a) % m).collect();
                        (rho, encode(&inv))
                    })
                    .collect(),
            )
        }
    }
}

impl DeformedAlgebra {
    pub fn n(&self) -> usize {
        self.system.n()
    }

    pub fn q(&self) -> &FiniteQuantumGroup {
        &self.system.q
    }

    pub fn c(&self) -> &DualCocycle {
        &self.t.c
    }

    pub fn dim(&self) -> usize {
        self.span.dim()
    }

    /// `(T_ν⊗ι)α(a)`.
    pub fn quantize(&self, nu: &CMat, a: &CMat) -> CMat {
        self.t.quantize_left(nu, &self.system.alpha(a))
    }

    /// `η_Ω(y) = (Ŵ_ΩΩ)₂₁(1⊗y)(Ŵ_ΩΩ)*₂₁` for `y` on `H ⊗ H_A`.
    pub fn eta_of(&self, y: &CMat) -> CMat {
        flip_conjugate(&self.t.wo, y, self.n(), self.system.dim)
    }

    /// `(β⊗ι)(x) − (ι⊗α)(x)` for `x` on `H ⊗ H_A`.
    pub fn diagonal_defect(&self, x: &CMat) -> CMat {
        self.t.beta_left(x) - self.system.alpha_right(x)
    }

    /// *-closure and inclusion in the fixed points of the diagonal action.
    pub fn report(&self) -> Vec<Check> {
        let fixed = self
            .span
            .basis()
            .iter()
            .map(|x| linalg::op_norm(&self.diagonal_defect(x)))
            .fold(0.0, f64::max);
        vec![
            Check::span("A_Omega is a *-algebra", "deformed-algebra", self.closure_defect),
            Check::identity(
                "A_Omega is fixed by the diagonal action",
                "deformed-algebra",
                fixed,
            ),
        ]
    }

    /// `W_Ω = Σ Ŵ_Ω* Σ`.
    pub fn w_omega(&self) -> CMat {
        let s = self.q().sigma();
        &s * self.t.dual.what_omega.adjoint() * &s
    }

    /// `α_Ω(x) = (W_Ω*⊗1)(1⊗x)(W_Ω⊗1)`, legs `(G_Ω, H, H_A)`.
    pub fn alpha_omega(&self, x: &CMat) -> CMat {
        lift_left(&self.w_omega(), x, self.n(), self.system.dim)
    }

    /// `C(G_Ω) = [(ι⊗ω)(W_Ω)]`.
    pub fn m_omega(&self) -> OperatorSpan {
        let n = self.n();
        OperatorSpan::from_owned(n, linalg::last_leg_slices(&self.w_omega(), n))
    }

    /// Range, coaction law and cancellation for `α_Ω`, plus the dimension of
    /// its fixed points.
    pub fn action_report(&self) -> Vec<Check> {
        let n = self.n();
        let dim = self.system.dim;
        let d = n * dim;
        let wo = self.w_omega();
        let mo = self.m_omega();
        let basis = self.span.basis();
        let mut range: f64 = 0.0;
        let mut law: f64 = 0.0;
        let mut images = Vec::with_capacity(basis.len());
        for x in &basis {
            let ax = lift_left(&wo, x, n, dim);
            range = range.max(tensor_residual(&mo, &self.span, &ax));
            let dims4 = [n, n, n, dim];
            let inner = place(&ax, &[0, 2, 3], &dims4);
            let l = linalg::conjugate(&wo.adjoint(), &[1, 2], &dims4, &inner);
            let r = lift_left(&wo, &ax, n, d);
            law = law.max(defect(&l, &r));
            images.push(ax);
        }
        let one = CMat::identity(d, d);
        let m1 = OperatorSpan::from_owned(
            n * d,
            mo.basis().iter().map(|y| kron(y, &one)).collect(),
        );
        let img = OperatorSpan::from_generators(n * d, images.iter());
        let prod = product_span(&m1, &img);
        let cancel = prod
            .basis()
            .iter()
            .map(|x| tensor_residual(&mo, &self.span, x))
            .fold(0.0, f64::max);
        vec![
            Check::exact("dim C(G_Omega)", "deformed-action", mo.dim(), n),
            Check::span("alpha_Omega lands in C(G_Omega) (x) A_Omega", "deformed-action", range),
            Check::identity("alpha_Omega coaction law", "deformed-action", law),
            Check::span("alpha_Omega cancellation: products in range", "deformed-action", cancel),
            Check::exact(
                "alpha_Omega cancellation: products fill C(G_Omega) (x) A_Omega",
                "deformed-action",
                prod.dim(),
                n * self.dim(),
            ),
        ]
    }

    /// Fixed points of `α_Ω` inside `A_Ω`.
    pub fn action_fixed_points(&self) -> OperatorSpan {
        let n = self.n();
        let basis = self.span.basis();
        let side = n * self.span.side();
        let wo = self.w_omega();
        let d = self.span.side();
        let one = CMat::identity(n, n);
        let mut m = CMat::zeros(side * side, basis.len());
        for (k, x) in basis.iter().enumerate() {
            let diff = lift_left(&wo, x, n, self.system.dim) - kron(&one, x);
            m.set_column(k, &crate::tensorkit::CVec::from_column_slice(diff.as_slice()));
        }
        combine(&basis, &linalg::null_space_of(&m), d)
    }

    /// `C*_r(Ĝ;Ω) ⊗ A` on `H ⊗ H_A`.
    fn ambient(&self) -> OperatorSpan {
        tensor_span(&self.t.span, &self.system.a)
    }

    /// Fixed points of the diagonal action, by a linear solve on
    /// `C*_r(Ĝ;Ω) ⊗ A`.
    pub fn fixed_points_solve(&self) -> OperatorSpan {
        let amb = self.ambient().basis();
        let side = self.n() * self.n() * self.system.dim;
        let mut m = CMat::zeros(side * side, amb.len());
        for (k, x) in amb.iter().enumerate() {
            let diff = self.diagonal_defect(x);
            m.set_column(k, &crate::tensorkit::CVec::from_column_slice(diff.as_slice()));
        }
        combine(&amb, &linalg::null_space_of(&m), self.span.side())
    }

    /// The averaging map `Σ_g β_g ⊗ α_{g⁻¹}` divided by `|G|`, when `G` has
    /// points.
    pub fn average(&self, x: &CMat) -> Option<CMat> {
        let pts = g_points(self.q())?;
        let n = self.n();
        let dims = [n, n, self.system.dim];
        let ax = self.system.alpha_right(x);
        let mut out = CMat::zeros(x.nrows(), x.ncols());
        for (rho, inv) in &pts {
            let y = slice(&ax, 1, &dims, &pts[*inv].0);
            out += slice(&self.t.beta_left(&y), 1, &dims, rho);
        }
        Some(out / C64::new(pts.len() as f64, 0.0))
    }

    /// Image of the averaging map on `C*_r(Ĝ;Ω) ⊗ A`.
    pub fn fixed_points_average(&self) -> Option<OperatorSpan> {
        let mut s = OperatorSpan::empty(self.span.side());
        for x in self.ambient().basis() {
            s.push(&self.average(&x)?);
        }
        Some(s)
    }

    /// Compares `A_Ω` with the fixed points found by solving and, when
    /// available, by averaging.
    pub fn fixed_point_report(&self) -> Vec<Check> {
        let solved = self.fixed_points_solve();
        let mut out = vec![Check::span(
            "A_Omega equals the solved fixed points",
            "compact-fixed-points",
            self.span.distance(&solved).unwrap_or(1.0),
        )];
        if let Some(avg) = self.fixed_points_average() {
            let idem = self
                .ambient()
                .basis()
                .iter()
                .take(8)
                .map(|x| {
                    let e = self.average(x).unwrap();
                    defect(&self.average(&e).unwrap(), &e)
                })
                .fold(0.0, f64::max);
            out.push(Check::span(
                "A_Omega equals the averaged fixed points",
                "compact-fixed-points",
                self.span.distance(&avg).unwrap_or(1.0),
            ));
            out.push(Check::identity(
                "averaging is idempotent",
                "compact-fixed-points",
                idem,
            ));
        }
        out
    }
}

fn combine(basis: &[CMat], coeffs: &[crate::tensorkit::CVec], side: usize) -> OperatorSpan {
    let mut s = OperatorSpan::empty(side);
    for v in coeffs {
        let mut x = CMat::zeros(side, side);
        for (b, &c) in basis.iter().zip(v.iter()) {
            x += b * c;
        }
        s.push(&x);
    }
    s
}
