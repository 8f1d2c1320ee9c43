//! The twisted group algebra `C*_r(Ĝ;Ω)`, its action `β`, quantization and
//! dequantization maps, the twisted Fourier product and regularity.

use crate::cocycles::{CocycleError, DeformedDualData, DualCocycle};
use crate::fqg::{tensor_span, FiniteQuantumGroup, Kind};
use crate::tensorkit::linalg::{
    self, defect, first_leg_slices, kron, place, slice, unit, CMat, CVec,
};
use crate::tensorkit::{product_span, OperatorSpan, C64, TOL_IDENTITY, ZERO};
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum TwistedError {
    #[error("twisted span is not a *-algebra (defect {0:.3e})")]
    NotClosed(f64),
    #[error("input is not positive (min eigenvalue {0:.3e})")]
    NotPositive(f64),
    #[error("average is not scalar (defect {0:.3e})")]
    NotScalar(f64),
    #[error(transparent)]
    Cocycle(#[from] CocycleError),
}

#[derive(Clone, Debug)]
pub struct TwistedGroupAlgebra {
    pub c: DualCocycle,
    pub dual: DeformedDualData,
    /// `(ω_ij⊗ι)(ŴΩ*)`, row-major in `(i, j)`.
    pub generators: Vec<CMat>,
    pub span: OperatorSpan,
    /// `ŴΩ*`.
    pub z: CMat,
    /// `Ŵ_Ω Ω`.
    pub wo: CMat,
    pub closure_defect: f64,
}

#[derive(Clone, Debug, PartialEq)]
pub struct TwistedReport {
    pub dim: usize,
    pub center_dim: usize,
    pub closure: f64,
    pub beta_range: f64,
    pub beta_on_generator: f64,
    pub beta_multiplicative: f64,
    pub beta_coaction: f64,
    pub left_stability: f64,
    pub right_stability: f64,
}

impl TwistedGroupAlgebra {
    pub fn build(c: &DualCocycle) -> Result<Self, TwistedError> {
        let n = c.n();
        let dual = c.dual_weight_gns()?;
        let z = c.what_omega_star();
        let generators = first_leg_slices(&z, n);
        let span = OperatorSpan::from_generators(n, generators.iter());
        let closure_defect = span.algebra_defect();
        if closure_defect > crate::tensorkit::TOL_SPAN {
            return Err(TwistedError::NotClosed(closure_defect));
        }
        let wo = dual.what_omega_omega(c);
        Ok(Self {
            c: c.clone(),
            dual,
            generators,
            span,
            z,
            wo,
            closure_defect,
        })
    }

    pub fn n(&self) -> usize {
        self.c.n()
    }

    pub fn q(&self) -> &FiniteQuantumGroup {
        &self.c.q
    }

    /// `β(x) = (ŴΩ*)₂₁(1⊗x)(ŴΩ*)*₂₁`; leg 1 carries the algebra, leg 2 `G`.
    pub fn beta(&self, x: &CMat) -> CMat {
        let n = self.n();
        let dims = [n, n];
        let x2 = place(x, &[1], &dims);
        let z21 = place(&self.z, &[1, 0], &dims);
        linalg::sandwich(&z21, &x2)
    }

    /// `(ι⊗β)(y)` for `y` on `K ⊗ H`, output on `K ⊗ H ⊗ H`.
    pub fn beta_right(&self, y: &CMat) -> CMat {
        let n = self.n();
        let k = y.nrows() / n;
        let dims = [k, n, n];
        let y13 = place(y, &[0, 2], &dims);
        linalg::conjugate(&self.z, &[2, 1], &dims, &y13)
    }

    /// `(β⊗ι)(y)` for `y` on `H ⊗ H_A`, output on `H ⊗ H ⊗ H_A`.
    pub fn beta_left(&self, y: &CMat) -> CMat {
        let n = self.n();
        let a = y.nrows() / n;
        let dims = [n, n, a];
        let y23 = place(y, &[1, 2], &dims);
        linalg::conjugate(&self.z, &[1, 0], &dims, &y23)
    }

    pub fn report(&self) -> TwistedReport {
        let n = self.n();
        let q = self.q();
        let basis = self.span.basis();
        let tm = tensor_span(&self.span, &q.m);
        let beta_range = basis
            .iter()
            .map(|x| tm.residual(&self.beta(x)))
            .fold(0.0, f64::max);
        let dims3 = [n, n, n];
        let lhs = self.beta_right(&self.z);
        let rhs = place(&q.what, &[0, 2], &dims3) * place(&self.z, &[0, 1], &dims3);
        let mut mult: f64 = 0.0;
        for x in &basis {
            mult = mult.max(defect(&self.beta(&x.adjoint()), &self.beta(x).adjoint()));
            for y in &basis {
                mult = mult.max(defect(&self.beta(&(x * y)), &(self.beta(x) * self.beta(y))));
            }
        }
        // (β⊗ι)β = (ι⊗Δ)β
        let coaction = basis
            .iter()
            .map(|x| {
                let b = self.beta(x);
                let l = self.beta_left(&b);
                let r = crate::cocycles::coproduct_right(&q.w, &b, n);
                defect(&l, &r)
            })
            .fold(0.0, f64::max);
        // ŴΩ*(K⊗C) = K⊗C = (K⊗C)ŴΩ*
        let kc = tensor_span(&OperatorSpan::full(n), &self.span);
        let kcb = kc.basis();
        let left_stability = kcb
            .iter()
            .map(|y| kc.residual(&(&self.z * y)))
            .fold(0.0, f64::max);
        let right_stability = kcb
            .iter()
            .map(|y| kc.residual(&(y * &self.z)))
            .fold(0.0, f64::max);
        TwistedReport {
            dim: self.span.dim(),
            center_dim: self.span.center_dim(),
            closure: self.closure_defect,
            beta_range,
            beta_on_generator: defect(&lhs, &rhs),
            beta_multiplicative: mult,
            beta_coaction: coaction,
            left_stability,
            right_stability,
        }
    }

    /// `T_ν(x) = (ι⊗ν)(Ŵ_ΩΩ(x⊗1)(Ŵ_ΩΩ)*)`.
    pub fn quantize(&self, nu: &CMat, x: &CMat) -> CMat {
        let n = self.n();
        let y = &self.wo * kron(x, &CMat::identity(n, n)) * self.wo.adjoint();
        slice(&y, 1, &[n, n], nu)
    }

    /// `(T_ν⊗ι)(y)` for `y` on `H ⊗ H_A`.
    pub fn quantize_left(&self, nu: &CMat, y: &CMat) -> CMat {
        let n = self.n();
        let a = y.nrows() / n;
        let eta = self.eta(y);
        slice(&eta, 0, &[n, n, a], nu)
    }

    /// `(Ŵ_ΩΩ)₂₁(1⊗y)(Ŵ_ΩΩ)*₂₁` for `y` on `H ⊗ H_A`.
    pub fn eta(&self, y: &CMat) -> CMat {
        let n = self.n();
        let a = y.nrows() / n;
        let dims = [n, n, a];
        let y23 = place(y, &[1, 2], &dims);
        linalg::conjugate(&self.wo, &[1, 0], &dims, &y23)
    }

    /// `S_ω(x) = (ω⊗ι)β(x)`.
    pub fn dequantize(&self, omega: &CMat, x: &CMat) -> CMat {
        let n = self.n();
        slice(&self.beta(x), 0, &[n, n], omega)
    }

    /// Worst `‖β(T_ν(f)) − (T_ν⊗ι)Δ(f)‖` over matrix-unit `ν` and a basis of `M`.
    pub fn equivariance_defect(&self) -> f64 {
        let n = self.n();
        let q = self.q();
        let mut worst: f64 = 0.0;
        for f in q.m.basis() {
            let df = q.delta(&f);
            for i in 0..n {
                for j in 0..n {
                    let nu = unit(n, i, j);
                    let l = self.beta(&self.quantize(&nu, &f));
                    let r = self.quantize_left(&nu, &df);
                    worst = worst.max(defect(&l, &r));
                }
            }
        }
        worst
    }

    /// `span{T_ν(f)}` over matrix-unit `ν` and a basis of `M`.
    pub fn quantization_span(&self) -> OperatorSpan {
        let n = self.n();
        let mut s = OperatorSpan::empty(n);
        for f in self.q().m.basis() {
            for i in 0..n {
                for j in 0..n {
                    s.push(&self.quantize(&unit(n, i, j), &f));
                }
            }
        }
        s
    }

    /// Span of products `x · ĴyĴ` with `x` twisted and `y ∈ M̂`.
    pub fn regularity_span(&self) -> OperatorSpan {
        let q = self.q();
        let jm = OperatorSpan::from_owned(
            self.n(),
            q.mhat.basis().iter().map(|y| q.jhat_conj(y)).collect(),
        );
        product_span(&self.span, &jm)
    }

    /// Dimension of `span{(K⊗1)ŴΩ*(1⊗K)}`. Its `(i, l)` blocks all range
    /// over the span of the matrices `F_jk(b, c) = (ŴΩ*)_{(j,b),(c,k)}`, so
    /// the dimension is `n²` times the rank of that family.
    pub fn compact_condition_dim(&self) -> usize {
        let n = self.n();
        let mut fam = OperatorSpan::empty(n);
        for j in 0..n {
            for k in 0..n {
                let f = CMat::from_fn(n, n, |b, c| self.z[(j * n + b, c * n + k)]);
                fam.push(&f);
            }
        }
        n * n * fam.dim()
    }

    pub fn regularity(&self) -> RegularityReport {
        let n = self.n();
        RegularityReport {
            product_dim: self.regularity_span().dim(),
            compact_condition_dim: self.compact_condition_dim(),
            full_dim: n * n,
        }
    }

    /// Sum over the points of `G` of `β_g(x)`, realized as `(ι⊗φ)β(x)` with
    /// `φ` the Haar weight rescaled to total mass `n`. Returns the scalar and
    /// the distance of the result from a multiple of the identity.
    pub fn average(&self, x: &CMat) -> Result<(C64, f64), TwistedError> {
        let n = self.n();
        let herm = (x + x.adjoint()) * C64::new(0.5, 0.0);
        let min = herm
            .symmetric_eigen()
            .eigenvalues
            .iter()
            .cloned()
            .fold(f64::INFINITY, f64::min);
        if min < -TOL_IDENTITY {
            return Err(TwistedError::NotPositive(min));
        }
        let xi = &self.q().xi0;
        let mass = C64::new(n as f64 / xi.norm_squared(), 0.0);
        let rho = CMat::from_fn(n, n, |a, b| xi[a].conj() * xi[b] * mass);
        let y = slice(&self.beta(x), 1, &[n, n], &rho);
        let s = y.trace() / C64::new(n as f64, 0.0);
        let d = defect(&y, &(CMat::identity(n, n) * s));
        if d > 1e-9 * s.norm().max(1.0) {
            return Err(TwistedError::NotScalar(d));
        }
        Ok((s, d))
    }

    /// Density matrix of the functional pairing a function on the group with
    /// `M̂` through its points.
    pub fn function_density(&self, f: &[C64]) -> CMat {
        let q = self.q();
        let n = self.n();
        let mut rho = CMat::zeros(n, n);
        for (s, &v) in f.iter().enumerate() {
            if v == ZERO {
                continue;
            }
            let p = q.mhat_point(s);
            rho += &p * (v / C64::new(p.norm_squared(), 0.0));
        }
        rho
    }

    /// `f₁ ⋆_Ω f₂ = (f₁⊗f₂)(Δ̂(·)Ω*)` read back on points.
    pub fn fourier_product(&self, f1: &[C64], f2: &[C64]) -> Vec<C64> {
        let n = self.n();
        let q = self.q();
        let rho = kron(&self.function_density(f1), &self.function_density(f2));
        (0..n)
            .map(|r| {
                let y = self.c.coproduct(&q.mhat_point(r)) * self.c.omega.adjoint();
                rho.iter().zip(y.iter()).map(|(a, b)| a * b).sum()
            })
            .collect()
    }

    /// `π_Ω(f) = (f⊗ι)(ŴΩ*)`.
    pub fn pi(&self, f: &[C64]) -> CMat {
        let n = self.n();
        slice(&self.z, 0, &[n, n], &self.function_density(f))
    }

    /// `λ^Ω_s` from the generator formula (group duals only).
    pub fn twisted_translation(&self, s: usize) -> Option<CMat> {
        let q = self.q();
        if q.kind != Kind::GroupAlgebra {
            return None;
        }
        let n = self.n();
        let phases = CMat::from_fn(n, n, |a, b| {
            if a == b {
                self.c.scalar(s, a).conj()
            } else {
                ZERO
            }
        });
        Some(q.m_point(s) * phases)
    }

    /// Worst defect of `λ^Ω_{st} = Ω(s,t) λ^Ω_s λ^Ω_t` over all pairs.
    pub fn translation_relation_defect(&self) -> Option<f64> {
        let g = &self.q().group;
        let n = self.n();
        let mut worst: f64 = 0.0;
        for s in 0..n {
            for t in 0..n {
                let l = self.twisted_translation(g.mul(s, t))?;
                let r = self.twisted_translation(s)? * self.twisted_translation(t)?
                    * self.c.scalar(s, t);
                worst = worst.max(defect(&l, &r));
            }
        }
        Some(worst)
    }

    /// `|φ̃(y*y) − ‖Λ̃(y)‖²|`, with `φ̃` read off the average after undoing the
    /// point-count normalization.
    pub fn weight_norm_defect(&self, y: &CMat) -> Result<f64, TwistedError> {
        let (s, _) = self.average(&(y.adjoint() * y))?;
        let mass = self.n() as f64 / self.q().xi0.norm_squared();
        let v: CVec = self.dual.lambda_tilde_of(y);
        Ok((s / mass - C64::new(v.norm_squared(), 0.0)).norm())
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct RegularityReport {
    pub product_dim: usize,
    pub compact_condition_dim: usize,
    pub full_dim: usize,
}

impl RegularityReport {
    pub fn regular(&self) -> bool {
        self.product_dim == self.full_dim
    }
}
