//! Unitary dual 2-cocycles, the deformed coproduct, the dual-weight GNS
//! data and the deformed multiplicative unitary.

use crate::fqg::{pentagon_defect, tensor_span, FiniteGroup, FiniteQuantumGroup, Kind};
use crate::tensorkit::linalg::{
    self, defect, first_leg_slices, kron, place, unitarity_defect, CMat, CVec,
};
use crate::tensorkit::{
    antilinear_polar, AntilinearOperator, OperatorSpan, TensorError, C64, ONE, TOL_IDENTITY,
    TOL_SPAN,
};
use std::f64::consts::TAU;
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum CocycleError {
    #[error("bicharacter law fails at ({0}, {1})")]
    NotBicharacter(usize, usize),
    #[error("table has wrong shape: expected {0}x{0}")]
    Shape(usize),
    #[error("scalar cocycles need a group algebra ambient")]
    NotGroupDual,
    #[error("group `{0}` is not abelian")]
    NotAbelian(String),
    #[error("element is not unitary (defect {0:.3e})")]
    NotUnitary(f64),
    #[error("element is not in the dual algebra (residual {0:.3e})")]
    NotInDual(f64),
    #[error("dual GNS map is ill-defined (residual {0:.3e})")]
    IllDefined(f64),
    #[error("cocycle failed verification: {0}")]
    Unverified(String),
    #[error(transparent)]
    Tensor(#[from] TensorError),
}

#[derive(Clone, Debug, PartialEq)]
pub enum Provenance {
    /// Exponent table `psi[s][t]` in turns.
    Bicharacter(Vec<Vec<f64>>),
    /// `(u⊗u) Ω Δ̂(u)*` applied to a base cocycle.
    Coboundary { u: CMat, base: Box<Provenance> },
    /// A product `Ω₁Ω` of a cocycle on the deformed dual with one on the dual.
    Product(Box<Provenance>, Box<Provenance>),
    /// `Ω*` viewed on the deformed dual.
    Inverse(Box<Provenance>),
    Raw,
}

/// A unitary `Ω ∈ M̂ ⊗ M̂` that is a cocycle for the coproduct implemented
/// by `base` via `x ↦ base*(1⊗x)base`.
#[derive(Clone, Debug)]
pub struct DualCocycle {
    pub q: FiniteQuantumGroup,
    pub base: CMat,
    pub omega: CMat,
    pub provenance: Provenance,
    pub label: String,
}

#[derive(Clone, Debug, PartialEq)]
pub struct CocycleReport {
    pub unitarity: f64,
    pub membership: f64,
    pub identity: f64,
    /// `(Δ̂⊗ι)(ŴΩ*)Ω*₁₂ = (ŴΩ*)₁₃(ŴΩ*)₂₃`.
    pub rewritten: f64,
    /// `Ŵ*₁₂(ŴΩ*)₂₃(ŴΩ*)₁₂ = (ŴΩ*)₁₃(ŴΩ*)₂₃`.
    pub rewritten2: f64,
}

impl CocycleReport {
    pub fn passes(&self) -> bool {
        self.unitarity <= TOL_IDENTITY
            && self.membership <= TOL_SPAN
            && self.identity <= TOL_IDENTITY
            && self.rewritten <= TOL_IDENTITY
            && self.rewritten2 <= TOL_IDENTITY
    }

    /// Name of the first failing component.
    pub fn failure(&self) -> Option<&'static str> {
        if self.unitarity > TOL_IDENTITY {
            Some("unitarity")
        } else if self.membership > TOL_SPAN {
            Some("membership")
        } else if self.identity > TOL_IDENTITY {
            Some("cocycle identity")
        } else if self.rewritten > TOL_IDENTITY || self.rewritten2 > TOL_IDENTITY {
            Some("rewritten identity")
        } else {
            None
        }
    }
}

/// `(Δ⊗ι)(x)` for the coproduct implemented by `w`, with `x` on two legs.
pub fn coproduct_left(w: &CMat, x: &CMat, n: usize) -> CMat {
    let dims = [n, n, n];
    let x23 = place(x, &[1, 2], &dims);
    linalg::conjugate(&w.adjoint(), &[0, 1], &dims, &x23)
}

/// `(ι⊗Δ)(x)` for the coproduct implemented by `w`.
pub fn coproduct_right(w: &CMat, x: &CMat, n: usize) -> CMat {
    let dims = [n, n, n];
    let x13 = place(x, &[0, 2], &dims);
    linalg::conjugate(&w.adjoint(), &[1, 2], &dims, &x13)
}

impl DualCocycle {
    pub fn new(
        q: &FiniteQuantumGroup,
        omega: CMat,
        provenance: Provenance,
        label: &str,
    ) -> Self {
        Self {
            q: q.clone(),
            base: q.what.clone(),
            omega,
            provenance,
            label: label.to_string(),
        }
    }

    pub fn trivial(q: &FiniteQuantumGroup) -> Self {
        let n = q.n;
        Self::new(
            q,
            CMat::identity(n * n, n * n),
            Provenance::Bicharacter(vec![vec![0.0; n]; n]),
            "trivial",
        )
    }

    pub fn n(&self) -> usize {
        self.q.n
    }

    /// `Δ̂(x) = base*(1⊗x)base`.
    pub fn coproduct(&self, x: &CMat) -> CMat {
        let one = CMat::identity(self.n(), self.n());
        self.base.adjoint() * kron(&one, x) * &self.base
    }

    /// `ŴΩ*` for the ambient `Ŵ = base`.
    pub fn what_omega_star(&self) -> CMat {
        &self.base * self.omega.adjoint()
    }

    pub fn verify(&self) -> CocycleReport {
        let n = self.n();
        let dims = [n, n, n];
        let om = &self.omega;
        let mm = tensor_span(&self.q.mhat, &self.q.mhat);
        let lhs = linalg::mul(&place(om, &[0, 1], &dims), &coproduct_left(&self.base, om, n));
        let rhs = linalg::mul(&place(om, &[1, 2], &dims), &coproduct_right(&self.base, om, n));
        let z = self.what_omega_star();
        let z13 = place(&z, &[0, 2], &dims);
        let z23 = place(&z, &[1, 2], &dims);
        let z12 = place(&z, &[0, 1], &dims);
        let r1 = linalg::mul(
            &coproduct_left(&self.base, &z, n),
            &place(&om.adjoint(), &[0, 1], &dims),
        );
        let r2 = linalg::mul(&z13, &z23);
        let w12 = place(&self.base, &[0, 1], &dims);
        let r3 = linalg::mul(&linalg::adj_mul(&w12, &z23), &z12);
        CocycleReport {
            unitarity: unitarity_defect(om),
            membership: mm.residual(om),
            identity: defect(&lhs, &rhs),
            rewritten: defect(&r1, &r2),
            rewritten2: defect(&r3, &r2),
        }
    }

    /// Fails unless every component of [`DualCocycle::verify`] passes.
    pub fn verified(self) -> Result<Self, CocycleError> {
        let r = self.verify();
        match r.failure() {
            None => Ok(self),
            Some(what) => Err(CocycleError::Unverified(format!("{what} ({r:?})"))),
        }
    }

    /// `Ω(s, t)` for a diagonal cocycle on a group dual.
    pub fn scalar(&self, s: usize, t: usize) -> C64 {
        let n = self.n();
        self.omega[(s * n + t, s * n + t)]
    }

    /// `Ω_u = (u⊗u) Ω Δ̂(u)*`.
    pub fn coboundary_twist(&self, u: &CMat) -> Result<DualCocycle, CocycleError> {
        let ud = unitarity_defect(u);
        if ud > TOL_IDENTITY {
            return Err(CocycleError::NotUnitary(ud));
        }
        let res = self.q.mhat.residual(u);
        if res > TOL_SPAN {
            return Err(CocycleError::NotInDual(res));
        }
        let omega = kron(u, u) * &self.omega * self.coproduct(u).adjoint();
        Ok(DualCocycle {
            q: self.q.clone(),
            base: self.base.clone(),
            omega,
            provenance: Provenance::Coboundary {
                u: u.clone(),
                base: Box::new(self.provenance.clone()),
            },
            label: format!("{}^u", self.label),
        })
    }

    /// `Δ̂_Ω(x) = Ω Δ̂(x) Ω*`.
    pub fn deformed_coproduct(&self, x: &CMat) -> CMat {
        &self.omega * self.coproduct(x) * self.omega.adjoint()
    }

    /// Largest coassociativity defect of `Δ̂_Ω` over a basis of `M̂`.
    pub fn deformed_coassociativity(&self) -> f64 {
        let n = self.n();
        let dims = [n, n, n];
        
        
        self.q
            .mhat
            .basis()
            .iter()
            .map(|x| {
                let d = self.deformed_coproduct(x);
                let l = linalg::conjugate(&self.omega, &[0, 1], &dims, &coproduct_left(&self.base, &d, n));
                let r = linalg::conjugate(&self.omega, &[1, 2], &dims, &coproduct_right(&self.base, &d, n));
                defect(&l, &r)
            })
            .fold(0.0, f64::max)
    }

    /// The dual-weight GNS data and the deformed multiplicative unitary.
    pub fn dual_weight_gns(&self) -> Result<DeformedDualData, CocycleError> {
        DeformedDualData::new(self)
    }
}

/// Λ̃, J̃, `X = J̃J` and `Ŵ_Ω` for a cocycle.
#[derive(Clone, Debug)]
pub struct DeformedDualData {
    /// Span of the twisted generators `(ω_ij⊗ι)(ŴΩ*)`.
    pub twisted: OperatorSpan,
    /// Λ̃ in coordinates of `twisted`'s orthonormal basis.
    pub lambda_tilde: CMat,
    pub well_defined: f64,
    pub jtilde: AntilinearOperator,
    /// `Δ̃ = S̃* S̃`, exposed without a normalization claim.
    pub delta_tilde: CMat,
    pub x: CMat,
    pub what_omega: CMat,
}

impl DeformedDualData {
    fn new(c: &DualCocycle) -> Result<Self, CocycleError> {
        let q = &c.q;
        let n = q.n;
        let gens = first_leg_slices(&c.what_omega_star(), n);
        let twisted = OperatorSpan::from_generators(n, gens.iter());
        let plain = first_leg_slices(&c.base, n);
        let k = twisted.dim();
        let mut coords = CMat::zeros(k, gens.len());
        let mut targets = CMat::zeros(n, gens.len());
        for (m, (g, p)) in gens.iter().zip(&plain).enumerate() {
            coords.set_column(m, &twisted.coords(g));
            targets.set_column(m, &q.lambda(p));
        }
        let pinv = coords
            .clone()
            .pseudo_inverse(1e-12)
            .map_err(|_| CocycleError::IllDefined(f64::INFINITY))?;
        let lambda_tilde = &targets * pinv;
        let well_defined = (&lambda_tilde * &coords - &targets).norm() / targets.norm().max(1.0);
        if well_defined > TOL_SPAN {
            return Err(CocycleError::IllDefined(well_defined));
        }
        let basis = twisted.basis();
        let mut b = CMat::zeros(n, k);
        let mut y = CMat::zeros(n, k);
        for (m, x) in basis.iter().enumerate() {
            b.set_column(m, &(&lambda_tilde * twisted.coords(x)));
            y.set_column(m, &(&lambda_tilde * twisted.coords(&x.adjoint())));
        }
        let binv = linalg::conj(&b)
            .try_inverse()
            .ok_or(CocycleError::IllDefined(f64::INFINITY))?;
        let s = AntilinearOperator::new(y * binv);
        let (jtilde, delta_tilde) = antilinear_polar(&s)?;
        let x = jtilde.compose(&q.j);
        let left = jtilde.tensor(&q.jhat);
        let right = q.j.tensor(&q.jhat);
        let what_omega =
            left.sandwich(&(&c.omega * c.base.adjoint()), &right) * c.omega.adjoint();
        Ok(Self {
            twisted,
            lambda_tilde,
            well_defined,
            jtilde,
            delta_tilde,
            x,
            what_omega,
        })
    }

    /// `Λ̃(y)` for `y` in the twisted span.
    pub fn lambda_tilde_of(&self, y: &CMat) -> CVec {
        &self.lambda_tilde * self.twisted.coords(y)
    }

    /// `Ŵ_Ω Ω`.
    pub fn what_omega_omega(&self, c: &DualCocycle) -> CMat {
        &self.what_omega * &c.omega
    }

    pub fn report(&self, c: &DualCocycle) -> DeformedReport {
        let n = c.n();
        let dims = [n, n, n];
        let q = &c.q;
        let wo = &self.what_omega;
        let mhat = q.mhat.basis();
        let implements = mhat
            .iter()
            .map(|x| {
                let lhs = wo.adjoint() * kron(&q.one(), x) * wo;
                defect(&lhs, &c.deformed_coproduct(x))
            })
            .fold(0.0, f64::max);
        let woo = self.what_omega_omega(c);
        let z = c.what_omega_star();
        let w12 = place(&c.base, &[0, 1], &dims);
        let lhs = linalg::conjugate(&woo, &[1, 2], &dims, &w12);
        let rhs = place(&z, &[0, 1], &dims) * place(&woo, &[0, 2], &dims);
        DeformedReport {
            well_defined: self.well_defined,
            jtilde_involution: self.jtilde.involution_defect(),
            x_unitarity: unitarity_defect(&self.x),
            x_membership: q.mhat.residual(&self.x),
            unitarity: unitarity_defect(wo),
            pentagon: pentagon_defect(wo, n),
            implements,
            coassociativity: c.deformed_coassociativity(),
            ecocycle4: defect(&lhs, &rhs),
        }
    }

    /// `Ω*` as a cocycle on the deformed dual.
    pub fn cocycle_on_deformed(&self, c: &DualCocycle) -> DualCocycle {
        DualCocycle {
            q: c.q.clone(),
            base: self.what_omega.clone(),
            omega: c.omega.adjoint(),
            provenance: Provenance::Inverse(Box::new(c.provenance.clone())),
            label: format!("{}*", c.label),
        }
    }

    /// Projection distance between `span{(ω⊗ι)(Ŵ_Ω Ω)}` and `Ĵ C*_r(Ĝ;Ω) Ĵ`.
    pub fn inverse_span_distance(&self, c: &DualCocycle) -> f64 {
        let n = c.n();
        let lhs = OperatorSpan::from_owned(n, first_leg_slices(&self.what_omega_omega(c), n));
        let rhs = OperatorSpan::from_owned(
            n,
            self.twisted
                .basis()
                .iter()
                .map(|x| c.q.jhat_conj(x))
                .collect(),
        );
        lhs.distance(&rhs).unwrap_or(1.0)
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct DeformedReport {
    pub well_defined: f64,
    pub jtilde_involution: f64,
    pub x_unitarity: f64,
    pub x_membership: f64,
    pub unitarity: f64,
    pub pentagon: f64,
    pub implements: f64,
    pub coassociativity: f64,
    pub ecocycle4: f64,
}

/// `Ω₁Ω` for a cocycle `Ω₁` on the deformed dual of `c`.
pub fn product_cocycle(c1: &DualCocycle, c: &DualCocycle) -> DualCocycle {
    DualCocycle {
        q: c.q.clone(),
        base: c.base.clone(),
        omega: &c1.omega * &c.omega,
        provenance: Provenance::Product(
            Box::new(c1.provenance.clone()),
            Box::new(c.provenance.clone()),
        ),
        label: format!("{}.{}", c1.label, c.label),
    }
}

/// Re-home a cocycle given as a matrix onto another ambient coproduct.
pub fn with_base(c: &DualCocycle, base: &CMat, label: &str) -> DualCocycle {
    DualCocycle {
        q: c.q.clone(),
        base: base.clone(),
        omega: c.omega.clone(),
        provenance: c.provenance.clone(),
        label: label.to_string(),
    }
}

fn phase(turns: f64) -> C64 {
    let t = turns.rem_euclid(1.0);
    // exact values on quarter turns keep the common cases free of rounding
    let q = t * 4.0;
    if (q - q.round()).abs() < 1e-15 {
        return match (q.round() as i64) % 4 {
            0 => ONE,
            1 => C64::new(0.0, 1.0),
            2 => C64::new(-1.0, 0.0),
            _ => C64::new(0.0, -1.0),
        };
    }
    C64::from_polar(1.0, TAU * t)
}

/// Diagonal `Ω = Σ ψ(s,t) e_ss ⊗ e_tt` from a table of angles in turns.
pub fn scalar_cocycle(
    q: &FiniteQuantumGroup,
    turns: &[Vec<f64>],
    provenance: Provenance,
    label: &str,
) -> Result<DualCocycle, CocycleError> {
    if q.kind != Kind::GroupAlgebra {
        return Err(CocycleError::NotGroupDual);
    }
    let n = q.n;
    if turns.len() != n || turns.iter().any(|r| r.len() != n) {
        return Err(CocycleError::Shape(n));
    }
    let mut omega = CMat::zeros(n * n, n * n);
    for s in 0..n {
        for t in 0..n {
            omega[(s * n + t, s * n + t)] = phase(turns[s][t]);
        }
    }
    Ok(DualCocycle::new(q, omega, provenance, label))
}

fn turns_close(a: f64, b: f64) -> bool {
    let d = (a - b).rem_euclid(1.0);
    d < 1e-9 || d > 1.0 - 1e-9
}

/// Cocycle from a bicharacter table in turns; checks the bicharacter law.
pub fn bicharacter_cocycle(
    q: &FiniteQuantumGroup,
    turns: &[Vec<f64>],
    label: &str,
) -> Result<DualCocycle, CocycleError> {
    let g = &q.group;
    let n = g.order();
    if turns.len() != n || turns.iter().any(|r| r.len() != n) {
        return Err(CocycleError::Shape(n));
    }
    if !g.is_abelian() {
        return Err(CocycleError::NotAbelian(g.name.clone()));
    }
    for s in 0..n {
        for s2 in 0..n {
            for t in 0..n {
                if !turns_close(turns[g.mul(s, s2)][t], turns[s][t] + turns[s2][t]) {
                    return Err(CocycleError::NotBicharacter(g.mul(s, s2), t));
                }
                if !turns_close(turns[t][g.mul(s, s2)], turns[t][s] + turns[t][s2]) {
                    return Err(CocycleError::NotBicharacter(t, g.mul(s, s2)));
                }
            }
        }
    }
    scalar_cocycle(q, turns, Provenance::Bicharacter(turns.to_vec()), label)
}

/// A bicharacter on `Z_{n1} × ... × Z_{nk}` given by exponents `k[i][j]`
/// modulo `gcd(n_i, n_j)`.
#[derive(Clone, Debug, PartialEq)]
pub struct Bicharacter {
    pub factors: Vec<usize>,
    pub exponents: Vec<Vec<usize>>,
}

fn gcd(a: usize, b: usize) -> usize {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

fn digits(mut i: usize, factors: &[usize]) -> Vec<usize> {
    let mut d = vec![0; factors.len()];
    for k in (0..factors.len()).rev() {
        d[k] = i % factors[k];
        i /= factors[k];
    }
    d
}

impl Bicharacter {
    /// `ψ(s, t)` in turns, reduced to `[0, 1)`.
    pub fn turns(&self, s: usize, t: usize) -> f64 {
        let f = &self.factors;
        let a = digits(s, f);
        let b = digits(t, f);
        let mut num = 0.0;
        for i in 0..f.len() {
            for j in 0..f.len() {
                let g = gcd(f[i], f[j]);
                let e = (self.exponents[i][j] * a[i] * b[j]) % g;
                num += e as f64 / g as f64;
            }
        }
        num.rem_euclid(1.0)
    }

    pub fn table(&self) -> Vec<Vec<f64>> {
        let n: usize = self.factors.iter().product();
        (0..n)
            .map(|s| (0..n).map(|t| self.turns(s, t)).collect())
            .collect()
    }

    /// Whether `ψ(s,t)/ψ(t,s)` is nontrivial somewhere.
    pub fn is_antisymmetric_nontrivial(&self) -> bool {
        let n: usize = self.factors.iter().product();
        (0..n).any(|s| (0..n).any(|t| !turns_close(self.turns(s, t), self.turns(t, s))))
    }

    pub fn is_trivial(&self) -> bool {
        self.exponents.iter().flatten().all(|&e| e == 0)
    }
}

/// Every bicharacter of an abelian group given by invariant factors, with
/// the ones whose antisymmetrization is nontrivial listed first.
pub fn enumerate_bicharacters(g: &FiniteGroup) -> Result<Vec<Bicharacter>, CocycleError> {
    let factors = match &g.factors {
        Some(f) => f.clone(),
        None if g.order() == 1 => vec![],
        None => return Err(CocycleError::NotAbelian(g.name.clone())),
    };
    let r = factors.len();
    let mods: Vec<usize> = (0..r * r)
        .map(|k| gcd(factors[k / r], factors[k % r]))
        .collect();
    let total: usize = mods.iter().product();
    let mut out = Vec::with_capacity(total);
    for idx in 0..total {
        let mut e = vec![vec![0; r]; r];
        let mut x = idx;
        for k in (0..r * r).rev() {
            e[k / r][k % r] = x % mods[k];
            x /= mods[k];
        }
        out.push(Bicharacter {
            factors: factors.clone(),
            exponents: e,
        });
    }
    let (mut first, rest): (Vec<_>, Vec<_>) =
        out.into_iter().partition(|b| b.is_antisymmetric_nontrivial());
    first.extend(rest);
    Ok(first)
}

/// Draw a unitary in `M̂` from a seeded generator: `exp(i h)` with `h` a
/// Hermitian element of `M̂`.
pub fn random_dual_unitary<R: rand::Rng>(q: &FiniteQuantumGroup, rng: &mut R) -> CMat {
    let n = q.n;
    let mut y = CMat::zeros(n, n);
    for b in q.mhat.basis() {
        let z = C64::new(rng.gen_range(-3.0..3.0), rng.gen_range(-3.0..3.0));
        y += b * z;
    }
    let h = (&y + y.adjoint()) * C64::new(0.5, 0.0);
    linalg::unitary_exp(&h)
}
