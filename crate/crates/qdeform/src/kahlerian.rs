//! Pointwise numerics on the elementary normal j-group `R × R^{2d} × R`:
//! group law, modular function, the oscillatory product kernels and the
//! symmetry and cohomology identities they satisfy.

use crate::checks::{Check, Tol};
use nalgebra::DMatrix;
use num_complex::Complex64 as C64;
use num_dual::{Dual64, DualNum};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use std::f64::consts::PI;
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum KahlerianError {
    #[error("dimension mismatch: expected v of length {expected}, got {got}")]
    Dimension { expected: usize, got: usize },
    #[error("theta must be nonzero")]
    ThetaZero,
    #[error("kernel overflows at a = {0}")]
    Overflow(f64),
    #[error("tau is not purely imaginary at x = {x} (real part {re:.3e})")]
    NotImaginary { x: f64, re: f64 },
}

/// A point `(a, v, t)`; `v` has length `2d`.
#[derive(Clone, Debug, PartialEq)]
pub struct JGroupElement {
    pub a: f64,
    pub v: Vec<f64>,
    pub t: f64,
}

impl JGroupElement {
    pub fn identity(d: usize) -> Self {
        Self {
            a: 0.0,
            v: vec![0.0; 2 * d],
            t: 0.0,
        }
    }

    pub fn d(&self) -> usize {
        self.v.len() / 2
    }

    /// Coordinates `[a, v..., t]`.
    pub fn coords(&self) -> Vec<f64> {
        let mut c = Vec::with_capacity(self.v.len() + 2);
        c.push(self.a);
        c.extend(&self.v);
        c.push(self.t);
        c
    }

    pub fn from_coords(c: &[f64]) -> Self {
        let k = c.len();
        Self {
            a: c[0],
            v: c[1..k - 1].to_vec(),
            t: c[k - 1],
        }
    }

    /// Uniform in the box `[-h, h]^{2d+2}`.
    pub fn random<R: Rng>(d: usize, h: f64, rng: &mut R) -> Self {
        let c: Vec<f64> = (0..2 * d + 2).map(|_| rng.gen_range(-h..=h)).collect();
        Self::from_coords(&c)
    }

    /// Sup-norm distance of coordinates.
    pub fn distance(&self, other: &Self) -> f64 {
        self.coords()
            .iter()
            .zip(other.coords())
            .map(|(x, y)| (x - y).abs())
            .fold(0.0, f64::max)
    }
}

/// `ω₀(v, v') = Σ v_i v'_{i+d} − v_{i+d} v'_i`.
pub fn omega0<T: DualNum<Primitive = f64> + Copy>(v: &[T], w: &[T]) -> T {
    let d = v.len() / 2;
    let mut s = T::zero();
    for i in 0..d {
        s += v[i] * w[i + d] - v[i + d] * w[i];
    }
    s
}

/// The group law on flat coordinates, generic so that it can be
/// differentiated.
fn law<T: DualNum<Primitive = f64> + Copy>(x: &[T], y: &[T]) -> Vec<T> {
    let k = x.len();
    let (a, v, t) = (x[0], &x[1..k - 1], x[k - 1]);
    let (a2, v2, t2) = (y[0], &y[1..k - 1], y[k - 1]);
    let e1 = (-a2).exp();
    let e2 = (-a2 * 2.0).exp();
    let mut out = Vec::with_capacity(k);
    out.push(a + a2);
    out.extend(v.iter().zip(v2).map(|(&p, &q)| e1 * p + q));
    out.push(e2 * t + t2 + e1 * omega0(v, v2) * 0.5);
    out
}

fn check_dims(x: &JGroupElement, d: usize) -> Result<(), KahlerianError> {
    if x.v.len() != 2 * d {
        return Err(KahlerianError::Dimension {
            expected: 2 * d,
            got: x.v.len(),
        });
    }
    Ok(())
}

pub fn jgroup_mul(
    x: &JGroupElement,
    y: &JGroupElement,
    d: usize,
) -> Result<JGroupElement, KahlerianError> {
    check_dims(x, d)?;
    check_dims(y, d)?;
    Ok(JGroupElement::from_coords(&law(&x.coords(), &y.coords())))
}

/// `(a,v,t)⁻¹ = (−a, −e^{a}v, −e^{2a}t)`; the symplectic term vanishes
/// because `ω₀(v, v) = 0`.
pub fn jgroup_inv(x: &JGroupElement, d: usize) -> Result<JGroupElement, KahlerianError> {
    check_dims(x, d)?;
    let e1 = x.a.exp();
    Ok(JGroupElement {
        a: -x.a,
        v: x.v.iter().map(|p| -e1 * p).collect(),
        t: -(2.0 * x.a).exp() * x.t,
    })
}

/// `Δ_G(a, v, t) = e^{−(2d+2)a}`.
pub fn modular_function(x: &JGroupElement, d: usize) -> f64 {
    (-((2 * d + 2) as f64) * x.a).exp()
}

fn jacobian(f: impl Fn(&[Dual64]) -> Vec<Dual64>, at: &[f64]) -> DMatrix<f64> {
    let k = at.len();
    let mut jac = DMatrix::zeros(k, k);
    for j in 0..k {
        let x: Vec<Dual64> = at
            .iter()
            .enumerate()
            .map(|(i, &c)| Dual64::new(c, if i == j { 1.0 } else { 0.0 }))
            .collect();
        for (i, y) in f(&x).iter().enumerate() {
            jac[(i, j)] = y.eps;
        }
    }
    jac
}

/// Determinant of the Jacobian of `x ↦ gx` at `x`, by forward-mode
/// differentiation.
pub fn left_translation_det(g: &JGroupElement, x: &JGroupElement) -> f64 {
    let gc: Vec<Dual64> = g.coords().iter().map(|&c| Dual64::from(c)).collect();
    jacobian(|x| law(&gc, x), &x.coords()).determinant()
}

/// Determinant of the Jacobian of `x ↦ xg` at `x`.
pub fn right_translation_det(g: &JGroupElement, x: &JGroupElement) -> f64 {
    let gc: Vec<Dual64> = g.coords().iter().map(|&c| Dual64::from(c)).collect();
    jacobian(|x| law(x, &gc), &x.coords()).determinant()
}

/// `A(x,x') = (cosh a cosh a' cosh(a−a'))^d (cosh 2a cosh 2a' cosh(2a−2a'))^{1/2}`.
pub fn kernel_a(x: &JGroupElement, y: &JGroupElement) -> Result<f64, KahlerianError> {
    let d = x.d() as i32;
    let (a, b) = (x.a, y.a);
    let first = (a.cosh() * b.cosh() * (a - b).cosh()).powi(d);
    let second = ((2.0 * a).cosh() * (2.0 * b).cosh() * (2.0 * a - 2.0 * b).cosh()).sqrt();
    let v = first * second;
    if !v.is_finite() {
        return Err(KahlerianError::Overflow(a.abs().max(b.abs())));
    }
    Ok(v)
}

/// `S(x,x') = sinh(2a) t' − sinh(2a') t + cosh a cosh a' ω₀(v, v')`.
pub fn kernel_s(x: &JGroupElement, y: &JGroupElement) -> f64 {
    (2.0 * x.a).sinh() * y.t - (2.0 * y.a).sinh() * x.t
        + x.a.cosh() * y.a.cosh() * omega0(&x.v, &y.v)
}

/// `K_θ(x,y) = 4 (πθ)^{−2d−2} A(x,y) exp(2i S(x,y)/θ)`.
pub fn kernel_k(theta: f64, x: &JGroupElement, y: &JGroupElement) -> Result<C64, KahlerianError> {
    if theta == 0.0 {
        return Err(KahlerianError::ThetaZero);
    }
    let d = x.d() as i32;
    let pref = 4.0 / (PI * theta).powi(2 * d + 2);
    let amp = pref * kernel_a(x, y)?;
    if !amp.is_finite() {
        return Err(KahlerianError::Overflow(x.a.abs().max(y.a.abs())));
    }
    Ok(C64::from_polar(amp, 2.0 * kernel_s(x, y) / theta))
}

/// The second deformation parameter, a function on the reals.
pub type Tau<'a> = &'a dyn Fn(f64) -> C64;

/// `τ(x) = i x / (1 + x²)`, the default purely imaginary parameter.
pub fn default_tau(x: f64) -> C64 {
    C64::new(0.0, x / (1.0 + x * x))
}

/// The factor `exp{τ(2θ⁻¹ sinh 2a) + τ(2θ⁻¹ sinh(−2a')) − τ(2θ⁻¹ sinh(2a−2a'))}`.
pub fn tau_factor(theta: f64, tau: Tau, a: f64, b: f64) -> C64 {
    let s = |u: f64| 2.0 / theta * u.sinh();
    (tau(s(2.0 * a)) + tau(s(-2.0 * b)) - tau(s(2.0 * a - 2.0 * b))).exp()
}

/// `K_{θ,τ}(x, x') = K_θ(x, x') · tau_factor`.
pub fn kernel_ktau(
    theta: f64,
    tau: Option<Tau>,
    x: &JGroupElement,
    y: &JGroupElement,
) -> Result<C64, KahlerianError> {
    let k = kernel_k(theta, x, y)?;
    Ok(match tau {
        Some(tau) => k * tau_factor(theta, tau, x.a, y.a),
        None => k,
    })
}

/// Defects of `A(y⁻¹x, y⁻¹) = A(x,y)` (relative) and
/// `S(y⁻¹x, y⁻¹) = −S(x,y)` (relative to `max(1, |S|)`).
pub fn kernel_symmetry(
    x: &JGroupElement,
    y: &JGroupElement,
) -> Result<(f64, f64), KahlerianError> {
    let d = x.d();
    let yi = jgroup_inv(y, d)?;
    let yx = jgroup_mul(&yi, x, d)?;
    let a0 = kernel_a(x, y)?;
    let a1 = kernel_a(&yx, &yi)?;
    let s0 = kernel_s(x, y);
    let s1 = kernel_s(&yx, &yi);
    Ok(((a1 - a0).abs() / a0, (s1 + s0).abs() / s0.abs().max(1.0)))
}

/// Samples `τ` on a grid over `[-r, r]` and rejects a nonzero real part.
pub fn validate_tau(tau: Tau, r: f64) -> Result<(), KahlerianError> {
    for k in 0..=200 {
        let x = -r + 2.0 * r * k as f64 / 200.0;
        let re = tau(x).re;
        if re.abs() > 1e-14 {
            return Err(KahlerianError::NotImaginary { x, re });
        }
    }
    Ok(())
}

#[derive(Clone, Debug, PartialEq)]
pub struct KahlerianConfig {
    pub d: usize,
    pub theta: f64,
    pub samples: usize,
    pub seed: u64,
    pub half_width: f64,
}

impl Default for KahlerianConfig {
    fn default() -> Self {
        Self {
            d: 1,
            theta: 2.0,
            samples: 10_000,
            seed: 7,
            half_width: 2.0,
        }
    }
}

/// Generator for sample `i`: the master seed picks the key, the index the
/// stream, so samples are independent of evaluation order.
pub fn sample_rng(seed: u64, i: usize) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(i as u64);
    rng
}

fn rel(x: f64, y: f64) -> f64 {
    (x - y).abs() / y.abs().max(1.0)
}

fn crel(x: C64, y: C64) -> f64 {
    (x - y).norm() / y.norm().max(f64::MIN_POSITIVE)
}

#[derive(Default)]
struct Worst {
    identity: f64,
    inverse: f64,
    assoc: f64,
    modular: f64,
    left_jac: f64,
    right_jac: f64,
    modulus: f64,
    antisym: f64,
    conj: f64,
    lemma_a: f64,
    lemma_s: f64,
    lemma_k: f64,
    ratio: f64,
    ratio_modulus: f64,
    ratio_local: f64,
}

fn max_into(w: &mut f64, v: f64) {
    // NaN must surface as a failure
    if v.is_nan() || v > *w {
        *w = v;
    }
}

/// All pointwise checks over seeded samples in the box, with `τ` the
/// supplied parameter or `default_tau`.
pub fn verify(cfg: &KahlerianConfig, tau: Option<Tau>) -> Result<Vec<Check>, KahlerianError> {
    if cfg.theta == 0.0 {
        return Err(KahlerianError::ThetaZero);
    }
    let tau: Tau = tau.unwrap_or(&default_tau);
    let d = cfg.d;
    let theta = cfg.theta;
    let h = cfg.half_width;
    // the sinh arguments reach 2θ⁻¹ sinh(4h)
    validate_tau(tau, 2.0 / theta.abs() * (4.0 * h).sinh())?;
    let e = JGroupElement::identity(d);
    let mut w = Worst::default();
    for i in 0..cfg.samples {
        let mut rng = sample_rng(cfg.seed, i);
        let x = JGroupElement::random(d, h, &mut rng);
        let y = JGroupElement::random(d, h, &mut rng);
        let z = JGroupElement::random(d, h, &mut rng);
        let xe = jgroup_mul(&x, &e, d)?;
        let ex = jgroup_mul(&e, &x, d)?;
        max_into(&mut w.identity, xe.distance(&x).max(ex.distance(&x)));
        let xi = jgroup_inv(&x, d)?;
        let r = jgroup_mul(&x, &xi, d)?.distance(&e);
        let l = jgroup_mul(&xi, &x, d)?.distance(&e);
        max_into(&mut w.inverse, r.max(l));
        let xy_z = jgroup_mul(&jgroup_mul(&x, &y, d)?, &z, d)?;
        let x_yz = jgroup_mul(&x, &jgroup_mul(&y, &z, d)?, d)?;
        max_into(&mut w.assoc, xy_z.distance(&x_yz));
        let dxy = modular_function(&jgroup_mul(&x, &y, d)?, d);
        let prod = modular_function(&x, d) * modular_function(&y, d);
        max_into(&mut w.modular, (dxy - prod).abs() / prod);
        max_into(&mut w.left_jac, (left_translation_det(&x, &y) - 1.0).abs());
        let dg = modular_function(&x, d);
        max_into(&mut w.right_jac, (right_translation_det(&x, &y) - dg).abs() / dg);
        let k = kernel_k(theta, &x, &y)?;
        let modulus = 4.0 / (PI * theta).powi(2 * d as i32 + 2) * kernel_a(&x, &y)?;
        max_into(&mut w.modulus, (k.norm() - modulus).abs() / modulus);
        max_into(&mut w.antisym, rel(kernel_s(&y, &x), -kernel_s(&x, &y)));
        max_into(&mut w.conj, crel(k.conj(), kernel_k(-theta, &x, &y)?));
        let (da, ds) = kernel_symmetry(&x, &y)?;
        max_into(&mut w.lemma_a, da);
        max_into(&mut w.lemma_s, ds);
        let yi = jgroup_inv(&y, d)?;
        let kk = kernel_k(theta, &jgroup_mul(&yi, &x, d)?, &yi)?;
        max_into(&mut w.lemma_k, crel(kk.conj(), k));
        let kt = kernel_ktau(theta, Some(tau), &x, &y)?;
        let f = tau_factor(theta, tau, x.a, y.a);
        max_into(&mut w.ratio, crel(kt / k, f));
        max_into(&mut w.ratio_modulus, ((kt / k).norm() - 1.0).abs());
        // only (a, a') enter the ratio: move everything else
        let mut x2 = JGroupElement::random(d, h, &mut rng);
        let mut y2 = JGroupElement::random(d, h, &mut rng);
        x2.a = x.a;
        y2.a = y.a;
        let k2 = kernel_k(theta, &x2, &y2)?;
        let kt2 = kernel_ktau(theta, Some(tau), &x2, &y2)?;
        max_into(&mut w.ratio_local, crel(kt2 / k2, kt / k));
    }
    let k_ee = kernel_k(theta, &e, &e)?;
    let k_ee_want = C64::new(4.0 / (PI * theta).powi(2 * d as i32 + 2), 0.0);
    let kt_zero = kernel_ktau(theta, Some(&|_| C64::new(0.0, 0.0)), &e, &e)?;
    let x1 = JGroupElement {
        a: 1.0,
        ..JGroupElement::identity(d)
    };
    let p = Tol::Pointwise;
    Ok(vec![
        Check::new("x e = e x = x", "j-group-law", w.identity, p),
        Check::new("x x^-1 = x^-1 x = e", "j-group-law", w.inverse, p),
        Check::new("associativity", "j-group-law", w.assoc, p),
        Check::new("modular function at e", "modular-function", (modular_function(&e, d) - 1.0).abs(), p),
        Check::new(
            "modular function at (1,0,0)",
            "modular-function",
            (modular_function(&x1, d) - (-((2 * d + 2) as f64)).exp()).abs(),
            p,
        ),
        Check::new("modular function is a homomorphism", "modular-function", w.modular, p),
        Check::new("left translation has unit Jacobian", "modular-function", w.left_jac, p),
        Check::new(
            "right translation by g has Jacobian Delta(g)",
            "modular-function",
            w.right_jac,
            p,
        ),
        Check::new("A(e,e) = 1", "product-kernel", (kernel_a(&e, &e)? - 1.0).abs(), p),
        Check::new("S(e,e) = 0", "product-kernel", kernel_s(&e, &e).abs(), p),
        Check::new("K(e,e) = 4/(pi theta)^(2d+2)", "product-kernel", crel(k_ee, k_ee_want), p),
        Check::new("|K| = 4 (pi theta)^(-2d-2) A", "product-kernel", w.modulus, p),
        Check::new("S(y,x) = -S(x,y)", "product-kernel", w.antisym, p),
        Check::new("conj K_theta = K_-theta", "product-kernel", w.conj, p),
        Check::new("A(y^-1 x, y^-1) = A(x,y)", "kernel-symmetry", w.lemma_a, p),
        Check::new("S(y^-1 x, y^-1) = -S(x,y)", "kernel-symmetry", w.lemma_s, p),
        Check::new("conj K(y^-1 x, y^-1) = K(x,y)", "kernel-symmetry", w.lemma_k, p),
        Check::new("tau = 0 leaves K unchanged", "cohomology-factor", crel(kt_zero, k_ee), p),
        Check::new("K_tau / K equals the tau factor", "cohomology-factor", w.ratio, p),
        Check::new("the tau factor has modulus 1", "cohomology-factor", w.ratio_modulus, p),
        Check::new("the tau factor depends only on (a, a')", "cohomology-factor", w.ratio_local, p),
    ])
}
