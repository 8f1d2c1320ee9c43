//! Index-based dense kernels. Leg indices use row-major mixed radix: the
//! first leg is the most significant digit, so `kron(a, b)` acts on legs
//! `[a, b]` in that order.

use nalgebra::{DMatrix, DVector};
use num_complex::Complex64;

pub type C64 = Complex64;
pub type CMat = DMatrix<C64>;
pub type CVec = DVector<C64>;

pub const ZERO: C64 = C64::new(0.0, 0.0);
pub const ONE: C64 = C64::new(1.0, 0.0);

/// Operator-norm defect of exact identities.
pub const TOL_IDENTITY: f64 = 1e-10;
/// Projection-distance tolerance for span statements.
pub const TOL_SPAN: f64 = 1e-8;

/// Above this side length `op_norm` falls back to the Frobenius norm, which
/// bounds the operator norm from above.
pub const EXACT_NORM_LIMIT: usize = 64;

pub fn c(re: f64, im: f64) -> C64 {
    C64::new(re, im)
}

pub fn eye(n: usize) -> CMat {
    CMat::identity(n, n)
}

pub fn kron(a: &CMat, b: &CMat) -> CMat {
    a.kronecker(b)
}

pub fn kron_all(ops: &[&CMat]) -> CMat {
    let mut out = CMat::identity(1, 1);
    for op in ops {
        out = out.kronecker(op);
    }
    out
}

pub fn conj(a: &CMat) -> CMat {
    a.map(|z| z.conj())
}

/// Matrix unit `e_ij` of side `n`.
pub fn unit(n: usize, i: usize, j: usize) -> CMat {
    let mut m = CMat::zeros(n, n);
    m[(i, j)] = ONE;
    m
}

/// Flip `Σ: H_1 ⊗ H_2 → H_2 ⊗ H_1`.
pub fn flip(d1: usize, d2: usize) -> CMat {
    let n = d1 * d2;
    let mut m = CMat::zeros(n, n);
    for i in 0..d1 {
        for j in 0..d2 {
            m[(j * d1 + i, i * d2 + j)] = ONE;
        }
    }
    m
}

/// `Σ x Σ` for an operator on `H ⊗ H` with both legs of dimension `n`.
pub fn swap_legs(x: &CMat, n: usize) -> CMat {
    permute_legs(x, &[n, n], &[1, 0])
}

pub fn strides(dims: &[usize]) -> Vec<usize> {
    let mut s = vec![1; dims.len()];
    for k in (0..dims.len().saturating_sub(1)).rev() {
        s[k] = s[k + 1] * dims[k + 1];
    }
    s
}

fn digits(mut idx: usize, dims: &[usize]) -> Vec<usize> {
    let mut d = vec![0; dims.len()];
    for k in (0..dims.len()).rev() {
        d[k] = idx % dims[k];
        idx /= dims[k];
    }
    d
}

/// Reorder legs: output leg `k` is input leg `perm[k]`.
pub fn permute_legs(x: &CMat, dims: &[usize], perm: &[usize]) -> CMat {
    let n: usize = dims.iter().product();
    assert_eq!(x.nrows(), n);
    let new_dims: Vec<usize> = perm.iter().map(|&p| dims[p]).collect();
    let old_strides = strides(dims);
    // map new index -> old index
    let map: Vec<usize> = (0..n)
        .map(|idx| {
            let d = digits(idx, &new_dims);
            d.iter()
                .zip(perm)
                .map(|(&digit, &p)| digit * old_strides[p])
                .sum()
        })
        .collect();
    CMat::from_fn(n, n, |r, c| x[(map[r], map[c])])
}

/// Decomposition of every full index into (sub index over `legs`, base offset
/// over the remaining legs), plus the offsets of each sub index.
struct LegSplit {
    sub: Vec<usize>,
    base: Vec<usize>,
    offsets: Vec<usize>,
    sub_dim: usize,
}

fn split(legs: &[usize], dims: &[usize]) -> LegSplit {
    let n: usize = dims.iter().product();
    let st = strides(dims);
    let sub_dims: Vec<usize> = legs.iter().map(|&l| dims[l]).collect();
    let sub_dim: usize = sub_dims.iter().product();
    let sub_st = strides(&sub_dims);
    let mut sub = vec![0; n];
    let mut base = vec![0; n];
    for idx in 0..n {
        let d = digits(idx, dims);
        let mut s = 0;
        let mut off = 0;
        for (k, &l) in legs.iter().enumerate() {
            s += d[l] * sub_st[k];
            off += d[l] * st[l];
        }
        sub[idx] = s;
        base[idx] = idx - off;
    }
    let offsets = (0..sub_dim)
        .map(|s| {
            let d = digits(s, &sub_dims);
            legs.iter().zip(d).map(|(&l, digit)| digit * st[l]).sum()
        })
        .collect();
    LegSplit {
        sub,
        base,
        offsets,
        sub_dim,
    }
}

/// The operator `x` (acting on `legs`, in that order) extended by the
/// identity to the full space with leg dimensions `dims`.
pub fn place(x: &CMat, legs: &[usize], dims: &[usize]) -> CMat {
    let sp = split(legs, dims);
    assert_eq!(x.nrows(), sp.sub_dim, "placed operator has wrong size");
    let n: usize = dims.iter().product();
    let mut out = CMat::zeros(n, n);
    for col in 0..n {
        let b = sp.base[col];
        let sc = sp.sub[col];
        for sr in 0..sp.sub_dim {
            let v = x[(sr, sc)];
            if v != ZERO {
                out[(b + sp.offsets[sr], col)] = v;
            }
        }
    }
    out
}

/// `place(op, legs, dims) * y` without forming the placed operator.
pub fn apply_left(op: &CMat, legs: &[usize], dims: &[usize], y: &CMat) -> CMat {
    let sp = split(legs, dims);
    assert_eq!(op.nrows(), sp.sub_dim);
    let n = y.nrows();
    let m = y.ncols();
    let mut out = CMat::zeros(n, m);
    for col in 0..m {
        let ycol = y.column(col);
        let mut ocol = out.column_mut(col);
        for row in 0..n {
            let b = sp.base[row];
            let sr = sp.sub[row];
            let mut acc = ZERO;
            for s in 0..sp.sub_dim {
                let v = op[(sr, s)];
                if v != ZERO {
                    acc += v * ycol[b + sp.offsets[s]];
                }
            }
            ocol[row] = acc;
        }
    }
    out
}

/// `y * place(op, legs, dims)` without forming the placed operator.
pub fn apply_right(y: &CMat, op: &CMat, legs: &[usize], dims: &[usize]) -> CMat {
    apply_left(&op.adjoint(), legs, dims, &y.adjoint()).adjoint()
}

/// `place(u) * y * place(u)^*`.
pub fn conjugate(u: &CMat, legs: &[usize], dims: &[usize], y: &CMat) -> CMat {
    let left = apply_left(u, legs, dims, y);
    apply_right(&left, &u.adjoint(), legs, dims)
}

/// Slice `leg` of `x` against the functional `ω(a) = Tr(ρᵀ a)`.
pub fn slice(x: &CMat, leg: usize, dims: &[usize], rho: &CMat) -> CMat {
    let sp = split(&[leg], dims);
    let d = dims[leg];
    assert_eq!(rho.nrows(), d);
    let rest: Vec<usize> = dims
        .iter()
        .enumerate()
        .filter(|(k, _)| *k != leg)
        .map(|(_, &v)| v)
        .collect();
    let m: usize = rest.iter().product();
    // indices of the full space with the sliced leg at 0, in rest order
    let bases: Vec<usize> = (0..dims.iter().product::<usize>())
        .filter(|&idx| sp.sub[idx] == 0)
        .collect();
    debug_assert_eq!(bases.len(), m);
    let mut out = CMat::zeros(m, m);
    for i in 0..d {
        for j in 0..d {
            let w = rho[(i, j)];
            if w == ZERO {
                continue;
            }
            let oi = sp.offsets[i];
            let oj = sp.offsets[j];
            for (c, &bc) in bases.iter().enumerate() {
                for (r, &br) in bases.iter().enumerate() {
                    out[(r, c)] += w * x[(br + oi, bc + oj)];
                }
            }
        }
    }
    out
}

/// Matrix-unit slices `(ω_ij ⊗ ι)(x)` over the first leg, row-major in `(i, j)`.
pub fn first_leg_slices(x: &CMat, d: usize) -> Vec<CMat> {
    let m = x.nrows() / d;
    let mut out = Vec::with_capacity(d * d);
    for i in 0..d {
        for j in 0..d {
            out.push(x.view((i * m, j * m), (m, m)).into_owned());
        }
    }
    out
}

/// Matrix-unit slices `(ι ⊗ ω_ij)(x)` over the last leg.
pub fn last_leg_slices(x: &CMat, d: usize) -> Vec<CMat> {
    let m = x.nrows() / d;
    let mut out = Vec::with_capacity(d * d);
    for i in 0..d {
        for j in 0..d {
            out.push(CMat::from_fn(m, m, |r, c| x[(r * d + i, c * d + j)]));
        }
    }
    out
}

/// Largest singular value, or the Frobenius norm above [`EXACT_NORM_LIMIT`].
pub fn op_norm(x: &CMat) -> f64 {
    if x.nrows() == 0 || x.ncols() == 0 {
        return 0.0;
    }
    let fro = x.norm();
    if fro == 0.0 {
        return 0.0;
    }
    if x.nrows().max(x.ncols()) > EXACT_NORM_LIMIT {
        return fro;
    }
    let sv = x.clone().singular_values();
    sv.iter().cloned().fold(0.0, f64::max)
}

pub fn defect(a: &CMat, b: &CMat) -> f64 {
    op_norm(&(a - b))
}

/// `‖u*u - 1‖` and `‖uu* - 1‖`, whichever is larger.
pub fn unitarity_defect(u: &CMat) -> f64 {
    let n = u.nrows();
    let i = eye(n);
    defect(&(u.adjoint() * u), &i).max(defect(&(u * u.adjoint()), &i))
}

/// Frobenius inner product `Tr(a* b)`.
pub fn frob_inner(a: &CMat, b: &CMat) -> C64 {
    a.iter().zip(b.iter()).map(|(x, y)| x.conj() * y).sum()
}

/// Null space of the linear map whose images of the standard basis are the
/// given vectors. Returned as coefficient vectors.
pub fn null_space(images: &[Vec<C64>]) -> Vec<CVec> {
    if images.is_empty() {
        return vec![];
    }
    let rows = images[0].len();
    let cols: Vec<C64> = images.iter().flatten().cloned().collect();
    null_space_of(&CMat::from_vec(rows, images.len(), cols))
}

/// Null space of `m` from the eigenvectors of its Gram matrix.
pub fn null_space_of(m: &CMat) -> Vec<CVec> {
    if m.ncols() == 0 {
        return vec![];
    }
    let gram = adj_mul(m, m);
    let gram = (&gram + gram.adjoint()) * c(0.5, 0.0);
    let eig = gram.symmetric_eigen();
    let scale = eig.eigenvalues.iter().cloned().fold(1.0, f64::max);
    (0..m.ncols())
        .filter(|&k| eig.eigenvalues[k] <= 1e-10 * scale)
        .map(|k| eig.eigenvectors.column(k).into_owned())
        .collect()
}

/// Numerical rank of the columns of `m`, relative to the largest singular
/// value.
pub fn rank(m: &CMat, rel: f64) -> usize {
    if m.ncols() == 0 || m.nrows() == 0 {
        return 0;
    }
    let sv = m.singular_values();
    let top = sv.iter().cloned().fold(0.0, f64::max);
    if top == 0.0 {
        return 0;
    }
    sv.iter().filter(|&&s| s > rel * top).count()
}

/// Matrix square root and inverse square root of a positive definite matrix.
pub fn psd_sqrt(x: &CMat) -> CMat {
    let herm = (x + x.adjoint()) * c(0.5, 0.0);
    let eig = herm.symmetric_eigen();
    let d = CMat::from_diagonal(&eig.eigenvalues.map(|v| c(v.max(0.0).sqrt(), 0.0)));
    &eig.eigenvectors * d * eig.eigenvectors.adjoint()
}

/// `exp(i h)` for Hermitian `h`.
pub fn unitary_exp(h: &CMat) -> CMat {
    let herm = (h + h.adjoint()) * c(0.5, 0.0);
    let eig = herm.symmetric_eigen();
    let d = CMat::from_diagonal(&eig.eigenvalues.map(|v| C64::from_polar(1.0, v)));
    &eig.eigenvectors * d * eig.eigenvectors.adjoint()
}

pub fn vec_of(x: &CMat) -> Vec<C64> {
    x.as_slice().to_vec()
}

pub fn mat_of(v: &[C64], n: usize) -> CMat {
    CMat::from_column_slice(n, n, v)
}

/// `c ← alpha a b + beta c` on raw strided buffers through the blocked
/// kernel of `matrixmultiply`; the generic nalgebra product is an order of
/// magnitude slower.
#[allow(clippy::too_many_arguments)]
pub fn gemm(
    m: usize,
    k: usize,
    n: usize,
    alpha: C64,
    a: &[C64],
    rsa: usize,
    csa: usize,
    b: &[C64],
    rsb: usize,
    csb: usize,
    beta: C64,
    c: &mut [C64],
    rsc: usize,
    csc: usize,
) {
    if m == 0 || n == 0 {
        return;
    }
    assert!(k == 0 || a.len() > (m - 1) * rsa + (k - 1) * csa, "gemm: a too short");
    assert!(k == 0 || b.len() > (k - 1) * rsb + (n - 1) * csb, "gemm: b too short");
    assert!(c.len() > (m - 1) * rsc + (n - 1) * csc, "gemm: c too short");
    // SAFETY: Complex<f64> is repr(C) with layout [re, im], matching the
    // kernel's c64, and the bounds were checked above.
    unsafe {
        matrixmultiply::zgemm(
            matrixmultiply::CGemmOption::Standard,
            matrixmultiply::CGemmOption::Standard,
            m,
            k,
            n,
            [alpha.re, alpha.im],
            a.as_ptr() as *const [f64; 2],
            rsa as isize,
            csa as isize,
            b.as_ptr() as *const [f64; 2],
            rsb as isize,
            csb as isize,
            [beta.re, beta.im],
            c.as_mut_ptr() as *mut [f64; 2],
            rsc as isize,
            csc as isize,
        );
    }
}

/// Dense complex product.
pub fn mul(a: &CMat, b: &CMat) -> CMat {
    assert_eq!(a.ncols(), b.nrows(), "product shape mismatch");
    let (m, k, n) = (a.nrows(), a.ncols(), b.ncols());
    let mut out = CMat::zeros(m, n);
    gemm(m, k, n, ONE, a.as_slice(), 1, m, b.as_slice(), 1, k, ZERO, out.as_mut_slice(), 1, m);
    out
}

/// `a* b`.
pub fn adj_mul(a: &CMat, b: &CMat) -> CMat {
    mul(&a.adjoint(), b)
}

/// `u x u*`.
pub fn sandwich(u: &CMat, x: &CMat) -> CMat {
    mul(&mul(u, x), &u.adjoint())
}
