use super::linalg::{gemm, op_norm, CMat, CVec, C64, ONE, TOL_SPAN, ZERO};
use super::TensorError;

/// A linear span of square operators of fixed side, kept as a Frobenius
/// orthonormal basis.
#[derive(Clone, Debug)]
pub struct OperatorSpan {
    side: usize,
    dim: usize,
    /// Basis vectors, flattened column-major, stored as the columns of a
    /// `side² × dim` column-major matrix.
    data: Vec<C64>,
}

/// Relative residual below which a generator counts as dependent.
const DEPENDENCE: f64 = 1e-9;

/// Generators projected per matrix product in [`OperatorSpan::extend`].
const BLOCK: usize = 64;

/// Smallest block projected through the matrix kernel.
const GEMM_MIN: usize = 8;

impl OperatorSpan {
    pub fn empty(side: usize) -> Self {
        Self {
            side,
            dim: 0,
            data: Vec::new(),
        }
    }

    pub fn from_generators<'a, I>(side: usize, gens: I) -> Self
    where
        I: IntoIterator<Item = &'a CMat>,
    {
        let mut s = Self::empty(side);
        s.extend(gens);
        s
    }

    pub fn from_owned(side: usize, gens: Vec<CMat>) -> Self {
        Self::from_generators(side, gens.iter())
    }

    /// The full matrix algebra `B(C^side)`.
    pub fn full(side: usize) -> Self {
        let n = side * side;
        let mut data = vec![ZERO; n * n];
        for k in 0..n {
            data[k * n + k] = ONE;
        }
        Self { side, dim: n, data }
    }

    pub fn side(&self) -> usize {
        self.side
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    fn len(&self) -> usize {
        self.side * self.side
    }

    fn column(&self, k: usize) -> &[C64] {
        let n = self.len();
        &self.data[k * n..(k + 1) * n]
    }

    /// `Q* v` for a flattened `v`.
    fn inner(&self, v: &[C64]) -> Vec<C64> {
        let n = self.len();
        self.data
            .chunks_exact(n)
            .map(|col| col.iter().zip(v).map(|(q, x)| q.conj() * x).sum())
            .collect()
    }

    /// `out += alpha Q c`.
    fn combine_into(&self, c: &[C64], alpha: C64, out: &mut [C64]) {
        let n = self.len();
        for (col, &ck) in self.data.chunks_exact(n).zip(c) {
            let w = alpha * ck;
            if w != ZERO {
                out.iter_mut().zip(col).for_each(|(o, q)| *o += w * q);
            }
        }
    }

    /// Adds a generator; returns whether the span grew.
    pub fn push(&mut self, g: &CMat) -> bool {
        self.extend(std::iter::once(g)) == 1
    }

    /// Adds generators in order and returns how many enlarged the span.
    /// Projection onto the existing basis is done a block at a time as one
    /// matrix product, then each block is orthogonalized internally.
    pub fn extend<'a, I>(&mut self, gens: I) -> usize
    where
        I: IntoIterator<Item = &'a CMat>,
    {
        let mut added = 0;
        let mut block: Vec<C64> = Vec::new();
        let mut norms = Vec::new();
        for g in gens {
            assert_eq!(g.nrows(), self.side, "generator side mismatch");
            let norm0 = norm(g.as_slice());
            if norm0 <= 1e-13 {
                continue;
            }
            block.extend_from_slice(g.as_slice());
            norms.push(norm0);
            if norms.len() == BLOCK {
                added += self.absorb(&mut block, &norms);
                block.clear();
                norms.clear();
            }
        }
        if !norms.is_empty() {
            added += self.absorb(&mut block, &norms);
        }
        added
    }

    /// Classical Gram-Schmidt, applied twice, for a column-major block.
    fn absorb(&mut self, block: &mut [C64], norms: &[f64]) -> usize {
        let n = self.len();
        let m = norms.len();
        let k = self.dim;
        if k > 0 && m < GEMM_MIN {
            // the kernel repacks all of Q per call, which a thin block cannot repay
            for v in block.chunks_exact_mut(n) {
                for _ in 0..2 {
                    let c = self.inner(v);
                    self.combine_into(&c, -ONE, v);
                }
            }
        } else if k > 0 {
            let mut c = vec![ZERO; k * m];
            for _ in 0..2 {
                // c = Q* B = conj(Qᵀ conj(B)), then B -= Q c
                let bc: Vec<C64> = block.iter().map(|z| z.conj()).collect();
                gemm(k, n, m, ONE, &self.data, n, 1, &bc, 1, n, ZERO, &mut c, 1, k);
                c.iter_mut().for_each(|z| *z = z.conj());
                gemm(n, k, m, -ONE, &self.data, 1, n, &c, 1, k, ONE, block, 1, n);
            }
        }
        let mut added = 0;
        for (j, &norm0) in norms.iter().enumerate() {
            let v = &mut block[j * n..(j + 1) * n];
            for _ in 0..2 {
                for q in 0..added {
                    let col = &self.data[(k + q) * n..(k + q + 1) * n];
                    let d: C64 = col.iter().zip(v.iter()).map(|(a, b)| a.conj() * b).sum();
                    v.iter_mut().zip(col).for_each(|(x, a)| *x -= d * a);
                }
            }
            let r = norm(v);
            if r <= DEPENDENCE * norm0 {
                continue;
            }
            self.data.extend(v.iter().map(|z| z / r));
            self.dim += 1;
            added += 1;
        }
        added
    }

    pub fn basis(&self) -> Vec<CMat> {
        (0..self.dim).map(|k| self.basis_element(k)).collect()
    }

    pub fn basis_element(&self, k: usize) -> CMat {
        CMat::from_column_slice(self.side, self.side, self.column(k))
    }

    /// Coordinates of the orthogonal projection of `x`.
    pub fn coords(&self, x: &CMat) -> CVec {
        CVec::from_vec(self.inner(x.as_slice()))
    }

    pub fn project(&self, x: &CMat) -> CMat {
        let c = self.inner(x.as_slice());
        let mut out = vec![ZERO; self.len()];
        self.combine_into(&c, ONE, &mut out);
        CMat::from_vec(self.side, self.side, out)
    }

    /// Frobenius distance from `x` to the span, relative to `max(1, ‖x‖)`.
    pub fn residual(&self, x: &CMat) -> f64 {
        let c = self.inner(x.as_slice());
        let n2 = x.norm_squared();
        let c2: f64 = c.iter().map(|z| z.norm_sqr()).sum();
        let r2 = (n2 - c2).max(0.0);
        // recompute directly when cancellation makes the shortcut unreliable
        let r = if r2 < 1e-12 * n2.max(1.0) {
            let mut d = x.as_slice().to_vec();
            self.combine_into(&c, -ONE, &mut d);
            norm(&d)
        } else {
            r2.sqrt()
        };
        r / x.norm().max(1.0)
    }

    pub fn contains(&self, x: &CMat) -> bool {
        self.residual(x) <= TOL_SPAN
    }

    fn q(&self) -> CMat {
        CMat::from_column_slice(self.len(), self.dim, &self.data)
    }

    /// Operator norm of the difference of the two orthogonal projections.
    pub fn distance(&self, other: &OperatorSpan) -> Result<f64, TensorError> {
        if self.side != other.side {
            return Err(TensorError::AmbientMismatch);
        }
        if self.dim() != other.dim() {
            return Ok(1.0);
        }
        if self.dim() == 0 {
            return Ok(0.0);
        }
        // sine of the largest principal angle, from the residual of one basis
        // against the other (avoids the cancellation in sqrt(1 - cos²))
        let qa = self.q();
        let qb = other.q();
        let r = &qb - super::linalg::mul(&qa, &super::linalg::adj_mul(&qa, &qb));
        let g = super::linalg::adj_mul(&r, &r);
        let top = g
            .symmetric_eigen()
            .eigenvalues
            .iter()
            .cloned()
            .fold(0.0, f64::max);
        Ok(top.sqrt().min(1.0))
    }

    pub fn equal(&self, other: &OperatorSpan) -> bool {
        matches!(self.distance(other), Ok(d) if d <= TOL_SPAN)
    }

    /// Largest residual of a basis element of `other` against `self`.
    pub fn inclusion_defect(&self, other: &OperatorSpan) -> f64 {
        other
            .basis()
            .iter()
            .map(|b| self.residual(b))
            .fold(0.0, f64::max)
    }

    pub fn includes(&self, other: &OperatorSpan) -> bool {
        other.side == self.side && self.inclusion_defect(other) <= TOL_SPAN
    }

    /// Worst residual of `x*` and of all products `xy` against the span.
    pub fn algebra_defect(&self) -> f64 {
        let b = self.basis();
        let mut worst: f64 = 0.0;
        for x in &b {
            worst = worst.max(self.residual(&x.adjoint()));
            for y in &b {
                worst = worst.max(self.residual(&(super::linalg::mul(x, y))));
            }
        }
        worst
    }

    /// Dimension of the center, from the null space of `z ↦ ([z, b_k])_k`.
    pub fn center_dim(&self) -> usize {
        let b = self.basis();
        let images: Vec<Vec<_>> = b
            .iter()
            .map(|z| {
                b.iter()
                    .flat_map(|y| {
                        let comm = z * y - y * z;
                        comm.as_slice().to_vec()
                    })
                    .collect()
            })
            .collect();
        super::linalg::null_space(&images).len()
    }

    /// Largest operator norm defect `‖x - P(x)‖` over a list.
    pub fn worst_residual(&self, xs: &[CMat]) -> f64 {
        xs.iter().map(|x| self.residual(x)).fold(0.0, f64::max)
    }
}

/// `span{xy : x ∈ a, y ∈ b}` computed from basis products.
pub fn product_span(a: &OperatorSpan, b: &OperatorSpan) -> OperatorSpan {
    let mut out = OperatorSpan::empty(a.side());
    let bb = b.basis();
    let full = a.side() * a.side();
    for x in a.basis() {
        let row: Vec<CMat> = bb.iter().map(|y| super::linalg::mul(&x, y)).collect();
        out.extend(&row);
        if out.dim() == full {
            break;
        }
    }
    out
}

/// `op_norm` of a difference, re-exported for span-level reports.
pub fn norm_defect(a: &CMat, b: &CMat) -> f64 {
    op_norm(&(a - b))
}

/// Frobenius distance from `x` to `a ⊗ b`, relative to `max(1, ‖x‖)`,
/// without building the tensor product span.
pub fn tensor_residual(a: &OperatorSpan, b: &OperatorSpan, x: &CMat) -> f64 {
    let n = a.side();
    let blocks = super::linalg::first_leg_slices(x, n);
    let mut proj = CMat::zeros(x.nrows(), x.ncols());
    for m in a.basis() {
        let mut s = CMat::zeros(b.side(), b.side());
        for i in 0..n {
            for j in 0..n {
                s += &blocks[i * n + j] * m[(i, j)].conj();
            }
        }
        proj += super::linalg::kron(&m, &b.project(&s));
    }
    (x - proj).norm() / x.norm().max(1.0)
}

fn norm(v: &[C64]) -> f64 {
    v.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt()
}
