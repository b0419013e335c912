//! Dense complex-matrix kernel.
//!
//! Every algebraic condition elsewhere in the crate is phrased through the
//! handful of predicates here: numerical rank, the Moore–Penrose inverse,
//! orthogonal range projectors, column-space equality and a relative
//! Frobenius residual.

mod matrix;
pub mod svd;

use alloc::vec::Vec;

pub use matrix::{CMatrix, C64};

use crate::error::Result;

/// Numerical tolerances shared by every computation and verifier.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Tolerances {
    /// Relative singular-value cutoff: `σ > rank · σ_max` counts toward rank.
    pub rank: f64,
    /// Bound on the relative Frobenius residual of an equality check.
    pub eq: f64,
    /// Bound on the normalized nilpotency residual.
    pub nil: f64,
}

impl Default for Tolerances {
    fn default() -> Self {
        Self {
            rank: 64.0 * f64::EPSILON,
            eq: 1e-8,
            nil: 1e-8,
        }
    }
}

impl Tolerances {
    /// True when every field is finite and strictly positive.
    pub fn is_valid(&self) -> bool {
        [self.rank, self.eq, self.nil]
            .iter()
            .all(|t| t.is_finite() && *t > 0.0)
    }
}

/// Conjugate transpose.
pub fn conj_transpose(m: &CMatrix) -> CMatrix {
    m.adjoint()
}

/// Numerical rank.
pub fn rank(m: &CMatrix, tol: &Tolerances) -> usize {
    rank_at_scale(m, 0.0, tol)
}

/// Numerical rank with the cutoff measured against `max(σ_max, scale)`.
pub fn rank_at_scale(m: &CMatrix, scale: f64, tol: &Tolerances) -> usize {
    svd::svd(m).rank_at_scale(tol.rank, scale)
}

/// Largest singular value.
pub fn spectral_norm(m: &CMatrix) -> f64 {
    svd::svd(m).singular_values.first().copied().unwrap_or(0.0)
}

/// `A^k` with its natural scale `‖A‖₂^k`, the reference for rank cutoffs
/// on powers.
pub fn scaled_power(a: &CMatrix, k: usize) -> Result<(CMatrix, f64)> {
    Ok((a.pow(k)?, libm::pow(spectral_norm(a), k as f64)))
}

/// Ranks of `A^0, …, A^k`, the `j`-th cut at `rankTol · ‖A‖₂^j`.
pub fn power_ranks(a: &CMatrix, k: usize, tol: &Tolerances) -> Vec<usize> {
    let norm = spectral_norm(a);
    let mut ranks = alloc::vec![a.rows()];
    let mut power = CMatrix::identity(a.rows());
    let mut scale = 1.0;
    for _ in 0..k {
        power = power.matmul(a);
        scale *= norm;
        ranks.push(rank_at_scale(&power, scale, tol));
    }
    ranks
}

/// Orthonormal basis of `range(A^k)`, as column vectors.
///
/// Dimensions come from [`power_ranks`]; the subspaces are built as
/// `U_j = orth(A U_{j−1})` from `U_0 = I`, keeping the leading
/// `rank(A^j)` directions. Rotating an orthonormal basis loses only
/// `ε ‖A‖ / σ` per step, whereas the singular vectors of a formed power
/// are accurate to `ε ‖A‖^k / σ(A^k)`.
pub fn power_range_basis(a: &CMatrix, k: usize, tol: &Tolerances) -> Vec<Vec<C64>> {
    let n = a.rows();
    let mut basis: Vec<Vec<C64>> = CMatrix::identity(n).columns();
    for r in power_ranks(a, k, tol).into_iter().skip(1) {
        let r = r.min(basis.len());
        if r == 0 {
            return Vec::new();
        }
        let image = a.matmul(&CMatrix::from_columns(n, &basis));
        basis = svd::svd(&image).u.into_iter().take(r).collect();
    }
    basis
}

/// Orthogonal projector `U U^*` onto the span of orthonormal `basis`.
pub fn basis_projector(n: usize, basis: &[Vec<C64>]) -> CMatrix {
    let mut p = CMatrix::zeros(n, n);
    for u in basis {
        for i in 0..n {
            for j in 0..n {
                p[(i, j)] += u[i] * u[j].conj();
            }
        }
    }
    p
}

/// Moore–Penrose inverse via truncated SVD.
pub fn pinv(m: &CMatrix, tol: &Tolerances) -> CMatrix {
    pinv_at_scale(m, 0.0, tol)
}

/// [`pinv`] with the truncation of [`rank_at_scale`].
pub fn pinv_at_scale(m: &CMatrix, scale: f64, tol: &Tolerances) -> CMatrix {
    let d = svd::svd(m);
    let r = d.rank_at_scale(tol.rank, scale);
    pinv_leading(m, &d, r)
}

/// Moore–Penrose inverse of a computed idempotent.
///
/// Singular values of an idempotent are either zero or at least one, so
/// the cutoff is one half regardless of how much rounding the zero ones
/// picked up.
pub fn pinv_idempotent(m: &CMatrix) -> CMatrix {
    let d = svd::svd(m);
    let r = d.singular_values.iter().filter(|&&s| s > 0.5).count();
    pinv_leading(m, &d, r)
}

/// Rank of a computed idempotent: singular values above one half.
pub fn idempotent_rank(m: &CMatrix) -> usize {
    svd::svd(m).singular_values.iter().filter(|&&s| s > 0.5).count()
}

fn pinv_leading(m: &CMatrix, d: &svd::Svd, r: usize) -> CMatrix {
    let (rows, cols) = m.shape();
    let mut out = CMatrix::zeros(cols, rows);
    for k in 0..r {
        let inv = 1.0 / d.singular_values[k];
        let (u, v) = (&d.u[k], &d.v[k]);
        for i in 0..cols {
            let vi = v[i] * inv;
            for j in 0..rows {
                out[(i, j)] += vi * u[j].conj();
            }
        }
    }
    out
}

/// `m` with singular values at or below the [`rank_at_scale`] cutoff removed.
///
/// Compressions such as `e M e` of a matrix of norm `scale` carry rounding
/// of order `ε · scale`; truncating it keeps later rank decisions, which
/// are relative to the compression's own norm, from promoting noise.
pub fn truncate_at_scale(m: &CMatrix, scale: f64, tol: &Tolerances) -> CMatrix {
    let d = svd::svd(m);
    let r = d.rank_at_scale(tol.rank, scale);
    if r == m.rows().min(m.cols()) {
        return m.clone();
    }
    let mut out = CMatrix::zeros(m.rows(), m.cols());
    for k in 0..r {
        let (u, v) = (&d.u[k], &d.v[k]);
        for i in 0..m.rows() {
            let ui = u[i] * d.singular_values[k];
            for j in 0..m.cols() {
                out[(i, j)] += ui * v[j].conj();
            }
        }
    }
    out
}

/// Product of `factors` with rounding below `rankTol · Π‖f‖₂` removed, for
/// products whose rank feeds a later decision.
pub fn clean_product(factors: &[&CMatrix], tol: &Tolerances) -> CMatrix {
    let scale: f64 = factors.iter().map(|f| spectral_norm(f)).product();
    truncate_at_scale(&CMatrix::product(factors), scale, tol)
}

/// Orthonormal basis of the column space, as column vectors.
pub fn range_basis(m: &CMatrix, tol: &Tolerances) -> Vec<Vec<C64>> {
    let d = svd::svd(m);
    let r = d.rank(tol.rank);
    d.u.into_iter().take(r).collect()
}

/// Orthonormal basis of the null space `{v : M v = 0}`.
pub fn null_basis(m: &CMatrix, tol: &Tolerances) -> Vec<Vec<C64>> {
    let d = svd::svd(m);
    let r = d.rank(tol.rank);
    d.v.into_iter().skip(r).collect()
}

/// Orthogonal projector `P = P² = P*` onto the column space of `m`.
pub fn range_projector(m: &CMatrix, tol: &Tolerances) -> CMatrix {
    range_projector_at_scale(m, 0.0, tol)
}

/// [`range_projector`] with the cutoff of [`rank_at_scale`].
pub fn range_projector_at_scale(m: &CMatrix, scale: f64, tol: &Tolerances) -> CMatrix {
    let d = svd::svd(m);
    let r = d.rank_at_scale(tol.rank, scale);
    basis_projector(m.rows(), &d.u[..r])
}

/// True iff `range(x) = range(y)`, decided as `rank x = rank y = rank [x | y]`.
///
/// Equal column spaces are the same thing as equal left annihilators, so
/// this predicate realizes every annihilator equality in the crate.
pub fn range_equal(x: &CMatrix, y: &CMatrix, tol: &Tolerances) -> bool {
    assert_eq!(x.rows(), y.rows(), "row counts differ");
    let rx = rank(x, tol);
    rx == rank(y, tol) && rx == rank(&x.hstack(y), tol)
}

/// True iff `range(x) ⊆ range(y)`.
pub fn range_contained(x: &CMatrix, y: &CMatrix, tol: &Tolerances) -> bool {
    assert_eq!(x.rows(), y.rows(), "row counts differ");
    rank(y, tol) == rank(&y.hstack(x), tol)
}

/// Relative residual `‖x − y‖_F / (1 + ‖x‖_F + ‖y‖_F)`.
pub fn residual(x: &CMatrix, y: &CMatrix) -> f64 {
    assert_eq!(x.shape(), y.shape(), "shape mismatch");
    (x - y).frobenius_norm() / (1.0 + x.frobenius_norm() + y.frobenius_norm())
}

/// `(residual(x, y) <= eq, residual(x, y))`.
pub fn approx_equal(x: &CMatrix, y: &CMatrix, tol: &Tolerances) -> (bool, f64) {
    let r = residual(x, y);
    (r <= tol.eq, r)
}

/// `m^k`; `m^0 = I`.
pub fn mat_pow(m: &CMatrix, k: usize) -> Result<CMatrix> {
    m.pow(k)
}

/// Normalized nilpotency residual `‖N^n‖_F / max(1, ‖N‖_F)^n` with `n` the order.
pub fn nilpotency_residual(m: &CMatrix) -> Result<f64> {
    let n = m.ensure_square()?;
    let scale = libm::pow(m.frobenius_norm().max(1.0), n as f64);
    Ok(m.pow(n)?.frobenius_norm() / scale)
}
