//! One-sided (Hestenes) Jacobi SVD for complex matrices.
//!
//! Columns of the working copy are rotated pairwise until mutually
//! orthogonal; the accumulated rotations form `V`, the final column norms are
//! the singular values and the normalized columns are the left singular
//! vectors. The method is slow for large matrices but accurate to high
//! relative precision, which is what rank decisions need at this scale.

use alloc::vec;
use alloc::vec::Vec;

use super::matrix::{CMatrix, C64};

const MAX_SWEEPS: usize = 100;

/// Thin singular value decomposition `M = U Σ V^*`.
#[derive(Debug, Clone)]
pub struct Svd {
    /// Singular values, non-increasing.
    pub singular_values: Vec<f64>,
    /// Left singular vectors, one per singular value. Entries for zero
    /// singular values are zero vectors.
    pub u: Vec<Vec<C64>>,
    /// Right singular vectors; a full orthonormal basis of `C^cols`.
    pub v: Vec<Vec<C64>>,
}

fn dot(x: &[C64], y: &[C64]) -> C64 {
    x.iter().zip(y).fold(C64::new(0.0, 0.0), |acc, (a, b)| acc + a.conj() * b)
}

fn norm_sqr(x: &[C64]) -> f64 {
    x.iter().map(|z| z.norm_sqr()).sum()
}

// Applies [c, s e^{-iφ}; -s, c e^{-iφ}]-type rotation to the pair (x, y):
// x' = c x - s ỹ, y' = s x + c ỹ with ỹ = y e^{-iφ}.
fn rotate(x: &mut [C64], y: &mut [C64], c: f64, s: f64, phase: C64) {
    for (a, b) in x.iter_mut().zip(y.iter_mut()) {
        let bt = *b * phase;
        let xa = *a;
        *a = xa * c - bt * s;
        *b = xa * s + bt * c;
    }
}

/// Computes the SVD of `m`.
pub fn svd(m: &CMatrix) -> Svd {
    let (rows, cols) = m.shape();
    let mut a: Vec<Vec<C64>> = (0..cols).map(|j| m.column(j)).collect();
    let mut v: Vec<Vec<C64>> = (0..cols)
        .map(|j| {
            let mut e = vec![C64::new(0.0, 0.0); cols];
            e[j] = C64::new(1.0, 0.0);
            e
        })
        .collect();

    let eps = f64::EPSILON;
    for _ in 0..MAX_SWEEPS {
        let mut rotated = false;
        for p in 0..cols {
            for q in (p + 1)..cols {
                let alpha = norm_sqr(&a[p]);
                let beta = norm_sqr(&a[q]);
                if alpha == 0.0 || beta == 0.0 {
                    continue;
                }
                let gamma = dot(&a[p], &a[q]);
                let g = gamma.norm();
                if g <= eps * libm::sqrt(alpha * beta) || g == 0.0 {
                    continue;
                }
                rotated = true;
                let zeta = (beta - alpha) / (2.0 * g);
                let t = zeta.signum() / (libm::fabs(zeta) + libm::sqrt(1.0 + zeta * zeta));
                let c = 1.0 / libm::sqrt(1.0 + t * t);
                let s = c * t;
                let phase = (gamma / g).conj();
                let (lo, hi) = a.split_at_mut(q);
                rotate(&mut lo[p], &mut hi[0], c, s, phase);
                let (lo, hi) = v.split_at_mut(q);
                rotate(&mut lo[p], &mut hi[0], c, s, phase);
            }
        }
        if !rotated {
            break;
        }
    }

    let norms: Vec<f64> = a.iter().map(|col| libm::sqrt(norm_sqr(col))).collect();
    let mut order: Vec<usize> = (0..cols).collect();
    order.sort_by(|&i, &j| norms[j].total_cmp(&norms[i]));

    let mut singular_values = Vec::with_capacity(cols);
    let mut u = Vec::with_capacity(cols);
    let mut v_sorted = Vec::with_capacity(cols);
    for &j in &order {
        let sigma = norms[j];
        singular_values.push(sigma);
        if sigma > 0.0 {
            u.push(a[j].iter().map(|z| z / sigma).collect());
        } else {
            u.push(vec![C64::new(0.0, 0.0); rows]);
        }
        v_sorted.push(v[j].clone());
    }
    Svd {
        singular_values,
        u,
        v: v_sorted,
    }
}

impl Svd {
    /// Number of singular values above `rel_tol` times the largest.
    pub fn rank(&self, rel_tol: f64) -> usize {
        self.rank_at_scale(rel_tol, 0.0)
    }

    /// Number of singular values above `rel_tol · max(σ_max, scale)`.
    ///
    /// A power `A^k` carries rounding of order `ε ‖A‖^k`, so its rank is
    /// judged against `scale = ‖A‖^k` rather than its own, possibly
    /// rounding-sized, largest singular value.
    pub fn rank_at_scale(&self, rel_tol: f64, scale: f64) -> usize {
        let smax = self.singular_values.first().copied().unwrap_or(0.0).max(scale);
        if smax == 0.0 {
            return 0;
        }
        self.singular_values
            .iter()
            .take_while(|&&s| s > rel_tol * smax)
            .count()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn reconstructs_complex_matrix() {
        let m = CMatrix::from_rows(&[
            [C64::new(1.0, 2.0), C64::new(0.0, -1.0), C64::new(3.0, 0.5)],
            [C64::new(-2.0, 0.0), C64::new(1.0, 1.0), C64::new(0.0, 0.0)],
        ]);
        let d = svd(&m);
        let mut recon = CMatrix::zeros(2, 3);
        for k in 0..3 {
            let s = d.singular_values[k];
            for i in 0..2 {
                for j in 0..3 {
                    recon[(i, j)] += d.u[k][i] * s * d.v[k][j].conj();
                }
            }
        }
        assert!((&recon - &m).frobenius_norm() < 1e-13);
        assert_eq!(d.rank(1e-12), 2);
        assert!(d.singular_values.windows(2).all(|w| w[0] >= w[1]));
    }

    #[test]
    fn zero_matrix_has_rank_zero() {
        let d = svd(&CMatrix::zeros(3, 3));
        assert_eq!(d.rank(1e-12), 0);
    }
}
