use alloc::format;
use alloc::vec::Vec;

use super::{ReportBuilder, VerificationReport};
use crate::error::{Error, Result};
use crate::inverses::{self, zero_residual};
use crate::matcore::{self, residual, CMatrix, Tolerances, C64};

/// Largest order accepted by [`verify_cor22`]; the check works in `C^{n²}`.
pub const COR22_MAX_DIM: usize = 8;

// Projector onto the left null space {y : y^* m = 0}; two matrices have the
// same left annihilator iff these agree.
fn left_null_projector(m: &CMatrix, tol: &Tolerances) -> CMatrix {
    &CMatrix::identity(m.rows()) - &matcore::range_projector(m, tol)
}

/// Checks that the characterizations of `x = A^⊙D` agree on `(A, X)`.
///
/// Condition sets:
/// (i) `X = A^⊙D`;
/// (ii) `XAX = X`, `(AX)^* = AX`, `(XA − I)A^D = 0`, `range X ⊆ range A^D`;
/// (iii) `XAX = X`, `range X = range X^* = range A^D`;
/// (iv) `XAX = X` with the left annihilators of `X`, `X^*` and `A^D` compared
/// directly through their projectors.
pub fn verify_thm21(a: &CMatrix, x: &CMatrix, tol: &Tolerances) -> Result<VerificationReport> {
    a.ensure_square()?;
    a.ensure_same_shape(x)?;
    let n = a.rows();
    let ad = inverses::drazin(a, tol)?.dinv;
    let ce = inverses::core_ep_inverse(a, tol)?;
    let ax = a.matmul(x);

    let r_i = residual(x, &ce);
    let xax = residual(&CMatrix::product(&[x, a, x]), x);
    let herm = residual(&ax.adjoint(), &ax);
    let fix = zero_residual(&(&x.matmul(a) - &CMatrix::identity(n)).matmul(&ad));
    let contained = matcore::range_contained(x, &ad, tol);
    let range_x = matcore::range_equal(x, &ad, tol);
    let range_xs = matcore::range_equal(&x.adjoint(), &ad, tol);
    let lad = left_null_projector(&ad, tol);
    let ann_x = residual(&left_null_projector(x, tol), &lad);
    let ann_xs = residual(&left_null_projector(&x.adjoint(), tol), &lad);

    let c1 = r_i <= tol.eq;
    let c2 = xax <= tol.eq && herm <= tol.eq && fix <= tol.eq && contained;
    let c3 = xax <= tol.eq && range_x && range_xs;
    let c4 = xax <= tol.eq && ann_x <= tol.eq && ann_xs <= tol.eq;

    let mut rb = ReportBuilder::new("thm2.1", tol.eq);
    rb.conclusion_flag("agreement_i_ii_iii", c1 == c2 && c2 == c3);
    rb.conclusion_flag("agreement_iv", c3 == c4);
    rb.note(format!("(i) x = core-EP inverse: {c1} (residual {r_i:e})"));
    rb.note(format!(
        "(ii) xax = x ({xax:e}), (ax)* = ax ({herm:e}), (xa - 1)a^d = 0 ({fix:e}), range x in range a^d ({contained}): {c2}"
    ));
    rb.note(format!(
        "(iii) xax = x, range x = range a^d ({range_x}), range x* = range a^d ({range_xs}): {c3}"
    ));
    rb.note(format!(
        "(iv) annihilator projectors l(x) vs l(a^d) {ann_x:e}, l(x*) vs l(a^d) {ann_xs:e}: {c4}"
    ));
    rb.note(format!("characterization holds: {}", c1 && c2 && c3 && c4));
    Ok(rb.finish())
}

struct Sum {
    dim_left: usize,
    dim_right: usize,
    stacked_rank: usize,
}

fn direct_sum(left: &[Vec<C64>], right: &[Vec<C64>], ambient: usize, tol: &Tolerances) -> Sum {
    let cols: Vec<Vec<C64>> = left.iter().chain(right).cloned().collect();
    let stacked_rank = if cols.is_empty() {
        0
    } else {
        matcore::rank(&CMatrix::from_columns(ambient, &cols), tol)
    };
    Sum {
        dim_left: left.len(),
        dim_right: right.len(),
        stacked_rank,
    }
}

/// Checks `M_n = A^D M_n ⊕ ℓ(A^D) = (A^D)^* M_n ⊕ ℓ(A^D)` and the mirrored
/// right-sided decompositions in the `n²`-dimensional matrix space.
pub fn verify_cor22(a: &CMatrix, tol: &Tolerances) -> Result<VerificationReport> {
    let n = a.ensure_square()?;
    if n > COR22_MAX_DIM {
        return Err(Error::DimensionCap {
            dim: n,
            cap: COR22_MAX_DIM,
        });
    }
    let ad = inverses::drazin(a, tol)?.dinv;
    let ads = ad.adjoint();
    let id = CMatrix::identity(n);
    let n2 = n * n;

    // vec(M X) = (I ⊗ M) vec X and vec(X M) = (M^T ⊗ I) vec X.
    let left_mul = |m: &CMatrix| id.kron(m);
    let right_mul = |m: &CMatrix| m.transpose().kron(&id);

    let left_ann = matcore::null_basis(&right_mul(&ad), tol);
    let right_ann = matcore::null_basis(&left_mul(&ad), tol);

    let cases = [
        ("ad_A+l(ad)", matcore::range_basis(&left_mul(&ad), tol), &left_ann),
        ("ad*_A+l(ad)", matcore::range_basis(&left_mul(&ads), tol), &left_ann),
        ("A_ad+r(ad)", matcore::range_basis(&right_mul(&ad), tol), &right_ann),
        ("A_ad*+r(ad)", matcore::range_basis(&right_mul(&ads), tol), &right_ann),
    ];

    let mut rb = ReportBuilder::new("cor2.2", tol.eq);
    // Same pairs with the annihilator taken on the other side:
    // {X : A^D X = 0} for the right ideals and {X : X A^D = 0} for the left ones.
    let swapped = [&right_ann, &right_ann, &left_ann, &left_ann];
    for ((name, sub, _), alt) in cases.iter().zip(swapped) {
        let s = direct_sum(sub, alt, n2, tol);
        rb.note(format!(
            "{name} with opposite-side annihilator: dim {} + {}, stacked rank {} of {n2}",
            s.dim_left, s.dim_right, s.stacked_rank
        ));
    }
    for (name, sub, ann) in &cases {
        let s = direct_sum(sub, ann, n2, tol);
        rb.conclusion_flag(&format!("{name}.dimension"), s.dim_left + s.dim_right == n2);
        rb.conclusion_flag(&format!("{name}.spans"), s.stacked_rank == n2);
        rb.note(format!(
            "{name}: dim {} + {} = {}, stacked rank {} of {n2}",
            s.dim_left,
            s.dim_right,
            s.dim_left + s.dim_right,
            s.stacked_rank
        ));
    }
    Ok(rb.finish())
}

/// Checks the projector `q` with `ℓ(A^D) = ℓ(q)`, `A^⊙D = A^D q`, and the
/// uniqueness of `q` against `A^D (A^D)^⊙#`.
pub fn verify_thm23(a: &CMatrix, tol: &Tolerances) -> Result<VerificationReport> {
    a.ensure_square()?;
    let ad = inverses::drazin(a, tol)?.dinv;
    let q = matcore::range_projector(&ad, tol);
    let ce = inverses::core_ep_inverse(a, tol)?;
    let q_alt = ad.matmul(&inverses::core_inverse(&ad, tol)?);

    let mut rb = ReportBuilder::new("thm2.3", tol.eq);
    rb.conclusion("q_idempotent", residual(&q.matmul(&q), &q), tol.eq);
    rb.conclusion("q_hermitian", residual(&q.adjoint(), &q), tol.eq);
    rb.conclusion_flag("annihilator_equal", matcore::range_equal(&ad, &q, tol));
    rb.conclusion("core_ep_eq_ad_q", residual(&ce, &ad.matmul(&q)), tol.eq);
    rb.conclusion("q_unique", residual(&q, &q_alt), tol.eq);
    rb.note(format!("rank q = {}", matcore::rank(&q, tol)));
    Ok(rb.finish())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn tol() -> Tolerances {
        Tolerances::default()
    }

    fn idem() -> CMatrix {
        CMatrix::from_real_rows(&[[1.0, 1.0], [0.0, 0.0]])
    }

    fn note_contains(r: &VerificationReport, needle: &str) -> bool {
        r.notes.iter().any(|n| n.contains(needle))
    }

    #[test]
    fn thm21_examples() {
        let t = tol();
        let r = verify_thm21(
            &CMatrix::diag_real(&[2.0, 0.0]),
            &CMatrix::diag_real(&[0.5, 0.0]),
            &t,
        )
        .unwrap();
        assert!(r.passed());
        assert!(note_contains(&r, "characterization holds: true"));

        let r = verify_thm21(&idem(), &CMatrix::diag_real(&[1.0, 0.0]), &t).unwrap();
        assert!(r.passed());
        assert!(note_contains(&r, "characterization holds: true"));

        let r = verify_thm21(
            &CMatrix::diag_real(&[2.0, 0.0]),
            &CMatrix::diag_real(&[0.5, 0.1]),
            &t,
        )
        .unwrap();
        assert!(r.passed(), "all conditions fail together");
        assert!(note_contains(&r, "(i) x = core-EP inverse: false"));
        assert!(note_contains(&r, "characterization holds: false"));
    }

    #[test]
    fn cor22_examples() {
        let t = tol();
        let r = verify_cor22(&CMatrix::from_real_rows(&[[1.0, 2.0], [3.0, 4.0]]), &t).unwrap();
        assert!(r.passed());
        assert!(note_contains(&r, "ad_A+l(ad): dim 4 + 0 = 4"));

        let r = verify_cor22(&CMatrix::zeros(3, 3), &t).unwrap();
        assert!(r.passed(), "{r:?}");
        assert!(note_contains(&r, "ad_A+l(ad): dim 0 + 9 = 9"));

        // Dimensions add up, but [[0, 1], [0, 0]] = A^D [[0, 1], [0, 0]] is
        // also annihilated by A^D from the right: the sum is not direct.
        let r = verify_cor22(&idem(), &t).unwrap();
        assert!(!r.conclusion_holds, "{r:?}");
        assert!(note_contains(&r, "ad_A+l(ad): dim 2 + 2 = 4, stacked rank 3 of 4"));
        assert!(note_contains(&r, "A_ad*+r(ad): dim 2 + 2 = 4, stacked rank 3 of 4"));
        assert!(note_contains(
            &r,
            "ad_A+l(ad) with opposite-side annihilator: dim 2 + 2, stacked rank 4 of 4"
        ));
        assert!(note_contains(
            &r,
            "A_ad*+r(ad) with opposite-side annihilator: dim 2 + 2, stacked rank 4 of 4"
        ));

        assert!(matches!(
            verify_cor22(&CMatrix::identity(9), &t),
            Err(Error::DimensionCap { dim: 9, cap: 8 })
        ));
    }

    #[test]
    fn thm23_examples() {
        let t = tol();
        for a in [
            CMatrix::diag_real(&[2.0, 0.0]),
            CMatrix::from_real_rows(&[[0.0, 1.0], [0.0, 0.0]]),
            idem(),
        ] {
            let r = verify_thm23(&a, &t).unwrap();
            assert!(r.passed(), "{r:?}");
        }
        let ad = inverses::drazin(&idem(), &t).unwrap().dinv;
        let q = matcore::range_projector(&ad, &t);
        assert!(residual(&q, &CMatrix::diag_real(&[1.0, 0.0])) < 1e-14);
        assert!(residual(&ad.matmul(&q), &CMatrix::diag_real(&[1.0, 0.0])) < 1e-14);
    }
}
