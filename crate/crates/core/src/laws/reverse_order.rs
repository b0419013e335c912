use alloc::format;

use super::{CommutationPair, ReportBuilder, VerificationReport};
use crate::error::{Error, Result};
use crate::inverses::{self, Route};
use crate::matcore::{self, residual, CMatrix, Tolerances, C64};

fn one() -> C64 {
    C64::new(1.0, 0.0)
}

/// `a X = λ X a` and `a^* X = μ X a^*` imply `a^⊙D X = λ^{-1} X a^⊙D`.
pub fn verify_lemma32(
    pair: &CommutationPair,
    x: &CMatrix,
    tol: &Tolerances,
) -> Result<VerificationReport> {
    let a = &pair.a;
    a.ensure_square()?;
    a.ensure_same_shape(x)?;
    let (lambda, mu) = (pair.lambda, pair.mu);
    let a_star = a.adjoint();

    let mut rb = ReportBuilder::new("lem3.2", tol.eq);
    rb.hypothesis(
        "ax_eq_lambda_xa",
        residual(&a.matmul(x), &x.matmul(a).scale(lambda)),
        tol.eq,
    );
    rb.hypothesis(
        "a*x_eq_mu_xa*",
        residual(&a_star.matmul(x), &x.matmul(&a_star).scale(mu)),
        tol.eq,
    );
    let ce = inverses::core_ep(a, Route::All, tol)?.ceinv;
    rb.conclusion(
        "ce_x_eq_xce_over_lambda",
        residual(&ce.matmul(x), &x.matmul(&ce).scale(one() / lambda)),
        tol.eq,
    );
    Ok(rb.finish())
}

/// `ab = λba`, `a^*b = μba^*` imply `(ab)^⊙D = b^⊙D a^⊙D = λ^{-1} a^⊙D b^⊙D`.
pub fn verify_thm33(pair: &CommutationPair, tol: &Tolerances) -> Result<VerificationReport> {
    let (a, b) = (&pair.a, &pair.b);
    a.ensure_square()?;
    a.ensure_same_shape(b)?;
    let (lambda, mu) = (pair.lambda, pair.mu);
    let a_star = a.adjoint();

    let mut rb = ReportBuilder::new("thm3.3", tol.eq);
    rb.hypothesis(
        "ab_eq_lambda_ba",
        residual(&a.matmul(b), &b.matmul(a).scale(lambda)),
        tol.eq,
    );
    rb.hypothesis(
        "a*b_eq_mu_ba*",
        residual(&a_star.matmul(b), &b.matmul(&a_star).scale(mu)),
        tol.eq,
    );
    let ab = inverses::core_ep(&matcore::clean_product(&[a, b], tol), Route::All, tol)?.ceinv;
    let ca = inverses::core_ep(a, Route::All, tol)?.ceinv;
    let cb = inverses::core_ep(b, Route::All, tol)?.ceinv;
    rb.conclusion("ab_eq_cb_ca", residual(&ab, &cb.matmul(&ca)), tol.eq);
    rb.conclusion(
        "ab_eq_ca_cb_over_lambda",
        residual(&ab, &ca.matmul(&cb).scale(one() / lambda)),
        tol.eq,
    );
    Ok(rb.finish())
}

/// `(A^k)^⊙D = (A^⊙D)^k` and `A^⊙D = A^{k−1} (A^k)^⊙D`.
pub fn verify_lemma34(a: &CMatrix, k: usize, tol: &Tolerances) -> Result<VerificationReport> {
    a.ensure_square()?;
    if k == 0 {
        return Err(Error::InvalidSpec("power law needs k >= 1".into()));
    }
    let ce = inverses::core_ep(a, Route::All, tol)?.ceinv;
    let ce_k = inverses::core_ep(&matcore::clean_product(&alloc::vec![a; k], tol), Route::All, tol)?.ceinv;

    let mut rb = ReportBuilder::new("lem3.4", tol.eq);
    rb.conclusion("power_of_inverse", residual(&ce_k, &ce.pow(k)?), tol.eq);
    rb.conclusion(
        "inverse_from_power",
        residual(&ce, &a.pow(k - 1)?.matmul(&ce_k)),
        tol.eq,
    );
    rb.note(format!("k = {k}"));
    Ok(rb.finish())
}

/// `bab = λab² = μb²a` and `ba^*b = λ′a^*b² = μ′b²a^*` imply
/// `(ab)^⊙D = μ^{-1} b^⊙D a^⊙D`.
///
/// The unweighted product `b^⊙D a^⊙D` is compared as well and recorded in
/// the notes.
pub fn verify_thm35(pair: &CommutationPair, tol: &Tolerances) -> Result<VerificationReport> {
    let (a, b) = (&pair.a, &pair.b);
    a.ensure_square()?;
    a.ensure_same_shape(b)?;
    let (lambda, mu) = (pair.lambda, pair.mu);
    let a_star = a.adjoint();
    let b2 = b.matmul(b);

    let mut rb = ReportBuilder::new("thm3.5", tol.eq);
    let bab = CMatrix::product(&[b, a, b]);
    rb.hypothesis("bab_eq_lambda_ab2", residual(&bab, &a.matmul(&b2).scale(lambda)), tol.eq);
    rb.hypothesis("bab_eq_mu_b2a", residual(&bab, &b2.matmul(a).scale(mu)), tol.eq);
    match (pair.lambda_prime, pair.mu_prime) {
        (Some(lp), Some(mp)) => {
            let basb = CMatrix::product(&[b, &a_star, b]);
            rb.hypothesis(
                "ba*b_eq_lambda'_a*b2",
                residual(&basb, &a_star.matmul(&b2).scale(lp)),
                tol.eq,
            );
            rb.hypothesis(
                "ba*b_eq_mu'_b2a*",
                residual(&basb, &b2.matmul(&a_star).scale(mp)),
                tol.eq,
            );
        }
        _ => rb.hypothesis_flag("adjoint_weights_present", false),
    }

    let ab = inverses::core_ep(&matcore::clean_product(&[a, b], tol), Route::All, tol)?.ceinv;
    let ca = inverses::core_ep(a, Route::All, tol)?.ceinv;
    let cb = inverses::core_ep(b, Route::All, tol)?.ceinv;
    let product = cb.matmul(&ca);
    rb.conclusion(
        "ab_eq_cb_ca_over_mu",
        residual(&ab, &product.scale(one() / mu)),
        tol.eq,
    );
    rb.note(format!(
        "unweighted reverse order (ab)^cep = b^cep a^cep residual {:e}",
        residual(&ab, &product)
    ));
    Ok(rb.finish())
}
