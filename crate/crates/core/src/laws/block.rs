use alloc::format;

use super::{ReportBuilder, VerificationReport};
use crate::error::{Error, Result};
use crate::inverses::{self, zero_residual, Route};
use crate::matcore::{residual, CMatrix, Tolerances};

/// Closed forms for the off-diagonal block `Z` of the core-EP inverse of
/// `[[A, B], [0, D]]`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ZReading {
    /// `A^D A^⊙D B D D^⊙D − (A^D)² B (D^D)³ − A^D B (D^D)⁴`.
    Corollary,
    /// `A^D (A^D)^⊙D B D D^⊙D − (A^D)² B (D^D)³ − A^D B (D^D)⁴`.
    TheoremLiteral,
    /// `−A^D B D^⊙D`.
    Reduced,
}

struct Parts {
    ad: CMatrix,
    ce_a: CMatrix,
    dd: CMatrix,
    ce_d: CMatrix,
}

fn parts(a: &CMatrix, d: &CMatrix, tol: &Tolerances) -> Result<Parts> {
    Ok(Parts {
        ad: inverses::drazin(a, tol)?.dinv,
        ce_a: inverses::core_ep(a, Route::All, tol)?.ceinv,
        dd: inverses::drazin(d, tol)?.dinv,
        ce_d: inverses::core_ep(d, Route::All, tol)?.ceinv,
    })
}

fn z_from_parts(p: &Parts, b: &CMatrix, d: &CMatrix, reading: ZReading, tol: &Tolerances) -> Result<CMatrix> {
    let Parts { ad, ce_a, dd, ce_d } = p;
    let tail = || -> Result<CMatrix> {
        let t1 = CMatrix::product(&[ad, ad, b, &dd.pow(3)?]);
        let t2 = CMatrix::product(&[ad, b, &dd.pow(4)?]);
        Ok(&t1 + &t2)
    };
    Ok(match reading {
        ZReading::Corollary => &CMatrix::product(&[ad, ce_a, b, d, ce_d]) - &tail()?,
        ZReading::TheoremLiteral => {
            let ce_ad = inverses::core_ep_inverse(ad, tol)?;
            &CMatrix::product(&[ad, &ce_ad, b, d, ce_d]) - &tail()?
        }
        ZReading::Reduced => -&CMatrix::product(&[ad, b, ce_d]),
    })
}

fn check_shapes(a: &CMatrix, b: &CMatrix, d: &CMatrix) -> Result<()> {
    a.ensure_square()?;
    d.ensure_square()?;
    if b.shape() != (a.rows(), d.rows()) {
        return Err(Error::ShapeMismatch {
            left: b.shape(),
            right: (a.rows(), d.rows()),
        });
    }
    Ok(())
}

/// Off-diagonal block `Z` under the given reading.
pub fn block_z(a: &CMatrix, b: &CMatrix, d: &CMatrix, reading: ZReading, tol: &Tolerances) -> Result<CMatrix> {
    check_shapes(a, b, d)?;
    z_from_parts(&parts(a, d, tol)?, b, d, reading, tol)
}

/// `Σ_{i=0}^{A.rows()} A^i A^π B (D^D)^{i+2}`, split at the index of `A`.
fn series(a: &CMatrix, b: &CMatrix, d: &CMatrix, tol: &Tolerances) -> Result<(CMatrix, CMatrix)> {
    let da = inverses::drazin(a, tol)?;
    let dd = inverses::drazin(d, tol)?.dinv;
    let mut head = CMatrix::zeros(b.rows(), b.cols());
    let mut tail = head.clone();
    let mut ai_pi = da.spectral_idempotent.clone();
    let mut dpow = dd.matmul(&dd);
    for i in 0..=a.rows() {
        let term = CMatrix::product(&[&ai_pi, b, &dpow]);
        if i <= da.index {
            head = &head + &term;
        } else {
            tail = &tail + &term;
        }
        ai_pi = a.matmul(&ai_pi);
        dpow = dpow.matmul(&dd);
    }
    Ok((head, tail))
}

/// Hypothesis residual `Σ_{i=0}^{i(A)} A^i A^π B (D^D)^{i+2}` measured against zero.
pub(crate) fn block_hypothesis_residual(a: &CMatrix, b: &CMatrix, d: &CMatrix, tol: &Tolerances) -> Result<f64> {
    check_shapes(a, b, d)?;
    Ok(zero_residual(&series(a, b, d, tol)?.0))
}

/// Core-EP inverse of the upper block-triangular `[[A, B], [0, D]]` against
/// `[[A^⊙D, Z], [0, D^⊙D]]` with `Z` in the corollary reading.
///
/// The theorem-literal and reduced readings are measured too and recorded
/// in the notes.
pub fn verify_thm36(a: &CMatrix, b: &CMatrix, d: &CMatrix, tol: &Tolerances) -> Result<VerificationReport> {
    check_shapes(a, b, d)?;
    let (r, s) = (a.rows(), d.rows());
    let (head, tail) = series(a, b, d, tol)?;

    let mut rb = ReportBuilder::new("thm3.6", tol.eq);
    rb.hypothesis("series_vanishes", zero_residual(&head), tol.eq);

    let m = CMatrix::block2(a, b, &CMatrix::zeros(s, r), d);
    let ce_m = inverses::core_ep(&m, Route::All, tol)?.ceinv;
    let p = parts(a, d, tol)?;
    let z = z_from_parts(&p, b, d, ZReading::Corollary, tol)?;
    let expected = CMatrix::block2(&p.ce_a, &z, &CMatrix::zeros(s, r), &p.ce_d);

    rb.conclusion("series_tail_vanishes", zero_residual(&tail), tol.eq);
    rb.conclusion("block_formula", residual(&ce_m, &expected), tol.eq);
    let z_direct = ce_m.submatrix(0, r, r, s);
    rb.conclusion("z_block", residual(&z_direct, &z), tol.eq);

    for (label, reading) in [
        ("theorem-literal", ZReading::TheoremLiteral),
        ("reduced -A^D B D^cep", ZReading::Reduced),
    ] {
        let zr = z_from_parts(&p, b, d, reading, tol)?;
        rb.note(format!("{label} reading of Z: residual {:e}", residual(&z_direct, &zr)));
    }
    if r == 1 && s == 1 {
        rb.note(format!("Z = {}{:+}i", z[(0, 0)].re, z[(0, 0)].im));
    }
    Ok(rb.finish())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn tol() -> Tolerances {
        Tolerances::default()
    }

    fn s(x: f64) -> CMatrix {
        CMatrix::from_real_rows(&[[x]])
    }

    #[test]
    fn nilpotent_d_example() {
        let r = verify_thm36(&s(1.0), &s(1.0), &s(0.0), &tol()).unwrap();
        assert!(r.passed(), "{r:?}");
        let z = block_z(&s(1.0), &s(1.0), &s(0.0), ZReading::Corollary, &tol()).unwrap();
        assert_eq!(z[(0, 0)].norm(), 0.0);
    }

    #[test]
    fn worked_scalar_example() {
        let t = tol();
        let z = block_z(&s(2.0), &s(1.0), &s(1.0), ZReading::Corollary, &t).unwrap();
        assert!((z[(0, 0)].re + 0.5).abs() < 1e-12 && z[(0, 0)].im.abs() < 1e-12);
        let lit = block_z(&s(2.0), &s(1.0), &s(1.0), ZReading::TheoremLiteral, &t).unwrap();
        assert!((lit[(0, 0)].re - 0.25).abs() < 1e-12);
        let r = verify_thm36(&s(2.0), &s(1.0), &s(1.0), &t).unwrap();
        assert!(r.passed(), "{r:?}");
    }

    #[test]
    fn zero_b_gives_block_diagonal() {
        let t = tol();
        let a = CMatrix::from_real_rows(&[[1.0, 1.0], [0.0, 0.0]]);
        let d = CMatrix::from_real_rows(&[[0.5, 0.2], [0.1, 0.3]]);
        let r = verify_thm36(&a, &CMatrix::zeros(2, 2), &d, &t).unwrap();
        assert!(r.passed(), "{r:?}");
    }

    #[test]
    fn corollary_reading_disagrees_when_d_is_not_the_identity() {
        // M = [[2, 1], [0, 2]] has inverse [[0.5, -0.25], [0, 0.5]].
        let t = tol();
        let r = verify_thm36(&s(2.0), &s(1.0), &s(2.0), &t).unwrap();
        assert!(r.hypothesis_satisfied);
        assert!(!r.conclusion_holds);
        let z = block_z(&s(2.0), &s(1.0), &s(2.0), ZReading::Reduced, &t).unwrap();
        assert!((z[(0, 0)].re + 0.25).abs() < 1e-14);
    }

    #[test]
    fn shape_errors() {
        assert!(verify_thm36(&s(1.0), &CMatrix::zeros(2, 1), &s(1.0), &tol()).is_err());
    }
}
