//! The generalized-inverse family: Drazin, group, {1,3}, core, core-EP and
//! (b,c)-inverses, plus the core-EP decomposition and the projection form.
//!
//! Every routine post-verifies the defining identities of what it returns
//! and reports a [`Error::NumericalFailure`] carrying the residuals when one
//! of them exceeds the configured tolerance.

use alloc::format;
use alloc::string::String;
use alloc::vec::Vec;

use crate::error::{Error, Residuals, Result};
use crate::matcore::{self, residual, CMatrix, Tolerances};

/// Drazin inverse together with the index and spectral idempotent.
#[derive(Debug, Clone, PartialEq)]
pub struct DrazinResult {
    /// `A^D`.
    pub dinv: CMatrix,
    /// Drazin index `k`.
    pub index: usize,
    /// `A^π = I − A·A^D`.
    pub spectral_idempotent: CMatrix,
}

/// Which characterization computes the core-EP inverse.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Route {
    /// `A^D · q` with `q` the orthogonal projector onto `range(A^k)`.
    R1,
    /// `(A^D)² · (A^D)^⊙#`.
    R2,
    /// `A^D · (A A^D)^(1,3)` with the Moore–Penrose inverse as the {1,3}-inverse.
    R3,
    /// All three routes, cross-checked; the R1 value is returned.
    All,
}

/// Core-EP inverse with its range projectors.
#[derive(Debug, Clone, PartialEq)]
pub struct CoreEpResult {
    /// `A^⊙D`.
    pub ceinv: CMatrix,
    /// Orthogonal projector onto `range(A^D)`.
    pub q: CMatrix,
    /// `A · A^⊙D`.
    pub p: CMatrix,
    /// True when every computed route agreed (trivially true for one route).
    pub routes_agree: bool,
    /// Largest pairwise route residual (0 for a single route).
    pub max_route_residual: f64,
}

/// Core-EP decomposition `A = core_part + nil_part`.
#[derive(Debug, Clone, PartialEq)]
pub struct CoreEpDecomposition {
    /// Index-at-most-one summand.
    pub core_part: CMatrix,
    /// Nilpotent summand.
    pub nil_part: CMatrix,
    /// `core_part · core_part^⊙#`.
    pub p: CMatrix,
}

/// Accumulates named residuals against their bounds.
#[derive(Debug, Default)]
pub(crate) struct Checks {
    residuals: Residuals,
    failed: bool,
}

impl Checks {
    pub(crate) fn new() -> Self {
        Self::default()
    }

    pub(crate) fn check(&mut self, name: &str, value: f64, bound: f64) {
        if !(value <= bound) {
            self.failed = true;
        }
        self.residuals.insert(String::from(name), value);
    }

    pub(crate) fn flag(&mut self, name: &str, ok: bool) {
        self.check(name, if ok { 0.0 } else { 1.0 }, 0.0);
    }

    pub(crate) fn into_result(self, context: &'static str) -> Result<Residuals> {
        if self.failed {
            Err(Error::NumericalFailure {
                context,
                residuals: self.residuals,
            })
        } else {
            Ok(self.residuals)
        }
    }
}

/// Residual of `m` against the zero matrix.
pub(crate) fn zero_residual(m: &CMatrix) -> f64 {
    let f = m.frobenius_norm();
    f / (1.0 + f)
}

/// Smallest `k` with `rank(A^k) = rank(A^{k+1})`.
///
/// `rank(A^j)` is cut at `rankTol · ‖A‖₂^j`, the size of the rounding a
/// formed power carries.
pub fn index(a: &CMatrix, tol: &Tolerances) -> Result<usize> {
    let n = a.ensure_square()?;
    let norm = matcore::spectral_norm(a);
    let mut power = CMatrix::identity(n);
    let mut scale = 1.0;
    let mut prev_rank = n;
    for k in 0..=n {
        let next = power.matmul(a);
        scale *= norm;
        let next_rank = matcore::rank_at_scale(&next, scale, tol);
        if next_rank == prev_rank {
            return Ok(k);
        }
        prev_rank = next_rank;
        power = next;
    }
    // Rank sequences stabilize by k = n in exact arithmetic.
    Ok(n)
}

/// Drazin inverse `A^D = U (W^* A U)^{-1} W^*`, where the columns of `U`
/// and `W` are orthonormal bases of `range(A^k)` and `range((A^k)^*)`.
///
/// This equals `A^k (A^{2k+1})^+ A^k` but conditions like the invertible
/// core of `A` rather than like its `(2k+1)`-th power.
pub fn drazin(a: &CMatrix, tol: &Tolerances) -> Result<DrazinResult> {
    let n = a.ensure_square()?;
    let k = index(a, tol)?;
    let ak = a.pow(k)?;
    let u = matcore::power_range_basis(a, k, tol);
    let w = matcore::power_range_basis(&a.adjoint(), k, tol);
    let dinv = if u.is_empty() || u.len() != w.len() {
        CMatrix::zeros(n, n)
    } else {
        let u = CMatrix::from_columns(n, &u);
        let w = CMatrix::from_columns(n, &w);
        let core = CMatrix::product(&[&w.adjoint(), a, &u]);
        CMatrix::product(&[&u, &matcore::pinv(&core, tol), &w.adjoint()])
    };
    let pi = &CMatrix::identity(n) - &a.matmul(&dinv);

    let mut checks = Checks::new();
    checks.check("commute", residual(&a.matmul(&dinv), &dinv.matmul(a)), tol.eq);
    checks.check(
        "outer",
        residual(&CMatrix::product(&[&dinv, a, &dinv]), &dinv),
        tol.eq,
    );
    checks.check("power", residual(&ak, &dinv.matmul(&ak.matmul(a))), tol.eq);
    checks.check("spectral_idempotent", residual(&pi.matmul(&pi), &pi), tol.eq);
    checks.into_result("drazin")?;

    Ok(DrazinResult {
        dinv,
        index: k,
        spectral_idempotent: pi,
    })
}

/// Group inverse; exists iff the index is at most one.
pub fn group_inverse(a: &CMatrix, tol: &Tolerances) -> Result<CMatrix> {
    let d = drazin(a, tol)?;
    if d.index > 1 {
        return Err(Error::NoGroupInverse { index: d.index });
    }
    let x = d.dinv;
    let mut checks = Checks::new();
    checks.check("axa", residual(&CMatrix::product(&[a, &x, a]), a), tol.eq);
    checks.into_result("group_inverse")?;
    Ok(x)
}

/// Canonical {1,3}-inverse: the Moore–Penrose inverse.
pub fn one_three_inverse(a: &CMatrix, tol: &Tolerances) -> CMatrix {
    matcore::pinv(a, tol)
}

/// Member `A^+ + (I − A^+ A) Y` of the {1,3}-inverse family of `A`.
///
/// Every {1,3}-inverse has this form for some `Y`.
pub fn one_three_inverse_with(a: &CMatrix, y: &CMatrix, tol: &Tolerances) -> CMatrix {
    let p = matcore::pinv(a, tol);
    let proj = &CMatrix::identity(a.cols()) - &p.matmul(a);
    &p + &proj.matmul(y)
}

/// Core inverse `A^# A A^+`; exists iff the index is at most one.
pub fn core_inverse(a: &CMatrix, tol: &Tolerances) -> Result<CMatrix> {
    let g = group_inverse(a, tol)?;
    let x = CMatrix::product(&[&g, a, &matcore::pinv(a, tol)]);
    let mut checks = Checks::new();
    checks.check("axa", residual(&CMatrix::product(&[a, &x, a]), a), tol.eq);
    checks.flag("column_space", matcore::range_equal(&x, a, tol));
    // A x = A a^* as left ideals: equal null spaces, i.e. range(x^*) = range(a).
    checks.flag("row_space", matcore::range_equal(&x.adjoint(), a, tol));
    checks.into_result("core_inverse")?;
    Ok(x)
}

fn core_ep_r1(d: &DrazinResult, a: &CMatrix, tol: &Tolerances) -> Result<(CMatrix, CMatrix)> {
    let q = matcore::basis_projector(a.rows(), &matcore::power_range_basis(a, d.index, tol));
    Ok((d.dinv.matmul(&q), q))
}

fn core_ep_r2(d: &DrazinResult, tol: &Tolerances) -> Result<CMatrix> {
    let c = core_inverse(&d.dinv, tol)?;
    Ok(CMatrix::product(&[&d.dinv, &d.dinv, &c]))
}

fn core_ep_r3(d: &DrazinResult, a: &CMatrix) -> CMatrix {
    // A A^D is idempotent, so its nonzero singular values are at least one.
    d.dinv.matmul(&matcore::pinv_idempotent(&a.matmul(&d.dinv)))
}

/// Core-EP inverse `A^⊙D` through the chosen route.
pub fn core_ep(a: &CMatrix, route: Route, tol: &Tolerances) -> Result<CoreEpResult> {
    let n = a.ensure_square()?;
    let d = drazin(a, tol)?;
    let (x, routes_agree, max_route_residual) = match route {
        Route::R1 => (core_ep_r1(&d, a, tol)?.0, true, 0.0),
        Route::R2 => (core_ep_r2(&d, tol)?, true, 0.0),
        Route::R3 => (core_ep_r3(&d, a), true, 0.0),
        Route::All => {
            let x1 = core_ep_r1(&d, a, tol)?.0;
            let x2 = core_ep_r2(&d, tol)?;
            let x3 = core_ep_r3(&d, a);
            let worst = residual(&x1, &x2)
                .max(residual(&x1, &x3))
                .max(residual(&x2, &x3));
            if !(worst <= tol.eq) {
                return Err(Error::RouteMismatch {
                    max_residual: worst,
                    candidates: alloc::vec![x1, x2, x3],
                });
            }
            (x1, true, worst)
        }
    };

    let q = matcore::range_projector(&d.dinv, tol);
    let p = a.matmul(&x);
    let ak = a.pow(d.index)?;

    let mut checks = Checks::new();
    checks.check("x_eq_axx", residual(&x, &CMatrix::product(&[a, &x, &x])), tol.eq);
    checks.check("ax_hermitian", residual(&p.adjoint(), &p), tol.eq);
    checks.check("power", residual(&ak, &CMatrix::product(&[&x, &ak, a])), tol.eq);
    checks.check("q_idempotent", residual(&q.matmul(&q), &q), tol.eq);
    checks.check("q_hermitian", residual(&q.adjoint(), &q), tol.eq);
    checks.flag("q_range", matcore::range_equal(&q, &d.dinv, tol));
    checks.check("p_idempotent", residual(&p.matmul(&p), &p), tol.eq);
    debug_assert_eq!(p.rows(), n);
    checks.into_result("core_ep")?;

    Ok(CoreEpResult {
        ceinv: x,
        q,
        p,
        routes_agree,
        max_route_residual,
    })
}

/// Shorthand for the R1 core-EP inverse matrix.
pub fn core_ep_inverse(a: &CMatrix, tol: &Tolerances) -> Result<CMatrix> {
    Ok(core_ep(a, Route::R1, tol)?.ceinv)
}

/// `‖a^m − x a^{m+1}‖_F^{1/m}` for `m = k..k+count`.
///
/// For the core-EP inverse this sequence is identically zero from the
/// index on; a nonzero tail shows `x` is not the inverse.
pub fn limit_residuals(a: &CMatrix, x: &CMatrix, k: usize, count: usize) -> Result<Vec<f64>> {
    a.ensure_square()?;
    let mut out = Vec::with_capacity(count);
    let mut am = a.pow(k)?;
    for m in k..k + count {
        let next = am.matmul(a);
        let r = (&am - &x.matmul(&next)).frobenius_norm();
        let root = if m == 0 { r } else { libm::pow(r, 1.0 / m as f64) };
        out.push(root);
        am = next;
    }
    Ok(out)
}

/// The (b,c)-inverse `b (c a b)^+ c`, when `rank(cab) = rank(b) = rank(c)`.
pub fn bc_inverse(a: &CMatrix, b: &CMatrix, c: &CMatrix, tol: &Tolerances) -> Result<CMatrix> {
    a.ensure_square()?;
    a.ensure_same_shape(b)?;
    a.ensure_same_shape(c)?;
    let cab = CMatrix::product(&[c, a, b]);
    let (rank_cab, rank_b, rank_c) = (
        matcore::rank(&cab, tol),
        matcore::rank(b, tol),
        matcore::rank(c, tol),
    );
    if rank_cab != rank_b || rank_b != rank_c {
        return Err(Error::NoBcInverse {
            rank_cab,
            rank_b,
            rank_c,
        });
    }
    let x = CMatrix::product(&[b, &matcore::pinv(&cab, tol), c]);

    let mut checks = Checks::new();
    checks.check("xab", residual(&CMatrix::product(&[&x, a, b]), b), tol.eq);
    checks.check("cax", residual(&CMatrix::product(&[c, a, &x]), c), tol.eq);
    checks.flag("column_space", matcore::range_equal(&x, b, tol));
    checks.flag(
        "row_space",
        matcore::range_equal(&x.adjoint(), &c.adjoint(), tol),
    );
    checks.into_result("bc_inverse")?;
    Ok(x)
}

/// Splits `A` into a core-invertible part and an orthogonal nilpotent part.
pub fn core_ep_decompose(a: &CMatrix, tol: &Tolerances) -> Result<CoreEpDecomposition> {
    let n = a.ensure_square()?;
    let k = index(a, tol)?;
    let proj = matcore::basis_projector(n, &matcore::power_range_basis(a, k, tol));
    let core_part = proj.matmul(a);
    let nil_part = (&CMatrix::identity(n) - &proj).matmul(a);
    let p = core_part.matmul(&core_ep_inverse(&core_part, tol)?);

    let mut checks = Checks::new();
    checks.check("xstar_y", zero_residual(&core_part.adjoint().matmul(&nil_part)), tol.eq);
    checks.check("y_x", zero_residual(&nil_part.matmul(&core_part)), tol.eq);
    checks.flag(
        "core_index",
        matcore::rank(&core_part, tol) == matcore::rank_at_scale(&core_part.matmul(&core_part), scaled_sq(&core_part), tol),
    );
    checks.check("nilpotent", matcore::nilpotency_residual(&nil_part)?, tol.nil);
    checks.check("p_matches_projector", residual(&p, &proj), tol.eq);
    checks.into_result("core_ep_decompose")?;

    Ok(CoreEpDecomposition {
        core_part,
        nil_part,
        p,
    })
}

fn scaled_sq(m: &CMatrix) -> f64 {
    let s = matcore::spectral_norm(m);
    s * s
}

/// Projection `p = I − P_{range(A^k)}` with `A + p` invertible and `pA = pAp` nilpotent.
pub fn projection_characterization(a: &CMatrix, tol: &Tolerances) -> Result<CMatrix> {
    let n = a.ensure_square()?;
    let k = index(a, tol)?;
    let p = &CMatrix::identity(n) - &matcore::basis_projector(n, &matcore::power_range_basis(a, k, tol));
    let pa = p.matmul(a);

    let mut checks = Checks::new();
    checks.check("p_idempotent", residual(&p.matmul(&p), &p), tol.eq);
    checks.check("p_hermitian", residual(&p.adjoint(), &p), tol.eq);
    let shifted = a + &p;
    let r = matcore::rank(&shifted, tol);
    if r != n {
        checks.check(&format!("a_plus_p_rank_{r}"), 1.0, 0.0);
    }
    checks.check("pa_eq_pap", residual(&pa, &pa.matmul(&p)), tol.eq);
    checks.check("pa_nilpotent", matcore::nilpotency_residual(&pa)?, tol.nil);
    checks.into_result("projection_characterization")?;
    Ok(p)
}
