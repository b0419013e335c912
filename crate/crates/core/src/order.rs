//! The core-EP order `a ≤ b`: `a a^⊙D = b a^⊙D` and `a^⊙D a = a^⊙D b`.
//!
//! Blocks are kept in the ambient `n × n` space as compressions `e_i M e_j`
//! rather than extracted submatrices, so no basis ordering is fixed; corner
//! invertibility is `rank(e_i M e_i) = rank(e_i)`.

use alloc::format;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Residuals, Result};
use crate::instances::{random_complex, random_unitary};
use crate::inverses::{self, zero_residual, Checks};
use crate::laws::{ReportBuilder, VerificationReport};
use crate::matcore::{self, residual, spectral_norm, CMatrix, Tolerances, C64};

/// Residuals of the order definition.
#[derive(Debug, Clone, PartialEq)]
pub struct OrderCheck {
    pub holds: bool,
    /// `a a^⊙D` vs `b a^⊙D`.
    pub left: f64,
    /// `a^⊙D a` vs `a^⊙D b`.
    pub right: f64,
}

/// Evaluates the defining identities of `a ≤ b`.
pub fn order_holds(a: &CMatrix, b: &CMatrix, tol: &Tolerances) -> Result<OrderCheck> {
    a.ensure_square()?;
    a.ensure_same_shape(b)?;
    let x = inverses::core_ep_inverse(a, tol)?;
    let left = residual(&a.matmul(&x), &b.matmul(&x));
    let right = residual(&x.matmul(a), &x.matmul(b));
    Ok(OrderCheck {
        holds: left <= tol.eq && right <= tol.eq,
        left,
        right,
    })
}

struct BlockConditions {
    lower_left: f64,
    corner: f64,
    top_right: f64,
}

impl BlockConditions {
    fn hold(&self, tol: &Tolerances) -> bool {
        self.lower_left <= tol.eq && self.corner <= tol.eq && self.top_right <= tol.eq
    }
}

fn block_conditions(a: &CMatrix, b: &CMatrix, p: &CMatrix) -> BlockConditions {
    let q = &CMatrix::identity(a.rows()) - p;
    BlockConditions {
        lower_left: zero_residual(&CMatrix::product(&[&q, b, p])),
        corner: residual(&CMatrix::product(&[p, b, p]), &CMatrix::product(&[p, a, p])),
        top_right: residual(&CMatrix::product(&[p, b, &q]), &CMatrix::product(&[p, a, &q])),
    }
}

/// Checks that `a ≤ b` agrees with `b` sharing the first block row of `a`
/// over `p = a a^⊙D` and vanishing below it.
pub fn lemma42_check(a: &CMatrix, b: &CMatrix, tol: &Tolerances) -> Result<VerificationReport> {
    let order = order_holds(a, b, tol)?;
    let p = a.matmul(&inverses::core_ep_inverse(a, tol)?);
    let blocks = block_conditions(a, b, &p);
    let by_blocks = blocks.hold(tol);

    let mut rb = ReportBuilder::new("lem4.2", tol.eq);
    rb.conclusion_flag("order_iff_blocks", order.holds == by_blocks);
    rb.note(format!(
        "order: {} (left {:e}, right {:e})",
        order.holds, order.left, order.right
    ));
    rb.note(format!(
        "blocks: {by_blocks} ((1-p)bp {:e}, pbp vs pap {:e}, pb(1-p) vs pa(1-p) {:e})",
        blocks.lower_left, blocks.corner, blocks.top_right
    ));
    Ok(rb.finish())
}

/// Corner facts for `a ≤ b` with `p = a a^⊙D` and `c = (1−p) b (1−p)`:
/// `c` has a core-EP inverse, `(1−p) b^⊙D p = 0` and `p` commutes with
/// `b b^⊙D`.
pub fn lemma43_corner(a: &CMatrix, b: &CMatrix, tol: &Tolerances) -> Result<VerificationReport> {
    let order = order_holds(a, b, tol)?;
    let n = a.rows();
    let p = a.matmul(&inverses::core_ep_inverse(a, tol)?);
    let q = &CMatrix::identity(n) - &p;
    let c = matcore::truncate_at_scale(&CMatrix::product(&[&q, b, &q]), spectral_norm(b), tol);
    let ce_b = inverses::core_ep_inverse(b, tol)?;
    let bb = b.matmul(&ce_b);

    let mut rb = ReportBuilder::new("lem4.3", tol.eq);
    rb.hypothesis("order.left", order.left, tol.eq);
    rb.hypothesis("order.right", order.right, tol.eq);
    let corner = inverses::core_ep(&c, inverses::Route::All, tol);
    rb.conclusion_flag("corner_core_ep_exists", corner.is_ok());
    rb.conclusion("step2_commutation", residual(&p.matmul(&bb), &bb.matmul(&p)), tol.eq);
    rb.conclusion("step3_x3_zero", zero_residual(&CMatrix::product(&[&q, &ce_b, &p])), tol.eq);
    // Step 1: (1-p) b (1-p) b^⊙D (1-p) is self-adjoint.
    let cx4 = CMatrix::product(&[&c, &ce_b, &q]);
    rb.conclusion("step1_cx4_hermitian", residual(&cx4.adjoint(), &cx4), tol.eq);
    // Step 2: c [(1-p) b^⊙D (1-p)]^2 = (1-p) b^⊙D (1-p).
    let y = CMatrix::product(&[&q, &ce_b, &q]);
    rb.conclusion("step2_outer", residual(&CMatrix::product(&[&c, &y, &y]), &y), tol.eq);
    if let Ok(r) = corner {
        rb.note(format!("rank of corner core-EP inverse {}", matcore::rank(&r.ceinv, tol)));
    }
    Ok(rb.finish())
}

/// Canonical three-projection form of an ordered pair.
#[derive(Debug, Clone, PartialEq)]
pub struct OrderCertificate {
    /// `a a^⊙D`.
    pub e1: CMatrix,
    /// `c c^⊙D` for the corner `c = (1−e1) b (1−e1)`.
    pub e2: CMatrix,
    /// `1 − e1 − e2`.
    pub e3: CMatrix,
    /// `e_i a e_j`.
    pub blocks_a: [[CMatrix; 3]; 3],
    /// `e_i b e_j`.
    pub blocks_b: [[CMatrix; 3]; 3],
    pub residuals: Residuals,
}

impl OrderCertificate {
    /// `(rank e1, rank e2, rank e3)`.
    pub fn ranks(&self) -> (usize, usize, usize) {
        (
            projector_rank(&self.e1),
            projector_rank(&self.e2),
            projector_rank(&self.e3),
        )
    }
}

fn projector_rank(e: &CMatrix) -> usize {
    matcore::idempotent_rank(e)
}

fn compress(e: &[&CMatrix; 3], m: &CMatrix) -> [[CMatrix; 3]; 3] {
    core::array::from_fn(|i| core::array::from_fn(|j| CMatrix::product(&[e[i], m, e[j]])))
}

/// Decomposes an ordered pair over `e1 = a a^⊙D`, `e2 = c c^⊙D`, `e3 = 1 − e1 − e2`.
///
/// Fails with [`Error::OrderViolation`] when `a ≤ b` does not hold and with
/// [`Error::NumericalFailure`] when a certificate invariant is out of tolerance.
pub fn thm44_decompose(a: &CMatrix, b: &CMatrix, tol: &Tolerances) -> Result<OrderCertificate> {
    if !order_holds(a, b, tol)?.holds {
        return Err(Error::OrderViolation);
    }
    let n = a.rows();
    let id = CMatrix::identity(n);
    let e1 = a.matmul(&inverses::core_ep_inverse(a, tol)?);
    let q1 = &id - &e1;
    let c = matcore::truncate_at_scale(&CMatrix::product(&[&q1, b, &q1]), spectral_norm(b), tol);
    let e2 = c.matmul(&inverses::core_ep_inverse(&c, tol)?);
    let e3 = &q1 - &e2;
    let es = [&e1, &e2, &e3];
    let blocks_a = compress(&es, a);
    let blocks_b = compress(&es, b);

    let mut checks = Checks::new();
    for (i, e) in es.iter().enumerate() {
        checks.check(&format!("e{}_idempotent", i + 1), residual(&e.matmul(e), e), tol.eq);
        checks.check(&format!("e{}_hermitian", i + 1), residual(&e.adjoint(), e), tol.eq);
        for (j, f) in es.iter().enumerate() {
            if i != j {
                checks.check(&format!("e{}e{}", i + 1, j + 1), zero_residual(&e.matmul(f)), tol.eq);
            }
        }
    }
    checks.check("partition_of_unity", residual(&(&(&e1 + &e2) + &e3), &id), tol.eq);
    for (i, j) in [(1, 0), (2, 0)] {
        checks.check(&format!("a{}{}_zero", i + 1, j + 1), zero_residual(&blocks_a[i][j]), tol.eq);
    }
    for (i, j) in [(1, 0), (2, 0), (2, 1)] {
        checks.check(&format!("b{}{}_zero", i + 1, j + 1), zero_residual(&blocks_b[i][j]), tol.eq);
    }
    for j in 0..3 {
        checks.check(
            &format!("first_row_{}", j + 1),
            residual(&blocks_a[0][j], &blocks_b[0][j]),
            tol.eq,
        );
    }
    let (sa, sb) = (spectral_norm(a), spectral_norm(b));
    checks.flag(
        "t1_invertible",
        matcore::rank_at_scale(&blocks_a[0][0], sa, tol) == projector_rank(&e1),
    );
    checks.flag(
        "t3_invertible",
        matcore::rank_at_scale(&blocks_b[1][1], sb, tol) == projector_rank(&e2),
    );
    let lower = CMatrix::product(&[&q1, a, &q1]);
    checks.check("n_grid_nilpotent", matcore::nilpotency_residual(&lower)?, tol.nil);
    checks.check("t5_nilpotent", matcore::nilpotency_residual(&blocks_b[2][2])?, tol.nil);
    let residuals = checks.into_result("thm44_decompose")?;

    Ok(OrderCertificate {
        e1,
        e2,
        e3,
        blocks_a,
        blocks_b,
        residuals,
    })
}

/// An assembled ordered pair with the frame it was built in.
#[derive(Debug, Clone, PartialEq)]
pub struct AssembledPair {
    pub a: CMatrix,
    pub b: CMatrix,
    /// Unitary whose column blocks span `range e1`, `range e2`, `range e3`.
    pub frame: CMatrix,
    pub dims: (usize, usize, usize),
}

impl AssembledPair {
    /// Orthogonal projector onto the `i`-th block of the frame (`i` in 0..3).
    pub fn projector(&self, i: usize) -> CMatrix {
        let (d1, d2, d3) = self.dims;
        let starts = [0, d1, d1 + d2];
        let lens = [d1, d2, d3];
        let n = d1 + d2 + d3;
        let mut diag = alloc::vec![0.0; n];
        for k in starts[i]..starts[i] + lens[i] {
            diag[k] = 1.0;
        }
        CMatrix::product(&[&self.frame, &CMatrix::diag_real(&diag), &self.frame.adjoint()])
    }
}

fn upper_triangular<R: Rng>(n: usize, invertible: bool, rng: &mut R) -> CMatrix {
    // Off-diagonal mass of an n×n triangle kept comparable to its diagonal.
    let off = 0.5 / (1.0 + libm::sqrt(n as f64));
    CMatrix::from_fn(n, n, |i, j| {
        if i == j && invertible {
            let z = random_complex(rng);
            z / z.norm() * rng.random_range(0.5..1.0)
        } else if j > i {
            random_complex(rng).scale(off)
        } else {
            C64::new(0.0, 0.0)
        }
    })
}

fn random_block<R: Rng>(rows: usize, cols: usize, rng: &mut R) -> CMatrix {
    CMatrix::from_fn(rows, cols, |_, _| random_complex(rng).scale(0.5))
}

/// Builds `(a, b)` with `a ≤ b` from the three-block forms, conjugated by a
/// random unitary, both scaled by one factor to spectral norm at most one.
pub fn thm44_assemble_frame(d1: usize, d2: usize, d3: usize, seed: u64) -> Result<AssembledPair> {
    let n = d1 + d2 + d3;
    if n == 0 {
        return Err(Error::InvalidSpec("block dimensions sum to zero".into()));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let lo = d2 + d3;

    let mut a = CMatrix::zeros(n, n);
    let mut b = CMatrix::zeros(n, n);
    if d1 > 0 {
        let t1 = upper_triangular(d1, true, &mut rng);
        a.set_block(0, 0, &t1);
        b.set_block(0, 0, &t1);
        if lo > 0 {
            let s = random_block(d1, lo, &mut rng);
            a.set_block(0, d1, &s);
            b.set_block(0, d1, &s);
        }
    }
    if lo > 0 {
        let w = random_unitary(lo, &mut rng);
        let strict = upper_triangular(lo, false, &mut rng);
        a.set_block(d1, d1, &CMatrix::product(&[&w, &strict, &w.adjoint()]));
    }
    if d2 > 0 {
        b.set_block(d1, d1, &upper_triangular(d2, true, &mut rng));
        if d3 > 0 {
            b.set_block(d1, d1 + d2, &random_block(d2, d3, &mut rng));
        }
    }
    if d3 > 0 {
        b.set_block(d1 + d2, d1 + d2, &upper_triangular(d3, false, &mut rng));
    }

    let u = random_unitary(n, &mut rng);
    let a = CMatrix::product(&[&u, &a, &u.adjoint()]);
    let b = CMatrix::product(&[&u, &b, &u.adjoint()]);
    let scale = spectral_norm(&a).max(spectral_norm(&b));
    let (a, b) = if scale > 1.0 {
        (a.scale_real(1.0 / scale), b.scale_real(1.0 / scale))
    } else {
        (a, b)
    };
    Ok(AssembledPair {
        a,
        b,
        frame: u,
        dims: (d1, d2, d3),
    })
}

/// Random ordered pair `a ≤ b` with `rank e1 = d1`, `rank e2 = d2`, `rank e3 = d3`.
///
/// The order is verified before returning.
pub fn thm44_assemble(
    d1: usize,
    d2: usize,
    d3: usize,
    seed: u64,
    tol: &Tolerances,
) -> Result<(CMatrix, CMatrix)> {
    let pair = thm44_assemble_frame(d1, d2, d3, seed)?;
    let check = order_holds(&pair.a, &pair.b, tol)?;
    if !check.holds {
        let mut residuals = Residuals::new();
        residuals.insert("order.left".into(), check.left);
        residuals.insert("order.right".into(), check.right);
        return Err(Error::NumericalFailure {
            context: "thm44_assemble",
            residuals,
        });
    }
    Ok((pair.a, pair.b))
}

/// Report form of [`thm44_decompose`] for batch verification.
pub fn verify_thm44(a: &CMatrix, b: &CMatrix, tol: &Tolerances) -> Result<VerificationReport> {
    let order = order_holds(a, b, tol)?;
    let mut rb = ReportBuilder::new("thm4.4", tol.eq);
    rb.hypothesis("order.left", order.left, tol.eq);
    rb.hypothesis("order.right", order.right, tol.eq);
    match thm44_decompose(a, b, tol) {
        Ok(cert) => {
            for (k, v) in &cert.residuals {
                let bound = if k.ends_with("nilpotent") { tol.nil } else { tol.eq };
                rb.conclusion(k, *v, bound);
            }
            let (r1, r2, r3) = cert.ranks();
            rb.note(format!("rank e1 = {r1}, rank e2 = {r2}, rank e3 = {r3}"));
        }
        Err(Error::NumericalFailure { residuals, .. }) => {
            for (k, v) in &residuals {
                let bound = if k.ends_with("nilpotent") { tol.nil } else { tol.eq };
                rb.conclusion(k, *v, bound);
            }
        }
        Err(Error::OrderViolation) => rb.conclusion_flag("decomposition", false),
        Err(e) => return Err(e),
    }
    Ok(rb.finish())
}

/// Report form of [`order_holds`].
pub fn verify_order(a: &CMatrix, b: &CMatrix, tol: &Tolerances) -> Result<VerificationReport> {
    let order = order_holds(a, b, tol)?;
    let mut rb = ReportBuilder::new("order", tol.eq);
    rb.conclusion("a_ce_eq_b_ce", order.left, tol.eq);
    rb.conclusion("ce_a_eq_ce_b", order.right, tol.eq);
    Ok(rb.finish())
}

/// Pairwise orthogonality residuals `‖e1 e2‖_F`, `‖e2 e1‖_F` of a certificate.
pub fn projector_orthogonality(cert: &OrderCertificate) -> (f64, f64) {
    (
        cert.e1.matmul(&cert.e2).frobenius_norm(),
        cert.e2.matmul(&cert.e1).frobenius_norm(),
    )
}
