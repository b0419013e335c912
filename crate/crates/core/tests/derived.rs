//! Worked example values checked against exact rational arithmetic.

use coreep_core::inverses::{self, Route};
use coreep_core::laws::{self, CommutationPair, ZReading};
use coreep_core::{matcore, order, CMatrix, Tolerances, C64};
use coreep_oracle::catalog::{self, Op};
use coreep_oracle::{Q, QMatrix};

const EXACT: f64 = 1e-12;

fn tol() -> Tolerances {
    Tolerances::default()
}

fn to_c(m: &QMatrix) -> CMatrix {
    let rows: Vec<Vec<C64>> = m
        .to_f64()
        .into_iter()
        .map(|r| r.into_iter().map(|(re, im)| C64::new(re, im)).collect())
        .collect();
    CMatrix::from_rows(&rows)
}

fn assert_matches(got: &CMatrix, want: &QMatrix, what: &str) {
    let diff = (got - &to_c(want)).max_abs();
    assert!(diff <= EXACT, "{what}: off by {diff:e}\n got {got:?}\nwant {want:?}");
}

fn ints<const N: usize>(rows: [[i64; N]; N]) -> QMatrix {
    QMatrix::from_ints(&rows)
}

#[test]
fn catalog_inverses() {
    let t = tol();
    for case in catalog::cases() {
        let a = to_c(&case.inputs[0]);
        let got = match case.op {
            Op::Mp => Ok(inverses::one_three_inverse(&a, &t)),
            Op::Drazin => inverses::drazin(&a, &t).map(|d| d.dinv),
            Op::Group => inverses::group_inverse(&a, &t),
            Op::Core => inverses::core_inverse(&a, &t),
            Op::CoreEp => inverses::core_ep(&a, Route::All, &t).map(|r| r.ceinv),
            Op::Bc => inverses::bc_inverse(&a, &to_c(&case.inputs[1]), &to_c(&case.inputs[2]), &t),
        };
        match (&case.expected, got) {
            (Some(want), Ok(got)) => assert_matches(&got, want, case.name),
            (None, Err(_)) => {}
            (want, got) => panic!("{}: expected {want:?}, got {got:?}", case.name),
        }
    }
}

#[test]
fn kernel_values() {
    let t = tol();
    let m = ints([[1, 2], [3, 4]]);
    assert_eq!(matcore::rank(&to_c(&m), &t), m.rank());

    let idem = ints([[1, 1], [0, 0]]);
    let shift = ints([[0, 1], [0, 0]]);
    for a in [&idem, &shift] {
        assert_matches(&matcore::range_projector(&to_c(a), &t), &a.range_projector(), "projector");
        assert_eq!(inverses::index(&to_c(a), &t).unwrap(), a.index());
    }
    let x = to_c(&ints([[1, 0], [0, 0]]));
    assert!(matcore::range_equal(&x, &to_c(&shift), &t));
    assert!(!matcore::range_equal(&x, &to_c(&ints([[0, 0], [1, 0]])), &t));

    // ‖I − 2I‖² = 2, ‖I‖² = 2, ‖2I‖² = 8.
    let (i2, two) = (ints([[1, 0], [0, 1]]), ints([[2, 0], [0, 2]]));
    let fro2 = |m: &QMatrix| m.adjoint().mul(m);
    let tr = |m: &QMatrix| (m.get(0, 0) + m.get(1, 1)).to_f64().0;
    let expected = tr(&fro2(&i2.sub(&two))).sqrt()
        / (1.0 + tr(&fro2(&i2)).sqrt() + tr(&fro2(&two)).sqrt());
    let (eq, r) = matcore::approx_equal(&to_c(&i2), &to_c(&two), &t);
    assert!(!eq);
    assert!((r - expected).abs() <= EXACT);
}

#[test]
fn decompositions() {
    let t = tol();
    for a in [ints([[1, 1], [0, 0]]), ints([[1, 1, 0], [0, 0, 1], [0, 0, 0]])] {
        let p = a.pow(a.index()).range_projector();
        let n = a.rows();
        let core = p.mul(&a);
        let nil = QMatrix::identity(n).sub(&p).mul(&a);
        assert!(core.adjoint().mul(&nil).is_zero() && nil.mul(&core).is_zero());
        let d = inverses::core_ep_decompose(&to_c(&a), &t).unwrap();
        assert_matches(&d.core_part, &core, "core part");
        assert_matches(&d.nil_part, &nil, "nil part");
        let pc = inverses::projection_characterization(&to_c(&a), &t).unwrap();
        assert_matches(&pc, &QMatrix::identity(n).sub(&p), "projection");
    }
}

#[test]
fn annihilator_laws() {
    let t = tol();
    let a = ints([[1, 1], [0, 0]]);
    let ce = a.core_ep();
    let r = laws::verify_thm21(&to_c(&a), &to_c(&ce), &t).unwrap();
    assert!(r.passed(), "{r:?}");
    let q = a.drazin().range_projector();
    assert_eq!(a.drazin().mul(&q), ce);
    let r = laws::verify_thm23(&to_c(&a), &t).unwrap();
    assert!(r.passed(), "{r:?}");
    let r = laws::verify_thm21(&to_c(&ints([[2, 0], [0, 0]])), &CMatrix::diag_real(&[0.5, 0.1]), &t).unwrap();
    assert!(r.notes.iter().any(|n| n.contains("characterization holds: false")), "{r:?}");
}

#[test]
fn reverse_order_values() {
    let t = tol();
    let a = ints([[1, 0], [0, -1]]);
    let b = ints([[0, 1], [1, 0]]);
    let m1 = C64::new(-1.0, 0.0);

    // a X = −X a carries over to the core-EP inverse.
    let (ca, cb) = (a.core_ep(), b.core_ep());
    assert_eq!(ca.mul(&b), b.mul(&ca).scale(&Q::int(-1)));
    let r = laws::verify_lemma32(&CommutationPair::new(to_c(&a), to_c(&b), m1, m1), &to_c(&b), &t).unwrap();
    assert!(r.hypothesis_satisfied && r.passed(), "{r:?}");
    let one = C64::new(1.0, 0.0);
    let r = laws::verify_lemma32(&CommutationPair::new(to_c(&a), to_c(&b), one, one), &to_c(&b), &t).unwrap();
    assert!(r.is_vacuous());

    // Reverse order: (ab)^⊙D = b^⊙D a^⊙D = [[0, −1], [1, 0]].
    let ab = a.mul(&b).core_ep();
    assert_eq!(ab, cb.mul(&ca));
    assert_eq!(ab, ints([[0, -1], [1, 0]]));
    let pair = CommutationPair::new(to_c(&a), to_c(&b), m1, m1);
    let r = laws::verify_thm33(&pair, &t).unwrap();
    assert!(r.passed(), "{r:?}");
    let got = inverses::core_ep(&to_c(&a).matmul(&to_c(&b)), Route::All, &t).unwrap().ceinv;
    assert_matches(&got, &ab, "(ab)^⊙D");

    // Power law with k = 2 on an idempotent.
    let idem = ints([[1, 1], [0, 0]]);
    let ce2 = idem.pow(2).core_ep();
    assert_eq!(ce2, idem.core_ep().pow(2));
    assert_eq!(idem.mul(&ce2), idem.core_ep());
    let r = laws::verify_lemma34(&to_c(&idem), 2, &t).unwrap();
    assert!(r.passed(), "{r:?}");
}

#[test]
fn thm35_entrywise_identities() {
    // a geometric with ratio λ = −1, b the 2-cycle: bab = λ ab² = μ b²a.
    let a = ints([[3, 0], [0, -3]]);
    let b = ints([[0, 1], [1, 0]]);
    let bab = b.mul(&a).mul(&b);
    let lam = Q::int(-1);
    assert_eq!(bab, a.mul(&b).mul(&b).scale(&lam));
    assert_eq!(bab, b.mul(&b).mul(&a).scale(&lam.inv()));
}

#[test]
fn block_formula_values() {
    let t = tol();
    // D nilpotent: M = [[1,1],[0,0]], Z = 0.
    let (a, b, d) = (CMatrix::identity(1), CMatrix::identity(1), CMatrix::zeros(1, 1));
    let z = laws::block_z(&a, &b, &d, ZReading::Corollary, &t).unwrap();
    assert!(z.max_abs() <= EXACT);
    assert_matches(
        &inverses::core_ep_inverse(&to_c(&ints([[1, 1], [0, 0]])), &t).unwrap(),
        &ints([[1, 1], [0, 0]]).core_ep(),
        "M^⊙D",
    );

    // A = 2, B = 1, D = 1: M⁻¹ = [[1/2, −1/2], [0, 1]], so Z = −1/2.
    let m = ints([[2, 1], [0, 1]]);
    let minv = m.inverse().unwrap();
    assert_eq!(minv, m.core_ep());
    let z_exact = minv.get(0, 1).to_f64().0;
    let (a, b, d) = (CMatrix::diag_real(&[2.0]), CMatrix::identity(1), CMatrix::identity(1));
    let z = laws::block_z(&a, &b, &d, ZReading::Corollary, &t).unwrap();
    assert!((z[(0, 0)].re - z_exact).abs() <= EXACT);
    let literal = laws::block_z(&a, &b, &d, ZReading::TheoremLiteral, &t).unwrap();
    assert!((literal[(0, 0)].re - 0.25).abs() <= EXACT);
    let r = laws::verify_thm36(&a, &b, &d, &t).unwrap();
    assert!(r.passed(), "{r:?}");
}

#[test]
fn block_formula_counterexample() {
    let t = tol();
    // A = 2, B = 1, D = 2: M⁻¹ = [[1/2, −1/4], [0, 1/2]], so Z = −1/4.
    let m = ints([[2, 1], [0, 2]]);
    let z_exact = m.core_ep().get(0, 1).clone();
    assert_eq!(z_exact, Q::frac(-1, 4));
    let (a, b, d) = (CMatrix::diag_real(&[2.0]), CMatrix::identity(1), CMatrix::diag_real(&[2.0]));
    // The corollary's Z is 1/4 − 1/32 − 1/32 = 3/16 here.
    let z = laws::block_z(&a, &b, &d, ZReading::Corollary, &t).unwrap();
    assert!((z[(0, 0)].re - 0.1875).abs() <= EXACT);
    let reduced = laws::block_z(&a, &b, &d, ZReading::Reduced, &t).unwrap();
    assert!((reduced[(0, 0)].re - z_exact.to_f64().0).abs() <= EXACT);
    let r = laws::verify_thm36(&a, &b, &d, &t).unwrap();
    assert!(r.hypothesis_satisfied && !r.conclusion_holds, "{r:?}");
}

#[test]
fn order_values() {
    let t = tol();
    let e11 = ints([[1, 0], [0, 0]]);
    let e22 = ints([[0, 0], [0, 1]]);
    let id = QMatrix::identity(2);
    let holds = |a: &QMatrix, b: &QMatrix| {
        let x = a.core_ep();
        a.mul(&x) == b.mul(&x) && x.mul(a) == x.mul(b)
    };
    assert!(holds(&e11, &id));
    assert!(!holds(&e11, &e22));
    assert!(order::order_holds(&to_c(&e11), &to_c(&id), &t).unwrap().holds);
    assert!(!order::order_holds(&to_c(&e11), &to_c(&e22), &t).unwrap().holds);

    // Corner of diag(1,0) ≤ I: c = diag(0,1), its own core-EP inverse.
    let p = e11.mul(&e11.core_ep());
    let q = id.sub(&p);
    let c = q.mul(&id).mul(&q);
    assert_eq!(c, e22);
    assert_eq!(c.core_ep(), e22);
    assert!(q.mul(&id.core_ep()).mul(&p).is_zero());

    let cert = order::thm44_decompose(&to_c(&e11), &to_c(&id), &t).unwrap();
    assert_matches(&cert.e1, &e11, "e1");
    assert_matches(&cert.e2, &e22, "e2");
    assert_matches(&cert.e3, &QMatrix::zeros(2, 2), "e3");

    // (a, a) for a = [[1,1],[0,0]]: corner (I−e1)a(I−e1) = 0.
    let a = ints([[1, 1], [0, 0]]);
    let e1 = a.mul(&a.core_ep());
    let corner = id.sub(&e1).mul(&a).mul(&id.sub(&e1));
    assert!(corner.is_zero());
    let cert = order::thm44_decompose(&to_c(&a), &to_c(&a), &t).unwrap();
    assert_matches(&cert.e1, &e1, "e1");
    assert_matches(&cert.e2, &QMatrix::zeros(2, 2), "e2");
    assert_matches(&cert.e3, &e22, "e3");
}
