use coreep_core::instances::{gen_with_index, random_spec, GenSpec};
use coreep_core::inverses::{self, Route};
use coreep_core::laws;
use coreep_core::matcore::{self, residual};
use coreep_core::{CMatrix, Tolerances, C64};
use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn tol() -> Tolerances {
    Tolerances::default()
}

fn spec_and_matrix(dim: usize, seed: u64) -> (GenSpec, CMatrix) {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let spec = random_spec(dim, &mut rng);
    let a = gen_with_index(&spec, &tol()).unwrap_or_else(|e| panic!("{spec:?}: {e:?}"));
    (spec, a)
}

fn matrix() -> impl Strategy<Value = (GenSpec, CMatrix)> {
    (1usize..=6, any::<u64>()).prop_map(|(dim, seed)| spec_and_matrix(dim, seed))
}

fn dense(rows: usize, cols: usize) -> impl Strategy<Value = CMatrix> {
    proptest::collection::vec((-2.0f64..2.0, -2.0f64..2.0), rows * cols).prop_map(move |v| {
        CMatrix::from_vec(rows, cols, v.into_iter().map(|(re, im)| C64::new(re, im)).collect()).unwrap()
    })
}

/// Householder reflection `I − 2vv*/v*v`.
fn reflector(v: &[C64]) -> CMatrix {
    let n = v.len();
    let norm2: f64 = v.iter().map(|z| z.norm_sqr()).sum();
    CMatrix::from_fn(n, n, |i, j| {
        let id = if i == j { 1.0 } else { 0.0 };
        C64::new(id, 0.0) - v[i] * v[j].conj() * (2.0 / norm2)
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn penrose_identities(m in (1usize..=5, 1usize..=5).prop_flat_map(|(r, c)| dense(r, c))) {
        let t = tol();
        let x = matcore::pinv(&m, &t);
        prop_assert!(residual(&CMatrix::product(&[&m, &x, &m]), &m) <= 1e-10);
        prop_assert!(residual(&CMatrix::product(&[&x, &m, &x]), &x) <= 1e-10);
        let mx = m.matmul(&x);
        let xm = x.matmul(&m);
        prop_assert!(residual(&mx.adjoint(), &mx) <= 1e-10);
        prop_assert!(residual(&xm.adjoint(), &xm) <= 1e-10);
        prop_assert!(residual(&matcore::pinv(&x, &t), &m) <= 1e-9);
    }

    #[test]
    fn projector_properties((_, a) in matrix()) {
        let t = tol();
        let p = matcore::range_projector(&a, &t);
        prop_assert!(residual(&p.matmul(&p), &p) <= 1e-12);
        prop_assert!(residual(&p.adjoint(), &p) <= 1e-12);
        prop_assert!(residual(&p.matmul(&a), &a) <= 1e-12);
    }

    #[test]
    fn rank_is_unitarily_invariant(
        (spec, a) in matrix(),
        v in proptest::collection::vec((-1.0f64..1.0, -1.0f64..1.0), 6),
    ) {
        let t = tol();
        let n = a.rows();
        let mut v: Vec<C64> = v[..n].iter().map(|&(re, im)| C64::new(re, im)).collect();
        v[0] += C64::new(2.0, 0.0);
        let u = reflector(&v);
        prop_assert_eq!(matcore::rank(&a, &t), spec.rank);
        prop_assert_eq!(matcore::rank(&u.matmul(&a), &t), spec.rank);
        prop_assert_eq!(matcore::rank(&a.matmul(&u), &t), spec.rank);
    }

    #[test]
    fn range_equal_is_an_equivalence(
        (_, a) in matrix(),
        s in proptest::collection::vec((-1.0f64..1.0, -1.0f64..1.0), 36),
    ) {
        let t = tol();
        let n = a.rows();
        // Right multiplication by an invertible matrix keeps the range.
        let g = CMatrix::from_fn(n, n, |i, j| {
            let (re, im) = s[i * 6 + j];
            C64::new(re * 0.2 + if i == j { 1.0 } else { 0.0 }, im * 0.2)
        });
        let b = a.matmul(&g);
        let c = matcore::range_projector(&a, &t);
        prop_assert!(matcore::range_equal(&a, &a, &t));
        prop_assert!(matcore::range_equal(&a, &b, &t) && matcore::range_equal(&b, &a, &t));
        prop_assert!(matcore::range_equal(&b, &c, &t) && matcore::range_equal(&a, &c, &t));
    }

    #[test]
    fn index_and_routes((spec, a) in matrix()) {
        let t = tol();
        prop_assert_eq!(inverses::index(&a, &t).unwrap(), spec.index);
        let r = inverses::core_ep(&a, Route::All, &t).unwrap();
        prop_assert!(r.max_route_residual <= t.eq);
        let x = &r.ceinv;
        let k = spec.index;
        let ak = a.pow(k).unwrap();
        prop_assert!(residual(x, &CMatrix::product(&[&a, x, x])) <= t.eq);
        let ax = a.matmul(x);
        prop_assert!(residual(&ax.adjoint(), &ax) <= t.eq);
        prop_assert!(residual(&ak, &CMatrix::product(&[x, &ak, &a])) <= t.eq);
    }

    #[test]
    fn lemma_3_1_and_projector_consistency((spec, a) in matrix()) {
        let t = tol();
        let r = inverses::core_ep(&a, Route::R1, &t).unwrap();
        let aad = a.matmul(&inverses::drazin(&a, &t).unwrap().dinv);
        let bc = inverses::bc_inverse(&a, &aad, &aad.adjoint(), &t).unwrap();
        prop_assert!(residual(&r.ceinv, &bc) <= t.eq);
        let (ak, scale) = matcore::scaled_power(&a, spec.index).unwrap();
        prop_assert!(residual(&r.p, &matcore::range_projector_at_scale(&ak, scale, &t)) <= t.eq);
    }

    #[test]
    fn power_law((_, a) in matrix(), k in 1usize..=4) {
        let r = laws::verify_lemma34(&a, k, &tol()).unwrap();
        prop_assert!(r.passed(), "{:?}", r);
    }

    #[test]
    fn generation_is_deterministic(dim in 1usize..=6, seed in any::<u64>()) {
        prop_assert_eq!(spec_and_matrix(dim, seed), spec_and_matrix(dim, seed));
    }
}
