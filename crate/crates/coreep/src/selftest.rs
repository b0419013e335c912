//! Batch self-test: every law verifier on seeded generated instances.
//!
//! Each suite draws its instances from its own ChaCha stream of the base
//! seed, so suites are independent of each other and of the order they run
//! in. The corpus-based suites share stream 0 and therefore see the same
//! matrices.

use std::ops::RangeInclusive;

use coreep_core::instances::{self, BlockMode, GenSpec};
use coreep_core::inverses::{self, Route};
use coreep_core::laws::{self, VerificationReport};
use coreep_core::matcore::residual;
use coreep_core::{order, CMatrix, Tolerances, C64};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::format::{Summary, SuiteSummary};

/// The suites, in summary order.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Suite {
    RouteAgreement,
    Lemma31,
    Thm21,
    Cor22,
    Thm23,
    Lemma32,
    Thm33,
    Lemma34,
    Thm35,
    Thm36,
    Order,
    Lemma42,
    Lemma43,
    Thm44,
}

impl Suite {
    pub const ALL: [Suite; 14] = [
        Suite::RouteAgreement,
        Suite::Lemma31,
        Suite::Thm21,
        Suite::Cor22,
        Suite::Thm23,
        Suite::Lemma32,
        Suite::Thm33,
        Suite::Lemma34,
        Suite::Thm35,
        Suite::Thm36,
        Suite::Order,
        Suite::Lemma42,
        Suite::Lemma43,
        Suite::Thm44,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Suite::RouteAgreement => "route-agreement",
            Suite::Lemma31 => "lem3.1",
            Suite::Thm21 => "thm2.1",
            Suite::Cor22 => "cor2.2",
            Suite::Thm23 => "thm2.3",
            Suite::Lemma32 => "lem3.2",
            Suite::Thm33 => "thm3.3",
            Suite::Lemma34 => "lem3.4",
            Suite::Thm35 => "thm3.5",
            Suite::Thm36 => "thm3.6",
            Suite::Order => "order",
            Suite::Lemma42 => "lem4.2",
            Suite::Lemma43 => "lem4.3",
            Suite::Thm44 => "thm4.4",
        }
    }

    fn stream(self) -> u64 {
        match self {
            Suite::RouteAgreement | Suite::Lemma31 | Suite::Thm21 | Suite::Thm23 | Suite::Lemma34 => 0,
            other => 1 + Suite::ALL.iter().position(|&s| s == other).unwrap() as u64,
        }
    }
}

/// One instance's verdict.
#[derive(Debug, Clone, PartialEq)]
pub struct Outcome {
    pub passed: bool,
    pub max_residual: f64,
    pub detail: String,
}

impl Outcome {
    fn from_report(r: &VerificationReport, label: String) -> Self {
        let detail = if r.passed() {
            label
        } else {
            let failing: Vec<String> = r
                .residuals
                .iter()
                .filter(|(_, v)| **v > r.tolerance)
                .map(|(k, v)| format!("{k} = {v:e}"))
                .collect();
            format!("{label}: {}", failing.join(", "))
        };
        Self {
            passed: r.passed(),
            max_residual: r.max_residual(),
            detail,
        }
    }

    fn error(label: String, e: impl std::fmt::Debug) -> Self {
        Self {
            passed: false,
            max_residual: f64::INFINITY,
            detail: format!("{label}: {e:?}"),
        }
    }

    fn measured(label: String, value: f64, bound: f64) -> Self {
        Self {
            passed: value <= bound,
            max_residual: value,
            detail: format!("{label}: residual {value:e}"),
        }
    }
}

/// Aggregate of one suite.
#[derive(Debug, Clone, PartialEq)]
pub struct SuiteResult {
    pub suite: Suite,
    pub outcomes: Vec<Outcome>,
}

impl SuiteResult {
    pub fn passes(&self) -> usize {
        self.outcomes.iter().filter(|o| o.passed).count()
    }

    pub fn failures(&self) -> usize {
        self.outcomes.len() - self.passes()
    }

    /// Largest finite residual seen.
    pub fn max_residual(&self) -> f64 {
        self.outcomes
            .iter()
            .map(|o| o.max_residual)
            .filter(|r| r.is_finite())
            .fold(0.0, f64::max)
    }

    pub fn first_failures(&self, count: usize) -> Vec<&str> {
        self.outcomes
            .iter()
            .filter(|o| !o.passed)
            .take(count)
            .map(|o| o.detail.as_str())
            .collect()
    }

    pub fn summary(&self) -> SuiteSummary {
        SuiteSummary {
            law: self.suite.name().to_string(),
            passes: self.passes(),
            failures: self.failures(),
            max_residual: self.max_residual(),
        }
    }
}

fn divisors(n: usize) -> Vec<usize> {
    (1..=n).filter(|d| n % d == 0).collect()
}

/// Splits `n` into three nonnegative parts.
fn split3<R: Rng>(n: usize, rng: &mut R) -> (usize, usize, usize) {
    let a = rng.random_range(0..=n);
    let b = rng.random_range(0..=n - a);
    (a, b, n - a - b)
}

struct Ctx<'a> {
    rng: ChaCha8Rng,
    dims: RangeInclusive<usize>,
    tol: &'a Tolerances,
}

impl Ctx<'_> {
    fn dim(&mut self) -> usize {
        self.rng.random_range(self.dims.clone())
    }

    fn corpus_matrix(&mut self) -> Result<(GenSpec, CMatrix), coreep_core::Error> {
        let dim = self.dim();
        let spec = instances::random_spec(dim, &mut self.rng);
        instances::gen_with_index(&spec, self.tol).map(|a| (spec, a))
    }
}

fn route_agreement(a: &CMatrix, spec: &GenSpec, tol: &Tolerances) -> Result<f64, coreep_core::Error> {
    let r = inverses::core_ep(a, Route::All, tol)?;
    let x = &r.ceinv;
    let ak = a.pow(spec.index)?;
    let ax = a.matmul(x);
    Ok(r
        .max_route_residual
        .max(residual(x, &CMatrix::product(&[a, x, x])))
        .max(residual(&ax.adjoint(), &ax))
        .max(residual(&ak, &CMatrix::product(&[x, &ak, a]))))
}

fn lemma31(a: &CMatrix, tol: &Tolerances) -> Result<f64, coreep_core::Error> {
    let ce = inverses::core_ep(a, Route::R1, tol)?.ceinv;
    let aad = a.matmul(&inverses::drazin(a, tol)?.dinv);
    let bc = inverses::bc_inverse(a, &aad, &aad.adjoint(), tol)?;
    Ok(residual(&ce, &bc))
}

fn one_instance(suite: Suite, i: usize, ctx: &mut Ctx) -> Outcome {
    let tol = ctx.tol;
    let seed: u64 = ctx.rng.random();
    macro_rules! report {
        ($label:expr, $r:expr) => {{
            let label = $label;
            match $r {
                Ok(r) => Outcome::from_report(&r, label),
                Err(e) => Outcome::error(label, e),
            }
        }};
    }
    macro_rules! corpus {
        () => {
            match ctx.corpus_matrix() {
                Ok(x) => x,
                Err(e) => return Outcome::error(format!("#{i} generation"), e),
            }
        };
    }
    macro_rules! ordered {
        () => {{
            let n = ctx.dim();
            let dims = split3(n, &mut ctx.rng);
            match instances::gen_order_pair(dims, seed, tol) {
                Ok(p) => (dims, p),
                Err(e) => return Outcome::error(format!("#{i} order pair {dims:?}"), e),
            }
        }};
    }

    match suite {
        Suite::RouteAgreement => {
            let (spec, a) = corpus!();
            match route_agreement(&a, &spec, tol) {
                Ok(v) => Outcome::measured(format!("#{i} {spec:?}"), v, tol.eq),
                Err(e) => Outcome::error(format!("#{i} {spec:?}"), e),
            }
        }
        Suite::Lemma31 => {
            let (spec, a) = corpus!();
            match lemma31(&a, tol) {
                Ok(v) => Outcome::measured(format!("#{i} {spec:?}"), v, tol.eq),
                Err(e) => Outcome::error(format!("#{i} {spec:?}"), e),
            }
        }
        Suite::Thm21 => {
            let (spec, a) = corpus!();
            let x = match inverses::core_ep_inverse(&a, tol) {
                Ok(x) if i % 2 == 0 => x,
                Ok(x) => &x + &CMatrix::from_fn(a.rows(), a.cols(), |r, c| C64::new(0.1 * ((r + 2 * c) % 3) as f64, 0.0)),
                Err(e) => return Outcome::error(format!("#{i}"), e),
            };
            report!(format!("#{i} {spec:?} perturbed={}", i % 2 == 1), laws::verify_thm21(&a, &x, tol))
        }
        Suite::Cor22 => {
            let dim = ctx.dim().min(6);
            let spec = instances::random_spec(dim, &mut ctx.rng);
            match instances::gen_with_index(&spec, tol) {
                Ok(a) => report!(format!("#{i} {spec:?}"), laws::verify_cor22(&a, tol)),
                Err(e) => Outcome::error(format!("#{i} {spec:?}"), e),
            }
        }
        Suite::Thm23 => {
            let (spec, a) = corpus!();
            report!(format!("#{i} {spec:?}"), laws::verify_thm23(&a, tol))
        }
        Suite::Lemma32 | Suite::Thm33 => {
            let n = ctx.dim();
            let ds = divisors(n);
            let root = ds[ctx.rng.random_range(0..ds.len())];
            let singular = ctx.rng.random_bool(0.5);
            let label = format!("#{i} n={n} root={root} singular={singular} seed={seed}");
            match instances::gen_lambda_pair(n, root, seed, singular) {
                Ok(p) if suite == Suite::Thm33 => report!(label, laws::verify_thm33(&p.pair, tol)),
                Ok(p) => report!(label, laws::verify_lemma32(&p.pair, &p.pair.b, tol)),
                Err(e) => Outcome::error(label, e),
            }
        }
        Suite::Lemma34 => {
            let (spec, a) = corpus!();
            let k = 1 + i % 4;
            report!(format!("#{i} {spec:?} k={k}"), laws::verify_lemma34(&a, k, tol))
        }
        Suite::Thm35 => {
            let n = ctx.dim().max(2);
            let label = format!("#{i} n={n} seed={seed}");
            match instances::gen_thm35_pair(n, seed) {
                Ok(p) => report!(label, laws::verify_thm35(&p, tol)),
                Err(e) => Outcome::error(label, e),
            }
        }
        Suite::Thm36 => {
            let r = ctx.dim().min(4);
            let s = ctx.dim().min(4);
            let mode = BlockMode::ALL[i % 3];
            let label = format!("#{i} r={r} s={s} {mode:?} seed={seed}");
            match instances::gen_block_triple(r, s, mode, seed, tol) {
                Ok(t) => report!(label, laws::verify_thm36(&t.a, &t.b, &t.d, tol)),
                Err(e) => Outcome::error(label, e),
            }
        }
        Suite::Order => {
            let (dims, (a, b)) = ordered!();
            report!(format!("#{i} {dims:?} seed={seed}"), order::verify_order(&a, &b, tol))
        }
        Suite::Lemma42 => {
            if i % 2 == 0 {
                let (dims, (a, b)) = ordered!();
                report!(format!("#{i} ordered {dims:?} seed={seed}"), order::lemma42_check(&a, &b, tol))
            } else {
                let (_, a) = corpus!();
                let b = match instances::gen_with_index(&instances::random_spec(a.rows(), &mut ctx.rng), tol) {
                    Ok(b) => b,
                    Err(e) => return Outcome::error(format!("#{i} generation"), e),
                };
                report!(format!("#{i} unordered"), order::lemma42_check(&a, &b, tol))
            }
        }
        Suite::Lemma43 => {
            let (dims, (a, b)) = ordered!();
            report!(format!("#{i} {dims:?} seed={seed}"), order::lemma43_corner(&a, &b, tol))
        }
        Suite::Thm44 => {
            let (dims, (a, b)) = ordered!();
            let label = format!("#{i} {dims:?} seed={seed}");
            match order::thm44_decompose(&a, &b, tol) {
                Ok(cert) => {
                    let ranks = cert.ranks();
                    let (o1, o2) = order::projector_orthogonality(&cert);
                    let worst = cert.residuals.values().copied().fold(o1.max(o2), f64::max);
                    Outcome {
                        passed: ranks == dims && o1 <= 1e-10 && o2 <= 1e-10,
                        max_residual: worst,
                        detail: format!("{label}: ranks {ranks:?}, e1e2 {o1:e}, e2e1 {o2:e}"),
                    }
                }
                Err(e) => Outcome::error(label, e),
            }
        }
    }
}

/// Runs `count` instances of one suite with dimensions drawn from `dims`.
pub fn run_suite(suite: Suite, count: usize, dims: RangeInclusive<usize>, seed: u64, tol: &Tolerances) -> SuiteResult {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(suite.stream());
    let mut ctx = Ctx { rng, dims, tol };
    let outcomes = (0..count).map(|i| one_instance(suite, i, &mut ctx)).collect();
    SuiteResult { suite, outcomes }
}

/// Runs every suite and assembles the summary.
pub fn run_all(count: usize, dims: RangeInclusive<usize>, seed: u64, tol: &Tolerances) -> (Summary, Vec<SuiteResult>) {
    let results: Vec<SuiteResult> = Suite::ALL
        .iter()
        .map(|&s| run_suite(s, count, dims.clone(), seed, tol))
        .collect();
    let summary = Summary {
        suites: results.iter().map(SuiteResult::summary).collect(),
        seed,
        tolerances: tol.into(),
    };
    (summary, results)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_run_is_deterministic() {
        let t = Tolerances::default();
        let (a, _) = run_all(3, 1..=3, 5, &t);
        let (b, _) = run_all(3, 1..=3, 5, &t);
        assert_eq!(a, b);
        assert_eq!(a.suites.len(), Suite::ALL.len());
    }

    #[test]
    fn corpus_suites_share_matrices() {
        assert_eq!(Suite::RouteAgreement.stream(), Suite::Lemma31.stream());
        assert_ne!(Suite::Order.stream(), Suite::Thm44.stream());
    }
}
