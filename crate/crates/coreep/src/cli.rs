//! Command-line front end.
//!
//! Exit codes: 0 success or pass, 1 numerical or verification failure,
//! 2 usage or input error.

use std::ffi::OsString;
use std::fs;
use std::ops::RangeInclusive;
use std::path::{Path, PathBuf};
use std::time::Instant;

use anyhow::{anyhow, bail, Context};
use clap::{Args, Parser, Subcommand, ValueEnum};
use coreep_core::instances::{self, BlockMode, GenSpec};
use coreep_core::inverses::{self, Route};
use coreep_core::laws::{self, CommutationPair, VerificationReport};
use coreep_core::matcore::{self, residual};
use coreep_core::{order, CMatrix, Error, Residuals, Tolerances, C64};

use crate::format::{self, Bundle, CertificateFile, ComputeReport, ReportFile};
use crate::selftest;

pub const EXIT_PASS: i32 = 0;
pub const EXIT_FAIL: i32 = 1;
pub const EXIT_INPUT: i32 = 2;

#[derive(Debug, Parser)]
#[command(name = "coreep", version, about = "Core-EP inverses, law verifiers and instance generators")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Args, Clone, Copy)]
pub struct TolArgs {
    /// Relative Frobenius residual bound.
    #[arg(long, default_value_t = 1e-8)]
    pub tol_eq: f64,
    /// Relative singular-value cutoff.
    #[arg(long, default_value_t = 64.0 * f64::EPSILON)]
    pub tol_rank: f64,
    /// Nilpotency residual bound.
    #[arg(long, default_value_t = 1e-8)]
    pub tol_nil: f64,
}

impl TolArgs {
    fn tolerances(&self) -> anyhow::Result<Tolerances> {
        let t = Tolerances {
            rank: self.tol_rank,
            eq: self.tol_eq,
            nil: self.tol_nil,
        };
        if !t.is_valid() {
            bail!("tolerances must be positive and finite");
        }
        Ok(t)
    }
}

#[derive(Debug, Args, Clone, Default)]
pub struct Operands {
    /// First matrix file.
    #[arg(long = "in")]
    pub in1: Option<PathBuf>,
    /// Second matrix file.
    #[arg(long)]
    pub in2: Option<PathBuf>,
    /// Third matrix file.
    #[arg(long)]
    pub in3: Option<PathBuf>,
}

#[derive(Debug, Args, Clone, Copy, Default)]
pub struct Weights {
    /// Weight λ as "re,im".
    #[arg(long, value_parser = parse_complex, allow_hyphen_values = true)]
    pub lambda: Option<C64>,
    /// Weight μ as "re,im".
    #[arg(long, value_parser = parse_complex, allow_hyphen_values = true)]
    pub mu: Option<C64>,
    /// Adjoint-relation weight λ′ as "re,im".
    #[arg(long, value_parser = parse_complex, allow_hyphen_values = true)]
    pub lambda2: Option<C64>,
    /// Adjoint-relation weight μ′ as "re,im".
    #[arg(long, value_parser = parse_complex, allow_hyphen_values = true)]
    pub mu2: Option<C64>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum ComputeOp {
    Mp,
    Drazin,
    Group,
    Core,
    CoreEp,
    Bc,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum RouteArg {
    R1,
    R2,
    R3,
    All,
}

impl From<RouteArg> for Route {
    fn from(r: RouteArg) -> Self {
        match r {
            RouteArg::R1 => Route::R1,
            RouteArg::R2 => Route::R2,
            RouteArg::R3 => Route::R3,
            RouteArg::All => Route::All,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Law {
    #[value(name = "thm2.1")]
    Thm21,
    #[value(name = "cor2.2")]
    Cor22,
    #[value(name = "thm2.3")]
    Thm23,
    #[value(name = "lem3.2")]
    Lem32,
    #[value(name = "thm3.3")]
    Thm33,
    #[value(name = "lem3.4")]
    Lem34,
    #[value(name = "thm3.5")]
    Thm35,
    #[value(name = "thm3.6")]
    Thm36,
    #[value(name = "order")]
    Order,
    #[value(name = "lem4.2")]
    Lem42,
    #[value(name = "lem4.3")]
    Lem43,
    #[value(name = "thm4.4")]
    Thm44,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum GenKind {
    /// Matrix of prescribed rank and index (--dim, --rank, --index).
    Index,
    /// Pair with ab = λba, a*b = μba* (--n, --root-order, --singular).
    Lambda,
    /// Same relations for arbitrary λ with nilpotent b (--n, --lambda).
    LambdaNilpotent,
    /// Pair with bab = λab² = μb²a (--n).
    Thm35,
    /// a = b = diag(2, 0) with unit weights.
    Thm35Commuting,
    /// Block triple (--r, --s, --mode).
    Block,
    /// Ordered pair a ≤ b (--dims d1,d2,d3).
    Order,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum ModeArg {
    NilpotentD,
    RangeB,
    NullspaceSolve,
}

impl From<ModeArg> for BlockMode {
    fn from(m: ModeArg) -> Self {
        match m {
            ModeArg::NilpotentD => BlockMode::NilpotentD,
            ModeArg::RangeB => BlockMode::RangeB,
            ModeArg::NullspaceSolve => BlockMode::NullspaceSolve,
        }
    }
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Compute a generalized inverse and its defining-identity residuals.
    Compute {
        op: ComputeOp,
        #[command(flatten)]
        operands: Operands,
        #[arg(long, value_enum, default_value_t = RouteArg::All)]
        route: RouteArg,
        /// Result matrix file; the report goes next to it as *.report.json.
        #[arg(long)]
        out: Option<PathBuf>,
        #[command(flatten)]
        tol: TolArgs,
    },
    /// Check one law on given operands and write its report.
    Verify {
        law: Law,
        #[command(flatten)]
        operands: Operands,
        #[command(flatten)]
        weights: Weights,
        /// Power for lem3.4.
        #[arg(long)]
        k: Option<usize>,
        /// Treat an unsatisfied hypothesis as a failure.
        #[arg(long)]
        strict_hypothesis: bool,
        /// Where thm4.4 writes its certificate.
        #[arg(long)]
        certificate: Option<PathBuf>,
        #[arg(long)]
        out: Option<PathBuf>,
        #[command(flatten)]
        tol: TolArgs,
    },
    /// Generate a seeded instance bundle.
    Gen {
        kind: GenKind,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long)]
        dim: Option<usize>,
        #[arg(long)]
        rank: Option<usize>,
        #[arg(long)]
        index: Option<usize>,
        /// Condition cap of the invertible core.
        #[arg(long, default_value_t = 10.0)]
        cap: f64,
        #[arg(long)]
        n: Option<usize>,
        #[arg(long)]
        root_order: Option<usize>,
        #[arg(long)]
        singular: bool,
        #[arg(long, value_parser = parse_complex, allow_hyphen_values = true)]
        lambda: Option<C64>,
        #[arg(long)]
        r: Option<usize>,
        #[arg(long)]
        s: Option<usize>,
        #[arg(long, value_enum)]
        mode: Option<ModeArg>,
        /// Projection ranks "d1,d2,d3".
        #[arg(long)]
        dims: Option<String>,
        #[arg(long)]
        out: Option<PathBuf>,
        #[command(flatten)]
        tol: TolArgs,
    },
    /// Run every law on generated instances and print a summary.
    Selftest {
        /// Instances per suite.
        #[arg(default_value_t = 50)]
        instances: usize,
        /// Dimension range "lo..hi" (inclusive).
        #[arg(default_value = "2..4")]
        dims: String,
        #[arg(long, default_value_t = 1)]
        seed: u64,
        #[arg(long)]
        out: Option<PathBuf>,
        #[command(flatten)]
        tol: TolArgs,
    },
}

/// Parses "re,im" or "re".
pub fn parse_complex(s: &str) -> Result<C64, String> {
    let parts: Vec<&str> = s.split(',').map(str::trim).collect();
    let num = |p: &str| p.parse::<f64>().map_err(|e| format!("{p:?}: {e}"));
    let z = match parts.as_slice() {
        [re] => C64::new(num(re)?, 0.0),
        [re, im] => C64::new(num(re)?, num(im)?),
        _ => return Err(format!("expected \"re,im\", got {s:?}")),
    };
    if !z.re.is_finite() || !z.im.is_finite() {
        return Err("weights must be finite".into());
    }
    Ok(z)
}

/// Parses "lo..hi" or "lo..=hi" (both inclusive) or a single "n".
pub fn parse_dims(s: &str) -> anyhow::Result<RangeInclusive<usize>> {
    let (lo, hi) = match s.split_once("..") {
        Some((lo, hi)) => (lo.trim(), hi.trim().trim_start_matches('=')),
        None => (s.trim(), s.trim()),
    };
    let lo: usize = lo.parse().with_context(|| format!("dimension range {s:?}"))?;
    let hi: usize = hi.parse().with_context(|| format!("dimension range {s:?}"))?;
    if lo == 0 || lo > hi {
        bail!("dimension range {s:?} must satisfy 1 ≤ lo ≤ hi");
    }
    Ok(lo..=hi)
}

/// Failure classified by exit code.
#[derive(Debug)]
enum Failure {
    Input(anyhow::Error),
    Verify(anyhow::Error),
}

impl From<anyhow::Error> for Failure {
    fn from(e: anyhow::Error) -> Self {
        Failure::Input(e)
    }
}

fn from_core(e: Error) -> Failure {
    match e {
        Error::NotSquare { .. }
        | Error::ShapeMismatch { .. }
        | Error::InvalidMatrix(_)
        | Error::InvalidSpec(_)
        | Error::DimensionCap { .. } => Failure::Input(anyhow!("{e}")),
        other => Failure::Verify(anyhow!("{other}")),
    }
}

type Outcome = Result<i32, Failure>;

/// Parses `args` and runs; returns the process exit code.
pub fn run<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_INPUT } else { EXIT_PASS };
            let _ = e.print();
            return code;
        }
    };
    match execute(cli.command) {
        Ok(code) => code,
        Err(Failure::Input(e)) => {
            eprintln!("error: {e:#}");
            EXIT_INPUT
        }
        Err(Failure::Verify(e)) => {
            eprintln!("error: {e:#}");
            EXIT_FAIL
        }
    }
}

fn execute(cmd: Command) -> Outcome {
    match cmd {
        Command::Compute {
            op,
            operands,
            route,
            out,
            tol,
        } => compute(op, &operands, route, out.as_deref(), &tol.tolerances()?),
        Command::Verify {
            law,
            operands,
            weights,
            k,
            strict_hypothesis,
            certificate,
            out,
            tol,
        } => {
            let tol = tol.tolerances()?;
            let report = verify(law, &operands, &weights, k, certificate.as_deref(), &tol)?;
            write_or_print(out.as_deref(), &format::to_json(&ReportFile::new(&report, &tol)))?;
            if report.is_vacuous() {
                eprintln!("note: vacuous, hypothesis not satisfied");
            }
            let pass = report.conclusion_holds && (report.hypothesis_satisfied || !strict_hypothesis);
            Ok(if pass { EXIT_PASS } else { EXIT_FAIL })
        }
        Command::Gen {
            kind,
            seed,
            dim,
            rank,
            index,
            cap,
            n,
            root_order,
            singular,
            lambda,
            r,
            s,
            mode,
            dims,
            out,
            tol,
        } => {
            let tol = tol.tolerances()?;
            let need = |v: Option<usize>, flag: &str| v.ok_or_else(|| anyhow!("gen {kind:?} needs --{flag}"));
            let bundle = match kind {
                GenKind::Index => {
                    let dim = need(dim, "dim")?;
                    let mut spec = GenSpec::new(dim, need(rank, "rank")?, need(index, "index")?, seed);
                    spec.condition_cap = cap;
                    let a = instances::gen_with_index(&spec, &tol).map_err(from_core)?;
                    Bundle::new("index", seed).matrix("a", &a)
                }
                GenKind::Lambda => {
                    let n = need(n, "n")?;
                    let p = instances::gen_lambda_pair(n, need(root_order, "root-order")?, seed, singular)
                        .map_err(from_core)?;
                    pair_bundle("lambda", seed, &p.pair)
                }
                GenKind::LambdaNilpotent => {
                    let lambda = lambda.ok_or_else(|| anyhow!("gen lambda-nilpotent needs --lambda"))?;
                    let p = instances::gen_lambda_pair_nilpotent(need(n, "n")?, lambda, seed).map_err(from_core)?;
                    pair_bundle("lambda-nilpotent", seed, &p.pair)
                }
                GenKind::Thm35 => {
                    let p = instances::gen_thm35_pair(need(n, "n")?, seed).map_err(from_core)?;
                    pair_bundle("thm35", seed, &p)
                }
                GenKind::Thm35Commuting => pair_bundle("thm35-commuting", seed, &instances::commuting_thm35_pair()),
                GenKind::Block => {
                    let mode = mode.ok_or_else(|| anyhow!("gen block needs --mode"))?;
                    let t = instances::gen_block_triple(need(r, "r")?, need(s, "s")?, mode.into(), seed, &tol)
                        .map_err(from_core)?;
                    if let Some(note) = &t.note {
                        eprintln!("note: {note}");
                    }
                    Bundle::new("block", seed)
                        .matrix("a", &t.a)
                        .matrix("b", &t.b)
                        .matrix("d", &t.d)
                }
                GenKind::Order => {
                    let dims = dims.ok_or_else(|| anyhow!("gen order needs --dims d1,d2,d3"))?;
                    let parts: Vec<usize> = dims
                        .split(',')
                        .map(|p| p.trim().parse())
                        .collect::<Result<_, _>>()
                        .with_context(|| format!("--dims {dims:?}"))?;
                    let [d1, d2, d3] = parts[..] else {
                        return Err(anyhow!("--dims needs three values").into());
                    };
                    let (a, b) = instances::gen_order_pair((d1, d2, d3), seed, &tol).map_err(from_core)?;
                    Bundle::new("order", seed).matrix("a", &a).matrix("b", &b)
                }
            };
            write_or_print(out.as_deref(), &format::to_json(&bundle))?;
            Ok(EXIT_PASS)
        }
        Command::Selftest {
            instances,
            dims,
            seed,
            out,
            tol,
        } => {
            if instances == 0 {
                return Err(anyhow!("selftest needs at least one instance").into());
            }
            let tol = tol.tolerances()?;
            let dims = parse_dims(&dims)?;
            let start = Instant::now();
            let (summary, results) = selftest::run_all(instances, dims, seed, &tol);
            for r in results.iter().filter(|r| r.failures() > 0) {
                for detail in r.first_failures(3) {
                    eprintln!("{} failed {detail}", r.suite.name());
                }
            }
            eprintln!("wall time {:.2}s", start.elapsed().as_secs_f64());
            write_or_print(out.as_deref(), &format::to_json(&summary))?;
            let all = summary.suites.iter().all(|s| s.failures == 0);
            Ok(if all { EXIT_PASS } else { EXIT_FAIL })
        }
    }
}

fn pair_bundle(kind: &str, seed: u64, p: &CommutationPair) -> Bundle {
    let mut b = Bundle::new(kind, seed)
        .matrix("a", &p.a)
        .matrix("b", &p.b)
        .scalar("lambda", p.lambda)
        .scalar("mu", p.mu);
    if let (Some(l2), Some(m2)) = (p.lambda_prime, p.mu_prime) {
        b = b.scalar("lambda2", l2).scalar("mu2", m2);
    }
    b
}

fn write_or_print(path: Option<&Path>, text: &str) -> anyhow::Result<()> {
    match path {
        Some(p) => fs::write(p, text).with_context(|| format!("writing {}", p.display())),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

/// `out.json` → `out.report.json`.
pub fn sidecar_path(out: &Path) -> PathBuf {
    let stem = out.file_stem().map(|s| s.to_string_lossy().into_owned()).unwrap_or_default();
    out.with_file_name(format!("{stem}.report.json"))
}

/// Reads exactly `count` operands, rejecting missing or surplus ones.
fn operands(ops: &Operands, count: usize, what: &str) -> anyhow::Result<Vec<CMatrix>> {
    let given = [&ops.in1, &ops.in2, &ops.in3];
    let flags = ["--in", "--in2", "--in3"];
    let mut out = Vec::with_capacity(count);
    for (i, (path, flag)) in given.iter().zip(flags).enumerate() {
        match (path, i < count) {
            (Some(p), true) => out.push(format::read_matrix(p)?),
            (None, true) => bail!("{what} needs {flag}"),
            (Some(_), false) => bail!("{what} takes {count} operand(s); unexpected {flag}"),
            (None, false) => {}
        }
    }
    Ok(out)
}

fn compute(op: ComputeOp, ops: &Operands, route: RouteArg, out: Option<&Path>, tol: &Tolerances) -> Outcome {
    let count = if op == ComputeOp::Bc { 3 } else { 1 };
    let m = operands(ops, count, "compute")?;
    let a = &m[0];
    let mut residuals = Residuals::new();
    let mut index = None;
    let mut route_name = None;
    let x = match op {
        ComputeOp::Mp => {
            let x = matcore::pinv(a, tol);
            let (ax, xa) = (a.matmul(&x), x.matmul(a));
            residuals.insert("axa".into(), residual(&ax.matmul(a), a));
            residuals.insert("xax".into(), residual(&xa.matmul(&x), &x));
            residuals.insert("ax_hermitian".into(), residual(&ax.adjoint(), &ax));
            residuals.insert("xa_hermitian".into(), residual(&xa.adjoint(), &xa));
            x
        }
        ComputeOp::Drazin => {
            let d = inverses::drazin(a, tol).map_err(from_core)?;
            index = Some(d.index);
            let x = &d.dinv;
            let ak = a.pow(d.index).map_err(from_core)?;
            residuals.insert("commute".into(), residual(&a.matmul(x), &x.matmul(a)));
            residuals.insert("xax".into(), residual(&CMatrix::product(&[x, a, x]), x));
            residuals.insert("power".into(), residual(&ak, &CMatrix::product(&[x, &ak, a])));
            d.dinv
        }
        ComputeOp::Group => {
            let x = inverses::group_inverse(a, tol).map_err(from_core)?;
            residuals.insert("axa".into(), residual(&CMatrix::product(&[a, &x, a]), a));
            residuals.insert("xax".into(), residual(&CMatrix::product(&[&x, a, &x]), &x));
            residuals.insert("commute".into(), residual(&a.matmul(&x), &x.matmul(a)));
            x
        }
        ComputeOp::Core => {
            let x = inverses::core_inverse(a, tol).map_err(from_core)?;
            let ax = a.matmul(&x);
            residuals.insert("axa".into(), residual(&ax.matmul(a), a));
            residuals.insert("ax_hermitian".into(), residual(&ax.adjoint(), &ax));
            residuals.insert("xa2".into(), residual(&CMatrix::product(&[&x, a, a]), a));
            residuals.insert("ax2".into(), residual(&CMatrix::product(&[a, &x, &x]), &x));
            x
        }
        ComputeOp::CoreEp => {
            let k = inverses::index(a, tol).map_err(from_core)?;
            let r = inverses::core_ep(a, route.into(), tol).map_err(from_core)?;
            index = Some(k);
            route_name = Some(format!("{route:?}").to_lowercase());
            let x = &r.ceinv;
            let ak = a.pow(k).map_err(from_core)?;
            let ax = a.matmul(x);
            residuals.insert("x_eq_axx".into(), residual(x, &CMatrix::product(&[a, x, x])));
            residuals.insert("ax_hermitian".into(), residual(&ax.adjoint(), &ax));
            residuals.insert("power".into(), residual(&ak, &CMatrix::product(&[x, &ak, a])));
            if route == RouteArg::All {
                residuals.insert("max_route_residual".into(), r.max_route_residual);
            }
            r.ceinv
        }
        ComputeOp::Bc => {
            let (b, c) = (&m[1], &m[2]);
            let x = inverses::bc_inverse(a, b, c, tol).map_err(from_core)?;
            residuals.insert("xab".into(), residual(&CMatrix::product(&[&x, a, b]), b));
            residuals.insert("cax".into(), residual(&CMatrix::product(&[c, a, &x]), c));
            residuals.insert("xax".into(), residual(&CMatrix::product(&[&x, a, &x]), &x));
            x
        }
    };
    let report = ComputeReport {
        op: op.to_possible_value().map(|v| v.get_name().to_string()).unwrap_or_default(),
        route: route_name,
        index,
        residuals,
        tolerances: tol.into(),
    };
    let matrix = format::matrix_json(&x);
    let report_text = format::to_json(&report);
    match out {
        Some(path) => {
            write_or_print(Some(path), &matrix)?;
            write_or_print(Some(&sidecar_path(path)), &report_text)?;
        }
        None => {
            print!("{matrix}");
            eprint!("{report_text}");
        }
    }
    let worst = report.residuals.values().copied().fold(0.0, f64::max);
    if worst > tol.eq {
        eprintln!("error: defining identities off by {worst:e}");
        return Ok(EXIT_FAIL);
    }
    Ok(EXIT_PASS)
}

fn pair_from(m: &[CMatrix], w: &Weights, law: &str, primes: bool) -> anyhow::Result<CommutationPair> {
    let need = |z: Option<C64>, flag: &str| -> anyhow::Result<C64> {
        let z = z.ok_or_else(|| anyhow!("{law} needs --{flag}"))?;
        if z.norm() == 0.0 {
            bail!("--{flag} must be nonzero");
        }
        Ok(z)
    };
    let pair = CommutationPair::new(m[0].clone(), m[1].clone(), need(w.lambda, "lambda")?, need(w.mu, "mu")?);
    if primes {
        Ok(pair.with_primes(need(w.lambda2, "lambda2")?, need(w.mu2, "mu2")?))
    } else {
        if w.lambda2.is_some() || w.mu2.is_some() {
            bail!("{law} takes no --lambda2/--mu2");
        }
        Ok(pair)
    }
}

fn verify(
    law: Law,
    ops: &Operands,
    w: &Weights,
    k: Option<usize>,
    certificate: Option<&Path>,
    tol: &Tolerances,
) -> Result<VerificationReport, Failure> {
    let name = law.to_possible_value().map(|v| v.get_name().to_string()).unwrap_or_default();
    let count = match law {
        Law::Cor22 | Law::Thm23 | Law::Lem34 => 1,
        Law::Thm36 => 3,
        _ => 2,
    };
    let m = operands(ops, count, &name)?;
    let weighted = matches!(law, Law::Lem32 | Law::Thm33 | Law::Thm35);
    if !weighted && (w.lambda.is_some() || w.mu.is_some() || w.lambda2.is_some() || w.mu2.is_some()) {
        return Err(anyhow!("{name} takes no weights").into());
    }
    if law != Law::Lem34 && k.is_some() {
        return Err(anyhow!("--k applies to lem3.4 only").into());
    }
    if law != Law::Thm44 && certificate.is_some() {
        return Err(anyhow!("--certificate applies to thm4.4 only").into());
    }
    let report = match law {
        Law::Thm21 => laws::verify_thm21(&m[0], &m[1], tol),
        Law::Cor22 => laws::verify_cor22(&m[0], tol),
        Law::Thm23 => laws::verify_thm23(&m[0], tol),
        Law::Lem32 => {
            let pair = pair_from(&m, w, &name, false)?;
            laws::verify_lemma32(&pair, &pair.b, tol)
        }
        Law::Thm33 => laws::verify_thm33(&pair_from(&m, w, &name, false)?, tol),
        Law::Lem34 => {
            let k = k.ok_or_else(|| anyhow!("lem3.4 needs --k"))?;
            laws::verify_lemma34(&m[0], k, tol)
        }
        Law::Thm35 => laws::verify_thm35(&pair_from(&m, w, &name, true)?, tol),
        Law::Thm36 => laws::verify_thm36(&m[0], &m[1], &m[2], tol),
        Law::Order => order::verify_order(&m[0], &m[1], tol),
        Law::Lem42 => order::lemma42_check(&m[0], &m[1], tol),
        Law::Lem43 => order::lemma43_corner(&m[0], &m[1], tol),
        Law::Thm44 => {
            let report = order::verify_thm44(&m[0], &m[1], tol);
            if let (Some(path), Ok(r)) = (certificate, &report) {
                if r.passed() {
                    let cert = order::thm44_decompose(&m[0], &m[1], tol).map_err(from_core)?;
                    write_or_print(Some(path), &format::to_json(&CertificateFile::from(&cert)))?;
                }
            }
            report
        }
    };
    report.map_err(from_core)
}
