//! Seeded generators for matrices and pairs that meet each law's hypotheses.
//!
//! Every generator is a deterministic function of its arguments and seed
//! (ChaCha8), and scales its output to spectral norm at most one.

use alloc::format;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;
use core::f64::consts::PI;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::StandardNormal;

use crate::error::{Error, Residuals, Result};
use crate::inverses;
use crate::laws::{block_hypothesis_residual, CommutationPair};
use crate::matcore::{self, spectral_norm, CMatrix, Tolerances, C64};
use crate::order;

/// Largest tolerated residual of a generated hypothesis.
pub const HYPOTHESIS_BOUND: f64 = 1e-10;

/// Target shape of [`gen_with_index`].
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GenSpec {
    pub dim: usize,
    pub rank: usize,
    /// Index of the result. Must be 0 exactly when `rank == dim`.
    pub index: usize,
    pub seed: u64,
    /// Largest singular-value ratio of the invertible core.
    pub condition_cap: f64,
}

impl GenSpec {
    pub fn new(dim: usize, rank: usize, index: usize, seed: u64) -> Self {
        Self {
            dim,
            rank,
            index,
            seed,
            condition_cap: 10.0,
        }
    }

    /// Rejects shapes no matrix can have.
    ///
    /// A singular matrix with `z = dim − rank` Jordan blocks at zero, the
    /// largest of size `index`, needs `index + z − 1 ≤ dim`.
    pub fn validate(&self) -> Result<()> {
        let fail = |why: &str| Err(Error::InvalidSpec(format!("{self:?}: {why}")));
        if self.dim == 0 {
            return fail("dim must be positive");
        }
        if self.rank > self.dim {
            return fail("rank exceeds dim");
        }
        if !(self.condition_cap >= 1.0) || !self.condition_cap.is_finite() {
            return fail("condition cap must be finite and at least 1");
        }
        if self.rank == self.dim {
            return if self.index == 0 { Ok(()) } else { fail("full rank forces index 0") };
        }
        if self.index == 0 {
            return fail("singular matrices have index at least 1");
        }
        if self.index + (self.dim - self.rank) - 1 > self.dim {
            return fail("index too large for the nullity");
        }
        Ok(())
    }
}

pub(crate) fn random_complex<R: Rng>(rng: &mut R) -> C64 {
    let re: f64 = rng.sample(StandardNormal);
    let im: f64 = rng.sample(StandardNormal);
    C64::new(re, im).scale(core::f64::consts::FRAC_1_SQRT_2)
}

fn unit_phase<R: Rng>(rng: &mut R) -> C64 {
    C64::from_polar(1.0, rng.random_range(0.0..2.0 * PI))
}

fn modulus_between<R: Rng>(lo: f64, hi: f64, rng: &mut R) -> C64 {
    unit_phase(rng).scale(rng.random_range(lo..=hi))
}

/// Haar-distributed unitary: Gram–Schmidt on a complex Gaussian matrix.
pub(crate) fn random_unitary<R: Rng>(n: usize, rng: &mut R) -> CMatrix {
    let mut cols: Vec<Vec<C64>> = Vec::with_capacity(n);
    while cols.len() < n {
        let mut v: Vec<C64> = (0..n).map(|_| random_complex(rng)).collect();
        for _ in 0..2 {
            for q in &cols {
                let dot: C64 = q.iter().zip(&v).map(|(x, y)| x.conj() * y).sum();
                for (vi, qi) in v.iter_mut().zip(q) {
                    *vi -= dot * qi;
                }
            }
        }
        let norm = libm::sqrt(v.iter().map(|z| z.norm_sqr()).sum::<f64>());
        if norm > 1e-6 {
            cols.push(v.into_iter().map(|z| z / norm).collect());
        }
    }
    CMatrix::from_columns(n, &cols)
}

/// Divides by the spectral norm when it exceeds one.
pub fn normalize_spectral(m: &CMatrix) -> CMatrix {
    let s = spectral_norm(m);
    if s > 1.0 {
        m.scale_real(1.0 / s)
    } else {
        m.clone()
    }
}

/// Well-conditioned similarity `S` (condition at most 5/3) and its inverse.
fn random_similarity<R: Rng>(n: usize, rng: &mut R, tol: &Tolerances) -> (CMatrix, CMatrix) {
    let q = random_unitary(n, rng);
    let g = CMatrix::from_fn(n, n, |_, _| random_complex(rng));
    let gn = spectral_norm(&g);
    let perturb = if gn > 0.0 { g.scale_real(0.25 / gn) } else { g };
    let s = q.matmul(&(&CMatrix::identity(n) + &perturb));
    let s_inv = matcore::pinv(&s, tol);
    (s, s_inv)
}

/// Nilpotent Jordan form with the given block sizes and superdiagonal
/// entries of modulus in `[0.5, 1]`.
fn jordan_nilpotent<R: Rng>(sizes: &[usize], rng: &mut R) -> CMatrix {
    let m: usize = sizes.iter().sum();
    let mut n = CMatrix::zeros(m, m);
    let mut start = 0;
    for &size in sizes {
        for k in start..start + size - 1 {
            n[(k, k + 1)] = modulus_between(0.5, 1.0, rng);
        }
        start += size;
    }
    n
}

fn random_invertible<R: Rng>(r: usize, cap: f64, rng: &mut R) -> CMatrix {
    let u = random_unitary(r, rng);
    let v = random_unitary(r, rng);
    let sigma: Vec<f64> = (0..r)
        .map(|_| if cap > 1.0 { rng.random_range(1.0 / cap..=1.0) } else { 1.0 })
        .collect();
    CMatrix::product(&[&u, &CMatrix::diag_real(&sigma), &v.adjoint()])
}

/// Block sizes for a nilpotent part of size `m` with `z` blocks, the largest
/// of size `index`.
fn jordan_sizes<R: Rng>(m: usize, z: usize, index: usize, rng: &mut R) -> Vec<usize> {
    let mut sizes = vec![1; z];
    sizes[0] = index;
    let mut extra = m - index - (z - 1);
    while extra > 0 {
        let k = rng.random_range(1..z);
        if sizes[k] < index {
            sizes[k] += 1;
            extra -= 1;
        }
    }
    sizes
}

/// `S · blockdiag(C, N) · S⁻¹` from a core and Jordan block sizes.
fn assemble_similar<R: Rng>(
    core_size: usize,
    sizes: &[usize],
    cap: f64,
    rng: &mut R,
    tol: &Tolerances,
) -> CMatrix {
    let m: usize = sizes.iter().sum();
    let n = core_size + m;
    let mut inner = CMatrix::zeros(n, n);
    if core_size > 0 {
        inner.set_block(0, 0, &random_invertible(core_size, cap, rng));
    }
    if m > 0 {
        inner.set_block(core_size, core_size, &jordan_nilpotent(sizes, rng));
    }
    let (s, s_inv) = random_similarity(n, rng, tol);
    normalize_spectral(&CMatrix::product(&[&s, &inner, &s_inv]))
}

/// Random matrix of exact rank and index, verified with [`inverses::index`].
pub fn gen_with_index(spec: &GenSpec, tol: &Tolerances) -> Result<CMatrix> {
    spec.validate()?;
    let mut rng = ChaCha8Rng::seed_from_u64(spec.seed);
    let z = spec.dim - spec.rank;
    let sizes = if z == 0 {
        Vec::new()
    } else {
        let lo = spec.index + z - 1;
        let hi = spec.dim.min(spec.index * z);
        let m = rng.random_range(lo..=hi);
        jordan_sizes(m, z, spec.index, &mut rng)
    };
    let m: usize = sizes.iter().sum();
    let a = assemble_similar(spec.dim - m, &sizes, spec.condition_cap, &mut rng, tol);

    let got_rank = matcore::rank(&a, tol);
    let got_index = inverses::index(&a, tol)?;
    if got_rank != spec.rank || got_index != spec.index {
        let mut residuals = Residuals::new();
        residuals.insert("rank".into(), got_rank as f64);
        residuals.insert("index".into(), got_index as f64);
        return Err(Error::NumericalFailure {
            context: "gen_with_index",
            residuals,
        });
    }
    Ok(a)
}

/// A consistent spec of the given dimension: rank uniform in `0..=dim`,
/// index uniform among those the rank allows.
pub fn random_spec<R: Rng>(dim: usize, rng: &mut R) -> GenSpec {
    let rank = rng.random_range(0..=dim);
    let index = if rank == dim {
        0
    } else {
        rng.random_range(1..=dim.min(rank + 1))
    };
    GenSpec::new(dim, rank, index, rng.random())
}

/// `count` matrices with dimensions drawn from `dims`, as (spec, matrix).
pub fn corpus(
    count: usize,
    dims: core::ops::RangeInclusive<usize>,
    seed: u64,
    tol: &Tolerances,
) -> Result<Vec<(GenSpec, CMatrix)>> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..count)
        .map(|_| {
            let dim = rng.random_range(dims.clone());
            let spec = random_spec(dim, &mut rng);
            gen_with_index(&spec, tol).map(|a| (spec, a))
        })
        .collect()
}

/// Which construction produced a commutation pair.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum LambdaRegime {
    /// `λ` a root of unity, `b` a cyclic permutation.
    RootOfUnity,
    /// Arbitrary `λ`, `b` a nilpotent shift, so `b^⊙D = 0`.
    NilpotentB,
}

/// Commutation pair with its construction regime.
#[derive(Debug, Clone, PartialEq)]
pub struct LambdaPair {
    pub pair: CommutationPair,
    pub regime: LambdaRegime,
}

fn shift(n: usize, cyclic: bool) -> CMatrix {
    let mut b = CMatrix::zeros(n, n);
    for j in 0..n {
        if j + 1 < n {
            b[(j, j + 1)] = C64::new(1.0, 0.0);
        } else if cyclic {
            b[(j, 0)] = C64::new(1.0, 0.0);
        }
    }
    b
}

fn geometric_diag(d: C64, ratio: C64, n: usize) -> CMatrix {
    let mut entries = Vec::with_capacity(n);
    let mut x = d;
    for _ in 0..n {
        entries.push(x);
        x *= ratio;
    }
    CMatrix::diag(&entries)
}

fn cis(turns: f64) -> C64 {
    C64::from_polar(1.0, 2.0 * PI * turns)
}

/// Pair with `ab = λ ba` and `a* b = μ b a*`, `λ` a primitive
/// `root_order`-th root of unity and `μ = conj λ`.
///
/// `a = diag(d, d/λ, …)` and `b` is the cyclic shift. With
/// `singular_summand`, two 2×2 summands make both `a` and `b` singular: a
/// shift paired with `diag(β, λβ)` and `diag(α, α/λ)` paired with a shift.
pub fn gen_lambda_pair(n: usize, root_order: usize, seed: u64, singular_summand: bool) -> Result<LambdaPair> {
    if n == 0 || root_order == 0 || n % root_order != 0 {
        return Err(Error::InvalidSpec(format!(
            "root order {root_order} must divide n = {n}"
        )));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let lambda = cis(1.0 / root_order as f64);
    let inv = lambda.conj();
    let mut a = geometric_diag(modulus_between(0.5, 1.0, &mut rng), inv, n);
    let mut b = shift(n, true);
    if singular_summand {
        let beta = modulus_between(0.5, 1.0, &mut rng);
        let alpha = modulus_between(0.5, 1.0, &mut rng);
        a = CMatrix::block_diag(&[&a, &shift(2, false), &geometric_diag(alpha, inv, 2)]);
        b = CMatrix::block_diag(&[&b, &geometric_diag(beta, lambda, 2), &shift(2, false)]);
    }
    Ok(LambdaPair {
        pair: CommutationPair::new(normalize_spectral(&a), normalize_spectral(&b), lambda, inv),
        regime: LambdaRegime::RootOfUnity,
    })
}

/// Pair with `ab = λ ba`, `a* b = conj(λ) b a*` for an arbitrary nonzero
/// `λ`: `a` geometric with ratio `1/λ`, `b` the non-cyclic shift.
pub fn gen_lambda_pair_nilpotent(n: usize, lambda: C64, seed: u64) -> Result<LambdaPair> {
    if n == 0 || !(lambda.norm() > 0.0) || !lambda.is_finite() {
        return Err(Error::InvalidSpec("need n ≥ 1 and a finite nonzero λ".into()));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let a = geometric_diag(modulus_between(0.5, 1.0, &mut rng), lambda.inv(), n);
    Ok(LambdaPair {
        pair: CommutationPair::new(normalize_spectral(&a), shift(n, false), lambda, lambda.conj()),
        regime: LambdaRegime::NilpotentB,
    })
}

fn gcd(a: usize, b: usize) -> usize {
    if b == 0 { a } else { gcd(b, a % b) }
}

/// Pair with `bab = λ ab² = μ b²a` and `ba*b = λ' a*b² = μ' b²a*`.
///
/// `a = diag(d, λd, λ²d, …)` with `λ` a random primitive `m`-th root of
/// unity for `m | n`, `b` the cyclic shift; then `μ = 1/λ`, `λ' = conj λ`,
/// `μ' = λ`.
pub fn gen_thm35_pair(n: usize, seed: u64) -> Result<CommutationPair> {
    if n < 2 {
        return Err(Error::InvalidSpec("thm3.5 pairs need n ≥ 2".into()));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let j = loop {
        let j = rng.random_range(1..n);
        if gcd(j, n) == 1 {
            break j;
        }
    };
    let lambda = cis(j as f64 / n as f64);
    let a = geometric_diag(modulus_between(0.5, 1.0, &mut rng), lambda, n);
    Ok(CommutationPair::new(a, shift(n, true), lambda, lambda.inv()).with_primes(lambda.conj(), lambda))
}

/// `a = b = diag(2, 0)` with all weights 1.
pub fn commuting_thm35_pair() -> CommutationPair {
    let a = CMatrix::diag_real(&[2.0, 0.0]);
    let one = C64::new(1.0, 0.0);
    CommutationPair::new(a.clone(), a, one, one).with_primes(one, one)
}

/// How [`gen_block_triple`] meets the series hypothesis.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum BlockMode {
    /// `D` nilpotent, so `D^D = 0`.
    NilpotentD,
    /// `B = A^{i(A)} R`, so `A^π B = 0`.
    RangeB,
    /// `B` sampled from the null space of the vectorized series map.
    NullspaceSolve,
}

impl BlockMode {
    pub const ALL: [BlockMode; 3] = [BlockMode::NilpotentD, BlockMode::RangeB, BlockMode::NullspaceSolve];
}

/// `(A, B, D)` with `A` `r×r`, `B` `r×s`, `D` `s×s`.
#[derive(Debug, Clone, PartialEq)]
pub struct BlockTriple {
    pub a: CMatrix,
    pub b: CMatrix,
    pub d: CMatrix,
    pub mode: BlockMode,
    pub hypothesis_residual: f64,
    pub note: Option<String>,
}

fn random_rect<R: Rng>(rows: usize, cols: usize, rng: &mut R) -> CMatrix {
    CMatrix::from_fn(rows, cols, |_, _| random_complex(rng))
}

/// Singular `A` when the size allows it.
fn block_a<R: Rng>(r: usize, rng: &mut R, tol: &Tolerances) -> Result<CMatrix> {
    let spec = if r == 1 {
        GenSpec::new(1, 1, 0, rng.random())
    } else {
        let rank = rng.random_range(1..r);
        GenSpec::new(r, rank, rng.random_range(1..=r.min(rank + 1)), rng.random())
    };
    gen_with_index(&spec, tol)
}

/// Non-nilpotent `D`.
fn block_d<R: Rng>(s: usize, rng: &mut R, tol: &Tolerances) -> Result<CMatrix> {
    let rank = rng.random_range(1..=s);
    let index = if rank == s { 0 } else { rng.random_range(1..=s.min(rank + 1)) };
    let mut spec = GenSpec::new(s, rank, index, rng.random());
    if index > 0 && index + (s - rank) - 1 == s {
        // Only a nilpotent matrix fits; fall back to one fewer Jordan step.
        spec.index -= 1;
    }
    gen_with_index(&spec, tol)
}

fn nilpotent<R: Rng>(s: usize, rng: &mut R, tol: &Tolerances) -> CMatrix {
    let mut sizes = Vec::new();
    let mut left = s;
    while left > 0 {
        let k = rng.random_range(1..=left);
        sizes.push(k);
        left -= k;
    }
    assemble_similar(0, &sizes, 1.0, rng, tol)
}

/// Triple meeting `Σ_{i=0}^{i(A)} A^i A^π B (D^D)^{i+2} = 0`.
///
/// A trivial null space in [`BlockMode::NullspaceSolve`] yields `B = 0`
/// and a note.
pub fn gen_block_triple(r: usize, s: usize, mode: BlockMode, seed: u64, tol: &Tolerances) -> Result<BlockTriple> {
    if r == 0 || s == 0 {
        return Err(Error::InvalidSpec("block sizes must be positive".into()));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let a = block_a(r, &mut rng, tol)?;
    let mut note = None;
    let (b, d) = match mode {
        BlockMode::NilpotentD => (random_rect(r, s, &mut rng), nilpotent(s, &mut rng, tol)),
        BlockMode::RangeB => {
            let k = inverses::index(&a, tol)?;
            let b = a.pow(k)?.matmul(&random_rect(r, s, &mut rng));
            (b, block_d(s, &mut rng, tol)?)
        }
        BlockMode::NullspaceSolve => {
            let d = block_d(s, &mut rng, tol)?;
            let k = inverses::index(&a, tol)?;
            let dd = inverses::drazin(&d, tol)?.dinv;
            let a_pi = &CMatrix::identity(r) - &a.matmul(&inverses::drazin(&a, tol)?.dinv);
            let mut map = CMatrix::zeros(r * s, r * s);
            let mut ai_pi = a_pi;
            let mut dpow = dd.matmul(&dd);
            for _ in 0..=k {
                map = &map + &dpow.transpose().kron(&ai_pi);
                ai_pi = a.matmul(&ai_pi);
                dpow = dpow.matmul(&dd);
            }
            let basis = matcore::null_basis(&map, tol);
            let b = if basis.is_empty() {
                note = Some("series map has trivial null space; B = 0".into());
                CMatrix::zeros(r, s)
            } else {
                let mut v = vec![C64::new(0.0, 0.0); r * s];
                for col in &basis {
                    let w = random_complex(&mut rng);
                    for (vi, ci) in v.iter_mut().zip(col) {
                        *vi += w * ci;
                    }
                }
                // Un-vectorize column-major.
                CMatrix::from_fn(r, s, |i, j| v[j * r + i])
            };
            (b, d)
        }
    };
    let b = normalize_spectral(&b);
    let hypothesis_residual = block_hypothesis_residual(&a, &b, &d, tol)?;
    if hypothesis_residual > HYPOTHESIS_BOUND {
        let mut residuals = Residuals::new();
        residuals.insert("series_vanishes".into(), hypothesis_residual);
        return Err(Error::NumericalFailure {
            context: "gen_block_triple",
            residuals,
        });
    }
    Ok(BlockTriple {
        a,
        b,
        d,
        mode,
        hypothesis_residual,
        note,
    })
}

/// Ordered pair `a ≤ b` with projection ranks `dims`.
pub fn gen_order_pair(dims: (usize, usize, usize), seed: u64, tol: &Tolerances) -> Result<(CMatrix, CMatrix)> {
    order::thm44_assemble(dims.0, dims.1, dims.2, seed, tol)
}
