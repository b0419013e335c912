//! Exact arithmetic over `Q(i)` for checking floating-point results.
//!
//! Every generalized inverse here is computed by Gaussian elimination and
//! full-rank factorization, with no rounding anywhere, so values agree with
//! hand derivations symbol for symbol.

pub mod catalog;

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{Signed, ToPrimitive, Zero};

/// Gaussian rational `re + i·im`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Q {
    pub re: BigRational,
    pub im: BigRational,
}

fn rat(n: i64, d: i64) -> BigRational {
    BigRational::new(BigInt::from(n), BigInt::from(d))
}

impl Q {
    pub fn new(re: BigRational, im: BigRational) -> Self {
        Self { re, im }
    }

    pub fn int(n: i64) -> Self {
        Self::frac(n, 1)
    }

    pub fn frac(n: i64, d: i64) -> Self {
        Self::new(rat(n, d), BigRational::zero())
    }

    pub fn complex(re: (i64, i64), im: (i64, i64)) -> Self {
        Self::new(rat(re.0, re.1), rat(im.0, im.1))
    }

    pub fn zero() -> Self {
        Self::int(0)
    }

    pub fn one() -> Self {
        Self::int(1)
    }

    pub fn is_zero(&self) -> bool {
        self.re.is_zero() && self.im.is_zero()
    }

    pub fn conj(&self) -> Self {
        Self::new(self.re.clone(), -self.im.clone())
    }

    pub fn norm_sqr(&self) -> BigRational {
        &self.re * &self.re + &self.im * &self.im
    }

    /// Multiplicative inverse. Panics on zero.
    pub fn inv(&self) -> Self {
        let n = self.norm_sqr();
        assert!(!n.is_zero(), "inverse of zero");
        Self::new(&self.re / &n, -&self.im / &n)
    }

    pub fn to_f64(&self) -> (f64, f64) {
        (self.re.to_f64().unwrap_or(f64::NAN), self.im.to_f64().unwrap_or(f64::NAN))
    }
}

impl fmt::Debug for Q {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.im.is_zero() {
            write!(f, "{}", self.re)
        } else if self.im.is_negative() {
            write!(f, "{}-{}i", self.re, -&self.im)
        } else {
            write!(f, "{}+{}i", self.re, self.im)
        }
    }
}

impl Add for &Q {
    type Output = Q;
    fn add(self, o: &Q) -> Q {
        Q::new(&self.re + &o.re, &self.im + &o.im)
    }
}

impl Sub for &Q {
    type Output = Q;
    fn sub(self, o: &Q) -> Q {
        Q::new(&self.re - &o.re, &self.im - &o.im)
    }
}

impl Mul for &Q {
    type Output = Q;
    fn mul(self, o: &Q) -> Q {
        Q::new(
            &self.re * &o.re - &self.im * &o.im,
            &self.re * &o.im + &self.im * &o.re,
        )
    }
}

impl Neg for &Q {
    type Output = Q;
    fn neg(self) -> Q {
        Q::new(-&self.re, -&self.im)
    }
}

/// Dense matrix over `Q(i)`, row-major. Zero-sized shapes are allowed so
/// full-rank factors of the zero matrix need no special casing.
#[derive(Clone, PartialEq, Eq)]
pub struct QMatrix {
    rows: usize,
    cols: usize,
    data: Vec<Q>,
}

impl fmt::Debug for QMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let rows: Vec<Vec<Q>> = (0..self.rows).map(|i| self.row(i).to_vec()).collect();
        f.debug_list().entries(rows).finish()
    }
}

impl QMatrix {
    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> Q) -> Self {
        let mut data = Vec::with_capacity(rows * cols);
        for i in 0..rows {
            for j in 0..cols {
                data.push(f(i, j));
            }
        }
        Self { rows, cols, data }
    }

    /// Integer entries.
    pub fn from_ints<R: AsRef<[i64]>>(rows: &[R]) -> Self {
        let cols = rows.first().map_or(0, |r| r.as_ref().len());
        Self::from_fn(rows.len(), cols, |i, j| Q::int(rows[i].as_ref()[j]))
    }

    pub fn from_rows(rows: Vec<Vec<Q>>) -> Self {
        let cols = rows.first().map_or(0, Vec::len);
        assert!(rows.iter().all(|r| r.len() == cols), "ragged rows");
        Self {
            rows: rows.len(),
            cols,
            data: rows.into_iter().flatten().collect(),
        }
    }

    pub fn zeros(rows: usize, cols: usize) -> Self {
        Self::from_fn(rows, cols, |_, _| Q::zero())
    }

    pub fn identity(n: usize) -> Self {
        Self::from_fn(n, n, |i, j| if i == j { Q::one() } else { Q::zero() })
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> &Q {
        &self.data[i * self.cols + j]
    }

    fn set(&mut self, i: usize, j: usize, v: Q) {
        self.data[i * self.cols + j] = v;
    }

    fn row(&self, i: usize) -> &[Q] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(Q::is_zero)
    }

    pub fn adjoint(&self) -> Self {
        Self::from_fn(self.cols, self.rows, |i, j| self.get(j, i).conj())
    }

    pub fn scale(&self, s: &Q) -> Self {
        Self::from_fn(self.rows, self.cols, |i, j| s * self.get(i, j))
    }

    pub fn mul(&self, o: &Self) -> Self {
        assert_eq!(self.cols, o.rows, "inner dimensions differ");
        Self::from_fn(self.rows, o.cols, |i, j| {
            (0..self.cols).fold(Q::zero(), |acc, k| &acc + &(self.get(i, k) * o.get(k, j)))
        })
    }

    pub fn add(&self, o: &Self) -> Self {
        assert_eq!((self.rows, self.cols), (o.rows, o.cols));
        Self::from_fn(self.rows, self.cols, |i, j| self.get(i, j) + o.get(i, j))
    }

    pub fn sub(&self, o: &Self) -> Self {
        assert_eq!((self.rows, self.cols), (o.rows, o.cols));
        Self::from_fn(self.rows, self.cols, |i, j| self.get(i, j) - o.get(i, j))
    }

    pub fn pow(&self, k: usize) -> Self {
        assert_eq!(self.rows, self.cols, "power of a non-square matrix");
        (0..k).fold(Self::identity(self.rows), |acc, _| acc.mul(self))
    }

    /// Reduced row echelon form and pivot columns.
    pub fn rref(&self) -> (Self, Vec<usize>) {
        let mut m = self.clone();
        let mut pivots = Vec::new();
        let mut r = 0;
        for c in 0..m.cols {
            let Some(p) = (r..m.rows).find(|&i| !m.get(i, c).is_zero()) else {
                continue;
            };
            for j in 0..m.cols {
                m.data.swap(r * m.cols + j, p * m.cols + j);
            }
            let inv = m.get(r, c).inv();
            for j in 0..m.cols {
                let v = m.get(r, j) * &inv;
                m.set(r, j, v);
            }
            for i in 0..m.rows {
                if i == r || m.get(i, c).is_zero() {
                    continue;
                }
                let f = m.get(i, c).clone();
                for j in 0..m.cols {
                    let v = m.get(i, j) - &(&f * m.get(r, j));
                    m.set(i, j, v);
                }
            }
            pivots.push(c);
            r += 1;
            if r == m.rows {
                break;
            }
        }
        (m, pivots)
    }

    pub fn rank(&self) -> usize {
        self.rref().1.len()
    }

    /// Inverse of a nonsingular square matrix.
    pub fn inverse(&self) -> Option<Self> {
        assert_eq!(self.rows, self.cols, "inverse of a non-square matrix");
        let n = self.rows;
        let aug = Self::from_fn(n, 2 * n, |i, j| {
            if j < n {
                self.get(i, j).clone()
            } else if j - n == i {
                Q::one()
            } else {
                Q::zero()
            }
        });
        let (r, pivots) = aug.rref();
        if pivots.len() < n || pivots[n - 1] >= n {
            return None;
        }
        Some(Self::from_fn(n, n, |i, j| r.get(i, j + n).clone()))
    }

    /// `A = F G` with `F` the pivot columns and `G` the nonzero rows of the RREF.
    pub fn full_rank_factorization(&self) -> (Self, Self) {
        let (r, pivots) = self.rref();
        let f = Self::from_fn(self.rows, pivots.len(), |i, j| self.get(i, pivots[j]).clone());
        let g = Self::from_fn(pivots.len(), self.cols, |i, j| r.get(i, j).clone());
        (f, g)
    }

    /// Moore–Penrose inverse `G*(GG*)⁻¹(F*F)⁻¹F*`.
    pub fn pinv(&self) -> Self {
        let (f, g) = self.full_rank_factorization();
        if f.cols == 0 {
            return Self::zeros(self.cols, self.rows);
        }
        let gg = g.mul(&g.adjoint()).inverse().expect("G has full row rank");
        let ff = f.adjoint().mul(&f).inverse().expect("F has full column rank");
        g.adjoint().mul(&gg).mul(&ff).mul(&f.adjoint())
    }

    /// Orthogonal projector onto the column space, `A A^+`.
    pub fn range_projector(&self) -> Self {
        self.mul(&self.pinv())
    }

    /// Smallest `k` with `rank A^k = rank A^{k+1}`.
    pub fn index(&self) -> usize {
        let mut k = 0;
        let mut p = Self::identity(self.rows);
        loop {
            let next = p.mul(self);
            if next.rank() == p.rank() {
                return k;
            }
            p = next;
            k += 1;
        }
    }

    /// `A^k (A^{2k+1})^+ A^k` with `k` the index.
    pub fn drazin(&self) -> Self {
        let k = self.index();
        let ak = self.pow(k);
        ak.mul(&self.pow(2 * k + 1).pinv()).mul(&ak)
    }

    /// Group inverse; `None` when the index exceeds one.
    pub fn group_inverse(&self) -> Option<Self> {
        (self.index() <= 1).then(|| self.drazin())
    }

    /// Core inverse `A^# A A^+`.
    pub fn core_inverse(&self) -> Option<Self> {
        Some(self.group_inverse()?.mul(self).mul(&self.pinv()))
    }

    /// Core-EP inverse `A^D P_{range(A^k)}`.
    pub fn core_ep(&self) -> Self {
        let k = self.index();
        self.drazin().mul(&self.pow(k).range_projector())
    }

    /// `(b, c)`-inverse `b (cab)^+ c`, when `rank cab = rank b = rank c`.
    pub fn bc_inverse(&self, b: &Self, c: &Self) -> Option<Self> {
        let cab = c.mul(self).mul(b);
        let r = cab.rank();
        (r == b.rank() && r == c.rank()).then(|| b.mul(&cab.pinv()).mul(c))
    }

    /// Entries as `(re, im)` pairs, row-major.
    pub fn to_f64(&self) -> Vec<Vec<(f64, f64)>> {
        (0..self.rows)
            .map(|i| self.row(i).iter().map(Q::to_f64).collect())
            .collect()
    }
}
