//! Exact combinatorial primitives: factorials, generalized binomials, an
//! alternating factorial-ratio identity, rational Gaussian elimination and a
//! closed-form inverse for a structured binomial system.

use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::rational::{int, rat, Int, Rat};

/// `n!` as a big integer.
pub fn factorial(n: u32) -> Int {
    let mut acc = Int::one();
    for k in 2..=i64::from(n) {
        acc *= int(k);
    }
    acc
}

/// Falling factorial `i(i-1)...(i-n+1)`, with the empty product equal to 1.
pub fn falling_factorial(i: i64, n: u32) -> Rat {
    Rat::from_integer(falling_factorial_int(i, n))
}

pub(crate) fn falling_factorial_int(i: i64, n: u32) -> Int {
    let mut acc = Int::one();
    for k in 0..i64::from(n) {
        acc *= int(i - k);
    }
    acc
}

/// Generalized binomial coefficient with integer upper index.
///
/// Returns 0 for `k < 0` and for `0 <= n < k`; for negative `n` it is
/// `(n)_k / k!`, so e.g. `binomial(-3, 2) = 6`.
pub fn binomial(n: i64, k: i64) -> Rat {
    Rat::from_integer(binomial_int(n, k))
}

pub(crate) fn binomial_int(n: i64, k: i64) -> Int {
    if k < 0 || (n >= 0 && k > n) {
        return Int::zero();
    }
    let k = k as u32;
    let num = falling_factorial_int(n, k);
    // The quotient is exact for any integer upper index.
    num / factorial(k)
}

/// Ratio of factorials `a! / b!` for non-negative `a`, `b`.
pub(crate) fn factorial_ratio(a: i64, b: i64) -> Rat {
    debug_assert!(a >= 0 && b >= 0);
    if a >= b {
        Rat::from_integer(falling_factorial_int(a, (a - b) as u32))
    } else {
        Rat::from_integer(falling_factorial_int(b, (b - a) as u32)).recip()
    }
}

/// Left-hand side of the alternating identity
/// `sum_k (-1)^k C(n,k) (k+alpha)!/(k+beta)!`, by direct summation.
pub fn appendix_b_lhs(alpha: u32, beta: u32, n: u32) -> Result<Rat> {
    check_positive(alpha, beta, n)?;
    let mut acc = Rat::zero();
    for k in 0..=i64::from(n) {
        let term = binomial(i64::from(n), k)
            * factorial_ratio(k + i64::from(alpha), k + i64::from(beta));
        if k % 2 == 0 {
            acc += term;
        } else {
            acc -= term;
        }
    }
    Ok(acc)
}

/// Closed form of the same sum: `alpha!/(beta+n)! * (beta-alpha+n-1)_n`.
pub fn appendix_b_rhs(alpha: u32, beta: u32, n: u32) -> Result<Rat> {
    check_positive(alpha, beta, n)?;
    let (alpha, beta, n) = (i64::from(alpha), i64::from(beta), i64::from(n));
    Ok(factorial_ratio(alpha, beta + n) * falling_factorial(beta - alpha + n - 1, n as u32))
}

fn check_positive(alpha: u32, beta: u32, n: u32) -> Result<()> {
    if alpha == 0 || beta == 0 || n == 0 {
        return Err(Error::domain("alpha, beta, n must be positive integers"));
    }
    Ok(())
}

/// Dense matrix of exact rationals, row-major.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RatMatrix {
    rows: usize,
    cols: usize,
    data: Vec<Rat>,
}

impl RatMatrix {
    pub fn zero(rows: usize, cols: usize) -> Self {
        RatMatrix {
            rows,
            cols,
            data: vec![Rat::zero(); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zero(n, n);
        for i in 0..n {
            *m.at_mut(i, i) = Rat::one();
        }
        m
    }

    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> Rat) -> Self {
        let mut m = Self::zero(rows, cols);
        for i in 0..rows {
            for j in 0..cols {
                *m.at_mut(i, j) = f(i, j);
            }
        }
        m
    }

    pub fn column(entries: Vec<Rat>) -> Self {
        let rows = entries.len();
        RatMatrix {
            rows,
            cols: 1,
            data: entries,
        }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn at(&self, i: usize, j: usize) -> &Rat {
        &self.data[i * self.cols + j]
    }

    pub fn at_mut(&mut self, i: usize, j: usize) -> &mut Rat {
        &mut self.data[i * self.cols + j]
    }

    pub fn mul(&self, other: &RatMatrix) -> RatMatrix {
        assert_eq!(self.cols, other.rows, "dimension mismatch");
        let mut out = RatMatrix::zero(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                if self.at(i, k).is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    let add = self.at(i, k) * other.at(k, j);
                    *out.at_mut(i, j) += add;
                }
            }
        }
        out
    }

    fn swap_rows(&mut self, i: usize, j: usize) {
        if i == j {
            return;
        }
        for k in 0..self.cols {
            self.data.swap(i * self.cols + k, j * self.cols + k);
        }
    }
}

/// Solves `A x = b` exactly by Gaussian elimination with first-nonzero
/// pivoting and back-substitution.
pub fn gauss_solve(a: &RatMatrix, b: &RatMatrix) -> Result<RatMatrix> {
    if a.rows != a.cols {
        return Err(Error::domain("coefficient matrix must be square"));
    }
    if b.rows != a.rows {
        return Err(Error::domain("right-hand side row count mismatch"));
    }
    let n = a.rows;
    let mut m = a.clone();
    let mut rhs = b.clone();
    for col in 0..n {
        let pivot_row = (col..n).find(|&r| !m.at(r, col).is_zero()).ok_or_else(|| {
            Error::SingularMatrix(format!("zero pivot column {col}"))
        })?;
        m.swap_rows(col, pivot_row);
        rhs.swap_rows(col, pivot_row);
        let pivot = m.at(col, col).clone();
        for r in col + 1..n {
            if m.at(r, col).is_zero() {
                continue;
            }
            let factor = m.at(r, col) / &pivot;
            for k in col..n {
                let sub = &factor * m.at(col, k);
                *m.at_mut(r, k) -= sub;
            }
            for k in 0..rhs.cols {
                let sub = &factor * rhs.at(col, k);
                *rhs.at_mut(r, k) -= sub;
            }
        }
    }
    let mut x = RatMatrix::zero(n, rhs.cols);
    for k in 0..rhs.cols {
        for row in (0..n).rev() {
            let mut acc = rhs.at(row, k).clone();
            for j in row + 1..n {
                acc -= m.at(row, j) * x.at(j, k);
            }
            *x.at_mut(row, k) = acc / m.at(row, row);
        }
    }
    Ok(x)
}

/// The structured binomial system: `A = [C(j+alpha, i+N)]`,
/// `B = [C(beta, i+N)]`, `0 <= i, j <= N-1`.
pub fn binomial_system(n: u32, alpha: i64, beta: i64) -> (RatMatrix, RatMatrix) {
    let size = n as usize;
    let nn = i64::from(n);
    let a = RatMatrix::from_fn(size, size, |i, j| {
        binomial(j as i64 + alpha, i as i64 + nn)
    });
    let b = RatMatrix::column((0..size).map(|i| binomial(beta, i as i64 + nn)).collect());
    (a, b)
}

/// Closed form of `A^{-1} B` for the structured binomial system, valid for
/// `alpha > beta >= N`.
pub fn appendix_c_closed_form(n: u32, alpha: i64, beta: i64) -> Result<RatMatrix> {
    let nn = i64::from(n);
    if !(alpha > beta && beta >= nn) {
        return Err(Error::domain(format!(
            "closed form requires alpha > beta >= N, got alpha={alpha}, beta={beta}, N={n}"
        )));
    }
    let entries = (0..n as i64)
        .map(|i| {
            let sign = if i % 2 == 0 { rat(1) } else { rat(-1) };
            sign * rat(nn)
                / rat(i + alpha - beta)
                * binomial(beta, nn)
                * binomial(alpha - beta + nn - 1, nn)
                * binomial(nn - 1, i)
                / binomial(i + alpha, nn)
        })
        .collect();
    Ok(RatMatrix::column(entries))
}

/// Triangular factors of the structured system: `A = L U^{-1}`, together with
/// the closed-form inverse of `L`. Requires `alpha > N`.
pub fn appendix_c_factors(n: u32, alpha: i64) -> Result<(RatMatrix, RatMatrix, RatMatrix)> {
    let nn = i64::from(n);
    if alpha <= nn {
        return Err(Error::domain(format!(
            "factorization requires alpha > N, got alpha={alpha}, N={n}"
        )));
    }
    let size = n as usize;
    let l = RatMatrix::from_fn(size, size, |i, j| {
        let (i, j) = (i as i64, j as i64);
        if i < j {
            return Rat::zero();
        }
        binomial(j + alpha, i + nn) * falling_factorial(i, j as u32)
            / falling_factorial(j + alpha - nn, j as u32)
    });
    let u = RatMatrix::from_fn(size, size, |i, j| {
        let (i, j) = (i as i64, j as i64);
        if i > j {
            return Rat::zero();
        }
        let sign = if (i + j) % 2 == 0 { rat(1) } else { rat(-1) };
        sign * binomial(j, i) * falling_factorial(j + alpha, n) / falling_factorial(i + alpha, n)
    });
    let linv = RatMatrix::from_fn(size, size, |i, j| {
        let (i, j) = (i as i64, j as i64);
        if i < j {
            return Rat::zero();
        }
        let sign = if (i + j) % 2 == 0 { rat(1) } else { rat(-1) };
        sign * Rat::from_integer(factorial((j + nn) as u32))
            * falling_factorial(i + alpha - nn, (i + 1) as u32)
            / Rat::from_integer(factorial(j as u32))
            / Rat::from_integer(factorial((i - j) as u32))
            / falling_factorial(i + alpha, (j + nn + 1) as u32)
    });
    Ok((l, u, linv))
}

/// Signum of a rational as -1, 0 or 1.
pub fn rat_signum(x: &Rat) -> i32 {
    if x.is_zero() {
        0
    } else if x.is_positive() {
        1
    } else {
        -1
    }
}
