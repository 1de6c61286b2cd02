//! Two-sided exit theory: lacunary Vandermonde systems solved through
//! symmetric-function determinants, the joint exit generating function, the
//! gambler's-ruin law with its pseudo-moments, boundary interpolation
//! polynomials and the discrete Lauricella problem.

use num_complex::Complex64;
use num_traits::{Num, One, Zero};

use crate::combin::{binomial, factorial, falling_factorial};
use crate::error::{Error, Result};
use crate::oracle::AbsorbingDp;
use crate::overshoot::{backward_diff, forward_diff};
use crate::poly::{lagrange_interpolate, Poly};
use crate::rational::{rat, Rat, ValueTable};
use crate::spectral::roots;
use crate::walk::{expect_after, WalkParams};

pub use crate::walk::iterated_laplacian;

/// Scalar kinds the lacunary machinery runs on: exact rationals and double
/// complex numbers.
pub trait LacunaryScalar: Num + Clone {
    /// Whether a value is usable as a pivot / denominator.
    fn usable(&self) -> bool;
    /// Weight used to pick the stablest pivot; any positive constant works
    /// for exact arithmetic.
    fn pivot_weight(&self) -> f64;
    /// Node distinctness: exact for rationals, relative 1e-12 for floats.
    fn distinct_from(&self, other: &Self) -> bool;
}

impl LacunaryScalar for Rat {
    fn usable(&self) -> bool {
        !self.is_zero()
    }

    fn pivot_weight(&self) -> f64 {
        if self.is_zero() {
            0.0
        } else {
            1.0
        }
    }

    fn distinct_from(&self, other: &Self) -> bool {
        self != other
    }
}

impl LacunaryScalar for Complex64 {
    fn usable(&self) -> bool {
        self.norm() > 1e-300
    }

    fn pivot_weight(&self) -> f64 {
        self.norm()
    }

    fn distinct_from(&self, other: &Self) -> bool {
        let scale = self.norm().max(other.norm()).max(1.0);
        (self - other).norm() > 1e-12 * scale
    }
}

/// A Vandermonde system with a contiguous gap: unknowns sit at powers
/// `{0..p-1} U {p+q..p+q+r-1}` and there are `p+r` nodes.
#[derive(Debug, Clone)]
pub struct LacunarySystem<T> {
    pub p: usize,
    pub q: usize,
    pub r: usize,
    pub nodes: Vec<T>,
    pub rhs: Vec<T>,
}

impl<T: LacunaryScalar> LacunarySystem<T> {
    pub fn new(p: usize, q: usize, r: usize, nodes: Vec<T>, rhs: Vec<T>) -> Result<Self> {
        if p + r == 0 {
            return Err(Error::domain("system needs at least one unknown"));
        }
        if nodes.len() != p + r {
            return Err(Error::domain(format!(
                "expected {} nodes, got {}",
                p + r,
                nodes.len()
            )));
        }
        if rhs.len() != p + r {
            return Err(Error::domain(format!(
                "expected {} right-hand entries, got {}",
                p + r,
                rhs.len()
            )));
        }
        for i in 0..nodes.len() {
            for j in i + 1..nodes.len() {
                if !nodes[i].distinct_from(&nodes[j]) {
                    return Err(Error::DegenerateNodes(format!(
                        "nodes {i} and {j} coincide"
                    )));
                }
            }
        }
        Ok(LacunarySystem { p, q, r, nodes, rhs })
    }

    /// The power indices carrying unknowns.
    pub fn index_set(&self) -> Vec<usize> {
        (0..self.p)
            .chain(self.p + self.q..self.p + self.q + self.r)
            .collect()
    }
}

/// Elementary symmetric polynomials `e_0..e_deg` of `nodes`, skipping the
/// node at `skip` (pass `nodes.len()` to keep all).
fn elementary_symmetric<T: LacunaryScalar>(nodes: &[T], skip: usize, deg: usize) -> Vec<T> {
    let mut e = vec![T::zero(); deg + 1];
    e[0] = T::one();
    let mut count = 0usize;
    for (i, x) in nodes.iter().enumerate() {
        if i == skip {
            continue;
        }
        count += 1;
        for m in (1..=deg.min(count)).rev() {
            let add = e[m - 1].clone() * x.clone();
            e[m] = e[m].clone() + add;
        }
    }
    e
}

/// Determinant by Gaussian elimination with weighted pivoting.
pub(crate) fn det_generic<T: LacunaryScalar>(mut m: Vec<Vec<T>>) -> T {
    let n = m.len();
    let mut det = T::one();
    for col in 0..n {
        let pivot_row = (col..n)
            .max_by(|&a, &b| {
                m[a][col]
                    .pivot_weight()
                    .partial_cmp(&m[b][col].pivot_weight())
                    .unwrap()
            })
            .unwrap();
        if !m[pivot_row][col].usable() {
            return T::zero();
        }
        if pivot_row != col {
            m.swap(pivot_row, col);
            det = T::zero() - det;
        }
        let pivot = m[col][col].clone();
        det = det * pivot.clone();
        for row in col + 1..n {
            if !m[row][col].usable() {
                continue;
            }
            let factor = m[row][col].clone() / pivot.clone();
            for k in col..n {
                let sub = factor.clone() * m[col][k].clone();
                m[row][k] = m[row][k].clone() - sub;
            }
        }
    }
    det
}

fn sym_at<T: LacunaryScalar>(e: &[T], m: i64) -> T {
    if m < 0 || m as usize >= e.len() {
        T::zero()
    } else {
        e[m as usize].clone()
    }
}

/// The Toeplitz symmetric-function determinant carried by the lacunary
/// Vandermonde: `det [ e_{r+i-j} ]`, size `q x q` (1 for `q = 0`).
fn schur_block<T: LacunaryScalar>(e: &[T], q: usize, r: usize) -> T {
    if q == 0 {
        return T::one();
    }
    let m: Vec<Vec<T>> = (0..q)
        .map(|i| {
            (0..q)
                .map(|j| sym_at(e, r as i64 + i as i64 - j as i64))
                .collect()
        })
        .collect();
    det_generic(m)
}

/// The bordered minor used by Cramer's rule: the `q x (q+1)` Toeplitz block
/// over the symmetric functions omitting node `k`, closed by the row selected
/// by the unknown's power `ell`.
fn schur_minor<T: LacunaryScalar>(ek: &[T], p: usize, q: usize, r: usize, ell: usize) -> T {
    let size = q + 1;
    let mut m: Vec<Vec<T>> = (0..q)
        .map(|i| {
            (0..size)
                .map(|j| sym_at(ek, r as i64 + i as i64 - j as i64))
                .collect()
        })
        .collect();
    let last_base = (p + q + r) as i64 - ell as i64 - 1;
    m.push((0..size).map(|j| sym_at(ek, last_base - j as i64)).collect());
    det_generic(m)
}

/// Lacunary Vandermonde determinant through the symmetric-function
/// factorization `prod_{i<j} (u_j - u_i) * det[e_{r+i-j}]`.
pub fn lacunary_det<T: LacunaryScalar>(sys: &LacunarySystem<T>) -> T {
    let n = sys.nodes.len();
    let mut vandermonde = T::one();
    for i in 0..n {
        for j in i + 1..n {
            vandermonde = vandermonde * (sys.nodes[j].clone() - sys.nodes[i].clone());
        }
    }
    let e = elementary_symmetric(&sys.nodes, n, n);
    vandermonde * schur_block(&e, sys.q, sys.r)
}

/// The same determinant assembled entrywise and expanded directly; the
/// oracle for `lacunary_det`.
pub fn lacunary_det_direct<T: LacunaryScalar>(sys: &LacunarySystem<T>) -> T {
    let idx = sys.index_set();
    let m: Vec<Vec<T>> = sys
        .nodes
        .iter()
        .map(|u| idx.iter().map(|&e| power(u, e)).collect())
        .collect();
    det_generic(m)
}

fn power<T: LacunaryScalar>(x: &T, e: usize) -> T {
    let mut acc = T::one();
    for _ in 0..e {
        acc = acc * x.clone();
    }
    acc
}

/// Solves the lacunary system by symmetric-function Cramer quotients,
/// returning `(power, value)` pairs over the index set.
pub fn lacunary_solve<T: LacunaryScalar>(sys: &LacunarySystem<T>) -> Result<Vec<(usize, T)>> {
    let n = sys.nodes.len();
    let e_all = elementary_symmetric(&sys.nodes, n, n);
    let schur = schur_block(&e_all, sys.q, sys.r);
    if !schur.usable() {
        return Err(Error::SingularSchur);
    }
    // Per-node data: symmetric functions omitting k, and p_k.
    let mut minors: Vec<(T, Vec<T>)> = Vec::with_capacity(n);
    for k in 0..n {
        let ek = elementary_symmetric(&sys.nodes, k, n.saturating_sub(1));
        let mut pk = T::one();
        for i in 0..n {
            if i != k {
                pk = pk * (sys.nodes[k].clone() - sys.nodes[i].clone());
            }
        }
        minors.push((pk, ek));
    }
    let mut out = Vec::with_capacity(n);
    for ell in sys.index_set() {
        let mut acc = T::zero();
        for k in 0..n {
            let (pk, ek) = &minors[k];
            let minor = schur_minor(ek, sys.p, sys.q, sys.r, ell);
            acc = acc + sys.rhs[k].clone() * minor / pk.clone();
        }
        // Sign (-1)^(ell + p + r - 1).
        if (ell + sys.p + sys.r) % 2 == 0 {
            acc = T::zero() - acc;
        }
        out.push((ell, acc / schur.clone()));
    }
    Ok(out)
}

/// Applies the lacunary system's matrix to a candidate solution; used to
/// check residuals.
pub fn lacunary_apply<T: LacunaryScalar>(
    sys: &LacunarySystem<T>,
    solution: &[(usize, T)],
) -> Vec<T> {
    sys.nodes
        .iter()
        .map(|u| {
            solution
                .iter()
                .map(|(e, x)| power(u, *e) * x.clone())
                .fold(T::zero(), |a, b| a + b)
        })
        .collect()
}

/// The 2N boundary cells `{a-N+1..a} U {b..b+N-1}` of the interval `(a,b)`.
pub fn boundary_cells(order: u32, a: i64, b: i64) -> Vec<i64> {
    let n = i64::from(order);
    (a - n + 1..=a).chain(b..b + n).collect()
}

fn check_interval(a: i64, b: i64) -> Result<()> {
    if !(a < 0 && 0 < b) {
        return Err(Error::domain(format!(
            "interval must satisfy a < 0 < b, got a={a}, b={b}"
        )));
    }
    Ok(())
}

/// Joint generating function `E(z^{sigma_ab} 1{S_ab = ell})`, computed by the
/// symmetric-function Cramer solver on the roots `u_1..u_N, v_1..v_N`.
pub fn exit_h(params: &WalkParams, a: i64, b: i64, ell: i64, z: f64) -> Result<Complex64> {
    check_interval(a, b)?;
    let n = params.order();
    let cells = boundary_cells(n, a, b);
    if !cells.contains(&ell) {
        return Err(Error::domain(format!("{ell} is not a boundary cell")));
    }
    let solution = exit_h_all(params, a, b, z)?;
    Ok(solution
        .into_iter()
        .find(|(cell, _)| *cell == ell)
        .expect("cell present")
        .1)
}

/// All boundary-cell generating functions at once.
pub fn exit_h_all(params: &WalkParams, a: i64, b: i64, z: f64) -> Result<Vec<(i64, Complex64)>> {
    check_interval(a, b)?;
    let n = params.order();
    let rs = roots(params, z)?;
    let nodes: Vec<Complex64> = rs.u.iter().chain(rs.v.iter()).copied().collect();
    let shift = i64::from(n) - a - 1;
    let rhs: Vec<Complex64> = nodes.iter().map(|u| u.powi(shift as i32)).collect();
    let sys = LacunarySystem::new(
        n as usize,
        (b - a - 1) as usize,
        n as usize,
        nodes,
        rhs,
    )?;
    let solution = lacunary_solve(&sys)?;
    Ok(solution
        .into_iter()
        .map(|(power, value)| (power as i64 - shift, value))
        .collect())
}

/// The same quantity through the plain determinant ratio; numerically less
/// stable near `z = 1`, retained for verification.
pub fn exit_h_direct(params: &WalkParams, a: i64, b: i64, ell: i64, z: f64) -> Result<Complex64> {
    check_interval(a, b)?;
    let n = params.order();
    let cells = boundary_cells(n, a, b);
    if !cells.contains(&ell) {
        return Err(Error::domain(format!("{ell} is not a boundary cell")));
    }
    let rs = roots(params, z)?;
    let nodes: Vec<Complex64> = rs.u.iter().chain(rs.v.iter()).copied().collect();
    let shift = i64::from(n) - a - 1;
    let exponents: Vec<i64> = cells.iter().map(|cell| cell + shift).collect();
    let base: Vec<Vec<Complex64>> = nodes
        .iter()
        .map(|u| exponents.iter().map(|&e| u.powi(e as i32)).collect())
        .collect();
    let denom = det_generic(base.clone());
    if !denom.usable() {
        return Err(Error::NearSingular(denom.norm()));
    }
    let col = cells.iter().position(|cell| *cell == ell).unwrap();
    let mut numer_m = base;
    for (j, row) in numer_m.iter_mut().enumerate() {
        row[col] = nodes[j].powi(shift as i32);
    }
    Ok(det_generic(numer_m) / denom)
}

/// Exit (gambler's ruin) law of the signed walk from 0 on the interval
/// `(a, b)`: 2N signed masses on the boundary cells, total mass one,
/// independent of `c`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ExitLaw {
    a: i64,
    b: i64,
    lower: Vec<Rat>,
    upper: Vec<Rat>,
    scale: Rat,
}

impl ExitLaw {
    pub fn a(&self) -> i64 {
        self.a
    }

    pub fn b(&self) -> i64 {
        self.b
    }

    pub fn order(&self) -> u32 {
        self.lower.len() as u32
    }

    /// The normalizing constant `K = C(N-a-1, N) C(N+b-1, N)`.
    pub fn scale(&self) -> &Rat {
        &self.scale
    }

    pub fn mass(&self, pos: i64) -> Rat {
        let n = self.lower.len() as i64;
        if pos <= self.a && pos > self.a - n {
            self.lower[(self.a - pos) as usize].clone()
        } else if pos >= self.b && pos < self.b + n {
            self.upper[(pos - self.b) as usize].clone()
        } else {
            Rat::zero()
        }
    }

    pub fn cells(&self) -> Vec<i64> {
        boundary_cells(self.order(), self.a, self.b)
    }

    pub fn total_mass(&self) -> Rat {
        self.lower
            .iter()
            .chain(self.upper.iter())
            .fold(Rat::zero(), |acc, m| acc + m)
    }

    pub fn expect(&self, f: impl Fn(i64) -> Rat) -> Rat {
        self.cells()
            .into_iter()
            .map(|cell| self.mass(cell) * f(cell))
            .fold(Rat::zero(), |a, b| a + b)
    }

    pub fn expect_table(&self, f: &ValueTable) -> Result<Rat> {
        let mut acc = Rat::zero();
        for cell in self.cells() {
            let fv = f.get(&cell).ok_or(Error::MissingValue(cell))?;
            acc += self.mass(cell) * fv;
        }
        Ok(acc)
    }
}

/// Closed-form exit law.
pub fn dist_s_ab(order: u32, a: i64, b: i64) -> Result<ExitLaw> {
    check_interval(a, b)?;
    let n = i64::from(order);
    let scale = binomial(n - a - 1, n) * binomial(n + b - 1, n);
    let cell_mass = |anchor: i64, ell: i64| -> Rat {
        let sign = if ell % 2 == 0 { rat(1) } else { rat(-1) };
        sign * &scale * rat(n) / rat(ell + anchor) * binomial(n - 1, ell)
            / binomial(ell + b - a + n - 1, n)
    };
    let lower = (0..n).map(|ell| cell_mass(-a, ell)).collect();
    let upper = (0..n).map(|ell| cell_mass(b, ell)).collect();
    Ok(ExitLaw {
        a,
        b,
        lower,
        upper,
        scale,
    })
}

/// Ruin pseudo-probabilities: mass of exiting at or below `a` and at or
/// above `b`; they sum to one exactly.
pub fn ruin_probs(order: u32, a: i64, b: i64) -> Result<(Rat, Rat)> {
    let law = dist_s_ab(order, a, b)?;
    let down = law.lower.iter().fold(Rat::zero(), |acc, m| acc + m);
    let up = law.upper.iter().fold(Rat::zero(), |acc, m| acc + m);
    Ok((down, up))
}

/// Power pseudo-moment `E[(S_ab)^n]` by direct expectation; vanishes for
/// `1 <= n <= 2N-1`.
pub fn moment_s_ab(order: u32, a: i64, b: i64, n: u32) -> Result<Rat> {
    Ok(dist_s_ab(order, a, b)?.expect(|pos| rat(pos).pow(n as i32)))
}

/// Which boundary half a one-sided functional restricts to.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Side {
    Lower,
    Upper,
}

/// Mixed factorial pseudo-moment `E[S_ab (S_ab - b)_{n-1} 1{side}]` by direct
/// expectation.
pub fn side_moment_mixed(order: u32, a: i64, b: i64, n: u32, side: Side) -> Result<Rat> {
    if n == 0 {
        return Err(Error::domain("moment order must be >= 1"));
    }
    let law = dist_s_ab(order, a, b)?;
    let f = |pos: i64| rat(pos) * falling_factorial(pos - b, n - 1);
    Ok(match side {
        Side::Lower => (0..i64::from(order))
            .map(|ell| law.mass(a - ell) * f(a - ell))
            .fold(Rat::zero(), |acc, v| acc + v),
        Side::Upper => (0..i64::from(order))
            .map(|ell| law.mass(b + ell) * f(b + ell))
            .fold(Rat::zero(), |acc, v| acc + v),
    })
}

/// Closed form of the same mixed moment.
pub fn side_moment_mixed_closed(order: u32, a: i64, b: i64, n: u32, side: Side) -> Result<Rat> {
    if n == 0 {
        return Err(Error::domain("moment order must be >= 1"));
    }
    check_interval(a, b)?;
    let nn = i64::from(order);
    let n_i = i64::from(n);
    let k = binomial(nn - a - 1, nn) * binomial(nn + b - 1, nn);
    let mid = |sign_up: bool| -> Rat {
        if n_i > nn {
            return Rat::zero();
        }
        let magnitude = k.clone() * rat(nn) / rat(2 * nn - n_i)
            * Rat::from_integer(factorial(order))
            / Rat::from_integer(factorial((nn - n_i) as u32))
            / binomial(2 * nn + b - a - 2, 2 * nn - n_i);
        let positive = if sign_up { n % 2 == 1 } else { n % 2 == 0 };
        if positive {
            magnitude
        } else {
            -magnitude
        }
    };
    Ok(match side {
        Side::Upper => mid(true),
        Side::Lower => {
            if n_i <= nn {
                mid(false)
            } else if n_i < 2 * nn {
                Rat::zero()
            } else {
                let magnitude = k * rat(nn)
                    * Rat::from_integer(factorial(order))
                    * Rat::from_integer(factorial((n_i - nn - 1) as u32))
                    * binomial(n_i + b - a - 2, n_i - 2 * nn);
                if (order + n) % 2 == 1 {
                    magnitude
                } else {
                    -magnitude
                }
            }
        }
    })
}

/// `Beta(x, y) = (x-1)!(y-1)!/(x+y-1)!` for positive integer arguments.
fn beta_fn(x: i64, y: i64) -> Rat {
    debug_assert!(x >= 1 && y >= 1);
    Rat::from_integer(factorial((x - 1) as u32) * factorial((y - 1) as u32))
        / Rat::from_integer(factorial((x + y - 1) as u32))
}

/// Exact value of the triangle integral
/// `int_{0 <= v <= u <= 1} u^A (1-u)^B v^C (1-v)^D du dv`
/// for non-negative integer exponents.
pub fn triangle_integral_upper(a_exp: i64, b_exp: i64, c_exp: i64, d_exp: i64) -> Rat {
    debug_assert!(a_exp >= 0 && b_exp >= 0 && c_exp >= 0 && d_exp >= 0);
    let mut acc = Rat::zero();
    for m in 0..=d_exp {
        let term = binomial(d_exp, m) / rat(c_exp + m + 1)
            * beta_fn(a_exp + c_exp + m + 2, b_exp + 1);
        if m % 2 == 0 {
            acc += term;
        } else {
            acc -= term;
        }
    }
    acc
}

/// The mirror triangle `0 <= u <= v <= 1`, by exchanging the two factors.
pub fn triangle_integral_lower(a_exp: i64, b_exp: i64, c_exp: i64, d_exp: i64) -> Rat {
    triangle_integral_upper(c_exp, d_exp, a_exp, b_exp)
}

/// The boundary functionals `I^-_{ab,j}`, `I^+_{ab,j}` of the exit law,
/// reduced from their Beta-type double integrals to exact rationals.
///
/// They satisfy `E[f(S_ab)] = sum_j I^-_j (D-)^j f(a) + sum_j I^+_j (D+)^j f(b)`.
pub fn i_coeffs(order: u32, a: i64, b: i64) -> Result<(Vec<Rat>, Vec<Rat>)> {
    check_interval(a, b)?;
    let n = i64::from(order);
    let k = binomial(n - a - 1, n) * binomial(n + b - 1, n);
    let n_sq = rat(n * n);
    let mut lower = Vec::with_capacity(order as usize);
    let mut upper = Vec::with_capacity(order as usize);
    for j in 0..n {
        let minus = &k
            * &n_sq
            * binomial(n - 1, j)
            * triangle_integral_lower(j - a - 1, n - j - 1, b - 1, n - 1);
        lower.push(minus);
        let mut plus = &k
            * &n_sq
            * binomial(n - 1, j)
            * triangle_integral_upper(-a - 1, n - 1, j + b - 1, n - j - 1);
        if j % 2 == 1 {
            plus = -plus;
        }
        upper.push(plus);
    }
    Ok((lower, upper))
}

/// `E[f(S_ab)]` through the boundary functionals and difference calculus.
pub fn expect_f_s_ab(order: u32, a: i64, b: i64, f: &ValueTable) -> Result<Rat> {
    let (lower, upper) = i_coeffs(order, a, b)?;
    let mut acc = Rat::zero();
    for (j, coeff) in lower.iter().enumerate() {
        acc += coeff * backward_diff(f, a, j as u32)?;
    }
    for (j, coeff) in upper.iter().enumerate() {
        acc += coeff * forward_diff(f, b, j as u32)?;
    }
    Ok(acc)
}

/// Generating function `E(zeta^{S_ab})` at an exact rational argument,
/// through the boundary functionals.
pub fn exit_generating_fn(order: u32, a: i64, b: i64, zeta: &Rat) -> Result<Rat> {
    if zeta.is_zero() {
        return Err(Error::domain("zeta must be nonzero"));
    }
    let (lower, upper) = i_coeffs(order, a, b)?;
    let mut acc = Rat::zero();
    let down_step = Rat::one() - zeta.recip();
    let up_step = zeta - Rat::one();
    let mut pw = zeta.pow(a as i32);
    let mut dw = Rat::one();
    for coeff in &lower {
        acc += coeff * &pw * &dw;
        dw *= &down_step;
    }
    let mut dw = Rat::one();
    pw = zeta.pow(b as i32);
    for coeff in &upper {
        acc += coeff * &pw * &dw;
        dw *= &up_step;
    }
    Ok(acc)
}

/// Boundary interpolation polynomials of the interval: `pplus[j]` has degree
/// `<= 2N-1`, vanishes on the lower cells and takes values `C(ell, j)` on the
/// upper cells; `pminus[j]` mirrors them.
#[derive(Debug, Clone)]
pub struct BoundaryPolys {
    a: i64,
    b: i64,
    pub pminus: Vec<Poly>,
    pub pplus: Vec<Poly>,
}

impl BoundaryPolys {
    pub fn a(&self) -> i64 {
        self.a
    }

    pub fn b(&self) -> i64 {
        self.b
    }

    pub fn order(&self) -> u32 {
        self.pplus.len() as u32
    }
}

pub fn boundary_polys(order: u32, a: i64, b: i64) -> Result<BoundaryPolys> {
    check_interval(a, b)?;
    let n = i64::from(order);
    let mut pplus = Vec::with_capacity(order as usize);
    let mut pminus = Vec::with_capacity(order as usize);
    for j in 0..n {
        let mut plus_pts: Vec<(i64, Rat)> = (0..n).map(|ell| (a - ell, Rat::zero())).collect();
        plus_pts.extend((0..n).map(|ell| (b + ell, binomial(ell, j))));
        pplus.push(lagrange_interpolate(&plus_pts));

        let sign = if j % 2 == 0 { rat(1) } else { rat(-1) };
        let mut minus_pts: Vec<(i64, Rat)> = (0..n)
            .map(|ell| (a - ell, &sign * binomial(ell, j)))
            .collect();
        minus_pts.extend((0..n).map(|ell| (b + ell, Rat::zero())));
        pminus.push(lagrange_interpolate(&minus_pts));
    }
    Ok(BoundaryPolys {
        a,
        b,
        pminus,
        pplus,
    })
}

/// `E_x[f(S_ab)]` through the boundary polynomials.
pub fn expect_exit_from_x(order: u32, a: i64, b: i64, x: i64, f: &ValueTable) -> Result<Rat> {
    let polys = boundary_polys(order, a, b)?;
    let mut acc = Rat::zero();
    for j in 0..order {
        acc += polys.pminus[j as usize].eval_int(x) * backward_diff(f, a, j)?;
        acc += polys.pplus[j as usize].eval_int(x) * forward_diff(f, b, j)?;
    }
    Ok(acc)
}

/// Solution of the discrete 2N-condition boundary-value problem: the unique
/// function with `Delta^N Phi = 0` matching the N backward differences of
/// `phi` at `a` and the N forward differences at `b`.
#[derive(Debug, Clone)]
pub struct LauricellaSolution {
    /// Values on `{a-N+1..b+N-1}`.
    pub values: ValueTable,
    /// The polynomial of degree `<= 2N-1` extending the solution to all
    /// integers.
    pub extension: Poly,
}

pub fn lauricella_solve(
    order: u32,
    a: i64,
    b: i64,
    phi: &ValueTable,
) -> Result<LauricellaSolution> {
    let polys = boundary_polys(order, a, b)?;
    let mut extension = Poly::zero();
    for j in 0..order {
        let down = backward_diff(phi, a, j)?;
        let up = forward_diff(phi, b, j)?;
        extension = extension
            .add(&polys.pminus[j as usize].scale(&down))
            .add(&polys.pplus[j as usize].scale(&up));
    }
    let n = i64::from(order);
    let values = (a - n + 1..=b + n - 1)
        .map(|x| (x, extension.eval_int(x)))
        .collect();
    Ok(LauricellaSolution { values, extension })
}

/// Both sides of the two-sided strong pseudo-Markov identity, evaluated
/// exactly for `a <= x <= b`: the left through the shifted exit law, the
/// right through the boundary-polynomial calculus with the difference
/// operators acting on the boundary anchors.
pub fn markov_ab_check(
    params: &WalkParams,
    a: i64,
    b: i64,
    x: i64,
    n_after: u32,
    f: impl Fn(i64) -> Rat,
) -> Result<(Rat, Rat)> {
    check_interval(a, b)?;
    if n_after > 8 {
        return Err(Error::HorizonTooLarge(format!(
            "post-exit horizon {n_after} exceeds 8"
        )));
    }
    if !(a <= x && x <= b) {
        return Err(Error::domain(format!("start must satisfy a <= x <= b, got {x}")));
    }
    let order = params.order();
    let lhs = if x == a || x == b {
        expect_after(params, n_after, x, &f)
    } else {
        let shifted = dist_s_ab(order, a - x, b - x)?;
        shifted.expect(|cell| expect_after(params, n_after, x + cell, &f))
    };
    let polys = boundary_polys(order, a, b)?;
    let n = i64::from(order);
    let g: ValueTable = (a - n + 1..=a)
        .chain(b..=b + n - 1)
        .map(|anchor| (anchor, expect_after(params, n_after, anchor, &f)))
        .collect();
    let mut rhs = Rat::zero();
    for j in 0..order {
        rhs += polys.pminus[j as usize].eval_int(x) * backward_diff(&g, a, j)?;
        rhs += polys.pplus[j as usize].eval_int(x) * forward_diff(&g, b, j)?;
    }
    Ok((lhs, rhs))
}

/// Exit dynamic program on `(a,b)` for oracle cross-checks.
pub fn exit_dp(params: &WalkParams, a: i64, b: i64, horizon: usize) -> Result<AbsorbingDp> {
    check_interval(a, b)?;
    AbsorbingDp::new(params.clone(), Some(a), Some(b), horizon)
}
