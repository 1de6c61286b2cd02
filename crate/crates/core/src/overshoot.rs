//! First overshoot of a single threshold: joint generating function of the
//! overshoot time and place, the exact law of the overshoot position, its
//! pseudo-moments, forward-difference calculus, Newton interpolation
//! polynomials and the strong pseudo-Markov identity.

use num_complex::Complex64;
use num_traits::{One, Zero};

use crate::combin::{binomial, factorial, factorial_ratio, falling_factorial};
use crate::error::{Error, Result};
use crate::oracle::AbsorbingDp;
use crate::poly::Poly;
use crate::rational::{rat, Rat, ValueTable};
use crate::spectral::roots;
use crate::walk::{expect_after, WalkParams};

/// Law of the overshoot position over a threshold `b >= 1`: signed masses on
/// `{b, ..., b+N-1}` summing to one. The law does not depend on `c`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct OvershootLaw {
    b: i64,
    masses: Vec<Rat>,
}

impl OvershootLaw {
    pub fn b(&self) -> i64 {
        self.b
    }

    pub fn order(&self) -> u32 {
        self.masses.len() as u32
    }

    pub fn mass(&self, ell: i64) -> Rat {
        let idx = ell - self.b;
        if idx < 0 || idx >= self.masses.len() as i64 {
            Rat::zero()
        } else {
            self.masses[idx as usize].clone()
        }
    }

    pub fn support(&self) -> impl Iterator<Item = i64> + '_ {
        self.b..self.b + self.masses.len() as i64
    }

    pub fn total_mass(&self) -> Rat {
        self.masses.iter().fold(Rat::zero(), |a, b| a + b)
    }

    pub fn expect(&self, f: impl Fn(i64) -> Rat) -> Rat {
        self.support()
            .map(|ell| self.mass(ell) * f(ell))
            .fold(Rat::zero(), |a, b| a + b)
    }

    pub fn expect_table(&self, f: &ValueTable) -> Result<Rat> {
        let mut acc = Rat::zero();
        for ell in self.support() {
            let fv = f.get(&ell).ok_or(Error::MissingValue(ell))?;
            acc += self.mass(ell) * fv;
        }
        Ok(acc)
    }
}

/// Closed-form law of the overshoot position:
/// `mass(l) = (-1)^(b+l) (b/l) C(N-1, l-b) C(b+N-1, b)`.
pub fn dist_s_b_plus(order: u32, b: i64) -> Result<OvershootLaw> {
    if b < 1 {
        return Err(Error::domain(format!("threshold must satisfy b >= 1, got {b}")));
    }
    let n = i64::from(order);
    let masses = (b..b + n)
        .map(|ell| {
            let sign = if (b + ell) % 2 == 0 { rat(1) } else { rat(-1) };
            sign * rat(b) / rat(ell) * binomial(n - 1, ell - b) * binomial(b + n - 1, b)
        })
        .collect();
    Ok(OvershootLaw { b, masses })
}

fn check_z(z: f64) -> Result<()> {
    if !(z > 0.0 && z < 1.0) {
        return Err(Error::domain(format!("z must lie in (0,1), got {z}")));
    }
    Ok(())
}

/// Elementary symmetric polynomials of `nodes` with index `skip` omitted,
/// degrees `0..=deg`.
fn elementary_symmetric_omitting(nodes: &[Complex64], skip: usize, deg: usize) -> Vec<Complex64> {
    let mut e = vec![Complex64::new(0.0, 0.0); deg + 1];
    e[0] = Complex64::new(1.0, 0.0);
    let mut count = 0usize;
    for (i, x) in nodes.iter().enumerate() {
        if i == skip {
            continue;
        }
        count += 1;
        let top = deg.min(count);
        for m in (1..=top).rev() {
            let add = e[m - 1] * x;
            e[m] += add;
        }
    }
    e
}

/// Joint generating function `E(z^{sigma_b^+} 1{S_b^+ = ell})` through the
/// symmetric-function expansion over the interior roots.
pub fn h_plus(params: &WalkParams, b: i64, ell: i64, z: f64) -> Result<Complex64> {
    check_z(z)?;
    let n = params.order();
    if b < 1 {
        return Err(Error::domain(format!("threshold must satisfy b >= 1, got {b}")));
    }
    if ell < b || ell >= b + i64::from(n) {
        return Err(Error::domain(format!(
            "overshoot cell must lie in {{b..b+N-1}}, got {ell}"
        )));
    }
    let rs = roots(params, z)?;
    let deg = (ell - b) as usize;
    let mut acc = Complex64::new(0.0, 0.0);
    for k in 0..n as usize {
        let sym = elementary_symmetric_omitting(&rs.u, k, deg);
        let mut denom = Complex64::new(1.0, 0.0);
        for j in 0..n as usize {
            if j != k {
                denom *= rs.u[k] - rs.u[j];
            }
        }
        acc += sym[deg] / denom * rs.u[k].powu((b + i64::from(n) - 1) as u32);
    }
    if deg % 2 == 1 {
        acc = -acc;
    }
    Ok(acc)
}

/// Mirror overshoot below a threshold `a <= -1`, by the reflection
/// `H^-_{a,ell} = H^+_{-a,-ell}` (exact consequence of the step symmetry).
pub fn h_minus(params: &WalkParams, a: i64, ell: i64, z: f64) -> Result<Complex64> {
    if a > -1 {
        return Err(Error::domain(format!("threshold must satisfy a <= -1, got {a}")));
    }
    h_plus(params, -a, -ell, z)
}

/// Mirror overshoot computed from its own defining linear system
/// `sum_m H^-_{a,a-m} v_j^m = v_j^a`, solved directly; retained as the
/// numeric cross-check of the reflection identity.
pub fn h_minus_from_system(params: &WalkParams, a: i64, ell: i64, z: f64) -> Result<Complex64> {
    check_z(z)?;
    if a > -1 {
        return Err(Error::domain(format!("threshold must satisfy a <= -1, got {a}")));
    }
    let n = params.order() as usize;
    let m_target = a - ell;
    if m_target < 0 || m_target >= n as i64 {
        return Err(Error::domain(format!(
            "overshoot cell must lie in {{a-N+1..a}}, got {ell}"
        )));
    }
    let rs = roots(params, z)?;
    // Lagrange-style solve of the square Vandermonde system in the v nodes.
    let mut solution = vec![Complex64::new(0.0, 0.0); n];
    for k in 0..n {
        let rhs_k = rs.v[k].powi(a as i32);
        // Coefficients of prod_{j != k} (x - v_j) / (v_k - v_j).
        let mut denom = Complex64::new(1.0, 0.0);
        for j in 0..n {
            if j != k {
                denom *= rs.v[k] - rs.v[j];
            }
        }
        let sym = elementary_symmetric_omitting(&rs.v, k, n - 1);
        for (m, slot) in solution.iter_mut().enumerate() {
            // Coefficient of x^m in the Lagrange basis polynomial.
            let sign = if (n - 1 - m) % 2 == 0 { 1.0 } else { -1.0 };
            *slot += rhs_k * sign * sym[n - 1 - m] / denom;
        }
    }
    Ok(solution[m_target as usize])
}

/// Double generating function `E(z^{sigma_b^+} zeta^{S_b^+})` via Lagrange
/// interpolation polynomials at the exterior roots.
pub fn h_plus_double(params: &WalkParams, b: i64, z: f64, zeta: Complex64) -> Result<Complex64> {
    check_z(z)?;
    if b < 1 {
        return Err(Error::domain(format!("threshold must satisfy b >= 1, got {b}")));
    }
    let n = params.order() as usize;
    let rs = roots(params, z)?;
    let mut acc = Complex64::new(0.0, 0.0);
    for k in 0..n {
        let mut lagrange = Complex64::new(1.0, 0.0);
        for j in 0..n {
            if j != k {
                lagrange *= (zeta - rs.v[j]) / (rs.v[k] - rs.v[j]);
            }
        }
        acc += lagrange * (rs.u[k] * zeta).powi(b as i32);
    }
    Ok(acc)
}

/// Factorial pseudo-moment `E[(S_b^+ - beta)_n]` from the exact two-branch
/// closed form; `(-beta)_n` whenever `n <= N-1`, and `0` for `beta = b`,
/// `n >= N`.
pub fn factorial_moment_shifted(order: u32, b: i64, beta: i64, n: u32) -> Result<Rat> {
    if b < 1 {
        return Err(Error::domain(format!("threshold must satisfy b >= 1, got {b}")));
    }
    let nn = i64::from(order);
    let n_i = i64::from(n);
    let mut acc = Rat::zero();
    if beta <= b {
        for k in (n_i + beta - b).max(0)..=n_i.min(nn - 1) {
            if k + b - beta - n_i < 0 {
                continue;
            }
            let term = factorial_ratio(k + b - 1, k + b - beta - n_i) * binomial(n_i, k);
            if k % 2 == 0 {
                acc += term;
            } else {
                acc -= term;
            }
        }
        acc *= factorial_ratio(b - beta, b - 1);
    } else {
        for k in 0..=n_i.min(nn - 1) {
            acc += Rat::from_integer(
                factorial((k + b - 1) as u32) * factorial((beta - b + n_i - k - 1) as u32),
            ) * binomial(n_i, k);
        }
        if n % 2 == 1 {
            acc = -acc;
        }
        acc /= Rat::from_integer(factorial((b - 1) as u32) * factorial((beta - b - 1) as u32));
    }
    Ok(acc)
}

/// Factorial pseudo-moment `E[(S_b^+)_n]` by direct expectation.
pub fn factorial_moment(order: u32, b: i64, n: u32) -> Result<Rat> {
    Ok(dist_s_b_plus(order, b)?.expect(|ell| falling_factorial(ell, n)))
}

/// Power pseudo-moment `E[(S_b^+)^n]` by direct expectation.
pub fn power_moment(order: u32, b: i64, n: u32) -> Result<Rat> {
    Ok(dist_s_b_plus(order, b)?.expect(|ell| rat(ell).pow(n as i32)))
}

/// Iterated forward difference `(D+)^j f(i) = sum_k (-1)^(j+k) C(j,k) f(i+k)`.
pub fn forward_diff(f: &ValueTable, i: i64, j: u32) -> Result<Rat> {
    let jj = i64::from(j);
    let mut acc = Rat::zero();
    for k in 0..=jj {
        let fv = f.get(&(i + k)).ok_or(Error::MissingValue(i + k))?;
        let term = binomial(jj, k) * fv;
        if (jj + k) % 2 == 0 {
            acc += term;
        } else {
            acc -= term;
        }
    }
    Ok(acc)
}

/// Iterated backward difference `(D-)^j f(i) = sum_k (-1)^k C(j,k) f(i-k)`.
pub fn backward_diff(f: &ValueTable, i: i64, j: u32) -> Result<Rat> {
    let jj = i64::from(j);
    let mut acc = Rat::zero();
    for k in 0..=jj {
        let fv = f.get(&(i - k)).ok_or(Error::MissingValue(i - k))?;
        let term = binomial(jj, k) * fv;
        if k % 2 == 0 {
            acc += term;
        } else {
            acc -= term;
        }
    }
    Ok(acc)
}

/// `E[f(S_b^+)] = sum_j (-1)^j C(j+b-1, b-1) (D+)^j f(b)`, the
/// forward-difference route to the overshoot expectation.
pub fn expect_f_s_b_plus(order: u32, b: i64, f: &ValueTable) -> Result<Rat> {
    if b < 1 {
        return Err(Error::domain(format!("threshold must satisfy b >= 1, got {b}")));
    }
    let mut acc = Rat::zero();
    for j in 0..order {
        let term = binomial(i64::from(j) + b - 1, b - 1) * forward_diff(f, b, j)?;
        if j % 2 == 0 {
            acc += term;
        } else {
            acc -= term;
        }
    }
    Ok(acc)
}

/// Newton interpolation polynomials `P_j(x) = (1/j!) prod_{k<j} (x - b - k)`
/// satisfying `(D+)^k P_j(b) = delta_{jk}`.
#[derive(Debug, Clone)]
pub struct NewtonPolys {
    b: i64,
    polys: Vec<Poly>,
}

impl NewtonPolys {
    pub fn b(&self) -> i64 {
        self.b
    }

    pub fn polys(&self) -> &[Poly] {
        &self.polys
    }

    pub fn eval(&self, j: usize, x: i64) -> Rat {
        self.polys[j].eval_int(x)
    }
}

pub fn newton_polys(order: u32, b: i64) -> NewtonPolys {
    let polys = (0..i64::from(order))
        .map(|j| {
            let mut p = Poly::constant(Rat::one());
            for k in 0..j {
                p = p.mul(&Poly::x_minus(rat(b + k)));
            }
            p.scale(&Rat::from_integer(factorial(j as u32)).recip())
        })
        .collect();
    NewtonPolys { b, polys }
}

/// Overshoot expectation for the walk started at `x <= b`:
/// `E_x[f(S_b^+)] = sum_j P_j(x) (D+)^j f(b)`.
pub fn expect_from_x(order: u32, b: i64, x: i64, f: &ValueTable) -> Result<Rat> {
    let polys = newton_polys(order, b);
    let mut acc = Rat::zero();
    for j in 0..order as usize {
        acc += polys.polys[j].eval_int(x) * forward_diff(f, b, j as u32)?;
    }
    Ok(acc)
}

/// Both sides of the strong pseudo-Markov identity
/// `E_x[f(S_{sigma_b^+ + n})] = sum_j P_j(x) (D+)^j_b E_b[f(S_n)]`,
/// evaluated exactly. The left side goes through the overshoot law of the
/// shifted threshold, the right side through the Newton-polynomial calculus;
/// the difference operator acts on the threshold.
pub fn markov_check(
    params: &WalkParams,
    b: i64,
    x: i64,
    n_after: u32,
    f: impl Fn(i64) -> Rat,
) -> Result<(Rat, Rat)> {
    let order = params.order();
    if n_after > 8 {
        return Err(Error::HorizonTooLarge(format!(
            "post-overshoot horizon {n_after} exceeds 8"
        )));
    }
    if x > b {
        return Err(Error::domain(format!("start must satisfy x <= b, got x={x}, b={b}")));
    }
    // Left side: E_x[f(S_{sigma+n})] = sum_ell P_x{S_b^+ = ell} E_ell[f(S_n)].
    let lhs = if x == b {
        expect_after(params, n_after, b, &f)
    } else {
        let shifted = dist_s_b_plus(order, b - x)?;
        shifted.expect(|ell| expect_after(params, n_after, x + ell, &f))
    };
    // Right side: the difference operator acts on the threshold value.
    let polys = newton_polys(order, b);
    let g: ValueTable = (b..b + i64::from(order))
        .map(|beta| (beta, expect_after(params, n_after, beta, &f)))
        .collect();
    let mut rhs = Rat::zero();
    for j in 0..order as usize {
        rhs += polys.polys[j].eval_int(x) * forward_diff(&g, b, j as u32)?;
    }
    Ok((lhs, rhs))
}

/// Generating function `E(zeta^{S_b^+})` at an exact rational argument,
/// through the difference-calculus closed form
/// `zeta^b sum_j C(j+b-1, b-1) (1-zeta)^j`.
pub fn overshoot_generating_fn(order: u32, b: i64, zeta: &Rat) -> Result<Rat> {
    if b < 1 {
        return Err(Error::domain(format!("threshold must satisfy b >= 1, got {b}")));
    }
    let mut acc = Rat::zero();
    let one_minus = Rat::one() - zeta;
    let mut pw = Rat::one();
    for j in 0..i64::from(order) {
        acc += binomial(j + b - 1, b - 1) * &pw;
        pw *= &one_minus;
    }
    Ok(zeta.pow(b as i32) * acc)
}

/// The same generating function through the exact Beta-integral
/// representation `b C(b+N-1, b) zeta^b Int_0^1 x^{b-1} (1 - zeta x)^{N-1} dx`,
/// expanded termwise; kept as an independent algebraic route.
pub fn overshoot_generating_fn_beta(order: u32, b: i64, zeta: &Rat) -> Result<Rat> {
    if b < 1 {
        return Err(Error::domain(format!("threshold must satisfy b >= 1, got {b}")));
    }
    let n = i64::from(order);
    let mut integral = Rat::zero();
    for m in 0..n {
        let mut term = binomial(n - 1, m) / rat(b + m);
        term *= (-zeta).pow(m as i32);
        integral += term;
    }
    Ok(rat(b) * binomial(b + n - 1, b) * zeta.pow(b as i32) * integral)
}

/// First-passage dynamic program for the single threshold `b`, for oracle
/// cross-checks of `h_plus` and the Markov identity.
pub fn overshoot_dp(params: &WalkParams, b: i64, horizon: usize) -> Result<AbsorbingDp> {
    AbsorbingDp::new(params.clone(), None, Some(b), horizon)
}
