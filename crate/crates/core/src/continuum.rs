//! Closed-form functionals of the limiting pseudo-Brownian motion: the
//! lambda-potential, Laplace-Fourier transforms of the single-threshold and
//! two-sided exit couples, and the Dirac-comb overshoot laws, together with
//! discrete-to-continuum convergence probes.
//!
//! Everything here is double precision; the limits involve transcendental
//! functions, so no exactness is attempted.

use num_complex::Complex64;
use num_traits::ToPrimitive;

use crate::combin::{binomial, factorial};
use crate::error::{Error, Result};
use crate::exit::{det_generic, i_coeffs};
use crate::overshoot::h_plus_double;
use crate::rational::rat_to_f64;
use crate::spectral::continuum_phis;
use crate::walk::{critical_c, WalkParams};

fn check_lambda(lam: f64) -> Result<()> {
    if !(lam > 0.0) {
        return Err(Error::domain(format!("lambda must be positive, got {lam}")));
    }
    Ok(())
}

fn check_c(c: f64) -> Result<()> {
    if !(c > 0.0) {
        return Err(Error::domain(format!("c must be positive, got {c}")));
    }
    Ok(())
}

/// Resolvent density of the pseudo-process: for every real `x`,
/// `(1 / (2N c^{1/2N} lambda^{1-1/(2N)})) sum_j phi_j e^{-phi_j (lambda/c)^{1/2N} |x|}`.
///
/// The two one-sided expressions agree at `x = 0` and integrate to
/// `1/lambda` over the line.
pub fn lambda_potential(order: u32, c: f64, lam: f64, x: f64) -> Result<Complex64> {
    check_lambda(lam)?;
    check_c(c)?;
    let n = order as f64;
    let s = (lam / c).powf(1.0 / (2.0 * n));
    let prefactor = 1.0 / (2.0 * n * c.powf(1.0 / (2.0 * n)) * lam.powf(1.0 - 1.0 / (2.0 * n)));
    let mut acc = Complex64::new(0.0, 0.0);
    for phi in continuum_phis(order) {
        acc += phi * (-phi * s * x.abs()).exp();
    }
    Ok(prefactor * acc)
}

/// Laplace-Fourier transform of the first overshoot couple of a single
/// positive threshold `b`:
/// `e^{i mu b} sum_k prod_{j!=k} (phi_j / (phi_j - phi_k))
///  prod_{j!=k} (1 - i conj(phi_j) mu / (lambda/c)^{1/2N}) e^{-phi_k (lambda/c)^{1/2N} b}`.
pub fn lf_tau_b(order: u32, c: f64, b: f64, lam: f64, mu: f64) -> Result<Complex64> {
    check_lambda(lam)?;
    check_c(c)?;
    if !(b > 0.0) {
        return Err(Error::domain(format!("threshold must be positive, got {b}")));
    }
    let s = (lam / c).powf(1.0 / (2.0 * order as f64));
    let phis = continuum_phis(order);
    let mut acc = Complex64::new(0.0, 0.0);
    for k in 0..phis.len() {
        let mut weight = Complex64::new(1.0, 0.0);
        for j in 0..phis.len() {
            if j != k {
                weight *= phis[j] / (phis[j] - phis[k]);
                weight *= Complex64::new(1.0, 0.0) - Complex64::i() * phis[j].conj() * mu / s;
            }
        }
        acc += weight * (-phis[k] * s * b).exp();
    }
    Ok(Complex64::new(0.0, mu * b).exp() * acc)
}

/// A distribution written as Dirac masses and their derivatives: each anchor
/// carries coefficients `c_j` of `delta^{(j)}` at that location.
#[derive(Debug, Clone, PartialEq)]
pub struct DiracComb {
    pub anchors: Vec<(f64, Vec<f64>)>,
}

impl DiracComb {
    /// Total pseudo-mass: the sum of plain Dirac coefficients.
    pub fn total_mass(&self) -> f64 {
        self.anchors.iter().map(|(_, cs)| cs[0]).sum()
    }
}

/// Law of the overshoot position of pseudo-Brownian motion over `b > 0`:
/// coefficients `b^j / j!` on the Dirac derivatives at `b`.
pub fn law_x_b_plus(order: u32, b: f64) -> Result<DiracComb> {
    if !(b > 0.0) {
        return Err(Error::domain(format!("threshold must be positive, got {b}")));
    }
    let coeffs = (0..order)
        .map(|j| b.powi(j as i32) / factorial_f64(j))
        .collect();
    Ok(DiracComb {
        anchors: vec![(b, coeffs)],
    })
}

/// Fourier transform of that law: `e^{i mu b} sum_j (-i mu b)^j / j!`.
pub fn fourier_x_b_plus(order: u32, b: f64, mu: f64) -> Result<Complex64> {
    if !(b > 0.0) {
        return Err(Error::domain(format!("threshold must be positive, got {b}")));
    }
    let mut acc = Complex64::new(0.0, 0.0);
    let base = Complex64::new(0.0, -mu * b);
    let mut pw = Complex64::new(1.0, 0.0);
    for j in 0..order {
        acc += pw / factorial_f64(j);
        pw *= base;
    }
    Ok(Complex64::new(0.0, mu * b).exp() * acc)
}

fn factorial_f64(n: u32) -> f64 {
    factorial(n).to_f64().expect("factorial out of range")
}

/// Boundary functionals of the two-sided exit law of pseudo-Brownian motion
/// on a real interval `(a, b)`; their plain-Dirac entries sum to one.
pub fn bold_i_coeffs(order: u32, a: f64, b: f64) -> Result<(Vec<f64>, Vec<f64>)> {
    if !(a < 0.0 && 0.0 < b) {
        return Err(Error::domain(format!(
            "interval must satisfy a < 0 < b, got a={a}, b={b}"
        )));
    }
    let n = order as i64;
    let width = b - a;
    let tail = |j: i64, ratio_arg: f64| -> f64 {
        (0..n - j)
            .map(|k| rat_to_f64(&binomial(k + n - 1, k)) * ratio_arg.powi(k as i32))
            .sum()
    };
    // The two families are images of one another under the reflection
    // (a, b) -> (-b, -a) carrying the (-1)^j of the j-th Dirac derivative,
    // which fixes the sign of the lower family as (-a)^j / j!.
    let mut lower = Vec::with_capacity(order as usize);
    let mut upper = Vec::with_capacity(order as usize);
    for j in 0..n {
        lower.push(
            (b / width).powi(n as i32) * (-a).powi(j as i32) / factorial_f64(j as u32)
                * tail(j, -a / width),
        );
        upper.push(
            (-a / width).powi(n as i32) * (-b).powi(j as i32) / factorial_f64(j as u32)
                * tail(j, b / width),
        );
    }
    Ok((lower, upper))
}

/// Exit law of pseudo-Brownian motion on `(a, b)` as a two-anchor Dirac comb;
/// the density carries `(-1)^j` times the boundary functionals.
pub fn law_x_ab(order: u32, a: f64, b: f64) -> Result<DiracComb> {
    let (lower, upper) = bold_i_coeffs(order, a, b)?;
    let signed = |cs: Vec<f64>| -> Vec<f64> {
        cs.into_iter()
            .enumerate()
            .map(|(j, v)| if j % 2 == 0 { v } else { -v })
            .collect()
    };
    Ok(DiracComb {
        anchors: vec![(a, signed(lower)), (b, signed(upper))],
    })
}

/// Fourier transform of the two-sided exit law:
/// `e^{i mu a} sum_j I-_j (i mu)^j + e^{i mu b} sum_j I+_j (i mu)^j`.
pub fn fourier_x_ab(order: u32, a: f64, b: f64, mu: f64) -> Result<Complex64> {
    let (lower, upper) = bold_i_coeffs(order, a, b)?;
    let series = |coeffs: &[f64]| -> Complex64 {
        let mut acc = Complex64::new(0.0, 0.0);
        let mut pw = Complex64::new(1.0, 0.0);
        for c in coeffs {
            acc += c * pw;
            pw *= Complex64::new(0.0, mu);
        }
        acc
    };
    Ok(Complex64::new(0.0, mu * a).exp() * series(&lower)
        + Complex64::new(0.0, mu * b).exp() * series(&upper))
}

/// Laplace-Fourier transform of the two-sided exit couple of pseudo-Brownian
/// motion, through the 2N x 2N determinants over all 2N-th roots of `kappa`.
///
/// Writing `s = (lambda/c)^{1/2N}`, `delta = -i mu / s`, `E_k = e^{-phi_k s (b-a)}`
/// with `phi_{N+1..2N} = -phi_{1..N}`:
/// the base determinant has rows `[phi_k^m | E_k phi_k^m]`; the exit-at-`a`
/// (resp. `b`) numerators replace row `k` by `[delta^m | 0]` (resp.
/// `[0 | delta^m]`), and each carries the weight `e^{phi_k s a}` from the
/// starting position, so
/// `LF = e^{i mu a} sum_k w_k D-_k / D + e^{i mu b} sum_k w_k D+_k / D`.
pub fn lf_tau_ab(order: u32, c: f64, a: f64, b: f64, lam: f64, mu: f64) -> Result<Complex64> {
    check_lambda(lam)?;
    check_c(c)?;
    if !(a < 0.0 && 0.0 < b) {
        return Err(Error::domain(format!(
            "interval must satisfy a < 0 < b, got a={a}, b={b}"
        )));
    }
    let n = order as usize;
    let s = (lam / c).powf(1.0 / (2.0 * order as f64));
    let delta = -Complex64::i() * mu / s;
    let mut phis = continuum_phis(order);
    phis.extend(continuum_phis(order).into_iter().map(|p| -p));
    let base: Vec<Vec<Complex64>> = phis
        .iter()
        .map(|&phi| {
            let decay = (-phi * s * (b - a)).exp();
            (0..n)
                .map(|m| phi.powu(m as u32))
                .chain((0..n).map(|m| decay * phi.powu(m as u32)))
                .collect()
        })
        .collect();
    let det_base = det_generic(base.clone());
    let scale: f64 = base
        .iter()
        .map(|row| row.iter().map(|v| v.norm()).fold(0.0, f64::max).max(1.0))
        .product();
    if det_base.norm() < 1e-12 * scale {
        return Err(Error::NearSingular(det_base.norm()));
    }
    let mut at_a = Complex64::new(0.0, 0.0);
    let mut at_b = Complex64::new(0.0, 0.0);
    for k in 0..2 * n {
        let weight = (phis[k] * s * a).exp();
        let mut lower_m = base.clone();
        let mut upper_m = base.clone();
        for m in 0..n {
            lower_m[k][m] = delta.powu(m as u32);
            lower_m[k][n + m] = Complex64::new(0.0, 0.0);
            upper_m[k][m] = Complex64::new(0.0, 0.0);
            upper_m[k][n + m] = delta.powu(m as u32);
        }
        at_a += weight * det_generic(lower_m) / det_base;
        at_b += weight * det_generic(upper_m) / det_base;
    }
    Ok(Complex64::new(0.0, mu * a).exp() * at_a + Complex64::new(0.0, mu * b).exp() * at_b)
}

/// One step of a discrete-to-continuum probe: the absolute deviation between
/// a continuum value and its discrete counterpart at grid pitch `eps`.
#[derive(Debug, Clone)]
pub struct ConvergenceProbe {
    pub eps: f64,
    pub deviation: f64,
}

fn probe_params(order: u32) -> Result<WalkParams> {
    // The convergence theorems assume c <= 1/2^(2N-1).
    WalkParams::new(order, critical_c(order))
}

/// Deviation of the discrete overshoot Laplace-Fourier transform from the
/// continuum one, per grid pitch: the discrete side is the double generating
/// function at `z = e^{-lambda eps^{2N}}`, `zeta = e^{i mu eps}` and
/// threshold `ceil(b / eps)`.
pub fn lf_tau_b_probe(
    order: u32,
    b: f64,
    lam: f64,
    mu: f64,
    eps_grid: &[f64],
) -> Result<Vec<ConvergenceProbe>> {
    let params = probe_params(order)?;
    let c = params.c_f64();
    let continuum = lf_tau_b(order, c, b, lam, mu)?;
    eps_grid
        .iter()
        .map(|&eps| {
            let z = (-lam * eps.powi(2 * order as i32)).exp();
            let zeta = Complex64::new(0.0, mu * eps).exp();
            let b_eps = (b / eps).ceil() as i64;
            let discrete = h_plus_double(&params, b_eps, z, zeta)?;
            Ok(ConvergenceProbe {
                eps,
                deviation: (discrete - continuum).norm(),
            })
        })
        .collect()
}

/// Deviation of the discrete exit-position Fourier transform (the rescaled
/// boundary functionals packed with their anchors) from the continuum one,
/// per grid pitch.
pub fn bold_i_probe(
    order: u32,
    a: f64,
    b: f64,
    mu: f64,
    eps_grid: &[f64],
) -> Result<Vec<ConvergenceProbe>> {
    let target = fourier_x_ab(order, a, b, mu)?;
    let pack = |coeffs: &[f64], step: Complex64| -> Complex64 {
        let mut acc = Complex64::new(0.0, 0.0);
        let mut pw = Complex64::new(1.0, 0.0);
        for c in coeffs {
            acc += c * pw;
            pw *= step;
        }
        acc
    };
    eps_grid
        .iter()
        .map(|&eps| {
            let a_eps = (a / eps).floor() as i64;
            let b_eps = (b / eps).ceil() as i64;
            let (lower_d, upper_d) = i_coeffs(order, a_eps, b_eps)?;
            let lower_f: Vec<f64> = lower_d.iter().map(rat_to_f64).collect();
            let upper_f: Vec<f64> = upper_d.iter().map(rat_to_f64).collect();
            let zeta = Complex64::new(0.0, mu * eps).exp();
            let one = Complex64::new(1.0, 0.0);
            let discrete = zeta.powi(a_eps as i32) * pack(&lower_f, one - zeta.inv())
                + zeta.powi(b_eps as i32) * pack(&upper_f, zeta - one);
            Ok(ConvergenceProbe {
                eps,
                deviation: (discrete - target).norm(),
            })
        })
        .collect()
}

/// Deviation of the rescaled binomial overshoot coefficients from the Dirac
/// coefficients of the continuum overshoot law, per grid pitch.
pub fn dirac_coefficient_probe(
    order: u32,
    b: f64,
    mu: f64,
    eps_grid: &[f64],
) -> Result<Vec<ConvergenceProbe>> {
    if !(b > 0.0) {
        return Err(Error::domain(format!("threshold must be positive, got {b}")));
    }
    Ok(eps_grid
        .iter()
        .map(|&eps| {
            let b_eps = (b / eps).ceil() as i64;
            let zeta = Complex64::new(0.0, mu * eps).exp();
            let mut deviation: f64 = 0.0;
            for j in 0..i64::from(order) {
                let discrete = rat_to_f64(&binomial(j + b_eps - 1, b_eps - 1))
                    * (Complex64::new(1.0, 0.0) - zeta).powu(j as u32);
                let continuum = Complex64::new(0.0, -mu * b).powu(j as u32)
                    / factorial_f64(j as u32);
                deviation = deviation.max((discrete - continuum).norm());
            }
            ConvergenceProbe { eps, deviation }
        })
        .collect())
}

/// Numeric integral of the lambda-potential over the whole line; the
/// resolvent of a mass-one semigroup must give `1/lambda`.
pub fn lambda_potential_integral(order: u32, c: f64, lam: f64) -> Result<f64> {
    check_lambda(lam)?;
    check_c(c)?;
    let s = (lam / c).powf(1.0 / (2.0 * order as f64));
    let slowest = continuum_phis(order)
        .iter()
        .map(|p| p.re)
        .fold(f64::INFINITY, f64::min);
    let cutoff = 50.0 / (slowest * s);
    // Simpson on [0, cutoff], doubled by symmetry.
    let steps = 20_000usize;
    let h = cutoff / steps as f64;
    let mut acc = 0.0;
    for i in 0..=steps {
        let x = i as f64 * h;
        let weight = if i == 0 || i == steps {
            1.0
        } else if i % 2 == 1 {
            4.0
        } else {
            2.0
        };
        acc += weight * lambda_potential(order, c, lam, x)?.re;
    }
    Ok(2.0 * acc * h / 3.0)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn potential_shapes() {
        // N=1 reduction: e^{-sqrt(lambda/c)|x|} / (2 sqrt(c lambda)).
        for (c, lam, x) in [(0.25, 1.0, 0.7), (0.1, 2.5, -1.3)] {
            let v = lambda_potential(1, c, lam, x).unwrap();
            let expected = (-(lam / c).sqrt() * x.abs()).exp() / (2.0 * (c * lam).sqrt());
            assert!((v.re - expected).abs() < 1e-12 * expected.abs());
            assert!(v.im.abs() < 1e-14);
        }
        // Symmetry in x and a negligible imaginary part for general N.
        for order in 1..=3u32 {
            for x in [0.0, 0.4, 2.0] {
                let plus = lambda_potential(order, 0.2, 1.3, x).unwrap();
                let minus = lambda_potential(order, 0.2, 1.3, -x).unwrap();
                assert!((plus - minus).norm() < 1e-14);
                assert!(plus.im.abs() < 1e-12);
            }
        }
        assert!(lambda_potential(2, 0.2, 0.0, 1.0).is_err());
    }

    #[test]
    fn potential_total_mass() {
        for order in 1..=3u32 {
            for lam in [0.5, 1.0, 2.0] {
                let integral = lambda_potential_integral(order, 0.2, lam).unwrap();
                assert!(
                    (integral - 1.0 / lam).abs() < 1e-6,
                    "N={order} lambda={lam}: {integral}"
                );
            }
        }
    }

    #[test]
    fn lf_tau_b_reductions() {
        // N=1, mu=0: the classical e^{-sqrt(lambda/c) b}.
        for (c, b, lam) in [(0.25, 1.0, 1.0), (0.5, 2.0, 0.7)] {
            let v = lf_tau_b(1, c, b, lam, 0.0).unwrap();
            let expected = (-(lam / c).sqrt() * b).exp();
            assert!((v - expected).norm() < 1e-13);
        }
        // Large lambda kills the transform.
        let mags: Vec<f64> = [1.0, 1e2, 1e4]
            .iter()
            .map(|&lam| lf_tau_b(2, 0.125, 1.0, lam, 0.3).unwrap().norm())
            .collect();
        assert!(mags[1] < mags[0] && mags[2] < mags[1]);
        assert!(mags[2] < 1e-5, "magnitude at lambda=1e4: {}", mags[2]);
    }

    #[test]
    fn overshoot_law_coefficients() {
        let law = law_x_b_plus(3, 2.0).unwrap();
        assert_eq!(law.anchors.len(), 1);
        assert_eq!(law.anchors[0].1, vec![1.0, 2.0, 2.0]);
        assert!((law.total_mass() - 1.0).abs() < 1e-15);
        // N=1: pure Dirac at b.
        let simple = law_x_b_plus(1, 0.5).unwrap();
        assert_eq!(simple.anchors[0].1, vec![1.0]);
        for order in 1..=4u32 {
            let fx = fourier_x_b_plus(order, 1.5, 0.0).unwrap();
            assert!((fx - 1.0).norm() == 0.0);
            // N=1 Fourier transform is e^{i mu b}.
            let f1 = fourier_x_b_plus(1, 1.5, 0.8).unwrap();
            assert!((f1 - Complex64::new(0.0, 0.8 * 1.5).exp()).norm() < 1e-15);
        }
    }

    #[test]
    fn bold_i_sums_to_one() {
        let (lower, upper) = bold_i_coeffs(1, -1.0, 2.0).unwrap();
        assert!((lower[0] - 2.0 / 3.0).abs() < 1e-15);
        assert!((upper[0] - 1.0 / 3.0).abs() < 1e-15);
        for order in 1..=4u32 {
            for (a, b) in [(-1.0, 1.0), (-0.3, 2.7), (-5.0, 0.25)] {
                let (lower, upper) = bold_i_coeffs(order, a, b).unwrap();
                assert!(
                    (lower[0] + upper[0] - 1.0).abs() < 1e-12,
                    "N={order} a={a} b={b}"
                );
                let law = law_x_ab(order, a, b).unwrap();
                assert!((law.total_mass() - 1.0).abs() < 1e-12);
            }
        }
        // Symmetric interval: I-_j = (-1)^j I+_j.
        for order in 1..=4u32 {
            let (lower, upper) = bold_i_coeffs(order, -1.5, 1.5).unwrap();
            for j in 0..order as usize {
                let sign = if j % 2 == 0 { 1.0 } else { -1.0 };
                assert!((lower[j] - sign * upper[j]).abs() < 1e-12);
            }
        }
        assert!(bold_i_coeffs(2, 1.0, 2.0).is_err());
    }

    #[test]
    fn fourier_x_ab_at_zero() {
        for order in 1..=3u32 {
            let v = fourier_x_ab(order, -1.0, 2.0, 0.0).unwrap();
            assert!((v - 1.0).norm() < 1e-12);
        }
    }

    #[test]
    fn lf_tau_ab_n1_sinh_ratio() {
        // Classical two-sided transform: exit parts are sinh ratios.
        let (c, a, b, lam): (f64, f64, f64, f64) = (0.25, -1.0, 2.0, 1.3);
        let s = (lam / c).sqrt();
        for mu in [0.0, 0.7, -1.9] {
            let v = lf_tau_ab(1, c, a, b, lam, mu).unwrap();
            let expected = Complex64::new(0.0, mu * a).exp() * ((s * b).sinh() / (s * (b - a)).sinh())
                + Complex64::new(0.0, mu * b).exp() * ((-s * a).sinh() / (s * (b - a)).sinh());
            assert!((v - expected).norm() < 1e-12, "mu={mu}: {v} vs {expected}");
        }
    }

    #[test]
    fn lf_tau_ab_mass_limit() {
        // lambda -> 0 with mu = 0 approaches total pseudo-mass one.
        for order in 1..=2u32 {
            let v = lf_tau_ab(order, 0.125, -1.0, 1.0, 1e-8, 0.0).unwrap();
            assert!((v - 1.0).norm() < 1e-3, "N={order}: {v}");
        }
    }

    #[test]
    fn discrete_to_continuum_trends() {
        let eps = [0.1, 0.05, 0.025];
        let strictly_decreasing = |probes: &[ConvergenceProbe]| {
            probes.windows(2).all(|w| w[1].deviation < w[0].deviation)
        };
        for order in 1..=2u32 {
            let taub = lf_tau_b_probe(order, 1.0, 1.0, 0.4, &eps).unwrap();
            assert!(
                strictly_decreasing(&taub),
                "tau_b probe N={order}: {taub:?}"
            );
            // Incommensurate endpoints keep the N=1 discretization from
            // being exact at every pitch.
            let boldi = bold_i_probe(order, -1.015, 1.3, 0.4, &eps).unwrap();
            assert!(
                strictly_decreasing(&boldi),
                "bold I probe N={order}: {boldi:?}"
            );
        }
        // The Dirac-coefficient probe is nontrivial only for N >= 2 (the
        // j = 0 coefficient is exactly 1 at every pitch).
        for order in 2..=3u32 {
            let dirac = dirac_coefficient_probe(order, 1.0, 0.4, &eps).unwrap();
            assert!(
                strictly_decreasing(&dirac),
                "dirac probe N={order}: {dirac:?}"
            );
        }
        let exact = dirac_coefficient_probe(1, 1.0, 0.4, &eps).unwrap();
        assert!(exact.iter().all(|p| p.deviation == 0.0));
    }
}
