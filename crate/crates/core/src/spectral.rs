//! Roots of the characteristic polynomial `P_z(u) = (1-z)u^N - kappa c z (u-1)^{2N}`
//! and the generating functions built from them.
//!
//! The 2N roots split into N roots `u_j` inside the unit circle and their
//! inverses `v_j` outside. They are computed from explicit radicals, not a
//! generic root finder, because downstream formulas depend on the labeling
//! `j` fixed by the N-th roots of `kappa`.

use std::f64::consts::PI;

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::walk::{bounds, WalkParams};

/// Smallest admitted `z`; the roots degenerate as `z -> 0+`.
pub const MIN_Z: f64 = 1e-6;

/// Roots of `P_z` for one value of `z`, labeled by `j = 1..N`.
#[derive(Debug, Clone)]
pub struct RootSet {
    pub z: f64,
    /// Roots inside the unit circle.
    pub u: Vec<Complex64>,
    /// `v_j = 1/u_j`, outside the unit circle.
    pub v: Vec<Complex64>,
    /// The radical `w(z) = (1-z)^{1/N} / (2 (cz)^{1/N})`.
    pub w: f64,
}

fn check_z(z: f64) -> Result<()> {
    if !(z > 0.0 && z < 1.0) {
        return Err(Error::domain(format!("z must lie in (0,1), got {z}")));
    }
    if z < MIN_Z {
        return Err(Error::domain(format!(
            "z = {z} is below the supported minimum {MIN_Z}; roots degenerate as z -> 0"
        )));
    }
    Ok(())
}

/// Explicit roots of `P_z` for real `z` in `(0,1)`.
pub fn roots(params: &WalkParams, z: f64) -> Result<RootSet> {
    check_z(z)?;
    let n = params.order();
    let c = params.c_f64();
    let w = (1.0 - z).powf(1.0 / n as f64) / (2.0 * (c * z).powf(1.0 / n as f64));
    let sqrt_w = w.sqrt();
    let mut u = Vec::with_capacity(n as usize);
    let mut v = Vec::with_capacity(n as usize);
    for j in 1..=n {
        let angle = (2.0 * j as f64 - 1.0) * PI / n as f64;
        let theta = -Complex64::new(0.0, angle).exp();
        let cos_a = angle.cos();
        // sgn(sin(angle)) with the exact zero when N is odd and 2j-1 = N.
        let eps = if n % 2 == 1 && 2 * j - 1 == n {
            0.0
        } else {
            angle.sin().signum()
        };
        let disc = (w * w - 4.0 * cos_a * w + 4.0).sqrt();
        let a_j = ((disc + w - 2.0 * cos_a) / 2.0).sqrt();
        let b_j = ((disc - w + 2.0 * cos_a).max(0.0) / 2.0).sqrt();
        let radical = theta * sqrt_w * Complex64::new(a_j, eps * b_j);
        let center = Complex64::new(1.0, 0.0) + theta * w;
        u.push(center - radical);
        v.push(center + radical);
    }
    Ok(RootSet { z, u, v, w })
}

impl RootSet {
    /// The radical half `(v_j - u_j) / (2 theta_j sqrt(w)) = a_j + i eps_j b_j`,
    /// from which the factor identity `a_j b_j = |sin((2j-1) pi / N)|` can be
    /// verified.
    pub fn radical_half(&self, n: u32, j: usize) -> Complex64 {
        let angle = (2.0 * (j + 1) as f64 - 1.0) * PI / n as f64;
        let theta = -Complex64::new(0.0, angle).exp();
        (self.v[j] - self.u[j]) / (2.0 * theta * self.w.sqrt())
    }
}

/// Direct evaluation of `P_z(u)`.
pub fn eval_pz(params: &WalkParams, z: f64, u: Complex64) -> Complex64 {
    let n = params.order();
    let c = params.c_f64();
    let kappa = params.kappa() as f64;
    (1.0 - z) * u.powu(n) - kappa * c * z * (u - 1.0).powu(2 * n)
}

/// Scale for relative residual checks: the largest coefficient magnitude of
/// `P_z`, floored at one.
pub fn pz_coefficient_scale(params: &WalkParams, z: f64) -> f64 {
    let n = params.order();
    let c = params.c_f64();
    let mut scale: f64 = 1.0;
    for k in 0..=2 * n {
        let mut coeff = -params.kappa() as f64 * c * z * binom_f64(2 * n, k) * if k % 2 == 1 { -1.0 } else { 1.0 };
        if k == n {
            coeff += 1.0 - z;
        }
        scale = scale.max(coeff.abs());
    }
    scale
}

fn binom_f64(n: u32, k: u32) -> f64 {
    let mut acc = 1.0;
    for i in 0..k.min(n - k) {
        acc = acc * (n - i) as f64 / (i + 1) as f64;
    }
    acc
}

/// Generating function `G_k(z)` of the n-step masses at `k`, via the residue
/// sum over the interior roots.
pub fn g_k(params: &WalkParams, z: f64, k: i64) -> Result<Complex64> {
    let rs = roots(params, z)?;
    let n = params.order();
    let mut acc = Complex64::new(0.0, 0.0);
    for uj in &rs.u {
        acc += (1.0 - uj) / (1.0 + uj) * uj.powu(k.unsigned_abs() as u32);
    }
    Ok(acc / (n as f64 * (1.0 - z)))
}

/// Double generating function `G(zeta, z)` inside its annulus of convergence.
pub fn g_double(params: &WalkParams, zeta: Complex64, z: f64) -> Result<Complex64> {
    check_z(z)?;
    let b = bounds(params);
    let m_inf = crate::rational::rat_to_f64(&b.m_inf);
    if m_inf * z.abs() >= 1.0 {
        return Err(Error::domain(format!(
            "|m_inf z| = {} must be < 1",
            m_inf * z.abs()
        )));
    }
    let rs = roots(params, z)?;
    let r = zeta.norm();
    for j in 0..rs.u.len() {
        if !(rs.u[j].norm() < r && r < rs.v[j].norm()) {
            return Err(Error::domain(format!(
                "|zeta| = {r} outside the convergence annulus (|u_{j}| , |v_{j}|)"
            )));
        }
    }
    let n = params.order();
    let c = params.c_f64();
    let kappa = params.kappa() as f64;
    let zn = zeta.powu(n);
    Ok(zn / ((1.0 - z) * zn - kappa * c * z * (Complex64::new(1.0, 0.0) - zeta).powu(2 * n)))
}

/// The same function on the unit circle in closed trigonometric form,
/// `1 / (1 - z + c 4^N z sin^{2N}(theta/2))`.
pub fn g_double_circle(params: &WalkParams, theta: f64, z: f64) -> f64 {
    let n = params.order();
    let c = params.c_f64();
    1.0 / (1.0 - z + c * 4f64.powi(n as i32) * z * (theta / 2.0).sin().powi(2 * n as i32))
}

/// The 2N-th roots of `kappa` with positive real part,
/// `phi_j = -i exp(i pi (2j-1) / (2N))`, `j = 1..N`.
pub fn continuum_phis(n: u32) -> Vec<Complex64> {
    (1..=n)
        .map(|j| {
            let angle = (2.0 * j as f64 - 1.0) * PI / (2.0 * n as f64);
            -Complex64::i() * Complex64::new(0.0, angle).exp()
        })
        .collect()
}

/// One probe of the near-unity root asymptotics at a given `z`.
#[derive(Debug, Clone)]
pub struct AsymptoticProbe {
    pub z: f64,
    /// `(u_j(z) - 1) / (-phi_j ((1-z)/c)^{1/(2N)})`, expected near 1.
    pub ratios: Vec<Complex64>,
    pub max_deviation: f64,
}

/// Checks the expansion of `u_j(z)` near `z = 1` on a grid of `z` values.
pub fn root_asymptotic_check(params: &WalkParams, z_grid: &[f64]) -> Result<Vec<AsymptoticProbe>> {
    let n = params.order();
    let c = params.c_f64();
    let phis = continuum_phis(n);
    let mut probes = Vec::with_capacity(z_grid.len());
    for &z in z_grid {
        let rs = roots(params, z)?;
        let scale = ((1.0 - z) / c).powf(1.0 / (2.0 * n as f64));
        let ratios: Vec<Complex64> = (0..n as usize)
            .map(|j| (rs.u[j] - 1.0) / (-phis[j] * scale))
            .collect();
        let max_deviation = ratios
            .iter()
            .map(|r| (r - 1.0).norm())
            .fold(0.0, f64::max);
        probes.push(AsymptoticProbe {
            z,
            ratios,
            max_deviation,
        });
    }
    Ok(probes)
}
