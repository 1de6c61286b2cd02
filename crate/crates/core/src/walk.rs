//! The pseudo-random walk itself: signed step distribution, n-step law,
//! total-variation bounds, characteristic function and the generator identity.

use std::collections::BTreeMap;
use std::fmt::Write as _;

use num_complex::Complex64;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::combin::{binomial, binomial_int, factorial};
use crate::error::{Error, Result};
use crate::rational::{int, rat, Int, Rat, ValueTable};

/// Model parameters: order `N` of the iterated Laplacian and step weight `c`.
///
/// `kappa = (-1)^(N-1)` is the sign making `kappa * c * Delta^N` the walk's
/// generator.
#[derive(Debug, Clone, PartialEq)]
pub struct WalkParams {
    order: u32,
    c: Rat,
}

impl WalkParams {
    pub fn new(order: u32, c: Rat) -> Result<Self> {
        if order == 0 {
            return Err(Error::domain("order N must be >= 1"));
        }
        if !c.is_positive() {
            return Err(Error::domain("c must be a positive rational"));
        }
        Ok(WalkParams { order, c })
    }

    pub fn order(&self) -> u32 {
        self.order
    }

    pub fn c(&self) -> &Rat {
        &self.c
    }

    pub fn c_f64(&self) -> f64 {
        self.c.to_f64().expect("c out of f64 range")
    }

    /// `(-1)^(N-1)`.
    pub fn kappa(&self) -> i64 {
        if self.order % 2 == 1 {
            1
        } else {
            -1
        }
    }
}

/// Finite-support signed measure on the integers with exact rational masses.
///
/// Zero masses are not stored; the all-zero measure has empty support.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct SignedMeasure {
    entries: BTreeMap<i64, Rat>,
}

impl SignedMeasure {
    pub fn zero() -> Self {
        SignedMeasure::default()
    }

    /// Unit mass at `k`.
    pub fn unit(k: i64) -> Self {
        let mut entries = BTreeMap::new();
        entries.insert(k, Rat::one());
        SignedMeasure { entries }
    }

    pub fn from_entries<I: IntoIterator<Item = (i64, Rat)>>(entries: I) -> Self {
        let mut m = SignedMeasure::zero();
        for (k, v) in entries {
            m.add_mass(k, v);
        }
        m
    }

    pub fn add_mass(&mut self, k: i64, v: Rat) {
        if v.is_zero() {
            return;
        }
        let slot = self.entries.entry(k).or_insert_with(Rat::zero);
        *slot += v;
        if slot.is_zero() {
            self.entries.remove(&k);
        }
    }

    pub fn mass(&self, k: i64) -> Rat {
        self.entries.get(&k).cloned().unwrap_or_else(Rat::zero)
    }

    pub fn iter(&self) -> impl Iterator<Item = (&i64, &Rat)> {
        self.entries.iter()
    }

    pub fn support(&self) -> impl Iterator<Item = i64> + '_ {
        self.entries.keys().copied()
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn total_mass(&self) -> Rat {
        self.entries.values().sum()
    }

    /// Sum of absolute masses.
    pub fn total_variation(&self) -> Rat {
        self.entries.values().map(|v| v.abs()).sum()
    }

    /// Cumulative mass on `(-inf, k]`.
    pub fn cumulative(&self, k: i64) -> Rat {
        self.entries
            .range(..=k)
            .map(|(_, v)| v.clone())
            .fold(Rat::zero(), |a, b| a + b)
    }

    /// Signed-measure convolution.
    pub fn convolve(&self, other: &SignedMeasure) -> SignedMeasure {
        let mut out = SignedMeasure::zero();
        for (i, vi) in self.iter() {
            for (j, vj) in other.iter() {
                out.add_mass(i + j, vi * vj);
            }
        }
        out
    }

    /// Expectation of `f` under the measure.
    pub fn expect(&self, f: impl Fn(i64) -> Rat) -> Rat {
        self.iter()
            .map(|(k, v)| v * f(*k))
            .fold(Rat::zero(), |a, b| a + b)
    }

    /// Expectation read from a value table; the table must cover the support.
    pub fn expect_table(&self, f: &ValueTable) -> Result<Rat> {
        let mut acc = Rat::zero();
        for (k, v) in self.iter() {
            let fk = f.get(k).ok_or(Error::MissingValue(*k))?;
            acc += v * fk;
        }
        Ok(acc)
    }

    /// CSV rendering with header `k,numerator,denominator` and LF endings.
    pub fn to_csv(&self) -> String {
        let mut out = String::from("k,numerator,denominator\n");
        for (k, v) in self.iter() {
            let _ = writeln!(out, "{},{},{}", k, v.numer(), v.denom());
        }
        out
    }

    /// JSON rendering as an array of `{"k":..., "num":"...", "den":"..."}`.
    pub fn to_json(&self) -> String {
        let rows: Vec<String> = self
            .iter()
            .map(|(k, v)| format!("{{\"k\":{},\"num\":\"{}\",\"den\":\"{}\"}}", k, v.numer(), v.denom()))
            .collect();
        format!("[{}]", rows.join(","))
    }
}

/// Total-variation bound `m1` of a single step and sup-norm bound `m_inf` of
/// its Fourier transform; always `m1 >= m_inf >= 1`.
#[derive(Debug, Clone, PartialEq)]
pub struct WalkBounds {
    pub m1: Rat,
    pub m_inf: Rat,
}

/// Signed step distribution on `{-N..N}`: symmetric, alternating masses
/// `(-1)^(k-1) c C(2N, k+N)` off the origin, total mass one.
pub fn step_pmf(params: &WalkParams) -> SignedMeasure {
    let n = i64::from(params.order());
    let c = params.c();
    let mut m = SignedMeasure::zero();
    for k in -n..=n {
        if k == 0 {
            m.add_mass(0, Rat::one() - c * binomial(2 * n, n));
        } else {
            let sign = if (k - 1).rem_euclid(2) == 0 { rat(1) } else { rat(-1) };
            m.add_mass(k, sign * c * binomial(2 * n, k + n));
        }
    }
    m
}

/// Closed-form step cumulative mass on `(-inf, k]` for `|k| <= N`.
pub fn step_cdf(params: &WalkParams, k: i64) -> Result<Rat> {
    let n = i64::from(params.order());
    if k.abs() > n {
        return Err(Error::domain(format!("step cdf needs |k| <= N, got k={k}")));
    }
    let indicator = if k >= 0 { rat(1) } else { rat(0) };
    let sign = if (k - 1).rem_euclid(2) == 0 { rat(1) } else { rat(-1) };
    Ok(indicator + sign * params.c() * binomial(2 * n - 1, k + n))
}

/// Total-variation and Fourier sup bounds of a single step.
pub fn bounds(params: &WalkParams) -> WalkBounds {
    let n = i64::from(params.order());
    let c = params.c();
    let four_n = Rat::from_integer(int(4).pow(params.order()));
    let central = binomial(2 * n, n);
    let m1 = if c <= &central.recip() {
        Rat::one() + c * (&four_n - rat(2) * &central)
    } else {
        c * &four_n - Rat::one()
    };
    let half_pow = Rat::from_integer(int(2).pow(2 * params.order() - 1)).recip();
    let m_inf = if c <= &half_pow {
        Rat::one()
    } else {
        c * &four_n - Rat::one()
    };
    WalkBounds { m1, m_inf }
}

/// Fourier transform of a single step: `1 - c 4^N sin^{2N}(theta/2)`.
pub fn char_fn(params: &WalkParams, theta: f64) -> f64 {
    let n = params.order();
    let c = params.c_f64();
    1.0 - c * 4f64.powi(n as i32) * (theta / 2.0).sin().powi(2 * n as i32)
}

/// Step generating function `E(zeta^U) = 1 + kappa c (1-zeta)^{2N} / zeta^N`.
pub fn step_generating_fn(params: &WalkParams, zeta: Complex64) -> Complex64 {
    let n = params.order();
    let c = params.c_f64();
    let kappa = params.kappa() as f64;
    Complex64::new(1.0, 0.0) + kappa * c * (Complex64::new(1.0, 0.0) - zeta).powu(2 * n) / zeta.powu(n)
}

/// n-step law from the closed alternating-binomial form.
pub fn walk_pmf_closed(params: &WalkParams, n: u32) -> SignedMeasure {
    let order = i64::from(params.order());
    let steps = i64::from(n);
    let c = params.c();
    let mut m = SignedMeasure::zero();
    for k in -order * steps..=order * steps {
        let mut acc = Rat::zero();
        for l in 0..=steps {
            let b = binomial_int(2 * order * l, k + order * l);
            if b.is_zero() {
                continue;
            }
            let mut term = Rat::from_integer(binomial_int(steps, l) * b);
            term *= pow_rat(&(-c.clone()), l as u32);
            acc += term;
        }
        if k.rem_euclid(2) == 1 {
            acc = -acc;
        }
        m.add_mass(k, acc);
    }
    m
}

/// n-step cumulative mass on `(-inf, k]` from the closed form.
pub fn walk_cdf_closed(params: &WalkParams, n: u32, k: i64) -> Result<Rat> {
    let order = i64::from(params.order());
    let steps = i64::from(n);
    if k.abs() > order * steps {
        return Err(Error::domain(format!(
            "cdf point must satisfy |k| <= N*n, got k={k}"
        )));
    }
    let mut acc = if k >= 0 { Rat::one() } else { Rat::zero() };
    let mut sum = Rat::zero();
    for l in 1..=steps {
        let b = binomial_int(2 * order * l - 1, k + order * l);
        if b.is_zero() {
            continue;
        }
        let mut term = Rat::from_integer(binomial_int(steps, l) * b);
        term *= pow_rat(&(-params.c().clone()), l as u32);
        sum += term;
    }
    if k.rem_euclid(2) == 1 {
        sum = -sum;
    }
    acc += sum;
    Ok(acc)
}

/// n-fold convolution of the step law; the independent route to the n-step
/// law, kept as an oracle for the closed form.
pub fn walk_pmf_convolution(params: &WalkParams, n: u32) -> SignedMeasure {
    let step = step_pmf(params);
    let mut acc = SignedMeasure::unit(0);
    for _ in 0..n {
        acc = acc.convolve(&step);
    }
    acc
}

/// Applies the walk generator to `f` at `j`: `E[f(j + U)] - f(j)`.
///
/// `f` must be defined on `{j-N..j+N}`.
pub fn generator_apply(params: &WalkParams, f: &ValueTable, j: i64) -> Result<Rat> {
    let n = i64::from(params.order());
    let step = step_pmf(params);
    let mut acc = Rat::zero();
    for k in -n..=n {
        let fv = f.get(&(j + k)).ok_or(Error::MissingValue(j + k))?;
        acc += step.mass(k) * fv;
    }
    let fj = f.get(&j).ok_or(Error::MissingValue(j))?;
    Ok(acc - fj)
}

/// `Delta^N f(j)` for a table: the 2N+1-point alternating binomial stencil.
pub fn iterated_laplacian(f: &ValueTable, j: i64, order: u32) -> Result<Rat> {
    let n = i64::from(order);
    let mut acc = Rat::zero();
    for k in -n..=n {
        let fv = f.get(&(j + k)).ok_or(Error::MissingValue(j + k))?;
        let sign = if (k + n).rem_euclid(2) == 0 { rat(1) } else { rat(-1) };
        acc += sign * binomial(2 * n, k + n) * fv;
    }
    Ok(acc)
}

/// `E_x[f(S_n)]` computed exactly from the closed n-step law.
pub fn expect_after(params: &WalkParams, n: u32, x: i64, f: impl Fn(i64) -> Rat) -> Rat {
    walk_pmf_closed(params, n).expect(|k| f(x + k))
}

/// `kappa * c * (2N)!`: the exact value of the generator on `i^{2N}` at 0.
pub fn generator_top_monomial_value(params: &WalkParams) -> Rat {
    let sign = rat(params.kappa());
    sign * params.c() * Rat::from_integer(factorial(2 * params.order()))
}

fn pow_rat(x: &Rat, n: u32) -> Rat {
    let mut acc = Rat::one();
    for _ in 0..n {
        acc *= x;
    }
    acc
}

/// Largest power-of-two denominator `1/2^(2N-1)` for which the Fourier sup
/// bound stays at one; the continuum results assume `c` below this value.
pub fn critical_c(order: u32) -> Rat {
    Rat::from_integer(Int::from(2).pow(2 * order - 1)).recip()
}
