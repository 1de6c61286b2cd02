//! Brute-force verification engine: exact dynamic programming over signed
//! path measures with absorbing boundaries.
//!
//! The engine propagates the interior signed measure step by step and collects
//! the mass absorbed at each boundary cell, producing truncated
//! generating-function coefficients together with a certified tail bound.

use std::collections::BTreeMap;

use num_traits::{Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};
use crate::rational::{Rat, ValueTable};
use crate::walk::{bounds, step_pmf, walk_pmf_closed, SignedMeasure, WalkParams};

/// Power-series coefficients `c_0..c_T` with the data needed to certify the
/// truncation error: `|c_n| <= tail_scale * tail_base^n`, so evaluating at a
/// rational `z` with `tail_base * z < 1` leaves a tail of at most
/// `tail_scale * (tail_base z)^{T+1} / (1 - tail_base z)`.
#[derive(Debug, Clone)]
pub struct TruncatedSeries {
    coeffs: Vec<Rat>,
    tail_base: Rat,
    tail_scale: Rat,
}

impl TruncatedSeries {
    pub fn new(coeffs: Vec<Rat>, tail_base: Rat, tail_scale: Rat) -> Self {
        TruncatedSeries {
            coeffs,
            tail_base,
            tail_scale,
        }
    }

    pub fn horizon(&self) -> usize {
        self.coeffs.len().saturating_sub(1)
    }

    pub fn coeff(&self, n: usize) -> Rat {
        self.coeffs.get(n).cloned().unwrap_or_else(Rat::zero)
    }

    pub fn coeffs(&self) -> &[Rat] {
        &self.coeffs
    }

    /// Exact partial sum at `z` plus the certified tail bound.
    pub fn eval(&self, z: &Rat) -> Result<(Rat, Rat)> {
        let base_z = &self.tail_base * z;
        if base_z.abs() >= Rat::from_integer(1.into()) {
            return Err(Error::domain(
                "series evaluation requires tail_base * z < 1",
            ));
        }
        let mut value = Rat::zero();
        let mut zp = Rat::from_integer(1.into());
        for c in &self.coeffs {
            value += c * &zp;
            zp *= z;
        }
        let mut tail = self.tail_scale.clone();
        for _ in 0..=self.horizon() {
            tail *= base_z.abs();
        }
        tail /= Rat::from_integer(1.into()) - base_z.abs();
        Ok((value, tail))
    }

    /// Partial sum and tail as doubles, for comparisons against float closed
    /// forms.
    pub fn eval_f64(&self, z: &Rat) -> Result<(f64, f64)> {
        let (v, t) = self.eval(z)?;
        Ok((
            v.to_f64().expect("series value out of range"),
            t.to_f64().expect("tail out of range"),
        ))
    }
}

/// Exact absorbing-boundary dynamic programming for the signed walk.
///
/// At least one boundary must be present. With only one boundary the
/// unbounded side is truncated at distance `N * (T - n)` from the boundary at
/// step `n`; positions beyond cannot be absorbed within the horizon, so the
/// absorbed coefficients are exact. The discarded mass is tracked so that
/// total signed mass remains accountable at every step.
#[derive(Debug, Clone)]
pub struct AbsorbingDp {
    params: WalkParams,
    lower: Option<i64>,
    upper: Option<i64>,
    start: i64,
    horizon: usize,
}

/// Outcome of a DP run.
#[derive(Debug, Clone)]
pub struct DpRun {
    /// `absorbed[n]` maps boundary cells to the mass absorbed exactly at step `n`.
    pub absorbed: Vec<BTreeMap<i64, Rat>>,
    /// Interior signed measure after each step (post truncation).
    pub interior: Vec<SignedMeasure>,
    /// Mass dropped by the single-boundary band truncation, per step.
    pub truncated: Vec<Rat>,
}

impl AbsorbingDp {
    pub fn new(
        params: WalkParams,
        lower: Option<i64>,
        upper: Option<i64>,
        horizon: usize,
    ) -> Result<Self> {
        if lower.is_none() && upper.is_none() {
            return Err(Error::domain("at least one absorbing boundary is required"));
        }
        if let (Some(a), Some(b)) = (lower, upper) {
            if a >= b {
                return Err(Error::domain("lower boundary must sit below upper"));
            }
        }
        Ok(AbsorbingDp {
            params,
            lower,
            upper,
            start: 0,
            horizon,
        })
    }

    pub fn with_start(mut self, x: i64) -> Result<Self> {
        if let Some(a) = self.lower {
            if x <= a {
                return Err(Error::domain("start must lie above the lower boundary"));
            }
        }
        if let Some(b) = self.upper {
            if x >= b {
                return Err(Error::domain("start must lie below the upper boundary"));
            }
        }
        self.start = x;
        Ok(self)
    }

    pub fn params(&self) -> &WalkParams {
        &self.params
    }

    pub fn horizon(&self) -> usize {
        self.horizon
    }

    /// Boundary cells reachable at absorption.
    pub fn boundary_cells(&self) -> Vec<i64> {
        let n = i64::from(self.params.order());
        let mut cells = Vec::new();
        if let Some(a) = self.lower {
            cells.extend(a - n + 1..=a);
        }
        if let Some(b) = self.upper {
            cells.extend(b..b + n);
        }
        cells
    }

    fn is_absorbed(&self, j: i64) -> bool {
        self.lower.map(|a| j <= a).unwrap_or(false) || self.upper.map(|b| j >= b).unwrap_or(false)
    }

    /// Runs the propagation over the full horizon.
    pub fn run(&self) -> DpRun {
        let step = step_pmf(&self.params);
        let n = i64::from(self.params.order());
        let t = self.horizon;
        let mut interior = SignedMeasure::unit(self.start);
        let mut out = DpRun {
            absorbed: vec![BTreeMap::new(); t + 1],
            interior: Vec::with_capacity(t + 1),
            truncated: vec![Rat::zero(); t + 1],
        };
        out.interior.push(interior.clone());
        for step_idx in 1..=t {
            let mut next = SignedMeasure::zero();
            for (pos, mass) in interior.iter() {
                for k in -n..=n {
                    let w = step.mass(k);
                    if w.is_zero() {
                        continue;
                    }
                    next.add_mass(pos + k, mass * w);
                }
            }
            let mut still_interior = SignedMeasure::zero();
            for (pos, mass) in next.iter() {
                if self.is_absorbed(*pos) {
                    let slot = out.absorbed[step_idx]
                        .entry(*pos)
                        .or_insert_with(Rat::zero);
                    *slot += mass.clone();
                } else {
                    still_interior.add_mass(*pos, mass.clone());
                }
            }
            // Band truncation on an unbounded side: a position farther than
            // N*(T-n) from the boundary cannot be absorbed within the horizon.
            let remaining = (t - step_idx) as i64;
            let mut kept = SignedMeasure::zero();
            for (pos, mass) in still_interior.iter() {
                let reachable = match (self.lower, self.upper) {
                    (Some(_), Some(_)) => true,
                    (None, Some(b)) => pos + n * remaining >= b,
                    (Some(a), None) => pos - n * remaining <= a,
                    (None, None) => unreachable!(),
                };
                if reachable {
                    kept.add_mass(*pos, mass.clone());
                } else {
                    out.truncated[step_idx] += mass.clone();
                }
            }
            interior = kept;
            out.interior.push(interior.clone());
        }
        out
    }

    /// Series of `P{sigma = n, S_sigma = ell}` coefficients.
    pub fn first_passage_series(&self, ell: i64) -> Result<TruncatedSeries> {
        if !self.boundary_cells().contains(&ell) {
            return Err(Error::domain(format!(
                "{ell} is not a reachable boundary cell"
            )));
        }
        let run = self.run();
        Ok(self.series_from_run(&run, ell))
    }

    fn series_from_run(&self, run: &DpRun, ell: i64) -> TruncatedSeries {
        let coeffs = run
            .absorbed
            .iter()
            .map(|m| m.get(&ell).cloned().unwrap_or_else(Rat::zero))
            .collect();
        TruncatedSeries::new(coeffs, bounds(&self.params).m1, Rat::from_integer(1.into()))
    }

    /// Series of all boundary cells at once, sharing one propagation.
    pub fn all_first_passage_series(&self) -> Vec<(i64, TruncatedSeries)> {
        let run = self.run();
        self.boundary_cells()
            .into_iter()
            .map(|ell| (ell, self.series_from_run(&run, ell)))
            .collect()
    }

    /// Coefficients of `E_x[f(S_{sigma+n_after}) 1{sigma = n}]` in `z^n`.
    ///
    /// The post-absorption expectation is evaluated exactly through the closed
    /// n-step law, so each coefficient is exact; the tail scale accounts for
    /// the boundary values of the continued expectation.
    pub fn markov_functional_series(
        &self,
        n_after: u32,
        f: impl Fn(i64) -> Rat,
    ) -> Result<TruncatedSeries> {
        if n_after > 8 {
            return Err(Error::HorizonTooLarge(format!(
                "post-absorption horizon {n_after} exceeds 8"
            )));
        }
        let after_law = walk_pmf_closed(&self.params, n_after);
        let continued: BTreeMap<i64, Rat> = self
            .boundary_cells()
            .into_iter()
            .map(|ell| (ell, after_law.expect(|k| f(ell + k))))
            .collect();
        let run = self.run();
        let coeffs: Vec<Rat> = run
            .absorbed
            .iter()
            .map(|m| {
                m.iter()
                    .map(|(ell, mass)| mass * &continued[ell])
                    .fold(Rat::zero(), |a, b| a + b)
            })
            .collect();
        let scale = continued
            .values()
            .map(|v| v.abs())
            .fold(Rat::zero(), |a, b| a + b);
        Ok(TruncatedSeries::new(coeffs, bounds(&self.params).m1, scale))
    }

    /// Total absorbed pseudo-mass up to the horizon, all cells combined.
    pub fn absorbed_partial_mass(&self) -> Rat {
        let run = self.run();
        run.absorbed
            .iter()
            .flat_map(|m| m.values())
            .fold(Rat::zero(), |a, b| a + b)
    }
}

/// Mass accounting of a run: interior + absorbed + truncated at each step.
pub fn conservation_defect(run: &DpRun) -> Vec<Rat> {
    let steps = run.interior.len();
    let mut absorbed_so_far = Rat::zero();
    let mut truncated_so_far = Rat::zero();
    let mut defects = Vec::with_capacity(steps);
    for n in 0..steps {
        absorbed_so_far += run.absorbed[n]
            .values()
            .fold(Rat::zero(), |a, b| a + b.clone());
        truncated_so_far += run.truncated[n].clone();
        let total = run.interior[n].total_mass() + &absorbed_so_far + &truncated_so_far;
        defects.push(total - Rat::from_integer(1.into()));
    }
    defects
}

/// Evaluates a table-valued functional after `n` free steps from `x`,
/// `E_x[f(S_n)]`, exactly; errors if the table misses a reachable point.
pub fn expect_table_after(params: &WalkParams, n: u32, x: i64, f: &ValueTable) -> Result<Rat> {
    walk_pmf_closed(params, n).expect_table(&shift_table(f, -x))
}

fn shift_table(f: &ValueTable, by: i64) -> ValueTable {
    f.iter().map(|(k, v)| (k + by, v.clone())).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::{rat, ratio};

    fn params(n: u32, num: i64, den: i64) -> WalkParams {
        WalkParams::new(n, ratio(num, den)).unwrap()
    }

    #[test]
    fn requires_a_boundary() {
        assert!(AbsorbingDp::new(params(1, 1, 4), None, None, 10).is_err());
    }

    #[test]
    fn hand_checked_single_boundary() {
        // N=1, c=1/4, threshold b=1: one step up has mass 1/4.
        let dp = AbsorbingDp::new(params(1, 1, 4), None, Some(1), 10).unwrap();
        let s = dp.first_passage_series(1).unwrap();
        assert_eq!(s.coeff(0), rat(0));
        assert_eq!(s.coeff(1), ratio(1, 4));
        // Two steps: stay then up = 1/2 * 1/4.
        assert_eq!(s.coeff(2), ratio(1, 8));
    }

    #[test]
    fn hand_checked_two_sided() {
        let dp = AbsorbingDp::new(params(1, 1, 4), Some(-1), Some(1), 10).unwrap();
        let up = dp.first_passage_series(1).unwrap();
        let down = dp.first_passage_series(-1).unwrap();
        assert_eq!(up.coeff(1), ratio(1, 4));
        assert_eq!(down.coeff(1), ratio(1, 4));
    }

    #[test]
    fn mass_is_conserved() {
        let dp = AbsorbingDp::new(params(2, 1, 8), Some(-2), Some(2), 25).unwrap();
        let run = dp.run();
        for d in conservation_defect(&run) {
            assert_eq!(d, rat(0));
        }
        let dp = AbsorbingDp::new(params(2, 1, 8), None, Some(2), 25).unwrap();
        for d in conservation_defect(&dp.run()) {
            assert_eq!(d, rat(0));
        }
    }

    #[test]
    fn absorbed_mass_trends_to_one() {
        let dp = |t| AbsorbingDp::new(params(2, 1, 8), Some(-1), Some(1), t).unwrap();
        let short = dp(6).absorbed_partial_mass();
        let long = dp(24).absorbed_partial_mass();
        let one = rat(1);
        assert!((one.clone() - &long).abs() < (one - &short).abs());
    }

    #[test]
    fn band_truncation_is_exact() {
        // Widening the band must not change the absorbed coefficients: run
        // the same problem with the far boundary pushed out of reach.
        let p = params(2, 1, 8);
        let t = 12usize;
        let single = AbsorbingDp::new(p.clone(), None, Some(2), t).unwrap();
        let wide = AbsorbingDp::new(p, Some(-(2 * t as i64 + 10)), Some(2), t).unwrap();
        for ell in [2, 3] {
            let a = single.first_passage_series(ell).unwrap();
            let b = wide.first_passage_series(ell).unwrap();
            assert_eq!(a.coeffs(), b.coeffs(), "cell {ell}");
        }
    }

    #[test]
    fn wide_band_reproduces_free_walk() {
        let p = params(2, 1, 8);
        let t = 8usize;
        let far = 2 * i64::from(p.order()) * t as i64 + 5;
        let dp = AbsorbingDp::new(p.clone(), Some(-far), Some(far), t).unwrap();
        let run = dp.run();
        for n in 0..=t {
            assert_eq!(
                run.interior[n],
                walk_pmf_closed(&p, n as u32),
                "free walk mismatch at step {n}"
            );
        }
    }

    #[test]
    fn series_eval_and_tail() {
        let zero = TruncatedSeries::new(vec![rat(0); 5], ratio(3, 2), rat(1));
        let (v, tail) = zero.eval(&ratio(1, 20)).unwrap();
        assert_eq!(v, rat(0));
        // (3/40)^5 / (1 - 3/40)
        assert_eq!(tail, ratio(3, 40).pow(5) / (rat(1) - ratio(3, 40)));

        // Geometric coefficients saturate the bound: value is the partial sum.
        let m1 = ratio(3, 2);
        let coeffs: Vec<Rat> = (0..5).map(|n| m1.pow(n)).collect();
        let s = TruncatedSeries::new(coeffs, m1.clone(), rat(1));
        let z = ratio(1, 20);
        let (v, _) = s.eval(&z).unwrap();
        let q = m1 * z;
        let expected = (rat(1) - q.pow(5)) / (rat(1) - q);
        assert_eq!(v, expected);

        assert!(s.eval(&rat(1)).is_err());
    }

    #[test]
    fn markov_series_classical_factorization() {
        // N=1: the walk lands exactly on the threshold, so the compound
        // series is the first-passage series scaled by E_b[f(S_n)].
        let p = params(1, 1, 4);
        let b = 2i64;
        let n_after = 3u32;
        let f = |i: i64| rat(i * i - i);
        let dp = AbsorbingDp::new(p.clone(), None, Some(b), 15).unwrap();
        let compound = dp.markov_functional_series(n_after, f).unwrap();
        let passage = dp.first_passage_series(b).unwrap();
        let continued = walk_pmf_closed(&p, n_after).expect(|k| f(b + k));
        for m in 0..=15 {
            assert_eq!(compound.coeff(m), passage.coeff(m) * &continued);
        }
    }

    #[test]
    fn markov_series_trivial_case() {
        // n_after = 0 reduces to f evaluated at the absorption cell.
        let p = params(2, 1, 8);
        let dp = AbsorbingDp::new(p, None, Some(1), 12).unwrap();
        let by_def = dp.markov_functional_series(0, rat).unwrap();
        let direct: Vec<Rat> = {
            let per_cell = dp.all_first_passage_series();
            (0..=12)
                .map(|n| {
                    per_cell
                        .iter()
                        .map(|(ell, s)| rat(*ell) * s.coeff(n))
                        .fold(Rat::zero(), |a, b| a + b)
                })
                .collect()
        };
        assert_eq!(by_def.coeffs(), &direct[..]);
        assert!(dp.markov_functional_series(9, rat).is_err());
    }
}
