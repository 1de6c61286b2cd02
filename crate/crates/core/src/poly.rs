//! Dense polynomials with exact rational coefficients.
//!
//! Small helper used for Newton and Lagrange boundary polynomials; degrees
//! stay below ~2N so nothing here is tuned for size.

use num_traits::{One, Zero};

use crate::rational::{rat, Rat};

/// Polynomial `c0 + c1 x + ... + cd x^d`; trailing zero coefficients trimmed.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Poly {
    coeffs: Vec<Rat>,
}

impl Poly {
    pub fn zero() -> Self {
        Poly { coeffs: Vec::new() }
    }

    pub fn constant(c: Rat) -> Self {
        Poly { coeffs: vec![c] }.trimmed()
    }

    pub fn from_coeffs(coeffs: Vec<Rat>) -> Self {
        Poly { coeffs }.trimmed()
    }

    /// The monic linear factor `x - r`.
    pub fn x_minus(r: Rat) -> Self {
        Poly {
            coeffs: vec![-r, Rat::one()],
        }
    }

    fn trimmed(mut self) -> Self {
        while matches!(self.coeffs.last(), Some(c) if c.is_zero()) {
            self.coeffs.pop();
        }
        self
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Degree, with the zero polynomial reported as degree 0.
    pub fn degree(&self) -> usize {
        self.coeffs.len().saturating_sub(1)
    }

    pub fn coeffs(&self) -> &[Rat] {
        &self.coeffs
    }

    pub fn eval(&self, x: &Rat) -> Rat {
        let mut acc = Rat::zero();
        for c in self.coeffs.iter().rev() {
            acc = acc * x + c;
        }
        acc
    }

    pub fn eval_int(&self, x: i64) -> Rat {
        self.eval(&rat(x))
    }

    pub fn add(&self, other: &Poly) -> Poly {
        let n = self.coeffs.len().max(other.coeffs.len());
        let mut coeffs = vec![Rat::zero(); n];
        for (i, c) in self.coeffs.iter().enumerate() {
            coeffs[i] += c;
        }
        for (i, c) in other.coeffs.iter().enumerate() {
            coeffs[i] += c;
        }
        Poly { coeffs }.trimmed()
    }

    pub fn scale(&self, k: &Rat) -> Poly {
        Poly {
            coeffs: self.coeffs.iter().map(|c| c * k).collect(),
        }
        .trimmed()
    }

    pub fn mul(&self, other: &Poly) -> Poly {
        if self.is_zero() || other.is_zero() {
            return Poly::zero();
        }
        let mut coeffs = vec![Rat::zero(); self.coeffs.len() + other.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate() {
                coeffs[i + j] += a * b;
            }
        }
        Poly { coeffs }.trimmed()
    }

    /// Substitutes `x -> p + q x` (affine change of variable).
    pub fn compose_affine(&self, p: &Rat, q: &Rat) -> Poly {
        let mut acc = Poly::zero();
        let inner = Poly::from_coeffs(vec![p.clone(), q.clone()]);
        for c in self.coeffs.iter().rev() {
            acc = acc.mul(&inner).add(&Poly::constant(c.clone()));
        }
        acc
    }
}

/// Lagrange interpolation through distinct integer nodes.
///
/// Panics if two nodes coincide; the callers only pass distinct integers.
pub fn lagrange_interpolate(points: &[(i64, Rat)]) -> Poly {
    let mut acc = Poly::zero();
    for (i, (xi, yi)) in points.iter().enumerate() {
        if yi.is_zero() {
            continue;
        }
        let mut basis = Poly::constant(Rat::one());
        let mut denom = Rat::one();
        for (j, (xj, _)) in points.iter().enumerate() {
            if i == j {
                continue;
            }
            assert_ne!(xi, xj, "repeated interpolation node");
            basis = basis.mul(&Poly::x_minus(rat(*xj)));
            denom *= rat(xi - xj);
        }
        acc = acc.add(&basis.scale(&(yi / denom)));
    }
    acc
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::ratio;

    #[test]
    fn eval_and_arith() {
        // (x - 1)(x + 2) = x^2 + x - 2
        let p = Poly::x_minus(rat(1)).mul(&Poly::x_minus(rat(-2)));
        assert_eq!(p.coeffs(), &[rat(-2), rat(1), rat(1)]);
        assert_eq!(p.eval_int(3), rat(10));
        let q = p.add(&Poly::constant(rat(2)));
        assert_eq!(q.eval_int(0), rat(0));
    }

    #[test]
    fn affine_composition() {
        // p(x) = x^2, p(1 + 2x) = 1 + 4x + 4x^2
        let p = Poly::from_coeffs(vec![rat(0), rat(0), rat(1)]);
        let q = p.compose_affine(&rat(1), &rat(2));
        assert_eq!(q.coeffs(), &[rat(1), rat(4), rat(4)]);
    }

    #[test]
    fn interpolation_recovers_polynomial() {
        let p = Poly::from_coeffs(vec![ratio(1, 3), rat(-2), rat(0), ratio(5, 7)]);
        let pts: Vec<_> = (0..4).map(|x| (x, p.eval_int(x))).collect();
        assert_eq!(lagrange_interpolate(&pts), p);
    }
}
