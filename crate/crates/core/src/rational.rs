//! Exact arithmetic aliases and small helpers used across the crate.
//!
//! All laws and identities are carried by [`Rat`], an arbitrary-precision
//! rational that is always kept in lowest terms with a positive denominator.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::ToPrimitive;

pub type Int = BigInt;
pub type Rat = BigRational;

/// A function given by its values on a finite set of integers.
pub type ValueTable = BTreeMap<i64, Rat>;

pub fn int(i: i64) -> Int {
    Int::from(i)
}

pub fn rat(i: i64) -> Rat {
    Rat::from_integer(int(i))
}

/// Exact rational `n/d`. Panics if `d == 0`.
pub fn ratio(n: i64, d: i64) -> Rat {
    Rat::new(int(n), int(d))
}

pub fn rat_to_f64(x: &Rat) -> f64 {
    x.to_f64().expect("rational out of f64 range")
}

/// Builds a value table by evaluating `f` on an inclusive range.
pub fn table_from_fn(lo: i64, hi: i64, f: impl Fn(i64) -> Rat) -> ValueTable {
    (lo..=hi).map(|i| (i, f(i))).collect()
}

/// Renders a rational as `num/den` (or a bare integer when den == 1).
pub fn rat_string(x: &Rat) -> String {
    if x.denom() == &int(1) {
        x.numer().to_string()
    } else {
        format!("{}/{}", x.numer(), x.denom())
    }
}
