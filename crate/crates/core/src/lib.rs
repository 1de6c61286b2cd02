//! Exact and numerical functionals of the signed ("pseudo") random walk whose
//! generator is the discrete N-iterated Laplacian.
//!
//! The walk takes steps in `{-N,...,N}` under a signed step distribution that
//! sums to one but carries negative masses. This crate computes, exactly in
//! big-rational arithmetic where the quantities are rational and in double
//! precision where they are not:
//!
//! * step and n-step pseudo-distributions, bounds and characteristic function
//!   ([`walk`]);
//! * roots of the characteristic polynomial and generating functions
//!   ([`spectral`]);
//! * first-overshoot laws of a single threshold, pseudo-moments, Newton
//!   interpolation polynomials and the strong pseudo-Markov identity
//!   ([`overshoot`]);
//! * two-sided exit laws, ruin pseudo-probabilities, lacunary Vandermonde
//!   solvers, boundary polynomials and the discrete Lauricella problem
//!   ([`exit`]);
//! * closed-form limits for the associated pseudo-Brownian motion
//!   ([`continuum`]);
//! * an independent brute-force signed-measure oracle with certified
//!   truncation tails ([`oracle`]) and cross-check suites ([`verify`]).

pub mod combin;
pub mod continuum;
pub mod error;
pub mod exit;
pub mod oracle;
pub mod overshoot;
pub mod poly;
pub mod rational;
pub mod spectral;
pub mod verify;
pub mod walk;

pub use error::{Error, Result};
pub use rational::{int, rat, ratio, Int, Rat, ValueTable};
