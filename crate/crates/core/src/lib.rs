//! Semiprime factorization by walking the two common-factor lines
//! `f = κ/p` and `f = q/κ` toward their meeting point, where `κ = ⌊√N⌋`.
//!
//! The crate also carries the exact arithmetic it needs, classical
//! baselines for comparison, and a checker for the RSA-640 appendix digits.

pub mod appendix;
pub mod baselines;
pub mod numeric;
pub mod primes;
pub mod sweep;

pub use numeric::{digit_agreement, fixed_div, isqrt, midpoint_sq_check, BigNat, FixedDec, KappaResult};
pub use primes::{is_prime, next_prime, prev_prime, random_semiprime, PrimeCursor};
pub use sweep::{dual_sweep, FactorResult, SweepConfig, SweepError};
