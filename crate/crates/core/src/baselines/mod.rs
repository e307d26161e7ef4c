//! Classical reference factorizers: trial division, Fermat's difference of
//! squares, and Pollard's rho with Brent's cycle detection.
//!
//! Each returns the split normalized to `(smaller, larger)` along with a
//! method-specific work count (divisions, Fermat steps, or modular
//! multiplications) that is deterministic for a given input.

mod fermat;
mod rho;
mod trial;

pub use fermat::fermat;
pub use rho::pollard_rho;
pub use trial::trial_division;

use std::fmt;
use std::str::FromStr;

use thiserror::Error;

use crate::numeric::BigNat;
use crate::primes::is_prime;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum BaselineError {
    #[error("{0} has no nontrivial factor")]
    NoFactor(BigNat),
    #[error("input {0} is below 2")]
    TooSmall(BigNat),
    #[error("rho found no factor of {n} in {attempts} attempts")]
    CycleFailure { n: BigNat, attempts: u32 },
}

/// A split `N = p·q` with `p ≤ q`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Factorization {
    pub p: BigNat,
    pub q: BigNat,
    pub work: u64,
}

impl Factorization {
    pub(crate) fn new(a: BigNat, b: BigNat, work: u64) -> Self {
        let (p, q) = if a <= b { (a, b) } else { (b, a) };
        Factorization { p, q, work }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum BaselineMethod {
    Trial,
    Fermat,
    Rho,
}

impl BaselineMethod {
    pub const ALL: [BaselineMethod; 3] = [BaselineMethod::Trial, BaselineMethod::Fermat, BaselineMethod::Rho];

    pub fn name(self) -> &'static str {
        match self {
            BaselineMethod::Trial => "trial",
            BaselineMethod::Fermat => "fermat",
            BaselineMethod::Rho => "rho",
        }
    }

    /// Runs the method; `seed` only affects rho.
    pub fn factor(self, n: &BigNat, seed: u64) -> Result<Factorization, BaselineError> {
        match self {
            BaselineMethod::Trial => trial_division(n),
            BaselineMethod::Fermat => fermat(n),
            BaselineMethod::Rho => pollard_rho(n, seed),
        }
    }
}

impl fmt::Display for BaselineMethod {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for BaselineMethod {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        BaselineMethod::ALL
            .into_iter()
            .find(|m| m.name() == s)
            .ok_or_else(|| format!("unknown method {s:?} (trial, fermat, rho)"))
    }
}

/// Complete prime factorization using `method` as the splitting step,
/// ascending with multiplicity.
pub fn prime_factors_with(method: BaselineMethod, n: &BigNat, seed: u64) -> Result<Vec<BigNat>, BaselineError> {
    if n.is_zero() {
        return Err(BaselineError::TooSmall(n.clone()));
    }
    let mut out = Vec::new();
    let mut stack = vec![n.clone()];
    while let Some(m) = stack.pop() {
        if m <= BigNat::one() {
            continue;
        }
        if is_prime(&m) {
            out.push(m);
            continue;
        }
        let split = method.factor(&m, seed)?;
        stack.push(split.p);
        stack.push(split.q);
    }
    out.sort();
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn method_names_round_trip() {
        for m in BaselineMethod::ALL {
            assert_eq!(m.name().parse::<BaselineMethod>(), Ok(m));
        }
        assert!("qs".parse::<BaselineMethod>().is_err());
    }

    #[test]
    fn complete_factorizations_agree() {
        let n = BigNat::from(2u64 * 2 * 3 * 5 * 5 * 7 * 101 * 103);
        let expect: Vec<BigNat> = [2u64, 2, 3, 5, 5, 7, 101, 103].map(BigNat::from).to_vec();
        for m in BaselineMethod::ALL {
            assert_eq!(prime_factors_with(m, &n, 1).unwrap(), expect, "{m}");
        }
    }
}
