use num_bigint::{BigUint, RandBigInt};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use super::{is_prime, next_prime, PrimeError};
use crate::numeric::BigNat;

const ATTEMPT_BUDGET: u32 = 10_000;
const BALANCE_SCALE: u64 = 1_000_000;

/// A generated product of two primes, `p ≤ q`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Semiprime {
    pub n: BigNat,
    pub p: BigNat,
    pub q: BigNat,
}

/// Draws a semiprime `N = p·q` with `bits ± 1` bits and `q/p ≤ balance`,
/// deterministically from `seed`.
///
/// `p` is drawn from `[2^(h-1), 2^h)` with `h = bits/2`, then `q` from
/// `[p, p·balance]`; draws that miss the bit window are retried.
pub fn random_semiprime(bits: u32, balance: f64, seed: u64) -> Result<Semiprime, PrimeError> {
    if bits < 8 {
        return Err(PrimeError::InvalidArgument(format!("bits must be ≥ 8, got {bits}")));
    }
    if !(balance >= 1.0) || !balance.is_finite() {
        return Err(PrimeError::InvalidArgument(format!("balance must be ≥ 1, got {balance}")));
    }
    // balance as an exact rational micro-fraction, rounded down
    let balance_micro = BigNat::from((balance * BALANCE_SCALE as f64).floor() as u64);
    let half = bits / 2;
    let p_lo = BigUint::from(1u32) << (half - 1);
    let p_hi = BigUint::from(1u32) << half;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);

    for _ in 0..ATTEMPT_BUDGET {
        let start = BigNat::from(rng.gen_biguint_range(&p_lo, &p_hi));
        let p = if is_prime(&start) { start } else { next_prime(&start) };
        let q_hi = &(&p * &balance_micro) / BALANCE_SCALE;
        if q_hi < p {
            continue;
        }
        let span = (&q_hi - &p).into_biguint() + 1u32;
        let start = &p + &BigNat::from(rng.gen_biguint_below(&span));
        let q = if is_prime(&start) { start } else { next_prime(&start) };
        if q > q_hi {
            continue;
        }
        let n = &p * &q;
        if n.bits().abs_diff(bits as u64) <= 1 {
            return Ok(Semiprime { n, p, q });
        }
    }
    Err(PrimeError::GenerationFailure {
        attempts: ATTEMPT_BUDGET,
    })
}
