use super::{BaselineError, Factorization};
use crate::numeric::{isqrt, BigNat};
use crate::primes::WordPrimes;

/// Smallest prime factor by division in increasing order.
///
/// While `√N` fits in 64 bits only primes are tried (from a segmented
/// sieve); above, the 6k±1 wheel is used. `work` counts divisions.
pub fn trial_division(n: &BigNat) -> Result<Factorization, BaselineError> {
    if *n < BigNat::from(2u64) {
        return Err(BaselineError::TooSmall(n.clone()));
    }
    let kappa = isqrt(n).kappa;
    match (n.to_u128(), kappa.to_u64()) {
        (Some(v), Some(k)) => trial_word(v, k),
        _ => trial_big(n, &kappa),
    }
    .ok_or_else(|| BaselineError::NoFactor(n.clone()))
}

fn trial_word(n: u128, kappa: u64) -> Option<Factorization> {
    let mut work = 0;
    for p in WordPrimes::ascending(2, kappa) {
        work += 1;
        if n % p as u128 == 0 {
            return Some(Factorization::new(BigNat::from(p), BigNat::from(n / p as u128), work));
        }
    }
    None
}

fn trial_big(n: &BigNat, kappa: &BigNat) -> Option<Factorization> {
    let mut work = 0;
    let try_div = |d: &BigNat, work: &mut u64| {
        *work += 1;
        let (q, r) = n.div_rem(d);
        r.is_zero().then_some(q)
    };
    for d in [2u64, 3] {
        let d = BigNat::from(d);
        if let Some(q) = try_div(&d, &mut work) {
            return Some(Factorization::new(d, q, work));
        }
    }
    let mut d = BigNat::from(5u64);
    let mut step = 2u64;
    while d <= *kappa {
        if let Some(q) = try_div(&d, &mut work) {
            return Some(Factorization::new(d, q, work));
        }
        d = d + step;
        step = 6 - step;
    }
    None
}
