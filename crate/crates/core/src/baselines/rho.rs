use num_bigint::RandBigInt;
use num_integer::Integer;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::{BaselineError, Factorization};
use crate::numeric::{isqrt, BigNat};
use crate::primes::{is_prime, mul_mod};

const ATTEMPTS: u32 = 32;
/// Differences multiplied together between gcds.
const BATCH: u64 = 128;

/// Pollard's rho with Brent's cycle finding and batched gcds.
///
/// Even inputs and perfect squares are split directly; primes report
/// `NoFactor`. Each attempt draws a fresh polynomial `x² + c` from `seed`.
/// `work` counts modular multiplications.
pub fn pollard_rho(n: &BigNat, seed: u64) -> Result<Factorization, BaselineError> {
    if *n < BigNat::from(2u64) {
        return Err(BaselineError::TooSmall(n.clone()));
    }
    if is_prime(n) {
        return Err(BaselineError::NoFactor(n.clone()));
    }
    if n.is_even() {
        return Ok(Factorization::new(BigNat::from(2u64), n / 2u64, 0));
    }
    let root = isqrt(n);
    if root.exact {
        return Ok(Factorization::new(root.kappa.clone(), root.kappa, 0));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut work = 0;
    for _ in 0..ATTEMPTS {
        let found = match n.to_u64() {
            Some(v) => {
                let c = rng.gen_range(1..v);
                let y0 = rng.gen_range(0..v);
                brent_word(v, c, y0, &mut work).map(BigNat::from)
            }
            None => {
                let c = rng.gen_biguint_range(&1u32.into(), n.as_biguint());
                let y0 = rng.gen_biguint_below(n.as_biguint());
                brent_big(n, &BigNat::from(c), BigNat::from(y0), &mut work)
            }
        };
        if let Some(d) = found {
            let q = n / &d;
            return Ok(Factorization::new(d, q, work));
        }
    }
    Err(BaselineError::CycleFailure {
        n: n.clone(),
        attempts: ATTEMPTS,
    })
}

/// One Brent run; a divisor strictly between 1 and `n`, or `None` when the
/// cycle closes on `n` itself.
fn brent_word(n: u64, c: u64, y0: u64, work: &mut u64) -> Option<u64> {
    let f = |x: u64, work: &mut u64| {
        *work += 1;
        ((mul_mod(x, x, n) as u128 + c as u128) % n as u128) as u64
    };
    let (mut y, mut x, mut ys) = (y0, y0, y0);
    let (mut r, mut q, mut g) = (1u64, 1u64, 1u64);
    while g == 1 {
        x = y;
        for _ in 0..r {
            y = f(y, work);
        }
        let mut k = 0;
        while k < r && g == 1 {
            ys = y;
            for _ in 0..BATCH.min(r - k) {
                y = f(y, work);
                q = mul_mod(q, x.abs_diff(y), n);
                *work += 1;
            }
            g = q.gcd(&n);
            k += BATCH;
        }
        r *= 2;
    }
    if g == n {
        // the batch overshot; replay it one difference at a time
        loop {
            ys = f(ys, work);
            g = x.abs_diff(ys).gcd(&n);
            if g > 1 {
                break;
            }
        }
    }
    (g != n).then_some(g)
}

fn brent_big(n: &BigNat, c: &BigNat, y0: BigNat, work: &mut u64) -> Option<BigNat> {
    let f = |x: &BigNat, work: &mut u64| {
        *work += 1;
        &(&(x * x) + c) % n
    };
    let diff = |a: &BigNat, b: &BigNat| if a >= b { a - b } else { b - a };
    let one = BigNat::one();
    let (mut y, mut x, mut ys) = (y0.clone(), y0.clone(), y0);
    let (mut r, mut q, mut g) = (1u64, one.clone(), one.clone());
    while g == one {
        x = y.clone();
        for _ in 0..r {
            y = f(&y, work);
        }
        let mut k = 0;
        while k < r && g == one {
            ys = y.clone();
            for _ in 0..BATCH.min(r - k) {
                y = f(&y, work);
                q = &(&q * &diff(&x, &y)) % n;
                *work += 1;
            }
            g = q.gcd(n);
            k += BATCH;
        }
        r *= 2;
    }
    if g == *n {
        loop {
            ys = f(&ys, work);
            g = diff(&x, &ys).gcd(n);
            if g > one {
                break;
            }
        }
    }
    (g != *n).then_some(g)
}
