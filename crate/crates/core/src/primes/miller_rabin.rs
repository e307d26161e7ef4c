use num_bigint::{BigUint, RandBigInt};
use num_traits::One;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::numeric::BigNat;

/// Bases that make the strong probable-prime test exact below 2^64
/// (Jim Sinclair's set).
const WITNESSES_64: [u64; 7] = [2, 325, 9375, 28178, 450775, 9780504, 1795265022];

/// Random rounds above 2^64; 4^-64 = 2^-128 error bound.
pub(crate) const RANDOM_ROUNDS: usize = 64;

pub(crate) const SMALL_PRIMES: [u64; 25] = [
    2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41, 43, 47, 53, 59, 61, 67, 71, 73, 79, 83, 89, 97,
];

#[inline]
pub(crate) fn mul_mod(a: u64, b: u64, m: u64) -> u64 {
    ((a as u128 * b as u128) % m as u128) as u64
}

fn pow_mod(mut base: u64, mut exp: u64, m: u64) -> u64 {
    let mut acc = 1 % m;
    base %= m;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = mul_mod(acc, base, m);
        }
        base = mul_mod(base, base, m);
        exp >>= 1;
    }
    acc
}

/// Deterministic primality for every `u64`.
pub fn is_prime_u64(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    for &p in &SMALL_PRIMES {
        if n == p {
            return true;
        }
        if n % p == 0 {
            return false;
        }
    }
    if n < 97 * 97 {
        return true;
    }
    let s = (n - 1).trailing_zeros();
    let d = (n - 1) >> s;
    'witness: for &a in &WITNESSES_64 {
        let a = a % n;
        if a == 0 {
            continue;
        }
        let mut x = pow_mod(a, d, n);
        if x == 1 || x == n - 1 {
            continue;
        }
        for _ in 1..s {
            x = mul_mod(x, x, n);
            if x == n - 1 {
                continue 'witness;
            }
        }
        return false;
    }
    true
}

fn strong_probable_prime(n: &BigUint, n_minus_1: &BigUint, d: &BigUint, s: u64, a: &BigUint) -> bool {
    let mut x = a.modpow(d, n);
    if x.is_one() || &x == n_minus_1 {
        return true;
    }
    for _ in 1..s {
        x = x.modpow(&BigUint::from(2u32), n);
        if &x == n_minus_1 {
            return true;
        }
    }
    false
}

/// Probable-prime test for values above 2^64: base 2 plus
/// [`RANDOM_ROUNDS`] bases drawn from a generator seeded by `n` itself, so
/// the verdict is reproducible.
pub(crate) fn is_probable_prime_big(n: &BigNat) -> bool {
    let n = n.as_biguint();
    for &p in &SMALL_PRIMES {
        if (n % p) == BigUint::from(0u32) {
            return n == &BigUint::from(p);
        }
    }
    let one = BigUint::one();
    let n_minus_1 = n - &one;
    let s = n_minus_1.trailing_zeros().unwrap_or(0);
    let d = &n_minus_1 >> s;
    if !strong_probable_prime(n, &n_minus_1, &d, s, &BigUint::from(2u32)) {
        return false;
    }
    let seed = n.iter_u64_digits().fold(0x9e37_79b9_7f4a_7c15u64, |h, limb| {
        (h ^ limb).wrapping_mul(0x0100_0000_01b3).rotate_left(17)
    });
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let lo = BigUint::from(2u32);
    (0..RANDOM_ROUNDS).all(|_| {
        let a = rng.gen_biguint_range(&lo, &n_minus_1);
        strong_probable_prime(n, &n_minus_1, &d, s, &a)
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn known_u64_values() {
        assert!(is_prime_u64(2));
        assert!(!is_prime_u64(1));
        assert!(!is_prime_u64(0));
        assert!(is_prime_u64(47809));
        assert!(is_prime_u64(78437));
        assert!(!is_prime_u64(3_749_994_533));
        // largest prime below 2^64
        assert!(is_prime_u64(18_446_744_073_709_551_557));
        // strong pseudoprimes to several small bases
        assert!(!is_prime_u64(3_215_031_751));
        assert!(!is_prime_u64(3_825_123_056_546_413_051));
    }

    #[test]
    fn big_values() {
        let p: BigNat = "1634733645809253848443133883865090859841783670033092312181110852389333100104508151212118167511579"
            .parse()
            .unwrap();
        assert!(is_probable_prime_big(&p));
        assert!(!is_probable_prime_big(&(&p * &p)));
        // 2^89 - 1 is a Mersenne prime; 2^67 - 1 is not
        let m89 = BigNat::from((1u128 << 89) - 1);
        let m67 = BigNat::from((1u128 << 67) - 1);
        assert!(is_probable_prime_big(&m89));
        assert!(!is_probable_prime_big(&m67));
    }
}
