use super::{BaselineError, Factorization};
use crate::numeric::{isqrt, isqrt_u128, BigNat};

/// Quadratic residues mod 64; a square's low six bits always land here.
fn maybe_square(r: u128) -> bool {
    const MASK: u64 = {
        let mut m = 0u64;
        let mut i = 0;
        while i < 64 {
            m |= 1 << ((i * i) % 64);
            i += 1;
        }
        m
    };
    MASK >> (r as u64 & 63) & 1 == 1
}

/// Fermat's method: the first `x ≥ ⌈√N⌉` with `x² − N = y²` gives
/// `N = (x−y)(x+y)`.
///
/// Odd composites always have a solution with `x ≤ (N+9)/6` (the split
/// `3·(N/3)`), so the search stops there and reports `NoFactor`. Even inputs
/// are split off as `2·(N/2)` directly, since `N ≡ 2 (mod 4)` has no
/// representation. `work` counts the `x` values examined.
pub fn fermat(n: &BigNat) -> Result<Factorization, BaselineError> {
    if *n < BigNat::from(2u64) {
        return Err(BaselineError::TooSmall(n.clone()));
    }
    if n.is_even() {
        if *n == BigNat::from(2u64) {
            return Err(BaselineError::NoFactor(n.clone()));
        }
        return Ok(Factorization::new(BigNat::from(2u64), n / 2u64, 0));
    }
    match n.to_u64() {
        Some(v) => fermat_word(v),
        None => fermat_big(n),
    }
    .ok_or_else(|| BaselineError::NoFactor(n.clone()))
}

fn fermat_word(n: u64) -> Option<Factorization> {
    let n = n as u128;
    let mut x = isqrt_u128(n);
    if x * x < n {
        x += 1;
    }
    let limit = (n + 9) / 6;
    let mut r = x * x - n;
    let mut work = 0;
    while x <= limit {
        work += 1;
        if maybe_square(r) {
            let y = isqrt_u128(r);
            if y * y == r && x - y > 1 {
                return Some(Factorization::new(
                    BigNat::from(x - y),
                    BigNat::from(x + y),
                    work,
                ));
            }
        }
        r += 2 * x + 1;
        x += 1;
    }
    None
}

fn fermat_big(n: &BigNat) -> Option<Factorization> {
    let root = isqrt(n);
    let mut x = if root.exact { root.kappa } else { root.kappa + 1u64 };
    let limit = (n + 9u64) / 6u64;
    let mut r = &(&x * &x) - n;
    let mut work = 0;
    while x <= limit {
        work += 1;
        let low = r.to_u128().unwrap_or_else(|| (&r % &BigNat::from(1u128 << 64)).to_u128().unwrap());
        if maybe_square(low) {
            let y = isqrt(&r);
            if y.exact && &x - &y.kappa > BigNat::one() {
                let a = &x - &y.kappa;
                let b = &x + &y.kappa;
                return Some(Factorization::new(a, b, work));
            }
        }
        r = r + &(&x * 2u64) + 1u64;
        x = x + 1u64;
    }
    None
}
