//! Exact integer and fixed-point decimal arithmetic.
//!
//! Every quantity in the crate (`N`, the candidate factors, `κ = ⌊√N⌋`, the
//! midpoint `g`) is a [`BigNat`]; quotients such as the common factor `f`
//! are [`FixedDec`] values produced by truncating division.

mod bignat;
mod fixed;

pub use bignat::BigNat;
pub use fixed::{digit_agreement, fixed_div, FixedDec};

use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum NumericError {
    #[error("division by zero")]
    ZeroDivisor,
    #[error("scale mismatch: {left} vs {right} fraction digits")]
    ScaleMismatch { left: u32, right: u32 },
    #[error("not a decimal integer: {0:?}")]
    InvalidDigits(String),
    #[error("not a fixed-point decimal: {0:?}")]
    InvalidDecimal(String),
}

/// Integer square root of `N` together with the leftover `N - κ²`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct KappaResult {
    pub kappa: BigNat,
    pub remainder: BigNat,
    pub exact: bool,
}

/// Returns the unique `κ` with `κ² ≤ n < (κ+1)²`.
///
/// Newton iteration from a power of two that is already `≥ √n`; the iterates
/// decrease monotonically and the first non-decreasing step is the floor.
pub fn isqrt(n: &BigNat) -> KappaResult {
    let kappa = isqrt_floor(n);
    let remainder = n - &(&kappa * &kappa);
    let exact = remainder.is_zero();
    KappaResult {
        kappa,
        remainder,
        exact,
    }
}

fn isqrt_floor(n: &BigNat) -> BigNat {
    if n.is_zero() {
        return BigNat::zero();
    }
    if let Some(v) = n.to_u128() {
        return BigNat::from(isqrt_u128(v));
    }
    let shift = n.bits().div_ceil(2);
    let mut x = BigNat::from(num_bigint::BigUint::from(1u32) << shift);
    loop {
        let y = (&x + &(n / &x)) / 2u64;
        if y >= x {
            return x;
        }
        x = y;
    }
}

pub(crate) fn isqrt_u128(n: u128) -> u128 {
    if n < 2 {
        return n;
    }
    // seed from the bit length, then Newton down to the floor
    let mut x: u128 = 1u128 << (128 - n.leading_zeros()).div_ceil(2);
    loop {
        let y = (x + n / x) / 2;
        if y >= x {
            return x;
        }
        x = y;
    }
}

/// Midpoint of a factor pair and its square, next to the true product.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MidpointCheck {
    pub g: BigNat,
    pub gsq: BigNat,
    pub n: BigNat,
}

impl MidpointCheck {
    /// AM-GM with floor slack: `g² ≥ n - g` always holds.
    pub fn within_floor_slack(&self) -> bool {
        &self.gsq + &self.g >= self.n
    }
}

/// `g = ⌊(p+q)/2⌋`, `g²` and `n = p·q`, for comparing the squared mean with
/// the product.
pub fn midpoint_sq_check(p: &BigNat, q: &BigNat) -> MidpointCheck {
    let g = (p + q) / 2u64;
    let gsq = &g * &g;
    MidpointCheck { g, gsq, n: p * q }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn nat(v: u64) -> BigNat {
        BigNat::from(v)
    }

    #[test]
    fn isqrt_worked_example() {
        let r = isqrt(&nat(3_749_994_533));
        assert_eq!(r.kappa, nat(61237));
        assert!(!r.exact);
        assert_eq!(r.remainder, nat(3_749_994_533 - 3_749_970_169));
    }

    #[test]
    fn isqrt_zero_and_squares() {
        let r = isqrt(&BigNat::zero());
        assert_eq!((r.kappa, r.remainder, r.exact), (BigNat::zero(), BigNat::zero(), true));
        // 61237² by schoolbook long multiplication: 3749970169
        let r = isqrt(&nat(3_749_970_169));
        assert_eq!((r.kappa, r.remainder, r.exact), (nat(61237), BigNat::zero(), true));
        for v in [1u64, 2, 3, 4, 8, 9, 15, 16, 17, u64::MAX] {
            let k = isqrt(&nat(v)).kappa.to_u64().unwrap() as u128;
            assert!(k * k <= v as u128 && (k + 1) * (k + 1) > v as u128, "{v}");
        }
    }

    #[test]
    fn isqrt_beyond_u128() {
        let k: BigNat = "1762787066122860943811705736776226385093299156422107330123170327876780025762012912130622946534605"
            .parse()
            .unwrap();
        let n = &(&k * &k) + &(&k * 2u64);
        let r = isqrt(&n);
        assert_eq!(r.kappa, k);
        assert_eq!(r.remainder, &k * 2u64);
        let r = isqrt(&(&n + 1u64));
        assert_eq!(r.kappa, &k + 1u64);
        assert!(r.exact);
    }

    #[test]
    fn isqrt_u128_edges() {
        assert_eq!(isqrt_u128(u128::MAX), u64::MAX as u128);
        assert_eq!(isqrt_u128(1u128 << 126), 1u128 << 63);
        assert_eq!(isqrt_u128(99), 9);
    }

    #[test]
    fn midpoint_examples() {
        let m = midpoint_sq_check(&nat(47809), &nat(78437));
        assert_eq!((m.g, m.gsq, m.n), (nat(63123), nat(3_984_513_129), nat(3_749_994_533)));
        let m = midpoint_sq_check(&nat(47809), &nat(47809));
        assert_eq!(m.g, nat(47809));
        assert_eq!(m.gsq, m.n);
        let m = midpoint_sq_check(&nat(1), &nat(3));
        assert!(m.within_floor_slack());
        assert_eq!((m.g, m.gsq, m.n), (nat(2), nat(4), nat(3)));
    }
}
