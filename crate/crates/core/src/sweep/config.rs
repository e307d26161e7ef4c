use std::fmt;

use super::SweepError;
use crate::numeric::{BigNat, FixedDec};

pub const DEFAULT_PRECISION: u32 = 110;

/// Search settings. Interval coefficients are exact decimals.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SweepConfig {
    /// Fraction digits carried by every `f` value.
    pub precision: u32,
    pub a_lo: FixedDec,
    pub a_hi: FixedDec,
    pub b_lo: FixedDec,
    pub b_hi: FixedDec,
    /// Upper bound on prime candidates examined, `None` for unlimited.
    pub max_candidates: Option<u64>,
    /// Widen `b_hi` (and narrow `a_lo`) geometrically until a factor is
    /// found or the whole range below `κ` has been covered.
    pub extend_intervals: bool,
}

fn dec(s: &str) -> FixedDec {
    s.parse().expect("literal decimal")
}

impl Default for SweepConfig {
    fn default() -> Self {
        SweepConfig {
            precision: DEFAULT_PRECISION,
            a_lo: dec("0.01"),
            a_hi: dec("1"),
            b_lo: dec("1.01"),
            b_hi: dec("2"),
            max_candidates: None,
            extend_intervals: false,
        }
    }
}

impl SweepConfig {
    pub fn extended() -> Self {
        SweepConfig {
            extend_intervals: true,
            ..SweepConfig::default()
        }
    }

    /// Checks `0 < a_lo < a_hi ≤ 1 ≤ b_lo < b_hi`.
    pub fn validate(&self) -> Result<(), SweepError> {
        let zero = FixedDec::from_integer(BigNat::zero());
        let one = FixedDec::from_integer(BigNat::one());
        let ok = zero < self.a_lo
            && self.a_lo < self.a_hi
            && self.a_hi <= one
            && one <= self.b_lo
            && self.b_lo < self.b_hi;
        if ok {
            Ok(())
        } else {
            Err(SweepError::InvalidConfig(format!(
                "need 0 < a_lo < a_hi ≤ 1 ≤ b_lo < b_hi, got a = [{}, {}], b = [{}, {}]",
                self.a_lo, self.a_hi, self.b_lo, self.b_hi
            )))
        }
    }

    /// Coefficients for extension round `k`: `a_lo / 2^k` and `b_hi · 2^k`.
    pub(crate) fn widened(&self, round: u32) -> SweepConfig {
        if round == 0 {
            return self.clone();
        }
        let factor = BigNat::from(2u64).pow(round);
        SweepConfig {
            a_lo: self.a_lo.div_pow2(round),
            b_hi: FixedDec::new(self.b_hi.mantissa() * &factor, self.b_hi.scale()),
            ..self.clone()
        }
    }
}

/// Inclusive bounds of the two candidate ranges, `p ∈ [p_lo, p_hi]` and
/// `q ∈ [q_lo, q_hi]`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SearchIntervals {
    pub p_lo: BigNat,
    pub p_hi: BigNat,
    pub q_lo: BigNat,
    pub q_hi: BigNat,
}

impl fmt::Display for SearchIntervals {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "p ∈ [{}, {}], q ∈ [{}, {}]",
            self.p_lo, self.p_hi, self.q_lo, self.q_hi
        )
    }
}

/// Scales the coefficient ranges by `κ`: `p_lo = ⌈a_lo·κ⌉` (at least 2),
/// `p_hi = ⌊a_hi·κ⌋`, `q_lo = ⌈b_lo·κ⌉`, `q_hi = ⌊b_hi·κ⌋`.
pub fn build_intervals(kappa: &BigNat, cfg: &SweepConfig) -> Result<SearchIntervals, SweepError> {
    cfg.validate()?;
    let two = BigNat::from(2u64);
    let p_lo = cfg.a_lo.mul_ceil(kappa).max(two);
    let p_hi = cfg.a_hi.mul_floor(kappa);
    let q_lo = cfg.b_lo.mul_ceil(kappa);
    let q_hi = cfg.b_hi.mul_floor(kappa);
    if p_lo > p_hi {
        return Err(SweepError::EmptyInterval { lo: p_lo, hi: p_hi });
    }
    if q_lo > q_hi {
        return Err(SweepError::EmptyInterval { lo: q_lo, hi: q_hi });
    }
    Ok(SearchIntervals {
        p_lo,
        p_hi,
        q_lo,
        q_hi,
    })
}
