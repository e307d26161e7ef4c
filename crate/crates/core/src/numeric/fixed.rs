use std::cmp::Ordering;
use std::fmt;
use std::str::FromStr;

use super::{BigNat, NumericError};

/// Exact scaled decimal: the value `mantissa / 10^scale`.
///
/// Equality and ordering compare values, so `1.0` and `1.00` are equal even
/// though they render differently.
#[derive(Clone, Debug)]
pub struct FixedDec {
    mantissa: BigNat,
    scale: u32,
}

impl FixedDec {
    pub fn new(mantissa: BigNat, scale: u32) -> Self {
        FixedDec { mantissa, scale }
    }

    pub fn from_integer(n: BigNat) -> Self {
        FixedDec::new(n, 0)
    }

    pub fn mantissa(&self) -> &BigNat {
        &self.mantissa
    }

    pub fn scale(&self) -> u32 {
        self.scale
    }

    /// Integer part, i.e. the value truncated toward zero.
    pub fn trunc(&self) -> BigNat {
        &self.mantissa / &BigNat::pow10(self.scale)
    }

    /// `floor(self * n)`, exact.
    pub fn mul_floor(&self, n: &BigNat) -> BigNat {
        &(&self.mantissa * n) / &BigNat::pow10(self.scale)
    }

    /// `ceil(self * n)`, exact.
    pub fn mul_ceil(&self, n: &BigNat) -> BigNat {
        let (q, r) = (&self.mantissa * n).div_rem(&BigNat::pow10(self.scale));
        if r.is_zero() {
            q
        } else {
            q + 1u64
        }
    }

    /// Exact multiplication by a machine integer.
    pub fn mul_u64(&self, k: u64) -> FixedDec {
        FixedDec::new(&self.mantissa * k, self.scale)
    }

    /// Exact division by `2^k`; `x / 2^k = x * 5^k / 10^k`.
    pub fn div_pow2(&self, k: u32) -> FixedDec {
        let five_k = BigNat::from(5u64).pow(k);
        FixedDec::new(&self.mantissa * &five_k, self.scale + k)
    }

    /// Truncates (or zero-extends) to `scale` fraction digits.
    pub fn with_scale(&self, scale: u32) -> FixedDec {
        let mantissa = match scale.cmp(&self.scale) {
            Ordering::Equal => self.mantissa.clone(),
            Ordering::Greater => &self.mantissa * &BigNat::pow10(scale - self.scale),
            Ordering::Less => &self.mantissa / &BigNat::pow10(self.scale - scale),
        };
        FixedDec::new(mantissa, scale)
    }

    /// Exact `self - rhs`, or `None` if the result would be negative.
    pub fn checked_sub(&self, rhs: &FixedDec) -> Option<FixedDec> {
        let scale = self.scale.max(rhs.scale);
        let a = self.with_scale(scale);
        let b = rhs.with_scale(scale);
        a.mantissa
            .checked_sub(&b.mantissa)
            .map(|m| FixedDec::new(m, scale))
    }

    /// Rendered digits with the separator removed.
    pub fn digit_string(&self) -> String {
        self.to_string().replace('.', "")
    }
}

impl PartialEq for FixedDec {
    fn eq(&self, other: &Self) -> bool {
        self.cmp(other) == Ordering::Equal
    }
}

impl Eq for FixedDec {}

impl PartialOrd for FixedDec {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for FixedDec {
    fn cmp(&self, other: &Self) -> Ordering {
        let scale = self.scale.max(other.scale);
        let a = &self.mantissa * &BigNat::pow10(scale - self.scale);
        let b = &other.mantissa * &BigNat::pow10(scale - other.scale);
        a.cmp(&b)
    }
}

impl fmt::Display for FixedDec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let digits = self.mantissa.to_string();
        if self.scale == 0 {
            return f.write_str(&digits);
        }
        let scale = self.scale as usize;
        let padded = format!("{digits:0>width$}", width = scale + 1);
        let (int, frac) = padded.split_at(padded.len() - scale);
        write!(f, "{int}.{frac}")
    }
}

impl FromStr for FixedDec {
    type Err = NumericError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let bad = || NumericError::InvalidDecimal(s.to_string());
        match s.split_once('.') {
            None => Ok(FixedDec::from_integer(s.parse().map_err(|_| bad())?)),
            Some((int, frac)) => {
                if int.is_empty() || frac.is_empty() {
                    return Err(bad());
                }
                let mantissa: BigNat = format!("{int}{frac}").parse().map_err(|_| bad())?;
                let scale = u32::try_from(frac.len()).map_err(|_| bad())?;
                Ok(FixedDec::new(mantissa, scale))
            }
        }
    }
}

/// `num / den` truncated toward zero at `precision` fraction digits:
/// the mantissa is `floor(num * 10^precision / den)`.
pub fn fixed_div(num: &BigNat, den: &BigNat, precision: u32) -> Result<FixedDec, NumericError> {
    if den.is_zero() {
        return Err(NumericError::ZeroDivisor);
    }
    let scaled = num * &BigNat::pow10(precision);
    Ok(FixedDec::new(&scaled / den, precision))
}

/// Length of the common leading run of the two renderings, counting digit
/// characters only. Both values must carry the same scale.
pub fn digit_agreement(a: &FixedDec, b: &FixedDec) -> Result<usize, NumericError> {
    if a.scale() != b.scale() {
        return Err(NumericError::ScaleMismatch {
            left: a.scale(),
            right: b.scale(),
        });
    }
    let (ra, rb) = (a.to_string(), b.to_string());
    Ok(ra
        .bytes()
        .zip(rb.bytes())
        .take_while(|(x, y)| x == y)
        .filter(|(x, _)| x.is_ascii_digit())
        .count())
}
