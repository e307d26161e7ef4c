use std::fmt;
use std::str::FromStr;

use super::config::{build_intervals, SweepConfig};
use super::SweepError;
use crate::numeric::{fixed_div, isqrt, BigNat, FixedDec};
use crate::primes::{is_prime, next_prime, prev_prime};

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Line {
    /// `f = κ/p` over the lower range.
    P,
    /// `f = q/κ` over the upper range.
    Q,
}

impl Line {
    pub fn name(self) -> &'static str {
        match self {
            Line::P => "p",
            Line::Q => "q",
        }
    }
}

impl fmt::Display for Line {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Line {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "p" | "P" => Ok(Line::P),
            "q" | "Q" => Ok(Line::Q),
            other => Err(format!("unknown line {other:?}, expected p or q")),
        }
    }
}

/// A prime coordinate on one of the two lines and its `f` value.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LinePoint {
    pub line: Line,
    pub x: BigNat,
    pub f: FixedDec,
    /// Walk step at which the coordinate was visited, for traced sweeps.
    pub step: Option<u64>,
}

/// `κ/p` to `precision` fraction digits. Panics if `p` is zero.
pub fn f_line_p(p: &BigNat, kappa: &BigNat, precision: u32) -> FixedDec {
    fixed_div(kappa, p, precision).expect("p must be positive")
}

/// `q/κ` to `precision` fraction digits. Panics if `kappa` is zero.
pub fn f_line_q(q: &BigNat, kappa: &BigNat, precision: u32) -> FixedDec {
    fixed_div(q, kappa, precision).expect("kappa must be positive")
}

pub fn f_on_line(line: Line, x: &BigNat, kappa: &BigNat, precision: u32) -> FixedDec {
    match line {
        Line::P => f_line_p(x, kappa, precision),
        Line::Q => f_line_q(x, kappa, precision),
    }
}

/// Prime nearest to `target` inside `[lo, hi]`, preferring the one above.
fn prime_near(target: &BigNat, lo: &BigNat, hi: &BigNat) -> Option<BigNat> {
    if is_prime(target) {
        return Some(target.clone());
    }
    let up = next_prime(target);
    if &up <= hi {
        return Some(up);
    }
    prev_prime(target).ok().filter(|p| p >= lo)
}

/// `m` prime coordinates per line spread evenly over each search interval,
/// each with its `f` value. Lines come P first, each sorted by `x`; ranges
/// with fewer than `m` primes yield every prime they hold.
pub fn sample_lines(n: &BigNat, cfg: &SweepConfig, m: usize) -> Result<Vec<LinePoint>, SweepError> {
    if m < 2 {
        return Err(SweepError::InvalidConfig(format!("need at least 2 points per line, got {m}")));
    }
    let kappa = isqrt(n).kappa;
    let iv = build_intervals(&kappa, cfg)?;
    let mut out = Vec::with_capacity(2 * m);
    for (line, lo, hi) in [(Line::P, &iv.p_lo, &iv.p_hi), (Line::Q, &iv.q_lo, &iv.q_hi)] {
        let span = hi - lo;
        let mut xs: Vec<BigNat> = (0..m as u64)
            .filter_map(|i| {
                let target = lo + &(&(&span * i) / (m as u64 - 1));
                prime_near(&target, lo, hi)
            })
            .collect();
        xs.sort();
        xs.dedup();
        out.extend(xs.into_iter().map(|x| LinePoint {
            line,
            f: f_on_line(line, &x, &kappa, cfg.precision),
            x,
            step: None,
        }));
    }
    Ok(out)
}
