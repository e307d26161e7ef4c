//! The common-factor search.
//!
//! For `N = p·q` with `p ≤ κ = ⌊√N⌋ < q`, the quotients `κ/p` and `q/κ`
//! nearly coincide: `q/κ − κ/p = (N − κ²)/(p·κ) ≤ 2/p`. Plotting `κ/x` over
//! primes below `κ` and `x/κ` over primes above it gives two curves that
//! meet at the factor pair. [`dual_sweep`] walks both curves toward that
//! meeting point and confirms it by exact division.

mod config;
mod lines;
mod walk;

pub use config::{build_intervals, SearchIntervals, SweepConfig, DEFAULT_PRECISION};
pub use lines::{f_line_p, f_line_q, f_on_line, sample_lines, Line, LinePoint};

use thiserror::Error;

use crate::numeric::{digit_agreement, isqrt, BigNat, FixedDec};
use crate::primes::{is_prime, SMALL_PRIMES};
use walk::{walk, BigLane, Counters, Lane, Visit, WalkParams, WordLane};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SweepError {
    #[error("input {0} is below 4")]
    TooSmall(BigNat),
    #[error("invalid configuration: {0}")]
    InvalidConfig(String),
    #[error("empty search interval [{lo}, {hi}]")]
    EmptyInterval { lo: BigNat, hi: BigNat },
    #[error("no factor pair with {0}; the input may be unbalanced (try extending the intervals)")]
    IntervalExhausted(SearchIntervals),
    #[error("candidate budget of {0} exceeded")]
    CandidateBudgetExceeded(u64),
    #[error("{0} has no nontrivial factorization")]
    NotComposite(BigNat),
    #[error("self-check failed: {p} · {q} ≠ {n}")]
    SelfCheck { n: BigNat, p: BigNat, q: BigNat },
}

/// A confirmed factor pair with both line values at the pair.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FactorResult {
    pub n: BigNat,
    pub kappa: BigNat,
    /// Largest divisor of `N` not above `κ`.
    pub p: BigNat,
    pub q: BigNat,
    /// `κ/p`.
    pub f1: FixedDec,
    /// `q/κ`.
    pub f2: FixedDec,
    /// Shared leading digits of `f1` and `f2`; diagnostic only.
    pub agreement: usize,
    pub candidates_tested: u64,
    pub sweep_steps: u64,
    /// Interval widenings used (0 without `extend_intervals`).
    pub extensions: u32,
}

impl FactorResult {
    /// `f2 − f1`, never negative since `p·q = N ≥ κ²`.
    pub fn gap(&self) -> FixedDec {
        self.f2
            .checked_sub(&self.f1)
            .expect("q/κ ≥ κ/p whenever p·q ≥ κ²")
    }
}

/// A sweep together with every coordinate the two cursors visited.
#[derive(Debug, Clone)]
pub struct SweepTrace {
    pub result: FactorResult,
    pub points: Vec<LinePoint>,
}

pub fn dual_sweep(n: &BigNat, cfg: &SweepConfig) -> Result<FactorResult, SweepError> {
    run(n, cfg, None)
}

/// [`dual_sweep`], also returning the visited coordinates of the final
/// round in visit order.
pub fn dual_sweep_traced(n: &BigNat, cfg: &SweepConfig) -> Result<SweepTrace, SweepError> {
    let mut visits = Vec::new();
    let result = run(n, cfg, Some(&mut visits))?;
    let points = visits
        .into_iter()
        .map(|v| LinePoint {
            line: v.line,
            f: f_on_line(v.line, &v.x, &result.kappa, cfg.precision),
            x: v.x,
            step: Some(v.step),
        })
        .collect();
    Ok(SweepTrace { result, points })
}

fn run(n: &BigNat, cfg: &SweepConfig, trace: Option<&mut Vec<Visit>>) -> Result<FactorResult, SweepError> {
    if *n < BigNat::from(4u64) {
        return Err(SweepError::TooSmall(n.clone()));
    }
    cfg.validate()?;
    let root = isqrt(n);
    let kappa = root.kappa;
    let mut counters = Counters::default();

    let (split, extensions) = if root.exact {
        ((kappa.clone(), kappa.clone()), 0)
    } else {
        search(n, &kappa, cfg, &mut counters, trace)?
    };
    let (p, q) = canonical_pair(n, &kappa, split)?;
    if &p * &q != *n {
        return Err(SweepError::SelfCheck { n: n.clone(), p, q });
    }

    let f1 = f_line_p(&p, &kappa, cfg.precision);
    let f2 = f_line_q(&q, &kappa, cfg.precision);
    let agreement = digit_agreement(&f1, &f2).expect("same precision");
    Ok(FactorResult {
        n: n.clone(),
        kappa,
        p,
        q,
        f1,
        f2,
        agreement,
        candidates_tested: counters.candidates,
        sweep_steps: counters.steps,
        extensions,
    })
}

/// Finds some nontrivial split of a non-square `N`: small-prime pre-pass,
/// then the walk, widening the intervals round by round when allowed.
fn search(
    n: &BigNat,
    kappa: &BigNat,
    cfg: &SweepConfig,
    counters: &mut Counters,
    mut trace: Option<&mut Vec<Visit>>,
) -> Result<((BigNat, BigNat), u32), SweepError> {
    let base = build_intervals(kappa, cfg)?;

    for &r in &SMALL_PRIMES {
        counters.candidates += 1;
        let r = BigNat::from(r);
        if r >= *n {
            break;
        }
        let (cof, rem) = n.div_rem(&r);
        if rem.is_zero() && (cfg.extend_intervals || cof <= base.q_hi) {
            return Ok(((r, cof), 0));
        }
    }

    let word = n.to_u128().map(|n| WordLane { n });
    let big = BigLane { n: n.clone() };
    let half = n / 2u64;
    let mut round = 0u32;
    loop {
        let mut iv = if round == 0 {
            base.clone()
        } else {
            build_intervals(kappa, &cfg.widened(round))?
        };
        if cfg.extend_intervals {
            // no cofactor exceeds N/2
            iv.q_hi = iv.q_hi.min(half.clone());
        }
        let params = WalkParams {
            intervals: &iv,
            cofactor_cap: (!cfg.extend_intervals).then_some(&iv.q_hi),
            // with an unbounded cofactor the p-cursor alone covers its range
            stop_with_p: cfg.extend_intervals,
            budget: cfg.max_candidates,
        };
        if let Some(t) = trace.as_deref_mut() {
            t.clear();
        }
        let hit = match &word {
            Some(lane) if iv.q_hi.to_u64().is_some() => to_nat_pair(lane, walk(lane, &params, counters, trace.as_deref_mut())?),
            _ => to_nat_pair(&big, walk(&big, &params, counters, trace.as_deref_mut())?),
        };
        if let Some(pair) = hit {
            return Ok((pair, round));
        }
        if !cfg.extend_intervals {
            return Err(SweepError::IntervalExhausted(iv));
        }
        if iv.p_lo <= BigNat::from(2u64) {
            // every prime up to κ was tried
            return Err(SweepError::NotComposite(n.clone()));
        }
        round += 1;
    }
}

fn to_nat_pair<L: Lane>(lane: &L, hit: Option<(L::Int, L::Int)>) -> Option<(BigNat, BigNat)> {
    hit.map(|(a, b)| (lane.to_nat(&a), lane.to_nat(&b)))
}

/// Rewrites any split of `N` into the pair whose smaller member is the
/// largest divisor `≤ κ`. Two prime halves are already canonical.
fn canonical_pair(n: &BigNat, kappa: &BigNat, (a, b): (BigNat, BigNat)) -> Result<(BigNat, BigNat), SweepError> {
    let (a, b) = if a <= b { (a, b) } else { (b, a) };
    if a == b || (is_prime(&a) && is_prime(&b)) {
        return Ok((a, b));
    }
    let mut primes = factorize(&a)?;
    primes.extend(factorize(&b)?);
    primes.sort();
    let d = largest_divisor_at_most(&group(&primes), kappa);
    let q = n / &d;
    Ok((d, q))
}

fn group(sorted: &[BigNat]) -> Vec<(BigNat, u32)> {
    let mut out: Vec<(BigNat, u32)> = Vec::new();
    for p in sorted {
        match out.last_mut() {
            Some((last, e)) if last == p => *e += 1,
            _ => out.push((p.clone(), 1)),
        }
    }
    out
}

fn largest_divisor_at_most(powers: &[(BigNat, u32)], bound: &BigNat) -> BigNat {
    fn go(powers: &[(BigNat, u32)], acc: BigNat, bound: &BigNat, best: &mut BigNat) {
        let Some(((p, e), rest)) = powers.split_first() else {
            if acc > *best {
                *best = acc;
            }
            return;
        };
        let mut cur = acc;
        for i in 0..=*e {
            if i > 0 {
                cur = &cur * p;
                if cur > *bound {
                    break;
                }
            }
            go(rest, cur.clone(), bound, best);
        }
    }
    let mut best = BigNat::one();
    go(powers, BigNat::one(), bound, &mut best);
    best
}

/// Prime factors of `n` in ascending order, with multiplicity. Composite
/// parts are split by the extended sweep.
pub fn factorize(n: &BigNat) -> Result<Vec<BigNat>, SweepError> {
    let mut out = Vec::new();
    let mut rest = n.clone();
    if rest.is_zero() {
        return Err(SweepError::TooSmall(rest));
    }
    for &r in &SMALL_PRIMES {
        let r = BigNat::from(r);
        loop {
            let (q, rem) = rest.div_rem(&r);
            if !rem.is_zero() {
                break;
            }
            out.push(r.clone());
            rest = q;
        }
    }
    let mut stack = vec![rest];
    let cfg = SweepConfig::extended();
    while let Some(m) = stack.pop() {
        if m <= BigNat::one() {
            continue;
        }
        if is_prime(&m) {
            out.push(m);
            continue;
        }
        let root = isqrt(&m);
        if root.exact {
            stack.push(root.kappa.clone());
            stack.push(root.kappa);
            continue;
        }
        let ((a, b), _) = search(&m, &root.kappa, &cfg, &mut Counters::default(), None)?;
        stack.push(a);
        stack.push(b);
    }
    out.sort();
    Ok(out)
}
