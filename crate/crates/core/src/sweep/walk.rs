//! The two-cursor walk over one pair of search intervals.
//!
//! The p-cursor descends through the primes of `[p_lo, p_hi]` while the
//! q-cursor ascends through `[q_lo, q_hi]`. Comparing `p·q` with `N` decides
//! which cursor moves: a product above `N` lowers `p`, one below raises `q`.
//! If `N = p*·q*` with both coordinates in range, the walk never steps past
//! either of them (`p ≥ p*` and `q ≤ q*` are preserved), so it meets the pair.
//! Every newly visited coordinate is also tested for divisibility.

use std::cmp::Ordering;

use super::config::SearchIntervals;
use super::lines::Line;
use super::SweepError;
use crate::numeric::BigNat;
use crate::primes::{Direction, PrimeCursor, WordPrimes};

/// Arithmetic backing one walk: machine words when `N` fits in 128 bits and
/// the coordinates in 64, arbitrary precision otherwise.
pub(crate) trait Lane {
    type Int: Clone;
    type Cursor: Iterator<Item = Self::Int>;

    fn cursor(&self, lo: &BigNat, hi: &BigNat, direction: Direction) -> Self::Cursor;
    fn product_cmp(&self, p: &Self::Int, q: &Self::Int) -> Ordering;
    /// `N / d` when `d` divides `N` and `1 < d < N`.
    fn cofactor(&self, d: &Self::Int) -> Option<Self::Int>;
    fn within(&self, x: &Self::Int, cap: &BigNat) -> bool;
    fn to_nat(&self, x: &Self::Int) -> BigNat;
}

pub(crate) struct WordLane {
    pub n: u128,
}

impl Lane for WordLane {
    type Int = u128;
    type Cursor = std::iter::Map<WordPrimes, fn(u64) -> u128>;

    /// Both bounds must fit in 64 bits.
    fn cursor(&self, lo: &BigNat, hi: &BigNat, direction: Direction) -> Self::Cursor {
        let widen: fn(u64) -> u128 = u128::from;
        let cap = u64::try_from(self.n).unwrap_or(u64::MAX);
        match (lo.to_u64(), hi.to_u64()) {
            (Some(lo), Some(hi)) => WordPrimes::new(lo, hi.min(cap), direction).map(widen),
            _ => WordPrimes::new(1, 0, direction).map(widen),
        }
    }

    fn product_cmp(&self, p: &u128, q: &u128) -> Ordering {
        p.checked_mul(*q).map_or(Ordering::Greater, |pq| pq.cmp(&self.n))
    }

    fn cofactor(&self, d: &u128) -> Option<u128> {
        (*d > 1 && *d < self.n && self.n % d == 0).then(|| self.n / d)
    }

    fn within(&self, x: &u128, cap: &BigNat) -> bool {
        cap.to_u128().map_or(true, |c| *x <= c)
    }

    fn to_nat(&self, x: &u128) -> BigNat {
        BigNat::from(*x)
    }
}

pub(crate) struct BigLane {
    pub n: BigNat,
}

impl Lane for BigLane {
    type Int = BigNat;
    type Cursor = PrimeCursor;

    fn cursor(&self, lo: &BigNat, hi: &BigNat, direction: Direction) -> PrimeCursor {
        PrimeCursor::new(lo.clone(), hi.clone().min(self.n.clone()), direction)
    }

    fn product_cmp(&self, p: &BigNat, q: &BigNat) -> Ordering {
        (p * q).cmp(&self.n)
    }

    fn cofactor(&self, d: &BigNat) -> Option<BigNat> {
        if *d <= BigNat::one() || *d >= self.n {
            return None;
        }
        let (q, r) = self.n.div_rem(d);
        r.is_zero().then_some(q)
    }

    fn within(&self, x: &BigNat, cap: &BigNat) -> bool {
        x <= cap
    }

    fn to_nat(&self, x: &BigNat) -> BigNat {
        x.clone()
    }
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub(crate) struct Counters {
    pub candidates: u64,
    pub steps: u64,
}

/// One visited coordinate, for plotting the walk.
#[derive(Debug, Clone, PartialEq, Eq)]
pub(crate) struct Visit {
    pub line: Line,
    pub x: BigNat,
    pub step: u64,
}

pub(crate) struct WalkParams<'a> {
    pub intervals: &'a SearchIntervals,
    /// Largest cofactor a p-coordinate hit may have; `None` is unbounded.
    pub cofactor_cap: Option<&'a BigNat>,
    /// Stop once the p-range is spent instead of finishing the q-range.
    pub stop_with_p: bool,
    pub budget: Option<u64>,
}

struct Walker<'a, L: Lane> {
    lane: &'a L,
    params: &'a WalkParams<'a>,
    counters: &'a mut Counters,
    trace: Option<&'a mut Vec<Visit>>,
}

/// `(smaller, larger)` split of `N`.
type Split<I> = (I, I);

impl<L: Lane> Walker<'_, L> {
    fn charge(&mut self, line: Line, x: &L::Int) -> Result<(), SweepError> {
        self.counters.candidates += 1;
        if let Some(limit) = self.params.budget {
            if self.counters.candidates > limit {
                return Err(SweepError::CandidateBudgetExceeded(limit));
            }
        }
        if let Some(trace) = self.trace.as_deref_mut() {
            trace.push(Visit {
                line,
                x: self.lane.to_nat(x),
                step: self.counters.steps,
            });
        }
        Ok(())
    }

    fn visit_p(&mut self, p: &L::Int) -> Result<Option<Split<L::Int>>, SweepError> {
        self.charge(Line::P, p)?;
        Ok(self.lane.cofactor(p).and_then(|c| {
            let admissible = self
                .params
                .cofactor_cap
                .map_or(true, |cap| self.lane.within(&c, cap));
            admissible.then(|| (p.clone(), c))
        }))
    }

    fn visit_q(&mut self, q: &L::Int) -> Result<Option<Split<L::Int>>, SweepError> {
        self.charge(Line::Q, q)?;
        Ok(self.lane.cofactor(q).map(|c| (c, q.clone())))
    }
}

pub(crate) fn walk<L: Lane>(
    lane: &L,
    params: &WalkParams<'_>,
    counters: &mut Counters,
    trace: Option<&mut Vec<Visit>>,
) -> Result<Option<Split<L::Int>>, SweepError> {
    let iv = params.intervals;
    let mut p_cursor = lane.cursor(&iv.p_lo, &iv.p_hi, Direction::Descending);
    let mut q_cursor = lane.cursor(&iv.q_lo, &iv.q_hi, Direction::Ascending);
    let mut w = Walker {
        lane,
        params,
        counters,
        trace,
    };

    let mut p = p_cursor.next();
    if let Some(x) = &p {
        if let Some(hit) = w.visit_p(x)? {
            return Ok(Some(hit));
        }
    }
    let mut q = q_cursor.next();
    if let Some(x) = &q {
        if let Some(hit) = w.visit_q(x)? {
            return Ok(Some(hit));
        }
    }

    loop {
        w.counters.steps += 1;
        let move_p = match (&p, &q) {
            (Some(a), Some(b)) => match lane.product_cmp(a, b) {
                Ordering::Equal => return Ok(Some((a.clone(), b.clone()))),
                Ordering::Greater => true,
                Ordering::Less => false,
            },
            (Some(_), None) => true,
            (None, Some(_)) if !params.stop_with_p => false,
            _ => return Ok(None),
        };
        if move_p {
            p = p_cursor.next();
            if let Some(x) = &p {
                if let Some(hit) = w.visit_p(x)? {
                    return Ok(Some(hit));
                }
            }
        } else {
            q = q_cursor.next();
            if let Some(x) = &q {
                if let Some(hit) = w.visit_q(x)? {
                    return Ok(Some(hit));
                }
            }
        }
    }
}
