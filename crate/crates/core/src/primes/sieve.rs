use std::sync::OnceLock;

use super::{is_prime_u64, Direction};

/// Ranges whose upper end is at most this are enumerated by a segmented
/// sieve; above it the cursor steps with Miller-Rabin instead.
pub(crate) const SIEVE_LIMIT: u64 = 1 << 40;

const BASE_LIMIT: u64 = 1 << 20;
const MIN_SEGMENT: u64 = 1 << 12;
const MAX_SEGMENT: u64 = 1 << 18;

/// All primes `≤ limit` by a plain sieve of Eratosthenes.
pub fn primes_up_to(limit: u64) -> Vec<u64> {
    if limit < 2 {
        return Vec::new();
    }
    let n = limit as usize;
    let mut composite = vec![false; n + 1];
    let mut out = Vec::new();
    for i in 2..=n {
        if composite[i] {
            continue;
        }
        out.push(i as u64);
        let mut j = i * i;
        while j <= n {
            composite[j] = true;
            j += i;
        }
    }
    out
}

fn base_primes() -> &'static [u64] {
    static BASE: OnceLock<Vec<u64>> = OnceLock::new();
    BASE.get_or_init(|| primes_up_to(BASE_LIMIT))
}

/// Odd primes whose multiples are stamped from a precomputed pattern.
const PATTERN_PRIMES: [u64; 6] = [3, 5, 7, 11, 13, 17];
/// Period of the pattern over odd numbers: 3·5·7·11·13·17.
const PATTERN_LEN: usize = 255_255;

/// `pattern[i]` is 1 when `2i+1` has a factor in `PATTERN_PRIMES`, else 0.
fn pattern() -> &'static [u8] {
    static PATTERN: OnceLock<Vec<u8>> = OnceLock::new();
    PATTERN.get_or_init(|| {
        let mut marks = vec![0u8; PATTERN_LEN];
        for p in PATTERN_PRIMES {
            for m in marks.iter_mut().skip((p as usize - 1) / 2).step_by(p as usize) {
                *m = 1;
            }
        }
        marks
    })
}

/// Primes in `[lo, hi]`, ascending. Requires `hi ≤ SIEVE_LIMIT`.
fn sieve_segment(lo: u64, hi: u64, out: &mut Vec<u64>) {
    out.clear();
    if lo > hi {
        return;
    }
    if lo <= 2 && 2 <= hi {
        out.push(2);
    }
    let first = if lo <= 3 { 3 } else { lo | 1 };
    if first > hi {
        return;
    }
    let count = ((hi - first) / 2 + 1) as usize;
    let mut composite = Vec::with_capacity(count);
    let pat = pattern();
    let mut at = ((first - 1) / 2) as usize % PATTERN_LEN;
    while composite.len() < count {
        let take = (count - composite.len()).min(PATTERN_LEN - at);
        composite.extend_from_slice(&pat[at..at + take]);
        at = 0;
    }
    // the pattern also marks the pattern primes themselves
    for p in PATTERN_PRIMES {
        if p >= first && p <= hi {
            composite[((p - first) / 2) as usize] = 0;
        }
    }
    for &p in &base_primes()[1 + PATTERN_PRIMES.len()..] {
        if p * p > hi {
            break;
        }
        let mut start = (p * p).max(first.div_ceil(p) * p);
        if start % 2 == 0 {
            start += p;
        }
        let idx = ((start - first) / 2) as usize;
        if idx < count {
            for c in composite[idx..].iter_mut().step_by(p as usize) {
                *c = 1;
            }
        }
    }
    // eight flags per load; a clear low bit in a byte is a prime
    const LOW_BITS: u64 = 0x0101_0101_0101_0101;
    let mut chunks = composite.chunks_exact(8);
    let mut base = first;
    for chunk in chunks.by_ref() {
        let flags = u64::from_le_bytes(chunk.try_into().expect("eight bytes"));
        let mut primes = !flags & LOW_BITS;
        while primes != 0 {
            out.push(base + 2 * (primes.trailing_zeros() / 8) as u64);
            primes &= primes - 1;
        }
        base += 16;
    }
    for (i, &c) in chunks.remainder().iter().enumerate() {
        if c == 0 {
            out.push(base + 2 * i as u64);
        }
    }
}

/// Primes of a `u64` range `[lo, hi]` in ascending or descending order.
///
/// Backed by a segmented sieve whose segments grow geometrically, so short
/// walks stay cheap; falls back to Miller-Rabin stepping for ranges above
/// 2^40.
#[derive(Debug, Clone)]
pub struct WordPrimes {
    lo: u64,
    hi: u64,
    direction: Direction,
    // next unsieved position: ascending = next start, descending = next end
    frontier: Option<u64>,
    segment: u64,
    sieved: bool,
    // pending primes, stored so that `pop` yields in walk order
    pending: Vec<u64>,
}

impl WordPrimes {
    pub fn new(lo: u64, hi: u64, direction: Direction) -> Self {
        let frontier = if lo > hi {
            None
        } else {
            Some(match direction {
                Direction::Ascending => lo,
                Direction::Descending => hi,
            })
        };
        WordPrimes {
            lo,
            hi,
            direction,
            frontier,
            segment: MIN_SEGMENT,
            sieved: hi <= SIEVE_LIMIT,
            pending: Vec::new(),
        }
    }

    pub fn ascending(lo: u64, hi: u64) -> Self {
        Self::new(lo, hi, Direction::Ascending)
    }

    pub fn descending(lo: u64, hi: u64) -> Self {
        Self::new(lo, hi, Direction::Descending)
    }

    fn refill(&mut self) {
        while self.pending.is_empty() {
            let Some(at) = self.frontier else { return };
            let (a, b) = match self.direction {
                Direction::Ascending => {
                    let b = at.saturating_add(self.segment - 1).min(self.hi);
                    self.frontier = if b >= self.hi { None } else { Some(b + 1) };
                    (at, b)
                }
                Direction::Descending => {
                    let a = at.saturating_sub(self.segment - 1).max(self.lo);
                    self.frontier = if a <= self.lo { None } else { Some(a - 1) };
                    (a, at)
                }
            };
            self.segment = (self.segment * 2).min(MAX_SEGMENT);
            sieve_segment(a, b, &mut self.pending);
            if self.direction == Direction::Ascending {
                self.pending.reverse();
            }
        }
    }

    fn step_unsieved(&mut self) -> Option<u64> {
        let mut at = self.frontier?;
        loop {
            let here = at;
            let prime = is_prime_u64(here);
            self.frontier = match self.direction {
                Direction::Ascending if here < self.hi => Some(here + 1),
                Direction::Descending if here > self.lo => Some(here - 1),
                _ => None,
            };
            if prime {
                return Some(here);
            }
            at = self.frontier?;
        }
    }
}

impl Iterator for WordPrimes {
    type Item = u64;

    fn next(&mut self) -> Option<u64> {
        if !self.sieved {
            return self.step_unsieved();
        }
        self.refill();
        self.pending.pop()
    }
}
