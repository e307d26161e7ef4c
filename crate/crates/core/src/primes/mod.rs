//! Primality testing and prime enumeration for the candidate coordinates.

mod miller_rabin;
mod semiprime;
mod sieve;

pub use miller_rabin::is_prime_u64;
pub use semiprime::{random_semiprime, Semiprime};
pub use sieve::{primes_up_to, WordPrimes};

pub(crate) use miller_rabin::{mul_mod, SMALL_PRIMES};

use thiserror::Error;

use crate::numeric::BigNat;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PrimeError {
    #[error("no prime below {0}")]
    Exhausted(BigNat),
    #[error("invalid argument: {0}")]
    InvalidArgument(String),
    #[error("no semiprime found after {attempts} attempts")]
    GenerationFailure { attempts: u32 },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Direction {
    Ascending,
    Descending,
}

/// Outcome of a primality test. Values below 2^64 are decided exactly;
/// larger values can only be probable primes.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Primality {
    Composite,
    Prime,
    ProbablePrime,
}

impl Primality {
    pub fn is_prime_like(self) -> bool {
        self != Primality::Composite
    }

    pub fn label(self) -> &'static str {
        match self {
            Primality::Composite => "composite",
            Primality::Prime => "prime",
            Primality::ProbablePrime => "probable prime",
        }
    }
}

pub fn primality(n: &BigNat) -> Primality {
    match n.to_u64() {
        Some(v) if is_prime_u64(v) => Primality::Prime,
        Some(_) => Primality::Composite,
        None if miller_rabin::is_probable_prime_big(n) => Primality::ProbablePrime,
        None => Primality::Composite,
    }
}

pub fn is_prime(n: &BigNat) -> bool {
    primality(n).is_prime_like()
}

/// Steps from `n` in the given direction over the 6k±1 wheel until a prime
/// is found or the walk would pass 2.
fn wheel_search(n: &BigNat, direction: Direction) -> Option<BigNat> {
    let six = BigNat::from(6u64);
    let mut c = match direction {
        Direction::Ascending => n + 1u64,
        Direction::Descending => n.checked_sub(&BigNat::one())?,
    };
    if c <= BigNat::from(3u64) {
        // only reachable descending from tiny n; handled by the u64 path
        return None;
    }
    // align c to the nearest wheel position not past it
    loop {
        let r = (&c % &six).to_u64().unwrap_or(0);
        if r == 1 || r == 5 {
            break;
        }
        c = match direction {
            Direction::Ascending => c + 1u64,
            Direction::Descending => c - 1u64,
        };
    }
    loop {
        if is_prime(&c) {
            return Some(c);
        }
        let r = (&c % &six).to_u64().unwrap_or(0);
        c = match (direction, r) {
            (Direction::Ascending, 1) => c + 4u64,
            (Direction::Ascending, _) => c + 2u64,
            (Direction::Descending, 5) => c - 4u64,
            (Direction::Descending, _) => c - 2u64,
        };
    }
}

pub(crate) fn next_prime_u64(n: u64) -> Option<u64> {
    if n < 2 {
        return Some(2);
    }
    let mut c = n.checked_add(1)?;
    if c == 3 {
        return Some(3);
    }
    // to 6k±1
    while c % 6 != 1 && c % 6 != 5 {
        c = c.checked_add(1)?;
    }
    loop {
        if is_prime_u64(c) {
            return Some(c);
        }
        c = c.checked_add(if c % 6 == 1 { 4 } else { 2 })?;
    }
}

pub(crate) fn prev_prime_u64(n: u64) -> Option<u64> {
    match n {
        0..=2 => return None,
        3 => return Some(2),
        4 | 5 => return Some(3),
        _ => {}
    }
    let mut c = n - 1;
    while c % 6 != 1 && c % 6 != 5 {
        c -= 1;
    }
    loop {
        if is_prime_u64(c) {
            return Some(c);
        }
        if c <= 5 {
            return Some(3);
        }
        c -= if c % 6 == 5 { 4 } else { 2 };
    }
}

/// Smallest prime strictly greater than `n`.
pub fn next_prime(n: &BigNat) -> BigNat {
    if let Some(p) = n.to_u64().and_then(next_prime_u64) {
        return BigNat::from(p);
    }
    wheel_search(n, Direction::Ascending).expect("primes are unbounded")
}

/// Largest prime strictly less than `n`.
pub fn prev_prime(n: &BigNat) -> Result<BigNat, PrimeError> {
    if let Some(v) = n.to_u64() {
        return prev_prime_u64(v)
            .map(BigNat::from)
            .ok_or_else(|| PrimeError::Exhausted(n.clone()));
    }
    wheel_search(n, Direction::Descending).ok_or_else(|| PrimeError::Exhausted(n.clone()))
}

/// Walks the primes of `[lower, upper]` in one direction, yielding each
/// exactly once. Single-owner state; distinct cursors are independent.
#[derive(Debug, Clone)]
pub struct PrimeCursor {
    direction: Direction,
    lower: BigNat,
    upper: BigNat,
    current: Option<BigNat>,
    exhausted: bool,
    word: Option<WordPrimes>,
}

impl PrimeCursor {
    pub fn new(lower: BigNat, upper: BigNat, direction: Direction) -> Self {
        let word = upper.to_u64().map(|hi| {
            let lo = lower.to_u64().unwrap_or(hi);
            WordPrimes::new(lo, hi, direction)
        });
        let exhausted = lower > upper;
        PrimeCursor {
            direction,
            lower,
            upper,
            current: None,
            exhausted,
            word,
        }
    }

    pub fn direction(&self) -> Direction {
        self.direction
    }

    pub fn lower_bound(&self) -> &BigNat {
        &self.lower
    }

    pub fn upper_bound(&self) -> &BigNat {
        &self.upper
    }

    /// The most recently yielded prime.
    pub fn current(&self) -> Option<&BigNat> {
        self.current.as_ref()
    }

    pub fn is_exhausted(&self) -> bool {
        self.exhausted
    }

    fn advance_big(&self) -> Option<BigNat> {
        let candidate = match (&self.current, self.direction) {
            (None, Direction::Ascending) => {
                if is_prime(&self.lower) {
                    self.lower.clone()
                } else {
                    next_prime(&self.lower)
                }
            }
            (None, Direction::Descending) => {
                if is_prime(&self.upper) {
                    self.upper.clone()
                } else {
                    prev_prime(&self.upper).ok()?
                }
            }
            (Some(c), Direction::Ascending) => next_prime(c),
            (Some(c), Direction::Descending) => prev_prime(c).ok()?,
        };
        (candidate >= self.lower && candidate <= self.upper).then_some(candidate)
    }
}

impl Iterator for PrimeCursor {
    type Item = BigNat;

    fn next(&mut self) -> Option<BigNat> {
        if self.exhausted {
            return None;
        }
        let next = match self.word.as_mut() {
            Some(w) => w.next().map(BigNat::from),
            None => self.advance_big(),
        };
        match &next {
            Some(p) => self.current = Some(p.clone()),
            None => self.exhausted = true,
        }
        next
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn nat(v: u64) -> BigNat {
        BigNat::from(v)
    }

    #[test]
    fn primality_examples() {
        assert!(is_prime(&nat(2)));
        assert!(!is_prime(&nat(1)));
        assert!(!is_prime(&nat(0)));
        assert_eq!(primality(&nat(47809)), Primality::Prime);
        let big = BigNat::from((1u128 << 89) - 1);
        assert_eq!(primality(&big), Primality::ProbablePrime);
    }

    #[test]
    fn trial_division_oracle_for_47809() {
        // ⌊√47809⌋ = 218; no divisor in 2..=218
        assert!((2..=218u64).all(|d| 47809 % d != 0));
        assert!(is_prime(&nat(47809)));
    }

    #[test]
    fn prev_prime_examples() {
        assert_eq!(prev_prime(&nat(10)), Ok(nat(7)));
        assert_eq!(prev_prime(&nat(3)), Ok(nat(2)));
        assert_eq!(prev_prime(&nat(2)), Err(PrimeError::Exhausted(nat(2))));
        assert!(prev_prime(&nat(0)).is_err());
        assert_eq!(prev_prime(&nat(6)), Ok(nat(5)));
        assert_eq!(prev_prime(&nat(8)), Ok(nat(7)));
    }

    #[test]
    fn next_prime_examples() {
        assert_eq!(next_prime(&nat(0)), nat(2));
        assert_eq!(next_prime(&nat(1)), nat(2));
        assert_eq!(next_prime(&nat(2)), nat(3));
        assert_eq!(next_prime(&nat(3)), nat(5));
        assert_eq!(next_prime(&nat(7)), nat(11));
        // sieve oracle over [61238, 61400]
        let oracle = primes_up_to(61400)
            .into_iter()
            .find(|&p| p > 61237)
            .unwrap();
        assert_eq!(next_prime(&nat(61237)), nat(oracle));
        assert_eq!(next_prime(&nat(u64::MAX)), BigNat::from(u64::MAX as u128 + 14));
    }

    #[test]
    fn wheel_search_above_u64() {
        let base = BigNat::from(1u128 << 70);
        let up = next_prime(&base);
        let down = prev_prime(&up).unwrap();
        assert!(down < base);
        assert!(is_prime(&up) && is_prime(&down));
        let mut c = &down + 1u64;
        while c < up {
            assert!(!is_prime(&c));
            c = c + 1u64;
        }
    }

    #[test]
    fn cursor_stays_in_bounds() {
        let up: Vec<u64> = PrimeCursor::new(nat(14), nat(30), Direction::Ascending)
            .map(|p| p.to_u64().unwrap())
            .collect();
        assert_eq!(up, vec![17, 19, 23, 29]);
        let mut c = PrimeCursor::new(nat(14), nat(30), Direction::Descending);
        assert_eq!(c.next(), Some(nat(29)));
        assert_eq!(c.current(), Some(&nat(29)));
        assert_eq!(c.by_ref().count(), 3);
        assert!(c.is_exhausted());
        assert_eq!(c.next(), None);
    }

    #[test]
    fn cursor_big_range() {
        let lo = BigNat::from(1u128 << 70);
        let hi = &lo + 400u64;
        let asc: Vec<BigNat> = PrimeCursor::new(lo.clone(), hi.clone(), Direction::Ascending).collect();
        let mut desc: Vec<BigNat> = PrimeCursor::new(lo, hi, Direction::Descending).collect();
        desc.reverse();
        assert!(!asc.is_empty());
        assert_eq!(asc, desc);
        assert!(asc.windows(2).all(|w| w[0] < w[1]));
    }
}
