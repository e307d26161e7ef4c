//! Timing harness: the sweep against the classical baselines on seeded
//! random semiprimes.

use std::io::{self, Write};
use std::time::Instant;

use kappa_sweep::baselines::BaselineMethod;
use kappa_sweep::primes::PrimeError;
use kappa_sweep::{dual_sweep, random_semiprime, BigNat, SweepConfig};
use thiserror::Error;

#[derive(Debug, Error)]
pub enum BenchError {
    #[error("trials must be at least 1")]
    NoTrials,
    #[error("no bit sizes given")]
    NoSizes,
    #[error(transparent)]
    Generation(#[from] PrimeError),
    #[error(transparent)]
    Csv(#[from] csv::Error),
    #[error(transparent)]
    Io(#[from] io::Error),
}

/// One method on one input.
#[derive(Debug, Clone, PartialEq)]
pub struct BenchRecord {
    pub method: &'static str,
    pub n_bits: u32,
    pub trial: u32,
    pub wall_s: f64,
    /// Sweep: candidates tested. Baselines: their own operation counts.
    pub work: u64,
    /// The reported pair was nontrivial and multiplied back to `N`.
    pub success: bool,
}

#[derive(Debug, Clone)]
pub struct BenchOptions {
    pub sizes: Vec<u32>,
    pub trials: u32,
    pub seed: u64,
    /// Upper bound on `q/p` for the generated inputs.
    pub balance: f64,
    pub sweep: SweepConfig,
}

impl Default for BenchOptions {
    fn default() -> Self {
        BenchOptions {
            sizes: vec![32, 48, 64],
            trials: 5,
            seed: 1,
            balance: 2.0,
            sweep: SweepConfig::default(),
        }
    }
}

/// Per-input seed; distinct for every (size, trial) under one base seed.
pub fn trial_seed(seed: u64, bits: u32, trial: u32) -> u64 {
    seed ^ ((bits as u64) << 40) ^ ((trial as u64) << 20) ^ 0x9e37_79b9
}

fn verified(n: &BigNat, p: &BigNat, q: &BigNat) -> bool {
    *p > BigNat::one() && *q > BigNat::one() && &(p * q) == n
}

/// Runs every method on every input, writes the CSV table to `sink` and
/// returns the records.
pub fn bench(opts: &BenchOptions, sink: &mut dyn Write) -> Result<Vec<BenchRecord>, BenchError> {
    if opts.trials == 0 {
        return Err(BenchError::NoTrials);
    }
    if opts.sizes.is_empty() {
        return Err(BenchError::NoSizes);
    }
    let mut w = csv::Writer::from_writer(sink);
    w.write_record(["method", "n_bits", "trial", "wall_s", "work", "success"])?;
    let mut records = Vec::new();
    for &bits in &opts.sizes {
        for trial in 0..opts.trials {
            let seed = trial_seed(opts.seed, bits, trial);
            let n = random_semiprime(bits, opts.balance, seed)?.n;

            let start = Instant::now();
            let outcome = dual_sweep(&n, &opts.sweep);
            let wall_s = start.elapsed().as_secs_f64();
            let (work, success) = match outcome {
                Ok(r) => (r.candidates_tested, verified(&n, &r.p, &r.q)),
                Err(_) => (0, false),
            };
            records.push(BenchRecord { method: "sweep", n_bits: bits, trial, wall_s, work, success });

            for m in BaselineMethod::ALL {
                let start = Instant::now();
                let outcome = m.factor(&n, seed);
                let wall_s = start.elapsed().as_secs_f64();
                let (work, success) = match outcome {
                    Ok(f) => (f.work, verified(&n, &f.p, &f.q)),
                    Err(_) => (0, false),
                };
                records.push(BenchRecord { method: m.name(), n_bits: bits, trial, wall_s, work, success });
            }
            for r in &records[records.len() - 4..] {
                w.write_record([
                    r.method.to_string(),
                    r.n_bits.to_string(),
                    r.trial.to_string(),
                    format!("{:.6}", r.wall_s),
                    r.work.to_string(),
                    r.success.to_string(),
                ])?;
            }
            w.flush()?;
        }
    }
    Ok(records)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn opts(sizes: Vec<u32>, trials: u32) -> BenchOptions {
        BenchOptions { sizes, trials, ..BenchOptions::default() }
    }

    #[test]
    fn one_trial_gives_four_records() {
        let mut out = Vec::new();
        let recs = bench(&opts(vec![32], 1), &mut out).unwrap();
        assert_eq!(recs.len(), 4);
        assert!(recs.iter().all(|r| r.success));
        let names: Vec<_> = recs.iter().map(|r| r.method).collect();
        assert_eq!(names, ["sweep", "trial", "fermat", "rho"]);
        let text = String::from_utf8(out).unwrap();
        assert_eq!(text.lines().next(), Some("method,n_bits,trial,wall_s,work,success"));
        assert_eq!(text.lines().count(), 5);
    }

    #[test]
    fn zero_trials_rejected() {
        assert!(matches!(bench(&opts(vec![32], 0), &mut Vec::new()), Err(BenchError::NoTrials)));
        assert!(matches!(bench(&opts(vec![], 1), &mut Vec::new()), Err(BenchError::NoSizes)));
    }

    #[test]
    fn work_counts_repeat() {
        let work = || -> Vec<u64> {
            bench(&opts(vec![24, 32], 2), &mut Vec::new())
                .unwrap()
                .into_iter()
                .map(|r| r.work)
                .collect()
        };
        assert_eq!(work(), work());
    }
}
