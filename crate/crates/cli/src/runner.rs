//! Parallel trial execution. Each trial seeds its own generator from
//! `(check seed, trial index)` and results are folded in index order, so the
//! worker count never changes a report.

use noether_core::check::{collect, CheckOutcome, TrialResult};
use noether_core::random::{trial_rng, trial_seed};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

/// Environment variable that fixes the worker count.
pub const WORKERS_ENV: &str = "NOETHER_WORKERS";

/// Installs the global pool from `NOETHER_WORKERS` when it is set.
pub fn init_workers() -> Result<(), String> {
    let Ok(raw) = std::env::var(WORKERS_ENV) else {
        return Ok(());
    };
    let n: usize = raw
        .trim()
        .parse()
        .map_err(|_| format!("{WORKERS_ENV} must be a positive integer, got '{raw}'"))?;
    if n == 0 {
        return Err(format!("{WORKERS_ENV} must be at least 1"));
    }
    rayon::ThreadPoolBuilder::new()
        .num_threads(n)
        .build_global()
        .map_err(|e| e.to_string())
}

/// Per-check seed, so that checks sharing a campaign seed draw different
/// samples. FNV-1a of the name mixed into the campaign seed.
pub fn check_seed(seed: u64, name: &str) -> u64 {
    let h = name.bytes().fold(0xcbf2_9ce4_8422_2325u64, |h, b| {
        (h ^ b as u64).wrapping_mul(0x0100_0000_01b3)
    });
    trial_seed(seed, h)
}

pub fn par_trials<F>(name: &str, seed: u64, trials: u64, tol: f64, f: F) -> CheckOutcome
where
    F: Fn(&mut ChaCha8Rng) -> TrialResult + Sync,
{
    let s = check_seed(seed, name);
    let results: Vec<TrialResult> = (0..trials)
        .into_par_iter()
        .map(|i| f(&mut trial_rng(s, i)))
        .collect();
    collect(name, s, tol, results)
}
