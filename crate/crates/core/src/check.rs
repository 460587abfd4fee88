//! Seeded randomized checks: every trial draws from its own generator, reports
//! a residual and the inputs it used, and the worst failing trial becomes the
//! witness.

use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};
use serde_json::Value;

use crate::random::trial_rng;

/// Reproduction data for a failed check.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Witness {
    pub seed: u64,
    pub trial: u64,
    pub inputs: Vec<Value>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct CheckOutcome {
    pub name: String,
    pub passed: bool,
    pub trials: u64,
    pub max_residual: f64,
    pub tolerance: f64,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness: Option<Witness>,
}

impl CheckOutcome {
    /// Single deterministic comparison.
    pub fn single(
        name: impl Into<String>,
        residual: f64,
        tolerance: f64,
        inputs: Vec<Value>,
    ) -> Self {
        collect(name, 0, tolerance, vec![TrialResult { residual, inputs }])
    }

    /// A boolean fact with no meaningful residual.
    pub fn boolean(name: impl Into<String>, ok: bool, inputs: Vec<Value>) -> Self {
        let residual = if ok { 0.0 } else { 1.0 };
        Self::single(name, residual, 0.5, inputs)
    }
}

#[derive(Clone, Debug)]
pub struct TrialResult {
    pub residual: f64,
    pub inputs: Vec<Value>,
}

impl TrialResult {
    pub fn new<T: Serialize>(residual: f64, inputs: &[T]) -> Self {
        let inputs = inputs
            .iter()
            .map(|v| serde_json::to_value(v).expect("serializable input"))
            .collect();
        TrialResult { residual, inputs }
    }
}

/// Folds per-trial results, given in trial order, into an outcome. A NaN or
/// infinite residual counts as a failure and is reported as `f64::MAX`.
pub fn collect(
    name: impl Into<String>,
    seed: u64,
    tolerance: f64,
    results: Vec<TrialResult>,
) -> CheckOutcome {
    let trials = results.len() as u64;
    let mut max_residual: f64 = 0.0;
    let mut worst: Option<(u64, TrialResult)> = None;
    for (i, r) in results.into_iter().enumerate() {
        let bad = !(r.residual < tolerance);
        let key = if r.residual.is_finite() {
            r.residual
        } else {
            f64::MAX
        };
        max_residual = max_residual.max(key);
        if bad && worst.as_ref().is_none_or(|(_, w)| key > w.residual) {
            worst = Some((
                i as u64,
                TrialResult {
                    residual: key,
                    inputs: r.inputs,
                },
            ));
        }
    }
    CheckOutcome {
        name: name.into(),
        passed: worst.is_none(),
        trials,
        max_residual,
        tolerance,
        witness: worst.map(|(trial, r)| Witness {
            seed,
            trial,
            inputs: r.inputs,
        }),
    }
}

/// Runs `trials` independent trials serially.
pub fn run_trials(
    name: impl Into<String>,
    seed: u64,
    trials: u64,
    tolerance: f64,
    f: impl Fn(&mut ChaCha8Rng) -> TrialResult,
) -> CheckOutcome {
    let results = (0..trials).map(|i| f(&mut trial_rng(seed, i))).collect();
    collect(name, seed, tolerance, results)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn worst_failure_is_witnessed() {
        let results = vec![
            TrialResult::new(0.1, &[1.0]),
            TrialResult::new(5.0, &[2.0]),
            TrialResult::new(3.0, &[3.0]),
        ];
        let out = collect("x", 7, 1.0, results);
        assert!(!out.passed);
        assert_eq!(out.max_residual, 5.0);
        let w = out.witness.unwrap();
        assert_eq!((w.seed, w.trial), (7, 1));
        assert_eq!(w.inputs, vec![serde_json::json!(2.0)]);
    }

    #[test]
    fn nan_fails_and_pass_has_no_witness() {
        let out = collect("x", 0, 1.0, vec![TrialResult::new(f64::NAN, &[0])]);
        assert!(!out.passed && out.max_residual == f64::MAX);
        let ok = run_trials("y", 3, 10, 1.0, |_| TrialResult::new(0.5, &[0]));
        assert!(ok.passed && ok.witness.is_none() && ok.trials == 10);
        let v = serde_json::to_value(&ok).unwrap();
        assert!(v.get("witness").is_none());
    }
}
