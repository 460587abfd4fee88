//! Partition functions, Gibbs states and thermal translations over a β grid,
//! relative to the trace state.

use noether_core::check::{CheckOutcome, TrialResult};
use noether_core::jordan::pauli;
use noether_core::random::{random_element, trial_rng};
use noether_core::spectral::{eigenvalues, spectrum};
use noether_core::states::{
    gibbs_state, partition_function, thermal_translate, State, THERMAL_FACTOR_NOTE,
};
use noether_core::{Algebra, JordanElement};
use serde::Serialize;
use serde_json::json;

use crate::config::CampaignConfig;
use crate::report::SuiteOutput;
use crate::runner::check_seed;
use crate::CliResult;

pub const Z_TOL: f64 = 1e-12;
pub const COMPOSITION_TOL: f64 = 1e-9;
pub const GROUND_TOL: f64 = 1e-10;
pub const GROUND_BETA: f64 = 50.0;

/// `diag(0, 1)` on `HermC(2)`, else a seeded random element.
pub fn default_hamiltonian(alg: &Algebra, seed: u64) -> JordanElement {
    if alg == &Algebra::herm_c(2) {
        pauli::diag(0.0, 1.0)
    } else {
        random_element(alg, &mut trial_rng(check_seed(seed, "hamiltonian"), 0))
    }
}

/// `Σ exp(−βλᵢ) / rank` over eigenvalues with multiplicity.
pub fn z_oracle(h: &JordanElement, beta: f64) -> f64 {
    let ev = eigenvalues(h);
    ev.iter().map(|l| (-beta * l).exp()).sum::<f64>() / ev.len() as f64
}

#[derive(Serialize)]
struct Row {
    beta: f64,
    z: f64,
    z_oracle: f64,
}

fn rel(a: f64, b: f64) -> f64 {
    (a - b).abs() / b.abs().max(1e-300)
}

pub fn run(cfg: &CampaignConfig) -> CliResult<SuiteOutput> {
    let alg = cfg.algebra();
    let h = cfg
        .hamiltonian
        .clone()
        .unwrap_or_else(|| default_hamiltonian(alg, cfg.seed));
    let omega = State::trace_state(alg);
    let mut out = SuiteOutput::default();
    let is_default = cfg.hamiltonian.is_none() && alg == &Algebra::herm_c(2);
    if cfg.hamiltonian.is_none() && !is_default {
        out.note("no hamiltonian given: using a seeded random element");
    }
    out.detail("hamiltonian", &h);

    let z0 = partition_function(&omega, &h, 0.0)?;
    out.push(CheckOutcome::boolean(
        "partition_function_at_zero",
        z0 == 1.0,
        vec![json!(z0)],
    ));

    let mut betas = cfg.betas.clone();
    if !betas.contains(&1.0) {
        betas.push(1.0);
    }
    let mut rows = Vec::new();
    let mut z_results = Vec::new();
    for &beta in &betas {
        let z = partition_function(&omega, &h, beta)?;
        let oracle = z_oracle(&h, beta);
        z_results.push(TrialResult {
            residual: rel(z, oracle),
            inputs: vec![json!(beta), json!(z), json!(oracle)],
        });
        rows.push(Row {
            beta,
            z,
            z_oracle: oracle,
        });
    }
    out.push(noether_core::check::collect(
        "partition_function_oracle",
        cfg.seed,
        Z_TOL,
        z_results,
    ));
    if is_default {
        let z1 = partition_function(&omega, &h, 1.0)?;
        let want = (1.0 + (-1.0f64).exp()) / 2.0;
        out.push(CheckOutcome::single(
            "partition_function_closed_form",
            (z1 - want).abs(),
            Z_TOL,
            vec![json!(z1), json!(want)],
        ));
    }
    out.detail("partition_function", &rows);

    let mut gibbs = Vec::new();
    let mut translation = Vec::new();
    for &beta in &cfg.betas {
        let g = gibbs_state(&omega, &h, beta)?;
        let one = g.evaluate(&JordanElement::unit(alg))?;
        gibbs.push(TrialResult {
            residual: (one - 1.0).abs(),
            inputs: vec![json!(beta)],
        });
        let (t, _) = thermal_translate(&omega, &h, beta)?;
        translation.push(TrialResult {
            residual: t.distance(&g)?,
            inputs: vec![json!(beta)],
        });
    }
    out.push(noether_core::check::collect(
        "gibbs_state_normalized",
        cfg.seed,
        COMPOSITION_TOL,
        gibbs,
    ));
    out.push(noether_core::check::collect(
        "gibbs_equals_translated_trace_state",
        cfg.seed,
        COMPOSITION_TOL,
        translation,
    ));

    // translating ω_γ by β lands on ω_{β+γ} with weight Z(β+γ)/Z(γ)
    let mut law = Vec::new();
    let mut alternative: f64 = 0.0;
    for &beta in &cfg.betas {
        for &gamma in &cfg.betas {
            let omega_gamma = gibbs_state(&omega, &h, gamma)?;
            let (moved, factor) = thermal_translate(&omega_gamma, &h, beta)?;
            let target = gibbs_state(&omega, &h, beta + gamma)?;
            let (zbg, zg, zb) = (
                partition_function(&omega, &h, beta + gamma)?,
                partition_function(&omega, &h, gamma)?,
                partition_function(&omega, &h, beta)?,
            );
            let r = moved.distance(&target)?.max(rel(factor, zbg / zg));
            alternative = alternative.max(rel(factor, zb / zg));
            law.push(TrialResult {
                residual: r,
                inputs: vec![json!({"beta": beta, "gamma": gamma, "factor": factor})],
            });
        }
    }
    out.push(noether_core::check::collect(
        "thermal_composition_law",
        cfg.seed,
        COMPOSITION_TOL,
        law,
    ));
    out.note(THERMAL_FACTOR_NOTE);
    out.note(format!("diagnostic: largest relative mismatch of the factor Z(beta)/Z(gamma) on the grid is {alternative:e}"));
    out.detail("alternative_factor_max_relative_error", alternative);

    let sp = spectrum(&h);
    let gap = if sp.eigenvalues.len() > 1 {
        sp.eigenvalues[1] - sp.eigenvalues[0]
    } else {
        f64::INFINITY
    };
    // excited weights scale as exp(-β·gap); below this the limit is not reached at β = 50
    if GROUND_BETA * gap > -GROUND_TOL.ln() + 5.0 {
        let ground = &sp.idempotents[0];
        let target = ground.scale(1.0 / ground.trace());
        let cold = gibbs_state(&omega, &h, GROUND_BETA)?;
        let r = (cold.density() - &target).max_abs();
        out.push(CheckOutcome::single(
            "ground_state_limit",
            r,
            GROUND_TOL,
            vec![json!(GROUND_BETA), json!(target)],
        ));
    } else {
        out.note(format!("ground_state_limit skipped: spectral gap {gap:e} is too small for beta = {GROUND_BETA}"));
    }
    Ok(out)
}
