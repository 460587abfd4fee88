//! Classical phase-space campaign: symbolic bracket laws on random
//! polynomials, conservation along integrated flows, and Noether verdicts for
//! the preset Hamiltonians.

use noether_core::check::{collect, CheckOutcome, TrialResult};
use noether_core::noether::{classical_noether_check, INTEGRATED_TOL};
use noether_core::poisson::{
    hamiltonian_vector_flow, observable_along_flow, poisson_bracket, presets, Polynomial,
};
use noether_core::random::trial_rng;
use noether_core::Result;
use rand::Rng;
use rand_chacha::ChaCha8Rng;
use serde_json::json;

use crate::config::CampaignConfig;
use crate::report::SuiteOutput;
use crate::runner::{check_seed, par_trials};
use crate::CliResult;

pub const CONSERVATION_TOL: f64 = 1e-6;
pub const CONSERVATION_HORIZON: f64 = 20.0;
pub const CONSERVATION_STEPS: usize = 10_000;
/// Phase-space points per preset pair.
pub const MAX_SAMPLE_POINTS: u64 = 16;
const MAX_DEGREE: u32 = 3;
const MAX_TERMS: usize = 4;

/// Residuals here are exact: any nonzero coefficient fails.
const EXACT: f64 = f64::MIN_POSITIVE;

pub fn preset_pairs() -> Vec<(&'static str, Polynomial, Polynomial)> {
    vec![
        (
            "central_oscillator~angular_momentum",
            presets::central_oscillator(),
            presets::angular_momentum(),
        ),
        (
            "oscillator~oscillator",
            presets::oscillator(),
            presets::oscillator(),
        ),
        (
            "free_particle~p1",
            presets::free_particle(),
            Polynomial::p(1, 0),
        ),
        (
            "central_oscillator~q1",
            presets::central_oscillator(),
            Polynomial::q(2, 0),
        ),
        (
            "angular_momentum~p1",
            presets::angular_momentum(),
            Polynomial::p(2, 0),
        ),
    ]
}

fn random_triple(rng: &mut ChaCha8Rng) -> [Polynomial; 3] {
    let n = rng.random_range(1..=3);
    std::array::from_fn(|_| Polynomial::random(n, MAX_DEGREE, MAX_TERMS, rng))
}

fn leibniz_residual([f, g, h]: &[Polynomial; 3]) -> Result<f64> {
    let lhs = poisson_bracket(f, &g.checked_mul(h)?)?;
    let rhs = poisson_bracket(f, g)?
        .checked_mul(h)?
        .checked_add(&g.checked_mul(&poisson_bracket(f, h)?)?)?;
    Ok((lhs - rhs).max_coeff())
}

fn jacobi_residual([f, g, h]: &[Polynomial; 3]) -> Result<f64> {
    let a = poisson_bracket(f, &poisson_bracket(g, h)?)?;
    let b = poisson_bracket(g, &poisson_bracket(h, f)?)?;
    let c = poisson_bracket(h, &poisson_bracket(f, g)?)?;
    Ok(a.checked_add(&b)?.checked_add(&c)?.max_coeff())
}

/// `max |g(x(t)) − g(x₀)|` along the flow of `h` over `[0, t_end]`.
pub fn conservation_drift(
    h: &Polynomial,
    g: &Polynomial,
    x0: &[f64],
    t_end: f64,
    steps: usize,
) -> Result<f64> {
    let traj = hamiltonian_vector_flow(h, x0, t_end, steps)?;
    let values = observable_along_flow(g, &traj)?;
    let g0 = values[0].1;
    Ok(values.iter().fold(0.0, |w, (_, v)| w.max((v - g0).abs())))
}

pub fn run(cfg: &CampaignConfig) -> CliResult<SuiteOutput> {
    let mut out = SuiteOutput::default();

    let unit = poisson_bracket(&Polynomial::p(1, 0), &Polynomial::q(1, 0))?;
    let r = (unit.clone() - Polynomial::constant(1, 1.0)).max_coeff();
    out.push(CheckOutcome::single(
        "canonical_pair",
        r,
        EXACT,
        vec![json!(unit)],
    ));

    for (name, law) in [
        ("bracket_leibniz_symbolic", leibniz_residual as fn(&_) -> _),
        ("bracket_jacobi_symbolic", jacobi_residual),
    ] {
        out.push(par_trials(name, cfg.seed, cfg.trials, EXACT, |rng| {
            let triple = random_triple(rng);
            TrialResult::new(law(&triple).unwrap_or(f64::INFINITY), &triple)
        }));
    }

    let osc = presets::oscillator();
    let x0 = [1.0, 0.0];
    let drift = conservation_drift(&osc, &osc, &x0, CONSERVATION_HORIZON, CONSERVATION_STEPS)?;
    out.push(CheckOutcome::single(
        "oscillator_energy_drift",
        drift,
        CONSERVATION_TOL,
        vec![json!(osc), json!(x0)],
    ));

    let (h, l) = (presets::central_oscillator(), presets::angular_momentum());
    let x0 = [1.0, 0.5, -0.3, 0.8];
    let drift = conservation_drift(&h, &l, &x0, CONSERVATION_HORIZON, CONSERVATION_STEPS)?;
    out.push(CheckOutcome::single(
        "angular_momentum_conservation",
        drift,
        CONSERVATION_TOL,
        vec![json!(h), json!(l), json!(x0)],
    ));

    let points = cfg.trials.min(MAX_SAMPLE_POINTS);
    let seed = check_seed(cfg.seed, "classical_noether_equivalence");
    let mut results = Vec::new();
    let mut reports = Vec::new();
    for (k, (name, f, g)) in preset_pairs().into_iter().enumerate() {
        let mut rng = trial_rng(seed, k as u64);
        let sample: Vec<Vec<f64>> = (0..points)
            .map(|_| {
                (0..2 * f.n())
                    .map(|_| rng.random_range(-1.0..1.0))
                    .collect()
            })
            .collect();
        let report =
            classical_noether_check(&f, &g, &sample, cfg.t_end, cfg.steps, INTEGRATED_TOL)?;
        let r = if report.consistent { 0.0 } else { 1.0 };
        results.push(TrialResult {
            residual: r,
            inputs: vec![json!(name), json!(sample), json!(report)],
        });
        reports.push(json!({"pair": name, "report": report}));
    }
    out.push(collect("classical_noether_equivalence", seed, 0.5, results));
    out.detail("classical_pairs", reports);
    out.note(format!(
        "each preset pair is integrated forwards and backwards to |t| = {} in {} RK4 steps from {points} random points; verdict tolerance {INTEGRATED_TOL:e}",
        cfg.t_end.abs(),
        cfg.steps
    ));
    Ok(out)
}
