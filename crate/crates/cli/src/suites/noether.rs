//! Noether equivalence over random and commuting pairs, self-conservation,
//! and cross-validation of closed-form against integrated flows.

use noether_core::check::{CheckOutcome, TrialResult};
use noether_core::derivations::{flow, integrate_flow, OrderDerivation};
use noether_core::noether::{
    bracket_antisymmetry_from_self_conservation, max_displacement, noether_check,
};
use noether_core::random::{random_positive_element, random_unit_element};
use noether_core::reconstruction::DynamicalCorrespondence;
use noether_core::spectral::{jb_norm, min_eigenvalue};
use noether_core::{Algebra, JordanElement};
use rand::Rng;
use rand_chacha::ChaCha8Rng;
use serde_json::json;

use crate::config::CampaignConfig;
use crate::report::SuiteOutput;
use crate::runner::par_trials;
use crate::CliResult;

pub const SELF_CONSERVATION_TOL: f64 = 1e-9;
pub const FLOW_AGREEMENT_TOL: f64 = 1e-6;
pub const AUTOMORPHISM_TOL: f64 = 1e-9;
/// Trials allotted to finding a product-breaking self-adjoint flow.
pub const WITNESS_SEARCH: u64 = 50;
const MIN_COMMUTING_PAIRS: u64 = 50;
const MAX_FLOW_TRIALS: u64 = 50;

/// `b = p(a)` for a random cubic `p`, rescaled to norm one.
pub fn commuting_partner(a: &JordanElement, rng: &mut ChaCha8Rng) -> JordanElement {
    let coeffs: Vec<f64> = (0..4).map(|_| rng.random_range(-1.0..1.0)).collect();
    let b = a.polynomial(&coeffs);
    let n = jb_norm(&b);
    if n > 0.0 {
        b.scale(1.0 / n)
    } else {
        b
    }
}

fn equivalence_trial(
    psi: &DynamicalCorrespondence,
    cfg: &CampaignConfig,
    rng: &mut ChaCha8Rng,
    commuting: bool,
) -> TrialResult {
    let alg = psi.algebra();
    let a = random_unit_element(alg, rng);
    let b = if commuting {
        commuting_partner(&a, rng)
    } else {
        random_unit_element(alg, rng)
    };
    match noether_check(&a, &b, psi, &cfg.t_samples, cfg.tol) {
        Ok(report) => {
            let r = if report.passed() { 0.0 } else { 1.0 };
            TrialResult {
                residual: r,
                inputs: vec![json!(a), json!(b), json!(report)],
            }
        }
        Err(e) => TrialResult {
            residual: f64::INFINITY,
            inputs: vec![json!(a), json!(b), json!(e.to_string())],
        },
    }
}

fn random_t(cfg: &CampaignConfig, rng: &mut ChaCha8Rng) -> f64 {
    let t: f64 = rng.random_range(0.1..=1.0) * cfg.t_end.abs();
    if rng.random_bool(0.5) {
        t
    } else {
        -t
    }
}

/// Random skew derivation `[L_a, L_b]`, available on every algebra.
fn random_inner(
    alg: &Algebra,
    rng: &mut ChaCha8Rng,
) -> (OrderDerivation, JordanElement, JordanElement) {
    let (a, b) = (random_unit_element(alg, rng), random_unit_element(alg, rng));
    (OrderDerivation::inner(&a, &b).expect("same algebra"), a, b)
}

fn flow_agreement(delta: &OrderDerivation, b: &JordanElement, t: f64, steps: usize) -> f64 {
    let closed = flow(delta, t, b).expect("same algebra");
    match integrate_flow(delta, b, t, steps) {
        Ok(orbit) => jb_norm(&(&orbit.last() - &closed)),
        Err(_) => f64::INFINITY,
    }
}

pub fn flow_checks(alg: &Algebra, cfg: &CampaignConfig, out: &mut SuiteOutput) {
    let trials = cfg.trials.min(MAX_FLOW_TRIALS);
    out.push(par_trials(
        "integrated_vs_closed_form_self_adjoint",
        cfg.seed,
        trials,
        FLOW_AGREEMENT_TOL,
        |rng| {
            let (h, b) = (random_unit_element(alg, rng), random_unit_element(alg, rng));
            let t = random_t(cfg, rng);
            let r = flow_agreement(&OrderDerivation::self_adjoint(h.clone()), &b, t, cfg.steps);
            TrialResult {
                residual: r,
                inputs: vec![json!(h), json!(b), json!(t)],
            }
        },
    ));
    out.push(par_trials(
        "integrated_vs_closed_form_skew",
        cfg.seed,
        trials,
        FLOW_AGREEMENT_TOL,
        |rng| {
            let (delta, x, y) = random_inner(alg, rng);
            let b = random_unit_element(alg, rng);
            let t = random_t(cfg, rng);
            let r = flow_agreement(&delta, &b, t, cfg.steps);
            TrialResult {
                residual: r,
                inputs: vec![json!({"inner": [x, y]}), json!(b), json!(t)],
            }
        },
    ));
    out.push(par_trials(
        "skew_flow_preserves_product",
        cfg.seed,
        cfg.trials,
        AUTOMORPHISM_TOL,
        |rng| {
            let (delta, x, y) = random_inner(alg, rng);
            let (a, b) = (random_unit_element(alg, rng), random_unit_element(alg, rng));
            let t = random_t(cfg, rng);
            let f = |e: &JordanElement| flow(&delta, t, e).expect("same algebra");
            let r = jb_norm(&(&f(&a.circ(&b)) - &f(&a).circ(&f(&b))));
            TrialResult {
                residual: r,
                inputs: vec![json!({"inner": [x, y]}), json!(a), json!(b), json!(t)],
            }
        },
    ));
    out.push(par_trials(
        "skew_flow_preserves_states",
        cfg.seed,
        cfg.trials,
        AUTOMORPHISM_TOL,
        |rng| {
            let (delta, x, y) = random_inner(alg, rng);
            let p = random_positive_element(alg, rng);
            let rho = p.scale(1.0 / p.trace());
            let t = random_t(cfg, rng);
            let moved = flow(&delta, t, &rho).expect("same algebra");
            let r = (moved.trace() - 1.0)
                .abs()
                .max((-min_eigenvalue(&moved)).max(0.0));
            TrialResult {
                residual: r,
                inputs: vec![json!({"inner": [x, y]}), json!(rho), json!(t)],
            }
        },
    ));

    // search for a self-adjoint flow that does not preserve the product
    let mut found = None;
    for i in 0..WITNESS_SEARCH {
        let mut rng = noether_core::random::trial_rng(
            crate::runner::check_seed(cfg.seed, "self_adjoint_breaks_product"),
            i,
        );
        let (h, a, b) = (
            random_unit_element(alg, &mut rng),
            random_unit_element(alg, &mut rng),
            random_unit_element(alg, &mut rng),
        );
        let t = random_t(cfg, &mut rng);
        let f = |e: &JordanElement| {
            flow(&OrderDerivation::self_adjoint(h.clone()), t, e).expect("same algebra")
        };
        let gap = jb_norm(&(&f(&a.circ(&b)) - &f(&a).circ(&f(&b))));
        if gap > 1e-3 {
            found = Some((
                i,
                json!({"trial": i, "h": h, "a": a, "b": b, "t": t, "product_gap": gap}),
            ));
            break;
        }
    }
    let ok = found.is_some();
    if let Some((i, w)) = &found {
        out.note(format!(
            "self-adjoint flow breaking the Jordan product found at search trial {i}"
        ));
        out.detail("self_adjoint_product_witness", w);
    }
    out.push(CheckOutcome::boolean(
        "self_adjoint_breaks_product",
        ok,
        vec![json!(WITNESS_SEARCH)],
    ));
}

pub fn run(cfg: &CampaignConfig) -> CliResult<SuiteOutput> {
    let alg = cfg.algebra();
    let (psi, label) = super::correspondence(alg, cfg.correspondence.as_deref())?;
    let mut out = SuiteOutput::default();
    out.note(format!("correspondence: {label}"));

    let commuting = (cfg.trials / 4).max(MIN_COMMUTING_PAIRS);
    out.push(par_trials(
        "noether_equivalence_random_pairs",
        cfg.seed,
        cfg.trials,
        0.5,
        |rng| equivalence_trial(&psi, cfg, rng, false),
    ));
    out.push(par_trials(
        "noether_equivalence_commuting_pairs",
        cfg.seed,
        commuting,
        0.5,
        |rng| equivalence_trial(&psi, cfg, rng, true),
    ));
    out.push(par_trials(
        "self_conservation",
        cfg.seed,
        cfg.trials,
        SELF_CONSERVATION_TOL,
        |rng| {
            let a = random_unit_element(alg, rng);
            let r = psi
                .psi(&a)
                .and_then(|g| max_displacement(&g, &a, &cfg.t_samples))
                .unwrap_or(f64::INFINITY);
            TrialResult::new(r, &[a])
        },
    ));
    let anti = bracket_antisymmetry_from_self_conservation(
        psi.table(),
        cfg.trials,
        crate::runner::check_seed(cfg.seed, "antisymmetry_from_self_conservation"),
    );
    for mut c in [anti.self_conservation, anti.antisymmetry, anti.polarization] {
        c.name = format!("bracket_{}", c.name);
        out.push(c);
    }
    out.note(format!(
        "pairs: {} random, {commuting} constructed as cubic polynomials of a; flow verdicts at t in {:?} never consult the bracket",
        cfg.trials, cfg.t_samples
    ));
    out.note("a report passes when flow verdicts in both directions agree with the bracket test, and commuting pairs stay within 10*tol along the integrated flow over |t| <= 2");
    flow_checks(alg, cfg, &mut out);
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::config::Command;
    use noether_core::random::trial_rng;

    #[test]
    fn commuting_partner_commutes() {
        let alg = Algebra::herm_c(3);
        let psi = DynamicalCorrespondence::canonical(&alg).unwrap();
        let mut rng = trial_rng(0, 0);
        let a = random_unit_element(&alg, &mut rng);
        let b = commuting_partner(&a, &mut rng);
        assert!(jb_norm(&psi.bracket(&a, &b).unwrap()) < 1e-12);
    }

    #[test]
    fn small_campaign_passes() {
        let mut cfg = crate::config::CampaignConfig::defaults(Command::Noether);
        cfg.trials = 8;
        let out = run(&cfg).unwrap();
        assert!(out.checks.iter().all(|c| c.passed), "{:?}", out.checks);
    }
}
