//! Symmetry generation in both directions against the bracket criterion.
//!
//! Flow verdicts come from closed-form flows sampled at finitely many times and
//! never consult the bracket, so agreement between the three answers is a
//! genuine check rather than a restatement.

use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::check::{run_trials, CheckOutcome, TrialResult};
use crate::derivations::{flow, integrate_flow, OrderDerivation};
use crate::error::{Error, Result};
use crate::jordan::JordanElement;
use crate::poisson::{hamiltonian_vector_flow, observable_along_flow, poisson_bracket, Polynomial};
use crate::random::random_unit_element;
use crate::reconstruction::{BracketTable, DynamicalCorrespondence};
use crate::spectral::jb_norm;

pub const DEFAULT_T_SAMPLES: [f64; 6] = [-2.7, -1.0, -0.3, 0.3, 1.0, 2.7];
pub const DEFAULT_TOL: f64 = 1e-8;
/// Tolerance for verdicts read off integrated flows.
pub const INTEGRATED_TOL: f64 = 1e-5;
/// Horizon and step count for the constancy check on commuting pairs.
pub const CONSTANCY_HORIZON: f64 = 2.0;
pub const CONSTANCY_STEPS: usize = 1000;

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct NoetherReport {
    pub bracket_norm: f64,
    pub a_fixes_b: bool,
    pub b_fixes_a: bool,
    pub self_conservation_a: bool,
    pub self_conservation_b: bool,
    pub consistent: bool,
    /// Largest `‖F_t(b) − b‖` under the flow of `ψ_a`, and vice versa.
    pub displacement_a_on_b: f64,
    pub displacement_b_on_a: f64,
    /// For brackets below `tol`: largest drift of `b` along the RK4-integrated
    /// flow of `ψ_a` over `|t| ≤ 2`, which must stay below `10·tol`.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub integrated_drift: Option<f64>,
    pub t_samples: Vec<f64>,
    pub tol: f64,
}

impl NoetherReport {
    /// Consistency plus, when measured, bounded integrated drift.
    pub fn passed(&self) -> bool {
        self.consistent && self.integrated_drift.is_none_or(|d| d < 10.0 * self.tol)
    }
}

/// `max_t ‖F_t(obs) − obs‖` over the closed-form flow of `gen`.
pub fn max_displacement(
    gen: &OrderDerivation,
    obs: &JordanElement,
    t_samples: &[f64],
) -> Result<f64> {
    let mut worst: f64 = 0.0;
    for &t in t_samples {
        let moved = flow(gen, t, obs)?;
        worst = worst.max(jb_norm(&(&moved - obs)));
    }
    Ok(worst)
}

/// Whether `gen` fixes `obs` at every sampled time.
pub fn generates_symmetries(
    gen: &OrderDerivation,
    obs: &JordanElement,
    t_samples: &[f64],
    tol: f64,
) -> Result<bool> {
    if t_samples.is_empty() {
        return Err(Error::Internal("at least one flow time is required".into()));
    }
    Ok(max_displacement(gen, obs, t_samples)? < tol)
}

fn integrated_drift(gen: &OrderDerivation, obs: &JordanElement) -> Result<f64> {
    let mut worst: f64 = 0.0;
    for t_end in [CONSTANCY_HORIZON, -CONSTANCY_HORIZON] {
        let orbit = integrate_flow(gen, obs, t_end, CONSTANCY_STEPS)?;
        for i in 0..orbit.samples.len() {
            worst = worst.max(jb_norm(&(&orbit.element(i) - obs)));
        }
    }
    Ok(worst)
}

pub fn noether_check(
    a: &JordanElement,
    b: &JordanElement,
    psi: &DynamicalCorrespondence,
    t_samples: &[f64],
    tol: f64,
) -> Result<NoetherReport> {
    if t_samples.is_empty() {
        return Err(Error::Internal("at least one flow time is required".into()));
    }
    let bracket_norm = jb_norm(&psi.bracket(a, b)?);
    let (psi_a, psi_b) = (psi.psi(a)?, psi.psi(b)?);
    let displacement_a_on_b = max_displacement(&psi_a, b, t_samples)?;
    let displacement_b_on_a = max_displacement(&psi_b, a, t_samples)?;
    let a_fixes_b = displacement_a_on_b < tol;
    let b_fixes_a = displacement_b_on_a < tol;
    let commute = bracket_norm < tol;
    let integrated_drift = if commute {
        Some(integrated_drift(&psi_a, b)?)
    } else {
        None
    };
    Ok(NoetherReport {
        bracket_norm,
        a_fixes_b,
        b_fixes_a,
        self_conservation_a: generates_symmetries(&psi_a, a, t_samples, tol)?,
        self_conservation_b: generates_symmetries(&psi_b, b, t_samples, tol)?,
        consistent: a_fixes_b == b_fixes_a && b_fixes_a == commute,
        displacement_a_on_b,
        displacement_b_on_a,
        integrated_drift,
        t_samples: t_samples.to_vec(),
        tol,
    })
}

/// Whether the flow of `ψ_a` fixes `a`.
pub fn self_conservation_check(
    a: &JordanElement,
    psi: &DynamicalCorrespondence,
    t_samples: &[f64],
    tol: f64,
) -> Result<bool> {
    generates_symmetries(&psi.psi(a)?, a, t_samples, tol)
}

/// Sampled `{a,a} = 0`, sampled `{a,b} = −{b,a}`, and the polarization identity
/// `{a+b,a+b} − {a,a} − {b,b} = {a,b} + {b,a}` linking them.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct AntisymmetryReport {
    pub self_conservation: CheckOutcome,
    pub antisymmetry: CheckOutcome,
    pub polarization: CheckOutcome,
    /// Both sides hold or both fail.
    pub equivalent: bool,
}

impl AntisymmetryReport {
    /// Antisymmetry established from self-conservation.
    pub fn passed(&self) -> bool {
        self.self_conservation.passed && self.antisymmetry.passed && self.polarization.passed
    }
}

pub fn bracket_antisymmetry_from_self_conservation(
    table: &BracketTable,
    trials: u64,
    seed: u64,
) -> AntisymmetryReport {
    let alg = table.algebra();
    let tol = 1e-10;
    let pair =
        |rng: &mut ChaCha8Rng| (random_unit_element(alg, rng), random_unit_element(alg, rng));
    let self_conservation = run_trials("self_conservation", seed, trials, tol, |rng| {
        let a = random_unit_element(alg, rng);
        TrialResult::new(jb_norm(&table.apply(&a, &a)), &[a])
    });
    let antisymmetry = run_trials("antisymmetry", seed, trials, tol, |rng| {
        let (a, b) = pair(rng);
        TrialResult::new(
            jb_norm(&(&table.apply(&a, &b) + &table.apply(&b, &a))),
            &[a, b],
        )
    });
    let polarization = run_trials("polarization", seed, trials, tol, |rng| {
        let (a, b) = pair(rng);
        let s = &a + &b;
        let lhs = &(&table.apply(&s, &s) - &table.apply(&a, &a)) - &table.apply(&b, &b);
        let rhs = &table.apply(&a, &b) + &table.apply(&b, &a);
        TrialResult::new(jb_norm(&(&lhs - &rhs)), &[a, b])
    });
    AntisymmetryReport {
        equivalent: self_conservation.passed == antisymmetry.passed,
        self_conservation,
        antisymmetry,
        polarization,
    }
}

/// Noether verdicts for polynomial observables on phase space.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ClassicalNoetherReport {
    pub f: Polynomial,
    pub g: Polynomial,
    pub bracket: Polynomial,
    pub bracket_symbolically_zero: bool,
    /// Largest `|g(x(t)) − g(x₀)|` along the flow of `f`, and vice versa.
    pub drift_f_on_g: f64,
    pub drift_g_on_f: f64,
    pub f_fixes_g: bool,
    pub g_fixes_f: bool,
    pub consistent: bool,
    pub sample_points: usize,
    pub t_end: f64,
    pub steps: usize,
    pub tol: f64,
}

fn classical_drift(
    h: &Polynomial,
    g: &Polynomial,
    points: &[Vec<f64>],
    t_end: f64,
    steps: usize,
) -> Result<f64> {
    let mut worst: f64 = 0.0;
    for x0 in points {
        for t in [t_end, -t_end] {
            let traj = hamiltonian_vector_flow(h, x0, t, steps)?;
            let values = observable_along_flow(g, &traj)?;
            let g0 = values[0].1;
            worst = values.iter().fold(worst, |w, (_, v)| w.max((v - g0).abs()));
        }
    }
    Ok(worst)
}

/// Integrates both Hamiltonian flows from each sample point (forward and
/// backward) and compares conservation with the symbolic bracket.
pub fn classical_noether_check(
    f: &Polynomial,
    g: &Polynomial,
    sample_points: &[Vec<f64>],
    t_end: f64,
    steps: usize,
    tol: f64,
) -> Result<ClassicalNoetherReport> {
    let bracket = poisson_bracket(f, g)?;
    let drift_f_on_g = classical_drift(f, g, sample_points, t_end, steps)?;
    let drift_g_on_f = classical_drift(g, f, sample_points, t_end, steps)?;
    let (f_fixes_g, g_fixes_f) = (drift_f_on_g < tol, drift_g_on_f < tol);
    let zero = bracket.is_zero();
    Ok(ClassicalNoetherReport {
        f: f.clone(),
        g: g.clone(),
        bracket_symbolically_zero: zero,
        bracket,
        drift_f_on_g,
        drift_g_on_f,
        f_fixes_g,
        g_fixes_f,
        consistent: f_fixes_g == g_fixes_f && g_fixes_f == zero,
        sample_points: sample_points.len(),
        t_end,
        steps,
        tol,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::jordan::pauli::*;
    use crate::jordan::realize::to_complex_matrix;
    use crate::jordan::Algebra;
    use crate::poisson::presets;
    use crate::random::trial_rng;
    use num_complex::Complex64;

    fn canonical2() -> DynamicalCorrespondence {
        DynamicalCorrespondence::canonical(&Algebra::herm_c(2)).unwrap()
    }

    #[test]
    fn generates_symmetries_examples() {
        let psi = canonical2();
        let gen = psi.psi(&sigma_z()).unwrap();
        let one = JordanElement::unit(&Algebra::herm_c(2));
        assert!(generates_symmetries(&gen, &one, &DEFAULT_T_SAMPLES, 1e-8).unwrap());
        assert!(generates_symmetries(&gen, &sigma_z(), &DEFAULT_T_SAMPLES, 1e-8).unwrap());
        assert!(!generates_symmetries(&gen, &sigma_x(), &DEFAULT_T_SAMPLES, 1e-8).unwrap());
        // oracle: conjugation by e^{itσz/2} rotates σx by angle t, so ‖F_t(σx) − σx‖ = 2|sin(t/2)|
        for t in [0.3, 1.0, 2.7] {
            let d = max_displacement(&gen, &sigma_x(), &[t]).unwrap();
            assert!(
                (d - 2.0 * (t / 2.0f64).sin().abs()).abs() < 1e-12,
                "t={t}: {d}"
            );
        }
        assert!(generates_symmetries(&gen, &sigma_x(), &[], 1e-8).is_err());
        assert!(generates_symmetries(
            &gen,
            &JordanElement::basis(&Algebra::spin(3), 0),
            &[1.0],
            1e-8
        )
        .is_err());
    }

    #[test]
    fn skew_flow_matches_unitary_conjugation() {
        let alg = Algebra::herm_c(3);
        let psi = DynamicalCorrespondence::canonical(&alg).unwrap();
        let mut rng = trial_rng(3, 0);
        let (a, b) = (
            random_unit_element(&alg, &mut rng),
            random_unit_element(&alg, &mut rng),
        );
        let t = 1.3;
        let got = flow(&psi.psi(&a).unwrap(), t, &b).unwrap();
        // exp(tψ_a)(b) = e^{ita/2} b e^{-ita/2}
        let ma = to_complex_matrix(&a).unwrap();
        let u = (ma * Complex64::new(0.0, t / 2.0)).exp();
        let want = &u * to_complex_matrix(&b).unwrap() * u.adjoint();
        let got_m = to_complex_matrix(&got).unwrap();
        assert!((got_m - want).iter().all(|z| z.norm() < 1e-12));
    }

    #[test]
    fn noether_examples() {
        let psi = canonical2();
        let mut rng = trial_rng(5, 0);
        let a = random_unit_element(&Algebra::herm_c(2), &mut rng);
        let b = a.polynomial(&[0.5, -1.0, 2.0]);
        let r = noether_check(&a, &b, &psi, &DEFAULT_T_SAMPLES, 1e-8).unwrap();
        assert!(
            r.consistent && r.a_fixes_b && r.b_fixes_a && r.bracket_norm < 1e-8,
            "{r:?}"
        );
        assert!(r.passed() && r.integrated_drift.unwrap() < 1e-12);

        let r = noether_check(&sigma_z(), &sigma_x(), &psi, &DEFAULT_T_SAMPLES, 1e-8).unwrap();
        assert!(r.consistent && !r.a_fixes_b && !r.b_fixes_a && r.integrated_drift.is_none());
        assert!((r.bracket_norm - 1.0).abs() < 1e-14);

        let r = noether_check(&a, &a, &psi, &DEFAULT_T_SAMPLES, 1e-8).unwrap();
        assert!(r.consistent && r.a_fixes_b && r.self_conservation_a);
    }

    #[test]
    fn self_conservation_examples() {
        for n in [2, 3, 4] {
            let alg = Algebra::herm_c(n);
            let psi = DynamicalCorrespondence::canonical(&alg).unwrap();
            let a = random_unit_element(&alg, &mut trial_rng(n as u64, 0));
            assert!(self_conservation_check(&a, &psi, &DEFAULT_T_SAMPLES, 1e-9).unwrap());
            assert!(self_conservation_check(
                &JordanElement::unit(&alg),
                &psi,
                &DEFAULT_T_SAMPLES,
                1e-9
            )
            .unwrap());
            assert!(self_conservation_check(
                &JordanElement::zero(&alg),
                &psi,
                &DEFAULT_T_SAMPLES,
                1e-9
            )
            .unwrap());
        }
    }

    #[test]
    fn antisymmetry_from_self_conservation() {
        let alg = Algebra::herm_c(3);
        let canonical = DynamicalCorrespondence::canonical(&alg).unwrap();
        let r = bracket_antisymmetry_from_self_conservation(canonical.table(), 30, 1);
        assert!(r.passed() && r.equivalent);

        let r =
            bracket_antisymmetry_from_self_conservation(&BracketTable::jordan_product(&alg), 30, 1);
        assert!(!r.passed() && r.equivalent && r.polarization.passed);
        // witness {a,a} = a² ≠ 0
        let w = r.self_conservation.witness.unwrap();
        let a: JordanElement = serde_json::from_value(w.inputs[0].clone()).unwrap();
        assert!(jb_norm(&a.square()) > 0.1);

        assert!(
            bracket_antisymmetry_from_self_conservation(&BracketTable::zero(&alg), 30, 1).passed()
        );
    }

    #[test]
    fn classical_presets() {
        let points = vec![vec![1.0, 0.5, -0.3, 0.8], vec![-0.2, 1.1, 0.4, -0.6]];
        let r = classical_noether_check(
            &presets::central_oscillator(),
            &presets::angular_momentum(),
            &points,
            2.0,
            2000,
            INTEGRATED_TOL,
        )
        .unwrap();
        assert!(
            r.consistent && r.bracket_symbolically_zero && r.f_fixes_g && r.g_fixes_f,
            "{r:?}"
        );

        let q = Polynomial::q(2, 0);
        let r = classical_noether_check(
            &presets::central_oscillator(),
            &q,
            &points,
            2.0,
            2000,
            INTEGRATED_TOL,
        )
        .unwrap();
        assert!(r.consistent && !r.bracket_symbolically_zero && !r.f_fixes_g && !r.g_fixes_f);

        let osc = presets::oscillator();
        let r = classical_noether_check(&osc, &osc, &[vec![1.0, 0.0]], 5.0, 5000, INTEGRATED_TOL)
            .unwrap();
        assert!(r.consistent && r.f_fixes_g);
    }
}
