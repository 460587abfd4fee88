//! States as density elements, spectral measures, Gibbs states and the
//! inverse-temperature translation.
//!
//! A state is `ω(a) = tr(a ∘ ρ)` for a positive density `ρ` of unit trace.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::jordan::{Algebra, JordanElement};
use crate::spectral::{self, eigenvalues};

/// Tolerance on `tr ρ = 1` and on the most negative admissible eigenvalue of `ρ`.
pub const STATE_TOL: f64 = 1e-10;

/// Explains which normalization factor the thermal composition law carries.
pub const THERMAL_FACTOR_NOTE: &str =
    "thermal composition: translating the Gibbs state at gamma by beta \
gives the Gibbs state at beta+gamma with normalization Z(beta+gamma)/Z(gamma); \
the factor Z(beta)/Z(gamma) sometimes quoted for this law does not match direct evaluation \
and is reported as a separate diagnostic";

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "StateRepr", into = "StateRepr")]
pub struct State {
    density: JordanElement,
}

#[derive(Serialize, Deserialize)]
struct StateRepr {
    kind: StateKind,
    #[serde(flatten)]
    density: JordanElement,
}

#[derive(Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
enum StateKind {
    Density,
}

impl TryFrom<StateRepr> for State {
    type Error = Error;
    fn try_from(r: StateRepr) -> Result<Self> {
        State::from_density(r.density)
    }
}

impl From<State> for StateRepr {
    fn from(s: State) -> Self {
        StateRepr {
            kind: StateKind::Density,
            density: s.density,
        }
    }
}

impl State {
    /// Validates positivity and `tr ρ = 1`.
    pub fn from_density(density: JordanElement) -> Result<Self> {
        let tr = density.trace();
        if (tr - 1.0).abs() > STATE_TOL {
            return Err(Error::InvalidState(format!(
                "density has trace {tr}, expected 1"
            )));
        }
        let min = spectral::min_eigenvalue(&density);
        if min < -STATE_TOL {
            return Err(Error::InvalidState(format!(
                "density has negative eigenvalue {min:e}"
            )));
        }
        Ok(State { density })
    }

    /// Normalized trace `ω(a) = tr(a)/rank`.
    pub fn trace_state(algebra: &Algebra) -> Self {
        let rank = algebra.rank() as f64;
        State {
            density: JordanElement::unit(algebra).scale(1.0 / rank),
        }
    }

    /// Normalizes a nonzero positive element into a density.
    pub fn from_positive(a: &JordanElement) -> Result<Self> {
        let tr = a.trace();
        if tr <= 0.0 {
            return Err(Error::InvalidState(format!(
                "cannot normalize element of trace {tr}"
            )));
        }
        Self::from_density(a.scale(1.0 / tr))
    }

    pub fn density(&self) -> &JordanElement {
        &self.density
    }

    pub fn algebra(&self) -> &Algebra {
        self.density.algebra()
    }

    pub fn evaluate(&self, a: &JordanElement) -> Result<f64> {
        self.density.same_algebra(a)?;
        Ok(self.density.trace_form(a))
    }

    /// Distance to another state measured on densities (max coordinate difference).
    pub fn distance(&self, other: &State) -> Result<f64> {
        self.density.same_algebra(&other.density)?;
        Ok((&self.density - &other.density).max_abs())
    }
}

/// `ω(a) = tr(a ∘ ρ)`.
pub fn evaluate(omega: &State, a: &JordanElement) -> Result<f64> {
    omega.evaluate(a)
}

/// Distribution of `a` in `ω`: pairs `(λᵢ, ω(eᵢ))` over the distinct eigenvalues.
pub fn spectral_measure(omega: &State, a: &JordanElement) -> Result<Vec<(f64, f64)>> {
    omega.density.same_algebra(a)?;
    let sp = spectral::spectrum(a);
    Ok(sp
        .eigenvalues
        .iter()
        .zip(&sp.idempotents)
        .map(|(l, e)| (*l, omega.density.trace_form(e)))
        .collect())
}

/// `Z(β) = ω(exp(−βH))`, with `Z(0) = 1` exactly.
pub fn partition_function(omega: &State, h: &JordanElement, beta: f64) -> Result<f64> {
    omega.density.same_algebra(h)?;
    if beta == 0.0 {
        return Ok(1.0);
    }
    Ok(omega.density.trace_form(&spectral::exp(&h.scale(-beta))))
}

/// `exp(−β(H − c))` with `c` the end of the spectrum that keeps every exponent ≤ 0.
fn shifted_boltzmann(h: &JordanElement, beta: f64, half: bool) -> JordanElement {
    let ev = eigenvalues(h);
    let c = if beta >= 0.0 {
        ev[0]
    } else {
        *ev.last().expect("nonempty")
    };
    let k = if half { 0.5 } else { 1.0 };
    spectral::functional_calculus(h, |x| (-k * beta * (x - c)).exp()).expect("exp is finite")
}

/// Density `U_{exp(−βH/2)}(ρ)` renormalized to unit trace.
fn translated(omega: &State, h: &JordanElement, beta: f64) -> Result<State> {
    let c = shifted_boltzmann(h, beta, true);
    let rho = c.quadratic(&omega.density);
    let tr = rho.trace();
    if !(tr > 0.0) || !tr.is_finite() {
        return Err(Error::InvalidState(format!(
            "thermal weight {tr} cannot be normalized"
        )));
    }
    State::from_density(rho.scale(1.0 / tr))
}

/// Gibbs state relative to `ω_ref`: density `(exp(−βH) ⋆ ρ_ref)/Z(β)`.
///
/// For the trace reference this is `exp(−βH)/tr exp(−βH)`.
pub fn gibbs_state(omega_ref: &State, h: &JordanElement, beta: f64) -> Result<State> {
    omega_ref.density.same_algebra(h)?;
    if beta == 0.0 {
        return Ok(omega_ref.clone());
    }
    let weight = shifted_boltzmann(h, beta, false);
    let rho = star_product(&weight, &omega_ref.density)?;
    State::from_density(rho.scale(1.0 / rho.trace()))
}

/// Translation `b ↦ ω(U_{exp(−βH/2)}(b))`, normalized; also returns the
/// normalization `ω(exp(−βH))`.
pub fn thermal_translate(omega: &State, h: &JordanElement, beta: f64) -> Result<(State, f64)> {
    omega.density.same_algebra(h)?;
    if beta == 0.0 {
        return Ok((omega.clone(), 1.0));
    }
    let norm = partition_function(omega, h, beta)?;
    Ok((translated(omega, h, beta)?, norm))
}

/// `a ⋆ b = U_{√a}(b)` for positive `a`.
pub fn star_product(a: &JordanElement, b: &JordanElement) -> Result<JordanElement> {
    a.same_algebra(b)?;
    let root = spectral::sqrt(a).map_err(|e| match e {
        Error::Domain(l) => Error::NotPositive(l),
        other => other,
    })?;
    Ok(root.quadratic(b))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::jordan::pauli::*;
    use crate::jordan::realize::{from_complex_matrix, to_complex_matrix};
    use crate::random::{random_element, random_positive_element, trial_rng};

    fn h01() -> JordanElement {
        diag(0.0, 1.0)
    }

    #[test]
    fn trace_state_examples() {
        let omega = State::trace_state(&Algebra::herm_c(2));
        assert_eq!(omega.evaluate(&sigma_z()).unwrap(), 0.0);
        assert_eq!(
            omega
                .evaluate(&JordanElement::unit(&Algebra::herm_c(2)))
                .unwrap(),
            1.0
        );
        for alg in [Algebra::herm_h(2), Algebra::Albert, Algebra::spin(3)] {
            let omega = State::trace_state(&alg);
            assert!((omega.evaluate(&JordanElement::unit(&alg)).unwrap() - 1.0).abs() < 1e-15);
            let a = random_element(&alg, &mut trial_rng(0, 0));
            assert!(omega.evaluate(&a.square()).unwrap() >= 0.0);
        }
        assert!(omega
            .evaluate(&JordanElement::unit(&Algebra::herm_r(2)))
            .is_err());
    }

    #[test]
    fn density_validation() {
        assert!(State::from_density(sigma_z()).is_err());
        assert!(State::from_density(diag(1.5, -0.5)).is_err());
        assert!(State::from_density(diag(0.5, 0.25)).is_err());
        assert!(State::from_density(diag(1.0, 0.0)).is_ok());
    }

    #[test]
    fn spectral_measure_examples() {
        let omega = State::trace_state(&Algebra::herm_c(2));
        let mu = spectral_measure(&omega, &sigma_z()).unwrap();
        assert_eq!(mu.len(), 2);
        assert!((mu[0].0 + 1.0).abs() < 1e-15 && (mu[0].1 - 0.5).abs() < 1e-15);
        assert!((mu[1].0 - 1.0).abs() < 1e-15 && (mu[1].1 - 0.5).abs() < 1e-15);

        let one = JordanElement::unit(&Algebra::herm_c(2));
        assert_eq!(spectral_measure(&omega, &one).unwrap(), vec![(1.0, 1.0)]);

        let ground = State::from_density(diag(1.0, 0.0)).unwrap();
        let mu = spectral_measure(&ground, &h01()).unwrap();
        assert_eq!(mu, vec![(0.0, 1.0), (1.0, 0.0)]);
    }

    #[test]
    fn spectral_measure_reproduces_moments() {
        for alg in [
            Algebra::herm_c(3),
            Algebra::herm_h(2),
            Algebra::Albert,
            Algebra::spin(4),
        ] {
            let mut rng = trial_rng(21, 0);
            let omega = State::from_positive(&random_positive_element(&alg, &mut rng)).unwrap();
            let a = random_element(&alg, &mut rng);
            let mu = spectral_measure(&omega, &a).unwrap();
            assert!((mu.iter().map(|m| m.1).sum::<f64>() - 1.0).abs() < 1e-10);
            assert!(mu.iter().all(|m| m.1 >= -1e-10));
            for n in 0..=6 {
                let direct = omega.evaluate(&a.power(n)).unwrap();
                let via = mu.iter().map(|(l, p)| p * l.powi(n as i32)).sum::<f64>();
                assert!(
                    (direct - via).abs() < 1e-9 * (1.0 + direct.abs()),
                    "{alg} n={n}"
                );
            }
        }
    }

    #[test]
    fn partition_function_examples() {
        let omega = State::trace_state(&Algebra::herm_c(2));
        assert_eq!(partition_function(&omega, &h01(), 0.0).unwrap(), 1.0);
        let z1 = partition_function(&omega, &h01(), 1.0).unwrap();
        assert!((z1 - (1.0 + (-1f64).exp()) / 2.0).abs() < 1e-12);
        assert!((z1 - 0.68394).abs() < 1e-5);
        let one = JordanElement::unit(&Algebra::herm_c(2));
        for beta in [-2.0, 0.5, 3.0] {
            assert!(
                (partition_function(&omega, &one, beta).unwrap() - (-beta).exp()).abs() < 1e-12
            );
        }
    }

    #[test]
    fn gibbs_state_examples() {
        let omega = State::trace_state(&Algebra::herm_c(2));
        assert_eq!(gibbs_state(&omega, &h01(), 0.0).unwrap(), omega);
        let g = gibbs_state(&omega, &h01(), 1.0).unwrap();
        let e = (-1f64).exp();
        assert!((g.density() - &diag(1.0 / (1.0 + e), e / (1.0 + e))).max_abs() < 1e-12);
        let cold = gibbs_state(&omega, &h01(), 50.0).unwrap();
        assert!((cold.density() - &diag(1.0, 0.0)).max_abs() < 1e-10);
        for beta in [-5.0, -1.0, 0.3, 10.0, 50.0] {
            let g = gibbs_state(&omega, &h01(), beta).unwrap();
            let one = JordanElement::unit(&Algebra::herm_c(2));
            assert!((g.evaluate(&one).unwrap() - 1.0).abs() < 1e-10);
        }
    }

    #[test]
    fn gibbs_density_matches_matrix_formula() {
        let alg = Algebra::herm_c(3);
        let h = random_element(&alg, &mut trial_rng(5, 5));
        let omega = State::trace_state(&alg);
        let g = gibbs_state(&omega, &h, 0.7).unwrap();
        let m = to_complex_matrix(&h).unwrap().map(|z| z * -0.7).exp();
        let tr = m.trace().re;
        let expected = from_complex_matrix(&alg, &m.map(|z| z / tr)).unwrap();
        assert!((g.density() - &expected).max_abs() < 1e-12);
    }

    #[test]
    fn thermal_translation_composes() {
        let alg = Algebra::herm_c(2);
        let omega = State::trace_state(&alg);
        let h = h01();
        let (same, one) = thermal_translate(&omega, &h, 0.0).unwrap();
        assert_eq!((same, one), (omega.clone(), 1.0));
        let z = |b: f64| partition_function(&omega, &h, b).unwrap();
        for gamma in [-1.0, 0.5, 2.0] {
            for beta in [-0.5, 1.0, 3.0] {
                let wg = gibbs_state(&omega, &h, gamma).unwrap();
                let (moved, factor) = thermal_translate(&wg, &h, beta).unwrap();
                let target = gibbs_state(&omega, &h, beta + gamma).unwrap();
                assert!(moved.distance(&target).unwrap() < 1e-12);
                assert!((factor - z(beta + gamma) / z(gamma)).abs() < 1e-12);
            }
        }
        let (t, _) = thermal_translate(&omega, &h, 1.3).unwrap();
        assert!(t.distance(&gibbs_state(&omega, &h, 1.3).unwrap()).unwrap() < 1e-14);
    }

    #[test]
    fn star_product_examples() {
        let alg = Algebra::herm_c(2);
        let b = random_element(&alg, &mut trial_rng(1, 2));
        assert!((&star_product(&JordanElement::unit(&alg), &b).unwrap() - &b).max_abs() < 1e-14);
        let prod = star_product(&diag(4.0, 0.25), &diag(3.0, 8.0)).unwrap();
        assert!((&prod - &diag(12.0, 2.0)).max_abs() < 1e-14);
        assert!(matches!(
            star_product(&sigma_z(), &b),
            Err(Error::NotPositive(_))
        ));
    }

    #[test]
    fn state_json_carries_density_tag() {
        let omega = State::trace_state(&Algebra::herm_c(2));
        let v = serde_json::to_value(&omega).unwrap();
        assert_eq!(v["kind"], "density");
        assert_eq!(v["family"], "hermC");
        assert_eq!(v["coords"], serde_json::json!([0.5, 0.5, 0.0, 0.0]));
        assert_eq!(serde_json::from_value::<State>(v).unwrap(), omega);
        let bad = serde_json::json!({"kind": "density", "family": "hermC", "params": {"n": 2}, "coords": [1.0, 1.0, 0.0, 0.0]});
        assert!(serde_json::from_value::<State>(bad).is_err());
    }
}
