use serde::{Deserialize, Serialize};

use super::polynomial::Polynomial;
use crate::error::{Error, Result};

/// Any coordinate beyond this magnitude aborts integration.
pub const BLOW_UP_THRESHOLD: f64 = 1e12;

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct PhasePoint {
    pub t: f64,
    pub q: Vec<f64>,
    pub p: Vec<f64>,
}

impl PhasePoint {
    /// `(q₁..qₙ, p₁..pₙ)` as one vector.
    pub fn state(&self) -> Vec<f64> {
        self.q.iter().chain(&self.p).copied().collect()
    }
}

/// Sampled solution of Hamilton's equations, one row per step.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct PhaseTrajectory {
    pub n: usize,
    pub step: f64,
    pub method: String,
    pub samples: Vec<PhasePoint>,
}

impl PhaseTrajectory {
    fn push(&mut self, t: f64, x: &[f64]) {
        self.samples.push(PhasePoint {
            t,
            q: x[..self.n].to_vec(),
            p: x[self.n..].to_vec(),
        });
    }

    pub fn last(&self) -> &PhasePoint {
        self.samples
            .last()
            .expect("trajectory holds the initial point")
    }
}

/// `X_H = (∂H/∂p, −∂H/∂q)` as polynomials, evaluated repeatedly by the integrator.
struct VectorField {
    components: Vec<Polynomial>,
}

impl VectorField {
    fn new(h: &Polynomial) -> Self {
        let n = h.n();
        let mut components: Vec<Polynomial> = (0..n).map(|i| h.d_dp(i)).collect();
        components.extend((0..n).map(|i| -h.d_dq(i)));
        VectorField { components }
    }

    fn eval(&self, x: &[f64], out: &mut [f64]) {
        for (o, c) in out.iter_mut().zip(&self.components) {
            *o = c.eval(x);
        }
    }
}

/// Classical RK4 on `dq/dt = ∂H/∂p`, `dp/dt = −∂H/∂q` from `x0 = (q, p)`.
///
/// `t_end` may be negative, in which case samples run backwards in time.
/// Coordinates leaving `±1e12` (or becoming non-finite) yield
/// [`Error::BlowUp`] carrying the samples computed so far.
pub fn hamiltonian_vector_flow(
    h: &Polynomial,
    x0: &[f64],
    t_end: f64,
    steps: usize,
) -> Result<PhaseTrajectory> {
    let n = h.n();
    if x0.len() != 2 * n {
        return Err(Error::PhaseDimension {
            left: n,
            right: x0.len() / 2,
        });
    }
    if steps == 0 {
        return Err(Error::Internal(
            "integration needs at least one step".into(),
        ));
    }
    let dt = t_end / steps as f64;
    let field = VectorField::new(h);
    let dim = 2 * n;
    let mut traj = PhaseTrajectory {
        n,
        step: dt,
        method: "rk4".into(),
        samples: Vec::with_capacity(steps + 1),
    };
    let mut x = x0.to_vec();
    traj.push(0.0, &x);
    let (mut k1, mut k2, mut k3, mut k4) = (
        vec![0.0; dim],
        vec![0.0; dim],
        vec![0.0; dim],
        vec![0.0; dim],
    );
    let mut tmp = vec![0.0; dim];
    for step in 1..=steps {
        field.eval(&x, &mut k1);
        for i in 0..dim {
            tmp[i] = x[i] + 0.5 * dt * k1[i];
        }
        field.eval(&tmp, &mut k2);
        for i in 0..dim {
            tmp[i] = x[i] + 0.5 * dt * k2[i];
        }
        field.eval(&tmp, &mut k3);
        for i in 0..dim {
            tmp[i] = x[i] + dt * k3[i];
        }
        field.eval(&tmp, &mut k4);
        for i in 0..dim {
            x[i] += dt / 6.0 * (k1[i] + 2.0 * k2[i] + 2.0 * k3[i] + k4[i]);
        }
        let t = step as f64 * dt;
        if x.iter()
            .any(|v| !v.is_finite() || v.abs() > BLOW_UP_THRESHOLD)
        {
            return Err(Error::BlowUp {
                t,
                partial: Box::new(traj),
            });
        }
        traj.push(t, &x);
    }
    Ok(traj)
}

/// `g(φ_t(x₀))` at every sample.
pub fn observable_along_flow(g: &Polynomial, traj: &PhaseTrajectory) -> Result<Vec<(f64, f64)>> {
    if g.n() != traj.n {
        return Err(Error::PhaseDimension {
            left: g.n(),
            right: traj.n,
        });
    }
    Ok(traj
        .samples
        .iter()
        .map(|s| (s.t, g.eval(&s.state())))
        .collect())
}

/// Named Hamiltonians and observables used by examples and campaigns.
pub mod presets {
    use super::Polynomial;

    fn parse(s: &str, n: usize) -> Polynomial {
        Polynomial::parse(s, n).expect("preset parses")
    }

    /// `p²/2`.
    pub fn free_particle() -> Polynomial {
        parse("0.5*p1^2", 1)
    }

    /// `(p² + q²)/2`.
    pub fn oscillator() -> Polynomial {
        parse("0.5*p1^2 + 0.5*q1^2", 1)
    }

    /// `(p₁² + p₂²)/2 + (q₁² + q₂²)/2`.
    pub fn central_oscillator() -> Polynomial {
        parse("0.5*p1^2 + 0.5*p2^2 + 0.5*q1^2 + 0.5*q2^2", 2)
    }

    /// `q₁p₂ − q₂p₁`.
    pub fn angular_momentum() -> Polynomial {
        parse("q1*p2 - q2*p1", 2)
    }

    /// `p²/2 − q⁴/4`: unbounded-below potential, trajectories escape in finite time.
    pub fn runaway() -> Polynomial {
        parse("0.5*p1^2 - 0.25*q1^4", 1)
    }
}

#[cfg(test)]
mod tests {
    use super::presets::*;
    use super::*;

    #[test]
    fn free_particle_is_exact() {
        let traj = hamiltonian_vector_flow(&free_particle(), &[0.0, 1.0], 1.0, 10).unwrap();
        let end = traj.last();
        assert!((end.q[0] - 1.0).abs() < 1e-10 && (end.p[0] - 1.0).abs() < 1e-10);
        let q = Polynomial::q(1, 0);
        for (t, v) in observable_along_flow(&q, &traj).unwrap() {
            assert!((v - t).abs() < 1e-12);
        }
    }

    #[test]
    fn oscillator_returns_after_one_period() {
        let traj =
            hamiltonian_vector_flow(&oscillator(), &[1.0, 0.0], 2.0 * std::f64::consts::PI, 1000)
                .unwrap();
        let end = traj.last();
        assert!((end.q[0] - 1.0).abs() < 1e-6 && end.p[0].abs() < 1e-6);
        for (_, e) in observable_along_flow(&oscillator(), &traj).unwrap() {
            assert!((e - 0.5).abs() < 1e-6);
        }
    }

    #[test]
    fn sign_convention_rotates_clockwise_in_q_p() {
        // q̇ = p, ṗ = −q: from (1, 0) the momentum goes negative first
        let traj = hamiltonian_vector_flow(&oscillator(), &[1.0, 0.0], 0.1, 10).unwrap();
        assert!(traj.last().p[0] < 0.0);
        assert!((traj.last().q[0] - 0.1f64.cos()).abs() < 1e-10);
    }

    #[test]
    fn zero_hamiltonian_is_stationary() {
        let traj =
            hamiltonian_vector_flow(&Polynomial::zero(2), &[1.0, 2.0, 3.0, 4.0], 5.0, 7).unwrap();
        assert_eq!(traj.samples.len(), 8);
        assert!(traj
            .samples
            .iter()
            .all(|s| s.state() == vec![1.0, 2.0, 3.0, 4.0]));
        assert!(traj.samples.windows(2).all(|w| w[0].t < w[1].t));
        let ones = observable_along_flow(&Polynomial::constant(2, 1.0), &traj).unwrap();
        assert!(ones.iter().all(|(_, v)| *v == 1.0));
    }

    #[test]
    fn runaway_potential_blows_up_with_partial_data() {
        match hamiltonian_vector_flow(&runaway(), &[1.0, 1.0], 10.0, 10_000) {
            Err(Error::BlowUp { t, partial }) => {
                assert!(t < 10.0);
                assert!(!partial.samples.is_empty());
                assert!(partial
                    .samples
                    .iter()
                    .all(|s| s.state().iter().all(|v| v.is_finite())));
            }
            other => panic!("expected blow-up, got {other:?}"),
        }
    }

    #[test]
    fn backwards_integration_inverts_forwards() {
        let x0 = [0.3, -0.7, 1.1, 0.2];
        let fwd = hamiltonian_vector_flow(&central_oscillator(), &x0, 1.5, 2000).unwrap();
        let back = hamiltonian_vector_flow(&central_oscillator(), &fwd.last().state(), -1.5, 2000)
            .unwrap();
        for (a, b) in back.last().state().iter().zip(x0) {
            assert!((a - b).abs() < 1e-10);
        }
    }

    #[test]
    fn dimension_checks() {
        assert!(matches!(
            hamiltonian_vector_flow(&oscillator(), &[1.0], 1.0, 1),
            Err(Error::PhaseDimension { .. })
        ));
        let traj = hamiltonian_vector_flow(&oscillator(), &[1.0, 0.0], 1.0, 1).unwrap();
        assert!(observable_along_flow(&angular_momentum(), &traj).is_err());
    }

    #[test]
    fn trajectory_rows_serialize() {
        let traj = hamiltonian_vector_flow(&free_particle(), &[0.0, 1.0], 1.0, 2).unwrap();
        let v = serde_json::to_value(&traj).unwrap();
        assert_eq!(
            v["samples"][2],
            serde_json::json!({"t": 1.0, "q": [1.0], "p": [1.0]})
        );
        assert_eq!(v["method"], "rk4");
    }
}
