//! Polynomial Poisson algebra on ℝ²ⁿ with the canonical symplectic bracket,
//! and RK4 integration of Hamiltonian flows.

mod flow;
mod polynomial;

pub use flow::{
    hamiltonian_vector_flow, observable_along_flow, presets, PhasePoint, PhaseTrajectory,
    BLOW_UP_THRESHOLD,
};
pub use polynomial::{poisson_bracket, Polynomial};
