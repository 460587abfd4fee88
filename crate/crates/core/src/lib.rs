//! Jordan algebras of observables, their order derivations and flows,
//! dynamical correspondences and the rebuilt complex *-algebra, Gibbs states,
//! and polynomial Poisson algebras, with numerical checks of the
//! equivalence "a generates symmetries of b iff b generates symmetries of a".

pub mod check;
pub mod derivations;
pub mod division;
pub mod error;
pub mod jordan;
pub mod noether;
pub mod poisson;
pub mod random;
pub mod reconstruction;
pub mod spectral;
pub mod states;

pub use error::{Error, Result};
pub use jordan::{Algebra, JordanElement};
