//! Order derivations and their one-parameter groups.
//!
//! A self-adjoint derivation is multiplication `δ_H(b) = H ∘ b`; its flow is
//! `exp(sδ_H)(b) = U_{exp(sH/2)}(b)`. A skew derivation is any linear map
//! satisfying the Leibniz law for `∘`, stored as a matrix on canonical
//! coordinates; its flow is the matrix exponential.

use nalgebra::{DMatrix, DVector};
use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::jordan::realize::{from_complex_matrix, to_complex_matrix};
use crate::jordan::{Algebra, JordanElement};
use crate::spectral;

/// Residual above which a matrix is not accepted as representing `b ↦ H ∘ b`.
pub const SELF_ADJOINT_RESIDUAL: f64 = 1e-8;
/// Relative Leibniz-law residual accepted for skew derivations.
pub const LEIBNIZ_TOL: f64 = 1e-10;

#[derive(Clone, Debug, PartialEq)]
pub enum DerivationKind {
    SelfAdjoint(JordanElement),
    Skew(DMatrix<f64>),
}

#[derive(Clone, Debug, PartialEq)]
pub struct OrderDerivation {
    algebra: Algebra,
    kind: DerivationKind,
}

/// `max |δ(eᵢ∘eⱼ) − δeᵢ∘eⱼ − eᵢ∘δeⱼ|` over basis pairs, together with `|δ(1)|`.
pub fn leibniz_residual(algebra: &Algebra, m: &DMatrix<f64>) -> f64 {
    let basis = JordanElement::basis_elements(algebra);
    let images: Vec<JordanElement> = (0..basis.len())
        .map(|j| JordanElement::from_vector(algebra, &m.column(j).into_owned()))
        .collect();
    let apply = |e: &JordanElement| JordanElement::from_vector(algebra, &(m * e.to_vector()));
    let mut worst = apply(&JordanElement::unit(algebra)).max_abs();
    for i in 0..basis.len() {
        for j in i..basis.len() {
            let lhs = apply(&basis[i].circ(&basis[j]));
            let rhs = &images[i].circ(&basis[j]) + &basis[i].circ(&images[j]);
            worst = worst.max((&lhs - &rhs).max_abs());
        }
    }
    worst
}

fn matrix_scale(m: &DMatrix<f64>) -> f64 {
    m.iter().fold(1.0f64, |a, v| a.max(v.abs()))
}

impl OrderDerivation {
    /// `δ_H(b) = H ∘ b`.
    pub fn self_adjoint(h: JordanElement) -> Self {
        OrderDerivation {
            algebra: h.algebra().clone(),
            kind: DerivationKind::SelfAdjoint(h),
        }
    }

    /// Skew derivation from a coordinate matrix, checked against the Leibniz law.
    pub fn skew(algebra: &Algebra, m: DMatrix<f64>) -> Result<Self> {
        let d = algebra.dim();
        if m.nrows() != d || m.ncols() != d {
            return Err(Error::CoordinateLength {
                expected: d,
                got: m.nrows().max(m.ncols()),
            });
        }
        let r = leibniz_residual(algebra, &m);
        if r > LEIBNIZ_TOL * matrix_scale(&m) {
            return Err(Error::NotADerivation(r));
        }
        Ok(OrderDerivation {
            algebra: algebra.clone(),
            kind: DerivationKind::Skew(m),
        })
    }

    pub(crate) fn skew_unchecked(algebra: &Algebra, m: DMatrix<f64>) -> Self {
        OrderDerivation {
            algebra: algebra.clone(),
            kind: DerivationKind::Skew(m),
        }
    }

    pub fn zero(algebra: &Algebra) -> Self {
        Self::skew_unchecked(algebra, DMatrix::zeros(algebra.dim(), algebra.dim()))
    }

    /// Inner derivation `[δ_a, δ_b](c) = a∘(b∘c) − b∘(a∘c)`.
    pub fn inner(a: &JordanElement, b: &JordanElement) -> Result<Self> {
        a.same_algebra(b)?;
        let (la, lb) = (a.multiplication_operator(), b.multiplication_operator());
        Ok(Self::skew_unchecked(a.algebra(), &la * &lb - &lb * &la))
    }

    /// `λ_k(b) = kb − bk` for a skew-Hermitian `k` acting on `HermR(n)` or `HermC(n)`.
    pub fn from_ambient_skew(algebra: &Algebra, k: &DMatrix<Complex64>) -> Result<Self> {
        let n = match algebra {
            Algebra::HermC { n } => *n,
            Algebra::HermR { n } if k.iter().all(|z| z.im == 0.0) => *n,
            other => {
                return Err(Error::Unsupported(format!(
                    "no ambient skew generators on {other}"
                )))
            }
        };
        if k.nrows() != n || k.ncols() != n {
            return Err(Error::CoordinateLength {
                expected: n,
                got: k.nrows(),
            });
        }
        let herm = (k + k.adjoint())
            .iter()
            .fold(0.0f64, |m, z| m.max(z.norm()));
        if herm > 1e-12 * (1.0 + k.iter().fold(0.0f64, |m, z| m.max(z.norm()))) {
            return Err(Error::InvalidAlgebra(
                "generator is not skew-Hermitian".into(),
            ));
        }
        let d = algebra.dim();
        let mut m = DMatrix::zeros(d, d);
        for (j, e) in JordanElement::basis_elements(algebra).iter().enumerate() {
            let b = to_complex_matrix(e)?;
            let img = from_complex_matrix(algebra, &(k * &b - &b * k))?;
            m.column_mut(j).copy_from_slice(img.coords());
        }
        Ok(Self::skew_unchecked(algebra, m))
    }

    pub fn algebra(&self) -> &Algebra {
        &self.algebra
    }

    pub fn kind(&self) -> &DerivationKind {
        &self.kind
    }

    pub fn is_self_adjoint(&self) -> bool {
        matches!(self.kind, DerivationKind::SelfAdjoint(_))
    }

    /// The generating observable of a self-adjoint derivation.
    pub fn hamiltonian(&self) -> Option<&JordanElement> {
        match &self.kind {
            DerivationKind::SelfAdjoint(h) => Some(h),
            DerivationKind::Skew(_) => None,
        }
    }

    /// Coordinate matrix of the map (for a self-adjoint derivation, of `b ↦ H ∘ b`).
    pub fn matrix(&self) -> DMatrix<f64> {
        match &self.kind {
            DerivationKind::SelfAdjoint(h) => h.multiplication_operator(),
            DerivationKind::Skew(m) => m.clone(),
        }
    }

    pub fn apply(&self, b: &JordanElement) -> Result<JordanElement> {
        if b.algebra() != &self.algebra {
            return Err(Error::IncompatibleAlgebras {
                left: self.algebra.to_string(),
                right: b.algebra().to_string(),
            });
        }
        Ok(match &self.kind {
            DerivationKind::SelfAdjoint(h) => h.circ(b),
            DerivationKind::Skew(m) => {
                JordanElement::from_vector(&self.algebra, &(m * b.to_vector()))
            }
        })
    }

    pub fn scale(&self, s: f64) -> Self {
        match &self.kind {
            DerivationKind::SelfAdjoint(h) => Self::self_adjoint(h.scale(s)),
            DerivationKind::Skew(m) => Self::skew_unchecked(&self.algebra, m * s),
        }
    }
}

pub fn apply_derivation(delta: &OrderDerivation, b: &JordanElement) -> Result<JordanElement> {
    delta.apply(b)
}

/// `exp(sδ_H)(b) = U_{exp(sH/2)}(b)`.
pub fn flow_self_adjoint(h: &JordanElement, s: f64, b: &JordanElement) -> Result<JordanElement> {
    h.same_algebra(b)?;
    Ok(spectral::exp(&h.scale(0.5 * s)).quadratic(b))
}

/// `exp(tδ)(b)` for a skew derivation, by the matrix exponential.
pub fn flow_skew(delta: &OrderDerivation, t: f64, b: &JordanElement) -> Result<JordanElement> {
    let m = match &delta.kind {
        DerivationKind::Skew(m) => m,
        DerivationKind::SelfAdjoint(_) => {
            return Err(Error::WrongDerivationKind { expected: "skew" })
        }
    };
    if b.algebra() != &delta.algebra {
        return Err(Error::IncompatibleAlgebras {
            left: delta.algebra.to_string(),
            right: b.algebra().to_string(),
        });
    }
    if t == 0.0 {
        return Ok(b.clone());
    }
    let e = (m * t).exp();
    Ok(JordanElement::from_vector(
        b.algebra(),
        &(e * b.to_vector()),
    ))
}

/// Closed-form `exp(tδ)(b)` for either kind.
pub fn flow(delta: &OrderDerivation, t: f64, b: &JordanElement) -> Result<JordanElement> {
    match &delta.kind {
        DerivationKind::SelfAdjoint(h) => flow_self_adjoint(h, t, b),
        DerivationKind::Skew(_) => flow_skew(delta, t, b),
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum FlowMethod {
    ClosedForm,
    Integrated,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct FlowSample {
    pub t: f64,
    pub coords: Vec<f64>,
}

/// Sampled orbit `t ↦ F_t(b)`; serializes as rows `{t, coords}`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct FlowResult {
    pub algebra: Algebra,
    pub method: FlowMethod,
    pub samples: Vec<FlowSample>,
}

impl FlowResult {
    pub fn element(&self, i: usize) -> JordanElement {
        JordanElement::from_vector(
            &self.algebra,
            &DVector::from_column_slice(&self.samples[i].coords),
        )
    }

    pub fn last(&self) -> JordanElement {
        self.element(self.samples.len() - 1)
    }
}

/// Closed-form orbit at the given parameter values.
pub fn closed_form_flow(
    delta: &OrderDerivation,
    b: &JordanElement,
    ts: &[f64],
) -> Result<FlowResult> {
    let samples = ts
        .iter()
        .map(|&t| {
            flow(delta, t, b).map(|e| FlowSample {
                t,
                coords: e.into_coords(),
            })
        })
        .collect::<Result<_>>()?;
    Ok(FlowResult {
        algebra: b.algebra().clone(),
        method: FlowMethod::ClosedForm,
        samples,
    })
}

/// Fixed-step RK4 for `dF/dt = δ(F)`, `F(0) = b`, recording every step.
pub fn integrate_flow(
    delta: &OrderDerivation,
    b: &JordanElement,
    t_end: f64,
    steps: usize,
) -> Result<FlowResult> {
    if steps == 0 {
        return Err(Error::Internal(
            "integration needs at least one step".into(),
        ));
    }
    if b.algebra() != &delta.algebra {
        return Err(Error::IncompatibleAlgebras {
            left: delta.algebra.to_string(),
            right: b.algebra().to_string(),
        });
    }
    let m = delta.matrix();
    let dt = t_end / steps as f64;
    let mut x = b.to_vector();
    let mut samples = Vec::with_capacity(steps + 1);
    samples.push(FlowSample {
        t: 0.0,
        coords: x.iter().copied().collect(),
    });
    for k in 1..=steps {
        let k1 = &m * &x;
        let k2 = &m * (&x + &k1 * (0.5 * dt));
        let k3 = &m * (&x + &k2 * (0.5 * dt));
        let k4 = &m * (&x + &k3 * dt);
        x += (k1 + k2 * 2.0 + k3 * 2.0 + k4) * (dt / 6.0);
        if let Some(i) = x.iter().position(|v| !v.is_finite()) {
            return Err(Error::NonFinite(i));
        }
        samples.push(FlowSample {
            t: k as f64 * dt,
            coords: x.iter().copied().collect(),
        });
    }
    Ok(FlowResult {
        algebra: b.algebra().clone(),
        method: FlowMethod::Integrated,
        samples,
    })
}

/// Element `h` minimizing `‖L_h − M‖_F` over coordinates, with the attained residual.
pub fn representing_element(algebra: &Algebra, m: &DMatrix<f64>) -> (JordanElement, f64) {
    let d = algebra.dim();
    let mut design = DMatrix::zeros(d * d, d);
    for (k, e) in JordanElement::basis_elements(algebra).iter().enumerate() {
        design
            .column_mut(k)
            .copy_from_slice(e.multiplication_operator().as_slice());
    }
    let target = DVector::from_column_slice(m.as_slice());
    let svd = design.clone().svd(true, true);
    let h = svd
        .solve(&target, 1e-12)
        .expect("SVD computed with both factors");
    let residual = (&design * &h - &target).norm();
    (JordanElement::from_vector(algebra, &h), residual)
}

/// Graded commutator `[δ₁, δ₂] = δ₁δ₂ − δ₂δ₁`.
///
/// `[skew, skew]` and `[self, self]` are skew; a mixed bracket is recognised as
/// `δ_h` for the least-squares representing `h`.
pub fn bracket_derivations(d1: &OrderDerivation, d2: &OrderDerivation) -> Result<OrderDerivation> {
    if d1.algebra != d2.algebra {
        return Err(Error::IncompatibleAlgebras {
            left: d1.algebra.to_string(),
            right: d2.algebra.to_string(),
        });
    }
    let (m1, m2) = (d1.matrix(), d2.matrix());
    let c = &m1 * &m2 - &m2 * &m1;
    let alg = &d1.algebra;
    if d1.is_self_adjoint() != d2.is_self_adjoint() {
        let (h, residual) = representing_element(alg, &c);
        if residual > SELF_ADJOINT_RESIDUAL * matrix_scale(&c) {
            return Err(Error::Internal(format!(
                "mixed bracket is not a multiplication operator (residual {residual:e})"
            )));
        }
        return Ok(OrderDerivation::self_adjoint(h));
    }
    let r = leibniz_residual(alg, &c);
    if r > LEIBNIZ_TOL * matrix_scale(&c).max(matrix_scale(&m1) * matrix_scale(&m2)) {
        return Err(Error::Internal(format!(
            "commutator fails the Leibniz law (residual {r:e})"
        )));
    }
    Ok(OrderDerivation::skew_unchecked(alg, c))
}
