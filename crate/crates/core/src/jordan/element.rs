use std::ops::{Add, Mul, Neg, Sub};

use nalgebra::{DMatrix, DVector};
use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use super::algebra::Algebra;
use super::matrix::hermitian_jordan_product;
use crate::division::{Octonion, Quaternion};
use crate::error::{Error, Result};

/// An observable: coordinates relative to the canonical basis of its algebra.
///
/// Serializes as `{"family": ..., "params": ..., "coords": [...]}`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "ElementRepr", into = "ElementRepr")]
pub struct JordanElement {
    algebra: Algebra,
    coords: Vec<f64>,
}

#[derive(Serialize, Deserialize)]
struct ElementRepr {
    #[serde(flatten)]
    algebra: Algebra,
    coords: Vec<f64>,
}

impl TryFrom<ElementRepr> for JordanElement {
    type Error = Error;
    fn try_from(r: ElementRepr) -> Result<Self> {
        JordanElement::new(r.algebra, r.coords)
    }
}

impl From<JordanElement> for ElementRepr {
    fn from(e: JordanElement) -> Self {
        ElementRepr {
            algebra: e.algebra,
            coords: e.coords,
        }
    }
}

pub(crate) fn ensure_same(a: &Algebra, b: &Algebra) -> Result<()> {
    if a != b {
        return Err(Error::IncompatibleAlgebras {
            left: a.to_string(),
            right: b.to_string(),
        });
    }
    Ok(())
}

fn product_into(alg: &Algebra, a: &[f64], b: &[f64], out: &mut [f64]) {
    match alg {
        Algebra::HermR { n } => hermitian_jordan_product::<f64>(*n, a, b, out),
        Algebra::HermC { n } => hermitian_jordan_product::<Complex64>(*n, a, b, out),
        Algebra::HermH { n } => hermitian_jordan_product::<Quaternion>(*n, a, b, out),
        Algebra::Albert => hermitian_jordan_product::<Octonion>(3, a, b, out),
        Algebra::Spin { n } => {
            // (x, t) ∘ (y, s) = (t y + s x, x·y + t s)
            let (t, s) = (a[*n], b[*n]);
            let mut dot = t * s;
            for i in 0..*n {
                out[i] = t * b[i] + s * a[i];
                dot += a[i] * b[i];
            }
            out[*n] = dot;
        }
        Algebra::DirectSum { components } => {
            let mut off = 0;
            for c in components {
                let d = c.dim();
                product_into(
                    c,
                    &a[off..off + d],
                    &b[off..off + d],
                    &mut out[off..off + d],
                );
                off += d;
            }
        }
    }
}

fn unit_into(alg: &Algebra, out: &mut [f64]) {
    match alg {
        Algebra::HermR { n } | Algebra::HermC { n } | Algebra::HermH { n } => out[..*n].fill(1.0),
        Algebra::Albert => out[..3].fill(1.0),
        Algebra::Spin { n } => out[*n] = 1.0,
        Algebra::DirectSum { components } => {
            let mut off = 0;
            for c in components {
                unit_into(c, &mut out[off..off + c.dim()]);
                off += c.dim();
            }
        }
    }
}

fn trace_of(alg: &Algebra, a: &[f64]) -> f64 {
    match alg {
        Algebra::HermR { n } | Algebra::HermC { n } | Algebra::HermH { n } => a[..*n].iter().sum(),
        Algebra::Albert => a[..3].iter().sum(),
        Algebra::Spin { n } => 2.0 * a[*n],
        Algebra::DirectSum { components } => {
            let mut off = 0;
            components
                .iter()
                .map(|c| {
                    let t = trace_of(c, &a[off..off + c.dim()]);
                    off += c.dim();
                    t
                })
                .sum()
        }
    }
}

impl JordanElement {
    pub fn new(algebra: Algebra, coords: Vec<f64>) -> Result<Self> {
        algebra.validate()?;
        if coords.len() != algebra.dim() {
            return Err(Error::CoordinateLength {
                expected: algebra.dim(),
                got: coords.len(),
            });
        }
        if let Some(i) = coords.iter().position(|c| !c.is_finite()) {
            return Err(Error::NonFinite(i));
        }
        Ok(JordanElement { algebra, coords })
    }

    /// Skips validation; callers guarantee length and finiteness.
    pub(crate) fn from_raw(algebra: Algebra, coords: Vec<f64>) -> Self {
        debug_assert_eq!(coords.len(), algebra.dim());
        JordanElement { algebra, coords }
    }

    pub fn zero(algebra: &Algebra) -> Self {
        JordanElement {
            algebra: algebra.clone(),
            coords: vec![0.0; algebra.dim()],
        }
    }

    pub fn unit(algebra: &Algebra) -> Self {
        let mut coords = vec![0.0; algebra.dim()];
        unit_into(algebra, &mut coords);
        JordanElement {
            algebra: algebra.clone(),
            coords,
        }
    }

    pub fn basis(algebra: &Algebra, i: usize) -> Self {
        let mut e = Self::zero(algebra);
        e.coords[i] = 1.0;
        e
    }

    pub fn basis_elements(algebra: &Algebra) -> Vec<Self> {
        (0..algebra.dim())
            .map(|i| Self::basis(algebra, i))
            .collect()
    }

    pub fn algebra(&self) -> &Algebra {
        &self.algebra
    }

    pub fn coords(&self) -> &[f64] {
        &self.coords
    }

    pub fn into_coords(self) -> Vec<f64> {
        self.coords
    }

    pub fn dim(&self) -> usize {
        self.coords.len()
    }

    pub fn same_algebra(&self, other: &Self) -> Result<()> {
        ensure_same(&self.algebra, &other.algebra)
    }

    /// Jordan product. Panics if the algebras differ; see [`jordan_product`]
    /// for the checked form.
    pub fn circ(&self, other: &Self) -> Self {
        assert_eq!(
            self.algebra, other.algebra,
            "Jordan product of elements from different algebras"
        );
        let mut out = vec![0.0; self.coords.len()];
        product_into(&self.algebra, &self.coords, &other.coords, &mut out);
        JordanElement {
            algebra: self.algebra.clone(),
            coords: out,
        }
    }

    pub fn square(&self) -> Self {
        self.circ(self)
    }

    /// `aⁿ` with `a⁰ = 1`.
    pub fn power(&self, n: u32) -> Self {
        let mut acc = Self::unit(&self.algebra);
        for _ in 0..n {
            acc = self.circ(&acc);
        }
        acc
    }

    /// Quadratic representation `U_a(b) = 2 a∘(a∘b) − (a∘a)∘b`.
    pub fn quadratic(&self, b: &Self) -> Self {
        let ab = self.circ(b);
        let t1 = self.circ(&ab);
        let t2 = self.square().circ(b);
        &(&t1 * 2.0) - &t2
    }

    /// Generic trace: sum of eigenvalues counted with multiplicity.
    pub fn trace(&self) -> f64 {
        trace_of(&self.algebra, &self.coords)
    }

    /// Trace form `tr(a ∘ b)`; for the matrix families this is `Re tr(ab)`.
    pub fn trace_form(&self, other: &Self) -> f64 {
        self.circ(other).trace()
    }

    /// Euclidean norm of the coordinate vector.
    pub fn coord_norm(&self) -> f64 {
        self.coords.iter().map(|c| c * c).sum::<f64>().sqrt()
    }

    pub fn max_abs(&self) -> f64 {
        self.coords.iter().fold(0.0, |m, c| m.max(c.abs()))
    }

    pub fn scale(&self, s: f64) -> Self {
        JordanElement {
            algebra: self.algebra.clone(),
            coords: self.coords.iter().map(|c| c * s).collect(),
        }
    }

    pub fn to_vector(&self) -> DVector<f64> {
        DVector::from_column_slice(&self.coords)
    }

    pub fn from_vector(algebra: &Algebra, v: &DVector<f64>) -> Self {
        JordanElement::from_raw(algebra.clone(), v.iter().copied().collect())
    }

    /// Matrix of `b ↦ self ∘ b` in canonical coordinates.
    pub fn multiplication_operator(&self) -> DMatrix<f64> {
        let d = self.dim();
        let mut m = DMatrix::zeros(d, d);
        let mut out = vec![0.0; d];
        let mut e = vec![0.0; d];
        for j in 0..d {
            e[j] = 1.0;
            product_into(&self.algebra, &self.coords, &e, &mut out);
            m.column_mut(j).copy_from_slice(&out);
            e[j] = 0.0;
        }
        m
    }

    /// Embeds this element into slot `index` of a direct sum.
    pub fn embed(&self, sum: &Algebra, index: usize) -> Result<Self> {
        let offsets = sum.component_offsets();
        let (comp, off) = offsets
            .get(index)
            .ok_or_else(|| Error::InvalidAlgebra(format!("{sum} has no component {index}")))?;
        ensure_same(comp, &self.algebra)?;
        let mut out = Self::zero(sum);
        out.coords[*off..*off + self.dim()].copy_from_slice(&self.coords);
        Ok(out)
    }

    /// Component `index` of a direct-sum element.
    pub fn component(&self, index: usize) -> Result<Self> {
        let offsets = self.algebra.component_offsets();
        let (comp, off) = offsets.get(index).ok_or_else(|| {
            Error::InvalidAlgebra(format!("{} has no component {index}", self.algebra))
        })?;
        Ok(JordanElement::from_raw(
            (*comp).clone(),
            self.coords[*off..*off + comp.dim()].to_vec(),
        ))
    }

    /// `Σ cᵢ aᵢ` for a polynomial with coefficients `c₀, c₁, …`.
    pub fn polynomial(&self, coeffs: &[f64]) -> Self {
        let mut acc = Self::zero(&self.algebra);
        let mut pow = Self::unit(&self.algebra);
        for (k, c) in coeffs.iter().enumerate() {
            if k > 0 {
                pow = self.circ(&pow);
            }
            acc = &acc + &pow.scale(*c);
        }
        acc
    }
}

macro_rules! binop {
    ($tr:ident, $f:ident, $op:tt) => {
        impl $tr for &JordanElement {
            type Output = JordanElement;
            fn $f(self, o: &JordanElement) -> JordanElement {
                assert_eq!(self.algebra, o.algebra, "arithmetic on elements from different algebras");
                JordanElement {
                    algebra: self.algebra.clone(),
                    coords: self.coords.iter().zip(&o.coords).map(|(a, b)| a $op b).collect(),
                }
            }
        }
        impl $tr for JordanElement {
            type Output = JordanElement;
            fn $f(self, o: JordanElement) -> JordanElement {
                &self $op &o
            }
        }
    };
}

binop!(Add, add, +);
binop!(Sub, sub, -);

impl Mul<f64> for &JordanElement {
    type Output = JordanElement;
    fn mul(self, s: f64) -> JordanElement {
        self.scale(s)
    }
}

impl Mul<f64> for JordanElement {
    type Output = JordanElement;
    fn mul(self, s: f64) -> JordanElement {
        self.scale(s)
    }
}

impl Neg for &JordanElement {
    type Output = JordanElement;
    fn neg(self) -> JordanElement {
        self.scale(-1.0)
    }
}

impl Neg for JordanElement {
    type Output = JordanElement;
    fn neg(self) -> JordanElement {
        self.scale(-1.0)
    }
}

/// Checked Jordan product.
pub fn jordan_product(a: &JordanElement, b: &JordanElement) -> Result<JordanElement> {
    a.same_algebra(b)?;
    Ok(a.circ(b))
}

pub fn unit(algebra: &Algebra) -> JordanElement {
    JordanElement::unit(algebra)
}

pub fn jpower(a: &JordanElement, n: u32) -> JordanElement {
    a.power(n)
}

/// Checked quadratic representation `U_a(b)`.
pub fn quadratic_rep(a: &JordanElement, b: &JordanElement) -> Result<JordanElement> {
    a.same_algebra(b)?;
    Ok(a.quadratic(b))
}

pub fn trace_form(a: &JordanElement, b: &JordanElement) -> Result<f64> {
    a.same_algebra(b)?;
    Ok(a.trace_form(b))
}
