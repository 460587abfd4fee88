//! Matrix realizations of elements of the Hermitian families.

use nalgebra::DMatrix;
use num_complex::Complex64;

use super::algebra::{entry_dim, Algebra};
use super::element::JordanElement;
use super::matrix::SquareMatrix;
use crate::division::{DivisionAlgebra, Octonion, Quaternion};
use crate::error::{Error, Result};

fn unsupported(alg: &Algebra, what: &str) -> Error {
    Error::Unsupported(format!("{alg} has no {what} realization"))
}

/// Generic realization over the entry algebra `K`; the family must match `K`.
pub fn to_matrix<K: DivisionAlgebra>(a: &JordanElement) -> Result<SquareMatrix<K>> {
    match entry_dim(a.algebra()) {
        Some((n, d)) if d == K::DIM => Ok(SquareMatrix::from_hermitian_coords(n, a.coords())),
        _ => Err(unsupported(a.algebra(), "matching matrix")),
    }
}

/// Element with the coordinates of the Hermitian part of `m`.
pub fn from_matrix<K: DivisionAlgebra>(
    algebra: &Algebra,
    m: &SquareMatrix<K>,
) -> Result<JordanElement> {
    match entry_dim(algebra) {
        Some((n, d)) if d == K::DIM && n == m.size() => {
            JordanElement::new(algebra.clone(), m.hermitian_coords())
        }
        _ => Err(unsupported(algebra, "matching matrix")),
    }
}

/// `HermR(n)` and `HermC(n)` as complex matrices.
pub fn to_complex_matrix(a: &JordanElement) -> Result<DMatrix<Complex64>> {
    match a.algebra() {
        Algebra::HermR { n } => {
            let m = SquareMatrix::<f64>::from_hermitian_coords(*n, a.coords());
            Ok(DMatrix::from_fn(*n, *n, |i, j| {
                Complex64::new(m.get(i, j), 0.0)
            }))
        }
        Algebra::HermC { n } => {
            let m = SquareMatrix::<Complex64>::from_hermitian_coords(*n, a.coords());
            Ok(DMatrix::from_fn(*n, *n, |i, j| m.get(i, j)))
        }
        other => Err(unsupported(other, "complex matrix")),
    }
}

/// Hermitian part of a complex matrix as an element of `HermC(n)`, or, for
/// `HermR(n)`, the real part of the Hermitian part.
pub fn from_complex_matrix(algebra: &Algebra, m: &DMatrix<Complex64>) -> Result<JordanElement> {
    match algebra {
        Algebra::HermR { n } if m.nrows() == *n && m.ncols() == *n => {
            let sq = SquareMatrix::<f64>::from_fn(*n, |i, j| m[(i, j)].re);
            from_matrix(algebra, &sq)
        }
        Algebra::HermC { n } if m.nrows() == *n && m.ncols() == *n => {
            let sq = SquareMatrix::<Complex64>::from_fn(*n, |i, j| m[(i, j)]);
            from_matrix(algebra, &sq)
        }
        other => Err(unsupported(other, "complex matrix")),
    }
}

pub fn to_real_matrix(a: &JordanElement) -> Result<DMatrix<f64>> {
    match a.algebra() {
        Algebra::HermR { n } => {
            let m = SquareMatrix::<f64>::from_hermitian_coords(*n, a.coords());
            Ok(DMatrix::from_fn(*n, *n, |i, j| m.get(i, j)))
        }
        other => Err(unsupported(other, "real matrix")),
    }
}

/// Complex adjoint representation of a quaternionic matrix `A + B j`:
///
/// ```text
/// χ(A + B j) = [  A   B ]
///              [ −B̄   Ā ]
/// ```
///
/// It is a real-algebra homomorphism taking quaternionic conjugate transpose to
/// complex conjugate transpose.
pub fn quaternion_adjoint(m: &SquareMatrix<Quaternion>) -> DMatrix<Complex64> {
    let n = m.size();
    let mut out = DMatrix::zeros(2 * n, 2 * n);
    for i in 0..n {
        for j in 0..n {
            let (z1, z2) = m.get(i, j).to_complex_pair();
            out[(i, j)] = z1;
            out[(i, n + j)] = z2;
            out[(n + i, j)] = -z2.conj();
            out[(n + i, n + j)] = z1.conj();
        }
    }
    out
}

/// Inverse of [`quaternion_adjoint`] read off the top block row.
pub fn from_quaternion_adjoint(c: &DMatrix<Complex64>) -> SquareMatrix<Quaternion> {
    let n = c.nrows() / 2;
    SquareMatrix::from_fn(n, |i, j| {
        Quaternion::from_complex_pair(c[(i, j)], c[(i, n + j)])
    })
}

pub fn to_quaternion_matrix(a: &JordanElement) -> Result<SquareMatrix<Quaternion>> {
    to_matrix::<Quaternion>(a)
}

pub fn to_octonion_matrix(a: &JordanElement) -> Result<SquareMatrix<Octonion>> {
    to_matrix::<Octonion>(a)
}

impl<K: DivisionAlgebra> SquareMatrix<K> {
    pub fn from_fn(n: usize, f: impl Fn(usize, usize) -> K) -> Self {
        let mut m = Self::zeros(n);
        for i in 0..n {
            for j in 0..n {
                m.set(i, j, f(i, j));
            }
        }
        m
    }
}
