use std::ops::{Add, Sub};

use crate::division::DivisionAlgebra;

/// Dense square matrix over a division algebra. Used for the matrix
/// realizations of the Hermitian families, including the octonionic one,
/// so products are computed entrywise without assuming associativity.
#[derive(Clone, Debug, PartialEq)]
pub struct SquareMatrix<K> {
    n: usize,
    data: Vec<K>,
}

impl<K: DivisionAlgebra> SquareMatrix<K> {
    pub fn zeros(n: usize) -> Self {
        SquareMatrix {
            n,
            data: vec![K::zero(); n * n],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n);
        for i in 0..n {
            m.data[i * n + i] = K::one();
        }
        m
    }

    pub fn size(&self) -> usize {
        self.n
    }

    pub fn get(&self, i: usize, j: usize) -> K {
        self.data[i * self.n + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: K) {
        self.data[i * self.n + j] = v;
    }

    /// Builds the Hermitian matrix with the given canonical coordinates.
    pub fn from_hermitian_coords(n: usize, coords: &[f64]) -> Self {
        debug_assert_eq!(coords.len(), n + K::DIM * n * (n - 1) / 2);
        let mut m = Self::zeros(n);
        for (i, &c) in coords.iter().take(n).enumerate() {
            m.data[i * n + i] = K::from_real(c);
        }
        let mut off = n;
        for i in 0..n {
            for j in i + 1..n {
                let v = K::from_coords(&coords[off..off + K::DIM]);
                m.data[i * n + j] = v;
                m.data[j * n + i] = v.conj();
                off += K::DIM;
            }
        }
        m
    }

    /// Canonical coordinates of the Hermitian part `(M + M*)/2`.
    pub fn hermitian_coords(&self) -> Vec<f64> {
        let n = self.n;
        let mut out = Vec::with_capacity(n + K::DIM * n * (n - 1) / 2);
        for i in 0..n {
            out.push(self.get(i, i).re());
        }
        for i in 0..n {
            for j in i + 1..n {
                let v = (self.get(i, j) + self.get(j, i).conj()).scale(0.5);
                out.extend((0..K::DIM).map(|k| v.coord(k)));
            }
        }
        out
    }

    pub fn conj_transpose(&self) -> Self {
        let n = self.n;
        let mut m = Self::zeros(n);
        for i in 0..n {
            for j in 0..n {
                m.data[j * n + i] = self.data[i * n + j].conj();
            }
        }
        m
    }

    pub fn matmul(&self, other: &Self) -> Self {
        let n = self.n;
        let mut m = Self::zeros(n);
        for i in 0..n {
            for j in 0..n {
                let mut acc = K::zero();
                for k in 0..n {
                    acc = acc + self.data[i * n + k] * other.data[k * n + j];
                }
                m.data[i * n + j] = acc;
            }
        }
        m
    }

    pub fn scale(&self, s: f64) -> Self {
        SquareMatrix {
            n: self.n,
            data: self.data.iter().map(|v| v.scale(s)).collect(),
        }
    }

    pub fn max_abs(&self) -> f64 {
        self.data.iter().map(|v| v.norm()).fold(0.0, f64::max)
    }

    pub fn trace_re(&self) -> f64 {
        (0..self.n).map(|i| self.get(i, i).re()).sum()
    }
}

impl<K: DivisionAlgebra> Add for &SquareMatrix<K> {
    type Output = SquareMatrix<K>;
    fn add(self, o: Self) -> SquareMatrix<K> {
        SquareMatrix {
            n: self.n,
            data: self
                .data
                .iter()
                .zip(&o.data)
                .map(|(a, b)| *a + *b)
                .collect(),
        }
    }
}

impl<K: DivisionAlgebra> Sub for &SquareMatrix<K> {
    type Output = SquareMatrix<K>;
    fn sub(self, o: Self) -> SquareMatrix<K> {
        SquareMatrix {
            n: self.n,
            data: self
                .data
                .iter()
                .zip(&o.data)
                .map(|(a, b)| *a - *b)
                .collect(),
        }
    }
}

/// Symmetrized product `½(ab + ba)` of two Hermitian matrices given in
/// canonical coordinates, written straight into `out`. Only the diagonal and
/// upper triangle are formed since the result is Hermitian.
pub(crate) fn hermitian_jordan_product<K: DivisionAlgebra>(
    n: usize,
    a: &[f64],
    b: &[f64],
    out: &mut [f64],
) {
    let ma = SquareMatrix::<K>::from_hermitian_coords(n, a);
    let mb = SquareMatrix::<K>::from_hermitian_coords(n, b);
    let entry = |i: usize, j: usize| {
        let mut acc = K::zero();
        for k in 0..n {
            acc = acc + ma.get(i, k) * mb.get(k, j) + mb.get(i, k) * ma.get(k, j);
        }
        acc.scale(0.5)
    };
    for (i, slot) in out.iter_mut().enumerate().take(n) {
        *slot = entry(i, i).re();
    }
    let mut off = n;
    for i in 0..n {
        for j in i + 1..n {
            let v = entry(i, j);
            for (k, slot) in out[off..off + K::DIM].iter_mut().enumerate() {
                *slot = v.coord(k);
            }
            off += K::DIM;
        }
    }
}
