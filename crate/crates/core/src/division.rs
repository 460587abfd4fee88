//! The four normed division algebras used as matrix entries: ℝ, ℂ, ℍ and 𝕆.
//!
//! Octonions are built from pairs of quaternions by Cayley–Dickson doubling
//! with the rule
//!
//! ```text
//! (a, b)(c, d) = (ac − d b̄, ā d + c b),      conj(a, b) = (ā, −b)
//! ```
//!
//! so the basis is `1, e1=i, e2=j, e3=k` (the first quaternion slot) followed by
//! `e4..e7 = (0, 1), (0, i), (0, j), (0, k)`. The resulting table satisfies
//! `e_m e_m = −1` and `e_a e_b = −e_b e_a` for distinct imaginary units; the
//! products `e1 e2 = e3`, `e4 e1 = e5`, `e4 e2 = e6`, `e4 e3 = e7` fix the rest.

use std::fmt::Debug;
use std::ops::{Add, AddAssign, Mul, Neg, Sub};

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Real scalars of one of ℝ, ℂ, ℍ, 𝕆 with a conjugation and a multiplicative norm.
pub trait DivisionAlgebra:
    Copy
    + Debug
    + PartialEq
    + Add<Output = Self>
    + Sub<Output = Self>
    + Mul<Output = Self>
    + Neg<Output = Self>
    + Send
    + Sync
    + 'static
{
    /// Real dimension.
    const DIM: usize;

    fn zero() -> Self;
    fn one() -> Self;
    fn from_real(r: f64) -> Self;
    fn scale(self, s: f64) -> Self;
    fn conj(self) -> Self;
    /// Real part, i.e. the coefficient of 1.
    fn re(self) -> f64;
    /// Coefficient of the `k`-th basis unit (`k = 0` is the real unit).
    fn coord(self, k: usize) -> f64;
    fn from_coords(c: &[f64]) -> Self;

    fn norm_sqr(self) -> f64 {
        (0..Self::DIM).map(|k| self.coord(k).powi(2)).sum()
    }

    fn norm(self) -> f64 {
        self.norm_sqr().sqrt()
    }

    /// The `k`-th basis unit.
    fn unit(k: usize) -> Self {
        let mut c = [0.0; 8];
        c[k] = 1.0;
        Self::from_coords(&c[..Self::DIM])
    }

    fn inv(self) -> Result<Self> {
        let n2 = self.norm_sqr();
        if n2 == 0.0 {
            return Err(Error::DivisionByZero);
        }
        Ok(self.conj().scale(1.0 / n2))
    }
}

impl DivisionAlgebra for f64 {
    const DIM: usize = 1;

    fn zero() -> Self {
        0.0
    }
    fn one() -> Self {
        1.0
    }
    fn from_real(r: f64) -> Self {
        r
    }
    fn scale(self, s: f64) -> Self {
        self * s
    }
    fn conj(self) -> Self {
        self
    }
    fn re(self) -> f64 {
        self
    }
    fn coord(self, k: usize) -> f64 {
        debug_assert_eq!(k, 0);
        self
    }
    fn from_coords(c: &[f64]) -> Self {
        c[0]
    }
}

impl DivisionAlgebra for Complex64 {
    const DIM: usize = 2;

    fn zero() -> Self {
        Complex64::new(0.0, 0.0)
    }
    fn one() -> Self {
        Complex64::new(1.0, 0.0)
    }
    fn from_real(r: f64) -> Self {
        Complex64::new(r, 0.0)
    }
    fn scale(self, s: f64) -> Self {
        self * s
    }
    fn conj(self) -> Self {
        Complex64::conj(&self)
    }
    fn re(self) -> f64 {
        self.re
    }
    fn coord(self, k: usize) -> f64 {
        match k {
            0 => self.re,
            1 => self.im,
            _ => panic!("complex coordinate index {k} out of range"),
        }
    }
    fn from_coords(c: &[f64]) -> Self {
        Complex64::new(c[0], c[1])
    }
}

/// `w + x i + y j + z k` with `i² = j² = k² = ijk = −1`.
#[derive(Clone, Copy, Debug, Default, PartialEq, Serialize, Deserialize)]
pub struct Quaternion {
    pub w: f64,
    pub x: f64,
    pub y: f64,
    pub z: f64,
}

impl Quaternion {
    pub const fn new(w: f64, x: f64, y: f64, z: f64) -> Self {
        Quaternion { w, x, y, z }
    }

    pub const I: Quaternion = Quaternion::new(0.0, 1.0, 0.0, 0.0);
    pub const J: Quaternion = Quaternion::new(0.0, 0.0, 1.0, 0.0);
    pub const K: Quaternion = Quaternion::new(0.0, 0.0, 0.0, 1.0);

    /// Split as `z1 + z2 j` with complex `z1 = w + x i`, `z2 = y + z i`.
    pub fn to_complex_pair(self) -> (Complex64, Complex64) {
        (
            Complex64::new(self.w, self.x),
            Complex64::new(self.y, self.z),
        )
    }

    pub fn from_complex_pair(z1: Complex64, z2: Complex64) -> Self {
        Quaternion::new(z1.re, z1.im, z2.re, z2.im)
    }
}

impl Add for Quaternion {
    type Output = Self;
    fn add(self, o: Self) -> Self {
        Quaternion::new(self.w + o.w, self.x + o.x, self.y + o.y, self.z + o.z)
    }
}

impl AddAssign for Quaternion {
    fn add_assign(&mut self, o: Self) {
        *self = *self + o;
    }
}

impl Sub for Quaternion {
    type Output = Self;
    fn sub(self, o: Self) -> Self {
        Quaternion::new(self.w - o.w, self.x - o.x, self.y - o.y, self.z - o.z)
    }
}

impl Neg for Quaternion {
    type Output = Self;
    fn neg(self) -> Self {
        Quaternion::new(-self.w, -self.x, -self.y, -self.z)
    }
}

impl Mul for Quaternion {
    type Output = Self;
    fn mul(self, o: Self) -> Self {
        let (a, b) = (self, o);
        Quaternion::new(
            a.w * b.w - a.x * b.x - a.y * b.y - a.z * b.z,
            a.w * b.x + a.x * b.w + a.y * b.z - a.z * b.y,
            a.w * b.y - a.x * b.z + a.y * b.w + a.z * b.x,
            a.w * b.z + a.x * b.y - a.y * b.x + a.z * b.w,
        )
    }
}

impl DivisionAlgebra for Quaternion {
    const DIM: usize = 4;

    fn zero() -> Self {
        Quaternion::default()
    }
    fn one() -> Self {
        Quaternion::new(1.0, 0.0, 0.0, 0.0)
    }
    fn from_real(r: f64) -> Self {
        Quaternion::new(r, 0.0, 0.0, 0.0)
    }
    fn scale(self, s: f64) -> Self {
        Quaternion::new(self.w * s, self.x * s, self.y * s, self.z * s)
    }
    fn conj(self) -> Self {
        Quaternion::new(self.w, -self.x, -self.y, -self.z)
    }
    fn re(self) -> f64 {
        self.w
    }
    fn coord(self, k: usize) -> f64 {
        match k {
            0 => self.w,
            1 => self.x,
            2 => self.y,
            3 => self.z,
            _ => panic!("quaternion coordinate index {k} out of range"),
        }
    }
    fn from_coords(c: &[f64]) -> Self {
        Quaternion::new(c[0], c[1], c[2], c[3])
    }
}

/// Octonion `c0 + c1 e1 + … + c7 e7`, stored as a Cayley–Dickson pair of quaternions.
#[derive(Clone, Copy, Debug, Default, PartialEq, Serialize, Deserialize)]
pub struct Octonion {
    pub lo: Quaternion,
    pub hi: Quaternion,
}

impl Octonion {
    pub const fn from_pair(lo: Quaternion, hi: Quaternion) -> Self {
        Octonion { lo, hi }
    }

    pub fn coeffs(&self) -> [f64; 8] {
        let (l, h) = (self.lo, self.hi);
        [l.w, l.x, l.y, l.z, h.w, h.x, h.y, h.z]
    }

    pub fn from_coeffs(c: [f64; 8]) -> Self {
        Octonion::from_coords(&c)
    }
}

impl Add for Octonion {
    type Output = Self;
    fn add(self, o: Self) -> Self {
        Octonion::from_pair(self.lo + o.lo, self.hi + o.hi)
    }
}

impl AddAssign for Octonion {
    fn add_assign(&mut self, o: Self) {
        *self = *self + o;
    }
}

impl Sub for Octonion {
    type Output = Self;
    fn sub(self, o: Self) -> Self {
        Octonion::from_pair(self.lo - o.lo, self.hi - o.hi)
    }
}

impl Neg for Octonion {
    type Output = Self;
    fn neg(self) -> Self {
        Octonion::from_pair(-self.lo, -self.hi)
    }
}

impl Mul for Octonion {
    type Output = Self;
    fn mul(self, o: Self) -> Self {
        let (a, b, c, d) = (self.lo, self.hi, o.lo, o.hi);
        Octonion::from_pair(a * c - d * b.conj(), a.conj() * d + c * b)
    }
}

impl DivisionAlgebra for Octonion {
    const DIM: usize = 8;

    fn zero() -> Self {
        Octonion::default()
    }
    fn one() -> Self {
        Octonion::from_pair(Quaternion::one(), Quaternion::zero())
    }
    fn from_real(r: f64) -> Self {
        Octonion::from_pair(Quaternion::from_real(r), Quaternion::zero())
    }
    fn scale(self, s: f64) -> Self {
        Octonion::from_pair(self.lo.scale(s), self.hi.scale(s))
    }
    fn conj(self) -> Self {
        Octonion::from_pair(self.lo.conj(), -self.hi)
    }
    fn re(self) -> f64 {
        self.lo.w
    }
    fn coord(self, k: usize) -> f64 {
        if k < 4 {
            self.lo.coord(k)
        } else {
            self.hi.coord(k - 4)
        }
    }
    fn from_coords(c: &[f64]) -> Self {
        Octonion::from_pair(
            Quaternion::from_coords(&c[..4]),
            Quaternion::from_coords(&c[4..8]),
        )
    }
}

/// Multiplication table of the imaginary octonion units: `table[a][b]` is
/// `(sign, index)` with `e_{a+1} e_{b+1} = sign · e_index`.
pub fn octonion_table() -> [[(i8, usize); 7]; 7] {
    let mut table = [[(0i8, 0usize); 7]; 7];
    for (a, row) in table.iter_mut().enumerate() {
        for (b, slot) in row.iter_mut().enumerate() {
            let c = (Octonion::unit(a + 1) * Octonion::unit(b + 1)).coeffs();
            let k = c
                .iter()
                .position(|v| v.abs() > 0.5)
                .expect("basis product is a signed unit");
            *slot = (c[k].signum() as i8, k);
        }
    }
    table
}
