//! Spectral decomposition `a = Σ λᵢ eᵢ` into orthogonal idempotents, with the
//! functional calculus, JB norm and positive-cone membership built on it.
//!
//! * `HermR`/`HermC`: Hermitian eigensolver on the matrix realization.
//! * `HermH`: eigensolver on the `2n × 2n` complex adjoint matrix, where every
//!   eigenvalue appears twice; cluster projectors map back to quaternionic ones.
//! * `Albert`: roots of the characteristic cubic built from the trace, the
//!   quadratic trace and the Freudenthal determinant; idempotents by Lagrange
//!   interpolation in the (associative) subalgebra generated by the element.
//! * `Spin(n)`: closed form `(x, t) = (t+‖x‖)·½(x̂, 1) + (t−‖x‖)·½(−x̂, 1)`.

use std::f64::consts::PI;

use nalgebra::{DMatrix, SymmetricEigen};
use num_complex::Complex64;
use serde::Serialize;

use crate::division::{DivisionAlgebra, Octonion, Quaternion};
use crate::error::{Error, Result};
use crate::jordan::realize::{from_quaternion_adjoint, quaternion_adjoint};
use crate::jordan::{Algebra, JordanElement, SquareMatrix};

/// Eigenvalues closer than this (relative to `max(1, ‖a‖)`) are merged.
pub const CLUSTER_TOL: f64 = 1e-8;

#[derive(Clone, Debug, Serialize)]
pub struct SpectralDecomposition {
    /// Distinct eigenvalues, ascending.
    pub eigenvalues: Vec<f64>,
    /// `idempotents[i]` projects onto the `eigenvalues[i]` eigenspace.
    pub idempotents: Vec<JordanElement>,
    pub multiplicities: Vec<usize>,
}

impl SpectralDecomposition {
    pub fn reconstruct(&self) -> JordanElement {
        let mut acc = JordanElement::zero(self.idempotents[0].algebra());
        for (l, e) in self.eigenvalues.iter().zip(&self.idempotents) {
            acc = &acc + &e.scale(*l);
        }
        acc
    }

    /// `Σ f(λᵢ) eᵢ`; fails if `f` is not finite at some eigenvalue.
    pub fn apply(&self, f: impl Fn(f64) -> f64) -> Result<JordanElement> {
        let mut acc = JordanElement::zero(self.idempotents[0].algebra());
        for (l, e) in self.eigenvalues.iter().zip(&self.idempotents) {
            let v = f(*l);
            if !v.is_finite() {
                return Err(Error::Domain(*l));
            }
            acc = &acc + &e.scale(v);
        }
        Ok(acc)
    }

    pub fn min(&self) -> f64 {
        self.eigenvalues[0]
    }

    pub fn max(&self) -> f64 {
        *self.eigenvalues.last().expect("nonempty spectrum")
    }
}

fn cluster_scale(values: &[f64]) -> f64 {
    CLUSTER_TOL * values.iter().fold(1.0f64, |m, v| m.max(v.abs()))
}

/// Merges sorted `(λ, e)` pairs whose eigenvalues lie within `tol` of the
/// previous member of the run.
fn merge_sorted(mut pairs: Vec<(f64, JordanElement)>, tol: f64) -> Vec<(f64, JordanElement)> {
    pairs.sort_by(|a, b| a.0.total_cmp(&b.0));
    let mut out: Vec<(f64, JordanElement, f64, usize, f64)> = Vec::new();
    for (l, e) in pairs {
        match out.last_mut() {
            Some((_, acc, last, count, sum)) if l - *last <= tol => {
                *acc = &*acc + &e;
                *last = l;
                *count += 1;
                *sum += l;
            }
            _ => out.push((l, e, l, 1, l)),
        }
    }
    out.into_iter()
        .map(|(_, e, _, count, sum)| (sum / count as f64, e))
        .collect()
}

fn finish(pairs: Vec<(f64, JordanElement)>) -> SpectralDecomposition {
    let mut eigenvalues = Vec::with_capacity(pairs.len());
    let mut idempotents = Vec::with_capacity(pairs.len());
    let mut multiplicities = Vec::with_capacity(pairs.len());
    for (l, e) in pairs {
        eigenvalues.push(l);
        multiplicities.push(e.trace().round().max(1.0) as usize);
        idempotents.push(e);
    }
    SpectralDecomposition {
        eigenvalues,
        idempotents,
        multiplicities,
    }
}

fn real_matrix<K: DivisionAlgebra>(n: usize, coords: &[f64]) -> SquareMatrix<K> {
    SquareMatrix::from_hermitian_coords(n, coords)
}

fn complex_realization(alg: &Algebra, coords: &[f64]) -> DMatrix<Complex64> {
    match alg {
        Algebra::HermC { n } => {
            let m = real_matrix::<Complex64>(*n, coords);
            DMatrix::from_fn(*n, *n, |i, j| m.get(i, j))
        }
        Algebra::HermH { n } => quaternion_adjoint(&real_matrix::<Quaternion>(*n, coords)),
        _ => unreachable!("complex realization requested for {alg}"),
    }
}

fn hermitian_pairs(alg: &Algebra, a: &JordanElement) -> Vec<(f64, JordanElement)> {
    match alg {
        Algebra::HermR { n } => {
            let m = real_matrix::<f64>(*n, a.coords());
            let eig = SymmetricEigen::new(DMatrix::from_fn(*n, *n, |i, j| m.get(i, j)));
            let pairs = (0..*n)
                .map(|k| {
                    let v = eig.eigenvectors.column(k);
                    let p = SquareMatrix::<f64>::from_fn(*n, |i, j| v[i] * v[j]);
                    (
                        eig.eigenvalues[k],
                        JordanElement::from_raw(alg.clone(), p.hermitian_coords()),
                    )
                })
                .collect();
            let tol = cluster_scale(eig.eigenvalues.as_slice());
            merge_sorted(pairs, tol)
        }
        Algebra::HermC { n } => {
            let eig = SymmetricEigen::new(complex_realization(alg, a.coords()));
            let pairs = (0..*n)
                .map(|k| {
                    let v = eig.eigenvectors.column(k);
                    let p = SquareMatrix::<Complex64>::from_fn(*n, |i, j| v[i] * v[j].conj());
                    (
                        eig.eigenvalues[k],
                        JordanElement::from_raw(alg.clone(), p.hermitian_coords()),
                    )
                })
                .collect();
            let tol = cluster_scale(eig.eigenvalues.as_slice());
            merge_sorted(pairs, tol)
        }
        Algebra::HermH { n } => {
            // Adjoint eigenvalues come in equal pairs; cluster in ℂ^{2n} first so that
            // each cluster projector is the image of a quaternionic projector.
            let eig = SymmetricEigen::new(complex_realization(alg, a.coords()));
            let tol = cluster_scale(eig.eigenvalues.as_slice());
            let mut order: Vec<usize> = (0..2 * n).collect();
            order.sort_by(|&i, &j| eig.eigenvalues[i].total_cmp(&eig.eigenvalues[j]));
            let mut clusters: Vec<Vec<usize>> = Vec::new();
            for k in order {
                match clusters.last_mut() {
                    Some(c) if eig.eigenvalues[k] - eig.eigenvalues[*c.last().unwrap()] <= tol => {
                        c.push(k)
                    }
                    _ => clusters.push(vec![k]),
                }
            }
            clusters
                .into_iter()
                .map(|members| {
                    let mut p = DMatrix::<Complex64>::zeros(2 * n, 2 * n);
                    for &k in &members {
                        let v = eig.eigenvectors.column(k);
                        p += v * v.adjoint();
                    }
                    let q = from_quaternion_adjoint(&p);
                    let l = members.iter().map(|&k| eig.eigenvalues[k]).sum::<f64>()
                        / members.len() as f64;
                    (
                        l,
                        JordanElement::from_raw(alg.clone(), q.hermitian_coords()),
                    )
                })
                .collect()
        }
        _ => unreachable!(),
    }
}

/// Coefficients `(T, S, N)` of `λ³ − Tλ² + Sλ − N` for an Albert element.
pub fn albert_invariants(a: &JordanElement) -> (f64, f64, f64) {
    let c = a.coords();
    let (al, be, ga) = (c[0], c[1], c[2]);
    let x01 = Octonion::from_coords(&c[3..11]);
    let x02 = Octonion::from_coords(&c[11..19]);
    let x12 = Octonion::from_coords(&c[19..27]);
    let t = al + be + ga;
    let s = al * be + be * ga + ga * al - x01.norm_sqr() - x02.norm_sqr() - x12.norm_sqr();
    let n = al * be * ga + 2.0 * ((x01 * x12) * x02.conj()).re()
        - al * x12.norm_sqr()
        - be * x02.norm_sqr()
        - ga * x01.norm_sqr();
    (t, s, n)
}

/// Real roots of `λ³ − Tλ² + Sλ − N` (all roots are real for Hermitian input), ascending.
fn cubic_roots(t: f64, s: f64, n: f64) -> [f64; 3] {
    let p = s - t * t / 3.0;
    let q = -2.0 * t.powi(3) / 27.0 + t * s / 3.0 - n;
    let shift = t / 3.0;
    let mut roots = if p >= 0.0 {
        [shift; 3]
    } else {
        let m = 2.0 * (-p / 3.0).sqrt();
        let arg = (3.0 * q / (p * m)).clamp(-1.0, 1.0);
        let theta = arg.acos() / 3.0;
        [0, 1, 2].map(|k| shift + m * (theta - 2.0 * PI * k as f64 / 3.0).cos())
    };
    let f = |l: f64| ((l - t) * l + s) * l - n;
    let df = |l: f64| (3.0 * l - 2.0 * t) * l + s;
    for r in roots.iter_mut() {
        for _ in 0..3 {
            let d = df(*r);
            if d.abs() < 1e-8 * (1.0 + t.abs() + s.abs().sqrt()) {
                break;
            }
            let step = f(*r) / d;
            if !step.is_finite() || step.abs() > 1e-6 * (1.0 + r.abs()) {
                break;
            }
            *r -= step;
        }
    }
    roots.sort_by(f64::total_cmp);
    roots
}

/// Roots of a cubic lose half their digits near a double root, so repeated
/// eigenvalues are detected by testing whether `a` satisfies a lower-degree
/// polynomial rather than by comparing the computed roots directly.
fn albert_pairs(a: &JordanElement) -> Vec<(f64, JordanElement)> {
    let alg = a.algebra();
    let (t, s, n) = albert_invariants(a);
    let roots = cubic_roots(t, s, n);
    let scale = roots.iter().fold(1.0f64, |m, r| m.max(r.abs()));
    let one = JordanElement::unit(alg);

    if (a - &one.scale(t / 3.0)).max_abs() <= CLUSTER_TOL * scale {
        return vec![(t / 3.0, one)];
    }
    let a2 = a.square();
    let loose = 1e-4 * scale;
    for (simple, gap) in [
        (roots[0], roots[2] - roots[1]),
        (roots[2], roots[1] - roots[0]),
    ] {
        if gap > loose {
            continue;
        }
        let double = (t - simple) / 2.0;
        let min_poly = &(&a2 - &a.scale(simple + double)) + &one.scale(simple * double);
        if min_poly.max_abs() <= CLUSTER_TOL * scale * scale {
            let e_simple = (a - &one.scale(double)).scale(1.0 / (simple - double));
            let e_double = &one - &e_simple;
            let mut v = vec![(simple, e_simple), (double, e_double)];
            v.sort_by(|x, y| x.0.total_cmp(&y.0));
            return v;
        }
    }
    (0..3)
        .map(|i| {
            let (j, k) = ((i + 1) % 3, (i + 2) % 3);
            let (lj, lk) = (roots[j], roots[k]);
            let num = &(&a2 - &a.scale(lj + lk)) + &one.scale(lj * lk);
            let den = (roots[i] - lj) * (roots[i] - lk);
            (roots[i], num.scale(1.0 / den))
        })
        .collect()
}

fn spin_pairs(a: &JordanElement, n: usize) -> Vec<(f64, JordanElement)> {
    let c = a.coords();
    let t = c[n];
    let r = c[..n].iter().map(|v| v * v).sum::<f64>().sqrt();
    let alg = a.algebra();
    if r == 0.0 {
        return vec![(t, JordanElement::unit(alg))];
    }
    let idem = |sign: f64| {
        let mut e: Vec<f64> = c[..n].iter().map(|v| 0.5 * sign * v / r).collect();
        e.push(0.5);
        JordanElement::from_raw(alg.clone(), e)
    };
    vec![(t - r, idem(-1.0)), (t + r, idem(1.0))]
}

fn component_pairs(a: &JordanElement) -> Vec<(f64, JordanElement)> {
    match a.algebra() {
        alg @ (Algebra::HermR { .. } | Algebra::HermC { .. } | Algebra::HermH { .. }) => {
            hermitian_pairs(alg, a)
        }
        Algebra::Albert => albert_pairs(a),
        Algebra::Spin { n } => spin_pairs(a, *n),
        alg @ Algebra::DirectSum { components } => {
            let mut pairs = Vec::new();
            for i in 0..components.len() {
                let part = a.component(i).expect("component exists");
                for (l, e) in component_pairs(&part) {
                    pairs.push((l, e.embed(alg, i).expect("same component")));
                }
            }
            let values: Vec<f64> = pairs.iter().map(|p| p.0).collect();
            merge_sorted(pairs, cluster_scale(&values))
        }
    }
}

/// Spectral decomposition with distinct, ascending eigenvalues.
pub fn spectrum(a: &JordanElement) -> SpectralDecomposition {
    finish(component_pairs(a))
}

/// Eigenvalues with multiplicity, ascending, without forming idempotents.
pub fn eigenvalues(a: &JordanElement) -> Vec<f64> {
    let mut out = match a.algebra() {
        Algebra::HermR { n } => {
            let m = real_matrix::<f64>(*n, a.coords());
            DMatrix::from_fn(*n, *n, |i, j| m.get(i, j))
                .symmetric_eigenvalues()
                .iter()
                .copied()
                .collect()
        }
        Algebra::HermC { .. } => complex_realization(a.algebra(), a.coords())
            .symmetric_eigenvalues()
            .iter()
            .copied()
            .collect(),
        Algebra::HermH { .. } => {
            let mut v: Vec<f64> = complex_realization(a.algebra(), a.coords())
                .symmetric_eigenvalues()
                .iter()
                .copied()
                .collect();
            v.sort_by(f64::total_cmp);
            v.into_iter().step_by(2).collect()
        }
        Algebra::Albert => {
            let (t, s, n) = albert_invariants(a);
            cubic_roots(t, s, n).to_vec()
        }
        Algebra::Spin { n } => {
            let c = a.coords();
            let r = c[..*n].iter().map(|v| v * v).sum::<f64>().sqrt();
            vec![c[*n] - r, c[*n] + r]
        }
        Algebra::DirectSum { components } => (0..components.len())
            .flat_map(|i| eigenvalues(&a.component(i).expect("component")))
            .collect(),
    };
    out.sort_by(f64::total_cmp);
    out
}

/// `f(a) = Σ f(λᵢ) eᵢ`.
pub fn functional_calculus(a: &JordanElement, f: impl Fn(f64) -> f64) -> Result<JordanElement> {
    spectrum(a).apply(f)
}

pub fn exp(a: &JordanElement) -> JordanElement {
    functional_calculus(a, f64::exp).expect("exp is finite on a bounded spectrum")
}

pub fn abs(a: &JordanElement) -> JordanElement {
    functional_calculus(a, f64::abs).expect("abs is total")
}

/// Positive square root; eigenvalues down to `−1e−10·max(1, ‖a‖)` are treated
/// as zero, anything more negative is a domain error.
pub fn sqrt(a: &JordanElement) -> Result<JordanElement> {
    let sp = spectrum(a);
    let floor = -1e-10 * sp.min().abs().max(sp.max().abs()).max(1.0);
    if sp.min() < floor {
        return Err(Error::Domain(sp.min()));
    }
    sp.apply(|l| l.max(0.0).sqrt())
}

/// `sup |λ|` over the spectrum.
pub fn jb_norm(a: &JordanElement) -> f64 {
    eigenvalues(a).into_iter().fold(0.0, |m, l| m.max(l.abs()))
}

pub fn min_eigenvalue(a: &JordanElement) -> f64 {
    eigenvalues(a)[0]
}

/// `a ≥ 0` up to `tol`: the smallest eigenvalue is at least `−tol`.
pub fn is_positive(a: &JordanElement, tol: f64) -> bool {
    min_eigenvalue(a) >= -tol
}
