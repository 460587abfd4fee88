//! Dynamical correspondences `ψ: O → L`, the conditions they must satisfy, and
//! the complex *-algebra `ℂ ⊗ O` rebuilt from `ab = a∘b − i{a,b}` with
//! `{a,b} = ψ_a(b)`.

use nalgebra::DMatrix;
use num_complex::Complex64;
use rand::Rng;
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};
use serde_json::json;

use crate::check::{run_trials, CheckOutcome, TrialResult};
use crate::derivations::{leibniz_residual, OrderDerivation, LEIBNIZ_TOL};
use crate::error::{Error, Result};
use crate::jordan::realize::{from_complex_matrix, to_complex_matrix};
use crate::jordan::{Algebra, JordanElement};
use crate::random::{random_element, random_unit_element};
use crate::spectral::jb_norm;

/// Imaginary residual of `x*x` tolerated by [`cstar_norm`].
pub const SELF_ADJOINT_TOL: f64 = 1e-10;
/// Agreement required between the rebuilt product and the matrix product.
pub const MATRIX_PRODUCT_TOL: f64 = 1e-10;

/// Bilinear bracket on `O`, stored as one coordinate matrix per basis element:
/// `operators[i]` is the matrix of `b ↦ {eᵢ, b}`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "TableRepr", into = "TableRepr")]
pub struct BracketTable {
    algebra: Algebra,
    operators: Vec<DMatrix<f64>>,
}

/// `table[i][j]` holds the coordinates of `{eᵢ, eⱼ}`.
#[derive(Serialize, Deserialize)]
struct TableRepr {
    #[serde(flatten)]
    algebra: Algebra,
    table: Vec<Vec<Vec<f64>>>,
}

impl TryFrom<TableRepr> for BracketTable {
    type Error = Error;
    fn try_from(r: TableRepr) -> Result<Self> {
        BracketTable::from_entries(&r.algebra, &r.table)
    }
}

impl From<BracketTable> for TableRepr {
    fn from(t: BracketTable) -> Self {
        TableRepr {
            table: t.entries(),
            algebra: t.algebra,
        }
    }
}

impl BracketTable {
    pub fn from_fn(
        algebra: &Algebra,
        f: impl Fn(&JordanElement, &JordanElement) -> JordanElement,
    ) -> Self {
        let basis = JordanElement::basis_elements(algebra);
        let d = basis.len();
        let operators = basis
            .iter()
            .map(|ei| {
                let mut m = DMatrix::zeros(d, d);
                for (j, ej) in basis.iter().enumerate() {
                    m.column_mut(j).copy_from_slice(f(ei, ej).coords());
                }
                m
            })
            .collect();
        BracketTable {
            algebra: algebra.clone(),
            operators,
        }
    }

    pub fn zero(algebra: &Algebra) -> Self {
        let d = algebra.dim();
        BracketTable {
            algebra: algebra.clone(),
            operators: vec![DMatrix::zeros(d, d); d],
        }
    }

    /// The Jordan product itself, a symmetric bracket.
    pub fn jordan_product(algebra: &Algebra) -> Self {
        Self::from_fn(algebra, |a, b| a.circ(b))
    }

    pub fn from_entries(algebra: &Algebra, table: &[Vec<Vec<f64>>]) -> Result<Self> {
        algebra.validate()?;
        let d = algebra.dim();
        if table.len() != d || table.iter().any(|row| row.len() != d) {
            return Err(Error::InvalidCorrespondence(format!(
                "bracket table must be {d}×{d}"
            )));
        }
        let mut operators = Vec::with_capacity(d);
        for row in table {
            let mut m = DMatrix::zeros(d, d);
            for (j, coords) in row.iter().enumerate() {
                let e = JordanElement::new(algebra.clone(), coords.clone())?;
                m.column_mut(j).copy_from_slice(e.coords());
            }
            operators.push(m);
        }
        Ok(BracketTable {
            algebra: algebra.clone(),
            operators,
        })
    }

    pub fn entries(&self) -> Vec<Vec<Vec<f64>>> {
        self.operators
            .iter()
            .map(|m| {
                (0..m.ncols())
                    .map(|j| m.column(j).iter().copied().collect())
                    .collect()
            })
            .collect()
    }

    pub fn algebra(&self) -> &Algebra {
        &self.algebra
    }

    /// Matrix of `b ↦ {a, b}`.
    pub fn operator(&self, a: &JordanElement) -> DMatrix<f64> {
        let d = self.algebra.dim();
        let mut m = DMatrix::zeros(d, d);
        for (c, op) in a.coords().iter().zip(&self.operators) {
            if *c != 0.0 {
                m += op * *c;
            }
        }
        m
    }

    /// `{a, b}`; panics on mismatched algebras.
    pub fn apply(&self, a: &JordanElement, b: &JordanElement) -> JordanElement {
        assert!(
            a.algebra() == &self.algebra && b.algebra() == &self.algebra,
            "bracket on a foreign algebra"
        );
        JordanElement::from_vector(&self.algebra, &(self.operator(a) * b.to_vector()))
    }

    pub fn bracket(&self, a: &JordanElement, b: &JordanElement) -> Result<JordanElement> {
        for x in [a, b] {
            if x.algebra() != &self.algebra {
                return Err(Error::IncompatibleAlgebras {
                    left: self.algebra.to_string(),
                    right: x.algebra().to_string(),
                });
            }
        }
        Ok(self.apply(a, b))
    }

    pub fn scaled(&self, alpha: f64) -> Self {
        BracketTable {
            algebra: self.algebra.clone(),
            operators: self.operators.iter().map(|m| m * alpha).collect(),
        }
    }

    /// `{a, b}' = {b, a}`.
    pub fn transposed(&self) -> Self {
        Self::from_fn(&self.algebra, |a, b| self.apply(b, a))
    }

    /// `max |{eᵢ,eⱼ} − other{eᵢ,eⱼ}|`.
    pub fn distance(&self, other: &BracketTable) -> f64 {
        if self.algebra != other.algebra {
            return f64::INFINITY;
        }
        self.operators
            .iter()
            .zip(&other.operators)
            .map(|(a, b)| (a - b).amax())
            .fold(0.0, f64::max)
    }
}

/// Linear map `a ↦ ψ_a` from observables to skew derivations.
///
/// Every `ψ_{eᵢ}` is checked against the Leibniz law on construction;
/// conditions (A) and (B) are not assumed and are tested separately.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "BracketTable", into = "BracketTable")]
pub struct DynamicalCorrespondence {
    table: BracketTable,
}

impl TryFrom<BracketTable> for DynamicalCorrespondence {
    type Error = Error;
    fn try_from(t: BracketTable) -> Result<Self> {
        DynamicalCorrespondence::from_table(t)
    }
}

impl From<DynamicalCorrespondence> for BracketTable {
    fn from(c: DynamicalCorrespondence) -> Self {
        c.table
    }
}

fn canonical_bracket(alg: &Algebra, a: &JordanElement, b: &JordanElement) -> Result<JordanElement> {
    match alg {
        Algebra::HermC { .. } => {
            // {a, b} = (i/2)(ab − ba)
            let (ma, mb) = (to_complex_matrix(a)?, to_complex_matrix(b)?);
            let c = (&ma * &mb - &mb * &ma) * Complex64::new(0.0, 0.5);
            from_complex_matrix(alg, &c)
        }
        Algebra::HermR { n: 1 } | Algebra::HermH { n: 1 } | Algebra::Spin { n: 1 } => {
            Ok(JordanElement::zero(alg))
        }
        Algebra::Spin { n: 3 } => {
            // transported from HermC(2) along (x, t) ↦ t·1 + Σ xᵢσᵢ: {x, y} = −x × y
            let (x, y) = (a.coords(), b.coords());
            JordanElement::new(
                alg.clone(),
                vec![
                    -(x[1] * y[2] - x[2] * y[1]),
                    -(x[2] * y[0] - x[0] * y[2]),
                    -(x[0] * y[1] - x[1] * y[0]),
                    0.0,
                ],
            )
        }
        Algebra::DirectSum { components } => {
            let mut out = JordanElement::zero(alg);
            for (i, c) in components.iter().enumerate() {
                let part = canonical_bracket(c, &a.component(i)?, &b.component(i)?)?;
                out = &out + &part.embed(alg, i)?;
            }
            Ok(out)
        }
        other => Err(Error::NoCanonicalCorrespondence(other.to_string())),
    }
}

fn has_canonical(alg: &Algebra) -> bool {
    match alg {
        Algebra::HermC { .. } | Algebra::HermR { n: 1 } | Algebra::HermH { n: 1 } => true,
        Algebra::Spin { n } => *n == 1 || *n == 3,
        Algebra::DirectSum { components } => components.iter().all(has_canonical),
        _ => false,
    }
}

impl DynamicalCorrespondence {
    pub fn from_table(table: BracketTable) -> Result<Self> {
        for (i, m) in table.operators.iter().enumerate() {
            let r = leibniz_residual(&table.algebra, m);
            if r > LEIBNIZ_TOL * m.amax().max(1.0) {
                return Err(Error::InvalidCorrespondence(format!(
                    "bracket with basis element {i} is not a derivation (residual {r:e})"
                )));
            }
        }
        Ok(DynamicalCorrespondence { table })
    }

    /// `ψ_a(b) = (i/2)[a, b]` on `HermC(n)`, and its images on the algebras
    /// isomorphic to such blocks (`Spin(3)`, one-dimensional factors, sums).
    pub fn canonical(algebra: &Algebra) -> Result<Self> {
        algebra.validate()?;
        if !has_canonical(algebra) {
            return Err(Error::NoCanonicalCorrespondence(algebra.to_string()));
        }
        let table = BracketTable::from_fn(algebra, |a, b| {
            canonical_bracket(algebra, a, b).expect("supported family")
        });
        Ok(DynamicalCorrespondence { table })
    }

    pub fn zero(algebra: &Algebra) -> Self {
        DynamicalCorrespondence {
            table: BracketTable::zero(algebra),
        }
    }

    /// `ψ_x(y)ₖ = Σ ω_{ijk} xᵢ yⱼ` for a 3-form `ω` on ℝⁿ given by its
    /// coefficients on increasing index triples (0-based); `t` is central.
    pub fn spin_three_form(n: usize, terms: &[([usize; 3], f64)]) -> Result<Self> {
        let alg = Algebra::spin(n);
        alg.validate()?;
        let mut omega = vec![0.0; n * n * n];
        for ([i, j, k], c) in terms {
            if !(i < j && j < k && *k < n) {
                return Err(Error::InvalidCorrespondence(format!(
                    "3-form index ({i},{j},{k}) is not increasing below {n}"
                )));
            }
            for (p, sign) in [
                ([*i, *j, *k], 1.0),
                ([*j, *k, *i], 1.0),
                ([*k, *i, *j], 1.0),
                ([*j, *i, *k], -1.0),
                ([*i, *k, *j], -1.0),
                ([*k, *j, *i], -1.0),
            ] {
                omega[(p[0] * n + p[1]) * n + p[2]] += sign * c;
            }
        }
        let table = BracketTable::from_fn(&alg, |a, b| {
            let (x, y) = (a.coords(), b.coords());
            let mut out = vec![0.0; n + 1];
            for i in 0..n {
                for j in 0..n {
                    for (k, o) in out.iter_mut().enumerate().take(n) {
                        *o += omega[(i * n + j) * n + k] * x[i] * y[j];
                    }
                }
            }
            JordanElement::new(alg.clone(), out).expect("finite")
        });
        Self::from_table(table)
    }

    pub fn table(&self) -> &BracketTable {
        &self.table
    }

    pub fn algebra(&self) -> &Algebra {
        &self.table.algebra
    }

    /// `ψ_a` as a skew derivation.
    pub fn psi(&self, a: &JordanElement) -> Result<OrderDerivation> {
        if a.algebra() != self.algebra() {
            return Err(Error::IncompatibleAlgebras {
                left: self.algebra().to_string(),
                right: a.algebra().to_string(),
            });
        }
        Ok(OrderDerivation::skew_unchecked(
            self.algebra(),
            self.table.operator(a),
        ))
    }

    /// `{a, b} = ψ_a(b)`.
    pub fn bracket(&self, a: &JordanElement, b: &JordanElement) -> Result<JordanElement> {
        self.table.bracket(a, b)
    }

    pub fn scaled(&self, alpha: f64) -> Self {
        DynamicalCorrespondence {
            table: self.table.scaled(alpha),
        }
    }

    /// Table `{a, b}' = ψ_b(a)`. Each `b ↦ ψ_b(a)` is again a derivation only
    /// when `ψ` is antisymmetric, so the result is validated.
    pub fn transposed(&self) -> Result<Self> {
        Self::from_table(self.table.transposed())
    }

    /// Whether this is the canonical correspondence of its algebra.
    pub fn is_canonical(&self) -> bool {
        DynamicalCorrespondence::canonical(self.algebra())
            .is_ok_and(|c| c.table.distance(&self.table) < 1e-12)
    }
}

/// `ℂ ⊗ O` element `re + i·im`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ComplexStarElement {
    pub re: JordanElement,
    pub im: JordanElement,
}

impl ComplexStarElement {
    pub fn new(re: JordanElement, im: JordanElement) -> Result<Self> {
        re.same_algebra(&im)?;
        Ok(ComplexStarElement { re, im })
    }

    pub fn real(a: JordanElement) -> Self {
        let im = JordanElement::zero(a.algebra());
        ComplexStarElement { re: a, im }
    }

    pub fn imaginary(b: JordanElement) -> Self {
        let re = JordanElement::zero(b.algebra());
        ComplexStarElement { re, im: b }
    }

    pub fn algebra(&self) -> &Algebra {
        self.re.algebra()
    }

    /// `(α + iβ)(re + i·im)`.
    pub fn scale(&self, z: Complex64) -> Self {
        ComplexStarElement {
            re: &self.re.scale(z.re) - &self.im.scale(z.im),
            im: &self.im.scale(z.re) + &self.re.scale(z.im),
        }
    }

    /// Larger of the JB norms of the two parts; used for residuals.
    pub fn part_norm(&self) -> f64 {
        jb_norm(&self.re).max(jb_norm(&self.im))
    }

    /// Realization as `A + iB` for `HermR`/`HermC` algebras.
    pub fn to_complex_matrix(&self) -> Result<DMatrix<Complex64>> {
        let a = to_complex_matrix(&self.re)?;
        let b = to_complex_matrix(&self.im)?;
        Ok(a + b * Complex64::i())
    }

    /// Decomposes a complex matrix `X = A + iB` into Hermitian parts.
    pub fn from_complex_matrix(algebra: &Algebra, x: &DMatrix<Complex64>) -> Result<Self> {
        let xa = x.adjoint();
        let a = (x + &xa) * Complex64::new(0.5, 0.0);
        let b = (x - &xa) * Complex64::new(0.0, -0.5);
        Ok(ComplexStarElement {
            re: from_complex_matrix(algebra, &a)?,
            im: from_complex_matrix(algebra, &b)?,
        })
    }
}

impl std::ops::Sub for &ComplexStarElement {
    type Output = ComplexStarElement;
    fn sub(self, o: &ComplexStarElement) -> ComplexStarElement {
        ComplexStarElement {
            re: &self.re - &o.re,
            im: &self.im - &o.im,
        }
    }
}

impl std::ops::Add for &ComplexStarElement {
    type Output = ComplexStarElement;
    fn add(self, o: &ComplexStarElement) -> ComplexStarElement {
        ComplexStarElement {
            re: &self.re + &o.re,
            im: &self.im + &o.im,
        }
    }
}

fn mul_unchecked(
    x: &ComplexStarElement,
    y: &ComplexStarElement,
    t: &BracketTable,
) -> ComplexStarElement {
    let (a, b, c, d) = (&x.re, &x.im, &y.re, &y.im);
    let re = &(&(&a.circ(c) - &b.circ(d)) + &t.apply(a, d)) + &t.apply(b, c);
    let im = &(&(&a.circ(d) + &b.circ(c)) - &t.apply(a, c)) + &t.apply(b, d);
    ComplexStarElement { re, im }
}

/// `(a + ib)(c + id)` with `xy = x∘y − i{x,y}` on `O`.
pub fn complex_mul(
    x: &ComplexStarElement,
    y: &ComplexStarElement,
    psi: &DynamicalCorrespondence,
) -> Result<ComplexStarElement> {
    for e in [&x.re, &x.im, &y.re, &y.im] {
        if e.algebra() != psi.algebra() {
            return Err(Error::IncompatibleAlgebras {
                left: psi.algebra().to_string(),
                right: e.algebra().to_string(),
            });
        }
    }
    Ok(mul_unchecked(x, y, &psi.table))
}

/// `(a + ib)* = a − ib`.
pub fn star(x: &ComplexStarElement) -> ComplexStarElement {
    ComplexStarElement {
        re: x.re.clone(),
        im: -&x.im,
    }
}

/// `‖x‖ = √‖x*x‖`, where `x*x` must lie in `O`.
pub fn cstar_norm(x: &ComplexStarElement, psi: &DynamicalCorrespondence) -> Result<f64> {
    let p = complex_mul(&star(x), x, psi)?;
    let re = jb_norm(&p.re);
    let im = jb_norm(&p.im);
    if im > SELF_ADJOINT_TOL * re.max(1.0) {
        return Err(Error::InvalidCorrespondence(format!(
            "x*x has imaginary part of norm {im:e}"
        )));
    }
    Ok(re.sqrt())
}

/// The sampled identities.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Identity {
    /// `ψ_a(a) = 0` and `ψ_a(b) = −ψ_b(a)`.
    ConditionA,
    /// `[ψ_a, ψ_b] = −[δ_a, δ_b]`, applied to a third element.
    ConditionB,
    Antisymmetry,
    Commutativity,
    /// `{a, b∘c} = {a,b}∘c + b∘{a,c}`.
    Leibniz,
    /// `(a∘b)∘c − a∘(b∘c) = {{a,b},c} − {a,{b,c}}`, the form equivalent to
    /// associativity of `ab = a∘b − i{a,b}`.
    Associator,
    /// The same identity with the bracket terms in the opposite order;
    /// diagnostic only.
    AssociatorReversed,
    Associativity,
    StarAntihomomorphism,
    StarInvolution,
    Antilinearity,
    CstarIdentity,
    Submultiplicativity,
    /// Rebuilt product against the ordinary matrix product on `HermC(n)`.
    MatrixProduct,
}

impl Identity {
    pub fn name(self) -> &'static str {
        match self {
            Identity::ConditionA => "condition_a",
            Identity::ConditionB => "condition_b",
            Identity::Antisymmetry => "antisymmetry",
            Identity::Commutativity => "commutativity",
            Identity::Leibniz => "leibniz",
            Identity::Associator => "associator",
            Identity::AssociatorReversed => "associator_reversed_order",
            Identity::Associativity => "associativity",
            Identity::StarAntihomomorphism => "star_antihomomorphism",
            Identity::StarInvolution => "star_involution",
            Identity::Antilinearity => "antilinearity",
            Identity::CstarIdentity => "cstar_identity",
            Identity::Submultiplicativity => "submultiplicativity",
            Identity::MatrixProduct => "matrix_product",
        }
    }

    /// One randomized evaluation: the residual and the elements drawn.
    pub fn trial(self, psi: &DynamicalCorrespondence, rng: &mut ChaCha8Rng) -> TrialResult {
        let alg = psi.algebra();
        let t = &psi.table;
        let mut el = || random_unit_element(alg, rng);
        match self {
            Identity::ConditionA => {
                let (a, b) = (el(), el());
                let r =
                    jb_norm(&t.apply(&a, &a)).max(jb_norm(&(&t.apply(&a, &b) + &t.apply(&b, &a))));
                TrialResult::new(r, &[a, b])
            }
            Identity::ConditionB => {
                let (a, b, c) = (el(), el(), el());
                let psi_part = &t.apply(&a, &t.apply(&b, &c)) - &t.apply(&b, &t.apply(&a, &c));
                let delta_part = &a.circ(&b.circ(&c)) - &b.circ(&a.circ(&c));
                TrialResult::new(jb_norm(&(&psi_part + &delta_part)), &[a, b, c])
            }
            Identity::Antisymmetry => {
                let (a, b) = (el(), el());
                TrialResult::new(jb_norm(&(&t.apply(&a, &b) + &t.apply(&b, &a))), &[a, b])
            }
            Identity::Commutativity => {
                let (a, b) = (el(), el());
                TrialResult::new(jb_norm(&(&a.circ(&b) - &b.circ(&a))), &[a, b])
            }
            Identity::Leibniz => {
                let (a, b, c) = (el(), el(), el());
                let lhs = t.apply(&a, &b.circ(&c));
                let rhs = &t.apply(&a, &b).circ(&c) + &b.circ(&t.apply(&a, &c));
                TrialResult::new(jb_norm(&(&lhs - &rhs)), &[a, b, c])
            }
            Identity::Associator | Identity::AssociatorReversed => {
                let (a, b, c) = (el(), el(), el());
                let assoc = &a.circ(&b).circ(&c) - &a.circ(&b.circ(&c));
                let outer_first = &t.apply(&t.apply(&a, &b), &c) - &t.apply(&a, &t.apply(&b, &c));
                let rhs = if self == Identity::Associator {
                    outer_first
                } else {
                    -outer_first
                };
                TrialResult::new(jb_norm(&(&assoc - &rhs)), &[a, b, c])
            }
            Identity::Associativity => {
                let (x, y, z) = (
                    random_complex(alg, rng),
                    random_complex(alg, rng),
                    random_complex(alg, rng),
                );
                let lhs = mul_unchecked(&mul_unchecked(&x, &y, t), &z, t);
                let rhs = mul_unchecked(&x, &mul_unchecked(&y, &z, t), t);
                TrialResult::new((&lhs - &rhs).part_norm(), &[x, y, z])
            }
            Identity::StarAntihomomorphism => {
                let (x, y) = (random_complex(alg, rng), random_complex(alg, rng));
                let lhs = star(&mul_unchecked(&x, &y, t));
                let rhs = mul_unchecked(&star(&y), &star(&x), t);
                TrialResult::new((&lhs - &rhs).part_norm(), &[x, y])
            }
            Identity::StarInvolution => {
                let x = random_complex(alg, rng);
                TrialResult::new((&star(&star(&x)) - &x).part_norm(), &[x])
            }
            Identity::Antilinearity => {
                let x = random_complex(alg, rng);
                let z = Complex64::new(rng.random_range(-2.0..2.0), rng.random_range(-2.0..2.0));
                let r = (&star(&x.scale(z)) - &star(&x).scale(z.conj())).part_norm();
                TrialResult {
                    residual: r,
                    inputs: vec![json!(x), json!([z.re, z.im])],
                }
            }
            Identity::CstarIdentity => {
                let x = random_complex(alg, rng);
                let r = cstar_identity_residual(&x, psi).unwrap_or(f64::INFINITY);
                TrialResult::new(r, &[x])
            }
            Identity::Submultiplicativity => {
                let (x, y) = (random_complex(alg, rng), random_complex(alg, rng));
                let r = (|| -> Result<f64> {
                    let (nx, ny) = (cstar_norm(&x, psi)?, cstar_norm(&y, psi)?);
                    let nxy = cstar_norm(&mul_unchecked(&x, &y, t), psi)?;
                    Ok((nxy - nx * ny).max(0.0) / (nx * ny).max(1.0))
                })()
                .unwrap_or(f64::INFINITY);
                TrialResult::new(r, &[x, y])
            }
            Identity::MatrixProduct => {
                let (x, y) = (random_complex(alg, rng), random_complex(alg, rng));
                let r = (|| -> Result<f64> {
                    let got = mul_unchecked(&x, &y, t).to_complex_matrix()?;
                    let want = x.to_complex_matrix()? * y.to_complex_matrix()?;
                    Ok((got - want).iter().fold(0.0, |m, z| m.max(z.norm())))
                })()
                .unwrap_or(f64::INFINITY);
                TrialResult::new(r, &[x, y])
            }
        }
    }
}

/// `re + i·im` with both parts of JB norm one.
pub fn random_complex(alg: &Algebra, rng: &mut ChaCha8Rng) -> ComplexStarElement {
    let re = random_unit_element(alg, rng);
    let im = random_unit_element(alg, rng);
    ComplexStarElement { re, im }
}

/// `max(|‖x*x‖ − ‖x‖²|, |‖xx*‖ − ‖x‖²|) / max(1, ‖x‖²)`, all norms in `ℂ ⊗ O`.
pub fn cstar_identity_residual(
    x: &ComplexStarElement,
    psi: &DynamicalCorrespondence,
) -> Result<f64> {
    let n2 = cstar_norm(x, psi)?.powi(2);
    let xsx = complex_mul(&star(x), x, psi)?;
    let xxs = complex_mul(x, &star(x), psi)?;
    let r = (cstar_norm(&xsx, psi)? - n2)
        .abs()
        .max((cstar_norm(&xxs, psi)? - n2).abs());
    Ok(r / n2.max(1.0))
}

pub fn check_identity(
    identity: Identity,
    psi: &DynamicalCorrespondence,
    trials: u64,
    tol: f64,
    seed: u64,
) -> CheckOutcome {
    run_trials(identity.name(), seed, trials, tol, |rng| {
        identity.trial(psi, rng)
    })
}

pub fn check_condition_a(
    psi: &DynamicalCorrespondence,
    trials: u64,
    tol: f64,
    seed: u64,
) -> CheckOutcome {
    check_identity(Identity::ConditionA, psi, trials, tol, seed)
}

pub fn check_condition_b(
    psi: &DynamicalCorrespondence,
    trials: u64,
    tol: f64,
    seed: u64,
) -> CheckOutcome {
    check_identity(Identity::ConditionB, psi, trials, tol, seed)
}

/// Conditions 1–4 for rebuilding a complex *-algebra from `(O, ∘, {,})`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ReconstructionReport {
    pub antisymmetry: CheckOutcome,
    pub commutativity: CheckOutcome,
    pub leibniz: CheckOutcome,
    pub associator: CheckOutcome,
    /// Bracket terms in the reverse order; not part of the verdict.
    pub associator_reversed_order: CheckOutcome,
}

impl ReconstructionReport {
    pub fn passed(&self) -> bool {
        self.antisymmetry.passed
            && self.commutativity.passed
            && self.leibniz.passed
            && self.associator.passed
    }
}

pub fn check_reconstruction_conditions(
    psi: &DynamicalCorrespondence,
    trials: u64,
    tol: f64,
    seed: u64,
) -> ReconstructionReport {
    let run = |i| check_identity(i, psi, trials, tol, seed);
    ReconstructionReport {
        antisymmetry: run(Identity::Antisymmetry),
        commutativity: run(Identity::Commutativity),
        leibniz: run(Identity::Leibniz),
        associator: run(Identity::Associator),
        associator_reversed_order: run(Identity::AssociatorReversed),
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct CStarVerdict {
    pub associativity: CheckOutcome,
    pub star_antihomomorphism: CheckOutcome,
    pub star_involution: CheckOutcome,
    pub antilinearity: CheckOutcome,
    pub cstar_identity: CheckOutcome,
    pub submultiplicativity: CheckOutcome,
    /// Present for the canonical correspondence on `HermC(n)`.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub matrix_product: Option<CheckOutcome>,
}

impl CStarVerdict {
    pub fn outcomes(&self) -> Vec<&CheckOutcome> {
        let mut v = vec![
            &self.associativity,
            &self.star_antihomomorphism,
            &self.star_involution,
            &self.antilinearity,
            &self.cstar_identity,
            &self.submultiplicativity,
        ];
        v.extend(self.matrix_product.as_ref());
        v
    }

    pub fn passed(&self) -> bool {
        self.outcomes().iter().all(|c| c.passed)
    }
}

/// Which identities [`verify_cstar`] samples for `psi`.
pub fn cstar_identities(psi: &DynamicalCorrespondence) -> Vec<Identity> {
    let mut v = vec![
        Identity::Associativity,
        Identity::StarAntihomomorphism,
        Identity::StarInvolution,
        Identity::Antilinearity,
        Identity::CstarIdentity,
        Identity::Submultiplicativity,
    ];
    if matches!(psi.algebra(), Algebra::HermC { .. }) && psi.is_canonical() {
        v.push(Identity::MatrixProduct);
    }
    v
}

pub fn verify_cstar(
    psi: &DynamicalCorrespondence,
    trials: u64,
    tol: f64,
    seed: u64,
) -> CStarVerdict {
    let run = |i| check_identity(i, psi, trials, tol, seed);
    let matrix_product = cstar_identities(psi)
        .contains(&Identity::MatrixProduct)
        .then(|| {
            check_identity(
                Identity::MatrixProduct,
                psi,
                trials,
                MATRIX_PRODUCT_TOL.max(tol.min(MATRIX_PRODUCT_TOL)),
                seed,
            )
        });
    CStarVerdict {
        associativity: run(Identity::Associativity),
        star_antihomomorphism: run(Identity::StarAntihomomorphism),
        star_involution: run(Identity::StarInvolution),
        antilinearity: run(Identity::Antilinearity),
        cstar_identity: run(Identity::CstarIdentity),
        submultiplicativity: run(Identity::Submultiplicativity),
        matrix_product,
    }
}

/// Dimension of the Lie algebra of derivations of `(O, ∘)`, from the null
/// space of the Leibniz constraints on `dim × dim` matrices.
pub fn derivation_dimension(algebra: &Algebra) -> usize {
    let d = algebra.dim();
    let basis = JordanElement::basis_elements(algebra);
    let mult: Vec<DMatrix<f64>> = basis.iter().map(|e| e.multiplication_operator()).collect();
    let pairs: Vec<(usize, usize)> = (0..d).flat_map(|i| (i..d).map(move |j| (i, j))).collect();
    let var = |r: usize, k: usize| k * d + r;
    let mut sys = DMatrix::<f64>::zeros((pairs.len() + 1) * d, d * d);
    for (p, &(i, j)) in pairs.iter().enumerate() {
        let c = basis[i].circ(&basis[j]);
        for r in 0..d {
            let row = p * d + r;
            for (k, ck) in c.coords().iter().enumerate() {
                sys[(row, var(r, k))] += ck;
            }
            for s in 0..d {
                sys[(row, var(s, i))] -= mult[j][(r, s)];
                sys[(row, var(s, j))] -= mult[i][(r, s)];
            }
        }
    }
    let one = JordanElement::unit(algebra);
    for r in 0..d {
        let row = pairs.len() * d + r;
        for (k, ck) in one.coords().iter().enumerate() {
            sys[(row, var(r, k))] += ck;
        }
    }
    let gram = sys.transpose() * &sys;
    let ev = gram.symmetric_eigenvalues();
    let top = ev.iter().fold(0.0f64, |m, v| m.max(v.abs()));
    ev.iter().filter(|v| v.abs() <= 1e-9 * top.max(1.0)).count()
}

/// Dimension count comparing observables `O` with generators `L`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ObstructionReport {
    pub algebra: String,
    pub dim_o: usize,
    /// Skew-adjoint elements of the ambient matrix algebra.
    pub dim_l: usize,
    /// Derivations of the Jordan product, computed numerically.
    pub dim_derivations: usize,
    pub linear_obstruction: bool,
    /// Set for the quaternionic family, whose observable dimension is
    /// sometimes misprinted as `2n − n²`.
    pub dimension_typo_flag: bool,
    pub verdict: String,
    pub notes: Vec<String>,
}

pub fn correspondence_obstruction(algebra: &Algebra) -> Result<ObstructionReport> {
    algebra.validate()?;
    let (n, dim_l, typo) = match algebra {
        Algebra::HermR { n } => (*n, n * (n - 1) / 2, false),
        Algebra::HermC { n } => (*n, n * n, false),
        Algebra::HermH { n } => (*n, 2 * n * n + n, true),
        other => {
            return Err(Error::Unsupported(format!(
                "no dimension count for {other}"
            )))
        }
    };
    let dim_o = algebra.dim();
    let dim_derivations = derivation_dimension(algebra);
    let linear_obstruction = dim_o != dim_l;
    let mut notes = vec![format!(
        "observables: {dim_o}; ambient skew-adjoint generators: {dim_l}; derivations of the Jordan product: {dim_derivations}"
    )];
    if let Algebra::HermC { .. } = algebra {
        notes.push(format!(
            "derivations are the ambient generators modulo the centre: {} = {} - 1",
            dim_derivations,
            n * n
        ));
    }
    if typo {
        notes.push(format!(
            "quaternionic observable dimension is 2n^2-n = {dim_o}; the expression 2n-n^2 = {} is a transposition of it",
            2 * n as i64 - (n * n) as i64
        ));
    }
    let verdict = if linear_obstruction {
        "no correspondence: dim O differs from dim L, so no linear bijection O -> L exists"
            .to_string()
    } else {
        "dimensions match: a linear bijection O -> L is possible".to_string()
    };
    Ok(ObstructionReport {
        algebra: algebra.to_string(),
        dim_o,
        dim_l,
        dim_derivations,
        linear_obstruction,
        dimension_typo_flag: typo,
        verdict,
        notes,
    })
}

/// Real *-algebra structure on all complex `n × n` matrices split as
/// `O ⊕ L` (Hermitian ⊕ skew-Hermitian), with `a∘b = ½(ab+ba)` and
/// `⟦a,b⟧ = ½(ab−ba)` so that `ab = a∘b + ⟦a,b⟧`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct AmbientReport {
    pub grading: CheckOutcome,
    pub antisymmetry: CheckOutcome,
    pub commutativity: CheckOutcome,
    pub leibniz: CheckOutcome,
    pub associator: CheckOutcome,
    /// Condition 4 with the full commutator `ab − ba` in place of `⟦,⟧`;
    /// off by a factor of four, reported as a diagnostic.
    pub associator_full_commutator: CheckOutcome,
}

impl AmbientReport {
    pub fn passed(&self) -> bool {
        [
            &self.grading,
            &self.antisymmetry,
            &self.commutativity,
            &self.leibniz,
            &self.associator,
        ]
        .iter()
        .all(|c| c.passed)
    }
}

type CMat = DMatrix<Complex64>;

fn cmax(m: &CMat) -> f64 {
    m.iter().fold(0.0, |a, z| a.max(z.norm()))
}

fn jordan(a: &CMat, b: &CMat) -> CMat {
    (a * b + b * a) * Complex64::new(0.5, 0.0)
}

fn half_comm(a: &CMat, b: &CMat) -> CMat {
    (a * b - b * a) * Complex64::new(0.5, 0.0)
}

/// Distance of `m` from the parity subspace: `m* = m` (even) or `m* = −m` (odd).
fn parity_residual(m: &CMat, odd: bool) -> f64 {
    let adj = m.adjoint();
    cmax(&if odd { m + adj } else { m - adj })
}

// ∘ adds parities, ⟦,⟧ adds them and flips: ⟦O,O⟧ ⊂ L.

/// Samples `(a, b, c)` from `O` or `L` with independent fair coins.
fn ambient_sample(n: usize, rng: &mut ChaCha8Rng) -> (Vec<(CMat, bool)>, Vec<serde_json::Value>) {
    let alg = Algebra::herm_c(n);
    let mut mats = Vec::new();
    let mut inputs = Vec::new();
    for _ in 0..3 {
        let odd = rng.random_bool(0.5);
        let h = random_element(&alg, rng);
        let m = to_complex_matrix(&h).expect("hermC realizes");
        mats.push((if odd { m * Complex64::i() } else { m }, odd));
        inputs.push(json!({"space": if odd { "L" } else { "O" }, "hermitian_part": h}));
    }
    (mats, inputs)
}

pub fn ambient_real_star_check(
    n: usize,
    trials: u64,
    tol: f64,
    seed: u64,
) -> Result<AmbientReport> {
    Algebra::herm_c(n).validate()?;
    let run = |name: &str, f: &dyn Fn(&[(CMat, bool)]) -> f64| {
        run_trials(name, seed, trials, tol, |rng| {
            let (m, inputs) = ambient_sample(n, rng);
            TrialResult {
                residual: f(&m),
                inputs,
            }
        })
    };
    Ok(AmbientReport {
        grading: run("grading", &|m| {
            let ((a, pa), (b, pb)) = (&m[0], &m[1]);
            parity_residual(&half_comm(a, b), !(pa ^ pb))
                .max(parity_residual(&jordan(a, b), pa ^ pb))
        }),
        antisymmetry: run("antisymmetry", &|m| {
            cmax(&(half_comm(&m[0].0, &m[1].0) + half_comm(&m[1].0, &m[0].0)))
        }),
        commutativity: run("commutativity", &|m| {
            cmax(&(jordan(&m[0].0, &m[1].0) - jordan(&m[1].0, &m[0].0)))
        }),
        leibniz: run("leibniz", &|m| {
            let (a, b, c) = (&m[0].0, &m[1].0, &m[2].0);
            let lhs = half_comm(a, &jordan(b, c));
            let rhs = jordan(&half_comm(a, b), c) + jordan(b, &half_comm(a, c));
            cmax(&(lhs - rhs))
        }),
        associator: run("associator", &|m| {
            let (a, b, c) = (&m[0].0, &m[1].0, &m[2].0);
            let lhs = jordan(&jordan(a, b), c) - jordan(a, &jordan(b, c));
            let rhs = half_comm(a, &half_comm(b, c)) - half_comm(&half_comm(a, b), c);
            cmax(&(lhs - rhs))
        }),
        associator_full_commutator: run("associator_full_commutator", &|m| {
            let (a, b, c) = (&m[0].0, &m[1].0, &m[2].0);
            let comm = |x: &CMat, y: &CMat| x * y - y * x;
            let lhs = jordan(&jordan(a, b), c) - jordan(a, &jordan(b, c));
            let rhs = comm(a, &comm(b, c)) - comm(&comm(a, b), c);
            cmax(&(lhs - rhs))
        }),
    })
}
