//! Jordan axioms, JB-norm axioms and spectral invariants on one algebra, plus
//! comparisons against ordinary matrix arithmetic on `HermR(n)`/`HermC(n)`.

use nalgebra::DMatrix;
use noether_core::check::{CheckOutcome, TrialResult};
use noether_core::derivations::{flow_self_adjoint, flow_skew, OrderDerivation};
use noether_core::jordan::realize::{from_complex_matrix, to_complex_matrix};
use noether_core::random::{random_positive_element, random_unit_element};
use noether_core::spectral::{jb_norm, spectrum};
use noether_core::states::star_product;
use noether_core::{Algebra, JordanElement};
use num_complex::Complex64;
use rand::Rng;
use rand_chacha::ChaCha8Rng;
use serde_json::json;

use super::cmax;
use crate::config::CampaignConfig;
use crate::report::SuiteOutput;
use crate::runner::par_trials;
use crate::CliResult;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Law {
    JordanIdentity,
    PowerCommutation,
    Polarization,
    FormalReality,
    NormSubmultiplicative,
    NormSquare,
    NormSumOfSquares,
    SpectralReconstruction,
}

pub const LAWS: [Law; 8] = [
    Law::JordanIdentity,
    Law::PowerCommutation,
    Law::Polarization,
    Law::FormalReality,
    Law::NormSubmultiplicative,
    Law::NormSquare,
    Law::NormSumOfSquares,
    Law::SpectralReconstruction,
];

impl Law {
    pub fn name(self) -> &'static str {
        match self {
            Law::JordanIdentity => "jordan_identity",
            Law::PowerCommutation => "power_commutation",
            Law::Polarization => "polarization",
            Law::FormalReality => "formal_reality",
            Law::NormSubmultiplicative => "jb_norm_submultiplicative",
            Law::NormSquare => "jb_norm_square",
            Law::NormSumOfSquares => "jb_norm_sum_of_squares",
            Law::SpectralReconstruction => "spectral_reconstruction",
        }
    }

    /// Residual on elements of JB norm one.
    pub fn trial(self, alg: &Algebra, rng: &mut ChaCha8Rng) -> TrialResult {
        let mut el = || random_unit_element(alg, rng);
        match self {
            Law::JordanIdentity => {
                let (a, b) = (el(), el());
                let a2 = a.square();
                let r = jb_norm(&(&a.circ(&b).circ(&a2) - &a.circ(&b.circ(&a2))));
                TrialResult::new(r, &[a, b])
            }
            Law::PowerCommutation => {
                let (a, b) = (el(), el());
                let pows: Vec<JordanElement> = (1..=4).map(|k| a.power(k)).collect();
                let mut r: f64 = 0.0;
                for (m, am) in pows.iter().enumerate() {
                    for an in &pows[m + 1..] {
                        r = r.max(jb_norm(&(&am.circ(&an.circ(&b)) - &an.circ(&am.circ(&b)))));
                    }
                }
                TrialResult::new(r, &[a, b])
            }
            Law::Polarization => {
                let (a, b) = (el(), el());
                let s = &a + &b;
                let r = jb_norm(
                    &(&(&(&s.square() - &a.square()) - &b.square()).scale(0.5) - &a.circ(&b)),
                );
                TrialResult::new(r, &[a, b])
            }
            Law::FormalReality => {
                // tr(a² + b²) ≥ tr(a²) ≥ ‖a‖², so a² + b² = 0 forces a = 0
                let (a, b) = (el(), el());
                let r = (jb_norm(&a).powi(2) - (&a.square() + &b.square()).trace()).max(0.0);
                TrialResult::new(r, &[a, b])
            }
            Law::NormSubmultiplicative => {
                let (a, b) = (el(), el());
                let r = (jb_norm(&a.circ(&b)) - jb_norm(&a) * jb_norm(&b)).max(0.0);
                TrialResult::new(r, &[a, b])
            }
            Law::NormSquare => {
                let a = el();
                TrialResult::new((jb_norm(&a.square()) - jb_norm(&a).powi(2)).abs(), &[a])
            }
            Law::NormSumOfSquares => {
                let (a, b) = (el(), el());
                let a2 = a.square();
                let r = (jb_norm(&a2) - jb_norm(&(&a2 + &b.square()))).max(0.0);
                TrialResult::new(r, &[a, b])
            }
            Law::SpectralReconstruction => {
                let a = el();
                let sp = spectrum(&a);
                let mut r = jb_norm(&(&sp.reconstruct() - &a));
                let mut total = JordanElement::zero(alg);
                for (i, e) in sp.idempotents.iter().enumerate() {
                    total = &total + e;
                    for (j, f) in sp.idempotents.iter().enumerate() {
                        let want = if i == j {
                            e.clone()
                        } else {
                            JordanElement::zero(alg)
                        };
                        r = r.max(jb_norm(&(&e.circ(f) - &want)));
                    }
                }
                r = r.max(jb_norm(&(&total - &JordanElement::unit(alg))));
                TrialResult::new(r, &[a])
            }
        }
    }
}

/// Operations compared with the ambient matrix algebra.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Oracle {
    JordanProduct,
    QuadraticRep,
    StarProduct,
    FlowSelfAdjoint,
    FlowSkew,
}

pub const ORACLES: [Oracle; 5] = [
    Oracle::JordanProduct,
    Oracle::QuadraticRep,
    Oracle::StarProduct,
    Oracle::FlowSelfAdjoint,
    Oracle::FlowSkew,
];

type CMat = DMatrix<Complex64>;

fn herm_sqrt(m: &CMat) -> CMat {
    let eig = m.clone().symmetric_eigen();
    let d = CMat::from_diagonal(
        &eig.eigenvalues
            .map(|l| Complex64::new(l.max(0.0).sqrt(), 0.0)),
    );
    &eig.eigenvectors * d * eig.eigenvectors.adjoint()
}

fn mat(a: &JordanElement) -> CMat {
    to_complex_matrix(a).expect("matrix family")
}

/// Random skew generator `k`: `i·h` on `HermC`, antisymmetric real on `HermR`.
fn random_skew(alg: &Algebra, rng: &mut ChaCha8Rng) -> CMat {
    let n = match alg {
        Algebra::HermR { n } | Algebra::HermC { n } => *n,
        _ => unreachable!("oracles run on matrix families"),
    };
    match alg {
        Algebra::HermC { .. } => mat(&random_unit_element(alg, rng)) * Complex64::i(),
        _ => {
            let mut k = CMat::zeros(n, n);
            for i in 0..n {
                for j in i + 1..n {
                    let v: f64 = rng.random_range(-1.0..1.0);
                    k[(i, j)] = Complex64::new(v, 0.0);
                    k[(j, i)] = Complex64::new(-v, 0.0);
                }
            }
            k
        }
    }
}

impl Oracle {
    pub fn name(self) -> &'static str {
        match self {
            Oracle::JordanProduct => "oracle_jordan_product",
            Oracle::QuadraticRep => "oracle_quadratic_rep",
            Oracle::StarProduct => "oracle_star_product",
            Oracle::FlowSelfAdjoint => "oracle_flow_self_adjoint",
            Oracle::FlowSkew => "oracle_flow_skew",
        }
    }

    pub fn trial(self, alg: &Algebra, rng: &mut ChaCha8Rng) -> TrialResult {
        let half = Complex64::new(0.5, 0.0);
        match self {
            Oracle::JordanProduct => {
                let (a, b) = (random_unit_element(alg, rng), random_unit_element(alg, rng));
                let (ma, mb) = (mat(&a), mat(&b));
                let r = cmax(&(mat(&a.circ(&b)) - (&ma * &mb + &mb * &ma) * half));
                TrialResult::new(r, &[a, b])
            }
            Oracle::QuadraticRep => {
                let (a, b) = (random_unit_element(alg, rng), random_unit_element(alg, rng));
                let ma = mat(&a);
                let r = cmax(&(mat(&a.quadratic(&b)) - &ma * mat(&b) * &ma));
                TrialResult::new(r, &[a, b])
            }
            Oracle::StarProduct => {
                let (a, b) = (
                    random_positive_element(alg, rng),
                    random_unit_element(alg, rng),
                );
                let r = match star_product(&a, &b) {
                    Ok(p) => {
                        let root = herm_sqrt(&mat(&a));
                        cmax(&(mat(&p) - &root * mat(&b) * &root))
                    }
                    Err(_) => f64::INFINITY,
                };
                TrialResult::new(r, &[a, b])
            }
            Oracle::FlowSelfAdjoint => {
                let (h, b) = (random_unit_element(alg, rng), random_unit_element(alg, rng));
                let s: f64 = rng.random_range(-2.0..2.0);
                let e = (mat(&h) * Complex64::new(s / 2.0, 0.0)).exp();
                let r = cmax(
                    &(mat(&flow_self_adjoint(&h, s, &b).expect("same algebra"))
                        - &e * mat(&b) * &e),
                );
                TrialResult {
                    residual: r,
                    inputs: vec![json!(h), json!(b), json!(s)],
                }
            }
            Oracle::FlowSkew => {
                let k = random_skew(alg, rng);
                let b = random_unit_element(alg, rng);
                let t: f64 = rng.random_range(-2.0..2.0);
                let delta = OrderDerivation::from_ambient_skew(alg, &k).expect("skew generator");
                let u = (&k * Complex64::new(t, 0.0)).exp();
                let want = &u * mat(&b) * u.adjoint();
                let r = cmax(&(mat(&flow_skew(&delta, t, &b).expect("skew")) - want));
                let generator =
                    from_complex_matrix(alg, &(&k * Complex64::new(0.0, -1.0))).expect("hermitian");
                TrialResult {
                    residual: r,
                    inputs: vec![
                        json!({"generator_times_minus_i": generator}),
                        json!(b),
                        json!(t),
                    ],
                }
            }
        }
    }
}

pub fn has_matrix_oracle(alg: &Algebra) -> bool {
    matches!(alg, Algebra::HermR { .. } | Algebra::HermC { .. })
}

/// Smallest eigenvalue of the Gram matrix `tr(eᵢ∘eⱼ)`.
pub fn trace_form_min_eigenvalue(alg: &Algebra) -> f64 {
    let basis = JordanElement::basis_elements(alg);
    let d = basis.len();
    let g = DMatrix::from_fn(d, d, |i, j| basis[i].trace_form(&basis[j]));
    g.symmetric_eigenvalues().min()
}

pub fn run(cfg: &CampaignConfig) -> CliResult<SuiteOutput> {
    let alg = cfg.algebra();
    let mut out = SuiteOutput::default();
    let gram = trace_form_min_eigenvalue(alg);
    out.push(CheckOutcome::single(
        "trace_form_positive_definite",
        (-gram).max(0.0),
        cfg.tol,
        vec![json!(gram)],
    ));
    for law in LAWS {
        out.push(par_trials(
            law.name(),
            cfg.seed,
            cfg.trials,
            cfg.tol,
            |rng| law.trial(alg, rng),
        ));
    }
    if has_matrix_oracle(alg) {
        for oracle in ORACLES {
            out.push(par_trials(
                oracle.name(),
                cfg.seed,
                cfg.trials,
                cfg.tol,
                |rng| oracle.trial(alg, rng),
            ));
        }
    } else {
        out.note(format!(
            "{alg} has no associative matrix realization over R or C; matrix oracle checks skipped"
        ));
    }
    out.note("elements are drawn with Gaussian coordinates and rescaled to JB norm 1");
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use noether_core::random::trial_rng;

    #[test]
    fn laws_hold_on_small_algebras() {
        for alg in [Algebra::herm_r(2), Algebra::spin(3), Algebra::herm_h(2)] {
            for law in LAWS {
                let r = law.trial(&alg, &mut trial_rng(1, 0));
                assert!(r.residual < 1e-10, "{alg} {}: {}", law.name(), r.residual);
            }
        }
    }

    #[test]
    fn oracles_agree() {
        for alg in [Algebra::herm_r(3), Algebra::herm_c(2)] {
            for o in ORACLES {
                let r = o.trial(&alg, &mut trial_rng(2, 0));
                assert!(r.residual < 1e-10, "{alg} {}: {}", o.name(), r.residual);
            }
        }
    }

    #[test]
    fn gram_is_positive() {
        assert!(trace_form_min_eigenvalue(&Algebra::Albert) > 0.5);
        // every spin basis vector squares to the unit, whose trace is 2
        assert!((trace_form_min_eigenvalue(&Algebra::spin(2)) - 2.0).abs() < 1e-12);
    }
}
