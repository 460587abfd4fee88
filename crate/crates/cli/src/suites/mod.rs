pub mod classical;
pub mod jordan;
pub mod noether;
pub mod reconstruct;
pub mod thermal;

use std::path::Path;

use nalgebra::DMatrix;
use noether_core::reconstruction::DynamicalCorrespondence;
use noether_core::Algebra;
use num_complex::Complex64;

use crate::{CliError, CliResult};

/// Largest entry modulus of a complex matrix difference.
pub(crate) fn cmax(m: &DMatrix<Complex64>) -> f64 {
    m.iter().fold(0.0, |acc, z| acc.max(z.norm()))
}

/// Resolves `--correspondence`: `canonical`, `zero`, `scaled:α`, `transposed`,
/// `three-form`, or a path to a JSON bracket table. Without a selector the
/// canonical correspondence is used where one exists, the 3-form
/// `e₁₂₃ + e₁₄₅` on `Spin(n ≥ 5)`, and zero otherwise.
pub fn correspondence(
    alg: &Algebra,
    selector: Option<&str>,
) -> CliResult<(DynamicalCorrespondence, String)> {
    let canonical = || {
        DynamicalCorrespondence::canonical(alg)
            .map_err(|_| CliError::usage(format!("{alg} has no canonical correspondence")))
    };
    let sel = match selector {
        Some(s) => s.trim().to_string(),
        None if DynamicalCorrespondence::canonical(alg).is_ok() => "canonical".into(),
        None if matches!(alg, Algebra::Spin { n } if *n >= 5) => "three-form".into(),
        None => "zero".into(),
    };
    let psi = match sel.as_str() {
        "canonical" => canonical()?,
        "zero" => DynamicalCorrespondence::zero(alg),
        "transposed" => canonical()?.transposed()?,
        "three-form" => match alg {
            Algebra::Spin { n } if *n >= 5 => {
                DynamicalCorrespondence::spin_three_form(*n, &[([0, 1, 2], 1.0), ([0, 3, 4], 1.0)])?
            }
            Algebra::Spin { n } if *n >= 3 => {
                DynamicalCorrespondence::spin_three_form(*n, &[([0, 1, 2], 1.0)])?
            }
            _ => {
                return Err(CliError::usage(
                    "three-form correspondences need spin:n with n >= 3",
                ))
            }
        },
        s if s.starts_with("scaled:") => {
            let alpha: f64 = s["scaled:".len()..]
                .parse()
                .map_err(|_| CliError::usage(format!("bad scale in '{s}'")))?;
            if !alpha.is_finite() {
                return Err(CliError::usage("scale must be finite"));
            }
            canonical()?.scaled(alpha)
        }
        s if s.ends_with(".json") => {
            let path = Path::new(s);
            let text = std::fs::read_to_string(path).map_err(|source| CliError::Io {
                path: path.to_path_buf(),
                source,
            })?;
            let psi: DynamicalCorrespondence =
                serde_json::from_str(&text).map_err(|e| CliError::usage(format!("{s}: {e}")))?;
            if psi.algebra() != alg {
                return Err(CliError::usage(format!(
                    "{s} is a table on {}, not {alg}",
                    psi.algebra()
                )));
            }
            psi
        }
        other => return Err(CliError::usage(format!("unknown correspondence '{other}'"))),
    };
    Ok((psi, sel))
}
