use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// A concrete finite-dimensional formally real Jordan algebra.
///
/// Every element is a real coordinate vector relative to a fixed basis:
///
/// * `HermR(n)`, `HermC(n)`, `HermH(n)`, `Albert` (= `HermO(3)`): the `n`
///   diagonal units `E_ii` first, then for every `i < j` in row-major order and
///   every real unit `u` of the scalar algebra the element `u E_ij + ū E_ji`.
///   A coordinate is therefore literally a component of the matrix entry.
/// * `Spin(n)`: the standard basis of `ℝⁿ ⊕ ℝ`, vector part first, scalar `t` last.
/// * `DirectSum`: concatenation of the component bases.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(tag = "family", content = "params")]
pub enum Algebra {
    #[serde(rename = "hermR")]
    HermR { n: usize },
    #[serde(rename = "hermC")]
    HermC { n: usize },
    #[serde(rename = "hermH")]
    HermH { n: usize },
    #[serde(rename = "albert")]
    Albert,
    #[serde(rename = "spin")]
    Spin { n: usize },
    #[serde(rename = "direct_sum")]
    DirectSum { components: Vec<Algebra> },
}

/// Real dimension of the matrix entry algebra for the Hermitian families.
pub(crate) fn entry_dim(alg: &Algebra) -> Option<(usize, usize)> {
    match *alg {
        Algebra::HermR { n } => Some((n, 1)),
        Algebra::HermC { n } => Some((n, 2)),
        Algebra::HermH { n } => Some((n, 4)),
        Algebra::Albert => Some((3, 8)),
        _ => None,
    }
}

impl Algebra {
    pub fn herm_r(n: usize) -> Self {
        Algebra::HermR { n }
    }
    pub fn herm_c(n: usize) -> Self {
        Algebra::HermC { n }
    }
    pub fn herm_h(n: usize) -> Self {
        Algebra::HermH { n }
    }
    pub fn spin(n: usize) -> Self {
        Algebra::Spin { n }
    }
    pub fn direct_sum(components: Vec<Algebra>) -> Self {
        Algebra::DirectSum { components }
    }

    pub fn validate(&self) -> Result<()> {
        match self {
            Algebra::HermR { n }
            | Algebra::HermC { n }
            | Algebra::HermH { n }
            | Algebra::Spin { n } => {
                if *n == 0 {
                    return Err(Error::InvalidAlgebra(format!(
                        "{self}: size must be at least 1"
                    )));
                }
                Ok(())
            }
            Algebra::Albert => Ok(()),
            Algebra::DirectSum { components } => {
                if components.is_empty() {
                    return Err(Error::InvalidAlgebra("empty direct sum".into()));
                }
                components.iter().try_for_each(Algebra::validate)
            }
        }
    }

    pub fn dim(&self) -> usize {
        match self {
            Algebra::HermR { n } => n * (n + 1) / 2,
            Algebra::HermC { n } => n * n,
            Algebra::HermH { n } => 2 * n * n - n,
            Algebra::Albert => 27,
            Algebra::Spin { n } => n + 1,
            Algebra::DirectSum { components } => components.iter().map(Algebra::dim).sum(),
        }
    }

    /// Number of orthogonal primitive idempotents summing to the unit.
    pub fn rank(&self) -> usize {
        match self {
            Algebra::HermR { n } | Algebra::HermC { n } | Algebra::HermH { n } => *n,
            Algebra::Albert => 3,
            Algebra::Spin { .. } => 2,
            Algebra::DirectSum { components } => components.iter().map(Algebra::rank).sum(),
        }
    }

    /// True for families realized as Hermitian matrices over an associative
    /// scalar algebra, where `U_a(b) = aba` holds literally.
    pub fn is_associative_matrix_family(&self) -> bool {
        matches!(
            self,
            Algebra::HermR { .. } | Algebra::HermC { .. } | Algebra::HermH { .. }
        )
    }

    /// `(component, coordinate offset)` pairs of a direct sum.
    pub fn component_offsets(&self) -> Vec<(&Algebra, usize)> {
        match self {
            Algebra::DirectSum { components } => {
                let mut off = 0;
                components
                    .iter()
                    .map(|c| {
                        let here = off;
                        off += c.dim();
                        (c, here)
                    })
                    .collect()
            }
            other => vec![(other, 0)],
        }
    }

    /// Human-readable names of the canonical basis elements.
    pub fn basis_labels(&self) -> Vec<String> {
        const UNITS: [&str; 8] = ["1", "e1", "e2", "e3", "e4", "e5", "e6", "e7"];
        const QUNITS: [&str; 4] = ["1", "i", "j", "k"];
        match self {
            Algebra::DirectSum { components } => components
                .iter()
                .enumerate()
                .flat_map(|(c, alg)| {
                    alg.basis_labels()
                        .into_iter()
                        .map(move |l| format!("[{c}]{l}"))
                })
                .collect(),
            Algebra::Spin { n } => (1..=*n)
                .map(|i| format!("x{i}"))
                .chain(std::iter::once("t".into()))
                .collect(),
            alg => {
                let (n, d) = entry_dim(alg).expect("matrix family");
                let names: &[&str] = match d {
                    1 => &UNITS[..1],
                    2 => &["1", "i"],
                    4 => &QUNITS,
                    _ => &UNITS,
                };
                let mut out: Vec<String> = (1..=n).map(|i| format!("E{i}{i}")).collect();
                for i in 0..n {
                    for j in i + 1..n {
                        for u in names {
                            out.push(format!("{u}·E{}{}+h.c.", i + 1, j + 1));
                        }
                    }
                }
                out
            }
        }
    }
}

impl fmt::Display for Algebra {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Algebra::HermR { n } => write!(f, "hermR:{n}"),
            Algebra::HermC { n } => write!(f, "hermC:{n}"),
            Algebra::HermH { n } => write!(f, "hermH:{n}"),
            Algebra::Albert => write!(f, "albert"),
            Algebra::Spin { n } => write!(f, "spin:{n}"),
            Algebra::DirectSum { components } => {
                for (i, c) in components.iter().enumerate() {
                    if i > 0 {
                        f.write_str("+")?;
                    }
                    write!(f, "{c}")?;
                }
                Ok(())
            }
        }
    }
}

/// Parses selectors such as `hermC:3`, `albert`, `spin:5` or `hermR:2+spin:3`.
impl FromStr for Algebra {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let parts: Vec<&str> = s.split('+').map(str::trim).collect();
        if parts.len() > 1 {
            let components = parts
                .into_iter()
                .map(str::parse)
                .collect::<Result<Vec<_>>>()?;
            let alg = Algebra::DirectSum { components };
            alg.validate()?;
            return Ok(alg);
        }
        let (name, size) = match s.split_once(':') {
            Some((name, size)) => {
                let n = size
                    .trim()
                    .parse::<usize>()
                    .map_err(|_| Error::InvalidAlgebra(format!("bad size in '{s}'")))?;
                (name.trim(), Some(n))
            }
            None => (s.trim(), None),
        };
        let alg = match (name.to_ascii_lowercase().as_str(), size) {
            ("hermr", Some(n)) => Algebra::HermR { n },
            ("hermc", Some(n)) => Algebra::HermC { n },
            ("hermh", Some(n)) => Algebra::HermH { n },
            ("spin", Some(n)) => Algebra::Spin { n },
            ("albert", None) | ("hermo", Some(3)) => Algebra::Albert,
            _ => {
                return Err(Error::InvalidAlgebra(format!(
                    "unknown algebra selector '{s}'"
                )))
            }
        };
        alg.validate()?;
        Ok(alg)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn dimensions_match_counting_formulas() {
        for n in 1..6 {
            assert_eq!(Algebra::herm_r(n).dim(), n * (n + 1) / 2);
            assert_eq!(Algebra::herm_c(n).dim(), n * n);
            assert_eq!(Algebra::herm_h(n).dim(), 2 * n * n - n);
            assert_eq!(Algebra::spin(n).dim(), n + 1);
            // diagonal plus one entry-algebra block per strictly upper entry
            for (alg, d) in [
                (Algebra::herm_r(n), 1),
                (Algebra::herm_c(n), 2),
                (Algebra::herm_h(n), 4),
            ] {
                assert_eq!(alg.dim(), n + d * n * (n - 1) / 2);
                assert_eq!(alg.basis_labels().len(), alg.dim());
            }
        }
        assert_eq!(Algebra::Albert.dim(), 27);
        assert_eq!(Algebra::Albert.basis_labels().len(), 27);
        let sum = Algebra::direct_sum(vec![Algebra::herm_c(2), Algebra::spin(3)]);
        assert_eq!(sum.dim(), 8);
        assert_eq!(sum.rank(), 4);
    }

    #[test]
    fn selector_round_trip() {
        for s in [
            "hermR:3",
            "hermC:2",
            "hermH:2",
            "albert",
            "spin:5",
            "hermC:2+spin:3",
        ] {
            let alg: Algebra = s.parse().unwrap();
            assert_eq!(alg.to_string(), s);
        }
        assert!("hermC:0".parse::<Algebra>().is_err());
        assert!("octo:3".parse::<Algebra>().is_err());
        assert!("hermC".parse::<Algebra>().is_err());
        assert!("hermC:x".parse::<Algebra>().is_err());
    }

    #[test]
    fn json_shape() {
        let v = serde_json::to_value(Algebra::herm_c(3)).unwrap();
        assert_eq!(
            v,
            serde_json::json!({"family": "hermC", "params": {"n": 3}})
        );
        let back: Algebra =
            serde_json::from_value(serde_json::json!({"family": "albert"})).unwrap();
        assert_eq!(back, Algebra::Albert);
    }
}
