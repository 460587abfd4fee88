//! Campaign configuration: defaults per command, an optional TOML file, and
//! command-line flags, merged in that order of increasing precedence.

use std::path::{Path, PathBuf};

use noether_core::noether::DEFAULT_T_SAMPLES;
use noether_core::{Algebra, JordanElement};
use serde::{Deserialize, Serialize};

use crate::{CliError, CliResult};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Command {
    VerifyJordan,
    Noether,
    Reconstruct,
    Thermal,
}

/// Keys accepted in a `--config` file. Keys that a command does not use are
/// ignored so one file can drive several commands.
#[derive(Clone, Debug, Default, PartialEq, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FileConfig {
    pub seed: Option<u64>,
    pub trials: Option<u64>,
    pub tol: Option<f64>,
    pub algebra: Option<String>,
    pub correspondence: Option<String>,
    pub classical: Option<bool>,
    pub t_samples: Option<Vec<f64>>,
    pub steps: Option<usize>,
    pub t_end: Option<f64>,
    pub betas: Option<Vec<f64>>,
    pub hamiltonian: Option<PathBuf>,
}

impl FileConfig {
    pub fn load(path: &Path) -> CliResult<Self> {
        let text = std::fs::read_to_string(path).map_err(|source| CliError::Io {
            path: path.to_path_buf(),
            source,
        })?;
        toml::from_str(&text).map_err(|e| CliError::usage(format!("{}: {e}", path.display())))
    }
}

/// Values given as flags.
#[derive(Clone, Debug, Default, PartialEq)]
pub struct Overrides {
    pub seed: Option<u64>,
    pub trials: Option<u64>,
    pub tol: Option<f64>,
    pub algebra: Option<String>,
    pub correspondence: Option<String>,
    pub classical: bool,
    pub t_samples: Option<Vec<f64>>,
    pub steps: Option<usize>,
    pub t_end: Option<f64>,
    pub betas: Option<Vec<f64>>,
    pub hamiltonian: Option<PathBuf>,
    pub config: Option<PathBuf>,
}

/// Fully resolved configuration, echoed into every report.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct CampaignConfig {
    pub command: Command,
    pub seed: u64,
    pub trials: u64,
    pub tol: f64,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub algebra: Option<Algebra>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub correspondence: Option<String>,
    pub classical: bool,
    pub t_samples: Vec<f64>,
    pub steps: usize,
    pub t_end: f64,
    pub betas: Vec<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub hamiltonian: Option<JordanElement>,
}

pub const DEFAULT_SEED: u64 = 42;
pub const DEFAULT_TRIALS: u64 = 200;
pub const DEFAULT_STEPS: usize = 1000;
pub const DEFAULT_T_END: f64 = 2.0;
pub const DEFAULT_BETAS: [f64; 5] = [0.0, 0.25, 0.5, 1.0, 2.0];

fn default_tol(command: Command) -> f64 {
    match command {
        Command::VerifyJordan | Command::Thermal => 1e-9,
        Command::Noether | Command::Reconstruct => 1e-8,
    }
}

fn load_hamiltonian(path: &Path) -> CliResult<JordanElement> {
    let text = std::fs::read_to_string(path).map_err(|source| CliError::Io {
        path: path.to_path_buf(),
        source,
    })?;
    serde_json::from_str(&text)
        .map_err(|e| CliError::usage(format!("{}: not a Jordan element: {e}", path.display())))
}

impl CampaignConfig {
    /// Defaults for `command` with no file and no flags.
    pub fn defaults(command: Command) -> Self {
        Self::resolve(command, Overrides::default()).expect("defaults are valid")
    }

    pub fn resolve(command: Command, flags: Overrides) -> CliResult<Self> {
        let file = match &flags.config {
            Some(p) => FileConfig::load(p)?,
            None => FileConfig::default(),
        };
        let classical = flags.classical || file.classical.unwrap_or(false);
        let algebra_sel = flags.algebra.or(file.algebra);
        let correspondence = flags.correspondence.or(file.correspondence);
        if classical && command != Command::Noether {
            return Err(CliError::usage(
                "--classical applies only to the noether command",
            ));
        }
        if classical && (algebra_sel.is_some() || correspondence.is_some()) {
            return Err(CliError::usage(
                "--classical cannot be combined with --algebra or --correspondence",
            ));
        }
        if command == Command::Thermal && correspondence.is_some() {
            return Err(CliError::usage("thermal takes no correspondence"));
        }

        let hamiltonian = match flags.hamiltonian.or(file.hamiltonian) {
            Some(p) if command == Command::Thermal => Some(load_hamiltonian(&p)?),
            Some(_) => {
                return Err(CliError::usage(
                    "--hamiltonian applies only to the thermal command",
                ))
            }
            None => None,
        };
        let algebra = if classical {
            None
        } else {
            let parsed = algebra_sel
                .map(|s| {
                    s.parse::<Algebra>()
                        .map_err(|e| CliError::usage(e.to_string()))
                })
                .transpose()?;
            match (parsed, &hamiltonian) {
                (Some(a), Some(h)) if h.algebra() != &a => {
                    return Err(CliError::usage(format!(
                        "hamiltonian lives in {}, not {a}",
                        h.algebra()
                    )))
                }
                (Some(a), _) => Some(a),
                (None, Some(h)) => Some(h.algebra().clone()),
                (None, None) => Some(match command {
                    Command::VerifyJordan => Algebra::herm_c(3),
                    _ => Algebra::herm_c(2),
                }),
            }
        };

        let cfg = CampaignConfig {
            command,
            seed: flags.seed.or(file.seed).unwrap_or(DEFAULT_SEED),
            trials: flags.trials.or(file.trials).unwrap_or(DEFAULT_TRIALS),
            tol: flags
                .tol
                .or(file.tol)
                .unwrap_or_else(|| default_tol(command)),
            correspondence: match command {
                Command::Reconstruct => Some(correspondence.unwrap_or_else(|| "canonical".into())),
                _ => correspondence,
            },
            algebra,
            classical,
            t_samples: flags
                .t_samples
                .or(file.t_samples)
                .unwrap_or_else(|| DEFAULT_T_SAMPLES.to_vec()),
            steps: flags.steps.or(file.steps).unwrap_or(DEFAULT_STEPS),
            t_end: flags.t_end.or(file.t_end).unwrap_or(DEFAULT_T_END),
            betas: flags
                .betas
                .or(file.betas)
                .unwrap_or_else(|| DEFAULT_BETAS.to_vec()),
            hamiltonian,
        };
        cfg.validate()?;
        Ok(cfg)
    }

    fn validate(&self) -> CliResult<()> {
        if self.trials == 0 {
            return Err(CliError::usage("trials must be at least 1"));
        }
        if !(self.tol > 0.0 && self.tol.is_finite()) {
            return Err(CliError::usage("tol must be a positive number"));
        }
        if self.t_samples.is_empty() || self.t_samples.iter().any(|t| !t.is_finite()) {
            return Err(CliError::usage(
                "t-samples must be a nonempty list of finite numbers",
            ));
        }
        if self.steps == 0 {
            return Err(CliError::usage("steps must be at least 1"));
        }
        if !(self.t_end.is_finite() && self.t_end != 0.0) {
            return Err(CliError::usage("t-end must be finite and nonzero"));
        }
        if self.betas.is_empty() || self.betas.iter().any(|b| !(b.is_finite() && *b >= 0.0)) {
            return Err(CliError::usage(
                "betas must be a nonempty list of nonnegative numbers",
            ));
        }
        Ok(())
    }

    /// The algebra of a quantum campaign.
    pub fn algebra(&self) -> &Algebra {
        self.algebra
            .as_ref()
            .expect("quantum campaigns carry an algebra")
    }
}
