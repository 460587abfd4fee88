use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use noether_cli::{run, CampaignConfig, Command, Overrides};

#[derive(Parser)]
#[command(
    name = "noether",
    version,
    about = "Seeded verification campaigns for Jordan-algebraic dynamics"
)]
struct Cli {
    #[command(subcommand)]
    command: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// Jordan and JB-norm axioms, spectral invariants, matrix oracles
    VerifyJordan(Common),
    /// Symmetry generation in both directions against the bracket test
    Noether(NoetherArgs),
    /// Dynamical correspondences and the rebuilt C*-algebra
    Reconstruct(ReconstructArgs),
    /// Partition function, Gibbs states and thermal translations
    Thermal(ThermalArgs),
}

#[derive(Args)]
struct Common {
    /// Algebra selector such as hermC:3, spin:5, albert or hermC:2+spin:3
    #[arg(long)]
    algebra: Option<String>,
    #[arg(long)]
    trials: Option<u64>,
    #[arg(long)]
    seed: Option<u64>,
    #[arg(long)]
    tol: Option<f64>,
    /// TOML file with the same keys as the flags; flags win
    #[arg(long)]
    config: Option<PathBuf>,
    /// Write the JSON report here instead of stdout
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct NoetherArgs {
    #[command(flatten)]
    common: Common,
    /// Polynomial observables on phase space instead of a Jordan algebra
    #[arg(long)]
    classical: bool,
    #[arg(long)]
    correspondence: Option<String>,
    /// Flow times, comma separated
    #[arg(long, value_delimiter = ',', allow_hyphen_values = true)]
    t_samples: Option<Vec<f64>>,
    /// Integration steps
    #[arg(long)]
    steps: Option<usize>,
    /// Integration horizon
    #[arg(long, allow_hyphen_values = true)]
    t_end: Option<f64>,
}

#[derive(Args)]
struct ReconstructArgs {
    #[command(flatten)]
    common: Common,
    /// canonical, zero, scaled:<alpha>, transposed, three-form, or a JSON table path
    #[arg(long)]
    correspondence: Option<String>,
}

#[derive(Args)]
struct ThermalArgs {
    #[command(flatten)]
    common: Common,
    /// JSON Jordan element
    #[arg(long)]
    hamiltonian: Option<PathBuf>,
    /// Inverse temperatures, comma separated; also the gamma grid
    #[arg(long, value_delimiter = ',')]
    betas: Option<Vec<f64>>,
}

fn overrides(c: Common) -> (Overrides, Option<PathBuf>) {
    let o = Overrides {
        seed: c.seed,
        trials: c.trials,
        tol: c.tol,
        algebra: c.algebra,
        config: c.config,
        ..Default::default()
    };
    (o, c.out)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let (command, flags, out) = match cli.command {
        Cmd::VerifyJordan(c) => {
            let (o, out) = overrides(c);
            (Command::VerifyJordan, o, out)
        }
        Cmd::Noether(a) => {
            let (o, out) = overrides(a.common);
            let o = Overrides {
                classical: a.classical,
                correspondence: a.correspondence,
                t_samples: a.t_samples,
                steps: a.steps,
                t_end: a.t_end,
                ..o
            };
            (Command::Noether, o, out)
        }
        Cmd::Reconstruct(a) => {
            let (o, out) = overrides(a.common);
            (
                Command::Reconstruct,
                Overrides {
                    correspondence: a.correspondence,
                    ..o
                },
                out,
            )
        }
        Cmd::Thermal(a) => {
            let (o, out) = overrides(a.common);
            (
                Command::Thermal,
                Overrides {
                    hamiltonian: a.hamiltonian,
                    betas: a.betas,
                    ..o
                },
                out,
            )
        }
    };

    if let Err(e) = noether_cli::runner::init_workers() {
        eprintln!("noether: {e}");
        return ExitCode::from(2);
    }
    let report = CampaignConfig::resolve(command, flags).and_then(|cfg| run(&cfg));
    let report = match report {
        Ok(r) => r,
        Err(e) => {
            eprintln!("noether: {e}");
            return ExitCode::from(2);
        }
    };
    let json = report.to_json();
    match out {
        Some(path) => {
            if let Err(e) = std::fs::write(&path, json + "\n") {
                eprintln!("noether: cannot write {}: {e}", path.display());
                return ExitCode::from(2);
            }
        }
        None => println!("{json}"),
    }
    for c in report.failures() {
        eprintln!(
            "FAIL {} (max residual {:e}, tol {:e})",
            c.name, c.max_residual, c.tolerance
        );
    }
    if report.passed {
        ExitCode::SUCCESS
    } else {
        ExitCode::from(1)
    }
}
