//! Acceptance criteria, one line each. Runs without the libtest harness so the
//! verdict lines are always visible; exits non-zero if any criterion fails.

use std::process::{Command as Proc, ExitCode};
use std::time::{Duration, Instant};

use noether_cli::{run, CampaignConfig, CampaignReport, Command};
use noether_core::Algebra;

struct Verdict {
    ok: bool,
    detail: String,
}

impl Verdict {
    fn new(ok: bool, detail: impl Into<String>) -> Self {
        Verdict {
            ok,
            detail: detail.into(),
        }
    }
}

fn campaign(
    command: Command,
    alg: Option<&str>,
    trials: u64,
    tweak: impl FnOnce(&mut CampaignConfig),
) -> CampaignReport {
    let mut cfg = CampaignConfig::defaults(command);
    if let Some(a) = alg {
        cfg.algebra = Some(a.parse().expect("selector"));
    }
    cfg.trials = trials;
    tweak(&mut cfg);
    run(&cfg).unwrap_or_else(|e| panic!("{command:?} on {alg:?}: {e}"))
}

/// Named checks all present, passed, and below `bound`.
fn require(report: &CampaignReport, names: &[&str], bound: f64) -> Result<f64, String> {
    let mut worst: f64 = 0.0;
    for name in names {
        let c = report
            .check(name)
            .ok_or_else(|| format!("{name} missing"))?;
        if !c.passed || !(c.max_residual < bound) {
            return Err(format!(
                "{name} on {:?}: residual {:e}",
                report.config.algebra, c.max_residual
            ));
        }
        worst = worst.max(c.max_residual);
    }
    Ok(worst)
}

const SWEEP: [&str; 13] = [
    "hermR:2",
    "hermR:3",
    "hermR:4",
    "hermC:2",
    "hermC:3",
    "hermC:4",
    "hermH:2",
    "hermH:3",
    "spin:2",
    "spin:5",
    "albert",
    "hermR:2+spin:3",
    "hermC:2+hermR:2",
];

struct Sweep {
    reports: Vec<CampaignReport>,
    elapsed: Duration,
}

fn jordan_sweep() -> Sweep {
    let start = Instant::now();
    let reports = SWEEP
        .iter()
        .map(|a| campaign(Command::VerifyJordan, Some(a), 500, |c| c.tol = 1e-9))
        .collect();
    Sweep {
        reports,
        elapsed: start.elapsed(),
    }
}

fn over(reports: &[CampaignReport], names: &[&str], bound: f64) -> Result<f64, String> {
    reports
        .iter()
        .try_fold(0.0f64, |w, r| require(r, names, bound).map(|x| w.max(x)))
}

fn criterion_1(s: &Sweep) -> Verdict {
    let names = [
        "jordan_identity",
        "power_commutation",
        "polarization",
        "formal_reality",
        "trace_form_positive_definite",
    ];
    match over(&s.reports, &names, 1e-9) {
        Ok(w) => Verdict::new(
            s.elapsed < Duration::from_secs(60),
            format!(
                "{} algebras x 500 trials, max residual {w:.2e}, {:.1}s",
                s.reports.len(),
                s.elapsed.as_secs_f64()
            ),
        ),
        Err(e) => Verdict::new(false, e),
    }
}

fn criterion_2(s: &Sweep) -> Verdict {
    let names = [
        "jb_norm_submultiplicative",
        "jb_norm_square",
        "jb_norm_sum_of_squares",
    ];
    match over(&s.reports, &names, 1e-9) {
        Ok(w) => Verdict::new(true, format!("max residual {w:.2e}")),
        Err(e) => Verdict::new(false, e),
    }
}

fn criterion_3() -> Verdict {
    let names = [
        "oracle_jordan_product",
        "oracle_quadratic_rep",
        "oracle_star_product",
        "oracle_flow_self_adjoint",
        "oracle_flow_skew",
    ];
    let reports: Vec<_> = ["hermC:2", "hermC:3", "hermR:2", "hermR:3"]
        .iter()
        .map(|a| campaign(Command::VerifyJordan, Some(a), 200, |c| c.tol = 1e-9))
        .collect();
    match over(&reports, &names, 1e-9) {
        Ok(w) => Verdict::new(
            true,
            format!("5 operations x 4 algebras x 200 trials, max residual {w:.2e}"),
        ),
        Err(e) => Verdict::new(false, e),
    }
}

struct NoetherRuns {
    quantum: Vec<CampaignReport>,
    classical: CampaignReport,
    elapsed: Duration,
}

fn noether_runs() -> NoetherRuns {
    let start = Instant::now();
    let quantum = ["hermC:2", "hermC:3", "hermC:4", "spin:2", "spin:5"]
        .iter()
        .map(|a| campaign(Command::Noether, Some(a), 200, |_| {}))
        .collect();
    let classical = campaign(Command::Noether, None, 100, |c| c.classical = true);
    NoetherRuns {
        quantum,
        classical,
        elapsed: start.elapsed(),
    }
}

fn criterion_4(n: &NoetherRuns) -> Verdict {
    let names = [
        "noether_equivalence_random_pairs",
        "noether_equivalence_commuting_pairs",
    ];
    let quantum = over(&n.quantum, &names, 0.5);
    let classical = require(&n.classical, &["classical_noether_equivalence"], 0.5);
    let pairs: u64 = n
        .quantum
        .iter()
        .flat_map(|r| {
            names
                .iter()
                .map(move |k| r.check(k).map_or(0, |c| c.trials))
        })
        .sum();
    match (quantum, classical) {
        (Ok(_), Ok(_)) => Verdict::new(
            n.elapsed < Duration::from_secs(120),
            format!(
                "{pairs} quantum pairs + 5 classical preset pairs, 0 inconsistent, {:.1}s",
                n.elapsed.as_secs_f64()
            ),
        ),
        (Err(e), _) | (_, Err(e)) => Verdict::new(false, e),
    }
}

fn criterion_5(n: &NoetherRuns) -> Verdict {
    let canonical: Vec<CampaignReport> = n
        .quantum
        .iter()
        .filter(|r| {
            r.config
                .algebra
                .as_ref()
                .is_some_and(|a| matches!(a, Algebra::HermC { .. }))
        })
        .cloned()
        .collect();
    match over(&canonical, &["self_conservation"], 1e-9) {
        Ok(w) => Verdict::new(
            true,
            format!("max displacement {w:.2e} at t in {{±0.3, ±1, ±2.7}}"),
        ),
        Err(e) => Verdict::new(false, e),
    }
}

fn criterion_6() -> Verdict {
    let mut worst: f64 = 0.0;
    for a in ["hermC:2", "hermC:3"] {
        let r = campaign(Command::Reconstruct, Some(a), 200, |c| {
            c.correspondence = Some("canonical".into())
        });
        let axioms = [
            "condition_a",
            "condition_b",
            "leibniz",
            "associator",
            "associativity",
            "star_antihomomorphism",
            "star_involution",
            "antilinearity",
            "cstar_identity",
            "submultiplicativity",
        ];
        match (
            require(&r, &axioms, 1e-8),
            require(&r, &["matrix_product"], 1e-10),
        ) {
            (Ok(w), Ok(_)) => worst = worst.max(w),
            (Err(e), _) | (_, Err(e)) => return Verdict::new(false, e),
        }
        if !r.passed {
            return Verdict::new(
                false,
                format!(
                    "{a}: {:?}",
                    r.failures().map(|c| &c.name).collect::<Vec<_>>()
                ),
            );
        }
    }
    let zero = campaign(Command::Reconstruct, Some("hermC:2"), 200, |c| {
        c.correspondence = Some("zero".into())
    });
    let witnessed = |name: &str| {
        zero.check(name)
            .is_some_and(|c| !c.passed && c.witness.is_some())
    };
    Verdict::new(
        witnessed("associator") && witnessed("associativity"),
        format!("canonical max residual {worst:.2e}; zero correspondence fails associator and associativity with witnesses"),
    )
}

fn criterion_7() -> Verdict {
    let mut rows = Vec::new();
    for n in 2..=4usize {
        let r = campaign(Command::Reconstruct, Some(&format!("hermR:{n}")), 1, |_| {});
        let o = &r.details["obstruction"];
        if o["dim_o"] != n * (n + 1) / 2 || o["dim_l"] != n * (n - 1) / 2 || !r.passed {
            return Verdict::new(false, format!("hermR:{n} reported {o}"));
        }
        rows.push(format!("R{n}:({},{})", o["dim_o"], o["dim_l"]));
    }
    for n in 2..=3usize {
        let r = campaign(Command::Reconstruct, Some(&format!("hermH:{n}")), 1, |_| {});
        let o = &r.details["obstruction"];
        if o["dim_o"] != 2 * n * n - n
            || o["dim_l"] != 2 * n * n + n
            || o["dimension_typo_flag"] != true
        {
            return Verdict::new(false, format!("hermH:{n} reported {o}"));
        }
        rows.push(format!("H{n}:({},{})", o["dim_o"], o["dim_l"]));
    }
    Verdict::new(true, format!("{} with typo flag on H", rows.join(" ")))
}

fn criterion_8() -> Verdict {
    let r = campaign(Command::Thermal, Some("hermC:2"), 1, |c| {
        c.betas = vec![0.0, 0.25, 0.5, 1.0, 2.0]
    });
    let checks = [
        ("partition_function_at_zero", 0.5),
        ("partition_function_closed_form", 1e-12),
        ("thermal_composition_law", 1e-9),
        ("ground_state_limit", 1e-10),
    ];
    for (name, bound) in checks {
        if let Err(e) = require(&r, &[name], bound) {
            return Verdict::new(false, e);
        }
    }
    let grid = r.check("thermal_composition_law").map_or(0, |c| c.trials);
    let note = r
        .notes
        .iter()
        .any(|n| n.contains("Z(beta+gamma)/Z(gamma)") && n.contains("Z(beta)/Z(gamma)"));
    Verdict::new(
        grid == 25 && note,
        format!(
            "Z(0)=1, Z(1) exact, {grid}-point composition grid, discrepancy note present: {note}"
        ),
    )
}

fn criterion_9(n: &NoetherRuns) -> Verdict {
    let agree = over(
        &n.quantum,
        &[
            "integrated_vs_closed_form_self_adjoint",
            "integrated_vs_closed_form_skew",
        ],
        1e-6,
    );
    let auto = over(
        &n.quantum,
        &["skew_flow_preserves_product", "skew_flow_preserves_states"],
        1e-9,
    );
    let witness = over(&n.quantum, &["self_adjoint_breaks_product"], 0.5);
    match (agree, auto, witness) {
        (Ok(a), Ok(b), Ok(_)) => Verdict::new(
            true,
            format!("integrated vs closed form {a:.2e} (1000 steps), automorphism {b:.2e}, non-preservation witness found"),
        ),
        (Err(e), _, _) | (_, Err(e), _) | (_, _, Err(e)) => Verdict::new(false, e),
    }
}

fn criterion_10(n: &NoetherRuns) -> Verdict {
    let r = &n.classical;
    let exact = require(
        r,
        &[
            "canonical_pair",
            "bracket_leibniz_symbolic",
            "bracket_jacobi_symbolic",
        ],
        f64::MIN_POSITIVE,
    );
    let conserved = require(
        r,
        &["oscillator_energy_drift", "angular_momentum_conservation"],
        1e-6,
    );
    let triples = r.check("bracket_jacobi_symbolic").map_or(0, |c| c.trials);
    match (exact, conserved) {
        (Ok(_), Ok(w)) => Verdict::new(
            triples >= 100,
            format!("{triples} symbolic triples exact, conservation drift {w:.2e}"),
        ),
        (Err(e), _) | (_, Err(e)) => Verdict::new(false, e),
    }
}

fn cli(args: &[&str], workers: &str) -> (i32, serde_json::Value) {
    let out = Proc::new(env!("CARGO_BIN_EXE_noether"))
        .args(args)
        .env("NOETHER_WORKERS", workers)
        .output()
        .expect("binary runs");
    let mut v: serde_json::Value = serde_json::from_slice(&out.stdout).expect("json report");
    v["duration_ms"] = serde_json::Value::Null;
    (out.status.code().unwrap_or(-1), v)
}

fn criterion_11() -> Verdict {
    let runs: [&[&str]; 3] = [
        &[
            "reconstruct",
            "--algebra",
            "hermC:2",
            "--correspondence",
            "zero",
            "--trials",
            "50",
            "--seed",
            "7",
        ],
        &[
            "noether",
            "--algebra",
            "hermC:3",
            "--trials",
            "40",
            "--seed",
            "7",
        ],
        &[
            "verify-jordan",
            "--algebra",
            "albert",
            "--trials",
            "40",
            "--seed",
            "7",
        ],
    ];
    for args in runs {
        let (c1, a) = cli(args, "1");
        let (c2, b) = cli(args, "4");
        let (c3, c) = cli(args, "4");
        if a != b || b != c || c1 != c2 || c2 != c3 {
            return Verdict::new(false, format!("{} differs between runs", args[0]));
        }
    }
    Verdict::new(
        true,
        "3 commands x 3 runs (1 and 4 workers) byte-identical apart from duration_ms",
    )
}

fn main() -> ExitCode {
    let sweep = jordan_sweep();
    let noether = noether_runs();
    let verdicts = [
        ("jordan axiom suite", criterion_1(&sweep)),
        ("JB norm axioms", criterion_2(&sweep)),
        ("matrix oracle equivalence", criterion_3()),
        ("noether equivalence", criterion_4(&noether)),
        ("self-conservation", criterion_5(&noether)),
        ("reconstruction", criterion_6()),
        ("obstruction table", criterion_7()),
        ("thermodynamics", criterion_8()),
        ("flow cross-validation", criterion_9(&noether)),
        ("classical module", criterion_10(&noether)),
        ("determinism", criterion_11()),
    ];
    let mut failed = 0;
    for (i, (name, v)) in verdicts.iter().enumerate() {
        println!(
            "criterion {:>2} {:<26} {}  {}",
            i + 1,
            name,
            if v.ok { "PASS" } else { "FAIL" },
            v.detail
        );
        failed += usize::from(!v.ok);
    }
    println!(
        "{} of {} criteria passed",
        verdicts.len() - failed,
        verdicts.len()
    );
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
