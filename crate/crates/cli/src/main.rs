use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use serde_json::{json, Value};

use tetrablock::domains::{
    in_closed_gamma, in_closed_tetrablock, in_gamma_distinguished_boundary, in_tetra_distinguished_boundary,
    mu_diag, phi_sup, psi_sup, tetra_membership_residual, GammaPoint, TetraPoint, Tolerance,
};
use tetrablock::feasibility::{verify_certificate, InterpolationProblem, SearchConfig};
use tetrablock::io::{
    from_cx, mat_from_json, CertificateJson, Cx, MuProblemJson, ProblemJson, SynthesisJson,
};
use tetrablock::synthesis::{
    procedure_sw_with, reduce_mu_problem, solve_with_stats, verify_realized, SolveConfig, SwOptions, SynthesisResult,
};
use tetrablock::{suites, Error};

#[derive(Parser)]
#[command(name = "tetrablock", version, about = "Tetrablock interpolation, certificates and μ_Diag checks")]
struct Cli {
    #[command(subcommand)]
    cmd: Command,
    #[command(flatten)]
    common: Common,
}

#[derive(Args, Clone)]
struct Common {
    /// Seed for every random choice.
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,
    #[arg(long, global = true)]
    tol_psd: Option<f64>,
    #[arg(long, global = true)]
    tol_eq: Option<f64>,
    /// Boundary / diagnostic grid size.
    #[arg(long, global = true)]
    grid: Option<usize>,
    /// Complete the realization to a unitary (inner solutions).
    #[arg(long, global = true)]
    unitary_extension: bool,
    #[arg(long, global = true, default_value_t = 50)]
    restarts: usize,
    /// Write the JSON report here instead of stdout.
    #[arg(long, short, global = true)]
    output: Option<PathBuf>,
}

#[derive(Subcommand)]
enum Command {
    /// Membership of a point [s, p] in Γ or [x1, x2, x3] in Ē.
    CheckPoint { input: PathBuf },
    /// μ_Diag of a 2×2 matrix.
    Mu { input: PathBuf },
    /// μ_Diag problem (nodes, matrices) → tetrablock problem.
    Reduce { input: PathBuf },
    /// Search for a certificate and run Procedure SW.
    Solve {
        problem: PathBuf,
        /// CSV of the membership residual over the λ-grid.
        #[arg(long)]
        csv: Option<PathBuf>,
    },
    /// Check a certificate or a synthesized interpolant against a problem.
    Verify {
        problem: PathBuf,
        #[arg(long, conflicts_with = "interpolant", required_unless_present = "interpolant")]
        certificate: Option<PathBuf>,
        #[arg(long)]
        interpolant: Option<PathBuf>,
    },
    /// Procedure SW on a given certificate.
    Synthesize {
        problem: PathBuf,
        certificate: PathBuf,
        #[arg(long)]
        csv: Option<PathBuf>,
    },
    /// Run the identity suites and print a pass/fail table.
    Roundtrip {
        /// Comma-separated subset of the suites.
        #[arg(long, value_delimiter = ',')]
        suites: Vec<String>,
        #[arg(long, default_value_t = 10)]
        instances: usize,
    },
}

enum Failure {
    Parse(String),
    Invalid(String),
    Failed(String),
}

impl Failure {
    fn code(&self) -> u8 {
        match self {
            Failure::Failed(_) => 1,
            Failure::Parse(_) => 2,
            Failure::Invalid(_) => 3,
        }
    }
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        match e {
            Error::Json(_) => Failure::Parse(e.to_string()),
            Error::InvalidProblem(_)
            | Error::InvalidTolerance(_)
            | Error::InvalidConfig(_)
            | Error::NotInTetrablock(_)
            | Error::NotInGamma(_)
            | Error::DegenerateTarget(_)
            | Error::ScalarMatrix
            | Error::ShapeMismatch(_) => Failure::Invalid(e.to_string()),
            _ => Failure::Failed(e.to_string()),
        }
    }
}

type Outcome = Result<(Value, bool), Failure>;

fn read(path: &Path) -> Result<String, Failure> {
    fs::read_to_string(path).map_err(|e| Failure::Parse(format!("{}: {e}", path.display())))
}

fn parse_value<T: serde::de::DeserializeOwned>(text: &str) -> Result<T, Failure> {
    serde_json::from_str(text).map_err(|e| Failure::Parse(e.to_string()))
}

impl Common {
    fn tol(&self, base: Option<Tolerance>) -> Tolerance {
        let mut t = base.unwrap_or_default();
        if let Some(v) = self.tol_psd {
            t.eps_psd = v;
        }
        if let Some(v) = self.tol_eq {
            t.eps_eq = v;
        }
        if let Some(g) = self.grid {
            t.boundary_grid_size = g;
        }
        t
    }

    fn sw(&self) -> SwOptions {
        SwOptions { unitary_extension: self.unitary_extension, grid_size: self.grid.unwrap_or(256) }
    }

    fn problem(&self, path: &Path) -> Result<InterpolationProblem, Failure> {
        let pj = ProblemJson::parse(&read(path)?)?;
        Ok(pj.to_problem(Some(self.tol(pj.tol)))?)
    }
}

fn check_point(common: &Common, input: &Path) -> Outcome {
    let pts: Vec<Cx> = parse_value(&read(input)?)?;
    let tol = common.tol(None);
    tol.validate()?;
    let report = match pts.as_slice() {
        [s, p] => {
            let pt = GammaPoint::new(from_cx(*s), from_cx(*p));
            json!({
                "domain": "gamma",
                "point": [s, p],
                "in_closed_gamma": in_closed_gamma(&pt, &tol),
                "in_distinguished_boundary": in_gamma_distinguished_boundary(&pt, &tol),
                "phi_sup": phi_sup(&pt, &tol),
            })
        }
        [a, b, c] => {
            let x = TetraPoint::new(from_cx(*a), from_cx(*b), from_cx(*c));
            json!({
                "domain": "tetrablock",
                "point": [a, b, c],
                "in_closed_tetrablock": in_closed_tetrablock(&x, &tol),
                "in_distinguished_boundary": in_tetra_distinguished_boundary(&x, &tol),
                "membership_residual": tetra_membership_residual(&x),
                "psi_sup": psi_sup(&x, tol.boundary_grid_size),
            })
        }
        _ => return Err(Failure::Parse(format!("expected 2 or 3 complex numbers, got {}", pts.len()))),
    };
    Ok((report, true))
}

fn mu(input: &Path) -> Outcome {
    let rows: Vec<Vec<Cx>> = parse_value(&read(input)?)?;
    let a = mat_from_json(&rows)?;
    Ok((json!({ "mu_diag": mu_diag(&a)? }), true))
}

fn reduce(common: &Common, input: &Path) -> Outcome {
    let mp = MuProblemJson::parse(&read(input)?)?;
    let tol = common.tol(mp.tol);
    let p = reduce_mu_problem(&mp.nodes(), &mp.matrices()?, mp.probes()?, tol)?;
    Ok((serde_json::to_value(ProblemJson::from_problem(&p)).expect("serializable"), true))
}

fn write_csv(path: &Path, result: &SynthesisResult) -> Result<(), Failure> {
    let mut out = String::from("re,im,membership_residual\n");
    for (l, r) in result.grid.iter().zip(&result.membership_profile) {
        out.push_str(&format!("{},{},{:e}\n", l.re, l.im, r));
    }
    fs::write(path, out).map_err(|e| Failure::Failed(format!("{}: {e}", path.display())))
}

fn solve(common: &Common, problem: &Path, csv: Option<&Path>) -> Outcome {
    let p = common.problem(problem)?;
    let cfg = SolveConfig {
        search: SearchConfig { seed: common.seed, max_restarts: common.restarts, ..SearchConfig::default() },
        sw: common.sw(),
    };
    let out = solve_with_stats(&p, &cfg)?;
    match out.result {
        Some(r) => {
            if let Some(path) = csv {
                write_csv(path, &r)?;
            }
            let body = SynthesisJson::from_result(&r, &p)?;
            Ok((
                json!({ "status": "solved", "restarts_used": out.restarts_used, "result": body }),
                true,
            ))
        }
        None => Ok((json!({ "status": "not-found", "restarts_used": out.restarts_used }), false)),
    }
}

fn verify(common: &Common, problem: &Path, certificate: Option<&Path>, interpolant: Option<&Path>) -> Outcome {
    let p = common.problem(problem)?;
    if let Some(path) = certificate {
        let cert = CertificateJson::parse(&read(path)?)?.to_certificate()?;
        let report = verify_certificate(&p, &cert, p.tol())?;
        let ok = report.verdict;
        return Ok((json!({ "kind": "certificate", "report": report }), ok));
    }
    let path = interpolant.expect("clap enforces one of the two");
    let theta = SynthesisJson::parse(&read(path)?)?.theta()?;
    let report = verify_realized(&theta, &p, common.grid.unwrap_or(256));
    let ok = report.max_node_residual() <= tetrablock::synthesis::NODE_TOLERANCE
        && report.membership_sup <= 1e-8
        && report.theta_norm_excess.is_some_and(|e| e <= 1e-8);
    Ok((json!({ "kind": "interpolant", "passed": ok, "report": report }), ok))
}

fn synthesize(common: &Common, problem: &Path, certificate: &Path, csv: Option<&Path>) -> Outcome {
    let p = common.problem(problem)?;
    let cert = CertificateJson::parse(&read(certificate)?)?.to_certificate()?;
    let r = procedure_sw_with(&p, &cert, p.tol(), &common.sw())?;
    if let Some(path) = csv {
        write_csv(path, &r)?;
    }
    Ok((serde_json::to_value(SynthesisJson::from_result(&r, &p)?).expect("serializable"), true))
}

fn roundtrip(common: &Common, names: &[String], instances: usize) -> Outcome {
    let chosen: Vec<String> = if names.is_empty() {
        suites::SUITE_NAMES.iter().map(|s| s.to_string()).collect()
    } else {
        names.to_vec()
    };
    let mut rows = Vec::new();
    for name in &chosen {
        let Some(outcome) = suites::run_suite(name, common.seed, instances) else {
            return Err(Failure::Invalid(format!("unknown suite {name}; known: {}", suites::SUITE_NAMES.join(", "))));
        };
        eprintln!(
            "{:<12} {} worst {:.3e} (tol {:.0e})",
            outcome.name,
            if outcome.passed { "PASS" } else { "FAIL" },
            outcome.worst,
            outcome.tolerance
        );
        rows.push(outcome);
    }
    let ok = rows.iter().all(|r| r.passed);
    Ok((json!({ "seed": common.seed, "passed": ok, "suites": rows }), ok))
}

fn run(cli: &Cli) -> Outcome {
    let c = &cli.common;
    match &cli.cmd {
        Command::CheckPoint { input } => check_point(c, input),
        Command::Mu { input } => mu(input),
        Command::Reduce { input } => reduce(c, input),
        Command::Solve { problem, csv } => solve(c, problem, csv.as_deref()),
        Command::Verify { problem, certificate, interpolant } => {
            verify(c, problem, certificate.as_deref(), interpolant.as_deref())
        }
        Command::Synthesize { problem, certificate, csv } => synthesize(c, problem, certificate, csv.as_deref()),
        Command::Roundtrip { suites, instances } => roundtrip(c, suites, *instances),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok((report, ok)) => {
            let text = serde_json::to_string_pretty(&report).expect("serializable") + "\n";
            let written = match &cli.common.output {
                Some(path) => fs::write(path, &text).map_err(|e| e.to_string()),
                None => {
                    print!("{text}");
                    Ok(())
                }
            };
            if let Err(e) = written {
                eprintln!("error: {e}");
                return ExitCode::from(1);
            }
            ExitCode::from(if ok { 0 } else { 1 })
        }
        Err(f) => {
            let msg = match &f {
                Failure::Parse(m) | Failure::Invalid(m) | Failure::Failed(m) => m,
            };
            eprintln!("error: {msg}");
            ExitCode::from(f.code())
        }
    }
}
