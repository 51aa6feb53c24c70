//! Command-line front end: evaluate the special functions, solve the
//! free-boundary problems, emit kernel tables, and run verification
//! suites. Output is deterministic: shortest round-trip decimals, fixed
//! column order, no locale or wall-clock dependence.
//!
//! Exit codes: 0 ok, 1 verification failure, 2 usage or domain error,
//! 3 convergence failure, 4 solver failure.

use std::collections::HashMap;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;

use crate::error::{Error, Result};
use crate::series::kernel_rows;
use crate::special::{ml_eval_with_terms, sigma_alpha, KernelOrder, MLParams, Truncation};
use crate::stefan::{
    build_dirichlet, build_neumann, quasi_stationary, DirichletProblem, NeumannProblem,
    RootBracket, SimilaritySolution,
};
use crate::verify::{
    boundary_residual, classical_limit_report, identity_checks, kernel_nonnegativity_scan,
    pde_residual, stefan_residual, Check, VerificationConfig,
};

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Csv,
    Json,
}

#[derive(Parser, Debug)]
#[command(name = "fracstefan", version, about = "Self-similar solutions of space-fractional Stefan problems", max_term_width = 100)]
pub struct Cli {
    /// Output file; stdout when absent
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,
    /// Output format for tables and reports
    #[arg(long, global = true, value_enum)]
    pub format: Option<Format>,
    /// Parallelism hint for verification suites (0 = default pool)
    #[arg(long, global = true)]
    pub jobs: Option<usize>,
    /// key=value config file; flags override it. Defaults to the path
    /// in FRACSTEFAN_CONFIG when set.
    #[arg(long, global = true)]
    pub config: Option<PathBuf>,
    #[command(subcommand)]
    pub cmd: Cmd,
}

#[derive(Subcommand, Debug)]
pub enum Cmd {
    /// Evaluate the three-parametric Mittag-Leffler function E_{alpha,m,l}(z)
    MlEval {
        #[arg(long)]
        alpha: f64,
        #[arg(long)]
        m: f64,
        #[arg(long, allow_hyphen_values = true)]
        l: f64,
        #[arg(long, allow_hyphen_values = true)]
        z: f64,
        /// Relative truncation tolerance of the series
        #[arg(long)]
        tol: Option<f64>,
    },
    /// Evaluate the similarity kernel sigma_alpha(z)
    Sigma {
        #[arg(long)]
        alpha: f64,
        #[arg(long, allow_hyphen_values = true)]
        z: f64,
        #[arg(long)]
        tol: Option<f64>,
    },
    /// Tabulate sigma_alpha, its integral f_alpha and first moment
    Table {
        #[arg(long)]
        alpha: f64,
        /// Upper end of the z grid
        #[arg(long)]
        zmax: Option<f64>,
        /// Number of grid steps
        #[arg(long)]
        steps: Option<usize>,
    },
    /// Solve a free-boundary problem and print the profile
    Solve {
        #[command(subcommand)]
        kind: SolveKind,
    },
    /// The quasi-stationary closed-form solution
    QuasiStationary {
        #[arg(long)]
        alpha: f64,
    },
    /// Run a verification suite; exits 1 if any tolerance is missed
    Verify {
        #[arg(value_enum)]
        suite: Suite,
        #[arg(long)]
        alpha: Option<f64>,
        #[arg(long)]
        zmax: Option<f64>,
        #[arg(long)]
        tol: Option<f64>,
    },
}

#[derive(Subcommand, Debug)]
pub enum SolveKind {
    /// Fixed-face temperature U0, melting temperature Um (U0 > Um)
    Dirichlet(DirichletArgs),
    /// Fixed-face flux amplitude g0 > 0, melting temperature gm
    Neumann(NeumannArgs),
}

#[derive(Args, Debug)]
pub struct DirichletArgs {
    #[arg(long)]
    pub alpha: f64,
    #[arg(long, allow_hyphen_values = true)]
    pub u0: f64,
    #[arg(long, allow_hyphen_values = true)]
    pub um: f64,
    /// Fixed-point residual tolerance
    #[arg(long)]
    pub tol: Option<f64>,
}

#[derive(Args, Debug)]
pub struct NeumannArgs {
    #[arg(long)]
    pub alpha: f64,
    #[arg(long)]
    pub g0: f64,
    #[arg(long, allow_hyphen_values = true)]
    pub gm: f64,
    #[arg(long)]
    pub tol: Option<f64>,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
pub enum Suite {
    Pde,
    Stefan,
    Nonneg,
    Limits,
    Identities,
}

/// Resolved defaults: flag, then config file, then built-in.
struct Settings {
    format: Format,
    jobs: usize,
    zmax: f64,
    tol: f64,
    steps: usize,
}

fn load_config(path: Option<&PathBuf>) -> Result<HashMap<String, String>> {
    let path = match path {
        Some(p) => p.clone(),
        None => match std::env::var_os("FRACSTEFAN_CONFIG") {
            Some(p) => PathBuf::from(p),
            None => return Ok(HashMap::new()),
        },
    };
    let text = std::fs::read_to_string(&path)
        .map_err(|e| Error::domain(format!("config {}: {e}", path.display())))?;
    let mut map = HashMap::new();
    for (i, line) in text.lines().enumerate() {
        let line = line.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let (k, v) = line.split_once('=').ok_or_else(|| {
            Error::domain(format!("config {} line {}: expected key=value", path.display(), i + 1))
        })?;
        map.insert(k.trim().to_string(), v.trim().to_string());
    }
    Ok(map)
}

fn settings(cli: &Cli) -> Result<Settings> {
    let cfg = load_config(cli.config.as_ref())?;
    let get = |key: &str| cfg.get(key).map(String::as_str);
    let parse_f64 = |key: &str, s: &str| -> Result<f64> {
        s.parse::<f64>()
            .ok()
            .filter(|v| v.is_finite())
            .ok_or_else(|| Error::domain(format!("config key {key}: bad number {s:?}")))
    };
    let format = match cli.format {
        Some(f) => f,
        None => match get("format") {
            Some("csv") => Format::Csv,
            Some("json") => Format::Json,
            Some(other) => return Err(Error::domain(format!("config format: {other:?}"))),
            None => Format::Csv,
        },
    };
    let jobs = match cli.jobs {
        Some(j) => j,
        None => match get("jobs") {
            Some(s) => s
                .parse()
                .map_err(|_| Error::domain(format!("config jobs: bad integer {s:?}")))?,
            None => 0,
        },
    };
    let zmax = match get("zmax") {
        Some(s) => parse_f64("zmax", s)?,
        None => 20.0,
    };
    let tol = match get("tol") {
        Some(s) => parse_f64("tol", s)?,
        None => 1e-12,
    };
    let steps = match get("steps") {
        Some(s) => s
            .parse()
            .map_err(|_| Error::domain(format!("config steps: bad integer {s:?}")))?,
        None => 100,
    };
    Ok(Settings { format, jobs, zmax, tol, steps })
}

/// Result of one command: rendered text plus whether a verification
/// suite missed a tolerance.
#[derive(Debug)]
pub struct Outcome {
    pub text: String,
    pub verification_failed: bool,
}

fn truncation(tol: Option<f64>) -> Result<Truncation> {
    match tol {
        Some(t) => Truncation::new(t, 1e-30, 200_000),
        None => Ok(Truncation::default()),
    }
}

fn bracket(tol: Option<f64>) -> RootBracket {
    RootBracket { tol: tol.unwrap_or(1e-12), ..RootBracket::default() }
}

const T_SAMPLES: [f64; 4] = [0.5, 1.0, 2.0, 4.0];
const X_POINTS: usize = 9;

#[derive(Serialize)]
struct ProfileRow {
    t: f64,
    x: f64,
    u: f64,
    s_of_t: f64,
}

#[derive(Serialize)]
struct SolveReport {
    schema_version: u32,
    kind: String,
    alpha: f64,
    front_coeff: f64,
    a: f64,
    b: f64,
    rows: Vec<ProfileRow>,
}

fn profile_rows(sol: &SimilaritySolution, tr: &Truncation) -> Result<Vec<ProfileRow>> {
    let mut rows = Vec::new();
    for &t in &T_SAMPLES {
        let s = sol.front_position(t)?;
        for i in 0..X_POINTS {
            let x = s * i as f64 / (X_POINTS - 1) as f64;
            rows.push(ProfileRow { t, x, u: sol.evaluate(x, t, tr)?, s_of_t: s });
        }
    }
    Ok(rows)
}

fn render_solve(kind: &str, sol: &SimilaritySolution, fmt: Format, tr: &Truncation) -> Result<String> {
    let rows = profile_rows(sol, tr)?;
    match fmt {
        Format::Json => {
            let report = SolveReport {
                schema_version: 1,
                kind: kind.to_string(),
                alpha: sol.alpha.alpha(),
                front_coeff: sol.front_coeff,
                a: sol.a,
                b: sol.b,
                rows,
            };
            serde_json::to_string_pretty(&report)
                .map_err(|e| Error::domain(format!("json: {e}")))
        }
        Format::Csv => {
            let mut out = String::new();
            out.push_str(&format!(
                "# kind={kind} alpha={} front_coeff={} A={} B={}\n",
                sol.alpha.alpha(),
                sol.front_coeff,
                sol.a,
                sol.b
            ));
            out.push_str("t,x,u,s_of_t\n");
            for r in rows {
                out.push_str(&format!("{},{},{},{}\n", r.t, r.x, r.u, r.s_of_t));
            }
            Ok(out)
        }
    }
}

#[derive(Serialize)]
struct SuiteReport<T: Serialize> {
    schema_version: u32,
    suite: String,
    pass: bool,
    checks: Vec<Check>,
    #[serde(skip_serializing_if = "Option::is_none")]
    detail: Option<T>,
}

fn render_suite<T: Serialize>(
    suite: &str,
    checks: Vec<Check>,
    detail: Option<T>,
) -> Result<Outcome> {
    let pass = checks.iter().all(|c| c.pass);
    let report =
        SuiteReport { schema_version: 1, suite: suite.to_string(), pass, checks, detail };
    let text = serde_json::to_string_pretty(&report)
        .map_err(|e| Error::domain(format!("json: {e}")))?;
    Ok(Outcome { text, verification_failed: !pass })
}

fn verify_config(s: &Settings, alpha: Option<f64>) -> Result<VerificationConfig> {
    let mut cfg = VerificationConfig::default();
    cfg.jobs = s.jobs;
    cfg.z_max = s.zmax;
    if let Some(a) = alpha {
        cfg.alpha_list = vec![KernelOrder::new(a)?];
    }
    Ok(cfg)
}

fn solutions_for(cfg: &VerificationConfig) -> Result<Vec<(String, SimilaritySolution)>> {
    let br = RootBracket::default();
    let mut out = Vec::new();
    for a in &cfg.alpha_list {
        let alpha = a.alpha();
        let d = build_dirichlet(&DirichletProblem::new(*a, 1.0, 0.0)?, &br, &cfg.truncation)?;
        out.push((format!("dirichlet alpha={alpha}"), d));
        let n = build_neumann(&NeumannProblem::new(*a, 1.0, 0.0)?, &br, &cfg.truncation)?;
        out.push((format!("neumann alpha={alpha}"), n));
    }
    Ok(out)
}

fn cmd_verify(suite: Suite, s: &Settings, alpha: Option<f64>, tol: Option<f64>) -> Result<Outcome> {
    let cfg = verify_config(s, alpha)?;
    match suite {
        Suite::Identities => render_suite::<()>("identities", identity_checks(&cfg)?, None),
        Suite::Nonneg => {
            let scan = kernel_nonnegativity_scan(&cfg)?;
            let floor = tol.map(|t| -t.abs()).unwrap_or(cfg.tolerances.kernel_floor);
            let checks = vec![Check {
                name: format!(
                    "kernel minimum over scan grid (argmin z={} alpha={})",
                    scan.argmin_z, scan.alpha_at_min
                ),
                observed: scan.min_value,
                threshold: floor,
                pass: scan.min_value >= floor,
            }];
            render_suite("nonneg", checks, Some(scan))
        }
        Suite::Limits => {
            let rows = classical_limit_report(&cfg)?;
            let mut checks = Vec::new();
            let mut worst_rise = f64::NEG_INFINITY;
            for w in rows.windows(2) {
                worst_rise = worst_rise
                    .max(w[1].f_gap_sup - w[0].f_gap_sup)
                    .max(w[1].xi_gap - w[0].xi_gap)
                    .max(w[1].eta_gap - w[0].eta_gap);
            }
            checks.push(Check {
                name: "classical gaps decreasing (worst rise)".to_string(),
                observed: worst_rise,
                threshold: 0.0,
                pass: worst_rise < 0.0,
            });
            let last = rows.last().expect("three rows");
            checks.push(Check {
                name: format!("f gap at alpha={}", last.alpha),
                observed: last.f_gap_sup,
                threshold: cfg.tolerances.classical_gap,
                pass: last.f_gap_sup <= cfg.tolerances.classical_gap,
            });
            render_suite("limits", checks, Some(rows))
        }
        Suite::Stefan => {
            let mut checks = Vec::new();
            for (name, sol) in solutions_for(&cfg)? {
                let r = stefan_residual(&sol, &cfg)?;
                checks.push(Check {
                    name: format!("stefan residual {name}"),
                    observed: r,
                    threshold: cfg.tolerances.stefan_sup,
                    pass: r <= cfg.tolerances.stefan_sup,
                });
                let b = boundary_residual(&sol, &cfg)?;
                checks.push(Check {
                    name: format!("boundary residual {name}"),
                    observed: b,
                    threshold: cfg.tolerances.boundary_sup,
                    pass: b <= cfg.tolerances.boundary_sup,
                });
            }
            render_suite::<()>("stefan", checks, None)
        }
        Suite::Pde => {
            let mut checks = Vec::new();
            let mut reports = Vec::new();
            for (name, sol) in solutions_for(&cfg)? {
                let rep = pde_residual(&sol, &cfg)?;
                let normalized = rep.pde_residual_sup / rep.pde_scale.max(f64::MIN_POSITIVE);
                checks.push(Check {
                    name: format!("pde residual {name} (normalized sup)"),
                    observed: normalized,
                    threshold: 1e-6,
                    pass: normalized <= 1e-6,
                });
                reports.push(rep);
            }
            // refinement order on the classical case
            let a1 = KernelOrder::new(1.0)?;
            let sol =
                build_dirichlet(&DirichletProblem::new(a1, 1.0, 0.0)?, &RootBracket::default(), &cfg.truncation)?;
            let mut coarse_cfg = cfg.clone();
            coarse_cfg.fd_step = 1e-3;
            let coarse = pde_residual(&sol, &coarse_cfg)?;
            coarse_cfg.fd_step = 5e-4;
            let fine = pde_residual(&sol, &coarse_cfg)?;
            let factor = coarse.pde_residual_sup / fine.pde_residual_sup;
            checks.push(Check {
                name: "classical residual halving factor".to_string(),
                observed: factor,
                threshold: 3.0,
                pass: factor >= 3.0,
            });
            let qs = quasi_stationary(KernelOrder::new(0.5)?)?;
            let rep = pde_residual(&qs, &cfg)?;
            checks.push(Check {
                name: "quasi-stationary flux divergence".to_string(),
                observed: rep.pde_residual_sup,
                threshold: 1e-7,
                pass: rep.pde_residual_sup <= 1e-7,
            });
            reports.push(rep);
            render_suite("pde", checks, Some(reports))
        }
    }
}

fn render_table(alpha: f64, zmax: f64, steps: usize, fmt: Format) -> Result<String> {
    if steps < 2 {
        return Err(Error::domain(format!("table needs at least 2 steps, got {steps}")));
    }
    if !(zmax > 0.0) {
        return Err(Error::domain(format!("zmax must be positive, got {zmax}")));
    }
    let a = KernelOrder::new(alpha)?;
    let tr = Truncation::default();
    let ws: Vec<f64> = (1..=steps).map(|i| zmax * i as f64 / steps as f64).collect();
    let rows = kernel_rows(a, &ws, &tr)?;
    match fmt {
        Format::Csv => {
            let mut out = String::from("z,sigma,f,moment\n");
            // z = 0: both integrals vanish; the kernel diverges for
            // alpha < 1, marked by an empty field
            out.push_str("0,,0,0\n");
            for r in rows {
                out.push_str(&format!("{},{},{},{}\n", r.w, r.sigma, r.f, r.moment));
            }
            Ok(out)
        }
        Format::Json => {
            #[derive(Serialize)]
            struct TableReport {
                schema_version: u32,
                alpha: f64,
                rows: Vec<crate::series::KernelRow>,
            }
            serde_json::to_string_pretty(&TableReport { schema_version: 1, alpha, rows })
                .map_err(|e| Error::domain(format!("json: {e}")))
        }
    }
}

/// Executes a parsed command, returning its rendered output.
pub fn execute(cli: &Cli) -> Result<Outcome> {
    let s = settings(cli)?;
    let ok = |text: String| Ok(Outcome { text, verification_failed: false });
    match &cli.cmd {
        Cmd::MlEval { alpha, m, l, z, tol } => {
            let p = MLParams::new(*alpha, *m, *l)?;
            let tr = truncation(*tol)?;
            let (value, terms) = ml_eval_with_terms(&p, *z, &tr)?;
            ok(format!("{value} terms={terms}\n"))
        }
        Cmd::Sigma { alpha, z, tol } => {
            let a = KernelOrder::new(*alpha)?;
            let tr = truncation(*tol)?;
            ok(format!("{}\n", sigma_alpha(a, *z, &tr)?))
        }
        Cmd::Table { alpha, zmax, steps } => ok(render_table(
            *alpha,
            zmax.unwrap_or(s.zmax),
            steps.unwrap_or(s.steps),
            s.format,
        )?),
        Cmd::Solve { kind } => {
            let tr = Truncation::default();
            let (name, sol) = match kind {
                SolveKind::Dirichlet(a) => {
                    let p = DirichletProblem::new(KernelOrder::new(a.alpha)?, a.u0, a.um)?;
                    ("dirichlet", build_dirichlet(&p, &bracket(a.tol.or(Some(s.tol))), &tr)?)
                }
                SolveKind::Neumann(a) => {
                    let p = NeumannProblem::new(KernelOrder::new(a.alpha)?, a.g0, a.gm)?;
                    ("neumann", build_neumann(&p, &bracket(a.tol.or(Some(s.tol))), &tr)?)
                }
            };
            ok(render_solve(name, &sol, s.format, &tr)?)
        }
        Cmd::QuasiStationary { alpha } => {
            let sol = quasi_stationary(KernelOrder::new(*alpha)?)?;
            ok(render_solve("quasi-stationary", &sol, s.format, &Truncation::default())?)
        }
        Cmd::Verify { suite, alpha, zmax, tol } => {
            let s = Settings { zmax: zmax.unwrap_or(s.zmax), ..s };
            cmd_verify(*suite, &s, *alpha, *tol)
        }
    }
}

fn exit_code(err: &Error) -> i32 {
    match err {
        Error::Domain(_) => 2,
        Error::Convergence { .. } => 3,
        Error::Bracket(_) | Error::Solver { .. } => 4,
    }
}

/// Parses arguments, runs the command, writes output. Returns the
/// process exit code.
pub fn run<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            // clap renders help/version through the same path
            let _ = e.print();
            return if e.use_stderr() { 2 } else { 0 };
        }
    };
    match execute(&cli) {
        Ok(out) => {
            match &cli.out {
                Some(path) => {
                    if let Err(e) = std::fs::write(path, &out.text) {
                        eprintln!("error: writing {}: {e}", path.display());
                        return 2;
                    }
                }
                None => print!("{}", out.text),
            }
            if out.verification_failed {
                1
            } else {
                0
            }
        }
        Err(e) => {
            eprintln!("error: {e}");
            exit_code(&e)
        }
    }
}
