//! Command-line interface: branching queries, model validation, flavor
//! textures and CKM extraction, RG running, and deterministic scans.
//!
//! Exit codes: 0 on success, 1 on a domain failure (invalid model, no
//! unification), 2 on malformed input or flags. Successful runs write
//! nothing to standard error.

use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use gutkit::io;
use gutkit_core::flavor::{
    ckm, ckm_texture_estimate, diagonalize_mass, fn_texture, FNParams, Matrix3, Sector,
    YukawaMatrix, C64,
};
use gutkit_core::liealg::{branch, display_name, find_embedding, parse_irrep, AlgebraId, Embedding};
use gutkit_core::model::validate_model;
use gutkit_core::rg::{run as rg_run, unification_scale};
use gutkit_core::scan::{fit_epsilon, run_scan, ScanConfig, Targets};

#[derive(Parser)]
#[command(
    name = "gutkit",
    version,
    about = "Representation theory, flavor textures, and gauge-coupling running for A-D-E unified models"
)]
struct Cli {
    /// Output format; csv applies to tabulations (rg run, scan).
    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    format: Format,
    /// Seed override for randomized commands (scan, fit).
    #[arg(long, global = true)]
    seed: Option<u64>,
    /// Scan configuration file for scan and fit.
    #[arg(long, global = true)]
    config: Option<PathBuf>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Copy, Clone, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Json,
    Csv,
}

#[derive(Subcommand)]
enum Command {
    /// Decompose an irrep under a regular subalgebra embedding.
    Branch(BranchArgs),
    /// Model-graph operations.
    #[command(subcommand)]
    Model(ModelCmd),
    /// Yukawa textures, spectra, and CKM extraction.
    #[command(subcommand)]
    Flavor(FlavorCmd),
    /// One-loop gauge-coupling running.
    #[command(subcommand)]
    Rg(RgCmd),
    /// Run a deterministic texture ensemble and print the summaries.
    Scan(ScanArgs),
    /// Fit the suppression parameter to observable targets.
    Fit(FitArgs),
}

#[derive(Args)]
struct BranchArgs {
    /// Parent algebra ("SO(10)", "D5", "E6", ...).
    algebra: String,
    /// Target subalgebra, e.g. "SU(5)xU(1)" or "SU(3)xSU(2)xU(1)".
    #[arg(long)]
    to: String,
    /// Irrep of the parent: a name ("16", "adjoint", "spinor") or labels "[0,1,0,0]".
    #[arg(long)]
    irrep: String,
}

#[derive(Subcommand)]
enum ModelCmd {
    /// Check every model invariant and report violations.
    Validate { path: PathBuf },
}

#[derive(Subcommand)]
enum FlavorCmd {
    /// Build a Froggatt-Nielsen texture and print it with its singular values.
    Texture {
        /// Common suppression parameter (eps1 = eps2).
        #[arg(long)]
        eps: f64,
        /// Override eps2 separately.
        #[arg(long)]
        eps2: Option<f64>,
        /// Coefficient matrix: "ones" or a path to a 3x3 [re,im] JSON matrix.
        #[arg(long, default_value = "ones")]
        coeffs: String,
    },
    /// Singular values (and masses at a given vev) of a Yukawa matrix.
    Spectrum {
        /// Path to a 3x3 [re,im] JSON matrix.
        #[arg(long)]
        matrix: PathBuf,
        /// Electroweak scale in GeV for dimensionful masses.
        #[arg(long)]
        vev: Option<f64>,
    },
    /// CKM matrix from up- and down-sector Yukawa matrices.
    Ckm {
        #[arg(long)]
        up: PathBuf,
        #[arg(long)]
        down: PathBuf,
    },
    /// The epsilon-power CKM magnitude estimate.
    CkmEstimate {
        #[arg(long)]
        eps: f64,
    },
}

#[derive(Subcommand)]
enum RgCmd {
    /// Run a plan to a target scale.
    Run {
        #[arg(long)]
        plan: PathBuf,
        /// Target scale in GeV.
        #[arg(long)]
        to: f64,
        /// Also write the coupling curve to this CSV file.
        #[arg(long)]
        csv: Option<PathBuf>,
        /// Number of logarithmically spaced curve rows.
        #[arg(long, default_value_t = 200)]
        points: usize,
    },
    /// Solve for the unification scale in the topmost regime.
    Unify {
        #[arg(long)]
        plan: PathBuf,
        #[arg(long)]
        csv: Option<PathBuf>,
        #[arg(long, default_value_t = 200)]
        points: usize,
    },
}

#[derive(Args)]
struct ScanArgs {
    /// Override both sectors' suppression parameters with (eps, eps).
    #[arg(long)]
    eps: Option<f64>,
    /// Override the number of samples.
    #[arg(long)]
    n: Option<u32>,
}

#[derive(Args)]
struct FitArgs {
    /// Targets file (JSON).
    #[arg(long)]
    targets: PathBuf,
}

/// A failed command: usage failures exit 2, domain failures exit 1.
enum Failure {
    Usage(String),
    Domain(String),
}

impl Failure {
    fn code(&self) -> u8 {
        match self {
            Failure::Usage(_) => 2,
            Failure::Domain(_) => 1,
        }
    }

    fn message(&self) -> &str {
        match self {
            Failure::Usage(m) | Failure::Domain(m) => m,
        }
    }
}

fn usage(e: impl std::fmt::Display) -> Failure {
    Failure::Usage(e.to_string())
}

impl From<io::IoError> for Failure {
    fn from(e: io::IoError) -> Self {
        Failure::Usage(e.to_string())
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match dispatch(&cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(f) => {
            eprintln!("error: {}", f.message());
            ExitCode::from(f.code())
        }
    }
}

fn read_file(path: &Path) -> Result<String, Failure> {
    std::fs::read_to_string(path)
        .map_err(|e| Failure::Usage(format!("cannot read {}: {e}", path.display())))
}

fn reject_csv(format: Format, what: &str) -> Result<(), Failure> {
    if format == Format::Csv {
        return Err(Failure::Usage(format!(
            "csv format applies to tabulations only, not {what}"
        )));
    }
    Ok(())
}

fn dispatch(cli: &Cli) -> Result<(), Failure> {
    match &cli.command {
        Command::Branch(args) => cmd_branch(cli, args),
        Command::Model(ModelCmd::Validate { path }) => cmd_model_validate(cli, path),
        Command::Flavor(cmd) => cmd_flavor(cli, cmd),
        Command::Rg(cmd) => cmd_rg(cli, cmd),
        Command::Scan(args) => cmd_scan(cli, args),
        Command::Fit(args) => cmd_fit(cli, args),
    }
}

/// Parse "SU(5)xU(1)xU(1)" into simple factors and a U(1) count.
fn parse_target(text: &str) -> Result<(Vec<AlgebraId>, usize), Failure> {
    let mut factors = Vec::new();
    let mut n_u1 = 0usize;
    for part in text.split('x') {
        let p = part.trim();
        if p.is_empty() {
            return Err(Failure::Usage(format!("empty factor in target {text:?}")));
        }
        if p == "U(1)" {
            n_u1 += 1;
        } else {
            factors.push(AlgebraId::parse(p).map_err(usage)?);
        }
    }
    Ok((factors, n_u1))
}

fn charges_text(charges: &[num_rational::Ratio<i64>]) -> String {
    charges
        .iter()
        .map(|c| c.to_string())
        .collect::<Vec<_>>()
        .join(",")
}

fn cmd_branch(cli: &Cli, args: &BranchArgs) -> Result<(), Failure> {
    reject_csv(cli.format, "branch")?;
    let parent = AlgebraId::parse(&args.algebra).map_err(usage)?;
    let (factors, n_u1) = parse_target(&args.to)?;
    let embedding = if factors == vec![parent] && n_u1 == 0 {
        Embedding::identity(parent)
    } else {
        find_embedding(parent, &factors, n_u1).map_err(usage)?
    };
    let irrep = parse_irrep(parent, &args.irrep).map_err(usage)?;
    let result = branch(&embedding, &irrep).map_err(usage)?;

    match cli.format {
        Format::Json => {
            let terms: Vec<serde_json::Value> = result
                .terms()
                .iter()
                .map(|t| {
                    serde_json::json!({
                        "irreps": t.irreps.iter().map(display_name).collect::<Vec<_>>(),
                        "labels": t.irreps.iter().map(|r| r.labels().to_vec()).collect::<Vec<_>>(),
                        "charges": t.charges.iter().map(|c| c.to_string()).collect::<Vec<_>>(),
                        "multiplicity": t.multiplicity,
                        "dim": t.dim(),
                    })
                })
                .collect();
            println!(
                "{}",
                serde_json::json!({
                    "parent": parent.name(),
                    "irrep": display_name(&irrep),
                    "embedding": embedding.describe(),
                    "terms": terms,
                    "dimension_sum": result.dimension_sum(),
                })
            );
        }
        _ => {
            let pieces: Vec<String> = result
                .terms()
                .iter()
                .map(|t| {
                    let content = t
                        .irreps
                        .iter()
                        .map(display_name)
                        .collect::<Vec<_>>()
                        .join(",");
                    let mult = if t.multiplicity > 1 {
                        format!("{} x ", t.multiplicity)
                    } else {
                        String::new()
                    };
                    if t.charges.is_empty() {
                        format!("{mult}{content}")
                    } else {
                        format!("{mult}{content}({})", charges_text(&t.charges))
                    }
                })
                .collect();
            println!(
                "{} {} -> {}  [dim {}]",
                parent,
                display_name(&irrep),
                pieces.join(" + "),
                result.dimension_sum()
            );
        }
    }
    Ok(())
}

fn cmd_model_validate(cli: &Cli, path: &Path) -> Result<(), Failure> {
    reject_csv(cli.format, "model validation")?;
    let graph = io::model_from_json(&read_file(path)?)?;
    let report = validate_model(&graph);
    match cli.format {
        Format::Json => {
            println!("{}", serde_json::to_value(&report.violations).map_err(usage)?);
        }
        _ => {
            for line in &report.summary {
                println!("{line}");
            }
            for v in &report.violations {
                println!("violation: {}: {}: {}", v.element, v.rule, v.message);
            }
            println!(
                "{}",
                if report.is_valid() {
                    "model valid".to_string()
                } else {
                    format!("model invalid: {} violation(s)", report.violations.len())
                }
            );
        }
    }
    if report.is_valid() {
        Ok(())
    } else {
        Err(Failure::Domain(format!(
            "{} invariant violation(s)",
            report.violations.len()
        )))
    }
}

fn matrix_text(m: &Matrix3) -> String {
    let mut out = String::new();
    for row in &m.0 {
        let cells: Vec<String> = row
            .iter()
            .map(|x| format!("{:+.6}{:+.6}i", x.re, x.im))
            .collect();
        out.push_str(&format!("  [{}]\n", cells.join(", ")));
    }
    out
}

fn load_yukawa(path: &Path, sector: Sector) -> Result<YukawaMatrix, Failure> {
    let m = io::matrix_from_json(&read_file(path)?)?;
    YukawaMatrix::new(m, sector).map_err(usage)
}

fn cmd_flavor(cli: &Cli, cmd: &FlavorCmd) -> Result<(), Failure> {
    reject_csv(cli.format, "flavor output")?;
    match cmd {
        FlavorCmd::Texture { eps, eps2, coeffs } => {
            let coeff_matrix = match coeffs.as_str() {
                "ones" => Matrix3::from_fn(|_, _| C64::new(1.0, 0.0)),
                path => io::matrix_from_json(&read_file(Path::new(path))?)?,
            };
            let params =
                FNParams::new(*eps, eps2.unwrap_or(*eps), coeff_matrix).map_err(usage)?;
            let y = fn_texture(&params);
            let (_, d) = diagonalize_mass(&y);
            match cli.format {
                Format::Json => println!(
                    "{}",
                    serde_json::json!({
                        "matrix": io::matrix_to_json(y.entries()),
                        "sigma": d.sigma(),
                    })
                ),
                _ => {
                    print!("{}", matrix_text(y.entries()));
                    let s = d.sigma();
                    println!("sigma = ({:.6}, {:.6}, {:.6})", s[0], s[1], s[2]);
                }
            }
        }
        FlavorCmd::Spectrum { matrix, vev } => {
            let y = load_yukawa(matrix, Sector::Up)?;
            let (_, d) = diagonalize_mass(&y);
            match cli.format {
                Format::Json => println!(
                    "{}",
                    serde_json::json!({
                        "sigma": d.sigma(),
                        "masses": vev.map(|v| d.masses(v)),
                    })
                ),
                _ => {
                    let s = d.sigma();
                    println!("sigma = ({:.6e}, {:.6e}, {:.6e})", s[0], s[1], s[2]);
                    if let Some(v) = vev {
                        let m = d.masses(*v);
                        println!("masses = ({:.6e}, {:.6e}, {:.6e}) GeV", m[0], m[1], m[2]);
                    }
                }
            }
        }
        FlavorCmd::Ckm { up, down } => {
            let yu = load_yukawa(up, Sector::Up)?;
            let yd = load_yukawa(down, Sector::Down)?;
            let (uu, _) = diagonalize_mass(&yu);
            let (ud, _) = diagonalize_mass(&yd);
            let k = ckm(&uu, &ud).map_err(usage)?;
            match cli.format {
                Format::Json => println!(
                    "{}",
                    serde_json::json!({
                        "matrix": io::matrix_to_json(&k.matrix),
                        "theta12": k.theta12,
                        "theta23": k.theta23,
                        "theta13": k.theta13,
                        "delta": k.delta,
                        "jarlskog": k.jarlskog,
                    })
                ),
                _ => {
                    print!("{}", matrix_text(&k.matrix));
                    println!(
                        "theta12 = {:.6}, theta23 = {:.6}, theta13 = {:.6}, delta = {:.6}",
                        k.theta12, k.theta23, k.theta13, k.delta
                    );
                    println!("jarlskog = {:.6e}", k.jarlskog);
                }
            }
        }
        FlavorCmd::CkmEstimate { eps } => {
            if !(0.0..1.0).contains(eps) {
                return Err(Failure::Usage(format!("eps = {eps} outside [0, 1)")));
            }
            let m = ckm_texture_estimate(*eps);
            match cli.format {
                Format::Json => println!("{}", serde_json::json!(m)),
                _ => {
                    for row in m {
                        println!("  [{:.6}, {:.6}, {:.6}]", row[0], row[1], row[2]);
                    }
                }
            }
        }
    }
    Ok(())
}

fn cmd_rg(cli: &Cli, cmd: &RgCmd) -> Result<(), Failure> {
    match cmd {
        RgCmd::Run { plan, to, csv, points } => {
            let plan = io::plan_from_json(&read_file(plan)?)?;
            let state = rg_run(&plan, *to).map_err(|e| Failure::Domain(e.to_string()))?;
            if let Some(path) = csv {
                let curve = io::curve_csv(&plan, *to, *points)
                    .map_err(|e| Failure::Domain(e.to_string()))?;
                std::fs::write(path, curve)
                    .map_err(|e| Failure::Usage(format!("cannot write {}: {e}", path.display())))?;
            }
            match cli.format {
                Format::Json => println!("{}", serde_json::to_value(state).map_err(usage)?),
                Format::Csv => {
                    let curve = io::curve_csv(&plan, *to, *points)
                        .map_err(|e| Failure::Domain(e.to_string()))?;
                    print!("{curve}");
                }
                Format::Text => println!(
                    "mu = {:.6e} GeV: alpha^-1 = ({:.4}, {:.4}, {:.4})",
                    state.mu, state.inv_alpha[0], state.inv_alpha[1], state.inv_alpha[2]
                ),
            }
        }
        RgCmd::Unify { plan, csv, points } => {
            reject_csv(cli.format, "unification output (use --csv for the curve)")?;
            let plan = io::plan_from_json(&read_file(plan)?)?;
            let u = unification_scale(&plan).map_err(|e| Failure::Domain(e.to_string()))?;
            if let Some(path) = csv {
                let curve = io::curve_csv(&plan, u.mu_star, *points)
                    .map_err(|e| Failure::Domain(e.to_string()))?;
                std::fs::write(path, curve)
                    .map_err(|e| Failure::Usage(format!("cannot write {}: {e}", path.display())))?;
            }
            match cli.format {
                Format::Json => println!("{}", serde_json::to_value(u).map_err(usage)?),
                _ => println!(
                    "mu_star = {:.6e} GeV, sqrt_alpha_gut = {:.4}, alpha3 mismatch = {:.2}%",
                    u.mu_star,
                    u.sqrt_alpha_gut,
                    100.0 * u.mismatch
                ),
            }
        }
    }
    Ok(())
}

fn load_scan_config(cli: &Cli) -> Result<ScanConfig, Failure> {
    let mut config: ScanConfig = match &cli.config {
        Some(path) => serde_json::from_str(&read_file(path)?).map_err(usage)?,
        None => ScanConfig::default(),
    };
    if let Some(seed) = cli.seed {
        config.seed = seed;
    }
    Ok(config)
}

fn cmd_scan(cli: &Cli, args: &ScanArgs) -> Result<(), Failure> {
    let mut config = load_scan_config(cli)?;
    if let Some(eps) = args.eps {
        config.eps_up = (eps, eps);
        config.eps_down = (eps, eps);
    }
    if let Some(n) = args.n {
        config.n_samples = n;
    }
    config.validate().map_err(usage)?;
    let result = run_scan(&config).map_err(usage)?;
    match cli.format {
        Format::Json => println!(
            "{}",
            serde_json::json!({
                "config": config,
                "observables": result,
            })
        ),
        Format::Csv => {
            println!("name,p16,median,p84");
            for (name, s) in result.rows() {
                println!("{name},{},{},{}", s.p16, s.median, s.p84);
            }
        }
        Format::Text => {
            println!(
                "scan: n = {}, seed = {}, eps_up = ({}, {}), eps_down = ({}, {})",
                config.n_samples,
                config.seed,
                config.eps_up.0,
                config.eps_up.1,
                config.eps_down.0,
                config.eps_down.1
            );
            println!("{:<14} {:>12} {:>12} {:>12}", "observable", "p16", "median", "p84");
            for (name, s) in result.rows() {
                println!("{name:<14} {:>12.5e} {:>12.5e} {:>12.5e}", s.p16, s.median, s.p84);
            }
        }
    }
    Ok(())
}

fn cmd_fit(cli: &Cli, args: &FitArgs) -> Result<(), Failure> {
    reject_csv(cli.format, "fit output")?;
    let targets: Targets =
        serde_json::from_str(&read_file(&args.targets)?).map_err(usage)?;
    let config = load_scan_config(cli)?;
    let fit = fit_epsilon(&targets, &config).map_err(usage)?;
    match cli.format {
        Format::Json => println!("{}", serde_json::to_value(&fit).map_err(usage)?),
        _ => {
            println!(
                "eps_up = {:.4}, eps_down = {:.4}, objective = {:.6e}",
                fit.eps_up, fit.eps_down, fit.objective
            );
            println!(
                "evaluations = {}, boundary = {}",
                fit.diagnostics.evaluations,
                fit.diagnostics.at_lower_bound || fit.diagnostics.at_upper_bound
            );
            if let Some(note) = &fit.diagnostics.note {
                println!("note: {note}");
            }
        }
    }
    Ok(())
}
