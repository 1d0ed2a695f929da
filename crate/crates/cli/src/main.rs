//! `gsic`: build GSIC sets, test states for entanglement, scan state families.
//!
//! Exit codes: 0 evaluated (any verdict), 2 usage or data error, 3 numeric-integrity failure.

mod spec;

use std::fmt::Write as _;
use std::fs;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use gsic_core::criteria::{
    detect_bipartite, detect_multipartite, mixture_sufficient_threshold, threshold_scan, ScanFamily,
};
use gsic_core::gsic::{conjugate_gsic, construct_gsic, feasible_range, validate_gsic};
use gsic_core::{build_gell_mann_basis, tol, Error, GsicSet};
use serde::Serialize;

#[derive(Debug)]
pub struct CliError {
    code: u8,
    message: String,
}

impl CliError {
    pub fn usage(message: impl Into<String>) -> Self {
        Self { code: 2, message: message.into() }
    }
}

impl From<Error> for CliError {
    fn from(e: Error) -> Self {
        let code = match e {
            Error::NumericIntegrity(_) => 3,
            _ => 2,
        };
        Self { code, message: e.to_string() }
    }
}

#[derive(Parser)]
#[command(name = "gsic", version, about = "General SIC measurements and entanglement detection")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Construct a GSIC set and write it as JSON.
    Build(BuildArgs),
    /// Evaluate the separability criterion on a state.
    Detect(DetectArgs),
    /// Scan a one-parameter state family and locate the detection threshold.
    Scan(ScanArgs),
}

#[derive(Clone, Copy, ValueEnum)]
enum Basis {
    Gellmann,
}

#[derive(Clone, Copy, ValueEnum)]
enum Pairing {
    /// Q = conj(P)
    Conj,
    /// Q = P
    Same,
}

#[derive(Clone, Copy, ValueEnum)]
enum Family {
    Isotropic,
    #[value(name = "belldiag-c")]
    BelldiagC,
    Example4,
}

impl From<Family> for ScanFamily {
    fn from(f: Family) -> Self {
        match f {
            Family::Isotropic => ScanFamily::Isotropic,
            Family::BelldiagC => ScanFamily::BellDiagonalC,
            Family::Example4 => ScanFamily::DiagonalMixture,
        }
    }
}

#[derive(Args)]
#[group(required = false, multiple = false)]
struct TChoice {
    /// Construction parameter t.
    #[arg(long = "t", allow_negative_numbers = true)]
    t: Option<f64>,
    /// Use the largest feasible t (default when --t is absent).
    #[arg(long)]
    max_t: bool,
}

#[derive(Args)]
struct BuildArgs {
    #[arg(long)]
    dim: usize,
    #[command(flatten)]
    t: TChoice,
    #[arg(long, value_enum, default_value = "gellmann")]
    basis: Basis,
    #[arg(long)]
    out: PathBuf,
}

#[derive(Args)]
struct DetectArgs {
    /// maxent:d | isotropic:d:alpha | belldiag:d:@weights.json | example4:d:a1 | file:@rho.json
    #[arg(long)]
    state: String,
    /// GSIC set written by `gsic build`; re-validated on load.
    #[arg(long, conflicts_with_all = ["dim", "t", "max_t"])]
    gsic: Option<PathBuf>,
    /// Local dimension for a freshly built set (defaults to the state's).
    #[arg(long)]
    dim: Option<usize>,
    #[command(flatten)]
    t: TChoice,
    #[arg(long, value_enum, default_value = "conj")]
    pairing: Pairing,
    /// Print the report as JSON.
    #[arg(long)]
    json: bool,
}

#[derive(Args)]
struct ScanArgs {
    #[arg(long, value_enum)]
    family: Family,
    #[arg(long)]
    dim: usize,
    #[arg(long, default_value_t = 100)]
    steps: usize,
    #[command(flatten)]
    t: TChoice,
    #[arg(long, value_enum, default_value = "conj")]
    pairing: Pairing,
    #[arg(long)]
    csv: PathBuf,
}

#[derive(Serialize)]
struct BuildSummary<'a> {
    d: usize,
    t: f64,
    a: f64,
    cap: Option<&'a str>,
}

fn build_set(d: usize, choice: &TChoice) -> Result<(GsicSet, Option<&'static str>), CliError> {
    let basis = build_gell_mann_basis(d)?;
    match choice.t {
        Some(t) => Ok((construct_gsic(&basis, t)?, None)),
        None => {
            let range = feasible_range(&basis)?;
            Ok((construct_gsic(&basis, range.t_max)?, Some(range.active_cap.as_str())))
        }
    }
}

fn partner(p: &GsicSet, pairing: Pairing) -> GsicSet {
    match pairing {
        Pairing::Conj => conjugate_gsic(p),
        Pairing::Same => p.clone(),
    }
}

fn write_file(path: &PathBuf, contents: &str) -> Result<(), CliError> {
    fs::write(path, contents).map_err(|e| CliError::usage(format!("cannot write {}: {e}", path.display())))
}

fn run_build(args: BuildArgs) -> Result<(), CliError> {
    let Basis::Gellmann = args.basis;
    let (set, cap) = build_set(args.dim, &args.t)?;
    let outcome = validate_gsic(&set, tol::VALIDATION);
    if !outcome.pass {
        return Err(Error::NumericIntegrity(format!("constructed set fails validation: {outcome:?}")).into());
    }
    write_file(&args.out, &(set.to_json()? + "\n"))?;
    let summary = BuildSummary { d: set.d(), t: set.t(), a: set.a(), cap };
    println!("{}", serde_json::to_string(&summary).expect("summary serializes"));
    Ok(())
}

fn run_detect(args: DetectArgs) -> Result<(), CliError> {
    let rho = spec::parse_state(&args.state)?;
    let p = match &args.gsic {
        Some(path) => {
            let text = fs::read_to_string(path)
                .map_err(|e| CliError::usage(format!("cannot read {}: {e}", path.display())))?;
            GsicSet::from_json(&text)?
        }
        None => build_set(args.dim.unwrap_or(rho.local_dim()), &args.t)?.0,
    };
    if p.d() != rho.local_dim() {
        return Err(CliError::usage(format!(
            "GSIC set has d = {} but the state has local dimension {}",
            p.d(),
            rho.local_dim()
        )));
    }

    let report = if rho.parties() == 2 {
        detect_bipartite(&rho, &p, &partner(&p, args.pairing))?
    } else {
        let sets: Vec<GsicSet> =
            (0..rho.parties()).map(|i| if i % 2 == 1 { partner(&p, args.pairing) } else { p.clone() }).collect();
        detect_multipartite(&rho, &sets)?
    }
    .labelled(args.state.clone());

    if args.json {
        println!("{}", serde_json::to_string(&report).expect("report serializes"));
    } else {
        println!("state    {}", report.state_label);
        println!("d, N     {}, {}", report.d, report.parties);
        println!("J        {}", report.j_value);
        println!("bound    {}", report.bound);
        println!("margin   {}", report.margin);
        println!("verdict  {}", report.verdict.as_str());
    }
    Ok(())
}

fn run_scan(args: ScanArgs) -> Result<(), CliError> {
    let family = ScanFamily::from(args.family);
    let (p, _) = build_set(args.dim, &args.t)?;
    let q = partner(&p, args.pairing);
    let result = threshold_scan(family, args.dim, &p, &q, args.steps)?;

    let mut csv = String::from("param,j_value,bound,margin,verdict\n");
    for row in &result.rows {
        let r = &row.report;
        writeln!(csv, "{},{},{},{},{}", row.param, r.j_value, r.bound, r.margin, r.verdict.as_str()).unwrap();
    }
    let threshold = result.threshold.map_or_else(|| "none".to_string(), |t| t.to_string());
    writeln!(csv, "# threshold,{threshold}").unwrap();
    let sufficient = match family {
        ScanFamily::Isotropic => 1.0 / (args.dim + 1) as f64,
        _ => mixture_sufficient_threshold(args.dim, p.a()),
    };
    writeln!(csv, "# sufficient_threshold,{sufficient}").unwrap();
    write_file(&args.csv, &csv)?;

    println!("family {} d {} t {} a {}", family.name(), args.dim, p.t(), p.a());
    println!("threshold {threshold}");
    println!("sufficient_threshold {sufficient}");
    Ok(())
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match cli.command {
        Command::Build(args) => run_build(args),
        Command::Detect(args) => run_detect(args),
        Command::Scan(args) => run_scan(args),
    };
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {}", e.message);
            ExitCode::from(e.code)
        }
    }
}
