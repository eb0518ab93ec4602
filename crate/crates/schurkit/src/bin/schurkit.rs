//! Command-line surface for the toolkit.
//!
//! Exit codes: 0 success, 1 red alert (a verified claim failed), 2 validation
//! failure, 3 missing input file, 4 unknown lemma id, 5 enumeration budget or
//! envelope exceeded.

use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand};

use schurkit::catalog::{default_catalog, resolve_catalog_uri, CatalogRef};
use schurkit::conjectures::{rejected_row, scan_row, Report, SCHEMA_VERSION};
use schurkit::error::SchurkitError;
use schurkit::oracle::cross_check;
use schurkit::pcp::parse_pc_presentation;
use schurkit::template::{builtin_template, verify_identity, BUILTIN_IDS};
use schurkit::tensor::{tensor_square, NuImage, DEFAULT_BUDGET};
use schurkit::PcGroup;

#[derive(Parser)]
#[command(
    name = "schurkit",
    about = "Polycyclic presentations, nonabelian tensor squares, and the exponent conjectures"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Validate a presentation and print its structure report.
    Analyze {
        /// PC file path or catalog: URI
        input: String,
    },
    /// Check a built-in power-commutator identity symbolically.
    VerifyIdentities {
        /// Lemma id: 1.1, 1.1i, 1.1ii, 1.1iii, 4.1, 4.2i, 4.2ii, or all
        #[arg(long)]
        lemma: String,
        /// Sample points for n, e.g. 0..6 or 0,2,5
        #[arg(long)]
        points: Option<String>,
        /// Truncate verification to this nilpotency class
        #[arg(long)]
        class: Option<usize>,
    },
    /// Enumerate ν(G) and print the tensor-square summary.
    Tensor {
        input: String,
        /// Live-coset budget (default SCHURKIT_BUDGET or 2000000)
        #[arg(long)]
        budget: Option<u64>,
        /// Allow groups up to the extended order envelope
        #[arg(long)]
        extended: bool,
        /// Also dump the coset table of ν(G)
        #[arg(long)]
        dump_table: bool,
    },
    /// Run the conjecture scan over a catalog or a directory of PC files.
    Scan {
        input: String,
        /// Write the JSON report here (also printed to stdout)
        #[arg(long)]
        report: Option<PathBuf>,
        /// Write the flat CSV projection here
        #[arg(long)]
        csv: Option<PathBuf>,
        #[arg(long)]
        budget: Option<u64>,
        /// Seed recorded in the report and used for sampled checks
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long)]
        extended: bool,
    },
    /// Run only the independent cross-checks (table oracle, abelian formula).
    Oracle {
        input: String,
        #[arg(long)]
        budget: Option<u64>,
    },
}

fn exit_code_for(e: &SchurkitError) -> u8 {
    match e {
        SchurkitError::Io(inner) if inner.kind() == std::io::ErrorKind::NotFound => 3,
        SchurkitError::UnknownLemma(_) => 4,
        SchurkitError::BudgetExceeded(_) | SchurkitError::ResourceLimit(_) => 5,
        _ => 2,
    }
}

fn budget_or_env(cli: Option<u64>) -> u64 {
    cli.or_else(|| {
        std::env::var("SCHURKIT_BUDGET")
            .ok()
            .and_then(|s| s.parse().ok())
    })
    .unwrap_or(DEFAULT_BUDGET)
}

fn load_presentation(input: &str) -> Result<schurkit::PcPresentation, SchurkitError> {
    if input.starts_with("catalog:") {
        resolve_catalog_uri(input)
    } else {
        let text = std::fs::read_to_string(input)?;
        parse_pc_presentation(&text)
    }
}

fn load_group(input: &str) -> Result<PcGroup, SchurkitError> {
    PcGroup::new(load_presentation(input)?)
}

fn parse_points(spec: &str) -> Result<Vec<u64>, SchurkitError> {
    let bad = || SchurkitError::Invalid(format!("cannot parse point list '{spec}'"));
    if let Some((a, b)) = spec.split_once("..") {
        let lo: u64 = a.trim().parse().map_err(|_| bad())?;
        let hi: u64 = b.trim().parse().map_err(|_| bad())?;
        if lo > hi {
            return Err(bad());
        }
        Ok((lo..=hi).collect())
    } else {
        spec.split(',')
            .map(|s| s.trim().parse().map_err(|_| bad()))
            .collect()
    }
}

/// Print, ignoring a closed stdout (e.g. piped into head).
fn emit(s: &str) {
    use std::io::Write;
    let _ = writeln!(std::io::stdout(), "{s}");
}

fn emit_raw(s: &str) {
    use std::io::Write;
    let _ = write!(std::io::stdout(), "{s}");
}

fn run() -> Result<u8, SchurkitError> {
    match Cli::parse().command {
        Command::Analyze { input } => {
            let pcp = load_presentation(&input)?;
            let g = match PcGroup::new_with_report(pcp) {
                Ok(g) => g,
                Err(report) => {
                    eprintln!("error: presentation failed consistency check");
                    for f in &report.failures {
                        eprintln!("  overlap {}: lhs {:?} != rhs {:?}", f.overlap, f.lhs, f.rhs);
                    }
                    return Ok(2);
                }
            };
            let st = g.structure()?;
            emit(&serde_json::to_string_pretty(&st.report()).expect("report serializes"));
            Ok(0)
        }
        Command::VerifyIdentities {
            lemma,
            points,
            class,
        } => {
            let ids: Vec<String> = match lemma.as_str() {
                "all" => BUILTIN_IDS.iter().map(|s| s.to_string()).collect(),
                "1.1" => vec!["1.1i".into(), "1.1ii".into(), "1.1iii".into()],
                other => vec![other.to_string()],
            };
            let points = points.as_deref().map(parse_points).transpose()?;
            let mut all_equal = true;
            for id in &ids {
                let mut template = builtin_template(id)?;
                if let Some(c) = class {
                    template = template.with_class(c);
                }
                let pts = match &points {
                    Some(p) => p.clone(),
                    None => template.default_sample_points(),
                };
                let report = verify_identity(&template, &pts)?;
                all_equal &= report.equal;
                emit(&serde_json::to_string_pretty(&report).expect("report serializes"));
            }
            Ok(if all_equal { 0 } else { 1 })
        }
        Command::Tensor {
            input,
            budget,
            extended,
            dump_table,
        } => {
            let g = load_group(&input)?;
            let budget = budget_or_env(budget);
            if dump_table {
                let img = NuImage::compute(&g, budget, extended)?;
                emit(&serde_json::to_string_pretty(&img.summarize(budget))
                    .expect("summary serializes"));
                emit_raw(&img.table.dump());
            } else {
                let result = tensor_square(&g, budget, extended)?;
                emit(&serde_json::to_string_pretty(&result).expect("summary serializes"));
            }
            Ok(0)
        }
        Command::Scan {
            input,
            report,
            csv,
            budget,
            seed,
            extended,
        } => {
            let budget = budget_or_env(budget);
            let mut rows = Vec::new();
            if input.starts_with("catalog:") {
                match schurkit::catalog::parse_catalog_uri(&input)? {
                    CatalogRef::Default => {
                        for pcp in default_catalog() {
                            let name = pcp.name().unwrap_or("(unnamed)").to_string();
                            rows.push(scan_row(name, pcp, budget, extended));
                        }
                    }
                    CatalogRef::Group { .. } => {
                        let pcp = resolve_catalog_uri(&input)?;
                        let name = pcp.name().unwrap_or("(unnamed)").to_string();
                        rows.push(scan_row(name, pcp, budget, extended));
                    }
                }
            } else if Path::new(&input).is_dir() {
                let mut paths: Vec<PathBuf> = std::fs::read_dir(&input)?
                    .filter_map(|e| e.ok().map(|e| e.path()))
                    .filter(|p| p.extension().is_some_and(|x| x == "pc"))
                    .collect();
                paths.sort();
                for path in paths {
                    let name = path
                        .file_stem()
                        .map(|s| s.to_string_lossy().into_owned())
                        .unwrap_or_else(|| path.display().to_string());
                    match std::fs::read_to_string(&path)
                        .map_err(SchurkitError::from)
                        .and_then(|t| parse_pc_presentation(&t))
                    {
                        Ok(pcp) => rows.push(scan_row(name, pcp, budget, extended)),
                        Err(e) => rows.push(rejected_row(name, e.to_string())),
                    }
                }
            } else {
                let pcp = load_presentation(&input)?;
                let name = pcp.name().unwrap_or(&input).to_string();
                rows.push(scan_row(name, pcp, budget, extended));
            }
            let full = Report {
                schema_version: SCHEMA_VERSION,
                seed,
                budget,
                rows,
            };
            let json = full.to_json();
            emit_raw(&json);
            if let Some(path) = report {
                std::fs::write(path, &json)?;
            }
            if let Some(path) = csv {
                std::fs::write(path, full.to_csv())?;
            }
            if full.red_alert_count() > 0 {
                Ok(1)
            } else if full.rejected_count() > 0 {
                Ok(2)
            } else {
                Ok(0)
            }
        }
        Command::Oracle { input, budget } => {
            let g = load_group(&input)?;
            let report = cross_check(&g, budget_or_env(budget))?;
            emit(&serde_json::to_string_pretty(&report).expect("report serializes"));
            Ok(if report.agreement { 0 } else { 1 })
        }
    }
}

fn main() -> ExitCode {
    match run() {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(exit_code_for(&e))
        }
    }
}
