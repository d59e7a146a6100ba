//! `frc`: build, analyze and audit fractional repetition codes.

mod render;

use std::fs;
use std::io::Write;
use std::ops::RangeInclusive;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use serde::Serialize;

use frc_core::analysis::{self, default_file_size, weak_form_applies};
use frc_core::io::{encode_code, import_code, CodeFormat};
use frc_core::sweep::{self, AuditOptions, Family, Provenance, ThetaRule};
use frc_core::{
    build_prg, build_ring, build_t_code, Budget, FrCode, FrcError, PrgSpec, RingSpec, TSpec,
};

#[derive(Parser)]
#[command(name = "frc", version, about = "Fractional repetition code toolkit")]
struct Cli {
    /// Emit machine-readable JSON on stdout.
    #[arg(long, global = true)]
    json: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Build a code from one of the constructions.
    #[command(subcommand)]
    Generate(Generate),
    /// Profile, identities, coverage and reconstruction degree of a code file.
    Analyze {
        code: PathBuf,
        /// File size M (default θ − 1).
        #[arg(long)]
        file_size: Option<usize>,
    },
    /// Evaluate the universal goodness inequality.
    Goodness {
        code: PathBuf,
        /// Use the relaxed form (single-deficient-node codes only).
        #[arg(long)]
        weak: bool,
        /// Also check every k ≤ α against brute-force coverage.
        #[arg(long)]
        structural: bool,
        #[arg(long)]
        file_size: Option<usize>,
        /// Evaluate at this k instead of the reconstruction degree.
        #[arg(long)]
        k: Option<usize>,
    },
    /// Plan the repair of one failed node.
    Repair {
        code: PathBuf,
        /// Failed node, 1-based (`7` or `U7`).
        #[arg(long)]
        fail: String,
    },
    /// Regenerate a parameter table.
    #[command(subcommand)]
    Sweep(Sweep),
    /// Audit a parameter table CSV.
    AuditTable {
        csv: PathBuf,
        #[arg(long)]
        family: Family,
        /// Count RHS > 0 toward the row verdict.
        #[arg(long)]
        require_rhs_positive: bool,
        /// Count repeated parameter sets toward the row verdict.
        #[arg(long)]
        require_unique: bool,
    },
    /// Compare the heterogeneous ring formula with brute force.
    Conjecture {
        #[arg(long, value_parser = parse_range)]
        n: RangeInclusive<usize>,
        #[arg(long, value_parser = parse_range)]
        rho: RangeInclusive<usize>,
        /// Visit θ < this multiple of n.
        #[arg(long, default_value_t = 3)]
        theta_max_multiple: usize,
    },
}

#[derive(Subcommand)]
enum Generate {
    /// Partial regular graph code.
    Prg {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        d: usize,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// Ring placement.
    Ring {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        theta: usize,
        #[arg(long)]
        rho: usize,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// Circulant t-construction.
    T {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        d: usize,
        #[arg(long)]
        t: usize,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
}

#[derive(Subcommand)]
enum Sweep {
    /// Ring codes with θ = m·n.
    Ring {
        #[arg(long, value_parser = parse_range)]
        n: RangeInclusive<usize>,
        #[arg(long, value_parser = parse_range)]
        rho: RangeInclusive<usize>,
        #[arg(long, value_parser = parse_range)]
        m: RangeInclusive<usize>,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
}

/// `A..B` (inclusive) or a single value.
fn parse_range(s: &str) -> Result<RangeInclusive<usize>, String> {
    let parse = |v: &str| v.trim().parse::<usize>().map_err(|e| format!("{v:?}: {e}"));
    match s.split_once("..") {
        Some((a, b)) => {
            let (a, b) = (parse(a)?, parse(b.trim_start_matches('='))?);
            if a > b {
                return Err(format!("empty range {s}"));
            }
            Ok(a..=b)
        }
        None => parse(s).map(|v| v..=v),
    }
}

fn parse_node_label(s: &str) -> Result<usize, Failure> {
    let digits = s.trim().trim_start_matches(['U', 'u']).trim_start_matches('_');
    match digits.parse::<usize>() {
        Ok(i) if i >= 1 => Ok(i - 1),
        _ => Err(Failure::Usage(format!("--fail expects a 1-based node label, got {s:?}"))),
    }
}

enum Failure {
    /// Bad flags or unreadable input: exit 2.
    Usage(String),
    /// Domain error: exit 1.
    Domain(FrcError),
    /// A check ran and failed: exit 1.
    Verdict,
}

impl From<FrcError> for Failure {
    fn from(e: FrcError) -> Self {
        match e {
            FrcError::ParseError(_) | FrcError::Io(_) => Failure::Usage(format!("{}: {e}", e.name())),
            other => Failure::Domain(other),
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Verdict) => ExitCode::from(1),
        Err(Failure::Domain(e)) => {
            eprintln!("error: {}: {e}", e.name());
            ExitCode::from(1)
        }
        Err(Failure::Usage(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
    }
}

fn emit_json<T: Serialize>(value: &T) {
    println!("{}", serde_json::to_string(value).expect("report serializes"));
}

fn load(path: &Path) -> Result<FrCode, Failure> {
    Ok(import_code(path, CodeFormat::from_path(path))?)
}

fn run(cli: &Cli) -> Result<(), Failure> {
    let budget = Budget::from_env().map_err(|e| Failure::Usage(e.to_string()))?;
    match &cli.command {
        Command::Generate(g) => {
            let (code, output) = match g {
                Generate::Prg { n, d, output } => (build_prg(&PrgSpec::new(*n, *d)?), output),
                Generate::Ring { n, theta, rho, output } => {
                    (build_ring(&RingSpec::new(*n, *theta, *rho)?), output)
                }
                Generate::T { n, d, t, output } => (build_t_code(&TSpec::new(*n, *d, *t)?), output),
            };
            match output {
                Some(path) => {
                    fs::write(path, encode_code(&code, CodeFormat::from_path(path))).map_err(FrcError::from)?;
                    if cli.json {
                        emit_json(&render::CodeSummary::of(&code));
                    } else {
                        println!("wrote {}", path.display());
                        print!("{}", render::code_summary(&code));
                    }
                }
                None => print!("{}", encode_code(&code, CodeFormat::Json)),
            }
            Ok(())
        }
        Command::Analyze { code, file_size } => {
            let code = load(code)?;
            let file_size = file_size.unwrap_or_else(|| default_file_size(&code));
            let k = analysis::reconstruction_degree(&code, file_size, budget)?;
            let coverage = analysis::coverage_up_to(&code, k, budget)?;
            let report = render::AnalyzeReport {
                n: code.n(),
                theta: code.theta(),
                profile: code.profile(),
                identities: code.check_identities(),
                file_size,
                reconstruction_degree: k,
                coverage: coverage.entries,
            };
            if cli.json {
                emit_json(&report);
            } else {
                print!("{}", render::analyze(&report));
            }
            Ok(())
        }
        Command::Goodness { code, weak, structural, file_size, k } => {
            let code = load(code)?;
            let profile = code.profile();
            let file_size = file_size.unwrap_or_else(|| default_file_size(&code));
            let weak = if *weak && !weak_form_applies(&code) {
                eprintln!("warning: --weak applies only to codes with one node of storage α − 1; using the strict form");
                false
            } else {
                *weak
            };
            let k = match k {
                Some(k) => *k,
                None => analysis::reconstruction_degree(&code, file_size, budget)?,
            };
            let mut report = analysis::goodness_arithmetic(k, profile.alpha, code.theta(), weak, file_size)?;
            if *structural {
                report.structural = Some(analysis::goodness_structural(&code, weak, budget)?);
            }
            if cli.json {
                emit_json(&report);
            } else {
                print!("{}", render::goodness(&report));
            }
            let structural_ok = report.structural.as_ref().is_none_or(|s| s.verdict);
            if report.verdict && structural_ok {
                Ok(())
            } else {
                Err(Failure::Verdict)
            }
        }
        Command::Repair { code, fail } => {
            let code = load(code)?;
            let failed = parse_node_label(fail)?;
            let plan = frc_core::plan_repair(&code, failed, budget)?;
            let baseline = frc_core::plan_repair_first_replica(&code, failed)?;
            let report = render::RepairReport { plan, first_replica: baseline };
            if cli.json {
                emit_json(&report);
            } else {
                print!("{}", render::repair(&report));
            }
            Ok(())
        }
        Command::Sweep(Sweep::Ring { n, rho, m, output }) => {
            let rows = sweep::sweep_ring(n.clone(), rho.clone(), m.clone(), budget)?;
            let csv = sweep::write_table(&rows);
            if let Some(path) = output {
                fs::write(path, &csv).map_err(FrcError::from)?;
            }
            if cli.json {
                emit_json(&rows);
            } else if output.is_none() {
                print!("{csv}");
            } else {
                println!("{} rows written to {}", rows.len(), output.as_ref().unwrap().display());
            }
            Ok(())
        }
        Command::AuditTable { csv, family, require_rhs_positive, require_unique } => {
            let text = fs::read_to_string(csv).map_err(FrcError::from)?;
            let rows = sweep::read_table(&text, Provenance::Transcribed)?;
            let options = AuditOptions {
                require_rhs_positive: *require_rhs_positive,
                require_unique: *require_unique,
                budget,
                ..AuditOptions::default()
            };
            let findings = sweep::audit_table(&rows, *family, &options)?;
            if cli.json {
                let stdout = std::io::stdout();
                let mut out = stdout.lock();
                for f in &findings {
                    writeln!(out, "{}", serde_json::to_string(f).expect("finding serializes"))
                        .map_err(FrcError::from)?;
                }
            } else {
                print!("{}", render::audit(&findings));
            }
            if findings.iter().all(|f| f.verdict) {
                Ok(())
            } else {
                Err(Failure::Verdict)
            }
        }
        Command::Conjecture { n, rho, theta_max_multiple } => {
            let rule = ThetaRule {
                max_multiple: *theta_max_multiple,
                ..ThetaRule::default()
            };
            let report = sweep::conjecture_harness(n.clone(), rho.clone(), rule, budget)?;
            if cli.json {
                emit_json(&report);
            } else {
                print!("{}", render::conjecture(&report));
            }
            Ok(())
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn ranges() {
        assert_eq!(parse_range("10..16").unwrap(), 10..=16);
        assert_eq!(parse_range("4").unwrap(), 4..=4);
        assert_eq!(parse_range("2..=3").unwrap(), 2..=3);
        assert!(parse_range("5..2").is_err());
        assert!(parse_range("a..2").is_err());
    }

    #[test]
    fn node_labels() {
        assert_eq!(parse_node_label("7").ok(), Some(6));
        assert_eq!(parse_node_label("U7").ok(), Some(6));
        assert_eq!(parse_node_label("U_1").ok(), Some(0));
        assert!(parse_node_label("0").is_err());
        assert!(parse_node_label("x").is_err());
    }

    #[test]
    fn clap_definition_is_consistent() {
        use clap::CommandFactory;
        Cli::command().debug_assert();
    }
}
