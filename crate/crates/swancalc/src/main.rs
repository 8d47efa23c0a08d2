use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use swancalc::catalog::{self, ValidCatalog};
use swancalc::{Selection, DEFAULT_PRECISION};

const EXIT_CHECK_FAILED: u8 = 1;
const EXIT_INPUT_ERROR: u8 = 2;

#[derive(Parser)]
#[command(name = "swancalc", version, about = "Exact ramification checks over finite fields")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Run catalog entries and compare every computed value with its oracle.
    Run(RunArgs),
    /// Catalog maintenance.
    Catalog {
        #[command(subcommand)]
        command: CatalogCommand,
    },
}

#[derive(clap::Args)]
struct RunArgs {
    /// Catalog file; the built-in catalog when absent.
    #[arg(long)]
    catalog: Option<PathBuf>,
    #[arg(long, conflicts_with = "all", required_unless_present = "all")]
    entry: Option<String>,
    #[arg(long)]
    all: bool,
    #[arg(long, value_parser = catalog::CHECKS.to_vec())]
    check: Option<String>,
    /// Series precision in coefficients.
    #[arg(long, env = "SWANCALC_PRECISION", default_value_t = DEFAULT_PRECISION)]
    precision: usize,
    /// Only entries over this base field, written `p` or `p^k`.
    #[arg(long)]
    field: Option<String>,
    /// Also write the JSON report here.
    #[arg(long)]
    json: Option<PathBuf>,
    #[arg(long)]
    quiet: bool,
}

#[derive(Subcommand)]
enum CatalogCommand {
    /// Check schema and invariants without running anything.
    Validate {
        /// Catalog file; the built-in catalog when absent.
        file: Option<PathBuf>,
    },
}

fn read_catalog(path: Option<&PathBuf>) -> Result<catalog::Catalog, Vec<String>> {
    match path {
        None => catalog::parse(catalog::builtin_source()),
        Some(p) => {
            let text = std::fs::read_to_string(p).map_err(|e| vec![format!("{}: {e}", p.display())])?;
            catalog::parse(&text)
        }
    }
}

fn load(path: Option<&PathBuf>) -> Result<ValidCatalog, Vec<String>> {
    catalog::check(&read_catalog(path)?)
}

fn report_diagnostics(diags: &[String]) -> ExitCode {
    for d in diags {
        eprintln!("error: {d}");
    }
    ExitCode::from(EXIT_INPUT_ERROR)
}

fn run(args: RunArgs) -> ExitCode {
    let cat = match load(args.catalog.as_ref()) {
        Ok(c) => c,
        Err(d) => return report_diagnostics(&d),
    };
    if args.precision == 0 {
        return report_diagnostics(&["precision must be positive".into()]);
    }
    let selection = Selection { entry: args.entry, check: args.check, field: args.field };
    let report = match swancalc::run(&cat, &selection, args.precision) {
        Ok(r) => r,
        Err(e) => return report_diagnostics(&[e]),
    };
    if !args.quiet {
        for r in &report.reports {
            println!("{}", r.line());
        }
        let failed = report.reports.iter().filter(|r| !r.pass).count();
        println!("{} checks, {} failed, precision {}", report.reports.len(), failed, report.precision);
    }
    if let Some(path) = &args.json {
        if let Err(e) = std::fs::write(path, report.to_json()) {
            return report_diagnostics(&[format!("{}: {e}", path.display())]);
        }
    }
    if report.passed() {
        ExitCode::SUCCESS
    } else {
        ExitCode::from(EXIT_CHECK_FAILED)
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match cli.command {
        Command::Run(args) => run(args),
        Command::Catalog { command: CatalogCommand::Validate { file } } => match read_catalog(file.as_ref()) {
            Err(d) => report_diagnostics(&d),
            Ok(c) => {
                let diags = catalog::validate(&c);
                if diags.is_empty() {
                    println!("catalog valid: {} entries", c.entries.len());
                    ExitCode::SUCCESS
                } else {
                    report_diagnostics(&diags)
                }
            }
        },
    }
}
