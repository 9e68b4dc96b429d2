mod input;
mod render;
mod survey;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use seqcm::classify::{classify_report, ClassificationReport, ClassifyOptions, Status};
use seqcm::filtration::{MultiplicityConfig, SearchConfig};
use seqcm::reference::reference_checks;
use seqcm::ring::DEFAULT_DEGREE_CAP;
use seqcm::DEFAULT_PRIME;
use serde::Serialize;

#[derive(Parser)]
#[command(name = "seqcm", version, about = "Decide (sequential, approximate) Cohen-Macaulayness of quotient rings")]
struct Cli {
    #[command(flatten)]
    config: RunConfig,
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "lowercase")]
enum Format {
    Json,
    Text,
}

/// Settings shared by all commands.
#[derive(Args, Debug, Clone, Serialize)]
struct RunConfig {
    /// Characteristic of the coefficient field (default 32003; presentation
    /// files otherwise keep their own `char:` line).
    #[arg(long, global = true)]
    prime: Option<u32>,
    /// Largest total degree allowed in Gröbner basis computations.
    #[arg(long, global = true, default_value_t = DEFAULT_DEGREE_CAP, value_parser = clap::value_parser!(u32).range(1..))]
    degree_cap: u32,
    /// Exponent bound for the dd-sequence colon checks.
    #[arg(long, global = true, default_value_t = 2, value_parser = clap::value_parser!(u32).range(1..))]
    dd_bound: u32,
    /// Largest power used when extracting multiplicities.
    #[arg(long, global = true, default_value_t = 8, value_parser = clap::value_parser!(u32).range(1..))]
    window_budget: u32,
    /// Largest absolute coefficient in the parameter search.
    #[arg(long, global = true, default_value_t = 2, value_parser = clap::value_parser!(u32).range(1..))]
    box_limit: u32,
    /// Nonzero seeds shuffle search candidates within each tier.
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,
    /// Output format.
    #[arg(long, global = true, value_enum, default_value_t = Format::Json)]
    format: Format,
    /// Directory for cached survey reports.
    #[arg(long = "cache", global = true, env = "SEQCM_CACHE_DIR")]
    cache: Option<PathBuf>,
    /// Accept vertices that lie in no facet.
    #[arg(long, global = true)]
    allow_ghost_vertices: bool,
}

impl RunConfig {
    fn options(&self) -> ClassifyOptions {
        ClassifyOptions {
            search: SearchConfig { box_limit: self.box_limit, seed: self.seed, ..SearchConfig::default() },
            multiplicity: MultiplicityConfig { window_budget: self.window_budget },
            ..ClassifyOptions::default()
        }
    }

    fn prime_or_default(&self) -> u32 {
        self.prime.unwrap_or(DEFAULT_PRIME)
    }
}

#[derive(Subcommand)]
enum Command {
    /// Classify a complex (JSON) or a module presentation file.
    Classify {
        path: PathBuf,
        /// Include a bounded dd-sequence certificate.
        #[arg(long)]
        dd: bool,
        /// Include the deficiency table on {1..N}^d.
        #[arg(long)]
        grid: Option<u32>,
        /// Search for an approximating element when the module is
        /// approximately Cohen-Macaulay.
        #[arg(long)]
        approx_witness: bool,
        /// Use this system of parameters (one polynomial per line).
        #[arg(long)]
        sop: Option<PathBuf>,
        /// Record timings in the report.
        #[arg(long)]
        timings: bool,
    },
    /// Reproduce the reference lengths, tables and verdicts.
    PaperExamples {
        /// Run only the rows of one instance.
        #[arg(long)]
        only: Option<String>,
    },
    /// Classify every complex on n labeled vertices.
    Survey {
        n: usize,
        /// Keep one complex per isomorphism class.
        #[arg(long)]
        up_to_iso: bool,
        /// Largest vertex count accepted.
        #[arg(long, default_value_t = 5)]
        max_vertices: usize,
    },
    /// Deficiency table of a given system of parameters.
    ITable {
        path: PathBuf,
        #[arg(long)]
        sop: PathBuf,
        #[arg(long, default_value_t = 3, value_parser = clap::value_parser!(u32).range(1..))]
        grid: u32,
    },
}

fn emit_report(report: &ClassificationReport, format: Format) -> ExitCode {
    match format {
        Format::Json => println!("{}", serde_json::to_string_pretty(report).unwrap()),
        Format::Text => print!("{}", render::report_text(report)),
    }
    match report.status {
        Status::Ok => ExitCode::SUCCESS,
        Status::Unknown => ExitCode::from(2),
    }
}

fn input_error(e: impl std::fmt::Display) -> ExitCode {
    eprintln!("error: {e}");
    ExitCode::from(1)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let config = &cli.config;
    match &cli.command {
        Command::Classify { path, dd, grid, approx_witness, sop, timings } => {
            let module = match input::load_module(path, config) {
                Ok(m) => m,
                Err(e) => return input_error(e),
            };
            let sop = match sop.as_ref().map(|p| input::load_sop(p, &module)).transpose() {
                Ok(s) => s,
                Err(e) => return input_error(e),
            };
            let options = ClassifyOptions {
                dd_bound: dd.then_some(config.dd_bound),
                i_table_grid: *grid,
                approx_witness: *approx_witness,
                timings: *timings,
                ..config.options()
            };
            let report = classify_report(&module, Some(path.display().to_string()), sop.as_ref(), &options);
            emit_report(&report, config.format)
        }
        Command::ITable { path, sop, grid } => {
            let module = match input::load_module(path, config) {
                Ok(m) => m,
                Err(e) => return input_error(e),
            };
            let sop = match input::load_sop(sop, &module) {
                Ok(s) => s,
                Err(e) => return input_error(e),
            };
            let options = ClassifyOptions { i_table_grid: Some(*grid), ..config.options() };
            let report = classify_report(&module, Some(path.display().to_string()), Some(&sop), &options);
            emit_report(&report, config.format)
        }
        Command::PaperExamples { only } => {
            if let Some(id) = only {
                if seqcm::reference::find(id).is_none() && id != "ex43-law" {
                    return input_error(format!("unknown instance {id:?}"));
                }
            }
            let prime = config.prime_or_default();
            let rows = reference_checks(only.as_deref(), prime, &config.options());
            match config.format {
                Format::Json => println!("{}", serde_json::to_string_pretty(&rows).unwrap()),
                Format::Text => print!("{}", render::reference_table(&rows, prime)),
            }
            if rows.iter().all(|r| r.pass) {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(1)
            }
        }
        Command::Survey { n, up_to_iso, max_vertices } => {
            if *n == 0 || n > max_vertices {
                return input_error(format!("vertex count must lie in 1..={max_vertices}"));
            }
            match survey::run(*n, *up_to_iso, config) {
                Ok(summary) => {
                    match config.format {
                        Format::Json => println!("{}", serde_json::to_string_pretty(&summary).unwrap()),
                        Format::Text => print!("{}", render::survey_text(&summary)),
                    }
                    if summary.unknown == 0 {
                        ExitCode::SUCCESS
                    } else {
                        ExitCode::from(2)
                    }
                }
                Err(e) => input_error(e),
            }
        }
    }
}
