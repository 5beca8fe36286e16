//! `filtrum`: enumerate filters, draw filtrum spaces and check laws from JSON documents.

mod document;
mod error;
mod render;

use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use filtrum::suite::{self, LawSet, SuiteReport};
use filtrum::topo::{characterize_filtrum_space, sobrify};
use filtrum::{all_filters, fixfilters, ultrafilters, Filtrum, Limits};
use serde::Serialize;
use serde_json::json;

use crate::document::{Document, Loaded};
use crate::error::CliError;

#[derive(Parser)]
#[command(
    name = "filtrum",
    version,
    about = "Filters of finite commutative monoids and the spaces they form"
)]
struct Cli {
    /// Worker threads for parallel enumeration (output does not depend on it).
    #[arg(long, global = true)]
    threads: Option<usize>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum GraphFormat {
    Json,
    Dot,
}

#[derive(Subcommand)]
enum Command {
    /// List every filter of a monoid or of a ring's multiplicative monoid.
    Filters { file: PathBuf },
    /// The filtrum space: points, basis sets and inclusion order.
    Filtrum {
        file: PathBuf,
        #[arg(long, value_enum, default_value = "json")]
        format: GraphFormat,
    },
    /// Fixfilters on both sides of a monoid homomorphism.
    Fixfilters { file: PathBuf },
    /// Decide whether a space is the filtrum of a monoid.
    Characterize { file: PathBuf },
    /// The space of irreducible filters, as a space document.
    Sobrify {
        file: PathBuf,
        #[arg(long, value_enum, default_value = "json")]
        format: GraphFormat,
    },
    /// Check laws on one document or on the built-in corpus.
    Suite {
        #[arg(required_unless_present = "corpus", conflicts_with = "corpus")]
        file: Option<PathBuf>,
        #[arg(long)]
        corpus: bool,
        #[arg(long, default_value = "all")]
        laws: LawSet,
    },
}

/// Prints a machine-readable warning on stderr.
pub(crate) fn warn(code: &str, message: &str) {
    eprintln!("{}", json!({ "warning": code, "message": message }));
}

fn print_json<T: Serialize>(value: &T) -> Result<(), CliError> {
    let text = serde_json::to_string_pretty(value).map_err(|e| CliError::Usage(e.to_string()))?;
    println!("{text}");
    Ok(())
}

fn run(cli: Cli) -> Result<ExitCode, CliError> {
    if let Some(n) = cli.threads {
        rayon::ThreadPoolBuilder::new()
            .num_threads(n)
            .build_global()
            .map_err(|e| CliError::Usage(e.to_string()))?;
    }
    let limits = Limits::from_env();
    match cli.command {
        Command::Filters { file } => {
            let m = document::monoid(&document::load(&file)?.doc)?;
            let filters = all_filters(&m, &limits)?;
            let ultra = match m.zero() {
                Some(z) if z != m.one() => Some(ultrafilters(&m, &limits)?),
                _ => None,
            };
            print_json(&render::filters_report(m.size(), &filters, ultra.as_ref()))?;
        }
        Command::Filtrum { file, format } => {
            let m = document::monoid(&document::load(&file)?.doc)?;
            let phi = Filtrum::new(&m, &limits)?;
            match format {
                GraphFormat::Json => print_json(&render::filtrum_report(&phi, &limits))?,
                GraphFormat::Dot => print!("{}", render::filtrum_dot(&phi)),
            }
        }
        Command::Fixfilters { file } => {
            let h = document::hom(&document::load(&file)?)?;
            let fx = fixfilters(&h, &limits)?;
            let src = all_filters(h.source(), &limits)?;
            let tgt = all_filters(h.target(), &limits)?;
            print_json(&render::fix_report(&src, &tgt, &fx))?;
        }
        Command::Characterize { file } => {
            let x = document::space(&document::load(&file)?.doc)?;
            let c = characterize_filtrum_space(&x, &limits)?;
            print_json(&render::characterization_report(&x, &c))?;
        }
        Command::Sobrify { file, format } => {
            let x = document::space(&document::load(&file)?.doc)?;
            let s = sobrify(&x, &limits)?;
            match format {
                GraphFormat::Json => print_json(&document::space_doc(&s.space))?,
                GraphFormat::Dot => print!("{}", render::space_dot(&s.space)),
            }
        }
        Command::Suite { file, corpus, laws } => {
            let report = if corpus {
                suite::run_corpus(laws, &limits)?
            } else {
                let file = file.ok_or_else(|| CliError::Usage("a file or --corpus is required".into()))?;
                file_suite(&file, laws, &limits)?
            };
            print_json(&report)?;
            if !report.all_passed() {
                return Ok(ExitCode::from(2));
            }
        }
    }
    Ok(ExitCode::SUCCESS)
}

fn file_suite(path: &Path, laws: LawSet, limits: &Limits) -> Result<SuiteReport, CliError> {
    let loaded: Loaded = document::load(path)?;
    let name = path
        .file_stem()
        .map_or_else(|| path.display().to_string(), |s| s.to_string_lossy().into_owned());
    let records = match &loaded.doc {
        Document::Monoid(d) => {
            document::monoid_shape(d)?;
            suite::monoid_table_laws(&name, &d.mul, d.one, d.zero, laws, limits)?
        }
        Document::Ring(d) => {
            document::ring_shape(d)?;
            suite::ring_table_laws(&name, &d.add, &d.mul, laws, limits)?
        }
        Document::Space(d) => suite::space_table_laws(&name, d.points.clone(), document::open_sets(d)?, laws, limits)?,
        Document::MonoidHom(_) => {
            let (source, target, map) = document::hom_parts(&loaded)?;
            suite::hom_map_laws(&name, &source, &target, &map, laws, limits)?
        }
        Document::ContinuousMap(_) => {
            let (source, target, map) = document::map_parts(&loaded)?;
            suite::map_table_laws(&name, &source, &target, map, laws, limits)?
        }
    };
    Ok(SuiteReport::new(name, laws, records))
}

fn main() -> ExitCode {
    // clap exits 2 on bad arguments, which would read as a law violation.
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) if !e.use_stderr() => {
            let _ = e.print();
            return ExitCode::SUCCESS;
        }
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(1);
        }
    };
    match run(cli) {
        Ok(code) => code,
        Err(e) => {
            let code = e.exit_code();
            eprintln!(
                "{}",
                json!({ "error": e.code(), "message": e.to_string(), "exit_code": code })
            );
            ExitCode::from(code as u8)
        }
    }
}
