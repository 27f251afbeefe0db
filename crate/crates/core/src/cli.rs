//! Command-line front end. Exit codes: 0 success, 1 usage error, 2 analysis
//! error, 3 verification diff.

use std::io::Write;
use std::path::Path;

use anyhow::Context;
use clap::{Parser, Subcommand};

use crate::census::{self, CatalogRow};
use crate::k3inv::{K3Record, RecordError};
use crate::report::{self, Format};
use crate::stratum::WeightSystem;
use crate::wps::{self, WeightVector};

pub const EXIT_OK: i32 = 0;
pub const EXIT_USAGE: i32 = 1;
pub const EXIT_ANALYSIS: i32 = 2;
pub const EXIT_DIFF: i32 = 3;

#[derive(Debug, Parser)]
#[command(name = "k3census", version, about = "Du Val baskets, link topology and moduli of weighted K3 surfaces")]
pub struct Cli {
    /// Output format.
    #[arg(long, value_enum, default_value_t = Format::Md, global = true)]
    pub format: Format,
    /// Worker threads (default: all cores). Output does not depend on it.
    #[arg(long, global = true, value_parser = clap::value_parser!(u64).range(1..))]
    pub jobs: Option<u64>,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Basket, Betti numbers and moduli of one weight system.
    Analyze {
        #[arg(short, long, value_delimiter = ',', required = true, value_parser = positive())]
        weights: Vec<u64>,
        #[arg(short, long, value_delimiter = ',', required = true, value_parser = positive())]
        degrees: Vec<u64>,
    },
    /// All quasismooth K3 hypersurfaces with weights up to a bound.
    Enumerate {
        #[arg(long, default_value_t = census::DEFAULT_MAX_WEIGHT, value_parser = positive())]
        max_weight: u64,
    },
    /// Recompute every row of a catalog and diff against the print.
    Verify {
        /// Catalog csv path, or `reid` / `fletcher` for the bundled tables.
        #[arg(long, default_value = "reid")]
        catalog: String,
    },
    /// Realized link types over one or more catalogs.
    Classify {
        #[arg(long, value_delimiter = ',', default_values_t = ["reid".to_string(), "fletcher".to_string()])]
        catalog: Vec<String>,
    },
    /// Dimension of the degree-l forms on P(w).
    H0 {
        #[arg(short, long, value_delimiter = ',', required = true, value_parser = positive())]
        weights: Vec<u64>,
        #[arg(short, long)]
        l: u64,
    },
    /// The three moduli counts and whether they agree.
    Moduli {
        #[arg(short, long, value_delimiter = ',', required = true, value_parser = positive())]
        weights: Vec<u64>,
        #[arg(short, long, value_delimiter = ',', required = true, value_parser = positive())]
        degrees: Vec<u64>,
    },
}

fn positive() -> clap::builder::RangedU64ValueParser<u64> {
    clap::value_parser!(u64).range(1..)
}

fn load(catalog: &str) -> anyhow::Result<(String, Vec<CatalogRow>)> {
    let (name, rows) = match catalog {
        "reid" => ("reid".to_string(), census::load_catalog(census::REID_CSV)),
        "fletcher" => ("fletcher".to_string(), census::load_catalog(census::FLETCHER_CSV)),
        path => {
            let p = Path::new(path);
            let name = p.file_stem().map_or(path.to_string(), |s| s.to_string_lossy().into_owned());
            (name, census::load_catalog_file(p))
        }
    };
    Ok((name, rows.with_context(|| format!("loading catalog {catalog}"))?))
}

fn record_or_error(ws: &WeightSystem, format: Format) -> (i32, String) {
    match K3Record::compute(ws) {
        Ok(r) => (EXIT_OK, report::render_records(&[r], format)),
        Err(RecordError::Analysis(e)) => (EXIT_ANALYSIS, report::render_analysis_error(ws, &e, format)),
        Err(RecordError::Invariant(e)) => (EXIT_ANALYSIS, format!("{ws}: {e}\n")),
    }
}

fn execute(cli: &Cli) -> anyhow::Result<(i32, String)> {
    let format = cli.format;
    Ok(match &cli.command {
        Command::Analyze { weights, degrees } => {
            let ws = WeightSystem::new(weights.clone(), degrees.clone())?;
            record_or_error(&ws, format)
        }
        Command::Moduli { weights, degrees } => {
            let ws = WeightSystem::new(weights.clone(), degrees.clone())?;
            match K3Record::compute(&ws) {
                Ok(r) => (EXIT_OK, report::render_moduli(&r, format)),
                Err(_) => record_or_error(&ws, format),
            }
        }
        Command::H0 { weights, l } => {
            let value = wps::h0(&WeightVector::new(weights.clone()), *l);
            (EXIT_OK, report::render_h0(weights, *l, value, format))
        }
        Command::Enumerate { max_weight } => {
            let records: Vec<K3Record> = census::enumerate_codim1(*max_weight)
                .iter()
                .map(|ws| K3Record::compute(ws).expect("enumerated systems analyze"))
                .collect();
            (EXIT_OK, report::render_records(&records, format))
        }
        Command::Verify { catalog } => {
            let (name, rows) = load(catalog)?;
            let rep = census::verify_catalog(&rows);
            let code = if rep.all_baskets_reproduced() { EXIT_OK } else { EXIT_DIFF };
            (code, report::render_verification(&name, &rep, format))
        }
        Command::Classify { catalog } => {
            let mut reports = Vec::new();
            for c in catalog {
                let (name, rows) = load(c)?;
                reports.push((name, census::verify_catalog(&rows)));
            }
            let refs: Vec<(&str, &census::VerificationReport)> =
                reports.iter().map(|(n, r)| (n.as_str(), r)).collect();
            (EXIT_OK, report::render_classification(&census::classify(&refs), format))
        }
    })
}

/// Parses `args` (including the program name), writes the report to `out`
/// and diagnostics to `err`, and returns the exit code.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
            let sink: &mut dyn Write = if e.use_stderr() { err } else { out };
            let _ = write!(sink, "{}", e.render());
            return code;
        }
    };
    let result = match cli.jobs {
        Some(n) => rayon::ThreadPoolBuilder::new()
            .num_threads(n as usize)
            .build()
            .context("building thread pool")
            .and_then(|pool| pool.install(|| execute(&cli))),
        None => execute(&cli),
    };
    match result {
        Ok((code, text)) => {
            if out.write_all(text.as_bytes()).is_err() {
                return EXIT_USAGE;
            }
            code
        }
        Err(e) => {
            let _ = writeln!(err, "error: {e:#}");
            EXIT_USAGE
        }
    }
}
