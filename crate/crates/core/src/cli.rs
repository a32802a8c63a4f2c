//! Command-line front end. The binary is a thin wrapper over [`run_command`].
//!
//! Exit codes: 0 success, 1 validation violations found, 2 I/O, parse or
//! usage error, 3 analysis precondition error.

use std::ffi::OsString;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Parser, Subcommand};

use crate::config::Config;
use crate::io::{parse_dataset, LoadError};
use crate::model::Dataset;
use crate::report::{self, Format, ReportBundle, Section};
use crate::validate::validate_dataset;

pub const EXIT_OK: i32 = 0;
pub const EXIT_INVALID: i32 = 1;
pub const EXIT_IO: i32 = 2;
pub const EXIT_PRECONDITION: i32 = 3;

#[derive(Debug, Parser)]
#[command(name = "kvstream", version, about = "Knowledge value stream analytics")]
struct Cli {
    #[command(subcommand)]
    command: Command,
    /// Dataset directory.
    #[arg(long, global = true)]
    data: Option<PathBuf>,
    /// Output format: text, json or csv.
    #[arg(long, global = true, default_value = "text")]
    format: String,
    /// Restrict the analysis to these knowledge areas (repeatable).
    #[arg(long = "area", global = true)]
    areas: Vec<String>,
    /// JSON file of threshold overrides.
    #[arg(long, global = true)]
    config: Option<PathBuf>,
    /// Output file, or directory for csv and plot output.
    #[arg(long, global = true)]
    out: Option<PathBuf>,
    /// Fixed report timestamp instead of the current time.
    #[arg(long, global = true, hide = true)]
    timestamp: Option<String>,
}

#[derive(Debug, Clone, Copy, Subcommand)]
enum Command {
    /// Check dataset invariants.
    Validate,
    /// Density, reciprocity, tacit/explicit split, cut points, cliques.
    Flow,
    /// Knowledge flux and its optimality per area.
    Flux,
    /// Learning-cycle outcome statistics and decision projection.
    Lcc,
    /// Knowledge-gap and perception-reality scenarios.
    Gaps,
    /// CVSS maturity scorecards.
    Cvss,
    /// Deployment phase and waste points.
    Phase,
    /// Full flow-flux report.
    Report,
    /// Density-reciprocity and flux charts as SVG.
    Plot,
}

impl Command {
    fn sections(self) -> &'static [Section] {
        match self {
            Command::Validate => &[],
            Command::Flow => &[Section::Flow],
            Command::Flux => &[Section::Flux],
            Command::Lcc => &[Section::Lcc],
            Command::Gaps => &[Section::Gaps],
            Command::Cvss => &[Section::Maturity],
            Command::Phase => &[Section::Phase, Section::Waste],
            Command::Report => &Section::ALL,
            Command::Plot => &[Section::FlowFlux, Section::Flux],
        }
    }
}

/// Run with the process's stdout and stderr.
pub fn run_command<I, T>(argv: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let stdout = std::io::stdout();
    let stderr = std::io::stderr();
    run_with_io(argv, &mut stdout.lock(), &mut stderr.lock())
}

pub fn run_with_io<I, T>(argv: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(cli) => cli,
        Err(e) => {
            use clap::error::ErrorKind;
            let code = match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => EXIT_OK,
                _ => EXIT_IO,
            };
            let text = e.render().to_string();
            let _ = if code == EXIT_OK { out.write_all(text.as_bytes()) } else { err.write_all(text.as_bytes()) };
            return code;
        }
    };
    match execute(&cli, out, err) {
        Ok(code) => code,
        Err(Failure(code, msg)) => {
            let _ = writeln!(err, "error: {msg}");
            code
        }
    }
}

struct Failure(i32, String);

fn io_failure(e: impl std::fmt::Display) -> Failure {
    Failure(EXIT_IO, e.to_string())
}

fn execute(cli: &Cli, out: &mut dyn Write, err: &mut dyn Write) -> Result<i32, Failure> {
    let format: Format = cli.format.parse().map_err(io_failure)?;
    let config = match &cli.config {
        Some(path) => Config::from_file(path).map_err(io_failure)?,
        None => Config::default(),
    };
    let data = cli
        .data
        .as_ref()
        .ok_or_else(|| Failure(EXIT_IO, "missing --data <dir>\n\nUsage: kvstream <COMMAND> --data <DIR>".into()))?;
    let dataset = parse_dataset(data).map_err(|e| match e {
        LoadError::Invalid(_) => Failure(EXIT_INVALID, e.to_string()),
        other => io_failure(other),
    })?;

    let report = validate_dataset(&dataset);
    if let Command::Validate = cli.command {
        let body = match format {
            Format::Json => {
                let mut v = serde_json::to_vec_pretty(&report).map_err(io_failure)?;
                v.push(b'\n');
                v
            }
            Format::Csv => {
                let mut w = csv::Writer::from_writer(Vec::new());
                w.write_record(["entity", "rule", "detail"]).map_err(io_failure)?;
                for v in &report.violations {
                    w.write_record([v.entity.as_str(), v.rule.name(), v.detail.as_str()]).map_err(io_failure)?;
                }
                w.into_inner().map_err(io_failure)?
            }
            Format::Text if report.is_valid() => b"dataset is valid\n".to_vec(),
            Format::Text => report.violations.iter().map(|v| format!("{v}\n")).collect::<String>().into_bytes(),
        };
        emit(out, cli.out.as_deref(), body)?;
        return Ok(if report.is_valid() { EXIT_OK } else { EXIT_INVALID });
    }
    if !report.is_valid() {
        for v in &report.violations {
            let _ = writeln!(err, "{v}");
        }
        return Err(Failure(EXIT_INVALID, format!("dataset has {} violation(s); run `validate`", report.violations.len())));
    }

    let dataset = restrict(&dataset, &cli.areas)?;
    let stamp = cli.timestamp.clone().unwrap_or_else(report::now_timestamp);
    let bundle = report::build_report(&dataset, &config, cli.command.sections(), stamp);

    if let Command::Plot = cli.command {
        let dir = cli.out.clone().unwrap_or_else(|| PathBuf::from("."));
        let paths = report::emit_svg_plots(&bundle, &dir).map_err(io_failure)?;
        for p in paths {
            let _ = writeln!(out, "{}", p.display());
        }
        return Ok(EXIT_OK);
    }

    let rendered = report::render_report(&bundle, format).map_err(io_failure)?;
    match &cli.out {
        Some(path) if rendered.files.len() > 1 || path.is_dir() => {
            std::fs::create_dir_all(path).map_err(io_failure)?;
            for (name, body) in &rendered.files {
                std::fs::write(path.join(name), body).map_err(io_failure)?;
            }
        }
        _ => emit(out, cli.out.as_deref(), rendered.into_stream())?,
    }
    Ok(precondition_code(&bundle, err))
}

fn emit(out: &mut dyn Write, path: Option<&Path>, body: Vec<u8>) -> Result<(), Failure> {
    match path {
        Some(p) => std::fs::write(p, body).map_err(io_failure),
        None => out.write_all(&body).map_err(io_failure),
    }
}

fn restrict(d: &Dataset, areas: &[String]) -> Result<Dataset, Failure> {
    if areas.is_empty() {
        return Ok(d.clone());
    }
    if let Some(unknown) = areas.iter().find(|a| d.area(a).is_none()) {
        return Err(Failure(EXIT_PRECONDITION, format!("unknown knowledge area '{unknown}'")));
    }
    Ok(d.restrict_to_areas(areas))
}

/// Exit 3 when a flow or flux analysis could not run for some area.
fn precondition_code(b: &ReportBundle, err: &mut dyn Write) -> i32 {
    let mut failed = Vec::new();
    if b.flow_flux.is_none() {
        for f in b.flow.iter().flatten() {
            if let Some(e) = &f.error {
                failed.push(format!("{}: {e}", f.area));
            }
        }
        for f in b.flux.iter().flatten() {
            if let Some(e) = &f.error {
                failed.push(format!("{}: {e}", f.area));
            }
        }
    }
    for f in &failed {
        let _ = writeln!(err, "precondition not met: {f}");
    }
    if failed.is_empty() {
        EXIT_OK
    } else {
        EXIT_PRECONDITION
    }
}
