//! Reading and writing the dataset directory.
//!
//! Required files: `actors.csv` and `ties.csv`. Everything else is optional
//! and yields an empty collection when absent. `areas.csv` and
//! `products.csv` (`id,name`) are optional registries; without them the
//! registries are derived from the ids the other files reference.

use std::collections::BTreeSet;
use std::fs;
use std::path::{Path, PathBuf};

use serde::de::DeserializeOwned;
use serde::{Deserialize, Serialize};

use crate::model::{
    ActorKind, Dataset, DecisionRecord, GapAssessment, KnowledgeActor, KnowledgeArea, KnowledgeTie, Product,
    Scorecard, UncertaintySpec,
};
use crate::validate::{validate_dataset, ValidationReport};

pub const ACTORS_FILE: &str = "actors.csv";
pub const TIES_FILE: &str = "ties.csv";
pub const AREAS_FILE: &str = "areas.csv";
pub const PRODUCTS_FILE: &str = "products.csv";
pub const DECISIONS_FILE: &str = "decisions.json";
pub const GAPS_FILE: &str = "gaps.json";
pub const SCORECARDS_FILE: &str = "scorecards.json";
pub const CODEBOOK_FILE: &str = "codebook.json";
pub const UNCERTAINTY_FILE: &str = "uncertainty.json";

#[derive(Debug, thiserror::Error)]
pub enum LoadError {
    #[error("dataset directory {0} does not exist")]
    MissingDirectory(PathBuf),
    #[error("required file {0} is missing")]
    MissingFile(PathBuf),
    #[error("{file}:{line}: {message}")]
    ParseError { file: String, line: u64, message: String },
    #[error("dataset is invalid ({} violation(s))", .0.violations.len())]
    Invalid(ValidationReport),
    #[error("i/o error on {path}: {source}")]
    Io { path: PathBuf, source: std::io::Error },
}

impl LoadError {
    fn parse(file: &str, line: u64, message: impl Into<String>) -> Self {
        LoadError::ParseError { file: file.to_string(), line, message: message.into() }
    }
}

#[derive(Debug, Deserialize)]
struct ActorRow {
    id: String,
    name: String,
    kind: ActorKind,
}

#[derive(Debug, Deserialize)]
struct TieRow {
    area: String,
    source: String,
    target: String,
    weight: Option<u32>,
}

#[derive(Debug, Serialize, Deserialize)]
struct RegistryRow {
    id: String,
    name: String,
}

/// Parse and validate a dataset directory.
pub fn load_dataset(dir: impl AsRef<Path>) -> Result<Dataset, LoadError> {
    let dataset = parse_dataset(dir)?;
    let report = validate_dataset(&dataset);
    if report.is_valid() {
        Ok(dataset)
    } else {
        Err(LoadError::Invalid(report))
    }
}

/// Parse a dataset directory without checking cross-references.
///
/// Record-level constraints (enum values, weight >= 1) are enforced here;
/// everything else is left to [`validate_dataset`].
pub fn parse_dataset(dir: impl AsRef<Path>) -> Result<Dataset, LoadError> {
    let dir = dir.as_ref();
    if !dir.is_dir() {
        return Err(LoadError::MissingDirectory(dir.to_path_buf()));
    }
    let actors = read_csv::<ActorRow>(dir, ACTORS_FILE, true)?
        .into_iter()
        .map(|(_, r)| KnowledgeActor { id: r.id, name: r.name, kind: r.kind })
        .collect();

    let mut ties = Vec::new();
    for (line, row) in read_csv::<TieRow>(dir, TIES_FILE, true)? {
        let weight = row.weight.unwrap_or(1);
        if weight == 0 {
            return Err(LoadError::parse(TIES_FILE, line, "weight must be >= 1"));
        }
        ties.push(KnowledgeTie { area: row.area, source: row.source, target: row.target, weight });
    }

    let decisions: Vec<DecisionRecord> = read_json(dir, DECISIONS_FILE)?.unwrap_or_default();
    let gaps: Vec<GapAssessment> = read_json(dir, GAPS_FILE)?.unwrap_or_default();
    let scorecards: Vec<Scorecard> = read_json(dir, SCORECARDS_FILE)?.unwrap_or_default();
    let codebook = read_json(dir, CODEBOOK_FILE)?.unwrap_or_default();
    let uncertainty: Option<UncertaintySpec> = read_json(dir, UNCERTAINTY_FILE)?;

    let areas = if dir.join(AREAS_FILE).exists() {
        read_csv::<RegistryRow>(dir, AREAS_FILE, false)?
            .into_iter()
            .map(|(_, r)| KnowledgeArea { id: r.id, name: r.name })
            .collect()
    } else {
        let ids: BTreeSet<&str> =
            ties.iter().map(|t| t.area.as_str()).chain(decisions.iter().map(|d| d.area.as_str())).collect();
        ids.into_iter().map(|id| KnowledgeArea { id: id.to_string(), name: id.to_string() }).collect()
    };
    let products = if dir.join(PRODUCTS_FILE).exists() {
        read_csv::<RegistryRow>(dir, PRODUCTS_FILE, false)?
            .into_iter()
            .map(|(_, r)| Product { id: r.id, name: r.name })
            .collect()
    } else {
        let ids: BTreeSet<&str> = decisions.iter().map(|d| d.product.as_str()).collect();
        ids.into_iter().map(|id| Product { id: id.to_string(), name: id.to_string() }).collect()
    };

    Ok(Dataset { actors, areas, products, ties, decisions, gaps, scorecards, uncertainty, codebook })
}

fn read_csv<T: DeserializeOwned>(dir: &Path, file: &str, required: bool) -> Result<Vec<(u64, T)>, LoadError> {
    let path = dir.join(file);
    if !path.exists() {
        return if required { Err(LoadError::MissingFile(path)) } else { Ok(Vec::new()) };
    }
    let mut reader = csv::ReaderBuilder::new()
        .trim(csv::Trim::All)
        .from_path(&path)
        .map_err(|e| LoadError::parse(file, 0, e.to_string()))?;
    let mut rows = Vec::new();
    for record in reader.deserialize::<T>() {
        match record {
            Ok(row) => {
                let line = rows.len() as u64 + 2;
                rows.push((line, row));
            }
            Err(e) => {
                let line = e.position().map(|p| p.line()).unwrap_or(0);
                return Err(LoadError::parse(file, line, e.to_string()));
            }
        }
    }
    Ok(rows)
}

fn read_json<T: DeserializeOwned>(dir: &Path, file: &str) -> Result<Option<T>, LoadError> {
    let path = dir.join(file);
    if !path.exists() {
        return Ok(None);
    }
    let text = fs::read_to_string(&path).map_err(|source| LoadError::Io { path: path.clone(), source })?;
    serde_json::from_str(&text).map(Some).map_err(|e| LoadError::parse(file, e.line() as u64, e.to_string()))
}

/// Write a dataset in the directory layout [`load_dataset`] reads.
pub fn save_dataset(dataset: &Dataset, dir: impl AsRef<Path>) -> Result<(), LoadError> {
    let dir = dir.as_ref();
    fs::create_dir_all(dir).map_err(|source| LoadError::Io { path: dir.to_path_buf(), source })?;

    let mut actors = csv_writer(dir, ACTORS_FILE)?;
    write_row(&mut actors, dir, ACTORS_FILE, ["id", "name", "kind"])?;
    for a in &dataset.actors {
        write_row(&mut actors, dir, ACTORS_FILE, [a.id.as_str(), a.name.as_str(), a.kind.as_str()])?;
    }
    flush(actors, dir, ACTORS_FILE)?;

    let mut ties = csv_writer(dir, TIES_FILE)?;
    write_row(&mut ties, dir, TIES_FILE, ["area", "source", "target", "weight"])?;
    for t in &dataset.ties {
        let w = t.weight.to_string();
        write_row(&mut ties, dir, TIES_FILE, [t.area.as_str(), t.source.as_str(), t.target.as_str(), w.as_str()])?;
    }
    flush(ties, dir, TIES_FILE)?;

    for (file, rows) in [
        (AREAS_FILE, dataset.areas.iter().map(|a| (a.id.as_str(), a.name.as_str())).collect::<Vec<_>>()),
        (PRODUCTS_FILE, dataset.products.iter().map(|p| (p.id.as_str(), p.name.as_str())).collect()),
    ] {
        let mut w = csv_writer(dir, file)?;
        write_row(&mut w, dir, file, ["id", "name"])?;
        for (id, name) in rows {
            write_row(&mut w, dir, file, [id, name])?;
        }
        flush(w, dir, file)?;
    }

    write_json(dir, DECISIONS_FILE, &dataset.decisions)?;
    write_json(dir, GAPS_FILE, &dataset.gaps)?;
    write_json(dir, SCORECARDS_FILE, &dataset.scorecards)?;
    if !dataset.codebook.is_empty() {
        write_json(dir, CODEBOOK_FILE, &dataset.codebook)?;
    }
    if let Some(u) = &dataset.uncertainty {
        write_json(dir, UNCERTAINTY_FILE, u)?;
    }
    Ok(())
}

fn io_err(dir: &Path, file: &str, e: impl Into<std::io::Error>) -> LoadError {
    LoadError::Io { path: dir.join(file), source: e.into() }
}

fn csv_writer(dir: &Path, file: &str) -> Result<csv::Writer<fs::File>, LoadError> {
    csv::Writer::from_path(dir.join(file)).map_err(|e| io_err(dir, file, e))
}

fn write_row<'a>(
    w: &mut csv::Writer<fs::File>,
    dir: &Path,
    file: &str,
    row: impl IntoIterator<Item = &'a str>,
) -> Result<(), LoadError> {
    w.write_record(row).map_err(|e| io_err(dir, file, e))
}

fn flush(mut w: csv::Writer<fs::File>, dir: &Path, file: &str) -> Result<(), LoadError> {
    w.flush().map_err(|e| io_err(dir, file, e))
}

fn write_json<T: Serialize + ?Sized>(dir: &Path, file: &str, value: &T) -> Result<(), LoadError> {
    let mut text = serde_json::to_string_pretty(value).map_err(|e| io_err(dir, file, e))?;
    text.push('\n');
    fs::write(dir.join(file), text).map_err(|e| io_err(dir, file, e))
}
