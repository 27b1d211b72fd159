//! Artifact emission: JSON, CSV and SVG, each carrying the seed.

use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::ValueEnum;
use serde_json::{json, Value};

use crate::error::CliError;

/// Version of the CSV column sets and the JSON layout.
pub const SCHEMA_VERSION: u32 = 1;
/// Environment variable naming the default output directory.
pub const OUT_DIR_ENV: &str = "INTERLACE_OUT_DIR";

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Csv,
    Json,
    Svg,
}

impl Format {
    fn extension(self) -> &'static str {
        match self {
            Format::Csv => "csv",
            Format::Json => "json",
            Format::Svg => "svg",
        }
    }
}

pub struct Table {
    pub columns: Vec<&'static str>,
    pub rows: Vec<Vec<String>>,
}

impl Table {
    pub fn new(columns: Vec<&'static str>) -> Self {
        Self { columns, rows: Vec::new() }
    }

    pub fn push(&mut self, row: Vec<String>) {
        debug_assert_eq!(row.len(), self.columns.len());
        self.rows.push(row);
    }
}

pub struct Artifact {
    pub command: &'static str,
    pub seed: u64,
    /// Command parameters, recorded under "spec".
    pub params: Value,
    pub results: Value,
    pub table: Table,
    pub svg: Option<String>,
}

/// Shortest round-trip decimal, switching to exponent form for very small or
/// very large magnitudes. Never locale dependent.
pub fn num(x: f64) -> String {
    let a = x.abs();
    if x == 0.0 || (1e-4..1e15).contains(&a) || !x.is_finite() {
        format!("{x}")
    } else {
        format!("{x:e}")
    }
}

impl Artifact {
    pub fn render(&self, format: Format) -> Result<String, CliError> {
        match format {
            Format::Json => {
                let mut spec = json!({ "command": self.command, "schema_version": SCHEMA_VERSION });
                if let (Some(s), Some(p)) = (spec.as_object_mut(), self.params.as_object()) {
                    s.extend(p.clone());
                }
                let doc = json!({ "spec": spec, "results": self.results, "seed": self.seed });
                let mut text = serde_json::to_string_pretty(&doc).map_err(CliError::internal)?;
                text.push('\n');
                Ok(text)
            }
            Format::Csv => {
                let mut w = csv::Writer::from_writer(Vec::new());
                let mut header: Vec<&str> = self.table.columns.clone();
                header.push("seed");
                w.write_record(&header).map_err(CliError::internal)?;
                let seed = self.seed.to_string();
                for row in &self.table.rows {
                    w.write_record(row.iter().map(String::as_str).chain([seed.as_str()]))
                        .map_err(CliError::internal)?;
                }
                let bytes = w.into_inner().map_err(CliError::internal)?;
                String::from_utf8(bytes).map_err(CliError::internal)
            }
            Format::Svg => {
                let svg = self
                    .svg
                    .as_ref()
                    .ok_or_else(|| CliError::invalid(format!("{} has no SVG output; use csv or json", self.command)))?;
                Ok(with_seed_comment(svg, self.seed))
            }
        }
    }
}

/// Inserts `<!-- seed: … -->` right after the opening `<svg …>` tag.
fn with_seed_comment(svg: &str, seed: u64) -> String {
    match svg.find("<svg").and_then(|s| svg[s..].find('>').map(|e| s + e + 1)) {
        Some(at) => format!("{}<!-- seed: {seed} -->{}", &svg[..at], &svg[at..]),
        None => svg.to_string(),
    }
}

/// Writes to `out`, or to `$INTERLACE_OUT_DIR/<command>-<seed>.<ext>` when
/// the variable is set, or to standard output.
pub fn emit(text: &str, command: &str, seed: u64, format: Format, out: Option<&Path>) -> Result<(), CliError> {
    let target: Option<PathBuf> = match out {
        Some(p) => Some(p.to_path_buf()),
        None => std::env::var_os(OUT_DIR_ENV)
            .filter(|d| !d.is_empty())
            .map(|d| Path::new(&d).join(format!("{command}-{seed}.{}", format.extension()))),
    };
    match target {
        Some(path) => {
            if let Some(dir) = path.parent().filter(|d| !d.as_os_str().is_empty()) {
                fs::create_dir_all(dir).map_err(|e| CliError::io(&path, e))?;
            }
            fs::write(&path, text).map_err(|e| CliError::io(&path, e))
        }
        None => std::io::stdout().write_all(text.as_bytes()).map_err(|e| CliError::io(Path::new("<stdout>"), e)),
    }
}
