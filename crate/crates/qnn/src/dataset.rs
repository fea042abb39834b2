//! Loader for the UCI Wisconsin Diagnostic Breast Cancer (WDBC) CSV layout:
//! `id, diagnosis (M|B), 30 real features`. Only the first ten features
//! (the "mean" block) are kept.

use std::fs::File;
use std::io::Read;
use std::path::{Path, PathBuf};

use qnn_core::{Label, Sample, FEATURE_COUNT};
use thiserror::Error;

/// Columns in a WDBC row: id, diagnosis and 30 features.
pub const WDBC_COLUMNS: usize = 32;

pub const FEATURE_NAMES: [&str; FEATURE_COUNT] = [
    "radius_mean",
    "texture_mean",
    "perimeter_mean",
    "area_mean",
    "smoothness_mean",
    "compactness_mean",
    "concavity_mean",
    "concave_points_mean",
    "symmetry_mean",
    "fractal_dimension_mean",
];

#[derive(Debug, Error)]
pub enum DataError {
    #[error("cannot read {path}: {source}")]
    Io { path: PathBuf, source: std::io::Error },
    #[error("{path}: no data rows")]
    Empty { path: PathBuf },
    #[error("{path}: row {row}: {reason}")]
    Malformed { path: PathBuf, row: usize, reason: String },
    #[error("{path}: row {row}: feature column {column} is not a finite number: {value:?}")]
    NonNumeric { path: PathBuf, row: usize, column: usize, value: String },
    #[error("{path}: row {row}: unknown diagnosis code {code:?} (expected M or B)")]
    Diagnosis { path: PathBuf, row: usize, code: String },
}

/// Loads every row of a WDBC file, preserving file order. A single header
/// line is skipped when its first field is not numeric. Row numbers in
/// errors are 1-based file lines.
pub fn load_wbc_csv(path: impl AsRef<Path>) -> Result<Vec<Sample>, DataError> {
    let path = path.as_ref();
    let io_err = |source| DataError::Io { path: path.to_path_buf(), source };
    let mut text = String::new();
    File::open(path).map_err(io_err)?.read_to_string(&mut text).map_err(io_err)?;
    parse_wbc(&text, path)
}

pub fn parse_wbc(text: &str, path: &Path) -> Result<Vec<Sample>, DataError> {
    let mut reader = csv::ReaderBuilder::new()
        .has_headers(false)
        .flexible(true)
        .trim(csv::Trim::All)
        .from_reader(text.as_bytes());

    let mut samples = Vec::new();
    for (i, record) in reader.records().enumerate() {
        let row = i + 1;
        let record = record.map_err(|e| DataError::Malformed {
            path: path.to_path_buf(),
            row,
            reason: e.to_string(),
        })?;
        if record.iter().all(str::is_empty) {
            continue;
        }
        if i == 0 && record.get(0).is_some_and(|f| f.parse::<f64>().is_err()) {
            continue;
        }
        if record.len() != WDBC_COLUMNS {
            return Err(DataError::Malformed {
                path: path.to_path_buf(),
                row,
                reason: format!("expected {WDBC_COLUMNS} columns, found {}", record.len()),
            });
        }
        let label = match &record[1] {
            "M" | "m" => Label::Malignant,
            "B" | "b" => Label::Benign,
            code => {
                return Err(DataError::Diagnosis { path: path.to_path_buf(), row, code: code.to_string() })
            }
        };
        let mut features = [0.0; FEATURE_COUNT];
        for (k, slot) in features.iter_mut().enumerate() {
            let column = k + 2;
            let value = &record[column];
            *slot = value
                .parse::<f64>()
                .ok()
                .filter(|x| x.is_finite())
                .ok_or_else(|| DataError::NonNumeric {
                    path: path.to_path_buf(),
                    row,
                    column,
                    value: value.to_string(),
                })?;
        }
        samples.push(Sample { features, label });
    }
    if samples.is_empty() {
        return Err(DataError::Empty { path: path.to_path_buf() });
    }
    Ok(samples)
}
