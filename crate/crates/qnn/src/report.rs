//! CSV artifacts written by the runner. Every file has a header row and a
//! constant column count; floats carry 17 significant digits.

use std::fs;
use std::path::{Path, PathBuf};

use qnn_core::{EvalMetrics, TrainMetrics};

use crate::error::RunError;

pub const LOSS_FILE: &str = "loss.csv";
pub const PARAMS_FILE: &str = "params.csv";
pub const FINAL_PARAMS_FILE: &str = "final_params";
pub const PER_SAMPLE_FILE: &str = "per_sample_loss.csv";
pub const SUMMARY_FILE: &str = "summary";
pub const CONFIG_ECHO_FILE: &str = "config_echo";
pub const CURVES_FILE: &str = "curves.csv";

/// Scientific notation with 17 significant digits; parses back bit-exactly.
pub fn fmt_f64(x: f64) -> String {
    format!("{x:.16e}")
}

/// Accumulates rows in memory; nothing touches disk until [`Table::write`].
#[derive(Debug, Clone)]
pub struct Table {
    header: Vec<String>,
    rows: Vec<Vec<String>>,
}

impl Table {
    pub fn new<S: Into<String>>(header: impl IntoIterator<Item = S>) -> Self {
        Self { header: header.into_iter().map(Into::into).collect(), rows: Vec::new() }
    }

    pub fn push(&mut self, row: Vec<String>) {
        assert_eq!(row.len(), self.header.len(), "row width must match header");
        self.rows.push(row);
    }

    pub fn len(&self) -> usize {
        self.rows.len()
    }

    pub fn is_empty(&self) -> bool {
        self.rows.is_empty()
    }

    pub fn to_csv(&self) -> String {
        let mut w = csv::WriterBuilder::new().terminator(csv::Terminator::Any(b'\n')).from_writer(Vec::new());
        w.write_record(&self.header).expect("in-memory write");
        for row in &self.rows {
            w.write_record(row).expect("in-memory write");
        }
        String::from_utf8(w.into_inner().expect("in-memory flush")).expect("csv output is utf-8")
    }

    pub fn write(&self, path: &Path) -> Result<(), RunError> {
        fs::write(path, self.to_csv()).map_err(|source| RunError::Io { path: path.to_path_buf(), source })
    }
}

pub fn loss_table(metrics: &TrainMetrics) -> Table {
    let mut t = Table::new(["iteration", "sample_index", "loss", "rate"]);
    for (i, ((loss, rate), idx)) in metrics.losses.iter().zip(&metrics.rates).zip(&metrics.sample_indices).enumerate() {
        t.push(vec![i.to_string(), idx.to_string(), fmt_f64(*loss), fmt_f64(*rate)]);
    }
    t
}

pub fn params_table(metrics: &TrainMetrics, count: usize) -> Table {
    let mut header = vec!["iteration".to_string()];
    header.extend((0..count).map(|k| format!("p_{k}")));
    let mut t = Table::new(header);
    for (i, snapshot) in metrics.param_snapshots.iter().enumerate() {
        let mut row = vec![i.to_string()];
        row.extend(snapshot.iter().map(|&p| fmt_f64(p)));
        t.push(row);
    }
    t
}

pub fn final_params_table(params: &[f64]) -> Table {
    let mut t = Table::new(["index", "value"]);
    for (k, p) in params.iter().enumerate() {
        t.push(vec![k.to_string(), fmt_f64(*p)]);
    }
    t
}

pub fn per_sample_table(eval: &EvalMetrics) -> Table {
    let mut t = Table::new(["sample_index", "label", "predicted", "loss"]);
    for (i, o) in eval.outcomes.iter().enumerate() {
        t.push(vec![i.to_string(), o.label.bit().to_string(), fmt_f64(o.predicted), fmt_f64(o.loss)]);
    }
    t
}

/// Appends `scope,metric,value` rows describing an evaluation.
pub fn push_summary(t: &mut Table, scope: &str, eval: &EvalMetrics) {
    let mut row = |metric: String, value: String| t.push(vec![scope.to_string(), metric, value]);
    row("samples".into(), eval.outcomes.len().to_string());
    row("average_loss".into(), fmt_f64(eval.average_loss));
    row("accuracy".into(), fmt_f64(eval.accuracy));
    for &(threshold, fraction) in &eval.exceedances {
        row(format!("fraction_loss_above_{threshold}"), fmt_f64(fraction));
    }
}

pub fn summary_table() -> Table {
    Table::new(["scope", "metric", "value"])
}

pub fn config_table(entries: &[(&'static str, String)]) -> Table {
    let mut t = Table::new(["key", "value"]);
    for (k, v) in entries {
        t.push(vec![k.to_string(), v.clone()]);
    }
    t
}

/// Reads a `final_params` file back into a parameter list.
pub fn read_final_params(path: &Path) -> Result<Vec<f64>, RunError> {
    let parse_err = |reason: String| RunError::Parse { path: path.to_path_buf(), reason };
    let text = fs::read_to_string(path).map_err(|source| RunError::Io { path: path.to_path_buf(), source })?;
    let mut reader = csv::ReaderBuilder::new().trim(csv::Trim::All).from_reader(text.as_bytes());
    let mut values = Vec::new();
    for (i, record) in reader.records().enumerate() {
        let record = record.map_err(|e| parse_err(e.to_string()))?;
        let index: usize = record
            .get(0)
            .and_then(|s| s.parse().ok())
            .ok_or_else(|| parse_err(format!("row {}: bad index", i + 2)))?;
        if index != i {
            return Err(parse_err(format!("row {}: expected index {i}, found {index}", i + 2)));
        }
        let value: f64 = record
            .get(1)
            .and_then(|s| s.parse().ok())
            .filter(|v: &f64| v.is_finite())
            .ok_or_else(|| parse_err(format!("row {}: bad value", i + 2)))?;
        values.push(value);
    }
    Ok(values)
}

/// One row of a `loss.csv` file.
#[derive(Debug, Clone, PartialEq)]
pub struct LossRecord {
    pub iteration: usize,
    pub sample_index: usize,
    pub loss: f64,
    pub rate: f64,
}

pub fn read_loss_csv(path: &Path) -> Result<Vec<LossRecord>, RunError> {
    let parse_err = |reason: String| RunError::Parse { path: path.to_path_buf(), reason };
    let text = fs::read_to_string(path).map_err(|source| RunError::Io { path: path.to_path_buf(), source })?;
    let mut reader = csv::ReaderBuilder::new().trim(csv::Trim::All).from_reader(text.as_bytes());
    reader
        .records()
        .enumerate()
        .map(|(i, record)| {
            let record = record.map_err(|e| parse_err(e.to_string()))?;
            let field = |k: usize| record.get(k).ok_or_else(|| parse_err(format!("row {}: missing column {k}", i + 2)));
            let bad = |what: &str| parse_err(format!("row {}: bad {what}", i + 2));
            Ok(LossRecord {
                iteration: field(0)?.parse().map_err(|_| bad("iteration"))?,
                sample_index: field(1)?.parse().map_err(|_| bad("sample_index"))?,
                loss: field(2)?.parse().map_err(|_| bad("loss"))?,
                rate: field(3)?.parse().map_err(|_| bad("rate"))?,
            })
        })
        .collect()
}

/// Trailing-window mean of the loss trace alongside the raw values.
pub fn curves_table(records: &[LossRecord], window: usize) -> Table {
    let window = window.max(1);
    let mut t = Table::new(["iteration", "loss", "window_mean", "rate"]);
    let mut sum = 0.0;
    for (i, r) in records.iter().enumerate() {
        sum += r.loss;
        if i >= window {
            sum -= records[i - window].loss;
        }
        let mean = sum / (i + 1).min(window) as f64;
        t.push(vec![r.iteration.to_string(), fmt_f64(r.loss), fmt_f64(mean), fmt_f64(r.rate)]);
    }
    t
}

pub fn out_path(dir: &Path, name: &str) -> PathBuf {
    dir.join(name)
}
