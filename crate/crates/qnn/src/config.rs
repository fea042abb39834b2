//! Run configuration: defaults, an optional `key=value` (or `key,value`)
//! file, then command-line flags, later sources overriding earlier ones.

use std::fmt::Write as _;
use std::path::{Path, PathBuf};
use std::str::FromStr;

use qnn_core::{Architecture, TrainConfig, Topology};

use crate::error::RunError;
use crate::report::fmt_f64;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Command {
    Train,
    Evaluate,
    Predict,
    ExportCurves,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum InitMode {
    Zeros,
    /// Seeded uniform draw from `(-0.1, 0.1)`.
    Uniform,
}

impl InitMode {
    fn name(self) -> &'static str {
        match self {
            InitMode::Zeros => "zeros",
            InitMode::Uniform => "uniform",
        }
    }
}

impl FromStr for InitMode {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "zeros" | "zero" => Ok(InitMode::Zeros),
            "uniform" => Ok(InitMode::Uniform),
            other => Err(format!("unknown init mode {other:?} (expected zeros or uniform)")),
        }
    }
}

/// Fully resolved settings for one CLI invocation.
#[derive(Debug, Clone, PartialEq)]
pub struct RunConfig {
    pub data: Option<PathBuf>,
    pub topology: Topology,
    pub qubits: usize,
    pub layers: usize,
    pub train: TrainConfig,
    /// Size of the training prefix; `None` trains on every sample.
    pub train_count: Option<usize>,
    /// Shuffle the samples with `train.seed` before splitting.
    pub shuffle: bool,
    pub init: InitMode,
    pub out: PathBuf,
    pub thresholds: Vec<f64>,
    pub params: Option<PathBuf>,
    pub row: Option<usize>,
    pub image: Option<PathBuf>,
    pub patch_row: Option<usize>,
    pub patch_col: Option<usize>,
}

impl Default for RunConfig {
    fn default() -> Self {
        let arch = Architecture::default_classifier();
        Self {
            data: None,
            topology: arch.topology(),
            qubits: arch.n_qubits(),
            layers: arch.n_layers(),
            train: TrainConfig::default(),
            train_count: None,
            shuffle: false,
            init: InitMode::Zeros,
            out: PathBuf::from("runs/latest"),
            thresholds: vec![0.01, 0.05],
            params: None,
            row: None,
            image: None,
            patch_row: None,
            patch_col: None,
        }
    }
}

fn parse<T: FromStr>(key: &str, value: &str) -> Result<T, RunError>
where
    T::Err: std::fmt::Display,
{
    value
        .trim()
        .parse()
        .map_err(|e| RunError::Config(format!("invalid value {value:?} for {key}: {e}")))
}

fn parse_bool(key: &str, value: &str) -> Result<bool, RunError> {
    match value.trim() {
        "true" | "1" | "yes" | "on" => Ok(true),
        "false" | "0" | "no" | "off" => Ok(false),
        other => Err(RunError::Config(format!("invalid value {other:?} for {key}: expected true or false"))),
    }
}

/// Empty string clears an optional setting.
fn optional<T: FromStr>(key: &str, value: &str) -> Result<Option<T>, RunError>
where
    T::Err: std::fmt::Display,
{
    if value.trim().is_empty() {
        Ok(None)
    } else {
        parse(key, value).map(Some)
    }
}

impl RunConfig {
    /// Applies one setting. Keys match the long flag names.
    pub fn set(&mut self, key: &str, value: &str) -> Result<(), RunError> {
        let key = key.trim().trim_start_matches("--");
        match key {
            "data" => self.data = optional(key, value)?,
            "topology" => {
                self.topology = value
                    .trim()
                    .parse()
                    .map_err(|e| RunError::Config(format!("invalid value {value:?} for topology: {e}")))?
            }
            "qubits" => self.qubits = parse(key, value)?,
            "layers" => self.layers = parse(key, value)?,
            "rate" => self.train.initial_rate = parse(key, value)?,
            "decay" => self.train.decay_factor = parse(key, value)?,
            "patience" => self.train.decay_patience = parse(key, value)?,
            "fd-step" => self.train.fd_step = parse(key, value)?,
            "epochs" => self.train.epochs = parse(key, value)?,
            "epsilon" => self.train.loss_clip_epsilon = parse(key, value)?,
            "seed" => self.train.seed = parse(key, value)?,
            "record-params" => self.train.record_params = parse_bool(key, value)?,
            "train-count" => {
                self.train_count = match value.trim() {
                    "" | "all" => None,
                    v => Some(parse(key, v)?),
                }
            }
            "shuffle" => self.shuffle = parse_bool(key, value)?,
            "init" => self.init = parse(key, value)?,
            "out" => self.out = parse(key, value)?,
            "thresholds" => {
                self.thresholds = value
                    .split([',', ';', ' '])
                    .filter(|s| !s.trim().is_empty())
                    .map(|s| parse::<f64>(key, s))
                    .collect::<Result<_, _>>()?
            }
            "params" => self.params = optional(key, value)?,
            "row" => self.row = optional(key, value)?,
            "image" => self.image = optional(key, value)?,
            "patch-row" => self.patch_row = optional(key, value)?,
            "patch-col" => self.patch_col = optional(key, value)?,
            other => return Err(RunError::Config(format!("unknown setting {other:?}"))),
        }
        Ok(())
    }

    /// Reads settings from a file of `key=value` or `key,value` lines
    /// (`#` comments and a `key,value` header are ignored).
    pub fn apply_file(&mut self, path: &Path) -> Result<(), RunError> {
        let text = std::fs::read_to_string(path).map_err(|source| RunError::Io { path: path.to_path_buf(), source })?;
        for (key, value) in parse_settings(&text)? {
            self.set(&key, &value)?;
        }
        Ok(())
    }

    pub fn architecture(&self) -> Result<Architecture, RunError> {
        Ok(Architecture::new(self.topology, self.qubits, self.layers)?)
    }

    /// All settings as `(key, value)` pairs, in a stable order. Feeding
    /// them back through [`set`](Self::set) reproduces `self` exactly.
    pub fn entries(&self) -> Vec<(&'static str, String)> {
        let path = |p: &Option<PathBuf>| p.as_ref().map(|p| p.display().to_string()).unwrap_or_default();
        let num = |n: Option<usize>| n.map(|n| n.to_string()).unwrap_or_default();
        let mut thresholds = String::new();
        for (i, t) in self.thresholds.iter().enumerate() {
            if i > 0 {
                thresholds.push(';');
            }
            let _ = write!(thresholds, "{}", fmt_f64(*t));
        }
        vec![
            ("data", path(&self.data)),
            ("topology", self.topology.name().to_string()),
            ("qubits", self.qubits.to_string()),
            ("layers", self.layers.to_string()),
            ("rate", fmt_f64(self.train.initial_rate)),
            ("decay", fmt_f64(self.train.decay_factor)),
            ("patience", self.train.decay_patience.to_string()),
            ("fd-step", fmt_f64(self.train.fd_step)),
            ("epochs", self.train.epochs.to_string()),
            ("epsilon", fmt_f64(self.train.loss_clip_epsilon)),
            ("seed", self.train.seed.to_string()),
            ("record-params", self.train.record_params.to_string()),
            ("train-count", self.train_count.map(|n| n.to_string()).unwrap_or_else(|| "all".into())),
            ("shuffle", self.shuffle.to_string()),
            ("init", self.init.name().to_string()),
            ("out", self.out.display().to_string()),
            ("thresholds", thresholds),
            ("params", path(&self.params)),
            ("row", num(self.row)),
            ("image", path(&self.image)),
            ("patch-row", num(self.patch_row)),
            ("patch-col", num(self.patch_col)),
        ]
    }
}

fn parse_settings(text: &str) -> Result<Vec<(String, String)>, RunError> {
    let mut out = Vec::new();
    for (n, raw) in text.lines().enumerate() {
        let line = raw.trim();
        if line.is_empty() || line.starts_with('#') || line == "key,value" {
            continue;
        }
        let eq = line.find('=');
        let comma = line.find(',');
        let (key, value) = match (eq, comma) {
            (Some(e), Some(c)) if e < c => (line[..e].to_string(), line[e + 1..].to_string()),
            (Some(e), None) => (line[..e].to_string(), line[e + 1..].to_string()),
            (_, Some(_)) => {
                let mut reader = csv::ReaderBuilder::new().has_headers(false).from_reader(line.as_bytes());
                let record = reader
                    .records()
                    .next()
                    .transpose()
                    .map_err(|e| RunError::Config(format!("config line {}: {e}", n + 1)))?
                    .ok_or_else(|| RunError::Config(format!("config line {}: empty", n + 1)))?;
                if record.len() != 2 {
                    return Err(RunError::Config(format!("config line {}: expected key,value", n + 1)));
                }
                (record[0].to_string(), record[1].to_string())
            }
            (None, None) => return Err(RunError::Config(format!("config line {}: expected key=value", n + 1))),
        };
        out.push((key.trim().to_string(), value.trim().to_string()));
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn file_and_flag_layering() {
        let mut cfg = RunConfig::default();
        for (k, v) in parse_settings("# comment\nrate=0.25\nlayers = 3\nthresholds,\"0.1,0.2\"\n").unwrap() {
            cfg.set(&k, &v).unwrap();
        }
        assert_eq!(cfg.train.initial_rate, 0.25);
        assert_eq!(cfg.layers, 3);
        assert_eq!(cfg.thresholds, vec![0.1, 0.2]);
        cfg.set("--rate", "0.5").unwrap();
        assert_eq!(cfg.train.initial_rate, 0.5);
    }

    #[test]
    fn entries_round_trip() {
        let mut cfg = RunConfig::default();
        cfg.set("train-count", "100").unwrap();
        cfg.set("fd-step", "0.013").unwrap();
        cfg.set("thresholds", "0.01,0.1,0.3").unwrap();
        cfg.set("data", "x/y.csv").unwrap();
        cfg.set("init", "uniform").unwrap();
        let mut again = RunConfig::default();
        for (k, v) in cfg.entries() {
            again.set(k, &v).unwrap();
        }
        assert_eq!(again, cfg);
    }

    #[test]
    fn rejects_unknown_and_invalid() {
        let mut cfg = RunConfig::default();
        assert!(cfg.set("bogus", "1").is_err());
        assert!(cfg.set("qubits", "ten").is_err());
        assert!(cfg.set("shuffle", "maybe").is_err());
        assert!(cfg.set("topology", "ring").is_err());
        assert!(parse_settings("just words").is_err());
    }
}
