//! Experiment orchestration behind the CLI subcommands.

use std::fs;
use std::path::{Path, PathBuf};

use qnn_core::{
    compute_bounds, encode, evaluate, extract_patch, forward, patch_to_angles, split, train_online, Architecture,
    EvalMetrics, FeatureBounds, InputAngles, Label, ParamVector, Sample, TrainMetrics, FEATURE_COUNT,
};
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::config::{InitMode, RunConfig};
use crate::dataset::load_wbc_csv;
use crate::error::RunError;
use crate::pgm::load_pgm;
use crate::report::{self, Table};

/// Qubits needed by a 4×4 image patch.
pub const PATCH_QUBITS: usize = 16;

/// Samples after the optional shuffle, with bounds taken from the
/// training prefix and every sample encoded against them.
#[derive(Debug, Clone)]
pub struct PreparedData {
    pub samples: Vec<Sample>,
    pub train_count: usize,
    pub bounds: FeatureBounds,
    pub encoded: Vec<(InputAngles, Label)>,
}

impl PreparedData {
    pub fn train_set(&self) -> &[(InputAngles, Label)] {
        &self.encoded[..self.train_count]
    }

    pub fn all(&self) -> &[(InputAngles, Label)] {
        &self.encoded
    }
}

fn require_path<'a>(p: &'a Option<PathBuf>, flag: &str) -> Result<&'a Path, RunError> {
    p.as_deref().ok_or_else(|| RunError::Config(format!("--{flag} is required")))
}

fn tabular_architecture(cfg: &RunConfig) -> Result<Architecture, RunError> {
    let arch = cfg.architecture()?;
    if arch.n_qubits() != FEATURE_COUNT {
        return Err(RunError::Config(format!(
            "tabular data has {FEATURE_COUNT} features but the architecture has {} qubits",
            arch.n_qubits()
        )));
    }
    Ok(arch)
}

pub fn prepare_data(cfg: &RunConfig) -> Result<PreparedData, RunError> {
    let mut samples = load_wbc_csv(require_path(&cfg.data, "data")?)?;
    if cfg.shuffle {
        samples.shuffle(&mut ChaCha8Rng::seed_from_u64(cfg.train.seed));
    }
    let train_count = cfg.train_count.unwrap_or(samples.len());
    let (train, _) = split(&samples, train_count)?;
    let bounds = compute_bounds(train)?;
    let encoded = samples.iter().map(|s| (encode(s, &bounds), s.label)).collect();
    Ok(PreparedData { samples, train_count, bounds, encoded })
}

pub fn initial_params(arch: &Architecture, cfg: &RunConfig) -> ParamVector {
    match cfg.init {
        InitMode::Zeros => ParamVector::zeros(arch),
        InitMode::Uniform => {
            let mut rng = ChaCha8Rng::seed_from_u64(cfg.train.seed);
            let values = (0..arch.param_count()).map(|_| rng.gen_range(-0.1..0.1)).collect();
            ParamVector::new(arch, values).expect("length taken from the architecture")
        }
    }
}

fn load_params(cfg: &RunConfig, arch: &Architecture) -> Result<ParamVector, RunError> {
    let path = require_path(&cfg.params, "params")?;
    let values = report::read_final_params(path)?;
    ParamVector::new(arch, values).map_err(|e| RunError::Parse { path: path.to_path_buf(), reason: e.to_string() })
}

fn create_out_dir(dir: &Path) -> Result<(), RunError> {
    fs::create_dir_all(dir).map_err(|source| RunError::Io { path: dir.to_path_buf(), source })
}

/// Everything a training run produced.
#[derive(Debug, Clone)]
pub struct TrainReport {
    pub params: ParamVector,
    pub metrics: TrainMetrics,
    pub train_eval: EvalMetrics,
    /// Present when the training prefix is a strict subset.
    pub whole_eval: Option<EvalMetrics>,
    pub out: PathBuf,
}

pub fn run_train(cfg: &RunConfig) -> Result<TrainReport, RunError> {
    let arch = tabular_architecture(cfg)?;
    cfg.train.validate()?;
    let data = prepare_data(cfg)?;
    let init = initial_params(&arch, cfg);
    let (params, metrics) = train_online(&arch, data.train_set(), &cfg.train, init)?;
    let eps = cfg.train.loss_clip_epsilon;
    let train_eval = evaluate(&arch, &params, data.train_set(), &cfg.thresholds, eps)?;
    let whole_eval = if data.train_count < data.encoded.len() {
        Some(evaluate(&arch, &params, data.all(), &cfg.thresholds, eps)?)
    } else {
        None
    };

    let mut summary = report::summary_table();
    report::push_summary(&mut summary, "train", &train_eval);
    summary.push(vec!["train".into(), "iterations".into(), metrics.iterations().to_string()]);
    summary.push(vec!["train".into(), "decay_events".into(), metrics.decay_events.to_string()]);
    let final_rate = metrics.rates.last().copied().unwrap_or(cfg.train.initial_rate);
    summary.push(vec!["train".into(), "final_rate".into(), report::fmt_f64(final_rate)]);
    if let Some(whole) = &whole_eval {
        report::push_summary(&mut summary, "whole", whole);
    }

    let mut files: Vec<(&str, Table)> = vec![
        (report::LOSS_FILE, report::loss_table(&metrics)),
        (report::FINAL_PARAMS_FILE, report::final_params_table(params.as_slice())),
        (report::SUMMARY_FILE, summary),
        (report::CONFIG_ECHO_FILE, report::config_table(&cfg.entries())),
    ];
    if cfg.train.record_params {
        files.push((report::PARAMS_FILE, report::params_table(&metrics, arch.param_count())));
    }
    create_out_dir(&cfg.out)?;
    for (name, table) in &files {
        table.write(&cfg.out.join(name))?;
    }
    Ok(TrainReport { params, metrics, train_eval, whole_eval, out: cfg.out.clone() })
}

/// Scores every sample in the dataset with saved parameters.
pub fn run_evaluate(cfg: &RunConfig) -> Result<EvalMetrics, RunError> {
    let arch = tabular_architecture(cfg)?;
    let params = load_params(cfg, &arch)?;
    let data = prepare_data(cfg)?;
    let eval = evaluate(&arch, &params, data.all(), &cfg.thresholds, cfg.train.loss_clip_epsilon)?;

    let mut summary = report::summary_table();
    report::push_summary(&mut summary, "whole", &eval);
    create_out_dir(&cfg.out)?;
    report::per_sample_table(&eval).write(&cfg.out.join(report::PER_SAMPLE_FILE))?;
    summary.write(&cfg.out.join(report::SUMMARY_FILE))?;
    report::config_table(&cfg.entries()).write(&cfg.out.join(report::CONFIG_ECHO_FILE))?;
    Ok(eval)
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Prediction {
    pub probability: f64,
    pub label: Label,
}

impl std::fmt::Display for Prediction {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "l_hat={:?} label={}", self.probability, self.label.bit())
    }
}

/// Predicts one dataset row (`--row`) or one image patch (`--image` with
/// `--patch-row`/`--patch-col`).
pub fn run_predict(cfg: &RunConfig) -> Result<Prediction, RunError> {
    let (arch, input) = if let Some(image) = &cfg.image {
        let arch = cfg.architecture()?;
        if arch.n_qubits() != PATCH_QUBITS {
            return Err(RunError::Config(format!(
                "a 4x4 patch needs {PATCH_QUBITS} qubits, the architecture has {}",
                arch.n_qubits()
            )));
        }
        let (row, col) = match (cfg.patch_row, cfg.patch_col) {
            (Some(r), Some(c)) => (r, c),
            _ => return Err(RunError::Config("--patch-row and --patch-col are required with --image".into())),
        };
        let img = load_pgm(image)?;
        (arch, patch_to_angles(&extract_patch(&img, row, col)?))
    } else {
        let arch = tabular_architecture(cfg)?;
        let row = cfg.row.ok_or_else(|| RunError::Config("predict needs --row or --image".into()))?;
        let data = prepare_data(cfg)?;
        let (input, _) = data.encoded.get(row).cloned().ok_or_else(|| {
            RunError::Config(format!("row {row} out of range (dataset has {} samples)", data.encoded.len()))
        })?;
        (arch, input)
    };
    let params = load_params(cfg, &arch)?;
    let probability = forward(&arch, &input, &params)?;
    Ok(Prediction { probability, label: Label::from_probability(probability) })
}

/// Turns `<out>/loss.csv` into `<out>/curves.csv` with a trailing mean over
/// `patience` iterations.
pub fn run_export_curves(cfg: &RunConfig) -> Result<PathBuf, RunError> {
    let records = report::read_loss_csv(&cfg.out.join(report::LOSS_FILE))?;
    let target = cfg.out.join(report::CURVES_FILE);
    report::curves_table(&records, cfg.train.decay_patience).write(&target)?;
    Ok(target)
}
