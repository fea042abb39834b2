//! Cross-entropy loss, central finite-difference gradients and online
//! normalized-gradient descent with a patience-based learning-rate decay.

use alloc::vec::Vec;

use libm::{log, sqrt};

use crate::arch::{forward, Architecture, InputAngles, ParamVector};
use crate::encode::Label;
use crate::error::{Error, Result};

/// Gradients with Euclidean norm at or below this are treated as zero.
pub const STATIONARY_NORM: f64 = 1e-12;

#[derive(Debug, Clone, PartialEq)]
pub struct TrainConfig {
    pub initial_rate: f64,
    /// Multiplier applied to the rate at each decay event, in `(0, 1)`.
    pub decay_factor: f64,
    /// Window length, in iterations, of the running-mean loss comparison.
    pub decay_patience: usize,
    /// Half-step of the central difference, radians.
    pub fd_step: f64,
    pub epochs: usize,
    pub loss_clip_epsilon: f64,
    /// Seed for the optional shuffled split and random initialisation.
    pub seed: u64,
    /// Keep a copy of the parameters after every iteration.
    pub record_params: bool,
}

impl Default for TrainConfig {
    fn default() -> Self {
        Self {
            initial_rate: 0.2,
            decay_factor: 0.5,
            decay_patience: 50,
            fd_step: 0.01,
            epochs: 2,
            loss_clip_epsilon: 1e-10,
            seed: 0,
            record_params: false,
        }
    }
}

impl TrainConfig {
    pub fn validate(&self) -> Result<()> {
        if !(self.initial_rate > 0.0 && self.initial_rate.is_finite()) {
            return Err(Error::Config("initial rate must be positive"));
        }
        if !(self.decay_factor > 0.0 && self.decay_factor < 1.0) {
            return Err(Error::Config("decay factor must lie in (0, 1)"));
        }
        if self.decay_patience == 0 {
            return Err(Error::Config("decay patience must be at least 1"));
        }
        if !(self.fd_step > 0.0 && self.fd_step.is_finite()) {
            return Err(Error::Config("finite-difference step must be positive"));
        }
        if self.epochs == 0 {
            return Err(Error::Config("epochs must be at least 1"));
        }
        if !(self.loss_clip_epsilon > 0.0 && self.loss_clip_epsilon < 0.5) {
            return Err(Error::Config("loss clip epsilon must lie in (0, 0.5)"));
        }
        Ok(())
    }
}

/// Binary cross-entropy `−(1−l)·ln(1−l′) − l·ln(l′)` with `l′` clipped
/// into `[ε, 1−ε]`.
pub fn loss(expected: Label, predicted: f64, epsilon: f64) -> f64 {
    let p = predicted.clamp(epsilon, 1.0 - epsilon);
    match expected {
        Label::Benign => -log(1.0 - p),
        Label::Malignant => -log(p),
    }
}

fn sample_loss(
    arch: &Architecture,
    input: &InputAngles,
    expected: Label,
    params: &ParamVector,
    epsilon: f64,
) -> Result<f64> {
    Ok(loss(expected, forward(arch, input, params)?, epsilon))
}

/// Central difference of the single-sample loss, one parameter at a time.
pub fn finite_diff_gradient(
    arch: &Architecture,
    input: &InputAngles,
    expected: Label,
    params: &ParamVector,
    fd_step: f64,
    epsilon: f64,
) -> Result<Vec<f64>> {
    let mut probe = params.clone();
    let mut grad = Vec::with_capacity(params.len());
    for k in 0..params.len() {
        let base = params.as_slice()[k];
        probe.as_mut_slice()[k] = base + fd_step;
        let plus = sample_loss(arch, input, expected, &probe, epsilon)?;
        probe.as_mut_slice()[k] = base - fd_step;
        let minus = sample_loss(arch, input, expected, &probe, epsilon)?;
        probe.as_mut_slice()[k] = base;
        grad.push((plus - minus) / (2.0 * fd_step));
    }
    Ok(grad)
}

pub fn norm(v: &[f64]) -> f64 {
    sqrt(v.iter().map(|x| x * x).sum())
}

/// Moves `params` a distance of exactly `rate` against `grad`. A
/// (numerically) zero gradient leaves the parameters unchanged.
pub fn step(params: &ParamVector, grad: &[f64], rate: f64) -> ParamVector {
    assert_eq!(params.len(), grad.len(), "gradient length must match parameters");
    let g = norm(grad);
    if g <= STATIONARY_NORM {
        return params.clone();
    }
    let scale = rate / g;
    let values = params.as_slice().iter().zip(grad).map(|(p, d)| p - scale * d).collect();
    ParamVector::from_raw(values)
}

/// Learning-rate schedule: after every `patience` iterations the mean loss
/// of the window just finished is compared with the previous window's mean;
/// if it is not lower, the rate is multiplied by `factor`.
#[derive(Debug, Clone)]
pub struct RateSchedule {
    rate: f64,
    factor: f64,
    patience: usize,
    window_sum: f64,
    window_len: usize,
    previous_mean: Option<f64>,
    decays: usize,
}

impl RateSchedule {
    pub fn new(initial_rate: f64, factor: f64, patience: usize) -> Self {
        Self {
            rate: initial_rate,
            factor,
            patience: patience.max(1),
            window_sum: 0.0,
            window_len: 0,
            previous_mean: None,
            decays: 0,
        }
    }

    pub fn rate(&self) -> f64 {
        self.rate
    }

    pub fn decays(&self) -> usize {
        self.decays
    }

    /// Feeds one recorded loss; returns true when the rate was just decayed.
    pub fn observe(&mut self, loss: f64) -> bool {
        self.window_sum += loss;
        self.window_len += 1;
        if self.window_len < self.patience {
            return false;
        }
        let mean = self.window_sum / self.window_len as f64;
        self.window_sum = 0.0;
        self.window_len = 0;
        let decayed = match self.previous_mean {
            Some(prev) if mean >= prev => {
                self.rate *= self.factor;
                self.decays += 1;
                true
            }
            _ => false,
        };
        self.previous_mean = Some(mean);
        decayed
    }
}

/// Per-iteration record of an online training run.
#[derive(Debug, Clone, Default, PartialEq)]
pub struct TrainMetrics {
    /// Loss of each sample, evaluated before its update.
    pub losses: Vec<f64>,
    /// Rate used for each update.
    pub rates: Vec<f64>,
    /// Position of the processed sample within the training set.
    pub sample_indices: Vec<usize>,
    /// Parameters after each update; empty unless `record_params` is set.
    pub param_snapshots: Vec<Vec<f64>>,
    pub decay_events: usize,
}

impl TrainMetrics {
    pub fn iterations(&self) -> usize {
        self.losses.len()
    }
}

/// Online gradient descent: one normalized step per sample, samples in
/// order, repeated for `config.epochs` passes.
pub fn train_online(
    arch: &Architecture,
    train_set: &[(InputAngles, Label)],
    config: &TrainConfig,
    init: ParamVector,
) -> Result<(ParamVector, TrainMetrics)> {
    config.validate()?;
    if train_set.is_empty() {
        return Err(Error::EmptyTrainingSet);
    }
    let mut params = ParamVector::new(arch, init.into_inner())?;
    let total = config.epochs * train_set.len();
    let mut metrics = TrainMetrics {
        losses: Vec::with_capacity(total),
        rates: Vec::with_capacity(total),
        sample_indices: Vec::with_capacity(total),
        param_snapshots: Vec::new(),
        decay_events: 0,
    };
    let mut schedule = RateSchedule::new(config.initial_rate, config.decay_factor, config.decay_patience);

    for _ in 0..config.epochs {
        for (index, (input, label)) in train_set.iter().enumerate() {
            let before = sample_loss(arch, input, *label, &params, config.loss_clip_epsilon)?;
            let grad = finite_diff_gradient(arch, input, *label, &params, config.fd_step, config.loss_clip_epsilon)?;
            let rate = schedule.rate();
            params = step(&params, &grad, rate);

            metrics.losses.push(before);
            metrics.rates.push(rate);
            metrics.sample_indices.push(index);
            if config.record_params {
                metrics.param_snapshots.push(params.as_slice().to_vec());
            }
            schedule.observe(before);
        }
    }
    metrics.decay_events = schedule.decays();
    Ok((params, metrics))
}

#[derive(Debug, Clone, PartialEq)]
pub struct SampleOutcome {
    pub label: Label,
    pub predicted: f64,
    pub loss: f64,
}

/// Final per-sample losses and summary statistics over a dataset.
#[derive(Debug, Clone, PartialEq)]
pub struct EvalMetrics {
    pub outcomes: Vec<SampleOutcome>,
    pub average_loss: f64,
    /// Fraction classified correctly with the 0.5 decision threshold.
    pub accuracy: f64,
    /// `(t, fraction of samples with loss > t)` for each requested threshold.
    pub exceedances: Vec<(f64, f64)>,
}

impl EvalMetrics {
    pub fn fraction_above(&self, threshold: f64) -> Option<f64> {
        self.exceedances.iter().find(|(t, _)| *t == threshold).map(|&(_, f)| f)
    }
}

pub fn evaluate(
    arch: &Architecture,
    params: &ParamVector,
    dataset: &[(InputAngles, Label)],
    thresholds: &[f64],
    epsilon: f64,
) -> Result<EvalMetrics> {
    if dataset.is_empty() {
        return Err(Error::EmptyDataset);
    }
    let outcomes = dataset
        .iter()
        .map(|(input, label)| {
            let predicted = forward(arch, input, params)?;
            Ok(SampleOutcome { label: *label, predicted, loss: loss(*label, predicted, epsilon) })
        })
        .collect::<Result<Vec<_>>>()?;
    let n = outcomes.len() as f64;
    let average_loss = outcomes.iter().map(|o| o.loss).sum::<f64>() / n;
    let correct = outcomes.iter().filter(|o| Label::from_probability(o.predicted) == o.label).count();
    let exceedances = thresholds
        .iter()
        .map(|&t| (t, outcomes.iter().filter(|o| o.loss > t).count() as f64 / n))
        .collect();
    Ok(EvalMetrics { outcomes, average_loss, accuracy: correct as f64 / n, exceedances })
}
