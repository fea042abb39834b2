use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use qnn::{run_evaluate, run_export_curves, run_predict, run_train, Command, RunConfig, RunError};

#[derive(Parser)]
#[command(name = "qnn", version, about = "Train and evaluate a simulated quantum neural network classifier")]
struct Cli {
    #[command(subcommand)]
    command: Sub,
}

#[derive(Subcommand)]
enum Sub {
    /// Train on the dataset and write loss.csv, final_params, summary and config_echo
    Train(Flags),
    /// Score every sample with saved parameters (per_sample_loss.csv, summary)
    Evaluate(Flags),
    /// Predict one dataset row or one 4x4 image patch
    Predict(Flags),
    /// Derive curves.csv (trailing-mean loss curve) from a run's loss.csv
    ExportCurves(Flags),
}

#[derive(Args, Debug, Default)]
struct Flags {
    /// key=value settings file; command-line flags take precedence
    #[arg(long)]
    config: Option<PathBuf>,
    /// WDBC CSV file
    #[arg(long)]
    data: Option<PathBuf>,
    /// partial-chain or fully-entangled
    #[arg(long)]
    topology: Option<String>,
    #[arg(long)]
    qubits: Option<usize>,
    #[arg(long)]
    layers: Option<usize>,
    /// Initial learning rate (step length)
    #[arg(long)]
    rate: Option<f64>,
    /// Learning-rate decay factor
    #[arg(long)]
    decay: Option<f64>,
    /// Window length of the decay rule, in iterations
    #[arg(long)]
    patience: Option<usize>,
    /// Finite-difference half-step (radians)
    #[arg(long = "fd-step")]
    fd_step: Option<f64>,
    #[arg(long)]
    epochs: Option<usize>,
    /// Probability clip for the loss
    #[arg(long)]
    epsilon: Option<f64>,
    /// Training prefix size, or "all"
    #[arg(long = "train-count")]
    train_count: Option<String>,
    #[arg(long)]
    seed: Option<u64>,
    /// Shuffle samples with --seed before splitting
    #[arg(long)]
    shuffle: Option<bool>,
    /// zeros or uniform
    #[arg(long)]
    init: Option<String>,
    /// Output directory
    #[arg(long)]
    out: Option<PathBuf>,
    /// Comma-separated loss thresholds for the summary
    #[arg(long)]
    thresholds: Option<String>,
    /// final_params file to load
    #[arg(long)]
    params: Option<PathBuf>,
    /// Dataset row to predict (0-based)
    #[arg(long)]
    row: Option<usize>,
    /// PGM image for patch prediction
    #[arg(long)]
    image: Option<PathBuf>,
    #[arg(long = "patch-row")]
    patch_row: Option<usize>,
    #[arg(long = "patch-col")]
    patch_col: Option<usize>,
    /// Write params.csv with the parameters after every iteration
    #[arg(long = "record-params", num_args = 0..=1, default_missing_value = "true")]
    record_params: Option<bool>,
}

impl Flags {
    fn pairs(&self) -> Vec<(&'static str, String)> {
        fn put<T: ToString>(out: &mut Vec<(&'static str, String)>, key: &'static str, v: &Option<T>) {
            if let Some(v) = v {
                out.push((key, v.to_string()));
            }
        }
        let path = |p: &Option<PathBuf>| p.as_ref().map(|p| p.display().to_string());
        let mut out = Vec::new();
        put(&mut out, "data", &path(&self.data));
        put(&mut out, "topology", &self.topology);
        put(&mut out, "qubits", &self.qubits);
        put(&mut out, "layers", &self.layers);
        put(&mut out, "rate", &self.rate);
        put(&mut out, "decay", &self.decay);
        put(&mut out, "patience", &self.patience);
        put(&mut out, "fd-step", &self.fd_step);
        put(&mut out, "epochs", &self.epochs);
        put(&mut out, "epsilon", &self.epsilon);
        put(&mut out, "train-count", &self.train_count);
        put(&mut out, "seed", &self.seed);
        put(&mut out, "shuffle", &self.shuffle);
        put(&mut out, "init", &self.init);
        put(&mut out, "out", &path(&self.out));
        put(&mut out, "thresholds", &self.thresholds);
        put(&mut out, "params", &path(&self.params));
        put(&mut out, "row", &self.row);
        put(&mut out, "image", &path(&self.image));
        put(&mut out, "patch-row", &self.patch_row);
        put(&mut out, "patch-col", &self.patch_col);
        put(&mut out, "record-params", &self.record_params);
        out
    }

    fn resolve(&self) -> Result<RunConfig, RunError> {
        let mut cfg = RunConfig::default();
        if let Some(file) = &self.config {
            cfg.apply_file(file)?;
        }
        for (key, value) in self.pairs() {
            cfg.set(key, &value)?;
        }
        Ok(cfg)
    }
}

fn run(command: Command, flags: &Flags) -> Result<(), RunError> {
    let cfg = flags.resolve()?;
    match command {
        Command::Train => {
            let report = run_train(&cfg)?;
            let e = &report.train_eval;
            println!(
                "trained {} iterations: average_loss={:.6} accuracy={:.4} -> {}",
                report.metrics.iterations(),
                e.average_loss,
                e.accuracy,
                report.out.display()
            );
            if let Some(w) = &report.whole_eval {
                println!("whole set: average_loss={:.6} accuracy={:.4}", w.average_loss, w.accuracy);
            }
        }
        Command::Evaluate => {
            let e = run_evaluate(&cfg)?;
            println!("evaluated {} samples: average_loss={:.6} accuracy={:.4}", e.outcomes.len(), e.average_loss, e.accuracy);
        }
        Command::Predict => println!("{}", run_predict(&cfg)?),
        Command::ExportCurves => println!("wrote {}", run_export_curves(&cfg)?.display()),
    }
    Ok(())
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let (command, flags) = match &cli.command {
        Sub::Train(f) => (Command::Train, f),
        Sub::Evaluate(f) => (Command::Evaluate, f),
        Sub::Predict(f) => (Command::Predict, f),
        Sub::ExportCurves(f) => (Command::ExportCurves, f),
    };
    match run(command, flags) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::FAILURE
        }
    }
}
