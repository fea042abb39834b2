//! Acceptance checks. Prints one PASS/FAIL line per criterion and exits
//! nonzero if any failed. Every criterion is evaluated even after a failure.

use std::f64::consts::PI;
use std::fs;
use std::path::PathBuf;
use std::time::{Duration, Instant};

use qnn::{load_wbc_csv, run_train, RunConfig, TrainReport};
use qnn_core::qsim::{dense_oracle, Gate, StateVector};
use qnn_core::{compute_bounds, encode, finite_diff_gradient, Architecture, InputAngles, Label, ParamVector};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

const DATA: &str = concat!(env!("CARGO_MANIFEST_DIR"), "/data/wdbc.data");

struct Outcome {
    pass: bool,
    detail: String,
}

fn outcome(pass: bool, detail: String) -> Outcome {
    Outcome { pass, detail }
}

fn random_gate(rng: &mut ChaCha8Rng, n: usize) -> Gate {
    let q = rng.gen_range(0..n);
    let kinds = if n > 1 { 4 } else { 3 };
    let angle = |rng: &mut ChaCha8Rng| rng.gen_range(-2.0 * PI..2.0 * PI);
    match rng.gen_range(0..kinds) {
        0 => Gate::ry(q, angle(rng)),
        1 => Gate::rz(q, angle(rng)),
        2 => {
            let (t, p, l) = (angle(rng), angle(rng), angle(rng));
            Gate::u3(q, t, p, l)
        }
        _ => {
            let mut t = rng.gen_range(0..n - 1);
            if t >= q {
                t += 1;
            }
            Gate::cx(q, t)
        }
    }
}

fn oracle_equivalence() -> Outcome {
    let start = Instant::now();
    let mut rng = ChaCha8Rng::seed_from_u64(1);
    let mut worst: f64 = 0.0;
    for i in 0..100 {
        let n = 1 + i % 3;
        let len = rng.gen_range(1..=30);
        let circuit: Vec<Gate> = (0..len).map(|_| random_gate(&mut rng, n)).collect();
        let mut fast = StateVector::zero(n).unwrap();
        fast.run(&circuit).unwrap();
        let slow = dense_oracle(n, &circuit).unwrap();
        for (a, b) in fast.amplitudes().iter().zip(slow.amplitudes()) {
            worst = worst.max((a - b).norm());
        }
    }
    let elapsed = start.elapsed();
    outcome(
        worst < 1e-10 && elapsed < Duration::from_secs(5),
        format!("100 circuits, max deviation {worst:.3e} (< 1e-10), {:.3} s (< 5 s)", elapsed.as_secs_f64()),
    )
}

fn norm_preservation() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(2);
    let mut state = StateVector::zero(10).unwrap();
    for _ in 0..1000 {
        state.apply(&random_gate(&mut rng, 10)).unwrap();
    }
    let drift = (state.norm_sqr() - 1.0).abs();
    outcome(drift < 1e-12, format!("10 qubits, 1000 gates, |norm^2 - 1| = {drift:.3e} (< 1e-12)"))
}

fn gradient_check() -> Outcome {
    // One qubit: l' = sin^2(theta/2), so dL/dtheta = -cot(theta/2) for label 1.
    let arch = Architecture::partial_chain(1, 1).unwrap();
    let input = InputAngles::new(vec![0.0]).unwrap();
    let mut worst: f64 = 0.0;
    for theta in [0.3, 0.9, 1.5, 2.2, 2.9] {
        let params = ParamVector::new(&arch, vec![theta]).unwrap();
        let fd = finite_diff_gradient(&arch, &input, Label::Malignant, &params, 1e-4, 1e-10).unwrap()[0];
        worst = worst.max((fd - (-1.0 / (theta / 2.0).tan())).abs());
    }
    outcome(worst < 1e-6, format!("5 angles, fd step 1e-4, max error {worst:.3e} (< 1e-6)"))
}

fn parameter_count() -> Outcome {
    let count = Architecture::partial_chain(5, 2).unwrap().param_count();
    outcome(count == 10, format!("partial chain, 5 qubits, 2 layers: {count} parameters (expected 10)"))
}

fn run(out: PathBuf, train_count: Option<usize>) -> (TrainReport, Duration) {
    let cfg = RunConfig { data: Some(DATA.into()), train_count, out, ..RunConfig::default() };
    let start = Instant::now();
    let report = run_train(&cfg).expect("training run");
    (report, start.elapsed())
}

fn mean(xs: &[f64]) -> f64 {
    xs.iter().sum::<f64>() / xs.len() as f64
}

fn main() {
    let tmp = tempfile::tempdir().unwrap();
    let mut results = vec![oracle_equivalence(), norm_preservation(), gradient_check(), parameter_count()];

    let (full, elapsed) = run(tmp.path().join("full"), None);
    let full_loss = full.train_eval.average_loss;
    let full_acc = full.train_eval.accuracy;
    results.push(outcome(
        full_loss <= 0.15 && full_acc >= 0.85 && elapsed < Duration::from_secs(600),
        format!(
            "{} samples, 2 epochs: mean loss {full_loss:.4} (<= 0.15), accuracy {full_acc:.4} (>= 0.85), {:.1} s (< 600 s)",
            full.train_eval.outcomes.len(),
            elapsed.as_secs_f64()
        ),
    ));

    let (subset, _) = run(tmp.path().join("subset"), Some(100));
    let whole = subset.whole_eval.as_ref().expect("subset run evaluates the whole set");
    results.push(outcome(
        whole.average_loss <= 2.0 * full_loss && whole.accuracy >= 0.80,
        format!(
            "trained on 100, whole-set loss {:.4} (<= 2 x {full_loss:.4} = {:.4}), accuracy {:.4} (>= 0.80)",
            whole.average_loss,
            2.0 * full_loss,
            whole.accuracy
        ),
    ));

    let losses = &full.metrics.losses;
    let tenth = losses.len() / 10;
    let (first, last) = (mean(&losses[..tenth]), mean(&losses[losses.len() - tenth..]));
    results.push(outcome(
        last < first,
        format!("mean loss first 10% {first:.4}, last 10% {last:.4} ({} iterations)", losses.len()),
    ));

    let rates = &full.metrics.rates;
    let monotone = rates.windows(2).all(|w| w[1] <= w[0]);
    let decays = full.metrics.decay_events;
    results.push(outcome(
        monotone && decays >= 1,
        format!("rate non-increasing: {monotone}, decay events {decays} (>= 1), final rate {:e}", rates.last().unwrap()),
    ));

    let (again, _) = run(tmp.path().join("again"), None);
    let same = ["loss.csv", "final_params"]
        .iter()
        .all(|f| fs::read(full.out.join(f)).unwrap() == fs::read(again.out.join(f)).unwrap());
    results.push(outcome(same, format!("repeat run, loss.csv and final_params byte-identical: {same}")));

    results.push(encoding_extremes());

    let mut failed = 0;
    for (i, r) in results.iter().enumerate() {
        println!("criterion {:>2}: {} - {}", i + 1, if r.pass { "PASS" } else { "FAIL" }, r.detail);
        failed += usize::from(!r.pass);
    }
    println!("{} of {} criteria passed", results.len() - failed, results.len());
    if failed > 0 {
        std::process::exit(1);
    }
}

fn encoding_extremes() -> Outcome {
    let samples = load_wbc_csv(DATA).unwrap();
    let bounds = compute_bounds(&samples).unwrap();
    let mut exact = true;
    for f in 0..bounds.mins.len() {
        for s in &samples {
            let a = encode(s, &bounds).as_slice()[f];
            if s.features[f] == bounds.mins[f] {
                exact &= a == 0.0;
            }
            if s.features[f] == bounds.maxs[f] {
                exact &= a == PI;
            }
        }
    }
    let mut mid = samples[0].clone();
    for f in 0..mid.features.len() {
        mid.features[f] = (bounds.mins[f] + bounds.maxs[f]) / 2.0;
    }
    let angles = encode(&mid, &bounds);
    let mut worst: f64 = 0.0;
    for &a in angles.as_slice() {
        let mut state = StateVector::zero(1).unwrap();
        state.apply(&Gate::ry(0, a)).unwrap();
        worst = worst.max((state.prob_one(0).unwrap() - 0.5).abs());
    }
    outcome(
        exact && worst <= 1e-12,
        format!("min -> 0 and max -> pi exactly: {exact}, midpoint |P(1) - 0.5| max {worst:.3e} (<= 1e-12)"),
    )
}
