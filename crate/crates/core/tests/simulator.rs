use std::f64::consts::PI;

use proptest::prelude::*;
use qnn_core::qsim::{dense_oracle, Gate, StateVector};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn random_gate(rng: &mut impl Rng, n: usize) -> Gate {
    let angle = |rng: &mut dyn rand::RngCore| rng.gen_range(-2.0 * PI..2.0 * PI);
    let q = rng.gen_range(0..n);
    match if n > 1 { rng.gen_range(0..4) } else { rng.gen_range(0..3) } {
        0 => Gate::ry(q, angle(rng)),
        1 => Gate::rz(q, angle(rng)),
        2 => Gate::u3(q, angle(rng), angle(rng), angle(rng)),
        _ => {
            let mut t = rng.gen_range(0..n - 1);
            if t >= q {
                t += 1;
            }
            Gate::cx(q, t)
        }
    }
}

fn max_deviation(a: &StateVector, b: &StateVector) -> f64 {
    a.amplitudes().iter().zip(b.amplitudes()).map(|(x, y)| (x - y).norm()).fold(0.0, f64::max)
}

#[test]
fn pipeline_matches_dense_oracle_on_random_circuits() {
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed);
    let mut worst: f64 = 0.0;
    for i in 0..100 {
        let n = 1 + i % 3;
        let len = rng.gen_range(1..=30);
        let circuit: Vec<Gate> = (0..len).map(|_| random_gate(&mut rng, n)).collect();
        let mut fast = StateVector::zero(n).unwrap();
        fast.run(&circuit).unwrap();
        let slow = dense_oracle(n, &circuit).unwrap();
        worst = worst.max(max_deviation(&fast, &slow));
    }
    assert!(worst < 1e-10, "max deviation {worst:e}");
}

#[test]
fn three_qubit_twenty_gate_circuit_matches_oracle() {
    let mut rng = ChaCha8Rng::seed_from_u64(20);
    let circuit: Vec<Gate> = (0..20).map(|_| random_gate(&mut rng, 3)).collect();
    let mut fast = StateVector::zero(3).unwrap();
    fast.run(&circuit).unwrap();
    assert!(max_deviation(&fast, &dense_oracle(3, &circuit).unwrap()) < 1e-10);
}

#[test]
fn norm_survives_a_thousand_gates() {
    let mut rng = ChaCha8Rng::seed_from_u64(1000);
    let mut state = StateVector::zero(10).unwrap();
    for _ in 0..1000 {
        state.apply(&random_gate(&mut rng, 10)).unwrap();
        assert!((state.norm_sqr() - 1.0).abs() < 1e-12);
    }
}

proptest! {
    #[test]
    fn u3_without_phases_equals_ry(theta in -2.0 * PI..2.0 * PI, seed in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let prep: Vec<Gate> = (0..6).map(|_| random_gate(&mut rng, 2)).collect();
        let mut a = StateVector::zero(2).unwrap();
        a.run(&prep).unwrap();
        let mut b = a.clone();
        a.apply(&Gate::u3(1, theta, 0.0, 0.0)).unwrap();
        b.apply(&Gate::ry(1, theta)).unwrap();
        prop_assert!(max_deviation(&a, &b) < 1e-12);
    }

    #[test]
    fn cx_is_an_involution(seed in any::<u64>(), control in 0usize..3, offset in 1usize..3) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let target = (control + offset) % 3;
        let mut s = StateVector::zero(3).unwrap();
        s.run(&(0..10).map(|_| random_gate(&mut rng, 3)).collect::<Vec<_>>()).unwrap();
        let before = s.clone();
        s.apply(&Gate::cx(control, target)).unwrap();
        s.apply(&Gate::cx(control, target)).unwrap();
        prop_assert!(max_deviation(&s, &before) < 1e-12);
    }

    #[test]
    fn gates_do_not_disturb_other_qubits(
        angles in proptest::collection::vec(0.0..PI, 4),
        seed in any::<u64>(),
    ) {
        // product state, then one more gate; marginals outside its support are unchanged
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let mut s = StateVector::zero(4).unwrap();
        for (q, &a) in angles.iter().enumerate() {
            s.apply(&Gate::ry(q, a)).unwrap();
        }
        let gate = random_gate(&mut rng, 4);
        let (first, second) = gate.support();
        let before: Vec<f64> = (0..4).map(|q| s.prob_one(q).unwrap()).collect();
        s.apply(&gate).unwrap();
        for q in (0..4).filter(|&q| q != first && Some(q) != second) {
            prop_assert!((s.prob_one(q).unwrap() - before[q]).abs() < 1e-12);
        }
    }

    #[test]
    fn probabilities_stay_in_unit_interval(seed in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let mut s = StateVector::zero(3).unwrap();
        s.run(&(0..15).map(|_| random_gate(&mut rng, 3)).collect::<Vec<_>>()).unwrap();
        for q in 0..3 {
            let p = s.prob_one(q).unwrap();
            prop_assert!((0.0..=1.0).contains(&p));
        }
    }
}
