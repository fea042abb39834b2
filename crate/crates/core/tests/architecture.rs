use std::f64::consts::PI;

use proptest::prelude::*;
use qnn_core::{build_circuit, forward, Architecture, InputAngles, ParamVector, Topology};

fn arch_strategy() -> impl Strategy<Value = Architecture> {
    (prop_oneof![Just(Topology::PartialChain), Just(Topology::FullyEntangled)], 1usize..=5, 1usize..=2)
        .prop_map(|(t, n, l)| Architecture::new(t, n, l).unwrap())
}

fn inputs_for(arch: Architecture) -> impl Strategy<Value = (Architecture, InputAngles, ParamVector)> {
    let n = arch.n_qubits();
    let p = arch.param_count();
    (proptest::collection::vec(0.0..=PI, n), proptest::collection::vec(-PI..PI, p)).prop_map(move |(a, v)| {
        (arch, InputAngles::new(a).unwrap(), ParamVector::new(&arch, v).unwrap())
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn forward_is_a_probability((arch, input, params) in arch_strategy().prop_flat_map(inputs_for)) {
        let p = forward(&arch, &input, &params).unwrap();
        prop_assert!((0.0..=1.0).contains(&p));
    }

    #[test]
    fn builds_are_bit_identical((arch, input, params) in arch_strategy().prop_flat_map(inputs_for)) {
        let a = build_circuit(&arch, &input, &params).unwrap();
        let b = build_circuit(&arch, &input, &params).unwrap();
        prop_assert_eq!(a, b);
    }

    #[test]
    fn forward_is_continuous_in_each_parameter(
        (arch, input, params) in arch_strategy().prop_flat_map(inputs_for)
    ) {
        let base = forward(&arch, &input, &params).unwrap();
        for k in 0..params.len() {
            let mut v = params.as_slice().to_vec();
            v[k] += 1e-5;
            let nudged = ParamVector::new(&arch, v).unwrap();
            prop_assert!((forward(&arch, &input, &nudged).unwrap() - base).abs() < 1e-3);
        }
    }
}

#[test]
fn zero_circuit_predicts_zero_for_every_shape() {
    for topology in [Topology::PartialChain, Topology::FullyEntangled] {
        for n in 1..=6 {
            for layers in 1..=3 {
                let arch = Architecture::new(topology, n, layers).unwrap();
                let input = InputAngles::new(vec![0.0; n]).unwrap();
                assert_eq!(forward(&arch, &input, &ParamVector::zeros(&arch)).unwrap(), 0.0, "{arch:?}");
            }
        }
    }
    let arch = Architecture::partial_chain(16, 1).unwrap();
    let input = InputAngles::new(vec![0.0; 16]).unwrap();
    assert_eq!(forward(&arch, &input, &ParamVector::zeros(&arch)).unwrap(), 0.0);
}

#[test]
fn parameter_scaling_shapes() {
    for layers in 1..=4 {
        let per_qubit: Vec<usize> = (1..=12)
            .map(|n| Architecture::partial_chain(n, layers).unwrap().param_count() / n)
            .collect();
        assert!(per_qubit.iter().all(|&c| c == layers));
    }
    let ratio = |n: usize| Architecture::fully_entangled(n, 1).unwrap().param_count() as f64 / (n * n) as f64;
    let ratios: Vec<f64> = [2, 4, 8, 16, 20].iter().map(|&n| ratio(n)).collect();
    assert!(ratios.windows(2).all(|w| w[1] > w[0]));
    assert!((3.0 - ratio(20)).abs() < 0.16);
}
