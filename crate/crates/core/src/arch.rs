//! Circuit templates and the forward pass.
//!
//! Both templates start with an encoding layer of `RY(angle_i)` on qubit `i`
//! and read out the last qubit.
//!
//! * [`Topology::PartialChain`]: per layer, one `RY(p)` on every qubit
//!   followed by a CX ladder `CX(0,1), CX(1,2), …, CX(n-2,n-1)`.
//!   `n_layers × n_qubits` parameters.
//! * [`Topology::FullyEntangled`]: per layer, for every ordered pair
//!   `(i, j)`, `i ≠ j`, in lexicographic order, `CX(i,j)` then
//!   `U3(p₁,p₂,p₃)` on `j`. `3·n·(n−1)` parameters per layer.

use alloc::vec::Vec;
use core::f64::consts::PI;
use core::fmt;
use core::str::FromStr;

use crate::error::{Error, Result};
use crate::qsim::{Gate, StateVector, MAX_QUBITS};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Topology {
    PartialChain,
    FullyEntangled,
}

impl Topology {
    pub fn name(self) -> &'static str {
        match self {
            Topology::PartialChain => "partial-chain",
            Topology::FullyEntangled => "fully-entangled",
        }
    }
}

impl fmt::Display for Topology {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct UnknownTopology;

impl fmt::Display for UnknownTopology {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("unknown topology (expected partial-chain or fully-entangled)")
    }
}

impl FromStr for Topology {
    type Err = UnknownTopology;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s.to_ascii_lowercase().replace('_', "-").as_str() {
            "partial-chain" | "partialchain" | "partial" | "chain" => Ok(Topology::PartialChain),
            "fully-entangled" | "fullyentangled" | "full" => Ok(Topology::FullyEntangled),
            _ => Err(UnknownTopology),
        }
    }
}

/// A circuit template: qubit count, layer count and entangling pattern.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Architecture {
    n_qubits: usize,
    n_layers: usize,
    topology: Topology,
}

impl Architecture {
    pub fn new(topology: Topology, n_qubits: usize, n_layers: usize) -> Result<Self> {
        if n_qubits == 0 || n_qubits > MAX_QUBITS {
            return Err(Error::RegisterSize(n_qubits));
        }
        if n_layers == 0 {
            return Err(Error::NoLayers);
        }
        Ok(Self { n_qubits, n_layers, topology })
    }

    pub fn partial_chain(n_qubits: usize, n_layers: usize) -> Result<Self> {
        Self::new(Topology::PartialChain, n_qubits, n_layers)
    }

    pub fn fully_entangled(n_qubits: usize, n_layers: usize) -> Result<Self> {
        Self::new(Topology::FullyEntangled, n_qubits, n_layers)
    }

    /// Ten-qubit, two-layer partial chain used for the tabular classifier.
    pub fn default_classifier() -> Self {
        Self { n_qubits: 10, n_layers: 2, topology: Topology::PartialChain }
    }

    pub fn n_qubits(&self) -> usize {
        self.n_qubits
    }

    pub fn n_layers(&self) -> usize {
        self.n_layers
    }

    pub fn topology(&self) -> Topology {
        self.topology
    }

    /// Index of the qubit whose `|1⟩` probability is the predicted label.
    pub fn readout_qubit(&self) -> usize {
        self.n_qubits - 1
    }

    pub fn params_per_layer(&self) -> usize {
        match self.topology {
            Topology::PartialChain => self.n_qubits,
            Topology::FullyEntangled => 3 * self.n_qubits * (self.n_qubits - 1),
        }
    }

    pub fn param_count(&self) -> usize {
        self.params_per_layer() * self.n_layers
    }
}

pub fn param_count(arch: &Architecture) -> usize {
    arch.param_count()
}

/// Trainable rotation angles, sized for one architecture.
#[derive(Debug, Clone, PartialEq)]
pub struct ParamVector(Vec<f64>);

impl ParamVector {
    pub fn new(arch: &Architecture, values: Vec<f64>) -> Result<Self> {
        let expected = arch.param_count();
        if values.len() != expected {
            return Err(Error::ParamLength { expected, found: values.len() });
        }
        Ok(Self(values))
    }

    pub fn zeros(arch: &Architecture) -> Self {
        Self(alloc::vec![0.0; arch.param_count()])
    }

    pub fn as_slice(&self) -> &[f64] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn into_inner(self) -> Vec<f64> {
        self.0
    }

    pub(crate) fn from_raw(values: Vec<f64>) -> Self {
        Self(values)
    }

    pub(crate) fn as_mut_slice(&mut self) -> &mut [f64] {
        &mut self.0
    }

    fn check(&self, arch: &Architecture) -> Result<()> {
        let expected = arch.param_count();
        if self.0.len() == expected {
            Ok(())
        } else {
            Err(Error::ParamLength { expected, found: self.0.len() })
        }
    }
}

/// Encoded input: one `RY` angle per qubit, each within `[0, π]`.
#[derive(Debug, Clone, PartialEq)]
pub struct InputAngles(Vec<f64>);

impl InputAngles {
    pub fn new(angles: Vec<f64>) -> Result<Self> {
        for (index, &value) in angles.iter().enumerate() {
            if !(0.0..=PI).contains(&value) {
                return Err(Error::AngleOutOfRange { index, value });
            }
        }
        Ok(Self(angles))
    }

    pub fn as_slice(&self) -> &[f64] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    fn check(&self, arch: &Architecture) -> Result<()> {
        if self.0.len() == arch.n_qubits {
            Ok(())
        } else {
            Err(Error::InputLength { expected: arch.n_qubits, found: self.0.len() })
        }
    }
}

/// Expands the template into a flat gate list. Parameters are consumed
/// layer-major, then in qubit (or ordered-pair) order.
pub fn build_circuit(arch: &Architecture, input: &InputAngles, params: &ParamVector) -> Result<Vec<Gate>> {
    input.check(arch)?;
    params.check(arch)?;
    let n = arch.n_qubits;
    let mut gates = Vec::with_capacity(gate_count(arch));
    gates.extend(input.as_slice().iter().enumerate().map(|(q, &a)| Gate::ry(q, a)));

    let mut p = params.as_slice().iter().copied();
    let mut next = move || p.next().expect("parameter length checked above");
    for _ in 0..arch.n_layers {
        match arch.topology {
            Topology::PartialChain => {
                for q in 0..n {
                    gates.push(Gate::ry(q, next()));
                }
                for q in 0..n.saturating_sub(1) {
                    gates.push(Gate::cx(q, q + 1));
                }
            }
            Topology::FullyEntangled => {
                for i in 0..n {
                    for j in (0..n).filter(|&j| j != i) {
                        gates.push(Gate::cx(i, j));
                        let (theta, phi, lambda) = (next(), next(), next());
                        gates.push(Gate::u3(j, theta, phi, lambda));
                    }
                }
            }
        }
    }
    Ok(gates)
}

/// Number of gates [`build_circuit`] emits for `arch`.
pub fn gate_count(arch: &Architecture) -> usize {
    let n = arch.n_qubits;
    let per_layer = match arch.topology {
        Topology::PartialChain => n + n.saturating_sub(1),
        Topology::FullyEntangled => 2 * n * (n - 1),
    };
    n + per_layer * arch.n_layers
}

/// Predicted label `l′`: probability of reading 1 on the last qubit.
pub fn forward(arch: &Architecture, input: &InputAngles, params: &ParamVector) -> Result<f64> {
    let circuit = build_circuit(arch, input, params)?;
    let mut state = StateVector::zero(arch.n_qubits)?;
    state.run(&circuit)?;
    state.prob_one(arch.readout_qubit())
}
