use alloc::vec;
use alloc::vec::Vec;

use num_complex::Complex64;
use rand_core::RngCore;

use super::gate::{Gate, Matrix2};
use crate::error::{Error, Result};

/// Largest register the simulator will allocate (2^20 amplitudes).
pub const MAX_QUBITS: usize = 20;

/// The 2^n complex amplitudes of an n-qubit register.
#[derive(Debug, Clone, PartialEq)]
pub struct StateVector {
    n_qubits: usize,
    amplitudes: Vec<Complex64>,
}

/// `|0…0⟩` on `n_qubits` qubits.
pub fn new_zero_state(n_qubits: usize) -> Result<StateVector> {
    StateVector::zero(n_qubits)
}

/// Applies `gate` to `state` and returns the transformed register.
pub fn apply_gate(mut state: StateVector, gate: &Gate) -> Result<StateVector> {
    state.apply(gate)?;
    Ok(state)
}

impl StateVector {
    pub fn zero(n_qubits: usize) -> Result<Self> {
        if n_qubits == 0 || n_qubits > MAX_QUBITS {
            return Err(Error::RegisterSize(n_qubits));
        }
        let mut amplitudes = vec![Complex64::new(0.0, 0.0); 1 << n_qubits];
        amplitudes[0] = Complex64::new(1.0, 0.0);
        Ok(Self { n_qubits, amplitudes })
    }

    /// Wraps raw amplitudes. The length must be a power of two within the
    /// register cap; normalization is the caller's responsibility.
    pub fn from_amplitudes(amplitudes: Vec<Complex64>) -> Result<Self> {
        let len = amplitudes.len();
        if !len.is_power_of_two() || len < 2 {
            return Err(Error::RegisterSize(0));
        }
        let n_qubits = len.trailing_zeros() as usize;
        if n_qubits > MAX_QUBITS {
            return Err(Error::RegisterSize(n_qubits));
        }
        Ok(Self { n_qubits, amplitudes })
    }

    pub fn n_qubits(&self) -> usize {
        self.n_qubits
    }

    pub fn amplitudes(&self) -> &[Complex64] {
        &self.amplitudes
    }

    pub fn norm_sqr(&self) -> f64 {
        self.amplitudes.iter().map(Complex64::norm_sqr).sum()
    }

    /// Applies `gate` in place.
    pub fn apply(&mut self, gate: &Gate) -> Result<()> {
        gate.validate(self.n_qubits)?;
        match (*gate, gate.matrix()) {
            (Gate::Cx { control, target }, _) => self.apply_cx(control, target),
            (_, Some(m)) => self.apply_single(gate.support().0, &m),
            (_, None) => unreachable!("single-qubit gates always carry a matrix"),
        }
        Ok(())
    }

    /// Applies every gate of `circuit` in order.
    pub fn run(&mut self, circuit: &[Gate]) -> Result<()> {
        circuit.iter().try_for_each(|g| self.apply(g))
    }

    fn apply_single(&mut self, qubit: usize, m: &Matrix2) {
        let stride = 1usize << qubit;
        // Walk blocks of 2*stride; within each, pair index i (bit clear) with i + stride.
        for block in self.amplitudes.chunks_exact_mut(stride << 1) {
            let (low, high) = block.split_at_mut(stride);
            for (a0, a1) in low.iter_mut().zip(high.iter_mut()) {
                let (x, y) = (*a0, *a1);
                *a0 = m[0][0] * x + m[0][1] * y;
                *a1 = m[1][0] * x + m[1][1] * y;
            }
        }
    }

    fn apply_cx(&mut self, control: usize, target: usize) {
        let cmask = 1usize << control;
        let tmask = 1usize << target;
        for i in 0..self.amplitudes.len() {
            if i & cmask != 0 && i & tmask == 0 {
                self.amplitudes.swap(i, i | tmask);
            }
        }
    }

    /// Exact Born probability of reading 1 on `qubit`.
    pub fn prob_one(&self, qubit: usize) -> Result<f64> {
        if qubit >= self.n_qubits {
            return Err(Error::QubitOutOfRange { index: qubit, n_qubits: self.n_qubits });
        }
        let mask = 1usize << qubit;
        let p: f64 = self
            .amplitudes
            .iter()
            .enumerate()
            .filter(|(i, _)| i & mask != 0)
            .map(|(_, a)| a.norm_sqr())
            .sum();
        Ok(p.clamp(0.0, 1.0))
    }

    /// Draws `shots` measurements of `qubit` and returns how many read 1.
    /// Demonstration only; training always uses [`prob_one`](Self::prob_one).
    pub fn sample_ones<R: RngCore>(&self, qubit: usize, shots: u64, rng: &mut R) -> Result<u64> {
        let p = self.prob_one(qubit)?;
        let mut ones = 0;
        for _ in 0..shots {
            // 53 random mantissa bits -> uniform in [0, 1)
            let u = (rng.next_u64() >> 11) as f64 * (1.0 / (1u64 << 53) as f64);
            if u < p {
                ones += 1;
            }
        }
        Ok(ones)
    }
}
