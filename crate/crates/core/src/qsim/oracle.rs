//! Brute-force reference simulator: every gate is expanded to its full
//! 2^n × 2^n matrix by Kronecker products and multiplied into the state.

use alloc::vec;
use alloc::vec::Vec;

use num_complex::Complex64;

use super::gate::Gate;
use super::state::StateVector;
use crate::error::{Error, Result};

/// The dense oracle needs O(4^n) memory per gate.
pub const ORACLE_MAX_QUBITS: usize = 4;

/// Square complex matrix stored row-major.
#[derive(Debug, Clone)]
struct Dense {
    dim: usize,
    data: Vec<Complex64>,
}

impl Dense {
    fn identity(dim: usize) -> Self {
        let mut data = vec![Complex64::new(0.0, 0.0); dim * dim];
        for i in 0..dim {
            data[i * dim + i] = Complex64::new(1.0, 0.0);
        }
        Self { dim, data }
    }

    fn from_2x2(m: [[Complex64; 2]; 2]) -> Self {
        Self { dim: 2, data: vec![m[0][0], m[0][1], m[1][0], m[1][1]] }
    }

    fn kron(&self, rhs: &Dense) -> Dense {
        let dim = self.dim * rhs.dim;
        let mut data = vec![Complex64::new(0.0, 0.0); dim * dim];
        for i in 0..self.dim {
            for j in 0..self.dim {
                let a = self.data[i * self.dim + j];
                for k in 0..rhs.dim {
                    for l in 0..rhs.dim {
                        data[(i * rhs.dim + k) * dim + j * rhs.dim + l] = a * rhs.data[k * rhs.dim + l];
                    }
                }
            }
        }
        Dense { dim, data }
    }

    fn add(&self, rhs: &Dense) -> Dense {
        let data = self.data.iter().zip(&rhs.data).map(|(a, b)| a + b).collect();
        Dense { dim: self.dim, data }
    }

    fn mul_vec(&self, v: &[Complex64]) -> Vec<Complex64> {
        (0..self.dim)
            .map(|i| {
                self.data[i * self.dim..(i + 1) * self.dim]
                    .iter()
                    .zip(v)
                    .map(|(m, x)| m * x)
                    .sum()
            })
            .collect()
    }
}

/// Kronecker product over all qubits, highest index leftmost, with
/// `factor(q)` placed at qubit `q`.
fn expand(n_qubits: usize, factor: impl Fn(usize) -> Dense) -> Dense {
    (0..n_qubits)
        .rev()
        .map(factor)
        .reduce(|acc, m| acc.kron(&m))
        .expect("at least one qubit")
}

fn full_matrix(n_qubits: usize, gate: &Gate) -> Dense {
    let zero = Complex64::new(0.0, 0.0);
    let one = Complex64::new(1.0, 0.0);
    match *gate {
        Gate::Cx { control, target } => {
            let p0 = Dense::from_2x2([[one, zero], [zero, zero]]);
            let p1 = Dense::from_2x2([[zero, zero], [zero, one]]);
            let x = Dense::from_2x2([[zero, one], [one, zero]]);
            let idle = expand(n_qubits, |q| if q == control { p0.clone() } else { Dense::identity(2) });
            let flip = expand(n_qubits, |q| {
                if q == control {
                    p1.clone()
                } else if q == target {
                    x.clone()
                } else {
                    Dense::identity(2)
                }
            });
            idle.add(&flip)
        }
        _ => {
            let (qubit, _) = gate.support();
            let m = Dense::from_2x2(gate.matrix().expect("single-qubit gate"));
            expand(n_qubits, |q| if q == qubit { m.clone() } else { Dense::identity(2) })
        }
    }
}

/// Runs `gates` from `|0…0⟩` by dense matrix multiplication.
pub fn dense_oracle(n_qubits: usize, gates: &[Gate]) -> Result<StateVector> {
    if n_qubits > ORACLE_MAX_QUBITS {
        return Err(Error::OracleTooLarge(n_qubits));
    }
    let start = StateVector::zero(n_qubits)?;
    let mut amps = start.amplitudes().to_vec();
    for gate in gates {
        gate.validate(n_qubits)?;
        amps = full_matrix(n_qubits, gate).mul_vec(&amps);
    }
    StateVector::from_amplitudes(amps)
}

#[cfg(test)]
mod tests {
    use super::*;
    use core::f64::consts::PI;

    #[test]
    fn single_ry_pi() {
        let s = dense_oracle(1, &[Gate::ry(0, PI)]).unwrap();
        assert!(s.amplitudes()[0].norm() < 1e-15);
        assert!((s.amplitudes()[1].re - 1.0).abs() < 1e-15);
    }

    #[test]
    fn cx_after_flip_reaches_11() {
        let s = dense_oracle(2, &[Gate::ry(0, PI), Gate::cx(0, 1)]).unwrap();
        assert!((s.amplitudes()[0b11].re - 1.0).abs() < 1e-15);
        assert!(s.prob_one(1).unwrap() > 1.0 - 1e-15);
    }

    #[test]
    fn rejects_large_registers() {
        assert_eq!(dense_oracle(5, &[]).unwrap_err(), Error::OracleTooLarge(5));
    }

    #[test]
    fn kron_places_qubit_zero_rightmost() {
        // X on qubit 1 of 2 maps |00⟩ (index 0) to index 2
        let s = dense_oracle(2, &[Gate::u3(1, PI, 0.0, PI)]).unwrap();
        assert!((s.amplitudes()[2].norm() - 1.0).abs() < 1e-15);
    }
}
