use libm::{cos, sin};
use num_complex::Complex64;

use crate::error::{Error, Result};

/// Row-major 2×2 complex matrix.
pub type Matrix2 = [[Complex64; 2]; 2];

/// The gate set used by every circuit template. Angles are in radians.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Gate {
    Ry { qubit: usize, theta: f64 },
    Rz { qubit: usize, phi: f64 },
    U3 { qubit: usize, theta: f64, phi: f64, lambda: f64 },
    Cx { control: usize, target: usize },
}

impl Gate {
    pub fn ry(qubit: usize, theta: f64) -> Self {
        Gate::Ry { qubit, theta }
    }

    pub fn rz(qubit: usize, phi: f64) -> Self {
        Gate::Rz { qubit, phi }
    }

    pub fn u3(qubit: usize, theta: f64, phi: f64, lambda: f64) -> Self {
        Gate::U3 { qubit, theta, phi, lambda }
    }

    pub fn cx(control: usize, target: usize) -> Self {
        Gate::Cx { control, target }
    }

    /// The qubit a single-qubit gate acts on, or `(control, Some(target))` for `Cx`.
    pub fn support(&self) -> (usize, Option<usize>) {
        match *self {
            Gate::Ry { qubit, .. } | Gate::Rz { qubit, .. } | Gate::U3 { qubit, .. } => {
                (qubit, None)
            }
            Gate::Cx { control, target } => (control, Some(target)),
        }
    }

    /// Checks the qubit indices against a register of `n_qubits`.
    pub fn validate(&self, n_qubits: usize) -> Result<()> {
        let check = |index: usize| {
            if index < n_qubits {
                Ok(())
            } else {
                Err(Error::QubitOutOfRange { index, n_qubits })
            }
        };
        match *self {
            Gate::Ry { qubit, .. } | Gate::Rz { qubit, .. } | Gate::U3 { qubit, .. } => {
                check(qubit)
            }
            Gate::Cx { control, target } => {
                check(control)?;
                check(target)?;
                if control == target {
                    Err(Error::ControlEqualsTarget(control))
                } else {
                    Ok(())
                }
            }
        }
    }

    /// The 2×2 unitary of a single-qubit gate, `None` for `Cx`.
    pub fn matrix(&self) -> Option<Matrix2> {
        match *self {
            Gate::Ry { theta, .. } => Some(u3_matrix(theta, 0.0, 0.0)),
            Gate::Rz { phi, .. } => {
                let one = Complex64::new(1.0, 0.0);
                let zero = Complex64::new(0.0, 0.0);
                Some([[one, zero], [zero, Complex64::cis(phi)]])
            }
            Gate::U3 { theta, phi, lambda, .. } => Some(u3_matrix(theta, phi, lambda)),
            Gate::Cx { .. } => None,
        }
    }
}

fn u3_matrix(theta: f64, phi: f64, lambda: f64) -> Matrix2 {
    let c = cos(theta / 2.0);
    let s = sin(theta / 2.0);
    [
        [Complex64::new(c, 0.0), -Complex64::cis(lambda) * s],
        [Complex64::cis(phi) * s, Complex64::cis(phi + lambda) * c],
    ]
}
