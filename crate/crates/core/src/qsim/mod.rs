//! Exact statevector simulation for small registers.
//!
//! Qubit 0 is the least-significant bit of the basis-state index. Gate
//! matrices follow the `U3(θ, φ, λ)` convention:
//!
//! ```text
//! U3 = [[cos θ/2,          -e^{iλ} sin θ/2     ],
//!       [e^{iφ} sin θ/2,   e^{i(φ+λ)} cos θ/2  ]]
//! ```
//!
//! with `RY(θ) = U3(θ, 0, 0)` and `RZ(φ) = diag(1, e^{iφ})`.

mod gate;
mod oracle;
mod state;

pub use gate::{Gate, Matrix2};
pub use oracle::{dense_oracle, ORACLE_MAX_QUBITS};
pub use state::{apply_gate, new_zero_state, StateVector, MAX_QUBITS};
