//! Exact simulation and online training of small variational quantum
//! classifiers.
//!
//! The crate is `no_std` (it needs `alloc`) and does no IO. It covers the
//! statevector simulator ([`qsim`]), the circuit templates and forward pass
//! ([`arch`]), min-max angle encoding and image patches ([`encode`]), and the
//! loss, gradient and optimizer ([`train`]).

#![no_std]

extern crate alloc;
#[cfg(feature = "std")]
extern crate std;

pub mod arch;
pub mod encode;
mod error;
pub mod qsim;
pub mod train;

pub use arch::{build_circuit, forward, param_count, Architecture, InputAngles, ParamVector, Topology};
pub use encode::{
    compute_bounds, encode, extract_patch, patch_to_angles, split, FeatureBounds, GrayImage, GrayPatch, Label,
    Sample, FEATURE_COUNT,
};
pub use error::{Error, Result};
pub use qsim::{apply_gate, dense_oracle, new_zero_state, Gate, StateVector};
pub use train::{evaluate, finite_diff_gradient, loss, step, train_online, EvalMetrics, TrainConfig, TrainMetrics};
