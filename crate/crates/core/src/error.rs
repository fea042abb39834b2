use thiserror::Error;

/// Errors raised by the simulator, circuit templates, encoders and trainer.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("register size {0} outside supported range 1..={max}", max = crate::qsim::MAX_QUBITS)]
    RegisterSize(usize),
    #[error("qubit index {index} out of range for a {n_qubits}-qubit register")]
    QubitOutOfRange { index: usize, n_qubits: usize },
    #[error("CX control and target must differ (both {0})")]
    ControlEqualsTarget(usize),
    #[error("dense oracle limited to {max} qubits, got {0}", max = crate::qsim::ORACLE_MAX_QUBITS)]
    OracleTooLarge(usize),
    #[error("architecture needs at least one layer")]
    NoLayers,
    #[error("expected {expected} parameters, found {found}")]
    ParamLength { expected: usize, found: usize },
    #[error("expected {expected} input angles, found {found}")]
    InputLength { expected: usize, found: usize },
    #[error("input angle {value} at position {index} outside [0, pi]")]
    AngleOutOfRange { index: usize, value: f64 },
    #[error("pixel value {value} at ({row}, {col}) outside [0, 1]")]
    PixelOutOfRange { row: usize, col: usize, value: f64 },
    #[error("4x4 window at ({row}, {col}) does not fit a {height}x{width} image")]
    PatchOutOfBounds { row: usize, col: usize, height: usize, width: usize },
    #[error("image buffer holds {found} pixels, expected {expected}")]
    ImageShape { expected: usize, found: usize },
    #[error("cannot compute bounds of an empty sample set")]
    EmptySamples,
    #[error("train count {train_count} outside 1..={available}")]
    SplitRange { train_count: usize, available: usize },
    #[error("training set is empty")]
    EmptyTrainingSet,
    #[error("evaluation set is empty")]
    EmptyDataset,
    #[error("invalid training configuration: {0}")]
    Config(&'static str),
}

pub type Result<T, E = Error> = core::result::Result<T, E>;
