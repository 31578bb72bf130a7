use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("qubit index {index} out of range for a {n_qubits}-qubit state")]
    IndexOutOfRange { index: usize, n_qubits: usize },

    #[error("dimension mismatch: expected {expected}, got {actual}")]
    DimensionMismatch { expected: usize, actual: usize },

    #[error("state is not normalized: squared norm is {norm_sq}")]
    NotNormalized { norm_sq: f64 },

    #[error("not a density matrix: {0}")]
    InvalidDensityMatrix(String),

    #[error("correlator table is unphysical: minimum eigenvalue {min_eigenvalue:e}")]
    UnphysicalTable { min_eigenvalue: f64 },

    #[error(
        "reduced state at lambda = {lambda}, separation {separation} is not positive: \
         minimum eigenvalue {min_eigenvalue:e}"
    )]
    UnphysicalIsingState {
        lambda: f64,
        separation: usize,
        min_eigenvalue: f64,
    },

    #[error(
        "quadrature for g({l}) at lambda = {lambda} did not converge within {nodes} nodes \
         (estimate {estimate}, error {error:e})"
    )]
    QuadratureNonConvergence {
        lambda: f64,
        l: i64,
        nodes: usize,
        estimate: f64,
        error: f64,
    },

    #[error("eigensolver did not converge after {iterations} iterations (residual {residual:e})")]
    EigenNonConvergence { iterations: usize, residual: f64 },

    #[error("degenerate fit: {0}")]
    DegenerateFit(String),

    #[error("i/o failure: {0}")]
    Io(String),
}

impl Error {
    /// Short machine-readable tag for diagnostics.
    pub fn kind(&self) -> &'static str {
        match self {
            Error::InvalidArgument(_) => "invalid_argument",
            Error::IndexOutOfRange { .. } => "index_out_of_range",
            Error::DimensionMismatch { .. } => "dimension_mismatch",
            Error::NotNormalized { .. } => "not_normalized",
            Error::InvalidDensityMatrix(_) => "invalid_density_matrix",
            Error::UnphysicalTable { .. } => "unphysical_table",
            Error::UnphysicalIsingState { .. } => "unphysical_ising_state",
            Error::QuadratureNonConvergence { .. } => "quadrature_nonconvergence",
            Error::EigenNonConvergence { .. } => "eigensolver_nonconvergence",
            Error::DegenerateFit(_) => "degenerate_fit",
            Error::Io(_) => "io",
        }
    }

    /// True for failures of a numerical routine, as opposed to bad input.
    pub fn is_numerical(&self) -> bool {
        matches!(
            self,
            Error::UnphysicalTable { .. }
                | Error::UnphysicalIsingState { .. }
                | Error::QuadratureNonConvergence { .. }
                | Error::EigenNonConvergence { .. }
                | Error::DegenerateFit(_)
        )
    }
}

impl From<std::io::Error> for Error {
    fn from(e: std::io::Error) -> Self {
        Error::Io(e.to_string())
    }
}

impl From<csv::Error> for Error {
    fn from(e: csv::Error) -> Self {
        Error::Io(e.to_string())
    }
}
