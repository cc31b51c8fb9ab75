use thiserror::Error;

/// Which genericity gate rejected an input.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum GenericityFailure {
    RepeatedRoots,
    KernelDimension { root: usize, dimension: usize },
    SingularSubset { subset: Vec<usize> },
    RepeatedEigenvalues,
    ZeroEigenvalue,
    Other(String),
}

impl std::fmt::Display for GenericityFailure {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            GenericityFailure::RepeatedRoots => write!(f, "determinant polynomial has repeated roots"),
            GenericityFailure::KernelDimension { root, dimension } => {
                write!(f, "kernel at root #{root} has dimension {dimension}")
            }
            GenericityFailure::SingularSubset { subset } => {
                write!(f, "eigenvector matrix for subset {subset:?} is singular or ill-conditioned")
            }
            GenericityFailure::RepeatedEigenvalues => write!(f, "repeated eigenvalues"),
            GenericityFailure::ZeroEigenvalue => write!(f, "zero eigenvalue"),
            GenericityFailure::Other(s) => f.write_str(s),
        }
    }
}

#[derive(Debug, Error)]
pub enum Error {
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),
    #[error("matrix is singular")]
    SingularMatrix,
    #[error("zero polynomial")]
    ZeroPolynomial,
    #[error("S-pair budget of {budget} reductions exceeded")]
    BudgetExceeded { budget: usize },
    #[error("no convergence after {iterations} iterations (max residual {residual:.3e})")]
    NoConvergence { iterations: usize, residual: f64 },
    #[error("input is not generic: {0}")]
    NotGeneric(GenericityFailure),
    #[error("enumeration of {count} subsets exceeds the cap of {cap}")]
    CapExceeded { count: u128, cap: u128 },
    #[error("coefficient A of the Riccati equation is singular")]
    SingularA,
    #[error("pseudo-Hamiltonian matrix is defective or has repeated eigenvalues")]
    DefectiveM,
    #[error("incomplete solution set: expected {expected}, found {found}")]
    IncompleteSolutionSet { expected: usize, found: usize },
    #[error("commuting family is not generic: {0}")]
    NotGenericCommuting(String),
    #[error("word of degree {degree} in X exceeds the cap of {cap}")]
    DegreeCapExceeded { degree: usize, cap: usize },
    #[error("ideal is positive-dimensional (Hilbert dimension {dimension})")]
    PositiveDimensional { dimension: usize },
    #[error("parse error: {0}")]
    Parse(String),
    #[error("invalid input: {0}")]
    Invalid(String),
    #[error(transparent)]
    Io(#[from] std::io::Error),
    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
