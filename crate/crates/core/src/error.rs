//! Error type shared by every module of the crate.

/// Crate-wide result alias.
pub type Result<T> = std::result::Result<T, Error>;

/// Everything that can go wrong while building matrices, sampling
/// ensembles, or evaluating entropies and limit laws.
#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum Error {
    #[error("matrix entry at ({row}, {col}) is not finite")]
    NonFiniteEntry { row: usize, col: usize },

    #[error("matrix is not Hermitian: max |A - A*| = {max_dev:.3e} exceeds {tol:.0e}")]
    NotHermitian { max_dev: f64, tol: f64 },

    #[error("matrix is not unitary: max |U*U - I| = {max_dev:.3e} exceeds {tol:.0e}")]
    NotUnitary { max_dev: f64, tol: f64 },

    #[error("matrix is not idempotent: max |P^2 - P| = {max_dev:.3e} exceeds {tol:.0e}")]
    NotIdempotent { max_dev: f64, tol: f64 },

    #[error("eigensolver did not converge")]
    EighDidNotConverge,

    #[error(
        "block rows {row_end} x cols {col_end} out of bounds for a {rows} x {cols} matrix"
    )]
    BlockOutOfBounds {
        row_end: usize,
        col_end: usize,
        rows: usize,
        cols: usize,
    },

    #[error("invalid parameter `{name}`: {reason}")]
    InvalidParameter { name: &'static str, reason: String },

    #[error(
        "eigenvalue {eigenvalue} lies within {tol:.0e} of the Fermi energy {fermi_energy}; \
         use the filling form of FermiSea to disambiguate"
    )]
    DegenerateFermiLevel {
        fermi_energy: f64,
        eigenvalue: f64,
        tol: f64,
    },

    #[error("block eigenvalue {value} outside [0, 1] beyond the {tol:.0e} contract tolerance")]
    SpectrumOutOfUnitRange { value: f64, tol: f64 },

    #[error("entropy bounds violated: lower {lower} <= S {entropy} <= upper {upper} fails")]
    BoundsViolated {
        entropy: f64,
        lower: f64,
        upper: f64,
    },

    #[error("quadrature did not converge: error estimate {error_estimate:.3e} above {tol:.0e}")]
    QuadratureDidNotConverge { error_estimate: f64, tol: f64 },

    #[error("degenerate random state: amplitudes have zero norm after one resample")]
    DegenerateState,
}

impl Error {
    pub(crate) fn invalid(name: &'static str, reason: impl Into<String>) -> Self {
        Error::InvalidParameter {
            name,
            reason: reason.into(),
        }
    }
}
