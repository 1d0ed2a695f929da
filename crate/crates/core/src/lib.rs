//! General symmetric informationally complete (GSIC) measurements and the
//! entanglement tests built from them.
//!
//! The crate is organised bottom-up:
//!
//! - [`matrix`]: dense complex square matrices and the Hermitian eigenvalue routine.
//! - [`operator_basis`]: the normalised generalized Gell-Mann basis `{F_α}`.
//! - [`gsic`]: GSIC sets `P_α = I/d² + t[F − d(d+1)F_α]`, their feasible `t` range,
//!   validation, conjugation and the index of coincidence.
//! - [`states`]: density matrices, the standard two-qudit families, Weyl operators,
//!   tensor products and partial transposes.
//! - [`criteria`]: the bipartite and N-partite `J` functionals, their separable bounds,
//!   the correlation matrix and threshold scans.
//! - [`oracle`]: PPT ground truth and a deliberately naive recomputation of every `J`.
//!
//! Tolerances are collected in [`tol`].

#![forbid(unsafe_code)]

pub mod criteria;
pub mod gsic;
pub mod matrix;
pub mod operator_basis;
pub mod oracle;
pub mod states;
pub mod validation;

pub use criteria::{
    bipartite_bound, correlation_matrix, detect_bipartite, detect_multipartite,
    isotropic_threshold_scan, j_bipartite, j_multipartite, multipartite_bound, trace_t_bound,
    CorrelationMatrix, DetectionReport, Verdict,
};
pub use gsic::{
    conjugate_gsic, construct_gsic, index_of_coincidence, max_feasible_t, validate_gsic,
    ActiveCap, FeasibleT, GsicSet,
};
pub use matrix::ComplexMatrix;
pub use operator_basis::{build_gell_mann_basis, verify_basis, GellMannBasis};
pub use oracle::{brute_force_j, ppt_test, PptOutcome};
pub use states::{DensityMatrix, WeylOperator};
pub use validation::{Check, ValidationOutcome};

pub use num_complex::Complex64;

/// Numeric tolerances shared across modules.
pub mod tol {
    /// Default pass threshold for diagnostic validation.
    pub const VALIDATION: f64 = 1e-10;
    /// Target for exact constructions.
    pub const EXACT: f64 = 1e-12;
    /// Smallest eigenvalue still treated as positive semidefinite.
    pub const PSD: f64 = 1e-10;
    /// Required margin above a separable bound before a detection is reported.
    pub const DECISION: f64 = 1e-9;
    /// Largest imaginary residue of a real-valued trace that is silently dropped.
    pub const IMAG_RESIDUE: f64 = 1e-8;
    /// Agreement required between GSIC sets paired in the bipartite criterion.
    pub const SAME_A: f64 = 1e-12;
}

/// Errors produced by the library.
#[derive(Debug, thiserror::Error)]
pub enum Error {
    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("infeasible t = {t}: operator {index} has min eigenvalue {eigenvalue:e}")]
    InfeasibleParameter { t: f64, index: usize, eigenvalue: f64 },

    #[error("numeric integrity: {0}")]
    NumericIntegrity(String),

    #[error("json: {0}")]
    Json(#[from] serde_json::Error),
}

pub type Result<T> = std::result::Result<T, Error>;

pub(crate) fn invalid<T>(msg: impl Into<String>) -> Result<T> {
    Err(Error::InvalidArgument(msg.into()))
}
