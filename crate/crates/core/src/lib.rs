//! Exact computations with matrix factorizations of polynomials.
//!
//! The crate is organized bottom-up:
//!
//! * [`exactalg`]: exact scalars (`Q` and `Q(i)`), sparse polynomials, the
//!   expression parser, weight systems, sparse exact linear algebra, Smith
//!   normal form and Milnor numbers.
//! * [`mfcore`]: the [`MatrixFactorization`] type and its constructions
//!   (shift, cone, sums, tensor products, Koszul stabilization, trivial
//!   summand stripping) plus the JSON format.
//! * [`homotopy`]: the Hom complex, degreewise homology and homotopy
//!   certificates.
//! * [`clifford`]: Clifford algebras of diagonal forms, graded modules, the
//!   module-to-factorization functor and Atiyah–Bott–Shapiro classes.
//! * [`knoerrer`]: the period-2 and period-8 Knörrer functors and their
//!   checks.
//! * [`theta`]: the Hochster theta pairing.

pub mod clifford;
pub mod exactalg;
pub mod homotopy;
pub mod knoerrer;
pub mod mfcore;
pub mod theta;

pub use exactalg::{Mode, Poly, Rational, Scalar, WeightSystem};
pub use mfcore::{MFMorphism, MatrixFactorization};

use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    #[error("syntax error at byte {pos}: {msg}")]
    Syntax { pos: usize, msg: String },
    #[error("unknown variable '{name}' at byte {pos}")]
    UnknownVariable { name: String, pos: usize },
    #[error("imaginary unit 'i' at byte {pos} is not allowed in rational mode")]
    ImaginaryInRationalMode { pos: usize },
    #[error("invalid variable name '{0}'")]
    InvalidVariableName(String),
    #[error("invalid weight system: {0}")]
    InvalidWeights(String),
    #[error("length mismatch: expected {expected}, got {got}")]
    LengthMismatch { expected: usize, got: usize },
    #[error("polynomial is not quasi-homogeneous for the given weights")]
    NotQuasiHomogeneous,
    #[error("singularity is not isolated (Jacobian quotient does not vanish past the socle)")]
    NonIsolated,
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),
    #[error("factorizations are over different polynomials or rings")]
    FMismatch,
    #[error("morphism is not a cycle: {0}")]
    NotACycle(String),
    #[error("variable collision: {0}")]
    VariableCollision(String),
    #[error("scalar mode mismatch: {0}")]
    ModeMismatch(String),
    #[error("decomposition f = Σ g_i x_i does not hold")]
    DecompositionFails,
    #[error("input is not graded: {0}")]
    Ungraded(String),
    #[error("graded window exceeded the cap of {cap} degrees")]
    WindowCapExceeded {
        cap: usize,
        partial: Box<homotopy::HomologyTable>,
    },
    #[error("coefficient {0} is not +1 or -1")]
    CoefficientNotUnit(String),
    #[error("Clifford relation violated: {0}")]
    RelationViolation(String),
    #[error("entry is not linear: {0}")]
    NonlinearEntry(String),
    #[error("polynomial is not the expected diagonal quadratic form")]
    FormMismatch,
    #[error("invalid input: {0}")]
    Invalid(String),
    #[error("json: {0}")]
    Json(#[from] serde_json::Error),
    #[error("internal consistency failure: {0}")]
    Internal(String),
}

impl Error {
    /// Stable snake_case name of the variant, for machine-readable reports.
    pub fn kind(&self) -> &'static str {
        match self {
            Error::Syntax { .. } => "syntax",
            Error::UnknownVariable { .. } => "unknown_variable",
            Error::ImaginaryInRationalMode { .. } => "imaginary_in_rational_mode",
            Error::InvalidVariableName(_) => "invalid_variable_name",
            Error::InvalidWeights(_) => "invalid_weights",
            Error::LengthMismatch { .. } => "length_mismatch",
            Error::NotQuasiHomogeneous => "not_quasi_homogeneous",
            Error::NonIsolated => "non_isolated",
            Error::DimensionMismatch(_) => "dimension_mismatch",
            Error::FMismatch => "f_mismatch",
            Error::NotACycle(_) => "not_a_cycle",
            Error::VariableCollision(_) => "variable_collision",
            Error::ModeMismatch(_) => "mode_mismatch",
            Error::DecompositionFails => "decomposition_fails",
            Error::Ungraded(_) => "ungraded",
            Error::WindowCapExceeded { .. } => "window_cap_exceeded",
            Error::CoefficientNotUnit(_) => "coefficient_not_unit",
            Error::RelationViolation(_) => "relation_violation",
            Error::NonlinearEntry(_) => "nonlinear_entry",
            Error::FormMismatch => "form_mismatch",
            Error::Invalid(_) => "invalid",
            Error::Json(_) => "json",
            Error::Internal(_) => "internal",
        }
    }

    /// `{"kind", "message"}` plus the partial table when a window cap was hit.
    pub fn to_json(&self) -> serde_json::Value {
        let mut v = serde_json::json!({ "kind": self.kind(), "message": self.to_string() });
        if let Error::WindowCapExceeded { partial, .. } = self {
            v["partial"] = serde_json::to_value(partial).expect("serializable");
        }
        v
    }
}
