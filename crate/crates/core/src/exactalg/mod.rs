//! Exact scalars, sparse polynomials, parsing, weights and the degreewise
//! linear algebra every other module builds on.

pub mod graded;
pub mod linalg;
pub mod milnor;
pub mod parse;
pub mod poly;
pub mod rational;
pub mod scalar;
pub mod snf;
pub mod weights;

pub use graded::{graded_component_rank, BasisLabel, GradedSolveProblem};
pub use linalg::{Matrix, SparseMatrix, SparseVec};
pub use milnor::{milnor_number, milnor_report, MilnorReport};
pub use parse::parse_poly;
pub use poly::{Monomial, Poly};
pub use rational::Rational;
pub use scalar::{Mode, Scalar};
pub use weights::{is_quasi_homogeneous, weighted_degree, WeightSystem};
