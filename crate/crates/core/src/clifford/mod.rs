//! Clifford algebras of diagonal forms `q = Σ a_i x_i^2` with the convention
//! `v^2 = q(v)`, their graded modules, the functor sending a module to the
//! factorization `(Σ x_i ρ_i, Σ x_i ρ_i)` of `q`, and Atiyah–Bott–Shapiro
//! classes.

mod abs;
mod algebra;
mod module;
#[cfg(test)]
mod tests;

pub use abs::{abs_class, bott_pairing, ungraded_irreducible_dims, AbsClass, AbsGroup};
pub use algebra::{
    classify, clifford_multiply, AlgebraType, CliffordElement, DiagonalForm, DivisionAlgebra, MAX_GENERATORS,
};
pub use module::{
    beh_theta, column_module_x8, column_module_x8_signed, default_vars, graded_tensor, mf_to_clifford_module,
    x8_generators, x8_generators_signed, GradedCliffordModule, ModuleJson, RhoJson,
};
