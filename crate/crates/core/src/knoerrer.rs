//! The complex (period 2) and real (period 8) Knörrer functors
//! `P ↦ P ⊗ X` and their checks.
//!
//! Over the gaussian rationals `X = Y = (u + iv, u - iv)`, a factorization of
//! `u^2 + v^2`. Over the rationals `X = X8 = Θ(M)` for the column module
//! `M` of `Mat16`, a factorization of `-u_1^2 - ... - u_8^2` (or of the
//! positive form when requested).

use serde::Serialize;

use crate::clifford::{
    abs_class, beh_theta, bott_pairing, column_module_x8_signed, mf_to_clifford_module, AbsClass, AbsGroup,
    DiagonalForm, GradedCliffordModule,
};
use crate::exactalg::{Matrix, Mode, Scalar, WeightSystem};
use crate::homotopy::{hom_homology_dims, HomologyTable, DEFAULT_WINDOW_CAP};
use crate::mfcore::{
    strip_trivial_summands, tensor, BasisLabels, MFMorphism, MatrixFactorization, PolyMatrix, SignedIso,
};
use crate::Error;

/// Which functor to apply.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum KnoerrerKind {
    /// `⊗ Y` over `u^2 + v^2`, gaussian scalars.
    Complex,
    /// `⊗ X8` over `-Σ u_i^2`, or `+Σ u_i^2` when `positive`.
    Real8 { positive: bool },
}

impl KnoerrerKind {
    pub fn mode(self) -> Mode {
        match self {
            KnoerrerKind::Complex => Mode::Gaussian,
            KnoerrerKind::Real8 { .. } => Mode::Rational,
        }
    }

    /// Ratio of output to input rank.
    pub fn multiplier(self) -> usize {
        match self {
            KnoerrerKind::Complex => 2,
            KnoerrerKind::Real8 { .. } => 16,
        }
    }

    fn base_names(self) -> Vec<String> {
        match self {
            KnoerrerKind::Complex => vec!["u".into(), "v".into()],
            KnoerrerKind::Real8 { .. } => (1..=8).map(|i| format!("u{i}")).collect(),
        }
    }

    /// The Clifford module whose factorization is `X`.
    pub fn module(self) -> GradedCliffordModule {
        match self {
            KnoerrerKind::Complex => complex_y_module(),
            KnoerrerKind::Real8 { positive } => column_module_x8_signed(positive),
        }
    }
}

/// The `1|1` module over `u^2 + v^2` with `e_1 ↦ 1`, `e_2 ↦ (i, -i)`.
pub fn complex_y_module() -> GradedCliffordModule {
    let i = Scalar::i();
    let one = Matrix::identity(1);
    let down = vec![one.clone(), Matrix::scalar(1, &i)];
    let up = vec![one, Matrix::scalar(1, &i.conj())];
    GradedCliffordModule::new(DiagonalForm::positive_definite(Mode::Gaussian, 2), 1, 1, down, up).expect("valid module")
}

/// Each name, with underscores appended until it is not in `taken`.
fn fresh_names(base: Vec<String>, taken: &[String]) -> Vec<String> {
    base.into_iter()
        .map(|mut v| {
            while taken.contains(&v) {
                v.push('_');
            }
            v
        })
        .collect()
}

/// The factorization `X` in variables fresh for `p`. When `p` is graded of
/// even degree `d` the new variables get weight `d/2`; otherwise `X` keeps
/// weights 1 and degree 2.
pub fn companion(p: &MatrixFactorization, kind: KnoerrerKind) -> Result<MatrixFactorization, Error> {
    if p.mode != kind.mode() {
        return Err(Error::ModeMismatch(match kind {
            KnoerrerKind::Complex => "the complex functor needs gaussian scalars".into(),
            KnoerrerKind::Real8 { .. } => "the real functor needs rational scalars".into(),
        }));
    }
    let vars = fresh_names(kind.base_names(), &p.vars);
    let x = beh_theta(&kind.module(), &vars)?;
    match &p.grading {
        Some(g) if g.weights.degree % 2 == 0 && g.weights.degree > 0 => {
            let d = g.weights.degree;
            let w = WeightSystem::new(vec![d / 2; vars.len()], d)?;
            x.with_inferred_grading(&w)
                .ok_or_else(|| Error::Internal("linear factorization failed to regrade".into()))
        }
        _ => Ok(x),
    }
}

/// Summary of one functor application.
#[derive(Debug, Clone, Serialize)]
pub struct KnoerrerReport {
    pub kind: KnoerrerKind,
    pub added_vars: Vec<String>,
    pub input_rank: (usize, usize),
    pub output_rank: (usize, usize),
    pub multiplier: usize,
    pub valid: bool,
    pub input_graded: bool,
    pub output_graded: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub note: Option<String>,
}

/// `P ⊗ X` together with its report.
pub fn knorrer(p: &MatrixFactorization, kind: KnoerrerKind) -> Result<(MatrixFactorization, KnoerrerReport), Error> {
    let x = companion(p, kind)?;
    let out = tensor(p, &x)?;
    let (rin, rout) = (p.rank1() + p.rank0(), out.rank1() + out.rank0());
    if rout != kind.multiplier() * rin {
        return Err(Error::Internal(format!(
            "total rank {rout} is not {} times {rin}",
            kind.multiplier()
        )));
    }
    let note = match &p.grading {
        Some(g) if !out.is_graded() => Some(format!(
            "input degree {} is odd, output left ungraded",
            g.weights.degree
        )),
        _ => None,
    };
    let report = KnoerrerReport {
        kind,
        added_vars: x.vars.clone(),
        input_rank: (p.rank1(), p.rank0()),
        output_rank: (out.rank1(), out.rank0()),
        multiplier: kind.multiplier(),
        valid: out.validate().valid,
        input_graded: p.is_graded(),
        output_graded: out.is_graded(),
        note,
    };
    Ok((out, report))
}

/// `P ⊗ Y` over the gaussian rationals.
pub fn knorrer_complex(p: &MatrixFactorization) -> Result<MatrixFactorization, Error> {
    Ok(knorrer(p, KnoerrerKind::Complex)?.0)
}

/// `P ⊗ X8` over the rationals; `positive` selects `+Σ u_i^2`.
pub fn knorrer_real8(p: &MatrixFactorization, positive: bool) -> Result<MatrixFactorization, Error> {
    Ok(knorrer(p, KnoerrerKind::Real8 { positive })?.0)
}

/// `α ⊗ id_X` between the images of source and target.
pub fn knorrer_morphism(alpha: &MFMorphism, kind: KnoerrerKind) -> Result<MFMorphism, Error> {
    let x = companion(&alpha.source, kind)?;
    let source = tensor(&alpha.source, &x)?;
    let target = tensor(&alpha.target, &x)?;
    let (np, n) = (alpha.source.nvars(), source.nvars());
    let map: Vec<usize> = (0..np).collect();
    let (a1, a0) = (alpha.a1.embed(n, &map), alpha.a0.embed(n, &map));
    let id = |k| PolyMatrix::identity(k, n);
    let (s1, s0) = (x.rank1(), x.rank0());
    // odd half is (P1⊗X0) ⊕ (P0⊗X1), even half (P0⊗X0) ⊕ (P1⊗X1)
    let b1 = PolyMatrix::block_diag(&a1.kron(&id(s0)), &a0.kron(&id(s1)));
    let b0 = PolyMatrix::block_diag(&a0.kron(&id(s0)), &a1.kron(&id(s1)));
    MFMorphism::new(source, target, b1, b0)
}

/// `knorrer(cone α)` and `cone(α ⊗ id)` with the signed basis map between
/// them, or `None` if no such map exists.
pub fn knorrer_cone_iso(
    alpha: &MFMorphism,
    kind: KnoerrerKind,
) -> Result<(MatrixFactorization, MatrixFactorization, Option<SignedIso>), Error> {
    let x = companion(&alpha.source, kind)?;
    let left = tensor(&alpha.cone()?, &x)?;
    let right = knorrer_morphism(alpha, kind)?.cone()?;
    let ls = BasisLabels::leaf(0, &alpha.source);
    let lt = BasisLabels::leaf(1, &alpha.target);
    let lx = BasisLabels::leaf(2, &x);
    let l_left = BasisLabels::tensor(&BasisLabels::cone(&ls, &lt), &lx);
    let l_right = BasisLabels::cone(&BasisLabels::tensor(&ls, &lx), &BasisLabels::tensor(&lt, &lx));
    let iso = SignedIso::match_labels(&left, &l_left, &right, &l_right);
    Ok((left, right, iso))
}

/// Endomorphism homology of `X` compared with the expected `(1, 0)`.
#[derive(Debug, Clone, Serialize)]
pub struct EndomorphismReport {
    pub kind: KnoerrerKind,
    pub rank: (usize, usize),
    pub h0: usize,
    pub h1: usize,
    pub expected: (usize, usize),
    pub passed: bool,
    pub table: HomologyTable,
}

/// `H*(End(X))` for the factorization `X` of the given functor, scanning at
/// most `cap` internal degrees.
pub fn verify_companion_endomorphisms(kind: KnoerrerKind, cap: usize) -> Result<EndomorphismReport, Error> {
    let vars = fresh_names(kind.base_names(), &[]);
    let x = beh_theta(&kind.module(), &vars)?;
    let table = hom_homology_dims(&x, &x, cap)?;
    let (h0, h1) = table.totals();
    Ok(EndomorphismReport {
        kind,
        rank: (x.rank1(), x.rank0()),
        h0,
        h1,
        expected: (1, 0),
        passed: (h0, h1) == (1, 0),
        table,
    })
}

/// `H*(End(X8))`; passes when it is `(1, 0)`.
pub fn verify_x8_endomorphisms() -> Result<EndomorphismReport, Error> {
    verify_companion_endomorphisms(KnoerrerKind::Real8 { positive: false }, DEFAULT_WINDOW_CAP)
}

/// Outcome of the quadratic compatibility check.
#[derive(Debug, Clone, Serialize)]
pub struct PeriodicityReport {
    pub kind: KnoerrerKind,
    pub input_form: Vec<String>,
    pub class_in: AbsClass,
    pub companion_class: AbsClass,
    /// `None` when the image could not be read as a Clifford module.
    pub class_out: Option<AbsClass>,
    pub expected: AbsClass,
    pub stripped: bool,
    pub passed: bool,
    pub inconclusive: bool,
    pub note: String,
}

/// Checks that the functor on `Θ(M)` realizes multiplication by the class
/// of `X` on ABS classes, for `M` over a diagonal unit form.
pub fn verify_periodicity_diagram_quadratic(
    m: &GradedCliffordModule,
    kind: KnoerrerKind,
) -> Result<PeriodicityReport, Error> {
    if m.mode() != kind.mode() {
        return Err(Error::ModeMismatch(format!(
            "module over {} scalars for a {} functor",
            m.mode(),
            kind.mode()
        )));
    }
    m.form.check_unit()?;
    let class_in = abs_class(m)?;
    let xm = kind.module();
    let companion_class = abs_class(&xm)?;
    let ga = AbsGroup::compute(&m.form)?;
    let gb = AbsGroup::compute(&xm.form)?;
    let expected = bott_pairing(&ga, &class_in.multiplicities, &gb, &companion_class.multiplicities)?;

    let vars = crate::clifford::default_vars("x", m.n());
    let p = beh_theta(m, &vars)?;
    let (image, _) = knorrer(&p, kind)?;
    let big_form = m.form.direct_sum(&xm.form)?;
    let (module, stripped) = match mf_to_clifford_module(&image, &big_form) {
        Ok(module) => (Some(module), false),
        Err(_) => {
            let s = strip_trivial_summands(&image);
            (mf_to_clifford_module(&s, &big_form).ok(), true)
        }
    };
    let input_form = m.form.coeffs().iter().map(|a| a.to_string()).collect();
    let Some(module) = module else {
        return Ok(PeriodicityReport {
            kind,
            input_form,
            class_in,
            companion_class,
            class_out: None,
            expected,
            stripped,
            passed: false,
            inconclusive: true,
            note: "image is not linear after stripping trivial summands".into(),
        });
    };
    let class_out = abs_class(&module)?;
    let passed = class_out.group == expected.group && class_out.coords == expected.coords;
    Ok(PeriodicityReport {
        kind,
        input_form,
        class_in,
        companion_class,
        class_out: Some(class_out),
        expected,
        stripped,
        passed,
        inconclusive: false,
        note: "checked on quadratic inputs only".into(),
    })
}

#[cfg(test)]
mod tests;
