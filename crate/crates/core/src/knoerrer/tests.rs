use super::*;
use crate::clifford::{abs_class, column_module_x8, graded_tensor, AbsGroup};
use crate::exactalg::parse_poly;
use crate::mfcore::{trivial_mf, MfJson, TrivialFlavor};

fn mf(mode: Mode, vs: &[&str], f: &str, d1: &[&[&str]], d0: &[&[&str]]) -> MatrixFactorization {
    MfJson {
        mode,
        vars: vs.iter().map(|s| s.to_string()).collect(),
        f: f.into(),
        d1: d1.iter().map(|r| r.iter().map(|s| s.to_string()).collect()).collect(),
        d0: d0.iter().map(|r| r.iter().map(|s| s.to_string()).collect()).collect(),
        grading: None,
    }
    .to_mf()
    .unwrap()
}

fn graded(p: MatrixFactorization, w: WeightSystem) -> MatrixFactorization {
    p.with_inferred_grading(&w).unwrap()
}

fn circle() -> MatrixFactorization {
    graded(
        mf(Mode::Gaussian, &["x", "y"], "x^2+y^2", &[&["x+i*y"]], &[&["x-i*y"]]),
        WeightSystem::standard(2, 2),
    )
}

fn square() -> MatrixFactorization {
    graded(
        mf(Mode::Rational, &["x"], "x^2", &[&["x"]], &[&["x"]]),
        WeightSystem::standard(1, 2),
    )
}

#[test]
fn complex_functor_on_circle() {
    let (out, report) = knorrer(&circle(), KnoerrerKind::Complex).unwrap();
    assert_eq!(out.rank1(), 2);
    assert!(report.valid && report.output_graded);
    assert_eq!(report.multiplier, 2);
    let vars = out.vars.clone();
    assert_eq!(vars, ["x", "y", "u", "v"]);
    assert_eq!(out.f, parse_poly("x^2+y^2+u^2+v^2", &vars, Mode::Gaussian).unwrap());
}

#[test]
fn real_functor_on_square() {
    for positive in [false, true] {
        let (out, report) = knorrer(&square(), KnoerrerKind::Real8 { positive }).unwrap();
        assert_eq!(out.rank1(), 16);
        assert!(report.valid && report.output_graded);
        let sign = if positive { "+" } else { "-" };
        let f: String = std::iter::once("x^2".to_string())
            .chain((1..=8).map(|i| format!("{sign}u{i}^2")))
            .collect();
        assert_eq!(out.f, parse_poly(&f, &out.vars, Mode::Rational).unwrap());
    }
}

#[test]
fn odd_degree_input_gives_ungraded_output() {
    let p = graded(
        mf(Mode::Rational, &["x"], "x^3", &[&["x"]], &[&["x^2"]]),
        WeightSystem::standard(1, 3),
    );
    let (out, report) = knorrer(&p, KnoerrerKind::Real8 { positive: false }).unwrap();
    assert!(report.valid && !out.is_graded());
    assert!(report.note.is_some());
}

#[test]
fn fresh_variables_and_mode_errors() {
    let p = mf(Mode::Gaussian, &["u", "v_"], "u^2", &[&["u"]], &[&["u"]]);
    let (out, _) = knorrer(&p, KnoerrerKind::Complex).unwrap();
    assert_eq!(out.vars, ["u", "v_", "u_", "v"]);
    assert!(out.validate().valid);
    assert!(matches!(knorrer_complex(&square()), Err(Error::ModeMismatch(_))));
    assert!(matches!(knorrer_real8(&circle(), false), Err(Error::ModeMismatch(_))));
}

#[test]
fn trivial_input_stays_contractible() {
    let vars = vec!["x".to_string()];
    let f = parse_poly("x^2", &vars, Mode::Rational).unwrap();
    let t = trivial_mf(1, TrivialFlavor::FThenId, &f, &vars, Mode::Rational, None).unwrap();
    let out = knorrer_real8(&t, false).unwrap();
    assert_eq!(strip_trivial_summands(&out).rank1(), 0);
    let vars = vec!["x".to_string()];
    let f = parse_poly("x^2", &vars, Mode::Gaussian).unwrap();
    let t = trivial_mf(2, TrivialFlavor::IdThenF, &f, &vars, Mode::Gaussian, None).unwrap();
    assert_eq!(strip_trivial_summands(&knorrer_complex(&t).unwrap()).rank1(), 0);
}

fn endo(p: &MatrixFactorization, a: &str) -> MFMorphism {
    let n = p.nvars();
    let c = parse_poly(a, &p.vars, p.mode).unwrap();
    MFMorphism::new(
        p.clone(),
        p.clone(),
        PolyMatrix::scalar(p.rank1(), &c),
        PolyMatrix::scalar(p.rank0(), &c),
    )
    .inspect(|m| {
        assert_eq!(m.a1.nvars(), n);
    })
    .unwrap()
}

fn cusp_morphism() -> MFMorphism {
    // α: ([x],[x^2]) -> ([x^2],[x]) over x^3 with α1 = 1, α0 = x
    let vars = ["x"];
    let p = mf(Mode::Rational, &vars, "x^3", &[&["x"]], &[&["x^2"]]);
    let q = mf(Mode::Rational, &vars, "x^3", &[&["x^2"]], &[&["x"]]);
    let a1 = PolyMatrix::from_rows(1, vec![vec![parse_poly("1", &p.vars, Mode::Rational).unwrap()]]);
    let a0 = PolyMatrix::from_rows(1, vec![vec![parse_poly("x", &p.vars, Mode::Rational).unwrap()]]);
    MFMorphism::new(p, q, a1, a0).unwrap()
}

#[test]
fn functor_sends_cycles_to_cycles() {
    let cases = [
        (endo(&circle(), "x+i*y"), KnoerrerKind::Complex),
        (endo(&square(), "x"), KnoerrerKind::Real8 { positive: false }),
        (cusp_morphism(), KnoerrerKind::Real8 { positive: true }),
    ];
    for (alpha, kind) in cases {
        assert!(alpha.is_cycle());
        let image = knorrer_morphism(&alpha, kind).unwrap();
        assert!(image.is_cycle(), "{kind:?}");
    }
    // a non-cycle stays a non-cycle
    let p = square();
    let bad = MFMorphism::new(
        p.clone(),
        p.clone(),
        PolyMatrix::scalar(1, &parse_poly("x", &p.vars, Mode::Rational).unwrap()),
        PolyMatrix::scalar(1, &parse_poly("1", &p.vars, Mode::Rational).unwrap()),
    )
    .unwrap();
    assert!(!bad.is_cycle());
    assert!(!knorrer_morphism(&bad, KnoerrerKind::Real8 { positive: false })
        .unwrap()
        .is_cycle());
}

#[test]
fn functor_commutes_with_cones() {
    let cases = [
        (endo(&circle(), "x-i*y"), KnoerrerKind::Complex),
        (cusp_morphism(), KnoerrerKind::Real8 { positive: false }),
        (MFMorphism::identity(&square()), KnoerrerKind::Real8 { positive: false }),
    ];
    for (alpha, kind) in cases {
        let (left, right, iso) = knorrer_cone_iso(&alpha, kind).unwrap();
        let iso = iso.expect("signed basis map");
        assert!(iso.verify(&left, &right));
    }
}

#[test]
fn y_endomorphisms_are_the_ground_field() {
    let r = verify_companion_endomorphisms(KnoerrerKind::Complex, DEFAULT_WINDOW_CAP).unwrap();
    assert_eq!((r.h0, r.h1), (1, 0));
    assert!(r.passed);
}

#[test]
fn complex_periodicity_diagram() {
    let y = complex_y_module();
    let r = verify_periodicity_diagram_quadratic(&y, KnoerrerKind::Complex).unwrap();
    assert!(r.passed && !r.inconclusive);
    let out = r.class_out.unwrap();
    assert!(out.is_free_generator());
    assert_eq!(out.n, 4);

    // the unit module over the empty form maps to the class of Y
    let unit = GradedCliffordModule::unit(Mode::Gaussian);
    let r = verify_periodicity_diagram_quadratic(&unit, KnoerrerKind::Complex).unwrap();
    assert!(r.passed);
    assert_eq!(r.class_out.unwrap().coords, abs_class(&y).unwrap().coords);

    // n = 1: A_1 is zero over the complex numbers
    let g1 = AbsGroup::compute(&DiagonalForm::positive_definite(Mode::Gaussian, 1)).unwrap();
    let m = g1.irreducible(0);
    let r = verify_periodicity_diagram_quadratic(&m, KnoerrerKind::Complex).unwrap();
    assert!(r.passed && r.class_out.unwrap().is_zero());

    // a module restricted from one more generator has zero class
    let g3 = AbsGroup::compute(&DiagonalForm::positive_definite(Mode::Gaussian, 3)).unwrap();
    let m = g3.irreducible(0).restrict(2);
    let r = verify_periodicity_diagram_quadratic(&m, KnoerrerKind::Complex).unwrap();
    assert!(r.class_in.is_zero());
    assert!(r.passed && r.class_out.unwrap().is_zero());
}

#[test]
fn tensor_of_y_with_itself_matches_pairing() {
    let y = complex_y_module();
    let yy = graded_tensor(&y, &y).unwrap();
    assert!(abs_class(&yy).unwrap().is_free_generator());
}

#[test]
fn real_base_case_is_a_bott_element() {
    let x8 = column_module_x8();
    let r = verify_periodicity_diagram_quadratic(&x8, KnoerrerKind::Real8 { positive: false }).unwrap();
    assert!(r.passed && !r.inconclusive);
    let out = r.class_out.unwrap();
    assert_eq!(out.n, 16);
    assert!(out.is_free_generator());
}

#[test]
fn x8_endomorphisms_are_the_ground_field() {
    let r = verify_x8_endomorphisms().unwrap();
    assert_eq!(r.rank, (8, 8));
    assert_eq!((r.h0, r.h1), (1, 0));
    assert!(r.passed);
}
