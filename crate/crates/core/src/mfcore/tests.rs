use super::*;
use crate::exactalg::{parse_poly, Mode, WeightSystem};

fn names(vs: &[&str]) -> Vec<String> {
    vs.iter().map(|s| s.to_string()).collect()
}

fn mf(mode: Mode, vs: &[&str], f: &str, d1: &[&[&str]], d0: &[&[&str]]) -> MatrixFactorization {
    let j = MfJson {
        mode,
        vars: names(vs),
        f: f.into(),
        d1: d1.iter().map(|r| r.iter().map(|s| s.to_string()).collect()).collect(),
        d0: d0.iter().map(|r| r.iter().map(|s| s.to_string()).collect()).collect(),
        grading: None,
    };
    j.to_mf().unwrap()
}

fn xy() -> MatrixFactorization {
    mf(Mode::Rational, &["x", "y"], "x*y", &[&["x"]], &[&["y"]])
}

fn printed(m: &PolyMatrix, vs: &[&str]) -> Vec<Vec<String>> {
    let v = names(vs);
    m.to_rows()
        .iter()
        .map(|r| r.iter().map(|p| p.to_string_with(&v)).collect())
        .collect()
}

#[test]
fn validate_examples() {
    assert!(xy().validate().valid);
    let y = mf(Mode::Gaussian, &["u", "v"], "u^2+v^2", &[&["u+i*v"]], &[&["u-i*v"]]);
    assert!(y.validate().valid);
    let bad = mf(Mode::Rational, &["x"], "x^2", &[&["x"]], &[&["x^2"]]);
    let r = bad.validate();
    assert!(!r.valid);
    assert!(r.violation.unwrap().contains("x^3"));
}

#[test]
fn dimension_mismatch_is_an_error() {
    let j = MfJson {
        mode: Mode::Rational,
        vars: names(&["x"]),
        f: "x^2".into(),
        d1: vec![vec!["x".into(), "0".into()]],
        d0: vec![vec!["x".into()]],
        grading: None,
    };
    assert!(matches!(j.to_mf(), Err(crate::Error::DimensionMismatch(_))));
}

#[test]
fn gaussian_entries_rejected_in_rational_mode() {
    let j = MfJson {
        mode: Mode::Rational,
        vars: names(&["u", "v"]),
        f: "u^2+v^2".into(),
        d1: vec![vec!["u+i*v".into()]],
        d0: vec![vec!["u-i*v".into()]],
        grading: None,
    };
    assert!(j.to_mf().is_err());
}

#[test]
fn shift_examples() {
    let s = xy().shift();
    assert_eq!(printed(&s.d1, &["x", "y"]), vec![vec!["-y"]]);
    assert_eq!(printed(&s.d0, &["x", "y"]), vec![vec!["-x"]]);
    let ss = s.shift();
    assert_eq!(ss.d1, xy().d1);
    assert_eq!(ss.d0, xy().d0);
    let w = WeightSystem::standard(1, 2);
    let vars = names(&["x"]);
    let f = parse_poly("x^2", &vars, Mode::Rational).unwrap();
    let e = koszul_stabilization(&f, &vars, Mode::Rational, &[(Poly::var(1, 0), 0)], Some(&w)).unwrap();
    assert!(e.shift().validate().valid);
    assert!(e.shift().is_graded());
}

#[test]
fn trivial_flavors() {
    let vars = names(&["x"]);
    let f = parse_poly("x^2", &vars, Mode::Rational).unwrap();
    let w = WeightSystem::standard(1, 2);
    let a = trivial_mf(1, TrivialFlavor::FThenId, &f, &vars, Mode::Rational, Some(&w)).unwrap();
    assert_eq!(printed(&a.d1, &["x"]), vec![vec!["x^2"]]);
    assert_eq!(printed(&a.d0, &["x"]), vec![vec!["1"]]);
    let b = trivial_mf(1, TrivialFlavor::IdThenF, &f, &vars, Mode::Rational, Some(&w)).unwrap();
    assert_eq!(printed(&b.d1, &["x"]), vec![vec!["1"]]);
    assert_eq!(printed(&b.d0, &["x"]), vec![vec!["x^2"]]);
    assert!(a.validate().valid && b.validate().valid);
    assert!(a.is_graded() && b.is_graded());
}

#[test]
fn cone_of_zero_is_sum_with_shift() {
    let p = xy();
    let q = mf(Mode::Rational, &["x", "y"], "x*y", &[&["y"]], &[&["x"]]);
    let c = MFMorphism::zero(&p, &q).unwrap().cone().unwrap();
    let s = q.direct_sum(&p.shift()).unwrap();
    assert_eq!(c.d1, s.d1);
    assert_eq!(c.d0, s.d0);
    assert!(c.validate().valid);
}

#[test]
fn cone_rejects_non_cycles() {
    let p = xy();
    let n = p.nvars();
    let bad = MFMorphism::new(
        p.clone(),
        p.clone(),
        PolyMatrix::identity(1, n),
        PolyMatrix::zeros(1, 1, n),
    )
    .unwrap();
    assert!(matches!(bad.cone(), Err(crate::Error::NotACycle(_))));
}

#[test]
fn cone_of_identity_strips_to_zero() {
    let c = MFMorphism::identity(&xy()).cone().unwrap();
    assert_eq!(c.rank(), 2);
    assert!(c.validate().valid);
    let s = strip_trivial_summands_with_maps(&c);
    assert_eq!(s.reduced.rank1(), 0);
    assert_eq!(s.reduced.rank0(), 0);
    assert_eq!(s.removed, 2);
}

#[test]
fn strip_recovers_summand() {
    let p = xy();
    let t = trivial_mf(1, TrivialFlavor::FThenId, &p.f, &p.vars, p.mode, None).unwrap();
    let sum = p.direct_sum(&t).unwrap();
    let s = strip_trivial_summands_with_maps(&sum);
    assert_eq!(s.reduced.d1, p.d1);
    assert_eq!(s.reduced.d0, p.d0);
    assert!(s.inclusion.is_cycle() && s.projection.is_cycle());
    let back = s.projection.compose(&s.inclusion).unwrap();
    assert_eq!(back.a1, PolyMatrix::identity(1, 2));
    assert_eq!(back.a0, PolyMatrix::identity(1, 2));

    let t3 = trivial_mf(3, TrivialFlavor::IdThenF, &p.f, &p.vars, p.mode, None).unwrap();
    assert_eq!(strip_trivial_summands(&t3).rank(), 0);
}

#[test]
fn strip_keeps_grading() {
    let vars = names(&["x", "y"]);
    let f = parse_poly("x^3-y^2", &vars, Mode::Rational).unwrap();
    let w = WeightSystem::new(vec![2, 3], 6).unwrap();
    let p = mf(
        Mode::Rational,
        &["x", "y"],
        "x^3-y^2",
        &[&["x", "y"], &["y", "x^2"]],
        &[&["x^2", "-y"], &["-y", "x"]],
    )
    .with_inferred_grading(&w)
    .unwrap();
    assert!(p.validate().valid);
    let t = trivial_mf(2, TrivialFlavor::IdThenF, &f, &vars, Mode::Rational, Some(&w)).unwrap();
    let s = strip_trivial_summands(&p.direct_sum(&t).unwrap());
    assert!(s.is_graded());
    assert!(s.validate().valid);
    assert_eq!(s.rank(), 2);
}

#[test]
fn tensor_examples() {
    let x = mf(Mode::Rational, &["x"], "x^2", &[&["x"]], &[&["x"]]);
    let y = mf(Mode::Rational, &["y"], "y^2", &[&["y"]], &[&["y"]]);
    let t = tensor(&x, &y).unwrap();
    assert_eq!(printed(&t.d1, &["x", "y"]), vec![vec!["x", "y"], vec!["-y", "x"]]);
    assert!(t.validate().valid);
    assert_eq!(t.f.to_string_with(&t.vars), "x^2 + y^2");

    let yy = mf(Mode::Gaussian, &["u", "v"], "u^2+v^2", &[&["u+i*v"]], &[&["u-i*v"]]);
    let yy2 = mf(Mode::Gaussian, &["s", "t"], "s^2+t^2", &[&["s+i*t"]], &[&["s-i*t"]]);
    let big = tensor(&yy, &yy2).unwrap();
    assert_eq!(big.rank(), 2);
    assert!(big.validate().valid);

    assert!(matches!(tensor(&x, &x), Err(crate::Error::VariableCollision(_))));
    assert!(matches!(tensor(&x, &yy), Err(crate::Error::ModeMismatch(_))));
}

#[test]
fn tensor_grading_adds() {
    let w = WeightSystem::standard(1, 2);
    let x = mf(Mode::Rational, &["x"], "x^2", &[&["x"]], &[&["x"]])
        .with_inferred_grading(&w)
        .unwrap();
    let y = mf(Mode::Rational, &["y"], "y^2", &[&["y"]], &[&["y"]])
        .with_inferred_grading(&w)
        .unwrap();
    let t = tensor(&x, &y).unwrap();
    assert!(t.is_graded());
    assert!(t.validate().valid);
}

#[test]
fn tensor_associativity() {
    let a = mf(Mode::Rational, &["x"], "x^3", &[&["x"]], &[&["x^2"]]);
    let b = mf(
        Mode::Rational,
        &["y", "z"],
        "y*z",
        &[&["y", "0"], &["0", "z"]],
        &[&["z", "0"], &["0", "y"]],
    );
    let c = mf(Mode::Rational, &["w"], "w^2", &[&["w"]], &[&["w"]]);
    let (l, r, iso) = tensor_associator(&a, &b, &c).unwrap();
    assert!(l.validate().valid && r.validate().valid);
    assert!(iso.verify(&l, &r));
}

#[test]
fn koszul_examples() {
    let vars = names(&["x"]);
    let f = parse_poly("x^2", &vars, Mode::Rational).unwrap();
    let e = koszul_stabilization(&f, &vars, Mode::Rational, &[(Poly::var(1, 0), 0)], None).unwrap();
    assert_eq!(printed(&e.d1, &["x"]), vec![vec!["x"]]);
    assert_eq!(printed(&e.d0, &["x"]), vec![vec!["x"]]);

    let vars = names(&["x", "y"]);
    let f = parse_poly("x^2+y^2", &vars, Mode::Rational).unwrap();
    let dec = [(Poly::var(2, 0), 0), (Poly::var(2, 1), 1)];
    let w = WeightSystem::standard(2, 2);
    let e = koszul_stabilization(&f, &vars, Mode::Rational, &dec, Some(&w)).unwrap();
    assert_eq!(e.rank(), 2);
    assert!(e.validate().valid);
    assert!(e.is_graded());
    // inferred degrees agree with the closed formula up to the anchor
    let inferred = infer_grading(&e.d1, &e.d0, &w).unwrap();
    let g = e.grading.as_ref().unwrap();
    let off = inferred.deg1[0] - g.deg1[0];
    assert!(inferred.deg1.iter().zip(&g.deg1).all(|(a, b)| a - b == off));
    assert!(inferred.deg0.iter().zip(&g.deg0).all(|(a, b)| a - b == off));

    let wrong = [(Poly::var(2, 0), 0), (Poly::var(2, 0), 1)];
    assert!(matches!(
        koszul_stabilization(&f, &vars, Mode::Rational, &wrong, None),
        Err(crate::Error::DecompositionFails)
    ));
}

#[test]
fn json_round_trip() {
    let p = mf(Mode::Gaussian, &["u", "v"], "u^2+v^2", &[&["u+i*v"]], &[&["u-i*v"]]);
    let s = p.to_json_string();
    let back = MatrixFactorization::from_json_str(&s).unwrap();
    assert_eq!(back, p);
    let w = WeightSystem::standard(2, 2);
    let g = p.with_inferred_grading(&w).unwrap();
    let back = MatrixFactorization::from_json_str(&g.to_json_string()).unwrap();
    assert_eq!(back, g);
    // rank zero keeps its shape
    let z = strip_trivial_summands(&MFMorphism::identity(&p).cone().unwrap());
    let back = MatrixFactorization::from_json_str(&z.to_json_string()).unwrap();
    assert_eq!(back.rank(), 0);
}

#[test]
fn coker_presentation_reads_d1() {
    assert_eq!(printed(&xy().coker_presentation(), &["x", "y"]), vec![vec!["x"]]);
}
