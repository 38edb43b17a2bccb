use super::*;
use crate::exactalg::{parse_poly, Mode, Poly, WeightSystem};
use crate::mfcore::{koszul_stabilization, trivial_mf, MFMorphism, MfJson, TrivialFlavor};

fn names(vs: &[&str]) -> Vec<String> {
    vs.iter().map(|s| s.to_string()).collect()
}

fn graded(vs: &[&str], f: &str, d1: &[&[&str]], d0: &[&[&str]], w: WeightSystem) -> MatrixFactorization {
    MfJson {
        mode: Mode::Rational,
        vars: names(vs),
        f: f.into(),
        d1: d1.iter().map(|r| r.iter().map(|s| s.to_string()).collect()).collect(),
        d0: d0.iter().map(|r| r.iter().map(|s| s.to_string()).collect()).collect(),
        grading: None,
    }
    .to_mf()
    .unwrap()
    .with_inferred_grading(&w)
    .unwrap()
}

fn e_q(n: usize) -> MatrixFactorization {
    let vars: Vec<String> = (0..n).map(|i| format!("x{i}")).collect();
    let f = (0..n).fold(Poly::zero(n), |acc, i| &acc + &Poly::var(n, i).pow(2));
    let dec: Vec<(Poly, usize)> = (0..n).map(|i| (Poly::var(n, i), i)).collect();
    koszul_stabilization(&f, &vars, Mode::Rational, &dec, Some(&WeightSystem::standard(n, 2))).unwrap()
}

#[test]
fn endomorphisms_of_x_over_x_squared() {
    let p = graded(&["x"], "x^2", &[&["x"]], &[&["x"]], WeightSystem::standard(1, 2));
    let t = hom_homology_dims(&p, &p, DEFAULT_WINDOW_CAP).unwrap();
    assert_eq!(t.totals(), (1, 1));
}

#[test]
fn koszul_endomorphisms_small() {
    for n in 1..=3 {
        let e = e_q(n);
        let t = hom_homology_dims(&e, &e, DEFAULT_WINDOW_CAP).unwrap();
        let h = 1 << (n - 1);
        assert_eq!(t.totals(), (h, h), "n = {n}");
    }
}

#[test]
fn d_squared_vanishes() {
    let e = e_q(2);
    for t in -2..=2 {
        check_d_squared(&e, &e, t).unwrap();
    }
    let w = WeightSystem::new(vec![2, 3], 6).unwrap();
    let p = graded(
        &["x", "y"],
        "x^3-y^2",
        &[&["x", "y"], &["y", "x^2"]],
        &[&["x^2", "-y"], &["-y", "x"]],
        w,
    );
    for t in -4..=4 {
        check_d_squared(&p, &p, t).unwrap();
    }
}

#[test]
fn ungraded_input_rejected() {
    let p = MfJson {
        mode: Mode::Rational,
        vars: names(&["x"]),
        f: "x^2".into(),
        d1: vec![vec!["x".into()]],
        d0: vec![vec!["x".into()]],
        grading: None,
    }
    .to_mf()
    .unwrap();
    assert!(matches!(hom_homology_dims(&p, &p, 10), Err(Error::Ungraded(_))));
}

#[test]
fn window_cap_reports_partial_table() {
    let e = e_q(2);
    match hom_homology_dims(&e, &e, 1) {
        Err(Error::WindowCapExceeded { cap, partial }) => {
            assert_eq!(cap, 1);
            assert_eq!(partial.rows.len(), 1);
        }
        other => panic!("unexpected {other:?}"),
    }
}

#[test]
fn null_homotopies() {
    let vars = names(&["x"]);
    let f = parse_poly("x^2", &vars, Mode::Rational).unwrap();
    let w = WeightSystem::standard(1, 2);
    let t = trivial_mf(1, TrivialFlavor::FThenId, &f, &vars, Mode::Rational, Some(&w)).unwrap();
    let r = find_null_homotopy(&MFMorphism::identity(&t), None).unwrap();
    assert!(r.homotopy.is_some());

    let p = graded(&["x"], "x^2", &[&["x"]], &[&["x"]], w);
    let r = find_null_homotopy(&MFMorphism::identity(&p), None).unwrap();
    assert!(r.homotopy.is_none());
    assert_eq!(r.method, SearchMethod::Graded);

    // ungraded copy: bounded search, also none
    let mut u = p.clone();
    u.grading = None;
    let r = find_null_homotopy(&MFMorphism::identity(&u), Some(3)).unwrap();
    assert!(r.homotopy.is_none());
    assert_eq!(r.method, SearchMethod::Bounded(3));

    let z = MFMorphism::zero(&p, &p).unwrap();
    assert!(find_null_homotopy(&z, None).unwrap().homotopy.is_some());
}

#[test]
fn cone_of_identity_is_null_homotopic() {
    let w = WeightSystem::standard(2, 2);
    let p = graded(&["x", "y"], "x*y", &[&["x"]], &[&["y"]], w);
    let c = MFMorphism::identity(&p).cone().unwrap();
    assert!(c.is_graded());
    let r = find_null_homotopy(&MFMorphism::identity(&c), None).unwrap();
    assert!(r.homotopy.is_some());
}

#[test]
fn equivalence_with_contractible_summand() {
    let w = WeightSystem::standard(2, 2);
    let p = graded(&["x", "y"], "x*y", &[&["x"]], &[&["y"]], w);
    let c = MFMorphism::identity(&p).cone().unwrap();
    let big = p.direct_sum(&c).unwrap();
    let r = find_homotopy_equivalence(&p, &big, None).unwrap();
    let cert = r.certificate.expect("equivalence");
    assert!(cert.verify());

    // ungraded route
    let (mut p2, mut big2) = (p.clone(), big.clone());
    p2.grading = None;
    big2.grading = None;
    let r = find_homotopy_equivalence(&p2, &big2, None).unwrap();
    assert!(r.certificate.unwrap().verify());
}

#[test]
fn no_equivalence_with_trivial() {
    let w = WeightSystem::standard(1, 2);
    let p = graded(&["x"], "x^2", &[&["x"]], &[&["x"]], w.clone());
    let vars = names(&["x"]);
    let t = trivial_mf(1, TrivialFlavor::FThenId, &p.f, &vars, Mode::Rational, Some(&w)).unwrap();
    let r = find_homotopy_equivalence(&p, &t, Some(3)).unwrap();
    assert!(r.certificate.is_none());
    let other = graded(&["y"], "y^2", &[&["y"]], &[&["y"]], w);
    assert!(find_homotopy_equivalence(&p, &other, None).is_err());
}

#[test]
fn homology_counts_match_certificates() {
    // H^0_0 of End(E_q), n = 2, equals the number of degree-0 cycles that are
    // independent modulo boundaries
    let e = e_q(2);
    let table = hom_homology_dims(&e, &e, DEFAULT_WINDOW_CAP).unwrap();
    let h00 = table.rows.iter().find(|r| r.t == 0).unwrap().h0;
    assert_eq!(h00, 2);
    let id = MFMorphism::identity(&e);
    assert!(find_null_homotopy(&id, None).unwrap().homotopy.is_none());
}
