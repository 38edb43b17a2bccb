use super::*;
use crate::exactalg::{Mode, WeightSystem};
use crate::mfcore::{trivial_mf, MfJson, TrivialFlavor};

fn mf(vs: &[&str], f: &str, d1: &[&[&str]], d0: &[&[&str]], w: &WeightSystem) -> MatrixFactorization {
    MfJson {
        mode: Mode::Rational,
        vars: vs.iter().map(|s| s.to_string()).collect(),
        f: f.into(),
        d1: d1.iter().map(|r| r.iter().map(|s| s.to_string()).collect()).collect(),
        d0: d0.iter().map(|r| r.iter().map(|s| s.to_string()).collect()).collect(),
        grading: None,
    }
    .to_mf()
    .unwrap()
    .with_inferred_grading(w)
    .unwrap()
}

fn xy() -> (MatrixFactorization, MatrixFactorization) {
    let w = WeightSystem::standard(2, 2);
    (
        mf(&["x", "y"], "x*y", &[&["x"]], &[&["y"]], &w),
        mf(&["x", "y"], "x*y", &[&["y"]], &[&["x"]], &w),
    )
}

fn theta_of(p: &MatrixFactorization, q: &MatrixFactorization) -> i64 {
    let r = theta(p, q).unwrap();
    assert!(r.valid, "{r:?}");
    r.theta
}

#[test]
fn node_examples() {
    let (p, q) = xy();
    let r = theta(&p, &q).unwrap();
    assert_eq!((r.tor1, r.tor2, r.theta), (0, 1, 1));
    assert!(r.valid);
    let r = theta(&p, &p).unwrap();
    assert_eq!((r.tor1, r.tor2, r.theta), (1, 0, -1));
    assert_eq!(r.milnor_number, 1);
}

#[test]
fn trivial_factorizations_pair_to_zero() {
    let (p, _) = xy();
    let vars = p.vars.clone();
    let w = WeightSystem::standard(2, 2);
    for flavor in [TrivialFlavor::IdThenF, TrivialFlavor::FThenId] {
        let t = trivial_mf(1, flavor, &p.f, &vars, Mode::Rational, Some(&w)).unwrap();
        assert_eq!(theta_of(&p, &t), 0);
        assert_eq!(theta_of(&t, &p), 0);
    }
}

// Lines through the origin of a reduced homogeneous curve f of degree e:
// for P_g = (g, f/g) and P_h = (h, f/h) with g, h distinct linear factors,
// Tor_1 = 0 and Tor_2 = k[x,y]/(g,h) = k, so θ = 1. For g = h, Tor_2 = 0 and
// Tor_1 = k[x,y]/(g, f/g) has dimension e - 1, so θ = 1 - e.
#[test]
fn line_arrangements_match_intersection_counts() {
    let w = WeightSystem::standard(2, 2);
    let a = mf(&["x", "y"], "x^2-y^2", &[&["x-y"]], &[&["x+y"]], &w);
    let b = mf(&["x", "y"], "x^2-y^2", &[&["x+y"]], &[&["x-y"]], &w);
    assert_eq!(theta_of(&a, &b), 1);
    assert_eq!(theta_of(&a, &a), -1);

    let w = WeightSystem::standard(2, 3);
    let f = "x^3-x*y^2";
    let lx = mf(&["x", "y"], f, &[&["x"]], &[&["x^2-y^2"]], &w);
    let lm = mf(&["x", "y"], f, &[&["x-y"]], &[&["x^2+x*y"]], &w);
    let lp = mf(&["x", "y"], f, &[&["x+y"]], &[&["x^2-x*y"]], &w);
    for (p, q) in [(&lx, &lm), (&lx, &lp), (&lm, &lp)] {
        assert_eq!(theta_of(p, q), 1);
        assert_eq!(theta_of(q, p), 1);
    }
    for p in [&lx, &lm, &lp] {
        assert_eq!(theta_of(p, p), -2);
    }
}

fn cusp() -> MatrixFactorization {
    let w = WeightSystem::new(vec![2, 3], 6).unwrap();
    mf(
        &["x", "y"],
        "x^3-y^2",
        &[&["x", "y"], &["y", "x^2"]],
        &[&["x^2", "-y"], &["-y", "x"]],
        &w,
    )
}

#[test]
fn cusp_pairs_to_zero() {
    // an irreducible branch: θ vanishes
    let p = cusp();
    let r = theta(&p, &p).unwrap();
    assert!(r.valid);
    assert_eq!(r.tor1, r.tor2);
    assert_eq!(r.theta, 0);
    assert_eq!(r.milnor_number, 2);
}

#[test]
fn bilinearity_and_shift() {
    let (p, q) = xy();
    let zero = MFMorphism::zero(&p, &q).unwrap();
    let id = MFMorphism::identity(&p);
    let r = theta_bilinearity_check(&p, &q, &q, &[zero, id]).unwrap();
    assert!(r.passed, "{r:?}");
    assert_eq!(theta_of(&p.shift(), &q), -1);

    let w = WeightSystem::standard(2, 3);
    let f = "x^3-x*y^2";
    let lx = mf(&["x", "y"], f, &[&["x"]], &[&["x^2-y^2"]], &w);
    let lm = mf(&["x", "y"], f, &[&["x-y"]], &[&["x^2+x*y"]], &w);
    let r = theta_bilinearity_check(&lx, &lm, &lx, &[MFMorphism::identity(&lm)]).unwrap();
    assert!(r.passed, "{r:?}");
}

#[test]
fn rejects_bad_input() {
    let (p, _) = xy();
    let mut u = p.clone();
    u.grading = None;
    assert!(matches!(theta(&u, &p), Err(Error::Ungraded(_))));
    let w = WeightSystem::standard(2, 2);
    let other = mf(&["x", "y"], "x^2-y^2", &[&["x-y"]], &[&["x+y"]], &w);
    assert!(theta(&p, &other).is_err());
    // non-isolated: f = x^2 in two variables
    let fat = mf(&["x", "y"], "x^2", &[&["x"]], &[&["x"]], &w);
    assert!(theta(&fat, &fat).is_err());
}

#[test]
fn window_cap_is_reported() {
    let (p, q) = xy();
    assert!(matches!(
        theta_with_cap(&p, &q, 1),
        Err(Error::WindowCapExceeded { .. })
    ));
}
