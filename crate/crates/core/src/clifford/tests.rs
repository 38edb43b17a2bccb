use super::*;
use crate::exactalg::{Matrix, Mode, Scalar};
use crate::mfcore::{tensor, MfJson};

fn s(k: i64) -> Scalar {
    Scalar::from_int(k)
}

#[test]
fn multiplication_examples() {
    let q = DiagonalForm::from_ints(Mode::Rational, &[-1, -1, -1]).unwrap();
    let e = |i| CliffordElement::generator(3, i);
    let sq = clifford_multiply(&e(0), &e(0), &q).unwrap();
    assert_eq!(sq, CliffordElement::scalar(3, s(-1)));
    let e12 = clifford_multiply(&e(0), &e(1), &q).unwrap();
    let e23 = clifford_multiply(&e(1), &e(2), &q).unwrap();
    let p = clifford_multiply(&e12, &e23, &q).unwrap();
    assert_eq!(p, CliffordElement::basis(3, 0b101).scale(&s(-1)));
    let sum = e(0).add(&e(1));
    assert_eq!(
        clifford_multiply(&sum, &sum, &q).unwrap(),
        CliffordElement::scalar(3, s(-2))
    );
    assert!(clifford_multiply(&e(0), &CliffordElement::generator(2, 0), &q).is_err());
}

#[test]
fn associativity_on_basis() {
    let q = DiagonalForm::from_ints(Mode::Rational, &[1, -1, -1, 1]).unwrap();
    for a in 0..16 {
        for b in 0..16 {
            for c in 0..16 {
                let (x, y, z) = (
                    CliffordElement::basis(4, a),
                    CliffordElement::basis(4, b),
                    CliffordElement::basis(4, c),
                );
                let l = clifford_multiply(&clifford_multiply(&x, &y, &q).unwrap(), &z, &q).unwrap();
                let r = clifford_multiply(&x, &clifford_multiply(&y, &z, &q).unwrap(), &q).unwrap();
                assert_eq!(l, r);
            }
        }
    }
}

#[test]
fn classification_table() {
    let neg = |n| DiagonalForm::negative_definite(n);
    assert_eq!(classify(&neg(8)).unwrap().to_string(), "Mat16(R)");
    assert_eq!(classify(&neg(1)).unwrap().to_string(), "C");
    assert_eq!(classify(&neg(2)).unwrap().to_string(), "H");
    assert_eq!(classify(&neg(3)).unwrap().to_string(), "H ⊕ H");
    let pos = DiagonalForm::positive_definite(Mode::Rational, 1);
    assert_eq!(classify(&pos).unwrap().to_string(), "R ⊕ R");
    let two = DiagonalForm::from_ints(Mode::Rational, &[2]).unwrap();
    assert!(matches!(classify(&two), Err(crate::Error::CoefficientNotUnit(_))));
}

/// Independent reading of the ungraded structure: the number of simple
/// factors and the dimension of a minimal left ideal determine the type.
#[test]
fn classification_matches_regular_representation() {
    for n in 0..=8 {
        for plus in 0..=n.min(3) {
            let mut c = vec![1i64; plus];
            c.extend(vec![-1; n - plus]);
            let q = DiagonalForm::from_ints(Mode::Rational, &c).unwrap();
            let t = classify(&q).unwrap();
            let dims = ungraded_irreducible_dims(&q).unwrap();
            assert_eq!(dims.len(), if t.double { 2 } else { 1 }, "{c:?}");
            assert!(
                dims.iter().all(|&d| d == t.size * t.base.dim()),
                "{c:?}: {dims:?} vs {t}"
            );
        }
    }
}

#[test]
fn theta_examples() {
    let q = DiagonalForm::positive_definite(Mode::Rational, 1);
    let one = Matrix::from_ints(&[&[1]]);
    let m = GradedCliffordModule::new(q, 1, 1, vec![one.clone()], vec![one]).unwrap();
    let p = beh_theta(&m, &["x".to_string()]).unwrap();
    assert_eq!(p.d1.get(0, 0).to_string_with(&p.vars), "x");
    assert_eq!(p.d0.get(0, 0).to_string_with(&p.vars), "x");

    let q = DiagonalForm::positive_definite(Mode::Gaussian, 2);
    let i = Scalar::i();
    let m = GradedCliffordModule::new(
        q.clone(),
        1,
        1,
        vec![Matrix::from_ints(&[&[1]]), Matrix::from_rows(vec![vec![i.clone()]])],
        vec![Matrix::from_ints(&[&[1]]), Matrix::from_rows(vec![vec![-i]])],
    )
    .unwrap();
    let vars = vec!["u".to_string(), "v".to_string()];
    let y = beh_theta(&m, &vars).unwrap();
    assert!(y.validate().valid);
    let expected = MfJson {
        mode: Mode::Gaussian,
        vars: vars.clone(),
        f: "u^2+v^2".into(),
        d1: vec![vec!["u+i*v".into()]],
        d0: vec![vec!["u-i*v".into()]],
        grading: None,
    }
    .to_mf()
    .unwrap();
    assert_eq!((&y.d1, &y.d0), (&expected.d1, &expected.d0));
    assert_eq!(mf_to_clifford_module(&expected, &q).unwrap(), m);
}

#[test]
fn theta_rejects_bad_modules() {
    let q = DiagonalForm::negative_definite(1);
    let one = Matrix::from_ints(&[&[1]]);
    let bad = GradedCliffordModule::new_unchecked(q.clone(), 1, 1, vec![one.clone()], vec![one]).unwrap();
    assert!(matches!(
        beh_theta(&bad, &["x".into()]),
        Err(crate::Error::RelationViolation(_))
    ));
    let p = MfJson {
        mode: Mode::Rational,
        vars: vec!["x".into()],
        f: "x^3".into(),
        d1: vec![vec!["x".into()]],
        d0: vec![vec!["x^2".into()]],
        grading: None,
    }
    .to_mf()
    .unwrap();
    assert!(mf_to_clifford_module(&p, &q).is_err());
}

#[test]
fn x8_column_module() {
    let m = column_module_x8();
    assert_eq!((m.m1, m.m0), (8, 8));
    let g = x8_generators();
    for (a, ga) in g.iter().enumerate() {
        assert_eq!(ga.mul(ga), Matrix::scalar(16, &s(-1)));
        for gb in &g[a + 1..] {
            assert!(ga.mul(gb).add(&gb.mul(ga)).is_zero());
        }
    }
    let x = beh_theta(&m, &default_vars("u", 8)).unwrap();
    assert!(x.validate().valid);
    assert_eq!(x.rank(), 8);
    assert_eq!(mf_to_clifford_module(&x, &m.form).unwrap(), m);
}

#[test]
fn graded_tensor_matches_factorization_tensor() {
    let one = Matrix::from_ints(&[&[1]]);
    let q = DiagonalForm::positive_definite(Mode::Rational, 1);
    let a = GradedCliffordModule::new(q.clone(), 1, 1, vec![one.clone()], vec![one.clone()]).unwrap();
    let t = graded_tensor(&a, &a).unwrap();
    assert_eq!((t.m1, t.m0), (2, 2));
    let px = beh_theta(&a, &["x".into()]).unwrap();
    let py = beh_theta(&a, &["y".into()]).unwrap();
    let pt = beh_theta(&t, &["x".into(), "y".into()]).unwrap();
    let expected = tensor(&px, &py).unwrap();
    assert_eq!((&pt.d1, &pt.d0), (&expected.d1, &expected.d0));

    let unit = GradedCliffordModule::unit(Mode::Rational);
    assert_eq!(graded_tensor(&a, &unit).unwrap(), a);

    let x8 = column_module_x8();
    let big = graded_tensor(&x8, &a).unwrap();
    assert_eq!((big.m1, big.m0), (16, 16));
}

#[test]
fn module_json_round_trip() {
    let m = column_module_x8();
    let back = GradedCliffordModule::from_json_str(&m.to_json_value().to_string()).unwrap();
    assert_eq!(back, m);
    let text = r#"{"mode":"gaussian","n":2,"form":[1,1],"m1":1,"m0":1,
        "rho":[{"up":[[1]],"down":[[1]]},{"up":[["-i"]],"down":[["i"]]}]}"#;
    let y = GradedCliffordModule::from_json_str(text).unwrap();
    assert_eq!(
        GradedCliffordModule::from_json_str(&y.to_json_value().to_string()).unwrap(),
        y
    );
    let broken = r#"{"n":1,"form":[-1],"m1":1,"m0":1,"rho":[{"up":[[1]],"down":[[1]]}]}"#;
    assert!(GradedCliffordModule::from_json_str(broken).is_err());
}

fn expected_real(n: usize) -> &'static str {
    ["Z", "Z/2", "Z/2", "0", "Z", "0", "0", "0"][n % 8]
}

#[test]
fn real_abs_groups() {
    for n in 0..=10 {
        let g = AbsGroup::compute(&DiagonalForm::negative_definite(n)).unwrap();
        assert_eq!(g.name(), expected_real(n), "n = {n}");
        for k in 0..g.irreducible_count() {
            let m = g.irreducible(k);
            m.check_relations().unwrap();
            let mut e = vec![0; g.irreducible_count()];
            e[k] = 1;
            assert_eq!(g.multiplicities(&m).unwrap(), e);
        }
    }
}

#[test]
fn complex_abs_groups() {
    for n in 0..=5 {
        let g = AbsGroup::compute(&DiagonalForm::positive_definite(Mode::Gaussian, n)).unwrap();
        assert_eq!(g.name(), if n % 2 == 0 { "Z" } else { "0" }, "n = {n}");
    }
}

#[test]
fn abs_classes() {
    let one = Matrix::from_ints(&[&[1]]);
    let q1 = DiagonalForm::negative_definite(1);
    let free = GradedCliffordModule::new(q1, 1, 1, vec![one.clone()], vec![one.scale(&s(-1))]).unwrap();
    let c = abs_class(&free).unwrap();
    assert_eq!(c.group, vec![2]);
    assert_eq!(c.coords, vec![1]);
    let twice = abs_class(&free.direct_sum(&free).unwrap()).unwrap();
    assert!(twice.is_zero());

    let x8 = abs_class(&column_module_x8()).unwrap();
    assert_eq!(x8.group_name(), "Z");
    assert!(x8.is_free_generator());

    // restricted modules vanish
    let g9 = AbsGroup::compute(&DiagonalForm::negative_definite(9)).unwrap();
    let r = g9.irreducible(0).restrict(8);
    assert!(abs_class(&r).unwrap().is_zero());
}

#[test]
fn complex_pairing() {
    let q1 = DiagonalForm::positive_definite(Mode::Gaussian, 2);
    let g = AbsGroup::compute(&q1).unwrap();
    for k in 0..g.irreducible_count() {
        for l in 0..g.irreducible_count() {
            let mut a = vec![0; 2];
            let mut b = vec![0; 2];
            a[k] = 1;
            b[l] = 1;
            let paired = bott_pairing(&g, &a, &g, &b).unwrap();
            let direct = abs_class(&graded_tensor(&g.irreducible(k), &g.irreducible(l)).unwrap()).unwrap();
            assert_eq!(paired.coords, direct.coords);
            assert!(paired.is_free_generator());
        }
    }
}
