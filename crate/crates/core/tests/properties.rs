//! Property tests for the algebraic invariants of the core types.

use mfk_core::exactalg::snf::{mat_mul, smith_normal_form, IntMatrix};
use mfk_core::exactalg::{parse_poly, Monomial};
use mfk_core::mfcore::{tensor, PolyMatrix};
use mfk_core::{MFMorphism, MatrixFactorization, Mode, Poly, Rational, Scalar};
use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Signed, Zero};
use proptest::prelude::*;

fn poly_in(nv: usize) -> impl Strategy<Value = Poly> {
    prop::collection::vec((prop::collection::vec(0u32..3, nv), -4i64..=4), 1..4)
        .prop_map(move |terms| Poly::from_terms(nv, terms.into_iter().map(|(e, c)| (Monomial(e), Scalar::from_int(c)))))
}

fn nonconstant(nv: usize) -> impl Strategy<Value = Poly> {
    poly_in(nv).prop_filter("nonconstant", |p| p.degree().is_some_and(|d| d > 0))
}

fn vars(prefix: &str, n: usize) -> Vec<String> {
    (0..n).map(|i| format!("{prefix}{i}")).collect()
}

fn rank_one(vs: &[String], a: &Poly, b: &Poly) -> MatrixFactorization {
    let n = vs.len();
    MatrixFactorization::new(
        Mode::Rational,
        vs.to_vec(),
        a * b,
        PolyMatrix::from_rows(n, vec![vec![a.clone()]]),
        PolyMatrix::from_rows(n, vec![vec![b.clone()]]),
        None,
    )
    .unwrap()
}

fn int_matrix() -> impl Strategy<Value = (IntMatrix, usize, usize)> {
    (1usize..5, 1usize..5).prop_flat_map(|(r, c)| {
        prop::collection::vec(prop::collection::vec(-9i64..=9, c), r).prop_map(move |m| {
            let m: IntMatrix = m
                .into_iter()
                .map(|row| row.into_iter().map(BigInt::from).collect())
                .collect();
            (m, r, c)
        })
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn polynomial_ring_laws(a in poly_in(2), b in poly_in(2), c in poly_in(2)) {
        prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
        prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
        prop_assert_eq!(&a * &b, &b * &a);
        prop_assert!((&a - &a).is_zero());
    }

    #[test]
    fn polynomials_print_and_parse_back(a in poly_in(3)) {
        let vs = vars("x", 3);
        let text = a.to_string_with(&vs);
        prop_assert_eq!(parse_poly(&text, &vs, Mode::Rational).unwrap(), a);
    }

    #[test]
    fn rational_arithmetic_matches_cross_multiplication(
        n1 in -50i64..50, d1 in 1i64..50, n2 in -50i64..50, d2 in 1i64..50,
    ) {
        let (x, y) = (Rational::new(n1, d1), Rational::new(n2, d2));
        prop_assert_eq!(&x + &y, Rational::new(n1 * d2 + n2 * d1, d1 * d2));
        prop_assert_eq!(&x * &y, Rational::new(n1 * n2, d1 * d2));
        // reduced form: coprime parts, positive denominator
        prop_assert_eq!(x.numer().gcd(&x.denom()), BigInt::from(1));
        prop_assert!(x.denom().is_positive());
    }

    #[test]
    fn smith_form_is_a_unimodular_diagonalization((a, r, c) in int_matrix()) {
        let s = smith_normal_form(&a, r, c);
        let d = mat_mul(&mat_mul(&s.u, &a), &s.v);
        for (i, row) in d.iter().enumerate() {
            for (j, x) in row.iter().enumerate() {
                let want = if i == j && i < s.diag.len() { s.diag[i].clone() } else { BigInt::zero() };
                prop_assert_eq!(x, &want);
            }
        }
        for w in s.diag.windows(2) {
            prop_assert!(!w[0].is_negative());
            let divides = if w[0].is_zero() { w[1].is_zero() } else { (&w[1] % &w[0]).is_zero() };
            prop_assert!(divides);
        }
        // the first invariant factor is the gcd of all entries
        let g = a.iter().flatten().fold(BigInt::zero(), |g, x| g.gcd(x));
        prop_assert_eq!(s.diag.first().cloned().unwrap_or_default(), g);
    }

    #[test]
    fn constructions_stay_valid(a in nonconstant(2), b in nonconstant(2), c in nonconstant(1), d in nonconstant(1)) {
        let vs = vars("x", 2);
        let p = rank_one(&vs, &a, &b);
        prop_assert!(p.validate().valid);
        let s = p.shift();
        prop_assert!(s.validate().valid);
        let back = s.shift();
        prop_assert_eq!((&back.d1, &back.d0), (&p.d1, &p.d0));
        prop_assert!(p.direct_sum(&rank_one(&vs, &b, &a)).unwrap().validate().valid);

        let q = rank_one(&vars("y", 1), &c, &d);
        let t = tensor(&p, &q).unwrap();
        prop_assert!(t.validate().valid);
        prop_assert_eq!((t.rank1(), t.rank0()), (2, 2));
        prop_assert_eq!(&t.f, &(&p.f.embed(3, &[0, 1]) + &q.f.embed(3, &[2])));

        let cone = MFMorphism::identity(&p).cone().unwrap();
        prop_assert!(cone.validate().valid);
    }

    #[test]
    fn json_round_trip(a in nonconstant(2), b in nonconstant(2)) {
        let p = rank_one(&vars("x", 2), &a, &b).direct_sum(&rank_one(&vars("x", 2), &b, &a)).unwrap();
        let back = MatrixFactorization::from_json_str(&p.to_json_string()).unwrap();
        prop_assert_eq!(back, p);
    }
}
