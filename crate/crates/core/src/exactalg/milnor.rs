use serde::Serialize;

use super::linalg::{normalize, rank_of_columns, SparseVec};
use super::poly::{Monomial, Poly};
use super::rational::Rational;
use super::weights::{is_quasi_homogeneous, monomials_of_weighted_degree, WeightSystem};
use crate::Error;

/// Degreewise dimensions of the Jacobian quotient `k[x]/(∂f)`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct MilnorReport {
    pub mu: usize,
    /// `dims[j]` = dimension of the quotient in weighted degree `j`.
    pub dims: Vec<usize>,
    pub socle_degree: i64,
    /// `Π (d/w_i - 1)` when it is an integer.
    pub product_formula: Option<i64>,
}

/// Milnor number of a quasi-homogeneous isolated singularity.
pub fn milnor_number(f: &Poly, w: &WeightSystem) -> Result<usize, Error> {
    milnor_report(f, w).map(|r| r.mu)
}

pub fn milnor_report(f: &Poly, w: &WeightSystem) -> Result<MilnorReport, Error> {
    if f.nvars() != w.nvars() {
        return Err(Error::LengthMismatch {
            expected: w.nvars(),
            got: f.nvars(),
        });
    }
    if !is_quasi_homogeneous(f, w) {
        return Err(Error::NotQuasiHomogeneous);
    }
    let n = f.nvars();
    let d = w.degree as i64;
    let partials: Vec<(Poly, i64)> = (0..n)
        .map(|i| (f.derivative(i), d - w.weights[i] as i64))
        .filter(|(p, _)| !p.is_zero())
        .collect();
    let socle: i64 = w.weights.iter().map(|&wi| d - 2 * wi as i64).sum();
    let margin = w.max_weight() as i64;
    let top = socle.max(-1) + margin;
    let mut dims = Vec::new();
    for j in 0..=top {
        dims.push(quotient_dim(&partials, &w.weights, j));
    }
    if dims.iter().enumerate().any(|(j, &q)| (j as i64) > socle && q > 0) {
        return Err(Error::NonIsolated);
    }
    let mu: usize = dims.iter().sum();
    let product = product_formula(w);
    if let Some(p) = &product {
        if *p != mu as i64 {
            return Err(Error::Internal(format!(
                "Jacobian quotient dimension {mu} disagrees with the weight product {p}"
            )));
        }
    }
    Ok(MilnorReport {
        mu,
        dims,
        socle_degree: socle,
        product_formula: product,
    })
}

/// `Π (d/w_i - 1)` if it is an integer.
pub fn product_formula(w: &WeightSystem) -> Option<i64> {
    let d = Rational::from_int(w.degree as i64);
    let mut acc = Rational::one();
    for &wi in &w.weights {
        let term = &(&d / &Rational::from_int(wi as i64)) - &Rational::one();
        acc = &acc * &term;
    }
    acc.to_i64()
}

/// Dimension of `(k[x]/(∂f))_j`.
fn quotient_dim(partials: &[(Poly, i64)], w: &[u32], j: i64) -> usize {
    let monos = monomials_of_weighted_degree(w, j);
    if monos.is_empty() {
        return 0;
    }
    let index: rustc_hash::FxHashMap<&Monomial, u32> = monos.iter().enumerate().map(|(k, m)| (m, k as u32)).collect();
    let mut gens: Vec<SparseVec> = Vec::new();
    for (p, pd) in partials {
        for m in monomials_of_weighted_degree(w, j - pd) {
            let v = normalize(p.terms().map(|(e, c)| (index[&e.mul(&m)], c.clone())).collect());
            gens.push(v);
        }
    }
    let rank = rank_of_columns(monos.len(), gens.len(), |k| gens[k].clone());
    monos.len() - rank
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactalg::parse::parse_poly;
    use crate::exactalg::scalar::Mode;

    fn poly(s: &str, vars: &[&str]) -> Poly {
        let v: Vec<String> = vars.iter().map(|s| s.to_string()).collect();
        parse_poly(s, &v, Mode::Rational).unwrap()
    }

    #[test]
    fn sphere_quadric() {
        let f = poly("x^2+y^2+z^2", &["x", "y", "z"]);
        assert_eq!(milnor_number(&f, &WeightSystem::standard(3, 2)).unwrap(), 1);
    }

    #[test]
    fn cusp() {
        let f = poly("x^3-y^2", &["x", "y"]);
        let r = milnor_report(&f, &WeightSystem::new(vec![2, 3], 6).unwrap()).unwrap();
        assert_eq!(r.mu, 2);
        // basis {1, x} in degrees 0 and 2
        assert_eq!(r.dims[0], 1);
        assert_eq!(r.dims[2], 1);
        assert_eq!(r.product_formula, Some(2));
    }

    #[test]
    fn fermat_cubic_surface() {
        let f = poly("x^3+y^3+z^3", &["x", "y", "z"]);
        let r = milnor_report(&f, &WeightSystem::standard(3, 3)).unwrap();
        assert_eq!(r.mu, 8);
        assert_eq!(&r.dims[..4], &[1, 3, 3, 1]);
    }

    #[test]
    fn rejects_bad_inputs() {
        let f = poly("x^3-y^2", &["x", "y"]);
        assert!(matches!(
            milnor_number(&f, &WeightSystem::standard(2, 3)),
            Err(Error::NotQuasiHomogeneous)
        ));
        // x^2 in two variables: the singular locus is the y-axis
        let g = poly("x^2", &["x", "y"]);
        assert!(matches!(
            milnor_number(&g, &WeightSystem::standard(2, 2)),
            Err(Error::NonIsolated)
        ));
    }
}
