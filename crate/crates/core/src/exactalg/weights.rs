use serde::{Deserialize, Serialize};

use super::poly::{Monomial, Poly};
use crate::Error;

/// Positive integer weights for the variables and a target degree.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct WeightSystem {
    pub weights: Vec<u32>,
    pub degree: u32,
}

impl WeightSystem {
    pub fn new(weights: Vec<u32>, degree: u32) -> Result<Self, Error> {
        if weights.contains(&0) || degree == 0 {
            return Err(Error::InvalidWeights("weights and degree must be positive".into()));
        }
        Ok(WeightSystem { weights, degree })
    }

    /// All weights 1.
    pub fn standard(n: usize, degree: u32) -> Self {
        WeightSystem {
            weights: vec![1; n],
            degree,
        }
    }

    pub fn nvars(&self) -> usize {
        self.weights.len()
    }

    pub fn max_weight(&self) -> u32 {
        self.weights.iter().copied().max().unwrap_or(1)
    }

    /// Concatenation, for polynomials over disjoint variable sets. Both
    /// systems must share the degree.
    pub fn concat(&self, other: &WeightSystem) -> Option<WeightSystem> {
        (self.degree == other.degree).then(|| WeightSystem {
            weights: self.weights.iter().chain(&other.weights).copied().collect(),
            degree: self.degree,
        })
    }
}

/// `Σ w_i e_i`.
pub fn weighted_degree(m: &[u32], w: &WeightSystem) -> Result<i64, Error> {
    if m.len() != w.weights.len() {
        return Err(Error::LengthMismatch {
            expected: w.weights.len(),
            got: m.len(),
        });
    }
    Ok(m.iter().zip(&w.weights).map(|(&e, &wi)| e as i64 * wi as i64).sum())
}

/// Weighted degree of a monomial whose length is already known to match.
pub(crate) fn mono_wdeg(m: &Monomial, w: &[u32]) -> i64 {
    m.0.iter().zip(w).map(|(&e, &wi)| e as i64 * wi as i64).sum()
}

/// True iff every monomial of `f` has weighted degree `w.degree`.
pub fn is_quasi_homogeneous(f: &Poly, w: &WeightSystem) -> bool {
    f.nvars() == w.nvars() && f.terms().all(|(m, _)| mono_wdeg(m, &w.weights) == w.degree as i64)
}

/// True iff every monomial of `p` has weighted degree `deg`.
pub fn is_homogeneous_of(p: &Poly, w: &[u32], deg: i64) -> bool {
    p.terms().all(|(m, _)| mono_wdeg(m, w) == deg)
}

/// All monomials of weighted degree exactly `deg`, in ascending graded-lex
/// order.
pub fn monomials_of_weighted_degree(w: &[u32], deg: i64) -> Vec<Monomial> {
    let mut out = Vec::new();
    if deg < 0 {
        return out;
    }
    let mut cur = vec![0u32; w.len()];
    fn rec(w: &[u32], i: usize, left: i64, cur: &mut Vec<u32>, out: &mut Vec<Monomial>) {
        if i == w.len() {
            if left == 0 {
                out.push(Monomial(cur.clone()));
            }
            return;
        }
        let wi = w[i] as i64;
        let mut e = 0;
        while e * wi <= left {
            cur[i] = e as u32;
            rec(w, i + 1, left - e * wi, cur, out);
            e += 1;
        }
        cur[i] = 0;
    }
    rec(w, 0, deg, &mut cur, &mut out);
    out.sort();
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactalg::parse::parse_poly;
    use crate::exactalg::scalar::Mode;

    fn ws(w: &[u32], d: u32) -> WeightSystem {
        WeightSystem::new(w.to_vec(), d).unwrap()
    }

    #[test]
    fn weighted_degrees() {
        let w = ws(&[2, 3], 6);
        assert_eq!(weighted_degree(&[3, 0], &w).unwrap(), 6);
        assert_eq!(weighted_degree(&[0, 2], &w).unwrap(), 6);
        assert_eq!(weighted_degree(&[1, 1], &w).unwrap(), 5);
        assert!(matches!(
            weighted_degree(&[1], &w),
            Err(Error::LengthMismatch { expected: 2, got: 1 })
        ));
    }

    #[test]
    fn quasi_homogeneity() {
        let vars = vec!["x".to_string(), "y".to_string()];
        let cusp = parse_poly("x^3 - y^2", &vars, Mode::Rational).unwrap();
        assert!(is_quasi_homogeneous(&cusp, &ws(&[2, 3], 6)));
        assert!(!is_quasi_homogeneous(&cusp, &ws(&[1, 1], 3)));
        let circle = parse_poly("x^2 + y^2", &vars, Mode::Rational).unwrap();
        assert!(is_quasi_homogeneous(&circle, &ws(&[1, 1], 2)));
        assert!(is_quasi_homogeneous(&Poly::zero(2), &ws(&[1, 1], 2)));
    }

    #[test]
    fn monomial_enumeration() {
        assert_eq!(monomials_of_weighted_degree(&[1, 1, 1], 2).len(), 6);
        assert_eq!(monomials_of_weighted_degree(&[2, 3], 1).len(), 0);
        assert_eq!(monomials_of_weighted_degree(&[2, 3], 6).len(), 2);
        assert_eq!(monomials_of_weighted_degree(&[], 0).len(), 1);
        assert_eq!(monomials_of_weighted_degree(&[1], -1).len(), 0);
    }
}
