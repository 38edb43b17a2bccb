//! Sparse multivariate polynomials over `Q` or `Q(i)`.

use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt::Write as _;
use std::ops::{Add, Mul, Neg, Sub};

use super::rational::Rational;
use super::scalar::Scalar;

/// Exponent vector, ordered graded-lexicographically (total degree first,
/// then lexicographic in the declared variable order).
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct Monomial(pub Vec<u32>);

impl Monomial {
    pub fn one(n: usize) -> Self {
        Monomial(vec![0; n])
    }

    pub fn var(n: usize, i: usize) -> Self {
        let mut e = vec![0; n];
        e[i] = 1;
        Monomial(e)
    }

    pub fn nvars(&self) -> usize {
        self.0.len()
    }

    pub fn degree(&self) -> u32 {
        self.0.iter().sum()
    }

    pub fn is_one(&self) -> bool {
        self.0.iter().all(|&e| e == 0)
    }

    pub fn mul(&self, o: &Monomial) -> Monomial {
        Monomial(self.0.iter().zip(&o.0).map(|(a, b)| a + b).collect())
    }

    /// `self / o` if `o` divides `self`.
    pub fn div(&self, o: &Monomial) -> Option<Monomial> {
        let mut out = Vec::with_capacity(self.0.len());
        for (a, b) in self.0.iter().zip(&o.0) {
            out.push(a.checked_sub(*b)?);
        }
        Some(Monomial(out))
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, o: &Self) -> Option<Ordering> {
        Some(self.cmp(o))
    }
}

impl Ord for Monomial {
    fn cmp(&self, o: &Self) -> Ordering {
        self.degree().cmp(&o.degree()).then_with(|| self.0.cmp(&o.0))
    }
}

/// A polynomial in a fixed number of variables. Stored coefficients are
/// never zero.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct Poly {
    nvars: usize,
    terms: BTreeMap<Monomial, Scalar>,
}

impl Poly {
    pub fn zero(nvars: usize) -> Self {
        Poly {
            nvars,
            terms: BTreeMap::new(),
        }
    }

    pub fn constant(nvars: usize, c: Scalar) -> Self {
        Self::term(Monomial::one(nvars), c)
    }

    pub fn one(nvars: usize) -> Self {
        Self::constant(nvars, Scalar::one())
    }

    pub fn from_int(nvars: usize, c: i64) -> Self {
        Self::constant(nvars, Scalar::from_int(c))
    }

    pub fn var(nvars: usize, i: usize) -> Self {
        Self::term(Monomial::var(nvars, i), Scalar::one())
    }

    pub fn term(m: Monomial, c: Scalar) -> Self {
        let mut p = Poly::zero(m.nvars());
        if !c.is_zero() {
            p.terms.insert(m, c);
        }
        p
    }

    pub fn from_terms(nvars: usize, terms: impl IntoIterator<Item = (Monomial, Scalar)>) -> Self {
        let mut p = Poly::zero(nvars);
        for (m, c) in terms {
            assert_eq!(m.nvars(), nvars, "exponent vector length mismatch");
            p.add_term(m, &c);
        }
        p
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    /// Terms in ascending graded-lex order.
    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (&Monomial, &Scalar)> {
        self.terms.iter()
    }

    pub fn coeff(&self, m: &Monomial) -> Scalar {
        self.terms.get(m).cloned().unwrap_or_default()
    }

    /// The value if the polynomial is constant (zero included).
    pub fn as_constant(&self) -> Option<Scalar> {
        match self.terms.len() {
            0 => Some(Scalar::zero()),
            1 => {
                let (m, c) = self.terms.iter().next().unwrap();
                m.is_one().then(|| c.clone())
            }
            _ => None,
        }
    }

    /// Total degree; `None` for the zero polynomial.
    pub fn degree(&self) -> Option<u32> {
        self.terms.keys().next_back().map(Monomial::degree)
    }

    /// Whether every coefficient is real.
    pub fn is_real(&self) -> bool {
        self.terms.values().all(Scalar::is_real)
    }

    pub fn add_term(&mut self, m: Monomial, c: &Scalar) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(m) {
            std::collections::btree_map::Entry::Vacant(v) => {
                v.insert(c.clone());
            }
            std::collections::btree_map::Entry::Occupied(mut o) => {
                *o.get_mut() += c;
                if o.get().is_zero() {
                    o.remove();
                }
            }
        }
    }

    pub fn scale(&self, c: &Scalar) -> Poly {
        if c.is_zero() {
            return Poly::zero(self.nvars);
        }
        Poly {
            nvars: self.nvars,
            terms: self.terms.iter().map(|(m, a)| (m.clone(), a * c)).collect(),
        }
    }

    pub fn mul_monomial(&self, m: &Monomial, c: &Scalar) -> Poly {
        let mut out = Poly::zero(self.nvars);
        if c.is_zero() {
            return out;
        }
        for (e, a) in &self.terms {
            out.terms.insert(e.mul(m), a * c);
        }
        out
    }

    pub fn pow(&self, k: u32) -> Poly {
        let mut acc = Poly::one(self.nvars);
        for _ in 0..k {
            acc = &acc * self;
        }
        acc
    }

    pub fn derivative(&self, i: usize) -> Poly {
        let mut out = Poly::zero(self.nvars);
        for (m, c) in &self.terms {
            let e = m.0[i];
            if e == 0 {
                continue;
            }
            let mut mm = m.clone();
            mm.0[i] -= 1;
            out.add_term(mm, &(c * &Scalar::from_int(e as i64)));
        }
        out
    }

    /// Rewrites into a ring with `nvars` variables, sending variable `j`
    /// to variable `map[j]`.
    pub fn embed(&self, nvars: usize, map: &[usize]) -> Poly {
        assert_eq!(map.len(), self.nvars);
        let mut out = Poly::zero(nvars);
        for (m, c) in &self.terms {
            let mut e = vec![0u32; nvars];
            for (j, &k) in map.iter().enumerate() {
                e[k] += m.0[j];
            }
            out.add_term(Monomial(e), c);
        }
        out
    }

    /// Substitutes polynomials (all over the same target ring) for each variable.
    pub fn substitute(&self, values: &[Poly]) -> Poly {
        assert_eq!(values.len(), self.nvars);
        let target_n = values.first().map_or(0, Poly::nvars);
        let mut out = Poly::zero(target_n);
        for (m, c) in &self.terms {
            let mut t = Poly::constant(target_n, c.clone());
            for (j, &e) in m.0.iter().enumerate() {
                if e > 0 {
                    t = &t * &values[j].pow(e);
                }
            }
            out = &out + &t;
        }
        out
    }

    /// Canonical text: graded-lex descending, ` + ` / ` - ` separators.
    pub fn to_string_with(&self, vars: &[String]) -> String {
        if self.terms.is_empty() {
            return "0".to_string();
        }
        let mut s = String::new();
        for (idx, (m, c)) in self.terms.iter().rev().enumerate() {
            let negative = c.re.signum() < 0 || (c.re.is_zero() && c.im.signum() < 0);
            let c = if negative { -c.clone() } else { c.clone() };
            if idx == 0 {
                if negative {
                    s.push('-');
                }
            } else {
                s.push_str(if negative { " - " } else { " + " });
            }
            let mon = monomial_text(m, vars);
            if mon.is_empty() {
                if c.is_compound() {
                    let _ = write!(s, "({c})");
                } else {
                    let _ = write!(s, "{c}");
                }
            } else if c.is_one() {
                s.push_str(&mon);
            } else if c.is_compound() {
                let _ = write!(s, "({c})*{mon}");
            } else {
                let _ = write!(s, "{c}*{mon}");
            }
        }
        s
    }
}

fn monomial_text(m: &Monomial, vars: &[String]) -> String {
    let mut parts = Vec::new();
    for (j, &e) in m.0.iter().enumerate() {
        match e {
            0 => {}
            1 => parts.push(vars[j].clone()),
            _ => parts.push(format!("{}^{}", vars[j], e)),
        }
    }
    parts.join("*")
}

impl<'a> Add<&'a Poly> for &'a Poly {
    type Output = Poly;
    fn add(self, o: &Poly) -> Poly {
        assert_eq!(self.nvars, o.nvars, "variable count mismatch");
        let (big, small) = if self.terms.len() >= o.terms.len() {
            (self, o)
        } else {
            (o, self)
        };
        let mut out = big.clone();
        for (m, c) in &small.terms {
            out.add_term(m.clone(), c);
        }
        out
    }
}

impl<'a> Sub<&'a Poly> for &'a Poly {
    type Output = Poly;
    fn sub(self, o: &Poly) -> Poly {
        assert_eq!(self.nvars, o.nvars, "variable count mismatch");
        let mut out = self.clone();
        for (m, c) in &o.terms {
            out.add_term(m.clone(), &-c);
        }
        out
    }
}

impl<'a> Mul<&'a Poly> for &'a Poly {
    type Output = Poly;
    fn mul(self, o: &Poly) -> Poly {
        assert_eq!(self.nvars, o.nvars, "variable count mismatch");
        let mut out = Poly::zero(self.nvars);
        for (m1, c1) in &self.terms {
            for (m2, c2) in &o.terms {
                out.add_term(m1.mul(m2), &(c1 * c2));
            }
        }
        out
    }
}

impl Neg for &Poly {
    type Output = Poly;
    fn neg(self) -> Poly {
        Poly {
            nvars: self.nvars,
            terms: self.terms.iter().map(|(m, c)| (m.clone(), -c)).collect(),
        }
    }
}

impl Add for Poly {
    type Output = Poly;
    fn add(self, o: Poly) -> Poly {
        &self + &o
    }
}

impl Sub for Poly {
    type Output = Poly;
    fn sub(self, o: Poly) -> Poly {
        &self - &o
    }
}

impl Mul for Poly {
    type Output = Poly;
    fn mul(self, o: Poly) -> Poly {
        &self * &o
    }
}

impl Neg for Poly {
    type Output = Poly;
    fn neg(self) -> Poly {
        -&self
    }
}

/// Scalar multiple helper used by the linear-algebra code.
pub fn rational_scalar(n: i64, d: i64) -> Scalar {
    Scalar::real(Rational::new(n, d))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn vars(names: &[&str]) -> Vec<String> {
        names.iter().map(|s| s.to_string()).collect()
    }

    #[test]
    fn grlex_printing() {
        let x = Poly::var(2, 0);
        let y = Poly::var(2, 1);
        let f = &(&x.pow(3) - &y.pow(2)) + &Poly::from_int(2, -3);
        assert_eq!(f.to_string_with(&vars(&["x", "y"])), "x^3 - y^2 - 3");
        let g = &(&x * &y) + (&x.pow(2).scale(&rational_scalar(-1, 2)));
        assert_eq!(g.to_string_with(&vars(&["x", "y"])), "-1/2*x^2 + x*y");
    }

    #[test]
    fn gaussian_coefficients_print() {
        let u = Poly::var(2, 0);
        let v = Poly::var(2, 1);
        let p = &u + &v.scale(&Scalar::i());
        assert_eq!(p.to_string_with(&vars(&["u", "v"])), "u + i*v");
        let q = &u - &v.scale(&Scalar::i());
        assert_eq!(q.to_string_with(&vars(&["u", "v"])), "u - i*v");
        let c = Poly::constant(2, Scalar::new(Rational::from_int(1), Rational::from_int(2)));
        assert_eq!(c.to_string_with(&vars(&["u", "v"])), "(1+2*i)");
    }

    #[test]
    fn derivative_and_embed() {
        let x = Poly::var(2, 0);
        let y = Poly::var(2, 1);
        let f = &x.pow(3) - &(&x * &y.pow(2));
        assert_eq!(f.derivative(0), &x.pow(2).scale(&Scalar::from_int(3)) - &y.pow(2));
        let e = x.embed(3, &[2, 0]);
        assert_eq!(e, Poly::var(3, 2));
    }

    #[test]
    fn zero_is_empty() {
        let z = &Poly::var(1, 0) - &Poly::var(1, 0);
        assert!(z.is_zero());
        assert_eq!(z.degree(), None);
        assert_eq!(z.to_string_with(&vars(&["x"])), "0");
    }
}
