use std::collections::BTreeMap;
use std::fmt;

use serde::Serialize;

use crate::exactalg::{Mode, Poly, Scalar};
use crate::Error;

/// Largest number of generators handled; basis monomials are `u32` masks.
pub const MAX_GENERATORS: usize = 24;

/// `q = a_1 x_1^2 + ... + a_n x_n^2` with all `a_i` nonzero.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct DiagonalForm {
    pub mode: Mode,
    coeffs: Vec<Scalar>,
}

impl DiagonalForm {
    pub fn new(mode: Mode, coeffs: Vec<Scalar>) -> Result<Self, Error> {
        if coeffs.len() > MAX_GENERATORS {
            return Err(Error::Invalid(format!(
                "at most {MAX_GENERATORS} generators are supported"
            )));
        }
        for (i, a) in coeffs.iter().enumerate() {
            if a.is_zero() {
                return Err(Error::Invalid(format!("coefficient a_{} is zero", i + 1)));
            }
            if !mode.admits(a) {
                return Err(Error::ModeMismatch(format!(
                    "coefficient a_{} = {a} needs gaussian mode",
                    i + 1
                )));
            }
        }
        Ok(DiagonalForm { mode, coeffs })
    }

    pub fn from_ints(mode: Mode, coeffs: &[i64]) -> Result<Self, Error> {
        Self::new(mode, coeffs.iter().map(|&a| Scalar::from_int(a)).collect())
    }

    /// `-x_1^2 - ... - x_n^2` over the rationals.
    pub fn negative_definite(n: usize) -> Self {
        Self::from_ints(Mode::Rational, &vec![-1; n]).expect("valid form")
    }

    /// `x_1^2 + ... + x_n^2`.
    pub fn positive_definite(mode: Mode, n: usize) -> Self {
        Self::from_ints(mode, &vec![1; n]).expect("valid form")
    }

    pub fn n(&self) -> usize {
        self.coeffs.len()
    }

    pub fn coeffs(&self) -> &[Scalar] {
        &self.coeffs
    }

    /// All coefficients are `+1` or `-1`.
    pub fn is_unit(&self) -> bool {
        self.coeffs.iter().all(|a| a.is_one() || (-a).is_one())
    }

    /// The form as a polynomial in `n` variables.
    pub fn poly(&self) -> Poly {
        let n = self.n();
        let mut f = Poly::zero(n);
        for (i, a) in self.coeffs.iter().enumerate() {
            let mut e = vec![0u32; n];
            e[i] = 2;
            f.add_term(crate::exactalg::Monomial(e), a);
        }
        f
    }

    /// `q ⊕ q'` on the concatenated variables.
    pub fn direct_sum(&self, o: &DiagonalForm) -> Result<DiagonalForm, Error> {
        if self.mode != o.mode {
            return Err(Error::ModeMismatch("forms over different scalars".into()));
        }
        let mut c = self.coeffs.clone();
        c.extend(o.coeffs.iter().cloned());
        DiagonalForm::new(self.mode, c)
    }

    /// The form with one more coefficient appended.
    pub fn extended(&self, a: i64) -> DiagonalForm {
        let mut c = self.coeffs.clone();
        c.push(Scalar::from_int(a));
        DiagonalForm::new(self.mode, c).expect("valid form")
    }

    /// The form on the first `k` variables.
    pub fn truncated(&self, k: usize) -> DiagonalForm {
        DiagonalForm {
            mode: self.mode,
            coeffs: self.coeffs[..k].to_vec(),
        }
    }

    pub(crate) fn check_unit(&self) -> Result<(), Error> {
        match self.coeffs.iter().find(|a| !(a.is_one() || (-*a).is_one())) {
            Some(a) => Err(Error::CoefficientNotUnit(a.to_string())),
            None => Ok(()),
        }
    }
}

/// `e_a · e_b = c · e_{a xor b}` for basis monomials given as bit masks.
pub(crate) fn mono_mul(a: u32, b: u32, coeffs: &[Scalar]) -> (Scalar, u32) {
    // moving each generator of b left past the larger generators of a
    let mut swaps = 0u32;
    let mut rest = b;
    while rest != 0 {
        let j = rest.trailing_zeros();
        rest &= rest - 1;
        swaps += (a >> j >> 1).count_ones();
    }
    let mut c = if swaps.is_multiple_of(2) {
        Scalar::one()
    } else {
        Scalar::from_int(-1)
    };
    let mut both = a & b;
    while both != 0 {
        let i = both.trailing_zeros() as usize;
        both &= both - 1;
        c = &c * &coeffs[i];
    }
    (c, a ^ b)
}

/// Whether `e_a` and `e_b` commute (they anti-commute otherwise).
pub(crate) fn commutes(a: u32, b: u32) -> bool {
    let s = a.count_ones() * b.count_ones() - (a & b).count_ones();
    s.is_multiple_of(2)
}

/// An element of `Cliff(q)` as a combination of basis monomials `e_S`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CliffordElement {
    n: usize,
    terms: BTreeMap<u32, Scalar>,
}

impl CliffordElement {
    pub fn zero(n: usize) -> Self {
        CliffordElement {
            n,
            terms: BTreeMap::new(),
        }
    }

    pub fn scalar(n: usize, c: Scalar) -> Self {
        let mut x = Self::zero(n);
        x.add_term(0, &c);
        x
    }

    /// The basis monomial `e_S` for `S` given as a bit mask.
    pub fn basis(n: usize, mask: u32) -> Self {
        let mut x = Self::zero(n);
        x.add_term(mask, &Scalar::one());
        x
    }

    /// The generator `e_{i+1}`.
    pub fn generator(n: usize, i: usize) -> Self {
        Self::basis(n, 1 << i)
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn terms(&self) -> impl Iterator<Item = (u32, &Scalar)> {
        self.terms.iter().map(|(m, c)| (*m, c))
    }

    pub fn coeff(&self, mask: u32) -> Scalar {
        self.terms.get(&mask).cloned().unwrap_or_default()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn add_term(&mut self, mask: u32, c: &Scalar) {
        let v = &self.coeff(mask) + c;
        if v.is_zero() {
            self.terms.remove(&mask);
        } else {
            self.terms.insert(mask, v);
        }
    }

    pub fn add(&self, o: &CliffordElement) -> CliffordElement {
        let mut x = self.clone();
        for (m, c) in o.terms() {
            x.add_term(m, c);
        }
        x
    }

    pub fn scale(&self, s: &Scalar) -> CliffordElement {
        let mut x = Self::zero(self.n);
        for (m, c) in self.terms() {
            x.add_term(m, &(c * s));
        }
        x
    }
}

/// Product in `Cliff(q)`: `e_i^2 = a_i` and `e_i e_j = -e_j e_i`.
pub fn clifford_multiply(x: &CliffordElement, y: &CliffordElement, q: &DiagonalForm) -> Result<CliffordElement, Error> {
    if x.n != q.n() || y.n != q.n() {
        return Err(Error::DimensionMismatch(format!(
            "elements in {} and {} generators, form in {}",
            x.n,
            y.n,
            q.n()
        )));
    }
    let mut out = CliffordElement::zero(q.n());
    for (a, ca) in x.terms() {
        for (b, cb) in y.terms() {
            let (s, m) = mono_mul(a, b, q.coeffs());
            out.add_term(m, &(&(ca * cb) * &s));
        }
    }
    Ok(out)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum DivisionAlgebra {
    R,
    C,
    H,
}

impl DivisionAlgebra {
    pub fn dim(self) -> usize {
        match self {
            DivisionAlgebra::R => 1,
            DivisionAlgebra::C => 2,
            DivisionAlgebra::H => 4,
        }
    }
}

/// `Mat_size(base)`, or two copies of it when `double`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct AlgebraType {
    pub base: DivisionAlgebra,
    pub size: usize,
    pub double: bool,
}

impl fmt::Display for AlgebraType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let one = if self.size == 1 {
            format!("{:?}", self.base)
        } else {
            format!("Mat{}({:?})", self.size, self.base)
        };
        if self.double {
            write!(f, "{one} ⊕ {one}")
        } else {
            f.write_str(&one)
        }
    }
}

/// Ungraded structure of `Cliff(q)` for a unit form, read off the period-8
/// table in `p - q` (`p` generators square to `+1`, `q` to `-1`). In
/// gaussian mode the algebra is over the complex numbers.
pub fn classify(q: &DiagonalForm) -> Result<AlgebraType, Error> {
    q.check_unit()?;
    let n = q.n();
    let (base, double) = match q.mode {
        Mode::Gaussian => (DivisionAlgebra::C, n % 2 == 1),
        Mode::Rational => {
            let plus = q.coeffs().iter().filter(|a| a.is_one()).count() as i64;
            let minus = n as i64 - plus;
            match (plus - minus).rem_euclid(8) {
                0 | 2 => (DivisionAlgebra::R, false),
                1 => (DivisionAlgebra::R, true),
                3 | 7 => (DivisionAlgebra::C, false),
                4 | 6 => (DivisionAlgebra::H, false),
                _ => (DivisionAlgebra::H, true),
            }
        }
    };
    // over C the algebra has complex dimension 2^n
    let dim = 1usize << n;
    let per = dim / if double { 2 } else { 1 };
    let scalar_dim = match q.mode {
        Mode::Gaussian => 1,
        Mode::Rational => base.dim(),
    };
    let size = ((per / scalar_dim) as f64).sqrt().round() as usize;
    debug_assert_eq!(size * size * scalar_dim, per);
    Ok(AlgebraType { base, size, double })
}
