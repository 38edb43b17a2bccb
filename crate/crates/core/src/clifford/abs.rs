//! Graded irreducibles, the groups `A_n = M(C_n) / i*(M(C_{n+1}))` and the
//! Bott pairing.
//!
//! Irreducibles come from primitive idempotents of the twisted group algebra:
//! a maximal set of commuting basis monomials `h_k` with `h_k^2 = 1` (after
//! scaling by `i` in gaussian mode) gives `e = Π (1 + h_k) / 2`, and the
//! left ideal `A·e` is an irreducible module. With `e` even, `A·e` is
//! graded by word parity. Changing the signs of the `h_k` runs through all
//! isomorphism classes, which are told apart by their traces on the central
//! basis monomials (every other basis monomial has trace zero).

use std::rc::Rc;

use num_bigint::BigInt;
use num_traits::{ToPrimitive, Zero};
use rustc_hash::FxHashMap;
use serde::Serialize;

use super::algebra::{commutes, mono_mul, DiagonalForm};
use super::module::{graded_tensor, GradedCliffordModule};
use crate::exactalg::linalg::{Matrix, SparseMatrix};
use crate::exactalg::snf::smith_normal_form;
use crate::exactalg::{Mode, Scalar};
use crate::Error;

/// Shared data of the ideals `A·e` for one choice of commuting monomials.
#[derive(Debug)]
struct IdealShape {
    coeffs: Vec<Scalar>,
    /// masks of the chosen monomials and `c_k` with `(c_k e_{S_k})^2 = 1`
    masks: Vec<u32>,
    base_c: Vec<Scalar>,
    /// GF(2) echelon of the masks: (pivot bit, mask, combination of indices)
    ech: Vec<(u32, u32, u32)>,
    /// coset representatives in increasing order
    reps: Vec<u32>,
    index: FxHashMap<u32, u32>,
}

impl IdealShape {
    fn reduce(ech: &[(u32, u32, u32)], mut mask: u32) -> (u32, u32) {
        let mut comb = 0;
        for &(pivot, m, c) in ech {
            if mask & pivot != 0 {
                mask ^= m;
                comb ^= c;
            }
        }
        (mask, comb)
    }

    fn push_echelon(ech: &mut Vec<(u32, u32, u32)>, mask: u32, id: usize) {
        let (m, c) = Self::reduce(ech, mask);
        debug_assert!(m != 0);
        let pivot = 1 << (31 - m.leading_zeros());
        ech.push((pivot, m, c ^ (1 << id)));
        ech.sort_by_key(|e| std::cmp::Reverse(e.0));
    }

    /// Greedy maximal commuting family among `candidates`.
    fn new(form: &DiagonalForm, even_only: bool) -> Self {
        let n = form.n();
        let coeffs = form.coeffs().to_vec();
        let mut masks = Vec::new();
        let mut base_c = Vec::new();
        let mut ech = Vec::new();
        for g in 1u32..(1u32 << n) {
            if even_only && g.count_ones() % 2 == 1 {
                continue;
            }
            if !masks.iter().all(|&h| commutes(g, h)) || Self::reduce(&ech, g).0 == 0 {
                continue;
            }
            let (sq, _) = mono_mul(g, g, &coeffs);
            let c = if sq.is_one() {
                Scalar::one()
            } else if (-&sq).is_one() && form.mode == Mode::Gaussian {
                Scalar::i()
            } else {
                continue;
            };
            Self::push_echelon(&mut ech, g, masks.len());
            masks.push(g);
            base_c.push(c);
        }
        let pivots: u32 = ech.iter().map(|e| e.0).fold(0, |a, b| a | b);
        let reps: Vec<u32> = (0u32..(1u32 << n)).filter(|m| m & pivots == 0).collect();
        let index = reps.iter().enumerate().map(|(k, &m)| (m, k as u32)).collect();
        IdealShape {
            coeffs,
            masks,
            base_c,
            ech,
            reps,
            index,
        }
    }
}

/// The left ideal `A·e` for one sign choice.
#[derive(Debug, Clone)]
struct Ideal {
    shape: Rc<IdealShape>,
    /// inverses of the scalings `c_k` (signs included)
    c_inv: Vec<Scalar>,
}

impl Ideal {
    fn new(shape: Rc<IdealShape>, signs: u32) -> Self {
        let c_inv = shape
            .base_c
            .iter()
            .enumerate()
            .map(|(k, c)| {
                let c = if signs >> k & 1 == 1 { -c } else { c.clone() };
                c.inv()
            })
            .collect();
        Ideal { shape, c_inv }
    }

    fn dim(&self) -> usize {
        self.shape.reps.len()
    }

    /// `e_g · (t e) = coef · (t' e)` for the basis vector `t e` at `idx`.
    fn act(&self, g: u32, idx: usize) -> (Scalar, usize) {
        let s = &self.shape;
        let t = s.reps[idx];
        let (s1, m) = mono_mul(g, t, &s.coeffs);
        let (rep, comb) = IdealShape::reduce(&s.ech, m);
        let span = m ^ rep;
        // e_m = ν^{-1} e_rep e_span
        let (nu, check) = mono_mul(rep, span, &s.coeffs);
        debug_assert_eq!(check, m);
        // Π_{k in comb} e_{S_k} = κ e_span, and each e_{S_k} e = c_k^{-1} e
        let mut kappa = Scalar::one();
        let mut acc = 0u32;
        let mut factor = Scalar::one();
        for k in 0..s.masks.len() {
            if comb >> k & 1 == 1 {
                let (c, next) = mono_mul(acc, s.masks[k], &s.coeffs);
                kappa = &kappa * &c;
                acc = next;
                factor = &factor * &self.c_inv[k];
            }
        }
        debug_assert_eq!(acc, span);
        let coef = &(&s1 * &(&nu * &kappa).inv()) * &factor;
        (coef, s.index[&rep] as usize)
    }

    /// Trace of `e_z` on the span of the representatives selected by `keep`.
    fn trace(&self, z: u32, keep: impl Fn(u32) -> bool) -> Scalar {
        let mut tr = Scalar::zero();
        for (k, &t) in self.shape.reps.iter().enumerate() {
            if keep(t) {
                let (c, j) = self.act(z, k);
                if j == k {
                    tr += &c;
                }
            }
        }
        tr
    }

    /// The graded module with `M0`, `M1` spanned by even, odd representatives.
    fn graded_module(&self, form: &DiagonalForm) -> GradedCliffordModule {
        let reps = &self.shape.reps;
        let mut local = vec![0usize; reps.len()];
        let (mut n0, mut n1) = (0, 0);
        for (k, &t) in reps.iter().enumerate() {
            if t.count_ones() % 2 == 0 {
                local[k] = n0;
                n0 += 1;
            } else {
                local[k] = n1;
                n1 += 1;
            }
        }
        let n = form.n();
        let mut down = vec![Matrix::zeros(n0, n1); n];
        let mut up = vec![Matrix::zeros(n1, n0); n];
        for i in 0..n {
            for (k, &t) in reps.iter().enumerate() {
                let (c, j) = self.act(1 << i, k);
                if t.count_ones() % 2 == 1 {
                    down[i][(local[j], local[k])] = c;
                } else {
                    up[i][(local[j], local[k])] = c;
                }
            }
        }
        GradedCliffordModule::new_unchecked(form.clone(), n1, n0, down, up).expect("consistent shapes")
    }
}

/// Basis monomials central in the even subalgebra (graded) or in the whole
/// algebra (ungraded).
fn central_monomials(n: usize, graded: bool) -> Vec<u32> {
    let gens: Vec<u32> = if graded {
        (1..n).map(|j| 1 | 1 << j).collect()
    } else {
        (0..n).map(|j| 1 << j).collect()
    };
    (0u32..(1u32 << n))
        .filter(|&z| !graded || z.count_ones() % 2 == 0)
        .filter(|&z| gens.iter().all(|&g| commutes(z, g)))
        .collect()
}

/// Pairwise non-isomorphic irreducibles with their trace vectors.
fn irreducible_ideals(form: &DiagonalForm, graded: bool) -> (Vec<Ideal>, Vec<u32>, Vec<Vec<Scalar>>) {
    let n = form.n();
    let shape = Rc::new(IdealShape::new(form, graded));
    let central = central_monomials(n, graded);
    let r = shape.masks.len();
    let mut found: Vec<Ideal> = Vec::new();
    let mut chars: Vec<Vec<Scalar>> = Vec::new();
    for signs in 0u32..(1u32 << r) {
        let ideal = Ideal::new(shape.clone(), signs);
        let ch: Vec<Scalar> = central
            .iter()
            .map(|&z| ideal.trace(z, |t| !graded || t.count_ones() % 2 == 0))
            .collect();
        if !chars.contains(&ch) {
            chars.push(ch);
            found.push(ideal);
            // the number of simple factors is at most the center's dimension
            if found.len() == central.len() {
                break;
            }
        }
    }
    (found, central, chars)
}

/// Dimensions of the ungraded irreducibles of `Cliff(q)`, one per
/// isomorphism class.
pub fn ungraded_irreducible_dims(form: &DiagonalForm) -> Result<Vec<usize>, Error> {
    form.check_unit()?;
    let (ideals, _, _) = irreducible_ideals(form, false);
    Ok(ideals.iter().map(Ideal::dim).collect())
}

/// Isomorphism classes of graded modules over `Cliff(q)`: explicit
/// irreducibles and the means to decompose any module into them.
#[derive(Debug, Clone)]
struct GradedIrreducibles {
    form: DiagonalForm,
    ideals: Vec<Ideal>,
    central: Vec<u32>,
    /// rows: coordinates of the trace vector; columns: irreducibles
    table: Vec<Vec<Scalar>>,
}

impl GradedIrreducibles {
    fn new(form: &DiagonalForm) -> Self {
        if form.n() == 0 {
            // no odd generator: k in either parity
            return GradedIrreducibles {
                form: form.clone(),
                ideals: Vec::new(),
                central: Vec::new(),
                table: vec![vec![Scalar::one(), Scalar::zero()], vec![Scalar::zero(), Scalar::one()]],
            };
        }
        let (ideals, central, chars) = irreducible_ideals(form, true);
        let table = (0..central.len())
            .map(|row| chars.iter().map(|ch| ch[row].clone()).collect())
            .collect();
        GradedIrreducibles {
            form: form.clone(),
            ideals,
            central,
            table,
        }
    }

    fn count(&self) -> usize {
        self.table.first().map_or(0, Vec::len)
    }

    fn module(&self, k: usize) -> GradedCliffordModule {
        if self.form.n() == 0 {
            let mut m = GradedCliffordModule::unit(self.form.mode);
            if k == 1 {
                (m.m0, m.m1) = (0, 1);
            }
            return m;
        }
        self.ideals[k].graded_module(&self.form)
    }

    fn dims(&self, k: usize) -> (usize, usize) {
        if self.form.n() == 0 {
            return if k == 0 { (0, 1) } else { (1, 0) };
        }
        let reps = &self.ideals[k].shape.reps;
        let odd = reps.iter().filter(|t| t.count_ones() % 2 == 1).count();
        (odd, reps.len() - odd)
    }

    fn solve(&self, trace: Vec<Scalar>) -> Result<Vec<i64>, Error> {
        let a = SparseMatrix::from_dense(&self.table);
        let b = trace
            .into_iter()
            .enumerate()
            .filter(|(_, x)| !x.is_zero())
            .map(|(i, x)| (i as u32, x))
            .collect();
        let x = a
            .solve(&b)
            .ok_or_else(|| Error::Internal("trace vector outside the span of irreducibles".into()))?;
        let mut out = vec![0i64; self.count()];
        for (j, v) in x {
            out[j as usize] = v
                .to_i64()
                .filter(|&k| k >= 0)
                .ok_or_else(|| Error::Internal(format!("multiplicity {v} is not a natural number")))?;
        }
        Ok(out)
    }

    fn multiplicities(&self, m: &GradedCliffordModule) -> Result<Vec<i64>, Error> {
        if m.form != self.form {
            return Err(Error::Invalid("module over a different form".into()));
        }
        if self.form.n() == 0 {
            return Ok(vec![m.m0 as i64, m.m1 as i64]);
        }
        let tr = self
            .central
            .iter()
            .map(|&z| {
                let a = m.even_monomial_on_m0(z);
                (0..a.rows).fold(Scalar::zero(), |s, i| &s + &a[(i, i)])
            })
            .collect();
        self.solve(tr)
    }

    /// Multiplicities of the restriction of an ideal over one more
    /// generator, without building its matrices.
    fn restricted_multiplicities(&self, ideal: &Ideal) -> Result<Vec<i64>, Error> {
        if self.form.n() == 0 {
            let odd = ideal.shape.reps.iter().filter(|t| t.count_ones() % 2 == 1).count();
            return Ok(vec![(ideal.dim() - odd) as i64, odd as i64]);
        }
        let tr = self
            .central
            .iter()
            .map(|&z| ideal.trace(z, |t| t.count_ones() % 2 == 0))
            .collect();
        self.solve(tr)
    }
}

/// The group `A(q)` of graded `Cliff(q)`-modules modulo those restricted
/// from `Cliff(q ⊕ -x^2)`, presented by the Smith normal form of the
/// restriction matrix.
#[derive(Debug, Clone)]
pub struct AbsGroup {
    irr: GradedIrreducibles,
    /// rows: irreducibles one generator up, restricted; columns: irreducibles
    pub restriction: Vec<Vec<i64>>,
    /// invariant factor of every coordinate, 0 meaning a free factor
    factors: Vec<BigInt>,
    v: Vec<Vec<BigInt>>,
}

/// The class of a module in [`AbsGroup`]: coordinates in its nontrivial
/// cyclic factors.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct AbsClass {
    pub n: usize,
    pub mode: Mode,
    /// orders of the cyclic factors, 0 for an infinite one
    pub group: Vec<u64>,
    pub coords: Vec<i64>,
    /// multiplicities of the graded irreducibles
    pub multiplicities: Vec<i64>,
}

impl AbsClass {
    pub fn is_zero(&self) -> bool {
        self.coords.iter().all(|&c| c == 0)
    }

    /// Generates an infinite cyclic factor: coordinate `±1` there and zero
    /// elsewhere.
    pub fn is_free_generator(&self) -> bool {
        let free: Vec<usize> = (0..self.group.len()).filter(|&i| self.group[i] == 0).collect();
        free.len() == 1
            && self.coords[free[0]].abs() == 1
            && (0..self.coords.len()).all(|i| i == free[0] || self.coords[i] == 0)
    }

    pub fn group_name(&self) -> String {
        group_name(&self.group)
    }
}

fn group_name(g: &[u64]) -> String {
    if g.is_empty() {
        return "0".into();
    }
    g.iter()
        .map(|&d| if d == 0 { "Z".to_string() } else { format!("Z/{d}") })
        .collect::<Vec<_>>()
        .join(" ⊕ ")
}

/// The coefficient of the added generator in `Cliff(q ⊕ a x^2)`.
const EXTENSION: i64 = -1;

impl AbsGroup {
    /// Requires a unit form; over the rationals the form must be negative
    /// definite, as for the real `C_n`.
    pub fn compute(form: &DiagonalForm) -> Result<Self, Error> {
        form.check_unit()?;
        if form.mode == Mode::Rational && !form.coeffs().iter().all(|a| (-a).is_one()) {
            return Err(Error::Invalid("real ABS groups need the negative definite form".into()));
        }
        let irr = GradedIrreducibles::new(form);
        let up = GradedIrreducibles::new(&form.extended(EXTENSION));
        let k = irr.count();
        let mut restriction = Vec::new();
        for j in 0..up.count() {
            let row = if up.form.n() == 0 {
                unreachable!("the extended form has a generator")
            } else {
                irr.restricted_multiplicities(&up.ideals[j])?
            };
            restriction.push(row);
        }
        let rows: Vec<Vec<BigInt>> = restriction
            .iter()
            .map(|r| r.iter().map(|&x| BigInt::from(x)).collect())
            .collect();
        let smith = smith_normal_form(&rows, rows.len(), k);
        let factors = (0..k)
            .map(|i| smith.diag.get(i).cloned().unwrap_or_else(BigInt::zero))
            .collect();
        Ok(AbsGroup {
            irr,
            restriction,
            factors,
            v: smith.v,
        })
    }

    pub fn form(&self) -> &DiagonalForm {
        &self.irr.form
    }

    /// Orders of the nontrivial cyclic factors, 0 for `Z`.
    pub fn invariants(&self) -> Vec<u64> {
        self.factors
            .iter()
            .filter(|d| !(*d == &BigInt::from(1)))
            .map(|d| d.to_u64().expect("small invariant factor"))
            .collect()
    }

    pub fn name(&self) -> String {
        group_name(&self.invariants())
    }

    pub fn irreducible_count(&self) -> usize {
        self.irr.count()
    }

    /// `(m1, m0)` of each graded irreducible.
    pub fn irreducible_dims(&self) -> Vec<(usize, usize)> {
        (0..self.irr.count()).map(|k| self.irr.dims(k)).collect()
    }

    pub fn irreducible(&self, k: usize) -> GradedCliffordModule {
        self.irr.module(k)
    }

    pub fn multiplicities(&self, m: &GradedCliffordModule) -> Result<Vec<i64>, Error> {
        self.irr.multiplicities(m)
    }

    /// The class of an integer combination of irreducibles.
    pub fn class_of_multiplicities(&self, x: &[i64]) -> AbsClass {
        let k = self.irr.count();
        let mut coords = Vec::new();
        let mut group = Vec::new();
        for i in 0..k {
            let d = &self.factors[i];
            if *d == BigInt::from(1) {
                continue;
            }
            let y: BigInt = (0..k).map(|j| BigInt::from(x[j]) * &self.v[j][i]).sum();
            let y = if d.is_zero() { y } else { ((y % d) + d) % d };
            coords.push(y.to_i64().expect("small coordinate"));
            group.push(d.to_u64().expect("small invariant factor"));
        }
        AbsClass {
            n: self.irr.form.n(),
            mode: self.irr.form.mode,
            group,
            coords,
            multiplicities: x.to_vec(),
        }
    }

    pub fn class_of(&self, m: &GradedCliffordModule) -> Result<AbsClass, Error> {
        Ok(self.class_of_multiplicities(&self.multiplicities(m)?))
    }
}

/// The class of `M` in the ABS group of its form.
pub fn abs_class(m: &GradedCliffordModule) -> Result<AbsClass, Error> {
    m.check_relations()?;
    AbsGroup::compute(&m.form)?.class_of(m)
}

/// `A(q) × A(q') -> A(q ⊕ q')` induced by the graded tensor product,
/// evaluated on lifts given as multiplicity vectors.
pub fn bott_pairing(ga: &AbsGroup, a: &[i64], gb: &AbsGroup, b: &[i64]) -> Result<AbsClass, Error> {
    let gc = AbsGroup::compute(&ga.form().direct_sum(gb.form())?)?;
    let mut total = vec![0i64; gc.irreducible_count()];
    for (k, &x) in a.iter().enumerate() {
        for (l, &y) in b.iter().enumerate() {
            if x * y == 0 {
                continue;
            }
            let t = graded_tensor(&ga.irreducible(k), &gb.irreducible(l))?;
            for (s, m) in total.iter_mut().zip(gc.multiplicities(&t)?) {
                *s += x * y * m;
            }
        }
    }
    Ok(gc.class_of_multiplicities(&total))
}
