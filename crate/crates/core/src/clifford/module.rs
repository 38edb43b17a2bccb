use serde::{Deserialize, Serialize};
use serde_json::Value;

use super::algebra::DiagonalForm;
use crate::exactalg::{parse_poly, Matrix, Mode, Monomial, Poly, Scalar, WeightSystem};
use crate::mfcore::{Grading, MatrixFactorization, PolyMatrix};
use crate::Error;

/// A `Z/2`-graded module `M1 ⊕ M0` over `Cliff(q)`. Generator `e_i` acts by
/// `down[i]: M1 -> M0` (an `m0 x m1` matrix) and `up[i]: M0 -> M1`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GradedCliffordModule {
    pub form: DiagonalForm,
    pub m1: usize,
    pub m0: usize,
    pub down: Vec<Matrix>,
    pub up: Vec<Matrix>,
}

impl GradedCliffordModule {
    /// Checks shapes and every Clifford relation.
    pub fn new(form: DiagonalForm, m1: usize, m0: usize, down: Vec<Matrix>, up: Vec<Matrix>) -> Result<Self, Error> {
        let m = Self::new_unchecked(form, m1, m0, down, up)?;
        m.check_relations()?;
        Ok(m)
    }

    /// Checks shapes and scalar modes only.
    pub fn new_unchecked(
        form: DiagonalForm,
        m1: usize,
        m0: usize,
        down: Vec<Matrix>,
        up: Vec<Matrix>,
    ) -> Result<Self, Error> {
        let n = form.n();
        if down.len() != n || up.len() != n {
            return Err(Error::LengthMismatch {
                expected: n,
                got: down.len().min(up.len()),
            });
        }
        for i in 0..n {
            if (down[i].rows, down[i].cols) != (m0, m1) || (up[i].rows, up[i].cols) != (m1, m0) {
                return Err(Error::DimensionMismatch(format!(
                    "generator {} acts by {}x{} and {}x{} matrices, expected {m0}x{m1} and {m1}x{m0}",
                    i + 1,
                    down[i].rows,
                    down[i].cols,
                    up[i].rows,
                    up[i].cols
                )));
            }
            if form.mode == Mode::Rational
                && !(down[i].data.iter().all(Scalar::is_real) && up[i].data.iter().all(Scalar::is_real))
            {
                return Err(Error::ModeMismatch("gaussian entry in a rational module".into()));
            }
        }
        Ok(GradedCliffordModule { form, m1, m0, down, up })
    }

    pub fn n(&self) -> usize {
        self.form.n()
    }

    pub fn mode(&self) -> Mode {
        self.form.mode
    }

    /// `e_i^2 = a_i` on both parities and `e_i e_j + e_j e_i = 0` for `i != j`.
    pub fn check_relations(&self) -> Result<(), Error> {
        let n = self.n();
        for i in 0..n {
            let a = &self.form.coeffs()[i];
            if self.up[i].mul(&self.down[i]) != Matrix::scalar(self.m1, a)
                || self.down[i].mul(&self.up[i]) != Matrix::scalar(self.m0, a)
            {
                return Err(Error::RelationViolation(format!("e{0}*e{0} != {a}", i + 1)));
            }
        }
        for i in 0..n {
            for j in i + 1..n {
                let on0 = self.down[i].mul(&self.up[j]).add(&self.down[j].mul(&self.up[i]));
                let on1 = self.up[i].mul(&self.down[j]).add(&self.up[j].mul(&self.down[i]));
                if !on0.is_zero() || !on1.is_zero() {
                    return Err(Error::RelationViolation(format!(
                        "e{}*e{} + e{}*e{} != 0",
                        i + 1,
                        j + 1,
                        j + 1,
                        i + 1
                    )));
                }
            }
        }
        Ok(())
    }

    /// The unit module `k` in even degree over the empty form.
    pub fn unit(mode: Mode) -> Self {
        GradedCliffordModule {
            form: DiagonalForm::new(mode, Vec::new()).expect("empty form"),
            m1: 0,
            m0: 1,
            down: Vec::new(),
            up: Vec::new(),
        }
    }

    pub fn direct_sum(&self, o: &GradedCliffordModule) -> Result<Self, Error> {
        if self.form != o.form {
            return Err(Error::Invalid("modules over different forms".into()));
        }
        let down = (0..self.n()).map(|i| block_diag(&self.down[i], &o.down[i])).collect();
        let up = (0..self.n()).map(|i| block_diag(&self.up[i], &o.up[i])).collect();
        Ok(GradedCliffordModule {
            form: self.form.clone(),
            m1: self.m1 + o.m1,
            m0: self.m0 + o.m0,
            down,
            up,
        })
    }

    /// The same module in new bases: `g1`, `g0` are the base changes of
    /// `M1`, `M0` and `g1_inv`, `g0_inv` their inverses.
    pub fn conjugate(&self, g1: &Matrix, g1_inv: &Matrix, g0: &Matrix, g0_inv: &Matrix) -> Self {
        GradedCliffordModule {
            form: self.form.clone(),
            m1: self.m1,
            m0: self.m0,
            down: self.down.iter().map(|d| g0.mul(d).mul(g1_inv)).collect(),
            up: self.up.iter().map(|u| g1.mul(u).mul(g0_inv)).collect(),
        }
    }

    /// Restriction of scalars to the first `k` generators.
    pub fn restrict(&self, k: usize) -> Self {
        GradedCliffordModule {
            form: self.form.truncated(k),
            m1: self.m1,
            m0: self.m0,
            down: self.down[..k].to_vec(),
            up: self.up[..k].to_vec(),
        }
    }

    /// Action of the even basis monomial `e_S` on `M0`.
    pub fn even_monomial_on_m0(&self, mask: u32) -> Matrix {
        debug_assert!(mask.count_ones().is_multiple_of(2));
        let mut p = Matrix::identity(self.m0);
        let mut on_even = true;
        // rightmost generator acts first
        for i in (0..self.n()).rev() {
            if mask >> i & 1 == 1 {
                p = if on_even {
                    self.up[i].mul(&p)
                } else {
                    self.down[i].mul(&p)
                };
                on_even = !on_even;
            }
        }
        p
    }
}

fn block_diag(a: &Matrix, d: &Matrix) -> Matrix {
    let mut m = Matrix::zeros(a.rows + d.rows, a.cols + d.cols);
    place(&mut m, a, 0, 0);
    place(&mut m, d, a.rows, a.cols);
    m
}

fn place(m: &mut Matrix, b: &Matrix, r0: usize, c0: usize) {
    for i in 0..b.rows {
        for j in 0..b.cols {
            m[(r0 + i, c0 + j)] = b[(i, j)].clone();
        }
    }
}

fn block2(a: &Matrix, b: &Matrix, c: &Matrix, d: &Matrix) -> Matrix {
    let mut m = Matrix::zeros(a.rows + c.rows, a.cols + b.cols);
    place(&mut m, a, 0, 0);
    place(&mut m, b, 0, a.cols);
    place(&mut m, c, a.rows, 0);
    place(&mut m, d, a.rows, a.cols);
    m
}

/// Default variable names `x1, ..., xn`.
pub fn default_vars(prefix: &str, n: usize) -> Vec<String> {
    (1..=n).map(|i| format!("{prefix}{i}")).collect()
}

/// The factorization `(Σ x_i·down_i, Σ x_i·up_i)` of `q`, graded with all
/// weights 1.
pub fn beh_theta(m: &GradedCliffordModule, vars: &[String]) -> Result<MatrixFactorization, Error> {
    m.check_relations()?;
    let n = m.n();
    if vars.len() != n {
        return Err(Error::LengthMismatch {
            expected: n,
            got: vars.len(),
        });
    }
    let linear = |mats: &[Matrix], rows: usize, cols: usize| {
        let mut out = PolyMatrix::zeros(rows, cols, n);
        for r in 0..rows {
            for c in 0..cols {
                let mut p = Poly::zero(n);
                for (i, mat) in mats.iter().enumerate() {
                    let mut e = vec![0u32; n];
                    e[i] = 1;
                    p.add_term(Monomial(e), &mat[(r, c)]);
                }
                out.set(r, c, p);
            }
        }
        out
    };
    let d1 = linear(&m.down, m.m0, m.m1);
    let d0 = linear(&m.up, m.m1, m.m0);
    let grading = Grading {
        weights: WeightSystem::standard(n, 2),
        deg1: vec![-1; m.m1],
        deg0: vec![0; m.m0],
    };
    let mf = MatrixFactorization::new(m.mode(), vars.to_vec(), m.form.poly(), d1, d0, Some(grading))?;
    Ok(mf)
}

/// Reads the Clifford action off a factorization of `q` with linear entries.
pub fn mf_to_clifford_module(p: &MatrixFactorization, q: &DiagonalForm) -> Result<GradedCliffordModule, Error> {
    let n = q.n();
    if p.nvars() != n || p.f != q.poly() {
        return Err(Error::FormMismatch);
    }
    if p.mode != q.mode {
        return Err(Error::ModeMismatch("factorization and form differ in mode".into()));
    }
    let extract = |m: &PolyMatrix, name: &str| -> Result<Vec<Matrix>, Error> {
        let mut out = vec![Matrix::zeros(m.rows(), m.cols()); n];
        for (r, c, poly) in m.entries() {
            for (mono, coef) in poly.terms() {
                let i = match mono.0.iter().position(|&e| e == 1) {
                    Some(i) if mono.0.iter().sum::<u32>() == 1 => i,
                    _ => {
                        return Err(Error::NonlinearEntry(format!(
                            "{name}[{r}][{c}] = {}",
                            poly.to_string_with(&p.vars)
                        )))
                    }
                };
                out[i][(r, c)] = coef.clone();
            }
        }
        Ok(out)
    };
    let down = extract(&p.d1, "d1")?;
    let up = extract(&p.d0, "d0")?;
    GradedCliffordModule::new(q.clone(), p.rank1(), p.rank0(), down, up)
}

/// `M ⊗ M'` over `q ⊕ q'` with the Koszul sign on the second factor.
///
/// The odd part is `(M1⊗M0') ⊕ (M0⊗M1')` and the even part
/// `(M0⊗M0') ⊕ (M1⊗M1')`, matching the factorization tensor product, so
/// that `beh_theta` of the result is the tensor product of the factors'
/// images on the nose.
pub fn graded_tensor(m: &GradedCliffordModule, mp: &GradedCliffordModule) -> Result<GradedCliffordModule, Error> {
    m.check_relations()?;
    mp.check_relations()?;
    let form = m.form.direct_sum(&mp.form)?;
    let (a1, a0, b1, b0) = (m.m1, m.m0, mp.m1, mp.m0);
    let id = Matrix::identity;
    let z = Matrix::zeros;
    let mut down = Vec::with_capacity(form.n());
    let mut up = Vec::with_capacity(form.n());
    for i in 0..m.n() {
        down.push(block2(
            &m.down[i].kron(&id(b0)),
            &z(a0 * b0, a0 * b1),
            &z(a1 * b1, a1 * b0),
            &m.up[i].kron(&id(b1)),
        ));
        up.push(block2(
            &m.up[i].kron(&id(b0)),
            &z(a1 * b0, a1 * b1),
            &z(a0 * b1, a0 * b0),
            &m.down[i].kron(&id(b1)),
        ));
    }
    let minus = Scalar::from_int(-1);
    for j in 0..mp.n() {
        down.push(block2(
            &z(a0 * b0, a1 * b0),
            &id(a0).kron(&mp.down[j]),
            &id(a1).kron(&mp.up[j]).scale(&minus),
            &z(a1 * b1, a0 * b1),
        ));
        up.push(block2(
            &z(a1 * b0, a0 * b0),
            &id(a1).kron(&mp.down[j]).scale(&minus),
            &id(a0).kron(&mp.up[j]),
            &z(a0 * b1, a1 * b1),
        ));
    }
    GradedCliffordModule::new(form, a1 * b0 + a0 * b1, a0 * b0 + a1 * b1, down, up)
}

/// Real 2x2 building blocks: identity, the swap, the reflection and the
/// rotation by a right angle.
const PAULI: [[[i64; 2]; 2]; 4] = [[[1, 0], [0, 1]], [[0, 1], [1, 0]], [[1, 0], [0, -1]], [[0, -1], [1, 0]]];

/// Four-fold tensor word in the 2x2 blocks, first letter most significant.
fn word_matrix(w: [usize; 4]) -> Matrix {
    w.iter().fold(Matrix::identity(1), |acc, &k| {
        acc.kron(&Matrix::from_ints(&[&PAULI[k][0], &PAULI[k][1]]))
    })
}

fn word_anticommutes(a: [usize; 4], b: [usize; 4]) -> bool {
    let clashes = a.iter().zip(&b).filter(|(&x, &y)| x != 0 && y != 0 && x != y).count();
    clashes % 2 == 1
}

/// Eight pairwise anti-commuting 16x16 matrices squaring to `-I`, each odd
/// for the grading by index parity.
///
/// They are tensor words in the blocks above: the first eight words in
/// lexicographic order (depth-first) that square to `-I` (an odd number of
/// rotations), anti-commute with the parity operator `I⊗I⊗I⊗Z` (last
/// letter a swap or a rotation) and anti-commute with each other.
pub fn x8_generators() -> Vec<Matrix> {
    x8_generators_signed(false)
}

/// As [`x8_generators`], squaring to `+I` when `positive`.
pub fn x8_generators_signed(positive: bool) -> Vec<Matrix> {
    let rotations = if positive { 0 } else { 1 };
    let words: Vec<[usize; 4]> = (0..256)
        .map(|k| [k >> 6 & 3, k >> 4 & 3, k >> 2 & 3, k & 3])
        .filter(|w| w.iter().filter(|&&x| x == 3).count() % 2 == rotations)
        .filter(|w| word_anticommutes(*w, [0, 0, 0, 2]))
        .collect();
    fn search(words: &[[usize; 4]], from: usize, chosen: &mut Vec<[usize; 4]>) -> bool {
        if chosen.len() == 8 {
            return true;
        }
        for k in from..words.len() {
            if chosen.iter().all(|c| word_anticommutes(*c, words[k])) {
                chosen.push(words[k]);
                if search(words, k + 1, chosen) {
                    return true;
                }
                chosen.pop();
            }
        }
        false
    }
    let mut chosen = Vec::new();
    assert!(search(&words, 0, &mut chosen), "no anti-commuting octet");
    chosen.into_iter().map(word_matrix).collect()
}

/// The column module of `Mat16(R) = Cliff(-u_1^2 - ... - u_8^2)`: `R^16`
/// graded by index parity, so `M0` holds the even and `M1` the odd
/// coordinates.
pub fn column_module_x8() -> GradedCliffordModule {
    column_module_x8_signed(false)
}

/// The column module over `+u_1^2 + ... + u_8^2` when `positive`.
pub fn column_module_x8_signed(positive: bool) -> GradedCliffordModule {
    let gens = x8_generators_signed(positive);
    let even: Vec<usize> = (0..16).step_by(2).collect();
    let odd: Vec<usize> = (1..16).step_by(2).collect();
    let pick = |g: &Matrix, rows: &[usize], cols: &[usize]| {
        Matrix::from_rows(
            rows.iter()
                .map(|&r| cols.iter().map(|&c| g[(r, c)].clone()).collect())
                .collect(),
        )
    };
    let down = gens.iter().map(|g| pick(g, &even, &odd)).collect();
    let up = gens.iter().map(|g| pick(g, &odd, &even)).collect();
    let form = if positive {
        DiagonalForm::positive_definite(Mode::Rational, 8)
    } else {
        DiagonalForm::negative_definite(8)
    };
    GradedCliffordModule::new(form, 8, 8, down, up).expect("the octet satisfies the Clifford relations")
}

/// Text form of a module. Scalars are integers or expression strings.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ModuleJson {
    #[serde(default = "default_mode")]
    pub mode: Mode,
    pub n: usize,
    pub form: Vec<Value>,
    pub m1: usize,
    pub m0: usize,
    pub rho: Vec<RhoJson>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RhoJson {
    pub up: Vec<Vec<Value>>,
    pub down: Vec<Vec<Value>>,
}

fn default_mode() -> Mode {
    Mode::Rational
}

fn scalar_from_json(v: &Value, mode: Mode) -> Result<Scalar, Error> {
    match v {
        Value::Number(x) => x
            .as_i64()
            .map(Scalar::from_int)
            .ok_or_else(|| Error::Invalid(format!("{x} is not an integer; use a string like \"1/2\""))),
        Value::String(s) => parse_poly(s, &[], mode)?
            .as_constant()
            .ok_or_else(|| Error::Invalid(format!("'{s}' is not a constant"))),
        other => Err(Error::Invalid(format!("{other} is not a scalar"))),
    }
}

fn scalar_to_json(s: &Scalar) -> Value {
    match s.to_i64() {
        Some(k) => Value::from(k),
        None => Value::from(s.to_string()),
    }
}

fn matrix_from_json(rows: &[Vec<Value>], r: usize, c: usize, mode: Mode, what: &str) -> Result<Matrix, Error> {
    if rows.len() != r || rows.iter().any(|row| row.len() != c) {
        return Err(Error::DimensionMismatch(format!("{what} must be {r}x{c}")));
    }
    let mut m = Matrix::zeros(r, c);
    for (i, row) in rows.iter().enumerate() {
        for (j, v) in row.iter().enumerate() {
            m[(i, j)] = scalar_from_json(v, mode)?;
        }
    }
    Ok(m)
}

fn matrix_to_json(m: &Matrix) -> Vec<Vec<Value>> {
    m.to_rows()
        .iter()
        .map(|r| r.iter().map(scalar_to_json).collect())
        .collect()
}

impl ModuleJson {
    pub fn to_module(&self) -> Result<GradedCliffordModule, Error> {
        if self.form.len() != self.n || self.rho.len() != self.n {
            return Err(Error::LengthMismatch {
                expected: self.n,
                got: if self.form.len() != self.n {
                    self.form.len()
                } else {
                    self.rho.len()
                },
            });
        }
        let coeffs = self
            .form
            .iter()
            .map(|v| scalar_from_json(v, self.mode))
            .collect::<Result<Vec<_>, _>>()?;
        let form = DiagonalForm::new(self.mode, coeffs)?;
        let mut down = Vec::new();
        let mut up = Vec::new();
        for (i, r) in self.rho.iter().enumerate() {
            down.push(matrix_from_json(
                &r.down,
                self.m0,
                self.m1,
                self.mode,
                &format!("rho[{i}].down"),
            )?);
            up.push(matrix_from_json(
                &r.up,
                self.m1,
                self.m0,
                self.mode,
                &format!("rho[{i}].up"),
            )?);
        }
        GradedCliffordModule::new(form, self.m1, self.m0, down, up)
    }

    pub fn from_module(m: &GradedCliffordModule) -> Self {
        ModuleJson {
            mode: m.mode(),
            n: m.n(),
            form: m.form.coeffs().iter().map(scalar_to_json).collect(),
            m1: m.m1,
            m0: m.m0,
            rho: (0..m.n())
                .map(|i| RhoJson {
                    up: matrix_to_json(&m.up[i]),
                    down: matrix_to_json(&m.down[i]),
                })
                .collect(),
        }
    }
}

impl GradedCliffordModule {
    pub fn from_json_str(s: &str) -> Result<Self, Error> {
        serde_json::from_str::<ModuleJson>(s)?.to_module()
    }

    pub fn to_json_value(&self) -> Value {
        serde_json::to_value(ModuleJson::from_module(self)).expect("serializable")
    }
}
