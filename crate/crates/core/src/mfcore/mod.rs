//! Matrix factorizations and their object-level constructions.
//!
//! A factorization is a pair `d1: P1 -> P0`, `d0: P0 -> P1` of polynomial
//! matrices with `d1·d0 = f·I` and `d0·d1 = f·I`. Matrices act on column
//! vectors, so `d1` has `rank0` rows and `rank1` columns.
//!
//! Grading: generator degrees `deg1` (of `P1`) and `deg0` (of `P0`) over a
//! weight system of degree `d`, such that entry `(i,j)` of `d1` is
//! homogeneous of degree `deg0[i] - deg1[j]` and entry `(i,j)` of `d0` of
//! degree `deg1[i] - deg0[j] + d`.

mod construct;
mod json;
mod matrix;
mod morphism;
mod signed;

pub use construct::{koszul_stabilization, strip_trivial_summands, tensor, trivial_mf, TrivialFlavor};
pub use construct::{strip_trivial_summands_with_maps, StripResult};
pub use json::{GradingJson, MfJson, MorphismJson};
pub use matrix::PolyMatrix;
pub use morphism::MFMorphism;
pub use signed::{tensor_associator, BasisLabels, Label, SignedIso, SignedPerm};

use serde::Serialize;

use crate::exactalg::weights::is_homogeneous_of;
use crate::exactalg::{Mode, Poly, WeightSystem};
use crate::Error;

/// Generator degrees of both halves over a weight system.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Grading {
    pub weights: WeightSystem,
    pub deg1: Vec<i64>,
    pub deg0: Vec<i64>,
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct MatrixFactorization {
    pub mode: Mode,
    pub vars: Vec<String>,
    pub f: Poly,
    pub d1: PolyMatrix,
    pub d0: PolyMatrix,
    pub grading: Option<Grading>,
}

/// Outcome of [`MatrixFactorization::validate`].
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ValidationReport {
    pub valid: bool,
    pub rank1: usize,
    pub rank0: usize,
    pub graded: bool,
    /// First violated identity, if any.
    pub violation: Option<String>,
}

impl MatrixFactorization {
    /// Assembles a factorization after checking shapes, variable counts and
    /// scalar modes. The product identities are not checked; see
    /// [`validate`](Self::validate) and [`new_checked`](Self::new_checked).
    pub fn new(
        mode: Mode,
        vars: Vec<String>,
        f: Poly,
        d1: PolyMatrix,
        d0: PolyMatrix,
        grading: Option<Grading>,
    ) -> Result<Self, Error> {
        let n = vars.len();
        for (name, p) in [("f", f.nvars()), ("d1", d1.nvars()), ("d0", d0.nvars())] {
            if p != n {
                return Err(Error::DimensionMismatch(format!(
                    "{name} lives in {p} variables, expected {n}"
                )));
            }
        }
        if d1.rows() != d0.cols() || d1.cols() != d0.rows() {
            return Err(Error::DimensionMismatch(format!(
                "d1 is {}x{} but d0 is {}x{}",
                d1.rows(),
                d1.cols(),
                d0.rows(),
                d0.cols()
            )));
        }
        if !f.is_zero() && d1.rows() != d1.cols() {
            return Err(Error::DimensionMismatch(format!(
                "halves of ranks {} and {} over a nonzero f",
                d1.cols(),
                d1.rows()
            )));
        }
        if mode == Mode::Rational {
            let real =
                f.is_real() && d1.entries().all(|(_, _, p)| p.is_real()) && d0.entries().all(|(_, _, p)| p.is_real());
            if !real {
                return Err(Error::ModeMismatch(
                    "gaussian coefficient in a rational factorization".into(),
                ));
            }
        }
        if let Some(g) = &grading {
            if g.weights.nvars() != n {
                return Err(Error::LengthMismatch {
                    expected: n,
                    got: g.weights.nvars(),
                });
            }
            if g.deg1.len() != d1.cols() || g.deg0.len() != d1.rows() {
                return Err(Error::DimensionMismatch("degree vectors do not match the ranks".into()));
            }
        }
        Ok(MatrixFactorization {
            mode,
            vars,
            f,
            d1,
            d0,
            grading,
        })
    }

    /// [`new`](Self::new) followed by a full validation.
    pub fn new_checked(
        mode: Mode,
        vars: Vec<String>,
        f: Poly,
        d1: PolyMatrix,
        d0: PolyMatrix,
        grading: Option<Grading>,
    ) -> Result<Self, Error> {
        let mf = Self::new(mode, vars, f, d1, d0, grading)?;
        let report = mf.validate();
        match report.violation {
            None => Ok(mf),
            Some(v) => Err(Error::Invalid(v)),
        }
    }

    /// Rank of the odd half `P1`.
    pub fn rank1(&self) -> usize {
        self.d1.cols()
    }

    /// Rank of the even half `P0`.
    pub fn rank0(&self) -> usize {
        self.d1.rows()
    }

    /// Common rank of the halves (the odd rank when `f = 0`).
    pub fn rank(&self) -> usize {
        self.rank1()
    }

    pub fn nvars(&self) -> usize {
        self.vars.len()
    }

    pub fn is_graded(&self) -> bool {
        self.grading.is_some()
    }

    /// Largest total degree among the entries of `d1` and `d0`.
    pub fn max_entry_degree(&self) -> u32 {
        self.d1
            .max_degree()
            .into_iter()
            .chain(self.d0.max_degree())
            .max()
            .unwrap_or(0)
    }

    /// Checks both product identities and, when graded, homogeneity of every
    /// entry. Reports the first violation.
    pub fn validate(&self) -> ValidationReport {
        let violation = self.first_violation();
        ValidationReport {
            valid: violation.is_none(),
            rank1: self.rank1(),
            rank0: self.rank0(),
            graded: self.is_graded(),
            violation,
        }
    }

    fn first_violation(&self) -> Option<String> {
        let n = self.nvars();
        let f1 = PolyMatrix::scalar(self.rank0(), &self.f);
        let f0 = PolyMatrix::scalar(self.rank1(), &self.f);
        for (name, prod, want) in [
            ("d1*d0", self.d1.mul(&self.d0), f1),
            ("d0*d1", self.d0.mul(&self.d1), f0),
        ] {
            if let Some((i, j, p)) = prod.entries().find(|(i, j, p)| *p != want.get(*i, *j)) {
                return Some(format!(
                    "{name} entry ({i},{j}) is {} but should be {}",
                    p.to_string_with(&self.vars),
                    want.get(i, j).to_string_with(&self.vars)
                ));
            }
        }
        let g = self.grading.as_ref()?;
        let d = g.weights.degree as i64;
        if !crate::exactalg::is_quasi_homogeneous(&self.f, &g.weights) {
            return Some("f is not quasi-homogeneous for the weights".into());
        }
        let w = &g.weights.weights;
        debug_assert_eq!(w.len(), n);
        for (i, j, p) in self.d1.entries() {
            if !is_homogeneous_of(p, w, g.deg0[i] - g.deg1[j]) {
                return Some(format!("d1 entry ({i},{j}) is not homogeneous of the expected degree"));
            }
        }
        for (i, j, p) in self.d0.entries() {
            if !is_homogeneous_of(p, w, g.deg1[i] - g.deg0[j] + d) {
                return Some(format!("d0 entry ({i},{j}) is not homogeneous of the expected degree"));
            }
        }
        None
    }

    /// `P[1] = (-d0, -d1)`, with `P0` becoming the odd half.
    pub fn shift(&self) -> MatrixFactorization {
        let grading = self.grading.as_ref().map(|g| Grading {
            weights: g.weights.clone(),
            deg1: g.deg0.clone(),
            deg0: g.deg1.iter().map(|x| x + g.weights.degree as i64).collect(),
        });
        MatrixFactorization {
            mode: self.mode,
            vars: self.vars.clone(),
            f: self.f.clone(),
            d1: self.d0.neg(),
            d0: self.d1.neg(),
            grading,
        }
    }

    /// Checks that two factorizations live over the same ring and `f`.
    pub fn check_compatible(&self, o: &MatrixFactorization) -> Result<(), Error> {
        if self.vars != o.vars || self.f != o.f {
            return Err(Error::FMismatch);
        }
        if self.mode != o.mode {
            return Err(Error::ModeMismatch(format!("{} vs {}", self.mode, o.mode)));
        }
        Ok(())
    }

    /// Block-diagonal sum.
    pub fn direct_sum(&self, o: &MatrixFactorization) -> Result<MatrixFactorization, Error> {
        self.check_compatible(o)?;
        let grading = match (&self.grading, &o.grading) {
            (Some(a), Some(b)) if a.weights == b.weights => Some(Grading {
                weights: a.weights.clone(),
                deg1: a.deg1.iter().chain(&b.deg1).copied().collect(),
                deg0: a.deg0.iter().chain(&b.deg0).copied().collect(),
            }),
            _ => None,
        };
        Ok(MatrixFactorization {
            mode: self.mode,
            vars: self.vars.clone(),
            f: self.f.clone(),
            d1: PolyMatrix::block_diag(&self.d1, &o.d1),
            d0: PolyMatrix::block_diag(&self.d0, &o.d0),
            grading,
        })
    }

    /// The presentation `d1` of `coker(d1)` over `k[x]/(f)`.
    pub fn coker_presentation(&self) -> PolyMatrix {
        self.d1.clone()
    }

    /// Attaches generator degrees deduced from the entries, if consistent.
    pub fn with_inferred_grading(&self, weights: &WeightSystem) -> Option<MatrixFactorization> {
        let grading = infer_grading(&self.d1, &self.d0, weights)?;
        let mut out = self.clone();
        out.grading = Some(grading);
        out.first_violation().is_none().then_some(out)
    }

    /// Drops the grading if the entries are not homogeneous for it.
    pub(crate) fn keep_grading_if_consistent(mut self) -> MatrixFactorization {
        if self.grading.is_some() && self.first_violation().is_some() {
            self.grading = None;
        }
        self
    }
}

/// Deduces generator degrees making every entry homogeneous, by propagating
/// along nonzero entries. Each connected block of generators is normalized
/// so that its first generator has degree 0. Returns `None` when some entry
/// is inhomogeneous or the constraints conflict.
pub fn infer_grading(d1: &PolyMatrix, d0: &PolyMatrix, w: &WeightSystem) -> Option<Grading> {
    let r1 = d1.cols();
    let r0 = d1.rows();
    let d = w.degree as i64;
    // nodes: 0..r1 odd generators, r1..r1+r0 even generators
    // edge (a, b, delta): deg[a] = deg[b] + delta
    let mut adj: Vec<Vec<(usize, i64)>> = vec![Vec::new(); r1 + r0];
    let entry_degree = |p: &Poly| -> Option<Option<i64>> {
        let mut it = p
            .terms()
            .map(|(m, _)| crate::exactalg::weights::mono_wdeg(m, &w.weights));
        match it.next() {
            None => Some(None),
            Some(first) => it.all(|x| x == first).then_some(Some(first)),
        }
    };
    for (i, j, p) in d1.entries() {
        // deg0[i] - deg1[j] = e
        if let Some(e) = entry_degree(p)? {
            adj[r1 + i].push((j, e));
            adj[j].push((r1 + i, -e));
        }
    }
    for (i, j, p) in d0.entries() {
        // deg1[i] - deg0[j] + d = e
        if let Some(e) = entry_degree(p)? {
            adj[i].push((r1 + j, e - d));
            adj[r1 + j].push((i, d - e));
        }
    }
    let mut deg: Vec<Option<i64>> = vec![None; r1 + r0];
    for start in 0..r1 + r0 {
        if deg[start].is_some() {
            continue;
        }
        deg[start] = Some(0);
        let mut stack = vec![start];
        while let Some(a) = stack.pop() {
            let da = deg[a].unwrap();
            for &(b, delta) in &adj[a] {
                let want = da - delta;
                match deg[b] {
                    None => {
                        deg[b] = Some(want);
                        stack.push(b);
                    }
                    Some(x) if x != want => return None,
                    _ => {}
                }
            }
        }
    }
    let deg: Vec<i64> = deg.into_iter().map(Option::unwrap).collect();
    Some(Grading {
        weights: w.clone(),
        deg1: deg[..r1].to_vec(),
        deg0: deg[r1..].to_vec(),
    })
}

#[cfg(test)]
mod tests;
