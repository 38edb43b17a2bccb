use serde::{Deserialize, Serialize};

use super::{Grading, MFMorphism, MatrixFactorization, PolyMatrix};
use crate::exactalg::{is_quasi_homogeneous, Mode, Poly, Scalar, WeightSystem};
use crate::Error;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum TrivialFlavor {
    /// `(f·I, I)`
    FThenId,
    /// `(I, f·I)`
    IdThenF,
}

/// `(f·I, I)` or `(I, f·I)` of rank `r`. Graded when `weights` is given and
/// `f` is quasi-homogeneous for it.
pub fn trivial_mf(
    r: usize,
    flavor: TrivialFlavor,
    f: &Poly,
    vars: &[String],
    mode: Mode,
    weights: Option<&WeightSystem>,
) -> Result<MatrixFactorization, Error> {
    let n = vars.len();
    let fi = PolyMatrix::scalar(r, f);
    let id = PolyMatrix::identity(r, n);
    let grading = weights.filter(|w| is_quasi_homogeneous(f, w)).map(|w| {
        let d = w.degree as i64;
        let (deg1, deg0) = match flavor {
            TrivialFlavor::FThenId => (vec![0; r], vec![d; r]),
            TrivialFlavor::IdThenF => (vec![0; r], vec![0; r]),
        };
        Grading {
            weights: w.clone(),
            deg1,
            deg0,
        }
    });
    let (d1, d0) = match flavor {
        TrivialFlavor::FThenId => (fi, id),
        TrivialFlavor::IdThenF => (id, fi),
    };
    MatrixFactorization::new(mode, vars.to_vec(), f.clone(), d1, d0, grading)
}

/// Tensor product over disjoint variable sets, a factorization of `f + f'`
/// in the variables of `p` followed by those of `q`.
///
/// Odd half `(P1⊗Q0) ⊕ (P0⊗Q1)`, even half `(P0⊗Q0) ⊕ (P1⊗Q1)`, with
/// `d1 = [[d1⊗1, 1⊗d1'], [-1⊗d0', d0⊗1]]` and
/// `d0 = [[d0⊗1, -1⊗d1'], [1⊗d0', d1⊗1]]`.
/// Within a block the index of `e_i ⊗ e_k` is `i * rank(Q-part) + k`.
pub fn tensor(p: &MatrixFactorization, q: &MatrixFactorization) -> Result<MatrixFactorization, Error> {
    if p.mode != q.mode {
        return Err(Error::ModeMismatch(format!("{} vs {}", p.mode, q.mode)));
    }
    if let Some(v) = p.vars.iter().find(|v| q.vars.contains(v)) {
        return Err(Error::VariableCollision(format!(
            "variable '{v}' occurs in both factors"
        )));
    }
    let nx = p.nvars();
    let ny = q.nvars();
    let n = nx + ny;
    let mx: Vec<usize> = (0..nx).collect();
    let my: Vec<usize> = (nx..n).collect();
    let (pd1, pd0) = (p.d1.embed(n, &mx), p.d0.embed(n, &mx));
    let (qd1, qd0) = (q.d1.embed(n, &my), q.d0.embed(n, &my));
    let (r1, r0, s1, s0) = (p.rank1(), p.rank0(), q.rank1(), q.rank0());
    let id = |k| PolyMatrix::identity(k, n);

    let d1 = PolyMatrix::block2(
        &pd1.kron(&id(s0)),
        &id(r0).kron(&qd1),
        &id(r1).kron(&qd0).neg(),
        &pd0.kron(&id(s1)),
    );
    let d0 = PolyMatrix::block2(
        &pd0.kron(&id(s0)),
        &id(r1).kron(&qd1).neg(),
        &id(r0).kron(&qd0),
        &pd1.kron(&id(s1)),
    );
    let f = &p.f.embed(n, &mx) + &q.f.embed(n, &my);
    let mut vars = p.vars.clone();
    vars.extend(q.vars.iter().cloned());

    let grading = match (&p.grading, &q.grading) {
        (Some(a), Some(b)) => a.weights.concat(&b.weights).map(|w| {
            let d = w.degree as i64;
            let pairs = |x: &[i64], y: &[i64], shift: i64| -> Vec<i64> {
                x.iter().flat_map(|&u| y.iter().map(move |&v| u + v + shift)).collect()
            };
            let mut deg1 = pairs(&a.deg1, &b.deg0, 0);
            deg1.extend(pairs(&a.deg0, &b.deg1, 0));
            let mut deg0 = pairs(&a.deg0, &b.deg0, 0);
            deg0.extend(pairs(&a.deg1, &b.deg1, d));
            Grading { weights: w, deg1, deg0 }
        }),
        _ => None,
    };
    MatrixFactorization::new(p.mode, vars, f, d1, d0, grading)
}

/// Koszul stabilization `E_f` for `f = Σ g_i x_{v_i}`.
///
/// The basis is the exterior algebra on `n = decomposition.len()`
/// generators: subsets as bitmasks, odd subsets for `P1` and even subsets
/// for `P0`, each in increasing binary-counter order. The differential is
/// contraction by the `x_{v_i}` plus left wedge with `Σ g_i e_i`. When
/// `weights` is given and everything is homogeneous, the subset `S` gets
/// degree `floor(|S|/2)·d - Σ_{i∈S} w(x_{v_i})`.
pub fn koszul_stabilization(
    f: &Poly,
    vars: &[String],
    mode: Mode,
    decomposition: &[(Poly, usize)],
    weights: Option<&WeightSystem>,
) -> Result<MatrixFactorization, Error> {
    let nv = vars.len();
    let n = decomposition.len();
    if n == 0 || n > 24 {
        return Err(Error::Invalid(format!(
            "decomposition must have between 1 and 24 terms, got {n}"
        )));
    }
    let mut seen = vec![false; nv];
    let mut sum = Poly::zero(nv);
    for (g, v) in decomposition {
        if *v >= nv || seen[*v] {
            return Err(Error::Invalid(format!(
                "variable index {v} is out of range or repeated"
            )));
        }
        seen[*v] = true;
        if g.nvars() != nv {
            return Err(Error::DimensionMismatch("g_i in the wrong ring".into()));
        }
        sum = &sum + &(g * &Poly::var(nv, *v));
    }
    if &sum != f {
        return Err(Error::DecompositionFails);
    }
    let odd: Vec<u32> = (0..1u32 << n).filter(|s| s.count_ones() % 2 == 1).collect();
    let even: Vec<u32> = (0..1u32 << n).filter(|s| s.count_ones() % 2 == 0).collect();
    let pos = |s: u32| -> usize { (s >> 1) as usize };
    // within each parity class, the index of a subset is (subset >> 1):
    // masks of a fixed parity are determined by their top n-1 bits.
    debug_assert!(odd.iter().enumerate().all(|(k, &s)| pos(s) == k));
    debug_assert!(even.iter().enumerate().all(|(k, &s)| pos(s) == k));
    let half = 1usize << (n - 1);
    let xs: Vec<Poly> = decomposition.iter().map(|(_, v)| Poly::var(nv, *v)).collect();
    let sign = |s: u32, i: usize| -> Scalar {
        if (s & ((1u32 << i) - 1)).count_ones().is_multiple_of(2) {
            Scalar::one()
        } else {
            Scalar::from_int(-1)
        }
    };
    // `from` has one parity, the image the other.
    let build = |from: &[u32]| -> PolyMatrix {
        let mut m = PolyMatrix::zeros(half, half, nv);
        for (col, &s) in from.iter().enumerate() {
            for i in 0..n {
                let bit = 1u32 << i;
                let (t, p) = if s & bit != 0 {
                    (s & !bit, &xs[i])
                } else {
                    (s | bit, &decomposition[i].0)
                };
                if p.is_zero() {
                    continue;
                }
                let row = pos(t);
                let v = m.get(row, col) + &p.scale(&sign(s, i));
                m.set(row, col, v);
            }
        }
        m
    };
    let d1 = build(&odd);
    let d0 = build(&even);
    let grading = weights.and_then(|w| {
        if w.nvars() != nv || !is_quasi_homogeneous(f, w) {
            return None;
        }
        let d = w.degree as i64;
        let deg = |s: u32| -> i64 {
            let wsum: i64 = (0..n)
                .filter(|i| s & (1 << i) != 0)
                .map(|i| w.weights[decomposition[i].1] as i64)
                .sum();
            (s.count_ones() / 2) as i64 * d - wsum
        };
        Some(Grading {
            weights: w.clone(),
            deg1: odd.iter().map(|&s| deg(s)).collect(),
            deg0: even.iter().map(|&s| deg(s)).collect(),
        })
    });
    Ok(MatrixFactorization::new(mode, vars.to_vec(), f.clone(), d1, d0, grading)?.keep_grading_if_consistent())
}

/// Output of [`strip_trivial_summands_with_maps`]: the reduced factorization
/// `Q`, an inclusion `Q -> P` and a projection `P -> Q` with
/// `projection ∘ inclusion = id_Q`.
#[derive(Debug, Clone)]
pub struct StripResult {
    pub reduced: MatrixFactorization,
    pub inclusion: MFMorphism,
    pub projection: MFMorphism,
    /// Number of rank-one trivial summands split off.
    pub removed: usize,
}

/// Splits off trivial rank-one summands until no entry of `d1` or `d0` is a
/// nonzero constant.
pub fn strip_trivial_summands(p: &MatrixFactorization) -> MatrixFactorization {
    strip_trivial_summands_with_maps(p).reduced
}

struct Work {
    a: PolyMatrix,
    b: PolyMatrix,
    r: PolyMatrix,
    rinv: PolyMatrix,
    c: PolyMatrix,
    cinv: PolyMatrix,
}

impl Work {
    /// Clears row `i` and column `j` of `a` around the unit pivot `a[i,j]`,
    /// keeping `a = r·a₀·c` and `b = cinv·b₀·rinv`.
    fn eliminate(&mut self, i: usize, j: usize) {
        let pinv = self.a.get(i, j).as_constant().expect("unit pivot").inv();
        for k in 0..self.a.rows() {
            if k == i || self.a.get(k, j).is_zero() {
                continue;
            }
            let x = self.a.get(k, j).scale(&pinv);
            row_axpy(&mut self.a, k, i, &(-&x));
            row_axpy(&mut self.r, k, i, &(-&x));
            col_axpy(&mut self.b, i, k, &x);
            col_axpy(&mut self.rinv, i, k, &x);
        }
        for l in 0..self.a.cols() {
            if l == j || self.a.get(i, l).is_zero() {
                continue;
            }
            let y = self.a.get(i, l).scale(&pinv);
            col_axpy(&mut self.a, l, j, &(-&y));
            col_axpy(&mut self.c, l, j, &(-&y));
            row_axpy(&mut self.b, j, l, &y);
            row_axpy(&mut self.cinv, j, l, &y);
        }
        let keep = |n: usize, drop: usize| -> Vec<usize> { (0..n).filter(|&x| x != drop).collect() };
        let (ar, ac) = (keep(self.a.rows(), i), keep(self.a.cols(), j));
        self.a = self.a.select(&ar, &ac);
        self.b = self.b.select(&ac, &ar);
        self.r = self.r.select(&ar, &all(self.r.cols()));
        self.rinv = self.rinv.select(&all(self.rinv.rows()), &ar);
        self.c = self.c.select(&all(self.c.rows()), &ac);
        self.cinv = self.cinv.select(&ac, &all(self.cinv.cols()));
    }

    fn swap(&mut self) {
        std::mem::swap(&mut self.a, &mut self.b);
        std::mem::swap(&mut self.r, &mut self.cinv);
        std::mem::swap(&mut self.c, &mut self.rinv);
    }
}

fn all(n: usize) -> Vec<usize> {
    (0..n).collect()
}

/// `row_dst += x · row_src`.
fn row_axpy(m: &mut PolyMatrix, dst: usize, src: usize, x: &Poly) {
    for col in 0..m.cols() {
        let s = m.get(src, col);
        if !s.is_zero() {
            let v = m.get(dst, col) + &(s * x);
            m.set(dst, col, v);
        }
    }
}

/// `col_dst += x · col_src`.
fn col_axpy(m: &mut PolyMatrix, dst: usize, src: usize, x: &Poly) {
    for row in 0..m.rows() {
        let s = m.get(row, src);
        if !s.is_zero() {
            let v = m.get(row, dst) + &(s * x);
            m.set(row, dst, v);
        }
    }
}

fn find_unit(m: &PolyMatrix) -> Option<(usize, usize)> {
    m.entries()
        .find(|(_, _, p)| !p.is_zero() && p.as_constant().is_some())
        .map(|(i, j, _)| (i, j))
}

pub fn strip_trivial_summands_with_maps(p: &MatrixFactorization) -> StripResult {
    let n = p.nvars();
    // (a, b) = (d1, d0), tracked as a = r·a₀·c and b = cinv·b₀·rinv
    let mut w = Work {
        a: p.d1.clone(),
        b: p.d0.clone(),
        r: PolyMatrix::identity(p.rank0(), n),
        rinv: PolyMatrix::identity(p.rank0(), n),
        c: PolyMatrix::identity(p.rank1(), n),
        cinv: PolyMatrix::identity(p.rank1(), n),
    };
    let mut deg1 = p.grading.as_ref().map(|g| g.deg1.clone());
    let mut deg0 = p.grading.as_ref().map(|g| g.deg0.clone());
    let mut removed = 0;
    loop {
        if let Some((i, j)) = find_unit(&w.a) {
            w.eliminate(i, j);
            if let (Some(d1), Some(d0)) = (&mut deg1, &mut deg0) {
                d0.remove(i);
                d1.remove(j);
            }
        } else if let Some((i, j)) = find_unit(&w.b) {
            w.swap();
            w.eliminate(i, j);
            w.swap();
            if let (Some(d1), Some(d0)) = (&mut deg1, &mut deg0) {
                d1.remove(i);
                d0.remove(j);
            }
        } else {
            break;
        }
        removed += 1;
    }
    let grading = p.grading.as_ref().map(|g| Grading {
        weights: g.weights.clone(),
        deg1: deg1.unwrap(),
        deg0: deg0.unwrap(),
    });
    let reduced = MatrixFactorization {
        mode: p.mode,
        vars: p.vars.clone(),
        f: p.f.clone(),
        d1: w.a,
        d0: w.b,
        grading,
    }
    .keep_grading_if_consistent();
    // new P0 basis = r·old, new P1 basis coordinates = cinv·old
    let inclusion = MFMorphism {
        source: reduced.clone(),
        target: p.clone(),
        a1: w.c,
        a0: w.rinv,
    };
    let projection = MFMorphism {
        source: p.clone(),
        target: reduced.clone(),
        a1: w.cinv,
        a0: w.r,
    };
    StripResult {
        reduced,
        inclusion,
        projection,
        removed,
    }
}
