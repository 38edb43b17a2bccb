//! The Hochster theta pairing `θ(P, P') = l(Tor_2(M, N)) - l(Tor_1(M, N))`
//! for `M = coker d1`, `N = coker d1'` over `R = k[x]/(f)`.
//!
//! `M` has the 2-periodic free resolution
//! `... -> R^{r1} -d0-> R^{r0} -d1-> R^{r1} -d0-> ... ` ending in `R^{r0}`.
//! Since `f` kills `N`, tensoring with `N` over `R` is tensoring over `k[x]`,
//! so each `F_i ⊗ N` is `N^{r_i}` and every graded piece is a quotient of a
//! finite span of monomial vectors by the image of `d1'`. Lengths of the
//! graded modules supported at the origin are total dimensions.

use std::collections::BTreeMap;

use rustc_hash::FxHashMap;
use serde::Serialize;

use crate::exactalg::linalg::rank_of_columns;
use crate::exactalg::weights::monomials_of_weighted_degree;
use crate::exactalg::{milnor_report, Monomial, Poly, Scalar, SparseVec};
use crate::homotopy::{HomologyRow, HomologyTable, DEFAULT_WINDOW_CAP};
use crate::mfcore::{MFMorphism, MatrixFactorization, PolyMatrix};
use crate::Error;

/// Dimensions of one `Tor_i` by internal degree.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct TorTable {
    pub i: usize,
    pub length: usize,
    /// `(t, dim Tor_i in degree t)` for every scanned degree.
    pub rows: Vec<(i64, usize)>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ThetaReport {
    pub tor1: usize,
    pub tor2: usize,
    pub tor3: usize,
    pub tor4: usize,
    pub theta: i64,
    pub odd_periodic: bool,
    pub even_periodic: bool,
    /// Both periodicity checks hold.
    pub valid: bool,
    pub milnor_number: usize,
    pub tables: Vec<TorTable>,
}

struct MonoIndex {
    weights: Vec<u32>,
    by_degree: BTreeMap<i64, (Vec<Monomial>, FxHashMap<Monomial, usize>)>,
}

impl MonoIndex {
    fn ensure(&mut self, deg: i64) -> &(Vec<Monomial>, FxHashMap<Monomial, usize>) {
        let w = &self.weights;
        self.by_degree.entry(deg).or_insert_with(|| {
            let ms = monomials_of_weighted_degree(w, deg);
            let idx = ms.iter().enumerate().map(|(k, m)| (m.clone(), k)).collect();
            (ms, idx)
        })
    }
}

/// The degree-`t` piece of a free module on generators of the given degrees,
/// spanned by monomial multiples of the generators.
struct Space {
    offsets: Vec<usize>,
    degs: Vec<i64>,
    dim: usize,
}

impl Space {
    fn new(gens: &[i64], t: i64, monos: &mut MonoIndex) -> Space {
        let mut offsets = Vec::with_capacity(gens.len());
        let mut degs = Vec::with_capacity(gens.len());
        let mut dim = 0;
        for &g in gens {
            offsets.push(dim);
            degs.push(t - g);
            dim += monos.ensure(t - g).0.len();
        }
        Space { offsets, degs, dim }
    }
}

/// Columns of a degree-preserving map given by polynomial entries:
/// `entries(g)` lists the `(target generator, entry)` pairs of source
/// generator `g`.
fn map_columns<'a>(
    src: &Space,
    tgt: &Space,
    monos: &mut MonoIndex,
    entries: impl Fn(usize) -> Vec<(usize, &'a Poly)>,
) -> Vec<SparseVec> {
    let mut cols = Vec::new();
    for g in 0..src.offsets.len() {
        let ms = monos.ensure(src.degs[g]).0.clone();
        let targets = entries(g);
        for m in &ms {
            let mut acc: BTreeMap<u32, Scalar> = BTreeMap::new();
            for &(h, p) in &targets {
                for (mono, c) in p.terms() {
                    let prod = m.mul(mono);
                    let k = monos.ensure(tgt.degs[h]).1[&prod];
                    let slot = acc.entry((tgt.offsets[h] + k) as u32).or_default();
                    *slot = &*slot + c;
                }
            }
            cols.push(acc.into_iter().filter(|(_, c)| !c.is_zero()).collect());
        }
    }
    cols
}

fn rank(nrows: usize, cols: &[SparseVec]) -> usize {
    rank_of_columns(nrows, cols.len(), |j| cols[j].clone())
}

/// One term `F_i ⊗ N` of the tensored resolution.
struct Term<'a> {
    /// Generator degrees of `F_i`.
    gens: Vec<i64>,
    /// Differential `F_i -> F_{i-1}` (rows index `F_{i-1}`), absent for `i = 0`.
    out: Option<&'a PolyMatrix>,
}

struct TorSetup<'a> {
    n0: Vec<i64>,
    n1: Vec<i64>,
    d1n: &'a PolyMatrix,
    socle: i64,
    margin: i64,
}

impl TorSetup<'_> {
    fn pair_degrees(&self, gens: &[i64], ngens: &[i64]) -> Vec<i64> {
        gens.iter().flat_map(|a| ngens.iter().map(move |b| a + b)).collect()
    }

    /// The degree-`t` piece of `F_i ⊗ N0'` and the columns of `id ⊗ d1'`
    /// spanning the relations.
    fn lifted(&self, term: &Term, t: i64, monos: &mut MonoIndex) -> (Space, Vec<SparseVec>) {
        let x = Space::new(&self.pair_degrees(&term.gens, &self.n0), t, monos);
        let u = Space::new(&self.pair_degrees(&term.gens, &self.n1), t, monos);
        let (nk, nl) = (self.n0.len(), self.n1.len());
        let d1n = self.d1n;
        let rel = map_columns(&u, &x, monos, |g| {
            let (a, l) = (g / nl, g % nl);
            (0..nk)
                .filter(|&k| !d1n.get(k, l).is_zero())
                .map(|k| (a * nk + k, d1n.get(k, l)))
                .collect()
        });
        (x, rel)
    }

    /// Columns of `D ⊗ id_N` from `F_src ⊗ N` to `F_tgt ⊗ N` in degree `t`.
    fn tensored(&self, d: &PolyMatrix, src: &Space, tgt: &Space, monos: &mut MonoIndex) -> Vec<SparseVec> {
        let nk = self.n0.len();
        map_columns(src, tgt, monos, |g| {
            let (j, k) = (g / nk, g % nk);
            (0..d.rows())
                .filter(|&i| !d.get(i, j).is_zero())
                .map(|i| (i * nk + k, d.get(i, j)))
                .collect()
        })
    }

    /// `dim Tor_i` in degree `t` for the terms `F_{i+1} -> F_i -> F_{i-1}`.
    fn slice_dim(&self, above: &Term, here: &Term, below: &Term, t: i64, monos: &mut MonoIndex) -> usize {
        let (x_here, u_here) = self.lifted(here, t, monos);
        if x_here.dim == 0 {
            return 0;
        }
        let (x_below, u_below) = self.lifted(below, t, monos);
        let (x_above, _) = self.lifted(above, t, monos);
        let beta = self.tensored(here.out.expect("positive index"), &x_here, &x_below, monos);
        let alpha = self.tensored(above.out.expect("positive index"), &x_above, &x_here, monos);
        let mut beta_u = beta;
        beta_u.extend(u_below.iter().cloned());
        let mut alpha_u = alpha;
        alpha_u.extend(u_here);
        x_here.dim + rank(x_below.dim, &u_below) - rank(x_below.dim, &beta_u) - rank(x_here.dim, &alpha_u)
    }
}

fn grading_pair<'a>(
    p: &'a MatrixFactorization,
    q: &'a MatrixFactorization,
) -> Result<(&'a crate::mfcore::Grading, &'a crate::mfcore::Grading), Error> {
    p.check_compatible(q)?;
    let gp = p
        .grading
        .as_ref()
        .ok_or_else(|| Error::Ungraded("first factorization has no grading".into()))?;
    let gq = q
        .grading
        .as_ref()
        .ok_or_else(|| Error::Ungraded("second factorization has no grading".into()))?;
    if gp.weights != gq.weights {
        return Err(Error::Ungraded(
            "factorizations are graded over different weight systems".into(),
        ));
    }
    Ok((gp, gq))
}

/// `θ(P, P')` with the default window cap.
pub fn theta(p: &MatrixFactorization, q: &MatrixFactorization) -> Result<ThetaReport, Error> {
    theta_with_cap(p, q, DEFAULT_WINDOW_CAP)
}

/// `θ(P, P')`, scanning at most `cap` internal degrees per `Tor_i`.
///
/// Each `Tor_i` is scanned from its lowest nonempty degree through the top
/// generator degree plus the socle degree, then until `max_w` consecutive
/// degrees vanish.
pub fn theta_with_cap(p: &MatrixFactorization, q: &MatrixFactorization, cap: usize) -> Result<ThetaReport, Error> {
    let (gp, gq) = grading_pair(p, q)?;
    if p.f.is_zero() {
        return Err(Error::Invalid("theta needs f != 0".into()));
    }
    let w = &gp.weights;
    let milnor = milnor_report(&p.f, w)?;
    let d = w.degree as i64;
    // generator degrees of the free modules
    let neg = |v: &[i64], s: i64| -> Vec<i64> { v.iter().map(|x| s - x).collect() };
    let setup = TorSetup {
        n0: neg(&gq.deg0, 0),
        n1: neg(&gq.deg1, 0),
        d1n: &q.d1,
        socle: w.weights.iter().map(|&wi| d - 2 * wi as i64).sum::<i64>().max(0),
        margin: w.max_weight() as i64,
    };
    // F_{2k} = P0 shifted by k·d, F_{2k+1} = P1 shifted by k·d
    let term = |i: usize| -> Term {
        let s = (i / 2) as i64 * d;
        if i.is_multiple_of(2) {
            Term {
                gens: neg(&gp.deg0, s),
                out: (i > 0).then_some(&p.d0),
            }
        } else {
            Term {
                gens: neg(&gp.deg1, s),
                out: Some(&p.d1),
            }
        }
    };
    let mut monos = MonoIndex {
        weights: w.weights.clone(),
        by_degree: BTreeMap::new(),
    };
    let mut tables = Vec::new();
    for i in 1..=4 {
        let (above, here, below) = (term(i + 1), term(i), term(i - 1));
        let degs = setup.pair_degrees(&here.gens, &setup.n0);
        let (Some(&lo), Some(&hi)) = (degs.iter().min(), degs.iter().max()) else {
            tables.push(TorTable {
                i,
                length: 0,
                rows: Vec::new(),
            });
            continue;
        };
        let base_hi = hi + setup.socle;
        let mut rows = Vec::new();
        let mut zeros = 0;
        let mut t = lo;
        loop {
            if rows.len() >= cap {
                return Err(window_error(cap, i, &rows));
            }
            let h = setup.slice_dim(&above, &here, &below, t, &mut monos);
            rows.push((t, h));
            zeros = if h == 0 { zeros + 1 } else { 0 };
            if t > base_hi && zeros >= setup.margin {
                break;
            }
            t += 1;
        }
        monos.by_degree.clear();
        tables.push(TorTable {
            i,
            length: rows.iter().map(|r| r.1).sum(),
            rows,
        });
    }
    let len = |i: usize| tables[i - 1].length;
    let (tor1, tor2, tor3, tor4) = (len(1), len(2), len(3), len(4));
    let odd_periodic = tor1 == tor3;
    let even_periodic = tor2 == tor4;
    Ok(ThetaReport {
        tor1,
        tor2,
        tor3,
        tor4,
        theta: tor2 as i64 - tor1 as i64,
        odd_periodic,
        even_periodic,
        valid: odd_periodic && even_periodic,
        milnor_number: milnor.mu,
        tables,
    })
}

/// Partial scan of `Tor_i` as a homology table: odd `i` fills `h1`, even `i`
/// fills `h0`.
fn window_error(cap: usize, i: usize, rows: &[(i64, usize)]) -> Error {
    let rows: Vec<HomologyRow> = rows
        .iter()
        .map(|&(t, h)| HomologyRow {
            t,
            h0: if i.is_multiple_of(2) { h } else { 0 },
            h1: if i % 2 == 1 { h } else { 0 },
            dim_even: 0,
            dim_odd: 0,
        })
        .collect();
    let table = HomologyTable {
        total_h0: rows.iter().map(|r| r.h0).sum(),
        total_h1: rows.iter().map(|r| r.h1).sum(),
        t_min: rows.first().map_or(0, |r| r.t),
        t_max: rows.last().map_or(-1, |r| r.t),
        rows,
        complete: false,
    };
    Error::WindowCapExceeded {
        cap,
        partial: Box::new(table),
    }
}

/// One checked identity of the bilinearity report.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct RelationCheck {
    pub relation: String,
    pub lhs: i64,
    pub rhs: i64,
    pub holds: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct BilinearityReport {
    pub checks: Vec<RelationCheck>,
    pub passed: bool,
}

fn theta_value(p: &MatrixFactorization, n: &MatrixFactorization) -> Result<i64, Error> {
    let r = theta(p, n)?;
    if !r.valid {
        return Err(Error::Internal("Tor lengths are not 2-periodic".into()));
    }
    Ok(r.theta)
}

/// Checks that `θ(-, N)` is additive on sums, changes sign under shift and
/// satisfies `θ(cone α, N) = θ(P', N) - θ(P, N)` for each cycle `α: P -> P'`.
pub fn theta_bilinearity_check(
    p: &MatrixFactorization,
    p2: &MatrixFactorization,
    n: &MatrixFactorization,
    cycles: &[MFMorphism],
) -> Result<BilinearityReport, Error> {
    let mut checks = Vec::new();
    let mut push = |relation: &str, lhs: i64, rhs: i64| {
        checks.push(RelationCheck {
            relation: relation.into(),
            lhs,
            rhs,
            holds: lhs == rhs,
        })
    };
    let tp = theta_value(p, n)?;
    let tp2 = theta_value(p2, n)?;
    push(
        "θ(P⊕P'', N) = θ(P, N) + θ(P'', N)",
        theta_value(&p.direct_sum(p2)?, n)?,
        tp + tp2,
    );
    push("θ(P[1], N) = -θ(P, N)", theta_value(&p.shift(), n)?, -tp);
    push("θ(P'', P) = θ(P, P'')", theta_value(p2, p)?, theta_value(p, p2)?);
    for a in cycles {
        let lhs = theta_value(&a.cone()?, n)?;
        let rhs = theta_value(&a.target, n)? - theta_value(&a.source, n)?;
        push("θ(cone α, N) = θ(target, N) - θ(source, N)", lhs, rhs);
    }
    let passed = checks.iter().all(|c| c.holds);
    Ok(BilinearityReport { checks, passed })
}

#[cfg(test)]
mod tests;
