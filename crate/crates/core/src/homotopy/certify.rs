//! Exact homotopy certificates found by degreewise linear solves and always
//! re-verified by matrix multiplication.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use super::homology::GradedPair;
use super::slice::{apply_differential, MonoCache, MonoRule, Parity, SliceBasis, SliceDifferential};
use crate::exactalg::linalg::{normalize, Echelon, SparseVec};
use crate::exactalg::weights::mono_wdeg;
use crate::exactalg::Scalar;
use crate::mfcore::{MFMorphism, MatrixFactorization, PolyMatrix};
use crate::Error;

/// An odd map `h = (h1: P1 -> P0', h0: P0 -> P1')`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct OddMap {
    pub h1: PolyMatrix,
    pub h0: PolyMatrix,
}

impl OddMap {
    pub fn zero(src: &MatrixFactorization, tgt: &MatrixFactorization) -> Self {
        let n = src.nvars();
        OddMap {
            h1: PolyMatrix::zeros(tgt.rank0(), src.rank1(), n),
            h0: PolyMatrix::zeros(tgt.rank1(), src.rank0(), n),
        }
    }

    /// `∂h = (d0'h1 + h0 d1, d1'h0 + h1 d0)` as an even map `(·1, ·0)`.
    pub fn boundary(&self, src: &MatrixFactorization, tgt: &MatrixFactorization) -> [PolyMatrix; 2] {
        apply_differential(src, tgt, Parity::Odd, [&self.h1, &self.h0])
    }
}

/// How a search was carried out.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum SearchMethod {
    /// Homogeneous solve in the single relevant degree; a negative answer
    /// is conclusive.
    Graded,
    /// Entries of total degree at most the bound; a negative answer is
    /// inconclusive.
    Bounded(u32),
}

#[derive(Debug, Clone)]
pub struct NullHomotopyResult {
    pub homotopy: Option<OddMap>,
    pub method: SearchMethod,
}

/// `α = ∂h` with `h` of total degree at most the bound (or homogeneous of the
/// right degree when `α` is graded). The returned `h` has been re-verified.
pub fn find_null_homotopy(alpha: &MFMorphism, bound: Option<u32>) -> Result<NullHomotopyResult, Error> {
    if let Some(v) = alpha.cycle_violation() {
        return Err(Error::NotACycle(v));
    }
    let (src, tgt) = (&alpha.source, &alpha.target);
    if alpha.a1.is_zero() && alpha.a0.is_zero() {
        return Ok(NullHomotopyResult {
            homotopy: Some(OddMap::zero(src, tgt)),
            method: SearchMethod::Graded,
        });
    }
    let target = [&alpha.a1, &alpha.a0];
    if let Ok(pair) = GradedPair::new(src, tgt) {
        if let Some(t) = even_degree(&pair, target) {
            let mut cache = pair.cache();
            let odd = pair.slice(Parity::Odd, t - pair.d, &mut cache);
            let even = pair.slice(Parity::Even, t, &mut cache);
            let h = solve_boundary(src, tgt, &odd, &even, target);
            return Ok(NullHomotopyResult {
                homotopy: h,
                method: SearchMethod::Graded,
            });
        }
    }
    let b = bound.unwrap_or_else(|| default_bound(src, tgt));
    let (odd, even) = bounded_slices(src, tgt, b, Parity::Odd, target);
    Ok(NullHomotopyResult {
        homotopy: solve_boundary(src, tgt, &odd, &even, target),
        method: SearchMethod::Bounded(b),
    })
}

/// Max entry degree of the inputs plus `deg f`.
pub fn default_bound(p: &MatrixFactorization, q: &MatrixFactorization) -> u32 {
    p.max_entry_degree().max(q.max_entry_degree()) + p.f.degree().unwrap_or(0)
}

/// The internal degree of a homogeneous even map, if it has one.
fn even_degree(pair: &GradedPair, blocks: [&PolyMatrix; 2]) -> Option<i64> {
    let w = &pair.gs.weights.weights;
    let mut t = None;
    for (bi, m) in blocks.iter().enumerate() {
        for (i, j, p) in m.entries() {
            let base = pair.entry_degree(bi as u8, i, j, 0);
            for (mono, _) in p.terms() {
                let tt = mono_wdeg(mono, w) - base;
                match t {
                    None => t = Some(tt),
                    Some(x) if x != tt => return None,
                    _ => {}
                }
            }
        }
    }
    t
}

/// Slices of maps of total degree `<= b` in `parity` and of the codomain of
/// `∂` on them, enlarged to contain `extra`.
fn bounded_slices(
    src: &MatrixFactorization,
    tgt: &MatrixFactorization,
    b: u32,
    parity: Parity,
    extra: [&PolyMatrix; 2],
) -> (SliceBasis, SliceBasis) {
    let dmax = src.max_entry_degree().max(tgt.max_entry_degree());
    let emax = extra.iter().filter_map(|m| m.max_degree()).max().unwrap_or(0);
    let top = (b + dmax).max(emax) as i64;
    let mut cache = MonoCache::new(MonoRule::TotalUpTo(src.nvars()));
    let from = SliceBasis::new(src, tgt, parity, &mut cache, |_, _, _| Some(b as i64));
    let to = SliceBasis::new(src, tgt, parity.flip(), &mut cache, |_, _, _| Some(top));
    (from, to)
}

/// Echelon form of the columns of `∂: from -> to`.
fn echelon_of(
    src: &MatrixFactorization,
    tgt: &MatrixFactorization,
    from: &SliceBasis,
    to: &SliceBasis,
) -> (Echelon, Vec<SparseVec>) {
    let mut diff = SliceDifferential::new(src, tgt, from, to);
    let mut ech = Echelon::new();
    let mut kernel = Vec::new();
    for j in 0..from.dim() {
        if let Some(rel) = ech.insert(diff.column(j as u32), j as u32) {
            kernel.push(rel);
        }
    }
    (ech, kernel)
}

fn solve_boundary(
    src: &MatrixFactorization,
    tgt: &MatrixFactorization,
    odd: &SliceBasis,
    even: &SliceBasis,
    target: [&PolyMatrix; 2],
) -> Option<OddMap> {
    let rhs = even.coords(target)?;
    let (ech, _) = echelon_of(src, tgt, odd, even);
    let x = ech.express(&rhs)?;
    let [h1, h0] = odd.to_blocks(&x, src, tgt);
    let h = OddMap { h1, h0 };
    let [b1, b0] = h.boundary(src, tgt);
    (&b1 == target[0] && &b0 == target[1]).then_some(h)
}

/// Degree-zero (or bounded-degree) cycles `src -> tgt`, as morphisms.
fn cycle_basis(src: &MatrixFactorization, tgt: &MatrixFactorization, bound: Option<u32>) -> Vec<MFMorphism> {
    let (from, to) = match (bound, GradedPair::new(src, tgt)) {
        (None, Ok(pair)) => {
            let mut cache = pair.cache();
            (
                pair.slice(Parity::Even, 0, &mut cache),
                pair.slice(Parity::Odd, 0, &mut cache),
            )
        }
        (b, _) => {
            let z = PolyMatrix::zeros(0, 0, src.nvars());
            let b = b.unwrap_or_else(|| default_bound(src, tgt));
            bounded_slices(src, tgt, b, Parity::Even, [&z, &z])
        }
    };
    let (_, kernel) = echelon_of(src, tgt, &from, &to);
    kernel
        .into_iter()
        .map(|v| {
            let [a1, a0] = from.to_blocks(&v, src, tgt);
            MFMorphism {
                source: src.clone(),
                target: tgt.clone(),
                a1,
                a0,
            }
        })
        .collect()
}

/// A verified homotopy equivalence: `β∘α - 1 = ∂h` and `α∘β - 1 = ∂h'`.
#[derive(Debug, Clone)]
pub struct EquivalenceCertificate {
    pub alpha: MFMorphism,
    pub beta: MFMorphism,
    pub h: OddMap,
    pub h_prime: OddMap,
}

impl EquivalenceCertificate {
    /// Exact re-check of every identity.
    pub fn verify(&self) -> bool {
        let (p, q) = (&self.alpha.source, &self.alpha.target);
        if !self.alpha.is_cycle() || !self.beta.is_cycle() || &self.beta.source != q || &self.beta.target != p {
            return false;
        }
        let check = |x: &MatrixFactorization, first: &MFMorphism, second: &MFMorphism, h: &OddMap| {
            let comp = match second.compose(first) {
                Ok(c) => c,
                Err(_) => return false,
            };
            let id = MFMorphism::identity(x);
            let [b1, b0] = h.boundary(x, x);
            comp.a1.sub(&id.a1) == b1 && comp.a0.sub(&id.a0) == b0
        };
        check(p, &self.alpha, &self.beta, &self.h) && check(q, &self.beta, &self.alpha, &self.h_prime)
    }
}

#[derive(Debug, Clone)]
pub struct EquivalenceResult {
    pub certificate: Option<EquivalenceCertificate>,
    /// Methods tried, in order.
    pub tried: Vec<SearchMethod>,
}

/// Searches for a homotopy equivalence `P ≃ P'`. Graded inputs are first
/// tried in internal degree 0; then bounded searches with `B` and `2B`.
/// Failure is not a proof of inequivalence.
pub fn find_homotopy_equivalence(
    p: &MatrixFactorization,
    q: &MatrixFactorization,
    bound: Option<u32>,
) -> Result<EquivalenceResult, Error> {
    p.check_compatible(q)?;
    let mut tried = Vec::new();
    if GradedPair::new(p, q).is_ok() {
        tried.push(SearchMethod::Graded);
        if let Some(c) = search_equivalence(p, q, None) {
            return Ok(EquivalenceResult {
                certificate: Some(c),
                tried,
            });
        }
    }
    let b = bound.unwrap_or_else(|| default_bound(p, q));
    for bb in [b, 2 * b] {
        tried.push(SearchMethod::Bounded(bb));
        if let Some(c) = search_equivalence(p, q, Some(bb)) {
            return Ok(EquivalenceResult {
                certificate: Some(c),
                tried,
            });
        }
    }
    Ok(EquivalenceResult {
        certificate: None,
        tried,
    })
}

const ATTEMPTS: u64 = 4;

fn search_equivalence(
    p: &MatrixFactorization,
    q: &MatrixFactorization,
    bound: Option<u32>,
) -> Option<EquivalenceCertificate> {
    let forward = cycle_basis(p, q, bound);
    let backward = cycle_basis(q, p, bound);
    if forward.is_empty() || backward.is_empty() {
        // only zero maps: an equivalence exists iff both are contractible
        let zero_pq = MFMorphism::zero(p, q).ok()?;
        let zero_qp = MFMorphism::zero(q, p).ok()?;
        return solve_for_beta(p, q, &zero_pq, &[zero_qp], bound);
    }
    for attempt in 0..ATTEMPTS {
        let mut rng = ChaCha8Rng::seed_from_u64(0x5eed + attempt);
        let mut alpha = MFMorphism::zero(p, q).ok()?;
        for z in &forward {
            let c = Scalar::from_int(if attempt == 0 && forward.len() == 1 {
                1
            } else {
                rng.gen_range(-3..=3)
            });
            alpha.a1 = alpha.a1.add(&z.a1.scale(&c));
            alpha.a0 = alpha.a0.add(&z.a0.scale(&c));
        }
        if let Some(c) = solve_for_beta(p, q, &alpha, &backward, bound) {
            return Some(c);
        }
    }
    None
}

/// With `α` fixed, the conditions on `β = Σ c_k z_k`, `h`, `h'` are linear.
fn solve_for_beta(
    p: &MatrixFactorization,
    q: &MatrixFactorization,
    alpha: &MFMorphism,
    backward: &[MFMorphism],
    bound: Option<u32>,
) -> Option<EquivalenceCertificate> {
    let (hp_from, hp_to, hq_from, hq_to) = match bound {
        None => {
            let pp = GradedPair::new(p, p).ok()?;
            let qq = GradedPair::new(q, q).ok()?;
            let mut cp = pp.cache();
            let mut cq = qq.cache();
            (
                pp.slice(Parity::Odd, -pp.d, &mut cp),
                pp.slice(Parity::Even, 0, &mut cp),
                qq.slice(Parity::Odd, -qq.d, &mut cq),
                qq.slice(Parity::Even, 0, &mut cq),
            )
        }
        Some(b) => {
            let n = p.nvars();
            let e = PolyMatrix::zeros(0, 0, n);
            let compositions_deg = 2 * b;
            let (a, bb) = bounded_slices(p, p, compositions_deg, Parity::Odd, [&e, &e]);
            let (c, d) = bounded_slices(q, q, compositions_deg, Parity::Odd, [&e, &e]);
            (a, bb, c, d)
        }
    };
    let off = hp_to.dim() as u32;
    let shift = |v: SparseVec| -> SparseVec { v.into_iter().map(|(k, x)| (k + off, x)).collect() };
    let mut columns: Vec<SparseVec> = Vec::new();
    for z in backward {
        let za = z.compose(alpha).ok()?;
        let az = alpha.compose(z).ok()?;
        let mut v = hp_to.coords([&za.a1, &za.a0])?;
        v.extend(shift(hq_to.coords([&az.a1, &az.a0])?));
        columns.push(v);
    }
    let nb = columns.len();
    let neg = |v: SparseVec| -> SparseVec { v.into_iter().map(|(k, x)| (k, -x)).collect() };
    let mut dp = SliceDifferential::new(p, p, &hp_from, &hp_to);
    for j in 0..hp_from.dim() {
        columns.push(neg(dp.column(j as u32)));
    }
    let mut dq = SliceDifferential::new(q, q, &hq_from, &hq_to);
    for j in 0..hq_from.dim() {
        columns.push(neg(shift(dq.column(j as u32))));
    }
    let idp = MFMorphism::identity(p);
    let idq = MFMorphism::identity(q);
    let mut rhs = hp_to.coords([&idp.a1, &idp.a0])?;
    rhs.extend(shift(hq_to.coords([&idq.a1, &idq.a0])?));
    let rhs = normalize(rhs);

    let mut ech = Echelon::new();
    for (j, c) in columns.into_iter().enumerate() {
        ech.insert(normalize(c), j as u32);
    }
    let x = ech.express(&rhs)?;
    let mut beta = MFMorphism::zero(q, p).ok()?;
    let mut xh: SparseVec = Vec::new();
    let mut xh2: SparseVec = Vec::new();
    let hp_dim = hp_from.dim() as u32;
    for (k, c) in x {
        let k = k as usize;
        if k < nb {
            beta.a1 = beta.a1.add(&backward[k].a1.scale(&c));
            beta.a0 = beta.a0.add(&backward[k].a0.scale(&c));
        } else if ((k - nb) as u32) < hp_dim {
            xh.push(((k - nb) as u32, c));
        } else {
            xh2.push(((k - nb) as u32 - hp_dim, c));
        }
    }
    let [h1, h0] = hp_from.to_blocks(&xh, p, p);
    let [g1, g0] = hq_from.to_blocks(&xh2, q, q);
    let cert = EquivalenceCertificate {
        alpha: alpha.clone(),
        beta,
        h: OddMap { h1, h0 },
        h_prime: OddMap { h1: g1, h0: g0 },
    };
    cert.verify().then_some(cert)
}
