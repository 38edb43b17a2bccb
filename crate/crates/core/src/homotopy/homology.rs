use std::collections::BTreeMap;

use serde::Serialize;

use super::slice::{MonoCache, MonoRule, Parity, SliceBasis, SliceDifferential};
use crate::exactalg::linalg::rank_of_columns;
use crate::mfcore::{Grading, MatrixFactorization};
use crate::Error;

/// Homology dimensions of one internal degree.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct HomologyRow {
    pub t: i64,
    pub h0: usize,
    pub h1: usize,
    pub dim_even: usize,
    pub dim_odd: usize,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct HomologyTable {
    pub rows: Vec<HomologyRow>,
    pub total_h0: usize,
    pub total_h1: usize,
    pub t_min: i64,
    pub t_max: i64,
    /// True when the stopping rule was met within the cap.
    pub complete: bool,
}

impl HomologyTable {
    pub fn totals(&self) -> (usize, usize) {
        (self.total_h0, self.total_h1)
    }
}

/// Degree bookkeeping for maps between two graded factorizations.
pub(crate) struct GradedPair<'a> {
    pub src: &'a MatrixFactorization,
    pub tgt: &'a MatrixFactorization,
    pub gs: &'a Grading,
    pub gt: &'a Grading,
    pub d: i64,
}

impl<'a> GradedPair<'a> {
    pub fn new(src: &'a MatrixFactorization, tgt: &'a MatrixFactorization) -> Result<Self, Error> {
        src.check_compatible(tgt)?;
        let gs = src
            .grading
            .as_ref()
            .ok_or_else(|| Error::Ungraded("source factorization has no grading".into()))?;
        let gt = tgt
            .grading
            .as_ref()
            .ok_or_else(|| Error::Ungraded("target factorization has no grading".into()))?;
        if gs.weights != gt.weights {
            return Err(Error::Ungraded(
                "factorizations are graded over different weight systems".into(),
            ));
        }
        Ok(GradedPair {
            src,
            tgt,
            gs,
            gt,
            d: gs.weights.degree as i64,
        })
    }

    /// Entry degree of a degree-`t` map in `block` at `(i, j)`.
    pub fn entry_degree(&self, block: u8, i: usize, j: usize, t: i64) -> i64 {
        let (s, g) = (self.gs, self.gt);
        match block {
            0 => g.deg1[i] - s.deg1[j] + t,
            1 => g.deg0[i] - s.deg0[j] + t,
            2 => g.deg0[i] - s.deg1[j] + t,
            _ => g.deg1[i] - s.deg0[j] + t + self.d,
        }
    }

    /// All `t` at which some block entry is a constant.
    pub fn unit_degrees(&self) -> Vec<i64> {
        let mut out = Vec::new();
        for b in 0..4u8 {
            let (r, c) = super::slice::block_shape(self.src, self.tgt, b);
            for i in 0..r {
                for j in 0..c {
                    out.push(-self.entry_degree(b, i, j, 0));
                }
            }
        }
        out
    }

    pub fn slice(&self, parity: Parity, t: i64, cache: &mut MonoCache) -> SliceBasis {
        SliceBasis::new(self.src, self.tgt, parity, cache, |b, i, j| {
            Some(self.entry_degree(b, i, j, t))
        })
    }

    pub fn cache(&self) -> MonoCache {
        MonoCache::new(MonoRule::Weighted(self.gs.weights.weights.clone()))
    }
}

struct RankMemo<'a> {
    pair: &'a GradedPair<'a>,
    cache: MonoCache,
    slices: BTreeMap<(bool, i64), SliceBasis>,
    ranks: BTreeMap<(bool, i64), usize>,
}

impl<'a> RankMemo<'a> {
    fn slice(&mut self, parity: Parity, t: i64) -> &SliceBasis {
        let key = (parity == Parity::Odd, t);
        if !self.slices.contains_key(&key) {
            let s = self.pair.slice(parity, t, &mut self.cache);
            self.slices.insert(key, s);
        }
        &self.slices[&key]
    }

    fn dim(&mut self, parity: Parity, t: i64) -> usize {
        self.slice(parity, t).dim()
    }

    /// Rank of `∂` out of the slice `(parity, t)`.
    fn rank(&mut self, parity: Parity, t: i64) -> usize {
        let key = (parity == Parity::Odd, t);
        if let Some(&r) = self.ranks.get(&key) {
            return r;
        }
        let t_to = match parity {
            Parity::Even => t,
            Parity::Odd => t + self.pair.d,
        };
        self.slice(parity, t);
        self.slice(parity.flip(), t_to);
        let from = &self.slices[&key];
        let to = &self.slices[&(parity == Parity::Even, t_to)];
        let r = if from.dim() == 0 || to.dim() == 0 {
            0
        } else {
            let mut diff = SliceDifferential::new(self.pair.src, self.pair.tgt, from, to);
            rank_of_columns(to.dim(), from.dim(), |j| diff.column(j as u32))
        };
        // slices are large; keep only what later degrees still need
        self.ranks.insert(key, r);
        r
    }

    fn forget_below(&mut self, t: i64) {
        self.slices.retain(|&(_, s), _| s >= t);
    }
}

/// Degreewise dimensions of `H^0` and `H^1` of `Hom(P, P')`.
///
/// Degrees below the first nonempty slice contribute nothing. Upward, the
/// scan covers every degree where a constant block entry sits plus the
/// socle degree of the weights, then continues until both dimensions vanish
/// on `max_w` consecutive degrees. Exceeding `cap` slices is an error
/// carrying the partial table.
pub fn hom_homology_dims(p: &MatrixFactorization, q: &MatrixFactorization, cap: usize) -> Result<HomologyTable, Error> {
    let pair = GradedPair::new(p, q)?;
    let w = &pair.gs.weights;
    let margin = w.max_weight() as i64;
    let socle: i64 = w.weights.iter().map(|&wi| pair.d - 2 * wi as i64).sum();
    let units = pair.unit_degrees();
    if units.is_empty() {
        return Ok(HomologyTable {
            rows: Vec::new(),
            total_h0: 0,
            total_h1: 0,
            t_min: 0,
            t_max: -1,
            complete: true,
        });
    }
    // a slice is nonempty iff some entry degree is >= 0
    let t_lo = *units.iter().min().unwrap();
    let base_hi = *units.iter().max().unwrap() + socle.max(0);

    let mut memo = RankMemo {
        pair: &pair,
        cache: pair.cache(),
        slices: BTreeMap::new(),
        ranks: BTreeMap::new(),
    };
    let mut rows = Vec::new();
    let mut zeros_run = 0i64;
    let mut t = t_lo;
    let complete = loop {
        if rows.len() >= cap {
            break false;
        }
        let dim_even = memo.dim(Parity::Even, t);
        let dim_odd = memo.dim(Parity::Odd, t);
        let r_in = memo.rank(Parity::Odd, t - pair.d);
        let r_even = memo.rank(Parity::Even, t);
        let r_odd = memo.rank(Parity::Odd, t);
        let h0 = dim_even - r_even - r_in;
        let h1 = dim_odd - r_odd - r_even;
        rows.push(HomologyRow {
            t,
            h0,
            h1,
            dim_even,
            dim_odd,
        });
        memo.forget_below(t - pair.d + 1);
        zeros_run = if h0 == 0 && h1 == 0 { zeros_run + 1 } else { 0 };
        if t > base_hi && zeros_run >= margin {
            break true;
        }
        t += 1;
    };
    let table = HomologyTable {
        total_h0: rows.iter().map(|r| r.h0).sum(),
        total_h1: rows.iter().map(|r| r.h1).sum(),
        t_min: t_lo,
        t_max: rows.last().map_or(t_lo, |r| r.t),
        rows,
        complete,
    };
    if complete {
        Ok(table)
    } else {
        Err(Error::WindowCapExceeded {
            cap,
            partial: Box::new(table),
        })
    }
}

/// Default cap on the number of internal degrees scanned.
pub const DEFAULT_WINDOW_CAP: usize = 256;
