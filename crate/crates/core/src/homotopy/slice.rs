//! Finite slices of the Hom complex and the matrix of its differential.
//!
//! A map `P -> P'` is stored in four blocks: even maps have blocks
//! `0: P1 -> P1'` and `1: P0 -> P0'`, odd maps have blocks `2: P1 -> P0'`
//! and `3: P0 -> P1'`. A slice picks, for every block entry, a finite set of
//! monomials; its basis is the set of `monomial · E_ij`.

use std::rc::Rc;

use rustc_hash::FxHashMap;

use crate::exactalg::linalg::{normalize, SparseVec};
use crate::exactalg::weights::monomials_of_weighted_degree;
use crate::exactalg::{Monomial, Poly, Scalar};
use crate::mfcore::{MatrixFactorization, PolyMatrix};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Parity {
    Even,
    Odd,
}

impl Parity {
    pub fn blocks(self) -> [u8; 2] {
        match self {
            Parity::Even => [0, 1],
            Parity::Odd => [2, 3],
        }
    }

    pub fn flip(self) -> Parity {
        match self {
            Parity::Even => Parity::Odd,
            Parity::Odd => Parity::Even,
        }
    }
}

/// Which monomials a slice entry holds.
#[derive(Debug, Clone)]
pub enum MonoRule {
    /// Monomials of exactly the given weighted degree.
    Weighted(Vec<u32>),
    /// Monomials of total degree at most the key, in `nvars` variables.
    TotalUpTo(usize),
}

#[derive(Debug)]
pub struct MonoSet {
    pub list: Vec<Monomial>,
    pub index: FxHashMap<Monomial, u32>,
}

/// Memoized monomial sets by key.
#[derive(Debug)]
pub struct MonoCache {
    rule: MonoRule,
    sets: FxHashMap<i64, Rc<MonoSet>>,
}

impl MonoCache {
    pub fn new(rule: MonoRule) -> Self {
        MonoCache {
            rule,
            sets: FxHashMap::default(),
        }
    }

    pub fn get(&mut self, key: i64) -> Rc<MonoSet> {
        if let Some(s) = self.sets.get(&key) {
            return s.clone();
        }
        let list = match &self.rule {
            MonoRule::Weighted(w) => monomials_of_weighted_degree(w, key),
            MonoRule::TotalUpTo(n) => {
                let ones = vec![1u32; *n];
                (0..=key).flat_map(|k| monomials_of_weighted_degree(&ones, k)).collect()
            }
        };
        let index = list.iter().enumerate().map(|(k, m)| (m.clone(), k as u32)).collect();
        let s = Rc::new(MonoSet { list, index });
        self.sets.insert(key, s.clone());
        s
    }
}

/// Block shapes `(rows, cols)` of maps `src -> tgt`.
pub fn block_shape(src: &MatrixFactorization, tgt: &MatrixFactorization, block: u8) -> (usize, usize) {
    match block {
        0 => (tgt.rank1(), src.rank1()),
        1 => (tgt.rank0(), src.rank0()),
        2 => (tgt.rank0(), src.rank1()),
        _ => (tgt.rank1(), src.rank0()),
    }
}

#[derive(Debug, Clone)]
struct Entry {
    block: u8,
    i: u32,
    j: u32,
    start: u32,
    set: Rc<MonoSet>,
}

/// A finite basis of maps of one parity.
#[derive(Debug, Clone)]
pub struct SliceBasis {
    pub parity: Parity,
    entries: Vec<Entry>,
    /// `(block - first block, i, j)` flattened -> index into `entries`
    lookup: Vec<u32>,
    shapes: [(usize, usize); 2],
    dim: usize,
}

const NONE: u32 = u32::MAX;

impl SliceBasis {
    /// `key(block, i, j)` gives the monomial-set key of each entry, or
    /// `None` for an empty entry.
    pub fn new(
        src: &MatrixFactorization,
        tgt: &MatrixFactorization,
        parity: Parity,
        cache: &mut MonoCache,
        key: impl Fn(u8, usize, usize) -> Option<i64>,
    ) -> Self {
        let blocks = parity.blocks();
        let shapes = [block_shape(src, tgt, blocks[0]), block_shape(src, tgt, blocks[1])];
        let mut entries = Vec::new();
        let mut lookup = vec![NONE; shapes[0].0 * shapes[0].1 + shapes[1].0 * shapes[1].1];
        let mut start = 0usize;
        let mut slot = 0usize;
        for (bi, &b) in blocks.iter().enumerate() {
            let (r, c) = shapes[bi];
            for i in 0..r {
                for j in 0..c {
                    if let Some(k) = key(b, i, j) {
                        let set = cache.get(k);
                        if !set.list.is_empty() {
                            lookup[slot] = entries.len() as u32;
                            let len = set.list.len();
                            entries.push(Entry {
                                block: b,
                                i: i as u32,
                                j: j as u32,
                                start: start as u32,
                                set,
                            });
                            start += len;
                        }
                    }
                    slot += 1;
                }
            }
        }
        SliceBasis {
            parity,
            entries,
            lookup,
            shapes,
            dim: start,
        }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    fn entry_of(&self, block: u8, i: usize, j: usize) -> Option<&Entry> {
        let bi = (block - self.parity.blocks()[0]) as usize;
        let (_, c) = self.shapes[bi];
        let base = if bi == 0 {
            0
        } else {
            self.shapes[0].0 * self.shapes[0].1
        };
        let k = self.lookup[base + i * c + j];
        (k != NONE).then(|| &self.entries[k as usize])
    }

    /// Index of `m · E_ij` in `block`, if it lies in the slice.
    pub fn index_of(&self, block: u8, i: usize, j: usize, m: &Monomial) -> Option<u32> {
        let e = self.entry_of(block, i, j)?;
        e.set.index.get(m).map(|k| e.start + k)
    }

    /// `(block, i, j, monomial)` of a basis index.
    pub fn label(&self, idx: u32) -> (u8, usize, usize, &Monomial) {
        let pos = self.entries.partition_point(|e| e.start <= idx) - 1;
        let e = &self.entries[pos];
        (
            e.block,
            e.i as usize,
            e.j as usize,
            &e.set.list[(idx - e.start) as usize],
        )
    }

    /// Coordinates of a map given by its two blocks; `None` if some term
    /// falls outside the slice.
    pub fn coords(&self, blocks: [&PolyMatrix; 2]) -> Option<SparseVec> {
        let mut v = Vec::new();
        for (bi, m) in blocks.iter().enumerate() {
            let b = self.parity.blocks()[bi];
            for (i, j, p) in m.entries() {
                for (mono, c) in p.terms() {
                    v.push((self.index_of(b, i, j, mono)?, c.clone()));
                }
            }
        }
        Some(normalize(v))
    }

    /// The map with the given coordinates, as two block matrices.
    pub fn to_blocks(&self, v: &SparseVec, src: &MatrixFactorization, tgt: &MatrixFactorization) -> [PolyMatrix; 2] {
        let n = src.nvars();
        let bl = self.parity.blocks();
        let mut out = [0, 1].map(|bi| {
            let (r, c) = block_shape(src, tgt, bl[bi]);
            PolyMatrix::zeros(r, c, n)
        });
        for (idx, x) in v {
            let (b, i, j, m) = self.label(*idx);
            let bi = (b - bl[0]) as usize;
            let mut p = out[bi].get(i, j).clone();
            p.add_term(m.clone(), x);
            out[bi].set(i, j, p);
        }
        out
    }
}

/// Terms `(block, row, col, poly)` of `∂(E_ij)` for the matrix unit in
/// `block`, before multiplying by the monomial. `∂α = d'α - (-1)^|α| αd`.
pub fn differential_terms<'a>(
    src: &'a MatrixFactorization,
    tgt: &'a MatrixFactorization,
    block: u8,
    i: usize,
    j: usize,
) -> Vec<(u8, usize, usize, &'a Poly, bool)> {
    // bool: negate
    let mut out = Vec::new();
    let col_of = |m: &'a PolyMatrix, col: usize, to: u8, neg: bool, out: &mut Vec<_>| {
        for k in 0..m.rows() {
            let p = m.get(k, col);
            if !p.is_zero() {
                out.push((to, k, j, p, neg));
            }
        }
    };
    match block {
        // α1 (P1_j -> P1'_i): d1'α1 into block 2, -α1 d0 into block 3
        0 => {
            col_of(&tgt.d1, i, 2, false, &mut out);
            row_of(&src.d0, j, 3, i, true, &mut out);
        }
        // α0: -α0 d1 into block 2, d0'α0 into block 3
        1 => {
            row_of(&src.d1, j, 2, i, true, &mut out);
            col_of(&tgt.d0, i, 3, false, &mut out);
        }
        // β1 (P1_j -> P0'_i): d0'β1 into block 0, β1 d0 into block 1
        2 => {
            col_of(&tgt.d0, i, 0, false, &mut out);
            row_of(&src.d0, j, 1, i, false, &mut out);
        }
        // β0 (P0_j -> P1'_i): β0 d1 into block 0, d1'β0 into block 1
        _ => {
            row_of(&src.d1, j, 0, i, false, &mut out);
            col_of(&tgt.d1, i, 1, false, &mut out);
        }
    }
    out
}

/// `E_ij · m` has row `i` equal to row `j` of `m`.
fn row_of<'a>(
    m: &'a PolyMatrix,
    row: usize,
    to: u8,
    i: usize,
    neg: bool,
    out: &mut Vec<(u8, usize, usize, &'a Poly, bool)>,
) {
    for l in 0..m.cols() {
        let p = m.get(row, l);
        if !p.is_zero() {
            out.push((to, i, l, p, neg));
        }
    }
}

/// Precomputed differential between two slices.
/// A unit differential term: target block, row, column, entry, sign.
type UnitTerm<'a> = (u8, usize, usize, &'a Poly, bool);

pub struct SliceDifferential<'a> {
    pub src: &'a MatrixFactorization,
    pub tgt: &'a MatrixFactorization,
    pub from: &'a SliceBasis,
    pub to: &'a SliceBasis,
    /// per block entry (block, i, j) the unit differential terms, cached
    cache: FxHashMap<(u8, u32, u32), Vec<UnitTerm<'a>>>,
}

impl<'a> SliceDifferential<'a> {
    pub fn new(
        src: &'a MatrixFactorization,
        tgt: &'a MatrixFactorization,
        from: &'a SliceBasis,
        to: &'a SliceBasis,
    ) -> Self {
        debug_assert_eq!(from.parity.flip(), to.parity);
        SliceDifferential {
            src,
            tgt,
            from,
            to,
            cache: FxHashMap::default(),
        }
    }

    /// Column `idx` of the differential. Panics if the image leaves the
    /// target slice, which would mean the slices were built inconsistently.
    pub fn column(&mut self, idx: u32) -> SparseVec {
        let (b, i, j, m) = self.from.label(idx);
        let (src, tgt) = (self.src, self.tgt);
        let terms = self
            .cache
            .entry((b, i as u32, j as u32))
            .or_insert_with(|| differential_terms(src, tgt, b, i, j));
        let mut v: Vec<(u32, Scalar)> = Vec::new();
        for &(tb, r, c, p, neg) in terms.iter() {
            for (pm, pc) in p.terms() {
                let mono = pm.mul(m);
                let row = self
                    .to
                    .index_of(tb, r, c, &mono)
                    .expect("differential leaves the target slice");
                v.push((row, if neg { -pc } else { pc.clone() }));
            }
        }
        normalize(v)
    }
}

/// Applies `∂` to a map given by blocks, returning the image blocks.
pub fn apply_differential(
    src: &MatrixFactorization,
    tgt: &MatrixFactorization,
    parity: Parity,
    blocks: [&PolyMatrix; 2],
) -> [PolyMatrix; 2] {
    match parity {
        // even (a1, a0) -> odd (d1'a1 - a0 d1, d0'a0 - a1 d0)
        Parity::Even => {
            let [a1, a0] = blocks;
            [
                tgt.d1.mul(a1).sub(&a0.mul(&src.d1)),
                tgt.d0.mul(a0).sub(&a1.mul(&src.d0)),
            ]
        }
        // odd (b1, b0) -> even (d0'b1 + b0 d1, d1'b0 + b1 d0)
        Parity::Odd => {
            let [b1, b0] = blocks;
            [
                tgt.d0.mul(b1).add(&b0.mul(&src.d1)),
                tgt.d1.mul(b0).add(&b1.mul(&src.d0)),
            ]
        }
    }
}
