//! Exact linear algebra over `Q` / `Q(i)`.
//!
//! Two engines live here:
//!
//! * [`rank_of_columns`]: rank of a large sparse matrix given by a column
//!   generator. Columns are split into connected components (columns that
//!   share a row) and each component is eliminated with a Markowitz-style
//!   pivot rule. Nothing but the rank is tracked, which keeps the large
//!   homology slices cheap.
//! * [`Echelon`]: an incremental echelon basis that tracks the combination
//!   producing every reduced vector. It answers kernel and solve queries and
//!   is meant for moderate sizes.

#![allow(clippy::needless_range_loop)]

use std::cmp::Reverse;
use std::collections::BinaryHeap;

use rustc_hash::FxHashMap;

use super::scalar::Scalar;

/// Sparse vector: strictly increasing indices, nonzero values.
pub type SparseVec = Vec<(u32, Scalar)>;

/// Column-major sparse matrix.
#[derive(Debug, Clone, Default, PartialEq)]
pub struct SparseMatrix {
    pub nrows: usize,
    pub cols: Vec<SparseVec>,
}

impl SparseMatrix {
    pub fn new(nrows: usize) -> Self {
        SparseMatrix {
            nrows,
            cols: Vec::new(),
        }
    }

    pub fn ncols(&self) -> usize {
        self.cols.len()
    }

    pub fn from_dense(rows: &[Vec<Scalar>]) -> Self {
        let nrows = rows.len();
        let ncols = rows.first().map_or(0, Vec::len);
        let mut cols = vec![Vec::new(); ncols];
        for (i, row) in rows.iter().enumerate() {
            assert_eq!(row.len(), ncols, "ragged matrix");
            for (j, v) in row.iter().enumerate() {
                if !v.is_zero() {
                    cols[j].push((i as u32, v.clone()));
                }
            }
        }
        SparseMatrix { nrows, cols }
    }

    pub fn rank(&self) -> usize {
        rank_of_columns(self.nrows, self.cols.len(), |j| self.cols[j].clone())
    }

    /// Basis of `{ x : A x = 0 }` as sparse vectors over the column indices.
    pub fn kernel_basis(&self) -> Vec<SparseVec> {
        let mut ech = Echelon::new();
        let mut kernel = Vec::new();
        for (j, c) in self.cols.iter().enumerate() {
            if let Some(k) = ech.insert(c.clone(), j as u32) {
                kernel.push(k);
            }
        }
        kernel
    }

    /// Some `x` with `A x = b`, if one exists.
    pub fn solve(&self, b: &SparseVec) -> Option<SparseVec> {
        let mut ech = Echelon::new();
        for (j, c) in self.cols.iter().enumerate() {
            ech.insert(c.clone(), j as u32);
        }
        ech.express(b)
    }

    /// `A x` for a sparse `x`.
    pub fn apply(&self, x: &SparseVec) -> SparseVec {
        let mut acc: Vec<(u32, Scalar)> = Vec::new();
        for (j, v) in x {
            acc = axpy(&acc, v, &self.cols[*j as usize]);
        }
        acc
    }
}

/// `a + s*b` for sorted sparse vectors.
pub fn axpy(a: &[(u32, Scalar)], s: &Scalar, b: &[(u32, Scalar)]) -> SparseVec {
    let mut out = Vec::with_capacity(a.len() + b.len());
    let (mut i, mut j) = (0, 0);
    while i < a.len() || j < b.len() {
        if j == b.len() || (i < a.len() && a[i].0 < b[j].0) {
            out.push(a[i].clone());
            i += 1;
        } else if i == a.len() || b[j].0 < a[i].0 {
            let v = s * &b[j].1;
            if !v.is_zero() {
                out.push((b[j].0, v));
            }
            j += 1;
        } else {
            let v = &a[i].1 + &(s * &b[j].1);
            if !v.is_zero() {
                out.push((a[i].0, v));
            }
            i += 1;
            j += 1;
        }
    }
    out
}

/// Sorts and merges duplicate indices, dropping zeros.
pub fn normalize(mut v: Vec<(u32, Scalar)>) -> SparseVec {
    v.sort_by_key(|e| e.0);
    let mut out: SparseVec = Vec::with_capacity(v.len());
    for (k, x) in v {
        match out.last_mut() {
            Some(last) if last.0 == k => last.1 += &x,
            _ => out.push((k, x)),
        }
    }
    out.retain(|e| !e.1.is_zero());
    out
}

struct Dsu {
    parent: Vec<u32>,
}

impl Dsu {
    fn new(n: usize) -> Self {
        Dsu {
            parent: (0..n as u32).collect(),
        }
    }

    fn find(&mut self, mut x: u32) -> u32 {
        while self.parent[x as usize] != x {
            let p = self.parent[x as usize];
            self.parent[x as usize] = self.parent[p as usize];
            x = p;
        }
        x
    }

    fn union(&mut self, a: u32, b: u32) {
        let (a, b) = (self.find(a), self.find(b));
        if a != b {
            self.parent[a.max(b) as usize] = a.min(b);
        }
    }
}

/// Rank of the `nrows x ncols` matrix whose `j`-th column is `column(j)`.
///
/// The generator is called twice per column: once to find connected
/// components, once to fill the component being eliminated. This keeps peak
/// memory proportional to the largest component.
pub fn rank_of_columns<F>(nrows: usize, ncols: usize, mut column: F) -> usize
where
    F: FnMut(usize) -> SparseVec,
{
    if nrows == 0 || ncols == 0 {
        return 0;
    }
    // nodes: rows 0..nrows, columns nrows..nrows+ncols
    let mut dsu = Dsu::new(nrows + ncols);
    let mut empty = vec![false; ncols];
    for j in 0..ncols {
        let c = column(j);
        if c.is_empty() {
            empty[j] = true;
            continue;
        }
        let node = (nrows + j) as u32;
        for (r, _) in &c {
            dsu.union(node, *r);
        }
    }
    let mut groups: FxHashMap<u32, Vec<usize>> = FxHashMap::default();
    for j in 0..ncols {
        if !empty[j] {
            let root = dsu.find((nrows + j) as u32);
            groups.entry(root).or_default().push(j);
        }
    }
    let mut comps: Vec<Vec<usize>> = groups.into_values().collect();
    comps.sort_by_key(|c| c[0]);
    drop(dsu);

    let mut rank = 0;
    for comp in comps {
        if comp.len() == 1 {
            rank += 1;
            continue;
        }
        let mut local: FxHashMap<u32, u32> = FxHashMap::default();
        let mut vecs: Vec<SparseVec> = Vec::with_capacity(comp.len());
        for &j in &comp {
            let c = column(j);
            let mut v: SparseVec = c
                .into_iter()
                .map(|(r, x)| {
                    let n = local.len() as u32;
                    (*local.entry(r).or_insert(n), x)
                })
                .collect();
            v.sort_by_key(|e| e.0);
            vecs.push(v);
        }
        rank += markowitz_rank(vecs, local.len());
    }
    rank
}

/// Coefficients the rank elimination can run on.
trait ElimCoef: Clone {
    /// `old` with its entry at `c` cleared by a multiple of `pv`; `None`
    /// when the arithmetic overflows.
    fn eliminate(old: &[(u32, Self)], pv: &[(u32, Self)], c_old: &Self, c_pv: &Self) -> Option<Vec<(u32, Self)>>;
    fn is_unit(&self) -> bool;
}

impl ElimCoef for Scalar {
    fn eliminate(old: &[(u32, Self)], pv: &[(u32, Self)], c_old: &Self, c_pv: &Self) -> Option<Vec<(u32, Self)>> {
        let factor = -(c_old * &c_pv.inv());
        Some(axpy(old, &factor, pv))
    }

    fn is_unit(&self) -> bool {
        self.re.is_integer() && self.im.is_zero() && (self.is_one() || (-self).is_one())
    }
}

impl ElimCoef for i64 {
    /// Fraction-free step `c_pv·old - c_old·pv`, divided by its content.
    fn eliminate(old: &[(u32, i64)], pv: &[(u32, i64)], c_old: &i64, c_pv: &i64) -> Option<Vec<(u32, i64)>> {
        let g = gcd_i64(*c_old, *c_pv);
        let (a, b) = (c_pv / g, c_old / g);
        let mut out = Vec::with_capacity(old.len() + pv.len());
        let (mut i, mut j) = (0, 0);
        let mut content = 0i64;
        while i < old.len() || j < pv.len() {
            let (idx, v) = if j == pv.len() || (i < old.len() && old[i].0 < pv[j].0) {
                i += 1;
                (old[i - 1].0, old[i - 1].1.checked_mul(a)?)
            } else if i == old.len() || pv[j].0 < old[i].0 {
                j += 1;
                (pv[j - 1].0, pv[j - 1].1.checked_mul(b)?.checked_neg()?)
            } else {
                i += 1;
                j += 1;
                let x = old[i - 1].1.checked_mul(a)?;
                let y = pv[j - 1].1.checked_mul(b)?;
                (old[i - 1].0, x.checked_sub(y)?)
            };
            if v != 0 {
                content = gcd_i64(content, v);
                out.push((idx, v));
            }
        }
        if content > 1 {
            for e in &mut out {
                e.1 /= content;
            }
        }
        Some(out)
    }

    fn is_unit(&self) -> bool {
        self.abs() == 1
    }
}

fn gcd_i64(a: i64, b: i64) -> i64 {
    let (mut a, mut b) = (a.unsigned_abs(), b.unsigned_abs());
    while b != 0 {
        let t = a % b;
        a = b;
        b = t;
    }
    a as i64
}

/// Rank of a set of sparse vectors over `ncoords` coordinates. Real integer
/// input runs fraction-free on `i64` and falls back to exact scalars on
/// overflow.
fn markowitz_rank(vecs: Vec<SparseVec>, ncoords: usize) -> usize {
    let ints: Option<Vec<Vec<(u32, i64)>>> = vecs
        .iter()
        .map(|v| v.iter().map(|(k, x)| x.to_i64().map(|n| (*k, n))).collect())
        .collect();
    if let Some(ints) = ints {
        if let Some(r) = markowitz_generic(ints, ncoords) {
            return r;
        }
    }
    markowitz_generic(vecs, ncoords).expect("exact elimination cannot overflow")
}

fn markowitz_generic<T: ElimCoef>(mut vecs: Vec<Vec<(u32, T)>>, ncoords: usize) -> Option<usize> {
    let mut occ: Vec<Vec<u32>> = vec![Vec::new(); ncoords];
    let mut count = vec![0u32; ncoords];
    for (k, v) in vecs.iter().enumerate() {
        for (c, _) in v {
            occ[*c as usize].push(k as u32);
            count[*c as usize] += 1;
        }
    }
    let mut active = vec![true; vecs.len()];
    let mut heap: BinaryHeap<Reverse<(u32, u32)>> = count
        .iter()
        .enumerate()
        .filter(|(_, &n)| n > 0)
        .map(|(c, &n)| Reverse((n, c as u32)))
        .collect();
    let mut rank = 0;
    let position = |v: &[(u32, T)], c: u32| v.binary_search_by_key(&c, |e| e.0).ok();
    let mut changed: Vec<u32> = Vec::new();

    while let Some(Reverse((n, c))) = heap.pop() {
        let cu = c as usize;
        if count[cu] != n || n == 0 {
            continue;
        }
        // gather live holders of coordinate c
        let holders: Vec<u32> = {
            let list = &mut occ[cu];
            list.sort_unstable();
            list.dedup();
            list.retain(|&k| active[k as usize] && position(&vecs[k as usize], c).is_some());
            list.clone()
        };
        debug_assert_eq!(holders.len() as u32, n);
        let pivot = *holders
            .iter()
            .min_by_key(|&&k| {
                let v = &vecs[k as usize];
                let unit = v[position(v, c).unwrap()].1.is_unit();
                (v.len(), !unit, k)
            })
            .unwrap();
        let pv = std::mem::take(&mut vecs[pivot as usize]);
        active[pivot as usize] = false;
        let pc = pv[position(&pv, c).unwrap()].1.clone();
        for (cc, _) in &pv {
            count[*cc as usize] -= 1;
            changed.push(*cc);
        }
        for &k in &holders {
            if k == pivot {
                continue;
            }
            let ku = k as usize;
            let old = std::mem::take(&mut vecs[ku]);
            let c_old = old[position(&old, c).unwrap()].1.clone();
            let new = T::eliminate(&old, &pv, &c_old, &pc)?;
            // structural diff
            let (mut i, mut j) = (0, 0);
            while i < old.len() || j < new.len() {
                if j == new.len() || (i < old.len() && old[i].0 < new[j].0) {
                    let oc = old[i].0;
                    count[oc as usize] -= 1;
                    changed.push(oc);
                    i += 1;
                } else if i == old.len() || new[j].0 < old[i].0 {
                    let nc = new[j].0;
                    count[nc as usize] += 1;
                    occ[nc as usize].push(k);
                    changed.push(nc);
                    j += 1;
                } else {
                    i += 1;
                    j += 1;
                }
            }
            vecs[ku] = new;
        }
        rank += 1;
        changed.sort_unstable();
        changed.dedup();
        for &cc in &changed {
            let cn = count[cc as usize];
            if cn > 0 {
                heap.push(Reverse((cn, cc)));
            }
        }
        changed.clear();
    }
    Some(rank)
}

/// Incremental echelon basis with combination tracking.
///
/// Every stored pivot vector is kept together with the combination of
/// inserted vectors (by caller-supplied id) that produced it.
#[derive(Debug, Default, Clone)]
pub struct Echelon {
    /// leading index -> (normalized vector with leading coefficient 1, combination)
    pivots: FxHashMap<u32, (SparseVec, SparseVec)>,
}

impl Echelon {
    pub fn new() -> Self {
        Echelon::default()
    }

    pub fn rank(&self) -> usize {
        self.pivots.len()
    }

    /// Reduces `v`, returning the residual and the combination `c` such that
    /// `residual = v - Σ c_id * inserted_id`.
    pub fn reduce(&self, mut v: SparseVec) -> (SparseVec, SparseVec) {
        let mut combo: SparseVec = Vec::new();
        let mut start = 0;
        while start < v.len() {
            let lead = v[start].0;
            match self.pivots.get(&lead) {
                Some((pv, pc)) => {
                    let coef = v[start].1.clone();
                    v = axpy(&v, &-coef.clone(), pv);
                    combo = axpy(&combo, &coef, pc);
                    // entries before `start` are untouched: pivot leads at `lead`
                }
                None => start += 1,
            }
        }
        (v, combo)
    }

    /// Inserts `v` (tagged `id`). Returns a kernel relation among inserted
    /// vectors if `v` was dependent.
    pub fn insert(&mut self, v: SparseVec, id: u32) -> Option<SparseVec> {
        let (res, combo) = self.reduce(v);
        // res = v - combo·inserted
        if res.is_empty() {
            let mut rel = vec![(id, Scalar::one())];
            rel = axpy(&rel, &Scalar::from_int(-1), &combo);
            return Some(rel);
        }
        let lead = res[0].0;
        let inv = res[0].1.inv();
        let res: SparseVec = res.into_iter().map(|(k, x)| (k, &x * &inv)).collect();
        let mut tracked = vec![(id, Scalar::one())];
        tracked = axpy(&tracked, &Scalar::from_int(-1), &combo);
        let tracked: SparseVec = tracked.into_iter().map(|(k, x)| (k, &x * &inv)).collect();
        self.pivots.insert(lead, (res, tracked));
        None
    }

    /// Writes `b` as a combination of inserted vectors, if possible.
    pub fn express(&self, b: &SparseVec) -> Option<SparseVec> {
        let (res, combo) = self.reduce(b.clone());
        res.is_empty().then_some(combo)
    }
}

/// Dense matrix over `Q(i)`, row-major.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct Matrix {
    pub rows: usize,
    pub cols: usize,
    pub data: Vec<Scalar>,
}

impl Matrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Matrix {
            rows,
            cols,
            data: vec![Scalar::zero(); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m[(i, i)] = Scalar::one();
        }
        m
    }

    pub fn scalar(n: usize, s: &Scalar) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m[(i, i)] = s.clone();
        }
        m
    }

    pub fn from_rows(rows: Vec<Vec<Scalar>>) -> Self {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        let mut data = Vec::with_capacity(r * c);
        for row in rows {
            assert_eq!(row.len(), c, "ragged matrix");
            data.extend(row);
        }
        Matrix { rows: r, cols: c, data }
    }

    pub fn from_ints(rows: &[&[i64]]) -> Self {
        Self::from_rows(
            rows.iter()
                .map(|r| r.iter().map(|&x| Scalar::from_int(x)).collect())
                .collect(),
        )
    }

    pub fn row(&self, i: usize) -> &[Scalar] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn to_rows(&self) -> Vec<Vec<Scalar>> {
        (0..self.rows).map(|i| self.row(i).to_vec()).collect()
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(Scalar::is_zero)
    }

    pub fn transpose(&self) -> Matrix {
        let mut t = Matrix::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t[(j, i)] = self[(i, j)].clone();
            }
        }
        t
    }

    pub fn scale(&self, s: &Scalar) -> Matrix {
        Matrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(|x| x * s).collect(),
        }
    }

    pub fn mul(&self, o: &Matrix) -> Matrix {
        assert_eq!(self.cols, o.rows, "shape mismatch in product");
        let mut out = Matrix::zeros(self.rows, o.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = &self[(i, k)];
                if a.is_zero() {
                    continue;
                }
                for j in 0..o.cols {
                    let b = &o[(k, j)];
                    if !b.is_zero() {
                        let v = &out[(i, j)] + &(a * b);
                        out[(i, j)] = v;
                    }
                }
            }
        }
        out
    }

    pub fn add(&self, o: &Matrix) -> Matrix {
        assert_eq!((self.rows, self.cols), (o.rows, o.cols), "shape mismatch in sum");
        Matrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().zip(&o.data).map(|(a, b)| a + b).collect(),
        }
    }

    pub fn sub(&self, o: &Matrix) -> Matrix {
        self.add(&o.scale(&Scalar::from_int(-1)))
    }

    /// Kronecker product `self ⊗ o`.
    pub fn kron(&self, o: &Matrix) -> Matrix {
        let mut out = Matrix::zeros(self.rows * o.rows, self.cols * o.cols);
        for i in 0..self.rows {
            for j in 0..self.cols {
                let a = &self[(i, j)];
                if a.is_zero() {
                    continue;
                }
                for k in 0..o.rows {
                    for l in 0..o.cols {
                        out[(i * o.rows + k, j * o.cols + l)] = a * &o[(k, l)];
                    }
                }
            }
        }
        out
    }

    pub fn to_sparse(&self) -> SparseMatrix {
        SparseMatrix::from_dense(&self.to_rows())
    }

    pub fn rank(&self) -> usize {
        let mut ech = Echelon::new();
        for i in 0..self.rows {
            let v: SparseVec = self
                .row(i)
                .iter()
                .enumerate()
                .filter(|(_, x)| !x.is_zero())
                .map(|(j, x)| (j as u32, x.clone()))
                .collect();
            ech.insert(v, i as u32);
        }
        ech.rank()
    }

    /// Basis of the right kernel, as dense column vectors.
    pub fn kernel(&self) -> Vec<Vec<Scalar>> {
        self.to_sparse()
            .kernel_basis()
            .into_iter()
            .map(|k| {
                let mut d = vec![Scalar::zero(); self.cols];
                for (j, x) in k {
                    d[j as usize] = x;
                }
                d
            })
            .collect()
    }
}

impl std::ops::Index<(usize, usize)> for Matrix {
    type Output = Scalar;
    fn index(&self, (i, j): (usize, usize)) -> &Scalar {
        &self.data[i * self.cols + j]
    }
}

impl std::ops::IndexMut<(usize, usize)> for Matrix {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut Scalar {
        &mut self.data[i * self.cols + j]
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ints(rows: &[&[i64]]) -> SparseMatrix {
        Matrix::from_ints(rows).to_sparse()
    }

    #[test]
    fn identity_rank() {
        let m = ints(&[&[1, 0], &[0, 1]]);
        assert_eq!(m.rank(), 2);
        assert!(m.kernel_basis().is_empty());
    }

    #[test]
    fn zero_rank() {
        let m = ints(&[&[0, 0, 0], &[0, 0, 0], &[0, 0, 0]]);
        assert_eq!(m.rank(), 0);
        assert_eq!(m.kernel_basis().len(), 3);
    }

    #[test]
    fn proportional_rows() {
        let m = ints(&[&[1, 2], &[2, 4]]);
        assert_eq!(m.rank(), 1);
        let k = m.kernel_basis();
        assert_eq!(k.len(), 1);
        // spanned by (2, -1)
        let v = &k[0];
        let a = &v[0].1;
        let b = &v[1].1;
        assert_eq!(a, &(b * &Scalar::from_int(-2)));
        assert!(m.apply(v).is_empty());
    }

    #[test]
    fn solve_consistent_and_inconsistent() {
        let m = ints(&[&[1, 1], &[1, -1], &[2, 0]]);
        let b = vec![
            (0, Scalar::from_int(3)),
            (1, Scalar::from_int(1)),
            (2, Scalar::from_int(4)),
        ];
        let x = m.solve(&b).unwrap();
        assert_eq!(m.apply(&x), b);
        let bad = vec![(0, Scalar::from_int(1))];
        assert!(m.solve(&bad).is_none());
    }

    #[test]
    fn components_and_fill() {
        // two blocks plus an empty column
        let m = ints(&[&[1, 1, 0, 0, 0], &[1, 1, 0, 0, 0], &[0, 0, 1, 2, 0], &[0, 0, 3, 4, 0]]);
        assert_eq!(m.rank(), 3);
    }

    #[test]
    fn dense_products() {
        let a = Matrix::from_ints(&[&[0, 1], &[1, 0]]);
        assert_eq!(a.mul(&a), Matrix::identity(2));
        let k = a.kron(&Matrix::identity(2));
        assert_eq!(k.rows, 4);
        assert_eq!(k.mul(&k), Matrix::identity(4));
        assert_eq!(a.kernel().len(), 0);
    }
}
