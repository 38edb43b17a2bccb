use crate::exactalg::linalg::Matrix;
use crate::exactalg::{Poly, Scalar};

/// Dense matrix of polynomials, row-major. Matrices act on column vectors.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct PolyMatrix {
    rows: usize,
    cols: usize,
    nvars: usize,
    entries: Vec<Poly>,
}

impl PolyMatrix {
    pub fn zeros(rows: usize, cols: usize, nvars: usize) -> Self {
        PolyMatrix {
            rows,
            cols,
            nvars,
            entries: vec![Poly::zero(nvars); rows * cols],
        }
    }

    pub fn identity(n: usize, nvars: usize) -> Self {
        Self::scalar(n, &Poly::one(nvars))
    }

    /// `p * I_n`.
    pub fn scalar(n: usize, p: &Poly) -> Self {
        let mut m = Self::zeros(n, n, p.nvars());
        for i in 0..n {
            m.set(i, i, p.clone());
        }
        m
    }

    pub fn from_rows(nvars: usize, rows: Vec<Vec<Poly>>) -> Self {
        let c = rows.first().map_or(0, Vec::len);
        Self::from_rows_shape(nvars, rows, c)
    }

    /// Like `from_rows`, with an explicit column count so that matrices
    /// without rows keep their width.
    pub fn from_rows_shape(nvars: usize, rows: Vec<Vec<Poly>>, c: usize) -> Self {
        let r = rows.len();
        let mut entries = Vec::with_capacity(r * c);
        for row in rows {
            assert_eq!(row.len(), c, "ragged polynomial matrix");
            for p in row {
                assert_eq!(p.nvars(), nvars, "variable count mismatch");
                entries.push(p);
            }
        }
        PolyMatrix {
            rows: r,
            cols: c,
            nvars,
            entries,
        }
    }

    /// Constant matrix.
    pub fn from_scalars(m: &Matrix, nvars: usize) -> Self {
        let mut out = Self::zeros(m.rows, m.cols, nvars);
        for i in 0..m.rows {
            for j in 0..m.cols {
                out.set(i, j, Poly::constant(nvars, m[(i, j)].clone()));
            }
        }
        out
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn get(&self, i: usize, j: usize) -> &Poly {
        &self.entries[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, p: Poly) {
        debug_assert_eq!(p.nvars(), self.nvars);
        self.entries[i * self.cols + j] = p;
    }

    pub fn entries(&self) -> impl Iterator<Item = (usize, usize, &Poly)> {
        self.entries
            .iter()
            .enumerate()
            .map(move |(k, p)| (k / self.cols.max(1), k % self.cols.max(1), p))
    }

    pub fn to_rows(&self) -> Vec<Vec<Poly>> {
        (0..self.rows)
            .map(|i| (0..self.cols).map(|j| self.get(i, j).clone()).collect())
            .collect()
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().all(Poly::is_zero)
    }

    /// Largest total degree of an entry; `None` if all entries vanish.
    pub fn max_degree(&self) -> Option<u32> {
        self.entries.iter().filter_map(Poly::degree).max()
    }

    pub fn mul(&self, o: &PolyMatrix) -> PolyMatrix {
        assert_eq!(self.cols, o.rows, "shape mismatch in product");
        let mut out = PolyMatrix::zeros(self.rows, o.cols, self.nvars);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..o.cols {
                    let b = o.get(k, j);
                    if !b.is_zero() {
                        let v = out.get(i, j) + &(a * b);
                        out.set(i, j, v);
                    }
                }
            }
        }
        out
    }

    pub fn add(&self, o: &PolyMatrix) -> PolyMatrix {
        assert_eq!((self.rows, self.cols), (o.rows, o.cols), "shape mismatch in sum");
        PolyMatrix {
            rows: self.rows,
            cols: self.cols,
            nvars: self.nvars,
            entries: self.entries.iter().zip(&o.entries).map(|(a, b)| a + b).collect(),
        }
    }

    pub fn sub(&self, o: &PolyMatrix) -> PolyMatrix {
        self.add(&o.neg())
    }

    pub fn neg(&self) -> PolyMatrix {
        self.map(|p| -p)
    }

    pub fn scale(&self, s: &Scalar) -> PolyMatrix {
        self.map(|p| p.scale(s))
    }

    pub fn map(&self, f: impl Fn(&Poly) -> Poly) -> PolyMatrix {
        let entries: Vec<Poly> = self.entries.iter().map(f).collect();
        let nvars = entries.first().map_or(self.nvars, Poly::nvars);
        PolyMatrix {
            rows: self.rows,
            cols: self.cols,
            nvars,
            entries,
        }
    }

    /// Rewrites every entry into a ring with `nvars` variables.
    pub fn embed(&self, nvars: usize, map: &[usize]) -> PolyMatrix {
        let mut out = self.map(|p| p.embed(nvars, map));
        out.nvars = nvars;
        out
    }

    pub fn transpose(&self) -> PolyMatrix {
        let mut out = PolyMatrix::zeros(self.cols, self.rows, self.nvars);
        for i in 0..self.rows {
            for j in 0..self.cols {
                out.set(j, i, self.get(i, j).clone());
            }
        }
        out
    }

    /// `[[a, b], [c, d]]`.
    pub fn block2(a: &PolyMatrix, b: &PolyMatrix, c: &PolyMatrix, d: &PolyMatrix) -> PolyMatrix {
        assert_eq!(a.rows, b.rows, "block rows");
        assert_eq!(c.rows, d.rows, "block rows");
        assert_eq!(a.cols, c.cols, "block cols");
        assert_eq!(b.cols, d.cols, "block cols");
        let mut out = PolyMatrix::zeros(a.rows + c.rows, a.cols + b.cols, a.nvars);
        for (blk, r0, c0) in [(a, 0, 0), (b, 0, a.cols), (c, a.rows, 0), (d, a.rows, a.cols)] {
            for i in 0..blk.rows {
                for j in 0..blk.cols {
                    out.set(r0 + i, c0 + j, blk.get(i, j).clone());
                }
            }
        }
        out
    }

    pub fn block_diag(a: &PolyMatrix, d: &PolyMatrix) -> PolyMatrix {
        let n = a.nvars;
        Self::block2(
            a,
            &PolyMatrix::zeros(a.rows, d.cols, n),
            &PolyMatrix::zeros(d.rows, a.cols, n),
            d,
        )
    }

    /// Kronecker product `self ⊗ o`: row index `i*o.rows + k`.
    pub fn kron(&self, o: &PolyMatrix) -> PolyMatrix {
        assert_eq!(self.nvars, o.nvars, "variable count mismatch");
        let mut out = PolyMatrix::zeros(self.rows * o.rows, self.cols * o.cols, self.nvars);
        for i in 0..self.rows {
            for j in 0..self.cols {
                let a = self.get(i, j);
                if a.is_zero() {
                    continue;
                }
                for k in 0..o.rows {
                    for l in 0..o.cols {
                        let b = o.get(k, l);
                        if !b.is_zero() {
                            out.set(i * o.rows + k, j * o.cols + l, a * b);
                        }
                    }
                }
            }
        }
        out
    }

    /// Submatrix keeping the listed rows and columns.
    pub fn select(&self, rows: &[usize], cols: &[usize]) -> PolyMatrix {
        let mut out = PolyMatrix::zeros(rows.len(), cols.len(), self.nvars);
        for (a, &i) in rows.iter().enumerate() {
            for (b, &j) in cols.iter().enumerate() {
                out.set(a, b, self.get(i, j).clone());
            }
        }
        out
    }
}
