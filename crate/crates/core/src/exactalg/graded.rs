use serde::Serialize;

use super::linalg::{SparseMatrix, SparseVec};
use super::poly::Monomial;

/// A basis vector of a graded slice: the matrix unit `E_{row,col}` of block
/// `block`, multiplied by `monomial`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize)]
pub struct BasisLabel {
    pub block: u8,
    pub row: usize,
    pub col: usize,
    pub monomial: Vec<u32>,
}

impl BasisLabel {
    pub fn new(block: u8, row: usize, col: usize, m: &Monomial) -> Self {
        BasisLabel {
            block,
            row,
            col,
            monomial: m.0.clone(),
        }
    }
}

/// A degreewise slice of a polynomial-linear condition, flattened into an
/// exact matrix with labelled rows and columns.
#[derive(Debug, Clone, Default)]
pub struct GradedSolveProblem {
    pub matrix: SparseMatrix,
    pub row_labels: Vec<BasisLabel>,
    pub col_labels: Vec<BasisLabel>,
}

impl GradedSolveProblem {
    /// A problem with placeholder labels, for plain matrices.
    pub fn unlabelled(matrix: SparseMatrix) -> Self {
        GradedSolveProblem {
            matrix,
            row_labels: Vec::new(),
            col_labels: Vec::new(),
        }
    }
}

/// Exact rank and kernel basis of the slice matrix.
pub fn graded_component_rank(problem: &GradedSolveProblem) -> (usize, Vec<SparseVec>) {
    let kernel = problem.matrix.kernel_basis();
    (problem.matrix.ncols() - kernel.len(), kernel)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactalg::linalg::Matrix;

    #[test]
    fn rank_nullity() {
        for rows in [
            vec![vec![1, 0], vec![0, 1]],
            vec![vec![0, 0, 0], vec![0, 0, 0], vec![0, 0, 0]],
            vec![vec![1, 2], vec![2, 4]],
            vec![vec![1, 2, 3], vec![4, 5, 6], vec![7, 8, 9]],
        ] {
            let refs: Vec<&[i64]> = rows.iter().map(Vec::as_slice).collect();
            let m = Matrix::from_ints(&refs).to_sparse();
            let (r, k) = graded_component_rank(&GradedSolveProblem::unlabelled(m.clone()));
            assert_eq!(r + k.len(), m.ncols());
            assert_eq!(r, m.rank());
            for v in &k {
                assert!(m.apply(v).is_empty());
            }
        }
    }
}
