//! Exact rational linear algebra for relation-space dimensions.
//!
//! Relation-space generators are sparse vectors over a tree basis (most rows
//! are differences of two basis vectors), so ranks are computed by a sparse
//! incremental row-echelon elimination over `BigRational` — exactness is
//! non-negotiable for dimension claims.  A dense reduced-row-echelon
//! nullspace is provided for annihilator computations, whose matrices stay
//! small (at most a few thousand columns).

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use std::collections::BTreeMap;

/// A sparse vector: column index → nonzero rational coefficient.
pub type SparseRow = BTreeMap<usize, BigRational>;

/// Builds a sparse row from integer (column, coefficient) pairs,
/// accumulating duplicates and dropping zeros.
pub fn sparse_row(entries: impl IntoIterator<Item = (usize, i64)>) -> SparseRow {
    let mut row = SparseRow::new();
    for (c, v) in entries {
        let e = row.entry(c).or_insert_with(BigRational::zero);
        *e += BigRational::from_integer(BigInt::from(v));
    }
    row.retain(|_, v| !v.is_zero());
    row
}

/// Incremental exact row-echelon elimination: maintains one pivot row per
/// leading column and reports the rank of everything inserted so far.
#[derive(Debug, Default)]
pub struct RankEngine {
    /// pivot column → echelon row with that leading column
    pivots: BTreeMap<usize, SparseRow>,
}

impl RankEngine {
    pub fn new() -> RankEngine {
        RankEngine::default()
    }

    /// Rank of the span of all inserted rows.
    pub fn rank(&self) -> usize {
        self.pivots.len()
    }

    /// Reduces `row` against the current pivots, returning the residual
    /// (empty iff `row` lies in the current span).
    pub fn reduce(&self, mut row: SparseRow) -> SparseRow {
        loop {
            let Some((&col, _)) = row.iter().next() else {
                return row;
            };
            let Some(pivot) = self.pivots.get(&col) else {
                return row;
            };
            let factor = row[&col].clone() / pivot[&col].clone();
            for (c, v) in pivot {
                let delta = &factor * v;
                let e = row.entry(*c).or_insert_with(BigRational::zero);
                *e -= delta;
                if e.is_zero() {
                    row.remove(c);
                }
            }
        }
    }

    /// Inserts a row; returns true when it enlarged the span.
    pub fn insert(&mut self, row: SparseRow) -> bool {
        let residual = self.reduce(row);
        match residual.iter().next() {
            None => false,
            Some((&col, _)) => {
                self.pivots.insert(col, residual);
                true
            }
        }
    }

    /// True when `row` lies in the span of the inserted rows.
    pub fn contains(&self, row: SparseRow) -> bool {
        self.reduce(row).is_empty()
    }
}

/// Rank of a set of sparse rows.
pub fn rank(rows: impl IntoIterator<Item = SparseRow>) -> usize {
    let mut eng = RankEngine::new();
    for r in rows {
        eng.insert(r);
    }
    eng.rank()
}

/// Exact nullspace basis of the matrix whose rows are given sparsely over
/// `ncols` columns: returns dense basis vectors of `{x : A·x = 0}`.
pub fn nullspace(rows: &[SparseRow], ncols: usize) -> Vec<Vec<BigRational>> {
    // dense reduced row echelon form
    let mut mat: Vec<Vec<BigRational>> = rows
        .iter()
        .map(|r| {
            let mut dense = vec![BigRational::zero(); ncols];
            for (&c, v) in r {
                dense[c] = v.clone();
            }
            dense
        })
        .collect();
    let mut pivot_cols = Vec::new();
    let mut r = 0usize;
    for c in 0..ncols {
        let Some(sel) = (r..mat.len()).find(|&i| !mat[i][c].is_zero()) else {
            continue;
        };
        mat.swap(r, sel);
        let inv = mat[r][c].clone();
        for x in mat[r].iter_mut() {
            *x /= inv.clone();
        }
        for i in 0..mat.len() {
            if i != r && !mat[i][c].is_zero() {
                let f = mat[i][c].clone();
                for j in 0..ncols {
                    let d = &f * &mat[r][j];
                    mat[i][j] -= d;
                }
            }
        }
        pivot_cols.push(c);
        r += 1;
        if r == mat.len() {
            break;
        }
    }
    // one basis vector per free column
    let mut basis = Vec::new();
    let is_pivot = |c: usize| pivot_cols.binary_search(&c).is_ok();
    for free in (0..ncols).filter(|&c| !is_pivot(c)) {
        let mut v = vec![BigRational::zero(); ncols];
        v[free] = BigRational::one();
        for (ri, &pc) in pivot_cols.iter().enumerate() {
            v[pc] = -mat[ri][free].clone();
        }
        basis.push(v);
    }
    basis
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rank_of_differences() {
        // e0 - e1, e1 - e2, e0 - e2: rank 2
        let rows = vec![
            sparse_row([(0, 1), (1, -1)]),
            sparse_row([(1, 1), (2, -1)]),
            sparse_row([(0, 1), (2, -1)]),
        ];
        assert_eq!(rank(rows), 2);
    }

    #[test]
    fn duplicate_columns_accumulate() {
        // a row written as e0 - e0 must vanish, not collapse to -e0
        let row = sparse_row([(0, 1), (0, -1)]);
        assert!(row.is_empty());
        assert_eq!(rank([row]), 0);
    }

    #[test]
    fn membership() {
        let mut eng = RankEngine::new();
        eng.insert(sparse_row([(0, 1), (1, -1)]));
        eng.insert(sparse_row([(1, 1), (2, -1)]));
        assert!(eng.contains(sparse_row([(0, 1), (2, -1)])));
        assert!(!eng.contains(sparse_row([(0, 1)])));
    }

    #[test]
    fn nullspace_dimension() {
        // x0 + x1 + x2 = 0 over 3 columns: nullspace dim 2
        let rows = vec![sparse_row([(0, 1), (1, 1), (2, 1)])];
        let basis = nullspace(&rows, 3);
        assert_eq!(basis.len(), 2);
        for v in &basis {
            let s: BigRational = v.iter().cloned().sum();
            assert!(s.is_zero());
        }
    }

    #[test]
    fn nullspace_of_empty_matrix_is_full() {
        assert_eq!(nullspace(&[], 4).len(), 4);
    }
}
