//! Sparse complex matrices in coordinate form.
//!
//! The public contract is coordinate semantics: entries are kept sorted by
//! (row, col) with duplicates merged at construction. A row-pointer table is
//! derived internally since matrix-vector products are the hot path of every
//! evolution in the crate. Matrices are immutable after construction and safe
//! to share across threads.

use crate::C64;

/// Tolerance below which merged entries are dropped as exact zeros.
const DROP_TOL: f64 = 0.0;

#[derive(Debug, thiserror::Error)]
pub enum SparseError {
    #[error("entry ({row}, {col}) out of bounds for {nrows}x{ncols} matrix")]
    OutOfBounds { row: usize, col: usize, nrows: usize, ncols: usize },
    #[error("dimension mismatch: left is {0}x{1}, right is {2}x{3}")]
    DimMismatch(usize, usize, usize, usize),
    #[error("vector length {0} does not match matrix dimension {1}")]
    VecLen(usize, usize),
}

/// Sparse complex matrix with sorted, duplicate-free coordinate entries.
#[derive(Debug, Clone, PartialEq)]
pub struct SparseComplexOperator {
    nrows: usize,
    ncols: usize,
    /// Sorted by (row, col); no duplicates.
    entries: Vec<(usize, usize, C64)>,
    /// entries[row_ptr[r]..row_ptr[r+1]] is row r.
    row_ptr: Vec<usize>,
}

impl SparseComplexOperator {
    /// Build from unsorted triplets; duplicates are summed, exact zeros dropped.
    pub fn from_triplets(
        nrows: usize,
        ncols: usize,
        triplets: impl IntoIterator<Item = (usize, usize, C64)>,
    ) -> Result<Self, SparseError> {
        let mut entries: Vec<(usize, usize, C64)> = Vec::new();
        for (r, c, v) in triplets {
            if r >= nrows || c >= ncols {
                return Err(SparseError::OutOfBounds { row: r, col: c, nrows, ncols });
            }
            entries.push((r, c, v));
        }
        entries.sort_unstable_by_key(|&(r, c, _)| (r, c));
        let mut merged: Vec<(usize, usize, C64)> = Vec::with_capacity(entries.len());
        for (r, c, v) in entries {
            match merged.last_mut() {
                Some(last) if last.0 == r && last.1 == c => last.2 += v,
                _ => merged.push((r, c, v)),
            }
        }
        merged.retain(|&(_, _, v)| v.norm_sqr() > DROP_TOL);
        Ok(Self::from_sorted(nrows, ncols, merged))
    }

    fn from_sorted(nrows: usize, ncols: usize, entries: Vec<(usize, usize, C64)>) -> Self {
        let mut row_ptr = vec![0usize; nrows + 1];
        for &(r, _, _) in &entries {
            row_ptr[r + 1] += 1;
        }
        for r in 0..nrows {
            row_ptr[r + 1] += row_ptr[r];
        }
        Self { nrows, ncols, entries, row_ptr }
    }

    /// All-zero matrix.
    pub fn zeros(nrows: usize, ncols: usize) -> Self {
        Self::from_sorted(nrows, ncols, Vec::new())
    }

    /// Identity of dimension `n`.
    pub fn identity(n: usize) -> Self {
        let one = C64::new(1.0, 0.0);
        Self::from_sorted(n, n, (0..n).map(|i| (i, i, one)).collect())
    }

    /// Dense row-major matrix to sparse.
    pub fn from_dense(nrows: usize, ncols: usize, data: &[C64]) -> Self {
        assert_eq!(data.len(), nrows * ncols, "dense data length mismatch");
        let entries = data
            .iter()
            .enumerate()
            .filter(|(_, v)| v.norm_sqr() > DROP_TOL)
            .map(|(i, &v)| (i / ncols, i % ncols, v))
            .collect();
        Self::from_sorted(nrows, ncols, entries)
    }

    /// Dense row-major copy.
    pub fn to_dense(&self) -> Vec<C64> {
        let mut out = vec![C64::new(0.0, 0.0); self.nrows * self.ncols];
        for &(r, c, v) in &self.entries {
            out[r * self.ncols + c] = v;
        }
        out
    }

    pub fn nrows(&self) -> usize {
        self.nrows
    }

    pub fn ncols(&self) -> usize {
        self.ncols
    }

    /// Sorted coordinate view.
    pub fn entries(&self) -> &[(usize, usize, C64)] {
        &self.entries
    }

    pub fn nnz(&self) -> usize {
        self.entries.len()
    }

    /// Entry accessor; zero for absent coordinates.
    pub fn get(&self, row: usize, col: usize) -> C64 {
        let lo = self.row_ptr[row];
        let hi = self.row_ptr[row + 1];
        match self.entries[lo..hi].binary_search_by_key(&col, |&(_, c, _)| c) {
            Ok(i) => self.entries[lo + i].2,
            Err(_) => C64::new(0.0, 0.0),
        }
    }

    /// y = A x, writing into a caller buffer.
    pub fn apply_into(&self, x: &[C64], y: &mut [C64]) {
        assert_eq!(x.len(), self.ncols, "apply_into: x length");
        assert_eq!(y.len(), self.nrows, "apply_into: y length");
        for r in 0..self.nrows {
            let mut acc = C64::new(0.0, 0.0);
            for &(_, c, v) in &self.entries[self.row_ptr[r]..self.row_ptr[r + 1]] {
                acc += v * x[c];
            }
            y[r] = acc;
        }
    }

    /// y += s · A x.
    pub fn apply_scaled_add(&self, s: C64, x: &[C64], y: &mut [C64]) {
        assert_eq!(x.len(), self.ncols, "apply_scaled_add: x length");
        assert_eq!(y.len(), self.nrows, "apply_scaled_add: y length");
        for r in 0..self.nrows {
            let mut acc = C64::new(0.0, 0.0);
            for &(_, c, v) in &self.entries[self.row_ptr[r]..self.row_ptr[r + 1]] {
                acc += v * x[c];
            }
            y[r] += s * acc;
        }
    }

    /// A x as a fresh vector.
    pub fn apply(&self, x: &[C64]) -> Result<Vec<C64>, SparseError> {
        if x.len() != self.ncols {
            return Err(SparseError::VecLen(x.len(), self.ncols));
        }
        let mut y = vec![C64::new(0.0, 0.0); self.nrows];
        self.apply_into(x, &mut y);
        Ok(y)
    }

    /// A + B.
    pub fn add(&self, other: &Self) -> Result<Self, SparseError> {
        if self.nrows != other.nrows || self.ncols != other.ncols {
            return Err(SparseError::DimMismatch(
                self.nrows, self.ncols, other.nrows, other.ncols,
            ));
        }
        Self::from_triplets(
            self.nrows,
            self.ncols,
            self.entries.iter().chain(other.entries.iter()).copied(),
        )
    }

    /// s · A.
    pub fn scale(&self, s: C64) -> Self {
        let entries = self.entries.iter().map(|&(r, c, v)| (r, c, s * v)).collect();
        Self::from_sorted(self.nrows, self.ncols, entries)
    }

    /// A B.
    pub fn matmul(&self, other: &Self) -> Result<Self, SparseError> {
        if self.ncols != other.nrows {
            return Err(SparseError::DimMismatch(
                self.nrows, self.ncols, other.nrows, other.ncols,
            ));
        }
        let mut triplets: Vec<(usize, usize, C64)> = Vec::new();
        for &(r, k, va) in &self.entries {
            for &(_, c, vb) in &other.entries[other.row_ptr[k]..other.row_ptr[k + 1]] {
                triplets.push((r, c, va * vb));
            }
        }
        Self::from_triplets(self.nrows, other.ncols, triplets)
    }

    /// Kronecker product A ⊗ B.
    pub fn kron(&self, other: &Self) -> Self {
        let nrows = self.nrows * other.nrows;
        let ncols = self.ncols * other.ncols;
        let mut entries = Vec::with_capacity(self.nnz() * other.nnz());
        for &(ra, ca, va) in &self.entries {
            for &(rb, cb, vb) in &other.entries {
                entries.push((ra * other.nrows + rb, ca * other.ncols + cb, va * vb));
            }
        }
        // Outer loop is row-sorted and inner blocks are disjoint, but the
        // column interleaving still needs a sort.
        entries.sort_unstable_by_key(|&(r, c, _)| (r, c));
        Self::from_sorted(nrows, ncols, entries)
    }

    /// Transpose.
    pub fn transpose(&self) -> Self {
        let mut entries: Vec<_> =
            self.entries.iter().map(|&(r, c, v)| (c, r, v)).collect();
        entries.sort_unstable_by_key(|&(r, c, _)| (r, c));
        Self::from_sorted(self.ncols, self.nrows, entries)
    }

    /// Entrywise complex conjugate.
    pub fn conj(&self) -> Self {
        let entries = self.entries.iter().map(|&(r, c, v)| (r, c, v.conj())).collect();
        Self::from_sorted(self.nrows, self.ncols, entries)
    }

    /// Conjugate transpose.
    pub fn dagger(&self) -> Self {
        self.transpose().conj()
    }

    /// max |A_ij - B_ij| over all coordinates.
    pub fn max_abs_diff(&self, other: &Self) -> f64 {
        assert_eq!((self.nrows, self.ncols), (other.nrows, other.ncols));
        let mut m = 0.0f64;
        for &(r, c, v) in &self.entries {
            m = m.max((v - other.get(r, c)).norm());
        }
        for &(r, c, v) in &other.entries {
            m = m.max((self.get(r, c) - v).norm());
        }
        m
    }

    /// max |A_ij| over all entries.
    pub fn max_abs(&self) -> f64 {
        self.entries.iter().fold(0.0f64, |m, &(_, _, v)| m.max(v.norm()))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn c(re: f64, im: f64) -> C64 {
        C64::new(re, im)
    }

    #[test]
    fn duplicates_merge_and_sort() {
        let m = SparseComplexOperator::from_triplets(
            2,
            2,
            vec![(1, 0, c(1.0, 0.0)), (0, 1, c(2.0, 0.0)), (1, 0, c(0.5, -1.0))],
        )
        .unwrap();
        assert_eq!(m.nnz(), 2);
        assert_eq!(m.entries()[0], (0, 1, c(2.0, 0.0)));
        assert_eq!(m.entries()[1], (1, 0, c(1.5, -1.0)));
    }

    #[test]
    fn out_of_bounds_rejected() {
        let r = SparseComplexOperator::from_triplets(2, 2, vec![(2, 0, c(1.0, 0.0))]);
        assert!(matches!(r, Err(SparseError::OutOfBounds { .. })));
    }

    #[test]
    fn dim_checks_on_add_and_matmul() {
        let a = SparseComplexOperator::identity(2);
        let b = SparseComplexOperator::identity(3);
        assert!(matches!(a.add(&b), Err(SparseError::DimMismatch(..))));
        assert!(matches!(a.matmul(&b), Err(SparseError::DimMismatch(..))));
    }

    #[test]
    fn matmul_against_dense() {
        let a = SparseComplexOperator::from_dense(
            2,
            3,
            &[c(1.0, 0.0), c(0.0, 1.0), c(0.0, 0.0), c(2.0, 0.0), c(0.0, 0.0), c(1.0, -1.0)],
        );
        let b = SparseComplexOperator::from_dense(
            3,
            2,
            &[c(1.0, 1.0), c(0.0, 0.0), c(0.5, 0.0), c(1.0, 0.0), c(0.0, 0.0), c(2.0, 0.0)],
        );
        let ab = a.matmul(&b).unwrap().to_dense();
        // Hand-computed product.
        assert!((ab[0] - c(1.0, 1.5)).norm() < 1e-14);
        assert!((ab[1] - c(0.0, 1.0)).norm() < 1e-14);
        assert!((ab[2] - c(2.0, 2.0)).norm() < 1e-14);
        assert!((ab[3] - c(2.0, -2.0)).norm() < 1e-14);
    }

    #[test]
    fn kron_identity_blocks() {
        let a = SparseComplexOperator::from_dense(2, 2, &[c(1.0, 0.0), c(2.0, 0.0), c(3.0, 0.0), c(4.0, 0.0)]);
        let k = SparseComplexOperator::identity(2).kron(&a);
        assert_eq!(k.nrows(), 4);
        assert!((k.get(0, 1) - c(2.0, 0.0)).norm() < 1e-15);
        assert!((k.get(3, 2) - c(3.0, 0.0)).norm() < 1e-15);
        assert!((k.get(0, 2)).norm() < 1e-15);
    }

    proptest! {
        // Sparse->dense->sparse preserves entries exactly.
        #[test]
        fn dense_round_trip(seed in proptest::collection::vec((0usize..5, 0usize..5, -10i32..10, -10i32..10), 0..20)) {
            let triplets: Vec<_> = seed
                .into_iter()
                .map(|(r, c_, re, im)| (r, c_, c(re as f64, im as f64)))
                .collect();
            let m = SparseComplexOperator::from_triplets(5, 5, triplets).unwrap();
            let back = SparseComplexOperator::from_dense(5, 5, &m.to_dense());
            prop_assert_eq!(m, back);
        }

        // (A B) x == A (B x) for random small operators.
        #[test]
        fn matmul_matches_apply(
            ta in proptest::collection::vec((0usize..4, 0usize..4, -5i32..5), 0..12),
            tb in proptest::collection::vec((0usize..4, 0usize..4, -5i32..5), 0..12),
            xs in proptest::collection::vec(-5i32..5, 4),
        ) {
            let a = SparseComplexOperator::from_triplets(4, 4, ta.into_iter().map(|(r, c_, v)| (r, c_, c(v as f64, 0.5 * v as f64)))).unwrap();
            let b = SparseComplexOperator::from_triplets(4, 4, tb.into_iter().map(|(r, c_, v)| (r, c_, c(v as f64, -(v as f64))))).unwrap();
            let x: Vec<C64> = xs.into_iter().map(|v| c(v as f64, 1.0)).collect();
            let via_product = a.matmul(&b).unwrap().apply(&x).unwrap();
            let via_chain = a.apply(&b.apply(&x).unwrap()).unwrap();
            for (p, q) in via_product.iter().zip(via_chain.iter()) {
                prop_assert!((p - q).norm() < 1e-12);
            }
        }
    }
}
