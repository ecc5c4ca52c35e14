//! Exact sparse integer matrices.
//!
//! Entries are kept as `(row, col, value)` triplets sorted by `(col, row)`
//! with no explicit zeros. All arithmetic is arbitrary precision.

use std::collections::BTreeMap;
use std::ops::{Add, Mul, Sub};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SparseMatrix {
    rows: usize,
    cols: usize,
    entries: Vec<(usize, usize, BigInt)>,
}

impl SparseMatrix {
    /// Builds a matrix from unsorted triplets; duplicates are summed and
    /// zeros dropped.
    pub fn from_triplets<I>(rows: usize, cols: usize, triplets: I) -> Self
    where
        I: IntoIterator<Item = (usize, usize, BigInt)>,
    {
        let mut acc: BTreeMap<(usize, usize), BigInt> = BTreeMap::new();
        for (r, c, v) in triplets {
            assert!(r < rows && c < cols, "entry ({r},{c}) outside {rows}x{cols}");
            *acc.entry((c, r)).or_insert_with(BigInt::zero) += v;
        }
        let entries = acc
            .into_iter()
            .filter(|(_, v)| !v.is_zero())
            .map(|((c, r), v)| (r, c, v))
            .collect();
        SparseMatrix { rows, cols, entries }
    }

    pub fn zeros(rows: usize, cols: usize) -> Self {
        SparseMatrix { rows, cols, entries: Vec::new() }
    }

    pub fn identity(n: usize) -> Self {
        Self::scalar(n, BigInt::one())
    }

    pub fn scalar(n: usize, value: BigInt) -> Self {
        if value.is_zero() {
            return Self::zeros(n, n);
        }
        SparseMatrix { rows: n, cols: n, entries: (0..n).map(|i| (i, i, value.clone())).collect() }
    }

    pub fn from_dense(rows: &[Vec<i64>]) -> Self {
        let r = rows.len();
        let c = rows.first().map_or(0, |row| row.len());
        Self::from_triplets(
            r,
            c,
            rows.iter()
                .enumerate()
                .flat_map(|(i, row)| row.iter().enumerate().map(move |(j, &v)| (i, j, BigInt::from(v)))),
        )
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn nnz(&self) -> usize {
        self.entries.len()
    }

    /// Nonzero entries in `(col, row)` order.
    pub fn entries(&self) -> &[(usize, usize, BigInt)] {
        &self.entries
    }

    /// Nonzero entries sorted by `(row, col)`.
    pub fn entries_row_major(&self) -> Vec<(usize, usize, BigInt)> {
        let mut out = self.entries.clone();
        out.sort_by_key(|e| (e.0, e.1));
        out
    }

    pub fn get(&self, row: usize, col: usize) -> BigInt {
        self.entries
            .binary_search_by(|e| (e.1, e.0).cmp(&(col, row)))
            .map(|i| self.entries[i].2.clone())
            .unwrap_or_else(|_| BigInt::zero())
    }

    /// Nonzeros of one column as `(row, value)`.
    pub fn column(&self, col: usize) -> impl Iterator<Item = (usize, &BigInt)> {
        let start = self.entries.partition_point(|e| e.1 < col);
        self.entries[start..].iter().take_while(move |e| e.1 == col).map(|e| (e.0, &e.2))
    }

    pub fn transpose(&self) -> SparseMatrix {
        let mut entries: Vec<_> = self.entries.iter().map(|(r, c, v)| (*c, *r, v.clone())).collect();
        entries.sort_by_key(|e| (e.1, e.0));
        SparseMatrix { rows: self.cols, cols: self.rows, entries }
    }

    pub fn to_dense(&self) -> Vec<Vec<BigInt>> {
        let mut out = vec![vec![BigInt::zero(); self.cols]; self.rows];
        for (r, c, v) in &self.entries {
            out[*r][*c] = v.clone();
        }
        out
    }

    pub fn is_symmetric(&self) -> bool {
        self.is_square() && *self == self.transpose()
    }

    pub fn scale(&self, k: &BigInt) -> SparseMatrix {
        if k.is_zero() {
            return Self::zeros(self.rows, self.cols);
        }
        SparseMatrix {
            rows: self.rows,
            cols: self.cols,
            entries: self.entries.iter().map(|(r, c, v)| (*r, *c, v * k)).collect(),
        }
    }

    /// `self * x` over the rationals.
    pub fn apply(&self, x: &[BigRational]) -> Vec<BigRational> {
        assert_eq!(x.len(), self.cols, "vector length does not match matrix columns");
        let mut y = vec![BigRational::zero(); self.rows];
        for (r, c, v) in &self.entries {
            if !x[*c].is_zero() {
                y[*r] += &x[*c] * BigRational::from_integer(v.clone());
            }
        }
        y
    }

    /// `self * x` over the integers.
    pub fn apply_int(&self, x: &[BigInt]) -> Vec<BigInt> {
        assert_eq!(x.len(), self.cols, "vector length does not match matrix columns");
        let mut y = vec![BigInt::zero(); self.rows];
        for (r, c, v) in &self.entries {
            if !x[*c].is_zero() {
                y[*r] += &x[*c] * v;
            }
        }
        y
    }

    /// Rank over the rationals by fraction-free elimination.
    pub fn rank(&self) -> usize {
        let mut m = self.to_dense();
        let (rows, cols) = (self.rows, self.cols);
        let mut rank = 0;
        for col in 0..cols {
            let Some(pivot) = (rank..rows).find(|&r| !m[r][col].is_zero()) else { continue };
            m.swap(rank, pivot);
            for r in 0..rows {
                if r != rank && !m[r][col].is_zero() {
                    let a = m[rank][col].clone();
                    let b = m[r][col].clone();
                    for c in col..cols {
                        let v = &m[r][c] * &a - &m[rank][c] * &b;
                        m[r][c] = v;
                    }
                }
            }
            rank += 1;
            if rank == rows {
                break;
            }
        }
        rank
    }
}

impl<'a> Mul<&'a SparseMatrix> for &'a SparseMatrix {
    type Output = SparseMatrix;

    fn mul(self, rhs: &'a SparseMatrix) -> SparseMatrix {
        assert_eq!(self.cols, rhs.rows, "dimension mismatch in product");
        // column j of the product is self applied to column j of rhs
        let mut triplets = Vec::new();
        for j in 0..rhs.cols {
            let mut acc: BTreeMap<usize, BigInt> = BTreeMap::new();
            for (k, b) in rhs.column(j) {
                for (i, a) in self.column(k) {
                    *acc.entry(i).or_insert_with(BigInt::zero) += a * b;
                }
            }
            triplets.extend(acc.into_iter().map(|(i, v)| (i, j, v)));
        }
        SparseMatrix::from_triplets(self.rows, rhs.cols, triplets)
    }
}

impl<'a> Add<&'a SparseMatrix> for &'a SparseMatrix {
    type Output = SparseMatrix;

    fn add(self, rhs: &'a SparseMatrix) -> SparseMatrix {
        assert_eq!((self.rows, self.cols), (rhs.rows, rhs.cols));
        SparseMatrix::from_triplets(
            self.rows,
            self.cols,
            self.entries.iter().chain(rhs.entries.iter()).cloned(),
        )
    }
}

impl<'a> Sub<&'a SparseMatrix> for &'a SparseMatrix {
    type Output = SparseMatrix;

    fn sub(self, rhs: &'a SparseMatrix) -> SparseMatrix {
        assert_eq!((self.rows, self.cols), (rhs.rows, rhs.cols));
        SparseMatrix::from_triplets(
            self.rows,
            self.cols,
            self.entries
                .iter()
                .cloned()
                .chain(rhs.entries.iter().map(|(r, c, v)| (*r, *c, -v))),
        )
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn dense(m: &SparseMatrix) -> Vec<Vec<i64>> {
        m.to_dense()
            .into_iter()
            .map(|row| row.into_iter().map(|v| i64::try_from(v).unwrap()).collect())
            .collect()
    }

    #[test]
    fn triplets_are_merged_and_sorted() {
        let m = SparseMatrix::from_triplets(
            2,
            3,
            vec![(1, 2, 3.into()), (0, 0, 1.into()), (1, 2, (-3).into()), (0, 2, 5.into())],
        );
        assert_eq!(m.nnz(), 2);
        assert_eq!(m.entries()[0].1, 0);
        assert_eq!(m.get(0, 2), BigInt::from(5));
        assert_eq!(m.get(1, 2), BigInt::zero());
    }

    #[test]
    fn product_and_transpose() {
        let a = SparseMatrix::from_dense(&[vec![1, 2], vec![0, 1], vec![3, 0]]);
        let b = SparseMatrix::from_dense(&[vec![1, 0, 2], vec![4, 1, 0]]);
        assert_eq!(dense(&(&a * &b)), vec![vec![9, 2, 2], vec![4, 1, 0], vec![3, 0, 6]]);
        assert_eq!(dense(&a.transpose()), vec![vec![1, 0, 3], vec![2, 1, 0]]);
        let ata = &a.transpose() * &a;
        assert!(ata.is_symmetric());
    }

    #[test]
    fn rank_detects_deficiency() {
        let full = SparseMatrix::from_dense(&[vec![1, 1, 0], vec![0, 1, 1]]);
        assert_eq!(full.rank(), 2);
        let zero_row = SparseMatrix::from_dense(&[vec![1, 1, 0], vec![0, 0, 0]]);
        assert_eq!(zero_row.rank(), 1);
        let dependent = SparseMatrix::from_dense(&[vec![1, 2], vec![2, 4], vec![1, 0]]);
        assert_eq!(dependent.rank(), 2);
    }

    #[test]
    fn apply_matches_dense() {
        let a = SparseMatrix::from_dense(&[vec![1, 2], vec![0, -1]]);
        let x = vec![BigInt::from(3), BigInt::from(4)];
        assert_eq!(a.apply_int(&x), vec![BigInt::from(11), BigInt::from(-4)]);
    }
}
