//! Exact rational matrices with fraction-free row reduction.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::graded::Scalar;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Matrix {
    rows: usize,
    cols: usize,
    data: Vec<Scalar>,
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
        let mut m = Matrix::zeros(n, n);
        for i in 0..n {
            m.set(i, i, Scalar::one());
        }
        m
    }

    pub fn from_rows(rows: Vec<Vec<Scalar>>) -> Self {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        assert!(rows.iter().all(|row| row.len() == c), "ragged rows");
        Matrix {
            rows: r,
            cols: c,
            data: rows.into_iter().flatten().collect(),
        }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> &Scalar {
        &self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: Scalar) {
        self.data[i * self.cols + j] = v;
    }

    pub fn add_at(&mut self, i: usize, j: usize, v: &Scalar) {
        self.data[i * self.cols + j] += v;
    }

    pub fn row(&self, i: usize) -> &[Scalar] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn transpose(&self) -> Matrix {
        let mut t = Matrix::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t.set(j, i, self.get(i, j).clone());
            }
        }
        t
    }

    pub fn mul(&self, other: &Matrix) -> Matrix {
        assert_eq!(self.cols, other.rows, "dimension mismatch");
        let mut out = Matrix::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    let b = other.get(k, j);
                    if !b.is_zero() {
                        out.add_at(i, j, &(a * b));
                    }
                }
            }
        }
        out
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(Zero::is_zero)
    }

    /// Columns of `self` followed by the columns of `other`.
    pub fn hstack(&self, other: &Matrix) -> Matrix {
        assert_eq!(self.rows, other.rows, "row count mismatch");
        let rows = (0..self.rows)
            .map(|i| {
                let mut r = self.row(i).to_vec();
                r.extend_from_slice(other.row(i));
                r
            })
            .collect();
        let mut m = Matrix::from_rows(rows);
        if self.rows == 0 {
            m.cols = self.cols + other.cols;
        }
        m
    }
}

fn integer_row(row: &[Scalar]) -> Vec<BigInt> {
    let l = row
        .iter()
        .filter(|c| !c.is_zero())
        .fold(BigInt::one(), |acc, c| acc.lcm(c.denom()));
    let mut out: Vec<BigInt> = row.iter().map(|c| c.numer() * (&l / c.denom())).collect();
    remove_content(&mut out);
    out
}

fn remove_content(row: &mut [BigInt]) {
    let g = row.iter().fold(BigInt::zero(), |acc, x| acc.gcd(x));
    if !g.is_zero() && !g.is_one() {
        for x in row.iter_mut() {
            *x /= &g;
        }
    }
}

fn leading(row: &[BigInt]) -> Option<usize> {
    row.iter().position(|x| !x.is_zero())
}

/// `target <- pivot[col] * target - target[col] * pivot`, then divided by
/// its content.
fn eliminate(target: &mut [BigInt], pivot: &[BigInt], col: usize) {
    let a = pivot[col].clone();
    let b = target[col].clone();
    if b.is_zero() {
        return;
    }
    for (t, p) in target.iter_mut().zip(pivot) {
        *t = &a * &*t - &b * p;
    }
    remove_content(target);
}

/// Rank and a kernel basis `{v : M v = 0}`. Rows are consumed in order and
/// the first nonzero entry of each reduced row becomes its pivot; entries
/// stay integral throughout.
pub fn rank_kernel(m: &Matrix) -> (usize, Vec<Vec<Scalar>>) {
    let (rank, kernel, _) = rank_kernel_free(m);
    (rank, kernel)
}

/// As [`rank_kernel`], also returning the free column of each kernel
/// vector. The vector for free column `j` is 1 at `j` and 0 at every other
/// free column.
pub fn rank_kernel_free(m: &Matrix) -> (usize, Vec<Vec<Scalar>>, Vec<usize>) {
    let mut pivots: Vec<(usize, Vec<BigInt>)> = Vec::new();
    for i in 0..m.rows() {
        let mut r = integer_row(m.row(i));
        while let Some(col) = leading(&r) {
            match pivots.iter().find(|(c, _)| *c == col) {
                Some((_, p)) => eliminate(&mut r, p, col),
                None => {
                    if r[col].is_negative() {
                        r.iter_mut().for_each(|x| *x = -&*x);
                    }
                    pivots.push((col, r));
                    break;
                }
            }
        }
    }
    let rank = pivots.len();
    pivots.sort_by_key(|(c, _)| *c);
    // back substitution to reduced echelon form
    for k in (0..pivots.len()).rev() {
        let (col, prow) = pivots[k].clone();
        for (_, row) in pivots.iter_mut().take(k) {
            eliminate(row, &prow, col);
        }
    }
    let is_pivot: Vec<bool> = {
        let mut v = vec![false; m.cols()];
        for (c, _) in &pivots {
            v[*c] = true;
        }
        v
    };
    let mut kernel = Vec::new();
    let free_cols: Vec<usize> = (0..m.cols()).filter(|&j| !is_pivot[j]).collect();
    for &free in &free_cols {
        let mut v = vec![Scalar::zero(); m.cols()];
        v[free] = Scalar::one();
        for (c, row) in &pivots {
            if !row[free].is_zero() {
                v[*c] = -Scalar::new(row[free].clone(), row[*c].clone());
            }
        }
        kernel.push(v);
    }
    (rank, kernel, free_cols)
}

pub fn rank(m: &Matrix) -> usize {
    rank_kernel(m).0
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graded::int;
    use proptest::prelude::*;

    fn ints(rows: &[&[i64]]) -> Matrix {
        Matrix::from_rows(rows.iter().map(|r| r.iter().map(|&x| int(x)).collect()).collect())
    }

    #[test]
    fn empty_matrix() {
        let (r, k) = rank_kernel(&Matrix::zeros(0, 0));
        assert_eq!(r, 0);
        assert!(k.is_empty());
    }

    #[test]
    fn identity_has_full_rank() {
        let (r, k) = rank_kernel(&Matrix::identity(3));
        assert_eq!(r, 3);
        assert!(k.is_empty());
    }

    #[test]
    fn rank_one_example() {
        let (r, k) = rank_kernel(&ints(&[&[1, 2], &[2, 4]]));
        assert_eq!(r, 1);
        assert_eq!(k, vec![vec![int(-2), int(1)]]);
    }

    #[test]
    fn rational_entries() {
        let m = Matrix::from_rows(vec![
            vec![Scalar::new(1.into(), 2.into()), Scalar::new(1.into(), 3.into())],
            vec![int(3), int(2)],
        ]);
        let (r, k) = rank_kernel(&m);
        assert_eq!(r, 1);
        assert_eq!(k, vec![vec![Scalar::new((-2).into(), 3.into()), int(1)]]);
    }

    proptest! {
        #[test]
        fn rank_nullity_and_kernel(
            rows in 0usize..6,
            cols in 0usize..6,
            seed in proptest::collection::vec(-3i64..4, 36)
        ) {
            let m = Matrix::from_rows(
                (0..rows).map(|i| (0..cols).map(|j| int(seed[i * 6 + j])).collect()).collect(),
            );
            let m = if rows == 0 { Matrix::zeros(0, cols) } else { m };
            let (r, k) = rank_kernel(&m);
            prop_assert_eq!(r + k.len(), cols);
            prop_assert_eq!(r, rank(&m.transpose()));
            for v in &k {
                for i in 0..rows {
                    let s: Scalar = (0..cols).map(|j| m.get(i, j) * &v[j]).sum();
                    prop_assert!(s.is_zero());
                }
            }
        }
    }
}
