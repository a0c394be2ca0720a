use std::fmt;
use std::ops::{Index, IndexMut};

use serde::{Deserialize, Serialize};

use super::Field;

/// Dense row-major matrix over a field.
#[derive(Clone, PartialEq, Serialize, Deserialize)]
pub struct Matrix<F> {
    rows: usize,
    cols: usize,
    data: Vec<F>,
}

/// Reduced row echelon form: nonzero rows only, pivot entries equal to one.
#[derive(Clone, Debug, PartialEq)]
pub struct Echelon<F> {
    pub rows: Vec<Vec<F>>,
    pub pivots: Vec<usize>,
    pub cols: usize,
}

impl<F: Field> Matrix<F> {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Self {
            rows,
            cols,
            data: vec![F::zero(); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m[(i, i)] = F::one();
        }
        m
    }

    pub fn from_rows(rows: Vec<Vec<F>>) -> Self {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        assert!(rows.iter().all(|row| row.len() == c), "ragged rows");
        Self {
            rows: r,
            cols: c,
            data: rows.into_iter().flatten().collect(),
        }
    }

    /// Empty matrix with a fixed column count.
    pub fn empty(cols: usize) -> Self {
        Self {
            rows: 0,
            cols,
            data: Vec::new(),
        }
    }

    pub fn from_columns(cols: &[Vec<F>], nrows: usize) -> Self {
        let mut m = Self::zeros(nrows, cols.len());
        for (j, c) in cols.iter().enumerate() {
            assert_eq!(c.len(), nrows);
            for (i, v) in c.iter().enumerate() {
                m[(i, j)] = v.clone();
            }
        }
        m
    }

    pub fn nrows(&self) -> usize {
        self.rows
    }

    pub fn ncols(&self) -> usize {
        self.cols
    }

    pub fn data(&self) -> &[F] {
        &self.data
    }

    pub fn row(&self, i: usize) -> &[F] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn row_mut(&mut self, i: usize) -> &mut [F] {
        &mut self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn column(&self, j: usize) -> Vec<F> {
        (0..self.rows).map(|i| self[(i, j)].clone()).collect()
    }

    pub fn to_rows(&self) -> Vec<Vec<F>> {
        (0..self.rows).map(|i| self.row(i).to_vec()).collect()
    }

    pub fn map<G: Field>(&self, f: impl Fn(&F) -> G) -> Matrix<G> {
        Matrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(f).collect(),
        }
    }

    pub fn try_map<G: Field, E>(&self, f: impl Fn(&F) -> Result<G, E>) -> Result<Matrix<G>, E> {
        Ok(Matrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(f).collect::<Result<_, _>>()?,
        })
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|x| x.is_zero())
    }

    pub fn transpose(&self) -> Self {
        let mut t = Self::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t[(j, i)] = self[(i, j)].clone();
            }
        }
        t
    }

    pub fn mul(&self, other: &Self) -> Self {
        assert_eq!(self.cols, other.rows, "matrix product shape mismatch");
        let mut out = Self::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = &self[(i, k)];
                if a.is_zero() {
                    continue;
                }
                let orow = other.row(k);
                let dst = &mut out.data[i * other.cols..(i + 1) * other.cols];
                for (d, b) in dst.iter_mut().zip(orow) {
                    d.add_mul(a, b);
                }
            }
        }
        out
    }

    pub fn mul_vec(&self, v: &[F]) -> Vec<F> {
        assert_eq!(self.cols, v.len(), "matrix-vector shape mismatch");
        (0..self.rows)
            .map(|i| {
                let mut acc = F::zero();
                for (a, b) in self.row(i).iter().zip(v) {
                    acc.add_mul(a, b);
                }
                acc
            })
            .collect()
    }

    pub fn add(&self, other: &Self) -> Self {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        let mut out = self.clone();
        for (a, b) in out.data.iter_mut().zip(&other.data) {
            *a += b;
        }
        out
    }

    pub fn sub(&self, other: &Self) -> Self {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        let mut out = self.clone();
        for (a, b) in out.data.iter_mut().zip(&other.data) {
            *a -= b;
        }
        out
    }

    /// `self += s * other`
    pub fn add_scaled(&mut self, s: &F, other: &Self) {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        if s.is_zero() {
            return;
        }
        for (a, b) in self.data.iter_mut().zip(&other.data) {
            a.add_mul(s, b);
        }
    }

    pub fn scale(&self, s: &F) -> Self {
        self.map(|x| x.mul_ref(s))
    }

    pub fn trace(&self) -> F {
        let mut t = F::zero();
        for i in 0..self.rows.min(self.cols) {
            t += &self[(i, i)];
        }
        t
    }

    /// Kronecker product, with `self` indexing the slow coordinate.
    pub fn kron(&self, other: &Self) -> Self {
        let (r2, c2) = (other.rows, other.cols);
        let mut out = Self::zeros(self.rows * r2, self.cols * c2);
        for i in 0..self.rows {
            for j in 0..self.cols {
                let a = &self[(i, j)];
                if a.is_zero() {
                    continue;
                }
                for k in 0..r2 {
                    for l in 0..c2 {
                        out[(i * r2 + k, j * c2 + l)] = a.mul_ref(&other[(k, l)]);
                    }
                }
            }
        }
        out
    }

    /// Stacks matrices with equal column counts on top of each other.
    pub fn vstack(parts: &[Self]) -> Self {
        let cols = parts.first().map_or(0, |m| m.cols);
        let mut data = Vec::new();
        let mut rows = 0;
        for p in parts {
            assert_eq!(p.cols, cols, "vstack column mismatch");
            rows += p.rows;
            data.extend_from_slice(&p.data);
        }
        Self { rows, cols, data }
    }

    pub fn select_columns(&self, cols: &[usize]) -> Self {
        let mut out = Self::zeros(self.rows, cols.len());
        for i in 0..self.rows {
            for (jj, &j) in cols.iter().enumerate() {
                out[(i, jj)] = self[(i, j)].clone();
            }
        }
        out
    }

    pub fn select_rows(&self, rows: &[usize]) -> Self {
        let mut data = Vec::with_capacity(rows.len() * self.cols);
        for &i in rows {
            data.extend_from_slice(self.row(i));
        }
        Self {
            rows: rows.len(),
            cols: self.cols,
            data,
        }
    }

    pub fn rref(&self) -> Echelon<F> {
        let mut red = RowReducer::new(self.cols);
        for i in 0..self.rows {
            red.insert(self.row(i).to_vec());
        }
        red.into_echelon()
    }

    pub fn rank(&self) -> usize {
        // forward elimination only
        let mut rows: Vec<Vec<F>> = self.to_rows();
        let mut rank = 0;
        for col in 0..self.cols {
            let Some(p) = (rank..rows.len()).find(|&i| !rows[i][col].is_zero()) else {
                continue;
            };
            rows.swap(rank, p);
            let inv = rows[rank][col].inv().expect("nonzero pivot");
            let pivot_row = std::mem::take(&mut rows[rank]);
            for row in rows.iter_mut().skip(rank + 1) {
                if row[col].is_zero() {
                    continue;
                }
                let f = row[col].mul_ref(&inv);
                for (x, p) in row.iter_mut().zip(&pivot_row).skip(col) {
                    if !p.is_zero() {
                        *x -= &f.mul_ref(p);
                    }
                }
            }
            rows[rank] = pivot_row;
            rank += 1;
            if rank == rows.len() {
                break;
            }
        }
        rank
    }

    /// Basis of the right kernel `{v : self * v = 0}`, one vector per free
    /// column, with a one in that column and zeros in the other free columns.
    pub fn kernel_basis(&self) -> Vec<Vec<F>> {
        self.rref().kernel_basis()
    }

    /// Some solution of `self * x = b`, or `None` when inconsistent.
    pub fn solve(&self, b: &[F]) -> Option<Vec<F>> {
        assert_eq!(b.len(), self.rows);
        let mut red = RowReducer::new(self.cols + 1);
        for i in 0..self.rows {
            let mut r = self.row(i).to_vec();
            r.push(b[i].clone());
            red.insert(r);
        }
        let ech = red.into_echelon();
        if ech.pivots.last() == Some(&self.cols) {
            return None;
        }
        let mut x = vec![F::zero(); self.cols];
        for (row, &p) in ech.rows.iter().zip(&ech.pivots) {
            x[p] = row[self.cols].clone();
        }
        Some(x)
    }

    /// Determinant by elimination (square matrices only).
    pub fn det(&self) -> F {
        assert_eq!(self.rows, self.cols, "determinant of a non-square matrix");
        let n = self.rows;
        let mut rows = self.to_rows();
        let mut det = F::one();
        for col in 0..n {
            let Some(p) = (col..n).find(|&i| !rows[i][col].is_zero()) else {
                return F::zero();
            };
            if p != col {
                rows.swap(p, col);
                det = -det;
            }
            det *= &rows[col][col];
            let inv = rows[col][col].inv().expect("nonzero pivot");
            let pivot_row = rows[col].clone();
            for row in rows.iter_mut().skip(col + 1) {
                if row[col].is_zero() {
                    continue;
                }
                let f = row[col].mul_ref(&inv);
                for (x, p) in row.iter_mut().zip(&pivot_row).skip(col) {
                    *x -= &f.mul_ref(p);
                }
            }
        }
        det
    }

    pub fn inverse(&self) -> Option<Self> {
        let n = self.rows;
        assert_eq!(n, self.cols);
        let mut red = RowReducer::new(2 * n);
        for i in 0..n {
            let mut r = self.row(i).to_vec();
            r.extend((0..n).map(|j| if i == j { F::one() } else { F::zero() }));
            red.insert(r);
        }
        let ech = red.into_echelon();
        if ech.pivots.len() < n || ech.pivots[n - 1] >= n {
            return None;
        }
        Some(Matrix::from_rows(
            ech.rows.into_iter().map(|r| r[n..].to_vec()).collect(),
        ))
    }
}

impl<F: Field> Echelon<F> {
    pub fn rank(&self) -> usize {
        self.pivots.len()
    }

    pub fn to_matrix(&self) -> Matrix<F> {
        if self.rows.is_empty() {
            Matrix::empty(self.cols)
        } else {
            Matrix::from_rows(self.rows.clone())
        }
    }

    pub fn free_columns(&self) -> Vec<usize> {
        let mut is_pivot = vec![false; self.cols];
        for &p in &self.pivots {
            is_pivot[p] = true;
        }
        (0..self.cols).filter(|&j| !is_pivot[j]).collect()
    }

    pub fn kernel_basis(&self) -> Vec<Vec<F>> {
        self.free_columns()
            .into_iter()
            .map(|f| {
                let mut v = vec![F::zero(); self.cols];
                v[f] = F::one();
                for (row, &p) in self.rows.iter().zip(&self.pivots) {
                    if !row[f].is_zero() {
                        v[p] = -row[f].clone();
                    }
                }
                v
            })
            .collect()
    }

    /// Whether `v` lies in the row space.
    pub fn contains(&self, v: &[F]) -> bool {
        let mut v = v.to_vec();
        for (row, &p) in self.rows.iter().zip(&self.pivots) {
            if v[p].is_zero() {
                continue;
            }
            let f = v[p].clone();
            for (x, r) in v.iter_mut().zip(row) {
                if !r.is_zero() {
                    *x -= &f.mul_ref(r);
                }
            }
        }
        v.iter().all(|x| x.is_zero())
    }
}

/// Incremental row reduction keeping a fully reduced basis of the span of
/// the inserted rows.
#[derive(Clone, Debug)]
pub struct RowReducer<F> {
    cols: usize,
    rows: Vec<Vec<F>>,
    pivots: Vec<usize>,
}

impl<F: Field> RowReducer<F> {
    pub fn new(cols: usize) -> Self {
        Self {
            cols,
            rows: Vec::new(),
            pivots: Vec::new(),
        }
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    pub fn is_full(&self) -> bool {
        self.rows.len() == self.cols
    }

    /// Reduces `v` against the current basis, in place.
    pub fn reduce(&self, v: &mut [F]) {
        for (row, &p) in self.rows.iter().zip(&self.pivots) {
            if v[p].is_zero() {
                continue;
            }
            let f = v[p].clone();
            for (x, r) in v.iter_mut().zip(row) {
                if !r.is_zero() {
                    *x -= &f.mul_ref(r);
                }
            }
        }
    }

    /// Adds a row; returns whether the span grew.
    pub fn insert(&mut self, mut v: Vec<F>) -> bool {
        assert_eq!(v.len(), self.cols, "row length mismatch");
        if self.is_full() {
            return false;
        }
        self.reduce(&mut v);
        let Some(p) = v.iter().position(|x| !x.is_zero()) else {
            return false;
        };
        let inv = v[p].inv().expect("nonzero pivot");
        for x in v.iter_mut().skip(p) {
            if !x.is_zero() {
                *x *= &inv;
            }
        }
        for row in &mut self.rows {
            if row[p].is_zero() {
                continue;
            }
            let f = row[p].clone();
            for (x, r) in row.iter_mut().zip(&v).skip(p) {
                if !r.is_zero() {
                    *x -= &f.mul_ref(r);
                }
            }
        }
        self.rows.push(v);
        self.pivots.push(p);
        true
    }

    pub fn into_echelon(self) -> Echelon<F> {
        let mut order: Vec<usize> = (0..self.rows.len()).collect();
        order.sort_by_key(|&i| self.pivots[i]);
        let mut rows: Vec<Option<Vec<F>>> = self.rows.into_iter().map(Some).collect();
        let mut out_rows = Vec::with_capacity(order.len());
        let mut out_piv = Vec::with_capacity(order.len());
        for i in order {
            out_rows.push(rows[i].take().expect("row used once"));
            out_piv.push(self.pivots[i]);
        }
        Echelon {
            rows: out_rows,
            pivots: out_piv,
            cols: self.cols,
        }
    }
}

impl<F> Index<(usize, usize)> for Matrix<F> {
    type Output = F;
    fn index(&self, (i, j): (usize, usize)) -> &F {
        debug_assert!(i < self.rows && j < self.cols);
        &self.data[i * self.cols + j]
    }
}

impl<F> IndexMut<(usize, usize)> for Matrix<F> {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut F {
        debug_assert!(i < self.rows && j < self.cols);
        &mut self.data[i * self.cols + j]
    }
}

impl<F: fmt::Display> fmt::Debug for Matrix<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "[{}x{}]", self.rows, self.cols)?;
        for i in 0..self.rows {
            let row: Vec<String> = (0..self.cols)
                .map(|j| self.data[i * self.cols + j].to_string())
                .collect();
            writeln!(f, "  [{}]", row.join(", "))?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::{int, rat};
    use num_rational::BigRational;
    use proptest::prelude::*;

    fn q(rows: &[&[i64]]) -> Matrix<BigRational> {
        Matrix::from_rows(
            rows.iter()
                .map(|r| r.iter().map(|&x| int(x)).collect())
                .collect(),
        )
    }

    #[test]
    fn identity_rank_and_kernel() {
        let m = Matrix::<BigRational>::identity(3);
        assert_eq!(m.rank(), 3);
        assert!(m.kernel_basis().is_empty());
    }

    #[test]
    fn proportional_rows() {
        let m = q(&[&[1, 2], &[2, 4]]);
        assert_eq!(m.rank(), 1);
        assert_eq!(m.kernel_basis(), vec![vec![int(-2), int(1)]]);
    }

    #[test]
    fn empty_matrix_has_rank_zero() {
        let m = Matrix::<BigRational>::empty(4);
        assert_eq!(m.rank(), 0);
        assert_eq!(m.kernel_basis().len(), 4);
        assert_eq!(Matrix::<BigRational>::zeros(0, 0).rank(), 0);
    }

    #[test]
    fn solve_and_inverse() {
        let m = q(&[&[2, 1], &[1, 1]]);
        assert_eq!(m.solve(&[int(3), int(2)]), Some(vec![int(1), int(1)]));
        let inv = m.inverse().unwrap();
        assert_eq!(m.mul(&inv), Matrix::identity(2));
        assert_eq!(m.det(), int(1));
        let sing = q(&[&[1, 2], &[2, 4]]);
        assert!(sing.inverse().is_none());
        assert_eq!(sing.solve(&[int(1), int(0)]), None);
        assert_eq!(q(&[&[0, 1], &[1, 0]]).det(), int(-1));
        assert_eq!(
            Matrix::from_rows(vec![vec![rat(1, 2), rat(1, 3)], vec![rat(1, 4), rat(1, 5)]]).det(),
            rat(1, 10) - rat(1, 12)
        );
    }

    #[test]
    fn kron_trace_is_product_of_traces() {
        let a = q(&[&[1, 2], &[3, 4]]);
        let b = q(&[&[0, 1, 0], &[1, 0, 0], &[0, 0, 5]]);
        assert_eq!(a.kron(&b).trace(), a.trace() * b.trace());
    }

    fn small_matrix() -> impl Strategy<Value = Vec<Vec<i64>>> {
        (1usize..5, 1usize..5).prop_flat_map(|(r, c)| {
            prop::collection::vec(prop::collection::vec(-3i64..=3, c), r)
        })
    }

    proptest! {
        #[test]
        fn rank_of_transpose(rows in small_matrix()) {
            let m = Matrix::from_rows(rows.iter().map(|r| r.iter().map(|&x| int(x)).collect()).collect());
            prop_assert_eq!(m.rank(), m.transpose().rank());
            prop_assert_eq!(m.rank(), m.rref().rank());
        }

        #[test]
        fn kernel_is_annihilated(rows in small_matrix()) {
            let m = Matrix::from_rows(rows.iter().map(|r| r.iter().map(|&x| int(x)).collect()).collect());
            let ker = m.kernel_basis();
            prop_assert_eq!(m.rank() + ker.len(), m.ncols());
            for v in &ker {
                prop_assert!(m.mul_vec(v).iter().all(|x| x == &int(0)));
            }
            if !ker.is_empty() {
                prop_assert_eq!(Matrix::from_rows(ker.clone()).rank(), ker.len());
            }
        }
    }
}
