//! Dense exact linear algebra: reduced row-echelon form, nullspaces and
//! membership in a span.
//!
//! Pivoting is deterministic (leftmost column, first nonzero row), so every
//! basis derived from these routines is reproducible run to run.

use std::fmt;

use crate::field::Field;

/// A dense row-major matrix over `F`.
#[derive(Clone, PartialEq, Eq)]
pub struct Matrix<F: Field> {
    rows: usize,
    cols: usize,
    data: Vec<F::Elem>,
    field: F,
}

/// Result of [`Matrix::rref`].
#[derive(Clone, Debug)]
pub struct Rref<F: Field> {
    pub matrix: Matrix<F>,
    pub pivots: Vec<usize>,
    pub rank: usize,
}

/// The target vector is not a linear combination of the given basis.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct NotInSpan;

impl fmt::Display for NotInSpan {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "vector is not in the span")
    }
}

impl std::error::Error for NotInSpan {}

impl<F: Field> Matrix<F> {
    pub fn zeros(field: &F, rows: usize, cols: usize) -> Self {
        Matrix {
            rows,
            cols,
            data: vec![field.zero(); rows * cols],
            field: field.clone(),
        }
    }

    pub fn identity(field: &F, n: usize) -> Self {
        let mut m = Self::zeros(field, n, n);
        for i in 0..n {
            m.set(i, i, field.one());
        }
        m
    }

    /// Builds from rows; every row must have length `cols`.
    pub fn from_rows(field: &F, cols: usize, rows: Vec<Vec<F::Elem>>) -> Self {
        let n = rows.len();
        let mut data = Vec::with_capacity(n * cols);
        for row in rows {
            assert_eq!(row.len(), cols, "ragged matrix row");
            data.extend(row);
        }
        Matrix {
            rows: n,
            cols,
            data,
            field: field.clone(),
        }
    }

    /// Builds from small integer rows, reducing into the field.
    pub fn from_i64(field: &F, rows: &[&[i64]]) -> Self {
        let cols = rows.first().map_or(0, |r| r.len());
        let rows = rows
            .iter()
            .map(|r| r.iter().map(|&v| field.from_i64(v)).collect())
            .collect();
        Self::from_rows(field, cols, rows)
    }

    /// Builds a matrix whose columns are the given vectors (each of length `len`).
    pub fn from_columns(field: &F, len: usize, columns: &[Vec<F::Elem>]) -> Self {
        let mut m = Self::zeros(field, len, columns.len());
        for (j, col) in columns.iter().enumerate() {
            assert_eq!(col.len(), len, "column length mismatch");
            for (i, v) in col.iter().enumerate() {
                m.set(i, j, v.clone());
            }
        }
        m
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn field(&self) -> &F {
        &self.field
    }

    pub fn get(&self, i: usize, j: usize) -> &F::Elem {
        &self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: F::Elem) {
        self.data[i * self.cols + j] = v;
    }

    pub fn row(&self, i: usize) -> &[F::Elem] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn column(&self, j: usize) -> Vec<F::Elem> {
        (0..self.rows).map(|i| self.get(i, j).clone()).collect()
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|v| self.field.is_zero(v))
    }

    pub fn transpose(&self) -> Self {
        let mut t = Self::zeros(&self.field, self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t.set(j, i, self.get(i, j).clone());
            }
        }
        t
    }

    /// Matrix product `self * rhs`.
    pub fn mul(&self, rhs: &Matrix<F>) -> Matrix<F> {
        assert_eq!(self.cols, rhs.rows, "dimension mismatch in product");
        let f = &self.field;
        let mut out = Self::zeros(f, self.rows, rhs.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if f.is_zero(a) {
                    continue;
                }
                for j in 0..rhs.cols {
                    let b = rhs.get(k, j);
                    if f.is_zero(b) {
                        continue;
                    }
                    let idx = i * out.cols + j;
                    out.data[idx] = f.add(&out.data[idx], &f.mul(a, b));
                }
            }
        }
        out
    }

    pub fn mul_vec(&self, v: &[F::Elem]) -> Vec<F::Elem> {
        assert_eq!(self.cols, v.len(), "dimension mismatch in product");
        let f = &self.field;
        (0..self.rows)
            .map(|i| {
                self.row(i)
                    .iter()
                    .zip(v)
                    .filter(|(a, b)| !f.is_zero(a) && !f.is_zero(b))
                    .fold(f.zero(), |acc, (a, b)| f.add(&acc, &f.mul(a, b)))
            })
            .collect()
    }

    /// Reduced row-echelon form.
    pub fn rref(&self) -> Rref<F> {
        let mut m = self.clone();
        let pivots = m.rref_in_place(self.cols);
        let rank = pivots.len();
        Rref {
            matrix: m,
            pivots,
            rank,
        }
    }

    pub fn rank(&self) -> usize {
        self.clone().rref_in_place(self.cols).len()
    }

    /// Basis of `{v : self * v = 0}`, one vector per free column in
    /// increasing column order.
    pub fn nullspace_basis(&self) -> Vec<Vec<F::Elem>> {
        let f = &self.field;
        let Rref { matrix, pivots, .. } = self.rref();
        let mut is_pivot = vec![false; self.cols];
        for &p in &pivots {
            is_pivot[p] = true;
        }
        (0..self.cols)
            .filter(|&c| !is_pivot[c])
            .map(|free| {
                let mut v = vec![f.zero(); self.cols];
                v[free] = f.one();
                for (r, &p) in pivots.iter().enumerate() {
                    v[p] = f.neg(matrix.get(r, free));
                }
                v
            })
            .collect()
    }

    /// Row-reduces in place, choosing pivots only among the first
    /// `pivot_cols` columns; returns the pivot columns.
    fn rref_in_place(&mut self, pivot_cols: usize) -> Vec<usize> {
        let f = self.field.clone();
        let cols = self.cols;
        let mut pivots = Vec::new();
        let mut r = 0;
        for c in 0..pivot_cols {
            if r == self.rows {
                break;
            }
            let Some(p) = (r..self.rows).find(|&i| !f.is_zero(self.get(i, c))) else {
                continue;
            };
            if p != r {
                for j in 0..cols {
                    self.data.swap(p * cols + j, r * cols + j);
                }
            }
            let inv = f.inv(self.get(r, c)).expect("pivot is nonzero");
            for j in c..cols {
                let idx = r * cols + j;
                self.data[idx] = f.mul(&self.data[idx], &inv);
            }
            let (before, rest) = self.data.split_at_mut(r * cols);
            let (pivot_row, after) = rest.split_at_mut(cols);
            let eliminate = |row: &mut [F::Elem]| {
                let factor = row[c].clone();
                if f.is_zero(&factor) {
                    return;
                }
                for j in c..cols {
                    if !f.is_zero(&pivot_row[j]) {
                        row[j] = f.sub_mul(&row[j], &factor, &pivot_row[j]);
                    }
                }
            };
            before.chunks_mut(cols).for_each(eliminate);
            after.chunks_mut(cols).for_each(eliminate);
            pivots.push(c);
            r += 1;
        }
        pivots
    }
}

impl<F: Field> fmt::Debug for Matrix<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "Matrix {}x{} over {}", self.rows, self.cols, self.field.spec())?;
        for i in 0..self.rows {
            let row: Vec<String> = self.row(i).iter().map(|v| v.to_string()).collect();
            writeln!(f, "  [{}]", row.join(", "))?;
        }
        Ok(())
    }
}

/// Precomputed solver for `sum c_j * basis_j = target` with a fixed basis.
///
/// Built once from the basis vectors, then each query costs one
/// matrix-vector product. Coefficients of basis vectors that are linearly
/// dependent on earlier ones are always returned as zero.
#[derive(Clone, Debug)]
pub struct SpanSolver<F: Field> {
    len: usize,
    basis_len: usize,
    pivots: Vec<usize>,
    /// Row transform `E` with `E * [basis]` in reduced echelon form.
    transform: Matrix<F>,
}

impl<F: Field> SpanSolver<F> {
    pub fn new(field: &F, len: usize, basis: &[Vec<F::Elem>]) -> Self {
        let k = basis.len();
        let mut aug = Matrix::zeros(field, len, k + len);
        for (j, v) in basis.iter().enumerate() {
            assert_eq!(v.len(), len, "basis vector length mismatch");
            for (i, x) in v.iter().enumerate() {
                aug.set(i, j, x.clone());
            }
        }
        for i in 0..len {
            aug.set(i, k + i, field.one());
        }
        let pivots = aug.rref_in_place(k);
        let mut transform = Matrix::zeros(field, len, len);
        for i in 0..len {
            for j in 0..len {
                transform.set(i, j, aug.get(i, k + j).clone());
            }
        }
        SpanSolver {
            len,
            basis_len: k,
            pivots,
            transform,
        }
    }

    pub fn rank(&self) -> usize {
        self.pivots.len()
    }

    pub fn solve(&self, target: &[F::Elem]) -> Result<Vec<F::Elem>, NotInSpan> {
        assert_eq!(target.len(), self.len, "target length mismatch");
        let f = self.transform.field();
        let y = self.transform.mul_vec(target);
        if y[self.pivots.len()..].iter().any(|v| !f.is_zero(v)) {
            return Err(NotInSpan);
        }
        let mut coeffs = vec![f.zero(); self.basis_len];
        for (r, &p) in self.pivots.iter().enumerate() {
            coeffs[p] = y[r].clone();
        }
        Ok(coeffs)
    }
}

/// Coefficients `c` with `sum c_i * basis_i = target`, or [`NotInSpan`].
pub fn solve_in_span<F: Field>(
    field: &F,
    basis: &[Vec<F::Elem>],
    target: &[F::Elem],
) -> Result<Vec<F::Elem>, NotInSpan> {
    SpanSolver::new(field, target.len(), basis).solve(target)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::{PrimeField, Rationals};
    use proptest::prelude::*;

    fn q() -> Rationals {
        Rationals
    }

    fn gf(p: u64) -> PrimeField {
        PrimeField::new(p).unwrap()
    }

    #[test]
    fn rref_identity() {
        let m = Matrix::identity(&q(), 2);
        let r = m.rref();
        assert_eq!(r.matrix, m);
        assert_eq!(r.pivots, vec![0, 1]);
        assert_eq!(r.rank, 2);
    }

    #[test]
    fn rref_duplicate_rows_gf2() {
        let f = gf(2);
        let r = Matrix::from_i64(&f, &[&[1, 1], &[1, 1]]).rref();
        assert_eq!(r.matrix, Matrix::from_i64(&f, &[&[1, 1], &[0, 0]]));
        assert_eq!(r.rank, 1);
    }

    #[test]
    fn rref_proportional_rows() {
        let r = Matrix::from_i64(&q(), &[&[2, 4], &[1, 2]]).rref();
        assert_eq!(r.matrix, Matrix::from_i64(&q(), &[&[1, 2], &[0, 0]]));
        assert_eq!(r.pivots, vec![0]);
        assert_eq!(r.rank, 1);
    }

    #[test]
    fn nullspace_examples() {
        let zero = Matrix::zeros(&q(), 1, 3);
        let ns = zero.nullspace_basis();
        assert_eq!(ns.len(), 3);
        for (i, v) in ns.iter().enumerate() {
            for (j, x) in v.iter().enumerate() {
                assert_eq!(*x, if i == j { q().one() } else { q().zero() });
            }
        }
        assert!(Matrix::identity(&q(), 2).nullspace_basis().is_empty());
        let f = gf(2);
        assert_eq!(Matrix::from_i64(&f, &[&[1, 1]]).nullspace_basis(), vec![vec![1, 1]]);
    }

    #[test]
    fn solve_examples() {
        let f = q();
        let e1 = vec![f.one(), f.zero()];
        let e2 = vec![f.zero(), f.one()];
        let c = solve_in_span(&f, &[e1, e2], &[f.from_i64(3), f.from_i64(5)]).unwrap();
        assert_eq!(c, vec![f.from_i64(3), f.from_i64(5)]);

        let ones = vec![f.one(), f.one()];
        assert_eq!(
            solve_in_span(&f, &[ones], &[f.one(), f.zero()]),
            Err(NotInSpan)
        );

        let g = gf(3);
        assert_eq!(solve_in_span(&g, &[vec![1, 1]], &[2, 2]), Ok(vec![2]));
    }

    #[test]
    fn dependent_basis_gets_zero_coefficient() {
        let g = gf(5);
        let c = solve_in_span(&g, &[vec![1, 0], vec![2, 0], vec![0, 1]], &[3, 4]).unwrap();
        assert_eq!(c, vec![3, 0, 4]);
    }

    fn small_matrix() -> impl Strategy<Value = (usize, usize, Vec<i64>)> {
        (1usize..6, 1usize..6).prop_flat_map(|(r, c)| {
            (Just(r), Just(c), prop::collection::vec(-4i64..5, r * c))
        })
    }

    fn build<F: Field>(f: &F, r: usize, c: usize, data: &[i64]) -> Matrix<F> {
        let rows = data
            .chunks(c)
            .map(|row| row.iter().map(|&v| f.from_i64(v)).collect())
            .collect::<Vec<_>>();
        assert_eq!(rows.len(), r);
        Matrix::from_rows(f, c, rows)
    }

    proptest! {
        #[test]
        fn rank_equals_transpose_rank((r, c, data) in small_matrix()) {
            let m = build(&q(), r, c, &data);
            prop_assert_eq!(m.rank(), m.transpose().rank());
            let g = build(&gf(3), r, c, &data);
            prop_assert_eq!(g.rank(), g.transpose().rank());
        }

        #[test]
        fn nullspace_vectors_are_killed((r, c, data) in small_matrix()) {
            let m = build(&q(), r, c, &data);
            let ns = m.nullspace_basis();
            prop_assert_eq!(ns.len(), c - m.rank());
            for v in ns {
                prop_assert!(m.mul_vec(&v).iter().all(|x| q().is_zero(x)));
            }
        }

        #[test]
        fn rref_is_idempotent((r, c, data) in small_matrix()) {
            let once = build(&gf(7), r, c, &data).rref().matrix;
            prop_assert_eq!(once.rref().matrix, once.clone());
            let once_q = build(&q(), r, c, &data).rref().matrix;
            prop_assert_eq!(once_q.rref().matrix, once_q.clone());
        }

        #[test]
        fn prime_field_matches_reduced_integers(
            (r, c, data) in small_matrix(),
            v in prop::collection::vec(-4i64..5, 6),
        ) {
            // Integer matrix-vector product reduced mod p agrees with GF(p) arithmetic.
            let p = 5i64;
            let g = gf(5);
            let m = build(&g, r, c, &data);
            let vv: Vec<u32> = v[..c].iter().map(|&x| g.from_i64(x)).collect();
            let got = m.mul_vec(&vv);
            for i in 0..r {
                let exact: i64 = (0..c).map(|j| data[i * c + j] * v[j]).sum();
                prop_assert_eq!(got[i], exact.rem_euclid(p) as u32);
            }
        }

        #[test]
        fn solver_reconstructs_span_members(
            (r, c, data) in small_matrix(),
            coeffs in prop::collection::vec(-3i64..4, 6),
        ) {
            let f = q();
            let m = build(&f, r, c, &data);
            let basis: Vec<_> = (0..c).map(|j| m.column(j)).collect();
            let target = m.mul_vec(&coeffs[..c].iter().map(|&x| f.from_i64(x)).collect::<Vec<_>>());
            let sol = solve_in_span(&f, &basis, &target).unwrap();
            prop_assert_eq!(m.mul_vec(&sol), target);
        }
    }
}
