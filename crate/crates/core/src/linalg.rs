//! Dense exact matrices.
//!
//! Elimination always pivots on the first nonzero column and, within it, the
//! first nonzero row, so kernels, ranks and echelon forms are reproducible
//! bit for bit. Matrices with a zero extent are ordinary values.

use std::fmt;

use rand::Rng;

use crate::error::{Error, Result};
use crate::field::{Elem, Field, Scalar};

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Mat {
    rows: usize,
    cols: usize,
    field: Field,
    data: Vec<Elem>,
}

fn mismatch(what: impl Into<String>) -> Error {
    Error::DimensionMismatch(what.into())
}

impl Mat {
    pub fn new(field: Field, rows: usize, cols: usize, data: Vec<Elem>) -> Result<Mat> {
        if data.len() != rows * cols {
            return Err(mismatch(format!("{} entries for a {rows}x{cols} matrix", data.len())));
        }
        if let Some(e) = data.iter().find(|e| !field.contains(**e)) {
            return Err(Error::InvalidParameter(format!("{e:?} is not reduced in {field}")));
        }
        Ok(Mat { rows, cols, field, data })
    }

    pub fn zeros(field: Field, rows: usize, cols: usize) -> Mat {
        Mat { rows, cols, field, data: vec![Elem::ZERO; rows * cols] }
    }

    pub fn identity(field: Field, n: usize) -> Mat {
        let mut m = Mat::zeros(field, n, n);
        for i in 0..n {
            m.data[i * n + i] = Elem::ONE;
        }
        m
    }

    /// `c * I_n`.
    pub fn scalar_matrix(field: Field, n: usize, c: Elem) -> Mat {
        let mut m = Mat::zeros(field, n, n);
        for i in 0..n {
            m.data[i * n + i] = c;
        }
        m
    }

    pub fn from_fn(field: Field, rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> Elem) -> Mat {
        let mut data = Vec::with_capacity(rows * cols);
        for i in 0..rows {
            for j in 0..cols {
                data.push(f(i, j));
            }
        }
        Mat { rows, cols, field, data }
    }

    /// Integer entries reduced into the prime subfield. Panics on ragged input.
    pub fn from_i64(field: Field, rows: &[&[i64]]) -> Mat {
        let r = rows.len();
        let c = rows.first().map_or(0, |row| row.len());
        assert!(rows.iter().all(|row| row.len() == c), "ragged matrix literal");
        Mat::from_fn(field, r, c, |i, j| field.from_i64(rows[i][j]))
    }

    pub fn diag(field: Field, entries: &[Elem]) -> Mat {
        let n = entries.len();
        let mut m = Mat::zeros(field, n, n);
        for (i, e) in entries.iter().enumerate() {
            m.data[i * n + i] = *e;
        }
        m
    }

    pub fn random<R: Rng + ?Sized>(field: Field, rows: usize, cols: usize, rng: &mut R) -> Mat {
        Mat::from_fn(field, rows, cols, |_, _| field.random(rng))
    }

    /// Uniform over `GL(n)` by rejection.
    pub fn random_invertible<R: Rng + ?Sized>(field: Field, n: usize, rng: &mut R) -> Mat {
        loop {
            let m = Mat::random(field, n, n, rng);
            if m.rank() == n {
                return m;
            }
        }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn shape(&self) -> (usize, usize) {
        (self.rows, self.cols)
    }

    pub fn field(&self) -> Field {
        self.field
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn data(&self) -> &[Elem] {
        &self.data
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize) -> Elem {
        debug_assert!(i < self.rows && j < self.cols);
        self.data[i * self.cols + j]
    }

    #[inline]
    pub fn set(&mut self, i: usize, j: usize, v: Elem) {
        debug_assert!(i < self.rows && j < self.cols);
        self.data[i * self.cols + j] = v;
    }

    pub fn scalar(&self, i: usize, j: usize) -> Scalar {
        self.field.scalar(self.get(i, j))
    }

    pub fn row(&self, i: usize) -> &[Elem] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn col(&self, j: usize) -> Vec<Elem> {
        (0..self.rows).map(|i| self.get(i, j)).collect()
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|e| e.is_zero())
    }

    pub fn is_identity(&self) -> bool {
        self.is_square()
            && (0..self.rows).all(|i| (0..self.cols).all(|j| self.get(i, j) == if i == j { Elem::ONE } else { Elem::ZERO }))
    }

    fn same_field(&self, other: &Mat) -> Result<()> {
        if self.field != other.field {
            return Err(Error::FieldMismatch);
        }
        Ok(())
    }

    pub fn add(&self, other: &Mat) -> Result<Mat> {
        self.same_field(other)?;
        if self.shape() != other.shape() {
            return Err(mismatch(format!("add {:?} + {:?}", self.shape(), other.shape())));
        }
        let f = self.field;
        let data = self.data.iter().zip(&other.data).map(|(a, b)| f.add(*a, *b)).collect();
        Ok(Mat { data, ..*self })
    }

    pub fn sub(&self, other: &Mat) -> Result<Mat> {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> Mat {
        let f = self.field;
        Mat { data: self.data.iter().map(|a| f.neg(*a)).collect(), ..*self }
    }

    pub fn scale(&self, c: Elem) -> Mat {
        let f = self.field;
        Mat { data: self.data.iter().map(|a| f.mul(c, *a)).collect(), ..*self }
    }

    pub fn mul(&self, other: &Mat) -> Result<Mat> {
        self.same_field(other)?;
        if self.cols != other.rows {
            return Err(mismatch(format!("mul {:?} * {:?}", self.shape(), other.shape())));
        }
        let f = self.field;
        let (n, m, k) = (self.rows, other.cols, self.cols);
        let mut data = vec![Elem::ZERO; n * m];
        for i in 0..n {
            let out = &mut data[i * m..(i + 1) * m];
            for l in 0..k {
                let a = self.data[i * k + l];
                if a.is_zero() {
                    continue;
                }
                let brow = &other.data[l * m..(l + 1) * m];
                for (o, b) in out.iter_mut().zip(brow) {
                    if !b.is_zero() {
                        *o = f.mul_add(a, *b, *o);
                    }
                }
            }
        }
        Ok(Mat { rows: n, cols: m, field: f, data })
    }

    /// `self * v` for a column vector `v`.
    pub fn mul_vec(&self, v: &[Elem]) -> Result<Vec<Elem>> {
        if v.len() != self.cols {
            return Err(mismatch(format!("mul_vec {:?} * {}", self.shape(), v.len())));
        }
        let f = self.field;
        Ok((0..self.rows)
            .map(|i| self.row(i).iter().zip(v).fold(Elem::ZERO, |acc, (a, b)| f.mul_add(*a, *b, acc)))
            .collect())
    }

    pub fn pow(&self, mut e: u64) -> Result<Mat> {
        if !self.is_square() {
            return Err(mismatch("power of a non-square matrix"));
        }
        let mut acc = Mat::identity(self.field, self.rows);
        let mut base = self.clone();
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&base)?;
            }
            e >>= 1;
            if e > 0 {
                base = base.mul(&base)?;
            }
        }
        Ok(acc)
    }

    pub fn transpose(&self) -> Mat {
        Mat::from_fn(self.field, self.cols, self.rows, |i, j| self.get(j, i))
    }

    /// Entrywise involution.
    pub fn conj(&self) -> Mat {
        let f = self.field;
        Mat { data: self.data.iter().map(|a| f.conj(*a)).collect(), ..*self }
    }

    /// Conjugate transpose `A* = conj(A)^T`.
    pub fn star(&self) -> Mat {
        let f = self.field;
        Mat::from_fn(f, self.cols, self.rows, |i, j| f.conj(self.get(j, i)))
    }

    pub fn trace(&self) -> Elem {
        let f = self.field;
        (0..self.rows.min(self.cols)).fold(Elem::ZERO, |acc, i| f.add(acc, self.get(i, i)))
    }

    /// Reduced row echelon form and pivot columns.
    pub fn rref(&self) -> (Mat, Vec<usize>) {
        let f = self.field;
        let mut m = self.clone();
        let (rows, cols) = self.shape();
        let mut pivots = Vec::new();
        let mut r = 0;
        for c in 0..cols {
            if r == rows {
                break;
            }
            let Some(pr) = (r..rows).find(|&i| !m.get(i, c).is_zero()) else { continue };
            m.swap_rows(r, pr);
            let inv = f.inv(m.get(r, c)).expect("pivot is nonzero");
            for j in c..cols {
                let v = f.mul(inv, m.get(r, j));
                m.set(r, j, v);
            }
            for i in 0..rows {
                if i == r {
                    continue;
                }
                let factor = m.get(i, c);
                if factor.is_zero() {
                    continue;
                }
                let nf = f.neg(factor);
                for j in c..cols {
                    let pj = m.data[r * cols + j];
                    if !pj.is_zero() {
                        let idx = i * cols + j;
                        m.data[idx] = f.mul_add(nf, pj, m.data[idx]);
                    }
                }
            }
            pivots.push(c);
            r += 1;
        }
        (m, pivots)
    }

    pub fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for j in 0..self.cols {
            self.data.swap(a * self.cols + j, b * self.cols + j);
        }
    }

    pub fn rank(&self) -> usize {
        self.rref().1.len()
    }

    /// Basis of `{x : self x = 0}`, one vector per free column, with a 1 in
    /// that column and zeros in the other free columns. Empty when the
    /// kernel is trivial.
    pub fn kernel(&self) -> Vec<Vec<Elem>> {
        let f = self.field;
        let (r, pivots) = self.rref();
        let mut is_pivot = vec![false; self.cols];
        for &c in &pivots {
            is_pivot[c] = true;
        }
        (0..self.cols)
            .filter(|&c| !is_pivot[c])
            .map(|free| {
                let mut v = vec![Elem::ZERO; self.cols];
                v[free] = Elem::ONE;
                for (row, &pc) in pivots.iter().enumerate() {
                    v[pc] = f.neg(r.get(row, free));
                }
                v
            })
            .collect()
    }

    /// Kernel basis in reduced echelon form (leading coefficient 1); the
    /// canonical answer to `self x = 0`.
    pub fn solve_homogeneous(&self) -> Vec<Vec<Elem>> {
        Subspace::span(self.field, self.cols, &self.kernel()).basis
    }

    /// Columns of `self` at the pivot positions of its echelon form: a basis
    /// of the column space.
    pub fn column_space(&self) -> Vec<Vec<Elem>> {
        let (_, pivots) = self.rref();
        pivots.iter().map(|&c| self.col(c)).collect()
    }

    pub fn det(&self) -> Result<Elem> {
        if !self.is_square() {
            return Err(mismatch("determinant of a non-square matrix"));
        }
        let f = self.field;
        let n = self.rows;
        let mut m = self.clone();
        let mut det = Elem::ONE;
        for c in 0..n {
            let Some(pr) = (c..n).find(|&i| !m.get(i, c).is_zero()) else { return Ok(Elem::ZERO) };
            if pr != c {
                m.swap_rows(c, pr);
                det = f.neg(det);
            }
            let piv = m.get(c, c);
            det = f.mul(det, piv);
            let inv = f.inv(piv).expect("nonzero pivot");
            for i in c + 1..n {
                let factor = f.mul(m.get(i, c), inv);
                if factor.is_zero() {
                    continue;
                }
                let nf = f.neg(factor);
                for j in c..n {
                    let v = f.mul_add(nf, m.get(c, j), m.get(i, j));
                    m.set(i, j, v);
                }
            }
        }
        Ok(det)
    }

    pub fn inverse(&self) -> Result<Mat> {
        if !self.is_square() {
            return Err(mismatch("inverse of a non-square matrix"));
        }
        let n = self.rows;
        if n == 0 {
            return Ok(self.clone());
        }
        let aug = Mat::hconcat(&[self.clone(), Mat::identity(self.field, n)])?;
        let (r, pivots) = aug.rref();
        if pivots.len() < n || pivots[n - 1] != n - 1 {
            return Err(Error::Singular);
        }
        Ok(r.slice(0..n, n..2 * n))
    }

    pub fn is_invertible(&self) -> bool {
        self.is_square() && self.rank() == self.rows
    }

    /// Sub-matrix on the given row and column ranges.
    pub fn slice(&self, rows: std::ops::Range<usize>, cols: std::ops::Range<usize>) -> Mat {
        assert!(rows.end <= self.rows && cols.end <= self.cols, "slice out of range");
        let c0 = cols.start;
        let r0 = rows.start;
        Mat::from_fn(self.field, rows.len(), cols.len(), |i, j| self.get(r0 + i, c0 + j))
    }

    /// Writes `block` with its top-left corner at `(r, c)`.
    pub fn set_block(&mut self, r: usize, c: usize, block: &Mat) {
        assert!(r + block.rows <= self.rows && c + block.cols <= self.cols, "block out of range");
        for i in 0..block.rows {
            for j in 0..block.cols {
                self.set(r + i, c + j, block.get(i, j));
            }
        }
    }

    pub fn direct_sum(&self, other: &Mat) -> Result<Mat> {
        self.same_field(other)?;
        let mut m = Mat::zeros(self.field, self.rows + other.rows, self.cols + other.cols);
        m.set_block(0, 0, self);
        m.set_block(self.rows, self.cols, other);
        Ok(m)
    }

    pub fn direct_sum_all(field: Field, mats: &[Mat]) -> Result<Mat> {
        mats.iter().try_fold(Mat::zeros(field, 0, 0), |acc, m| acc.direct_sum(m))
    }

    /// Assembles a partitioned matrix. Every block in a grid row must share
    /// its row count, every block in a grid column its column count.
    pub fn block_assemble(grid: &[Vec<Mat>]) -> Result<Mat> {
        let first = grid
            .first()
            .and_then(|r| r.first())
            .ok_or_else(|| mismatch("empty block grid"))?;
        let field = first.field;
        let ncols = grid[0].len();
        if grid.iter().any(|r| r.len() != ncols) {
            return Err(mismatch("ragged block grid"));
        }
        let row_heights: Vec<usize> = grid.iter().map(|r| r[0].rows).collect();
        let col_widths: Vec<usize> = grid[0].iter().map(|b| b.cols).collect();
        for (bi, r) in grid.iter().enumerate() {
            for (bj, b) in r.iter().enumerate() {
                if b.field != field {
                    return Err(Error::FieldMismatch);
                }
                if b.rows != row_heights[bi] || b.cols != col_widths[bj] {
                    return Err(mismatch(format!("block ({bi},{bj}) is {:?}", b.shape())));
                }
            }
        }
        let mut out = Mat::zeros(field, row_heights.iter().sum(), col_widths.iter().sum());
        let mut r0 = 0;
        for (bi, r) in grid.iter().enumerate() {
            let mut c0 = 0;
            for (bj, b) in r.iter().enumerate() {
                out.set_block(r0, c0, b);
                c0 += col_widths[bj];
            }
            r0 += row_heights[bi];
        }
        Ok(out)
    }

    pub fn hconcat(mats: &[Mat]) -> Result<Mat> {
        Mat::block_assemble(&[mats.to_vec()])
    }

    pub fn vconcat(mats: &[Mat]) -> Result<Mat> {
        Mat::block_assemble(&mats.iter().map(|m| vec![m.clone()]).collect::<Vec<_>>())
    }

    /// Matrix whose columns are the given vectors (all of length `rows`).
    pub fn from_columns(field: Field, rows: usize, cols: &[Vec<Elem>]) -> Mat {
        Mat::from_fn(field, rows, cols.len(), |i, j| cols[j][i])
    }

    pub fn from_rows_vec(field: Field, cols: usize, rows: &[Vec<Elem>]) -> Mat {
        Mat::from_fn(field, rows.len(), cols, |i, j| rows[i][j])
    }

    /// Row-major entries as a flat vector.
    pub fn to_vec(&self) -> Vec<Elem> {
        self.data.clone()
    }

    /// `P self` where `P` sends row `perm[i]` to position `i`.
    pub fn permute_rows(&self, perm: &[usize]) -> Mat {
        Mat::from_fn(self.field, perm.len(), self.cols, |i, j| self.get(perm[i], j))
    }

    /// `self Q` where column `perm[j]` moves to position `j`.
    pub fn permute_cols(&self, perm: &[usize]) -> Mat {
        Mat::from_fn(self.field, self.rows, perm.len(), |i, j| self.get(i, perm[j]))
    }

    /// Permutation matrix with `P e_{perm[i]} ... ` rows: `(P)_{i, perm[i]} = 1`.
    pub fn permutation(field: Field, perm: &[usize]) -> Mat {
        let n = perm.len();
        let mut m = Mat::zeros(field, n, n);
        for (i, &p) in perm.iter().enumerate() {
            m.set(i, p, Elem::ONE);
        }
        m
    }
}

impl fmt::Debug for Mat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Mat{}x{}[", self.rows, self.cols)?;
        for i in 0..self.rows {
            if i > 0 {
                f.write_str("; ")?;
            }
            let row: Vec<String> = self.row(i).iter().map(|e| self.field.format(*e)).collect();
            f.write_str(&row.join(" "))?;
        }
        f.write_str("]")
    }
}

/// A subspace of `F^n` held as the rows of its reduced echelon form.
/// Coordinates of a member vector are its entries at the pivot positions.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Subspace {
    field: Field,
    ambient: usize,
    basis: Vec<Vec<Elem>>,
    pivots: Vec<usize>,
}

impl Subspace {
    pub fn span(field: Field, ambient: usize, vectors: &[Vec<Elem>]) -> Subspace {
        let m = Mat::from_rows_vec(field, ambient, vectors);
        let (r, pivots) = m.rref();
        let basis = (0..pivots.len()).map(|i| r.row(i).to_vec()).collect();
        Subspace { field, ambient, basis, pivots }
    }

    pub fn zero(field: Field, ambient: usize) -> Subspace {
        Subspace { field, ambient, basis: Vec::new(), pivots: Vec::new() }
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn ambient(&self) -> usize {
        self.ambient
    }

    pub fn field(&self) -> Field {
        self.field
    }

    pub fn basis(&self) -> &[Vec<Elem>] {
        &self.basis
    }

    pub fn pivots(&self) -> &[usize] {
        &self.pivots
    }

    /// Coordinates of `v` in the echelon basis, or `None` if `v` is outside.
    pub fn coords(&self, v: &[Elem]) -> Option<Vec<Elem>> {
        let f = self.field;
        let c: Vec<Elem> = self.pivots.iter().map(|&p| v[p]).collect();
        let mut rebuilt = vec![Elem::ZERO; self.ambient];
        for (ci, b) in c.iter().zip(&self.basis) {
            if ci.is_zero() {
                continue;
            }
            for (r, x) in rebuilt.iter_mut().zip(b) {
                *r = f.mul_add(*ci, *x, *r);
            }
        }
        (rebuilt == v).then_some(c)
    }

    pub fn contains(&self, v: &[Elem]) -> bool {
        self.coords(v).is_some()
    }

    /// The combination `sum c_i b_i`.
    pub fn combine(&self, coeffs: &[Elem]) -> Vec<Elem> {
        let f = self.field;
        let mut out = vec![Elem::ZERO; self.ambient];
        for (c, b) in coeffs.iter().zip(&self.basis) {
            if c.is_zero() {
                continue;
            }
            for (o, x) in out.iter_mut().zip(b) {
                *o = f.mul_add(*c, *x, *o);
            }
        }
        out
    }

    /// Extends the echelon basis by the first standard vectors not in the span.
    pub fn complete_with_standard(&self) -> Vec<Vec<Elem>> {
        let mut cur = self.basis.clone();
        let mut space = self.clone();
        for i in 0..self.ambient {
            if space.dim() == self.ambient {
                break;
            }
            let mut e = vec![Elem::ZERO; self.ambient];
            e[i] = Elem::ONE;
            if !space.contains(&e) {
                cur.push(e);
                space = Subspace::span(self.field, self.ambient, &cur);
            }
        }
        cur.split_off(self.basis.len())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn f(p: u64) -> Field {
        Field::prime(p).unwrap()
    }

    #[test]
    fn star_examples() {
        let f7 = f(7);
        let m = Mat::from_i64(f7, &[&[1, 2], &[3, 4]]);
        assert_eq!(m.star(), Mat::from_i64(f7, &[&[1, 3], &[2, 4]]));
        let f9 = Field::new(3, 2).unwrap();
        let t = Mat::new(f9, 1, 1, vec![f9.t().unwrap()]).unwrap();
        assert_eq!(t.star().get(0, 0), f9.elem(0, -1).unwrap());
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        let r = Mat::random(f9, 3, 3, &mut rng);
        assert_eq!(r.star().star(), r);
    }

    #[test]
    fn rank_examples() {
        let f5 = f(5);
        assert_eq!(Mat::identity(f5, 4).rank(), 4);
        assert_eq!(Mat::zeros(f5, 3, 5).rank(), 0);
        let ff = Mat::from_i64(f5, &[&[0, 0, 1, 0], &[0, 0, 0, 1], &[2, 1, 0, 0], &[0, 2, 0, 0]]);
        assert_eq!(ff.sub(&ff.transpose()).unwrap().rank(), 4);
    }

    #[test]
    fn kernel_examples() {
        let f3 = f(3);
        assert!(Mat::identity(f3, 3).kernel().is_empty());
        assert_eq!(Mat::zeros(f3, 2, 2).kernel().len(), 2);
        let k = Mat::from_i64(f3, &[&[1, 1]]).solve_homogeneous();
        assert_eq!(k, vec![vec![f3.from_i64(1), f3.from_i64(2)]]);
    }

    #[test]
    fn det_inverse_direct_sum() {
        let f7 = f(7);
        assert_eq!(Mat::from_i64(f7, &[&[2, 1], &[0, 2]]).det().unwrap(), f7.from_i64(4));
        let d = Mat::identity(f7, 1).direct_sum(&Mat::zeros(f7, 1, 1)).unwrap();
        assert_eq!(d, Mat::from_i64(f7, &[&[1, 0], &[0, 0]]));
        assert_eq!(d.inverse(), Err(Error::Singular));
        assert!(matches!(Mat::zeros(f7, 2, 3).inverse(), Err(Error::DimensionMismatch(_))));
    }

    #[test]
    fn block_assemble_t0_first_matrix() {
        let f7 = f(7);
        let i = Mat::identity(f7, 1);
        let z = Mat::zeros(f7, 1, 1);
        let two = Mat::from_i64(f7, &[&[2]]);
        let m = Mat::block_assemble(&[
            vec![z.clone(), z.clone(), i.clone(), z.clone()],
            vec![z.clone(), z.clone(), z.clone(), i.clone()],
            vec![two.clone(), i.clone(), z.clone(), z.clone()],
            vec![z.clone(), two.clone(), z.clone(), z.clone()],
        ])
        .unwrap();
        assert_eq!(m, Mat::from_i64(f7, &[&[0, 0, 1, 0], &[0, 0, 0, 1], &[2, 1, 0, 0], &[0, 2, 0, 0]]));
    }

    #[test]
    fn zero_extent_matrices() {
        let f3 = f(3);
        let a = Mat::zeros(f3, 0, 2);
        let b = Mat::zeros(f3, 2, 0);
        assert_eq!(a.mul(&b).unwrap().shape(), (0, 0));
        assert_eq!(b.mul(&a).unwrap(), Mat::zeros(f3, 2, 2));
        assert_eq!(a.rank(), 0);
        assert_eq!(a.kernel().len(), 2);
        assert_eq!(Mat::zeros(f3, 0, 0).det().unwrap(), Elem::ONE);
        assert_eq!(Mat::zeros(f3, 0, 0).inverse().unwrap().shape(), (0, 0));
        let s = Mat::identity(f3, 2).direct_sum(&Mat::zeros(f3, 1, 0)).unwrap();
        assert_eq!(s.shape(), (3, 2));
    }

    #[test]
    fn subspace_coords_and_completion() {
        let f5 = f(5);
        let s = Subspace::span(f5, 3, &[vec![f5.from_i64(1), f5.from_i64(2), f5.from_i64(0)]]);
        assert_eq!(s.dim(), 1);
        let v = vec![f5.from_i64(3), f5.from_i64(1), f5.from_i64(0)];
        assert_eq!(s.coords(&v), Some(vec![f5.from_i64(3)]));
        assert!(s.coords(&[Elem::ONE, Elem::ONE, Elem::ZERO]).is_none());
        let rest = s.complete_with_standard();
        assert_eq!(rest.len(), 2);
        assert_eq!(rest[0], vec![Elem::ONE, Elem::ZERO, Elem::ZERO]);
        assert_eq!(rest[1], vec![Elem::ZERO, Elem::ZERO, Elem::ONE]);
    }
}
