use std::fmt;

use super::{Field, LinAlgError, Subspace};

/// Dense matrix over an exact field, acting on column vectors.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Matrix<F: Field> {
    field: F,
    rows: usize,
    cols: usize,
    data: Vec<F::Elem>,
}

/// Output of [`Matrix::rref`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Rref<F: Field> {
    pub reduced: Matrix<F>,
    /// Pivot column of each nonzero row, strictly increasing.
    pub pivots: Vec<usize>,
    pub rank: usize,
}

/// Gauss-Jordan elimination on a list of rows, leftmost pivot first.
/// Leaves the nonzero rows in reduced echelon form at the top and returns
/// their pivot columns.
pub(crate) fn reduce_rows<F: Field>(field: &F, rows: &mut [Vec<F::Elem>], ncols: usize) -> Vec<usize> {
    let mut pivots = Vec::new();
    let mut rank = 0;
    for col in 0..ncols {
        if rank == rows.len() {
            break;
        }
        let Some(found) = (rank..rows.len()).find(|&i| !field.is_zero(&rows[i][col])) else {
            continue;
        };
        rows.swap(rank, found);
        let inv = field.inv(&rows[rank][col]).expect("pivot is nonzero");
        if !field.is_one(&inv) {
            for x in rows[rank][col..].iter_mut() {
                *x = field.mul(x, &inv);
            }
        }
        let (head, tail) = rows.split_at_mut(rank);
        let (pivot_row, tail) = tail.split_first_mut().expect("rank < len");
        for other in head.iter_mut().chain(tail.iter_mut()) {
            if field.is_zero(&other[col]) {
                continue;
            }
            let factor = field.neg(&other[col]);
            for j in col..ncols {
                if !field.is_zero(&pivot_row[j]) {
                    other[j] = field.mul_add(&other[j], &factor, &pivot_row[j]);
                }
            }
        }
        pivots.push(col);
        rank += 1;
    }
    pivots
}

impl<F: Field> Matrix<F> {
    pub fn zeros(field: F, rows: usize, cols: usize) -> Self {
        let data = vec![field.zero(); rows * cols];
        Self { field, rows, cols, data }
    }

    pub fn identity(field: F, n: usize) -> Self {
        let mut m = Self::zeros(field, n, n);
        for i in 0..n {
            m.data[i * n + i] = m.field.one();
        }
        m
    }

    /// Builds a matrix from its rows. `cols` is needed for the zero-row case.
    pub fn from_rows(field: F, cols: usize, rows: Vec<Vec<F::Elem>>) -> Result<Self, LinAlgError> {
        let nrows = rows.len();
        let mut data = Vec::with_capacity(nrows * cols);
        for (i, row) in rows.into_iter().enumerate() {
            if row.len() != cols {
                return Err(LinAlgError::RaggedRow { row: i, expected: cols, found: row.len() });
            }
            data.extend(row);
        }
        Ok(Self { field, rows: nrows, cols, data })
    }

    /// Row-major integer entries, mapped into the field.
    pub fn from_i64(field: F, rows: usize, cols: usize, entries: &[i64]) -> Self {
        assert_eq!(entries.len(), rows * cols, "entry count must be rows * cols");
        let data = entries.iter().map(|&v| field.from_i64(v)).collect();
        Self { field, rows, cols, data }
    }

    /// Matrix whose columns are the given vectors of length `rows`.
    pub fn from_columns(field: F, rows: usize, columns: &[Vec<F::Elem>]) -> Self {
        let mut m = Self::zeros(field, rows, columns.len());
        for (j, col) in columns.iter().enumerate() {
            assert_eq!(col.len(), rows, "column length");
            for (i, x) in col.iter().enumerate() {
                m.data[i * m.cols + j] = x.clone();
            }
        }
        m
    }

    pub fn field(&self) -> &F {
        &self.field
    }
    pub fn rows(&self) -> usize {
        self.rows
    }
    pub fn cols(&self) -> usize {
        self.cols
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

    pub fn row_vecs(&self) -> Vec<Vec<F::Elem>> {
        (0..self.rows).map(|i| self.row(i).to_vec()).collect()
    }

    pub fn column(&self, j: usize) -> Vec<F::Elem> {
        (0..self.rows).map(|i| self.get(i, j).clone()).collect()
    }

    pub fn columns(&self) -> Vec<Vec<F::Elem>> {
        (0..self.cols).map(|j| self.column(j)).collect()
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|x| self.field.is_zero(x))
    }

    pub fn nonzero_positions(&self) -> Vec<(usize, usize)> {
        let mut out = Vec::new();
        for i in 0..self.rows {
            for j in 0..self.cols {
                if !self.field.is_zero(self.get(i, j)) {
                    out.push((i, j));
                }
            }
        }
        out
    }

    pub fn transpose(&self) -> Self {
        let mut t = Self::zeros(self.field.clone(), self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t.data[j * self.rows + i] = self.get(i, j).clone();
            }
        }
        t
    }

    /// `self * rhs`.
    ///
    /// # Panics
    /// If the inner dimensions differ.
    pub fn mul(&self, rhs: &Matrix<F>) -> Matrix<F> {
        assert_eq!(self.cols, rhs.rows, "inner dimensions of a product must agree");
        let f = &self.field;
        let mut out = Self::zeros(f.clone(), self.rows, rhs.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if f.is_zero(a) {
                    continue;
                }
                for j in 0..rhs.cols {
                    let b = rhs.get(k, j);
                    if !f.is_zero(b) {
                        let idx = i * rhs.cols + j;
                        out.data[idx] = f.mul_add(&out.data[idx], a, b);
                    }
                }
            }
        }
        out
    }

    pub fn apply(&self, v: &[F::Elem]) -> Vec<F::Elem> {
        assert_eq!(v.len(), self.cols, "vector length must equal column count");
        let f = &self.field;
        (0..self.rows)
            .map(|i| {
                self.row(i).iter().zip(v).fold(f.zero(), |acc, (a, b)| {
                    if f.is_zero(a) || f.is_zero(b) {
                        acc
                    } else {
                        f.mul_add(&acc, a, b)
                    }
                })
            })
            .collect()
    }

    pub fn add(&self, rhs: &Matrix<F>) -> Matrix<F> {
        assert_eq!((self.rows, self.cols), (rhs.rows, rhs.cols), "shapes of a sum must agree");
        let data = self.data.iter().zip(&rhs.data).map(|(a, b)| self.field.add(a, b)).collect();
        Self { field: self.field.clone(), rows: self.rows, cols: self.cols, data }
    }

    pub fn neg(&self) -> Matrix<F> {
        self.scale(&self.field.from_i64(-1))
    }

    pub fn scale(&self, c: &F::Elem) -> Matrix<F> {
        let data = self.data.iter().map(|a| self.field.mul(a, c)).collect();
        Self { field: self.field.clone(), rows: self.rows, cols: self.cols, data }
    }

    /// Copy of the `rows x cols` block starting at `(r0, c0)`.
    pub fn block(&self, r0: usize, c0: usize, rows: usize, cols: usize) -> Matrix<F> {
        let mut out = Self::zeros(self.field.clone(), rows, cols);
        for i in 0..rows {
            for j in 0..cols {
                out.data[i * cols + j] = self.get(r0 + i, c0 + j).clone();
            }
        }
        out
    }

    pub fn set_block(&mut self, r0: usize, c0: usize, block: &Matrix<F>) {
        for i in 0..block.rows {
            for j in 0..block.cols {
                self.set(r0 + i, c0 + j, block.get(i, j).clone());
            }
        }
    }

    /// Side-by-side concatenation; all parts need `rows` rows.
    pub fn hstack(field: F, rows: usize, parts: &[&Matrix<F>]) -> Matrix<F> {
        let cols = parts.iter().map(|m| m.cols).sum();
        let mut out = Self::zeros(field, rows, cols);
        let mut c0 = 0;
        for m in parts {
            assert_eq!(m.rows, rows, "hstack row counts");
            out.set_block(0, c0, m);
            c0 += m.cols;
        }
        out
    }

    pub fn rref(&self) -> Rref<F> {
        let mut rows = self.row_vecs();
        let pivots = reduce_rows(&self.field, &mut rows, self.cols);
        let rank = pivots.len();
        let reduced = Self::from_rows(self.field.clone(), self.cols, rows).expect("rows keep their width");
        Rref { reduced, pivots, rank }
    }

    pub fn rank(&self) -> usize {
        // Eliminate along the shorter side.
        if self.rows <= self.cols {
            self.rref().rank
        } else {
            self.transpose().rref().rank
        }
    }

    pub fn kernel(&self) -> Subspace<F> {
        let Rref { reduced, pivots, .. } = self.rref();
        let f = &self.field;
        let mut is_pivot = vec![false; self.cols];
        for &c in &pivots {
            is_pivot[c] = true;
        }
        let vectors = (0..self.cols).filter(|&c| !is_pivot[c]).map(|free| {
            let mut v = vec![f.zero(); self.cols];
            v[free] = f.one();
            for (row, &pc) in pivots.iter().enumerate() {
                v[pc] = f.neg(reduced.get(row, free));
            }
            v
        });
        Subspace::span(f.clone(), self.cols, vectors)
    }

    /// Column space.
    pub fn image(&self) -> Subspace<F> {
        Subspace::span(self.field.clone(), self.rows, self.columns())
    }

    /// Image of the subspace `s` of the source under this map.
    pub fn image_of(&self, s: &Subspace<F>) -> Subspace<F> {
        assert_eq!(s.ambient_dim(), self.cols, "subspace must live in the source");
        Subspace::span(self.field.clone(), self.rows, s.basis().iter().map(|v| self.apply(v)))
    }

    pub fn inverse(&self) -> Option<Matrix<F>> {
        if self.rows != self.cols {
            return None;
        }
        let n = self.rows;
        let f = &self.field;
        let mut rows: Vec<Vec<F::Elem>> = (0..n)
            .map(|i| {
                let mut r = self.row(i).to_vec();
                r.extend((0..n).map(|j| if i == j { f.one() } else { f.zero() }));
                r
            })
            .collect();
        let pivots = reduce_rows(f, &mut rows, 2 * n);
        if pivots.len() < n || pivots[n - 1] != n - 1 {
            return None;
        }
        let data = rows.into_iter().flat_map(|r| r.into_iter().skip(n)).collect();
        Some(Self { field: f.clone(), rows: n, cols: n, data })
    }
}

impl<F: Field> fmt::Debug for Matrix<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Matrix {}x{} over {} ", self.rows, self.cols, self.field.spec())?;
        fmt::Display::fmt(self, f)
    }
}

impl<F: Field> fmt::Display for Matrix<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[")?;
        for i in 0..self.rows {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "[")?;
            for j in 0..self.cols {
                if j > 0 {
                    write!(f, ", ")?;
                }
                write!(f, "{}", self.field.format(self.get(i, j)))?;
            }
            write!(f, "]")?;
        }
        write!(f, "]")
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactlin::{PrimeField, Rationals};

    #[test]
    fn rref_identity_is_fixed() {
        let id = Matrix::identity(Rationals, 3);
        let r = id.rref();
        assert_eq!(r.reduced, id);
        assert_eq!(r.rank, 3);
        assert_eq!(r.pivots, vec![0, 1, 2]);
    }

    #[test]
    fn rref_zero_matrix() {
        let z = Matrix::zeros(Rationals, 2, 4);
        let r = z.rref();
        assert_eq!(r.reduced, z);
        assert_eq!(r.rank, 0);
        assert!(r.pivots.is_empty());
    }

    #[test]
    fn rref_proportional_rows() {
        let m = Matrix::from_i64(Rationals, 2, 2, &[1, 2, 2, 4]);
        let r = m.rref();
        assert_eq!(r.rank, 1);
        assert_eq!(r.reduced, Matrix::from_i64(Rationals, 2, 2, &[1, 2, 0, 0]));
    }

    #[test]
    fn inverse_over_f3() {
        let f = PrimeField::new(3).unwrap();
        let m = Matrix::from_i64(f, 2, 2, &[1, 1, 0, 2]);
        let inv = m.inverse().unwrap();
        assert_eq!(m.mul(&inv), Matrix::identity(f, 2));
        let singular = Matrix::from_i64(f, 2, 2, &[1, 2, 2, 1]);
        assert!(singular.inverse().is_none(), "det = 1 - 4 = 0 mod 3");
    }

    #[test]
    fn kernel_and_image_of_small_map() {
        let m = Matrix::from_i64(Rationals, 1, 2, &[1, -1]);
        let k = m.kernel();
        assert_eq!(k.dim(), 1);
        assert!(k.member(&[Rationals.from_i64(1), Rationals.from_i64(1)]));
        assert_eq!(m.image().dim(), 1);
    }

    #[test]
    fn ragged_rows_are_rejected() {
        let rows = vec![vec![Rationals.one()], vec![]];
        assert!(matches!(
            Matrix::from_rows(Rationals, 1, rows),
            Err(LinAlgError::RaggedRow { row: 1, .. })
        ));
    }
}
