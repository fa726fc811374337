use super::{Field, Subspace};

/// Dense row-major matrix over a [`Field`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Matrix<F: Field> {
    field: F,
    rows: usize,
    cols: usize,
    data: Vec<F::Elem>,
}

impl<F: Field> Matrix<F> {
    pub fn zeros(field: F, rows: usize, cols: usize) -> Self {
        let data = vec![field.zero(); rows * cols];
        Matrix { field, rows, cols, data }
    }

    pub fn identity(field: F, n: usize) -> Self {
        let mut m = Self::zeros(field, n, n);
        for i in 0..n {
            m[(i, i)] = m.field.one();
        }
        m
    }

    /// Builds a matrix from rows of equal length `cols`.
    ///
    /// `cols` is explicit so that an empty row list still has a width.
    pub fn from_rows(field: F, cols: usize, rows: Vec<Vec<F::Elem>>) -> Self {
        let n = rows.len();
        let mut data = Vec::with_capacity(n * cols);
        for r in rows {
            assert_eq!(r.len(), cols, "ragged matrix rows");
            data.extend(r);
        }
        Matrix { field, rows: n, cols, data }
    }

    pub fn from_i64_rows(field: F, rows: &[&[i64]]) -> Self {
        let cols = rows.first().map_or(0, |r| r.len());
        let rows = rows.iter().map(|r| r.iter().map(|&v| field.from_i64(v)).collect()).collect();
        Self::from_rows(field, cols, rows)
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

    pub fn row(&self, i: usize) -> &[F::Elem] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn row_vectors(&self) -> Vec<Vec<F::Elem>> {
        (0..self.rows).map(|i| self.row(i).to_vec()).collect()
    }

    pub fn transpose(&self) -> Self {
        let mut t = Self::zeros(self.field.clone(), self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t[(j, i)] = self[(i, j)].clone();
            }
        }
        t
    }

    pub fn mul_vec(&self, v: &[F::Elem]) -> Vec<F::Elem> {
        assert_eq!(v.len(), self.cols);
        (0..self.rows).map(|i| dot(&self.field, self.row(i), v)).collect()
    }

    pub fn rank(&self) -> usize {
        rref(self).0
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a != b {
            for j in 0..self.cols {
                self.data.swap(a * self.cols + j, b * self.cols + j);
            }
        }
    }

    /// In-place reduced row-echelon form with unit pivots. Returns pivot columns.
    pub(crate) fn reduce_in_place(&mut self) -> Vec<usize> {
        let f = self.field.clone();
        let mut pivots = Vec::new();
        let mut r = 0;
        for c in 0..self.cols {
            if r == self.rows {
                break;
            }
            let Some(p) = (r..self.rows).find(|&i| !f.is_zero(&self[(i, c)])) else {
                continue;
            };
            self.swap_rows(r, p);
            let inv = f.inv(&self[(r, c)]).expect("nonzero pivot");
            for j in c..self.cols {
                self[(r, j)] = f.mul(&self[(r, j)], &inv);
            }
            for i in 0..self.rows {
                if i == r || f.is_zero(&self[(i, c)]) {
                    continue;
                }
                let factor = self[(i, c)].clone();
                for j in c..self.cols {
                    let t = f.mul(&factor, &self[(r, j)]);
                    self[(i, j)] = f.sub(&self[(i, j)], &t);
                }
            }
            pivots.push(c);
            r += 1;
        }
        pivots
    }
}

impl<F: Field> std::ops::Index<(usize, usize)> for Matrix<F> {
    type Output = F::Elem;
    fn index(&self, (i, j): (usize, usize)) -> &F::Elem {
        &self.data[i * self.cols + j]
    }
}

impl<F: Field> std::ops::IndexMut<(usize, usize)> for Matrix<F> {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut F::Elem {
        &mut self.data[i * self.cols + j]
    }
}

pub(crate) fn dot<F: Field>(f: &F, a: &[F::Elem], b: &[F::Elem]) -> F::Elem {
    a.iter().zip(b).fold(f.zero(), |acc, (x, y)| f.add(&acc, &f.mul(x, y)))
}

/// Rank and an echelon basis of the row space.
pub fn rref<F: Field>(m: &Matrix<F>) -> (usize, Subspace<F>) {
    let mut r = m.clone();
    let pivots = r.reduce_in_place();
    let basis = (0..pivots.len()).map(|i| r.row(i).to_vec()).collect();
    let s = Subspace::from_echelon(m.field.clone(), m.cols, basis, pivots);
    (s.dim(), s)
}

/// Null space `{v : m v = 0}` as an echelonized subspace of `F^cols`.
pub fn kernel<F: Field>(m: &Matrix<F>) -> Subspace<F> {
    let f = m.field.clone();
    let mut r = m.clone();
    let pivots = r.reduce_in_place();
    let mut is_pivot = vec![false; m.cols];
    for &p in &pivots {
        is_pivot[p] = true;
    }
    let mut gens = Vec::new();
    for free in (0..m.cols).filter(|&c| !is_pivot[c]) {
        let mut v = vec![f.zero(); m.cols];
        v[free] = f.one();
        for (i, &p) in pivots.iter().enumerate() {
            v[p] = f.neg(&r[(i, free)]);
        }
        gens.push(v);
    }
    Subspace::span(f, m.cols, gens)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactla::{PrimeField, Rationals};

    #[test]
    fn identity_has_full_rank() {
        let m = Matrix::identity(Rationals, 3);
        let (rank, basis) = rref(&m);
        assert_eq!(rank, 3);
        assert_eq!(basis.rows(), Matrix::identity(Rationals, 3).row_vectors());
    }

    #[test]
    fn zero_matrix_has_empty_basis() {
        let m = Matrix::zeros(Rationals, 2, 4);
        let (rank, basis) = rref(&m);
        assert_eq!(rank, 0);
        assert!(basis.rows().is_empty());
        assert_eq!(basis.ambient(), 4);
    }

    #[test]
    fn dependent_rows_collapse() {
        let m = Matrix::from_i64_rows(Rationals, &[&[1, 2], &[2, 4]]);
        let (rank, basis) = rref(&m);
        assert_eq!(rank, 1);
        let q = Rationals;
        assert_eq!(basis.rows(), vec![vec![q.from_i64(1), q.from_i64(2)]]);
    }

    #[test]
    fn kernel_of_pencil_normals() {
        // columns (1,0), (0,1), (1,1)
        let m = Matrix::from_i64_rows(Rationals, &[&[1, 0, 1], &[0, 1, 1]]);
        let k = kernel(&m);
        assert_eq!(k.dim(), 1);
        let q = Rationals;
        let v: Vec<_> = [1, 1, -1].iter().map(|&x| q.from_i64(x)).collect();
        assert!(k.contains(&v));
    }

    #[test]
    fn kernel_edge_cases() {
        let inv = Matrix::from_i64_rows(Rationals, &[&[2, 1], &[1, 1]]);
        assert_eq!(kernel(&inv).dim(), 0);
        let z = Matrix::from_i64_rows(Rationals, &[&[0]]);
        assert_eq!(kernel(&z).dim(), 1);
    }

    #[test]
    fn kernel_over_prime_field() {
        // rank drops mod 3
        let f = PrimeField::new(3).unwrap();
        let m = Matrix::from_i64_rows(f, &[&[1, 1], &[1, 4]]);
        assert_eq!(m.rank(), 1);
        assert_eq!(kernel(&m).dim(), 1);
    }
}
