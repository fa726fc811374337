use super::matrix::{kernel, Matrix};
use super::Field;
use crate::error::{Error, Result};

/// A subspace of `F^ambient` stored as a reduced row-echelon basis.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Subspace<F: Field> {
    field: F,
    ambient: usize,
    rows: Vec<Vec<F::Elem>>,
    pivots: Vec<usize>,
}

impl<F: Field> Subspace<F> {
    pub fn zero(field: F, ambient: usize) -> Self {
        Subspace { field, ambient, rows: Vec::new(), pivots: Vec::new() }
    }

    pub fn full(field: F, ambient: usize) -> Self {
        let m = Matrix::identity(field.clone(), ambient);
        Self::span(field, ambient, m.row_vectors())
    }

    pub fn span(field: F, ambient: usize, gens: Vec<Vec<F::Elem>>) -> Self {
        let mut m = Matrix::from_rows(field.clone(), ambient, gens);
        let pivots = m.reduce_in_place();
        let rows = (0..pivots.len()).map(|i| m.row(i).to_vec()).collect();
        Subspace { field, ambient, rows, pivots }
    }

    pub(crate) fn from_echelon(field: F, ambient: usize, rows: Vec<Vec<F::Elem>>, pivots: Vec<usize>) -> Self {
        Subspace { field, ambient, rows, pivots }
    }

    pub fn field(&self) -> &F {
        &self.field
    }

    pub fn ambient(&self) -> usize {
        self.ambient
    }

    pub fn dim(&self) -> usize {
        self.rows.len()
    }

    pub fn rows(&self) -> &[Vec<F::Elem>] {
        &self.rows
    }

    pub fn pivots(&self) -> &[usize] {
        &self.pivots
    }

    fn check(&self, len: usize) -> Result<()> {
        if len != self.ambient {
            return Err(Error::Usage(format!(
                "dimension mismatch: vector of length {len} in ambient dimension {}",
                self.ambient
            )));
        }
        Ok(())
    }

    /// Coefficients of `v` along the echelon rows, and the remainder.
    pub fn decompose(&self, v: &[F::Elem]) -> (Vec<F::Elem>, Vec<F::Elem>) {
        let f = &self.field;
        let mut r = v.to_vec();
        let mut coeffs = Vec::with_capacity(self.rows.len());
        for (row, &p) in self.rows.iter().zip(&self.pivots) {
            let c = r[p].clone();
            if !f.is_zero(&c) {
                for (x, y) in r.iter_mut().zip(row).skip(p) {
                    *x = f.sub(x, &f.mul(&c, y));
                }
            }
            coeffs.push(c);
        }
        (coeffs, r)
    }

    pub fn try_contains(&self, v: &[F::Elem]) -> Result<bool> {
        self.check(v.len())?;
        Ok(self.contains(v))
    }

    /// Panics on a length mismatch; see [`Subspace::try_contains`].
    pub fn contains(&self, v: &[F::Elem]) -> bool {
        assert_eq!(v.len(), self.ambient, "dimension mismatch");
        let (_, r) = self.decompose(v);
        r.iter().all(|x| self.field.is_zero(x))
    }

    /// Adds `v` to the span. Returns `false` if it was already contained.
    pub fn insert(&mut self, v: &[F::Elem]) -> bool {
        assert_eq!(v.len(), self.ambient, "dimension mismatch");
        let f = self.field.clone();
        let (_, mut r) = self.decompose(v);
        let Some(p) = r.iter().position(|x| !f.is_zero(x)) else {
            return false;
        };
        let inv = f.inv(&r[p]).expect("nonzero");
        for x in r.iter_mut().skip(p) {
            *x = f.mul(x, &inv);
        }
        for row in &mut self.rows {
            let c = row[p].clone();
            if !f.is_zero(&c) {
                for (x, y) in row.iter_mut().zip(&r).skip(p) {
                    *x = f.sub(x, &f.mul(&c, y));
                }
            }
        }
        let at = self.pivots.partition_point(|&q| q < p);
        self.pivots.insert(at, p);
        self.rows.insert(at, r);
        true
    }

    pub fn is_subspace_of(&self, other: &Self) -> bool {
        self.ambient == other.ambient && self.rows.iter().all(|r| other.contains(r))
    }

    /// Reduced echelon bases are unique, so equality is a row comparison.
    pub fn equal(&self, other: &Self) -> Result<bool> {
        self.check(other.ambient)?;
        Ok(self.pivots == other.pivots && self.rows == other.rows)
    }

    pub fn sum(&self, other: &Self) -> Result<Self> {
        self.check(other.ambient)?;
        let mut s = self.clone();
        for r in &other.rows {
            s.insert(r);
        }
        Ok(s)
    }

    pub fn intersection(&self, other: &Self) -> Result<Self> {
        self.check(other.ambient)?;
        let f = self.field.clone();
        let (a, b) = (self.dim(), other.dim());
        // (u, w) with u·A + w·B = 0 gives u·A in both spaces
        let mut stacked = self.rows.clone();
        stacked.extend(other.rows.iter().cloned());
        let m = Matrix::from_rows(f.clone(), self.ambient, stacked).transpose();
        let k = kernel(&m);
        let gens = k
            .rows()
            .iter()
            .map(|c| {
                let mut v = vec![f.zero(); self.ambient];
                for (ci, row) in c[..a].iter().zip(&self.rows) {
                    for (x, y) in v.iter_mut().zip(row) {
                        *x = f.add(x, &f.mul(ci, y));
                    }
                }
                v
            })
            .collect();
        debug_assert_eq!(k.ambient(), a + b);
        Ok(Subspace::span(f, self.ambient, gens))
    }
}

/// Coordinates with respect to an ordered list of independent generators.
///
/// Keeps a reduced echelon basis together with the matrix expressing each
/// echelon row in terms of the generators, so that coordinates of any vector
/// in the span cost one reduction.
#[derive(Clone, Debug)]
pub struct Coordinates<F: Field> {
    echelon: Subspace<F>,
    transform: Vec<Vec<F::Elem>>,
    gens: Vec<Vec<F::Elem>>,
}

impl<F: Field> Coordinates<F> {
    pub fn new(field: F, ambient: usize) -> Self {
        Coordinates { echelon: Subspace::zero(field, ambient), transform: Vec::new(), gens: Vec::new() }
    }

    /// Appends `v` as the next generator if it is independent of the others.
    pub fn push(&mut self, v: &[F::Elem]) -> bool {
        let f = self.echelon.field.clone();
        let m = self.gens.len();
        let (coeffs, mut r) = self.echelon.decompose(v);
        let Some(p) = r.iter().position(|x| !f.is_zero(x)) else {
            return false;
        };
        for t in &mut self.transform {
            t.push(f.zero());
        }
        // r = v - Σ c_i R_i, and R_i = T_i · gens
        let mut t = vec![f.zero(); m + 1];
        t[m] = f.one();
        for (c, ti) in coeffs.iter().zip(&self.transform) {
            if !f.is_zero(c) {
                for (x, y) in t.iter_mut().zip(ti) {
                    *x = f.sub(x, &f.mul(c, y));
                }
            }
        }
        let inv = f.inv(&r[p]).expect("nonzero");
        for x in r.iter_mut().skip(p) {
            *x = f.mul(x, &inv);
        }
        for x in t.iter_mut() {
            *x = f.mul(x, &inv);
        }
        let e = &mut self.echelon;
        for (row, ti) in e.rows.iter_mut().zip(self.transform.iter_mut()) {
            let c = row[p].clone();
            if !f.is_zero(&c) {
                for (x, y) in row.iter_mut().zip(&r).skip(p) {
                    *x = f.sub(x, &f.mul(&c, y));
                }
                for (x, y) in ti.iter_mut().zip(&t) {
                    *x = f.sub(x, &f.mul(&c, y));
                }
            }
        }
        let at = e.pivots.partition_point(|&q| q < p);
        e.pivots.insert(at, p);
        e.rows.insert(at, r);
        self.transform.insert(at, t);
        self.gens.push(v.to_vec());
        true
    }

    pub fn len(&self) -> usize {
        self.gens.len()
    }

    pub fn is_empty(&self) -> bool {
        self.gens.is_empty()
    }

    pub fn generators(&self) -> &[Vec<F::Elem>] {
        &self.gens
    }

    pub fn span(&self) -> &Subspace<F> {
        &self.echelon
    }

    /// Coefficients `c` with `v = Σ c_j gens[j]`, or `None` outside the span.
    pub fn coordinates(&self, v: &[F::Elem]) -> Option<Vec<F::Elem>> {
        let f = &self.echelon.field;
        let (coeffs, r) = self.echelon.decompose(v);
        if !r.iter().all(|x| f.is_zero(x)) {
            return None;
        }
        let mut out = vec![f.zero(); self.gens.len()];
        for (c, ti) in coeffs.iter().zip(&self.transform) {
            if !f.is_zero(c) {
                for (x, y) in out.iter_mut().zip(ti) {
                    *x = f.add(x, &f.mul(c, y));
                }
            }
        }
        Some(out)
    }

    /// `Σ c_j gens[j]`.
    pub fn combine(&self, c: &[F::Elem]) -> Vec<F::Elem> {
        let f = &self.echelon.field;
        let mut v = vec![f.zero(); self.echelon.ambient];
        for (cj, g) in c.iter().zip(&self.gens) {
            if !f.is_zero(cj) {
                for (x, y) in v.iter_mut().zip(g) {
                    *x = f.add(x, &f.mul(cj, y));
                }
            }
        }
        v
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactla::{PrimeField, Rationals};
    use proptest::prelude::*;

    fn q(v: &[i64]) -> Vec<num_rational::BigRational> {
        v.iter().map(|&x| Rationals.from_i64(x)).collect()
    }

    #[test]
    fn membership() {
        let s = Subspace::span(Rationals, 2, vec![q(&[1, 2])]);
        assert!(s.contains(&q(&[1, 2])));
        assert!(s.contains(&q(&[-3, -6])));
        let e2 = Subspace::span(Rationals, 2, vec![q(&[0, 1])]);
        assert!(!e2.contains(&q(&[1, 0])));
        assert!(e2.try_contains(&q(&[1, 0, 0])).is_err());
    }

    #[test]
    fn intersection_of_coordinate_planes() {
        let a = Subspace::span(Rationals, 3, vec![q(&[1, 0, 0]), q(&[0, 1, 0])]);
        let b = Subspace::span(Rationals, 3, vec![q(&[0, 1, 0]), q(&[0, 0, 1])]);
        let i = a.intersection(&b).unwrap();
        let e2 = Subspace::span(Rationals, 3, vec![q(&[0, 1, 0])]);
        assert!(i.equal(&e2).unwrap());
        assert_eq!(a.sum(&b).unwrap().dim(), 3);
        assert!(a.equal(&Subspace::zero(Rationals, 2)).is_err());
    }

    #[test]
    fn coordinates_in_generator_basis() {
        let mut c = Coordinates::new(Rationals, 3);
        assert!(c.push(&q(&[1, 1, 0])));
        assert!(c.push(&q(&[0, 1, 1])));
        assert!(!c.push(&q(&[1, 2, 1])));
        assert_eq!(c.coordinates(&q(&[2, 5, 3])), Some(q(&[2, 3])));
        assert_eq!(c.coordinates(&q(&[1, 0, 0])), None);
    }

    fn small_rows(cols: usize) -> impl Strategy<Value = Vec<Vec<i64>>> {
        prop::collection::vec(prop::collection::vec(-3i64..=3, cols), 0..5)
    }

    fn to_matrix<F: Field>(f: F, cols: usize, rows: &[Vec<i64>]) -> Matrix<F> {
        let rows = rows.iter().map(|r| r.iter().map(|&x| f.from_i64(x)).collect()).collect();
        Matrix::from_rows(f, cols, rows)
    }

    fn rank_nullity<F: Field>(f: F, cols: usize, rows: &[Vec<i64>]) {
        let m = to_matrix(f.clone(), cols, rows);
        let (rank, basis) = crate::exactla::rref(&m);
        let k = kernel(&m);
        assert_eq!(rank + k.dim(), cols);
        for v in k.rows() {
            assert!(m.mul_vec(v).iter().all(|x| f.is_zero(x)));
        }
        let again = Subspace::span(f.clone(), cols, basis.rows().to_vec());
        assert_eq!(again, basis);
        assert!(basis.pivots().windows(2).all(|w| w[0] < w[1]));
        for r in m.row_vectors() {
            assert!(basis.contains(&r));
        }
    }

    proptest! {
        #[test]
        fn rank_plus_nullity_over_q((cols, rows) in (1usize..5).prop_flat_map(|c| (Just(c), small_rows(c)))) {
            rank_nullity(Rationals, cols, &rows);
        }

        #[test]
        fn rank_plus_nullity_over_f5((cols, rows) in (1usize..5).prop_flat_map(|c| (Just(c), small_rows(c)))) {
            rank_nullity(PrimeField::new(5).unwrap(), cols, &rows);
        }

        #[test]
        fn coordinates_reconstruct_members(
            (cols, rows, mix) in (1usize..5).prop_flat_map(|c| (Just(c), small_rows(c), prop::collection::vec(-2i64..=2, 5)))
        ) {
            let f = Rationals;
            let mut c = Coordinates::new(f, cols);
            for r in &rows {
                c.push(&q(r));
            }
            let coeffs: Vec<_> = mix[..c.len()].iter().map(|&x| f.from_i64(x)).collect();
            let v = c.combine(&coeffs);
            prop_assert!(c.span().contains(&v));
            prop_assert_eq!(c.coordinates(&v), Some(coeffs));
        }

        #[test]
        fn intersection_is_contained_in_both(
            (cols, a, b) in (1usize..5).prop_flat_map(|c| (Just(c), small_rows(c), small_rows(c)))
        ) {
            let sa = Subspace::span(Rationals, cols, a.iter().map(|r| q(r)).collect());
            let sb = Subspace::span(Rationals, cols, b.iter().map(|r| q(r)).collect());
            let i = sa.intersection(&sb).unwrap();
            let s = sa.sum(&sb).unwrap();
            prop_assert!(i.is_subspace_of(&sa) && i.is_subspace_of(&sb));
            prop_assert_eq!(i.dim() + s.dim(), sa.dim() + sb.dim());
        }
    }
}
