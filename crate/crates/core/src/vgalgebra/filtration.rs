use super::{VgAlgebra, VgElement};
use crate::error::{Error, Result};
use crate::exactla::{Coordinates, Field};

/// An element of `grVG^k` in the monomial basis of that grade.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct GradedClass<F: Field> {
    pub degree: usize,
    pub coords: Vec<F::Elem>,
}

/// `Fil^0 ⊆ Fil^1 ⊆ … ⊆ Fil^ℓ` with a basis of monomials `x_S`.
///
/// The basis is chosen greedily over subsets `S` in size-lex order, so its
/// first `dim Fil^k` members span `Fil^k` and the grade-`k` members give the
/// complement representing `grVG^k`.
#[derive(Clone, Debug)]
pub struct FilChain<F: Field> {
    field: F,
    ambient: usize,
    monomials: Vec<u32>,
    grade_end: Vec<usize>,
    coords: Coordinates<F>,
}

fn combinations(n: usize, k: usize, mut visit: impl FnMut(u32)) {
    fn rec(start: usize, n: usize, k: usize, acc: u32, visit: &mut dyn FnMut(u32)) {
        if k == 0 {
            visit(acc);
            return;
        }
        for i in start..=n - k {
            rec(i + 1, n, k - 1, acc | 1 << i, visit);
        }
    }
    if k <= n {
        rec(0, n, k, 0, &mut visit);
    }
}

impl<F: Field> FilChain<F> {
    pub(crate) fn new(vg: &VgAlgebra<F>) -> Self {
        let n = vg.n();
        let ell = vg.arrangement().ell();
        let mut coords = Coordinates::new(vg.field().clone(), vg.dim());
        let mut monomials = Vec::new();
        let mut grade_end = Vec::with_capacity(ell + 1);
        for k in 0..=ell {
            combinations(n, k, |s| {
                if coords.len() < vg.dim() && coords.push(&vg.monomial(s).values) {
                    monomials.push(s);
                }
            });
            grade_end.push(monomials.len());
        }
        FilChain { field: vg.field().clone(), ambient: vg.dim(), monomials, grade_end, coords }
    }

    pub fn ell(&self) -> usize {
        self.grade_end.len() - 1
    }

    /// `dim Fil^k` for `k = 0..=ℓ`.
    pub fn dims(&self) -> Vec<usize> {
        self.grade_end.clone()
    }

    /// `dim grVG^k` for `k = 0..=ℓ`.
    pub fn graded_dims(&self) -> Vec<usize> {
        (0..self.grade_end.len()).map(|k| self.grade_range(k).len()).collect()
    }

    pub fn grade_range(&self, k: usize) -> std::ops::Range<usize> {
        if k >= self.grade_end.len() {
            let e = self.monomials.len();
            return e..e;
        }
        let start = if k == 0 { 0 } else { self.grade_end[k - 1] };
        start..self.grade_end[k]
    }

    /// Basis monomials of grade `k`, as subset masks.
    pub fn grade_basis(&self, k: usize) -> &[u32] {
        &self.monomials[self.grade_range(k)]
    }

    pub fn is_full(&self) -> bool {
        self.monomials.len() == self.ambient
    }

    /// Coordinates in the full monomial basis.
    pub fn coordinates(&self, f: &VgElement<F>) -> Vec<F::Elem> {
        self.coords.coordinates(&f.values).expect("Fil^ell is the whole algebra")
    }

    /// Least `k` with `f ∈ Fil^k`.
    pub fn degree(&self, f: &VgElement<F>) -> usize {
        let c = self.coordinates(f);
        (0..self.grade_end.len()).rev().find(|&k| self.grade_range(k).any(|j| !self.field.is_zero(&c[j]))).unwrap_or(0)
    }

    pub fn contains(&self, f: &VgElement<F>, k: usize) -> bool {
        self.degree(f) <= k
    }

    /// Class of `f ∈ Fil^k` in `grVG^k`.
    pub fn graded_class(&self, f: &VgElement<F>, k: usize) -> Result<GradedClass<F>> {
        let c = self.coordinates(f);
        let above = self.grade_end.get(k).copied().unwrap_or(self.monomials.len());
        if c[above..].iter().any(|x| !self.field.is_zero(x)) {
            return Err(Error::NotInFil(k));
        }
        Ok(GradedClass { degree: k, coords: c[self.grade_range(k)].to_vec() })
    }

    /// A lift of the class to `Fil^k`, in the span of grade-`k` monomials.
    pub fn lift(&self, u: &GradedClass<F>) -> VgElement<F> {
        let range = self.grade_range(u.degree);
        let mut c = vec![self.field.zero(); self.monomials.len()];
        for (j, x) in range.zip(&u.coords) {
            c[j] = x.clone();
        }
        VgElement { values: self.coords.combine(&c) }
    }

    /// Lift, multiply, reduce.
    pub fn graded_mult(&self, u: &GradedClass<F>, v: &GradedClass<F>) -> GradedClass<F> {
        let f = &self.field;
        let a = self.lift(u);
        let b = self.lift(v);
        let prod = VgElement { values: a.values.iter().zip(&b.values).map(|(x, y)| f.mul(x, y)).collect() };
        let k = u.degree + v.degree;
        self.graded_class(&prod, k).expect("Fil^i Fil^j lies in Fil^(i+j)")
    }

    pub fn zero_class(&self, k: usize) -> GradedClass<F> {
        GradedClass { degree: k, coords: vec![self.field.zero(); self.grade_range(k).len()] }
    }

    pub fn is_zero(&self, u: &GradedClass<F>) -> bool {
        u.coords.iter().all(|x| self.field.is_zero(x))
    }

    /// `x̄_i`, the class of `x_i^+` in `grVG^1`.
    pub fn xbar(&self, i: usize) -> GradedClass<F> {
        let pos =
            self.grade_basis(1).iter().position(|&m| m == 1 << i).expect("singletons are independent modulo constants");
        let mut c = self.zero_class(1);
        c.coords[pos] = self.field.one();
        c
    }

    /// `Σ c_i x̄_i`.
    pub fn linear_class(&self, c: &[F::Elem]) -> GradedClass<F> {
        let mut out = self.zero_class(1);
        for (i, ci) in c.iter().enumerate() {
            let pos = self.grade_basis(1).iter().position(|&m| m == 1 << i).expect("singleton");
            out.coords[pos] = self.field.add(&out.coords[pos], ci);
        }
        out
    }

    /// Class of `x_S` in `grVG^{|S|}`.
    pub fn monomial_class(&self, vg: &VgAlgebra<F>, s: u32) -> GradedClass<F> {
        self.graded_class(&vg.monomial(s), s.count_ones() as usize).expect("x_S lies in Fil^|S|")
    }

    /// Product of classes, left to right.
    pub fn product(&self, factors: &[GradedClass<F>]) -> GradedClass<F> {
        let mut acc = GradedClass { degree: 0, coords: vec![self.field.one()] };
        for u in factors {
            acc = self.graded_mult(&acc, u);
        }
        acc
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arrangement::Arrangement;
    use crate::exactla::{PrimeField, Rationals};
    use crate::vgalgebra::Side;

    fn braid() -> Arrangement {
        Arrangement::from_i64(3, &[&[1, 0, 0], &[0, 1, 0], &[0, 0, 1], &[1, -1, 0], &[1, 0, -1], &[0, 1, -1]]).unwrap()
    }

    #[test]
    fn filtration_dimensions() {
        let pencil = Arrangement::from_i64(2, &[&[1, 0], &[0, 1], &[1, 1]]).unwrap();
        let vg = VgAlgebra::new(&pencil, Rationals, false).unwrap();
        assert_eq!(vg.fil().dims(), vec![1, 4, 6]);
        let vg = VgAlgebra::new(&braid(), Rationals, false).unwrap();
        assert_eq!(vg.fil().dims(), vec![1, 7, 18, 24]);
        let line = Arrangement::from_i64(1, &[&[1]]).unwrap();
        let vg = VgAlgebra::new(&line, Rationals, false).unwrap();
        assert_eq!(vg.fil().dims(), vec![1, 2]);
        let vg = VgAlgebra::new(&braid(), PrimeField::new(3).unwrap(), false).unwrap();
        assert_eq!(vg.fil().graded_dims(), vec![1, 6, 11, 6]);
    }

    #[test]
    fn heaviside_classes_square_to_zero() {
        let vg = VgAlgebra::new(&braid(), Rationals, false).unwrap();
        let fc = vg.fil();
        for i in 0..6 {
            let x = fc.xbar(i);
            assert!(fc.is_zero(&fc.graded_mult(&x, &x)));
            let lifted = fc.graded_class(&vg.heaviside(i, Side::Plus), 1).unwrap();
            assert_eq!(lifted, x);
        }
    }

    #[test]
    fn pencil_graded_relation() {
        let pencil = Arrangement::from_i64(2, &[&[1, 0], &[0, 1], &[1, 1]]).unwrap();
        let vg = VgAlgebra::new(&pencil, Rationals, false).unwrap();
        let fc = vg.fil();
        let (x1, x2, x3) = (fc.xbar(0), fc.xbar(1), fc.xbar(2));
        let q = Rationals;
        let a = fc.graded_mult(&x1, &x2);
        let b = fc.graded_mult(&x1, &x3);
        let c = fc.graded_mult(&x2, &x3);
        // circuit (+,+,-): sgn(λ_3) x1x2 + sgn(λ_2) x1x3 + sgn(λ_1) x2x3
        let sum: Vec<_> =
            (0..a.coords.len()).map(|j| q.add(&q.add(&q.neg(&a.coords[j]), &b.coords[j]), &c.coords[j])).collect();
        assert!(sum.iter().all(|x| q.is_zero(x)));
        assert!(!fc.is_zero(&a));
    }

    #[test]
    fn not_in_fil_is_reported() {
        let vg = VgAlgebra::new(&braid(), Rationals, false).unwrap();
        let fc = vg.fil();
        let e = vg.indicator(0);
        assert_eq!(fc.degree(&e), 3);
        assert!(matches!(fc.graded_class(&e, 1), Err(Error::NotInFil(1))));
    }
}
