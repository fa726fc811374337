use rayon::prelude::*;

use super::{GenHeaviside, VgAlgebra};
use crate::error::{Error, Result};
use crate::exactla::Field;

/// Largest number of projective points the `F_p` scan will visit.
pub const SCAN_LIMIT: u64 = 20_000_000;

/// A line `F·ȳ` in `grVG^1`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SqzeroLine<F: Field> {
    /// Coordinates in `x̄_1, …, x̄_n`, first nonzero entry `1`.
    pub direction: Vec<F::Elem>,
    pub support: Vec<usize>,
    /// Positions in the gHeav enumeration whose class spans this line.
    pub sources: Vec<usize>,
}

/// Scales `v` so that its first nonzero entry is `1`.
pub fn normalize<F: Field>(f: &F, v: &[F::Elem]) -> Option<Vec<F::Elem>> {
    let lead = v.iter().find(|x| !f.is_zero(x))?;
    let inv = f.inv(lead)?;
    Some(v.iter().map(|x| f.mul(x, &inv)).collect())
}

/// `((i, j), coordinates of x̄_i x̄_j)`.
type PairProducts<E> = Vec<((usize, usize), Vec<E>)>;

impl<F: Field> VgAlgebra<F> {
    /// The products `x̄_i x̄_j`, `i < j`, in grade-2 coordinates.
    fn pair_products(&self) -> PairProducts<F::Elem> {
        let fc = self.fil();
        let xs: Vec<_> = (0..self.n()).map(|i| fc.xbar(i)).collect();
        let mut out = Vec::new();
        for i in 0..self.n() {
            for j in i + 1..self.n() {
                out.push(((i, j), fc.graded_mult(&xs[i], &xs[j]).coords));
            }
        }
        out
    }

    /// `ȳ²` for `ȳ = Σ c_i x̄_i`, by lift–multiply–reduce.
    pub fn square_class(&self, c: &[F::Elem]) -> Vec<F::Elem> {
        let fc = self.fil();
        let u = fc.linear_class(c);
        fc.graded_mult(&u, &u).coords
    }

    pub fn is_square_zero(&self, c: &[F::Elem]) -> bool {
        self.square_class(c).iter().all(|x| self.field().is_zero(x))
    }

    /// Lines spanned by the classes of generalized Heaviside functions, each
    /// checked to square to zero.
    ///
    /// In characteristic 2 every class squares to zero, and the result is the
    /// exhaustive scan instead.
    pub fn sqzero(&self) -> Result<Vec<SqzeroLine<F>>> {
        if self.is_char2() {
            return Ok(self
                .sqzero_scan()?
                .into_iter()
                .map(|direction| {
                    let support = support_of(self.field(), &direction);
                    SqzeroLine { direction, support, sources: Vec::new() }
                })
                .collect());
        }
        self.sqzero_from(&self.gheav_bruteforce())
    }

    /// As [`VgAlgebra::sqzero`] with a precomputed gHeav enumeration.
    pub fn sqzero_from(&self, gheav: &[GenHeaviside<F>]) -> Result<Vec<SqzeroLine<F>>> {
        let f = self.field();
        let mut lines: Vec<SqzeroLine<F>> = Vec::new();
        for (k, y) in gheav.iter().enumerate() {
            let direction = normalize(f, &y.class)
                .ok_or_else(|| Error::Invariant("generalized Heaviside with zero class".into()))?;
            if let Some(line) = lines.iter_mut().find(|l| l.direction == direction) {
                line.sources.push(k);
                continue;
            }
            if !self.is_square_zero(&direction) {
                return Err(Error::Invariant(format!("class of gHeav element {k} does not square to zero")));
            }
            lines.push(SqzeroLine { support: support_of(f, &direction), direction, sources: vec![k] });
        }
        lines.sort_by(|a, b| {
            (a.support.len(), &a.support, &a.direction).cmp(&(b.support.len(), &b.support, &b.direction))
        });
        Ok(lines)
    }

    /// Every normalized `c ∈ F_p^n` with `(Σ c_i x̄_i)² = 0`, in lex order of
    /// `c` read as base-`p` digits.
    ///
    /// Uses `(Σ c_i x̄_i)² = 2 Σ_{i<j} c_i c_j x̄_i x̄_j`, after checking
    /// `x̄_i² = 0`.
    pub fn sqzero_scan(&self) -> Result<Vec<Vec<F::Elem>>> {
        let f = self.field().clone();
        let p = f.characteristic();
        if p == 0 {
            return Err(Error::Usage("the square-zero scan needs a prime field".into()));
        }
        let n = self.n();
        let total = (0..n).try_fold(0u64, |acc, k| p.checked_pow((n - k - 1) as u32).and_then(|x| acc.checked_add(x)));
        let total = match total {
            Some(t) if t <= SCAN_LIMIT => t,
            _ => return Err(Error::LimitExceeded(format!("scan of {p}^{n} vectors exceeds the limit"))),
        };
        let fc = self.fil();
        for i in 0..n {
            let x = fc.xbar(i);
            if !fc.is_zero(&fc.graded_mult(&x, &x)) {
                return Err(Error::Invariant(format!("x̄_{} does not square to zero", i + 1)));
            }
        }
        let pairs = self.pair_products();
        let d2 = fc.graded_dims().get(2).copied().unwrap_or(0);
        let two = f.from_i64(2);
        // quadratic forms per grade-2 coordinate
        let forms: Vec<Vec<(usize, usize, F::Elem)>> = (0..d2)
            .map(|r| {
                pairs
                    .iter()
                    .filter(|(_, v)| !f.is_zero(&v[r]))
                    .map(|((i, j), v)| (*i, *j, f.mul(&two, &v[r])))
                    .collect()
            })
            .collect();
        let field_elems: Vec<F::Elem> = (0..p as i64).map(|v| f.from_i64(v)).collect();
        let decode = |mut idx: u64| -> Vec<F::Elem> {
            let mut lead = 0;
            while idx >= p.pow((n - lead - 1) as u32) {
                idx -= p.pow((n - lead - 1) as u32);
                lead += 1;
            }
            let mut c = vec![f.zero(); n];
            c[lead] = f.one();
            for k in (lead + 1..n).rev() {
                c[k] = field_elems[(idx % p) as usize].clone();
                idx /= p;
            }
            c
        };
        let mut hits: Vec<Vec<F::Elem>> = (0..total)
            .into_par_iter()
            .filter_map(|idx| {
                let c = decode(idx);
                let zero = forms.iter().all(|form| {
                    let s = form.iter().fold(f.zero(), |acc, (i, j, w)| f.add(&acc, &f.mul(w, &f.mul(&c[*i], &c[*j]))));
                    f.is_zero(&s)
                });
                zero.then_some(c)
            })
            .collect();
        hits.sort();
        Ok(hits)
    }
}

/// Renders `Σ c_i x_i` as e.g. `x1+x2-x3`, or `2x1-1/2x4`.
pub fn format_linear<F: Field>(f: &F, c: &[F::Elem]) -> String {
    let mut out = String::new();
    for (i, x) in c.iter().enumerate() {
        if f.is_zero(x) {
            continue;
        }
        let neg =
            if f.characteristic() == 0 { f.format(x).starts_with('-') } else { f.is_one(&f.neg(x)) && !f.is_one(x) };
        let mag = if neg { f.neg(x) } else { x.clone() };
        if neg {
            out.push('-');
        } else if !out.is_empty() {
            out.push('+');
        }
        if !f.is_one(&mag) {
            out.push_str(&f.format(&mag));
        }
        out.push_str(&format!("x{}", i + 1));
    }
    if out.is_empty() {
        out.push('0');
    }
    out
}

impl<F: Field> SqzeroLine<F> {
    pub fn display(&self, f: &F) -> String {
        format_linear(f, &self.direction)
    }
}

fn support_of<F: Field>(f: &F, v: &[F::Elem]) -> Vec<usize> {
    (0..v.len()).filter(|&i| !f.is_zero(&v[i])).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arrangement::Arrangement;
    use crate::exactla::{PrimeField, Rationals};

    #[test]
    fn single_line() {
        let a = Arrangement::from_i64(1, &[&[1]]).unwrap();
        let vg = VgAlgebra::new(&a, Rationals, false).unwrap();
        let l = vg.sqzero().unwrap();
        assert_eq!(l.len(), 1);
        assert_eq!(l[0].sources, vec![0, 1]);
    }

    #[test]
    fn quadrant_lines_match_scan() {
        let b2 = Arrangement::from_i64(2, &[&[1, 0], &[0, 1]]).unwrap();
        let vg = VgAlgebra::new(&b2, PrimeField::new(5).unwrap(), false).unwrap();
        let lines: Vec<_> = vg.sqzero().unwrap().into_iter().map(|l| l.direction).collect();
        assert_eq!(lines, vec![vec![1, 0], vec![0, 1]]);
        let mut scan = vg.sqzero_scan().unwrap();
        scan.sort_by(|a, b| b.cmp(a));
        assert_eq!(scan, vec![vec![1, 0], vec![0, 1]]);
    }

    #[test]
    fn pencil_has_four_lines() {
        let a = Arrangement::from_i64(2, &[&[1, 0], &[0, 1], &[1, 1]]).unwrap();
        let vg = VgAlgebra::new(&a, PrimeField::new(3).unwrap(), false).unwrap();
        let lines = vg.sqzero().unwrap();
        assert_eq!(lines.len(), 4);
        let mut from_lines: Vec<_> = lines.into_iter().map(|l| l.direction).collect();
        from_lines.sort();
        assert_eq!(vg.sqzero_scan().unwrap(), from_lines);
    }

    #[test]
    fn characteristic_two_is_everything() {
        let a = Arrangement::from_i64(2, &[&[1, 0], &[0, 1], &[1, 1]]).unwrap();
        let vg = VgAlgebra::new(&a, PrimeField::new(2).unwrap(), true).unwrap();
        assert_eq!(vg.sqzero().unwrap().len(), 7);
    }

    #[test]
    fn linear_forms_render() {
        let q = Rationals;
        let c = [q.one(), q.zero(), q.from_i64(-1), q.parse("1/2").unwrap()];
        assert_eq!(format_linear(&q, &c), "x1-x3+1/2x4");
        assert_eq!(format_linear(&q, &[q.zero()]), "0");
    }

    #[test]
    fn scan_needs_prime_field() {
        let a = Arrangement::from_i64(1, &[&[1]]).unwrap();
        let vg = VgAlgebra::new(&a, Rationals, false).unwrap();
        assert!(matches!(vg.sqzero_scan(), Err(Error::Usage(_))));
    }
}
