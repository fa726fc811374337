use std::collections::BTreeSet;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use super::{Arrangement, Sign, SignVector};
use crate::exactla::{kernel, Matrix, Rationals};

/// A homogeneous strict inequality `c · x > 0` with the set of original
/// constraints it was combined from.
#[derive(Clone, Debug)]
struct Row {
    c: Vec<BigRational>,
    history: BTreeSet<usize>,
}

fn normalize(c: &mut [BigRational]) {
    if let Some(lead) = c.iter().find(|x| !x.is_zero()) {
        let s = lead.abs();
        for x in c.iter_mut() {
            *x = &*x / &s;
        }
    }
}

/// Finds `x` with `c · x > 0` for every row of `constraints`, by
/// Fourier–Motzkin elimination with Chernikov pruning.
///
/// The returned point is a primitive integer vector and is checked exactly.
pub fn strictly_feasible(dim: usize, constraints: &[Vec<BigRational>]) -> Option<Vec<BigRational>> {
    let mut rows: Vec<Row> = constraints
        .iter()
        .enumerate()
        .map(|(k, c)| {
            assert_eq!(c.len(), dim);
            let mut c = c.clone();
            normalize(&mut c);
            Row { c, history: BTreeSet::from([k]) }
        })
        .collect();
    dedup(&mut rows);
    // stages[k] holds the rows involving variables k.. before eliminating k
    let mut stages: Vec<Vec<Row>> = Vec::with_capacity(dim);
    for k in 0..dim {
        if rows.iter().any(|r| r.c.iter().all(Zero::is_zero)) {
            return None;
        }
        let (pos, neg, rest) = split(&rows, k);
        stages.push(rows.clone());
        let mut next: Vec<Row> = rest.into_iter().cloned().collect();
        if !pos.is_empty() && !neg.is_empty() {
            for p in &pos {
                for q in &neg {
                    let history: BTreeSet<usize> = p.history.union(&q.history).copied().collect();
                    if history.len() > k + 2 {
                        continue;
                    }
                    let (a, b) = (p.c[k].clone(), -q.c[k].clone());
                    let mut c: Vec<BigRational> = p.c.iter().zip(&q.c).map(|(x, y)| x * &b + y * &a).collect();
                    c[k] = BigRational::zero();
                    normalize(&mut c);
                    next.push(Row { c, history });
                }
            }
        }
        dedup(&mut next);
        rows = next;
    }
    if !rows.is_empty() {
        // every variable eliminated; leftover rows read 0 > 0
        return None;
    }
    let mut x = vec![BigRational::zero(); dim];
    for k in (0..dim).rev() {
        let (pos, neg, _) = split(&stages[k], k);
        let bound = |r: &Row| {
            let rest: BigRational = (k + 1..dim).map(|j| &r.c[j] * &x[j]).sum();
            -rest / &r.c[k]
        };
        let lo = pos.iter().map(|r| bound(r)).max();
        let hi = neg.iter().map(|r| bound(r)).min();
        x[k] = match (lo, hi) {
            (None, None) => BigRational::zero(),
            (Some(l), None) => l.floor() + BigRational::one(),
            (None, Some(h)) => h.ceil() - BigRational::one(),
            (Some(l), Some(h)) => {
                if l >= h {
                    return None;
                }
                (l + h) / BigRational::from_integer(BigInt::from(2))
            }
        };
    }
    let x = primitive(x);
    let ok = constraints.iter().all(|c| c.iter().zip(&x).map(|(a, b)| a * b).sum::<BigRational>().is_positive());
    assert!(ok, "Fourier-Motzkin witness failed verification");
    Some(x)
}

fn split(rows: &[Row], k: usize) -> (Vec<&Row>, Vec<&Row>, Vec<&Row>) {
    let (mut pos, mut neg, mut rest) = (Vec::new(), Vec::new(), Vec::new());
    for r in rows {
        if r.c[k].is_positive() {
            pos.push(r);
        } else if r.c[k].is_negative() {
            neg.push(r);
        } else {
            rest.push(r);
        }
    }
    (pos, neg, rest)
}

fn dedup(rows: &mut Vec<Row>) {
    rows.sort_by(|a, b| a.c.cmp(&b.c).then(a.history.len().cmp(&b.history.len())));
    rows.dedup_by(|later, earlier| later.c == earlier.c);
}

/// Scales a nonzero rational vector to a primitive integer vector.
fn primitive(x: Vec<BigRational>) -> Vec<BigRational> {
    let lcm = x.iter().fold(BigInt::one(), |l, v| l.lcm(v.denom()));
    let ints: Vec<BigInt> = x.iter().map(|v| (v * BigRational::from_integer(lcm.clone())).to_integer()).collect();
    let g = ints.iter().fold(BigInt::zero(), |g, v| g.gcd(v));
    if g.is_zero() {
        return x;
    }
    ints.into_iter().map(|v| BigRational::from_integer(v / &g)).collect()
}

/// Returns a point realizing `sv`: `sgn α_i(v) = sv_i` for every `i`.
///
/// Zero entries are equality constraints, handled by passing to the common
/// kernel of the corresponding normals.
pub fn feasible(a: &Arrangement, sv: &SignVector) -> Option<Vec<BigRational>> {
    assert_eq!(sv.len(), a.n());
    let zeros: Vec<Vec<BigRational>> =
        (0..a.n()).filter(|&i| sv.0[i] == Sign::Zero).map(|i| a.normal(i).to_vec()).collect();
    let basis: Vec<Vec<BigRational>> = if zeros.is_empty() {
        Matrix::identity(Rationals, a.ell()).row_vectors()
    } else {
        kernel(&Matrix::from_rows(Rationals, a.ell(), zeros)).rows().to_vec()
    };
    let m = basis.len();
    let mut constraints = Vec::new();
    for i in 0..a.n() {
        let s = match sv.0[i] {
            Sign::Plus => BigRational::one(),
            Sign::Minus => -BigRational::one(),
            Sign::Zero => continue,
        };
        let c: Vec<BigRational> = basis.iter().map(|b| &s * a.eval(i, b)).collect();
        constraints.push(c);
    }
    let u = strictly_feasible(m, &constraints)?;
    let mut v = vec![BigRational::zero(); a.ell()];
    for (uk, b) in u.iter().zip(&basis) {
        for (x, y) in v.iter_mut().zip(b) {
            *x += uk * y;
        }
    }
    debug_assert_eq!(&a.sign_vector(&v), sv);
    Some(v)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactla::Field;

    fn q(v: &[i64]) -> Vec<BigRational> {
        v.iter().map(|&x| Rationals.from_i64(x)).collect()
    }

    #[test]
    fn single_hyperplane() {
        let a = Arrangement::from_i64(1, &[&[1]]).unwrap();
        let w = feasible(&a, &SignVector::parse("+").unwrap()).unwrap();
        assert_eq!(w, q(&[1]));
    }

    #[test]
    fn pencil_orthant_is_infeasible() {
        let a = Arrangement::from_i64(2, &[&[1, 0], &[0, 1], &[1, 1]]).unwrap();
        assert!(feasible(&a, &SignVector::parse("++-").unwrap()).is_none());
        assert!(feasible(&a, &SignVector::parse("+-+").unwrap()).is_some());
    }

    #[test]
    fn coordinate_quadrant() {
        let a = Arrangement::from_i64(2, &[&[1, 0], &[0, 1]]).unwrap();
        let w = feasible(&a, &SignVector::parse("+-").unwrap()).unwrap();
        assert_eq!(w, q(&[1, -1]));
    }

    #[test]
    fn equality_constraints() {
        let a = Arrangement::from_i64(2, &[&[1, 0], &[0, 1], &[1, 1]]).unwrap();
        let w = feasible(&a, &SignVector::parse("0+-").unwrap());
        assert!(w.is_none());
        let w = feasible(&a, &SignVector::parse("0++").unwrap()).unwrap();
        assert_eq!(a.sign_vector(&w).to_string(), "0++");
    }

    #[test]
    fn narrow_cone() {
        // 100x - y > 0, y - 99x > 0, x > 0
        let c = vec![q(&[100, -1]), q(&[-99, 1]), q(&[1, 0])];
        let x = strictly_feasible(2, &c).unwrap();
        assert_eq!(x, q(&[199, 19800]));
        let c = vec![q(&[1, -1]), q(&[-1, 1])];
        assert!(strictly_feasible(2, &c).is_none());
    }
}
