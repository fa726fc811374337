use num_rational::BigRational;
use num_traits::Zero;

use super::{chambers, Arrangement, ChamberSet, Sign, SignVector};
use crate::exactla::{kernel, Matrix, Rationals};

/// The restriction `A^{H_i}` in coordinates of `H_i`, with lifts of its
/// chambers back to `A`.
#[derive(Clone, Debug)]
pub struct Restriction {
    pub hyperplane: usize,
    pub arrangement: Arrangement,
    pub chambers: ChamberSet,
    /// Basis of `H_i` used as coordinates (rows are vectors in `ℚ^ell`).
    pub basis: Vec<Vec<BigRational>>,
    /// For each original `j ≠ i`: the induced hyperplane and whether the
    /// orientation agrees.
    pub back_ref: Vec<Option<(usize, Sign)>>,
    /// Original hyperplanes merged into each induced hyperplane.
    pub members: Vec<Vec<usize>>,
    /// `(C^+, C^−)` for each chamber of the restriction, as indices into the
    /// chambers of `A`.
    pub lifts: Vec<(usize, usize)>,
}

pub fn restriction(a: &Arrangement, cs: &ChamberSet, i: usize) -> Restriction {
    let ell = a.ell();
    let k = kernel(&Matrix::from_rows(Rationals, ell, vec![a.normal(i).to_vec()]));
    let basis: Vec<Vec<BigRational>> = k.rows().to_vec();
    let induced = |j: usize| -> Vec<BigRational> { basis.iter().map(|b| a.eval(j, b)).collect() };
    let mut normals: Vec<Vec<BigRational>> = Vec::new();
    let mut members: Vec<Vec<usize>> = Vec::new();
    let mut back_ref = vec![None; a.n()];
    for j in (0..a.n()).filter(|&j| j != i) {
        let beta = induced(j);
        debug_assert!(beta.iter().any(|x| !x.is_zero()));
        let hit = normals.iter().enumerate().find_map(|(t, g)| ratio_sign(g, &beta).map(|s| (t, s)));
        match hit {
            Some((t, s)) => {
                members[t].push(j);
                back_ref[j] = Some((t, s));
            }
            None => {
                back_ref[j] = Some((normals.len(), Sign::Plus));
                members.push(vec![j]);
                normals.push(beta);
            }
        }
    }
    let labels =
        members.iter().map(|m| m.iter().map(|&j| a.labels()[j].as_str()).collect::<Vec<_>>().join("=")).collect();
    let arrangement = Arrangement::with_labels(ell - 1, normals, labels).expect("induced arrangement is valid");
    let rchambers = chambers(&arrangement);
    let mut lifts = Vec::with_capacity(rchambers.len());
    for d in 0..rchambers.len() {
        let u = rchambers.witness(d);
        let mut p = vec![BigRational::zero(); ell];
        for (uk, b) in u.iter().zip(&basis) {
            for (x, y) in p.iter_mut().zip(b) {
                *x += uk * y;
            }
        }
        let mut sv = a.sign_vector(&p);
        debug_assert_eq!(sv.0[i], Sign::Zero);
        sv.0[i] = Sign::Plus;
        let plus = cs.position(&sv).expect("lift C+ is a chamber");
        sv.0[i] = Sign::Minus;
        let minus = cs.position(&sv).expect("lift C- is a chamber");
        lifts.push((plus, minus));
    }
    Restriction { hyperplane: i, arrangement, chambers: rchambers, basis, back_ref, members, lifts }
}

/// `Some(sign)` if `v = λ g` for a nonzero `λ` of that sign.
fn ratio_sign(g: &[BigRational], v: &[BigRational]) -> Option<Sign> {
    let p = g.iter().position(|x| !x.is_zero())?;
    if v[p].is_zero() {
        return None;
    }
    let lambda = &v[p] / &g[p];
    g.iter().zip(v).all(|(x, y)| &(x * &lambda) == y).then(|| Sign::of(&lambda))
}

impl Restriction {
    /// Sign vector of a restriction chamber, read in the original indexing
    /// (`0` at the restricted hyperplane).
    pub fn original_sign(&self, d: usize) -> SignVector {
        let s = self.chambers.sign(d);
        SignVector(
            self.back_ref
                .iter()
                .map(|r| match r {
                    Some((t, o)) => {
                        if *o == Sign::Plus {
                            s.0[*t]
                        } else {
                            s.0[*t].flip()
                        }
                    }
                    None => Sign::Zero,
                })
                .collect(),
        )
    }
}
