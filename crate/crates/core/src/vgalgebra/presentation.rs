use serde::Serialize;

use super::{Side, VgAlgebra};
use crate::arrangement::Sign;
use crate::exactla::{Field, Matrix};
use crate::omatroid::signed_circuits;

/// Checks of both presentations for one signed circuit.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CircuitCheck {
    pub circuit: String,
    pub support: Vec<usize>,
    /// The inhomogeneous relation vanishes as a chamber function.
    pub vg_relation: bool,
    /// `Σ_p sgn(λ_{i_p}) x̄_{S∖i_p} = 0` in `grVG^{k−1}`.
    pub graded_relation: bool,
    /// Nonzero coordinates of the graded combination, when it fails.
    pub graded_residual: Vec<String>,
    /// Rank of the classes `x̄_{S∖i_p}`; a unique relation means `k − 1`.
    pub deleted_rank: usize,
    pub unique: bool,
    /// Over characteristic 2: the Orlik–Solomon boundary coefficients agree
    /// and the boundary relation holds.
    pub os_boundary: Option<bool>,
}

impl CircuitCheck {
    pub fn pass(&self) -> bool {
        self.vg_relation && self.graded_relation && self.unique && self.os_boundary != Some(false)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct PresentationReport {
    pub field: String,
    pub graded_dims: Vec<usize>,
    pub betti: Vec<u64>,
    pub circuits: Vec<CircuitCheck>,
}

impl PresentationReport {
    pub fn dims_match(&self) -> bool {
        self.graded_dims.iter().map(|&d| d as u64).eq(self.betti.iter().copied())
    }

    pub fn pass(&self) -> bool {
        self.dims_match() && self.circuits.iter().all(CircuitCheck::pass)
    }

    pub fn failures(&self) -> Vec<String> {
        let mut out = Vec::new();
        if !self.dims_match() {
            out.push(format!("graded dims {:?} differ from Betti numbers {:?}", self.graded_dims, self.betti));
        }
        for c in &self.circuits {
            if !c.vg_relation {
                out.push(format!("circuit {}: ungraded relation is nonzero", c.circuit));
            }
            if !c.graded_relation {
                out.push(format!("circuit {}: graded relation leaves {:?}", c.circuit, c.graded_residual));
            }
            if !c.unique {
                out.push(format!("circuit {}: deleted monomials have rank {}", c.circuit, c.deleted_rank));
            }
            if c.os_boundary == Some(false) {
                out.push(format!("circuit {}: boundary relation differs", c.circuit));
            }
        }
        out
    }
}

impl<F: Field> VgAlgebra<F> {
    /// Evaluates both presentations on every signed circuit.
    pub fn verify_presentations(&self) -> PresentationReport {
        let f = self.field();
        let fc = self.fil();
        let circuits = signed_circuits(self.arrangement())
            .representatives()
            .into_iter()
            .map(|sigma| {
                let support = sigma.support();
                let k = support.len();
                // e_i ↦ x_i^+, e_i − 1 ↦ −x_i^−
                let e = |i: usize| self.heaviside(i, Side::Plus);
                let e1 = |i: usize| self.scale(&f.neg(&f.one()), &self.heaviside(i, Side::Minus));
                let mut left = self.one();
                let mut right = self.one();
                for &i in &support {
                    if sigma.0[i] == Sign::Plus {
                        left = self.mul(&left, &e(i));
                        right = self.mul(&right, &e1(i));
                    } else {
                        left = self.mul(&left, &e1(i));
                        right = self.mul(&right, &e(i));
                    }
                }
                let vg_relation = self.sub(&left, &right) == self.zero();

                let deleted: Vec<_> = support
                    .iter()
                    .map(|&skip| {
                        let xs: Vec<_> = support.iter().filter(|&&i| i != skip).map(|&i| fc.xbar(i)).collect();
                        fc.product(&xs)
                    })
                    .collect();
                let combo = |coef: &dyn Fn(usize) -> F::Elem| {
                    let mut acc = fc.zero_class(k - 1).coords;
                    for (p, cls) in deleted.iter().enumerate() {
                        let c = coef(p);
                        for (a, x) in acc.iter_mut().zip(&cls.coords) {
                            *a = f.add(a, &f.mul(&c, x));
                        }
                    }
                    acc
                };
                let sgn = |p: usize| f.from_i64(sigma.0[support[p]].as_i64());
                let residual = combo(&sgn);
                let graded_relation = residual.iter().all(|x| f.is_zero(x));
                let graded_residual = residual
                    .iter()
                    .enumerate()
                    .filter(|(_, x)| !f.is_zero(x))
                    .map(|(j, x)| format!("{}:{}", j, f.format(x)))
                    .collect();
                let width = fc.grade_range(k - 1).len();
                let deleted_rank =
                    Matrix::from_rows(f.clone(), width, deleted.iter().map(|c| c.coords.clone()).collect()).rank();
                let os_boundary = self.is_char2().then(|| {
                    let alt = |p: usize| f.from_i64(if p.is_multiple_of(2) { 1 } else { -1 });
                    (0..k).all(|p| sgn(p) == alt(p)) && combo(&alt).iter().all(|x| f.is_zero(x))
                });
                CircuitCheck {
                    circuit: sigma.to_string(),
                    support,
                    vg_relation,
                    graded_relation,
                    graded_residual,
                    deleted_rank,
                    unique: deleted_rank + 1 == k,
                    os_boundary,
                }
            })
            .collect();
        PresentationReport {
            field: f.spec().to_string(),
            graded_dims: fc.graded_dims(),
            betti: self.lattice().betti(),
            circuits,
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arrangement::Arrangement;
    use crate::exactla::{PrimeField, Rationals};

    fn braid() -> Arrangement {
        Arrangement::from_i64(3, &[&[1, 0, 0], &[0, 1, 0], &[0, 0, 1], &[1, -1, 0], &[1, 0, -1], &[0, 1, -1]]).unwrap()
    }

    #[test]
    fn braid_presentations() {
        let r = VgAlgebra::new(&braid(), Rationals, false).unwrap().verify_presentations();
        assert_eq!(r.circuits.len(), 7);
        assert!(r.pass(), "{:?}", r.failures());
        let r = VgAlgebra::new(&braid(), PrimeField::new(3).unwrap(), false).unwrap().verify_presentations();
        assert!(r.pass(), "{:?}", r.failures());
    }

    #[test]
    fn boundary_relation_in_characteristic_two() {
        let r = VgAlgebra::new(&braid(), PrimeField::new(2).unwrap(), true).unwrap().verify_presentations();
        assert!(r.pass(), "{:?}", r.failures());
        assert!(r.circuits.iter().all(|c| c.os_boundary == Some(true)));
    }

    #[test]
    fn independent_normals_are_vacuous() {
        let b2 = Arrangement::from_i64(2, &[&[1, 0], &[0, 1]]).unwrap();
        let r = VgAlgebra::new(&b2, Rationals, false).unwrap().verify_presentations();
        assert!(r.circuits.is_empty() && r.pass());
    }

    #[test]
    fn wrong_signs_are_caught() {
        // flipping one sign of the pencil relation must leave a residual
        let a = Arrangement::from_i64(2, &[&[1, 0], &[0, 1], &[1, 1]]).unwrap();
        let vg = VgAlgebra::new(&a, Rationals, false).unwrap();
        let fc = vg.fil();
        let q = Rationals;
        let s = [
            fc.product(&[fc.xbar(1), fc.xbar(2)]),
            fc.product(&[fc.xbar(0), fc.xbar(2)]),
            fc.product(&[fc.xbar(0), fc.xbar(1)]),
        ];
        let bad: Vec<_> =
            (0..s[0].coords.len()).map(|j| q.add(&q.add(&s[0].coords[j], &s[1].coords[j]), &s[2].coords[j])).collect();
        assert!(bad.iter().any(|x| !q.is_zero(x)));
        assert!(vg.verify_presentations().pass());
    }
}
