use std::collections::HashMap;

use serde::Serialize;

use crate::arrangement::{Sign, SignVector};
use crate::error::{Error, Result};
use crate::exactla::{kernel, Field, Matrix};
use crate::omatroid::{circuits_equivalent, reorientation_between, signed_circuits, Equivalence, SignedCircuitSet};
use crate::vgalgebra::{GradedClass, SqzeroLine, VgAlgebra};

/// Signed circuits read off the relations among products of good generators.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RecoveredCircuits {
    pub circuits: SignedCircuitSet,
    /// Generator scalars `μ_i` relative to `x̄_i`, when known.
    pub scalars: Option<Vec<String>>,
    /// Per circuit support: the normalized `±1` relation vector.
    pub certificate: Vec<(Vec<usize>, Vec<i8>)>,
}

fn subset_indices(s: u32) -> Vec<usize> {
    (0..32).filter(|&i| s >> i & 1 == 1).collect()
}

/// Products `f_I` for all `I` with `|I| ≤ max`, built by appending the
/// largest index.
struct Products<'a, F: Field> {
    vg: &'a VgAlgebra<F>,
    f: &'a [GradedClass<F>],
    memo: HashMap<u32, GradedClass<F>>,
}

impl<'a, F: Field> Products<'a, F> {
    fn new(vg: &'a VgAlgebra<F>, f: &'a [GradedClass<F>]) -> Self {
        Products { vg, f, memo: HashMap::new() }
    }

    fn get(&mut self, s: u32) -> GradedClass<F> {
        if let Some(v) = self.memo.get(&s) {
            return v.clone();
        }
        let fc = self.vg.fil();
        let v = if s == 0 {
            GradedClass { degree: 0, coords: vec![self.vg.field().one()] }
        } else {
            let top = 31 - s.leading_zeros();
            let rest = self.get(s & !(1 << top));
            if fc.is_zero(&rest) {
                fc.zero_class(rest.degree + 1)
            } else {
                fc.graded_mult(&rest, &self.f[top as usize])
            }
        };
        self.memo.insert(s, v.clone());
        v
    }
}

fn check_generators<F: Field>(vg: &VgAlgebra<F>, f: &[GradedClass<F>]) -> Result<()> {
    let fc = vg.fil();
    let d1 = fc.graded_dims().get(1).copied().unwrap_or(0);
    if f.len() != vg.n() || f.iter().any(|u| u.degree != 1 || u.coords.len() != d1) {
        return Err(Error::Domain(format!("expected {} classes of degree 1", vg.n())));
    }
    let rank = Matrix::from_rows(vg.field().clone(), d1, f.iter().map(|u| u.coords.clone()).collect()).rank();
    if rank != d1 {
        return Err(Error::Domain("generators do not span grVG^1".into()));
    }
    for (i, u) in f.iter().enumerate() {
        if !fc.is_zero(&fc.graded_mult(u, u)) {
            return Err(Error::Domain(format!("generator {} does not square to zero", i + 1)));
        }
    }
    Ok(())
}

/// `I` is a circuit iff `f_I = 0` while every `f_{I∖i} ≠ 0`.
pub fn detect_circuits_from_products<F: Field>(vg: &VgAlgebra<F>, f: &[GradedClass<F>]) -> Result<Vec<u32>> {
    check_generators(vg, f)?;
    Ok(detect_in(&mut Products::new(vg, f)))
}

fn detect_in<F: Field>(prod: &mut Products<'_, F>) -> Vec<u32> {
    let vg = prod.vg;
    let n = vg.n();
    let ell = vg.arrangement().ell();
    let fc = vg.fil();
    let mut subsets: Vec<u32> = (1..1u32 << n).filter(|s| s.count_ones() as usize <= ell + 1).collect();
    subsets.sort_unstable_by_key(|&m| (m.count_ones(), m));
    let mut out = Vec::new();
    for s in subsets {
        if s.count_ones() < 2 || !fc.is_zero(&prod.get(s)) {
            continue;
        }
        if subset_indices(s).iter().all(|&i| !fc.is_zero(&prod.get(s & !(1 << i)))) {
            out.push(s);
        }
    }
    out
}

/// The relation `Σ_p λ_p f_{I∖i_p} = 0`, normalized so that `λ_1 = 1`.
pub fn circuit_relation<F: Field>(vg: &VgAlgebra<F>, f: &[GradedClass<F>], circuit: u32) -> Result<Vec<F::Elem>> {
    relation_in(&mut Products::new(vg, f), circuit)
}

fn relation_in<F: Field>(prod: &mut Products<'_, F>, circuit: u32) -> Result<Vec<F::Elem>> {
    let field = prod.vg.field();
    let idx = subset_indices(circuit);
    let k = idx.len();
    let cols: Vec<GradedClass<F>> = idx.iter().map(|&i| prod.get(circuit & !(1 << i))).collect();
    let width = cols[0].coords.len();
    let rows = (0..width).map(|j| cols.iter().map(|c| c.coords[j].clone()).collect()).collect();
    let ker = kernel(&Matrix::from_rows(field.clone(), k, rows));
    if ker.dim() != 1 {
        return Err(Error::Invariant(format!(
            "relation space of {:?} has dimension {}",
            idx.iter().map(|i| i + 1).collect::<Vec<_>>(),
            ker.dim()
        )));
    }
    let v = &ker.rows()[0];
    if v.iter().any(|x| field.is_zero(x)) {
        return Err(Error::Invariant("relation with a zero coefficient".into()));
    }
    let inv = field.inv(&v[0]).expect("nonzero");
    Ok(v.iter().map(|x| field.mul(x, &inv)).collect())
}

/// Reads each circuit's sign pattern off its relation; requires every
/// normalized relation to have entries `±1`.
pub fn check_circuits<F: Field>(vg: &VgAlgebra<F>, f: &[GradedClass<F>]) -> Result<RecoveredCircuits> {
    let field = vg.field();
    let n = vg.n();
    let mut reps = Vec::new();
    let mut certificate = Vec::new();
    check_generators(vg, f)?;
    let mut prod = Products::new(vg, f);
    for s in detect_in(&mut prod) {
        let lambda = relation_in(&mut prod, s)?;
        let idx = subset_indices(s);
        if !lambda.iter().all(|x| field.is_unit_sign(x)) {
            return Err(Error::NotGoodGenerators {
                circuit: idx.iter().map(|i| i + 1).collect(),
                relation: lambda.iter().map(|x| field.format(x)).collect(),
            });
        }
        let signs: Vec<i8> = lambda.iter().map(|x| if field.is_one(x) { 1 } else { -1 }).collect();
        let mut v = vec![Sign::Zero; n];
        for (&i, &s) in idx.iter().zip(&signs) {
            v[i] = if s > 0 { Sign::Plus } else { Sign::Minus };
        }
        reps.push(SignVector(v));
        certificate.push((idx, signs));
    }
    Ok(RecoveredCircuits { circuits: SignedCircuitSet::from_representatives(n, reps), scalars: None, certificate })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct RecoveryVerdict {
    pub scalars: Vec<String>,
    pub recovered: Vec<String>,
    pub expected: Vec<String>,
    /// `ε` with `signed_circuits(A).reorient(ε)` equal to the recovered set.
    pub reorientation: Option<Vec<bool>>,
    pub equivalence: Option<(Vec<usize>, Vec<bool>)>,
}

impl RecoveryVerdict {
    pub fn pass(&self) -> bool {
        self.reorientation.is_some() && self.equivalence.is_some()
    }
}

/// Recovers the signed circuits from generators `μ_i x̄_i` chosen among the
/// square-zero lines, and compares them with the arrangement's circuits.
pub fn recover_and_compare<F: Field>(vg: &VgAlgebra<F>, scalars: &[F::Elem]) -> Result<RecoveryVerdict> {
    vg.require_odd_char("signed-circuit recovery")?;
    if !vg.lattice().is_generic_codim2() {
        return Err(Error::NotCodim2Generic);
    }
    let lines = vg.sqzero()?;
    recover_and_compare_with(vg, &lines, scalars)
}

/// [`recover_and_compare`] with the square-zero lines already computed.
pub fn recover_and_compare_with<F: Field>(
    vg: &VgAlgebra<F>,
    lines: &[SqzeroLine<F>],
    scalars: &[F::Elem],
) -> Result<RecoveryVerdict> {
    vg.require_odd_char("signed-circuit recovery")?;
    if !vg.lattice().is_generic_codim2() {
        return Err(Error::NotCodim2Generic);
    }
    let field = vg.field();
    let n = vg.n();
    if scalars.len() != n || scalars.iter().any(|m| field.is_zero(m)) {
        return Err(Error::Usage(format!("expected {n} nonzero scalars")));
    }
    if lines.len() != n {
        return Err(Error::Invariant(format!("{} square-zero lines, expected {n}", lines.len())));
    }
    let fc = vg.fil();
    let mut gens = Vec::with_capacity(n);
    for (i, mu) in scalars.iter().enumerate() {
        let line = lines
            .iter()
            .find(|l| l.support == [i])
            .ok_or_else(|| Error::Invariant(format!("no square-zero line through x̄_{}", i + 1)))?;
        let mut u = fc.linear_class(&line.direction);
        u.coords.iter_mut().for_each(|x| *x = field.mul(x, mu));
        gens.push(u);
    }
    let mut rec = check_circuits(vg, &gens)?;
    rec.scalars = Some(scalars.iter().map(|m| field.format(m)).collect());
    let expected = signed_circuits(vg.arrangement());
    let equivalence = circuits_equivalent(&expected, &rec.circuits)
        .map(|Equivalence { permutation, reorientation }| (permutation, reorientation));
    Ok(RecoveryVerdict {
        scalars: rec.scalars.clone().unwrap_or_default(),
        recovered: rec.circuits.to_strings(),
        expected: expected.to_strings(),
        reorientation: reorientation_between(&expected, &rec.circuits),
        equivalence,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arrangement::Arrangement;
    use crate::exactla::{PrimeField, Rationals};

    fn braid() -> Arrangement {
        Arrangement::from_i64(3, &[&[1, 0, 0], &[0, 1, 0], &[0, 0, 1], &[1, -1, 0], &[1, 0, -1], &[0, 1, -1]]).unwrap()
    }

    fn xbars<F: Field>(vg: &VgAlgebra<F>) -> Vec<GradedClass<F>> {
        (0..vg.n()).map(|i| vg.fil().xbar(i)).collect()
    }

    #[test]
    fn braid_circuits_from_products() {
        let vg = VgAlgebra::new(&braid(), Rationals, false).unwrap();
        let found = detect_circuits_from_products(&vg, &xbars(&vg)).unwrap();
        assert_eq!(found, signed_circuits(&braid()).supports());
        let rec = check_circuits(&vg, &xbars(&vg)).unwrap();
        assert_eq!(rec.circuits, signed_circuits(&braid()));
    }

    #[test]
    fn pencil_relation_matches_dependency() {
        let a = Arrangement::from_i64(2, &[&[1, 0], &[0, 1], &[1, 1]]).unwrap();
        let vg = VgAlgebra::new(&a, Rationals, false).unwrap();
        let q = Rationals;
        let l = circuit_relation(&vg, &xbars(&vg), 0b111).unwrap();
        assert_eq!(l, vec![q.one(), q.one(), q.from_i64(-1)]);
    }

    #[test]
    fn rescaling_breaks_goodness() {
        let a = Arrangement::from_i64(2, &[&[1, 0], &[0, 1], &[1, 1]]).unwrap();
        let vg = VgAlgebra::new(&a, Rationals, false).unwrap();
        let q = Rationals;
        let mut f = xbars(&vg);
        f[0].coords.iter_mut().for_each(|x| *x = q.mul(x, &q.from_i64(3)));
        assert_eq!(detect_circuits_from_products(&vg, &f).unwrap(), vec![0b111]);
        let l = circuit_relation(&vg, &f, 0b111).unwrap();
        // λ scales by μ of the deleted set: (μ_2μ_3, μ_1μ_3, μ_1μ_2)⁻¹ pattern
        assert_eq!(l, vec![q.one(), q.parse("1/3").unwrap(), q.parse("-1/3").unwrap()]);
        assert!(matches!(check_circuits(&vg, &f), Err(Error::NotGoodGenerators { .. })));
    }

    #[test]
    fn sign_rescaling_reorients() {
        let b = Arrangement::from_i64(3, &[&[1, 0, 0], &[0, 1, 0], &[0, 0, 1], &[1, 1, 1], &[1, 2, 3], &[1, -1, 2]])
            .unwrap();
        let vg = VgAlgebra::new(&b, PrimeField::new(3).unwrap(), false).unwrap();
        let f = vg.field();
        let mu = [1, -1, 1, -1, -1, 1].map(|s| f.from_i64(s));
        let v = recover_and_compare(&vg, &mu).unwrap();
        assert!(v.pass());
        let want = vec![false, true, false, true, true, false];
        let flipped: Vec<bool> = want.iter().map(|b| !b).collect();
        let got = v.reorientation.unwrap();
        // a global flip fixes every negation-closed set
        assert!(got == want || got == flipped);
    }

    #[test]
    fn spanning_is_required() {
        let b2 = Arrangement::from_i64(2, &[&[1, 0], &[0, 1]]).unwrap();
        let vg = VgAlgebra::new(&b2, Rationals, false).unwrap();
        let x = vg.fil().xbar(0);
        assert!(matches!(detect_circuits_from_products(&vg, &[x.clone(), x]), Err(Error::Domain(_))));
        assert!(detect_circuits_from_products(&vg, &xbars(&vg)).unwrap().is_empty());
    }
}
