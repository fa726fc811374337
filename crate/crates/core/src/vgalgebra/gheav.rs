use std::cmp::Ordering;
use std::collections::{BTreeMap, HashMap};

use num_rational::BigRational;
use num_traits::{Signed, Zero};

use super::{Side, VgAlgebra, VgElement};
use crate::arrangement::{Flat, Sign};
use crate::error::Result;
use crate::exactla::Field;

/// An idempotent of `Fil^1` other than `0` and `1`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct GenHeaviside<F: Field> {
    /// Value on each chamber.
    pub indicator: Vec<bool>,
    /// Coordinates `c_i` of the class in `grVG^1`, i.e. the jumps `ρ_{H_i}`.
    pub class: Vec<F::Elem>,
    pub support: Vec<usize>,
}

impl<F: Field> GenHeaviside<F> {
    pub fn element(&self, vg: &VgAlgebra<F>) -> VgElement<F> {
        vg.from_bools(&self.indicator)
    }

    pub fn is_heaviside(&self) -> bool {
        self.support.len() == 1
    }

    /// First nonzero class coordinate equals one.
    pub fn is_plus(&self, f: &F) -> bool {
        self.class.iter().find(|c| !f.is_zero(c)).is_some_and(|c| f.is_one(c))
    }

    fn key(&self, f: &F) -> (usize, Vec<usize>, bool, Vec<bool>) {
        (self.support.len(), self.support.clone(), !self.is_plus(f), self.indicator.clone())
    }

    /// `c_0` in `y = c_0 + Σ c_i x_i^+`.
    pub fn constant(&self, vg: &VgAlgebra<F>) -> F::Elem {
        let f = vg.field();
        let m = vg.chambers().mask(0);
        let at0 = if self.indicator[0] { f.one() } else { f.zero() };
        (0..self.class.len()).filter(|i| m >> i & 1 == 0).fold(at0, |acc, i| f.sub(&acc, &self.class[i]))
    }

    /// E.g. `x1+x2+x3-1`.
    pub fn formula(&self, vg: &VgAlgebra<F>) -> String {
        let f = vg.field();
        let mut s = super::format_linear(f, &self.class);
        let c0 = self.constant(vg);
        if !f.is_zero(&c0) {
            let t = f.format(&c0);
            if !t.starts_with('-') {
                s.push('+');
            }
            s.push_str(&t);
        }
        s
    }

    /// `1 − y`.
    pub fn complement(&self, f: &F) -> Self {
        GenHeaviside {
            indicator: self.indicator.iter().map(|b| !b).collect(),
            class: self.class.iter().map(|c| f.neg(c)).collect(),
            support: self.support.clone(),
        }
    }
}

fn sort_gheav<F: Field>(f: &F, v: &mut Vec<GenHeaviside<F>>) {
    v.sort_by_key(|a| a.key(f));
    v.dedup_by(|a, b| a.indicator == b.indicator);
}

/// Residues of small integers in the field, cached.
struct Residues<F: Field> {
    field: F,
    cache: HashMap<i64, F::Elem>,
}

impl<F: Field> Residues<F> {
    fn get(&mut self, v: i64) -> F::Elem {
        let f = &self.field;
        self.cache.entry(v).or_insert_with(|| f.from_i64(v)).clone()
    }
}

/// Checks a set of field values lies in `{t, t+1}`; returns the admissible `t`.
fn affine_pair<F: Field>(f: &F, vals: &[F::Elem]) -> Vec<F::Elem> {
    let mut distinct: Vec<F::Elem> = Vec::new();
    for v in vals {
        if !distinct.contains(v) {
            distinct.push(v.clone());
            if distinct.len() > 2 {
                return Vec::new();
            }
        }
    }
    match distinct.as_slice() {
        [a] => vec![a.clone(), f.sub(a, &f.one())],
        [a, b] => {
            let mut out = Vec::new();
            if f.add(a, &f.one()) == *b {
                out.push(a.clone());
            }
            if f.add(b, &f.one()) == *a {
                out.push(b.clone());
            }
            out
        }
        _ => Vec::new(),
    }
}

impl<F: Field> VgAlgebra<F> {
    /// All idempotents of `Fil^1` other than `0, 1`, by searching jump vectors
    /// `c ∈ {−1, 0, 1}^n`: such an element is `t + Σ c_i x_i^+` with
    /// `c_i = ρ_{H_i}`.
    ///
    /// Hyperplanes are assigned in order; once `c_0..c_{d−1}` are fixed, two
    /// chambers agreeing on `H_d, …` already have their final difference, which
    /// must be `0` or `±1`.
    pub fn gheav_bruteforce(&self) -> Vec<GenHeaviside<F>> {
        let n = self.n();
        let f = self.field().clone();
        let masks = self.chambers().masks().to_vec();
        let mut res = Residues { field: f.clone(), cache: HashMap::new() };
        let mut out = Vec::new();
        let mut c = vec![0i64; n];
        let mut values = vec![0i64; masks.len()];
        self.jump_search(0, &masks, &mut c, &mut values, &mut res, &mut out);
        sort_gheav(&f, &mut out);
        out
    }

    fn jump_search(
        &self,
        d: usize,
        masks: &[u32],
        c: &mut Vec<i64>,
        values: &mut Vec<i64>,
        res: &mut Residues<F>,
        out: &mut Vec<GenHeaviside<F>>,
    ) {
        let n = c.len();
        if !self.groups_consistent(d, masks, values, res) {
            return;
        }
        if d == n {
            let f = res.field.clone();
            let vals: Vec<F::Elem> = values.iter().map(|&v| res.get(v)).collect();
            if vals.windows(2).all(|w| w[0] == w[1]) {
                return;
            }
            let class: Vec<F::Elem> = c.iter().map(|&x| res.get(x)).collect();
            let support: Vec<usize> = (0..n).filter(|&i| !f.is_zero(&class[i])).collect();
            for t in affine_pair(&f, &vals) {
                let indicator = vals.iter().map(|v| f.sub(v, &t) == f.one()).collect();
                out.push(GenHeaviside { indicator, class: class.clone(), support: support.clone() });
            }
            return;
        }
        for jump in [0i64, 1, -1] {
            c[d] = jump;
            if jump != 0 {
                for (v, &m) in values.iter_mut().zip(masks) {
                    if m >> d & 1 == 0 {
                        *v += jump;
                    }
                }
            }
            self.jump_search(d + 1, masks, c, values, res, out);
            if jump != 0 {
                for (v, &m) in values.iter_mut().zip(masks) {
                    if m >> d & 1 == 0 {
                        *v -= jump;
                    }
                }
            }
        }
        c[d] = 0;
    }

    fn groups_consistent(&self, d: usize, masks: &[u32], values: &[i64], res: &mut Residues<F>) -> bool {
        let f = res.field.clone();
        if f.characteristic() == 0 {
            let mut range: HashMap<u32, (i64, i64)> = HashMap::new();
            for (&m, &v) in masks.iter().zip(values) {
                let e = range.entry(m >> d).or_insert((v, v));
                e.0 = e.0.min(v);
                e.1 = e.1.max(v);
                if e.1 - e.0 > 1 {
                    return false;
                }
            }
            return true;
        }
        let mut groups: HashMap<u32, Vec<F::Elem>> = HashMap::new();
        for (&m, &v) in masks.iter().zip(values) {
            let r = res.get(v);
            let g = groups.entry(m >> d).or_default();
            if !g.contains(&r) {
                g.push(r);
            }
            if g.len() > 2 {
                return false;
            }
        }
        groups.values().all(|g| g.len() < 2 || !affine_pair(&f, g).is_empty())
    }

    /// The transversal plane model at a rank-2 flat `X`.
    pub fn local_model(&self, flat: &Flat) -> LocalModel {
        LocalModel::new(self, flat)
    }

    /// The function that is `0` on one sector around `X` and flips across
    /// exactly the walls in `s`, extended to `A` through the localization.
    /// Returns `(Alt^+, Alt^−)`, or `None` if the pattern is not an
    /// idempotent of `Fil^1`.
    pub fn alt_function(&self, flat: &Flat, s: u32) -> Option<(GenHeaviside<F>, GenHeaviside<F>)> {
        if s & !flat.hyperplanes != 0 || s.count_ones().is_multiple_of(2) {
            return None;
        }
        let model = self.local_model(flat);
        let sector_values = model.alternating(s)?;
        let lookup: HashMap<Vec<Sign>, bool> =
            model.sectors.iter().map(|sec| sec.signs.clone()).zip(sector_values).collect();
        let members = flat.members();
        let indicator: Vec<bool> = self
            .chambers()
            .signs()
            .iter()
            .map(|sv| lookup[&members.iter().map(|&j| sv.0[j]).collect::<Vec<_>>()])
            .collect();
        let y = self.from_bools(&indicator);
        let fc = self.fil();
        let class = fc.graded_class(&y, 1).ok()?;
        debug_assert!(self.in_fil1_by_rho(&y));
        let support = (0..self.n()).filter(|&i| !self.field().is_zero(&class.coords[i])).collect();
        let g = GenHeaviside { indicator, class: class.coords, support };
        let h = g.complement(self.field());
        Some(if g.is_plus(self.field()) { (g, h) } else { (h, g) })
    }

    /// Heaviside functions together with every `Alt^±` over rank-2 flats and
    /// odd subsets of their hyperplanes.
    pub fn gheav_structural(&self) -> Result<Vec<GenHeaviside<F>>> {
        self.require_odd_char("the structural gHeav enumeration")?;
        let f = self.field().clone();
        let mut out = Vec::new();
        for i in 0..self.n() {
            for side in [Side::Plus, Side::Minus] {
                let y = self.heaviside(i, side);
                let class = self.fil().graded_class(&y, 1)?.coords;
                out.push(GenHeaviside {
                    indicator: y.values.iter().map(|v| f.is_one(v)).collect(),
                    class,
                    support: vec![i],
                });
            }
        }
        for flat in self.lattice().codim2_flats() {
            let m = flat.hyperplanes;
            // odd subsets of size ≥ 3
            let mut s = m;
            while s != 0 {
                if s.count_ones() >= 3 && s.count_ones() % 2 == 1 {
                    if let Some((p, q)) = self.alt_function(flat, s) {
                        out.push(p);
                        out.push(q);
                    }
                }
                s = (s - 1) & m;
            }
        }
        sort_gheav(&f, &mut out);
        Ok(out)
    }
}

/// Cyclic sector structure of the hyperplanes through a rank-2 flat, read in
/// coordinates `(α_{j_1}, α_{j_2})` of two independent members.
#[derive(Clone, Debug)]
pub struct LocalModel {
    /// Members of `A_X`, increasing.
    pub members: Vec<usize>,
    /// 2D normal of each member.
    pub normals: Vec<[BigRational; 2]>,
    /// Sectors in counterclockwise order.
    pub sectors: Vec<Sector>,
}

#[derive(Clone, Debug)]
pub struct Sector {
    /// Signs on the members of `A_X` (in `members` order).
    pub signs: Vec<Sign>,
    /// Position in `members` of the wall crossed when entering the next sector.
    pub exit_wall: usize,
}

fn half(v: &[BigRational; 2]) -> u8 {
    // upper half plane including the positive x axis
    if v[1].is_positive() || (v[1].is_zero() && v[0].is_positive()) {
        0
    } else {
        1
    }
}

fn cross(a: &[BigRational; 2], b: &[BigRational; 2]) -> BigRational {
    &a[0] * &b[1] - &a[1] * &b[0]
}

fn angle_cmp(a: &[BigRational; 2], b: &[BigRational; 2]) -> Ordering {
    half(a).cmp(&half(b)).then_with(|| {
        let c = cross(a, b);
        if c.is_positive() {
            Ordering::Less
        } else if c.is_negative() {
            Ordering::Greater
        } else {
            Ordering::Equal
        }
    })
}

impl LocalModel {
    fn new<F: Field>(vg: &VgAlgebra<F>, flat: &Flat) -> LocalModel {
        let a = vg.arrangement();
        let members = flat.members();
        let j1 = members[0];
        let j2 = *members[1..]
            .iter()
            .find(|&&j| crate::arrangement::subset_rank(a, 1 << j1 | 1 << j) == 2)
            .expect("rank-2 flat");
        // α_j = u α_{j1} + v α_{j2}
        let (b1, b2) = (a.normal(j1), a.normal(j2));
        let ell = a.ell();
        let (p, q) = (0..ell)
            .flat_map(|p| (0..ell).map(move |q| (p, q)))
            .find(|&(p, q)| !(&b1[p] * &b2[q] - &b1[q] * &b2[p]).is_zero())
            .expect("independent normals");
        let det = &b1[p] * &b2[q] - &b1[q] * &b2[p];
        let normals: Vec<[BigRational; 2]> = members
            .iter()
            .map(|&j| {
                let c = a.normal(j);
                let u = (&c[p] * &b2[q] - &c[q] * &b2[p]) / &det;
                let v = (&b1[p] * &c[q] - &b1[q] * &c[p]) / &det;
                [u, v]
            })
            .collect();
        let mut rays: Vec<([BigRational; 2], usize)> = Vec::new();
        for (k, nv) in normals.iter().enumerate() {
            let d = [-nv[1].clone(), nv[0].clone()];
            let e = [nv[1].clone(), -nv[0].clone()];
            rays.push((d, k));
            rays.push((e, k));
        }
        rays.sort_by(|x, y| angle_cmp(&x.0, &y.0));
        let m = rays.len();
        let sectors = (0..m)
            .map(|k| {
                let (r0, _) = &rays[k];
                let (r1, wall) = &rays[(k + 1) % m];
                let sample = [&r0[0] + &r1[0], &r0[1] + &r1[1]];
                let signs = normals.iter().map(|nv| Sign::of(&(&nv[0] * &sample[0] + &nv[1] * &sample[1]))).collect();
                Sector { signs, exit_wall: *wall }
            })
            .collect();
        LocalModel { members, normals, sectors }
    }

    /// Values starting from `false` on sector 0 and flipping at walls in `s`.
    pub fn alternating(&self, s: u32) -> Option<Vec<bool>> {
        let mut vals = Vec::with_capacity(self.sectors.len());
        let mut cur = false;
        for sec in &self.sectors {
            vals.push(cur);
            if s >> self.members[sec.exit_wall] & 1 == 1 {
                cur = !cur;
            }
        }
        // back at sector 0 after a full turn
        (!cur).then_some(vals)
    }

    /// Angular sort is exact; a wall between two sectors is crossed exactly
    /// once in each direction around the cycle.
    pub fn is_valid(&self) -> bool {
        let m = self.members.len();
        let mut crossings: BTreeMap<usize, usize> = BTreeMap::new();
        for sec in &self.sectors {
            *crossings.entry(sec.exit_wall).or_default() += 1;
        }
        self.sectors.len() == 2 * m
            && crossings.values().all(|&c| c == 2)
            && self.sectors.iter().all(|s| s.signs.iter().all(|&x| x != Sign::Zero))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arrangement::Arrangement;
    use crate::exactla::{PrimeField, Rationals};

    fn pencil() -> Arrangement {
        Arrangement::from_i64(2, &[&[0, 1], &[2, -1], &[-2, -1]]).unwrap()
    }

    fn braid() -> Arrangement {
        Arrangement::from_i64(3, &[&[1, 0, 0], &[0, 1, 0], &[0, 0, 1], &[1, -1, 0], &[1, 0, -1], &[0, 1, -1]]).unwrap()
    }

    #[test]
    fn formula_evaluates_to_indicator() {
        let vg = VgAlgebra::new(&pencil(), Rationals, false).unwrap();
        for g in vg.gheav_bruteforce() {
            assert_eq!(vg.linear(&g.constant(&vg), &g.class), g.element(&vg));
        }
        let f3 = VgAlgebra::new(&braid(), PrimeField::new(3).unwrap(), false).unwrap();
        for g in f3.gheav_bruteforce() {
            assert_eq!(f3.linear(&g.constant(&f3), &g.class), g.element(&f3));
        }
    }

    #[test]
    fn pencil_has_eight() {
        let vg = VgAlgebra::new(&pencil(), Rationals, false).unwrap();
        let g = vg.gheav_bruteforce();
        assert_eq!(g.len(), 8);
        let q = Rationals;
        let yplus = g.iter().find(|h| h.support.len() == 3 && h.is_plus(&q)).unwrap();
        assert_eq!(yplus.class, vec![q.one(), q.one(), q.one()]);
        assert_eq!(vg.gheav_structural().unwrap(), g);
    }

    #[test]
    fn quadrants_have_only_heavisides() {
        let b2 = Arrangement::from_i64(2, &[&[1, 0], &[0, 1]]).unwrap();
        let vg = VgAlgebra::new(&b2, Rationals, false).unwrap();
        let g = vg.gheav_bruteforce();
        assert_eq!(g.len(), 4);
        assert!(g.iter().all(GenHeaviside::is_heaviside));
    }

    #[test]
    fn braid_has_twenty() {
        let vg = VgAlgebra::new(&braid(), Rationals, false).unwrap();
        let g = vg.gheav_bruteforce();
        assert_eq!(g.len(), 20);
        assert_eq!(g.iter().filter(|h| h.is_heaviside()).count(), 12);
        assert_eq!(vg.gheav_structural().unwrap(), g);
        let vg3 = VgAlgebra::new(&braid(), PrimeField::new(3).unwrap(), false).unwrap();
        assert_eq!(vg3.gheav_bruteforce().len(), 20);
    }

    #[test]
    fn singleton_alt_is_heaviside() {
        let vg = VgAlgebra::new(&braid(), Rationals, false).unwrap();
        let flat = vg.lattice().codim2_flats()[0].clone();
        let i = flat.members()[0];
        let (p, _) = vg.alt_function(&flat, 1 << i).unwrap();
        assert_eq!(p.element(&vg), vg.heaviside(i, Side::Plus));
        assert!(vg.alt_function(&flat, flat.hyperplanes & !(1 << i)).is_none() || flat.size() > 3);
    }

    #[test]
    fn local_models_are_cyclic() {
        let vg = VgAlgebra::new(&braid(), Rationals, false).unwrap();
        for flat in vg.lattice().codim2_flats() {
            assert!(vg.local_model(flat).is_valid());
        }
    }

    #[test]
    fn structural_needs_odd_characteristic() {
        let vg = VgAlgebra::new(&pencil(), PrimeField::new(2).unwrap(), true).unwrap();
        assert!(vg.gheav_structural().is_err());
        // over F_2 every element of Fil^1 is idempotent: 2^4 - 2
        assert_eq!(vg.gheav_bruteforce().len(), 14);
    }
}
