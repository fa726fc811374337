use std::collections::{BTreeMap, BTreeSet};

use crate::arrangement::{Arrangement, Sign, SignVector};
use crate::exactla::{kernel, Matrix, Rationals};

/// Signed circuits: sign vectors of minimal linear dependencies, closed under
/// negation.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SignedCircuitSet {
    n: usize,
    circuits: BTreeSet<SignVector>,
}

impl SignedCircuitSet {
    /// Builds the set from one representative per support; negatives are added.
    pub fn from_representatives(n: usize, reps: impl IntoIterator<Item = SignVector>) -> Self {
        let mut circuits = BTreeSet::new();
        for c in reps {
            assert_eq!(c.len(), n);
            circuits.insert(c.negate());
            circuits.insert(c);
        }
        SignedCircuitSet { n, circuits }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn len(&self) -> usize {
        self.circuits.len()
    }

    pub fn is_empty(&self) -> bool {
        self.circuits.is_empty()
    }

    pub fn iter(&self) -> impl Iterator<Item = &SignVector> {
        self.circuits.iter()
    }

    pub fn contains(&self, c: &SignVector) -> bool {
        self.circuits.contains(c)
    }

    /// Supports as bitmasks, sorted by size then value.
    pub fn supports(&self) -> Vec<u32> {
        let mut s: Vec<u32> = self.circuits.iter().map(|c| c.support().iter().fold(0u32, |m, &i| m | 1 << i)).collect();
        s.sort_unstable_by_key(|&m| (m.count_ones(), m));
        s.dedup();
        s
    }

    /// Representative with `+` at the first support element.
    pub fn representatives(&self) -> Vec<SignVector> {
        self.circuits.iter().filter(|c| c.0.iter().find(|&&s| s != Sign::Zero) == Some(&Sign::Plus)).cloned().collect()
    }

    /// Flips entry `i` of every circuit where `flip[i]`.
    pub fn reorient(&self, flip: &[bool]) -> Self {
        let circuits = self
            .circuits
            .iter()
            .map(|c| SignVector(c.0.iter().zip(flip).map(|(&s, &f)| if f { s.flip() } else { s }).collect()))
            .collect();
        SignedCircuitSet { n: self.n, circuits }
    }

    /// Image under `i ↦ perm[i]`.
    pub fn permute(&self, perm: &[usize]) -> Self {
        let circuits = self
            .circuits
            .iter()
            .map(|c| {
                let mut v = vec![Sign::Zero; self.n];
                for (i, &s) in c.0.iter().enumerate() {
                    v[perm[i]] = s;
                }
                SignVector(v)
            })
            .collect();
        SignedCircuitSet { n: self.n, circuits }
    }

    pub fn to_strings(&self) -> Vec<String> {
        self.circuits.iter().map(|c| c.to_string()).collect()
    }
}

/// Signed circuits of the normals `α_1, …, α_n`.
pub fn signed_circuits(a: &Arrangement) -> SignedCircuitSet {
    let n = a.n();
    let mut subsets: Vec<u32> = (1..1u32 << n).collect();
    subsets.sort_unstable_by_key(|&m| (m.count_ones(), m));
    let mut found: Vec<u32> = Vec::new();
    let mut reps = Vec::new();
    for s in subsets {
        if s.count_ones() as usize > a.ell() + 1 {
            break;
        }
        if found.iter().any(|&c| c & !s == 0) {
            continue;
        }
        let idx: Vec<usize> = (0..n).filter(|&i| s >> i & 1 == 1).collect();
        // columns α_i, i ∈ S
        let cols = Matrix::from_rows(
            Rationals,
            idx.len(),
            (0..a.ell()).map(|r| idx.iter().map(|&i| a.normal(i)[r].clone()).collect()).collect(),
        );
        let k = kernel(&cols);
        if k.dim() == 0 {
            continue;
        }
        debug_assert_eq!(k.dim(), 1);
        let lambda = &k.rows()[0];
        let mut v = vec![Sign::Zero; n];
        for (t, &i) in idx.iter().enumerate() {
            v[i] = Sign::of(&lambda[t]);
            debug_assert_ne!(v[i], Sign::Zero);
        }
        found.push(s);
        reps.push(SignVector(v));
    }
    SignedCircuitSet::from_representatives(n, reps)
}

/// An equivalence `(π, ε)` with `ε · π(c1) = c2`: `π` is a permutation of the
/// ground set and `ε[j]` reorients element `j` of the target.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Equivalence {
    pub permutation: Vec<usize>,
    pub reorientation: Vec<bool>,
}

/// Searches permutations compatible with the support hypergraph, resolving the
/// reorientation as a parity system on each branch.
pub fn circuits_equivalent(c1: &SignedCircuitSet, c2: &SignedCircuitSet) -> Option<Equivalence> {
    if c1.n != c2.n || c1.len() != c2.len() {
        return None;
    }
    let n = c1.n;
    let s1 = c1.supports();
    let s2 = c2.supports();
    let print = |s: &[u32], i: usize| -> Vec<u32> {
        let mut p: Vec<u32> = s.iter().filter(|&&m| m >> i & 1 == 1).map(|m| m.count_ones()).collect();
        p.sort_unstable();
        p
    };
    let f1: Vec<_> = (0..n).map(|i| print(&s1, i)).collect();
    let f2: Vec<_> = (0..n).map(|i| print(&s2, i)).collect();
    let rep = |c: &SignedCircuitSet| -> BTreeMap<u32, SignVector> {
        c.representatives().into_iter().map(|v| (v.support().iter().fold(0u32, |m, &i| m | 1 << i), v)).collect()
    };
    let r1 = rep(c1);
    let r2 = rep(c2);
    let set2: BTreeSet<u32> = s2.iter().copied().collect();

    struct St<'a> {
        n: usize,
        f1: &'a [Vec<u32>],
        f2: &'a [Vec<u32>],
        s1: &'a [u32],
        set2: &'a BTreeSet<u32>,
        r1: &'a BTreeMap<u32, SignVector>,
        r2: &'a BTreeMap<u32, SignVector>,
        pi: Vec<usize>,
        used: Vec<bool>,
    }
    impl St<'_> {
        fn image(&self, m: u32) -> u32 {
            (0..self.n).filter(|&i| m >> i & 1 == 1).fold(0, |acc, i| acc | 1 << self.pi[i])
        }
        /// Solves `ε` over GF(2) from the supports fully inside `0..k`.
        fn parity(&self, k: usize) -> Option<Vec<bool>> {
            let lim: u32 = if k >= 32 { u32::MAX } else { (1u32 << k) - 1 };
            let mut uf = ParityUf::new(self.n);
            for &s in self.s1 {
                if s & !lim != 0 {
                    continue;
                }
                let t = self.image(s);
                if !self.set2.contains(&t) {
                    return None;
                }
                let a = &self.r1[&s];
                let b = &self.r2[&t];
                // ε_{π(i)} σ_i τ_{π(i)} is constant over the support
                let rel: Vec<(usize, bool)> =
                    a.support().iter().map(|&i| (self.pi[i], a.0[i] != b.0[self.pi[i]])).collect();
                for w in rel.windows(2) {
                    if !uf.union(w[0].0, w[1].0, w[0].1 ^ w[1].1) {
                        return None;
                    }
                }
            }
            Some(uf.assignment())
        }
        fn go(&mut self, i: usize) -> Option<Vec<bool>> {
            if i == self.n {
                return self.parity(self.n);
            }
            for c in 0..self.n {
                if self.used[c] || self.f1[i] != self.f2[c] {
                    continue;
                }
                self.pi[i] = c;
                self.used[c] = true;
                if self.parity(i + 1).is_some() {
                    if let Some(e) = self.go(i + 1) {
                        return Some(e);
                    }
                }
                self.used[c] = false;
            }
            None
        }
    }
    let mut st =
        St { n, f1: &f1, f2: &f2, s1: &s1, set2: &set2, r1: &r1, r2: &r2, pi: vec![0; n], used: vec![false; n] };
    let eps = st.go(0)?;
    let eq = Equivalence { permutation: st.pi, reorientation: eps };
    debug_assert_eq!(c1.permute(&eq.permutation).reorient(&eq.reorientation), *c2);
    Some(eq)
}

/// `ε` with `c1.reorient(ε) == c2` and the identity permutation, if any.
pub fn reorientation_between(c1: &SignedCircuitSet, c2: &SignedCircuitSet) -> Option<Vec<bool>> {
    if c1.n != c2.n || c1.supports() != c2.supports() {
        return None;
    }
    let mut uf = ParityUf::new(c1.n);
    let r2: BTreeMap<Vec<usize>, SignVector> = c2.representatives().into_iter().map(|v| (v.support(), v)).collect();
    for a in c1.representatives() {
        let b = &r2[&a.support()];
        let rel: Vec<(usize, bool)> = a.support().into_iter().map(|i| (i, a.0[i] != b.0[i])).collect();
        for w in rel.windows(2) {
            if !uf.union(w[0].0, w[1].0, w[0].1 ^ w[1].1) {
                return None;
            }
        }
    }
    let eps = uf.assignment();
    (c1.reorient(&eps) == *c2).then_some(eps)
}

/// Union–find carrying the parity of each element relative to its root.
struct ParityUf {
    parent: Vec<usize>,
    parity: Vec<bool>,
}

impl ParityUf {
    fn new(n: usize) -> Self {
        ParityUf { parent: (0..n).collect(), parity: vec![false; n] }
    }

    fn find(&mut self, x: usize) -> (usize, bool) {
        if self.parent[x] == x {
            return (x, false);
        }
        let (r, p) = self.find(self.parent[x]);
        self.parent[x] = r;
        self.parity[x] ^= p;
        (r, self.parity[x])
    }

    /// Imposes `x ⊕ y = d`; `false` on contradiction.
    fn union(&mut self, x: usize, y: usize, d: bool) -> bool {
        let (rx, px) = self.find(x);
        let (ry, py) = self.find(y);
        if rx == ry {
            return px ^ py == d;
        }
        self.parent[rx] = ry;
        self.parity[rx] = px ^ py ^ d;
        true
    }

    /// Roots get `false`; everything else follows from its parity.
    fn assignment(&mut self) -> Vec<bool> {
        (0..self.parent.len()).map(|x| self.find(x).1).collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn braid() -> Arrangement {
        Arrangement::from_i64(3, &[&[1, 0, 0], &[0, 1, 0], &[0, 0, 1], &[1, -1, 0], &[1, 0, -1], &[0, 1, -1]]).unwrap()
    }

    #[test]
    fn pencil_circuit() {
        let a = Arrangement::from_i64(2, &[&[1, 0], &[0, 1], &[1, 1]]).unwrap();
        let c = signed_circuits(&a);
        assert_eq!(c.to_strings(), vec!["++-", "--+"]);
    }

    #[test]
    fn independent_normals_have_no_circuits() {
        let a = Arrangement::from_i64(2, &[&[1, 0], &[0, 1]]).unwrap();
        assert!(signed_circuits(&a).is_empty());
    }

    #[test]
    fn braid_supports() {
        let s = signed_circuits(&braid()).supports();
        assert_eq!(s.len(), 7);
        assert_eq!(s.iter().filter(|m| m.count_ones() == 3).count(), 4);
        assert_eq!(s.iter().filter(|m| m.count_ones() == 4).count(), 3);
    }

    #[test]
    fn equivalence_finds_reorientations() {
        let c = signed_circuits(&braid());
        let e = circuits_equivalent(&c, &c).unwrap();
        assert_eq!(c.permute(&e.permutation).reorient(&e.reorientation), c);
        let mut flip = vec![false; 6];
        flip[0] = true;
        let d = c.reorient(&flip);
        let e = circuits_equivalent(&c, &d).unwrap();
        assert_eq!(c.permute(&e.permutation).reorient(&e.reorientation), d);
        let perm = [2, 0, 1, 5, 3, 4];
        let d = c.permute(&perm).reorient(&[true, false, true, false, false, true]);
        assert!(circuits_equivalent(&c, &d).is_some());
    }

    #[test]
    fn different_matroids_are_not_equivalent() {
        let a = signed_circuits(&braid());
        let b = Arrangement::from_i64(3, &[&[1, 0, 0], &[0, 1, 0], &[0, 0, 1], &[1, 1, 1], &[1, 2, 3], &[1, -1, 2]])
            .unwrap();
        assert!(circuits_equivalent(&a, &signed_circuits(&b)).is_none());
    }
}
