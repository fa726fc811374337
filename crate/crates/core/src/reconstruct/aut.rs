use std::collections::HashMap;

use num_bigint::BigUint;
use num_traits::{One, Zero};
use serde::Serialize;

use crate::exactla::Field;
use crate::omatroid::{graph_automorphism_order, tope_graph, Graph};
use crate::vgalgebra::{GenHeaviside, VgAlgebra};

/// Orders of the three groups acting on the chambers.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct AutReport {
    #[serde(serialize_with = "as_string")]
    pub graph: BigUint,
    #[serde(serialize_with = "as_string")]
    pub filtered: BigUint,
    #[serde(serialize_with = "as_string")]
    pub set: BigUint,
    /// Filtered automorphisms that also preserve tope-graph adjacency.
    #[serde(serialize_with = "as_string")]
    pub filtered_graph_preserving: BigUint,
    pub generic_codim2: bool,
}

fn as_string<S: serde::Serializer>(v: &BigUint, s: S) -> std::result::Result<S::Ok, S::Error> {
    s.serialize_str(&v.to_string())
}

impl AutReport {
    /// `Aut_graph ⊆ Aut_filt ⊆ Aut_set`, with equality of the first two in the
    /// codim-2 generic case.
    pub fn chain_holds(&self) -> bool {
        let divides = |a: &BigUint, b: &BigUint| !a.is_zero() && (b % a).is_zero();
        divides(&self.graph, &self.filtered)
            && divides(&self.filtered, &self.set)
            && self.filtered_graph_preserving == self.graph
            && (!self.generic_codim2 || self.graph == self.filtered)
    }
}

fn factorial(n: usize) -> BigUint {
    (1..=n).fold(BigUint::one(), |acc, k| acc * BigUint::from(k))
}

/// Counts tuples `(g_1, …, g_n)` of gHeav elements for which
/// `C ↦ (g_1(C), …, g_n(C))` is a bijection onto the chamber sign vectors;
/// each is one filtered automorphism `σ` with `x_i^+ ∘ σ = g_i`.
pub fn aut_groups<F: Field>(vg: &VgAlgebra<F>) -> AutReport {
    let gheav = vg.gheav_bruteforce();
    aut_groups_with(vg, &gheav)
}

pub fn aut_groups_with<F: Field>(vg: &VgAlgebra<F>, gheav: &[GenHeaviside<F>]) -> AutReport {
    let tope = tope_graph(vg.chambers());
    let mut search = TupleSearch {
        n: vg.n(),
        m: vg.dim(),
        // chamber masks use bit i for `−`; g_i(C) = 1 plays the role of `+`
        targets: vg.chambers().masks().to_vec(),
        values: gheav.iter().map(|g| g.indicator.iter().map(|&b| !b).collect()).collect(),
        prefix: vec![0; vg.dim()],
        tope: &tope,
        position: vg.chambers().masks().iter().enumerate().map(|(c, &m)| (m, c)).collect(),
        count: BigUint::zero(),
        preserving: BigUint::zero(),
    };
    search.run(0);
    AutReport {
        graph: graph_automorphism_order(&tope),
        filtered: search.count,
        set: factorial(vg.dim()),
        filtered_graph_preserving: search.preserving,
        generic_codim2: vg.lattice().is_generic_codim2(),
    }
}

struct TupleSearch<'a> {
    n: usize,
    m: usize,
    targets: Vec<u32>,
    values: Vec<Vec<bool>>,
    prefix: Vec<u32>,
    tope: &'a Graph,
    position: HashMap<u32, usize>,
    count: BigUint,
    preserving: BigUint,
}

impl TupleSearch<'_> {
    /// Prefix images must hit each prefix of a chamber sign vector exactly as
    /// often as the chambers do.
    fn consistent(&self, d: usize) -> bool {
        let lim = if d >= 32 { u32::MAX } else { (1u32 << d) - 1 };
        let mut want: HashMap<u32, i64> = HashMap::new();
        for &t in &self.targets {
            *want.entry(t & lim).or_default() += 1;
        }
        for &p in &self.prefix {
            match want.get_mut(&p) {
                Some(c) if *c > 0 => *c -= 1,
                _ => return false,
            }
        }
        true
    }

    fn run(&mut self, d: usize) {
        if d == self.n {
            self.count += 1u32;
            // σ(C) is the chamber with sign vector prefix[C]
            let sigma: Vec<usize> = self.prefix.iter().map(|p| self.position[p]).collect();
            if self.tope.edges().iter().all(|&(u, v)| self.tope.has_edge(sigma[u], sigma[v])) {
                self.preserving += 1u32;
            }
            return;
        }
        for k in 0..self.values.len() {
            for c in 0..self.m {
                if self.values[k][c] {
                    self.prefix[c] |= 1 << d;
                }
            }
            if self.consistent(d + 1) {
                self.run(d + 1);
            }
            for c in 0..self.m {
                self.prefix[c] &= !(1 << d);
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arrangement::Arrangement;
    use crate::exactla::Rationals;

    #[test]
    fn pencil_orders() {
        let a = Arrangement::from_i64(2, &[&[0, 1], &[2, -1], &[-2, -1]]).unwrap();
        let r = aut_groups(&VgAlgebra::new(&a, Rationals, false).unwrap());
        assert_eq!(r.graph, BigUint::from(12u32));
        assert_eq!(r.filtered, BigUint::from(48u32));
        assert_eq!(r.set, BigUint::from(720u32));
        assert!(r.chain_holds());
    }

    #[test]
    fn square_orders_agree() {
        let b2 = Arrangement::from_i64(2, &[&[1, 0], &[0, 1]]).unwrap();
        let r = aut_groups(&VgAlgebra::new(&b2, Rationals, false).unwrap());
        assert_eq!(r.graph, BigUint::from(8u32));
        assert_eq!(r.filtered, BigUint::from(8u32));
        assert!(r.chain_holds());
    }
}
