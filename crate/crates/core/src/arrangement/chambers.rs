use std::collections::HashMap;

use num_rational::BigRational;
use num_traits::{One, Zero};

use super::feasibility::strictly_feasible;
use super::{Arrangement, Sign, SignVector};

/// Chambers of an arrangement in lexicographic sign-vector order (`+ < −`).
#[derive(Clone, Debug)]
pub struct ChamberSet {
    n: usize,
    signs: Vec<SignVector>,
    masks: Vec<u32>,
    index: HashMap<u32, usize>,
    witnesses: Vec<Vec<BigRational>>,
}

impl ChamberSet {
    pub fn len(&self) -> usize {
        self.signs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.signs.is_empty()
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn signs(&self) -> &[SignVector] {
        &self.signs
    }

    pub fn sign(&self, c: usize) -> &SignVector {
        &self.signs[c]
    }

    /// Minus-masks of the chambers (bit `i` set iff the chamber is on `H_i^−`).
    pub fn masks(&self) -> &[u32] {
        &self.masks
    }

    pub fn mask(&self, c: usize) -> u32 {
        self.masks[c]
    }

    pub fn witness(&self, c: usize) -> &[BigRational] {
        &self.witnesses[c]
    }

    pub fn position(&self, sv: &SignVector) -> Option<usize> {
        self.index.get(&sv.minus_mask()).copied().filter(|_| sv.is_chamber())
    }

    pub fn position_of_mask(&self, mask: u32) -> Option<usize> {
        self.index.get(&mask).copied()
    }

    /// Index of the opposite chamber `−C`.
    pub fn antipode(&self, c: usize) -> usize {
        let full = if self.n == 32 { u32::MAX } else { (1u32 << self.n) - 1 };
        self.index[&(self.masks[c] ^ full)]
    }

    pub fn sep(&self, c: usize, d: usize) -> Vec<usize> {
        let x = self.masks[c] ^ self.masks[d];
        (0..self.n).filter(|&i| x >> i & 1 == 1).collect()
    }

    pub fn sep_count(&self, c: usize, d: usize) -> usize {
        (self.masks[c] ^ self.masks[d]).count_ones() as usize
    }
}

/// Enumerates chambers by inserting hyperplanes one at a time.
///
/// A chamber of the partial arrangement lies on one side of the new
/// hyperplane by its witness; only the other side needs a feasibility test.
pub fn chambers(a: &Arrangement) -> ChamberSet {
    let n = a.n();
    let ell = a.ell();
    let mut cells: Vec<(Vec<Sign>, Vec<BigRational>)> = vec![(Vec::new(), vec![BigRational::zero(); ell])];
    for i in 0..n {
        let mut next = Vec::with_capacity(cells.len() * 2);
        for (signs, w) in cells {
            let value = a.eval(i, &w);
            let known = Sign::of(&value);
            for side in [Sign::Plus, Sign::Minus] {
                let mut s = signs.clone();
                s.push(side);
                if side == known {
                    next.push((s, w.clone()));
                } else if let Some(p) = side_witness(a, &s) {
                    next.push((s, p));
                }
            }
        }
        cells = next;
    }
    let mut list: Vec<(SignVector, Vec<BigRational>)> = cells.into_iter().map(|(s, w)| (SignVector(s), w)).collect();
    list.sort_by(|x, y| x.0.cmp(&y.0));
    let signs: Vec<SignVector> = list.iter().map(|(s, _)| s.clone()).collect();
    let masks: Vec<u32> = signs.iter().map(SignVector::minus_mask).collect();
    let index = masks.iter().enumerate().map(|(k, &m)| (m, k)).collect();
    let witnesses = list.into_iter().map(|(_, w)| w).collect();
    ChamberSet { n, signs, masks, index, witnesses }
}

fn side_witness(a: &Arrangement, signs: &[Sign]) -> Option<Vec<BigRational>> {
    let constraints: Vec<Vec<BigRational>> = signs
        .iter()
        .enumerate()
        .map(|(j, s)| {
            let f = if *s == Sign::Plus { BigRational::one() } else { -BigRational::one() };
            a.normal(j).iter().map(|x| x * &f).collect()
        })
        .collect();
    strictly_feasible(a.ell(), &constraints)
}
