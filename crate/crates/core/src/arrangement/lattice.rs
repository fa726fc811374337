use std::collections::{BTreeMap, HashMap, HashSet};

use super::Arrangement;
use crate::exactla::{Matrix, Rationals, Subspace};

/// A flat, recorded by the hyperplanes containing it.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Flat {
    /// Bitmask of `A_X = {H_i ⊇ X}`.
    pub hyperplanes: u32,
    pub rank: usize,
}

impl Flat {
    pub fn members(&self) -> Vec<usize> {
        (0..32).filter(|&i| self.hyperplanes >> i & 1 == 1).collect()
    }

    pub fn size(&self) -> usize {
        self.hyperplanes.count_ones() as usize
    }
}

/// The intersection lattice with Möbius values.
#[derive(Clone, Debug)]
pub struct Lattice {
    ell: usize,
    n: usize,
    /// Flats sorted by rank, then by mask.
    flats: Vec<Flat>,
    mobius: Vec<i64>,
}

impl Lattice {
    pub fn new(a: &Arrangement) -> Lattice {
        let n = a.n();
        let closure = |mask: u32| -> (u32, usize) {
            let rows: Vec<_> = (0..n).filter(|&i| mask >> i & 1 == 1).map(|i| a.normal(i).to_vec()).collect();
            let span = Subspace::span(Rationals, a.ell(), rows);
            let closed = (0..n).filter(|&j| span.contains(a.normal(j))).fold(0u32, |m, j| m | 1 << j);
            (closed, span.dim())
        };
        let mut by_rank: Vec<Vec<u32>> = vec![vec![0]];
        loop {
            let mut next: Vec<u32> = Vec::new();
            let mut seen = HashSet::new();
            for &f in by_rank.last().expect("nonempty") {
                for j in (0..n).filter(|&j| f >> j & 1 == 0) {
                    let (c, _) = closure(f | 1 << j);
                    if seen.insert(c) {
                        next.push(c);
                    }
                }
            }
            if next.is_empty() {
                break;
            }
            next.sort_unstable();
            by_rank.push(next);
        }
        let flats: Vec<Flat> = by_rank
            .iter()
            .enumerate()
            .flat_map(|(r, fs)| fs.iter().map(move |&m| Flat { hyperplanes: m, rank: r }))
            .collect();
        let mut mobius = Vec::with_capacity(flats.len());
        for (k, x) in flats.iter().enumerate() {
            if x.rank == 0 {
                mobius.push(1);
                continue;
            }
            let below: i64 = flats[..k]
                .iter()
                .zip(&mobius)
                .filter(|(y, _)| y.rank < x.rank && y.hyperplanes & !x.hyperplanes == 0)
                .map(|(_, m)| *m)
                .sum();
            mobius.push(-below);
        }
        Lattice { ell: a.ell(), n, flats, mobius }
    }

    pub fn flats(&self) -> &[Flat] {
        &self.flats
    }

    pub fn mobius(&self) -> &[i64] {
        &self.mobius
    }

    pub fn rank(&self) -> usize {
        self.flats.last().map_or(0, |f| f.rank)
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn flats_of_rank(&self, r: usize) -> impl Iterator<Item = &Flat> {
        self.flats.iter().filter(move |f| f.rank == r)
    }

    /// Coefficients of `χ(A, t) = Σ μ(X) t^{dim X}`, index = power of `t`.
    pub fn char_poly(&self) -> Vec<i64> {
        let mut c = vec![0i64; self.ell + 1];
        for (x, m) in self.flats.iter().zip(&self.mobius) {
            c[self.ell - x.rank] += m;
        }
        c
    }

    /// `b_k = (−1)^k [t^{ℓ−k}] χ(A, t)` for `k = 0..=ℓ`.
    pub fn betti(&self) -> Vec<u64> {
        let c = self.char_poly();
        (0..=self.ell)
            .map(|k| {
                let v = c[self.ell - k] * if k % 2 == 0 { 1 } else { -1 };
                u64::try_from(v).expect("Betti numbers are nonnegative")
            })
            .collect()
    }

    /// Region count `Σ b_k = (−1)^ℓ χ(A, −1)`.
    pub fn zaslavsky_count(&self) -> u64 {
        self.betti().iter().sum()
    }

    pub fn codim2_flats(&self) -> Vec<&Flat> {
        self.flats_of_rank(2).collect()
    }

    pub fn is_generic_codim2(&self) -> bool {
        self.flats_of_rank(2).all(|f| f.size() == 2)
    }
}

/// Renders a coefficient vector (index = power) like `t^3 - 6t^2 + 11t - 6`.
pub fn format_poly(c: &[i64]) -> String {
    let mut out = String::new();
    for (p, &v) in c.iter().enumerate().rev() {
        if v == 0 {
            continue;
        }
        let mag = v.unsigned_abs();
        if out.is_empty() {
            if v < 0 {
                out.push('-');
            }
        } else {
            out.push_str(if v < 0 { " - " } else { " + " });
        }
        let coeff = if mag == 1 && p > 0 { String::new() } else { mag.to_string() };
        out.push_str(&coeff);
        match p {
            0 => {}
            1 => out.push('t'),
            _ => out.push_str(&format!("t^{p}")),
        }
    }
    if out.is_empty() {
        out.push('0');
    }
    out
}

/// Expands `Π (t − r)` times `t^extra`, as coefficients indexed by power.
pub fn poly_from_roots(roots: &[i64], extra: usize) -> Vec<i64> {
    let mut c = vec![1i64];
    for &r in roots {
        let mut next = vec![0i64; c.len() + 1];
        for (p, &v) in c.iter().enumerate() {
            next[p + 1] += v;
            next[p] -= r * v;
        }
        c = next;
    }
    let mut out = vec![0i64; extra];
    out.extend(c);
    out
}

/// Permutation `π` of hyperplane indices with `π(L(a)) = L(b)`, if any.
pub fn lattice_isomorphism(a: &Lattice, b: &Lattice) -> Option<Vec<usize>> {
    if a.n != b.n || a.ell != b.ell || a.flats.len() != b.flats.len() {
        return None;
    }
    let n = a.n;
    let profile = |l: &Lattice, i: usize| -> Vec<(usize, usize)> {
        let mut p: Vec<(usize, usize)> =
            l.flats.iter().filter(|f| f.hyperplanes >> i & 1 == 1).map(|f| (f.rank, f.size())).collect();
        p.sort_unstable();
        p
    };
    let pa: Vec<_> = (0..n).map(|i| profile(a, i)).collect();
    let pb: Vec<_> = (0..n).map(|i| profile(b, i)).collect();
    let mut ha: BTreeMap<u32, usize> = BTreeMap::new();
    for f in &a.flats {
        ha.insert(f.hyperplanes, f.rank);
    }
    let hb: HashMap<u32, usize> = b.flats.iter().map(|f| (f.hyperplanes, f.rank)).collect();
    let line = |l: &Lattice, i: usize, j: usize| -> u32 {
        l.flats_of_rank(2)
            .find(|f| f.hyperplanes >> i & 1 == 1 && f.hyperplanes >> j & 1 == 1)
            .map_or(0, |f| f.hyperplanes)
    };
    let la: Vec<Vec<u32>> = (0..n).map(|i| (0..n).map(|j| if i == j { 0 } else { line(a, i, j) }).collect()).collect();
    let lb: Vec<Vec<u32>> = (0..n).map(|i| (0..n).map(|j| if i == j { 0 } else { line(b, i, j) }).collect()).collect();

    struct Search<'s> {
        n: usize,
        pa: &'s [Vec<(usize, usize)>],
        pb: &'s [Vec<(usize, usize)>],
        la: &'s [Vec<u32>],
        lb: &'s [Vec<u32>],
        ha: &'s BTreeMap<u32, usize>,
        hb: &'s HashMap<u32, usize>,
        pi: Vec<usize>,
        used: Vec<bool>,
    }
    impl Search<'_> {
        fn image(&self, mask: u32) -> u32 {
            (0..self.n).filter(|&i| mask >> i & 1 == 1).fold(0, |m, i| m | 1 << self.pi[i])
        }
        fn go(&mut self, i: usize) -> bool {
            if i == self.n {
                return self.ha.iter().all(|(&m, &r)| self.hb.get(&self.image(m)) == Some(&r));
            }
            for c in 0..self.n {
                if self.used[c] || self.pa[i] != self.pb[c] {
                    continue;
                }
                // lines through i and an earlier element must correspond
                let ok = (0..i).all(|j| {
                    let (x, y) = (self.la[i][j], self.lb[c][self.pi[j]]);
                    x.count_ones() == y.count_ones() && (0..i).all(|k| (x >> k & 1 == 1) == (y >> self.pi[k] & 1 == 1))
                });
                if !ok {
                    continue;
                }
                self.pi[i] = c;
                self.used[c] = true;
                if self.go(i + 1) {
                    return true;
                }
                self.used[c] = false;
            }
            false
        }
    }
    let mut s =
        Search { n, pa: &pa, pb: &pb, la: &la, lb: &lb, ha: &ha, hb: &hb, pi: vec![0; n], used: vec![false; n] };
    s.go(0).then_some(s.pi)
}

/// Rank of the normals indexed by `mask`.
pub(crate) fn subset_rank(a: &Arrangement, mask: u32) -> usize {
    let rows: Vec<_> = (0..a.n()).filter(|&i| mask >> i & 1 == 1).map(|i| a.normal(i).to_vec()).collect();
    Matrix::from_rows(Rationals, a.ell(), rows).rank()
}
