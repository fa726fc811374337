use std::collections::BTreeMap;

use num_bigint::BigUint;
use num_traits::One;

use super::Graph;

/// Joint color refinement of two graphs: degree, then distance profile, then
/// iterated neighbor-multiset refinement. Colors are comparable across the
/// two graphs.
fn refine(g: &[&Graph], dist: &[Vec<Vec<usize>>]) -> Vec<Vec<usize>> {
    let mut sigs: Vec<Vec<Vec<usize>>> = g
        .iter()
        .zip(dist)
        .map(|(g, d)| {
            (0..g.vertex_count())
                .map(|v| {
                    let mut p = d[v].clone();
                    p.sort_unstable();
                    let mut s = vec![g.degree(v)];
                    s.extend(p);
                    s
                })
                .collect()
        })
        .collect();
    let mut colors = relabel(&sigs);
    loop {
        let classes = count_classes(&colors);
        sigs = g
            .iter()
            .zip(&colors)
            .map(|(g, col)| {
                (0..g.vertex_count())
                    .map(|v| {
                        let mut nb: Vec<usize> = g.neighbors(v).iter().map(|&u| col[u]).collect();
                        nb.sort_unstable();
                        let mut s = vec![col[v]];
                        s.extend(nb);
                        s
                    })
                    .collect()
            })
            .collect();
        let next = relabel(&sigs);
        if count_classes(&next) == classes {
            return next;
        }
        colors = next;
    }
}

fn relabel(sigs: &[Vec<Vec<usize>>]) -> Vec<Vec<usize>> {
    let mut ids: BTreeMap<&Vec<usize>, usize> = BTreeMap::new();
    for s in sigs.iter().flatten() {
        let k = ids.len();
        ids.entry(s).or_insert(k);
    }
    let rank: BTreeMap<&Vec<usize>, usize> = ids.keys().enumerate().map(|(i, k)| (*k, i)).collect();
    sigs.iter().map(|g| g.iter().map(|s| rank[s]).collect()).collect()
}

fn count_classes(colors: &[Vec<usize>]) -> usize {
    let mut all: Vec<usize> = colors.iter().flatten().copied().collect();
    all.sort_unstable();
    all.dedup();
    all.len()
}

fn histogram(c: &[usize]) -> Vec<usize> {
    let mut h = c.to_vec();
    h.sort_unstable();
    h
}

struct Matcher<'a> {
    d1: &'a [Vec<usize>],
    d2: &'a [Vec<usize>],
    c1: &'a [usize],
    c2: &'a [usize],
    order: Vec<usize>,
    map: Vec<usize>,
    used: Vec<bool>,
}

impl<'a> Matcher<'a> {
    fn new(g1: &Graph, d1: &'a [Vec<usize>], d2: &'a [Vec<usize>], c1: &'a [usize], c2: &'a [usize]) -> Self {
        let n = g1.vertex_count();
        // rarest color first, then grow along edges
        let mut size = BTreeMap::new();
        for &c in c1 {
            *size.entry(c).or_insert(0usize) += 1;
        }
        let mut order = Vec::with_capacity(n);
        let mut placed = vec![false; n];
        while order.len() < n {
            let start = (0..n).filter(|&v| !placed[v]).min_by_key(|&v| (size[&c1[v]], v)).expect("unplaced vertex");
            let mut queue = std::collections::VecDeque::from([start]);
            placed[start] = true;
            while let Some(u) = queue.pop_front() {
                order.push(u);
                for &w in g1.neighbors(u) {
                    if !placed[w] {
                        placed[w] = true;
                        queue.push_back(w);
                    }
                }
            }
        }
        Matcher { d1, d2, c1, c2, order, map: vec![usize::MAX; n], used: vec![false; n] }
    }

    fn candidate_ok(&self, depth: usize, v: usize, u: usize) -> bool {
        !self.used[u]
            && self.c1[v] == self.c2[u]
            && self.order[..depth].iter().all(|&w| self.d1[v][w] == self.d2[u][self.map[w]])
    }

    /// Visits complete isomorphisms; `visit` returns `false` to stop.
    fn search(&mut self, depth: usize, visit: &mut dyn FnMut(&[usize]) -> bool) -> bool {
        if depth == self.order.len() {
            return visit(&self.map);
        }
        let v = self.order[depth];
        if self.map[v] != usize::MAX {
            return self.search(depth + 1, visit);
        }
        for u in 0..self.c2.len() {
            if self.candidate_ok(depth, v, u) {
                self.map[v] = u;
                self.used[u] = true;
                let go_on = self.search(depth + 1, visit);
                self.used[u] = false;
                self.map[v] = usize::MAX;
                if !go_on {
                    return false;
                }
            }
        }
        true
    }
}

/// A vertex bijection `φ` with `uv ∈ E(g1) ⇔ φ(u)φ(v) ∈ E(g2)`, if one exists.
pub fn graph_isomorphic(g1: &Graph, g2: &Graph) -> Option<Vec<usize>> {
    if g1.vertex_count() != g2.vertex_count() || g1.edge_count() != g2.edge_count() {
        return None;
    }
    if g1.degree_histogram() != g2.degree_histogram() {
        return None;
    }
    let dist = [g1.distances(), g2.distances()];
    let colors = refine(&[g1, g2], &dist);
    if histogram(&colors[0]) != histogram(&colors[1]) {
        return None;
    }
    let mut m = Matcher::new(g1, &dist[0], &dist[1], &colors[0], &colors[1]);
    let mut found = None;
    m.search(0, &mut |map| {
        found = Some(map.to_vec());
        false
    });
    found
}

/// `|Aut(g)|` via a stabilizer chain: orbit sizes of successively fixed
/// vertices multiply to the group order.
pub fn graph_automorphism_order(g: &Graph) -> BigUint {
    let n = g.vertex_count();
    let dist = g.distances();
    let colors = refine(&[g, g], &[dist.clone(), dist.clone()]).swap_remove(0);
    let mut order = BigUint::one();
    let mut fixed: Vec<usize> = Vec::new();
    loop {
        let base = {
            let mut m = Matcher::new(g, &dist, &dist, &colors, &colors);
            pin(&mut m, &fixed);
            m.order.retain(|v| !fixed.contains(v));
            m.order.splice(0..0, fixed.iter().copied());
            m.order.get(fixed.len()).copied()
        };
        let Some(v) = base else { break };
        let mut orbit = 0u64;
        for u in 0..n {
            if colors[u] != colors[v] {
                continue;
            }
            let mut m = Matcher::new(g, &dist, &dist, &colors, &colors);
            pin(&mut m, &fixed);
            if !m.candidate_ok_pinned(v, u) {
                continue;
            }
            m.map[v] = u;
            m.used[u] = true;
            m.order.retain(|w| !fixed.contains(w) && *w != v);
            let mut head: Vec<usize> = fixed.clone();
            head.push(v);
            m.order.splice(0..0, head);
            let mut exists = false;
            m.search(fixed.len() + 1, &mut |_| {
                exists = true;
                false
            });
            if exists {
                orbit += 1;
            }
        }
        order *= orbit;
        fixed.push(v);
        if fixed.len() == n {
            break;
        }
        // once the fixed set pins down every vertex the stabilizer is trivial
        if distinguishes(&dist, &fixed, &colors) {
            break;
        }
    }
    order
}

fn pin(m: &mut Matcher<'_>, fixed: &[usize]) {
    for &w in fixed {
        m.map[w] = w;
        m.used[w] = true;
    }
}

impl Matcher<'_> {
    fn candidate_ok_pinned(&self, v: usize, u: usize) -> bool {
        !self.used[u]
            && self.c1[v] == self.c2[u]
            && self
                .map
                .iter()
                .enumerate()
                .filter(|(_, &t)| t != usize::MAX)
                .all(|(w, &t)| self.d1[v][w] == self.d2[u][t])
    }
}

/// Every vertex has a distinct (color, distances to `fixed`) signature.
fn distinguishes(dist: &[Vec<usize>], fixed: &[usize], colors: &[usize]) -> bool {
    let mut keys: Vec<Vec<usize>> = (0..dist.len())
        .map(|v| {
            let mut k = vec![colors[v]];
            k.extend(fixed.iter().map(|&f| dist[v][f]));
            k
        })
        .collect();
    keys.sort_unstable();
    keys.windows(2).all(|w| w[0] != w[1])
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn hexagon_automorphisms() {
        let c6 = Graph::cycle(6);
        assert!(graph_isomorphic(&c6, &Graph::cycle(6)).is_some());
        assert_eq!(graph_automorphism_order(&c6), BigUint::from(12u32));
    }

    #[test]
    fn edge_automorphisms() {
        let k2 = Graph::complete(2);
        assert!(graph_isomorphic(&k2, &k2).is_some());
        assert_eq!(graph_automorphism_order(&k2), BigUint::from(2u32));
    }

    #[test]
    fn small_group_orders() {
        assert_eq!(graph_automorphism_order(&Graph::complete(4)), BigUint::from(24u32));
        assert_eq!(graph_automorphism_order(&Graph::cycle(4)), BigUint::from(8u32));
        // path on 4 vertices
        let p4 = Graph::from_edges(4, &[(0, 1), (1, 2), (2, 3)]);
        assert_eq!(graph_automorphism_order(&p4), BigUint::from(2u32));
        // 3-cube
        let mut e = Vec::new();
        for v in 0..8usize {
            for b in 0..3 {
                if v < v ^ 1 << b {
                    e.push((v, v ^ 1 << b));
                }
            }
        }
        assert_eq!(graph_automorphism_order(&Graph::from_edges(8, &e)), BigUint::from(48u32));
        assert_eq!(graph_automorphism_order(&Graph::new(3)), BigUint::from(6u32));
    }

    #[test]
    fn non_isomorphic_with_equal_degrees() {
        // two triangles vs a hexagon
        let tt = Graph::from_edges(6, &[(0, 1), (1, 2), (2, 0), (3, 4), (4, 5), (5, 3)]);
        assert!(graph_isomorphic(&tt, &Graph::cycle(6)).is_none());
    }

    #[test]
    fn isomorphism_is_a_relabeling() {
        let g = Graph::from_edges(5, &[(0, 1), (1, 2), (2, 3), (3, 4), (4, 0), (0, 2)]);
        let perm = [3, 0, 4, 1, 2];
        let e: Vec<_> = g.edges().iter().map(|&(u, v)| (perm[u], perm[v])).collect();
        let h = Graph::from_edges(5, &e);
        let phi = graph_isomorphic(&g, &h).unwrap();
        for (u, v) in g.edges() {
            assert!(h.has_edge(phi[u], phi[v]));
        }
    }
}
