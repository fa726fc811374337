use std::collections::VecDeque;
use std::fmt::Write;

use crate::arrangement::ChamberSet;

/// Undirected simple graph on `0..n` with sorted adjacency lists.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Graph {
    adj: Vec<Vec<usize>>,
    labels: Option<Vec<String>>,
}

impl Graph {
    pub fn new(n: usize) -> Graph {
        Graph { adj: vec![Vec::new(); n], labels: None }
    }

    pub fn from_edges(n: usize, edges: &[(usize, usize)]) -> Graph {
        let mut g = Graph::new(n);
        for &(u, v) in edges {
            g.add_edge(u, v);
        }
        g
    }

    pub fn cycle(n: usize) -> Graph {
        let edges: Vec<_> = (0..n).map(|i| (i, (i + 1) % n)).collect();
        Graph::from_edges(n, &edges)
    }

    pub fn complete(n: usize) -> Graph {
        let edges: Vec<_> = (0..n).flat_map(|i| (i + 1..n).map(move |j| (i, j))).collect();
        Graph::from_edges(n, &edges)
    }

    pub fn with_labels(mut self, labels: Vec<String>) -> Graph {
        assert_eq!(labels.len(), self.adj.len());
        self.labels = Some(labels);
        self
    }

    pub fn labels(&self) -> Option<&[String]> {
        self.labels.as_deref()
    }

    /// Adds `{u, v}`; loops and repeated edges are ignored.
    pub fn add_edge(&mut self, u: usize, v: usize) {
        if u == v || self.has_edge(u, v) {
            return;
        }
        for (a, b) in [(u, v), (v, u)] {
            let pos = self.adj[a].partition_point(|&x| x < b);
            self.adj[a].insert(pos, b);
        }
    }

    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        self.adj[u].binary_search(&v).is_ok()
    }

    pub fn vertex_count(&self) -> usize {
        self.adj.len()
    }

    pub fn edge_count(&self) -> usize {
        self.adj.iter().map(Vec::len).sum::<usize>() / 2
    }

    pub fn neighbors(&self, v: usize) -> &[usize] {
        &self.adj[v]
    }

    pub fn degree(&self, v: usize) -> usize {
        self.adj[v].len()
    }

    pub fn degrees(&self) -> Vec<usize> {
        self.adj.iter().map(Vec::len).collect()
    }

    /// `(degree, count)` pairs in increasing degree.
    pub fn degree_histogram(&self) -> Vec<(usize, usize)> {
        let mut d = self.degrees();
        d.sort_unstable();
        let mut out: Vec<(usize, usize)> = Vec::new();
        for x in d {
            match out.last_mut() {
                Some((y, c)) if *y == x => *c += 1,
                _ => out.push((x, 1)),
            }
        }
        out
    }

    /// Edges `(u, v)` with `u < v`, sorted.
    pub fn edges(&self) -> Vec<(usize, usize)> {
        let mut e = Vec::new();
        for (u, nb) in self.adj.iter().enumerate() {
            for &v in nb.iter().filter(|&&v| v > u) {
                e.push((u, v));
            }
        }
        e
    }

    /// BFS distances from `s`; `usize::MAX` marks unreachable vertices.
    pub fn bfs(&self, s: usize) -> Vec<usize> {
        let mut d = vec![usize::MAX; self.adj.len()];
        d[s] = 0;
        let mut q = VecDeque::from([s]);
        while let Some(u) = q.pop_front() {
            for &v in &self.adj[u] {
                if d[v] == usize::MAX {
                    d[v] = d[u] + 1;
                    q.push_back(v);
                }
            }
        }
        d
    }

    pub fn distances(&self) -> Vec<Vec<usize>> {
        (0..self.adj.len()).map(|s| self.bfs(s)).collect()
    }

    pub fn is_connected(&self) -> bool {
        self.adj.is_empty() || self.bfs(0).iter().all(|&d| d != usize::MAX)
    }

    pub fn to_dot(&self, name: &str) -> String {
        let mut s = String::new();
        let _ = writeln!(s, "graph \"{name}\" {{");
        for v in 0..self.adj.len() {
            match &self.labels {
                Some(l) => {
                    let _ = writeln!(s, "  {v} [label=\"{}\"];", l[v]);
                }
                None => {
                    let _ = writeln!(s, "  {v};");
                }
            }
        }
        for (u, v) in self.edges() {
            let _ = writeln!(s, "  {u} -- {v};");
        }
        s.push_str("}\n");
        s
    }

    pub fn to_json(&self) -> serde_json::Value {
        serde_json::json!({
            "vertices": self.adj.len(),
            "labels": self.labels,
            "edges": self.edges(),
            "degree_histogram": self.degree_histogram(),
        })
    }
}

/// Chambers joined when separated by exactly one hyperplane.
pub fn tope_graph(cs: &ChamberSet) -> Graph {
    let mut g = Graph::new(cs.len());
    for c in 0..cs.len() {
        for i in 0..cs.n() {
            if let Some(d) = cs.position_of_mask(cs.mask(c) ^ 1 << i) {
                if c < d {
                    g.add_edge(c, d);
                }
            }
        }
    }
    g.with_labels(cs.signs().iter().map(|s| s.to_string()).collect())
}
