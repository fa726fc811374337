use serde::Serialize;

use super::Graph;

/// An isometric hypercube embedding found from the Djoković–Winkler relation.
#[derive(Clone, Debug)]
pub struct PartialCube {
    /// Θ-classes as lists of edges `(u, v)`, `u < v`, ordered by first edge.
    pub classes: Vec<Vec<(usize, usize)>>,
    /// `labels[v][k]` is the side of class `k` containing `v`; vertex 0 is all `false`.
    pub labels: Vec<Vec<bool>>,
}

impl PartialCube {
    pub fn dimension(&self) -> usize {
        self.classes.len()
    }
}

/// Returns the Θ-classes when `g` is a partial cube.
///
/// `g` is a partial cube iff it is connected, bipartite and Θ is transitive;
/// edges `xy`, `uv` are related iff `d(x,u) + d(y,v) ≠ d(x,v) + d(y,u)`.
pub fn partial_cube_check(g: &Graph) -> Option<PartialCube> {
    let n = g.vertex_count();
    if n == 0 || !g.is_connected() {
        return None;
    }
    let d = g.distances();
    // bipartite: adjacent vertices have distances of different parity from 0
    if g.edges().iter().any(|&(u, v)| d[0][u] % 2 == d[0][v] % 2) {
        return None;
    }
    let edges = g.edges();
    let theta = |e: (usize, usize), f: (usize, usize)| {
        let (x, y) = e;
        let (u, v) = f;
        d[x][u] + d[y][v] != d[x][v] + d[y][u]
    };
    let mut class_of = vec![usize::MAX; edges.len()];
    let mut classes: Vec<Vec<(usize, usize)>> = Vec::new();
    for (i, &e) in edges.iter().enumerate() {
        if class_of[i] != usize::MAX {
            continue;
        }
        let members: Vec<usize> = (0..edges.len()).filter(|&j| theta(e, edges[j])).collect();
        for &j in &members {
            if class_of[j] != usize::MAX {
                return None;
            }
        }
        // transitivity within the class
        for &j in &members {
            for &k in &members {
                if j < k && !theta(edges[j], edges[k]) {
                    return None;
                }
            }
        }
        let id = classes.len();
        for &j in &members {
            class_of[j] = id;
        }
        classes.push(members.iter().map(|&j| edges[j]).collect());
    }
    // class k splits V into W_xy and W_yx; the side of 0 is `false`
    let labels = (0..n)
        .map(|v| {
            classes
                .iter()
                .map(|c| {
                    let (x, y) = c[0];
                    let v_near_x = d[v][x] < d[v][y];
                    let zero_near_x = d[0][x] < d[0][y];
                    v_near_x != zero_near_x
                })
                .collect()
        })
        .collect::<Vec<Vec<bool>>>();
    // isometry: Hamming distance of labels equals graph distance
    for u in 0..n {
        for v in u + 1..n {
            let h = labels[u].iter().zip(&labels[v]).filter(|(a, b)| a != b).count();
            if h != d[u][v] {
                return None;
            }
        }
    }
    Some(PartialCube { classes, labels })
}

/// Outcome of each necessary condition for being a tope graph of a rank-`r`
/// oriented matroid on `n` elements.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct NecessaryCheck {
    pub partial_cube: bool,
    pub theta_classes: Option<usize>,
    pub n_classes: bool,
    pub antipodal: bool,
    pub min_degree: usize,
    pub min_degree_ok: bool,
    pub even_order: bool,
}

impl NecessaryCheck {
    pub fn pass(&self) -> bool {
        self.partial_cube && self.n_classes && self.antipodal && self.min_degree_ok && self.even_order
    }

    pub fn failures(&self) -> Vec<String> {
        let mut out = Vec::new();
        if !self.partial_cube {
            out.push("not a partial cube".to_string());
        }
        if self.partial_cube && !self.n_classes {
            out.push(format!("{} theta-classes", self.theta_classes.unwrap_or(0)));
        }
        if !self.antipodal {
            out.push("not antipodal".to_string());
        }
        if !self.min_degree_ok {
            out.push(format!("vertices of degree {}", self.min_degree));
        }
        if !self.even_order {
            out.push("odd number of vertices".to_string());
        }
        out
    }
}

/// Sound but incomplete: a pass does not prove the graph is a tope graph.
pub fn tope_graph_necessary_check(g: &Graph, n: usize, rank: usize) -> NecessaryCheck {
    let pc = partial_cube_check(g);
    let theta_classes = pc.as_ref().map(PartialCube::dimension);
    let antipodal = g.is_connected() && {
        let d = g.distances();
        d.iter().all(|row| row.iter().all(|&x| x <= n) && row.iter().filter(|&&x| x == n).count() == 1)
    };
    let min_degree = g.degrees().into_iter().min().unwrap_or(0);
    NecessaryCheck {
        partial_cube: pc.is_some(),
        theta_classes,
        n_classes: theta_classes == Some(n),
        antipodal,
        min_degree,
        min_degree_ok: min_degree >= rank,
        even_order: g.vertex_count().is_multiple_of(2),
    }
}
