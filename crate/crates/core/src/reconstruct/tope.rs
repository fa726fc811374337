use serde::Serialize;

use crate::error::{Error, Result};
use crate::exactla::{Field, Matrix};
use crate::omatroid::Graph;
use crate::vgalgebra::{GenHeaviside, VgAlgebra, VgElement};

/// `n` elements of `gHeav(A)` used as coordinates of a generalized tope graph.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct GToGraphChoice {
    /// Positions in the gHeav enumeration, when the choice came from it.
    pub indices: Vec<usize>,
    /// Values of each chosen `y_i` on the chambers.
    pub values: Vec<Vec<bool>>,
    /// `{1, y_1, …, y_n}` is a basis of `Fil^1`.
    pub is_basis: bool,
}

impl GToGraphChoice {
    pub fn from_gheav<F: Field>(vg: &VgAlgebra<F>, gheav: &[GenHeaviside<F>], indices: &[usize]) -> Self {
        let values: Vec<Vec<bool>> = indices.iter().map(|&k| gheav[k].indicator.clone()).collect();
        // {1, y_i} is a basis iff the classes of the y_i span grVG^1
        let classes: Vec<_> = indices.iter().map(|&k| gheav[k].class.clone()).collect();
        let is_basis =
            indices.len() == vg.n() && Matrix::from_rows(vg.field().clone(), vg.n(), classes).rank() == vg.n();
        GToGraphChoice { indices: indices.to_vec(), values, is_basis }
    }

    /// Fails unless every element is a 0/1 function in `Fil^1`.
    pub fn from_elements<F: Field>(vg: &VgAlgebra<F>, elements: &[VgElement<F>]) -> Result<Self> {
        let f = vg.field();
        let mut values = Vec::new();
        for (k, y) in elements.iter().enumerate() {
            if !vg.is_idempotent(y) {
                return Err(Error::Domain(format!("element {} is not 0/1-valued", k + 1)));
            }
            if !vg.in_fil1_by_rho(y) {
                return Err(Error::NotInFil(1));
            }
            values.push(y.values.iter().map(|v| f.is_one(v)).collect());
        }
        let is_basis = basis_check(vg, &values);
        Ok(GToGraphChoice { indices: Vec::new(), values, is_basis })
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }
}

fn basis_check<F: Field>(vg: &VgAlgebra<F>, values: &[Vec<bool>]) -> bool {
    let f = vg.field();
    let bit = |b: bool| if b { f.one() } else { f.zero() };
    let mut rows = vec![vec![f.one(); vg.dim()]];
    rows.extend(values.iter().map(|v| v.iter().map(|&b| bit(b)).collect()));
    let fil1 = vg.fil().dims()[1.min(vg.fil().ell())];
    rows.len() == fil1 && Matrix::from_rows(f.clone(), vg.dim(), rows).rank() == fil1
}

/// Chambers adjacent iff exactly one chosen function separates them.
pub fn generalized_tope_graph<F: Field>(vg: &VgAlgebra<F>, choice: &GToGraphChoice) -> Graph {
    let m = vg.dim();
    // pack values per chamber so that differences are popcounts
    let words: Vec<u64> =
        (0..m).map(|c| choice.values.iter().enumerate().fold(0u64, |w, (i, v)| w | (v[c] as u64) << i)).collect();
    let mut g = Graph::new(m);
    for c in 0..m {
        for d in c + 1..m {
            if (words[c] ^ words[d]).count_ones() == 1 {
                g.add_edge(c, d);
            }
        }
    }
    g.with_labels(vg.chambers().signs().iter().map(|s| s.to_string()).collect())
}

/// For every pair of chambers, the number of Heaviside functions taking
/// different values on them is `2·#Sep`.
pub fn heaviside_separation_holds<F: Field>(vg: &VgAlgebra<F>) -> bool {
    let cs = vg.chambers();
    let heav: Vec<VgElement<F>> = (0..vg.n())
        .flat_map(|i| [crate::vgalgebra::Side::Plus, crate::vgalgebra::Side::Minus].map(|s| vg.heaviside(i, s)))
        .collect();
    (0..vg.dim()).all(|c| {
        (0..vg.dim()).all(|d| {
            let differ = heav.iter().filter(|h| h.values[c] != h.values[d]).count();
            differ == 2 * cs.sep_count(c, d)
        })
    })
}

/// Builds the tope graph from the algebra: primitive idempotents are the
/// vertices and two of them are adjacent when exactly two generalized
/// Heaviside functions separate them.
///
/// Requires `#gHeav = 2n`, which holds exactly when every element of gHeav
/// is a Heaviside function.
pub fn recover_tope_graph_from_heav<F: Field>(vg: &VgAlgebra<F>) -> Result<Graph> {
    vg.require_odd_char("tope graph recovery")?;
    let gheav = vg.gheav_bruteforce();
    recover_tope_graph_with(vg, &gheav)
}

pub fn recover_tope_graph_with<F: Field>(vg: &VgAlgebra<F>, gheav: &[GenHeaviside<F>]) -> Result<Graph> {
    if gheav.len() != 2 * vg.n() {
        return Err(Error::NotCodim2Generic);
    }
    let f = vg.field();
    let prim = vg.primitive_idempotents();
    // each chamber is read off as the position of the single 1
    let vertex: Vec<usize> =
        prim.iter().map(|e| e.values.iter().position(|v| f.is_one(v)).expect("primitive idempotent")).collect();
    // pairs {h, 1 − h} share a support
    for h in gheav {
        let comp: Vec<bool> = h.indicator.iter().map(|b| !b).collect();
        let partner = gheav
            .iter()
            .find(|k| k.indicator == comp)
            .ok_or_else(|| Error::Invariant("gHeav is not closed under complement".into()))?;
        if partner.support != h.support {
            return Err(Error::Invariant("complementary elements with different supports".into()));
        }
    }
    let m = prim.len();
    let mut g = Graph::new(m);
    for a in 0..m {
        for b in a + 1..m {
            let (c, d) = (vertex[a], vertex[b]);
            let differ = gheav.iter().filter(|h| h.indicator[c] != h.indicator[d]).count();
            if differ == 2 {
                g.add_edge(a, b);
            }
        }
    }
    Ok(g)
}
