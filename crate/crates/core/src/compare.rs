//! Side-by-side comparison of two arrangements at several levels of structure.

use std::collections::BTreeMap;

use serde::Serialize;
use serde_json::{json, Value};

use crate::arrangement::{lattice_isomorphism, Arrangement, Lattice};
use crate::error::{Error, Result};
use crate::exactla::Rationals;
use crate::omatroid::{graph_isomorphic, signed_circuits, tope_graph, Graph};
use crate::reconstruct::recover_tope_graph_with;
use crate::vgalgebra::VgAlgebra;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum CompareWhat {
    Lattice,
    Topegraph,
    FilteredVg,
    GradedVgInvariants,
}

impl CompareWhat {
    pub const ALL: [CompareWhat; 4] =
        [CompareWhat::Lattice, CompareWhat::Topegraph, CompareWhat::FilteredVg, CompareWhat::GradedVgInvariants];

    pub fn parse(s: &str) -> Result<Self> {
        Ok(match s {
            "lattice" => CompareWhat::Lattice,
            "topegraph" => CompareWhat::Topegraph,
            "filtered-vg" => CompareWhat::FilteredVg,
            "graded-vg-invariants" => CompareWhat::GradedVgInvariants,
            _ => {
                return Err(Error::Usage(format!(
                    "unknown comparison `{s}` (expected lattice, topegraph, filtered-vg or graded-vg-invariants)"
                )))
            }
        })
    }

    pub fn name(self) -> &'static str {
        match self {
            CompareWhat::Lattice => "lattice",
            CompareWhat::Topegraph => "topegraph",
            CompareWhat::FilteredVg => "filtered-vg",
            CompareWhat::GradedVgInvariants => "graded-vg-invariants",
        }
    }
}

/// `isomorphic` is `None` when the comparison cannot decide.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Comparison {
    pub what: CompareWhat,
    pub isomorphic: Option<bool>,
    pub message: String,
    pub details: Value,
}

fn count_word(k: usize) -> String {
    const WORDS: [&str; 11] = ["none", "one", "two", "three", "four", "five", "six", "seven", "eight", "nine", "ten"];
    WORDS.get(k).map(|w| w.to_string()).unwrap_or_else(|| k.to_string())
}

/// Explains why two graphs differ, or `None` if no cheap invariant separates them.
fn degree_difference(g1: &Graph, g2: &Graph) -> Option<String> {
    if g1.vertex_count() != g2.vertex_count() {
        return Some(format!("{} vs {} vertices", g1.vertex_count(), g2.vertex_count()));
    }
    if g1.edge_count() != g2.edge_count() {
        return Some(format!("{} vs {} edges", g1.edge_count(), g2.edge_count()));
    }
    let h1: BTreeMap<usize, usize> = g1.degree_histogram().into_iter().collect();
    let h2: BTreeMap<usize, usize> = g2.degree_histogram().into_iter().collect();
    let d = h1.keys().chain(h2.keys()).copied().filter(|d| h1.get(d) != h2.get(d)).max()?;
    let (k1, k2) = (h1.get(&d).copied().unwrap_or(0), h2.get(&d).copied().unwrap_or(0));
    let noun = if k1 == 1 { "vertex" } else { "vertices" };
    Some(format!("degree profiles differ ({} degree-{d} {noun} vs {})", count_word(k1), count_word(k2)))
}

fn compare_graphs(what: CompareWhat, g1: &Graph, g2: &Graph) -> Comparison {
    let details = json!({
        "degree_histograms": [g1.degree_histogram(), g2.degree_histogram()],
    });
    let (isomorphic, message) = match degree_difference(g1, g2) {
        Some(why) => (false, format!("NOT isomorphic: {why}")),
        None => match graph_isomorphic(g1, g2) {
            Some(_) => (true, "isomorphic".to_string()),
            None => (false, "NOT isomorphic: no adjacency-preserving bijection exists".to_string()),
        },
    };
    Comparison { what, isomorphic: Some(isomorphic), message, details }
}

pub fn compare(a1: &Arrangement, a2: &Arrangement, what: CompareWhat) -> Result<Comparison> {
    let vg1 = VgAlgebra::new(a1, Rationals, false)?;
    let vg2 = VgAlgebra::new(a2, Rationals, false)?;
    Ok(match what {
        CompareWhat::Lattice => lattice_comparison(vg1.lattice(), vg2.lattice()),
        CompareWhat::Topegraph => compare_graphs(what, &tope_graph(vg1.chambers()), &tope_graph(vg2.chambers())),
        CompareWhat::FilteredVg => filtered(&vg1, &vg2)?,
        CompareWhat::GradedVgInvariants => graded(&vg1, &vg2)?,
    })
}

fn lattice_comparison(l1: &Lattice, l2: &Lattice) -> Comparison {
    let details = json!({ "char_poly": [l1.char_poly(), l2.char_poly()] });
    let (isomorphic, message) = if l1.char_poly() != l2.char_poly() {
        (false, "NOT isomorphic: characteristic polynomials differ".to_string())
    } else {
        match lattice_isomorphism(l1, l2) {
            Some(perm) => (true, format!("isomorphic (hyperplane map {perm:?})")),
            None => (false, "NOT isomorphic: no hyperplane bijection preserves the flats".to_string()),
        }
    };
    Comparison { what: CompareWhat::Lattice, isomorphic: Some(isomorphic), message, details }
}

/// In the codim-2 generic case the filtered algebra recovers the tope graph,
/// so the two comparisons agree. Outside it only a tope-graph isomorphism
/// decides (it always induces a filtered isomorphism).
fn filtered(vg1: &VgAlgebra<Rationals>, vg2: &VgAlgebra<Rationals>) -> Result<Comparison> {
    let h1 = vg1.gheav_bruteforce();
    let h2 = vg2.gheav_bruteforce();
    let generic = [vg1.lattice().is_generic_codim2(), vg2.lattice().is_generic_codim2()];
    let mut details = json!({ "gheav": [h1.len(), h2.len()], "generic_codim2": generic });
    if vg1.dim() != vg2.dim() || h1.len() != h2.len() {
        return Ok(Comparison {
            what: CompareWhat::FilteredVg,
            isomorphic: Some(false),
            message: format!(
                "NOT isomorphic: {} vs {} chambers, {} vs {} generalized Heaviside functions",
                vg1.dim(),
                vg2.dim(),
                h1.len(),
                h2.len()
            ),
            details,
        });
    }
    if generic[0] && generic[1] {
        let g1 = recover_tope_graph_with(vg1, &h1)?;
        let g2 = recover_tope_graph_with(vg2, &h2)?;
        let mut c = compare_graphs(CompareWhat::FilteredVg, &g1, &g2);
        c.message = format!("{} (tope graphs recovered from the filtered algebras)", c.message);
        c.details["gheav"] = details["gheav"].take();
        c.details["generic_codim2"] = json!(generic);
        return Ok(c);
    }
    let t = compare_graphs(CompareWhat::FilteredVg, &tope_graph(vg1.chambers()), &tope_graph(vg2.chambers()));
    Ok(if t.isomorphic == Some(true) {
        Comparison { message: "isomorphic (induced by a tope graph isomorphism)".into(), details, ..t }
    } else {
        Comparison {
            what: CompareWhat::FilteredVg,
            isomorphic: None,
            message: "refused: not codim-2 generic and the tope graphs differ; use the conjecture harness".into(),
            details,
        }
    })
}

fn support_histogram(a: &Arrangement) -> Vec<(u32, usize)> {
    let mut h: BTreeMap<u32, usize> = BTreeMap::new();
    for s in signed_circuits(a).supports() {
        *h.entry(s.count_ones()).or_default() += 1;
    }
    h.into_iter().collect()
}

fn graded(vg1: &VgAlgebra<Rationals>, vg2: &VgAlgebra<Rationals>) -> Result<Comparison> {
    let b = [vg1.fil().graded_dims(), vg2.fil().graded_dims()];
    let s = [vg1.sqzero()?.len(), vg2.sqzero()?.len()];
    let details = json!({
        "betti": b,
        "sqzero_lines": s,
        "circuit_support_sizes": [support_histogram(vg1.arrangement()), support_histogram(vg2.arrangement())],
    });
    let (isomorphic, message) = if b[0] != b[1] {
        (Some(false), "graded VG algebras non-isomorphic: Betti numbers differ".to_string())
    } else if s[0] != s[1] {
        (
            Some(false),
            format!("graded VG algebras non-isomorphic: square-zero line counts differ ({} vs {})", s[0], s[1]),
        )
    } else {
        (None, "graded invariants agree (this does not prove isomorphism)".to_string())
    };
    Ok(Comparison { what: CompareWhat::GradedVgInvariants, isomorphic, message, details })
}
