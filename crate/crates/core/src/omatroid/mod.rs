//! Oriented-matroid data of an arrangement: signed circuits, tope graphs and
//! the graph-theoretic tests used to compare them.

mod circuits;
mod graph;
mod isomorphism;
mod partial_cube;

pub use circuits::{circuits_equivalent, reorientation_between, signed_circuits, Equivalence, SignedCircuitSet};
pub use graph::{tope_graph, Graph};
pub use isomorphism::{graph_automorphism_order, graph_isomorphic};
pub use partial_cube::{partial_cube_check, tope_graph_necessary_check, NecessaryCheck, PartialCube};
