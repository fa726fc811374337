//! Recovering combinatorial data from the filtered and graded algebras, and
//! the harnesses that test the conjectured converses.

mod aut;
mod circuits;
mod harness;
mod tope;

pub use aut::{aut_groups, aut_groups_with, AutReport};
pub use circuits::{
    check_circuits, circuit_relation, detect_circuits_from_products, recover_and_compare, recover_and_compare_with,
    RecoveredCircuits, RecoveryVerdict,
};
pub use harness::{conjecture_harness_filtered, conjecture_harness_graded, Counterexample, HarnessMode, HarnessReport};
pub use tope::{
    generalized_tope_graph, heaviside_separation_holds, recover_tope_graph_from_heav, recover_tope_graph_with,
    GToGraphChoice,
};
