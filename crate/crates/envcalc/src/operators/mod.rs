//! Subdifferential graphs, normal cones, monotonicity, the Fitzpatrick
//! function and NI-type checks.

mod graph;
mod monotone;
mod subdiff;

pub use graph::{ExactGraph, GraphCell, OperatorGraph, PairFunctional, Provenance};
pub use monotone::{
    fitzpatrick, is_maximal_relative, is_monotone, ni_check, related_to_graph, MaximalityStatus, MaximalityVerdict,
    NiReport,
};
pub use subdiff::{
    eps_subdiff_test, normal_cone, normal_cone_graph, subdiff_exact, subdiff_graph, subdiff_graph_exact, subdiff_test,
    DEFAULT_REPRESENTATIVES,
};
