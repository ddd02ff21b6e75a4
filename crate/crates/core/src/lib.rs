//! Steiner distances, Steiner k-eccentricities and the average Steiner
//! 3-eccentricity of trees, with exact rational results.

pub mod families;
pub mod fast;
pub mod graph;
pub mod harness;
pub mod io;
pub mod oracle;
pub mod prufer;
pub mod rational;
pub mod transform;
pub mod tree;

pub use families::{
    closed_form_aecc3, family_aecc3, generate, generate_tree, verify_all, verify_bound,
    BoundCandidate, BoundError, BoundId, BoundOutcomes, BoundReport, BoundVerifier, FamilyError,
    FamilySpec, Generated, ValueSource,
};
pub use fast::{
    aecc3, aecc3_fast, aecc3_fast_ordered, aecc3_fast_par, ecc3_fast, Ecc3Result, EccError,
};
pub use graph::Graph;
pub use harness::{
    run_bench, BenchAlgo, BenchConfig, BenchReport, BenchRow, HarnessError, SlopeFit,
};
pub use io::{
    parse_edge_list, parse_graph_edge_list, write_edge_list, Algorithm, ParseError, ResultDocument,
};
pub use oracle::{EccReport, EnumerationLimits, OracleError, SteinerSubtree};
pub use prufer::{prufer_decode, prufer_encode, random_tree, LabeledTrees};
pub use rational::Rational;
pub use transform::{
    apply_pi, apply_pi_inverse, find_pi_inverse_sites, find_pi_sites, is_equality_case, reduce,
    MoveKind, PiSite, Strategy, TraceStep, TransformError, TransformTrace,
};
pub use tree::{CenterInfo, GraphError, NeighborOrder, Tree, TreePath, Vertex};
