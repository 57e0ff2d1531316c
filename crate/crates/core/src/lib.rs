//! Arithmetic on flow graphs: directed connected multigraphs with a source
//! and a target, added by gluing and multiplied by edge substitution.

pub mod algebra;
pub mod canon;
pub mod decomposition;
pub mod embed;
pub mod error;
pub mod explorer;
pub mod format;
pub mod graph;
pub mod limits;
pub mod named;
pub mod order;
pub mod par;
pub mod st;

pub use algebra::{
    all_quotients, is_left_prime, is_prime, is_right_prime, is_unit, left_divide, nat, oplus, otimes, otimes_with_order, plus, right_divide, scalar_multiple,
    scalar_power, times, ProductResult, Side, SumResult,
};
pub use canon::{canonical_graph, canonical_key, CanonicalKey};
pub use decomposition::{
    canonical_decomposition, decomposition_edge_sets, is_oplus_irreducible, nested_decomposition, is_s_standard, is_t_standard, rank, split_at,
    splitting_edges, splitting_vertices, st_core, DecompositionSeq, IrreducibilityMode, RankPair,
    SplitVertexSet,
};
pub use embed::{are_isomorphic, find_anchored_embeddings, Anchors, VertexMap};
pub use error::{Error, Result};
pub use explorer::enumerate::{enumerate_flow_graphs, UniverseSpec};
pub use explorer::factor::{factorization_experiment, Factorization};
pub use explorer::laws::{catalog, find_law, Expectation, Law};
pub use explorer::report::{LawReport, NamedCheck, Verdict};
pub use explorer::run::{check_law, check_law_with, find_counterexample, run_catalog, RunOptions};
pub use format::{parse_fg, to_dot, write_fg};
pub use graph::{Class, Edge, EdgeId, FlowGraph, UndirectedEdge, UndirectedForm, VertexId};
pub use limits::Limits;
pub use par::Exec;
pub use st::{is_st_flow_graph, st_report, StReport};
pub use order::{
    enumerate_st_splittings, strong_leq, verify_strong, verify_weak, weak_leq, StPart, StSplitting, StrongWitness,
    WeakWitness,
};
