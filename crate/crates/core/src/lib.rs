//! Algorithms for embedded width of plane graphs: rotation-system plane
//! graphs, tree decompositions and their validators, upper and lower
//! bounds, matchings in reduced graphs, and an exact decision procedure.

pub mod abstract_graph;
pub mod bounds;
pub mod decomposition;
pub mod emwidth;
pub mod error;
pub mod io;
pub mod matching;
pub mod plane_graph;

pub use abstract_graph::{subdivide_edge, AbstractGraph};
pub use decomposition::{
    facial_completion, validate_em_decomposition, validate_tree_decomposition,
    validate_tree_decomposition_plane, width, TreeDecomposition, ValidationReport,
};
pub use bounds::{
    dual_outerplanarity_labeling, emw_upper_outerplanar, emw_upper_weak_dual, generate_gadget,
    pseudo_block_decomposition, GadgetSpec, PseudoBlockDecomposition, WEAK_DUAL_EXACT_CAP,
};
pub use emwidth::{
    decide_emwidth, decide_emwidth_traced, exact_emwidth, exact_emwidth_capped, exact_treewidth,
    exact_treewidth_capped, expand_decomposition, improve_decomposition, min_fill_decomposition,
    reduce_once, treewidth_at_most, EmWidthAnswer, LevelTrace, ReductionEvent, ReductionScript,
    DEFAULT_EXACT_CAP,
};
pub use error::{Error, Result};
pub use io::{parse_pg, parse_td, print_pg, print_td};
pub use matching::{
    find_r_families, greedy_maximal_matching, is_nicely_embedded, lens_obstructions,
    matching_no_nice_family,
    matching_no_r_family, maximum_matching, orient_one_sink, CaseTag, Matching,
    MatchingConstructionTrace, Orientation, RFamily,
};
pub use plane_graph::{
    canonical_form, contract_matching, cycle, dual, embedded_subgraph, face_incidence, fan, grid,
    k2r, outerplanarity, path, simplify_parallel_faces, strip_degree_one, weak_dual,
    weak_dual_plane, ContractionMap, DartId, DegreeOneRemoval, Dual, EdgeId, EmbeddedSubgraph,
    Face, FaceId, FaceSet, OuterplanarityLabeling, ParallelDeletion, PlaneGraph, VertexId,
    WeakDual,
};
