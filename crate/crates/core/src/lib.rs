//! Exact sparing numbers of graphs under weak integer additive set-indexers,
//! explicit labelings for cartesian-product families, and a harness that
//! checks published closed forms against an exact oracle.

pub mod catalog;
pub mod constructions;
pub mod error;
pub mod graph;
pub mod labels;
pub mod oracle;
pub mod report;

pub use catalog::{phi_formula, Claim, Family, FamilyInstance, FormulaClaim, Params, Variant};
pub use constructions::{construct, ConstructionOutcome};
pub use error::{Error, Result};
pub use graph::{
    cartesian_product, complete_bipartite, complete_graph, cycle_graph, path_graph, Bipartiteness,
    Graph,
};
pub use labels::{realize_labeling, Element, Labeling, SetLabel, Violation};
pub use oracle::{
    max_degree_weight_independent_set, parity_of_cycle_mono_edges, sparing_number_exact, Engine,
    EngineChoice, SolveOptions, SparingResult,
};
pub use report::{compare, run_sweep, ComparisonRow, Format, Report, SweepSpec, Verdict};
