//! Exact mixed domination on generalized series-parallel graphs.
//!
//! A *mixed dominating set* of a multigraph picks vertices and/or edges so
//! that every vertex and every edge is dominated: a vertex is dominated if
//! it is picked, a neighbor is picked, or an incident edge is picked; an
//! edge is dominated if it is picked, an endpoint is picked, or an edge
//! sharing an endpoint is picked. This crate computes, exactly:
//!
//! * the minimum size of such a set,
//! * how many sets of that size exist, and
//! * one witness set of minimum size,
//!
//! for graphs assembled by series, parallel, and generalized-series
//! compositions from single edges ([`ParseTree`]). The solver runs one
//! bottom-up pass over the assembly tree, processing each composition in
//! constant time, so trees with hundreds of thousands of edges are fine.
//!
//! Supporting pieces: a textual expression format ([`parse_expr`] /
//! [`format_expr`]), realization of a tree into a concrete [`Multigraph`],
//! a decomposer that recovers an assembly tree from a bare edge list
//! ([`decompose`]), a seeded random instance generator ([`generate`]), and
//! a brute-force [`oracle`] for cross-checking on small graphs.

mod count;
mod gen;
mod graph;
mod parse;
mod reduce;
mod solver;
mod states;
mod tree;

pub mod oracle;

pub use count::Count;
pub use gen::{generate, GenError, GenWeights, SplitMix64};
pub use graph::{
    is_valid_name, realize, EdgeId, EdgeListError, Element, GraphError, Multigraph, VertexId,
};
pub use parse::{format_expr, parse_expr, DiagnosticKind, ParseDiagnostic};
pub use reduce::{decompose, DecomposeError};
pub use solver::{root_table, solve, solve_value, StateTable};
pub use states::{combine, pairs_for, StateFlags, TerminalState};
pub use tree::{ParseTree, TreeError};

/// Result of an exact computation: the minimum size, the number of minimum
/// sets, and one of them.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Solution {
    /// Minimum number of elements in a mixed dominating set.
    pub gamma_m: u64,
    /// How many mixed dominating sets reach that minimum.
    pub count: Count,
    /// One minimum set, in canonical element order (vertices by name, then
    /// edges by index).
    pub witness: Vec<Element>,
}
