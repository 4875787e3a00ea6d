//! Brute-force reference solver.
//!
//! Deliberately naive: definitions are transcribed directly and every subset
//! is tried in order. This module shares no machinery with the tree-based
//! solver, so agreement between the two on the same graph is meaningful
//! evidence that both are right.

use std::fmt;

use crate::count::Count;
use crate::graph::{EdgeId, Element, Multigraph, VertexId};
use crate::Solution;

/// Default ceiling on |V| + |E| for [`brute_force`]. Past this the subset
/// scan gets seriously slow.
pub const BRUTE_FORCE_LIMIT: usize = 24;

/// Absolute ceiling: the scan uses one bit per element in a `u64` mask.
const HARD_LIMIT: usize = 62;

#[derive(Clone, PartialEq, Eq, Debug)]
pub enum OracleError {
    /// |V| + |E| exceeds the given limit.
    SizeLimitExceeded { elements: usize, limit: usize },
    UnknownVertex(String),
    /// Edge index out of range.
    UnknownEdge(usize),
}

impl fmt::Display for OracleError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            OracleError::SizeLimitExceeded { elements, limit } => write!(
                f,
                "graph has {elements} elements (vertices + edges), above the brute-force limit of {limit}"
            ),
            OracleError::UnknownVertex(name) => write!(f, "unknown vertex {name:?}"),
            OracleError::UnknownEdge(index) => write!(f, "no edge with index {index}"),
        }
    }
}

impl std::error::Error for OracleError {}

/// Positions of all elements in the canonical order: vertices sorted by
/// name, then edges by index.
struct ElementSpace<'g> {
    g: &'g Multigraph,
    /// Vertex ids sorted by name; `slot` of vertex = position here.
    verts_by_name: Vec<u32>,
    /// Vertex id -> slot.
    vert_slot: Vec<usize>,
}

impl<'g> ElementSpace<'g> {
    fn new(g: &'g Multigraph) -> Self {
        let mut verts_by_name: Vec<u32> = (0..g.vertex_count() as u32).collect();
        verts_by_name.sort_by_key(|&v| g.name_of(v));
        let mut vert_slot = vec![0usize; g.vertex_count()];
        for (slot, &v) in verts_by_name.iter().enumerate() {
            vert_slot[v as usize] = slot;
        }
        ElementSpace { g, verts_by_name, vert_slot }
    }

    fn edge_slot(&self, index: usize) -> usize {
        self.g.vertex_count() + index
    }

    fn element_at(&self, slot: usize) -> Element {
        if slot < self.g.vertex_count() {
            let name = self.g.name_of(self.verts_by_name[slot]);
            Element::Vertex(VertexId::new(name).expect("stored names are valid"))
        } else {
            let index = slot - self.g.vertex_count();
            Element::Edge(self.g.edge_id(index).expect("slot in range"))
        }
    }

    /// Bitmask of the closed mixed neighborhood of the element at `slot`.
    fn neighborhood_mask(&self, slot: usize) -> u64 {
        let mut m = 1u64 << slot;
        if slot < self.g.vertex_count() {
            let v = self.verts_by_name[slot];
            for &e in self.g.incident_raw(v) {
                m |= 1 << self.edge_slot(e as usize);
                let (a, b) = self.g.edge_raw(e as usize);
                let w = if a == v { b } else { a };
                m |= 1 << self.vert_slot[w as usize];
            }
        } else {
            let index = slot - self.g.vertex_count();
            let (a, b) = self.g.edge_raw(index);
            m |= 1 << self.vert_slot[a as usize];
            m |= 1 << self.vert_slot[b as usize];
            for v in [a, b] {
                for &e in self.g.incident_raw(v) {
                    m |= 1 << self.edge_slot(e as usize);
                }
            }
        }
        m
    }
}

fn check_vertex(g: &Multigraph, v: &VertexId) -> Result<u32, OracleError> {
    g.vertex_index(v.as_str()).ok_or_else(|| OracleError::UnknownVertex(v.as_str().to_string()))
}

fn check_edge(g: &Multigraph, e: &EdgeId) -> Result<usize, OracleError> {
    if e.index < g.edge_count() {
        Ok(e.index)
    } else {
        Err(OracleError::UnknownEdge(e.index))
    }
}

/// The closed mixed neighborhood of `r`, sorted in element order.
///
/// For a vertex: itself, its neighbors, and its incident edges. For an edge:
/// itself, its endpoints, and every edge sharing an endpoint with it —
/// including parallel copies.
pub fn closed_mixed_neighborhood(g: &Multigraph, r: &Element) -> Result<Vec<Element>, OracleError> {
    let mut out = std::collections::BTreeSet::new();
    let add_vertex = |out: &mut std::collections::BTreeSet<Element>, id: u32| {
        out.insert(Element::Vertex(VertexId::new(g.name_of(id)).expect("stored names are valid")));
    };
    match r {
        Element::Vertex(v) => {
            let id = check_vertex(g, v)?;
            add_vertex(&mut out, id);
            for &e in g.incident_raw(id) {
                out.insert(Element::Edge(g.edge_id(e as usize).expect("incident edge exists")));
                let (a, b) = g.edge_raw(e as usize);
                add_vertex(&mut out, if a == id { b } else { a });
            }
        }
        Element::Edge(e) => {
            let index = check_edge(g, e)?;
            out.insert(Element::Edge(g.edge_id(index).expect("index checked")));
            let (a, b) = g.edge_raw(index);
            for v in [a, b] {
                add_vertex(&mut out, v);
                for &e2 in g.incident_raw(v) {
                    out.insert(Element::Edge(g.edge_id(e2 as usize).expect("incident edge exists")));
                }
            }
        }
    }
    Ok(out.into_iter().collect())
}

/// Does `set` dominate every vertex and every edge of `g`?
///
/// A set S ⊆ V ∪ E is mixed dominating when the closed mixed neighborhood of
/// every element meets S. Works on graphs of any size.
pub fn is_mixed_dominating(g: &Multigraph, set: &[Element]) -> Result<bool, OracleError> {
    Ok(first_undominated(g, set)?.is_none())
}

/// The first element of `g` (in canonical order: vertices by name, then
/// edges by index) whose closed mixed neighborhood misses `set`, or `None`
/// when `set` is mixed dominating. Works on graphs of any size.
pub fn first_undominated(g: &Multigraph, set: &[Element]) -> Result<Option<Element>, OracleError> {
    let mut chosen_vertex = vec![false; g.vertex_count()];
    let mut chosen_edge = vec![false; g.edge_count()];
    for e in set {
        match e {
            Element::Vertex(v) => chosen_vertex[check_vertex(g, v)? as usize] = true,
            Element::Edge(e) => chosen_edge[check_edge(g, e)?] = true,
        }
    }
    // A vertex touched by a chosen edge dominates nothing extra for itself,
    // but "some incident edge is chosen" is needed for both vertex and edge
    // checks, so precompute it.
    let mut touched = vec![false; g.vertex_count()];
    for i in 0..g.edge_count() {
        if chosen_edge[i] {
            let (a, b) = g.edge_raw(i);
            touched[a as usize] = true;
            touched[b as usize] = true;
        }
    }
    let mut verts_by_name: Vec<u32> = (0..g.vertex_count() as u32).collect();
    verts_by_name.sort_by_key(|&v| g.name_of(v));
    for v in verts_by_name {
        let dominated = chosen_vertex[v as usize]
            || touched[v as usize]
            || g.incident_raw(v).iter().any(|&e| {
                let (a, b) = g.edge_raw(e as usize);
                chosen_vertex[if a == v { b } else { a } as usize]
            });
        if !dominated {
            return Ok(Some(Element::Vertex(
                VertexId::new(g.name_of(v)).expect("stored names are valid"),
            )));
        }
    }
    for i in 0..g.edge_count() {
        let (a, b) = g.edge_raw(i);
        let dominated = chosen_edge[i]
            || chosen_vertex[a as usize]
            || chosen_vertex[b as usize]
            || touched[a as usize]
            || touched[b as usize];
        if !dominated {
            return Ok(Some(Element::Edge(g.edge_id(i).expect("index in range"))));
        }
    }
    Ok(None)
}

/// Exhaustively find the mixed domination number, the number of minimum
/// mixed dominating sets, and the lexicographically least minimum set (in
/// element order).
///
/// Refuses graphs with more than [`BRUTE_FORCE_LIMIT`] elements unless
/// `force` is set; even then masks cap the size at 62 elements.
pub fn brute_force(g: &Multigraph, force: bool) -> Result<Solution, OracleError> {
    let n = g.vertex_count() + g.edge_count();
    let limit = if force { HARD_LIMIT } else { BRUTE_FORCE_LIMIT };
    if n > limit {
        return Err(OracleError::SizeLimitExceeded { elements: n, limit });
    }
    let space = ElementSpace::new(g);
    let needs: Vec<u64> = (0..n).map(|s| space.neighborhood_mask(s)).collect();
    let dominating = |set: u64| needs.iter().all(|&m| m & set != 0);

    for k in 0..=n {
        let mut count = Count::zero();
        let mut witness: Option<Vec<usize>> = None;
        for_each_subset_of_size(n, k, |slots, mask| {
            if dominating(mask) {
                count.add_assign(&Count::one());
                if witness.is_none() {
                    witness = Some(slots.to_vec());
                }
            }
        });
        if let Some(slots) = witness {
            let witness = slots.iter().map(|&s| space.element_at(s)).collect();
            return Ok(Solution { gamma_m: k as u64, count, witness });
        }
    }
    unreachable!("the full element set dominates everything")
}

/// Visit every k-subset of `0..n` in lexicographic order (so the first
/// dominating subset found is the lexicographically least one).
fn for_each_subset_of_size(n: usize, k: usize, mut f: impl FnMut(&[usize], u64)) {
    if k > n {
        return;
    }
    let mut slots: Vec<usize> = (0..k).collect();
    loop {
        let mask = slots.iter().fold(0u64, |m, &s| m | 1 << s);
        f(&slots, mask);
        // Advance to the next combination.
        let mut i = k;
        loop {
            if i == 0 {
                return;
            }
            i -= 1;
            if slots[i] != i + n - k {
                break;
            }
        }
        if slots[i] == i + n - k {
            return;
        }
        slots[i] += 1;
        for j in i + 1..k {
            slots[j] = slots[j - 1] + 1;
        }
    }
}
