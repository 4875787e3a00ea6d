//! Multigraphs realized from parse trees, plus their text formats.

use std::collections::HashMap;
use std::fmt;

use crate::tree::ParseTree;

/// `true` for tokens usable as vertex names: one or more ASCII letters,
/// digits, or underscores.
pub fn is_valid_name(s: &str) -> bool {
    !s.is_empty() && s.bytes().all(|b| b.is_ascii_alphanumeric() || b == b'_')
}

/// A named vertex. Ordered by name.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub struct VertexId(Box<str>);

impl VertexId {
    pub fn new(name: &str) -> Option<VertexId> {
        is_valid_name(name).then(|| VertexId(name.into()))
    }

    pub fn as_str(&self) -> &str {
        &self.0
    }
}

impl fmt::Display for VertexId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0)
    }
}

/// One edge of a multigraph: its position in the edge list plus its
/// endpoints. Parallel edges differ only by `index`. Ordered by index.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub struct EdgeId {
    pub index: usize,
    pub u: VertexId,
    pub v: VertexId,
}

impl fmt::Display for EdgeId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "e{}({},{})", self.index, self.u, self.v)
    }
}

/// A member of V ∪ E: the ground set that mixed dominating sets draw from.
/// The derived order — vertices first by name, then edges by index — is the
/// canonical element order used for witnesses.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub enum Element {
    Vertex(VertexId),
    Edge(EdgeId),
}

impl fmt::Display for Element {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Element::Vertex(v) => v.fmt(f),
            Element::Edge(e) => e.fmt(f),
        }
    }
}

#[derive(Clone, PartialEq, Eq, Debug)]
pub enum GraphError {
    BadName { name: String },
    SelfLoop { name: String },
}

impl fmt::Display for GraphError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            GraphError::BadName { name } => {
                write!(f, "invalid vertex name {name:?} (use letters, digits, underscores)")
            }
            GraphError::SelfLoop { name } => write!(f, "self-loop at vertex {name:?}"),
        }
    }
}

impl std::error::Error for GraphError {}

/// A loop-free undirected multigraph. Vertices are kept in first-appearance
/// order, edges in insertion order; both orders are preserved by the text
/// exports, so round-trips are byte-identical.
#[derive(Clone, PartialEq, Debug)]
pub struct Multigraph {
    names: Vec<Box<str>>,
    lookup: HashMap<Box<str>, u32>,
    edges: Vec<(u32, u32)>,
    incident: Vec<Vec<u32>>,
}

impl Multigraph {
    pub fn from_edges<'a, I>(edges: I) -> Result<Multigraph, GraphError>
    where
        I: IntoIterator<Item = (&'a str, &'a str)>,
    {
        let mut g = Multigraph {
            names: Vec::new(),
            lookup: HashMap::new(),
            edges: Vec::new(),
            incident: Vec::new(),
        };
        for (u, v) in edges {
            g.push_edge(u, v)?;
        }
        Ok(g)
    }

    fn intern(&mut self, name: &str) -> Result<u32, GraphError> {
        if let Some(&id) = self.lookup.get(name) {
            return Ok(id);
        }
        if !is_valid_name(name) {
            return Err(GraphError::BadName { name: name.to_string() });
        }
        let id = self.names.len() as u32;
        self.names.push(name.into());
        self.lookup.insert(name.into(), id);
        self.incident.push(Vec::new());
        Ok(id)
    }

    fn push_edge(&mut self, u: &str, v: &str) -> Result<(), GraphError> {
        if u == v {
            return Err(GraphError::SelfLoop { name: u.to_string() });
        }
        let ui = self.intern(u)?;
        let vi = self.intern(v)?;
        let e = self.edges.len() as u32;
        self.edges.push((ui, vi));
        self.incident[ui as usize].push(e);
        self.incident[vi as usize].push(e);
        Ok(())
    }

    pub fn vertex_count(&self) -> usize {
        self.names.len()
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    /// Vertex names in first-appearance order.
    pub fn vertices(&self) -> impl Iterator<Item = &str> {
        self.names.iter().map(|n| n.as_ref())
    }

    pub fn has_vertex(&self, name: &str) -> bool {
        self.lookup.contains_key(name)
    }

    /// Edges as `(index, u, v)` in insertion order.
    pub fn edges(&self) -> impl Iterator<Item = (usize, &str, &str)> {
        self.edges
            .iter()
            .enumerate()
            .map(|(i, &(u, v))| (i, self.names[u as usize].as_ref(), self.names[v as usize].as_ref()))
    }

    pub fn edge_endpoints(&self, index: usize) -> Option<(&str, &str)> {
        let &(u, v) = self.edges.get(index)?;
        Some((self.names[u as usize].as_ref(), self.names[v as usize].as_ref()))
    }

    pub fn edge_id(&self, index: usize) -> Option<EdgeId> {
        let (u, v) = self.edge_endpoints(index)?;
        Some(EdgeId { index, u: VertexId(u.into()), v: VertexId(v.into()) })
    }

    pub fn degree(&self, name: &str) -> Option<usize> {
        let &id = self.lookup.get(name)?;
        Some(self.incident[id as usize].len())
    }

    /// Indices of the edges incident to `name`, in insertion order.
    pub fn incident_edges(&self, name: &str) -> Option<&[u32]> {
        let &id = self.lookup.get(name)?;
        Some(&self.incident[id as usize])
    }

    pub(crate) fn vertex_index(&self, name: &str) -> Option<u32> {
        self.lookup.get(name).copied()
    }

    pub(crate) fn name_of(&self, id: u32) -> &str {
        self.names[id as usize].as_ref()
    }

    pub(crate) fn edge_raw(&self, index: usize) -> (u32, u32) {
        self.edges[index]
    }

    pub(crate) fn incident_raw(&self, id: u32) -> &[u32] {
        &self.incident[id as usize]
    }

    /// `true` when every vertex is reachable from every other. The empty
    /// graph counts as connected.
    pub fn is_connected(&self) -> bool {
        if self.names.is_empty() {
            return true;
        }
        let mut seen = vec![false; self.names.len()];
        let mut queue = vec![0u32];
        seen[0] = true;
        let mut reached = 1;
        while let Some(v) = queue.pop() {
            for &e in &self.incident[v as usize] {
                let (a, b) = self.edges[e as usize];
                let w = if a == v { b } else { a };
                if !seen[w as usize] {
                    seen[w as usize] = true;
                    reached += 1;
                    queue.push(w);
                }
            }
        }
        reached == self.names.len()
    }

    /// Parse the plain edge-list format: one `u v` pair per line, `#` starts
    /// a comment, blank lines are skipped.
    pub fn parse_edge_list(text: &str) -> Result<Multigraph, EdgeListError> {
        let mut g = Multigraph::from_edges(std::iter::empty()).expect("empty graph");
        for (lineno, raw) in text.lines().enumerate() {
            let line = match raw.find('#') {
                Some(pos) => &raw[..pos],
                None => raw,
            };
            let mut parts = line.split_whitespace();
            let Some(u) = parts.next() else { continue };
            let Some(v) = parts.next() else {
                return Err(EdgeListError {
                    line: lineno + 1,
                    message: "expected two vertex names".to_string(),
                });
            };
            if let Some(extra) = parts.next() {
                return Err(EdgeListError {
                    line: lineno + 1,
                    message: format!("unexpected trailing token {extra:?}"),
                });
            }
            g.push_edge(u, v)
                .map_err(|e| EdgeListError { line: lineno + 1, message: e.to_string() })?;
        }
        Ok(g)
    }

    /// The edge-list text: `u v` per line in edge order.
    pub fn to_edge_list(&self) -> String {
        let mut out = String::new();
        for (_, u, v) in self.edges() {
            out.push_str(u);
            out.push(' ');
            out.push_str(v);
            out.push('\n');
        }
        out
    }

    /// A Graphviz rendering. Names are quoted, so reserved words like `node`
    /// are safe as vertex names.
    pub fn to_dot(&self) -> String {
        let mut out = String::from("graph g {\n");
        for name in self.vertices() {
            out.push_str(&format!("  \"{name}\";\n"));
        }
        for (_, u, v) in self.edges() {
            out.push_str(&format!("  \"{u}\" -- \"{v}\";\n"));
        }
        out.push_str("}\n");
        out
    }
}

/// A rejected edge-list line (1-based) and why.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct EdgeListError {
    pub line: usize,
    pub message: String,
}

impl fmt::Display for EdgeListError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "line {}: {}", self.line, self.message)
    }
}

impl std::error::Error for EdgeListError {}

/// The multigraph a parse tree denotes: one edge per leaf, in leaf order
/// (left to right), with vertices appearing in the order the leaf scan first
/// mentions them.
pub fn realize(tree: &ParseTree) -> Multigraph {
    let mut g = Multigraph::from_edges(std::iter::empty()).expect("empty graph");
    for edge in tree.leaf_order() {
        g.push_edge(edge.u.as_str(), edge.v.as_str())
            .expect("parse trees realize to valid multigraphs");
    }
    g
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn name_validation() {
        assert!(is_valid_name("a"));
        assert!(is_valid_name("v_12"));
        assert!(is_valid_name("X9"));
        assert!(!is_valid_name(""));
        assert!(!is_valid_name("a-b"));
        assert!(!is_valid_name("a b"));
        assert!(!is_valid_name("é"));
    }

    #[test]
    fn builds_and_queries_a_triangle_with_a_parallel_edge() {
        let g = Multigraph::from_edges([("a", "b"), ("b", "c"), ("c", "a"), ("a", "b")]).unwrap();
        assert_eq!(g.vertex_count(), 3);
        assert_eq!(g.edge_count(), 4);
        assert_eq!(g.degree("a"), Some(3));
        assert_eq!(g.degree("b"), Some(3));
        assert_eq!(g.degree("d"), None);
        assert_eq!(g.edge_endpoints(3), Some(("a", "b")));
        assert!(g.is_connected());
        let verts: Vec<&str> = g.vertices().collect();
        assert_eq!(verts, ["a", "b", "c"]);
    }

    #[test]
    fn rejects_self_loops_and_bad_names() {
        assert_eq!(
            Multigraph::from_edges([("a", "a")]),
            Err(GraphError::SelfLoop { name: "a".to_string() })
        );
        assert_eq!(
            Multigraph::from_edges([("a", "b-c")]),
            Err(GraphError::BadName { name: "b-c".to_string() })
        );
    }

    #[test]
    fn edge_list_round_trip() {
        let text = "# a path with a doubled middle edge\na b\nb c # inline note\n\nb c\nc d\n";
        let g = Multigraph::parse_edge_list(text).unwrap();
        assert_eq!(g.edge_count(), 4);
        assert_eq!(g.to_edge_list(), "a b\nb c\nb c\nc d\n");
        let again = Multigraph::parse_edge_list(&g.to_edge_list()).unwrap();
        assert_eq!(again, g);
    }

    #[test]
    fn edge_list_errors_carry_line_numbers() {
        let err = Multigraph::parse_edge_list("a b\nc\n").unwrap_err();
        assert_eq!(err.line, 2);
        let err = Multigraph::parse_edge_list("a b\nc d e\n").unwrap_err();
        assert_eq!(err.line, 2);
        let err = Multigraph::parse_edge_list("a b\n\nx x\n").unwrap_err();
        assert_eq!(err.line, 3);
        assert!(err.message.contains("self-loop"));
    }

    #[test]
    fn dot_output_quotes_names() {
        let g = Multigraph::from_edges([("node", "graph")]).unwrap();
        let dot = g.to_dot();
        assert!(dot.starts_with("graph g {"));
        assert!(dot.contains("\"node\" -- \"graph\";"));
    }

    #[test]
    fn disconnected_graph_detected() {
        let g = Multigraph::from_edges([("a", "b"), ("c", "d")]).unwrap();
        assert!(!g.is_connected());
    }

    #[test]
    fn element_order_is_vertices_by_name_then_edges_by_index() {
        let v = |n: &str| Element::Vertex(VertexId::new(n).unwrap());
        let e = |i: usize| {
            Element::Edge(EdgeId { index: i, u: VertexId::new("z").unwrap(), v: VertexId::new("z2").unwrap() })
        };
        let mut elems = vec![e(1), v("b"), e(0), v("a")];
        elems.sort();
        assert_eq!(elems, vec![v("a"), v("b"), e(0), e(1)]);
    }
}
