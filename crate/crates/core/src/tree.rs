//! Parse trees describing how a two-terminal graph is assembled from edges.
//!
//! A tree's leaves are single edges; inner nodes glue two pieces together:
//!
//! * **series** — the left piece's second terminal is identified with the
//!   right piece's first; that shared vertex becomes interior, and the result
//!   runs from the left's first terminal to the right's second.
//! * **parallel** — both pieces share both terminals, in the same order.
//! * **gseries** (generalized series) — the right piece hangs off the left
//!   piece's second terminal; the right piece's far terminal becomes an
//!   interior vertex and the left piece's terminals survive.
//!
//! Vertices are identified *by name*: the two pieces of a composition must
//! already agree on the names they share, and may share nothing beyond the
//! identified terminals.
//!
//! Trees are stored as flat arenas with children preceding parents, so every
//! traversal here is an explicit loop — trees hundreds of thousands of nodes
//! deep are routine and must not touch the call stack.

use std::collections::{HashMap, HashSet};
use std::fmt;

use crate::graph::{is_valid_name, EdgeId, VertexId};

pub(crate) type NameId = u32;
pub(crate) type NodeId = u32;

#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub(crate) enum Op {
    Series,
    Parallel,
    GSeries,
}

#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub(crate) enum Node {
    Leaf { u: NameId, v: NameId },
    Inner { op: Op, left: NodeId, right: NodeId, s: NameId, t: NameId },
}

#[derive(Clone, PartialEq, Eq, Debug)]
pub enum TreeError {
    BadName { name: String },
    /// An edge or a composition would make the two terminals the same vertex.
    SelfLoop { name: String },
    /// The terminals that a composition must identify have different names.
    TerminalMismatch { expected: String, found: String },
    /// A vertex name occurs in both pieces without being a shared terminal.
    NameCollision { name: String },
}

impl fmt::Display for TreeError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            TreeError::BadName { name } => {
                write!(f, "invalid vertex name {name:?} (use letters, digits, underscores)")
            }
            TreeError::SelfLoop { name } => write!(f, "terminals coincide at {name:?}"),
            TreeError::TerminalMismatch { expected, found } => {
                write!(f, "terminals do not match: expected {expected:?}, found {found:?}")
            }
            TreeError::NameCollision { name } => {
                write!(f, "vertex {name:?} appears on both sides but is not a shared terminal")
            }
        }
    }
}

impl std::error::Error for TreeError {}

/// An assembly plan for a two-terminal multigraph.
#[derive(Clone, Debug)]
pub struct ParseTree {
    names: Vec<Box<str>>,
    lookup: HashMap<Box<str>, NameId>,
    nodes: Vec<Node>,
    root: NodeId,
    leaves: usize,
}

impl ParseTree {
    /// A single edge between two distinct named vertices; the endpoints are
    /// its terminals, in order.
    pub fn leaf(u: &str, v: &str) -> Result<ParseTree, TreeError> {
        for name in [u, v] {
            if !is_valid_name(name) {
                return Err(TreeError::BadName { name: name.to_string() });
            }
        }
        if u == v {
            return Err(TreeError::SelfLoop { name: u.to_string() });
        }
        let names: Vec<Box<str>> = vec![u.into(), v.into()];
        let lookup = names.iter().enumerate().map(|(i, n)| (n.clone(), i as NameId)).collect();
        Ok(ParseTree { names, lookup, nodes: vec![Node::Leaf { u: 0, v: 1 }], root: 0, leaves: 1 })
    }

    /// Glue end to end: `self`'s second terminal must be named like
    /// `right`'s first; the result runs from `self`'s first terminal to
    /// `right`'s second, and the shared vertex becomes interior.
    pub fn series(self, right: ParseTree) -> Result<ParseTree, TreeError> {
        compose(self, right, Op::Series)
    }

    /// Glue side by side: both pieces must have identically named terminal
    /// pairs, which remain the terminals.
    pub fn parallel(self, right: ParseTree) -> Result<ParseTree, TreeError> {
        compose(self, right, Op::Parallel)
    }

    /// Hang `right` off `self`'s second terminal: `right`'s first terminal
    /// must be named like it; `right`'s second terminal becomes interior and
    /// `self` keeps both its terminals.
    pub fn gseries(self, right: ParseTree) -> Result<ParseTree, TreeError> {
        compose(self, right, Op::GSeries)
    }

    /// Terminal names, in order.
    pub fn terminals(&self) -> (&str, &str) {
        let (s, t) = self.node_terminals(self.root);
        (self.name(s), self.name(t))
    }

    pub fn leaf_count(&self) -> usize {
        self.leaves
    }

    /// The edges this tree assembles, left to right. The position in this
    /// sequence is the edge's index in the realized graph.
    pub fn leaf_order(&self) -> Vec<EdgeId> {
        let mut out = Vec::with_capacity(self.leaves);
        let mut stack = vec![self.root];
        while let Some(id) = stack.pop() {
            match self.nodes[id as usize] {
                Node::Leaf { u, v } => out.push(EdgeId {
                    index: out.len(),
                    u: VertexId::new(self.name(u)).expect("stored names are valid"),
                    v: VertexId::new(self.name(v)).expect("stored names are valid"),
                }),
                Node::Inner { left, right, .. } => {
                    stack.push(right);
                    stack.push(left);
                }
            }
        }
        out
    }

    pub(crate) fn name(&self, id: NameId) -> &str {
        &self.names[id as usize]
    }

    pub(crate) fn node(&self, id: NodeId) -> Node {
        self.nodes[id as usize]
    }

    pub(crate) fn node_count(&self) -> usize {
        self.nodes.len()
    }

    pub(crate) fn root_id(&self) -> NodeId {
        self.root
    }

    pub(crate) fn node_terminals(&self, id: NodeId) -> (NameId, NameId) {
        match self.nodes[id as usize] {
            Node::Leaf { u, v } => (u, v),
            Node::Inner { s, t, .. } => (s, t),
        }
    }

    /// Node id -> position of that leaf in [`Self::leaf_order`] (unset for
    /// inner nodes).
    pub(crate) fn leaf_index_map(&self) -> Vec<u32> {
        let mut map = vec![u32::MAX; self.nodes.len()];
        let mut next = 0u32;
        let mut stack = vec![self.root];
        while let Some(id) = stack.pop() {
            match self.nodes[id as usize] {
                Node::Leaf { .. } => {
                    map[id as usize] = next;
                    next += 1;
                }
                Node::Inner { left, right, .. } => {
                    stack.push(right);
                    stack.push(left);
                }
            }
        }
        map
    }

    /// Assemble a tree directly from arena parts. The caller vouches for
    /// structural validity; debug builds re-check everything.
    pub(crate) fn from_raw_parts(
        names: Vec<Box<str>>,
        nodes: Vec<Node>,
        root: NodeId,
        leaves: usize,
    ) -> ParseTree {
        let lookup = names.iter().enumerate().map(|(i, n)| (n.clone(), i as NameId)).collect();
        let tree = ParseTree { names, lookup, nodes, root, leaves };
        debug_assert_eq!(tree.validate(), Ok(()));
        tree
    }

    /// Full structural check: arena shape, composition rules, and name
    /// disjointness. Everything the public constructors enforce.
    pub(crate) fn validate(&self) -> Result<(), String> {
        if self.nodes.is_empty() {
            return Err("empty arena".to_string());
        }
        if self.root as usize >= self.nodes.len() {
            return Err("root out of range".to_string());
        }
        for (i, name) in self.names.iter().enumerate() {
            if !is_valid_name(name) {
                return Err(format!("invalid name {name:?}"));
            }
            if self.lookup.get(name) != Some(&(i as NameId)) {
                return Err(format!("lookup inconsistent for {name:?}"));
            }
        }
        let mut usage = vec![0u32; self.nodes.len()];
        let mut leaves_seen = 0usize;
        // One name set per node, merged smaller-into-larger bottom-up.
        let mut name_sets: Vec<Option<HashSet<NameId>>> = vec![None; self.nodes.len()];
        for (id, node) in self.nodes.iter().enumerate() {
            match *node {
                Node::Leaf { u, v } => {
                    if u == v {
                        return Err(format!("leaf {id} is a self-loop"));
                    }
                    if u as usize >= self.names.len() || v as usize >= self.names.len() {
                        return Err(format!("leaf {id} names out of range"));
                    }
                    leaves_seen += 1;
                    name_sets[id] = Some(HashSet::from([u, v]));
                }
                Node::Inner { op, left, right, s, t } => {
                    if left as usize >= id || right as usize >= id {
                        return Err(format!("node {id} has a child not preceding it"));
                    }
                    usage[left as usize] += 1;
                    usage[right as usize] += 1;
                    let (ls, lt) = self.node_terminals(left);
                    let (rs, rt) = self.node_terminals(right);
                    let (want_s, want_t, shared) = match op {
                        Op::Series => {
                            if lt != rs {
                                return Err(format!("series node {id}: terminals disagree"));
                            }
                            if ls == rt {
                                return Err(format!("series node {id}: terminals coincide"));
                            }
                            (ls, rt, [lt, lt])
                        }
                        Op::Parallel => {
                            if ls != rs || lt != rt {
                                return Err(format!("parallel node {id}: terminals disagree"));
                            }
                            (ls, lt, [ls, lt])
                        }
                        Op::GSeries => {
                            if lt != rs {
                                return Err(format!("gseries node {id}: terminals disagree"));
                            }
                            (ls, lt, [lt, lt])
                        }
                    };
                    if (s, t) != (want_s, want_t) {
                        return Err(format!("node {id} caches wrong terminals"));
                    }
                    let a = name_sets[left as usize].take().expect("child set present");
                    let b = name_sets[right as usize].take().expect("child set present");
                    let (mut big, small) = if a.len() >= b.len() { (a, b) } else { (b, a) };
                    for x in small {
                        if big.contains(&x) && !shared.contains(&x) {
                            return Err(format!(
                                "node {id}: vertex {:?} shared beyond the identified terminals",
                                self.name(x)
                            ));
                        }
                        big.insert(x);
                    }
                    name_sets[id] = Some(big);
                }
            }
        }
        for (id, &n) in usage.iter().enumerate() {
            let expected = if id as NodeId == self.root { 0 } else { 1 };
            if n != expected {
                return Err(format!("node {id} referenced {n} times (expected {expected})"));
            }
        }
        if leaves_seen != self.leaves {
            return Err(format!("leaf count {} recorded, {leaves_seen} found", self.leaves));
        }
        Ok(())
    }
}

/// Structural equality: same shape, same operations, same names.
impl PartialEq for ParseTree {
    fn eq(&self, other: &Self) -> bool {
        if self.nodes.len() != other.nodes.len() || self.leaves != other.leaves {
            return false;
        }
        let mut stack = vec![(self.root, other.root)];
        while let Some((a, b)) = stack.pop() {
            match (self.nodes[a as usize], other.nodes[b as usize]) {
                (Node::Leaf { u, v }, Node::Leaf { u: u2, v: v2 }) => {
                    if self.name(u) != other.name(u2) || self.name(v) != other.name(v2) {
                        return false;
                    }
                }
                (
                    Node::Inner { op, left, right, .. },
                    Node::Inner { op: op2, left: left2, right: right2, .. },
                ) => {
                    if op != op2 {
                        return false;
                    }
                    stack.push((right, right2));
                    stack.push((left, left2));
                }
                _ => return false,
            }
        }
        true
    }
}

impl Eq for ParseTree {}

fn compose(left: ParseTree, right: ParseTree, op: Op) -> Result<ParseTree, TreeError> {
    let (ls, lt) = {
        let (a, b) = left.terminals();
        (a.to_string(), b.to_string())
    };
    let (rs, rt) = {
        let (a, b) = right.terminals();
        (a.to_string(), b.to_string())
    };
    match op {
        Op::Series | Op::GSeries => {
            if lt != rs {
                return Err(TreeError::TerminalMismatch { expected: lt, found: rs });
            }
            if op == Op::Series && ls == rt {
                return Err(TreeError::SelfLoop { name: ls });
            }
        }
        Op::Parallel => {
            if ls != rs {
                return Err(TreeError::TerminalMismatch { expected: ls, found: rs });
            }
            if lt != rt {
                return Err(TreeError::TerminalMismatch { expected: lt, found: rt });
            }
        }
    }
    let shared: &[&str] = match op {
        Op::Series | Op::GSeries => &[&lt],
        Op::Parallel => &[&ls, &lt],
    };

    // Merge the smaller arena into the larger one, so long chains built by
    // repeated composition cost O(n log n) overall rather than O(n^2).
    let guest_is_left = left.nodes.len() < right.nodes.len();
    let (mut host, guest) = if guest_is_left { (right, left) } else { (left, right) };
    let host_root = host.root;

    let mut name_map = Vec::with_capacity(guest.names.len());
    for name in &guest.names {
        match host.lookup.get(name) {
            Some(&id) => {
                if !shared.contains(&name.as_ref()) {
                    return Err(TreeError::NameCollision { name: name.to_string() });
                }
                name_map.push(id);
            }
            None => {
                let id = host.names.len() as NameId;
                host.names.push(name.clone());
                host.lookup.insert(name.clone(), id);
                name_map.push(id);
            }
        }
    }
    let offset = host.nodes.len() as NodeId;
    for node in &guest.nodes {
        host.nodes.push(match *node {
            Node::Leaf { u, v } => {
                Node::Leaf { u: name_map[u as usize], v: name_map[v as usize] }
            }
            Node::Inner { op, left, right, s, t } => Node::Inner {
                op,
                left: left + offset,
                right: right + offset,
                s: name_map[s as usize],
                t: name_map[t as usize],
            },
        });
    }
    let guest_root = guest.root + offset;
    let (left_root, right_root) =
        if guest_is_left { (guest_root, host_root) } else { (host_root, guest_root) };

    let id_of = |host: &ParseTree, name: &str| {
        host.lookup.get(name).copied().expect("terminal names are interned")
    };
    let (s, t) = match op {
        Op::Series => (id_of(&host, &ls), id_of(&host, &rt)),
        Op::Parallel | Op::GSeries => (id_of(&host, &ls), id_of(&host, &lt)),
    };
    host.nodes.push(Node::Inner { op, left: left_root, right: right_root, s, t });
    host.root = host.nodes.len() as NodeId - 1;
    host.leaves += guest.leaves;
    Ok(host)
}
