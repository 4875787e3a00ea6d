//! Recover an assembly plan from a bare multigraph.
//!
//! Phase one shrinks a working copy of the graph with three moves, recording
//! a recipe as it goes:
//!
//! * **parallel** — two edges between the same pair of vertices merge;
//! * **series** — a non-terminal vertex with exactly two edges to two
//!   distinct neighbors is contracted;
//! * **pendant** — a non-terminal vertex with exactly one edge is cut off,
//!   and the cut piece is queued as "hangs at that vertex" for later.
//!
//! Moves are tried in that order of preference, lowest vertex (by name) or
//! lowest edge pair first, so the result is deterministic. A graph that gets
//! stuck before reaching a single `s`–`t` edge is not series-parallel in the
//! generalized sense, and that is reported rather than guessed around.
//!
//! Phase two replays the recipe bottom-up. The requested terminal pair
//! fixes every orientation: a series piece splits at its middle vertex, a
//! parallel piece passes the pair through. Queued pendant pieces wait for
//! the first constructed subtree whose *second* terminal is their
//! attachment vertex — the only place a generalized-series composition can
//! take them — and chain on there in cut order. A pendant whose vertex
//! never surfaces as a second terminal makes the requested orientation
//! unrealizable, which again is an error: some graphs decompose for `(s, t)`
//! but not `(t, s)`.

use std::collections::{BTreeMap, BTreeSet, HashMap, VecDeque};
use std::fmt;

use crate::graph::Multigraph;
use crate::tree::{Op, ParseTree};

#[derive(Clone, PartialEq, Eq, Debug)]
pub enum DecomposeError {
    EmptyGraph,
    UnknownTerminal(String),
    EqualTerminals,
    Disconnected,
    /// The graph is not generalized series-parallel for these terminals.
    NotReducible,
}

impl fmt::Display for DecomposeError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            DecomposeError::EmptyGraph => write!(f, "the graph has no edges"),
            DecomposeError::UnknownTerminal(name) => {
                write!(f, "terminal {name:?} is not a vertex of the graph")
            }
            DecomposeError::EqualTerminals => write!(f, "the two terminals must differ"),
            DecomposeError::Disconnected => write!(f, "the graph is not connected"),
            DecomposeError::NotReducible => {
                write!(f, "the graph is not generalized series-parallel for these terminals")
            }
        }
    }
}

impl std::error::Error for DecomposeError {}

struct Piece {
    /// The pair of vertices this piece spans (in no particular order).
    ends: (u32, u32),
    kind: PieceKind,
}

enum PieceKind {
    /// One original edge.
    Edge,
    /// `a` spans `{ends.0, mid}`, `b` spans `{mid, ends.1}`.
    Series { mid: u32, a: usize, b: usize },
    Parallel { a: usize, b: usize },
}

struct Reducer {
    rank: Vec<u32>,
    by_rank: Vec<u32>,
    s: u32,
    t: u32,
    /// Work edges: endpoints and the piece each one stands for.
    edges: Vec<Option<(u32, u32, usize)>>,
    adj: Vec<BTreeMap<u32, BTreeSet<usize>>>,
    deg: Vec<usize>,
    live: usize,
    pieces: Vec<Piece>,
    /// Ranked vertex pairs currently joined by two or more work edges.
    par: BTreeSet<(u32, u32)>,
    /// Ranks of non-terminal vertices with exactly two edges to two
    /// distinct neighbors.
    ser: BTreeSet<u32>,
    /// Ranks of non-terminal vertices with exactly one edge.
    pend: BTreeSet<u32>,
    /// Cut-off pendant pieces, in cut order: (attachment vertex, piece, tip).
    events: Vec<(u32, usize, u32)>,
}

impl Reducer {
    fn new(g: &Multigraph, s: u32, t: u32) -> Reducer {
        let n = g.vertex_count();
        let mut by_rank: Vec<u32> = (0..n as u32).collect();
        by_rank.sort_by_key(|&v| g.name_of(v));
        let mut rank = vec![0u32; n];
        for (r, &v) in by_rank.iter().enumerate() {
            rank[v as usize] = r as u32;
        }
        let mut red = Reducer {
            rank,
            by_rank,
            s,
            t,
            edges: Vec::with_capacity(g.edge_count()),
            adj: vec![BTreeMap::new(); n],
            deg: vec![0; n],
            live: 0,
            pieces: Vec::with_capacity(2 * g.edge_count()),
            par: BTreeSet::new(),
            ser: BTreeSet::new(),
            pend: BTreeSet::new(),
            events: Vec::new(),
        };
        for i in 0..g.edge_count() {
            let (u, v) = g.edge_raw(i);
            let piece = red.pieces.len();
            red.pieces.push(Piece { ends: (u, v), kind: PieceKind::Edge });
            red.add_edge(u, v, piece);
        }
        for v in 0..n as u32 {
            red.refresh_vertex(v);
        }
        let pairs: Vec<(u32, u32)> = (0..n as u32)
            .flat_map(|v| red.adj[v as usize].keys().filter(move |&&w| w > v).map(move |&w| (v, w)))
            .collect();
        for (v, w) in pairs {
            red.refresh_pair(v, w);
        }
        red
    }

    fn add_edge(&mut self, a: u32, b: u32, piece: usize) -> usize {
        let id = self.edges.len();
        self.edges.push(Some((a, b, piece)));
        self.adj[a as usize].entry(b).or_default().insert(id);
        self.adj[b as usize].entry(a).or_default().insert(id);
        self.deg[a as usize] += 1;
        self.deg[b as usize] += 1;
        self.live += 1;
        id
    }

    fn remove_edge(&mut self, id: usize) -> (u32, u32, usize) {
        let (a, b, piece) = self.edges[id].take().expect("edge is live");
        for (x, y) in [(a, b), (b, a)] {
            let set = self.adj[x as usize].get_mut(&y).expect("adjacency present");
            set.remove(&id);
            if set.is_empty() {
                self.adj[x as usize].remove(&y);
            }
            self.deg[x as usize] -= 1;
        }
        self.live -= 1;
        (a, b, piece)
    }

    fn refresh_vertex(&mut self, v: u32) {
        let r = self.rank[v as usize];
        self.ser.remove(&r);
        self.pend.remove(&r);
        if v == self.s || v == self.t {
            return;
        }
        match self.deg[v as usize] {
            1 => {
                self.pend.insert(r);
            }
            2 if self.adj[v as usize].len() == 2 => {
                self.ser.insert(r);
            }
            _ => {}
        }
    }

    fn refresh_pair(&mut self, a: u32, b: u32) {
        let (ra, rb) = (self.rank[a as usize], self.rank[b as usize]);
        let key = (ra.min(rb), ra.max(rb));
        let parallel = self.adj[a as usize].get(&b).is_some_and(|set| set.len() >= 2);
        if parallel {
            self.par.insert(key);
        } else {
            self.par.remove(&key);
        }
    }

    /// Apply the preferred available move; false when stuck.
    fn step(&mut self) -> bool {
        if let Some(&(ra, rb)) = self.par.iter().next() {
            let (a, b) = (self.by_rank[ra as usize], self.by_rank[rb as usize]);
            let mut ids = self.adj[a as usize][&b].iter().copied();
            let (e1, e2) = (ids.next().expect("two edges"), ids.next().expect("two edges"));
            let (.., p1) = self.remove_edge(e1);
            let (.., p2) = self.remove_edge(e2);
            let piece = self.pieces.len();
            self.pieces.push(Piece { ends: (a, b), kind: PieceKind::Parallel { a: p1, b: p2 } });
            self.add_edge(a, b, piece);
            self.refresh_vertex(a);
            self.refresh_vertex(b);
            self.refresh_pair(a, b);
            return true;
        }
        if let Some(&rm) = self.ser.iter().next() {
            let m = self.by_rank[rm as usize];
            let mut nbrs = self.adj[m as usize].iter().map(|(&w, set)| {
                (w, *set.iter().next().expect("one edge per neighbor"))
            });
            let ((x, ex), (y, ey)) = (nbrs.next().expect("two neighbors"), nbrs.next().expect("two neighbors"));
            drop(nbrs);
            let (.., px) = self.remove_edge(ex);
            let (.., py) = self.remove_edge(ey);
            let piece = self.pieces.len();
            self.pieces.push(Piece { ends: (x, y), kind: PieceKind::Series { mid: m, a: px, b: py } });
            self.add_edge(x, y, piece);
            self.refresh_vertex(m);
            self.refresh_vertex(x);
            self.refresh_vertex(y);
            self.refresh_pair(x, m);
            self.refresh_pair(m, y);
            self.refresh_pair(x, y);
            return true;
        }
        if let Some(&rz) = self.pend.iter().next() {
            let z = self.by_rank[rz as usize];
            let (&at, set) = self.adj[z as usize].iter().next().expect("one neighbor");
            let id = *set.iter().next().expect("one edge");
            let (.., piece) = self.remove_edge(id);
            self.events.push((at, piece, z));
            self.refresh_vertex(z);
            self.refresh_vertex(at);
            self.refresh_pair(z, at);
            return true;
        }
        false
    }
}

enum Task {
    Build { piece: usize, u: u32, v: u32 },
    Combine { op: Op },
    /// A subtree with second terminal `v` was just finished: hang the next
    /// queued pendant piece for `v`, if any.
    Hang { v: u32 },
}

/// Recover an assembly plan for `g` with terminals `(s, t)`, or report why
/// none exists. The plan realizes exactly `g`'s edges, though generally in
/// a different edge order.
pub fn decompose(g: &Multigraph, s: &str, t: &str) -> Result<ParseTree, DecomposeError> {
    if g.edge_count() == 0 {
        return Err(DecomposeError::EmptyGraph);
    }
    let si = g.vertex_index(s).ok_or_else(|| DecomposeError::UnknownTerminal(s.to_string()))?;
    let ti = g.vertex_index(t).ok_or_else(|| DecomposeError::UnknownTerminal(t.to_string()))?;
    if si == ti {
        return Err(DecomposeError::EqualTerminals);
    }
    if !g.is_connected() {
        return Err(DecomposeError::Disconnected);
    }

    let mut red = Reducer::new(g, si, ti);
    while red.live > 1 {
        if !red.step() {
            return Err(DecomposeError::NotReducible);
        }
    }
    let (a, b, main) = red
        .edges
        .iter()
        .rev()
        .find_map(|e| *e)
        .expect("one live edge remains");
    if (a, b) != (si, ti) && (a, b) != (ti, si) {
        return Err(DecomposeError::NotReducible);
    }

    let mut groups: HashMap<u32, VecDeque<(usize, u32)>> = HashMap::new();
    for &(at, piece, far) in &red.events {
        groups.entry(at).or_default().push_back((piece, far));
    }

    let name = |v: u32| g.name_of(v);
    let mut tasks = vec![Task::Build { piece: main, u: si, v: ti }];
    let mut results: Vec<ParseTree> = Vec::new();
    while let Some(task) = tasks.pop() {
        match task {
            Task::Build { piece, u, v } => {
                tasks.push(Task::Hang { v });
                let p = &red.pieces[piece];
                debug_assert!((u, v) == p.ends || (v, u) == p.ends);
                match p.kind {
                    PieceKind::Edge => {
                        let leaf = ParseTree::leaf(name(u), name(v)).expect("graph names are valid");
                        results.push(leaf);
                    }
                    PieceKind::Parallel { a, b } => {
                        tasks.push(Task::Combine { op: Op::Parallel });
                        tasks.push(Task::Build { piece: b, u, v });
                        tasks.push(Task::Build { piece: a, u, v });
                    }
                    PieceKind::Series { mid, a, b } => {
                        let (left, right) = if u == p.ends.0 { (a, b) } else { (b, a) };
                        tasks.push(Task::Combine { op: Op::Series });
                        tasks.push(Task::Build { piece: right, u: mid, v });
                        tasks.push(Task::Build { piece: left, u, v: mid });
                    }
                }
            }
            Task::Combine { op } => {
                let right = results.pop().expect("two built subtrees");
                let left = results.pop().expect("two built subtrees");
                let combined = match op {
                    Op::Series => left.series(right),
                    Op::Parallel => left.parallel(right),
                    Op::GSeries => left.gseries(right),
                };
                results.push(combined.expect("recipe composes cleanly"));
            }
            Task::Hang { v } => {
                if let Some((piece, far)) = groups.get_mut(&v).and_then(VecDeque::pop_front) {
                    tasks.push(Task::Hang { v });
                    tasks.push(Task::Combine { op: Op::GSeries });
                    tasks.push(Task::Build { piece, u: v, v: far });
                }
            }
        }
    }
    if groups.values().any(|q| !q.is_empty()) {
        return Err(DecomposeError::NotReducible);
    }
    let tree = results.pop().expect("one assembled tree");
    debug_assert!(results.is_empty());
    debug_assert_eq!(tree.terminals(), (s, t));
    debug_assert_eq!(tree.leaf_count(), g.edge_count());
    Ok(tree)
}
