//! Python bindings: `Tree`, `Graph`, and `Solution`, plus module-level
//! `parse` and `generate`. Domain errors surface as `ValueError`.

use num_bigint::BigUint;
use pyo3::exceptions::PyValueError;
use pyo3::prelude::*;

use gspmixdom::{oracle, Element, GenWeights, Multigraph, ParseTree, VertexId};

/// An expression over `e(u,v)` leaves and `s`/`p`/`g` compositions.
#[pyclass(frozen)]
struct Tree {
    inner: ParseTree,
}

impl Tree {
    fn wrap(inner: ParseTree) -> Tree {
        Tree { inner }
    }
}

#[pymethods]
impl Tree {
    /// A single edge between two named terminals.
    #[staticmethod]
    fn leaf(u: &str, v: &str) -> PyResult<Tree> {
        ParseTree::leaf(u, v).map(Tree::wrap).map_err(value_error)
    }

    /// Parse expression text like "s(e(a,b),e(b,c))".
    #[staticmethod]
    fn parse(text: &str) -> PyResult<Tree> {
        gspmixdom::parse_expr(text).map(Tree::wrap).map_err(value_error)
    }

    fn series(&self, right: &Tree) -> PyResult<Tree> {
        self.inner.clone().series(right.inner.clone()).map(Tree::wrap).map_err(value_error)
    }

    fn parallel(&self, right: &Tree) -> PyResult<Tree> {
        self.inner.clone().parallel(right.inner.clone()).map(Tree::wrap).map_err(value_error)
    }

    fn gseries(&self, right: &Tree) -> PyResult<Tree> {
        self.inner.clone().gseries(right.inner.clone()).map(Tree::wrap).map_err(value_error)
    }

    fn format(&self) -> String {
        gspmixdom::format_expr(&self.inner)
    }

    fn terminals(&self) -> (String, String) {
        let (s, t) = self.inner.terminals();
        (s.to_string(), t.to_string())
    }

    fn leaf_count(&self) -> usize {
        self.inner.leaf_count()
    }

    /// Minimum size, exact count of minimum sets, and one witness.
    fn solve(&self) -> Solution {
        Solution::from_core(gspmixdom::solve(&self.inner))
    }

    /// Minimum size only, skipping the (potentially huge) count.
    fn solve_value(&self) -> u64 {
        gspmixdom::solve_value(&self.inner).0
    }

    /// The multigraph this expression denotes.
    fn realize(&self) -> Graph {
        Graph { inner: gspmixdom::realize(&self.inner) }
    }

    fn __eq__(&self, other: &Tree) -> bool {
        self.inner == other.inner
    }

    fn __str__(&self) -> String {
        self.format()
    }

    fn __repr__(&self) -> String {
        format!("Tree.parse({:?})", self.format())
    }
}

/// A loop-free undirected multigraph with named vertices.
#[pyclass(frozen)]
struct Graph {
    inner: Multigraph,
}

#[pymethods]
impl Graph {
    #[new]
    fn new(edges: Vec<(String, String)>) -> PyResult<Graph> {
        Multigraph::from_edges(edges.iter().map(|(u, v)| (u.as_str(), v.as_str())))
            .map(|inner| Graph { inner })
            .map_err(value_error)
    }

    /// Parse "u v" lines; '#' starts a comment.
    #[staticmethod]
    fn from_edge_list(text: &str) -> PyResult<Graph> {
        Multigraph::parse_edge_list(text).map(|inner| Graph { inner }).map_err(value_error)
    }

    fn vertices(&self) -> Vec<String> {
        self.inner.vertices().map(str::to_string).collect()
    }

    /// Edges as (index, u, v) triples in input order.
    fn edges(&self) -> Vec<(usize, String, String)> {
        self.inner.edges().map(|(i, u, v)| (i, u.to_string(), v.to_string())).collect()
    }

    fn vertex_count(&self) -> usize {
        self.inner.vertex_count()
    }

    fn edge_count(&self) -> usize {
        self.inner.edge_count()
    }

    fn degree(&self, name: &str) -> PyResult<usize> {
        self.inner
            .degree(name)
            .ok_or_else(|| PyValueError::new_err(format!("unknown vertex {name:?}")))
    }

    fn edge_list(&self) -> String {
        self.inner.to_edge_list()
    }

    fn dot(&self) -> String {
        self.inner.to_dot()
    }

    fn is_connected(&self) -> bool {
        self.inner.is_connected()
    }

    /// Exhaustive minimum search; guarded against large inputs unless forced.
    #[pyo3(signature = (force = false))]
    fn brute_force(&self, force: bool) -> PyResult<Solution> {
        oracle::brute_force(&self.inner, force).map(Solution::from_core).map_err(value_error)
    }

    /// Is the set given as vertex names plus edge indices mixed dominating?
    fn is_mixed_dominating(&self, vertices: Vec<String>, edges: Vec<usize>) -> PyResult<bool> {
        let set = self.build_set(&vertices, &edges)?;
        oracle::is_mixed_dominating(&self.inner, &set).map_err(value_error)
    }

    /// Recover an expression for this graph with the given terminals.
    fn decompose(&self, s: &str, t: &str) -> PyResult<Tree> {
        gspmixdom::decompose(&self.inner, s, t).map(Tree::wrap).map_err(value_error)
    }

    fn __repr__(&self) -> String {
        format!("<Graph: {} vertices, {} edges>", self.vertex_count(), self.edge_count())
    }
}

impl Graph {
    fn build_set(&self, vertices: &[String], edges: &[usize]) -> PyResult<Vec<Element>> {
        let mut set = Vec::with_capacity(vertices.len() + edges.len());
        for name in vertices {
            match VertexId::new(name) {
                Some(v) if self.inner.has_vertex(name) => set.push(Element::Vertex(v)),
                _ => return Err(PyValueError::new_err(format!("unknown vertex {name:?}"))),
            }
        }
        for &index in edges {
            let id = self
                .inner
                .edge_id(index)
                .ok_or_else(|| PyValueError::new_err(format!("no edge with index {index}")))?;
            set.push(Element::Edge(id));
        }
        Ok(set)
    }
}

/// The answer for one instance: size, count, and a witness split into
/// vertex names and (index, u, v) edge triples.
#[pyclass(frozen, get_all)]
struct Solution {
    gamma_m: u64,
    count: BigUint,
    witness_vertices: Vec<String>,
    witness_edges: Vec<(usize, String, String)>,
}

impl Solution {
    fn from_core(sol: gspmixdom::Solution) -> Solution {
        let mut witness_vertices = Vec::new();
        let mut witness_edges = Vec::new();
        for element in &sol.witness {
            match element {
                Element::Vertex(v) => witness_vertices.push(v.as_str().to_string()),
                Element::Edge(e) => {
                    witness_edges.push((e.index, e.u.to_string(), e.v.to_string()))
                }
            }
        }
        Solution {
            gamma_m: sol.gamma_m,
            count: sol.count.to_biguint(),
            witness_vertices,
            witness_edges,
        }
    }
}

#[pymethods]
impl Solution {
    fn __repr__(&self) -> String {
        format!(
            "<Solution: gamma_m={}, count={}, witness={} vertices + {} edges>",
            self.gamma_m,
            self.count,
            self.witness_vertices.len(),
            self.witness_edges.len()
        )
    }
}

/// Parse expression text; alias for `Tree.parse`.
#[pyfunction]
fn parse(text: &str) -> PyResult<Tree> {
    Tree::parse(text)
}

/// A pseudorandom tree: pure in (seed, leaves, weights).
#[pyfunction]
#[pyo3(signature = (seed, leaves, weights = (1.0, 1.0, 1.0)))]
fn generate(seed: u64, leaves: usize, weights: (f64, f64, f64)) -> PyResult<Tree> {
    let (series, parallel, gseries) = weights;
    gspmixdom::generate(seed, leaves, &GenWeights { series, parallel, gseries })
        .map(Tree::wrap)
        .map_err(value_error)
}

fn value_error(e: impl std::fmt::Display) -> PyErr {
    PyValueError::new_err(e.to_string())
}

#[pymodule]
fn gspmixdom_py(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_class::<Tree>()?;
    m.add_class::<Graph>()?;
    m.add_class::<Solution>()?;
    m.add_function(wrap_pyfunction!(parse, m)?)?;
    m.add_function(wrap_pyfunction!(generate, m)?)?;
    Ok(())
}
