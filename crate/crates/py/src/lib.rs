//! Python bindings. Certificates and verdicts cross the boundary as the
//! same JSON-shaped dicts the command line writes.

use std::collections::BTreeSet;

use minorkit_core::coloring::{self, Color, ListAssignment};
use minorkit_core::format::{self, Format};
use minorkit_core::linkage::{self, ExpressMode, LinkageSpec, Path};
use minorkit_core::minors::{self, Model};
use minorkit_core::{constructions, generate, woven, Vertex, DEFAULT_BUDGET};
use pyo3::exceptions::PyValueError;
use pyo3::prelude::*;
use pyo3::types::PyDict;
use serde::de::DeserializeOwned;
use serde::Serialize;

fn err(e: minorkit_core::Error) -> PyErr {
    PyValueError::new_err(e.to_string())
}

fn to_py<T: Serialize>(py: Python<'_>, value: &T) -> PyResult<PyObject> {
    let text = serde_json::to_string(value).map_err(|e| PyValueError::new_err(e.to_string()))?;
    Ok(py.import("json")?.call_method1("loads", (text,))?.unbind())
}

fn from_py<T: DeserializeOwned>(py: Python<'_>, value: &Bound<'_, PyAny>) -> PyResult<T> {
    let text: String = py.import("json")?.call_method1("dumps", (value,))?.extract()?;
    serde_json::from_str(&text).map_err(|e| PyValueError::new_err(e.to_string()))
}

fn lists_from(lists: &Bound<'_, PyDict>) -> PyResult<ListAssignment> {
    let mut out = Vec::new();
    for (k, v) in lists.iter() {
        out.push((
            k.extract::<Vertex>()?,
            v.extract::<Vec<Color>>()?.into_iter().collect::<BTreeSet<_>>(),
        ));
    }
    Ok(ListAssignment::from_lists(out))
}

/// Simple undirected graph on vertices `0..n`.
#[pyclass(name = "Graph", frozen, eq)]
#[derive(Clone, PartialEq)]
struct PyGraph(minorkit_core::Graph);

#[pymethods]
impl PyGraph {
    #[new]
    #[pyo3(signature = (n, edges = Vec::new()))]
    fn new(n: usize, edges: Vec<(Vertex, Vertex)>) -> PyResult<Self> {
        minorkit_core::Graph::from_edges(n, edges).map(Self).map_err(err)
    }

    #[staticmethod]
    fn from_graph6(text: &str) -> PyResult<Self> {
        format::parse_graph6(text).map(Self).map_err(err)
    }

    #[staticmethod]
    fn from_edge_list(text: &str) -> PyResult<Self> {
        format::parse_graph(text, Format::EdgeList)
            .map(|p| Self(p.graph))
            .map_err(err)
    }

    #[staticmethod]
    fn complete(n: usize) -> Self {
        Self(generate::complete(n))
    }

    #[staticmethod]
    fn complete_bipartite(a: usize, b: usize) -> Self {
        Self(generate::complete_bipartite(a, b))
    }

    #[staticmethod]
    fn path(n: usize) -> Self {
        Self(generate::path(n))
    }

    #[staticmethod]
    fn cycle(n: usize) -> Self {
        Self(generate::cycle(n))
    }

    #[staticmethod]
    fn grid(rows: usize, cols: usize) -> Self {
        Self(generate::grid(rows, cols))
    }

    #[staticmethod]
    fn petersen() -> Self {
        Self(generate::petersen())
    }

    /// `G(n, p)` drawn from stream 0 of `seed`.
    #[staticmethod]
    #[pyo3(signature = (n, p, seed = 0))]
    fn gnp(n: usize, p: f64, seed: u64) -> Self {
        Self(generate::gnp(n, p, &mut generate::rng(seed, 0)))
    }

    fn to_graph6(&self) -> String {
        format::to_graph6(&self.0)
    }

    #[getter]
    fn n(&self) -> usize {
        self.0.n()
    }

    #[getter]
    fn m(&self) -> usize {
        self.0.m()
    }

    fn edges(&self) -> Vec<(Vertex, Vertex)> {
        self.0.edges().collect()
    }

    fn neighbors(&self, v: Vertex) -> PyResult<Vec<Vertex>> {
        self.0.check_vertex(v).map_err(err)?;
        Ok(self.0.neighbors(v).to_vec())
    }

    fn has_edge(&self, u: Vertex, v: Vertex) -> bool {
        self.0.has_edge(u, v)
    }

    /// `e(G)/v(G)` as `(numerator, denominator)`.
    fn density(&self) -> PyResult<(u64, u64)> {
        let d = self.0.density().map_err(err)?;
        Ok((*d.numer(), *d.denom()))
    }

    fn degeneracy(&self) -> usize {
        self.0.degeneracy().d
    }

    fn is_connected(&self) -> bool {
        self.0.is_connected()
    }

    fn is_bipartite(&self) -> bool {
        self.0.is_bipartite()
    }

    fn vertex_connectivity(&self) -> usize {
        self.0.vertex_connectivity()
    }

    fn __len__(&self) -> usize {
        self.0.n()
    }

    fn __repr__(&self) -> String {
        format!(
            "Graph(n={}, m={}, graph6={:?})",
            self.0.n(),
            self.0.m(),
            self.to_graph6()
        )
    }
}

/// `{"status": ..., "certificate": model}` for a `K_t` minor search.
#[pyfunction]
#[pyo3(signature = (g, t, budget = DEFAULT_BUDGET))]
fn find_clique_minor(py: Python<'_>, g: &PyGraph, t: usize, budget: u64) -> PyResult<PyObject> {
    let r = py
        .allow_threads(|| minors::find_clique_minor(&g.0, t, budget))
        .map_err(err)?;
    to_py(py, &r)
}

#[pyfunction]
#[pyo3(signature = (g, s, t, budget = DEFAULT_BUDGET))]
fn find_biclique_minor(py: Python<'_>, g: &PyGraph, s: usize, t: usize, budget: u64) -> PyResult<PyObject> {
    let r = py
        .allow_threads(|| minors::find_biclique_minor(&g.0, s, t, budget))
        .map_err(err)?;
    to_py(py, &r)
}

/// Checks a model dict such as the certificate from `find_clique_minor`.
#[pyfunction]
fn verify_model(py: Python<'_>, g: &PyGraph, model: &Bound<'_, PyAny>) -> PyResult<bool> {
    let m: Model = from_py(py, model)?;
    Ok(minors::verify_model(&g.0, &m).map_err(err)?.is_valid())
}

/// Disjoint paths joining each pair; `odd` lists pairs needing odd length.
#[pyfunction]
#[pyo3(signature = (g, pairs, odd = None, budget = DEFAULT_BUDGET))]
fn find_linkage(
    py: Python<'_>,
    g: &PyGraph,
    pairs: Vec<(Vertex, Vertex)>,
    odd: Option<Vec<usize>>,
    budget: u64,
) -> PyResult<PyObject> {
    let spec = match odd {
        Some(odd) => LinkageSpec::with_parity(pairs, odd).map_err(err)?,
        None => LinkageSpec::new(pairs),
    };
    let r = py
        .allow_threads(|| linkage::find_linkage(&g.0, &spec, budget))
        .map_err(err)?;
    to_py(py, &r)
}

/// `l` disjoint A-B paths of least total length, or `None`.
#[pyfunction]
fn geodesic_ab_paths(g: &PyGraph, a: Vec<Vertex>, b: Vec<Vertex>, l: usize) -> PyResult<Option<Vec<Path>>> {
    linkage::find_geodesic_ab_paths(&g.0, &a, &b, l).map_err(err)
}

/// Improvement moves from `start` until the paths are express.
#[pyfunction]
fn geodesic_descent(
    py: Python<'_>,
    g: &PyGraph,
    a: Vec<Vertex>,
    b: Vec<Vertex>,
    start: Vec<Path>,
) -> PyResult<PyObject> {
    let d = linkage::geodesic_descent(&g.0, &a, &b, &start).map_err(err)?;
    to_py(py, &d)
}

#[pyfunction]
fn is_express(g: &PyGraph, paths: Vec<Path>) -> PyResult<bool> {
    Ok(linkage::is_express(&g.0, &paths, ExpressMode::AbPaths)
        .map_err(err)?
        .is_valid())
}

#[pyfunction]
fn list_chromatic_number(py: Python<'_>, g: &PyGraph, palette: Color) -> PyResult<usize> {
    py.allow_threads(|| coloring::list_chromatic_number(&g.0, palette))
        .map_err(err)
}

/// A colouring `{vertex: colour}` from `lists`, or `None`.
#[pyfunction]
fn list_colouring(py: Python<'_>, g: &PyGraph, lists: &Bound<'_, PyDict>) -> PyResult<PyObject> {
    let c = coloring::is_list_colorable(&g.0, &lists_from(lists)?).map_err(err)?;
    to_py(py, &c)
}

/// Greedy colouring along a degeneracy order; lists need `d + 1` colours.
#[pyfunction]
fn greedy_degenerate_color(py: Python<'_>, g: &PyGraph, lists: &Bound<'_, PyDict>) -> PyResult<PyObject> {
    let c = coloring::greedy_degenerate_color(&g.0, &lists_from(lists)?).map_err(err)?;
    to_py(py, &c)
}

#[pyfunction]
fn chromatic_separability(py: Python<'_>, g: &PyGraph, lists: &Bound<'_, PyDict>, s: usize) -> PyResult<PyObject> {
    let v = coloring::chromatic_separability(&g.0, &lists_from(lists)?, s).map_err(err)?;
    to_py(py, &v)
}

#[pyfunction]
#[pyo3(signature = (g, a, b, parity = false, budget = DEFAULT_BUDGET))]
fn is_woven(py: Python<'_>, g: &PyGraph, a: usize, b: usize, parity: bool, budget: u64) -> PyResult<PyObject> {
    let v = py
        .allow_threads(|| {
            if parity {
                woven::is_parity_woven(&g.0, a, b, budget)
            } else {
                woven::is_woven(&g.0, a, b, budget)
            }
        })
        .map_err(err)?;
    to_py(py, &v)
}

/// Vertex set of a `k`-connected subgraph, or `None`.
#[pyfunction]
fn mader_extract(g: &PyGraph, k: usize) -> Option<Vec<Vertex>> {
    constructions::mader_extract(&g.0, k)
}

#[pymodule]
#[pyo3(name = "minorkit")]
fn init(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_class::<PyGraph>()?;
    m.add("DEFAULT_BUDGET", DEFAULT_BUDGET)?;
    m.add_function(wrap_pyfunction!(find_clique_minor, m)?)?;
    m.add_function(wrap_pyfunction!(find_biclique_minor, m)?)?;
    m.add_function(wrap_pyfunction!(verify_model, m)?)?;
    m.add_function(wrap_pyfunction!(find_linkage, m)?)?;
    m.add_function(wrap_pyfunction!(geodesic_ab_paths, m)?)?;
    m.add_function(wrap_pyfunction!(geodesic_descent, m)?)?;
    m.add_function(wrap_pyfunction!(is_express, m)?)?;
    m.add_function(wrap_pyfunction!(list_chromatic_number, m)?)?;
    m.add_function(wrap_pyfunction!(list_colouring, m)?)?;
    m.add_function(wrap_pyfunction!(greedy_degenerate_color, m)?)?;
    m.add_function(wrap_pyfunction!(chromatic_separability, m)?)?;
    m.add_function(wrap_pyfunction!(is_woven, m)?)?;
    m.add_function(wrap_pyfunction!(mader_extract, m)?)?;
    Ok(())
}
