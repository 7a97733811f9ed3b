//! Python bindings. Vertex sets cross the boundary as sorted lists of ints,
//! reports and traces as JSON (reports already parsed into dicts).
//!
//! Solver budgets default to `DOMCHECK_MAX_NODES` / `DOMCHECK_MAX_ORDER`;
//! running out raises `domcheck.BudgetExceeded`.

use pyo3::create_exception;
use pyo3::exceptions::{PyRuntimeError, PyValueError};
use pyo3::prelude::*;
use pyo3::types::PyDict;

use domcheck_core::audit::{self, AuditOptions};
use domcheck_core::families::parse_family;
use domcheck_core::trace::{verify_trace_with, VerifyOptions};
use domcheck_core::{
    cartesian_product as core_product, gamma_exact, gamma_roman_exact, parse_graph6, write_graph6,
    AuditError, GraphError, ProofTrace, RomanFunction, SolveError, SolverBudget, TieBreak,
    VertexSet,
};

create_exception!(domcheck, BudgetExceeded, PyRuntimeError);

fn graph_err(e: GraphError) -> PyErr {
    PyValueError::new_err(e.to_string())
}

fn solve_err(e: SolveError) -> PyErr {
    if e.is_budget() {
        BudgetExceeded::new_err(e.to_string())
    } else {
        PyValueError::new_err(e.to_string())
    }
}

fn audit_err(e: AuditError) -> PyErr {
    if e.is_budget() || matches!(e, AuditError::Graph(GraphError::ProductTooLarge { .. })) {
        BudgetExceeded::new_err(e.to_string())
    } else {
        PyValueError::new_err(e.to_string())
    }
}

fn budget(max_nodes: Option<u64>, max_order: Option<usize>) -> SolverBudget {
    let mut b = SolverBudget::from_env();
    if let Some(n) = max_nodes {
        b.max_nodes = n;
    }
    if let Some(n) = max_order {
        b.max_order = n;
    }
    b
}

fn set_in(g: &domcheck_core::Graph, members: Vec<usize>) -> PyResult<VertexSet> {
    VertexSet::try_from_iter(g.order(), members).map_err(|v| {
        PyValueError::new_err(format!("vertex {v} out of range for order {}", g.order()))
    })
}

fn json_to_py<'py>(py: Python<'py>, text: &str) -> PyResult<Bound<'py, PyAny>> {
    PyModule::import(py, "json")?.call_method1("loads", (text,))
}

/// A finite simple undirected graph on vertices `0..n`.
#[pyclass(name = "Graph", module = "domcheck", frozen, skip_from_py_object)]
#[derive(Clone)]
pub struct PyGraph {
    inner: domcheck_core::Graph,
}

#[pymethods]
impl PyGraph {
    #[new]
    #[pyo3(signature = (n, edges=Vec::new()))]
    fn new(n: usize, edges: Vec<(usize, usize)>) -> PyResult<Self> {
        let inner = domcheck_core::Graph::new(n, edges).map_err(graph_err)?;
        Ok(Self { inner })
    }

    #[staticmethod]
    fn from_graph6(text: &str) -> PyResult<Self> {
        Ok(Self {
            inner: parse_graph6(text).map_err(graph_err)?,
        })
    }

    /// Builds a named family, e.g. `"cycle:5"`, `"petersen"`, `"random:8,0.4,42"`.
    #[staticmethod]
    #[pyo3(signature = (spec, seed=0))]
    fn family(spec: &str, seed: u64) -> PyResult<Self> {
        let family = parse_family(spec, seed).map_err(graph_err)?;
        Ok(Self {
            inner: family.build().map_err(graph_err)?,
        })
    }

    #[staticmethod]
    fn from_adjacency_text(text: &str) -> PyResult<Self> {
        Ok(Self {
            inner: domcheck_core::Graph::from_adjacency_text(text).map_err(graph_err)?,
        })
    }

    fn to_graph6(&self) -> String {
        write_graph6(&self.inner)
    }

    fn to_adjacency_text(&self) -> String {
        self.inner.to_adjacency_text()
    }

    fn order(&self) -> usize {
        self.inner.order()
    }

    fn size(&self) -> usize {
        self.inner.size()
    }

    fn edges(&self) -> Vec<(usize, usize)> {
        self.inner.edges()
    }

    fn neighbors(&self, v: usize) -> PyResult<Vec<usize>> {
        self.check_vertex(v)?;
        Ok(self.inner.neighbors(v).to_vec())
    }

    fn closed_neighborhood(&self, v: usize) -> PyResult<Vec<usize>> {
        self.check_vertex(v)?;
        Ok(self.inner.closed_neighbors(v).to_vec())
    }

    fn degree(&self, v: usize) -> PyResult<usize> {
        self.check_vertex(v)?;
        Ok(self.inner.degree(v))
    }

    fn is_dominating(&self, vertices: Vec<usize>) -> PyResult<bool> {
        let set = set_in(&self.inner, vertices)?;
        self.inner.is_dominating(&set).map_err(graph_err)
    }

    fn __len__(&self) -> usize {
        self.inner.order()
    }

    fn __eq__(&self, other: &Self) -> bool {
        self.inner == other.inner
    }

    fn __repr__(&self) -> String {
        format!(
            "Graph(order={}, size={}, graph6={:?})",
            self.inner.order(),
            self.inner.size(),
            write_graph6(&self.inner)
        )
    }
}

impl PyGraph {
    fn check_vertex(&self, v: usize) -> PyResult<()> {
        if v < self.inner.order() {
            Ok(())
        } else {
            Err(PyValueError::new_err(format!(
                "vertex {v} out of range for order {}",
                self.inner.order()
            )))
        }
    }
}

/// `G □ H`; the pair `(u, v)` is vertex `u * h.order() + v`.
#[pyfunction]
fn cartesian_product(g: &PyGraph, h: &PyGraph) -> PyResult<PyGraph> {
    let product = core_product(&g.inner, &h.inner).map_err(graph_err)?;
    Ok(PyGraph {
        inner: product.graph().clone(),
    })
}

/// Domination number; with `witness=True` returns `(gamma, vertices)`.
#[pyfunction]
#[pyo3(signature = (g, witness=false, max_nodes=None, max_order=None))]
fn gamma(
    py: Python<'_>,
    g: &PyGraph,
    witness: bool,
    max_nodes: Option<u64>,
    max_order: Option<usize>,
) -> PyResult<Py<PyAny>> {
    let b = budget(max_nodes, max_order);
    let result = py.detach(|| gamma_exact(&g.inner, b)).map_err(solve_err)?;
    if witness {
        Ok((result.value, result.witness.to_vec())
            .into_pyobject(py)?
            .into_any()
            .unbind())
    } else {
        Ok(result.value.into_pyobject(py)?.into_any().unbind())
    }
}

/// Roman domination number; with `witness=True` returns `(value, (V0, V1, V2))`.
#[pyfunction]
#[pyo3(signature = (g, witness=false, max_nodes=None, max_order=None))]
fn gamma_roman(
    py: Python<'_>,
    g: &PyGraph,
    witness: bool,
    max_nodes: Option<u64>,
    max_order: Option<usize>,
) -> PyResult<Py<PyAny>> {
    let b = budget(max_nodes, max_order);
    let result = py
        .detach(|| gamma_roman_exact(&g.inner, b))
        .map_err(solve_err)?;
    if witness {
        let f = &result.witness;
        let parts = (f.v0().to_vec(), f.v1().to_vec(), f.v2().to_vec());
        Ok((result.value, parts).into_pyobject(py)?.into_any().unbind())
    } else {
        Ok(result.value.into_pyobject(py)?.into_any().unbind())
    }
}

/// Whether `(V0, V1, V2)` partitions the vertices and every vertex of V0 has a
/// neighbor in V2.
#[pyfunction]
fn is_roman_dominating(
    g: &PyGraph,
    v0: Vec<usize>,
    v1: Vec<usize>,
    v2: Vec<usize>,
) -> PyResult<bool> {
    let (v0, v1, v2) = (
        set_in(&g.inner, v0)?,
        set_in(&g.inner, v1)?,
        set_in(&g.inner, v2)?,
    );
    match RomanFunction::new(v0, v1, v2) {
        Ok(f) => domcheck_core::is_rdf(&g.inner, &f).map_err(solve_err),
        Err(_) => Ok(false),
    }
}

/// Audits `(G, H)`. Returns `(report, trace_json)`; the report is a dict.
#[pyfunction]
#[pyo3(signature = (g, h, tie_break="smallest", max_nodes=None, max_order=None))]
fn audit_pair<'py>(
    py: Python<'py>,
    g: &PyGraph,
    h: &PyGraph,
    tie_break: &str,
    max_nodes: Option<u64>,
    max_order: Option<usize>,
) -> PyResult<(Bound<'py, PyAny>, String)> {
    let rule = tie_break
        .parse::<TieBreak>()
        .map_err(|e| PyValueError::new_err(e.to_string()))?;
    let options = AuditOptions {
        tie_break: rule,
        ..AuditOptions::default()
    };
    let b = budget(max_nodes, max_order);
    let (report, trace) = py
        .detach(|| audit::audit_pair_with(&g.inner, &h.inner, b, &options))
        .map_err(audit_err)?;
    let report_json = serde_json_string(&report)?;
    Ok((json_to_py(py, &report_json)?, trace.to_json()))
}

fn serde_json_string<T: serde::Serialize>(value: &T) -> PyResult<String> {
    serde_json::to_string(value).map_err(|e| PyRuntimeError::new_err(e.to_string()))
}

/// Re-checks a JSON trace. Returns `{"passed": bool, "outcomes": [...]}`.
#[pyfunction]
#[pyo3(signature = (trace_json, recheck_optimality=false, max_nodes=None, max_order=None))]
fn verify_trace<'py>(
    py: Python<'py>,
    trace_json: &str,
    recheck_optimality: bool,
    max_nodes: Option<u64>,
    max_order: Option<usize>,
) -> PyResult<Bound<'py, PyDict>> {
    let trace =
        ProofTrace::from_json(trace_json).map_err(|e| PyValueError::new_err(e.to_string()))?;
    let options = VerifyOptions {
        recheck_optimality: recheck_optimality.then(|| budget(max_nodes, max_order)),
    };
    let verification = py.detach(|| verify_trace_with(&trace, options));
    let out = PyDict::new(py);
    out.set_item("passed", verification.passed())?;
    out.set_item(
        "outcomes",
        json_to_py(py, &serde_json_string(&verification.outcomes)?)?,
    )?;
    Ok(out)
}

/// The K2 example where the Roman analogue of the product bound fails.
#[pyfunction]
fn check_remark(py: Python<'_>) -> PyResult<Bound<'_, PyAny>> {
    let result = audit::check_remark(SolverBudget::from_env()).map_err(audit_err)?;
    json_to_py(py, &serde_json_string(&result)?)
}

#[pymodule]
fn domcheck(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_class::<PyGraph>()?;
    m.add("BudgetExceeded", m.py().get_type::<BudgetExceeded>())?;
    m.add_function(wrap_pyfunction!(cartesian_product, m)?)?;
    m.add_function(wrap_pyfunction!(gamma, m)?)?;
    m.add_function(wrap_pyfunction!(gamma_roman, m)?)?;
    m.add_function(wrap_pyfunction!(is_roman_dominating, m)?)?;
    m.add_function(wrap_pyfunction!(audit_pair, m)?)?;
    m.add_function(wrap_pyfunction!(verify_trace, m)?)?;
    m.add_function(wrap_pyfunction!(check_remark, m)?)?;
    m.add("__version__", env!("CARGO_PKG_VERSION"))?;
    Ok(())
}
