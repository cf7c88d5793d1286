//! Python bindings: polynomials, rooted digraphs, factorisation, families and
//! the census.

use std::collections::hash_map::DefaultHasher;
use std::hash::{Hash, Hasher};

use digreedoid::census::{self, emit_tables, summarize, PolyDatabase, ReportRow, TableFormat};
use digreedoid::digraph::EdgeSubset;
use digreedoid::enumerate;
use digreedoid::factor;
use digreedoid::families::{self, FamilySpec, Guest};
use digreedoid::greedoid::{self, MemoCache};
use digreedoid::{BiPoly, Error};
use num_bigint::BigInt;
use pyo3::exceptions::{PyOverflowError, PyRuntimeError, PyValueError};
use pyo3::prelude::*;
use pyo3::types::PyDict;

fn py_err(e: Error) -> PyErr {
    match e {
        Error::TooLarge { .. } => PyOverflowError::new_err(e.to_string()),
        Error::Verification(_) | Error::Inconsistency(_) => PyRuntimeError::new_err(e.to_string()),
        _ => PyValueError::new_err(e.to_string()),
    }
}

/// Exact polynomial in `t` and `z` with integer coefficients.
#[pyclass(name = "Polynomial", frozen, from_py_object)]
#[derive(Clone)]
struct PyPolynomial(BiPoly);

#[pymethods]
impl PyPolynomial {
    #[new]
    fn new(text: &str) -> PyResult<Self> {
        text.parse().map(PyPolynomial).map_err(py_err)
    }

    fn __str__(&self) -> String {
        self.0.to_string()
    }

    fn __repr__(&self) -> String {
        format!("Polynomial('{}')", self.0)
    }

    fn __eq__(&self, other: &Self) -> bool {
        self.0 == other.0
    }

    fn __hash__(&self) -> u64 {
        let mut h = DefaultHasher::new();
        self.0.hash(&mut h);
        h.finish()
    }

    fn __add__(&self, other: &Self) -> Self {
        PyPolynomial(&self.0 + &other.0)
    }

    fn __sub__(&self, other: &Self) -> Self {
        PyPolynomial(&self.0 - &other.0)
    }

    fn __mul__(&self, other: &Self) -> Self {
        PyPolynomial(&self.0 * &other.0)
    }

    fn __pow__(&self, k: u32, _modulo: Option<u32>) -> Self {
        PyPolynomial(self.0.pow(k))
    }

    fn coeff(&self, t_deg: u32, z_deg: u32) -> BigInt {
        self.0.coeff(t_deg, z_deg)
    }

    fn terms(&self) -> Vec<((u32, u32), BigInt)> {
        self.0.terms().map(|(m, c)| (m, c.clone())).collect()
    }

    #[getter]
    fn deg_t(&self) -> u32 {
        self.0.deg_t()
    }

    #[getter]
    fn deg_z(&self) -> u32 {
        self.0.deg_z()
    }

    fn eval(&self, t: BigInt, z: BigInt) -> BigInt {
        self.0.eval(&t, &z)
    }

    fn divides(&self, other: &Self) -> bool {
        self.0.divides(&other.0)
    }

    /// `self / divisor`, raising `ValueError` when the division is not exact.
    fn exact_div(&self, divisor: &Self) -> PyResult<Self> {
        self.0
            .exact_div(&divisor.0)
            .map(PyPolynomial)
            .map_err(py_err)
    }

    fn valuation(&self, base: &Self) -> PyResult<u32> {
        self.0.valuation(&base.0).map_err(py_err)
    }

    fn factorise(&self) -> PyResult<PyFactorisation> {
        factor::factorise(&self.0)
            .map(PyFactorisation)
            .map_err(py_err)
    }

    fn is_basic(&self) -> bool {
        factor::is_basic(&self.0)
    }
}

/// Unit and irreducible factors with multiplicities.
#[pyclass(name = "Factorisation", frozen)]
struct PyFactorisation(factor::Factorisation);

#[pymethods]
impl PyFactorisation {
    #[new]
    fn new(text: &str) -> PyResult<Self> {
        text.parse().map(PyFactorisation).map_err(py_err)
    }

    #[getter]
    fn unit(&self) -> i8 {
        self.0.unit()
    }

    #[getter]
    fn factors(&self) -> Vec<(PyPolynomial, u32)> {
        self.0
            .factors()
            .iter()
            .map(|(f, m)| (PyPolynomial(f.clone()), *m))
            .collect()
    }

    fn product(&self) -> PyPolynomial {
        PyPolynomial(self.0.product())
    }

    fn __len__(&self) -> usize {
        self.0.len()
    }

    fn __str__(&self) -> String {
        self.0.to_string()
    }

    fn __repr__(&self) -> String {
        format!("Factorisation('{}')", self.0)
    }
}

/// Rooted digraph on vertices `0..n`. Edges are indexed in insertion order.
#[pyclass(name = "RootedDigraph", frozen)]
struct PyRootedDigraph(digreedoid::RootedDigraph);

fn subset(edges: Vec<usize>) -> EdgeSubset {
    edges
        .into_iter()
        .fold(EdgeSubset::empty(), EdgeSubset::with)
}

#[pymethods]
impl PyRootedDigraph {
    #[new]
    fn new(n: usize, edges: Vec<(usize, usize)>, root: usize) -> PyResult<Self> {
        digreedoid::RootedDigraph::new(n, edges, root)
            .map(PyRootedDigraph)
            .map_err(py_err)
    }

    #[staticmethod]
    fn from_mckay(line: &str, root: usize) -> PyResult<Self> {
        digreedoid::RootedDigraph::from_mckay(line, root)
            .map(PyRootedDigraph)
            .map_err(py_err)
    }

    #[getter]
    fn order(&self) -> usize {
        self.0.order()
    }

    #[getter]
    fn size(&self) -> usize {
        self.0.size()
    }

    #[getter]
    fn root(&self) -> usize {
        self.0.root()
    }

    #[getter]
    fn edges(&self) -> Vec<(usize, usize)> {
        self.0.edges().to_vec()
    }

    fn to_mckay(&self) -> String {
        self.0.to_mckay()
    }

    /// Rank of the edge subset given by edge indices.
    fn rank(&self, edges: Vec<usize>) -> usize {
        self.0.rank(subset(edges))
    }

    fn full_rank(&self) -> usize {
        self.0.full_rank()
    }

    fn is_feasible(&self, edges: Vec<usize>) -> bool {
        self.0.is_feasible(subset(edges))
    }

    fn greedoid_loops(&self) -> Vec<usize> {
        self.0.greedoid_loops().iter().collect()
    }

    fn is_separable(&self) -> bool {
        self.0.is_separable()
    }

    fn has_directed_cycle(&self) -> bool {
        self.0.has_directed_cycle()
    }

    fn count_spanning_arborescences(&self) -> PyResult<u64> {
        self.0.count_spanning_arborescences().map_err(py_err)
    }

    fn min_edges_to_spanning_acyclic(&self) -> PyResult<usize> {
        self.0.min_edges_to_spanning_acyclic().map_err(py_err)
    }

    fn canonical_form(&self, fix_root: bool) -> PyResult<Vec<u8>> {
        self.0.canonical_form(fix_root).map_err(py_err)
    }

    /// Greedoid polynomial; `method` is `"dc"` or `"subsets"`.
    #[pyo3(signature = (method = "dc"))]
    fn polynomial(&self, py: Python<'_>, method: &str) -> PyResult<PyPolynomial> {
        let d = &self.0;
        match method {
            "dc" => Ok(PyPolynomial(
                py.detach(|| greedoid::poly_dc(d, &MemoCache::new())),
            )),
            "subsets" => py
                .detach(|| greedoid::poly_subsets(d))
                .map(PyPolynomial)
                .map_err(py_err),
            other => Err(PyValueError::new_err(format!("unknown method {other:?}"))),
        }
    }

    fn __str__(&self) -> String {
        self.0.to_string()
    }

    fn __repr__(&self) -> String {
        format!(
            "RootedDigraph.from_mckay('{}', {})",
            self.0.to_mckay(),
            self.0.root()
        )
    }
}

fn row_dict<'py>(py: Python<'py>, r: &ReportRow) -> PyResult<Bound<'py, PyDict>> {
    let d = PyDict::new(py);
    let fields: [(&str, usize); 21] = [
        ("n", r.n),
        ("T", r.t),
        ("T-ISO", r.t_iso),
        ("S", r.s),
        ("NS", r.ns),
        ("NSE", r.nse),
        ("PU", r.pu),
        ("PNF", r.pnf),
        ("PF", r.pf),
        ("PFS", r.pfs),
        ("PFNS", r.pfns),
        ("COMM", r.comm),
        ("PFSU", r.pfsu),
        ("PFNSU", r.pfnsu),
        ("2-NB", r.nb2),
        ("2-TNB", r.tnb2),
        ("1-P", r.p1),
        ("1-TP", r.tp1),
        ("2-NB distinct polynomials", r.nb2_distinct_polys),
        ("2-NB with basic factor", r.nb2_with_basic),
        ("2-NB basic-free separable", r.nb2_basic_free_separable),
    ];
    for (k, v) in fields {
        d.set_item(k, v)?;
    }
    Ok(d)
}

/// Polynomials of every rooted digraph up to `max_order`, with the summary
/// counts.
#[pyclass(name = "Census", frozen)]
struct PyCensus {
    db: PolyDatabase,
    report: census::CensusReport,
}

#[pymethods]
impl PyCensus {
    #[new]
    fn new(py: Python<'_>, max_order: usize) -> PyResult<Self> {
        let db = py
            .detach(|| census::build_database(max_order, false, &MemoCache::new()))
            .map_err(py_err)?;
        let report = summarize(&db);
        Ok(PyCensus { db, report })
    }

    #[staticmethod]
    fn parse(text: &str) -> PyResult<Self> {
        let db = census::io::parse(text).map_err(py_err)?;
        let report = summarize(&db);
        Ok(PyCensus { db, report })
    }

    fn rows<'py>(&self, py: Python<'py>) -> PyResult<Vec<Bound<'py, PyDict>>> {
        self.report.rows.iter().map(|r| row_dict(py, r)).collect()
    }

    /// Every table; `format` is `"csv"` or `"markdown"`.
    #[pyo3(signature = (format = "csv"))]
    fn tables(&self, format: &str) -> PyResult<String> {
        let format: TableFormat = format.parse().map_err(py_err)?;
        Ok(emit_tables(&self.report, format))
    }

    /// The database in its tab-separated file format.
    fn render(&self) -> String {
        census::io::render(&self.db)
    }

    fn __len__(&self) -> usize {
        self.db.records().len()
    }

    fn factors_up_to(&self, n: usize) -> Vec<PyPolynomial> {
        let mut v: Vec<BiPoly> = self.db.factors_up_to(n).into_iter().collect();
        v.sort_by_cached_key(|p| p.to_string());
        v.into_iter().map(PyPolynomial).collect()
    }

    /// Pairs `(g, h)` of polynomials of rooted digraphs of order at most
    /// `order` with `g * h = poly`.
    fn gm_factorise(
        &self,
        poly: &PyPolynomial,
        order: usize,
    ) -> PyResult<Vec<(PyPolynomial, PyPolynomial)>> {
        let db = self.db.combined_up_to(order);
        Ok(factor::gm_factorise(&poly.0, &db)
            .map_err(py_err)?
            .into_iter()
            .map(|(g, h)| (PyPolynomial(g), PyPolynomial(h)))
            .collect())
    }
}

#[pyfunction]
fn factorise(poly: &PyPolynomial) -> PyResult<PyFactorisation> {
    poly.factorise()
}

#[pyfunction]
fn path_poly(m: u32) -> PyPolynomial {
    PyPolynomial(greedoid::path_poly(m))
}

#[pyfunction]
fn cycle_poly(m: u32) -> PyResult<PyPolynomial> {
    greedoid::cycle_poly(m).map(PyPolynomial).map_err(py_err)
}

#[pyfunction]
fn theorem4_formula(k: usize, l: usize) -> PyResult<PyPolynomial> {
    families::theorem4_formula(k, l)
        .map(PyPolynomial)
        .map_err(py_err)
}

fn guest(name: &str) -> PyResult<Guest> {
    match name.split_once(':') {
        Some(("path", m)) => {
            let m = m
                .parse()
                .map_err(|_| PyValueError::new_err(format!("bad path length {m:?}")))?;
            Guest::directed_path(m).map_err(py_err)
        }
        None if name == "chorded" => Ok(Guest::chorded_path()),
        _ => Err(PyValueError::new_err(format!("unknown guest {name:?}"))),
    }
}

/// Member of a named family: `path`, `cycle`, `lemma3`, `theorem4` or
/// `theorem5` (guest `path:M` or `chorded`).
#[pyfunction]
#[pyo3(signature = (kind, k = None, l = None, m = None, guest_name = "path:2"))]
fn family(
    kind: &str,
    k: Option<usize>,
    l: Option<usize>,
    m: Option<usize>,
    guest_name: &str,
) -> PyResult<PyRootedDigraph> {
    let need = |v: Option<usize>, name: &str| {
        v.ok_or_else(|| PyValueError::new_err(format!("{name} is required for {kind}")))
    };
    let spec = match kind {
        "path" => FamilySpec::Path { m: need(m, "m")? },
        "cycle" => FamilySpec::Cycle { m: need(m, "m")? },
        "lemma3" => FamilySpec::Lemma3 { k: need(k, "k")? },
        "theorem4" => FamilySpec::Theorem4 {
            k: need(k, "k")?,
            l: need(l, "l")?,
        },
        "theorem5" => FamilySpec::Theorem5 {
            guest: guest(guest_name)?,
            l: need(l, "l")?,
        },
        other => return Err(PyValueError::new_err(format!("unknown family {other:?}"))),
    };
    families::build(&spec).map(PyRootedDigraph).map_err(py_err)
}

/// `(McKay line, root)` for every rooted class of order `n` (`n <= 5`).
#[pyfunction]
fn rooted_classes(py: Python<'_>, n: usize) -> PyResult<Vec<(String, usize)>> {
    let list = py
        .detach(|| enumerate::rooted_classes(n, false))
        .map_err(py_err)?;
    Ok(list
        .rooted_classes()
        .iter()
        .map(|&(rep, root)| (list.representatives()[rep].to_mckay(), root))
        .collect())
}

#[pymodule]
fn pydigreedoid(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_class::<PyPolynomial>()?;
    m.add_class::<PyFactorisation>()?;
    m.add_class::<PyRootedDigraph>()?;
    m.add_class::<PyCensus>()?;
    m.add_function(wrap_pyfunction!(factorise, m)?)?;
    m.add_function(wrap_pyfunction!(path_poly, m)?)?;
    m.add_function(wrap_pyfunction!(cycle_poly, m)?)?;
    m.add_function(wrap_pyfunction!(theorem4_formula, m)?)?;
    m.add_function(wrap_pyfunction!(family, m)?)?;
    m.add_function(wrap_pyfunction!(rooted_classes, m)?)?;
    Ok(())
}
