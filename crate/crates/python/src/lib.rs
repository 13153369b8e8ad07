//! Python bindings for the `cogpoly` crate.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_rational::BigRational;
use pyo3::exceptions::PyValueError;
use pyo3::prelude::*;

use cogpoly::enumerate::{census_report, enumerate_cogs as enumerate};
use cogpoly::model::{cog_to_gec, gec_to_cog};
use cogpoly::saturation::{saturation_cog, saturation_dx};
use cogpoly::surface::{boundary_count, euler_genus, genus_range, is_orientable, trace_boundaries};
use cogpoly::transition::{topological_transition, transition_recursive};
use cogpoly::yamada::{draw, invariant_rm1, invariant_y, normalised, yamada_r};
use cogpoly::{CogError, Gec, LaurentPoly, MultiPoly, PointedGec, Var};

fn py_err(e: CogError) -> PyErr {
    PyValueError::new_err(e.to_string())
}

/// A polynomial in x, y, t, alpha, beta, gamma with integer coefficients.
#[pyclass(name = "Polynomial", frozen, eq)]
#[derive(PartialEq)]
struct PyPolynomial(MultiPoly);

#[pymethods]
impl PyPolynomial {
    fn __str__(&self) -> String {
        self.0.to_string()
    }

    fn __repr__(&self) -> String {
        format!("Polynomial('{}')", self.0)
    }

    /// List of `(exponents, coefficient)` with exponents keyed by variable name.
    fn terms(&self) -> Vec<(BTreeMap<String, u32>, BigInt)> {
        self.0
            .terms()
            .into_iter()
            .map(|(powers, c)| {
                (
                    powers
                        .into_iter()
                        .map(|(v, e)| (v.name().to_string(), e))
                        .collect(),
                    c,
                )
            })
            .collect()
    }

    /// Evaluates at rational values; every variable present must be given.
    fn evaluate(&self, values: BTreeMap<String, BigRational>) -> PyResult<BigRational> {
        let mut at = BTreeMap::new();
        for (name, value) in values {
            let v = Var::from_name(&name)
                .ok_or_else(|| PyValueError::new_err(format!("unknown variable {name}")))?;
            at.insert(v, value);
        }
        self.0.evaluate(&at).map_err(py_err)
    }
}

/// A Laurent polynomial in A.
#[pyclass(name = "LaurentPolynomial", frozen, eq)]
#[derive(PartialEq)]
struct PyLaurent(LaurentPoly);

#[pymethods]
impl PyLaurent {
    fn __str__(&self) -> String {
        self.0.to_string()
    }

    fn __repr__(&self) -> String {
        format!("LaurentPolynomial('{}')", self.0)
    }

    fn terms(&self) -> BTreeMap<i32, BigInt> {
        self.0.terms().map(|(e, c)| (e, c.clone())).collect()
    }

    fn evaluate(&self, a: BigRational) -> PyResult<BigRational> {
        self.0.evaluate(&a).map_err(py_err)
    }

    fn normalised(&self) -> PyLaurent {
        PyLaurent(normalised(&self.0))
    }
}

#[pyclass(name = "Cog", frozen)]
struct PyCog(cogpoly::Cog);

#[pymethods]
impl PyCog {
    #[new]
    fn new(text: &str) -> PyResult<Self> {
        cogpoly::Cog::parse(text).map(PyCog).map_err(py_err)
    }

    /// Parses a gec in text form and converts it to its cog.
    #[staticmethod]
    fn from_gec(text: &str) -> PyResult<Self> {
        Gec::parse(text)
            .map(|g| PyCog(gec_to_cog(&g)))
            .map_err(py_err)
    }

    fn __str__(&self) -> String {
        self.0.to_string()
    }

    fn __repr__(&self) -> String {
        format!("Cog('{}')", self.0)
    }

    #[getter]
    fn num_vertices(&self) -> usize {
        self.0.num_vertices()
    }

    #[getter]
    fn num_edges(&self) -> usize {
        self.0.num_edges()
    }

    fn is_connected(&self) -> bool {
        self.0.is_connected()
    }

    fn canonical_form(&self) -> String {
        self.0.canonical_form()
    }

    fn is_isomorphic(&self, other: PyRef<'_, PyCog>) -> bool {
        self.0.is_isomorphic(&other.0)
    }

    fn to_gec(&self) -> String {
        cog_to_gec(&self.0).to_string()
    }

    /// Saturation polynomial, optionally with deleted and extracted edge labels.
    #[pyo3(signature = (deleted = Vec::new(), extracted = Vec::new()))]
    fn saturation(&self, deleted: Vec<String>, extracted: Vec<String>) -> PyResult<PyPolynomial> {
        if deleted.is_empty() && extracted.is_empty() {
            return Ok(PyPolynomial(saturation_cog(&self.0)));
        }
        let c = &self.0;
        let d = c.edges_from_labels(&deleted).map_err(py_err)?;
        let x = c.edges_from_labels(&extracted).map_err(py_err)?;
        saturation_dx(c, &d, &x).map(PyPolynomial).map_err(py_err)
    }

    fn transition(&self) -> PyResult<PyPolynomial> {
        let g = PointedGec::from(cog_to_gec(&self.0));
        transition_recursive(&g, None)
            .map(PyPolynomial)
            .map_err(py_err)
    }

    /// `kind` is one of "orientable", "euler", "nonorientable".
    #[pyo3(signature = (kind = "orientable"))]
    fn genus_range(&self, kind: &str) -> PyResult<Vec<usize>> {
        let kind = kind.parse().map_err(py_err)?;
        genus_range(&self.0, kind)
            .map(|s| s.into_iter().collect())
            .map_err(py_err)
    }

    /// The drawing-independent values "Y" and "Rm1", checked across several drawings.
    #[pyo3(signature = (value = "Y", drawings = 3, seed = 0))]
    fn yamada(&self, value: &str, drawings: u64, seed: u64) -> PyResult<BigInt> {
        match value {
            "Y" => invariant_y(&self.0, drawings, seed).map_err(py_err),
            "Rm1" => invariant_rm1(&self.0, drawings, seed).map_err(py_err),
            _ => Err(PyValueError::new_err(format!(
                "unknown value {value}, expected Y or Rm1"
            ))),
        }
    }

    /// R of one drawing chosen by `seed`.
    #[pyo3(signature = (seed = 0))]
    fn yamada_r(&self, seed: u64) -> PyLaurent {
        PyLaurent(yamada_r(&draw(&self.0, seed)))
    }
}

#[pyclass(name = "SignedRotationSystem", frozen)]
struct PySrs(cogpoly::SignedRotationSystem);

#[pymethods]
impl PySrs {
    #[new]
    fn new(text: &str) -> PyResult<Self> {
        cogpoly::SignedRotationSystem::parse(text)
            .map(PySrs)
            .map_err(py_err)
    }

    fn __str__(&self) -> String {
        self.0.to_string()
    }

    fn __repr__(&self) -> String {
        format!("SignedRotationSystem('{}')", self.0)
    }

    fn underlying_cog(&self) -> PyCog {
        PyCog(self.0.underlying_cog())
    }

    fn faces(&self) -> usize {
        boundary_count(&self.0)
    }

    fn face_walks(&self) -> Vec<String> {
        trace_boundaries(&self.0).render(self.0.rotation().labels())
    }

    fn euler_genus(&self) -> usize {
        euler_genus(&self.0)
    }

    fn is_orientable(&self) -> bool {
        is_orientable(&self.0)
    }

    fn vertex_flip(&self, v: usize) -> PyResult<PySrs> {
        self.0.vertex_flip(v).map(PySrs).map_err(py_err)
    }

    fn partial_petrial(&self, labels: Vec<String>) -> PyResult<PySrs> {
        let cog = self.0.underlying_cog();
        let edges = cog.edges_from_labels(&labels).map_err(py_err)?;
        self.0.partial_petrial(&edges).map(PySrs).map_err(py_err)
    }

    fn topological_transition(&self) -> PyPolynomial {
        PyPolynomial(topological_transition(&self.0))
    }
}

/// Connected cogs with `edges` edges up to isomorphism.
#[pyfunction]
fn enumerate_cogs(edges: usize) -> PyResult<Vec<PyCog>> {
    enumerate(edges, true, true)
        .map(|v| v.into_iter().map(PyCog).collect())
        .map_err(py_err)
}

/// Rows `(cog, value)` of the connected census with one invariant: "sat", "trans" or "Y".
#[pyfunction]
fn census(edges: usize, invariant: &str) -> PyResult<Vec<(String, String)>> {
    let inv = invariant.parse().map_err(py_err)?;
    let report = census_report(edges, inv).map_err(py_err)?;
    Ok(report.rows.into_iter().map(|r| (r.cog, r.value)).collect())
}

#[pymodule]
fn cogpoly_py(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_class::<PyCog>()?;
    m.add_class::<PySrs>()?;
    m.add_class::<PyPolynomial>()?;
    m.add_class::<PyLaurent>()?;
    m.add_function(wrap_pyfunction!(enumerate_cogs, m)?)?;
    m.add_function(wrap_pyfunction!(census, m)?)?;
    Ok(())
}
