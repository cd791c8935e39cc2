//! Python module `dynres`.
//!
//! Structured results cross the boundary as native Python containers built
//! from the JSON forms of the Rust values.

use dynres_core::betti_check::{admissibility_report, BettiTable};
use dynres_core::graded_res::{
    be_multipliers, classify_family, is_zero_matrix, structure_maps, tor_m11, validate_complex, GradedComplex,
};
use dynres_core::polyalg::json::matrix_to_json;
use dynres_core::polyalg::Budget;
use dynres_core::repdecomp::{coset_betti_numbers, z1_decomposition};
use dynres_core::schubert::{patch_parametrization, schubert_ideal, schubert_resolution, SchubertChart, Sigma};
use dynres_core::weyl::{family_count, format_double_cosets, table_grid};
use dynres_core::{DiagramType, Error};
use pyo3::create_exception;
use pyo3::exceptions::{PyException, PyValueError};
use pyo3::prelude::*;
use serde_json::{json, Value};

create_exception!(dynres, DynresError, PyException);
create_exception!(dynres, BudgetExceeded, DynresError);

fn lift(e: Error) -> PyErr {
    if e.is_budget() {
        BudgetExceeded::new_err(e.to_string())
    } else if matches!(e, Error::Parse(_) | Error::UnknownNode(_)) {
        PyValueError::new_err(e.to_string())
    } else {
        DynresError::new_err(e.to_string())
    }
}

fn to_py<'py>(py: Python<'py>, value: &Value) -> PyResult<Bound<'py, PyAny>> {
    py.import("json")?.call_method1("loads", (value.to_string(),))
}

fn budget(profile: Option<&str>) -> PyResult<Budget> {
    Budget::profile(profile.unwrap_or("default")).map_err(lift)
}

/// A format `(f0, f1, f2, f3)` of a length-three complex.
#[pyclass(name = "Format", frozen)]
struct PyFormat {
    inner: dynres_core::Format,
}

#[pymethods]
impl PyFormat {
    #[new]
    fn new(f0: usize, f1: usize, f2: usize, f3: usize) -> PyResult<Self> {
        Ok(PyFormat { inner: dynres_core::Format::new([f0, f1, f2, f3]).map_err(lift)? })
    }

    #[getter]
    fn ranks(&self) -> [usize; 4] {
        self.inner.f()
    }

    /// The T-shaped diagram, e.g. `T_{2,3,3}`.
    #[getter]
    fn diagram(&self) -> String {
        self.inner.shape().to_string()
    }

    #[getter]
    fn diagram_type(&self) -> String {
        self.inner.shape().classify().to_string()
    }

    #[getter]
    fn is_dynkin(&self) -> bool {
        matches!(self.inner.shape().classify(), DiagramType::Finite(_))
    }

    fn family_count(&self) -> PyResult<usize> {
        family_count(&self.inner).map_err(lift)
    }

    /// Double cosets as dicts with the representative word and Betti numbers.
    fn double_cosets<'py>(&self, py: Python<'py>) -> PyResult<Bound<'py, PyAny>> {
        let shape = self.inner.shape();
        let (_, table) = format_double_cosets(&self.inner).map_err(lift)?;
        let rows: Vec<Value> = table
            .cosets()
            .iter()
            .map(|c| {
                let word = c.representative.word();
                json!({
                    "word": word.iter().map(|&i| shape.node(i).to_string()).collect::<Vec<_>>(),
                    "orbit_points": c.members.len(),
                    "betti": (self.inner.f()[0] == 1).then(|| coset_betti_numbers(&shape, word)),
                })
            })
            .collect();
        to_py(py, &Value::Array(rows))
    }

    fn decomposition<'py>(&self, py: Python<'py>) -> PyResult<Bound<'py, PyAny>> {
        let d = z1_decomposition(&self.inner).map_err(lift)?;
        let comps: Vec<Value> = d
            .components
            .iter()
            .map(|c| {
                json!({
                    "degree": c.degree,
                    "label": c.label(),
                    "multiplicity": c.multiplicity,
                    "dimension": c.dimension,
                })
            })
            .collect();
        to_py(py, &json!({ "dimension": d.total_dimension(), "components": comps }))
    }

    fn __repr__(&self) -> String {
        format!("Format{:?}", self.inner.f())
    }
}

/// A graded free complex `F3 → F2 → F1 → F0`.
#[pyclass(name = "Complex", frozen)]
struct PyComplex {
    inner: GradedComplex,
}

#[pymethods]
impl PyComplex {
    #[staticmethod]
    fn from_json(text: &str) -> PyResult<Self> {
        let value: Value = serde_json::from_str(text).map_err(|e| PyValueError::new_err(e.to_string()))?;
        let inner = GradedComplex::from_json(value.get("complex").unwrap_or(&value)).map_err(lift)?;
        Ok(PyComplex { inner })
    }

    fn to_json(&self) -> String {
        self.inner.to_json().to_string()
    }

    #[getter]
    fn format(&self) -> [usize; 4] {
        self.inner.format()
    }

    #[getter]
    fn is_minimal(&self) -> bool {
        self.inner.is_minimal()
    }

    #[pyo3(signature = (profile=None))]
    fn validate<'py>(&self, py: Python<'py>, profile: Option<&str>) -> PyResult<Bound<'py, PyAny>> {
        let report = validate_complex(&self.inner, &budget(profile)?).map_err(lift)?;
        to_py(py, &serde_json::to_value(&report).expect("report serializes"))
    }

    #[pyo3(signature = (profile=None))]
    fn multipliers<'py>(&self, py: Python<'py>, profile: Option<&str>) -> PyResult<Bound<'py, PyAny>> {
        let m = be_multipliers(&self.inner, &budget(profile)?).map_err(lift)?;
        to_py(py, &json!({ "a3": matrix_to_json(&m.a3), "a2": matrix_to_json(&m.a2), "a1": matrix_to_json(&m.a1) }))
    }

    /// `w3_1`, `w2_1` and whether `m11` vanishes (minimal complexes only).
    #[pyo3(signature = (profile=None))]
    fn structure<'py>(&self, py: Python<'py>, profile: Option<&str>) -> PyResult<Bound<'py, PyAny>> {
        let (_, s) = structure_maps(&self.inner, &budget(profile)?).map_err(lift)?;
        let m11_zero = if self.inner.is_minimal() {
            Some(is_zero_matrix(&tor_m11(&self.inner, &s).map_err(lift)?))
        } else {
            None
        };
        to_py(py, &json!({ "w3_1": matrix_to_json(&s.w3_1), "w2_1": matrix_to_json(&s.w2_1), "m11_zero": m11_zero }))
    }

    #[pyo3(signature = (profile=None))]
    fn classify<'py>(&self, py: Python<'py>, profile: Option<&str>) -> PyResult<Bound<'py, PyAny>> {
        let label = classify_family(&self.inner, &budget(profile)?).map_err(lift)?;
        to_py(py, &serde_json::to_value(&label).expect("label serializes"))
    }

    fn __repr__(&self) -> String {
        format!("Complex(format={:?})", self.inner.format())
    }
}

/// The opposite-cell chart of a Schubert variety `P_{x1} σ B`.
#[pyclass(name = "SchubertChart", frozen)]
struct PyChart {
    inner: SchubertChart,
}

#[pymethods]
impl PyChart {
    /// `sigma` is `e`, `w0` or a word such as `s:z1,u,x1`.
    #[new]
    #[pyo3(signature = (format, sigma="w0"))]
    fn new(format: &PyFormat, sigma: &str) -> PyResult<Self> {
        let sigma: Sigma = sigma.parse().map_err(lift)?;
        let word = sigma.resolve(&format.inner).map_err(lift)?;
        Ok(PyChart { inner: patch_parametrization(&format.inner, &word).map_err(lift)? })
    }

    #[getter]
    fn variables(&self) -> Vec<String> {
        self.inner.variable_names()
    }

    /// Generators of the chart ideal, printed in the chart variables.
    fn ideal(&self) -> PyResult<Vec<String>> {
        let names = self.inner.variable_names();
        let ideal = schubert_ideal(&self.inner).map_err(lift)?;
        Ok(ideal.generators().iter().map(|g| g.fmt_with(&names)).collect())
    }

    fn resolution(&self) -> PyResult<PyComplex> {
        Ok(PyComplex { inner: schubert_resolution(&self.inner).map_err(lift)? })
    }

    fn to_json(&self) -> String {
        serde_json::to_string(&self.inner.to_json()).expect("chart serializes")
    }
}

/// Counts `#(d,t)` of double cosets; `None` marks a non-Dynkin entry.
#[pyfunction]
#[pyo3(signature = (max_d=5, max_t=5))]
fn table(max_d: usize, max_t: usize) -> PyResult<Vec<Vec<Option<usize>>>> {
    table_grid(max_d, max_t).map_err(lift)
}

/// Necessary conditions on a graded Betti table with `F0 = R`.
#[pyfunction]
fn betti_check<'py>(
    py: Python<'py>,
    f: [usize; 4],
    s1: Vec<i64>,
    s2: Vec<i64>,
    s3: Vec<i64>,
) -> PyResult<Bound<'py, PyAny>> {
    let t = BettiTable::new(f, s1, s2, s3).map_err(lift)?;
    let r = admissibility_report(&t).map_err(lift)?;
    let mut v = serde_json::to_value(&r).expect("report serializes");
    v["passes"] = Value::Bool(r.passes());
    v["verdict"] = Value::String(r.verdict().into());
    to_py(py, &v)
}

/// Module initialiser.
#[pymodule]
pub fn dynres(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_class::<PyFormat>()?;
    m.add_class::<PyComplex>()?;
    m.add_class::<PyChart>()?;
    m.add_function(wrap_pyfunction!(table, m)?)?;
    m.add_function(wrap_pyfunction!(betti_check, m)?)?;
    m.add("DynresError", m.py().get_type::<DynresError>())?;
    m.add("BudgetExceeded", m.py().get_type::<BudgetExceeded>())?;
    Ok(())
}
