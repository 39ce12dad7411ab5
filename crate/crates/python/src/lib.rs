use num_bigint::BigInt;
use pyo3::exceptions::{PyRuntimeError, PyValueError};
use pyo3::prelude::*;
use serde::Serialize;

use viracomb::bijections::{bij1_forward, bij1_inverse, bij2_forward, bij2_inverse, Family};
use viracomb::characters::{bosonic_character_raw, fermionic_character_12, ClosedForm};
use viracomb::particles::{self, Sector};
use viracomb::qseries::{modular_product, QSeries};
use viracomb::{halfpath, render, rsos, verify};

fn err(e: viracomb::Error) -> PyErr {
    if e.is_corruption() {
        PyRuntimeError::new_err(e.to_string())
    } else {
        PyValueError::new_err(e.to_string())
    }
}

fn coeffs(s: QSeries) -> Vec<BigInt> {
    s.coeffs().to_vec()
}

fn to_py<'py, T: Serialize>(py: Python<'py>, v: &T) -> PyResult<Bound<'py, PyAny>> {
    let text = serde_json::to_string(v).map_err(|e| PyRuntimeError::new_err(e.to_string()))?;
    py.import("json")?.call_method1("loads", (text,))
}

/// Height sequence of an RSOS path on heights `1..p'-1`.
#[pyclass(name = "RsosPath", frozen, skip_from_py_object)]
#[derive(Clone)]
struct PyRsos(rsos::RsosPath);

#[pymethods]
impl PyRsos {
    #[new]
    fn new(p: i64, pp: i64, a: i64, b: i64, heights: Vec<i64>) -> PyResult<Self> {
        rsos::RsosPath::new(p, pp, a, b, heights).map(PyRsos).map_err(err)
    }

    #[staticmethod]
    fn parse(line: &str) -> PyResult<Self> {
        line.parse().map(PyRsos).map_err(err)
    }

    #[getter]
    fn p(&self) -> i64 {
        self.0.p()
    }
    #[getter]
    fn pp(&self) -> i64 {
        self.0.pp()
    }
    #[getter]
    fn a(&self) -> i64 {
        self.0.a()
    }
    #[getter]
    fn b(&self) -> i64 {
        self.0.b()
    }
    #[getter]
    fn heights(&self) -> Vec<i64> {
        self.0.heights().to_vec()
    }
    #[getter]
    fn horizon(&self) -> usize {
        self.0.horizon()
    }

    fn weight(&self) -> PyResult<i64> {
        self.0.weight().map_err(err)
    }

    fn scoring_count(&self) -> usize {
        self.0.scoring_count()
    }

    fn ascii(&self) -> String {
        render::ascii_rsos(&self.0)
    }

    fn svg(&self) -> String {
        render::svg_rsos(&self.0)
    }

    fn __str__(&self) -> String {
        self.0.to_line()
    }

    fn __repr__(&self) -> String {
        format!("RsosPath({:?})", self.0.to_line())
    }

    fn __eq__(&self, other: &Self) -> bool {
        self.0 == other.0
    }
}

/// Half-lattice path in doubled coordinates.
#[pyclass(name = "HalfPath", frozen, skip_from_py_object)]
#[derive(Clone)]
struct PyHalf(halfpath::HalfPath);

#[pymethods]
impl PyHalf {
    #[new]
    fn new(t2: i64, a: i64, b: i64, heights: Vec<i64>) -> PyResult<Self> {
        halfpath::HalfPath::new(t2, a, b, heights).map(PyHalf).map_err(err)
    }

    #[staticmethod]
    fn parse(line: &str) -> PyResult<Self> {
        line.parse().map(PyHalf).map_err(err)
    }

    #[staticmethod]
    fn ground_state(t2: i64, a: i64, b: i64) -> PyResult<Self> {
        halfpath::HalfPath::ground_state(t2, a, b).map(PyHalf).map_err(err)
    }

    #[getter]
    fn t2(&self) -> i64 {
        self.0.t2()
    }
    #[getter]
    fn a(&self) -> i64 {
        self.0.a()
    }
    #[getter]
    fn b(&self) -> i64 {
        self.0.b()
    }
    #[getter]
    fn heights(&self) -> Vec<i64> {
        self.0.heights().to_vec()
    }
    #[getter]
    fn horizon(&self) -> usize {
        self.0.horizon()
    }

    fn weight(&self) -> PyResult<i64> {
        self.0.weight().map_err(err)
    }

    fn raw_weight(&self) -> i64 {
        self.0.raw_weight()
    }

    #[pyo3(signature = (baselines=false))]
    fn ascii(&self, baselines: bool) -> PyResult<String> {
        render::ascii_half(&self.0, baselines).map_err(err)
    }

    #[pyo3(signature = (baselines=false))]
    fn svg(&self, baselines: bool) -> PyResult<String> {
        render::svg_half(&self.0, baselines).map_err(err)
    }

    /// Particle decomposition as a dict; needs `A = B = 2`.
    fn dissect<'py>(&self, py: Python<'py>) -> PyResult<Bound<'py, PyAny>> {
        to_py(py, &particles::dissect(&self.0).map_err(err)?)
    }

    /// Particle ids with a permitted move.
    fn moves<'py>(&self, py: Python<'py>) -> PyResult<Bound<'py, PyAny>> {
        to_py(py, &particles::enumerate_moves(&self.0).map_err(err)?)
    }

    fn apply_move(&self, particle: usize) -> PyResult<Self> {
        particles::apply_move(&self.0, particle).map(PyHalf).map_err(err)
    }

    fn __str__(&self) -> String {
        self.0.to_line()
    }

    fn __repr__(&self) -> String {
        format!("HalfPath({:?})", self.0.to_line())
    }

    fn __eq__(&self, other: &Self) -> bool {
        self.0 == other.0
    }
}

#[pyfunction]
fn bosonic_character(p: i64, pp: i64, r: i64, s: i64, order: usize) -> PyResult<Vec<BigInt>> {
    bosonic_character_raw(p, pp, r, s, order).map(coeffs).map_err(err)
}

#[pyfunction]
fn fermionic_character(t2: u32, order: usize) -> PyResult<Vec<BigInt>> {
    fermionic_character_12(t2, order).map(coeffs).map_err(err)
}

#[pyfunction]
fn product_character(modulus: u64, residues: Vec<u64>, order: usize) -> PyResult<Vec<BigInt>> {
    modular_product(modulus, &residues, order).map(coeffs).map_err(err)
}

/// Named closed forms: `sum-2-5`, `product-3-4`, ...
#[pyfunction]
fn closed_form(name: &str, order: usize) -> PyResult<Vec<BigInt>> {
    let form = ClosedForm::ALL
        .iter()
        .find(|f| f.name() == name)
        .ok_or_else(|| PyValueError::new_err(format!("unknown closed form {name:?}")))?;
    Ok(coeffs(form.series(order)))
}

#[pyfunction]
fn rsos_paths(p: i64, pp: i64, a: i64, b: i64, max_weight: usize) -> PyResult<Vec<PyRsos>> {
    Ok(rsos::enumerate(p, pp, a, b, max_weight).map_err(err)?.into_iter().map(PyRsos).collect())
}

#[pyfunction]
fn rsos_gf(p: i64, pp: i64, a: i64, b: i64, order: usize) -> PyResult<Vec<BigInt>> {
    rsos::generating_function(p, pp, a, b, order).map(coeffs).map_err(err)
}

#[pyfunction]
fn half_paths(t2: i64, a: i64, b: i64, max_weight: usize) -> PyResult<Vec<PyHalf>> {
    Ok(halfpath::enumerate(t2, a, b, max_weight).map_err(err)?.into_iter().map(PyHalf).collect())
}

#[pyfunction]
fn half_gf(t2: i64, a: i64, b: i64, order: usize) -> PyResult<Vec<BigInt>> {
    halfpath::generating_function(t2, a, b, order).map(coeffs).map_err(err)
}

/// Maps an RSOS path to its half-lattice image; returns `(image, trace)`.
#[pyfunction]
fn bijection_forward<'py>(py: Python<'py>, h: &PyRsos) -> PyResult<(PyHalf, Bound<'py, PyAny>)> {
    match Family::of_rsos(&h.0).map_err(err)? {
        Family::Plus => {
            let (img, trace) = bij1_forward(&h.0).map_err(err)?;
            Ok((PyHalf(img), to_py(py, &trace)?))
        }
        Family::Minus => {
            let (img, trace) = bij2_forward(&h.0).map_err(err)?;
            Ok((PyHalf(img), to_py(py, &trace)?))
        }
    }
}

#[pyfunction]
fn bijection_inverse(h: &PyHalf) -> PyResult<PyRsos> {
    let out = match Family::of_half(&h.0) {
        Family::Plus => bij1_inverse(&h.0),
        Family::Minus => bij2_inverse(&h.0),
    };
    out.map(PyRsos).map_err(err)
}

#[pyfunction]
fn sector_gf(t2: u32, n: Vec<u32>, order: usize) -> PyResult<Vec<BigInt>> {
    let sector = Sector::new(t2, n).map_err(err)?;
    Ok(coeffs(particles::sector_gf(&sector, order)))
}

#[pyfunction]
fn minimal_path(t2: u32, n: Vec<u32>) -> PyResult<PyHalf> {
    let sector = Sector::new(t2, n).map_err(err)?;
    Ok(PyHalf(particles::minimal_path(&sector)))
}

/// Runs a verification suite and returns its reports as dicts.
#[pyfunction]
#[pyo3(signature = (suite, order=20, max_t2=10, max_pp=12))]
fn run_verify<'py>(py: Python<'py>, suite: &str, order: usize, max_t2: u32, max_pp: i64) -> PyResult<Bound<'py, PyAny>> {
    let suite: verify::Suite = suite.parse().map_err(err)?;
    let opts = verify::VerifyOptions { order, max_t2, max_pp };
    let reports = py.detach(|| verify::run_suite(suite, opts));
    to_py(py, &reports)
}

#[pymodule]
fn viracomb_py(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_class::<PyRsos>()?;
    m.add_class::<PyHalf>()?;
    m.add_function(wrap_pyfunction!(bosonic_character, m)?)?;
    m.add_function(wrap_pyfunction!(fermionic_character, m)?)?;
    m.add_function(wrap_pyfunction!(product_character, m)?)?;
    m.add_function(wrap_pyfunction!(closed_form, m)?)?;
    m.add_function(wrap_pyfunction!(rsos_paths, m)?)?;
    m.add_function(wrap_pyfunction!(rsos_gf, m)?)?;
    m.add_function(wrap_pyfunction!(half_paths, m)?)?;
    m.add_function(wrap_pyfunction!(half_gf, m)?)?;
    m.add_function(wrap_pyfunction!(bijection_forward, m)?)?;
    m.add_function(wrap_pyfunction!(bijection_inverse, m)?)?;
    m.add_function(wrap_pyfunction!(sector_gf, m)?)?;
    m.add_function(wrap_pyfunction!(minimal_path, m)?)?;
    m.add_function(wrap_pyfunction!(run_verify, m)?)?;
    Ok(())
}
