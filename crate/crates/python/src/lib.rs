//! Python bindings. Rationals cross the boundary as `"p/q"` strings (ints
//! are accepted on input); reports and representations come back as plain
//! dicts decoded from the same JSON the CLI emits.

use pyo3::exceptions::{PyTypeError, PyValueError};
use pyo3::prelude::*;
use pyo3::types::PyString;
use serde::Serialize;

use bannai_ito::bi_operator::{self, BIParams};
use bannai_ito::bi_poly;
use bannai_ito::dirac::{self, DiracParams};
use bannai_ito::racah::{self, RacahParams};
use bannai_ito::{suite, BiError, Rat};

fn err(e: BiError) -> PyErr {
    PyValueError::new_err(e.to_string())
}

fn rat_arg(v: &Bound<'_, PyAny>) -> PyResult<Rat> {
    if let Ok(s) = v.cast::<PyString>() {
        return s.to_str()?.parse().map_err(err);
    }
    if let Ok(n) = v.extract::<i64>() {
        return Ok(Rat::int(n));
    }
    Err(PyTypeError::new_err("expected an int or a 'p/q' string"))
}

fn strs(v: &[Rat]) -> Vec<String> {
    v.iter().map(Rat::to_string).collect()
}

/// Serializes to JSON and decodes with Python's `json` module.
fn to_py<'py, T: Serialize>(py: Python<'py>, value: &T) -> PyResult<Bound<'py, PyAny>> {
    let text = serde_json::to_string(value).map_err(|e| PyValueError::new_err(e.to_string()))?;
    py.import("json")?.call_method1("loads", (text,))
}

#[pyclass(name = "BIParams", module = "bannai_ito", skip_from_py_object)]
#[derive(Clone)]
struct PyBIParams {
    inner: BIParams,
}

#[pymethods]
impl PyBIParams {
    #[new]
    fn new(rho1: &Bound<'_, PyAny>, rho2: &Bound<'_, PyAny>, r1: &Bound<'_, PyAny>, r2: &Bound<'_, PyAny>) -> PyResult<Self> {
        Ok(PyBIParams { inner: BIParams::new(rat_arg(rho1)?, rat_arg(rho2)?, rat_arg(r1)?, rat_arg(r2)?) })
    }

    #[getter]
    fn rho1(&self) -> String {
        self.inner.rho1().to_string()
    }
    #[getter]
    fn rho2(&self) -> String {
        self.inner.rho2().to_string()
    }
    #[getter]
    fn r1(&self) -> String {
        self.inner.r1().to_string()
    }
    #[getter]
    fn r2(&self) -> String {
        self.inner.r2().to_string()
    }
    #[getter]
    fn h(&self) -> String {
        self.inner.h().to_string()
    }

    /// `(omega1, omega2, omega3)`.
    fn structure_constants(&self) -> (String, String, String) {
        let (a, b, c) = bi_operator::structure_constants(&self.inner);
        (a.to_string(), b.to_string(), c.to_string())
    }

    fn casimir(&self) -> String {
        bi_operator::casimir_value(&self.inner).to_string()
    }

    fn eigenvalue(&self, n: usize) -> String {
        bi_poly::eigenvalue(&self.inner, n).to_string()
    }

    /// `(A_n, C_n)`.
    fn recurrence_coeffs(&self, n: usize) -> PyResult<(String, String)> {
        let c = bi_poly::recurrence_coeffs(&self.inner, n).map_err(err)?;
        Ok((c.a.to_string(), c.c.to_string()))
    }

    /// Coefficients of `B_n`, constant term first, by the three-term recurrence.
    fn recurrence(&self, n: usize) -> PyResult<Vec<String>> {
        Ok(strs(bi_poly::bi_recurrence(&self.inner, n).map_err(err)?.coeffs()))
    }

    fn hypergeometric(&self, n: usize) -> PyResult<Vec<String>> {
        Ok(strs(bi_poly::bi_hypergeometric(&self.inner, n).map_err(err)?.coeffs()))
    }

    fn from_operator(&self, n: usize) -> PyResult<Vec<String>> {
        Ok(strs(bi_poly::bi_from_operator(&self.inner, n).map_err(err)?.coeffs()))
    }

    fn grid_point(&self, s: usize) -> String {
        bi_poly::grid_point(&self.inner, s).to_string()
    }

    /// `[(node, weight), ...]` in ascending node order; needs `A_N = 0`.
    fn weights(&self, n: usize) -> PyResult<Vec<(f64, f64)>> {
        let nodes = bi_poly::discrete_weights(&self.inner, n).map_err(err)?;
        Ok(nodes.into_iter().map(|q| (q.node, q.weight)).collect())
    }

    fn check_relations<'py>(&self, py: Python<'py>, maxdeg: usize) -> PyResult<Bound<'py, PyAny>> {
        to_py(py, &bi_operator::check_bi_relations(&self.inner, maxdeg))
    }

    fn check_polynomials<'py>(&self, py: Python<'py>, nmax: usize) -> PyResult<Bound<'py, PyAny>> {
        to_py(py, &bi_poly::polynomial_oracle_check(&self.inner, nmax, nmax))
    }

    fn __repr__(&self) -> String {
        let p = &self.inner;
        format!("BIParams(rho1='{}', rho2='{}', r1='{}', r2='{}')", p.rho1(), p.rho2(), p.r1(), p.r2())
    }
}

#[pyclass(name = "RacahParams", module = "bannai_ito")]
struct PyRacahParams {
    inner: RacahParams,
}

#[pymethods]
impl PyRacahParams {
    #[new]
    #[pyo3(signature = (mu1, mu2, mu3, n))]
    fn new(mu1: &Bound<'_, PyAny>, mu2: &Bound<'_, PyAny>, mu3: &Bound<'_, PyAny>, n: usize) -> PyResult<Self> {
        let inner = RacahParams::new(rat_arg(mu1)?, rat_arg(mu2)?, rat_arg(mu3)?, n).map_err(err)?;
        Ok(PyRacahParams { inner })
    }

    #[getter]
    fn mu4(&self) -> String {
        self.inner.mu4().to_string()
    }

    #[getter]
    fn mu(&self) -> String {
        self.inner.mu().to_string()
    }

    fn identifications(&self) -> PyBIParams {
        PyBIParams { inner: self.inner.identifications() }
    }

    fn k3_diagonal(&self) -> Vec<String> {
        (0..=self.inner.n()).map(|k| self.inner.k3_eigenvalue(k).to_string()).collect()
    }

    fn k1_spectrum(&self) -> Vec<String> {
        (0..=self.inner.n()).map(|s| self.inner.k1_eigenvalue(s).to_string()).collect()
    }

    /// Exact tridiagonal representation as a dict of `"p/q"` entries.
    fn representation<'py>(&self, py: Python<'py>) -> PyResult<Bound<'py, PyAny>> {
        to_py(py, &racah::build_tridiag_rep(&self.inner).map_err(err)?)
    }

    fn overlaps<'py>(&self, py: Python<'py>) -> PyResult<Bound<'py, PyAny>> {
        to_py(py, &racah::racah_overlaps(&self.inner).map_err(err)?)
    }

    fn verify<'py>(&self, py: Python<'py>) -> PyResult<Bound<'py, PyAny>> {
        let rep = racah::build_tridiag_rep(&self.inner).map_err(err)?;
        to_py(py, &racah::verify_tridiag_rep(&rep, &self.inner))
    }

    /// Float tensor-product oracle on the slice `n1 + n2 + n3 = m`.
    fn tensor_oracle<'py>(&self, py: Python<'py>, m: usize) -> PyResult<Bound<'py, PyAny>> {
        to_py(py, &racah::tensor_oracle(&self.inner, m))
    }
}

/// Dunkl-Dirac identities on degree slices up to `maxdeg`.
#[pyfunction]
fn dirac_check<'py>(
    py: Python<'py>,
    mu1: &Bound<'py, PyAny>,
    mu2: &Bound<'py, PyAny>,
    mu3: &Bound<'py, PyAny>,
    maxdeg: u32,
) -> PyResult<Bound<'py, PyAny>> {
    let dp = DiracParams::new(rat_arg(mu1)?, rat_arg(mu2)?, rat_arg(mu3)?).map_err(err)?;
    to_py(py, &dirac::dirac_suite(&dp, maxdeg))
}

/// Seeded algebra-relation sweep, as run by `bi-lab verify --scope bi`.
#[pyfunction]
#[pyo3(signature = (seed = suite::DEFAULT_SEED, tuples = 50, maxdeg = 12))]
fn bi_relation_suite<'py>(py: Python<'py>, seed: u64, tuples: usize, maxdeg: usize) -> PyResult<Bound<'py, PyAny>> {
    to_py(py, &suite::bi_relation_suite(seed, tuples, maxdeg, false))
}

#[pymodule(name = "bannai_ito")]
fn bannai_ito_module(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_class::<PyBIParams>()?;
    m.add_class::<PyRacahParams>()?;
    m.add_function(wrap_pyfunction!(dirac_check, m)?)?;
    m.add_function(wrap_pyfunction!(bi_relation_suite, m)?)?;
    m.add("DEFAULT_SEED", suite::DEFAULT_SEED)?;
    Ok(())
}
