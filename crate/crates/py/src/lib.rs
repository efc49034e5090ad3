//! Python module `ginv`. Matrices are `ginv.Matrix` objects or nested
//! sequences of numbers (anything convertible to `complex`); results come
//! back as `ginv.Matrix`. Reports are plain dicts.

use ginv::classical;
use ginv::decomp;
use ginv::fixtures;
use ginv::io::{parse_matrix, write_matrix};
use ginv::matcore;
use ginv::report;
use ginv::suites::{run_suite, Suite, SuiteConfig};
use ginv::weakdrazin::{self, WdCertificate};
use ginv::weakinv;
use ginv::{Error, Mat, Side, Tol, C64};
use pyo3::create_exception;
use pyo3::exceptions::PyValueError;
use pyo3::prelude::*;

create_exception!(ginv, GinvError, PyValueError, "Raised for invalid input or a failed numerical check.");
create_exception!(ginv, NotMrwdError, GinvError, "X is not a minimal rank weak Drazin inverse of A.");

fn err(e: Error) -> PyErr {
    match e {
        Error::NotMrwd { .. } => NotMrwdError::new_err(e.to_string()),
        _ => GinvError::new_err(e.to_string()),
    }
}

#[pyclass(name = "Matrix", module = "ginv", frozen, skip_from_py_object)]
#[derive(Clone)]
struct PyMatrix {
    inner: Mat,
}

impl From<Mat> for PyMatrix {
    fn from(inner: Mat) -> Self {
        PyMatrix { inner }
    }
}

fn to_mat(obj: &Bound<'_, PyAny>) -> PyResult<Mat> {
    if let Ok(m) = obj.cast::<PyMatrix>() {
        return Ok(m.get().inner.clone());
    }
    let rows: Vec<Vec<C64>> = obj.extract()?;
    let cols = rows.first().map_or(0, Vec::len);
    if rows.iter().any(|r| r.len() != cols) {
        return Err(GinvError::new_err("rows have different lengths"));
    }
    let n = rows.len();
    Mat::from_row_major(n, cols, rows.into_iter().flatten().collect()).map_err(err)
}

#[pymethods]
impl PyMatrix {
    #[new]
    fn new(rows: &Bound<'_, PyAny>) -> PyResult<Self> {
        to_mat(rows).map(Into::into)
    }

    #[staticmethod]
    fn identity(n: usize) -> Self {
        Mat::identity(n).into()
    }

    #[staticmethod]
    fn zeros(rows: usize, cols: usize) -> Self {
        Mat::zeros(rows, cols).into()
    }

    /// Parses `{"rows", "cols", "data": [[re, im], ...]}` or a 2-D real array.
    #[staticmethod]
    fn from_json(text: &str) -> PyResult<Self> {
        parse_matrix(text).map(Into::into).map_err(err)
    }

    fn to_json(&self) -> String {
        write_matrix(&self.inner)
    }

    fn to_list(&self) -> Vec<Vec<C64>> {
        (0..self.inner.rows())
            .map(|i| (0..self.inner.cols()).map(|j| self.inner.get(i, j)).collect())
            .collect()
    }

    #[getter]
    fn shape(&self) -> (usize, usize) {
        self.inner.shape()
    }

    fn adjoint(&self) -> Self {
        self.inner.adjoint().into()
    }

    fn frobenius_norm(&self) -> f64 {
        self.inner.frobenius_norm()
    }

    fn __getitem__(&self, idx: (usize, usize)) -> PyResult<C64> {
        let (r, c) = self.inner.shape();
        if idx.0 >= r || idx.1 >= c {
            return Err(pyo3::exceptions::PyIndexError::new_err(format!("{idx:?} out of range for {r}x{c}")));
        }
        Ok(self.inner.get(idx.0, idx.1))
    }

    fn __matmul__(&self, other: &Bound<'_, PyAny>) -> PyResult<Self> {
        let b = to_mat(other)?;
        if self.inner.cols() != b.rows() {
            return Err(err(Error::ShapeMismatch {
                left: self.inner.shape(),
                right: b.shape(),
            }));
        }
        Ok((&self.inner * &b).into())
    }

    fn __sub__(&self, other: &Bound<'_, PyAny>) -> PyResult<Self> {
        let b = to_mat(other)?;
        if self.inner.shape() != b.shape() {
            return Err(err(Error::ShapeMismatch {
                left: self.inner.shape(),
                right: b.shape(),
            }));
        }
        Ok((&self.inner - &b).into())
    }

    fn __repr__(&self) -> String {
        let (r, c) = self.inner.shape();
        format!("Matrix({r}x{c}, {})", self.to_json())
    }
}

#[pyclass(name = "Tol", module = "ginv", frozen, skip_from_py_object)]
#[derive(Clone, Copy)]
struct PyTol {
    inner: Tol,
}

#[pymethods]
impl PyTol {
    #[new]
    #[pyo3(signature = (rank_rtol=None, eq_rtol=None))]
    fn new(rank_rtol: Option<f64>, eq_rtol: Option<f64>) -> PyResult<Self> {
        let d = Tol::default();
        Tol::new(rank_rtol.unwrap_or(d.rank_rtol), eq_rtol.unwrap_or(d.eq_rtol))
            .map(|inner| PyTol { inner })
            .map_err(err)
    }

    /// Tight tolerances for small exact fixtures.
    #[staticmethod]
    fn fixture() -> Self {
        PyTol { inner: Tol::fixture() }
    }

    #[getter]
    fn rank_rtol(&self) -> f64 {
        self.inner.rank_rtol
    }

    #[getter]
    fn eq_rtol(&self) -> f64 {
        self.inner.eq_rtol
    }

    fn __repr__(&self) -> String {
        format!("Tol(rank_rtol={:e}, eq_rtol={:e})", self.inner.rank_rtol, self.inner.eq_rtol)
    }
}

#[pyclass(name = "Certificate", module = "ginv", frozen, get_all)]
struct PyCertificate {
    side: String,
    k: usize,
    residual_wd: f64,
    rank_x: usize,
    rank_ad: usize,
    valid: bool,
}

impl From<WdCertificate> for PyCertificate {
    fn from(c: WdCertificate) -> Self {
        PyCertificate {
            side: c.side.to_string(),
            k: c.k,
            residual_wd: c.residual_wd,
            rank_x: c.rank_x,
            rank_ad: c.rank_ad,
            valid: c.valid,
        }
    }
}

#[pymethods]
impl PyCertificate {
    fn __repr__(&self) -> String {
        format!(
            "Certificate(side={}, k={}, residual_wd={:e}, rank_x={}, rank_ad={}, valid={})",
            self.side, self.k, self.residual_wd, self.rank_x, self.rank_ad, self.valid
        )
    }
}

fn tol_of(tol: Option<PyRef<'_, PyTol>>) -> Tol {
    tol.map_or_else(Tol::default, |t| t.inner)
}

fn side_of(side: &str) -> PyResult<Side> {
    match side {
        "left" => Ok(Side::Left),
        "right" => Ok(Side::Right),
        _ => Err(GinvError::new_err(format!("side must be 'left' or 'right', got {side:?}"))),
    }
}

fn json_to_py<'py, T: serde::Serialize>(py: Python<'py>, v: &T) -> PyResult<Bound<'py, PyAny>> {
    let text = serde_json::to_string(v).map_err(|e| GinvError::new_err(e.to_string()))?;
    py.import("json")?.call_method1("loads", (text,))
}

#[pyfunction]
#[pyo3(signature = (a, tol=None))]
fn rank(a: &Bound<'_, PyAny>, tol: Option<PyRef<'_, PyTol>>) -> PyResult<usize> {
    Ok(matcore::rank(&to_mat(a)?, tol_of(tol)))
}

#[pyfunction]
#[pyo3(signature = (a, tol=None))]
fn index(a: &Bound<'_, PyAny>, tol: Option<PyRef<'_, PyTol>>) -> PyResult<usize> {
    decomp::index(&to_mat(a)?, tol_of(tol)).map_err(err)
}

#[pyfunction]
#[pyo3(signature = (a, tol=None))]
fn moore_penrose(a: &Bound<'_, PyAny>, tol: Option<PyRef<'_, PyTol>>) -> PyResult<PyMatrix> {
    Ok(classical::moore_penrose(&to_mat(a)?, tol_of(tol)).into())
}

macro_rules! unary {
    ($name:ident, $f:path) => {
        #[pyfunction]
        #[pyo3(signature = (a, tol=None))]
        fn $name(a: &Bound<'_, PyAny>, tol: Option<PyRef<'_, PyTol>>) -> PyResult<PyMatrix> {
            $f(&to_mat(a)?, tol_of(tol)).map(Into::into).map_err(err)
        }
    };
}

unary!(drazin, classical::drazin);
unary!(dmp, classical::dmp);
unary!(mpd, classical::mpd);
unary!(cmp, classical::cmp);
unary!(mrwd_dmp, weakdrazin::mrwd_dmp);
unary!(mrwd_mpd_right, weakdrazin::mrwd_mpd_right);

macro_rules! binary {
    ($name:ident, $f:path) => {
        #[pyfunction]
        #[pyo3(signature = (a, x, tol=None))]
        fn $name(a: &Bound<'_, PyAny>, x: &Bound<'_, PyAny>, tol: Option<PyRef<'_, PyTol>>) -> PyResult<PyMatrix> {
            $f(&to_mat(a)?, &to_mat(x)?, tol_of(tol)).map(Into::into).map_err(err)
        }
    };
}

binary!(weak_cmp, weakinv::weak_cmp);
binary!(weak_mpd, weakinv::weak_mpd);
binary!(weak_dmp, weakinv::weak_dmp);

#[pyfunction]
#[pyo3(signature = (a, side="left", seed=0, tol=None))]
fn sample_mrwd(a: &Bound<'_, PyAny>, side: &str, seed: u64, tol: Option<PyRef<'_, PyTol>>) -> PyResult<PyMatrix> {
    weakdrazin::sample_mrwd(&to_mat(a)?, side_of(side)?, seed, tol_of(tol))
        .map(Into::into)
        .map_err(err)
}

#[pyfunction]
#[pyo3(signature = (a, x, side="left", tol=None))]
fn certify_mrwd(
    a: &Bound<'_, PyAny>,
    x: &Bound<'_, PyAny>,
    side: &str,
    tol: Option<PyRef<'_, PyTol>>,
) -> PyResult<PyCertificate> {
    weakdrazin::certify_mrwd(&to_mat(a)?, &to_mat(x)?, side_of(side)?, tol_of(tol))
        .map(Into::into)
        .map_err(err)
}

/// Every inverse of `a` with residuals, class flags and the members used.
#[pyfunction]
#[pyo3(signature = (a, x=None, seed=0, tol=None))]
fn inverse_report<'py>(
    py: Python<'py>,
    a: &Bound<'py, PyAny>,
    x: Option<&Bound<'py, PyAny>>,
    seed: u64,
    tol: Option<PyRef<'py, PyTol>>,
) -> PyResult<Bound<'py, PyAny>> {
    let x = x.map(to_mat).transpose()?;
    let r = report::inverse_report(&to_mat(a)?, x.as_ref(), seed, tol_of(tol)).map_err(err)?;
    json_to_py(py, &r)
}

/// Class predicates and every characterization checker on `(a, x)`.
#[pyfunction]
#[pyo3(signature = (a, x=None, seed=0, tol=None))]
fn class_report<'py>(
    py: Python<'py>,
    a: &Bound<'py, PyAny>,
    x: Option<&Bound<'py, PyAny>>,
    seed: u64,
    tol: Option<PyRef<'py, PyTol>>,
) -> PyResult<Bound<'py, PyAny>> {
    let x = x.map(to_mat).transpose()?;
    let r = report::class_report(&to_mat(a)?, x.as_ref(), seed, tol_of(tol)).map_err(err)?;
    json_to_py(py, &r)
}

/// Runs a verification suite on generated pairs; one dict per suite.
#[pyfunction]
#[pyo3(signature = (suite="all", n=100, size=6, seed=0, tol=None))]
fn verify<'py>(
    py: Python<'py>,
    suite: &str,
    n: usize,
    size: usize,
    seed: u64,
    tol: Option<PyRef<'py, PyTol>>,
) -> PyResult<Bound<'py, PyAny>> {
    let suite: Suite = suite.parse().map_err(err)?;
    let cfg = SuiteConfig {
        trials: n,
        size,
        seed,
        tol: tol_of(tol),
    };
    let reports = py.detach(|| run_suite(suite, &cfg));
    json_to_py(py, &reports)
}

/// A built-in fixture pair `(A, X)`.
#[pyfunction]
fn fixture(name: &str) -> PyResult<(PyMatrix, PyMatrix)> {
    let f = fixtures::by_name(name).ok_or_else(|| GinvError::new_err(format!("unknown fixture {name:?}")))?;
    Ok((f.a.into(), f.x.into()))
}

#[pyfunction]
fn fixture_names() -> Vec<&'static str> {
    fixtures::all().iter().map(|f| f.name).collect()
}

#[pymodule(name = "ginv")]
fn ginv_module(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_class::<PyMatrix>()?;
    m.add_class::<PyTol>()?;
    m.add_class::<PyCertificate>()?;
    m.add("GinvError", m.py().get_type::<GinvError>())?;
    m.add("NotMrwdError", m.py().get_type::<NotMrwdError>())?;
    m.add_function(wrap_pyfunction!(rank, m)?)?;
    m.add_function(wrap_pyfunction!(index, m)?)?;
    m.add_function(wrap_pyfunction!(moore_penrose, m)?)?;
    m.add_function(wrap_pyfunction!(drazin, m)?)?;
    m.add_function(wrap_pyfunction!(dmp, m)?)?;
    m.add_function(wrap_pyfunction!(mpd, m)?)?;
    m.add_function(wrap_pyfunction!(cmp, m)?)?;
    m.add_function(wrap_pyfunction!(mrwd_dmp, m)?)?;
    m.add_function(wrap_pyfunction!(mrwd_mpd_right, m)?)?;
    m.add_function(wrap_pyfunction!(weak_cmp, m)?)?;
    m.add_function(wrap_pyfunction!(weak_mpd, m)?)?;
    m.add_function(wrap_pyfunction!(weak_dmp, m)?)?;
    m.add_function(wrap_pyfunction!(sample_mrwd, m)?)?;
    m.add_function(wrap_pyfunction!(certify_mrwd, m)?)?;
    m.add_function(wrap_pyfunction!(inverse_report, m)?)?;
    m.add_function(wrap_pyfunction!(class_report, m)?)?;
    m.add_function(wrap_pyfunction!(verify, m)?)?;
    m.add_function(wrap_pyfunction!(fixture, m)?)?;
    m.add_function(wrap_pyfunction!(fixture_names, m)?)?;
    Ok(())
}
