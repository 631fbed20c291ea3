//! Python bindings: compact sets, metric combinations, sampled set-valued
//! functions and the metric operators.

use metric_svf as core;
use metric_svf::svf::eval_metric_pl;
use metric_svf::{OperatorSpec, Tolerance};
use pyo3::exceptions::PyValueError;
use pyo3::prelude::*;

fn err(e: core::Error) -> PyErr {
    PyValueError::new_err(e.to_string())
}

fn tolerance(tie_eps: Option<f64>) -> PyResult<Tolerance> {
    let mut tol = Tolerance::default();
    if let Some(t) = tie_eps {
        tol.tie_eps = t;
    }
    tol.validate().map_err(err)?;
    Ok(tol)
}

/// A compact set: a finite union of closed intervals on the line, or a
/// finite point cloud in R^n.
#[pyclass(name = "CompactSet", module = "metric_svf", frozen, skip_from_py_object)]
#[derive(Clone)]
pub struct PyCompactSet {
    inner: core::CompactSet,
}

#[pymethods]
impl PyCompactSet {
    /// Union of `[lo, hi]` intervals; overlapping pieces are merged.
    #[staticmethod]
    fn intervals(pairs: Vec<(f64, f64)>) -> PyResult<Self> {
        Ok(Self {
            inner: core::CompactSet::intervals(&pairs).map_err(err)?,
        })
    }

    /// Finite set of points of a common dimension.
    #[staticmethod]
    fn points(points: Vec<Vec<f64>>) -> PyResult<Self> {
        Ok(Self {
            inner: core::CompactSet::points(points, &Tolerance::default()).map_err(err)?,
        })
    }

    #[getter]
    fn dim(&self) -> usize {
        self.inner.dim()
    }

    /// `[(lo, hi), ...]` for interval unions, `None` for point clouds.
    fn components(&self) -> Option<Vec<(f64, f64)>> {
        self.inner
            .as_intervals()
            .map(|u| u.components().iter().map(|c| (c.lo(), c.hi())).collect())
    }

    /// Points of a cloud, `None` for interval unions.
    fn cloud(&self) -> Option<Vec<Vec<f64>>> {
        self.inner.as_cloud().map(|c| c.points().to_vec())
    }

    fn hausdorff(&self, other: &PyCompactSet) -> PyResult<f64> {
        self.inner.hausdorff(&other.inner).map_err(err)
    }

    fn __eq__(&self, other: &PyCompactSet) -> bool {
        self.inner == other.inner
    }

    fn __repr__(&self) -> String {
        format!("CompactSet({})", self.inner)
    }
}

impl From<core::CompactSet> for PyCompactSet {
    fn from(inner: core::CompactSet) -> Self {
        Self { inner }
    }
}

fn unwrap_sets(sets: &[PyRef<'_, PyCompactSet>]) -> Vec<core::CompactSet> {
    sets.iter().map(|s| s.inner.clone()).collect()
}

/// `{t·a + (1 − t)·b : (a, b) metric pair of A and B}`.
#[pyfunction]
#[pyo3(signature = (a, b, t, tie_eps = None))]
fn metric_average(
    a: &PyCompactSet,
    b: &PyCompactSet,
    t: f64,
    tie_eps: Option<f64>,
) -> PyResult<PyCompactSet> {
    core::metric_average(&a.inner, &b.inner, t, &tolerance(tie_eps)?)
        .map(Into::into)
        .map_err(err)
}

/// Weighted sums over all metric chains of the sequence; weights sum to 1.
#[pyfunction]
#[pyo3(signature = (coeffs, sets, tie_eps = None))]
fn metric_linear_combination(
    coeffs: Vec<f64>,
    sets: Vec<PyRef<'_, PyCompactSet>>,
    tie_eps: Option<f64>,
) -> PyResult<PyCompactSet> {
    core::metric_linear_combination(&coeffs, &unwrap_sets(&sets), &tolerance(tie_eps)?)
        .map(Into::into)
        .map_err(err)
}

/// Sets sampled at the knots of a partition.
#[pyclass(name = "SampledSvf", module = "metric_svf", frozen)]
pub struct PySampledSvf {
    inner: core::SampledSvf,
}

#[pymethods]
impl PySampledSvf {
    #[new]
    fn new(knots: Vec<f64>, sets: Vec<PyRef<'_, PyCompactSet>>) -> PyResult<Self> {
        let partition = core::Partition::new(knots).map_err(err)?;
        Ok(Self {
            inner: core::SampledSvf::new(partition, unwrap_sets(&sets)).map_err(err)?,
        })
    }

    #[getter]
    fn knots(&self) -> Vec<f64> {
        self.inner.partition().knots().to_vec()
    }

    #[getter]
    fn values(&self) -> Vec<PyCompactSet> {
        self.inner.values().iter().cloned().map(Into::into).collect()
    }

    /// Evaluate an operator at `x`. `operator` is one of `bernstein`,
    /// `schoenberg` (order `m`), `lagrange`, `pl` or `decasteljau`;
    /// `minkowski=True` sums Minkowski-wise instead.
    #[pyo3(signature = (operator, x, m = 2, minkowski = false, tie_eps = None))]
    fn eval(
        &self,
        operator: &str,
        x: f64,
        m: u32,
        minkowski: bool,
        tie_eps: Option<f64>,
    ) -> PyResult<PyCompactSet> {
        let tol = tolerance(tie_eps)?;
        let f = &self.inner;
        let spec = match operator {
            "bernstein" => Some(OperatorSpec::bernstein()),
            "schoenberg" => Some(OperatorSpec::schoenberg(m).map_err(err)?),
            "lagrange" => Some(OperatorSpec::lagrange()),
            "pl" | "decasteljau" => None,
            other => return Err(PyValueError::new_err(format!("unknown operator {other:?}"))),
        };
        let out = match (spec, minkowski) {
            (Some(s), false) => core::apply_metric_operator(&s, f, x, &tol),
            (Some(s), true) => core::apply_minkowski_operator(&s, f, x, &tol),
            (None, true) => return Err(PyValueError::new_err(format!("{operator} has no Minkowski form"))),
            (None, false) if operator == "pl" => eval_metric_pl(f, x, &tol),
            (None, false) => core::decasteljau_ma_bernstein(f, x, &tol),
        };
        out.map(Into::into).map_err(err)
    }

    fn __repr__(&self) -> String {
        format!("SampledSvf(knots={:?})", self.inner.partition().knots())
    }
}

/// Run a verification suite; returns `(passed, report_text)`.
#[pyfunction]
#[pyo3(signature = (suite = "all", seed = core::random::DEFAULT_SEED))]
fn verify(py: Python<'_>, suite: &str, seed: u64) -> PyResult<(bool, String)> {
    let suite: core::verify::Suite = suite.parse().map_err(err)?;
    let report = py.detach(|| core::verify::run(suite, seed)).map_err(err)?;
    Ok((report.passed(), report.to_string()))
}

#[pymodule]
#[pyo3(name = "metric_svf")]
fn metric_svf_module(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_class::<PyCompactSet>()?;
    m.add_class::<PySampledSvf>()?;
    m.add_function(wrap_pyfunction!(metric_average, m)?)?;
    m.add_function(wrap_pyfunction!(metric_linear_combination, m)?)?;
    m.add_function(wrap_pyfunction!(verify, m)?)?;
    Ok(())
}
