//! Python module `frc`.
//!
//! Codes are wrapped in the `Code` class; reports come back as plain
//! dicts and lists decoded from the same JSON the CLI emits. Domain errors
//! raise `ValueError("<ErrorName>: <message>")`.

use std::ops::RangeInclusive;

use pyo3::exceptions::PyValueError;
use pyo3::prelude::*;
use serde::Serialize;

use frc_core::analysis::{self, default_file_size, weak_form_applies};
use frc_core::io::{code_from_json, code_to_json};
use frc_core::sweep::{self, AuditOptions, Family, Provenance, ThetaRule};
use frc_core::{Budget, FrCode, FrcError, IncidenceMatrix, PrgSpec, RingSpec, TSpec};

fn err(e: FrcError) -> PyErr {
    PyValueError::new_err(format!("{}: {e}", e.name()))
}

fn to_py<T: Serialize>(py: Python<'_>, value: &T) -> PyResult<Py<PyAny>> {
    let text = serde_json::to_string(value).map_err(|e| PyValueError::new_err(e.to_string()))?;
    Ok(py.import("json")?.call_method1("loads", (text,))?.unbind())
}

fn budget(explicit: Option<u128>) -> PyResult<Budget> {
    match explicit {
        Some(b) => Ok(Budget(b)),
        None => Budget::from_env().map_err(err),
    }
}

fn range((lo, hi): (usize, usize)) -> PyResult<RangeInclusive<usize>> {
    if lo > hi {
        return Err(PyValueError::new_err(format!("empty range ({lo}, {hi})")));
    }
    Ok(lo..=hi)
}

/// A fractional repetition code: `n` nodes storing packets `0..theta`.
#[pyclass(frozen, eq, skip_from_py_object, name = "Code", module = "frc")]
#[derive(Clone, PartialEq)]
struct Code {
    inner: FrCode,
}

#[pymethods]
impl Code {
    /// `storage[i]` lists the 0-based packet indices held by node `i`.
    #[new]
    fn new(n: usize, theta: usize, storage: Vec<Vec<usize>>) -> PyResult<Self> {
        FrCode::new(n, theta, storage).map(|inner| Code { inner }).map_err(err)
    }

    #[staticmethod]
    fn from_json(text: &str) -> PyResult<Self> {
        code_from_json(text).map(|inner| Code { inner }).map_err(err)
    }

    #[staticmethod]
    fn from_incidence(rows: Vec<Vec<u8>>) -> PyResult<Self> {
        let matrix = IncidenceMatrix::from_rows(rows).map_err(err)?;
        FrCode::from_incidence(&matrix).map(|inner| Code { inner }).map_err(err)
    }

    fn to_json(&self) -> String {
        code_to_json(&self.inner)
    }

    #[getter]
    fn n(&self) -> usize {
        self.inner.n()
    }

    #[getter]
    fn theta(&self) -> usize {
        self.inner.theta()
    }

    #[getter]
    fn storage(&self) -> Vec<Vec<usize>> {
        self.inner.storage()
    }

    fn profile(&self, py: Python<'_>) -> PyResult<Py<PyAny>> {
        to_py(py, &self.inner.profile())
    }

    fn identities(&self, py: Python<'_>) -> PyResult<Py<PyAny>> {
        to_py(py, &self.inner.check_identities())
    }

    fn incidence_matrix(&self) -> Vec<Vec<u32>> {
        let m = self.inner.incidence_matrix();
        m.as_rows().iter().map(|r| r.iter().map(|&b| u32::from(b)).collect()).collect()
    }

    #[pyo3(signature = (k, budget=None))]
    fn min_coverage(&self, py: Python<'_>, k: usize, budget: Option<u128>) -> PyResult<Py<PyAny>> {
        let c = analysis::min_coverage(&self.inner, k, self::budget(budget)?).map_err(err)?;
        to_py(py, &c)
    }

    /// `[M(1), ..., M(n)]`.
    #[pyo3(signature = (budget=None))]
    fn coverage_profile(&self, budget: Option<u128>) -> PyResult<Vec<usize>> {
        let p = analysis::coverage_profile(&self.inner, self::budget(budget)?).map_err(err)?;
        Ok(p.values())
    }

    #[pyo3(signature = (file_size=None, budget=None))]
    fn reconstruction_degree(&self, file_size: Option<usize>, budget: Option<u128>) -> PyResult<usize> {
        let m = file_size.unwrap_or_else(|| default_file_size(&self.inner));
        analysis::reconstruction_degree(&self.inner, m, self::budget(budget)?).map_err(err)
    }

    /// Goodness at `k` (default: the reconstruction degree). `weak=True`
    /// falls back to the strict form unless exactly one node is one packet short.
    #[pyo3(signature = (weak=false, structural=false, file_size=None, k=None, budget=None))]
    fn goodness(
        &self,
        py: Python<'_>,
        weak: bool,
        structural: bool,
        file_size: Option<usize>,
        k: Option<usize>,
        budget: Option<u128>,
    ) -> PyResult<Py<PyAny>> {
        let budget = self::budget(budget)?;
        let code = &self.inner;
        let m = file_size.unwrap_or_else(|| default_file_size(code));
        let weak = weak && weak_form_applies(code);
        let k = match k {
            Some(k) => k,
            None => analysis::reconstruction_degree(code, m, budget).map_err(err)?,
        };
        let mut report = analysis::goodness_arithmetic(k, code.profile().alpha, code.theta(), weak, m).map_err(err)?;
        if structural {
            report.structural = Some(analysis::goodness_structural(code, weak, budget).map_err(err)?);
        }
        to_py(py, &report)
    }

    /// Minimum-helper repair plan for the 0-based node `failed`.
    #[pyo3(signature = (failed, budget=None))]
    fn plan_repair(&self, py: Python<'_>, failed: usize, budget: Option<u128>) -> PyResult<Py<PyAny>> {
        let plan = frc_core::plan_repair(&self.inner, failed, self::budget(budget)?).map_err(err)?;
        to_py(py, &plan)
    }

    #[pyo3(signature = (budget=None))]
    fn repair_degree_profile(&self, budget: Option<u128>) -> PyResult<Vec<usize>> {
        frc_core::repair_degree_profile(&self.inner, self::budget(budget)?).map_err(err)
    }

    fn __repr__(&self) -> String {
        format!("Code(n={}, theta={})", self.inner.n(), self.inner.theta())
    }
}

#[pyfunction]
fn build_prg(n: usize, d: usize) -> PyResult<Code> {
    let spec = PrgSpec::new(n, d).map_err(err)?;
    Ok(Code { inner: frc_core::build_prg(&spec) })
}

#[pyfunction]
fn build_ring(n: usize, theta: usize, rho: usize) -> PyResult<Code> {
    let spec = RingSpec::new(n, theta, rho).map_err(err)?;
    Ok(Code { inner: frc_core::build_ring(&spec) })
}

#[pyfunction]
fn build_t_code(n: usize, d: usize, t: usize) -> PyResult<Code> {
    let spec = TSpec::new(n, d, t).map_err(err)?;
    Ok(Code { inner: frc_core::build_t_code(&spec) })
}

#[pyfunction]
fn prg_margin(py: Python<'_>, n: usize, d: usize) -> PyResult<Py<PyAny>> {
    to_py(py, &frc_core::prg_margin(n, d).map_err(err)?)
}

#[pyfunction]
fn ring_margin_case1(rho: i64, theta: i64) -> i64 {
    frc_core::ring_margin_case1(rho, theta)
}

#[pyfunction]
fn ring_margin_case2(m: i64, rho: i64, theta: i64) -> i64 {
    frc_core::ring_margin_case2(m, rho, theta)
}

#[pyfunction]
fn predicted_k_ring(py: Python<'_>, n: usize, theta: usize, rho: usize) -> PyResult<Py<PyAny>> {
    to_py(py, &frc_core::predicted_k_ring(n, theta, rho).map_err(err)?)
}

#[pyfunction]
#[pyo3(signature = (k, alpha, theta, weak=false, file_size=None))]
fn goodness_arithmetic(
    py: Python<'_>,
    k: usize,
    alpha: usize,
    theta: usize,
    weak: bool,
    file_size: Option<usize>,
) -> PyResult<Py<PyAny>> {
    let m = file_size.unwrap_or(theta.saturating_sub(1));
    to_py(py, &frc_core::goodness_arithmetic(k, alpha, theta, weak, m).map_err(err)?)
}

/// Ring codes with θ = m·n over inclusive `(lo, hi)` ranges.
#[pyfunction]
#[pyo3(signature = (n, rho, m, budget=None))]
fn sweep_ring(
    py: Python<'_>,
    n: (usize, usize),
    rho: (usize, usize),
    m: (usize, usize),
    budget: Option<u128>,
) -> PyResult<Py<PyAny>> {
    let rows = sweep::sweep_ring(range(n)?, range(rho)?, range(m)?, self::budget(budget)?).map_err(err)?;
    to_py(py, &rows)
}

/// Audits CSV table text; `family` is `"ring"` or `"t"`.
#[pyfunction]
#[pyo3(signature = (csv_text, family, require_rhs_positive=false, require_unique=false, budget=None))]
fn audit_table(
    py: Python<'_>,
    csv_text: &str,
    family: &str,
    require_rhs_positive: bool,
    require_unique: bool,
    budget: Option<u128>,
) -> PyResult<Py<PyAny>> {
    let family: Family = family.parse().map_err(err)?;
    let rows = sweep::read_table(csv_text, Provenance::Transcribed).map_err(err)?;
    let options = AuditOptions {
        require_rhs_positive,
        require_unique,
        budget: self::budget(budget)?,
        ..AuditOptions::default()
    };
    to_py(py, &sweep::audit_table(&rows, family, &options).map_err(err)?)
}

/// Rows of a bundled table by roman numeral, `"I"` to `"IX"`.
#[pyfunction]
fn bundled_table(py: Python<'_>, name: &str) -> PyResult<Py<PyAny>> {
    to_py(py, &frc_core::fixtures::table(name).map_err(err)?)
}

/// Cross-table relations of the bundled t-construction tables.
#[pyfunction]
fn audit_t_tables(py: Python<'_>) -> PyResult<Py<PyAny>> {
    to_py(py, &sweep::audit_t_tables(&frc_core::fixtures::t_tables()))
}

#[pyfunction]
#[pyo3(signature = (n, rho, theta_max_multiple=3, budget=None))]
fn conjecture_harness(
    py: Python<'_>,
    n: (usize, usize),
    rho: (usize, usize),
    theta_max_multiple: usize,
    budget: Option<u128>,
) -> PyResult<Py<PyAny>> {
    let rule = ThetaRule {
        max_multiple: theta_max_multiple,
        ..ThetaRule::default()
    };
    let report = sweep::conjecture_harness(range(n)?, range(rho)?, rule, self::budget(budget)?).map_err(err)?;
    to_py(py, &report)
}

#[pymodule]
fn frc(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_class::<Code>()?;
    m.add_function(wrap_pyfunction!(build_prg, m)?)?;
    m.add_function(wrap_pyfunction!(build_ring, m)?)?;
    m.add_function(wrap_pyfunction!(build_t_code, m)?)?;
    m.add_function(wrap_pyfunction!(prg_margin, m)?)?;
    m.add_function(wrap_pyfunction!(ring_margin_case1, m)?)?;
    m.add_function(wrap_pyfunction!(ring_margin_case2, m)?)?;
    m.add_function(wrap_pyfunction!(predicted_k_ring, m)?)?;
    m.add_function(wrap_pyfunction!(goodness_arithmetic, m)?)?;
    m.add_function(wrap_pyfunction!(sweep_ring, m)?)?;
    m.add_function(wrap_pyfunction!(audit_table, m)?)?;
    m.add_function(wrap_pyfunction!(bundled_table, m)?)?;
    m.add_function(wrap_pyfunction!(audit_t_tables, m)?)?;
    m.add_function(wrap_pyfunction!(conjecture_harness, m)?)?;
    Ok(())
}
