//! Python bindings. Matrices go in as nested lists of ints, `Fraction`s or rational
//! strings, and come out as nested lists of `complex` (numeric) or `str` (exact).

use matsolve_core::cli::{self, Command, RunConfig};
use matsolve_core::exactalg::{format_rat, parse_rat, MonomialOrder, RatMatrix};
use matsolve_core::json::rat_rows;
use matsolve_core::matpoly::{self, SolutionSet};
use matsolve_core::numlin::{CMatrix, Tolerances};
use matsolve_core::riccati;
use matsolve_core::structured;
use matsolve_core::syscount::{self, CountOptions, EquationFile};
use matsolve_core::Error;
use num_complex::Complex64;
use pyo3::create_exception;
use pyo3::exceptions::{PyException, PyValueError};
use pyo3::prelude::*;
use pyo3::types::{PyDict, PyList};
use pyo3::IntoPyObjectExt;
use serde_json::Value;

create_exception!(matsolve, MatsolveError, PyException);
create_exception!(matsolve, NotGenericError, MatsolveError);
create_exception!(matsolve, BudgetExceededError, MatsolveError);
create_exception!(matsolve, NoConvergenceError, MatsolveError);

fn to_py_err(e: Error) -> PyErr {
    let msg = e.to_string();
    match cli::exit_code(&e) {
        2 => PyValueError::new_err(msg),
        3 => NotGenericError::new_err(msg),
        4 => BudgetExceededError::new_err(msg),
        5 => NoConvergenceError::new_err(msg),
        _ => MatsolveError::new_err(msg),
    }
}

trait OrPy<T> {
    fn py_err(self) -> PyResult<T>;
}

impl<T> OrPy<T> for matsolve_core::Result<T> {
    fn py_err(self) -> PyResult<T> {
        self.map_err(to_py_err)
    }
}

fn rat_matrix(rows: &Bound<'_, PyAny>) -> PyResult<RatMatrix> {
    let mut out = Vec::new();
    for row in rows.try_iter()? {
        let mut r = Vec::new();
        for x in row?.try_iter()? {
            r.push(parse_rat(&x?.str()?.to_cow()?).py_err()?);
        }
        out.push(r);
    }
    RatMatrix::from_rows(out).py_err()
}

fn complex_rows(m: &CMatrix) -> Vec<Vec<Complex64>> {
    m.to_rows()
}

fn json_to_py<'py>(py: Python<'py>, v: &Value) -> PyResult<Bound<'py, PyAny>> {
    Ok(match v {
        Value::Null => py.None().into_bound(py),
        Value::Bool(b) => b.into_bound_py_any(py)?,
        Value::Number(n) => match n.as_i64() {
            Some(i) => i.into_bound_py_any(py)?,
            None => n.as_f64().unwrap_or(f64::NAN).into_bound_py_any(py)?,
        },
        Value::String(s) => s.into_bound_py_any(py)?,
        Value::Array(a) => PyList::new(py, a.iter().map(|x| json_to_py(py, x)).collect::<PyResult<Vec<_>>>()?)?.into_any(),
        Value::Object(o) => {
            let d = PyDict::new(py);
            for (k, x) in o {
                d.set_item(k, json_to_py(py, x)?)?;
            }
            d.into_any()
        }
    })
}

#[pyclass(frozen, get_all)]
struct Solution {
    x: Vec<Vec<Complex64>>,
    subset: Vec<usize>,
    residual: f64,
}

#[pymethods]
impl Solution {
    fn __repr__(&self) -> String {
        format!("Solution(subset={:?}, residual={:.2e})", self.subset, self.residual)
    }
}

#[pyclass(frozen, get_all, name = "SolutionSet")]
struct PySolutionSet {
    solutions: Vec<Py<Solution>>,
    method: String,
    count_expected: Option<usize>,
    all_simple: bool,
    max_residual: f64,
}

#[pymethods]
impl PySolutionSet {
    fn __len__(&self) -> usize {
        self.solutions.len()
    }

    fn __repr__(&self) -> String {
        format!("SolutionSet(method={}, count={}, max_residual={:.2e})", self.method, self.solutions.len(), self.max_residual)
    }
}

fn wrap_set(py: Python<'_>, set: SolutionSet) -> PyResult<PySolutionSet> {
    let method = serde_json::to_value(set.method).ok().and_then(|v| v.as_str().map(String::from)).unwrap_or_default();
    let max_residual = set.max_residual();
    let solutions = set
        .solutions
        .into_iter()
        .map(|s| Py::new(py, Solution { x: complex_rows(&s.x), subset: s.subset, residual: s.residual }))
        .collect::<PyResult<_>>()?;
    Ok(PySolutionSet { solutions, method, count_expected: set.count_expected, all_simple: set.all_simple, max_residual })
}

/// `sum A_i X^i` with rational coefficients `A_0, ..., A_k`.
#[pyclass(frozen)]
struct MatPolynomial(matpoly::MatPolynomial);

#[pymethods]
impl MatPolynomial {
    #[new]
    fn new(coeffs: Vec<Bound<'_, PyAny>>) -> PyResult<Self> {
        let c = coeffs.iter().map(rat_matrix).collect::<PyResult<Vec<_>>>()?;
        Ok(MatPolynomial(matpoly::MatPolynomial::from_rat(c).py_err()?))
    }

    #[staticmethod]
    #[pyo3(signature = (n, k, seed, max_retries = 16))]
    fn random_generic(n: usize, k: usize, seed: u64, max_retries: u32) -> PyResult<Self> {
        Ok(MatPolynomial(matpoly::random_generic_unilateral(n, k, seed, max_retries).py_err()?.0))
    }

    #[getter]
    fn n(&self) -> usize {
        self.0.n()
    }

    #[getter]
    fn k(&self) -> usize {
        self.0.k()
    }

    /// Coefficients of `det(sum lambda^i A_i)`, constant term first, as rational strings.
    fn det_lambda(&self) -> PyResult<Vec<String>> {
        match matpoly::det_lambda(&self.0).py_err()? {
            matpoly::LambdaPoly::Exact(p) => Ok(p.coeffs().iter().map(format_rat).collect()),
            matpoly::LambdaPoly::Numeric(_) => Err(MatsolveError::new_err("coefficients are not rational")),
        }
    }

    fn solve(&self, py: Python<'_>) -> PyResult<PySolutionSet> {
        wrap_set(py, matpoly::solve_unilateral(&self.0).py_err()?)
    }

    fn residual(&self, x: Vec<Vec<Complex64>>) -> PyResult<f64> {
        let m = CMatrix::from_vec(x.len(), x.len(), x.into_iter().flatten().collect()).py_err()?;
        Ok(matpoly::verify_solvent(&self.0, &m).py_err()?.residual)
    }
}

/// `XAX + B1 X + X B2 + C = 0`.
#[pyclass(frozen)]
struct RiccatiProblem(riccati::RiccatiProblem);

#[pymethods]
impl RiccatiProblem {
    #[new]
    fn new(a: Bound<'_, PyAny>, b1: Bound<'_, PyAny>, b2: Bound<'_, PyAny>, c: Bound<'_, PyAny>) -> PyResult<Self> {
        Ok(RiccatiProblem(riccati::RiccatiProblem::new(rat_matrix(&a)?, rat_matrix(&b1)?, rat_matrix(&b2)?, rat_matrix(&c)?).py_err()?))
    }

    #[staticmethod]
    #[pyo3(signature = (n, seed, max_retries = 16))]
    fn random_generic(n: usize, seed: u64, max_retries: u32) -> PyResult<Self> {
        Ok(RiccatiProblem(riccati::random_generic_riccati(n, seed, max_retries).py_err()?.0))
    }

    fn hamiltonian_solve(&self, py: Python<'_>) -> PyResult<PySolutionSet> {
        wrap_set(py, riccati::hamiltonian_solve(&self.0).py_err()?.set)
    }

    fn solve_by_reduction(&self, py: Python<'_>) -> PyResult<PySolutionSet> {
        wrap_set(py, riccati::solve_by_reduction(&self.0, &Default::default()).py_err()?)
    }

    /// Exact count as a dict; see `count_solutions`.
    fn count<'py>(&self, py: Python<'py>) -> PyResult<Bound<'py, PyAny>> {
        count_spec(py, &self.0.to_spec(), MonomialOrder::Grevlex)
    }

    fn equation(&self) -> PyResult<String> {
        Ok(serde_json::to_string(&self.0.to_spec().to_file()).expect("serializable"))
    }
}

fn count_spec<'py>(py: Python<'py>, spec: &syscount::EquationSpec, order: MonomialOrder) -> PyResult<Bound<'py, PyAny>> {
    let r = syscount::count_solutions_with(spec, &CountOptions { order, ..CountOptions::default() }).py_err()?;
    json_to_py(py, &serde_json::to_value(r.to_json()).expect("serializable"))
}

fn parse_order(order: &str) -> PyResult<MonomialOrder> {
    match order {
        "grevlex" => Ok(MonomialOrder::Grevlex),
        "lex" => Ok(MonomialOrder::Lex),
        other => Err(PyValueError::new_err(format!("unknown order {other:?}"))),
    }
}

fn equation_from_json(equation: &str) -> PyResult<syscount::EquationSpec> {
    let file: EquationFile = serde_json::from_str(equation).map_err(|e| PyValueError::new_err(e.to_string()))?;
    file.parse().py_err()
}

/// Counts solutions of an equation given as a JSON string (`{"n", "terms", "constants"}`).
#[pyfunction]
#[pyo3(signature = (equation, order = "grevlex"))]
fn count_solutions<'py>(py: Python<'py>, equation: &str, order: &str) -> PyResult<Bound<'py, PyAny>> {
    count_spec(py, &equation_from_json(equation)?, parse_order(order)?)
}

/// Exact Jacobian rows at a rational point.
#[pyfunction]
fn jacobian_at(equation: &str, point: Bound<'_, PyAny>) -> PyResult<(Vec<Vec<String>>, bool)> {
    let r = syscount::jacobian_at(&equation_from_json(equation)?, &rat_matrix(&point)?).py_err()?;
    Ok((rat_rows(&r.jacobian), r.singular))
}

#[pyfunction]
fn symmetric_solve(py: Python<'_>, b: Bound<'_, PyAny>, c: Bound<'_, PyAny>) -> PyResult<PySolutionSet> {
    wrap_set(py, structured::symmetric_quadratic_solve(&rat_matrix(&b)?, &rat_matrix(&c)?).py_err()?)
}

/// Solves `X^k + X^{k-1} B_{k-1} + ... + B_0 = 0` for commuting `B_j`.
#[pyfunction]
fn commuting_solve(py: Python<'_>, coeffs: Vec<Bound<'_, PyAny>>) -> PyResult<PySolutionSet> {
    let b = coeffs.iter().map(rat_matrix).collect::<PyResult<Vec<_>>>()?;
    let fam = structured::CommutingFamily::from_rat(b).py_err()?;
    wrap_set(py, structured::commuting_solve(&fam).py_err()?)
}

/// `(dimension, number of components)` of the top stratum of `Z^2 + TZ = 0`.
#[pyfunction]
fn binome_stratum_count(n: usize) -> (usize, u128) {
    structured::binome_stratum_count(n)
}

/// Classification of every catalogue fixture, as a list of dicts.
#[pyfunction]
fn fixtures<'py>(py: Python<'py>) -> PyResult<Bound<'py, PyAny>> {
    run(py, "fixtures", None, 0, "unilateral", 2, 2)
}

/// Runs a CLI command in-process and returns the report as a dict.
#[pyfunction]
#[pyo3(signature = (command, input = None, seed = 0, shape = "unilateral", n = 2, k = 2))]
fn run<'py>(py: Python<'py>, command: &str, input: Option<String>, seed: u64, shape: &str, n: usize, k: usize) -> PyResult<Bound<'py, PyAny>> {
    let mut cfg = RunConfig::new(command.parse::<Command>().py_err()?);
    cfg.input = input;
    cfg.seed = seed;
    cfg.tolerances = Tolerances::default();
    cfg.n = n;
    cfg.k = k;
    if cfg.command == Command::RandomInstance {
        cfg.shape = Some(shape.parse().py_err()?);
    }
    let report = py.detach(|| cli::run(&cfg)).py_err()?;
    json_to_py(py, &report.to_json())
}

#[pymodule]
#[pyo3(name = "matsolve")]
fn matsolve_py(m: &Bound<'_, PyModule>) -> PyResult<()> {
    let py = m.py();
    m.add("MatsolveError", py.get_type::<MatsolveError>())?;
    m.add("NotGenericError", py.get_type::<NotGenericError>())?;
    m.add("BudgetExceededError", py.get_type::<BudgetExceededError>())?;
    m.add("NoConvergenceError", py.get_type::<NoConvergenceError>())?;
    m.add_class::<MatPolynomial>()?;
    m.add_class::<RiccatiProblem>()?;
    m.add_class::<PySolutionSet>()?;
    m.add_class::<Solution>()?;
    m.add_function(wrap_pyfunction!(count_solutions, m)?)?;
    m.add_function(wrap_pyfunction!(jacobian_at, m)?)?;
    m.add_function(wrap_pyfunction!(symmetric_solve, m)?)?;
    m.add_function(wrap_pyfunction!(commuting_solve, m)?)?;
    m.add_function(wrap_pyfunction!(binome_stratum_count, m)?)?;
    m.add_function(wrap_pyfunction!(fixtures, m)?)?;
    m.add_function(wrap_pyfunction!(run, m)?)?;
    Ok(())
}
