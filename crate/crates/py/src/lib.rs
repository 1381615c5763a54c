//! Python bindings, importable as `cubic_rm`.

use std::collections::BTreeMap;
use std::sync::Arc;

use num_bigint::BigInt;
use pyo3::exceptions::PyValueError;
use pyo3::prelude::*;

use cubic_rm::cli::{self, CodeArg, EnumMethod, Suite};
use cubic_rm::cubics::DEFAULT_BUDGET;
use cubic_rm::{arithfun, ecstats, ff, formulas, macwilliams};

fn err(e: cubic_rm::Error) -> PyErr {
    PyValueError::new_err(e.to_string())
}

fn code_arg(code: &str) -> PyResult<CodeArg> {
    match code {
        "proj" => Ok(CodeArg::Proj),
        "affine" => Ok(CodeArg::Affine),
        _ => Err(PyValueError::new_err(format!("unknown code {code:?}, expected 'proj' or 'affine'"))),
    }
}

#[pyclass(name = "Field", module = "cubic_rm", frozen)]
struct PyField {
    inner: Arc<ff::Field>,
}

#[pymethods]
impl PyField {
    #[new]
    fn new(q: u64) -> PyResult<Self> {
        Ok(PyField { inner: ff::field_of_order(q).map_err(err)? })
    }

    #[getter]
    fn q(&self) -> u32 {
        self.inner.q()
    }

    #[getter]
    fn p(&self) -> u32 {
        self.inner.p()
    }

    fn element(&self, code: u32) -> PyResult<u32> {
        Ok(self.inner.element(code).map_err(err)?.0)
    }

    fn add(&self, a: u32, b: u32) -> PyResult<u32> {
        let (a, b) = (self.element(a)?, self.element(b)?);
        Ok(self.inner.add(ff::FieldElement(a), ff::FieldElement(b)).0)
    }

    fn mul(&self, a: u32, b: u32) -> PyResult<u32> {
        let (a, b) = (self.element(a)?, self.element(b)?);
        Ok(self.inner.mul(ff::FieldElement(a), ff::FieldElement(b)).0)
    }

    fn inv(&self, a: u32) -> PyResult<u32> {
        let a = self.element(a)?;
        Ok(self.inner.inv(ff::FieldElement(a)).map_err(err)?.0)
    }

    fn pow(&self, a: u32, e: u64) -> PyResult<u32> {
        let a = self.element(a)?;
        Ok(self.inner.pow(ff::FieldElement(a), e).0)
    }

    fn __repr__(&self) -> String {
        format!("Field({})", self.inner.q())
    }
}

#[pyclass(name = "WeightEnumerator", module = "cubic_rm", frozen, eq)]
#[derive(PartialEq)]
struct PyWeightEnumerator {
    inner: cubic_rm::WeightEnumerator,
}

#[pymethods]
impl PyWeightEnumerator {
    #[getter]
    fn length(&self) -> usize {
        self.inner.length()
    }

    /// Nonzero coefficients keyed by weight.
    fn coefficients(&self) -> BTreeMap<usize, BigInt> {
        self.inner.iter().map(|(i, c)| (i, c.clone())).collect()
    }

    fn __getitem__(&self, weight: usize) -> BigInt {
        self.inner.get(weight)
    }

    fn total(&self) -> BigInt {
        self.inner.total()
    }

    /// Enumerator of the dual code.
    fn dual(&self, q: u64) -> PyResult<PyWeightEnumerator> {
        Ok(PyWeightEnumerator { inner: macwilliams::transform(&self.inner, q).map_err(err)? })
    }

    fn __repr__(&self) -> String {
        format!("WeightEnumerator({})", self.inner)
    }
}

#[pyfunction]
#[pyo3(signature = (q, code = "proj", method = "formula", budget = None))]
fn weight_enumerator(q: u64, code: &str, method: &str, budget: Option<u128>) -> PyResult<PyWeightEnumerator> {
    let method = match method {
        "formula" => EnumMethod::Formula,
        "brute" => EnumMethod::Brute,
        "census" => EnumMethod::Census,
        _ => return Err(PyValueError::new_err(format!("unknown method {method:?}"))),
    };
    let inner = cli::enumerate(q, code_arg(code)?, method, budget.unwrap_or(DEFAULT_BUDGET)).map_err(err)?;
    Ok(PyWeightEnumerator { inner })
}

/// `(kind, count, weight)` for the fifteen singular kinds.
#[pyfunction]
fn singular_table(q: u64) -> PyResult<Vec<(String, BigInt, i64)>> {
    let rows = formulas::singular_table(q).map_err(err)?;
    Ok(rows.into_iter().map(|r| (r.kind.name().to_string(), r.count, r.weight)).collect())
}

/// Trace masses as `{t: (numerator, denominator)}`.
#[pyfunction]
#[pyo3(signature = (q, method = "formula"))]
fn trace_distribution(q: u64, method: &str) -> PyResult<BTreeMap<i64, (BigInt, BigInt)>> {
    let d = match method {
        "formula" => ecstats::trace_distribution_formula(q),
        "brute" => ecstats::trace_distribution_bruteforce(q),
        _ => return Err(PyValueError::new_err(format!("unknown method {method:?}"))),
    }
    .map_err(err)?;
    Ok(d.masses.into_iter().map(|(t, m)| (t, (m.numer().clone(), m.denom().clone()))).collect())
}

/// Closed-form coefficient `A_j` of the dual code.
#[pyfunction]
#[pyo3(signature = (q, j, code = "proj"))]
fn dual_coefficient(q: u64, j: u32, code: &str) -> PyResult<BigInt> {
    match code_arg(code)? {
        CodeArg::Proj => macwilliams::dual_coeff_projective(q, j),
        CodeArg::Affine => macwilliams::dual_coeff_affine(q, j),
    }
    .map_err(err)
}

#[pyfunction]
fn tau(n: u64) -> PyResult<BigInt> {
    arithfun::tau(n, n.max(1)).map_err(err)
}

#[pyfunction]
fn class_number(d: i64) -> PyResult<u64> {
    arithfun::class_number(d).map_err(err)
}

/// Verification report as a JSON string.
#[pyfunction]
#[pyo3(signature = (q, suite = "all", budget = None))]
fn verify(q: u64, suite: &str, budget: Option<u128>) -> PyResult<(String, bool)> {
    let suite = match suite {
        "census" => Suite::Census,
        "projective" => Suite::Projective,
        "affine" => Suite::Affine,
        "dual" => Suite::Dual,
        "moments" => Suite::Moments,
        "torsion" => Suite::Torsion,
        "all" => Suite::All,
        _ => return Err(PyValueError::new_err(format!("unknown suite {suite:?}"))),
    };
    let (report, failed) = cli::run_verify(q, suite, budget.unwrap_or(DEFAULT_BUDGET), false).map_err(err)?;
    Ok((report.to_string(), !failed))
}

#[pymodule]
#[pyo3(name = "cubic_rm")]
fn cubic_rm_module(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_class::<PyField>()?;
    m.add_class::<PyWeightEnumerator>()?;
    m.add_function(wrap_pyfunction!(weight_enumerator, m)?)?;
    m.add_function(wrap_pyfunction!(singular_table, m)?)?;
    m.add_function(wrap_pyfunction!(trace_distribution, m)?)?;
    m.add_function(wrap_pyfunction!(dual_coefficient, m)?)?;
    m.add_function(wrap_pyfunction!(tau, m)?)?;
    m.add_function(wrap_pyfunction!(class_number, m)?)?;
    m.add_function(wrap_pyfunction!(verify, m)?)?;
    Ok(())
}
