//! Python bindings. Masses cross the boundary as `fractions.Fraction`; inputs
//! may be `Fraction`, `int` or exact strings such as `"1/3"` or `"0.25"`.

use std::collections::BTreeMap;

use pyo3::create_exception;
use pyo3::exceptions::PyValueError;
use pyo3::prelude::*;
use pyo3::types::{PyDict, PyList};

use coupling_core::cli::{self, Algorithm, CertificateDoc, ResultDocument, Status};
use coupling_core::selftest::run_selftest;
use coupling_core::{validate_instance, Error, Rational, RawInstance};

create_exception!(couplings, CouplingError, PyValueError);

fn raise(err: Error) -> PyErr {
    CouplingError::new_err(format!("{}: {err}", err.kind()))
}

fn fraction<'py>(py: Python<'py>, r: &Rational) -> PyResult<Bound<'py, PyAny>> {
    py.import("fractions")?.getattr("Fraction")?.call1((r.to_string(),))
}

fn rational(value: &Bound<'_, PyAny>) -> PyResult<Rational> {
    let text = value.str()?.to_string();
    text.parse()
        .map_err(|e| CouplingError::new_err(format!("ParseError: {e}")))
}

fn parse_algorithm(name: &str) -> PyResult<Algorithm> {
    match name {
        "flow" => Ok(Algorithm::Flow),
        "bruteforce" => Ok(Algorithm::Bruteforce),
        "blowup" => Ok(Algorithm::Blowup),
        other => Err(PyValueError::new_err(format!("unknown algorithm `{other}`"))),
    }
}

/// Two labeled finite sets with a measure on each and a relation between them.
#[pyclass(module = "couplings", frozen)]
struct Instance {
    inner: coupling_core::Instance,
}

#[pymethods]
impl Instance {
    #[new]
    fn new(
        a: Vec<String>,
        b: Vec<String>,
        p: &Bound<'_, PyDict>,
        p_prime: &Bound<'_, PyDict>,
        relation: Vec<(String, String)>,
    ) -> PyResult<Self> {
        let masses = |d: &Bound<'_, PyDict>| -> PyResult<BTreeMap<String, String>> {
            d.iter()
                .map(|(k, v)| Ok((k.extract::<String>()?, rational(&v)?.to_string())))
                .collect()
        };
        let raw = RawInstance {
            a,
            b,
            p: masses(p)?,
            p_prime: masses(p_prime)?,
            r: relation,
        };
        validate_instance(&raw).map(|inner| Instance { inner }).map_err(raise)
    }

    #[staticmethod]
    fn from_json(text: &str) -> PyResult<Self> {
        coupling_core::Instance::from_json(text)
            .map(|inner| Instance { inner })
            .map_err(raise)
    }

    fn to_json(&self) -> String {
        serde_json::to_string_pretty(&self.inner.to_raw()).expect("instances serialize")
    }

    #[getter]
    fn a(&self) -> Vec<String> {
        self.inner.a_labels().to_vec()
    }

    #[getter]
    fn b(&self) -> Vec<String> {
        self.inner.b_labels().to_vec()
    }

    #[getter]
    fn p<'py>(&self, py: Python<'py>) -> PyResult<Bound<'py, PyDict>> {
        let d = PyDict::new(py);
        for (label, m) in self.inner.a_labels().iter().zip(self.inner.p()) {
            d.set_item(label, fraction(py, m)?)?;
        }
        Ok(d)
    }

    #[getter]
    fn p_prime<'py>(&self, py: Python<'py>) -> PyResult<Bound<'py, PyDict>> {
        let d = PyDict::new(py);
        for (label, m) in self.inner.b_labels().iter().zip(self.inner.p_prime()) {
            d.set_item(label, fraction(py, m)?)?;
        }
        Ok(d)
    }

    #[getter]
    fn relation(&self) -> Vec<(String, String)> {
        self.inner
            .relation()
            .iter()
            .map(|&(i, j)| (self.inner.a_labels()[i].clone(), self.inner.b_labels()[j].clone()))
            .collect()
    }

    fn __repr__(&self) -> String {
        format!(
            "Instance(|A|={}, |B|={}, |R|={})",
            self.inner.a_labels().len(),
            self.inner.b_labels().len(),
            self.inner.relation().len()
        )
    }
}

/// Violating set `U` with `lhs = P(U)` (or `|U|`) and `rhs = P'(N(U))`
/// (or `|N(U)| + k`).
#[pyclass(module = "couplings", frozen)]
struct Certificate {
    inner: CertificateDoc,
}

#[pymethods]
impl Certificate {
    #[getter]
    fn violating_set(&self) -> Vec<String> {
        self.inner.violating_set.clone()
    }

    #[getter]
    fn neighborhood(&self) -> Vec<String> {
        self.inner.neighborhood.clone()
    }

    #[getter]
    fn lhs<'py>(&self, py: Python<'py>) -> PyResult<Bound<'py, PyAny>> {
        fraction(py, &self.inner.lhs)
    }

    #[getter]
    fn rhs<'py>(&self, py: Python<'py>) -> PyResult<Bound<'py, PyAny>> {
        fraction(py, &self.inner.rhs)
    }

    #[getter]
    fn deficiency<'py>(&self, py: Python<'py>) -> PyResult<Bound<'py, PyAny>> {
        fraction(py, &self.inner.deficiency)
    }

    fn __repr__(&self) -> String {
        format!(
            "Certificate(U={:?}, N(U)={:?}, deficiency={})",
            self.inner.violating_set, self.inner.neighborhood, self.inner.deficiency
        )
    }
}

/// Outcome of a solver call: a witness (`coupling` or `matching`) when
/// `feasible`, a `certificate` when `infeasible`.
#[pyclass(module = "couplings", frozen)]
struct Result {
    doc: ResultDocument,
}

#[pymethods]
impl Result {
    #[getter]
    fn status(&self) -> &'static str {
        match self.doc.status {
            Status::Feasible => "feasible",
            Status::Infeasible => "infeasible",
            Status::Error => "error",
        }
    }

    #[getter]
    fn feasible(&self) -> bool {
        self.doc.status == Status::Feasible
    }

    /// `{(a, b): Fraction}` over the support.
    #[getter]
    fn coupling<'py>(&self, py: Python<'py>) -> PyResult<Option<Bound<'py, PyDict>>> {
        let Some(entries) = &self.doc.coupling else {
            return Ok(None);
        };
        let d = PyDict::new(py);
        for e in entries {
            d.set_item((&e.a, &e.b), fraction(py, &e.mass)?)?;
        }
        Ok(Some(d))
    }

    #[getter]
    fn matching(&self) -> Option<Vec<(String, String)>> {
        self.doc
            .matching
            .as_ref()
            .map(|m| m.iter().map(|p| (p.a.clone(), p.b.clone())).collect())
    }

    #[getter]
    fn certificate(&self) -> Option<Certificate> {
        self.doc.certificate.clone().map(|inner| Certificate { inner })
    }

    #[getter]
    fn minimal_deficiency<'py>(&self, py: Python<'py>) -> PyResult<Option<Bound<'py, PyAny>>> {
        self.doc
            .minimal_deficiency
            .as_ref()
            .map(|r| fraction(py, r))
            .transpose()
    }

    #[getter]
    fn stats<'py>(&self, py: Python<'py>) -> PyResult<Option<Bound<'py, PyDict>>> {
        let Some(s) = &self.doc.stats else {
            return Ok(None);
        };
        let d = PyDict::new(py);
        d.set_item("algorithm", &s.algorithm)?;
        if let Some(n) = s.support_size {
            d.set_item("support_size", n)?;
        }
        if let Some(f) = s.is_forest {
            d.set_item("is_forest", f)?;
        }
        if let Some(m) = &s.relation_mass {
            d.set_item("relation_mass", fraction(py, m)?)?;
        }
        if let Some(e) = &s.epsilon_used {
            d.set_item("epsilon_used", fraction(py, e)?)?;
        }
        Ok(Some(d))
    }

    fn to_json(&self) -> String {
        self.doc.to_json()
    }

    fn __repr__(&self) -> String {
        format!("Result(status={:?})", self.status())
    }
}

fn finish(doc: ResultDocument) -> PyResult<Result> {
    match &doc.error {
        Some(e) => Err(CouplingError::new_err(format!("{}: {}", e.kind, e.message))),
        None => Ok(Result { doc }),
    }
}

/// Decide whether a coupling supported on the relation exists.
#[pyfunction]
#[pyo3(signature = (instance, algorithm = "flow"))]
fn check(instance: &Instance, algorithm: &str) -> PyResult<Result> {
    finish(cli::check_instance(&instance.inner, parse_algorithm(algorithm)?))
}

/// Coupling on the relation (forest-supported with `forest=True`), or with
/// at most `epsilon` of its mass off the relation.
#[pyfunction]
#[pyo3(signature = (instance, forest = false, epsilon = None, algorithm = "flow"))]
fn couple(instance: &Instance, forest: bool, epsilon: Option<&Bound<'_, PyAny>>, algorithm: &str) -> PyResult<Result> {
    let eps = epsilon.map(rational).transpose()?;
    finish(cli::couple_instance(
        &instance.inner,
        forest,
        eps.as_ref(),
        parse_algorithm(algorithm)?,
    ))
}

/// Matching on the relation (masses ignored) missing at most `k` vertices.
#[pyfunction]
#[pyo3(signature = (instance, k = None))]
fn matching(instance: &Instance, k: Option<usize>) -> PyResult<Result> {
    finish(cli::match_instance(&instance.inner, k))
}

/// Least slack with the subset attaining it.
#[pyfunction]
fn deficiency(instance: &Instance) -> PyResult<Result> {
    finish(cli::deficiency_instance(&instance.inner))
}

/// Least slack as a `Fraction`.
#[pyfunction]
fn minimal_deficiency<'py>(py: Python<'py>, instance: &Instance) -> PyResult<Bound<'py, PyAny>> {
    let eps = coupling_core::minimal_deficiency(&instance.inner).map_err(raise)?;
    fraction(py, &eps)
}

/// Randomized cross-checks; returns the report as a dict.
#[pyfunction]
#[pyo3(signature = (size = 6, count = 100, seed = 42))]
fn selftest<'py>(py: Python<'py>, size: usize, count: usize, seed: u64) -> PyResult<Bound<'py, PyDict>> {
    let report = py.detach(|| run_selftest(size, count, seed)).map_err(raise)?;
    let d = PyDict::new(py);
    d.set_item("passed", report.passed)?;
    let checks = PyDict::new(py);
    for c in &report.checks {
        checks.set_item(&c.name, (c.passed, c.failed, c.skipped))?;
    }
    d.set_item("checks", checks)?;
    d.set_item("failures", PyList::new(py, &report.failures)?)?;
    Ok(d)
}

#[pymodule]
fn couplings(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add("CouplingError", m.py().get_type::<CouplingError>())?;
    m.add_class::<Instance>()?;
    m.add_class::<Certificate>()?;
    m.add_class::<Result>()?;
    m.add_function(wrap_pyfunction!(check, m)?)?;
    m.add_function(wrap_pyfunction!(couple, m)?)?;
    m.add_function(wrap_pyfunction!(matching, m)?)?;
    m.add_function(wrap_pyfunction!(deficiency, m)?)?;
    m.add_function(wrap_pyfunction!(minimal_deficiency, m)?)?;
    m.add_function(wrap_pyfunction!(selftest, m)?)?;
    Ok(())
}
