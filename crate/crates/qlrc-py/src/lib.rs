//! Python bindings for the finite-field coding engine.
//!
//! The module mirrors the CLI surface: `Field`, `Code`, and `ProductSpec`
//! wrap the core types for interactive computation, while `matrix`,
//! `construct`, and `table` return plain dictionaries with the same shape
//! as the CLI JSON output so results round-trip between the two.

// The pymethods macro expands fallible methods through an error conversion
// that clippy flags as useless when the error is already PyErr.
#![allow(clippy::useless_conversion)]

use pyo3::exceptions::PyValueError;
use pyo3::prelude::*;
use pyo3::types::{PyBool, PyDict, PyFloat, PyList, PyString, PyTuple};
use serde::Serialize;
use std::sync::Arc;

use qlrc_core::{
    build_family, check_dual_containing, euclidean_selforth_matrix, grs, hermitian_dc_grs,
    hermitian_ordered_matrix, hermitian_selforth_matrix, make_field, mpc_code, mpc_distance,
    mpc_dual, mpc_dual_distance_bound, quantum_defect, reproduce_table, rs, rs_enlarge,
    singleton_defect, vandermonde, DualKind, El, FMatrix, FamilyRequest, Field as CoreField,
    LinearCode, MpcSpec, MpcSpecDescriptor, SelforthVariant, DEFAULT_BUDGET,
};

// ---------------------------------------------------------------------------
// conversions

fn core_err(e: qlrc_core::Error) -> PyErr {
    PyValueError::new_err(e.to_string())
}

fn value_to_py(py: Python<'_>, v: &serde_json::Value) -> PyResult<PyObject> {
    Ok(match v {
        serde_json::Value::Null => py.None(),
        serde_json::Value::Bool(b) => b.into_py(py),
        serde_json::Value::Number(n) => {
            if let Some(i) = n.as_i64() {
                i.into_py(py)
            } else if let Some(u) = n.as_u64() {
                u.into_py(py)
            } else {
                n.as_f64().unwrap_or(f64::NAN).into_py(py)
            }
        }
        serde_json::Value::String(s) => s.into_py(py),
        serde_json::Value::Array(items) => {
            let list = PyList::empty_bound(py);
            for item in items {
                list.append(value_to_py(py, item)?)?;
            }
            list.into_py(py)
        }
        serde_json::Value::Object(map) => {
            let dict = PyDict::new_bound(py);
            for (key, item) in map {
                dict.set_item(key, value_to_py(py, item)?)?;
            }
            dict.into_py(py)
        }
    })
}

fn py_to_value(obj: &Bound<'_, PyAny>) -> PyResult<serde_json::Value> {
    if obj.is_none() {
        return Ok(serde_json::Value::Null);
    }
    if let Ok(b) = obj.downcast::<PyBool>() {
        return Ok(serde_json::Value::Bool(b.is_true()));
    }
    if let Ok(s) = obj.downcast::<PyString>() {
        return Ok(serde_json::Value::String(s.to_cow()?.into_owned()));
    }
    if obj.downcast::<PyFloat>().is_ok() {
        let f: f64 = obj.extract()?;
        return serde_json::Number::from_f64(f)
            .map(serde_json::Value::Number)
            .ok_or_else(|| PyValueError::new_err("non-finite float in request"));
    }
    if let Ok(i) = obj.extract::<i64>() {
        return Ok(serde_json::Value::Number(i.into()));
    }
    if let Ok(u) = obj.extract::<u64>() {
        return Ok(serde_json::Value::Number(u.into()));
    }
    if let Ok(dict) = obj.downcast::<PyDict>() {
        let mut map = serde_json::Map::new();
        for (key, item) in dict.iter() {
            map.insert(key.extract::<String>()?, py_to_value(&item)?);
        }
        return Ok(serde_json::Value::Object(map));
    }
    if let Ok(list) = obj.downcast::<PyList>() {
        let mut items = Vec::with_capacity(list.len());
        for item in list.iter() {
            items.push(py_to_value(&item)?);
        }
        return Ok(serde_json::Value::Array(items));
    }
    if let Ok(tuple) = obj.downcast::<PyTuple>() {
        let mut items = Vec::with_capacity(tuple.len());
        for item in tuple.iter() {
            items.push(py_to_value(&item)?);
        }
        return Ok(serde_json::Value::Array(items));
    }
    Err(PyValueError::new_err(format!(
        "cannot convert {} to a JSON value",
        obj.get_type().name()?
    )))
}

fn to_py<T: Serialize>(py: Python<'_>, value: &T) -> PyResult<PyObject> {
    let v = serde_json::to_value(value)
        .map_err(|e| PyValueError::new_err(format!("serialization failed: {e}")))?;
    value_to_py(py, &v)
}

fn parse_dual_kind(kind: &str) -> PyResult<DualKind> {
    match kind {
        "euclidean" => Ok(DualKind::Euclidean),
        "hermitian" => Ok(DualKind::Hermitian),
        other => Err(PyValueError::new_err(format!(
            "dual kind must be \"euclidean\" or \"hermitian\", got {other:?}"
        ))),
    }
}

fn rows_of(m: &FMatrix) -> Vec<Vec<El>> {
    (0..m.rows()).map(|i| m.row(i).to_vec()).collect()
}

// ---------------------------------------------------------------------------
// Field

/// A finite field GF(p^m) with tabulated arithmetic on element codes
/// 0..q-1 (polynomial-basis encoding, base p).
#[pyclass(frozen, name = "Field", module = "qlrc")]
struct PyField {
    inner: Arc<CoreField>,
}

impl PyField {
    fn el(&self, a: El) -> PyResult<El> {
        if (a as usize) < self.inner.q() {
            Ok(a)
        } else {
            Err(PyValueError::new_err(format!(
                "element {a} out of range for a field of order {}",
                self.inner.q()
            )))
        }
    }
}

#[pymethods]
impl PyField {
    #[new]
    #[pyo3(signature = (p, m=1))]
    fn new(p: u16, m: u32) -> PyResult<Self> {
        Ok(PyField {
            inner: make_field(p, m).map_err(core_err)?,
        })
    }

    #[getter]
    fn p(&self) -> u16 {
        self.inner.p()
    }

    #[getter]
    fn m(&self) -> u32 {
        self.inner.m()
    }

    #[getter]
    fn q(&self) -> usize {
        self.inner.q()
    }

    /// Modulus polynomial coefficients, low to high (length m + 1).
    #[getter]
    fn modulus(&self) -> Vec<u16> {
        self.inner.modulus().to_vec()
    }

    /// The scaling constant (p - 1)/2 used by half-sum identities.
    fn lambda_(&self) -> El {
        self.inner.lambda()
    }

    /// Base b of the conjugation x -> x^b when q is a square, else None.
    fn conjugation_base(&self) -> Option<usize> {
        self.inner.conjugation_base()
    }

    /// All elements in the canonical enumeration order (0, then powers
    /// of the generator for extension fields).
    fn elements(&self) -> Vec<El> {
        self.inner.elements().to_vec()
    }

    fn add(&self, a: El, b: El) -> PyResult<El> {
        Ok(self.inner.add(self.el(a)?, self.el(b)?))
    }

    fn sub(&self, a: El, b: El) -> PyResult<El> {
        Ok(self.inner.sub(self.el(a)?, self.el(b)?))
    }

    fn neg(&self, a: El) -> PyResult<El> {
        Ok(self.inner.neg(self.el(a)?))
    }

    fn mul(&self, a: El, b: El) -> PyResult<El> {
        Ok(self.inner.mul(self.el(a)?, self.el(b)?))
    }

    fn inv(&self, a: El) -> PyResult<El> {
        if self.el(a)? == 0 {
            return Err(PyValueError::new_err("inverse of zero"));
        }
        Ok(self.inner.inv(a))
    }

    fn div(&self, a: El, b: El) -> PyResult<El> {
        if self.el(b)? == 0 {
            return Err(PyValueError::new_err("division by zero"));
        }
        Ok(self.inner.div(self.el(a)?, b))
    }

    fn pow(&self, a: El, e: i64) -> PyResult<El> {
        if self.el(a)? == 0 && e < 0 {
            return Err(PyValueError::new_err("negative power of zero"));
        }
        Ok(self.inner.pow(a, e))
    }

    /// Conjugate x -> x^sqrt(q); requires a square field order.
    fn conjugate(&self, a: El) -> PyResult<El> {
        self.inner.conjugate(self.el(a)?).map_err(core_err)
    }

    /// Polynomial-basis coefficients of an element, low to high.
    fn coeffs(&self, a: El) -> PyResult<Vec<u16>> {
        Ok(self.inner.coeffs(self.el(a)?))
    }

    /// The r-th roots of unity in enumeration order; r must divide q - 1.
    fn unit_roots(&self, r: usize) -> PyResult<Vec<El>> {
        self.inner.unit_roots(r).map_err(core_err)
    }

    /// Sum of x^t over the r-th roots of unity.
    fn power_sum(&self, r: usize, t: u64) -> PyResult<El> {
        self.inner.power_sum(r, t).map_err(core_err)
    }

    /// Elements of the index-2 subfield (square field orders only).
    fn subfield_elements(&self) -> PyResult<Vec<El>> {
        self.inner.subfield_elements().map_err(core_err)
    }

    fn descriptor(&self, py: Python<'_>) -> PyResult<PyObject> {
        to_py(py, &self.inner.descriptor())
    }

    fn __len__(&self) -> usize {
        self.inner.q()
    }

    fn __repr__(&self) -> String {
        format!(
            "Field(GF({}^{}) of order {})",
            self.inner.p(),
            self.inner.m(),
            self.inner.q()
        )
    }
}

// ---------------------------------------------------------------------------
// Code

/// A linear code held by a row-reduced generator matrix.
#[pyclass(frozen, name = "Code", module = "qlrc")]
#[derive(Clone)]
struct PyCode {
    inner: LinearCode,
}

#[pymethods]
impl PyCode {
    /// Builds a code from explicit generator rows over the given field.
    #[new]
    fn new(field: &PyField, rows: Vec<Vec<El>>) -> PyResult<Self> {
        let g = FMatrix::from_rows(field.inner.clone(), &rows).map_err(core_err)?;
        Ok(PyCode {
            inner: LinearCode::code_from_generator(&g).map_err(core_err)?,
        })
    }

    /// The [m, k] code evaluating polynomials of degree < k on the first
    /// m enumeration points.
    #[staticmethod]
    fn rs(field: &PyField, m: usize, k: usize) -> PyResult<Self> {
        Ok(PyCode {
            inner: rs(&field.inner, m, k).map_err(core_err)?,
        })
    }

    /// Generalized evaluation code on the given points with per-column
    /// multipliers.
    #[staticmethod]
    fn grs(field: &PyField, points: Vec<El>, multipliers: Vec<El>, k: usize) -> PyResult<Self> {
        Ok(PyCode {
            inner: grs(&field.inner, &points, &multipliers, k).map_err(core_err)?,
        })
    }

    /// Length q0^2 evaluation code over GF(q0^2) whose Hermitian dual it
    /// contains, with the twist exponent a.
    #[staticmethod]
    fn hermitian_dc_grs(q0: u16, a: usize, k: usize) -> PyResult<Self> {
        Ok(PyCode {
            inner: hermitian_dc_grs(q0, a, k).map_err(core_err)?,
        })
    }

    #[staticmethod]
    fn zero(field: &PyField, n: usize) -> Self {
        PyCode {
            inner: LinearCode::zero_code(field.inner.clone(), n),
        }
    }

    #[staticmethod]
    fn full(field: &PyField, n: usize) -> Self {
        PyCode {
            inner: LinearCode::full_code(field.inner.clone(), n),
        }
    }

    #[staticmethod]
    fn from_descriptor(d: &Bound<'_, PyAny>) -> PyResult<Self> {
        let value = py_to_value(d)?;
        let desc = serde_json::from_value(value)
            .map_err(|e| PyValueError::new_err(format!("invalid code descriptor: {e}")))?;
        Ok(PyCode {
            inner: LinearCode::from_descriptor(&desc).map_err(core_err)?,
        })
    }

    #[getter]
    fn n(&self) -> usize {
        self.inner.len()
    }

    #[getter]
    fn k(&self) -> usize {
        self.inner.dim()
    }

    fn field(&self) -> PyField {
        PyField {
            inner: self.inner.field().clone(),
        }
    }

    /// Rows of the reduced generator matrix.
    fn generator(&self) -> Vec<Vec<El>> {
        rows_of(self.inner.generator())
    }

    fn is_mds(&self) -> bool {
        self.inner.is_mds()
    }

    /// The Euclidean or Hermitian dual code.
    #[pyo3(signature = (kind="euclidean"))]
    fn dual(&self, kind: &str) -> PyResult<PyCode> {
        Ok(PyCode {
            inner: self.inner.dual(parse_dual_kind(kind)?).map_err(core_err)?,
        })
    }

    fn contains(&self, other: &PyCode) -> PyResult<bool> {
        self.inner.contains(&other.inner).map_err(core_err)
    }

    fn contains_word(&self, v: Vec<El>) -> PyResult<bool> {
        if v.len() != self.inner.len() {
            return Err(PyValueError::new_err(format!(
                "word length {} does not match code length {}",
                v.len(),
                self.inner.len()
            )));
        }
        Ok(self.inner.contains_vec(&v))
    }

    /// Minimum-distance certificate as a dict with keys value, kind,
    /// and method. The budget caps the enumeration work.
    #[pyo3(signature = (budget=None))]
    fn min_distance(&self, py: Python<'_>, budget: Option<u64>) -> PyResult<PyObject> {
        to_py(
            py,
            &self.inner.min_distance(budget.unwrap_or(DEFAULT_BUDGET)),
        )
    }

    /// The degree-raising extension used by the length 2m+1 chain family.
    fn rs_enlarge(&self) -> PyResult<PyCode> {
        Ok(PyCode {
            inner: rs_enlarge(&self.inner).map_err(core_err)?,
        })
    }

    fn descriptor(&self, py: Python<'_>) -> PyResult<PyObject> {
        to_py(py, &self.inner.descriptor())
    }

    fn __len__(&self) -> usize {
        self.inner.len()
    }

    fn __repr__(&self) -> String {
        format!(
            "Code([{}, {}] over GF({}))",
            self.inner.len(),
            self.inner.dim(),
            self.inner.field().q()
        )
    }
}

// ---------------------------------------------------------------------------
// ProductSpec

/// A matrix-product construction: constituent codes C_1..C_s over a
/// common field and length, combined by an s x h matrix.
#[pyclass(frozen, name = "ProductSpec", module = "qlrc")]
struct PyProductSpec {
    inner: MpcSpec,
}

#[pymethods]
impl PyProductSpec {
    #[new]
    fn new(codes: Vec<PyCode>, a: Vec<Vec<El>>) -> PyResult<Self> {
        let field = codes
            .first()
            .ok_or_else(|| PyValueError::new_err("at least one constituent code required"))?
            .inner
            .field()
            .clone();
        let a = FMatrix::from_rows(field, &a).map_err(core_err)?;
        let constituents = codes.into_iter().map(|c| c.inner).collect();
        Ok(PyProductSpec {
            inner: MpcSpec::new(constituents, a, None).map_err(core_err)?,
        })
    }

    #[staticmethod]
    fn from_descriptor(d: &Bound<'_, PyAny>) -> PyResult<Self> {
        let value = py_to_value(d)?;
        let desc: MpcSpecDescriptor = serde_json::from_value(value)
            .map_err(|e| PyValueError::new_err(format!("invalid product spec: {e}")))?;
        Ok(PyProductSpec {
            inner: MpcSpec::from_descriptor(&desc).map_err(core_err)?,
        })
    }

    #[getter]
    fn m(&self) -> usize {
        self.inner.m()
    }

    #[getter]
    fn h(&self) -> usize {
        self.inner.h()
    }

    #[getter]
    fn s(&self) -> usize {
        self.inner.s()
    }

    /// Whether the constituents form a descending chain C_1 ⊇ ... ⊇ C_s.
    #[getter]
    fn nested(&self) -> bool {
        self.inner.is_nested()
    }

    fn field(&self) -> PyField {
        PyField {
            inner: self.inner.field().clone(),
        }
    }

    fn constituents(&self) -> Vec<PyCode> {
        self.inner
            .constituents()
            .iter()
            .map(|c| PyCode { inner: c.clone() })
            .collect()
    }

    fn matrix(&self) -> Vec<Vec<El>> {
        rows_of(self.inner.matrix())
    }

    /// The length m*h product code itself.
    fn code(&self) -> PyCode {
        PyCode {
            inner: mpc_code(&self.inner),
        }
    }

    /// Distance certificate for the product (nested chains get the exact
    /// min over i of d_i * (h - i + 1) formula).
    #[pyo3(signature = (budget=None))]
    fn distance(&self, py: Python<'_>, budget: Option<u64>) -> PyResult<PyObject> {
        to_py(
            py,
            &mpc_distance(&self.inner, budget.unwrap_or(DEFAULT_BUDGET)),
        )
    }

    /// The dual of the product as a product of dual constituents.
    #[pyo3(signature = (kind="euclidean"))]
    fn dual(&self, kind: &str) -> PyResult<PyCode> {
        Ok(PyCode {
            inner: mpc_dual(&self.inner, parse_dual_kind(kind)?).map_err(core_err)?,
        })
    }

    /// Gram-criterion report for dual containment, as a dict with keys
    /// kind, verdict, and failures.
    #[pyo3(signature = (kind="euclidean"))]
    fn check_dual_containing(&self, py: Python<'_>, kind: &str) -> PyResult<PyObject> {
        let report =
            check_dual_containing(&self.inner, parse_dual_kind(kind)?).map_err(core_err)?;
        to_py(py, &report.descriptor())
    }

    /// Lower bound on the dual distance (None when no finite bound holds).
    #[pyo3(signature = (kind="euclidean", budget=None))]
    fn dual_distance_bound(
        &self,
        py: Python<'_>,
        kind: &str,
        budget: Option<u64>,
    ) -> PyResult<PyObject> {
        let bound = mpc_dual_distance_bound(
            &self.inner,
            parse_dual_kind(kind)?,
            budget.unwrap_or(DEFAULT_BUDGET),
        )
        .map_err(core_err)?;
        to_py(py, &bound)
    }

    fn descriptor(&self, py: Python<'_>) -> PyResult<PyObject> {
        to_py(py, &self.inner.descriptor())
    }

    fn __repr__(&self) -> String {
        format!(
            "ProductSpec({} constituents of length {} over GF({}), h = {})",
            self.inner.s(),
            self.inner.m(),
            self.inner.field().q(),
            self.inner.h()
        )
    }
}

// ---------------------------------------------------------------------------
// module functions

/// Named evaluation matrices with self-orthogonality structure, as a dict
/// matching the CLI `matrix` JSON output. Kinds: "vandermonde", "adot"
/// (whole-field Euclidean), "addot" (whole-field Hermitian with row
/// pairing), "bsigma" (ordered Hermitian prefix rows).
#[pyfunction]
#[pyo3(signature = (kind, p, m=1, s=None, h=None))]
fn matrix(
    py: Python<'_>,
    kind: &str,
    p: u16,
    m: u32,
    s: Option<usize>,
    h: Option<usize>,
) -> PyResult<PyObject> {
    let field = make_field(p, m).map_err(core_err)?;
    let q = field.q();
    let (kind_name, plain, mat, gram_kind, pairing) = match kind {
        "vandermonde" => {
            let h = h.unwrap_or(q);
            let s = s.unwrap_or(h);
            let a = vandermonde(&field, h, s).map_err(core_err)?;
            ("vandermonde", None, a, "euclidean", None)
        }
        "adot" => {
            let (a, _) =
                euclidean_selforth_matrix(&field, q, SelforthVariant::FullQ).map_err(core_err)?;
            let plain = vandermonde(&field, q, q).map_err(core_err)?;
            ("adot", Some(plain), a, "euclidean", None)
        }
        "addot" => {
            let (a, sigma) = hermitian_selforth_matrix(&field).map_err(core_err)?;
            ("addot", None, a, "hermitian", Some(sigma))
        }
        "bsigma" => {
            let s = s.unwrap_or(q);
            let a = hermitian_ordered_matrix(&field, s).map_err(core_err)?;
            ("bsigma", None, a, "hermitian", None)
        }
        other => {
            return Err(PyValueError::new_err(format!(
                "matrix kind must be one of vandermonde, adot, addot, bsigma; got {other:?}"
            )))
        }
    };
    let gram = match gram_kind {
        "euclidean" => mat.gram_euclidean(),
        _ => mat.gram_hermitian().map_err(core_err)?,
    };
    let out = PyDict::new_bound(py);
    out.set_item("field", to_py(py, &field.descriptor())?)?;
    out.set_item("kind", kind_name)?;
    if let Some(plain) = plain {
        out.set_item("vandermonde", rows_of(&plain))?;
    }
    out.set_item("matrix", rows_of(&mat))?;
    out.set_item("gram_kind", gram_kind)?;
    out.set_item("gram", rows_of(&gram))?;
    if let Some(sigma) = pairing {
        out.set_item("pairing", sigma)?;
    }
    Ok(out.into_py(py))
}

/// Builds a named family instance from a request dict such as
/// {"family": "el46", "q0": 3, "a": 1, "b": 1} and returns a dict with
/// keys request, claims, level, report, structure, and (when a product
/// construction backs the instance) spec. Matches the CLI `construct`
/// JSON output.
#[pyfunction]
#[pyo3(signature = (request, deep=false, budget=None))]
fn construct(
    py: Python<'_>,
    request: &Bound<'_, PyAny>,
    deep: bool,
    budget: Option<u64>,
) -> PyResult<PyObject> {
    let value = py_to_value(request)?;
    let req: FamilyRequest = serde_json::from_value(value)
        .map_err(|e| PyValueError::new_err(format!("invalid family request: {e}")))?;
    let build = build_family(&req, deep, budget.unwrap_or(DEFAULT_BUDGET)).map_err(core_err)?;
    let out = PyDict::new_bound(py);
    out.set_item("request", to_py(py, &build.request)?)?;
    out.set_item("claims", to_py(py, &build.claims)?)?;
    out.set_item("level", to_py(py, &build.level)?)?;
    out.set_item("report", to_py(py, &build.report)?)?;
    out.set_item("structure", to_py(py, &build.structure)?)?;
    if let Some(spec) = &build.spec {
        out.set_item("spec", to_py(py, &spec.descriptor())?)?;
    }
    Ok(out.into_py(py))
}

/// Sweeps every family over GF(q) and returns the verified parameter
/// table as a list of row dicts (keys n, k, d, r, delta, sources,
/// verification), deduplicated and sorted.
#[pyfunction]
#[pyo3(signature = (q, deep=false, budget=None))]
fn table(py: Python<'_>, q: u64, deep: bool, budget: Option<u64>) -> PyResult<PyObject> {
    let rows = reproduce_table(q, deep, budget.unwrap_or(DEFAULT_BUDGET)).map_err(core_err)?;
    to_py(py, &rows)
}

/// Gap to the locality-aware quantum Singleton-type bound for an
/// [[n, k_q, d]] code with (r, delta) locality; dim_k is the classical
/// dimension and must satisfy k_q = 2 dim_k - n.
#[pyfunction]
#[pyo3(name = "quantum_defect")]
fn quantum_defect_py(
    n: usize,
    k_q: i64,
    d: usize,
    r: usize,
    delta: usize,
    dim_k: usize,
) -> PyResult<i64> {
    quantum_defect(n, k_q, d, r, delta, dim_k).map_err(core_err)
}

/// Gap to the classical Singleton-type bound for an [n, k, d] code with
/// (r, delta) locality.
#[pyfunction]
#[pyo3(name = "singleton_defect")]
fn singleton_defect_py(n: usize, k: usize, d: usize, r: usize, delta: usize) -> PyResult<i64> {
    singleton_defect(n, k, d, r, delta).map_err(core_err)
}

#[pymodule]
fn _native(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_class::<PyField>()?;
    m.add_class::<PyCode>()?;
    m.add_class::<PyProductSpec>()?;
    m.add_function(wrap_pyfunction!(matrix, m)?)?;
    m.add_function(wrap_pyfunction!(construct, m)?)?;
    m.add_function(wrap_pyfunction!(table, m)?)?;
    m.add_function(wrap_pyfunction!(quantum_defect_py, m)?)?;
    m.add_function(wrap_pyfunction!(singleton_defect_py, m)?)?;
    m.add("DEFAULT_BUDGET", DEFAULT_BUDGET)?;
    Ok(())
}
