//! Python module `petrie`: thin wrappers over `petrie_core`.
//!
//! Permutations are accepted in any text form the CLI accepts (image list,
//! cycle notation with optional `@n`, arrow chain) or as a list of images.
//! Structured results (verdicts, reports, certificates) come back as plain
//! dicts with the same shape as the CLI's JSON output.

use num_bigint::BigInt;
use petrie_core::algebra::{invariant_factors, minpoly, similar, IntMatrix};
use petrie_core::certificates::certify as core_certify;
use petrie_core::extensions::ExtensionSpec;
use petrie_core::perm::{parse_permutation, Permutation};
use petrie_core::petrie::{export_digraph, petrie_matrix as core_matrix};
use petrie_core::sim::{check_pair, classify as core_classify, ExtensionBound, Mode, Strength};
use pyo3::exceptions::PyValueError;
use pyo3::prelude::*;
use serde::Serialize;

fn err(e: impl std::fmt::Display) -> PyErr {
    PyValueError::new_err(e.to_string())
}

#[derive(FromPyObject)]
enum PermArg {
    Text(String),
    Images(Vec<usize>),
}

impl PermArg {
    fn get(self) -> PyResult<Permutation> {
        match self {
            Self::Text(t) => parse_permutation(&t).map_err(err),
            Self::Images(v) => Permutation::new(v).map_err(err),
        }
    }
}

/// `3` means 3 on every side; `(2, 1)` means left 2, right 1.
#[derive(FromPyObject)]
enum BoundArg {
    Uniform(usize),
    Sides(usize, usize),
}

fn resolve(bound: Option<BoundArg>, mode: Mode) -> PyResult<ExtensionBound> {
    match bound {
        None => Ok(ExtensionBound::default_for(mode)),
        Some(BoundArg::Uniform(0)) | Some(BoundArg::Sides(0, _)) | Some(BoundArg::Sides(_, 0)) => {
            Err(PyValueError::new_err("bounds must be at least 1"))
        }
        Some(BoundArg::Uniform(b)) => Ok(ExtensionBound::uniform(b)),
        Some(BoundArg::Sides(l, r)) => Ok(ExtensionBound::two_sided(l, r)),
    }
}

fn mode(text: &str) -> PyResult<Mode> {
    text.parse().map_err(err)
}

fn strength(weak: bool) -> Strength {
    if weak {
        Strength::WeaklySimilar
    } else {
        Strength::Similar
    }
}

fn to_py<T: Serialize>(py: Python<'_>, value: &T) -> PyResult<Py<PyAny>> {
    let text = serde_json::to_string(value).map_err(err)?;
    Ok(py.import("json")?.call_method1("loads", (text,))?.unbind())
}

fn matrix_of(p: PermArg) -> PyResult<IntMatrix> {
    core_matrix(&p.get()?).map_err(err)
}

/// Image list of a permutation given in any accepted form.
#[pyfunction]
fn parse(perm: PermArg) -> PyResult<Vec<usize>> {
    Ok(perm.get()?.into_images())
}

/// Cycle notation, e.g. `(1 6 5 7 2 3 4)`.
#[pyfunction]
#[pyo3(signature = (perm, compact = false))]
fn cycles(perm: PermArg, compact: bool) -> PyResult<String> {
    Ok(perm.get()?.cycle_string(compact))
}

/// Petrie matrix as a list of rows.
#[pyfunction]
fn petrie_matrix(perm: PermArg) -> PyResult<Vec<Vec<BigInt>>> {
    Ok(matrix_of(perm)?.rows())
}

#[pyfunction]
fn det(perm: PermArg) -> PyResult<BigInt> {
    Ok(matrix_of(perm)?.det())
}

#[pyfunction]
fn trace(perm: PermArg) -> PyResult<BigInt> {
    Ok(matrix_of(perm)?.trace())
}

/// Characteristic polynomial coefficients, constant term first.
#[pyfunction]
fn charpoly(perm: PermArg) -> PyResult<Vec<BigInt>> {
    Ok(matrix_of(perm)?.charpoly().coeffs().to_vec())
}

#[pyfunction]
fn minimal_polynomial(perm: PermArg) -> PyResult<String> {
    Ok(minpoly(&matrix_of(perm)?).to_string())
}

#[pyfunction]
fn invariant_factor_list(perm: PermArg) -> PyResult<Vec<String>> {
    Ok(invariant_factors(&matrix_of(perm)?).iter().map(|p| p.to_string()).collect())
}

/// Whether the two Petrie matrices are similar over Q.
#[pyfunction]
fn petrie_similar(a: PermArg, b: PermArg) -> PyResult<bool> {
    similar(&matrix_of(a)?, &matrix_of(b)?).map_err(err)
}

#[pyfunction]
fn dual(perm: PermArg) -> PyResult<Vec<usize>> {
    Ok(perm.get()?.dual().into_images())
}

/// Applies an extension spec given as JSON, e.g.
/// `{"kind": "right", "filler": [5], "slot": 5}`.
#[pyfunction]
fn extend(base: PermArg, spec: &str) -> PyResult<Vec<usize>> {
    let spec: ExtensionSpec = serde_json::from_str(spec).map_err(err)?;
    Ok(spec.apply(&base.get()?).map_err(err)?.into_images())
}

#[pyfunction]
fn graph(perm: PermArg) -> PyResult<String> {
    export_digraph(&perm.get()?).map_err(err)
}

/// Bounded similarity test; returns the verdict as a dict.
#[pyfunction]
#[pyo3(signature = (a, b, mode = "right", weak = false, bound = None))]
fn simtest(py: Python<'_>, a: PermArg, b: PermArg, mode: &str, weak: bool, bound: Option<BoundArg>) -> PyResult<Py<PyAny>> {
    let m = self::mode(mode)?;
    let bound = resolve(bound, m)?;
    let (a, b) = (a.get()?, b.get()?);
    let v = py.detach(|| check_pair(&a, &b, m, strength(weak), &bound)).map_err(err)?;
    to_py(py, &v)
}

/// Partition of S_n into bounded-consistency classes, as a dict.
#[pyfunction]
#[pyo3(signature = (n, mode = "right", weak = false, bound = None))]
fn classify(py: Python<'_>, n: usize, mode: &str, weak: bool, bound: Option<BoundArg>) -> PyResult<Py<PyAny>> {
    let m = self::mode(mode)?;
    let bound = resolve(bound, m)?;
    let r = py.detach(|| core_classify(n, m, strength(weak), &bound)).map_err(err)?;
    to_py(py, &r)
}

/// A constructive certificate for the pair within the bound, or None.
#[pyfunction]
#[pyo3(signature = (a, b, mode = "right", bound = None))]
fn certify(py: Python<'_>, a: PermArg, b: PermArg, mode: &str, bound: Option<BoundArg>) -> PyResult<Option<Py<PyAny>>> {
    let m = self::mode(mode)?;
    let bound = resolve(bound, m)?;
    match core_certify(&a.get()?, &b.get()?, m, &bound).map_err(err)? {
        Some(c) => Ok(Some(to_py(py, &c)?)),
        None => Ok(None),
    }
}

#[pymodule]
fn petrie(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_function(wrap_pyfunction!(parse, m)?)?;
    m.add_function(wrap_pyfunction!(cycles, m)?)?;
    m.add_function(wrap_pyfunction!(petrie_matrix, m)?)?;
    m.add_function(wrap_pyfunction!(det, m)?)?;
    m.add_function(wrap_pyfunction!(trace, m)?)?;
    m.add_function(wrap_pyfunction!(charpoly, m)?)?;
    m.add_function(wrap_pyfunction!(minimal_polynomial, m)?)?;
    m.add_function(wrap_pyfunction!(invariant_factor_list, m)?)?;
    m.add_function(wrap_pyfunction!(petrie_similar, m)?)?;
    m.add_function(wrap_pyfunction!(dual, m)?)?;
    m.add_function(wrap_pyfunction!(extend, m)?)?;
    m.add_function(wrap_pyfunction!(graph, m)?)?;
    m.add_function(wrap_pyfunction!(simtest, m)?)?;
    m.add_function(wrap_pyfunction!(classify, m)?)?;
    m.add_function(wrap_pyfunction!(certify, m)?)?;
    m.add("SCHEMA_VERSION", petrie_core::report::SCHEMA_VERSION)?;
    Ok(())
}
