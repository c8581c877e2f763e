//! Python bindings for the hyperbell library.
//!
//! Exposes the integer sequence families, the power-series verification
//! oracle, and the constant-identity checker. All big integers cross the
//! boundary as native Python ints.

use pyo3::exceptions::PyValueError;
use pyo3::prelude::*;

use hyperbell::analytic::{check_identity, decimal_string, parse_decimal, IdentityTag, PrecisionBudget};
use hyperbell::sequences;
use hyperbell::series::{self, HypergeomSpec};
use hyperbell::Int;

fn to_py_err(err: hyperbell::Error) -> PyErr {
    PyValueError::new_err(err.to_string())
}

/// b(n) for the given level: weighted count of set partitions where each
/// block of size s contributes a multinomial weight raised to `level`.
#[pyfunction]
fn extended_bell(level: u32, n: usize) -> Int {
    sequences::extended_bell(level, n)
}

/// The prefix b(0), ..., b(n_max) for the given level.
#[pyfunction]
fn extended_bell_prefix(level: u32, n_max: usize) -> Vec<Int> {
    sequences::extended_bell_prefix(level, n_max)
}

/// S(n, l) for the given level: the weighted count restricted to exactly
/// `l` blocks.
#[pyfunction]
fn stirling(level: u32, n: usize, l: usize) -> Int {
    sequences::stirling_ext(level, n, l)
}

/// b(p; n) for the given level: the weighted count restricted to blocks of
/// more than `p` elements.
#[pyfunction]
fn restricted_bell(level: u32, p: usize, n: usize) -> Int {
    sequences::restricted_bell(level, p, n)
}

/// Closed-form value S(n + offset, n) from the polynomial band formulas
/// (offset at most 3).
#[pyfunction]
fn supra_diagonal(level: u32, offset: usize, n: usize) -> PyResult<Int> {
    sequences::supra_diagonal(level, offset, n).map_err(to_py_err)
}

/// Recompute b(0..=order) from the power-series route and compare with the
/// recursion route; returns True when every value agrees.
#[pyfunction]
fn oracle_bell_matches(level: u32, order: usize) -> PyResult<bool> {
    let series_route = series::oracle_bell(level, order).map_err(to_py_err)?;
    let recursion_route = sequences::extended_bell_prefix(level, order);
    Ok(series_route == recursion_route)
}

/// The weighted coefficient sequence for arbitrary positive integer
/// parameters; raises ValueError when a coefficient is not an integer.
#[pyfunction]
fn general_sequence(params: Vec<u64>, order: usize) -> PyResult<Vec<Int>> {
    let spec = HypergeomSpec::new(params).map_err(to_py_err)?;
    series::oracle_sequence(&spec, order).map_err(to_py_err)
}

/// Check one tagged constant identity. Returns (overlap, lhs_lo, lhs_hi,
/// rhs_lo, rhs_hi, gap) with the bounds rendered as decimal strings.
#[pyfunction]
#[pyo3(signature = (tag, terms=40, tol="1e-36"))]
fn identity_check(tag: &str, terms: usize, tol: &str) -> PyResult<(bool, String, String, String, String, String)> {
    let tag: IdentityTag = tag.parse().map_err(to_py_err)?;
    let tol = parse_decimal(tol).map_err(to_py_err)?;
    let budget = PrecisionBudget::new(terms, tol).map_err(to_py_err)?;
    let report = check_identity(tag, &budget);
    const DIGITS: usize = 45;
    Ok((
        report.overlap,
        decimal_string(report.lhs.lo(), DIGITS, false),
        decimal_string(report.lhs.hi(), DIGITS, true),
        decimal_string(report.rhs.lo(), DIGITS, false),
        decimal_string(report.rhs.hi(), DIGITS, true),
        decimal_string(&report.gap, DIGITS, true),
    ))
}

#[pymodule]
fn hyperbell_py(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_function(wrap_pyfunction!(extended_bell, m)?)?;
    m.add_function(wrap_pyfunction!(extended_bell_prefix, m)?)?;
    m.add_function(wrap_pyfunction!(stirling, m)?)?;
    m.add_function(wrap_pyfunction!(restricted_bell, m)?)?;
    m.add_function(wrap_pyfunction!(supra_diagonal, m)?)?;
    m.add_function(wrap_pyfunction!(oracle_bell_matches, m)?)?;
    m.add_function(wrap_pyfunction!(general_sequence, m)?)?;
    m.add_function(wrap_pyfunction!(identity_check, m)?)?;
    Ok(())
}
