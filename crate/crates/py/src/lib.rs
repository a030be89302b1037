//! Python bindings for the antisymmetric-coloring constructions.
//!
//! The boundary stays thin and typed like the CLI: exact rationals cross as
//! `"p/q"` strings, index sets as lists of integers, and structured results
//! as canonical JSON strings a caller feeds straight to `json.loads`.  Bad
//! inputs raise `ValueError`; a violated construction guarantee raises
//! `RuntimeError`.

use antisym::{
    coefficient_window, decomposition_pattern, exhaustive_ramsey, recover_pair, scan_all_unions,
    verify_antisymmetric, verify_thm3, Error, Rational, VectorQ,
};
use pyo3::exceptions::{PyRuntimeError, PyValueError};
use pyo3::prelude::*;

fn convert(e: Error) -> PyErr {
    match e {
        Error::Soundness(_) => PyRuntimeError::new_err(e.to_string()),
        _ => PyValueError::new_err(e.to_string()),
    }
}

fn rational(text: &str) -> PyResult<Rational> {
    text.parse().map_err(convert)
}

// ============================================================================
// Staged interval systems
// ============================================================================

/// A reflection-closed interval system over an enumerated rational point set,
/// with the two-coloring it induces.
#[pyclass(name = "IntervalSystem")]
struct PyIntervalSystem {
    inner: antisym::IntervalSystem,
}

#[pymethods]
impl PyIntervalSystem {
    /// Builds the system for `points` (strings like `"-3/4"`), in order, and
    /// checks every structural invariant.
    #[new]
    fn new(points: Vec<String>) -> PyResult<Self> {
        let points: Vec<Rational> = points
            .iter()
            .map(|p| rational(p))
            .collect::<PyResult<_>>()?;
        let inner = antisym::IntervalSystem::build(&points).map_err(convert)?;
        inner.check_invariants().map_err(convert)?;
        Ok(PyIntervalSystem { inner })
    }

    /// The points in enumeration order, as `"p/q"` strings.
    fn points(&self) -> Vec<String> {
        self.inner.points().iter().map(|p| p.to_string()).collect()
    }

    fn interval_count(&self) -> usize {
        self.inner.intervals().len()
    }

    /// Two-colors the system through its orbit graph; JSON records of
    /// `{"point", "color", "d"}`.
    fn coloring_json(&self) -> PyResult<String> {
        let coloring = self.inner.color().map_err(convert)?;
        Ok(coloring.to_json().to_string())
    }

    /// Mirror collisions of the induced coloring; an empty list is the
    /// expected outcome.
    fn violations_json(&self) -> PyResult<String> {
        let coloring = self.inner.color().map_err(convert)?;
        let rows: Vec<serde_json::Value> = verify_antisymmetric(&coloring)
            .iter()
            .map(|v| {
                serde_json::json!({
                    "h": v.h.to_string(),
                    "minus": v.minus.to_string(),
                    "plus": v.plus.to_string(),
                    "x": v.x.to_string(),
                })
            })
            .collect();
        Ok(serde_json::Value::Array(rows).to_string())
    }

    /// The full system as JSON; `from_json` rebuilds it.
    fn to_json(&self) -> String {
        self.inner.to_json().to_string()
    }

    #[staticmethod]
    fn from_json(text: &str) -> PyResult<Self> {
        let doc: serde_json::Value = serde_json::from_str(text)
            .map_err(|e| PyValueError::new_err(format!("bad system JSON: {e}")))?;
        let inner = antisym::IntervalSystem::from_json(&doc).map_err(convert)?;
        Ok(PyIntervalSystem { inner })
    }
}

// ============================================================================
// The finite pair-coding model
// ============================================================================

/// The greedy dyadic pair coloring on a finite index universe, with its
/// exhaustive checkers.
#[pyclass(name = "PairModel")]
struct PyPairModel {
    inner: antisym::CodingContext,
}

#[pymethods]
impl PyPairModel {
    #[new]
    fn new(size: usize) -> PyResult<Self> {
        Ok(PyPairModel {
            inner: antisym::CodingContext::build(size).map_err(convert)?,
        })
    }

    fn size(&self) -> usize {
        self.inner.size()
    }

    /// The color of the index pair `beta < alpha`.
    fn color(&self, beta: usize, alpha: usize) -> PyResult<u64> {
        self.inner.color(beta, alpha).map_err(convert)
    }

    /// Verifies the four coloring conditions on every pair.
    fn check_conditions(&self) -> PyResult<()> {
        self.inner.check_conditions().map_err(convert)
    }

    /// Verifies that fingerprint-equal sets of size up to `max_size` overlap
    /// in an initial segment of both.
    fn check_claim1(&self, max_size: usize) -> PyResult<()> {
        self.inner.check_claim1(max_size).map_err(convert)
    }

    /// Verifies the forbidden color-swap pattern never occurs.
    fn check_claim2(&self) -> PyResult<()> {
        self.inner.check_claim2().map_err(convert)
    }

    /// Order-isomorphism fingerprint of an index set, as a decimal code.
    fn fingerprint(&self, set: Vec<usize>) -> PyResult<String> {
        Ok(self
            .inner
            .type_of(&set)
            .map_err(convert)?
            .to_nat_code()
            .to_string())
    }

    /// Scans every candidate union for decomposition uniqueness; returns
    /// `(unions_scanned, decomposable)`.
    fn scan_unions(&self, threads: usize) -> PyResult<(u64, u64)> {
        let report = scan_all_unions(&self.inner, threads).map_err(convert)?;
        Ok((report.unions_scanned, report.decomposable))
    }
}

// ============================================================================
// The factorial-denominator level coloring
// ============================================================================

/// The 4-coloring of the rationals by factorial levels and slice parity.
#[pyclass(name = "LevelColoring")]
struct PyLevelColoring {
    inner: antisym::LevelColoring,
}

#[pymethods]
impl PyLevelColoring {
    #[new]
    fn new() -> Self {
        PyLevelColoring {
            inner: antisym::LevelColoring::new(),
        }
    }

    /// The color of `x`, in `{0, 1, 2, 3}`.
    fn color(&self, x: &str) -> PyResult<u8> {
        self.inner.color_q(&rational(x)?).map_err(convert)
    }

    /// Least level containing `|x|`, or `None` for zero.
    fn level(&self, x: &str) -> PyResult<Option<u32>> {
        let x = rational(x)?;
        if x.is_zero() {
            return Ok(None);
        }
        self.inner.level(&x.abs()).map(Some).map_err(convert)
    }

    /// Certified equal-color radii around `x`, as the window-scan JSON.
    fn sx_window_json(&self, x: &str, max_h: &str, max_den: u64) -> PyResult<String> {
        let cert = self
            .inner
            .s_x_window(&rational(x)?, &rational(max_h)?, max_den)
            .map_err(convert)?;
        Ok(cert.to_json().to_string())
    }
}

// ============================================================================
// Patterns, windows, and chain scans
// ============================================================================

/// The doubling pattern with its 2^n - 1 decompositions, as JSON.
#[pyfunction]
fn pattern_json(n: u32) -> PyResult<String> {
    Ok(decomposition_pattern(n).map_err(convert)?.to_json().to_string())
}

/// The pattern instantiated as exact vector sums, as JSON.
#[pyfunction]
fn vector_pattern_json(n: u32) -> PyResult<String> {
    Ok(decomposition_pattern(n)
        .map_err(convert)?
        .instantiate_vectors()
        .map_err(convert)?
        .to_json()
        .to_string())
}

/// Scans the coefficient window spanned by `coeffs` over `dims` indices for
/// sums realized by more than one code-equal pair; the report as JSON.
#[pyfunction]
fn window_report_json(dims: usize, coeffs: Vec<String>) -> PyResult<String> {
    let coeffs: Vec<Rational> = coeffs
        .iter()
        .map(|c| rational(c))
        .collect::<PyResult<_>>()?;
    let window = coefficient_window(dims, &coeffs).map_err(convert)?;
    let ctx = antisym::CodingContext::build(dims).map_err(convert)?;
    let report = verify_thm3(&window, &ctx).map_err(convert)?;
    Ok(report.to_json().to_string())
}

/// Splits a sum back into its unique code-equal pair, when one exists.
/// `sum_json` maps index strings to `"p/q"` coefficients; the result is a
/// JSON pair of such maps, or `null`.
#[pyfunction]
fn recover_pair_json(sum_json: &str, dims: usize) -> PyResult<String> {
    let doc: serde_json::Value = serde_json::from_str(sum_json)
        .map_err(|e| PyValueError::new_err(format!("bad vector JSON: {e}")))?;
    let sum = VectorQ::from_json(&doc).map_err(convert)?;
    let ctx = antisym::CodingContext::build(dims).map_err(convert)?;
    let result = match recover_pair(&sum, &ctx).map_err(convert)? {
        Some((x, y)) => serde_json::Value::Array(vec![x.to_json(), y.to_json()]),
        None => serde_json::Value::Null,
    };
    Ok(result.to_string())
}

/// Exhaustively scans every `colors`-coloring of the difference pairs on
/// `m` points for a monochromatic chain of the given length; JSON report.
#[pyfunction]
fn ramsey_scan_json(m: u32, colors: u32, chain: u32) -> PyResult<String> {
    Ok(exhaustive_ramsey(m, colors, chain)
        .map_err(convert)?
        .to_json()
        .to_string())
}

#[pymodule]
fn antisym_py(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_class::<PyIntervalSystem>()?;
    m.add_class::<PyPairModel>()?;
    m.add_class::<PyLevelColoring>()?;
    m.add_function(wrap_pyfunction!(pattern_json, m)?)?;
    m.add_function(wrap_pyfunction!(vector_pattern_json, m)?)?;
    m.add_function(wrap_pyfunction!(window_report_json, m)?)?;
    m.add_function(wrap_pyfunction!(recover_pair_json, m)?)?;
    m.add_function(wrap_pyfunction!(ramsey_scan_json, m)?)?;
    Ok(())
}
