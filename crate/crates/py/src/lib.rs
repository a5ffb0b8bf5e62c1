//! Python bindings: affine permutations, fitted series, classification and
//! the inequality systems behind them.

use affine_avoid_core::abacus::{bott_series as core_bott, cone_coords, Bias, CellKey};
use affine_avoid_core::acceptance;
use affine_avoid_core::enumeration::{
    classify_combinatorial, classify_series_with, pattern_series_with, ClassKind, SeriesOptions,
};
use affine_avoid_core::geometry::{cell_report, strand_assignments as core_assignments, StrandAssignment};
use affine_avoid_core::oracle::avoidance_counts;
use affine_avoid_core::series::{classify_behavior, RationalFunction as CoreRational};
use affine_avoid_core::{AffinePermutation as CoreAffine, Error, Pattern};
use num_bigint::BigInt;
use pyo3::exceptions::{PyArithmeticError, PyValueError};
use pyo3::prelude::*;
use pyo3::types::PyDict;

fn to_py(e: Error) -> PyErr {
    match e {
        Error::FitVerification { .. } | Error::NotEnoughCoefficients { .. } | Error::NonUnitConstant(_) => {
            PyArithmeticError::new_err(e.to_string())
        }
        _ => PyValueError::new_err(e.to_string()),
    }
}

/// A pattern given as `"2431"`, `"2,4,3,1"` or a list of distinct integers.
#[derive(FromPyObject)]
enum PatternArg {
    Text(String),
    Values(Vec<i64>),
}

impl PatternArg {
    fn pattern(&self) -> PyResult<Pattern> {
        match self {
            PatternArg::Text(s) => s.parse().map_err(to_py),
            PatternArg::Values(v) => Pattern::new(v).map_err(to_py),
        }
    }
}

fn kind_name(k: ClassKind) -> &'static str {
    match k {
        ClassKind::FinitelyEnumerated => "FinitelyEnumerated",
        ClassKind::Periodic => "Periodic",
        ClassKind::Unbounded => "Unbounded",
    }
}

/// An affine permutation given by its base window.
#[pyclass(name = "AffinePermutation", frozen, module = "affine_avoid")]
struct PyAffine(CoreAffine);

#[pymethods]
impl PyAffine {
    #[new]
    fn new(window: Vec<i64>) -> PyResult<Self> {
        CoreAffine::new(window).map(PyAffine).map_err(to_py)
    }

    #[staticmethod]
    fn identity(n: usize) -> Self {
        PyAffine(CoreAffine::identity(n))
    }

    #[getter]
    fn n(&self) -> usize {
        self.0.n()
    }

    #[getter]
    fn window(&self) -> Vec<i64> {
        self.0.window().to_vec()
    }

    fn __call__(&self, i: i64) -> i64 {
        self.0.value_at(i)
    }

    fn length(&self) -> u64 {
        self.0.coxeter_length()
    }

    fn flattening(&self) -> Vec<usize> {
        self.0.flattening().values().to_vec()
    }

    /// `(positions, values)` of one occurrence of `pattern`, or `None`.
    fn find(&self, pattern: PatternArg) -> PyResult<Option<(Vec<i64>, Vec<i64>)>> {
        let p = pattern.pattern()?;
        Ok(self.0.contains_pattern(&p).map(|i| (i.positions, i.values)))
    }

    fn contains(&self, pattern: PatternArg) -> PyResult<bool> {
        Ok(!self.0.avoids(&pattern.pattern()?))
    }

    /// `(bias delta, t)` of the sorted part of this element.
    fn cone_coords(&self) -> PyResult<(Vec<i64>, Vec<u64>)> {
        let (u, _) = self.0.parabolic_decompose();
        let c = cone_coords(&u).map_err(to_py)?;
        Ok((c.bias.delta().to_vec(), c.t))
    }

    fn times_simple(&self, i: usize) -> PyResult<Self> {
        if i >= self.0.n() {
            return Err(PyValueError::new_err(format!(
                "simple reflection index {i} out of range"
            )));
        }
        Ok(PyAffine(self.0.times_simple(i)))
    }

    fn __eq__(&self, other: &Self) -> bool {
        self.0 == other.0
    }

    fn __repr__(&self) -> String {
        format!("AffinePermutation({:?})", self.0.window())
    }

    fn __str__(&self) -> String {
        self.0.to_string()
    }
}

/// An exact rational generating function with integer coefficients.
#[pyclass(name = "RationalFunction", frozen, module = "affine_avoid")]
struct PyRational(CoreRational);

#[pymethods]
impl PyRational {
    #[getter]
    fn numerator(&self) -> Vec<BigInt> {
        self.0.numerator().coeffs().to_vec()
    }

    #[getter]
    fn denominator(&self) -> Vec<BigInt> {
        self.0.denominator().coeffs().to_vec()
    }

    /// Coefficients of `x^0 .. x^max_index`.
    fn expand(&self, max_index: usize) -> Vec<BigInt> {
        self.0.expand(max_index)
    }

    fn is_polynomial(&self) -> bool {
        self.0.is_polynomial()
    }

    /// Long-run behavior of the coefficients as a dict.
    fn behavior<'py>(&self, py: Python<'py>) -> PyResult<Bound<'py, PyDict>> {
        let b = classify_behavior(&self.0);
        let d = PyDict::new(py);
        d.set_item("kind", format!("{:?}", b.kind))?;
        d.set_item("period", b.period)?;
        d.set_item("preperiod", b.preperiod)?;
        d.set_item("repeating_values", b.repeating_values)?;
        Ok(d)
    }

    fn __add__(&self, other: &Self) -> Self {
        PyRational(self.0.add(&other.0))
    }

    fn __sub__(&self, other: &Self) -> Self {
        PyRational(self.0.sub(&other.0))
    }

    fn __eq__(&self, other: &Self) -> bool {
        self.0 == other.0
    }

    fn __str__(&self) -> String {
        self.0.to_string()
    }

    fn __repr__(&self) -> String {
        format!("RationalFunction({})", self.0)
    }
}

/// Ranks of the entries of `pattern`, as a list.
#[pyfunction]
fn normalize_pattern(pattern: PatternArg) -> PyResult<Vec<usize>> {
    Ok(pattern.pattern()?.values().to_vec())
}

/// Bott's length series of the affine group, or of its sorted-window coset.
#[pyfunction]
#[pyo3(signature = (n, coset = false))]
fn bott_series(n: usize, coset: bool) -> PyResult<PyRational> {
    if n < 2 {
        return Err(to_py(Error::SizeTooSmall(n)));
    }
    Ok(PyRational(core_bott(n, coset)))
}

#[pyfunction]
fn strand_assignments(pattern: PatternArg, n: usize) -> PyResult<Vec<Vec<usize>>> {
    let p = pattern.pattern()?;
    Ok(core_assignments(&p, n).iter().map(|a| a.strands().to_vec()).collect())
}

/// Fitted container and avoider series of `pattern` in size `n`.
#[pyfunction]
#[pyo3(signature = (pattern, n, margin = None, max_length = 0))]
fn series<'py>(
    py: Python<'py>,
    pattern: PatternArg,
    n: usize,
    margin: Option<usize>,
    max_length: usize,
) -> PyResult<Bound<'py, PyDict>> {
    let p = pattern.pattern()?;
    let opts = SeriesOptions {
        margin,
        min_length: max_length,
        ..SeriesOptions::default()
    };
    let s = py.detach(|| pattern_series_with(&p, n, &opts)).map_err(to_py)?;
    let d = PyDict::new(py);
    d.set_item("containers", PyRational(s.containers))?;
    d.set_item("avoiders", PyRational(s.avoiders))?;
    d.set_item("verified_to", s.verified_to)?;
    d.set_item("container_counts", s.container_counts)?;
    d.set_item("bound", s.bound.factors.factors().clone())?;
    Ok(d)
}

/// Classify `pattern` with both classifiers.
#[pyfunction]
fn classify<'py>(py: Python<'py>, pattern: PatternArg, n: usize) -> PyResult<Bound<'py, PyDict>> {
    let p = pattern.pattern()?;
    let (a, b) = py
        .detach(|| -> affine_avoid_core::Result<_> {
            let a = classify_series_with(&p, n, &SeriesOptions::default())?;
            let b = classify_combinatorial(&p, n)?;
            Ok((a, b))
        })
        .map_err(to_py)?;
    let d = PyDict::new(py);
    d.set_item("series", kind_name(a.kind))?;
    d.set_item("combinatorial", kind_name(b.kind))?;
    d.set_item("agreement", a.kind == b.kind)?;
    d.set_item("kind", (a.kind == b.kind).then(|| kind_name(a.kind)))?;
    Ok(d)
}

/// Brute-force counts `(avoiders, containers)` by length.
#[pyfunction]
fn enumerate(py: Python<'_>, pattern: PatternArg, n: usize, max_length: usize) -> PyResult<(Vec<u64>, Vec<u64>)> {
    let p = pattern.pattern()?;
    if n < 2 {
        return Err(to_py(Error::SizeTooSmall(n)));
    }
    let c = py.detach(|| avoidance_counts(&p, n, max_length));
    Ok((c.avoiders, c.containers))
}

/// The inequality system of one strand assignment in one cell, as text.
#[pyfunction]
#[pyo3(signature = (pattern, n, pi, bias = None, flattening = None))]
fn inequality_system<'py>(
    py: Python<'py>,
    pattern: PatternArg,
    n: usize,
    pi: Vec<usize>,
    bias: Option<Vec<i64>>,
    flattening: Option<Vec<i64>>,
) -> PyResult<Bound<'py, PyDict>> {
    let p = pattern.pattern()?;
    let pi = StrandAssignment::new(&p, n, pi).map_err(to_py)?;
    let bias = match bias {
        Some(b) => Bias::from_delta(b).map_err(to_py)?,
        None => Bias::trivial(n),
    };
    let flattening = match flattening {
        Some(v) => Pattern::new(&v).map_err(to_py)?,
        None => Pattern::identity(n),
    };
    let r = cell_report(&p, &pi, &CellKey { bias, flattening }).map_err(to_py)?;
    let d = PyDict::new(py);
    d.set_item("shifts", r.shifts.iter().map(ToString::to_string).collect::<Vec<_>>())?;
    d.set_item("system", r.system.to_text())?;
    d.set_item("projected", r.projected.to_text())?;
    d.set_item("integer_feasible", r.integer_feasible)?;
    Ok(d)
}

/// Run acceptance criteria; returns `(id, name, passed, detail)` tuples.
#[pyfunction]
#[pyo3(signature = (only = Vec::new(), depth = None))]
fn check(py: Python<'_>, only: Vec<String>, depth: Option<usize>) -> Vec<(u8, String, bool, String)> {
    let cfg = acceptance::Config { depth };
    py.detach(|| acceptance::run(&only, &cfg))
        .into_iter()
        .map(|o| (o.id, o.name.to_string(), o.passed, o.detail))
        .collect()
}

#[pymodule]
fn affine_avoid(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_class::<PyAffine>()?;
    m.add_class::<PyRational>()?;
    m.add_function(wrap_pyfunction!(normalize_pattern, m)?)?;
    m.add_function(wrap_pyfunction!(bott_series, m)?)?;
    m.add_function(wrap_pyfunction!(strand_assignments, m)?)?;
    m.add_function(wrap_pyfunction!(series, m)?)?;
    m.add_function(wrap_pyfunction!(classify, m)?)?;
    m.add_function(wrap_pyfunction!(enumerate, m)?)?;
    m.add_function(wrap_pyfunction!(inequality_system, m)?)?;
    m.add_function(wrap_pyfunction!(check, m)?)?;
    Ok(())
}
