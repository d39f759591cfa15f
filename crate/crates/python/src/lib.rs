//! Python bindings. Big integers cross as Python ints.

use std::collections::BTreeMap;

use num_bigint::BigUint;
use pyo3::exceptions::{PyRuntimeError, PyValueError};
use pyo3::prelude::*;
use pyo3::types::PyDict;

use unicomplex::buchstaber::{self, SearchOptions, DEFAULT_BUDGET};
use unicomplex::complex::Coefficients;
use unicomplex::lattice::{self, FpVector, IntMatrix};
use unicomplex::products;
use unicomplex::tor::{self, BettiTable, Method};
use unicomplex::universal::{self, BuildOptions, Family};
use unicomplex::{Error, SimplicialComplex};

fn to_py(e: Error) -> PyErr {
    match e {
        Error::ResourceLimit(_) | Error::BudgetExhausted { .. } | Error::Internal(_) => {
            PyRuntimeError::new_err(e.to_string())
        }
        _ => PyValueError::new_err(e.to_string()),
    }
}

trait OrPy<T> {
    fn py(self) -> PyResult<T>;
}

impl<T> OrPy<T> for unicomplex::Result<T> {
    fn py(self) -> PyResult<T> {
        self.map_err(to_py)
    }
}

fn family(s: &str) -> PyResult<Family> {
    s.parse().py()
}

fn vectors(p: u32, rows: Vec<Vec<i64>>) -> PyResult<Vec<FpVector>> {
    rows.iter()
        .map(|r| FpVector::new(p, r))
        .collect::<unicomplex::Result<_>>()
        .py()
}

fn coords(vs: &[FpVector]) -> Vec<Vec<u32>> {
    vs.iter().map(|v| v.coords().to_vec()).collect()
}

/// A finite simplicial complex on vertices 0..m-1.
#[pyclass(name = "Complex", module = "unicomplex", frozen)]
pub struct PyComplex {
    inner: SimplicialComplex,
}

#[pymethods]
impl PyComplex {
    #[new]
    fn new(m: usize, facets: Vec<Vec<usize>>) -> PyResult<Self> {
        Ok(PyComplex {
            inner: SimplicialComplex::from_facet_lists(m, &facets).py()?,
        })
    }

    #[staticmethod]
    fn from_json(text: &str) -> PyResult<Self> {
        Ok(PyComplex {
            inner: SimplicialComplex::from_json(text).py()?,
        })
    }

    fn to_json(&self) -> String {
        self.inner.to_json()
    }

    #[getter]
    fn vertex_count(&self) -> usize {
        self.inner.vertex_count()
    }

    #[getter]
    fn dim(&self) -> isize {
        self.inner.dim()
    }

    fn facets(&self) -> Vec<Vec<usize>> {
        self.inner.facets().iter().map(|f| f.to_vec()).collect()
    }

    fn f_vector(&self) -> Vec<BigUint> {
        self.inner.f_vector().0
    }

    fn is_matroid(&self) -> bool {
        self.inner.is_matroid()
    }

    /// Reduced cohomology: ranks by degree, plus torsion factors over Z.
    /// `coefficients` is "Q", "Z" or a prime.
    #[pyo3(signature = (coefficients = None))]
    fn reduced_cohomology<'py>(
        &self,
        py: Python<'py>,
        coefficients: Option<Bound<'py, PyAny>>,
    ) -> PyResult<Bound<'py, PyDict>> {
        let coeff = match coefficients {
            None => Coefficients::Rationals,
            Some(c) => {
                if let Ok(p) = c.extract::<u32>() {
                    lattice::is_prime(p as u64)
                        .then_some(Coefficients::Fp(p))
                        .ok_or_else(|| PyValueError::new_err(format!("{p} is not a prime")))?
                } else {
                    match c.extract::<String>()?.as_str() {
                        "Q" => Coefficients::Rationals,
                        "Z" => Coefficients::Integers,
                        other => {
                            return Err(PyValueError::new_err(format!(
                                "unknown coefficients {other:?}"
                            )))
                        }
                    }
                }
            }
        };
        let h = self.inner.reduced_cohomology(coeff);
        let out = PyDict::new(py);
        out.set_item("ranks", h.ranks.clone())?;
        let torsion: BTreeMap<i32, Vec<BigUint>> = h
            .torsion
            .iter()
            .filter(|(_, f)| !f.is_empty())
            .map(|(&d, f)| (d, f.clone()))
            .collect();
        out.set_item("torsion", torsion)?;
        Ok(out)
    }

    fn __repr__(&self) -> String {
        format!(
            "Complex(m={}, facets={})",
            self.inner.vertex_count(),
            self.inner.facets().len()
        )
    }
}

/// β^{-i,2j} keyed by (i, j).
#[pyclass(name = "BettiTable", module = "unicomplex", frozen)]
pub struct PyBettiTable {
    inner: BettiTable,
}

#[pymethods]
impl PyBettiTable {
    fn get(&self, i: usize, j: usize) -> BigUint {
        self.inner.get(i, j)
    }

    /// Row l, column c holds β^{l-c,2c}.
    fn layout_get(&self, l: usize, c: usize) -> BigUint {
        self.inner.layout_get(l, c)
    }

    fn entries(&self) -> BTreeMap<(usize, usize), BigUint> {
        self.inner.iter().map(|(&k, v)| (k, v.clone())).collect()
    }

    #[getter]
    fn method(&self) -> String {
        self.inner.method().to_string()
    }

    fn to_json(&self) -> String {
        self.inner.to_json()
    }

    fn to_csv(&self) -> String {
        self.inner.to_csv()
    }

    fn __len__(&self) -> usize {
        self.inner.len()
    }

    fn __str__(&self) -> String {
        self.inner.to_string()
    }
}

/// X(F_p^n) or K(F_p^n), built.
#[pyfunction]
fn universal_complex(fam: &str, p: u32, n: usize) -> PyResult<(PyComplex, Vec<Vec<u32>>)> {
    let u =
        universal::UniversalComplex::build(family(fam)?, p, n, &BuildOptions::default()).py()?;
    let labels = coords(u.labels());
    Ok((
        PyComplex {
            inner: u.base().py()?.clone(),
        },
        labels,
    ))
}

#[pyfunction]
fn f_vector_closed(fam: &str, p: u32, n: usize) -> PyResult<Vec<BigUint>> {
    Ok(universal::f_vector_closed(family(fam)?, p, n).py()?.0)
}

#[pyfunction]
fn wedge_count(fam: &str, p: u32, n: usize) -> PyResult<BigUint> {
    universal::wedge_count(family(fam)?, p, n).py()
}

#[pyfunction]
fn gaussian_binomial(n: usize, k: usize, p: u64) -> BigUint {
    lattice::gaussian_binomial(n, k, p)
}

/// Nonzero invariant factors of an integer matrix given by rows.
#[pyfunction]
fn smith_normal_form(rows: Vec<Vec<i64>>) -> PyResult<Vec<BigUint>> {
    if rows.iter().any(|r| r.len() != rows[0].len()) {
        return Err(PyValueError::new_err("ragged matrix"));
    }
    Ok(lattice::smith_normal_form(&IntMatrix::from_rows(&rows)))
}

#[pyfunction]
fn is_unimodular_fp(p: u32, vectors_: Vec<Vec<i64>>) -> PyResult<bool> {
    lattice::is_unimodular_fp(&vectors(p, vectors_)?).py()
}

/// Betti numbers of a complex by "morse", "euler-oracle" or "cohomology-oracle".
#[pyfunction]
#[pyo3(signature = (complex, method = "morse"))]
fn betti(py: Python<'_>, complex: &PyComplex, method: &str) -> PyResult<PyBettiTable> {
    let method: Method = method.parse().py()?;
    let k = complex.inner.clone();
    let table = py
        .detach(move || match method {
            Method::Morse => tor::betti_via_morse(&k),
            Method::EulerOracle => tor::betti_via_hochster_euler(&k),
            Method::CohomologyOracle => tor::betti_via_cohomology(&k, tor::COHOMOLOGY_ORACLE_CAP),
            Method::Recursion => Err(Error::Precondition(
                "the recursion applies to universal complexes; use betti_recursion".into(),
            )),
        })
        .py()?;
    Ok(PyBettiTable { inner: table })
}

#[pyfunction]
fn betti_recursion(fam: &str, p: u32, n: usize) -> PyResult<PyBettiTable> {
    Ok(PyBettiTable {
        inner: tor::betti_recursion(family(fam)?, p, n).py()?,
    })
}

/// Full subcomplexes whose integral cohomology has torsion, as
/// (subset, degree, factors) triples.
#[pyfunction]
#[pyo3(signature = (complex, cap = 20))]
fn torsion_check(
    py: Python<'_>,
    complex: &PyComplex,
    cap: usize,
) -> PyResult<Vec<(Vec<usize>, i32, Vec<String>)>> {
    let k = complex.inner.clone();
    let report = py.detach(move || tor::torsion_check(&k, cap)).py()?;
    Ok(report
        .torsion
        .into_iter()
        .map(|t| (t.subset, t.degree, t.factors))
        .collect())
}

/// (lower, upper) cup-length bounds of the moment-angle complex.
#[pyfunction]
fn cup_length(fam: &str, p: u32, n: usize) -> PyResult<(usize, usize)> {
    let u = universal::UniversalComplex::unmaterialized(family(fam)?, p, n).py()?;
    let r = products::cup_length_report(&u).py()?;
    Ok((r.lower.bound, r.upper.bound))
}

#[pyfunction]
fn chromatic_number(complex: &PyComplex) -> usize {
    buchstaber::chromatic_number(&complex.inner)
}

/// Exact s_p by search; the dict carries the bounds and the attaining map.
#[pyfunction]
#[pyo3(signature = (complex, p, budget = DEFAULT_BUDGET, bounds_only = false))]
fn s_p<'py>(
    py: Python<'py>,
    complex: &PyComplex,
    p: u32,
    budget: u64,
    bounds_only: bool,
) -> PyResult<Bound<'py, PyDict>> {
    let k = complex.inner.clone();
    let r = py
        .detach(move || {
            if bounds_only {
                buchstaber::bounds_report(&k, p)
            } else {
                buchstaber::s_p(
                    &k,
                    p,
                    &SearchOptions {
                        budget,
                        use_lower_bounds: true,
                    },
                )
            }
        })
        .py()?;
    let out = PyDict::new(py);
    out.set_item("s_p", r.s_p)?;
    out.set_item("r", r.r)?;
    out.set_item("lower", r.lower)?;
    out.set_item("upper", r.upper)?;
    out.set_item("gamma", r.gamma)?;
    out.set_item("assignment", r.assignment.as_deref().map(coords))?;
    out.set_item("nodes", r.nodes)?;
    out.set_item("budget_exhausted", r.budget_exhausted)?;
    Ok(out)
}

#[pyfunction]
fn s_p_graph_formula(graph: &PyComplex, p: u32) -> PyResult<usize> {
    buchstaber::s_p_graph_formula(&graph.inner, p).py()
}

/// ω_{p,q}(n) as (exact or None, lower, upper).
#[pyfunction]
#[pyo3(signature = (p, q, n, budget = DEFAULT_BUDGET))]
fn omega(p: u32, q: u32, n: usize, budget: u64) -> PyResult<(Option<usize>, usize, usize)> {
    let w = buchstaber::omega(p, q, n, budget).py()?;
    Ok((w.exact, w.lower, w.upper))
}

#[pyfunction]
fn theta_bounds(p: u32, n: usize) -> PyResult<(usize, usize)> {
    let t = buchstaber::theta_bounds(p, n).py()?;
    Ok((t.lower, t.upper))
}

#[pymodule]
#[pyo3(name = "unicomplex")]
fn unicomplex_py(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_class::<PyComplex>()?;
    m.add_class::<PyBettiTable>()?;
    m.add_function(wrap_pyfunction!(universal_complex, m)?)?;
    m.add_function(wrap_pyfunction!(f_vector_closed, m)?)?;
    m.add_function(wrap_pyfunction!(wedge_count, m)?)?;
    m.add_function(wrap_pyfunction!(gaussian_binomial, m)?)?;
    m.add_function(wrap_pyfunction!(smith_normal_form, m)?)?;
    m.add_function(wrap_pyfunction!(is_unimodular_fp, m)?)?;
    m.add_function(wrap_pyfunction!(betti, m)?)?;
    m.add_function(wrap_pyfunction!(betti_recursion, m)?)?;
    m.add_function(wrap_pyfunction!(torsion_check, m)?)?;
    m.add_function(wrap_pyfunction!(cup_length, m)?)?;
    m.add_function(wrap_pyfunction!(chromatic_number, m)?)?;
    m.add_function(wrap_pyfunction!(s_p, m)?)?;
    m.add_function(wrap_pyfunction!(s_p_graph_formula, m)?)?;
    m.add_function(wrap_pyfunction!(omega, m)?)?;
    m.add_function(wrap_pyfunction!(theta_bounds, m)?)?;
    Ok(())
}
