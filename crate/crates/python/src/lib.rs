//! Python bindings. Rationals cross the boundary as `fractions.Fraction`;
//! inputs may also be `int` or `"p/q"` strings.

use num_bigint::BigInt;
use pyo3::exceptions::{PyRuntimeError, PyValueError};
use pyo3::prelude::*;

use eulvol::arith::parse_rational;
use eulvol::bijection::{build_p_sequence, forward, inverse_bijection, PairWX};
use eulvol::combinatorics::{self, CircularPermutation};
use eulvol::groebner::{self, GroebnerConfig, Ideal, MonomialOrder};
use eulvol::polytope::{self, SliceSpec, VPolytope};
use eulvol::{laurent, verify, ExponentVector, MultiPoly, Rational};

pyo3::create_exception!(eulvol_py, CapExceededError, PyRuntimeError);

fn err(e: eulvol::Error) -> PyErr {
    match e {
        eulvol::Error::CapExceeded(_) => CapExceededError::new_err(e.to_string()),
        _ => PyValueError::new_err(e.to_string()),
    }
}

fn fraction<'py>(py: Python<'py>, q: &Rational) -> PyResult<Bound<'py, PyAny>> {
    py.import("fractions")?.getattr("Fraction")?.call1((q.numer().clone(), q.denom().clone()))
}

fn to_rational(obj: &Bound<'_, PyAny>) -> PyResult<Rational> {
    if let Ok(i) = obj.extract::<BigInt>() {
        return Ok(Rational::from_integer(i));
    }
    // Fraction and str both print as "p/q"
    parse_rational(&obj.str()?.to_string()).map_err(err)
}

fn to_rationals(items: &[Bound<'_, PyAny>]) -> PyResult<Vec<Rational>> {
    items.iter().map(to_rational).collect()
}

fn to_json<'py>(py: Python<'py>, value: &impl serde::Serialize) -> PyResult<Bound<'py, PyAny>> {
    let text = serde_json::to_string(value).map_err(|e| PyRuntimeError::new_err(e.to_string()))?;
    py.import("json")?.getattr("loads")?.call1((text,))
}

/// Sparse polynomial with rational coefficients.
#[pyclass(name = "Polynomial", module = "eulvol_py", frozen, eq, from_py_object)]
#[derive(Clone, PartialEq)]
pub struct PyPolynomial {
    inner: MultiPoly,
    names: Option<Vec<String>>,
}

impl PyPolynomial {
    fn wrap(inner: MultiPoly, names: Option<Vec<String>>) -> Self {
        PyPolynomial { inner, names }
    }

    fn combine(&self, other: &PyPolynomial, p: MultiPoly) -> Self {
        let names = if self.names == other.names { self.names.clone() } else { None };
        PyPolynomial::wrap(p, names)
    }
}

#[pymethods]
impl PyPolynomial {
    /// Build from `[(exponents, coefficient), ...]`.
    #[new]
    #[pyo3(signature = (nvars, terms, names=None))]
    fn new(nvars: usize, terms: Vec<(Vec<u32>, Bound<'_, PyAny>)>, names: Option<Vec<String>>) -> PyResult<Self> {
        if names.as_ref().is_some_and(|n| n.len() != nvars) {
            return Err(PyValueError::new_err("names must have one entry per variable"));
        }
        let mut parsed = Vec::with_capacity(terms.len());
        for (e, c) in &terms {
            parsed.push((ExponentVector::new(e.clone()), to_rational(c)?));
        }
        Ok(PyPolynomial::wrap(MultiPoly::from_terms(nvars, parsed).map_err(err)?, names))
    }

    #[staticmethod]
    fn variable(nvars: usize, index: usize) -> PyResult<Self> {
        if index >= nvars {
            return Err(PyValueError::new_err("variable index out of range"));
        }
        Ok(PyPolynomial::wrap(MultiPoly::var(nvars, index), None))
    }

    #[getter]
    fn nvars(&self) -> usize {
        self.inner.nvars()
    }

    #[getter]
    fn names(&self) -> Option<Vec<String>> {
        self.names.clone()
    }

    fn is_zero(&self) -> bool {
        self.inner.is_zero()
    }

    fn total_degree(&self) -> Option<u64> {
        self.inner.total_degree()
    }

    /// Terms in decreasing grevlex order.
    fn terms<'py>(&self, py: Python<'py>) -> PyResult<Vec<(Vec<u32>, Bound<'py, PyAny>)>> {
        self.inner.sorted_terms().into_iter().map(|(e, c)| Ok((e.entries().to_vec(), fraction(py, c)?))).collect()
    }

    fn support(&self) -> Vec<Vec<u32>> {
        laurent::newton_support(&self.inner).into_iter().map(|e| e.entries().to_vec()).collect()
    }

    fn evaluate<'py>(&self, py: Python<'py>, point: Vec<Bound<'py, PyAny>>) -> PyResult<Bound<'py, PyAny>> {
        let value = self.inner.evaluate(&to_rationals(&point)?).map_err(err)?;
        fraction(py, &value)
    }

    fn __add__(&self, other: &PyPolynomial) -> PyResult<Self> {
        Ok(self.combine(other, self.inner.try_add(&other.inner).map_err(err)?))
    }

    fn __sub__(&self, other: &PyPolynomial) -> PyResult<Self> {
        Ok(self.combine(other, self.inner.try_sub(&other.inner).map_err(err)?))
    }

    fn __mul__(&self, other: &PyPolynomial) -> PyResult<Self> {
        Ok(self.combine(other, self.inner.try_mul(&other.inner).map_err(err)?))
    }

    fn __pow__(&self, k: u32, _modulo: Option<Bound<'_, PyAny>>) -> Self {
        PyPolynomial::wrap(self.inner.pow(k), self.names.clone())
    }

    fn __neg__(&self) -> Self {
        PyPolynomial::wrap(-&self.inner, self.names.clone())
    }

    fn __str__(&self) -> String {
        match &self.names {
            Some(names) => self.inner.to_string_with(names),
            None => self.inner.to_string(),
        }
    }

    fn __repr__(&self) -> String {
        format!("Polynomial('{}')", self.__str__())
    }
}

/// Convex polytope given by its vertices, with exact coordinates.
#[pyclass(name = "Polytope", module = "eulvol_py", frozen, from_py_object)]
#[derive(Clone)]
pub struct PyPolytope {
    inner: VPolytope,
}

#[pymethods]
impl PyPolytope {
    /// Convex hull of the given points.
    #[new]
    fn new(points: Vec<Vec<Bound<'_, PyAny>>>) -> PyResult<Self> {
        let pts = points.iter().map(|p| to_rationals(p)).collect::<PyResult<Vec<_>>>()?;
        Ok(PyPolytope { inner: polytope::convex_hull(&pts).map_err(err)? })
    }

    #[staticmethod]
    fn hypersimplex(k: usize, n: usize) -> PyResult<Self> {
        Ok(PyPolytope { inner: polytope::hypersimplex(k, n).map_err(err)? })
    }

    /// `d * Delta_{c/d, n}`.
    #[staticmethod]
    fn cube_slice(c: usize, d: usize, n: usize) -> PyResult<Self> {
        Ok(PyPolytope { inner: polytope::cube_slice(SliceSpec::new(c, d, n).map_err(err)?) })
    }

    #[getter]
    fn dim(&self) -> usize {
        self.inner.dim()
    }

    fn affine_dim(&self) -> PyResult<usize> {
        self.inner.affine_dim().map_err(err)
    }

    fn vertices<'py>(&self, py: Python<'py>) -> PyResult<Vec<Vec<Bound<'py, PyAny>>>> {
        self.inner.vertices().iter().map(|v| v.iter().map(|x| fraction(py, x)).collect()).collect()
    }

    fn facet_count(&self) -> PyResult<usize> {
        Ok(self.inner.facets().map_err(err)?.len())
    }

    /// Euclidean volume, or `None` when the polytope is not full-dimensional.
    fn volume<'py>(&self, py: Python<'py>) -> PyResult<Option<Bound<'py, PyAny>>> {
        match self.inner.volume().map_err(err)? {
            polytope::Volume::Full(v) => Ok(Some(fraction(py, &v)?)),
            polytope::Volume::Degenerate { .. } => Ok(None),
        }
    }

    /// Normalized volume inside the hyperplane `sum(x) = const`.
    fn normalized_volume<'py>(&self, py: Python<'py>) -> PyResult<Bound<'py, PyAny>> {
        fraction(py, &polytope::normalized_volume_slice(&self.inner).map_err(err)?)
    }

    fn scale(&self, t: Bound<'_, PyAny>) -> PyResult<Self> {
        Ok(PyPolytope { inner: self.inner.scale(&to_rational(&t)?) })
    }

    fn minkowski_sum(&self, other: &PyPolytope) -> PyResult<Self> {
        Ok(PyPolytope { inner: polytope::minkowski_sum(&self.inner, &other.inner).map_err(err)? })
    }

    fn __repr__(&self) -> String {
        format!("Polytope(dim={}, vertices={})", self.inner.dim(), self.inner.vertices().len())
    }
}

/// Reduced Groebner basis under graded reverse lexicographic order.
#[pyclass(name = "GroebnerBasis", module = "eulvol_py", frozen)]
pub struct PyGroebnerBasis {
    inner: groebner::GroebnerBasis,
    names: Option<Vec<String>>,
}

#[pymethods]
impl PyGroebnerBasis {
    fn elements(&self) -> Vec<PyPolynomial> {
        self.inner.elements().iter().map(|p| PyPolynomial::wrap(p.clone(), self.names.clone())).collect()
    }

    fn is_zero_dimensional(&self) -> bool {
        self.inner.is_zero_dimensional()
    }

    fn is_unit(&self) -> bool {
        self.inner.is_unit()
    }

    /// Number of standard monomials; 0 for the unit ideal.
    fn degree(&self) -> PyResult<u64> {
        self.inner.degree().map_err(err)
    }

    fn normal_form(&self, p: &PyPolynomial) -> PyResult<PyPolynomial> {
        Ok(PyPolynomial::wrap(self.inner.normal_form(&p.inner).map_err(err)?, self.names.clone()))
    }

    fn __len__(&self) -> usize {
        self.inner.len()
    }
}

/// Groebner basis of the ideal generated by `polys`. `ranking` lists the
/// variables from largest to smallest.
#[pyfunction]
#[pyo3(signature = (nvars, polys, ranking=None))]
fn groebner_basis(nvars: usize, polys: Vec<PyPolynomial>, ranking: Option<Vec<usize>>) -> PyResult<PyGroebnerBasis> {
    let names = polys.first().and_then(|p| p.names.clone());
    let ideal = Ideal::new(nvars, polys.into_iter().map(|p| p.inner).collect()).map_err(err)?;
    let order = match ranking {
        Some(r) => MonomialOrder::with_ranking(r).map_err(err)?,
        None => MonomialOrder::grevlex(nvars),
    };
    let config = GroebnerConfig::from_env().map_err(err)?;
    let inner = groebner::buchberger_with(&ideal, &order, &config).map_err(err)?;
    Ok(PyGroebnerBasis { inner, names })
}

#[pyfunction]
fn eulerian(n: usize, k: i64) -> BigInt {
    combinatorics::eulerian(n, k)
}

#[pyfunction]
fn eulerian_row(n: usize) -> Vec<BigInt> {
    combinatorics::eulerian_row(n)
}

#[pyfunction]
fn refined_eulerian(n: usize, k: i64, d: usize) -> PyResult<BigInt> {
    combinatorics::refined_eulerian(n, k, d).map_err(err)
}

#[pyfunction]
fn refined_eulerian_via_pairs(n: usize, c: usize, d: usize) -> PyResult<BigInt> {
    combinatorics::refined_eulerian_via_pairs(n, c, d).map_err(err)
}

/// Circular permutations counted by `refined_eulerian`, starting at 0.
#[pyfunction]
fn list_fixed_circular(n: usize, k: i64, d: usize) -> PyResult<Vec<Vec<usize>>> {
    Ok(combinatorics::list_fixed_circular(n, k, d).map_err(err)?.into_iter().map(|w| w.word().to_vec()).collect())
}

#[pyfunction]
fn cyclic_descent_count(word: Vec<usize>) -> usize {
    combinatorics::cyclic_descent_count(&word)
}

#[pyfunction]
fn hypersimplex_volume<'py>(py: Python<'py>, k: usize, n: usize) -> PyResult<Bound<'py, PyAny>> {
    let p = polytope::hypersimplex(k, n).map_err(err)?;
    fraction(py, &polytope::normalized_volume_slice(&p).map_err(err)?)
}

#[pyfunction]
fn slice_volume<'py>(py: Python<'py>, c: usize, d: usize, n: usize) -> PyResult<Bound<'py, PyAny>> {
    let p = polytope::cube_slice(SliceSpec::new(c, d, n).map_err(err)?);
    fraction(py, &polytope::normalized_volume_slice(&p).map_err(err)?)
}

#[pyfunction]
fn mixed_volume<'py>(py: Python<'py>, polytopes: Vec<PyPolytope>) -> PyResult<Bound<'py, PyAny>> {
    let inner: Vec<VPolytope> = polytopes.into_iter().map(|p| p.inner).collect();
    fraction(py, &polytope::mixed_volume(&inner).map_err(err)?)
}

#[pyfunction]
#[pyo3(signature = (m, big_n, d=1))]
fn mv_family(m: usize, big_n: usize, d: usize) -> PyResult<BigInt> {
    polytope::mv_family_sparse(m, big_n, d).map_err(err)
}

/// Image of `(w, x)`: the circular word and its descent statistic `c`.
#[pyfunction]
fn bijection_forward(w: Vec<usize>, x: Vec<usize>, d: usize) -> PyResult<(Vec<usize>, usize)> {
    let pair = PairWX::new(w.len(), d, w, x).map_err(err)?;
    Ok((forward(&pair).map_err(err)?.word().to_vec(), pair.c()))
}

/// Recovers `(w, x, c)` from a symmetric circular word.
#[pyfunction]
fn bijection_inverse(word: Vec<usize>, n: usize, d: usize) -> PyResult<(Vec<usize>, Vec<usize>, usize)> {
    let word = CircularPermutation::from_word(word).map_err(err)?;
    let pre = inverse_bijection(&word, n, d).map_err(err)?;
    Ok((pre.pair.w().to_vec(), pre.pair.x().to_vec(), pre.c))
}

#[pyfunction]
fn p_sequence(w: Vec<usize>, x: Vec<usize>, d: usize, count: usize) -> PyResult<Vec<u64>> {
    let pair = PairWX::new(w.len(), d, w, x).map_err(err)?;
    Ok(build_p_sequence(&pair, count).terms)
}

/// `[[f^1]], ..., [[f^K]]` in the variables `a_{-m+1}, ..., a_{n-1}`.
#[pyfunction]
fn power_constant_terms(m: usize, n: usize, count: usize) -> PyResult<Vec<PyPolynomial>> {
    let names = laurent::generic_variable_names(m, n);
    Ok(laurent::power_constant_terms(m, n, count)
        .map_err(err)?
        .into_iter()
        .map(|p| PyPolynomial::wrap(p, Some(names.clone())))
        .collect())
}

#[pyfunction]
fn constant_terms_numeric<'py>(
    py: Python<'py>,
    coefficients: Vec<Bound<'py, PyAny>>,
    m: usize,
    n: usize,
    count: usize,
) -> PyResult<Vec<Bound<'py, PyAny>>> {
    let values = laurent::constant_terms_numeric(&to_rationals(&coefficients)?, m, n, count).map_err(err)?;
    values.iter().map(|v| fraction(py, v)).collect()
}

#[pyfunction]
fn pk_polynomial(m: usize, big_n: usize, k: usize) -> PyResult<PyPolynomial> {
    let names = (1..=big_n).map(|i| format!("r{i}")).collect();
    Ok(PyPolynomial::wrap(laurent::pk_polynomial(m, big_n, k).map_err(err)?, Some(names)))
}

type SparseGenerators = (Vec<(usize, PyPolynomial)>, Vec<usize>);

/// Nonzero constant terms of the `d`-sparse family as `(k, polynomial)`
/// pairs, and the list of `k` that vanish identically.
#[pyfunction]
fn sparse_generators(m: usize, n: usize, d: usize) -> PyResult<SparseGenerators> {
    let spec = laurent::SparseFamilySpec::new(m, n, d).map_err(err)?;
    let names = spec.variable_names();
    let g = laurent::sparse_generators(spec);
    let gens = g.generators.into_iter().map(|(k, p)| (k, PyPolynomial::wrap(p, Some(names.clone())))).collect();
    Ok((gens, g.dropped))
}

#[pyfunction]
fn verify_theorem1<'py>(py: Python<'py>, m: usize, n: usize) -> PyResult<Bound<'py, PyAny>> {
    let config = GroebnerConfig::from_env().map_err(err)?;
    to_json(py, &verify::verify_theorem1_with(m, n, &config).map_err(err)?)
}

#[pyfunction]
fn verify_theorem5<'py>(py: Python<'py>, m: usize, n: usize, d: usize) -> PyResult<Bound<'py, PyAny>> {
    let config = GroebnerConfig::from_env().map_err(err)?;
    to_json(py, &verify::verify_theorem5_with(m, n, d, &config).map_err(err)?)
}

#[pymodule]
fn eulvol_py(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add("CapExceededError", m.py().get_type::<CapExceededError>())?;
    m.add_class::<PyPolynomial>()?;
    m.add_class::<PyPolytope>()?;
    m.add_class::<PyGroebnerBasis>()?;
    m.add_function(wrap_pyfunction!(groebner_basis, m)?)?;
    m.add_function(wrap_pyfunction!(eulerian, m)?)?;
    m.add_function(wrap_pyfunction!(eulerian_row, m)?)?;
    m.add_function(wrap_pyfunction!(refined_eulerian, m)?)?;
    m.add_function(wrap_pyfunction!(refined_eulerian_via_pairs, m)?)?;
    m.add_function(wrap_pyfunction!(list_fixed_circular, m)?)?;
    m.add_function(wrap_pyfunction!(cyclic_descent_count, m)?)?;
    m.add_function(wrap_pyfunction!(hypersimplex_volume, m)?)?;
    m.add_function(wrap_pyfunction!(slice_volume, m)?)?;
    m.add_function(wrap_pyfunction!(mixed_volume, m)?)?;
    m.add_function(wrap_pyfunction!(mv_family, m)?)?;
    m.add_function(wrap_pyfunction!(bijection_forward, m)?)?;
    m.add_function(wrap_pyfunction!(bijection_inverse, m)?)?;
    m.add_function(wrap_pyfunction!(p_sequence, m)?)?;
    m.add_function(wrap_pyfunction!(power_constant_terms, m)?)?;
    m.add_function(wrap_pyfunction!(constant_terms_numeric, m)?)?;
    m.add_function(wrap_pyfunction!(pk_polynomial, m)?)?;
    m.add_function(wrap_pyfunction!(sparse_generators, m)?)?;
    m.add_function(wrap_pyfunction!(verify_theorem1, m)?)?;
    m.add_function(wrap_pyfunction!(verify_theorem5, m)?)?;
    Ok(())
}
