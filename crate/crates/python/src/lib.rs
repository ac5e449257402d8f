//! Python bindings. Chamber and hyperplane indices are 0-based here.

use num_complex::Complex64;
use pyo3::create_exception;
use pyo3::exceptions::PyException;
use pyo3::prelude::*;
use pyo3::types::{PyDict, PyList};

use engine::complexes::{
    aomoto_complex, cohomology_dims, exact_aomoto_dims, minimal_complex, tangent_cone_compare, BettiReport,
    CochainComplex, WeightVector, DEFAULT_TOLERANCE,
};
use engine::fixtures::{self, Fixture};
use engine::io::{parse_input, print_input};
use engine::verify::{verify, Status, VerifyConfig};

create_exception!(chamber_basis, ChamberBasisError, PyException);

fn err(e: engine::Error) -> PyErr {
    ChamberBasisError::new_err(format!("{}: {e}", e.kind()))
}

/// Weights from a string (`"1/2,0,1+2i"`) or any sequence of numbers.
fn weights(obj: &Bound<'_, PyAny>, n: usize) -> PyResult<WeightVector> {
    let w = if let Ok(s) = obj.extract::<String>() {
        WeightVector::parse(&s).map_err(err)?
    } else {
        WeightVector::complex(obj.extract::<Vec<Complex64>>()?)
    };
    if w.len() != n {
        return Err(err(engine::Error::DimensionMismatch {
            context: "weights".into(),
            expected: n,
            found: w.len(),
        }));
    }
    Ok(w)
}

/// One dense row-major matrix per degree.
type Matrices = Vec<Vec<Vec<Complex64>>>;
/// Column tuples and integer rows of one ξ matrix.
type XiTable = (Vec<Vec<usize>>, Vec<Vec<i64>>);

fn matrices(cx: &CochainComplex) -> Matrices {
    cx.differentials
        .iter()
        .map(|m| {
            (0..m.nrows())
                .map(|i| (0..m.ncols()).map(|j| m[(i, j)]).collect())
                .collect()
        })
        .collect()
}

/// A real arrangement with a generic flag, its chamber basis and structure
/// constants.
#[pyclass(module = "chamber_basis", frozen)]
struct Instance {
    inner: engine::Instance,
    fixture: Option<&'static Fixture>,
}

impl Instance {
    fn build(text: &str, seed: u64, fixture: Option<&'static Fixture>) -> PyResult<Self> {
        let (arr, flag) = parse_input(text).map_err(err)?;
        let inner = match flag {
            Some(f) => engine::Instance::with_flag(arr, &f),
            None => engine::Instance::new(arr, None, seed),
        }
        .map_err(err)?;
        Ok(Instance { inner, fixture })
    }
}

#[pymethods]
impl Instance {
    /// Parses the text format. Without a `flag` block a generic flag is
    /// searched for from `seed`.
    #[new]
    #[pyo3(signature = (text, seed = 0))]
    fn new(text: &str, seed: u64) -> PyResult<Self> {
        Self::build(text, seed, None)
    }

    /// A bundled arrangement, e.g. `"fig1"`.
    #[staticmethod]
    fn fixture(name: &str) -> PyResult<Self> {
        let f = fixtures::fixture(name).ok_or_else(|| {
            ChamberBasisError::new_err(format!(
                "unknown fixture {name:?}; have {}",
                fixtures::names().join(", ")
            ))
        })?;
        Self::build(f.text, 0, Some(f))
    }

    #[getter]
    fn dim(&self) -> usize {
        self.inner.arrangement.dim()
    }

    #[getter]
    fn n(&self) -> usize {
        self.inner.n()
    }

    #[getter]
    fn betti(&self) -> Vec<u64> {
        self.inner.betti.coefficients.clone()
    }

    #[getter]
    fn beta(&self) -> u64 {
        self.inner.betti.beta
    }

    /// Sign vectors as `"+-+-"` strings, indexed by chamber id.
    #[getter]
    fn chambers(&self) -> Vec<String> {
        let st = &self.inner.stratification;
        st.chambers().iter().map(|c| c.sign_vector.to_string()).collect()
    }

    /// Chamber ids of each stratum, in basis order.
    #[getter]
    fn strata(&self) -> Vec<Vec<usize>> {
        let st = &self.inner.stratification;
        (0..=st.dim()).map(|q| st.stratum(q).to_vec()).collect()
    }

    fn sgn(&self, chamber: usize) -> PyResult<i8> {
        self.check_chamber(chamber)?;
        Ok(self.inner.stratification.sgn(chamber))
    }

    /// Fixture label → chamber id; empty for non-fixture instances.
    fn labels(&self) -> std::collections::HashMap<String, usize> {
        match self.fixture {
            Some(f) => f
                .label_map(&self.inner)
                .into_iter()
                .map(|(k, v)| (k.to_string(), v))
                .collect(),
            None => Default::default(),
        }
    }

    /// (columns, rows): the independent q-tuples and the integer ξ matrix
    /// with one row per chamber of the stratum.
    fn xi(&self, q: usize) -> PyResult<XiTable> {
        self.check_degree(q)?;
        let b = &self.inner.basis;
        let cols = b.tuples(q).iter().map(|m| m.indices().to_vec()).collect();
        Ok((cols, b.xi_matrix(q).to_vec()))
    }

    /// ν(C) as a list of (indices, coefficient) with exact coefficients as
    /// strings.
    fn nu(&self, chamber: usize) -> PyResult<Vec<(Vec<usize>, String)>> {
        self.check_chamber(chamber)?;
        Ok(self
            .inner
            .basis
            .nu(chamber)
            .terms()
            .iter()
            .map(|(m, c)| (m.indices().to_vec(), c.to_string()))
            .collect())
    }

    /// Nonzero structure constants as dicts with keys degree, source,
    /// target, n, separating.
    fn constants<'py>(&self, py: Python<'py>) -> PyResult<Bound<'py, PyList>> {
        let out = PyList::empty(py);
        for (q, e) in self.inner.constants.all_entries() {
            let d = PyDict::new(py);
            d.set_item("degree", q)?;
            d.set_item("source", e.from)?;
            d.set_item("target", e.to)?;
            d.set_item("n", e.n)?;
            d.set_item("separating", e.separating.clone())?;
            out.append(d)?;
        }
        Ok(out)
    }

    /// Differentials of the Aomoto complex, one matrix per degree.
    fn aomoto(&self, weights_: &Bound<'_, PyAny>) -> PyResult<Matrices> {
        let w = weights(weights_, self.n())?;
        Ok(matrices(&aomoto_complex(&self.inner.constants, &w).map_err(err)?))
    }

    /// Differentials of the minimal complex, one matrix per degree.
    fn minimal(&self, weights_: &Bound<'_, PyAny>) -> PyResult<Matrices> {
        let w = weights(weights_, self.n())?;
        Ok(matrices(&minimal_complex(&self.inner.constants, &w).map_err(err)?))
    }

    /// Cohomology dimensions of `kind` ("minimal" or "aomoto"). With
    /// `exact`, Aomoto ranks are computed over the rationals.
    #[pyo3(signature = (weights_, kind = "minimal", tolerance = DEFAULT_TOLERANCE, exact = false))]
    fn cohomology(&self, weights_: &Bound<'_, PyAny>, kind: &str, tolerance: f64, exact: bool) -> PyResult<Vec<usize>> {
        let w = weights(weights_, self.n())?;
        let sc = &self.inner.constants;
        let report: BettiReport = match (kind, exact) {
            ("aomoto", true) => {
                let e = w.exact_values().ok_or_else(|| {
                    err(engine::Error::InvalidWeights(
                        "exact ranks need rational weights".into(),
                    ))
                })?;
                exact_aomoto_dims(sc, e)
            }
            ("aomoto", false) => aomoto_complex(sc, &w).and_then(|cx| cohomology_dims(&cx, tolerance)),
            ("minimal", _) => minimal_complex(sc, &w).and_then(|cx| cohomology_dims(&cx, tolerance)),
            _ => return Err(ChamberBasisError::new_err(format!("unknown complex kind {kind:?}"))),
        }
        .map_err(err)?;
        Ok(report.dims())
    }

    /// Dict with minimal, aomoto (dimension lists), in_small_regime, agree.
    #[pyo3(signature = (weights_, tolerance = DEFAULT_TOLERANCE, exact = false))]
    fn compare<'py>(
        &self,
        py: Python<'py>,
        weights_: &Bound<'py, PyAny>,
        tolerance: f64,
        exact: bool,
    ) -> PyResult<Bound<'py, PyDict>> {
        let w = weights(weights_, self.n())?;
        let r = tangent_cone_compare(&self.inner.constants, &w, tolerance, exact).map_err(err)?;
        let d = PyDict::new(py);
        d.set_item("minimal", r.minimal.dims())?;
        d.set_item("aomoto", r.aomoto.dims())?;
        d.set_item("in_small_regime", r.in_small_regime)?;
        d.set_item("agree", r.agree)?;
        Ok(d)
    }

    /// Runs every check; returns (passed, [(name, status, detail)]).
    #[pyo3(signature = (samples = 20, seed = 0, tolerance = DEFAULT_TOLERANCE))]
    fn verify(&self, samples: usize, seed: u64, tolerance: f64) -> (bool, Vec<(String, String, String)>) {
        let config = VerifyConfig {
            tolerance,
            seed,
            samples,
            complex_samples: 10 * samples,
        };
        let report = verify(&self.inner, self.fixture, &config);
        let checks = report
            .checks
            .iter()
            .map(|c| {
                let status = match c.status {
                    Status::Pass => "pass",
                    Status::Fail => "fail",
                    Status::Info => "info",
                };
                (c.name.to_string(), status.to_string(), c.detail.clone())
            })
            .collect();
        (report.passed(), checks)
    }

    /// The arrangement and flag in the text format.
    fn to_text(&self) -> String {
        print_input(&self.inner.arrangement, Some(self.inner.stratification.flag()))
    }

    fn __repr__(&self) -> String {
        format!("Instance(dim={}, n={}, betti={:?})", self.dim(), self.n(), self.betti())
    }
}

impl Instance {
    fn check_chamber(&self, c: usize) -> PyResult<()> {
        let total = self.inner.stratification.chambers().len();
        if c < total {
            Ok(())
        } else {
            Err(ChamberBasisError::new_err(format!(
                "chamber {c} out of range (0..{total})"
            )))
        }
    }

    fn check_degree(&self, q: usize) -> PyResult<()> {
        if q <= self.dim() {
            Ok(())
        } else {
            Err(ChamberBasisError::new_err(format!(
                "degree {q} out of range (0..={})",
                self.dim()
            )))
        }
    }
}

#[pyfunction]
fn fixture_names() -> Vec<&'static str> {
    fixtures::names().to_vec()
}

/// Module initializer; public so the interpreter can be embedded in tests.
#[pymodule]
#[pyo3(name = "chamber_basis")]
pub fn init_module(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_class::<Instance>()?;
    m.add("ChamberBasisError", m.py().get_type::<ChamberBasisError>())?;
    m.add_function(wrap_pyfunction!(fixture_names, m)?)?;
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn library_errors_carry_their_kind() {
        Python::attach(|py| {
            let e = err(engine::Error::NonEssential);
            assert!(e.is_instance_of::<ChamberBasisError>(py));
            assert!(e.value(py).to_string().starts_with("non_essential"));
        });
    }

    #[test]
    fn weights_accept_strings_and_sequences() {
        Python::attach(|py| {
            let s = "1/2,0".into_pyobject(py).unwrap().into_any();
            assert!(weights(&s, 2).unwrap().exact_values().is_some());
            let l = PyList::new(py, [0.5, 1.0]).unwrap().into_any();
            assert!(weights(&l, 2).unwrap().exact_values().is_none());
            assert!(weights(&l, 3).is_err());
        });
    }
}
