//! Python module `orbitkit`.
//!
//! Weights cross the boundary as lists of strings (`"1/2"`), or as a single
//! comma-separated string. Orbit reports come back as canonical JSON text.

use orbitkit::cech::{self, Cochain, Nerve, Ring};
use orbitkit::orbit;
use orbitkit::quantize::{self, LatticeSpec};
use orbitkit::rational::{fmt_q, parse_q, parse_q_list};
use orbitkit::report::{analyze_orbit, canonical_json};
use orbitkit::weyl::{WeylGroup, DEFAULT_CAP};
use orbitkit::{BasisTag, Error, Weight};
use pyo3::create_exception;
use pyo3::exceptions::PyValueError;
use pyo3::prelude::*;
use pyo3::types::PyString;

create_exception!(orbitkit, OrbitkitError, PyValueError);
create_exception!(orbitkit, CapExceededError, OrbitkitError);
create_exception!(orbitkit, CertificateError, OrbitkitError);

fn py_err(e: Error) -> PyErr {
    match e {
        Error::CapExceeded(_) => CapExceededError::new_err(e.to_string()),
        Error::Certificate(_) => CertificateError::new_err(e.to_string()),
        _ => OrbitkitError::new_err(e.to_string()),
    }
}

fn coords(obj: &Bound<'_, PyAny>) -> PyResult<Vec<orbitkit::Q>> {
    if let Ok(s) = obj.cast::<PyString>() {
        return parse_q_list(&s.to_str()?).map_err(py_err);
    }
    obj.try_iter()?
        .map(|item| {
            let s = item?.str()?.to_str()?.to_owned();
            parse_q(&s).map_err(py_err)
        })
        .collect()
}

fn strings(w: &Weight) -> Vec<String> {
    w.coords.iter().map(fmt_q).collect()
}

fn lattice(name: &str, rs: &orbitkit::RootSystem) -> PyResult<LatticeSpec> {
    match name {
        "sc" => Ok(LatticeSpec::simply_connected()),
        "adjoint" => Ok(LatticeSpec::adjoint()),
        other => match other.strip_prefix("custom:") {
            Some(path) => {
                let text = std::fs::read_to_string(path).map_err(|e| OrbitkitError::new_err(format!("{path}: {e}")))?;
                LatticeSpec::parse_custom(&text, rs).map_err(py_err)
            }
            None => Err(OrbitkitError::new_err(format!("unknown lattice {other:?}"))),
        },
    }
}

/// Exact root data of a compact series such as `"A2"` or `"A1xB2xT1"`.
#[pyclass(name = "RootSystem", module = "orbitkit", frozen)]
struct PyRootSystem {
    inner: orbitkit::RootSystem,
}

impl PyRootSystem {
    fn weight(&self, lam: &Bound<'_, PyAny>, basis: &str) -> PyResult<Weight> {
        let basis = match basis {
            "ambient" => BasisTag::Ambient,
            "fundamental" => BasisTag::Fundamental,
            other => return Err(OrbitkitError::new_err(format!("unknown basis {other:?}"))),
        };
        let w = Weight { coords: coords(lam)?, basis };
        let (w, _) = self.inner.normalize_weight(&w).map_err(py_err)?;
        Ok(w)
    }

    fn weyl(&self, cap: Option<usize>) -> PyResult<WeylGroup> {
        WeylGroup::generate(&self.inner, cap.unwrap_or(DEFAULT_CAP)).map_err(py_err)
    }
}

#[pymethods]
impl PyRootSystem {
    #[new]
    fn new(series: &str) -> PyResult<Self> {
        Ok(PyRootSystem { inner: orbitkit::RootSystem::from_str_spec(series).map_err(py_err)? })
    }

    #[getter]
    fn series(&self) -> String {
        self.inner.spec().to_string()
    }

    /// Ambient Euclidean dimension.
    #[getter]
    fn dim(&self) -> usize {
        self.inner.dim()
    }

    #[getter]
    fn rank(&self) -> usize {
        self.inner.rank()
    }

    /// Real dimension of the group.
    #[getter]
    fn dim_group(&self) -> usize {
        self.inner.dim_g()
    }

    fn roots(&self) -> Vec<Vec<String>> {
        self.inner.roots().iter().map(strings).collect()
    }

    fn simple_roots(&self) -> Vec<Vec<String>> {
        self.inner.simple_roots().iter().map(strings).collect()
    }

    fn fundamental_weights(&self) -> Vec<Vec<String>> {
        self.inner.fundamental_weights().iter().map(strings).collect()
    }

    #[pyo3(signature = (cap = None))]
    fn weyl_order(&self, py: Python<'_>, cap: Option<usize>) -> PyResult<usize> {
        py.detach(|| self.weyl(cap)).map(|w| w.order())
    }

    #[pyo3(signature = (lam, basis = "ambient"))]
    fn orbit_dimension(&self, lam: &Bound<'_, PyAny>, basis: &str) -> PyResult<usize> {
        let w = self.weight(lam, basis)?;
        orbit::orbit_dimension(&w, &self.inner).map_err(py_err)
    }

    #[pyo3(signature = (lam, lattice = "sc", basis = "ambient"))]
    fn is_integral(&self, lam: &Bound<'_, PyAny>, lattice: &str, basis: &str) -> PyResult<bool> {
        let w = self.weight(lam, basis)?;
        let lat = self::lattice(lattice, &self.inner)?;
        quantize::is_integral(&w, &lat, &self.inner).map_err(py_err)
    }

    /// Full orbit report as canonical JSON.
    #[pyo3(signature = (lam, lattice = "sc", basis = "ambient", cap = None))]
    fn orbit_report(&self, py: Python<'_>, lam: &Bound<'_, PyAny>, lattice: &str, basis: &str, cap: Option<usize>) -> PyResult<String> {
        let w = self.weight(lam, basis)?;
        let lat = self::lattice(lattice, &self.inner)?;
        let report = py.detach(|| {
            let g = WeylGroup::generate(&self.inner, cap.unwrap_or(DEFAULT_CAP))?;
            analyze_orbit(&w, &self.inner, &lat, &g)
        });
        Ok(canonical_json(&report.map_err(py_err)?.to_json()))
    }

    fn __repr__(&self) -> String {
        format!("RootSystem('{}')", self.inner.spec())
    }
}

fn ring(name: &str) -> PyResult<Ring> {
    name.parse().map_err(py_err)
}

/// `H^k` of a nerve given in file format. Returns `(name, free_rank, torsion)`.
#[pyfunction]
#[pyo3(signature = (nerve, k, ring = "z"))]
fn cohomology(nerve: &str, k: usize, ring: &str) -> PyResult<(String, usize, Vec<String>)> {
    let n = Nerve::parse(nerve).map_err(py_err)?;
    let h = cech::cohomology(&n, k, self::ring(ring)?);
    Ok((h.to_string(), h.free_rank, h.torsion.iter().map(|t| t.to_string()).collect()))
}

/// Class of an integer 2-cocycle in `H^2(nerve, Z)` as `(value, modulus)`
/// pairs, `modulus` being `None` for free summands.
#[pyfunction]
fn chern_class(nerve: &str, cocycle: &str) -> PyResult<Vec<(String, Option<String>)>> {
    let n = Nerve::parse(nerve).map_err(py_err)?;
    let a = Cochain::parse(cocycle, &n, Ring::Z).map_err(py_err)?;
    let c = cech::chern_class(&n, &a).map_err(py_err)?;
    if !c.valid {
        return Err(OrbitkitError::new_err(format!("not a cocycle: coboundary nonzero on {:?}", c.witness.unwrap_or_default())));
    }
    Ok(c.coordinates.iter().map(|x| (x.value.to_string(), x.modulus.as_ref().map(|m| m.to_string()))).collect())
}

#[pymodule]
#[pyo3(name = "orbitkit")]
fn orbitkit_module(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_class::<PyRootSystem>()?;
    m.add_function(wrap_pyfunction!(cohomology, m)?)?;
    m.add_function(wrap_pyfunction!(chern_class, m)?)?;
    m.add("OrbitkitError", m.py().get_type::<OrbitkitError>())?;
    m.add("CapExceededError", m.py().get_type::<CapExceededError>())?;
    m.add("CertificateError", m.py().get_type::<CertificateError>())?;
    m.add("KKS_CONVENTION", orbit::KKS_CONVENTION)?;
    Ok(())
}
