use pyo3::exceptions::{PyRuntimeError, PyValueError};
use pyo3::prelude::*;
use ratholo::biquotient::{self, BiquotientSpec};
use ratholo::holonomy::{self, BoundQuery, Estimate, ManifoldClass};
use ratholo::lowdim::{self, FieldMode, RealType4, RealType7};
use ratholo::{Error, SullivanAlgebra};

fn py_err(e: Error) -> PyErr {
    match e {
        Error::Internal(m) => PyRuntimeError::new_err(m),
        other => PyValueError::new_err(other.to_string()),
    }
}

fn model(json: &str) -> PyResult<SullivanAlgebra> {
    SullivanAlgebra::from_json_str(json).map_err(py_err)
}

/// Names of the real homotopy types of elliptic spaces in dimension 4 or 7.
#[pyfunction]
fn elliptic_types(dim: u32) -> PyResult<Vec<&'static str>> {
    match dim {
        4 => Ok(RealType4::ALL.iter().map(|t| t.name()).collect()),
        7 => Ok(RealType7::ALL.iter().map(|t| t.name()).collect()),
        _ => Err(PyValueError::new_err("dim must be 4 or 7")),
    }
}

/// Betti numbers b_0..b_max of a model given as JSON.
#[pyfunction]
fn cohomology_dims(model_json: &str, max_degree: u32) -> PyResult<Vec<usize>> {
    Ok(model(model_json)?.cohomology_dims(max_degree).dims)
}

/// Real type of a minimal model of formal dimension 4 or 7.
#[pyfunction]
fn classify_model(model_json: &str) -> PyResult<&'static str> {
    let m = model(model_json)?;
    match m.formal_dimension() {
        4 => Ok(lowdim::classify4(&m).map_err(py_err)?.real_type.name()),
        7 => Ok(lowdim::classify7(&m).map_err(py_err)?.real_type.name()),
        n => Err(PyValueError::new_err(format!("formal dimension {n} is not classified"))),
    }
}

/// Whether (a² + s b², ab) and (a² + t b², ab) generate isomorphic ideals over `field`.
#[pyfunction]
#[pyo3(signature = (s, t, field = "Q"))]
fn iso_case31(s: &str, t: &str, field: &str) -> PyResult<bool> {
    let q = |x: &str| ratholo::algebra::parse_rational(x).ok_or_else(|| PyValueError::new_err(format!("bad rational `{x}`")));
    let f = FieldMode::parse(field).ok_or_else(|| PyValueError::new_err("field must be Q or R"))?;
    Ok(lowdim::iso_case31(&q(s)?, &q(t)?, f).map_err(py_err)?.isomorphic)
}

/// Real type of a seven-dimensional biquotient given as JSON.
#[pyfunction]
fn biquotient_type(spec_json: &str) -> PyResult<&'static str> {
    let spec = BiquotientSpec::from_json_str(spec_json).map_err(py_err)?;
    Ok(biquotient::detect_type(&spec).map_err(py_err)?.classification.real_type.name())
}

/// Betti bound for a formal metric; returned as a decimal string.
#[pyfunction]
#[pyo3(signature = (class_name, dim, degree, estimate = "first"))]
fn formality_bound(class_name: &str, dim: u32, degree: u32, estimate: &str) -> PyResult<String> {
    let class = ManifoldClass::parse(class_name).ok_or_else(|| PyValueError::new_err("class must be kaehler or pqk"))?;
    let estimate = Estimate::parse(estimate).ok_or_else(|| PyValueError::new_err(format!("unknown estimate `{estimate}`")))?;
    let b = holonomy::formality_bound(&BoundQuery { class, dim, degree, estimate }).map_err(py_err)?;
    Ok(b.to_string())
}

/// Admissible (b4, b6, b8) for 16-dimensional PQK manifolds with b2 = 0.
#[pyfunction]
fn pqk16_triples() -> Vec<(i64, i64, i64)> {
    holonomy::pqk16_triples().triples.iter().map(|t| (t.b4 as i64, t.b6 as i64, t.b8 as i64)).collect()
}

/// Run the command-line tool; returns (exit code, stdout, stderr).
#[pyfunction]
fn run_cli(args: Vec<String>) -> (i32, String, String) {
    let mut out = Vec::new();
    let mut err = Vec::new();
    let argv = std::iter::once("ratholo".to_string()).chain(args);
    let code = ratholo::cli::run(argv, &mut out, &mut err);
    (code, String::from_utf8_lossy(&out).into_owned(), String::from_utf8_lossy(&err).into_owned())
}

#[pymodule]
fn ratholo_py(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_function(wrap_pyfunction!(elliptic_types, m)?)?;
    m.add_function(wrap_pyfunction!(cohomology_dims, m)?)?;
    m.add_function(wrap_pyfunction!(classify_model, m)?)?;
    m.add_function(wrap_pyfunction!(iso_case31, m)?)?;
    m.add_function(wrap_pyfunction!(biquotient_type, m)?)?;
    m.add_function(wrap_pyfunction!(formality_bound, m)?)?;
    m.add_function(wrap_pyfunction!(pqk16_triples, m)?)?;
    m.add_function(wrap_pyfunction!(run_cli, m)?)?;
    Ok(())
}
