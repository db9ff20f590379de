//! Python bindings: polynomials, catalog families, the probes, the
//! classifier and the regression suite. Results come back as plain
//! dicts and lists with exact numbers as strings.

use pyo3::create_exception;
use pyo3::exceptions::PyException;
use pyo3::prelude::*;
use pyo3::types::{PyDict, PyList};
use serde::Serialize;
use serde_json::Value;

use hyperlines::catalog::{build_family, FamilySpec, FAMILY_NAMES};
use hyperlines::exactcore::{parse_polynomial, print_polynomial, MultiPoly};
use hyperlines::geometry::{LineP4, ProjPoint};
use hyperlines::probes::{self, ProbeReport};
use hyperlines::solve::{Arith, PlaneOptions};
use hyperlines::suite::{family_report, run_suite, SuiteConfig};

create_exception!(hyperlines_py, HyperlinesError, PyException);

fn err(e: hyperlines::Error) -> PyErr {
    HyperlinesError::new_err(e.to_string())
}

fn to_py<'py>(py: Python<'py>, v: &Value) -> PyResult<Bound<'py, PyAny>> {
    Ok(match v {
        Value::Null => py.None().into_bound(py),
        Value::Bool(b) => b.into_pyobject(py)?.to_owned().into_any(),
        Value::Number(n) => match n.as_i64() {
            Some(i) => i.into_pyobject(py)?.into_any(),
            None => n.as_f64().unwrap_or_default().into_pyobject(py)?.into_any(),
        },
        Value::String(s) => s.into_pyobject(py)?.into_any(),
        Value::Array(a) => {
            let list = PyList::empty(py);
            for x in a {
                list.append(to_py(py, x)?)?;
            }
            list.into_any()
        }
        Value::Object(o) => {
            let dict = PyDict::new(py);
            for (k, x) in o {
                dict.set_item(k, to_py(py, x)?)?;
            }
            dict.into_any()
        }
    })
}

fn ser<'py>(py: Python<'py>, v: &impl Serialize) -> PyResult<Bound<'py, PyAny>> {
    to_py(py, &serde_json::to_value(v).map_err(|e| HyperlinesError::new_err(e.to_string()))?)
}

/// A homogeneous form in x0..x4 over Q(i).
#[pyclass(name = "Polynomial", module = "hyperlines_py", frozen, eq, from_py_object)]
#[derive(Clone, PartialEq)]
pub struct Polynomial {
    inner: MultiPoly,
}

#[pymethods]
impl Polynomial {
    #[new]
    fn new(text: &str) -> PyResult<Self> {
        Ok(Polynomial { inner: parse_polynomial(text).map_err(err)? })
    }

    #[getter]
    fn degree(&self) -> Option<u32> {
        self.inner.total_degree()
    }

    #[getter]
    fn is_homogeneous(&self) -> bool {
        self.inner.is_homogeneous()
    }

    /// Value at a point, as an exact string.
    fn evaluate(&self, point: PointArg) -> PyResult<String> {
        let p = point.parse()?;
        Ok(self.inner.eval(&p.coords).to_string())
    }

    fn __str__(&self) -> String {
        print_polynomial(&self.inner)
    }

    fn __repr__(&self) -> String {
        format!("Polynomial('{}')", print_polynomial(&self.inner))
    }
}

/// A catalog family: equation, rational lines and expected invariants.
#[pyclass(name = "Family", module = "hyperlines_py", frozen, from_py_object)]
#[derive(Clone)]
pub struct Family {
    inner: FamilySpec,
}

#[pymethods]
impl Family {
    #[staticmethod]
    #[pyo3(signature = (name, seed = 0))]
    fn build(py: Python<'_>, name: &str, seed: u64) -> PyResult<Self> {
        let spec = py.detach(|| build_family(name, seed)).map_err(err)?;
        Ok(Family { inner: spec })
    }

    #[staticmethod]
    fn from_json(text: &str) -> PyResult<Self> {
        let spec = serde_json::from_str(text).map_err(|e| HyperlinesError::new_err(e.to_string()))?;
        Ok(Family { inner: spec })
    }

    fn to_json(&self) -> String {
        serde_json::to_string_pretty(&self.inner).unwrap()
    }

    #[getter]
    fn name(&self) -> String {
        self.inner.name.clone()
    }

    #[getter]
    fn seed(&self) -> u64 {
        self.inner.seed
    }

    #[getter]
    fn equation(&self) -> Polynomial {
        Polynomial { inner: self.inner.implicit_eq.clone() }
    }

    /// Known lines as `a;b` strings.
    #[getter]
    fn known_lines(&self) -> Vec<String> {
        self.inner.known_lines.iter().map(line_text).collect()
    }

    #[getter]
    fn expected<'py>(&self, py: Python<'py>) -> PyResult<Bound<'py, PyAny>> {
        ser(py, &self.inner.expected)
    }

    /// Points of the family, exact coordinates as strings.
    #[pyo3(signature = (count, seed = 0))]
    fn sample_points(&self, count: usize, seed: u64) -> PyResult<Vec<Vec<String>>> {
        let pts = self.inner.sample_points(count, seed).map_err(err)?;
        Ok(pts.iter().map(|p| p.coords.iter().map(|c| c.to_string()).collect()).collect())
    }

    fn __repr__(&self) -> String {
        format!("Family('{}', seed={})", self.inner.name, self.inner.seed)
    }
}

fn line_text(l: &LineP4) -> String {
    let p = |q: &ProjPoint| q.coords.iter().map(|c| c.to_string()).collect::<Vec<_>>().join(",");
    format!("{};{}", p(&l.span[0]), p(&l.span[1]))
}

#[derive(FromPyObject)]
enum EqArg {
    Poly(Polynomial),
    Family(Family),
    Text(String),
}

impl EqArg {
    fn poly(self) -> PyResult<MultiPoly> {
        match self {
            EqArg::Poly(p) => Ok(p.inner),
            EqArg::Family(f) => Ok(f.inner.implicit_eq),
            EqArg::Text(t) => parse_polynomial(&t).map_err(err),
        }
    }
}

/// `"a,b,c,d,e"` or a sequence of numbers or number strings.
#[derive(FromPyObject)]
enum PointArg {
    Text(String),
    Coords(Vec<Py<PyAny>>),
}

impl PointArg {
    fn parse(self) -> PyResult<ProjPoint> {
        let text = match self {
            PointArg::Text(t) => t,
            PointArg::Coords(c) => Python::attach(|py| -> PyResult<String> {
                let parts: PyResult<Vec<String>> = c.iter().map(|x| Ok(x.bind(py).str()?.to_string())).collect();
                Ok(parts?.join(","))
            })?,
        };
        ProjPoint::parse(&text).map_err(err)
    }
}

fn parse_line(text: &str) -> PyResult<LineP4> {
    LineP4::parse(text).map_err(err)
}

/// Lines through a point: distinct count, Bezout total and multiplicities.
#[pyfunction]
#[pyo3(signature = (eq, point, seed = 0))]
fn lines_through_point<'py>(py: Python<'py>, eq: EqArg, point: PointArg, seed: u64) -> PyResult<Bound<'py, PyAny>> {
    let (g, p) = (eq.poly()?, point.parse()?);
    let fan = py.detach(|| probes::lines_through_point(&g, &p, seed, PlaneOptions::default())).map_err(err)?;
    ser(py, &fan)
}

/// Reducedness of the scheme of lines at a line, with the local length.
#[pyfunction]
fn reduced_at_line<'py>(py: Python<'py>, eq: EqArg, line: &str) -> PyResult<Bound<'py, PyAny>> {
    let (g, r) = (eq.poly()?, parse_line(line)?);
    let red = py.detach(|| probes::reduced_at_line(&g, &r)).map_err(err)?;
    ser(py, &red)
}

/// Length of Sing(X) on a line; `None` when the line lies in Sing(X).
#[pyfunction]
fn singular_points_on_line(eq: EqArg, line: &str) -> PyResult<Option<usize>> {
    probes::singular_points_on_line(&eq.poly()?, &parse_line(line)?).map_err(err)
}

/// Rank of the quadratic part at a point.
#[pyfunction]
fn f2_rank(eq: EqArg, point: PointArg) -> PyResult<usize> {
    probes::f2_rank(&eq.poly()?, &point.parse()?).map_err(err)
}

/// Number of lines through a general point of a catalog family.
#[pyfunction]
#[pyo3(signature = (family, trials = 7, seed = 0))]
fn mu(py: Python<'_>, family: Family, trials: usize, seed: u64) -> PyResult<usize> {
    let est = py.detach(|| probes::mu_generic(&family.inner, trials, seed, Arith::Modular)).map_err(err)?;
    Ok(est.mu)
}

/// Lines of X meeting two skew lines of X.
#[pyfunction]
#[pyo3(signature = (eq, line1, line2, seed = 0))]
fn mubar(py: Python<'_>, eq: EqArg, line1: &str, line2: &str, seed: u64) -> PyResult<usize> {
    let (g, a, b) = (eq.poly()?, parse_line(line1)?, parse_line(line2)?);
    py.detach(|| probes::mubar(&g, &a, &b, seed, Arith::Modular)).map_err(err)
}

/// Degree of the surface swept by the lines meeting a line.
#[pyfunction]
#[pyo3(signature = (eq, line, seed = 0))]
fn sigma_degree(py: Python<'_>, eq: EqArg, line: &str, seed: u64) -> PyResult<usize> {
    let (g, r) = (eq.poly()?, parse_line(line)?);
    py.detach(|| probes::sigma_degree(&g, &r, seed, Arith::Modular)).map_err(err)
}

/// Points of Sing(X) on a general plane.
#[pyfunction]
#[pyo3(signature = (eq, seed = 0))]
fn sing_locus_plane_count(py: Python<'_>, eq: EqArg, seed: u64) -> PyResult<usize> {
    let g = eq.poly()?;
    py.detach(|| probes::sing_locus_plane_count(&g, seed, Arith::Modular)).map_err(err)
}

/// Lines on a general hyperplane section: an int or `"infinite"`.
#[pyfunction]
#[pyo3(signature = (eq, seed = 0))]
fn nu<'py>(py: Python<'py>, eq: EqArg, seed: u64) -> PyResult<Bound<'py, PyAny>> {
    let g = eq.poly()?;
    let v = py.detach(|| probes::nu(&g, seed, Arith::Modular)).map_err(err)?;
    ser(py, &v)
}

/// Whether the lines meeting `line` lie on a quadric of their span.
#[pyfunction]
#[pyo3(signature = (eq, line, seed = 0))]
fn quadric_bundle_probe(py: Python<'_>, eq: EqArg, line: &str, seed: u64) -> PyResult<bool> {
    let (g, r) = (eq.poly()?, parse_line(line)?);
    py.detach(|| probes::quadric_bundle_probe(&g, &r, seed)).map_err(err)
}

/// The probe report of a catalog family, classified.
#[pyfunction]
#[pyo3(signature = (family, trials = 7, seed = 0))]
fn probe_family<'py>(py: Python<'py>, family: Family, trials: usize, seed: u64) -> PyResult<Bound<'py, PyAny>> {
    let r = py.detach(|| family_report(&family.inner, trials, seed)).map_err(err)?;
    ser(py, &r)
}

/// Classify a report given as a dict or a JSON string.
#[pyfunction]
fn classify<'py>(py: Python<'py>, report: &Bound<'py, PyAny>) -> PyResult<Bound<'py, PyAny>> {
    let text: String = match report.extract::<String>() {
        Ok(t) => t,
        Err(_) => py.import("json")?.call_method1("dumps", (report,))?.extract()?,
    };
    let r: ProbeReport = serde_json::from_str(&text).map_err(|e| HyperlinesError::new_err(e.to_string()))?;
    let c = probes::classify(&r);
    let out = ser(py, &c)?;
    out.set_item("bound_violations", r.bound_violations())?;
    Ok(out)
}

/// Run the regression suite; `filter` selects criteria by index, name or tag.
#[pyfunction]
#[pyo3(signature = (seed = 0, filter = None))]
fn verify<'py>(py: Python<'py>, seed: u64, filter: Option<String>) -> PyResult<Bound<'py, PyAny>> {
    let mut cfg = SuiteConfig::new(seed);
    cfg.filter = filter;
    let report = py.detach(|| run_suite(&cfg));
    ser(py, &report)
}

#[pymodule]
pub fn hyperlines_py(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add("HyperlinesError", m.py().get_type::<HyperlinesError>())?;
    m.add("FAMILY_NAMES", FAMILY_NAMES.to_vec())?;
    m.add("__version__", env!("CARGO_PKG_VERSION"))?;
    m.add_class::<Polynomial>()?;
    m.add_class::<Family>()?;
    m.add_function(wrap_pyfunction!(lines_through_point, m)?)?;
    m.add_function(wrap_pyfunction!(reduced_at_line, m)?)?;
    m.add_function(wrap_pyfunction!(singular_points_on_line, m)?)?;
    m.add_function(wrap_pyfunction!(f2_rank, m)?)?;
    m.add_function(wrap_pyfunction!(mu, m)?)?;
    m.add_function(wrap_pyfunction!(mubar, m)?)?;
    m.add_function(wrap_pyfunction!(sigma_degree, m)?)?;
    m.add_function(wrap_pyfunction!(sing_locus_plane_count, m)?)?;
    m.add_function(wrap_pyfunction!(nu, m)?)?;
    m.add_function(wrap_pyfunction!(quadric_bundle_probe, m)?)?;
    m.add_function(wrap_pyfunction!(probe_family, m)?)?;
    m.add_function(wrap_pyfunction!(classify, m)?)?;
    m.add_function(wrap_pyfunction!(verify, m)?)?;
    Ok(())
}
