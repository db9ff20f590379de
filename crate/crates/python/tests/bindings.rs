use pyo3::prelude::*;
use pyo3::types::PyDict;

fn with_module<R>(f: impl for<'py> FnOnce(Python<'py>, Bound<'py, PyModule>) -> PyResult<R>) -> R {
    Python::initialize();
    Python::attach(|py| {
        let m = pyo3::wrap_pymodule!(hyperlines_py::hyperlines_py)(py).into_bound(py).cast_into::<PyModule>().unwrap();
        f(py, m)
    })
    .unwrap()
}

const EXAMPLE41: &str = "y4 + y1*y4 - y2^2 - y3^2 - y1*y2^2 - 2*y2*y3*y4 - y4^3";

#[test]
fn fan_at_fixture_origin() {
    with_module(|_, m| {
        let fan = m.getattr("lines_through_point")?.call1((EXAMPLE41, "1,0,0,0,0"))?;
        assert_eq!(fan.get_item("distinct")?.extract::<usize>()?, 3);
        assert_eq!(fan.get_item("bezout_total")?.extract::<usize>()?, 6);
        let red = m.getattr("reduced_at_line")?.call1((EXAMPLE41, "1,0,0,0,0;0,1,0,0,0"))?;
        assert!(!red.get_item("reduced")?.extract::<bool>()?);
        Ok(())
    });
}

#[test]
fn polynomial_class() {
    with_module(|_, m| {
        let g = m.getattr("Polynomial")?.call1((EXAMPLE41,))?;
        assert_eq!(g.getattr("degree")?.extract::<u32>()?, 3);
        let again = m.getattr("Polynomial")?.call1((g.str()?,))?;
        assert!(g.eq(&again)?);
        assert_eq!(m.getattr("f2_rank")?.call1((g, vec![1, 0, 0, 0, 0]))?.extract::<usize>()?, 2);
        Ok(())
    });
}

#[test]
fn errors_raise_the_module_exception() {
    with_module(|py, m| {
        let e = m.getattr("Polynomial")?.call1(("x5 + 1",)).unwrap_err();
        assert!(e.is_instance(py, &m.getattr("HyperlinesError")?));
        assert!(e.to_string().contains("unknown variable"));
        Ok(())
    });
}

#[test]
fn classify_a_dict() {
    with_module(|py, m| {
        let report = PyDict::new(py);
        let fam = m.getattr("Family")?.getattr("build")?.call1(("example41",))?;
        let full = m.getattr("probe_family")?.call1((fam,))?;
        assert_eq!(full.get_item("mu")?.extract::<usize>()?, 3);
        report.update(full.cast::<pyo3::types::PyMapping>()?)?;
        let c = m.getattr("classify")?.call1((report,))?;
        assert_eq!(c.get_item("case")?.extract::<u8>()?, 1);
        Ok(())
    });
}
