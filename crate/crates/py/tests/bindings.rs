use pyo3::prelude::*;

fn with_module<F: FnOnce(Python<'_>, &Bound<'_, PyModule>)>(check: F) {
    Python::initialize();
    Python::attach(|py| {
        let module = PyModule::new(py, "dynres").unwrap();
        dynres::dynres(&module).unwrap();
        check(py, &module);
    });
}

#[test]
fn format_properties() {
    with_module(|_, m| {
        let e6 = m.getattr("Format").unwrap().call1((1, 5, 6, 2)).unwrap();
        assert!(e6.getattr("is_dynkin").unwrap().extract::<bool>().unwrap());
        assert_eq!(e6.call_method0("family_count").unwrap().extract::<usize>().unwrap(), 2);
        let affine = m.getattr("Format").unwrap().call1((1, 6, 8, 3)).unwrap();
        let kind: String = affine.getattr("diagram_type").unwrap().extract().unwrap();
        assert!(kind.contains("affine"), "{kind}");
    });
}

#[test]
fn chart_resolution_round_trips() {
    with_module(|_, m| {
        let format = m.getattr("Format").unwrap().call1((1, 5, 5, 1)).unwrap();
        let chart = m.getattr("SchubertChart").unwrap().call1((format, "w0")).unwrap();
        let complex = chart.call_method0("resolution").unwrap();
        let text: String = complex.call_method0("to_json").unwrap().extract().unwrap();
        let again = m.getattr("Complex").unwrap().call_method1("from_json", (text.clone(),)).unwrap();
        assert_eq!(again.call_method0("to_json").unwrap().extract::<String>().unwrap(), text);
        let label = again.call_method0("classify").unwrap();
        assert_eq!(label.get_item("kind").unwrap().extract::<String>().unwrap(), "coset");
    });
}

#[test]
fn errors_map_to_exceptions() {
    with_module(|py, m| {
        let affine = m.getattr("Format").unwrap().call1((1, 6, 8, 3)).unwrap();
        let err = affine.call_method0("family_count").unwrap_err();
        assert!(err.matches(py, m.getattr("DynresError").unwrap()).unwrap());
        let bad = m.getattr("Format").unwrap().call1((1, 5, 5, 1)).unwrap();
        let err = m.getattr("SchubertChart").unwrap().call1((bad, "s:q7")).unwrap_err();
        assert!(err.is_instance_of::<pyo3::exceptions::PyValueError>(py));
    });
}
