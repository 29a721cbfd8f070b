//! The bindings driven through an embedded interpreter.

use pyhomprop::pyhomprop;
use pyo3::prelude::*;
use pyo3::types::PyDict;

fn run(code: &str) -> PyResult<()> {
    pyo3::append_to_inittab!(pyhomprop);
    pyo3::prepare_freethreaded_python();
    Python::with_gil(|py| {
        let globals = PyDict::new_bound(py);
        py.run_bound(code, Some(&globals), None)
    })
}

#[test]
fn twist_round_trip_through_python() {
    run(r#"
import json
import pyhomprop

assoc = pyhomprop.Presentation.builtin("as")
dual = pyhomprop.Algebra.from_json(
    json.dumps({"space": {"dims": {"0": 2}}, "maps": {"mu": [[1, 0, 0, 0], [0, 1, 1, 0]]}}), assoc)
assert dual.check(assoc)[0]
twisted, hom = pyhomprop.hom_twist(dual, "[[1, 0], [0, 2]]", assoc, "multiplicative")
assert twisted.check(hom)[0]
assert pyhomprop.Algebra.from_json(twisted.to_json()).to_json() == twisted.to_json()
assert pyhomprop.char_poly(dual, "[[1, 0], [0, 2]]") == ["2", "-3", "1"]
try:
    pyhomprop.Presentation.builtin("nope")
except ValueError:
    pass
else:
    raise AssertionError("unknown builtin accepted")
"#)
    .unwrap_or_else(|e| panic!("{e}"));
}
