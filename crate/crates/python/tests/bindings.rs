use std::ffi::CString;

use mfk::mfk as mfk_module;
use pyo3::prelude::*;

const SCRIPT: &str = r#"
import json
import mfk

node = {
    "mode": "rational", "vars": ["x", "y"], "f": "x*y",
    "d1": [["x"]], "d0": [["y"]],
    "grading": {"weights": [1, 1], "degree": 2, "deg1": [-1], "deg0": [0]},
}
p = mfk.MatrixFactorization.from_json(json.dumps(node))
assert p.validate()["valid"]
assert p.theta(p.shift())["theta"] == 1
assert p.hom_homology()["total_h0"] == 1
k, report = p.knorrer(real8=True)
assert k.rank == (16, 16) and report["multiplier"] == 16
assert mfk.milnor("x^3+y^3+z^3", ["x", "y", "z"], [1, 1, 1], 3)["mu"] == 8
assert mfk.clifford_classify([-1] * 8) == "Mat16(R)"
try:
    p.tensor(p)
    raise AssertionError("shared variables accepted")
except mfk.MfkError as e:
    assert json.loads(str(e))["kind"] == "variable_collision"
"#;

#[test]
fn module_works_from_python() {
    pyo3::append_to_inittab!(mfk_module);
    Python::initialize();
    Python::attach(|py| {
        let code = CString::new(SCRIPT).unwrap();
        py.run(&code, None, None).map_err(|e| e.to_string()).unwrap();
    });
}
