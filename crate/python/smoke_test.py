"""Smoke test for the mfk extension module.

Build and run from the repository root:

    cargo build --release -p mfk-python --features extension-module
    cp target/release/libmfk.so python/mfk.so
    python3 python/smoke_test.py
"""

import json

import mfk

NODE = {
    "mode": "rational",
    "vars": ["x", "y"],
    "f": "x*y",
    "d1": [["x"]],
    "d0": [["y"]],
    "grading": {"weights": [1, 1], "degree": 2, "deg1": [-1], "deg0": [0]},
}


def main():
    p = mfk.MatrixFactorization.from_json(json.dumps(NODE))
    q = p.shift()
    assert p.rank == (1, 1) and p.graded
    assert p.validate()["valid"]
    assert p.theta(q)["theta"] == 1
    assert p.theta(p)["theta"] == -1

    other = dict(NODE, vars=["u", "v"], f="u*v", d1=[["u"]], d0=[["v"]])
    t = p.tensor(mfk.MatrixFactorization.from_json(json.dumps(other)))
    assert t.rank == (2, 2) and t.validate()["valid"]
    again = mfk.MatrixFactorization.from_json(t.to_json())
    assert again.rank == t.rank

    k, report = p.knorrer(real8=True)
    assert k.rank == (16, 16) and report["valid"]

    assert mfk.milnor("x^3-y^2", ["x", "y"], [2, 3], 6)["mu"] == 2
    assert mfk.clifford_classify([-1] * 8) == "Mat16(R)"

    c1 = {"n": 1, "form": [-1], "m1": 1, "m0": 1, "rho": [{"up": [[1]], "down": [[-1]]}]}
    m = mfk.CliffordModule.from_json(json.dumps(c1))
    assert m.abs_class()["group_name"] == "Z/2"
    assert m.beh().validate()["valid"]

    try:
        mfk.MatrixFactorization.from_json('{"mode": "rational"}')
    except mfk.MfkError:
        pass
    else:
        raise AssertionError("malformed input accepted")
    print("smoke test passed")


if __name__ == "__main__":
    main()
