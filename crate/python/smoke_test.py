"""Smoke test for the pydigreedoid extension module.

Run after installing the wheel built by maturin, or point PYDIGREEDOID_LIB at
a compiled shared library (e.g. target/release/libpydigreedoid.so).
"""

import importlib.machinery
import importlib.util
import os
import sys


def load():
    path = os.environ.get("PYDIGREEDOID_LIB")
    if not path:
        import pydigreedoid

        return pydigreedoid
    loader = importlib.machinery.ExtensionFileLoader("pydigreedoid", path)
    spec = importlib.util.spec_from_loader("pydigreedoid", loader)
    module = importlib.util.module_from_spec(spec)
    loader.exec_module(module)
    return module


def main():
    dg = load()

    two_cycle = dg.RootedDigraph.from_mckay("2 2 0 1 1 0", 0)
    f = two_cycle.polynomial()
    assert str(f) == "1 + t + z + t*z", f
    assert f == two_cycle.polynomial("subsets")
    assert str(f.factorise()) == "(1 + t)*(1 + z)"
    assert f.eval(1, 1) == 2 ** two_cycle.size
    assert f.valuation(dg.Polynomial("1 + z")) == 1

    d1 = dg.family("lemma3", k=1)
    fact = dg.factorise(d1.polynomial())
    assert [str(g) for g, _ in fact.factors] == [
        "1 + t + t^2 + t^2*z",
        "2 + 2*t + t^2 + t^3 + z + t*z + t^2*z + 3*t^3*z + 3*t^3*z^2 + t^3*z^3",
    ]
    assert d1.polynomial() == dg.theorem4_formula(1, 1)
    assert not d1.is_separable()

    assert dg.path_poly(3) * dg.Polynomial("1") == dg.family("path", m=3).polynomial()
    assert dg.cycle_poly(3) == dg.family("cycle", m=3).polynomial()
    assert len(dg.rooted_classes(3)) == 36

    census = dg.Census(3)
    rows = census.rows()
    assert [r["T-ISO"] for r in rows] == [1, 4, 36]
    assert [r["PU"] for r in rows] == [1, 4, 22]
    assert "n,T,T-ISO,S,NS,NSE" in census.tables("csv")
    assert len(dg.Census.parse(census.render())) == len(census) == 41
    pairs = census.gm_factorise(dg.Polynomial("1 + t + z + t*z"), 2)
    assert [(str(g), str(h)) for g, h in pairs] == [("1 + t", "1 + z")]

    try:
        dg.Polynomial("1 + + t")
    except ValueError:
        pass
    else:
        raise AssertionError("malformed polynomial accepted")

    print("pydigreedoid smoke test passed")
    return 0


if __name__ == "__main__":
    sys.exit(main())
