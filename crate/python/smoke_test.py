"""Smoke test for the ohcp_py extension.

Build it first:
    cargo build --release -p ohcp-py --features extension-module
then run
    python3 python/smoke_test.py [path/to/libohcp_py.so]
"""

import importlib.machinery
import importlib.util
import os
import sys
from fractions import Fraction

ROOT = os.path.dirname(os.path.dirname(os.path.abspath(__file__)))


def load(path=None):
    candidates = [path] if path else [
        os.path.join(ROOT, "target", profile, "libohcp_py" + ext)
        for profile in ("release", "debug")
        for ext in (".so", ".dylib")
    ]
    for c in candidates:
        if c and os.path.exists(c):
            loader = importlib.machinery.ExtensionFileLoader("ohcp_py", c)
            spec = importlib.util.spec_from_file_location("ohcp_py", c, loader=loader)
            module = importlib.util.module_from_spec(spec)
            loader.exec_module(module)
            return module
    sys.exit("ohcp_py library not found; build it with cargo first")


def main():
    ohcp = load(sys.argv[1] if len(sys.argv) > 1 else None)
    assert "mobius5" in ohcp.fixture_names()

    square = ohcp.Complex([[0, 1, 2], [0, 2, 3]])
    assert square.f_vector() == [4, 5, 2]
    assert square.homology(1) == (0, [])
    assert square.is_totally_unimodular() is True
    assert ohcp.Complex.parse(square.to_text()).f_vector() == square.f_vector()

    rp2 = ohcp.Complex.fixture("rp2")
    assert rp2.homology(1) == (0, ["2"])
    assert rp2.h1_shortcut() is None

    mobius = ohcp.Complex.fixture("mobius5")
    certs = mobius.mntus()
    assert len(certs) == 1 and abs(certs[0]["determinant"]) == 2
    assert mobius.neutralization() == "no"

    weights = [Fraction(1) for _ in mobius.simplices(1)]
    boundary = {(1, 3), (3, 5), (2, 5), (2, 4), (1, 4)}
    for i, e in enumerate(mobius.simplices(1)):
        if tuple(e) in boundary:
            weights[i] = Fraction(1, 20)
    inst = ohcp.Instance(mobius, [(1, [1, 2])], p=1, weights=weights)
    sol = inst.solve()
    assert sol.objective == Fraction(1, 8), sol
    assert not sol.integral
    assert len(inst.optimal_vertices()) == 1
    assert all(abs(c) == Fraction(1, 2) for e, c in sol.chain() if tuple(e) in boundary)

    core = ohcp.Complex.fixture("filled-core")
    assert core.h1_shortcut() == "yes"
    assert core.neutralization() == "yes"

    print("ohcp_py smoke test passed")


if __name__ == "__main__":
    main()
