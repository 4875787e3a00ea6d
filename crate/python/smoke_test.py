#!/usr/bin/env python3
"""Smoke test for the gspmixdom_py extension module.

Build the module first (`cargo build -p gspmixdom-py`), then run this
script from anywhere; it finds the compiled library in target/.
"""

import shutil
import sys
import tempfile
from pathlib import Path


def load_module():
    root = Path(__file__).resolve().parent.parent
    candidates = [
        root / "target" / profile / "libgspmixdom_py.so"
        for profile in ("debug", "release")
    ]
    built = next((p for p in candidates if p.exists()), None)
    if built is None:
        sys.exit("libgspmixdom_py.so not found; run: cargo build -p gspmixdom-py")
    stage = Path(tempfile.mkdtemp(prefix="gspmixdom_py_"))
    shutil.copy(built, stage / "gspmixdom_py.so")
    sys.path.insert(0, str(stage))
    import gspmixdom_py

    return gspmixdom_py


def main():
    m = load_module()

    # Pinned instances.
    k2 = m.parse("e(a,b)").solve()
    assert (k2.gamma_m, k2.count) == (1, 3), k2

    triangle = m.Tree.parse("p(s(e(a,b),e(b,c)),e(a,c))")
    sol = triangle.solve()
    assert (sol.gamma_m, sol.count) == (2, 15), sol

    tricky = m.parse("s(p(s(e(x,w),e(w,z)),e(x,z)),e(z,y))")
    sol = tricky.solve()
    assert (sol.gamma_m, sol.count) == (2, 9), sol

    # The witness is a real mixed dominating set of minimum size.
    g = tricky.realize()
    indices = [index for index, _, _ in sol.witness_edges]
    assert g.is_mixed_dominating(sol.witness_vertices, indices)
    assert len(sol.witness_vertices) + len(sol.witness_edges) == sol.gamma_m

    # The brute-force oracle agrees.
    truth = g.brute_force()
    assert (truth.gamma_m, truth.count) == (sol.gamma_m, sol.count), truth

    # Composing trees by hand matches parsing.
    p3 = m.Tree.leaf("a", "b").series(m.Tree.leaf("b", "c"))
    assert p3 == m.parse("s(e(a,b),e(b,c))")
    assert p3.solve().gamma_m == 1

    # Generation is pure; realize → edge list → decompose → solve round-trips.
    first = m.generate(11, 12)
    assert first.format() == m.generate(11, 12).format()
    graph = m.Graph.from_edge_list(first.realize().edge_list())
    s, t = first.terminals()
    rebuilt = graph.decompose(s, t)
    assert rebuilt.solve_value() == first.solve_value()
    assert rebuilt.solve().count == first.solve().count

    # Counts are plain Python ints and can be astronomically large.
    big = m.generate(3, 64).solve()
    assert isinstance(big.count, int) and big.count > 0

    # Domain errors arrive as ValueError.
    for bad in (lambda: m.parse("s(e(a,b)"), lambda: m.Tree.leaf("a", "a")):
        try:
            bad()
        except ValueError:
            pass
        else:
            raise AssertionError("expected ValueError")

    print("smoke test passed")


if __name__ == "__main__":
    main()
