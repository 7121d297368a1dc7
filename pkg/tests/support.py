"""Helpers shared by the test modules."""

from __future__ import annotations

import time
from contextlib import contextmanager
from itertools import combinations

from threelie.algebra import AlternatingTrilinear
from threelie.exact import Matrix
from threelie.twoterm import L5Map, TwoTermAlgebra

# one line per acceptance criterion, printed by conftest at the end of the run
CRITERIA_LINES = []


@contextmanager
def criterion(number: int, title: str, budget: float):
    """Time the block, record a pass/fail line and fail if it exceeds ``budget`` seconds."""
    start = time.perf_counter()
    status = "FAIL"
    try:
        yield
        elapsed = time.perf_counter() - start
        status = "PASS" if elapsed < budget else f"FAIL (over the {budget:g} s budget)"
    finally:
        elapsed = time.perf_counter() - start
        line = f"criterion {number:2d} {status:<5} {elapsed:6.2f} s  {title}"
        CRITERIA_LINES.append(line)
        print(line)
    assert elapsed < budget, f"criterion {number} took {elapsed:.2f} s, budget {budget} s"


def two_term_entries(T: TwoTermAlgebra, pieces=("l3", "rho", "h", "d0", "d1", "l5", "d2")):
    """Addresses of every independent structure constant of ``T``, restricted to ``pieces``."""
    n, m = T.dim0, T.dim1
    out = []
    if "l3" in pieces:
        out += [("l3", t, v) for t in combinations(range(n), 3) for v in range(n)]
    if "rho" in pieces:
        out += [("rho", p, (i, j)) for p in combinations(range(n), 2) for i in range(m) for j in range(m)]
    for name, rows, cols in (("h", n, m), ("d0", n, n), ("d1", m, m)):
        if name in pieces:
            out += [(name, (i, j)) for i in range(rows) for j in range(cols)]
    if "l5" in pieces:
        out += [("l5", (p, t), v) for p in combinations(range(n), 2)
                for t in combinations(range(n), 3) for v in range(m)]
    if "d2" in pieces:
        out += [("d2", t, v) for t in combinations(range(n), 3) for v in range(m)]
    return out


def _bump(values: dict, key, slot, size, delta):
    v = list(values.get(key, [0] * size))
    v[slot] += delta
    values[key] = v


def perturb(T: TwoTermAlgebra, entry, delta=1) -> TwoTermAlgebra:
    """Copy of ``T`` with one structure constant shifted by ``delta``."""
    kind = entry[0]
    l3, l5, d2 = dict(T.l3_00.values), dict(T.l5.values), dict(T.d2.values)
    rho = T.rho
    mats = {"h": T.h.to_rows(), "d0": T.d0.to_rows(), "d1": T.d1.to_rows()}
    if kind == "l3":
        _bump(l3, entry[1], entry[2], T.dim0, delta)
    elif kind == "l5":
        _bump(l5, entry[1], entry[2], T.dim1, delta)
    elif kind == "d2":
        _bump(d2, entry[1], entry[2], T.dim1, delta)
    elif kind == "rho":
        rows = rho.get(entry[1], Matrix.zeros(T.dim1, T.dim1)).to_rows()
        rows[entry[2][0]][entry[2][1]] += delta
        rho[entry[1]] = Matrix.from_rows(rows)
    else:
        i, j = entry[1]
        mats[kind][i][j] += delta

    def mat(name, rows, cols):
        return Matrix.from_rows(mats[name]) if rows and cols else Matrix.zeros(rows, cols)

    return TwoTermAlgebra(T.dim0, T.dim1, AlternatingTrilinear(T.dim0, T.dim0, l3), rho,
                          mat("h", T.dim0, T.dim1), L5Map(T.dim0, T.dim1, l5),
                          mat("d0", T.dim0, T.dim0), mat("d1", T.dim1, T.dim1),
                          AlternatingTrilinear(T.dim0, T.dim1, d2), T.lam)
