"""Slow, independent re-implementations used to confirm fast results.

Nothing here shares code with the matrix assembly in ``cohomology``: the
coboundaries are evaluated straight from their defining sums on basis
arguments, with cochains treated as multilinear functions and elements of
the exterior square as dictionaries ``{(i, j): coefficient}`` with
``i < j``.  Ranks are recomputed with sympy.
"""

from __future__ import annotations

from fractions import Fraction
from itertools import combinations, product

import sympy

ZERO = Fraction(0)


# -- dense structure tensors ---------------------------------------------------

def bracket_tensor(A) -> list:
    """``T[i][j][k]`` = list of coordinates of ``[e_i, e_j, e_k]``, all orderings filled."""
    n = A.n
    T = [[[[ZERO] * n for _ in range(n)] for _ in range(n)] for _ in range(n)]
    for (i, j, k), v in A.values.items():
        for (a, b, c), s in (((i, j, k), 1), ((j, k, i), 1), ((k, i, j), 1),
                             ((j, i, k), -1), ((i, k, j), -1), ((k, j, i), -1)):
            T[a][b][c] = [s * Fraction(x) for x in v]
    return T


def _br(T, u, v, w):
    n = len(T)
    out = [ZERO] * n
    for i in range(n):
        if not u[i]:
            continue
        for j in range(n):
            if not v[j]:
                continue
            for k in range(n):
                if not w[k]:
                    continue
                c = u[i] * v[j] * w[k]
                for l, x in enumerate(T[i][j][k]):
                    if x:
                        out[l] += c * x
    return out


def _unit(n, i):
    return [Fraction(int(k == i)) for k in range(n)]


def fundamental_identity_ok(A) -> bool:
    """Fundamental identity on all basis 5-tuples, with no shortcuts."""
    T = bracket_tensor(A)
    n = A.n
    e = [_unit(n, i) for i in range(n)]
    for a, b, c, d, f in product(range(n), repeat=5):
        x1, x2, y1, y2, y3 = e[a], e[b], e[c], e[d], e[f]
        lhs = _br(T, x1, x2, _br(T, y1, y2, y3))
        rhs = [p + q + r for p, q, r in zip(_br(T, _br(T, x1, x2, y1), y2, y3),
                                            _br(T, y1, _br(T, x1, x2, y2), y3),
                                            _br(T, y1, y2, _br(T, x1, x2, y3)))]
        if lhs != rhs:
            return False
    return True


def _matvec(M, v):
    return [sum((M[i][j] * v[j] for j in range(len(v))), ZERO) for i in range(len(M))]


def weighted_differential_ok(A, d_rows, lam) -> bool:
    """Weighted derivation law on all basis triples; ``d_rows`` in the column convention."""
    T = bracket_tensor(A)
    n = A.n
    lam = Fraction(lam)
    e = [_unit(n, i) for i in range(n)]
    D = lambda v: _matvec(d_rows, v)
    for i, j, k in product(range(n), repeat=3):
        x, y, z = e[i], e[j], e[k]
        dx, dy, dz = D(x), D(y), D(z)
        lhs = D(_br(T, x, y, z))
        terms = [(1, _br(T, dx, y, z)), (1, _br(T, x, dy, z)), (1, _br(T, x, y, dz)),
                 (lam, _br(T, dx, dy, z)), (lam, _br(T, x, dy, dz)), (lam, _br(T, dx, y, dz)),
                 (lam * lam, _br(T, dx, dy, dz))]
        rhs = [sum((c * t[l] for c, t in terms), ZERO) for l in range(n)]
        if lhs != rhs:
            return False
    return True


def rank(M) -> int:
    """Exact rank through sympy."""
    if M.rows == 0 or M.cols == 0:
        return 0
    return sympy.Matrix(M.rows, M.cols, [sympy.Rational(x.numerator, x.denominator)
                                         for x in M.entries]).rank()


# -- cochains as functions ------------------------------------------------------

def _wedge(n, u, v) -> dict:
    """``u ^ v`` as ``{(i, j): c}``."""
    out = {}
    for i, j in combinations(range(n), 2):
        c = u[i] * v[j] - u[j] * v[i]
        if c:
            out[(i, j)] = c
    return out


class CochainFunction:
    """A degree-``p`` cochain given by its values on basis arguments.

    ``table[(pairs, c)]`` is the value on ``(e_{x1}^e_{y1}, .., e_{xp-1}^e_{yp-1}, e_c)``
    for ``x < y`` in each pair.  Evaluation extends multilinearly.
    """

    def __init__(self, p, n, dimV, table):
        self.p, self.n, self.dimV = p, n, dimV
        self.table = table

    @classmethod
    def from_coordinates(cls, p, n, dimV, coords):
        pairs = list(combinations(range(n), 2))
        m = len(pairs)
        table = {}
        pos = 0
        for ls in product(range(m), repeat=p - 1):
            for c in range(n):
                table[(tuple(pairs[a] for a in ls), c)] = tuple(coords[pos:pos + dimV])
                pos += dimV
        return cls(p, n, dimV, table)

    def coordinates(self):
        pairs = list(combinations(range(self.n), 2))
        out = []
        for ls in product(range(len(pairs)), repeat=self.p - 1):
            for c in range(self.n):
                out.extend(self.table[(tuple(pairs[a] for a in ls), c)])
        return tuple(out)

    def __call__(self, Ls, z):
        """``Ls``: list of ``{(i, j): c}``; ``z``: vector."""
        out = [ZERO] * self.dimV
        for choice in product(*[list(L.items()) for L in Ls]):
            coef = Fraction(1)
            keys = []
            for key, c in choice:
                coef *= c
                keys.append(key)
            for k, zc in enumerate(z):
                if zc:
                    val = self.table[(tuple(keys), k)]
                    for l, x in enumerate(val):
                        if x:
                            out[l] += coef * zc * x
        return out


def _leibniz_bracket(T, n, X, Y) -> dict:
    """``[X, Y]_F`` for ``X, Y`` in the exterior square (dictionary form)."""
    out = {}
    e = [_unit(n, i) for i in range(n)]
    for (x1, x2), a in X.items():
        for (y1, y2), b in Y.items():
            for key, c in _wedge(n, _br(T, e[x1], e[x2], e[y1]), e[y2]).items():
                out[key] = out.get(key, ZERO) + a * b * c
            for key, c in _wedge(n, e[y1], _br(T, e[x1], e[x2], e[y2])).items():
                out[key] = out.get(key, ZERO) + a * b * c
    return {k: v for k, v in out.items() if v}


def _rho_apply(rho, X, z, v):
    """``rho(x, y) v`` summed over ``X = sum c x^y``; ``rho(i, j)`` returns row lists."""
    out = [ZERO] * len(v)
    for (i, j), c in X.items():
        w = _matvec(rho(i, j), v)
        for l in range(len(v)):
            out[l] += c * w[l]
    return out


def coboundary(A, rho, f: CochainFunction) -> CochainFunction:
    """``partial f`` evaluated term by term on every basis argument.

    ``rho(i, j)`` gives the action matrix of ``e_i, e_j`` as a list of rows
    (pass the corrected action to get the weighted coboundary).
    """
    T = bracket_tensor(A)
    n, V, p = A.n, f.dimV, f.p
    e = [_unit(n, i) for i in range(n)]
    pairs = list(combinations(range(n), 2))
    table = {}
    for ls in product(pairs, repeat=p):
        Xs = [{pr: Fraction(1)} for pr in ls]
        for c in range(n):
            z = e[c]
            out = [ZERO] * V
            for i in range(p):
                sgn = (-1) ** (i + 1)
                rest = Xs[:i] + Xs[i + 1:]
                for k in range(i + 1, p):
                    new = rest[:k - 1] + [_leibniz_bracket(T, n, Xs[i], Xs[k])] + rest[k:]
                    out = [a + sgn * b for a, b in zip(out, f(new, z))]
                (x, y), = Xs[i].keys()
                out = [a + sgn * b for a, b in zip(out, f(rest, _br(T, e[x], e[y], z)))]
                out = [a - sgn * b for a, b in zip(out, _rho_apply(rho, Xs[i], z, f(rest, z)))]
            s = (-1) ** (p + 1)
            xp, yp = ls[-1]
            head = Xs[:-1]
            t1 = _matvec(_pair_matrix(rho, n, e[yp], z), f(head, e[xp]))
            t2 = _matvec(_pair_matrix(rho, n, z, e[xp]), f(head, e[yp]))
            out = [a + s * (b + c2) for a, b, c2 in zip(out, t1, t2)]
            table[(ls, c)] = tuple(out)
    return CochainFunction(p + 1, n, V, table)


def _pair_matrix(rho, n, u, v):
    """``rho(u, v)`` for vectors, as rows."""
    M = None
    for i, j in product(range(n), repeat=2):
        c = u[i] * v[j]
        if not c or i == j:
            continue
        R = rho(i, j)
        if M is None:
            M = [[ZERO] * len(R[0]) for _ in R]
        for a in range(len(R)):
            for b in range(len(R[0])):
                M[a][b] += c * R[a][b]
    if M is None:
        size = len(rho(0, 1)) if n > 1 else 0
        return [[ZERO] * size for _ in range(size)]
    return M


def insertion_map(d_rows, dV_rows, lam, f: CochainFunction) -> CochainFunction:
    """``sum_S lam^(|S|-1) f(d on the slots in S) - dV f`` over all ``2p - 1`` slots."""
    n, V, p = f.n, f.dimV, f.p
    lam = Fraction(lam)
    e = [_unit(n, i) for i in range(n)]
    D = lambda v: _matvec(d_rows, v)
    pairs = list(combinations(range(n), 2))
    table = {}
    for ls in product(pairs, repeat=p - 1):
        slots = [i for pr in ls for i in pr]
        for c in range(n):
            args = [e[i] for i in slots] + [e[c]]
            k = len(args)
            out = [ZERO] * V
            for size in range(1, k + 1):
                w = lam ** (size - 1)
                if not w:
                    continue
                for S in combinations(range(k), size):
                    vs = [D(a) if s in S else a for s, a in enumerate(args)]
                    Ls = [_wedge(n, vs[2 * t], vs[2 * t + 1]) for t in range(p - 1)]
                    val = f(Ls, vs[-1])
                    out = [a + w * b for a, b in zip(out, val)]
            base = f([{pr: Fraction(1)} for pr in ls], e[c])
            out = [a - b for a, b in zip(out, _matvec(dV_rows, base))]
            table[(ls, c)] = tuple(out)
    return CochainFunction(p, n, V, table)


def corrected_action(rho, d_rows, lam, n):
    """``rho(x,y) + lam rho(dx,y) + lam rho(x,dy) + lam^2 rho(dx,dy)`` as a function of ``(i, j)``."""
    lam = Fraction(lam)
    e = [_unit(n, i) for i in range(n)]
    D = lambda v: _matvec(d_rows, v)

    def hat(i, j):
        terms = [(1, _pair_matrix(rho, n, e[i], e[j])), (lam, _pair_matrix(rho, n, D(e[i]), e[j])),
                 (lam, _pair_matrix(rho, n, e[i], D(e[j]))),
                 (lam * lam, _pair_matrix(rho, n, D(e[i]), D(e[j])))]
        size = len(terms[0][1])
        return [[sum((c * M[a][b] for c, M in terms), ZERO) for b in range(size)]
                for a in range(size)]
    return hat


def pair_coboundary(A, rho, d_rows, dV_rows, lam, p, f_coords, g_coords, dimV):
    """Coordinates of ``(partial f, partial_lambda g + (-1)^p delta f)`` for a degree-``p`` pair."""
    n = A.n
    f = CochainFunction.from_coordinates(p, n, dimV, f_coords)
    top = coboundary(A, rho, f).coordinates()
    bottom = insertion_map(d_rows, dV_rows, lam, f).coordinates()
    sign = (-1) ** p
    bottom = [sign * x for x in bottom]
    if p >= 2:
        g = CochainFunction.from_coordinates(p - 1, n, dimV, g_coords)
        lifted = coboundary(A, corrected_action(rho, d_rows, lam, n), g).coordinates()
        bottom = [a + b for a, b in zip(bottom, lifted)]
    return tuple(top), tuple(bottom)
