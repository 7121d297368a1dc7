"""3-Lie algebras, weighted differentials, representations and their checks.

Conventions (see docs/conventions.md): indices are 0-based, basis vectors
are ``e_0 .. e_{n-1}``, matrices use the column convention, and the
bracket is stored only on strictly increasing triples.
"""

from __future__ import annotations

from fractions import Fraction
from itertools import combinations, product
from typing import Dict, Optional, Sequence

from .exact import (
    ONE, ZERO, Matrix, WedgeIndex, lin_comb, scalar, sort_with_sign,
    unit_vector, vec_add, vec_scale, vec_sub, vector, zero_vector,
)
from .verdict import Collector, PreconditionError, Verdict


def _det3(u, v, w, i, j, k):
    return (u[i] * (v[j] * w[k] - v[k] * w[j])
            - u[j] * (v[i] * w[k] - v[k] * w[i])
            + u[k] * (v[i] * w[j] - v[j] * w[i]))


class AlternatingTrilinear:
    """Alternating trilinear map from an ``n``-space to an ``out_dim``-space.

    ``values`` maps strictly increasing triples to output vectors; missing
    triples are zero.
    """

    def __init__(self, n: int, out_dim: int, values: Optional[dict] = None):
        self.n = n
        self.out_dim = out_dim
        vals = {}
        for key, v in (values or {}).items():
            key = tuple(key)
            if len(key) != 3 or not (0 <= key[0] < key[1] < key[2] < n):
                raise ValueError(f"triple must be strictly increasing and in range: {key}")
            v = vector(v)
            if len(v) != out_dim:
                raise ValueError(f"value at {key} has length {len(v)}, expected {out_dim}")
            if any(v):
                vals[key] = v
        self.values: Dict[tuple, tuple] = vals

    @classmethod
    def zero(cls, n: int, out_dim: int):
        return cls(n, out_dim, {})

    def basis(self, i: int, j: int, k: int) -> tuple:
        sign, key = sort_with_sign((i, j, k))
        if not sign or key not in self.values:
            return zero_vector(self.out_dim)
        v = self.values[key]
        return v if sign > 0 else tuple(-x for x in v)

    def __call__(self, u, v, w) -> tuple:
        out = [ZERO] * self.out_dim
        su = [(i, x) for i, x in enumerate(u) if x]
        sv = [(j, y) for j, y in enumerate(v) if y]
        sw = [(k, z) for k, z in enumerate(w) if z]
        if len(su) * len(sv) * len(sw) <= 6 * len(self.values):
            # sparse arguments: expand over their supports
            for i, x in su:
                for j, y in sv:
                    if j == i:
                        continue
                    xy = x * y
                    for k, z in sw:
                        if k == i or k == j:
                            continue
                        sign, key = sort_with_sign((i, j, k))
                        c = self.values.get(key)
                        if c is None:
                            continue
                        m = xy * z if sign > 0 else -(xy * z)
                        for l, t in enumerate(c):
                            if t:
                                out[l] += m * t
            return tuple(out)
        for (i, j, k), c in self.values.items():
            m = _det3(u, v, w, i, j, k)
            if m:
                for l, x in enumerate(c):
                    if x:
                        out[l] += m * x
        return tuple(out)

    eval = __call__

    def items(self):
        return sorted(self.values.items())

    def is_zero(self) -> bool:
        return not self.values

    def __eq__(self, other):
        return (isinstance(other, AlternatingTrilinear) and self.n == other.n
                and self.out_dim == other.out_dim and self.values == other.values)

    def __hash__(self):
        return hash((self.n, self.out_dim, tuple(sorted(self.values.items()))))

    def __add__(self, other):
        keys = set(self.values) | set(other.values)
        z = zero_vector(self.out_dim)
        return AlternatingTrilinear(self.n, self.out_dim, {
            k: vec_add(self.values.get(k, z), other.values.get(k, z)) for k in keys})

    def __neg__(self):
        return self.scaled(-1)

    def __sub__(self, other):
        return self + (-other)

    def scaled(self, c):
        c = scalar(c)
        return AlternatingTrilinear(self.n, self.out_dim,
                                    {k: vec_scale(c, v) for k, v in self.values.items()})

    def compose_left(self, M: Matrix) -> "AlternatingTrilinear":
        """The map ``M o self``."""
        return AlternatingTrilinear(self.n, M.rows, {k: M @ v for k, v in self.values.items()})

    def coordinates(self) -> tuple:
        """Flat coordinates over (canonical triple, output index)."""
        out = []
        for key in combinations(range(self.n), 3):
            out.extend(self.values.get(key, zero_vector(self.out_dim)))
        return tuple(out)

    @classmethod
    def from_coordinates(cls, n: int, out_dim: int, coords: Sequence):
        triples = list(combinations(range(n), 3))
        if len(coords) != len(triples) * out_dim:
            raise ValueError("coordinate length mismatch")
        return cls(n, out_dim, {t: coords[a * out_dim:(a + 1) * out_dim]
                                for a, t in enumerate(triples)})

    def __repr__(self):
        return f"AlternatingTrilinear(n={self.n}, out_dim={self.out_dim}, {dict(self.items())})"


class ThreeLieAlgebra(AlternatingTrilinear):
    """Structure constants ``[e_i, e_j, e_k]`` for ``i < j < k``."""

    def __init__(self, n: int, values: Optional[dict] = None):
        super().__init__(n, n, values)
        self._ad = {}

    @classmethod
    def from_trilinear(cls, t: AlternatingTrilinear) -> "ThreeLieAlgebra":
        if t.n != t.out_dim:
            raise ValueError("a bracket must map the space to itself")
        return cls(t.n, t.values)

    @classmethod
    def abelian(cls, n: int) -> "ThreeLieAlgebra":
        return cls(n, {})

    def bracket(self, u, v, w) -> tuple:
        return self(u, v, w)

    def ad(self, i: int, j: int) -> Matrix:
        """Matrix of ``[e_i, e_j, -]``."""
        key = (i, j)
        if key not in self._ad:
            self._ad[key] = Matrix.from_columns(
                [self.basis(i, j, k) for k in range(self.n)], self.n)
        return self._ad[key]

    def ad_of(self, u, v) -> Matrix:
        return Matrix.from_columns(
            [self(u, v, unit_vector(self.n, k)) for k in range(self.n)], self.n)

    def __repr__(self):
        return f"ThreeLieAlgebra(n={self.n}, {dict(self.items())})"


class WeightedDifferential:
    """A linear map ``d`` on the algebra together with its weight."""

    def __init__(self, d: Matrix, lam=0):
        if not d.is_square():
            raise ValueError("a differential must be square")
        self.d = d
        self.lam = scalar(lam)

    @property
    def n(self) -> int:
        return self.d.rows

    @property
    def phi(self) -> Matrix:
        """``I + lam*d``."""
        return Matrix.identity(self.n) + self.d * self.lam

    def __call__(self, u) -> tuple:
        return self.d @ u

    def with_weight(self, lam) -> "WeightedDifferential":
        return WeightedDifferential(self.d, lam)

    def __eq__(self, other):
        return isinstance(other, WeightedDifferential) and self.d == other.d and self.lam == other.lam

    def __repr__(self):
        return f"WeightedDifferential(lam={self.lam}, d={self.d!r})"


class Representation:
    """``rho(e_i, e_j)`` for ``i < j`` (extended antisymmetrically), ``dV`` and the weight."""

    def __init__(self, n: int, dimV: int, rho: Optional[dict], dV: Matrix, lam=0):
        self.n = n
        self.dimV = dimV
        if dV.shape != (dimV, dimV):
            raise ValueError(f"dV must be {dimV}x{dimV}")
        self.dV = dV
        self.lam = scalar(lam)
        self.rho: Dict[tuple, Matrix] = {}
        for key, M in (rho or {}).items():
            key = tuple(key)
            if len(key) != 2 or not (0 <= key[0] < key[1] < n):
                raise ValueError(f"pair must be strictly increasing and in range: {key}")
            if M.shape != (dimV, dimV):
                raise ValueError(f"rho{key} must be {dimV}x{dimV}")
            if not M.is_zero():
                self.rho[key] = M
        self._zero = Matrix.zeros(dimV, dimV)

    @classmethod
    def trivial(cls, n: int, dimV: int, dV: Optional[Matrix] = None, lam=0):
        return cls(n, dimV, {}, dV if dV is not None else Matrix.zeros(dimV, dimV), lam)

    def basis(self, i: int, j: int) -> Matrix:
        if i == j:
            return self._zero
        if i < j:
            return self.rho.get((i, j), self._zero)
        return -self.rho[(j, i)] if (j, i) in self.rho else self._zero

    def __call__(self, u, v) -> Matrix:
        """``rho(u, v)`` for arbitrary vectors, by bilinear expansion."""
        out = self._zero
        su = [(i, x) for i, x in enumerate(u) if x]
        sv = [(j, y) for j, y in enumerate(v) if y]
        if len(su) * len(sv) <= 2 * len(self.rho):
            # sparse arguments: expand over their supports
            for i, x in su:
                for j, y in sv:
                    if i != j:
                        M = self.basis(i, j)
                        if M is not self._zero:
                            out = out + M * (x * y)
            return out
        for (i, j), M in self.rho.items():
            c = u[i] * v[j] - u[j] * v[i]
            if c:
                out = out + M * c
        return out

    def action(self, u, v, a) -> tuple:
        """``rho(u, v) a`` without forming the matrix."""
        if not any(a):
            return zero_vector(self.dimV)
        out = [ZERO] * self.dimV
        su = [(i, x) for i, x in enumerate(u) if x]
        sv = [(j, y) for j, y in enumerate(v) if y]
        for i, x in su:
            for j, y in sv:
                if i == j:
                    continue
                M = self.rho.get((i, j) if i < j else (j, i))
                if M is None:
                    continue
                c = x * y if i < j else -(x * y)
                for l, t in enumerate(M @ a):
                    if t:
                        out[l] += c * t
        return tuple(out)

    def with_weight(self, lam) -> "Representation":
        return Representation(self.n, self.dimV, self.rho, self.dV, lam)

    def __eq__(self, other):
        return (isinstance(other, Representation) and self.n == other.n
                and self.dimV == other.dimV and self.rho == other.rho
                and self.dV == other.dV and self.lam == other.lam)

    def __repr__(self):
        return f"Representation(n={self.n}, dimV={self.dimV}, lam={self.lam}, pairs={sorted(self.rho)})"


class LeibnizAlgebra:
    """Bracket table on all ordered basis pairs, plus a differential and weight."""

    def __init__(self, m: int, bracketF: dict, dL: Matrix, lam=0):
        self.m = m
        self.bracketF = {k: vector(v) for k, v in bracketF.items()}
        self.dL = dL
        self.lam = scalar(lam)

    def basis(self, a: int, b: int) -> tuple:
        return self.bracketF.get((a, b), zero_vector(self.m))

    def __call__(self, X, Y) -> tuple:
        terms = []
        for a, x in enumerate(X):
            if x:
                for b, y in enumerate(Y):
                    if y:
                        terms.append((x * y, self.basis(a, b)))
        return lin_comb(terms, self.m)

    bracket = __call__


# -- checks ---------------------------------------------------------------

def check_fundamental_identity(A: ThreeLieAlgebra) -> Verdict:
    """[x1,x2,[y1,y2,y3]] = [[x1,x2,y1],y2,y3] + [y1,[x1,x2,y2],y3] + [y1,y2,[x1,x2,y3]]."""
    c = Collector("fundamental identity")
    n = A.n
    e = [unit_vector(n, i) for i in range(n)]
    for i, j in combinations(range(n), 2):
        D = A.ad(i, j)
        for k, l, m in combinations(range(n), 3):
            lhs = D @ A.basis(k, l, m)
            rhs = lin_comb([
                (ONE, A(D.column(k), e[l], e[m])),
                (ONE, A(e[k], D.column(l), e[m])),
                (ONE, A(e[k], e[l], D.column(m))),
            ], n)
            c.check("fundamental_identity", (i, j, k, l, m), vec_sub(lhs, rhs))
    return c.verdict()


def weighted_leibniz_defect(A, d_apply, lam, u, v, w):
    """``d[u,v,w]`` minus the seven weighted terms; works on any ring elements."""
    du, dv, dw = d_apply(u), d_apply(v), d_apply(w)
    lhs = d_apply(A(u, v, w))
    first = [A(du, v, w), A(u, dv, w), A(u, v, dw)]
    second = [A(du, dv, w), A(u, dv, dw), A(du, v, dw)]
    third = A(du, dv, dw)
    return tuple(
        lhs[l] - (first[0][l] + first[1][l] + first[2][l])
        - lam * (second[0][l] + second[1][l] + second[2][l])
        - lam * lam * third[l]
        for l in range(len(lhs)))


def check_weighted_differential(A: ThreeLieAlgebra, D: WeightedDifferential) -> Verdict:
    """d[x,y,z] against the weighted expansion, on every increasing basis triple."""
    c = Collector("weighted differential")
    n = A.n
    if D.n != n:
        raise ValueError(f"differential is {D.n}x{D.n} but algebra has dimension {n}")
    e = [unit_vector(n, i) for i in range(n)]
    for i, j, k in combinations(range(n), 3):
        c.check("weighted_differential", (i, j, k),
                weighted_leibniz_defect(A, D.d.apply, D.lam, e[i], e[j], e[k]))
    return c.verdict()


def check_differential_algebra(A: ThreeLieAlgebra, D: WeightedDifferential) -> Verdict:
    c = Collector("differential 3-Lie algebra")
    c.absorb(check_fundamental_identity(A))
    c.absorb(check_weighted_differential(A, D))
    return c.verdict()


def check_representation(A: ThreeLieAlgebra, D: WeightedDifferential, R: Representation) -> Verdict:
    """The two action identities on basis 4-tuples and the differential law on pairs."""
    c = Collector("representation")
    n = A.n
    if R.n != n:
        raise ValueError(f"representation is over dimension {R.n}, algebra has {n}")
    if R.lam != D.lam:
        raise PreconditionError(f"weight mismatch: representation {R.lam}, differential {D.lam}")
    e = [unit_vector(n, i) for i in range(n)]
    pairs = list(combinations(range(n), 2))
    for (i1, i2), (i3, i4) in product(pairs, pairs):
        lhs = R.basis(i1, i2) @ R.basis(i3, i4)
        b3 = A.basis(i1, i2, i3)
        b4 = A.basis(i1, i2, i4)
        rhs = R(b3, e[i4]) + R(e[i3], b4) + R.basis(i3, i4) @ R.basis(i1, i2)
        c.check("rep_bracket_action", (i1, i2, i3, i4), lhs - rhs)
    for i1 in range(n):
        for i2, i3, i4 in combinations(range(n), 3):
            lhs = R(e[i1], A.basis(i2, i3, i4))
            rhs = (R.basis(i3, i4) @ R.basis(i1, i2)
                   - R.basis(i2, i4) @ R.basis(i1, i3)
                   + R.basis(i2, i3) @ R.basis(i1, i4))
            c.check("rep_inner_bracket", (i1, i2, i3, i4), lhs - rhs)
    lam = D.lam
    for i, j in pairs:
        di, dj = D.d.column(i), D.d.column(j)
        corr = R(di, e[j]) + R(e[i], dj) + R(di, dj) * lam
        lhs = R.dV @ R.basis(i, j)
        rhs = corr + R.basis(i, j) @ R.dV + (corr * lam) @ R.dV
        c.check("rep_differential", (i, j), lhs - rhs)
    return c.verdict()


def adjoint_rep(A: ThreeLieAlgebra, D: WeightedDifferential) -> Representation:
    rho = {(i, j): A.ad(i, j) for i, j in combinations(range(A.n), 2)}
    return Representation(A.n, A.n, rho, D.d, D.lam)


def hat_rep(R: Representation, D: WeightedDifferential) -> Representation:
    """rho(x,y) + lam*(rho(dx,y) + rho(x,dy) + lam*rho(dx,dy)), same dV and weight."""
    lam = D.lam
    if lam == 0:
        return R
    n = R.n
    e = [unit_vector(n, i) for i in range(n)]
    rho = {}
    for i, j in combinations(range(n), 2):
        di, dj = D.d.column(i), D.d.column(j)
        rho[(i, j)] = R.basis(i, j) + (R(di, e[j]) + R(e[i], dj) + R(di, dj) * lam) * lam
    return Representation(n, R.dimV, rho, R.dV, R.lam)


def induced_leibniz(A: ThreeLieAlgebra, D: WeightedDifferential) -> LeibnizAlgebra:
    """Leibniz algebra on the exterior square with the induced bracket and differential."""
    W = WedgeIndex(A.n)
    n = A.n
    e = [unit_vector(n, i) for i in range(n)]
    table = {}
    for a, (x1, x2) in enumerate(W.pairs):
        ad = A.ad(x1, x2)
        for b, (y1, y2) in enumerate(W.pairs):
            v = vec_add(W.wedge(e[y1], ad.column(y2)), W.wedge(ad.column(y1), e[y2]))
            if any(v):
                table[(a, b)] = v
    return LeibnizAlgebra(W.dim, table, wedge_differential(D.d, D.lam, W), D.lam)


def wedge_differential(d: Matrix, lam, W: WedgeIndex) -> Matrix:
    """Matrix of ``x^y -> dx^y + x^dy + lam*dx^dy`` on the exterior square."""
    cols = []
    for i, j in W.pairs:
        di, dj = d.column(i), d.column(j)
        ei, ej = unit_vector(W.n, i), unit_vector(W.n, j)
        cols.append(lin_comb([(ONE, W.wedge(di, ej)), (ONE, W.wedge(ei, dj)),
                              (scalar(lam), W.wedge(di, dj))], W.dim))
    return Matrix.from_columns(cols, W.dim)


def check_leibniz(L: LeibnizAlgebra) -> Verdict:
    """Left Leibniz identity on basis triples and the weighted differential law on pairs."""
    c = Collector("differential Leibniz algebra")
    m = L.m
    E = [unit_vector(m, a) for a in range(m)]
    for a, b, g in product(range(m), repeat=3):
        lhs = L(E[a], L.basis(b, g))
        rhs = vec_add(L(L.basis(a, b), E[g]), L(E[b], L.basis(a, g)))
        c.check("leibniz_identity", (a, b, g), vec_sub(lhs, rhs))
    for a, b in product(range(m), repeat=2):
        da, db = L.dL.column(a), L.dL.column(b)
        lhs = L.dL @ L.basis(a, b)
        rhs = lin_comb([(ONE, L(da, E[b])), (ONE, L(E[a], db)), (L.lam, L(da, db))], m)
        c.check("leibniz_differential", (a, b), vec_sub(lhs, rhs))
    return c.verdict()


def matched_pair_assemble(A1: ThreeLieAlgebra, D1: WeightedDifferential,
                          A2: ThreeLieAlgebra, D2: WeightedDifferential,
                          rho: Representation, varrho: Representation, check: bool = True):
    """Bracket and differential on the direct sum of a matched pair.

    ``rho`` is an action of ``A1`` on the second space, ``varrho`` an action
    of ``A2`` on the first.  The result is certified by the two algebra
    checks; on failure a PreconditionError carrying the verdict is raised.
    """
    if D1.lam != D2.lam:
        raise PreconditionError(f"weight mismatch: {D1.lam} vs {D2.lam}")
    n1, n2 = A1.n, A2.n
    if check:
        check_representation(A1, D1, rho).require("action of the first algebra")
        check_representation(A2, D2, varrho).require("action of the second algebra")
    N = n1 + n2

    def split(u):
        return u[:n1], u[n1:]

    values = {}
    for t in combinations(range(N), 3):
        (x1, a1), (x2, a2), (x3, a3) = (split(unit_vector(N, s)) for s in t)
        g1 = lin_comb([(ONE, A1(x1, x2, x3)), (ONE, varrho.action(a1, a2, x3)),
                       (ONE, varrho.action(a3, a1, x2)), (ONE, varrho.action(a2, a3, x1))], n1)
        g2 = lin_comb([(ONE, A2(a1, a2, a3)), (ONE, rho.action(x1, x2, a3)),
                       (ONE, rho.action(x3, x1, a2)), (ONE, rho.action(x2, x3, a1))], n2)
        values[t] = g1 + g2
    A = ThreeLieAlgebra(N, values)
    d = block_diagonal(D1.d, D2.d)
    D = WeightedDifferential(d, D1.lam)
    if check:
        check_differential_algebra(A, D).require("assembled matched pair")
    return A, D


def block_diagonal(*blocks: Matrix) -> Matrix:
    N = sum(b.rows for b in blocks)
    M = sum(b.cols for b in blocks)
    entries = {}
    r0 = c0 = 0
    for b in blocks:
        for i, j, x in b.nonzero_entries():
            entries[(r0 + i, c0 + j)] = x
        r0 += b.rows
        c0 += b.cols
    return Matrix.from_dict(N, M, entries)


# -- symbolic constraint derivation ---------------------------------------

class ConstraintSystem:
    """Polynomial equations on the entries of an unknown differential."""

    def __init__(self, n, lam, symbols, equations):
        self.n = n
        self.lam = lam
        self.symbols = symbols          # symbols[i][j] is the (i, j) entry
        self.equations = equations      # list of (triple, component, expr)

    def polynomials(self):
        return [eq for _, _, eq in self.equations]

    def evaluate(self, d: Matrix) -> list:
        subs = {self.symbols[i][j]: d[i, j] for i in range(self.n) for j in range(self.n)}
        return [Fraction(str(eq.xreplace(subs))) for eq in self.polynomials()]

    def satisfied_by(self, d: Matrix) -> bool:
        return not any(self.evaluate(d))

    def __str__(self):
        return "\n".join(f"{eq} = 0" for eq in self.polynomials()) or "(no constraints)"


MAX_CONSTRAINT_DIM = 6


def derive_differential_constraints(A: ThreeLieAlgebra, lam) -> ConstraintSystem:
    """Expand the weighted differential law with an unknown matrix ``d``.

    Entry ``d[i][j]`` is named ``d{i+1}{j+1}`` (1-based, as matrices are
    usually written).  Each nonzero equation is returned as an expanded
    polynomial with a positive leading coefficient.
    """
    import sympy

    n = A.n
    if n > MAX_CONSTRAINT_DIM:
        raise PreconditionError(f"constraint derivation limited to dimension <= {MAX_CONSTRAINT_DIM}")
    lam = sympy.Rational(scalar(lam).numerator, scalar(lam).denominator)
    sep = "" if n < 10 else "_"
    syms = [[sympy.Symbol(f"d{i + 1}{sep}{j + 1}") for j in range(n)] for i in range(n)]
    flat = [s for r in syms for s in r]

    def d_apply(u):
        return tuple(sum((syms[i][j] * u[j] for j in range(n) if u[j] != 0), sympy.Integer(0))
                     for i in range(n))

    e = [tuple(sympy.Integer(1 if k == i else 0) for k in range(n)) for i in range(n)]
    equations = []
    for i, j, k in combinations(range(n), 3):
        defect = weighted_leibniz_defect(A, d_apply, lam, e[i], e[j], e[k])
        for l, expr in enumerate(defect):
            expr = sympy.expand(expr)
            if expr == 0:
                continue
            poly = sympy.Poly(expr, *flat)
            if poly.LC() < 0:
                expr = sympy.expand(-expr)
            equations.append(((i, j, k), l, expr))
    return ConstraintSystem(n, lam, syms, equations)
