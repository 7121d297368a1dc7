"""Deformations, Nijenhuis operators and O-operators.

A deformation is given by polynomials ``pi_t = sum t^i pi_i`` and
``phi_t = sum t^i phi_i`` with ``pi_0`` the bracket and ``phi_0`` the
differential.  Checks expand the two defining identities (fundamental
identity and weighted differential law) after substituting ``pi_t`` and
``phi_t``, and require every coefficient of ``t`` to vanish.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations
from typing import Optional

from .algebra import (
    AlternatingTrilinear, Representation, ThreeLieAlgebra, WeightedDifferential,
    adjoint_rep, check_differential_algebra, check_representation, hat_rep,
)
from .cohomology import CochainComplexes, degree2_pair_from_vector, degree2_pair_vector
from .exact import ZERO, Matrix, rank, unit_vector, vec_sub, zero_vector
from .verdict import Collector, PreconditionError, Verdict


@dataclass(frozen=True)
class DeformationData:
    """``pis[i]`` and ``phis[i]`` are the coefficients of ``t**i``."""

    pis: tuple
    phis: tuple
    lam: object = 0

    def __post_init__(self):
        object.__setattr__(self, "pis", tuple(self.pis))
        object.__setattr__(self, "phis", tuple(self.phis))
        if not self.pis or not self.phis:
            raise ValueError("a deformation needs at least the t^0 coefficients")

    @property
    def order(self) -> int:
        return max(len(self.pis), len(self.phis)) - 1

    @classmethod
    def first_order(cls, A, D, pi1, phi1) -> "DeformationData":
        return cls((A, pi1), (D.d, phi1), D.lam)

    def pi(self, i):
        return self.pis[i] if i < len(self.pis) else None

    def phi(self, i):
        return self.phis[i] if i < len(self.phis) else None


# -- polynomial (in t) vectors ------------------------------------------

def _padd(P, Q):
    n = max(len(P), len(Q))
    dim = len((P or Q)[0])
    z = zero_vector(dim)
    return [tuple(a + b for a, b in zip(P[k] if k < len(P) else z, Q[k] if k < len(Q) else z))
            for k in range(n)]


def _pscale(c, P):
    return [tuple(c * a for a in v) for v in P]


def _pmap(phis, P):
    """``phi_t`` applied to a polynomial vector."""
    out = []
    for i, M in enumerate(phis):
        for k, v in enumerate(P):
            w = M @ v
            while len(out) <= i + k:
                out.append(zero_vector(M.rows))
            out[i + k] = tuple(a + b for a, b in zip(out[i + k], w))
    return out


def _pbracket(pis, P, Q, R):
    """``pi_t(P, Q, R)`` for polynomial vectors."""
    dim = pis[0].out_dim
    out = []
    for i, pi in enumerate(pis):
        for a, u in enumerate(P):
            if not any(u):
                continue
            for b, v in enumerate(Q):
                if not any(v):
                    continue
                for c, w in enumerate(R):
                    if not any(w):
                        continue
                    val = pi(u, v, w)
                    deg = i + a + b + c
                    while len(out) <= deg:
                        out.append(zero_vector(dim))
                    out[deg] = tuple(x + y for x, y in zip(out[deg], val))
    return out or [zero_vector(dim)]


def _const(v):
    return [tuple(v)]


def _check_coefficients(col, identity, args, P, max_degree):
    for k, v in enumerate(P):
        if max_degree is not None and k > max_degree:
            break
        col.check(identity, (f"t^{k}",) + tuple(args), v)


def deformation_check(A: ThreeLieAlgebra, D: WeightedDifferential, data: DeformationData,
                      max_degree: Optional[int] = None) -> Verdict:
    """Every ``t``-coefficient of both generating identities must vanish.

    ``max_degree`` limits the check to coefficients of ``t**k`` with
    ``k <= max_degree``; by default all reachable coefficients are checked.
    """
    if data.pis[0] != A or data.phis[0] != D.d:
        raise PreconditionError("the t^0 coefficients must be the bracket and the differential")
    col = Collector("deformation")
    n = A.n
    lam = D.lam
    pis, phis = data.pis, data.phis
    e = [_const(unit_vector(n, i)) for i in range(n)]
    for i, j in combinations(range(n), 2):
        for k, l, m in combinations(range(n), 3):
            lhs = _pbracket(pis, e[i], e[j], _pbracket(pis, e[k], e[l], e[m]))
            rhs = _pbracket(pis, _pbracket(pis, e[i], e[j], e[k]), e[l], e[m])
            rhs = _padd(rhs, _pbracket(pis, e[k], _pbracket(pis, e[i], e[j], e[l]), e[m]))
            rhs = _padd(rhs, _pbracket(pis, e[k], e[l], _pbracket(pis, e[i], e[j], e[m])))
            _check_coefficients(col, "deformed_fundamental_identity", (i, j, k, l, m),
                                _padd(lhs, _pscale(-1, rhs)), max_degree)
    for i, j, k in combinations(range(n), 3):
        x, y, z = e[i], e[j], e[k]
        dx, dy, dz = _pmap(phis, x), _pmap(phis, y), _pmap(phis, z)
        lhs = _pmap(phis, _pbracket(pis, x, y, z))
        rhs = _padd(_padd(_pbracket(pis, dx, y, z), _pbracket(pis, x, dy, z)), _pbracket(pis, x, y, dz))
        second = _padd(_padd(_pbracket(pis, dx, dy, z), _pbracket(pis, x, dy, dz)),
                       _pbracket(pis, dx, y, dz))
        rhs = _padd(rhs, _pscale(lam, second))
        rhs = _padd(rhs, _pscale(lam * lam, _pbracket(pis, dx, dy, dz)))
        _check_coefficients(col, "deformed_weighted_differential", (i, j, k),
                            _padd(lhs, _pscale(-1, rhs)), max_degree)
    return col.verdict()


def deformation_pair_vector(cx: CochainComplexes, pi1: AlternatingTrilinear, phi1: Matrix) -> tuple:
    """Coordinates of ``(pi1, phi1)`` in the degree-2 pair space with adjoint coefficients."""
    return degree2_pair_vector(cx, pi1, phi1)


def deformation_from_pair_vector(cx: CochainComplexes, vec) -> tuple:
    """Inverse of :func:`deformation_pair_vector`; the 3-Lie part must be alternating."""
    return degree2_pair_from_vector(cx, vec)


def infinitesimal_is_2cocycle(A, D, pi1: AlternatingTrilinear, phi1: Matrix,
                              complexes: CochainComplexes = None, cross_check: bool = True) -> Verdict:
    """``partial_D(pi1, phi1) = 0`` for the adjoint representation.

    With ``cross_check`` the first-order deformation check is run too and
    any disagreement is reported as a violation.
    """
    cx = complexes or CochainComplexes(A, D, adjoint_rep(A, D), 3)
    vec = deformation_pair_vector(cx, pi1, phi1)
    image = cx.partial_D(2) @ vec
    col = Collector("infinitesimal deformation cocycle")
    col.check("pair_cocycle", (2,), image)
    if cross_check:
        first = deformation_check(A, D, DeformationData.first_order(A, D, pi1, phi1), max_degree=1)
        if first.ok != (not any(image)):
            col.fail("first_order_cross_check", (), (first.ok, not any(image)))
    return col.verdict()


def nijenhuis_first_order(A: ThreeLieAlgebra, D: WeightedDifferential, N: Matrix) -> DeformationData:
    """First-order data generated by ``K_t = I + tN``.

    ``pi_1(x,y,z) = [Nx,y,z] + [x,Ny,z] + [x,y,Nz] - N[x,y,z]`` and
    ``phi_1 = dN - Nd`` (zero when ``N`` commutes with ``d``).
    """
    n = A.n
    values = {}
    for i, j, k in combinations(range(n), 3):
        ei, ej, ek = (unit_vector(n, s) for s in (i, j, k))
        v = [ZERO] * n
        for term in (A(N @ ei, ej, ek), A(ei, N @ ej, ek), A(ei, ej, N @ ek)):
            v = [a + b for a, b in zip(v, term)]
        v = vec_sub(v, N @ A.basis(i, j, k))
        values[(i, j, k)] = v
    pi1 = AlternatingTrilinear(n, n, values)
    return DeformationData((A, pi1), (D.d, D.d @ N - N @ D.d), D.lam)


def is_trivial_deformation(A, D, data: DeformationData, N: Matrix,
                           max_degree: Optional[int] = None) -> Verdict:
    """``K_t = I + tN`` commutes with ``d`` and carries ``pi_t`` to the original bracket.

    The bracket identity ``K_t pi_t(x,y,z) = [K_t x, K_t y, K_t z]`` is
    compared coefficient by coefficient (up to ``max_degree`` if given).
    """
    if data.order != 1:
        raise PreconditionError("triviality is defined for first-order data")
    col = Collector("trivial deformation")
    col.check("commutes_with_differential", (), N @ D.d - D.d @ N)
    n = A.n
    K = [Matrix.identity(n), N]
    for i, j, k in combinations(range(n), 3):
        x, y, z = (_const(unit_vector(n, s)) for s in (i, j, k))
        lhs = _pmap(K, _pbracket(data.pis, x, y, z))
        rhs = _pbracket([A], _pmap(K, x), _pmap(K, y), _pmap(K, z))
        _check_coefficients(col, "trivializing_map", (i, j, k), _padd(lhs, _pscale(-1, rhs)),
                            max_degree)
    return col.verdict()


# -- Nijenhuis operators --------------------------------------------------

def is_nijenhuis(A: ThreeLieAlgebra, D: WeightedDifferential, N: Matrix) -> Verdict:
    col = Collector("Nijenhuis operator")
    col.check("commutes_with_differential", (), N @ D.d - D.d @ N)
    n = A.n
    N2 = N @ N
    N3 = N2 @ N
    for i, j, k in combinations(range(n), 3):
        x, y, z = (unit_vector(n, s) for s in (i, j, k))
        Nx, Ny, Nz = N @ x, N @ y, N @ z
        lhs = A(Nx, Ny, Nz)
        two = _vsum(A(Nx, Ny, z), A(x, Ny, Nz), A(Nx, y, Nz))
        one = _vsum(A(Nx, y, z), A(x, Ny, z), A(x, y, Nz))
        rhs = _vsum(N @ two, tuple(-a for a in N2 @ one), N3 @ A(x, y, z))
        col.check("nijenhuis_identity", (i, j, k), vec_sub(lhs, rhs))
    return col.verdict()


def _vsum(*vs):
    return tuple(sum(t, ZERO) for t in zip(*vs))


def deformed_bracket(A, D, N: Matrix, check: bool = True):
    """``[x,y,z]_N`` with the same differential; certified by the algebra checks."""
    if check:
        is_nijenhuis(A, D, N).require("Nijenhuis operator")
    n = A.n
    N2 = N @ N
    values = {}
    for i, j, k in combinations(range(n), 3):
        x, y, z = (unit_vector(n, s) for s in (i, j, k))
        Nx, Ny, Nz = N @ x, N @ y, N @ z
        two = _vsum(A(Nx, Ny, z), A(x, Ny, Nz), A(Nx, y, Nz))
        one = _vsum(A(Nx, y, z), A(x, Ny, z), A(x, y, Nz))
        values[(i, j, k)] = _vsum(two, tuple(-a for a in N @ one), N2 @ A(x, y, z))
    AN = ThreeLieAlgebra(n, values)
    if check:
        check_differential_algebra(AN, D).require("deformed bracket")
    return AN, D


# -- O-operators ---------------------------------------------------------

def is_o_operator(A, D, R: Representation, K: Matrix) -> Verdict:
    """Operator identity on increasing basis triples of V plus ``K dV = d K``."""
    if K.shape != (A.n, R.dimV):
        raise PreconditionError(f"K must be {A.n}x{R.dimV} (V -> g)")
    col = Collector("O-operator")
    m = R.dimV
    Kc = [K.column(u) for u in range(m)]
    for u, v, w in combinations(range(m), 3):
        lhs = A(Kc[u], Kc[v], Kc[w])
        s = _vsum(R(Kc[u], Kc[v]) @ unit_vector(m, w), R(Kc[v], Kc[w]) @ unit_vector(m, u),
                  R(Kc[w], Kc[u]) @ unit_vector(m, v))
        col.check("o_operator_identity", (u, v, w), vec_sub(lhs, K @ s))
    col.check("o_operator_differential", (), K @ R.dV - D.d @ K)
    return col.verdict()


def bracket_K(A, D, R, K: Matrix, check: bool = True):
    """The induced bracket on V (with differential dV), certified by the algebra checks."""
    if check:
        is_o_operator(A, D, R, K).require("O-operator")
    m = R.dimV
    Kc = [K.column(u) for u in range(m)]
    values = {}
    for u, v, w in combinations(range(m), 3):
        values[(u, v, w)] = _vsum(R(Kc[u], Kc[v]) @ unit_vector(m, w),
                                  R(Kc[v], Kc[w]) @ unit_vector(m, u),
                                  R(Kc[w], Kc[u]) @ unit_vector(m, v))
    AK = ThreeLieAlgebra(m, values)
    DK = WeightedDifferential(R.dV, D.lam)
    if check:
        check_differential_algebra(AK, DK).require("induced bracket on V")
    return AK, DK


def rho_K(A, D, R, K: Matrix, check: bool = True) -> Representation:
    """Action of the induced algebra on g: ``x -> [Ku,Kv,x] - K(rho(Kv,x)u + rho(x,Ku)v)``."""
    if check:
        is_o_operator(A, D, R, K).require("O-operator")
    n, m = A.n, R.dimV
    Kc = [K.column(u) for u in range(m)]
    rho = {}
    for u, v in combinations(range(m), 2):
        cols = []
        for c in range(n):
            x = unit_vector(n, c)
            corr = _vsum(R(Kc[v], x) @ unit_vector(m, u), R(x, Kc[u]) @ unit_vector(m, v))
            cols.append(vec_sub(A(Kc[u], Kc[v], x), K @ corr))
        rho[(u, v)] = Matrix.from_columns(cols, n)
    out = Representation(m, n, rho, D.d, D.lam)
    if check:
        AK, DK = bracket_K(A, D, R, K, check=False)
        check_representation(AK, DK, out).require("induced action on g")
    return out


def o_operator_cocycle_check(A, D, R, K: Matrix, check: bool = True) -> Verdict:
    """``K`` as a degree-1 cochain of the induced algebra on V with values in g is a cocycle."""
    if check:
        is_o_operator(A, D, R, K).require("O-operator")
    AK, DK = bracket_K(A, D, R, K, check=check)
    RK = rho_K(A, D, R, K, check=check)
    cx = CochainComplexes(AK, DK, RK, 1, check=check)
    vec = []
    for c in range(R.dimV):
        vec.extend(K.column(c))
    col = Collector("O-operator 1-cocycle")
    col.check("o_operator_cocycle", (1,), cx.partial_D(1) @ tuple(vec))
    return col.verdict()


@dataclass(frozen=True)
class HatKResult:
    verdict: Verdict
    with_hat_rep: Verdict        # K against the corrected action
    with_hat_K: Verdict          # K + lam*d*K against the original action
    phi_invertible: bool

    @property
    def agree(self) -> bool:
        return self.with_hat_rep.ok == self.with_hat_K.ok


def hat_K_equivalence(A, D, R, K: Matrix) -> HatKResult:
    """Compare ``K`` for ``hat_rep(R)`` with ``K + lam*d*K`` for ``R``.

    Because ``hat_rho(Ku, Kv) = rho(Phi Ku, Phi Kv)`` with ``Phi = I + lam*d``
    an algebra endomorphism, the defects of the second check are ``Phi``
    applied to the defects of the first.  So the first passing always forces
    the second to pass, and when ``Phi`` is invertible the two verdicts
    agree with the same failing locations.  When ``Phi`` is singular the
    converse can fail; the result reports which case applies, and the
    verdict fails only if a guaranteed relation is broken.
    """
    lam = D.lam
    Rh = hat_rep(R, D)
    Khat = K + (D.d @ K) * lam
    v1 = is_o_operator(A, D, Rh, K)
    v2 = is_o_operator(A, D, R, Khat)
    phi = D.phi
    invertible = rank(phi) == phi.rows
    col = Collector("hat K comparison")
    if v1.ok and not v2.ok:
        col.fail("hat_implication", (), None)
    if invertible:
        s1 = {(x.identity, x.args) for x in v1.violations}
        s2 = {(x.identity, x.args) for x in v2.violations}
        col.check("hat_equivalence", (), 0 if s1 == s2 else (len(s1), len(s2)))
    else:
        col.note("I + lam*d is singular: only the one-way implication is guaranteed")
    return HatKResult(col.verdict(), v1, v2, invertible)
