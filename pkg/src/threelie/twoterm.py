"""Differential 3-Lie 2-algebras, crossed modules and their correspondences.

A two-term algebra has degree-0 space ``g0`` and degree-1 space ``g1``.
The graded bracket ``l3`` has two nonzero pieces: the bracket on ``g0``
and the action ``l3(x, y, a) = rho(x, y) a`` of ``g0`` on ``g1``; with two
or more ``g1`` arguments it lands in degree 2 and is zero.  ``l5`` takes
five ``g0`` arguments, is alternating in the first two and in the last
three, and lands in ``g1``; it is stored on keys ``((i1, i2), (i3, i4, i5))``
with both groups strictly increasing.

Identity families checked by :func:`check_two_term` (defects are always
left side minus right side):

* ``h_equivariant``: ``h l3(x,y,a) = l3(x,y,h a)``
* ``h_symmetric``: ``l3(h a, b, x) = l3(a, h b, x)``
* ``fundamental_up_to_h``: ``h l5(x1..x5)`` equals the fundamental-identity defect of ``l3``
* ``action_first_slot`` / ``action_third_slot``: ``l5`` with ``h a`` in slot 1 or slot 3
* ``l5_coherence``: the seven-argument coherence of ``l5`` and ``l3``
* ``d_commutes_with_h``: ``d0 h = h d1``
* ``d_bracket_g0`` / ``d_bracket_g1``: weighted derivation laws corrected by ``d2``
* ``d_l5``: compatibility of ``d1``, ``d0`` and ``d2`` with ``l5``
"""

from __future__ import annotations

from functools import lru_cache
from itertools import combinations, product
from typing import Dict, Optional

from .algebra import (
    AlternatingTrilinear, Representation, ThreeLieAlgebra, WeightedDifferential,
    check_differential_algebra, check_representation,
)
from .cohomology import CochainComplexes, CochainPair, alternating_cocycles, insertion_sum
from .exact import (
    ZERO, Matrix, lin_comb, scalar, sort_with_sign, unit_vector,
    vec_add, vec_sub, vector, zero_vector,
)
from .verdict import Collector, PreconditionError, Verdict

G0, G1 = 0, 1


def _det2(u, v, i, j):
    return u[i] * v[j] - u[j] * v[i]


class L5Map:
    """Multilinear map ``(wedge^2 g0) x (wedge^3 g0) -> g1``."""

    def __init__(self, n: int, out_dim: int, values: Optional[dict] = None):
        self.n = n
        self.out_dim = out_dim
        vals = {}
        for key, v in (values or {}).items():
            pair, triple = tuple(key[0]), tuple(key[1])
            if len(pair) != 2 or not (0 <= pair[0] < pair[1] < n):
                raise ValueError(f"pair must be strictly increasing and in range: {pair}")
            if len(triple) != 3 or not (0 <= triple[0] < triple[1] < triple[2] < n):
                raise ValueError(f"triple must be strictly increasing and in range: {triple}")
            v = vector(v)
            if len(v) != out_dim:
                raise ValueError(f"value at {key} has length {len(v)}, expected {out_dim}")
            if any(v):
                vals[(pair, triple)] = v
        self.values: Dict[tuple, tuple] = vals

    def basis(self, i1, i2, i3, i4, i5) -> tuple:
        s1, pair = sort_with_sign((i1, i2))
        s2, triple = sort_with_sign((i3, i4, i5))
        v = self.values.get((pair, triple)) if s1 and s2 else None
        if v is None:
            return zero_vector(self.out_dim)
        return v if s1 * s2 > 0 else tuple(-x for x in v)

    def __call__(self, u1, u2, u3, u4, u5) -> tuple:
        out = [ZERO] * self.out_dim
        supports = [[(i, x) for i, x in enumerate(u) if x] for u in (u1, u2, u3, u4, u5)]
        size = 1
        for sup in supports:
            size *= len(sup)
        if size <= 4 * len(self.values):
            # sparse arguments: expand over their supports
            for terms in product(*supports):
                c = self.basis(*(i for i, _ in terms))
                if not any(c):
                    continue
                m = terms[0][1] * terms[1][1] * terms[2][1] * terms[3][1] * terms[4][1]
                for l, x in enumerate(c):
                    if x:
                        out[l] += m * x
            return tuple(out)
        triples = {}
        for (pair, triple), c in self.values.items():
            m1 = _det2(u1, u2, *pair)
            if not m1:
                continue
            if triple not in triples:
                i, j, k = triple
                triples[triple] = (u3[i] * _det2(u4, u5, j, k) - u3[j] * _det2(u4, u5, i, k)
                                   + u3[k] * _det2(u4, u5, i, j))
            m = m1 * triples[triple]
            if m:
                for l, x in enumerate(c):
                    if x:
                        out[l] += m * x
        return tuple(out)

    def is_zero(self) -> bool:
        return not self.values

    def items(self):
        return sorted(self.values.items())

    def __eq__(self, other):
        return (isinstance(other, L5Map) and (self.n, self.out_dim) == (other.n, other.out_dim)
                and self.values == other.values)

    def __repr__(self):
        return f"L5Map(n={self.n}, out_dim={self.out_dim}, {dict(self.items())})"


class TwoTermAlgebra:
    """``(g0, g1, h, l3, l5)`` with differentials ``(d0, d1, d2)`` and weight ``lam``.

    ``l3_00`` is the bracket on ``g0`` (an AlternatingTrilinear ``g0 -> g0``),
    ``rho`` maps pairs ``i < j`` to ``dim1 x dim1`` matrices, ``h`` is the
    ``dim0 x dim1`` matrix of ``h: g1 -> g0`` and ``d2`` is alternating
    trilinear ``g0 -> g1``.  Missing pieces default to zero.
    """

    def __init__(self, dim0: int, dim1: int, l3_00: AlternatingTrilinear,
                 rho: Optional[dict] = None, h: Optional[Matrix] = None,
                 l5: Optional[L5Map] = None, d0: Optional[Matrix] = None,
                 d1: Optional[Matrix] = None, d2: Optional[AlternatingTrilinear] = None,
                 lam=0):
        self.dim0, self.dim1 = dim0, dim1
        self.lam = scalar(lam)
        if (l3_00.n, l3_00.out_dim) != (dim0, dim0):
            raise ValueError("the g0 bracket must map g0 to g0")
        self.l3_00 = ThreeLieAlgebra(dim0, l3_00.values)
        self.h = h if h is not None else Matrix.zeros(dim0, dim1)
        self.d0 = d0 if d0 is not None else Matrix.zeros(dim0, dim0)
        self.d1 = d1 if d1 is not None else Matrix.zeros(dim1, dim1)
        self.l5 = l5 if l5 is not None else L5Map(dim0, dim1)
        self.d2 = d2 if d2 is not None else AlternatingTrilinear.zero(dim0, dim1)
        for name, M, shape in (("h", self.h, (dim0, dim1)), ("d0", self.d0, (dim0, dim0)),
                               ("d1", self.d1, (dim1, dim1))):
            if M.shape != shape:
                raise ValueError(f"{name} must be {shape[0]}x{shape[1]}, got {M.shape}")
        if (self.l5.n, self.l5.out_dim) != (dim0, dim1):
            raise ValueError("l5 must map g0 arguments to g1")
        if (self.d2.n, self.d2.out_dim) != (dim0, dim1):
            raise ValueError("d2 must map g0 arguments to g1")
        # the action is a representation-shaped table; d1 and lam are stored alongside
        self.action = Representation(dim0, dim1, rho or {}, self.d1, self.lam)

    @property
    def rho(self) -> dict:
        return dict(self.action.rho)

    @property
    def is_skeletal(self) -> bool:
        return self.h.is_zero()

    @property
    def is_strict(self) -> bool:
        return self.l5.is_zero() and self.d2.is_zero()

    def l3(self, a, b, c):
        """Graded bracket on homogeneous elements ``(degree, vector)``."""
        degs = [a[0], b[0], c[0]]
        total = sum(degs)
        if total == 0:
            return G0, self.l3_00(a[1], b[1], c[1])
        if total >= 2:
            return total, ()
        pos = degs.index(G1)
        x, y = [t[1] for t in (a, b, c) if t[0] == G0]
        v = self.action.action(x, y, (a, b, c)[pos][1])
        # moving the g1 argument to the last slot: +1 from slot 2 or 0, -1 from slot 1
        return G1, v if pos != 1 else tuple(-t for t in v)

    def __eq__(self, other):
        return (isinstance(other, TwoTermAlgebra)
                and (self.dim0, self.dim1, self.lam) == (other.dim0, other.dim1, other.lam)
                and self.l3_00 == other.l3_00 and self.action.rho == other.action.rho
                and self.h == other.h and self.l5 == other.l5 and self.d0 == other.d0
                and self.d1 == other.d1 and self.d2 == other.d2)

    def __repr__(self):
        return (f"TwoTermAlgebra(dim0={self.dim0}, dim1={self.dim1}, lam={self.lam}, "
                f"skeletal={self.is_skeletal}, strict={self.is_strict})")


def check_two_term(T: TwoTermAlgebra) -> Verdict:
    """All identity families on basis tuples; see the module docstring."""
    col = Collector("differential 3-Lie 2-algebra")
    n0, n1 = T.dim0, T.dim1
    lam = T.lam
    h, d0, d1 = T.h, T.d0, T.d1
    x = [(G0, unit_vector(n0, i)) for i in range(n0)]
    a_ = [(G1, unit_vector(n1, i)) for i in range(n1)]
    l3 = T.l3
    l5 = T.l5
    B = T.l3_00
    rho = T.action

    def H(a):
        return (G0, h @ a[1])

    def br(u, v, w):
        return l3(u, v, w)[1]

    sub = vec_sub
    for i, j in combinations(range(n0), 2):
        for p in range(n1):
            col.check("h_equivariant", (i, j, p),
                      sub(h @ br(x[i], x[j], a_[p]), br(x[i], x[j], H(a_[p]))))
    for p in range(n1):
        for q in range(p, n1):
            for i in range(n0):
                col.check("h_symmetric", (p, q, i),
                          sub(br(H(a_[p]), a_[q], x[i]), br(a_[p], H(a_[q]), x[i])))

    def fi_defect(u1, u2, u3, u4, u5):
        """``-[u1,u2,[u3,u4,u5]] + [u3,[u1,u2,u4],u5] + [[u1,u2,u3],u4,u5] + [u3,u4,[u1,u2,u5]]``."""
        terms = [(-1, l3(u1, u2, l3(u3, u4, u5))), (1, l3(u3, l3(u1, u2, u4), u5)),
                 (1, l3(l3(u1, u2, u3), u4, u5)), (1, l3(u3, u4, l3(u1, u2, u5)))]
        return lin_comb([(c, t[1]) for c, t in terms], len(terms[0][1][1]))

    for i1, i2 in combinations(range(n0), 2):
        for t in combinations(range(n0), 3):
            args = (x[i1], x[i2]) + tuple(x[s] for s in t)
            col.check("fundamental_up_to_h", (i1, i2) + t,
                      sub(h @ l5.basis(i1, i2, *t), fi_defect(*args)))
    for p in range(n1):
        ha = h @ a_[p][1]
        for i2 in range(n0):
            for t in combinations(range(n0), 3):
                lhs = l5(ha, x[i2][1], *(x[s][1] for s in t))
                rhs = fi_defect(a_[p], x[i2], *(x[s] for s in t))
                col.check("action_first_slot", (p, i2) + t, sub(lhs, rhs))
    for i1, i2 in combinations(range(n0), 2):
        for p in range(n1):
            ha = h @ a_[p][1]
            for i4, i5 in combinations(range(n0), 2):
                lhs = l5(x[i1][1], x[i2][1], ha, x[i4][1], x[i5][1])
                rhs = fi_defect(x[i1], x[i2], a_[p], x[i4], x[i5])
                col.check("action_third_slot", (i1, i2, p, i4, i5), sub(lhs, rhs))

    pairs = list(combinations(range(n0), 2))
    e = [xi[1] for xi in x]
    # every term of the coherence identity is linear in l5
    cached = _CachedL5(l5)
    for (i1, i2), (i3, i4), (i5, i6) in product(pairs, repeat=3):
        for i7 in range(n0):
            idx = (i1, i2, i3, i4, i5, i6, i7)
            col.check("l5_coherence", idx,
                      _l5_coherence_defect(B, rho, cached, idx) if not l5.is_zero() else 0)

    col.check("d_commutes_with_h", (), d0 @ h - h @ d1)
    for t in combinations(range(n0), 3):
        u = [e[s] for s in t]
        du = [d0 @ v for v in u]
        lhs = vec_add(h @ T.d2(*u), d0 @ B(*u))
        col.check("d_bracket_g0", t, sub(lhs, _weighted_rhs(B, u, du, lam)))
    for i1, i2 in pairs:
        for p in range(n1):
            av = a_[p][1]
            u1, u2 = e[i1], e[i2]
            du1, du2, da = d0 @ u1, d0 @ u2, d1 @ av
            lhs = vec_add(T.d2(u1, u2, h @ av), d1 @ rho.action(u1, u2, av))
            R = rho.action
            rhs = lin_comb([(1, R(du1, u2, av)), (1, R(u1, du2, av)), (1, R(u1, u2, da)),
                            (lam, R(du1, du2, av)), (lam, R(u1, du2, da)), (lam, R(du1, u2, da)),
                            (lam * lam, R(du1, du2, da))], n1)
            col.check("d_bracket_g1", (i1, i2, p), sub(lhs, rhs))
    for i1, i2 in pairs:
        for t in combinations(range(n0), 3):
            idx = (i1, i2) + t
            col.check("d_l5", idx, _d_l5_defect(T, e, idx))
    return col.verdict()


def _weighted_rhs(B, u, du, lam):
    """Right side of the weight-``lam`` derivation law for a trilinear ``B``."""
    x, y, z = u
    dx, dy, dz = du
    return lin_comb([(1, B(dx, y, z)), (1, B(x, dy, z)), (1, B(x, y, dz)),
                     (lam, B(dx, dy, z)), (lam, B(x, dy, dz)), (lam, B(dx, y, dz)),
                     (lam * lam, B(dx, dy, dz))], B.out_dim)


class _CachedL5:
    """``l5`` restricted to basis arguments, with each lookup computed once."""

    def __init__(self, l5: L5Map):
        self.out_dim = l5.out_dim
        self.basis = lru_cache(maxsize=None)(l5.basis)


def _l5_slot(l5, idx, pos, w):
    """``l5`` on basis indices ``idx`` with the vector ``w`` in slot ``pos``."""
    out = [ZERO] * l5.out_dim
    args = list(idx)
    for k, c in enumerate(w):
        if not c:
            continue
        args[pos] = k
        for l, x in enumerate(l5.basis(*args)):
            if x:
                out[l] += c * x
    return out


def _l5_coherence_defect(B, rho, l5, idx):
    """Seven-argument coherence of ``l5`` on basis indices.

    One right-hand term is ``l5(x3, x4, x5, [x1, x2, x6], x7)``, the slot-4
    companion of the slot-5 term; see docs/conventions.md.  Every argument
    is a basis vector, so ``l5`` with a bracket in one slot is a short sum
    over the support of that bracket.
    """
    i1, i2, i3, i4, i5, i6, i7 = idx
    act = lambda i, j, v: rho.basis(i, j) @ v
    L = l5.basis
    lhs = [
        act(i6, i7, L(i1, i2, i3, i4, i5)),        # l3(l5(...), x6, x7)
        act(i7, i5, L(i1, i2, i3, i4, i6)),        # l3(x5, l5(...), x7)
        act(i1, i2, L(i3, i4, i5, i6, i7)),
        act(i5, i6, L(i1, i2, i3, i4, i7)),
        _l5_slot(l5, (i1, i2, 0, i6, i7), 2, B.basis(i3, i4, i5)),
        _l5_slot(l5, (i1, i2, i5, 0, i7), 3, B.basis(i3, i4, i6)),
        _l5_slot(l5, (i1, i2, i5, i6, 0), 4, B.basis(i3, i4, i7)),
    ]
    rhs = [
        act(i3, i4, L(i1, i2, i5, i6, i7)),
        _l5_slot(l5, (0, i4, i5, i6, i7), 0, B.basis(i1, i2, i3)),
        _l5_slot(l5, (i3, 0, i5, i6, i7), 1, B.basis(i1, i2, i4)),
        _l5_slot(l5, (i3, i4, 0, i6, i7), 2, B.basis(i1, i2, i5)),
        _l5_slot(l5, (i3, i4, i5, 0, i7), 3, B.basis(i1, i2, i6)),
        _l5_slot(l5, (i1, i2, i3, i4, 0), 4, B.basis(i5, i6, i7)),
        _l5_slot(l5, (i3, i4, i5, i6, 0), 4, B.basis(i1, i2, i7)),
    ]
    dim = l5.out_dim
    return lin_comb([(1, v) for v in lhs] + [(-1, v) for v in rhs], dim)


def _d_l5_defect(T: TwoTermAlgebra, e, idx):
    x1, x2, x3, x4, x5 = (e[i] for i in idx)
    lam = T.lam
    B, d2, act = T.l3_00, T.d2, T.action.action
    dim = T.dim1
    d0 = lambda v: T.d0 @ v
    if T.l5.is_zero():
        lhs = zero_vector(dim)
    else:
        ins = insertion_sum(T.l5, (x1, x2, x3, x4, x5), d0, lam)
        lhs = vec_sub(T.d1 @ T.l5(x1, x2, x3, x4, x5), ins)

    def hat_act(u, v, a):
        du, dv = d0(u), d0(v)
        return lin_comb([(1, act(u, v, a)), (lam, act(du, v, a)), (lam, act(u, dv, a)),
                         (lam * lam, act(du, dv, a))], dim)

    rhs = lin_comb([
        (1, d2(x3, B(x1, x2, x4), x5)),
        (1, d2(B(x1, x2, x3), x4, x5)),
        (1, d2(x3, x4, B(x1, x2, x5))),
        (-1, d2(x1, x2, B(x3, x4, x5))),
        (-1, hat_act(x1, x2, d2(x3, x4, x5))),
        (1, hat_act(x5, x3, d2(x1, x2, x4))),
        (1, hat_act(x4, x5, d2(x1, x2, x3))),
        (1, hat_act(x3, x4, d2(x1, x2, x5))),
    ], dim)
    return vec_sub(lhs, rhs)


# -- skeletal algebras and 3-cocycles ------------------------------------------

def skeletal_from_data(A: ThreeLieAlgebra, D: WeightedDifferential, R: Representation,
                       l5: L5Map, d2: AlternatingTrilinear) -> TwoTermAlgebra:
    return TwoTermAlgebra(A.n, R.dimV, A, R.rho, Matrix.zeros(A.n, R.dimV), l5, D.d, R.dV, d2, D.lam)


def _pair_vector_of(cx: CochainComplexes, l5: L5Map, d2: AlternatingTrilinear) -> tuple:
    W = cx.W
    S3, S2 = cx.space(3), cx.space(2)
    f = [ZERO] * S3.dim
    for a1, (i1, i2) in enumerate(W.pairs):
        for a2, (i3, i4) in enumerate(W.pairs):
            for i5 in range(cx.n):
                base = S3.index((a1, a2), i5, 0)
                for v, val in enumerate(l5.basis(i1, i2, i3, i4, i5)):
                    f[base + v] = val
    g = [ZERO] * S2.dim
    for a, (i1, i2) in enumerate(W.pairs):
        for i3 in range(cx.n):
            base = S2.index((a,), i3, 0)
            for v, val in enumerate(d2.basis(i1, i2, i3)):
                g[base + v] = val
    return tuple(f) + tuple(g)


def skeletal_to_cocycle(T: TwoTermAlgebra, check: bool = True):
    """``(A, D, R, cocycle)`` read off a skeletal algebra.

    The degree-3 pair has ``l5`` as its 3-Lie part and ``d2`` as its
    operator part.  With ``check`` the algebra, the representation and the
    cocycle condition are all certified.
    """
    if not T.is_skeletal:
        raise PreconditionError("skeletal algebras have h = 0")
    if check:
        check_two_term(T).require("two-term algebra")
    A = ThreeLieAlgebra(T.dim0, T.l3_00.values)
    D = WeightedDifferential(T.d0, T.lam)
    R = Representation(T.dim0, T.dim1, T.action.rho, T.d1, T.lam)
    if check:
        check_differential_algebra(A, D).require("degree-0 algebra")
        check_representation(A, D, R).require("degree-1 representation")
    cx = CochainComplexes(A, D, R, max_degree=3, check=False)
    pair = cx.split_pair(3, _pair_vector_of(cx, T.l5, T.d2))
    if check and not cx.is_cocycle(pair):
        raise PreconditionError("(l5, d2) is not a 3-cocycle")
    return A, D, R, pair


def cocycle_to_skeletal(A: ThreeLieAlgebra, D: WeightedDifferential, R: Representation,
                        cocycle: CochainPair, check: bool = True) -> TwoTermAlgebra:
    """The skeletal algebra with ``l5`` and ``d2`` given by a degree-3 pair cocycle.

    Both parts must be alternating in their last three arguments, which is
    the shape ``l5`` and ``d2`` have.
    """
    if cocycle.degree != 3:
        raise PreconditionError(f"expected a degree-3 pair, got degree {cocycle.degree}")
    cx = CochainComplexes(A, D, R, max_degree=3, check=check)
    if check and not cx.is_cocycle(cocycle):
        raise PreconditionError("not a 3-cocycle")
    f, g = cocycle.f.coords, cocycle.g.coords
    W = cx.W
    S3, S2 = cx.space(3), cx.space(2)
    l5 = {}
    for a1, pair in enumerate(W.pairs):
        for i3, i4, i5 in combinations(range(cx.n), 3):
            base = S3.index((a1, W.index(i3, i4)[1]), i5, 0)
            l5[(pair, (i3, i4, i5))] = f[base:base + cx.dimV]
    d2 = {}
    for i1, i2, i3 in combinations(range(cx.n), 3):
        base = S2.index((W.index(i1, i2)[1],), i3, 0)
        d2[(i1, i2, i3)] = g[base:base + cx.dimV]
    l5 = L5Map(cx.n, cx.dimV, l5)
    d2 = AlternatingTrilinear(cx.n, cx.dimV, d2)
    if _pair_vector_of(cx, l5, d2) != cocycle.vector():
        raise PreconditionError("cocycle is not alternating in its last three arguments")
    T = skeletal_from_data(A, D, R, l5, d2)
    if check:
        check_two_term(T).require("skeletal algebra from cocycle")
    return T


def alternating_3cocycles(A, D, R) -> list:
    """Basis of degree-3 pair cocycles that come from skeletal algebras."""
    cx = CochainComplexes(A, D, R, max_degree=3)
    return [cx.split_pair(3, v) for v in alternating_cocycles(cx, 3)]


# -- crossed modules -------------------------------------------------------------

class CrossedModule:
    """``h: (g1, d1) -> (g0, d0)`` with an action ``rho`` of ``g0`` on ``g1``.

    ``R.dV`` must be ``D1.d``; the weight is shared.
    """

    def __init__(self, A0: ThreeLieAlgebra, D0: WeightedDifferential,
                 A1: ThreeLieAlgebra, D1: WeightedDifferential, h: Matrix,
                 R: Representation):
        if h.shape != (A0.n, A1.n):
            raise ValueError(f"h must be {A0.n}x{A1.n}")
        if R.n != A0.n or R.dimV != A1.n:
            raise ValueError("action has the wrong dimensions")
        self.A0, self.D0, self.A1, self.D1, self.h, self.R = A0, D0, A1, D1, h, R

    @property
    def lam(self):
        return self.D0.lam

    def __eq__(self, other):
        return (isinstance(other, CrossedModule)
                and (self.A0, self.D0, self.A1, self.D1, self.h, self.R)
                == (other.A0, other.D0, other.A1, other.D1, other.h, other.R))

    def __repr__(self):
        return f"CrossedModule(dim0={self.A0.n}, dim1={self.A1.n}, lam={self.lam})"


def check_crossed_module(M: CrossedModule) -> Verdict:
    col = Collector("crossed module")
    if len({M.D0.lam, M.D1.lam, M.R.lam}) != 1:
        col.fail("weights_agree", (), (M.D0.lam, M.D1.lam, M.R.lam))
        return col.verdict()
    col.check("action_differential_is_d1", (), M.R.dV - M.D1.d)
    col.absorb(check_differential_algebra(M.A0, M.D0))
    col.absorb(check_differential_algebra(M.A1, M.D1))
    col.absorb(check_representation(M.A0, M.D0, M.R))
    n0, n1 = M.A0.n, M.A1.n
    h = M.h
    e = [unit_vector(n0, i) for i in range(n0)]
    a = [unit_vector(n1, i) for i in range(n1)]
    H = [h.column(p) for p in range(n1)]
    for i, j in combinations(range(n0), 2):
        for p in range(n1):
            col.check("h_equivariant", (i, j, p),
                      vec_sub(h @ M.R.action(e[i], e[j], a[p]), M.A0(e[i], e[j], H[p])))
    for p, q in combinations(range(n1), 2):
        for r in range(n1):
            col.check("action_through_h", (p, q, r),
                      vec_sub(M.R.action(H[p], H[q], a[r]), M.A1.basis(p, q, r)))
    for i in range(n0):
        for p in range(n1):
            for q in range(p, n1):
                col.check("action_skew", (i, p, q),
                          vec_add(M.R.action(e[i], H[p], a[q]), M.R.action(e[i], H[q], a[p])))
    for t in combinations(range(n1), 3):
        col.check("h_homomorphism", t, vec_sub(h @ M.A1.basis(*t), M.A0(*(H[s] for s in t))))
    col.check("h_differential", (), M.D0.d @ h - h @ M.D1.d)
    return col.verdict()


def crossed_to_strict(M: CrossedModule, check: bool = True) -> TwoTermAlgebra:
    if check:
        check_crossed_module(M).require("crossed module")
    T = TwoTermAlgebra(M.A0.n, M.A1.n, M.A0, M.R.rho, M.h, None, M.D0.d, M.D1.d, None, M.lam)
    if check:
        check_two_term(T).require("strict algebra from crossed module")
    return T


def strict_to_crossed(T: TwoTermAlgebra, check: bool = True) -> CrossedModule:
    """The crossed module of a strict algebra.

    The ``g1`` bracket is ``l3(h a, h b, c)``; the other two expressions
    ``l3(h a, b, h c)`` and ``l3(a, h b, h c)`` are required to agree with it
    on every basis triple.
    """
    if not T.is_strict:
        raise PreconditionError("strict algebras have l5 = 0 and d2 = 0")
    if check:
        check_two_term(T).require("two-term algebra")
    n1 = T.dim1
    a = [(G1, unit_vector(n1, p)) for p in range(n1)]
    H = lambda u: (G0, T.h @ u[1])
    col = Collector("g1 bracket")
    values = {}
    for t in combinations(range(n1), 3):
        p, q, r = (a[s] for s in t)
        first = T.l3(H(p), H(q), r)[1]
        col.check("bracket_expressions_agree", t + (1,), vec_sub(T.l3(H(p), q, H(r))[1], first))
        col.check("bracket_expressions_agree", t + (2,), vec_sub(T.l3(p, H(q), H(r))[1], first))
        values[t] = first
    col.verdict().require("g1 bracket")
    A0 = ThreeLieAlgebra(T.dim0, T.l3_00.values)
    A1 = ThreeLieAlgebra(n1, values)
    R = Representation(T.dim0, n1, T.action.rho, T.d1, T.lam)
    M = CrossedModule(A0, WeightedDifferential(T.d0, T.lam), A1,
                      WeightedDifferential(T.d1, T.lam), T.h, R)
    if check:
        check_crossed_module(M).require("crossed module from strict algebra")
    return M
