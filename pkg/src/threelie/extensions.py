"""Abelian extensions of differential 3-Lie algebras.

An extension of ``(g, d)`` by an abelian ``(V, dV)`` is encoded by a
representation ``rho`` of ``g`` on ``V`` and a degree-2 pair cocycle
``(psi, chi)`` with ``psi`` alternating trilinear ``g -> V`` and ``chi``
linear ``g -> V``.  On ``g (+) V`` (basis: ``g`` first, then ``V``)::

    [x+a, y+b, z+c] = [x,y,z] + psi(x,y,z) + rho(x,y)c + rho(y,z)a + rho(z,x)b
    d(x+a)          = dx + dV a + chi(x)
"""

from __future__ import annotations

from itertools import combinations, product
from typing import Optional

from .algebra import (
    AlternatingTrilinear, Representation, ThreeLieAlgebra, WeightedDifferential,
    check_differential_algebra, check_fundamental_identity, check_representation,
    check_weighted_differential,
)
from .cohomology import CochainComplexes, degree2_pair_from_vector, degree2_pair_vector
from .exact import Matrix, rank, solve, unit_vector, vec_sub
from .verdict import Collector, PreconditionError, Verdict, combine


class ExtensionDatum:
    """Cocycle data ``(rho, psi, chi)`` over a differential 3-Lie algebra ``(A, D)``.

    With ``check`` (the default) the constructor certifies the base, the
    representation and the pair cocycle condition and raises
    PreconditionError otherwise.
    """

    def __init__(self, A: ThreeLieAlgebra, D: WeightedDifferential, R: Representation,
                 psi: AlternatingTrilinear, chi: Matrix, check: bool = True):
        n, V = A.n, R.dimV
        if (psi.n, psi.out_dim) != (n, V):
            raise ValueError(f"psi must map from dimension {n} to dimension {V}")
        if chi.shape != (V, n):
            raise ValueError(f"chi must be {V}x{n}")
        self.A, self.D, self.R = A, D, R
        self.psi, self.chi = psi, chi
        self._cx = None
        if check:
            self.cocycle_verdict().require("extension cocycle")

    @property
    def n(self) -> int:
        return self.A.n

    @property
    def dimV(self) -> int:
        return self.R.dimV

    @property
    def dV(self) -> Matrix:
        return self.R.dV

    def complexes(self) -> CochainComplexes:
        if self._cx is None:
            self._cx = CochainComplexes(self.A, self.D, self.R, max_degree=3)
        return self._cx

    def pair_vector(self) -> tuple:
        return degree2_pair_vector(self.complexes(), self.psi, self.chi)

    def cocycle_verdict(self) -> Verdict:
        col = Collector("extension cocycle")
        col.check("pair_cocycle", (2,), self.complexes().partial_D(2) @ self.pair_vector())
        return col.verdict()

    def same_data(self, other: "ExtensionDatum") -> bool:
        return (self.A == other.A and self.D == other.D and self.R == other.R
                and self.psi == other.psi and self.chi == other.chi)

    def __repr__(self):
        return (f"ExtensionDatum(n={self.n}, dimV={self.dimV}, lam={self.D.lam}, "
                f"psi={dict(self.psi.items())}, chi={self.chi!r})")


def _extension_bracket(A, R, psi):
    n, V = A.n, R.dimV
    N = n + V
    values = {}
    for t in combinations(range(N), 3):
        parts = [unit_vector(N, s) for s in t]
        (x, a), (y, b), (z, c) = ((u[:n], u[n:]) for u in parts)
        top = A(x, y, z)
        bottom = [sum(col) for col in zip(psi(x, y, z), R.action(x, y, c),
                                          R.action(y, z, a), R.action(z, x, b))]
        values[t] = top + tuple(bottom)
    return ThreeLieAlgebra(N, values)


def _extension_differential(D, dV, chi, n):
    V = dV.rows
    N = n + V
    entries = {}
    for i, j, x in D.d.nonzero_entries():
        entries[(i, j)] = x
    for i, j, x in chi.nonzero_entries():
        entries[(n + i, j)] = x
    for i, j, x in dV.nonzero_entries():
        entries[(n + i, n + j)] = x
    return WeightedDifferential(Matrix.from_dict(N, N, entries), D.lam)


def extension_from_cocycle(datum: ExtensionDatum, check: bool = True):
    """The algebra on ``g (+) V`` and its differential built from the cocycle data.

    With ``check`` the cocycle condition is required beforehand and the
    result is certified afterwards.  ``check=False`` builds the structure
    from arbitrary data, which is how non-cocycles are probed.
    """
    if check:
        datum.cocycle_verdict().require("extension cocycle")
    A_hat = _extension_bracket(datum.A, datum.R, datum.psi)
    D_hat = _extension_differential(datum.D, datum.dV, datum.chi, datum.n)
    if check:
        check_differential_algebra(A_hat, D_hat).require("extension")
    return A_hat, D_hat


def extension_verdict(datum: ExtensionDatum) -> Verdict:
    """Run both algebra verifiers on the unchecked extension built from ``datum``."""
    A_hat, D_hat = extension_from_cocycle(datum, check=False)
    return combine("extension", check_fundamental_identity(A_hat),
                   check_weighted_differential(A_hat, D_hat))


def canonical_maps(n: int, dimV: int):
    """``(embed, project, section)`` for ``g (+) V`` with ``g`` first."""
    N = n + dimV
    embed = Matrix.from_dict(N, dimV, {(n + v, v): 1 for v in range(dimV)})
    project = Matrix.from_dict(n, N, {(i, i): 1 for i in range(n)})
    section = Matrix.from_dict(N, n, {(i, i): 1 for i in range(n)})
    return embed, project, section


def _left_inverse_apply(embed: Matrix, w) -> tuple:
    x = solve(embed, w)
    if x is None:
        raise PreconditionError(f"vector {tuple(str(c) for c in w)} is not in the image of embed")
    return x


def extension_preconditions(A_hat: ThreeLieAlgebra, D_hat: WeightedDifferential,
                            embed: Matrix, project: Matrix, section: Matrix) -> Verdict:
    """Everything cocycle extraction needs, as one verdict.

    The maps must form a split short exact sequence of vector spaces, the
    image of ``embed`` must be an abelian ideal stable under the
    differential, and ``project`` must intertwine the differentials on the
    image of the section up to the kernel.
    """
    col = Collector("extension preconditions")
    N = A_hat.n
    V, n = embed.cols, project.rows
    if embed.rows != N or project.cols != N or section.shape != (N, n):
        col.fail("shapes", (("embed", embed.shape), ("project", project.shape),
                            ("section", section.shape), ("algebra", N)))
        return col.verdict()
    if rank(embed) != V:
        col.fail("embed_injective", (), rank(embed))
    if rank(project) != n:
        col.fail("project_surjective", (), rank(project))
    col.check("section_splits_project", (), project @ section - Matrix.identity(n))
    col.check("project_kills_embed", (), project @ embed)
    if n + V != N:
        col.fail("exactness_dimension", (), (n, V, N))
    col.check("differential_preserves_kernel", (), project @ D_hat.d @ embed)
    I = [embed.column(v) for v in range(V)]
    E = [unit_vector(N, i) for i in range(N)]
    for (u, w), k in product(combinations(range(V), 2), range(N)):
        col.check("abelian_kernel", (u, w, k), A_hat(I[u], I[w], E[k]))
    for u in range(V):
        for j, k in combinations(range(N), 2):
            col.check("kernel_is_ideal", (u, j, k), project @ A_hat(I[u], E[j], E[k]))
    return col.verdict()


def cocycle_from_extension(A_hat: ThreeLieAlgebra, D_hat: WeightedDifferential,
                           embed: Matrix, project: Matrix, section: Matrix,
                           check: bool = True) -> ExtensionDatum:
    """Read ``(rho, psi, chi)`` off an abelian extension through a section ``s``.

    ``rho(x,y)v = [sx, sy, v]``, ``psi(x,y,z) = [sx,sy,sz] - s[x,y,z]`` and
    ``chi(x) = d(sx) - s(dx)``, each pulled back to ``V`` along ``embed``.
    The base algebra is ``p[s., s., s.]`` with differential ``p d s``.
    """
    extension_preconditions(A_hat, D_hat, embed, project, section).require()
    n, V = project.rows, embed.cols
    lam = D_hat.lam
    S = [section.column(i) for i in range(n)]
    base = {}
    for t in combinations(range(n), 3):
        base[t] = project @ A_hat(*(S[i] for i in t))
    A = ThreeLieAlgebra(n, base)
    D = WeightedDifferential(project @ D_hat.d @ section, lam)
    back = lambda w: _left_inverse_apply(embed, w)
    dV = Matrix.from_columns([back(D_hat.d @ embed.column(v)) for v in range(V)], V)
    rho = {}
    for i, j in combinations(range(n), 2):
        cols = [back(A_hat(S[i], S[j], embed.column(v))) for v in range(V)]
        rho[(i, j)] = Matrix.from_columns(cols, V)
    R = Representation(n, V, rho, dV, lam)
    psi = {}
    for t in combinations(range(n), 3):
        psi[t] = back(vec_sub(A_hat(*(S[i] for i in t)), section @ A.basis(*t)))
    psi = AlternatingTrilinear(n, V, psi)
    chi = Matrix.from_columns(
        [back(vec_sub(D_hat.d @ S[i], section @ D.d.column(i))) for i in range(n)], V)
    if check:
        check_differential_algebra(A, D).require("base algebra")
        check_representation(A, D, R).require("extracted representation")
    return ExtensionDatum(A, D, R, psi, chi, check=check)


def _same_base(E1: ExtensionDatum, E2: ExtensionDatum):
    if E1.A != E2.A or E1.D != E2.D:
        raise PreconditionError("extensions have different bases")
    if E1.dimV != E2.dimV or E1.dV != E2.dV:
        raise PreconditionError("extensions have different fibers")
    if E1.R != E2.R:
        raise PreconditionError("extensions have different representations")


def equivalence_map(f: Matrix, n: int) -> Matrix:
    """``x + a -> x + f(x) + a`` on ``g (+) V``."""
    V = f.rows
    N = n + V
    entries = {(i, i): 1 for i in range(N)}
    for i, j, x in f.nonzero_entries():
        entries[(n + i, j)] = x
    return Matrix.from_dict(N, N, entries)


def verify_equivalence(E1: ExtensionDatum, E2: ExtensionDatum, phi: Matrix) -> Verdict:
    """Check ``phi`` directly: it fixes ``V``, covers the identity of ``g``
    and carries bracket and differential of the first extension to the second."""
    n, V = E1.n, E1.dimV
    N = n + V
    A1, D1 = extension_from_cocycle(E1, check=False)
    A2, D2 = extension_from_cocycle(E2, check=False)
    embed, project, _ = canonical_maps(n, V)
    col = Collector("extension equivalence")
    col.check("fixes_fiber", (), phi @ embed - embed)
    col.check("covers_base", (), project @ phi - project)
    cols = [phi.column(i) for i in range(N)]
    for t in combinations(range(N), 3):
        col.check("bracket_preserved", t, vec_sub(A2(*(cols[i] for i in t)), phi @ A1.basis(*t)))
    col.check("differential_preserved", (), phi @ D1.d - D2.d @ phi)
    return col.verdict()


def extensions_equivalent(E1: ExtensionDatum, E2: ExtensionDatum) -> Optional[Matrix]:
    """An equivalence ``phi = I + f`` from the first extension to the second, or None.

    ``f: g -> V`` is found by solving ``partial_D(f) = (psi1 - psi2, chi1 - chi2)``
    in degree 1; the resulting ``phi`` is then verified by direct substitution.
    """
    _same_base(E1, E2)
    cx = E1.complexes()
    diff = tuple(a - b for a, b in zip(E1.pair_vector(), E2.pair_vector()))
    x = solve(cx.partial_D(1), diff)
    if x is None:
        return None
    n, V = E1.n, E1.dimV
    f = Matrix.from_columns([x[c * V:(c + 1) * V] for c in range(n)], V)
    phi = equivalence_map(f, n)
    verify_equivalence(E1, E2, phi).require("equivalence witness")
    return phi


def shifted_by_coboundary(E: ExtensionDatum, f: Matrix) -> ExtensionDatum:
    """The datum with ``(psi, chi)`` replaced by ``(psi, chi) - partial_D(f)``.

    The result is equivalent to ``E`` through ``I + f``.
    """
    cx = E.complexes()
    fvec = []
    for c in range(E.n):
        fvec.extend(f.column(c))
    image = cx.partial_D(1) @ tuple(fvec)
    vec = tuple(a - b for a, b in zip(E.pair_vector(), image))
    psi, chi = degree2_pair_from_vector(cx, vec)
    return ExtensionDatum(E.A, E.D, E.R, psi, chi)


def zero_datum(A: ThreeLieAlgebra, D: WeightedDifferential, R: Representation) -> ExtensionDatum:
    return ExtensionDatum(A, D, R, AlternatingTrilinear.zero(A.n, R.dimV),
                          Matrix.zeros(R.dimV, A.n))
