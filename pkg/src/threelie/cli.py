"""Command-line driver: ``threelie <command> FILE.. [flags]``.

Exit status is 0 when every check passes, 1 when a mathematical check fails
(the report lists the violations) and 2 when the input cannot be used
(unreadable files, schema errors, inconsistent dimensions, bad flags).

Documents are matched to a command by their ``kind``, so their order on the
command line only matters between documents of the same kind.
"""

from __future__ import annotations

import argparse
import json
import random
import sys
from dataclasses import dataclass, field
from fractions import Fraction

from . import oracles
from .algebra import (
    Representation, WeightedDifferential, adjoint_rep, check_differential_algebra,
    check_representation, derive_differential_constraints,
)
from .cohomology import (
    DEFAULT_MAX_DEGREE, CochainComplexes, cohomologous, cohomology_report, degree2_pair_from_vector,
    leibniz_bridge,
)
from .exact import Matrix, WedgeIndex
from .extensions import (
    ExtensionDatum, canonical_maps, cocycle_from_extension, extension_from_cocycle,
    extension_verdict, extensions_equivalent,
)
from .fileformat import (
    FORMAT, AlgebraDoc, CochainDoc, Document, InputError, OperatorDoc, load, scalar_text,
    to_dict,
)
from .operators import (
    bracket_K, deformation_check, deformed_bracket, infinitesimal_is_2cocycle, is_nijenhuis,
    is_o_operator, o_operator_cocycle_check, rho_K,
)
from .twoterm import (
    check_crossed_module, check_two_term, cocycle_to_skeletal, crossed_to_strict,
    skeletal_to_cocycle, strict_to_crossed,
)
from .verdict import Collector, DegreeGuardError, PreconditionError, Verdict

EXIT_PASS, EXIT_FAIL, EXIT_INPUT = 0, 1, 2


# -- reports -----------------------------------------------------------------------

def jsonable(x):
    """Fractions become strings, tuples become lists; everything else passes through."""
    if isinstance(x, Fraction):
        return scalar_text(x)
    if isinstance(x, bool) or x is None or isinstance(x, (int, str)):
        return x
    if isinstance(x, (list, tuple)):
        return [jsonable(y) for y in x]
    if isinstance(x, dict):
        return {str(k): jsonable(v) for k, v in x.items()}
    if isinstance(x, Matrix):
        return jsonable(x.to_rows())
    return str(x)


@dataclass
class Report:
    command: str
    violations: list = field(default_factory=list)
    computed: dict = field(default_factory=dict)
    notes: list = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return not self.violations

    def add(self, verdict: Verdict):
        for v in verdict.violations:
            self.violations.append({"check": verdict.name, "identity": v.identity,
                                    "args": jsonable(v.args), "defect": jsonable(v.defect)})
        self.notes.extend(verdict.notes)
        return verdict

    def fail(self, check: str, identity: str, args=(), defect=None):
        self.violations.append({"check": check, "identity": identity, "args": jsonable(args),
                                "defect": jsonable(defect)})

    def to_dict(self) -> dict:
        return {"format": FORMAT, "command": self.command,
                "verdict": "pass" if self.passed else "fail",
                "violations": self.violations, "computed": jsonable(self.computed),
                "notes": list(self.notes)}

    @classmethod
    def from_dict(cls, d: dict) -> "Report":
        return cls(d["command"], list(d["violations"]), dict(d["computed"]), list(d["notes"]))

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), sort_keys=True, indent=1) + "\n"

    def to_text(self) -> str:
        lines = [f"{self.command}: {'pass' if self.passed else 'FAIL'}"]
        for v in self.violations[:20]:
            lines.append(f"  {v['check']}: {v['identity']} at {tuple(v['args'])}: "
                         f"defect {v['defect']}")
        if len(self.violations) > 20:
            lines.append(f"  ... {len(self.violations) - 20} more violations")
        for key, val in self.computed.items():
            lines.append(f"  {key}: {_text(val)}")
        lines += [f"  note: {n}" for n in self.notes]
        return "\n".join(lines) + "\n"


def _text(val) -> str:
    if isinstance(val, list) and val and isinstance(val[0], dict) and "p" in val[0]:
        rows = ["p  dim_C  rank_d  dim_Z  dim_B  dim_H"]
        rows += ["{p:<2} {dim_C:<6} {rank_d:<7} {dim_Z:<6} {dim_B:<6} {dim_H}".format(**r)
                 for r in val]
        return "\n    " + "\n    ".join(rows)
    if isinstance(val, (Fraction, int, str)):
        return str(val)
    return json.dumps(jsonable(val), sort_keys=True)


# -- document selection --------------------------------------------------------------

class Inputs:
    """The loaded documents of one invocation, with flag overrides applied."""

    def __init__(self, paths, args):
        self.args = args
        self.docs = [load(p) for p in paths]
        self.paths = list(paths)

    def all(self, kind):
        return [d.payload for d in self.docs if d.kind == kind]

    def one(self, kind, required=True):
        found = self.all(kind)
        if len(found) > 1:
            raise InputError(f"expected one {kind} document, got {len(found)}")
        if not found:
            if required:
                raise InputError(f"this command needs a {kind} document")
            return None
        return found[0]

    def expect_kinds(self, allowed):
        for path, d in zip(self.paths, self.docs):
            if d.kind not in allowed:
                raise InputError(f"{path}: a {d.kind} document is not used by this command "
                                 f"(expected {', '.join(allowed)})")

    def weight(self, lam):
        return self.args.lam if self.args.lam is not None else lam

    def algebra(self):
        doc: AlgebraDoc = self.one("algebra")
        D = doc.differential
        return doc.algebra, WeightedDifferential(D.d, self.weight(D.lam))

    def representation(self, A, D) -> Representation:
        R = self.one("representation", required=False)
        if R is None:
            if self.args.rep == "trivial":
                return Representation.trivial(A.n, 1, None, D.lam)
            return adjoint_rep(A, D)
        if R.n != A.n:
            raise InputError(f"representation is over dimension {R.n}, algebra has {A.n}")
        if self.args.lam is None and R.lam != D.lam:
            raise InputError(f"representation weight {R.lam} differs from algebra weight {D.lam}")
        return R.with_weight(D.lam)

    def cochains(self, R: Representation, n: int):
        out = self.all("cochain")
        for c in out:
            if (c.dim, c.dimV) != (n, R.dimV):
                raise InputError(f"cochain is over dimensions ({c.dim}, {c.dimV}); expected "
                                 f"({n}, {R.dimV})")
        return out

    def operator(self, rows, cols, role=None) -> Matrix:
        op: OperatorDoc = self.one("operator")
        if op.matrix.shape != (rows, cols):
            raise InputError(f"operator must be {rows}x{cols}, got {op.matrix.rows}x{op.matrix.cols}")
        if role and op.role not in ("generic", role):
            raise InputError(f"operator has role {op.role!r}; expected {role!r}")
        return op.matrix


# dense matrices larger than this many entries are refused rather than attempted
MAX_MATRIX_ENTRIES = 10 ** 7


def _size_guard(A, R, max_degree):
    pairs = A.n * (A.n - 1) // 2
    top = pairs ** (max_degree - 1) * A.n * R.dimV
    below = pairs ** (max_degree - 2) * A.n * R.dimV if max_degree > 1 else R.dimV
    if top * below > MAX_MATRIX_ENTRIES:
        raise InputError(f"degree {max_degree} needs a {top}x{below} matrix; lower --max-degree")


def _complexes(inp, A, D, R, need=0):
    k = max(inp.args.max_degree or DEFAULT_MAX_DEGREE, need)
    _size_guard(A, R, k)
    return CochainComplexes(A, D, R, max_degree=k)


def _doc_dict(kind, payload):
    d = to_dict(Document(kind, payload))
    d.pop("format")
    return d


# -- oracle helpers ---------------------------------------------------------------------

def _rows_of(R):
    return lambda i, j: R.basis(i, j).to_rows()


def _oracle_pair_image(cx, pair):
    top, bottom = oracles.pair_coboundary(cx.A, _rows_of(cx.R), cx.D.d.to_rows(),
                                          cx.R.dV.to_rows(), cx.lam, pair.degree,
                                          pair.f.coords, pair.g.coords, cx.dimV)
    return tuple(top) + tuple(bottom)


def _oracle_algebra(report, A, D, verdict_ok):
    fast = verdict_ok
    slow = oracles.fundamental_identity_ok(A) and oracles.weighted_differential_ok(
        A, D.d.to_rows(), D.lam)
    report.computed["oracle"] = "agrees" if fast == slow else "disagrees"
    if fast != slow:
        report.fail("oracle", "oracle_disagreement", (), (fast, slow))


# -- commands ------------------------------------------------------------------------------

def cmd_verify(inp, report):
    inp.expect_kinds(("algebra", "representation"))
    A, D = inp.algebra()
    v = report.add(check_differential_algebra(A, D))
    report.computed.update(dim=A.n, weight=D.lam, checked=v.checked)
    if inp.one("representation", required=False) is not None or inp.args.rep:
        R = inp.representation(A, D)
        report.add(check_representation(A, D, R))
        report.computed["dimV"] = R.dimV
    if inp.args.seed is not None:
        report.computed["random_probes"] = _random_probes(report, A, D, inp.args.seed)
    if inp.args.oracle:
        _oracle_algebra(report, A, D, v.ok)


def _random_probes(report, A, D, seed, count=20):
    """Evaluate both laws on random rational vectors; multilinearity makes these redundant
    with the basis checks, so any failure points at an inconsistency in the evaluation."""
    rng = random.Random(seed)
    n = A.n
    lam = D.lam
    col = Collector("random probes")
    rand = lambda: tuple(Fraction(rng.randint(-4, 4), rng.randint(1, 3)) for _ in range(n))
    add = lambda *vs: tuple(sum(t, Fraction(0)) for t in zip(*vs))
    scale = lambda c, v: tuple(c * x for x in v)
    for k in range(count):
        x1, x2, y1, y2, y3 = (rand() for _ in range(5))
        lhs = A(x1, x2, A(y1, y2, y3))
        rhs = add(A(A(x1, x2, y1), y2, y3), A(y1, A(x1, x2, y2), y3), A(y1, y2, A(x1, x2, y3)))
        col.check("fundamental_identity", (k,), tuple(a - b for a, b in zip(lhs, rhs)))
        x, y, z = x1, x2, y1
        dx, dy, dz = D(x), D(y), D(z)
        rhs = add(A(dx, y, z), A(x, dy, z), A(x, y, dz),
                  scale(lam, add(A(dx, dy, z), A(x, dy, dz), A(dx, y, dz))),
                  scale(lam * lam, A(dx, dy, dz)))
        col.check("weighted_differential", (k,), tuple(a - b for a, b in zip(D(A(x, y, z)), rhs)))
    report.add(col.verdict())
    return count


def cmd_cohomology(inp, report):
    inp.expect_kinds(("algebra", "representation"))
    A, D = inp.algebra()
    R = inp.representation(A, D)
    k = inp.args.max_degree or 2
    _size_guard(A, R, max(k + 1, DEFAULT_MAX_DEGREE))
    cx = CochainComplexes(A, D, R, max_degree=max(k + 1, DEFAULT_MAX_DEGREE))
    rep = cohomology_report(complexes=cx, maxp=k)
    report.computed.update({"3-Lie": rep.lie.table(), "operator": rep.dlie.table(),
                            "pair": rep.pair.table(), "dimV": R.dimV})
    if inp.args.oracle:
        bad = []
        for which in ("partial", "partial_lambda", "partial_D"):
            for p in range(1, k + 1):
                M = getattr(cx, which)(p)
                if oracles.rank(M) != cx.rank_of(which, p):
                    bad.append((which, p))
        report.computed["oracle"] = "agrees" if not bad else "disagrees"
        for which, p in bad:
            report.fail("oracle", "rank_disagreement", (which, p))


def _labels(cx, p):
    """Human-readable coordinate labels of the degree-``p`` pair space."""
    W = WedgeIndex(cx.n)
    out = []
    for part, q in (("f", p), ("g", p - 1)):
        for ls, c, v in cx.space(q).labels():
            args = tuple(i for a in ls for i in W.pairs[a]) + (c,)
            out.append((part,) + args + (f"v{v}",))
    return out


def cmd_check_cocycle(inp, report):
    inp.expect_kinds(("algebra", "representation", "cochain"))
    A, D = inp.algebra()
    R = inp.representation(A, D)
    (c,) = _exactly(inp.cochains(R, A.n), 1, "cochain")
    if inp.args.degree is not None and inp.args.degree != c.degree:
        raise InputError(f"--degree {inp.args.degree} but the cochain has degree {c.degree}")
    p = c.degree
    cx = _complexes(inp, A, D, R, p + 1)
    pair = c.to_pair(cx)
    image = cx.partial_D(p) @ pair.vector()
    col = Collector("pair cocycle")
    for label, x in zip(_labels(cx, p + 1), image):
        col.check("pair_cocycle", label, x)
    v = report.add(col.verdict())
    report.computed.update(degree=p, nonzero_coordinates=len(v.violations))
    if inp.args.oracle:
        agrees = _oracle_pair_image(cx, pair) == tuple(image)
        report.computed["oracle"] = "agrees" if agrees else "disagrees"
        if not agrees:
            report.fail("oracle", "oracle_disagreement", (p,))


def _exactly(items, k, what):
    if len(items) != k:
        raise InputError(f"this command needs {k} {what} document(s), got {len(items)}")
    return items


def cmd_cohomologous(inp, report):
    inp.expect_kinds(("algebra", "representation", "cochain"))
    A, D = inp.algebra()
    R = inp.representation(A, D)
    c1, c2 = _exactly(inp.cochains(R, A.n), 2, "cochain")
    if c1.degree != c2.degree:
        raise InputError("the two cochains have different degrees")
    cx = _complexes(inp, A, D, R, c1.degree + 1)
    p1, p2 = c1.to_pair(cx), c2.to_pair(cx)
    for name, c in (("first", p1), ("second", p2)):
        if not cx.is_cocycle(c):
            report.fail("cohomologous", "not_a_cocycle", (name,))
    if report.violations:
        return
    w = cohomologous(p1, p2, cx)
    if w is None:
        report.fail("cohomologous", "classes_differ", (c1.degree,))
        return
    if w.degree == 0:
        report.computed["witness"] = None
    else:
        report.computed["witness"] = _doc_dict("cochain", CochainDoc.from_pair(w))


def cmd_deform_check(inp, report):
    inp.expect_kinds(("algebra", "deformation"))
    A, D = inp.algebra()
    doc = inp.one("deformation")
    if doc.dim != A.n:
        raise InputError(f"deformation is over dimension {doc.dim}, algebra has {A.n}")
    data = doc.data(A, D)
    report.add(deformation_check(A, D, data, max_degree=inp.args.max_degree))
    report.computed["order"] = data.order
    if data.order >= 1:
        first = infinitesimal_is_2cocycle(A, D, data.pis[1], data.phis[1])
        report.computed["first_order_is_2cocycle"] = first.ok


def cmd_nijenhuis(inp, report):
    inp.expect_kinds(("algebra", "operator"))
    A, D = inp.algebra()
    N = inp.operator(A.n, A.n, "nijenhuis")
    if report.add(is_nijenhuis(A, D, N)).ok:
        AN, DN = deformed_bracket(A, D, N)
        report.computed["deformed_algebra"] = _doc_dict("algebra", AlgebraDoc(AN, DN))


def cmd_o_operator(inp, report):
    inp.expect_kinds(("algebra", "representation", "operator"))
    A, D = inp.algebra()
    R = inp.representation(A, D)
    K = inp.operator(A.n, R.dimV, "o-operator")
    if report.add(is_o_operator(A, D, R, K)).ok:
        AK, DK = bracket_K(A, D, R, K)
        report.computed["bracket_K"] = _doc_dict("algebra", AlgebraDoc(AK, DK))
        report.computed["rho_K"] = _doc_dict("representation", rho_K(A, D, R, K))
        report.add(o_operator_cocycle_check(A, D, R, K))


def cmd_extend(inp, report):
    inp.expect_kinds(("algebra", "representation", "cochain"))
    A, D = inp.algebra()
    R = inp.representation(A, D)
    (c,) = _exactly(inp.cochains(R, A.n), 1, "cochain")
    if c.degree != 2:
        raise InputError(f"extension data is a degree-2 cochain, got degree {c.degree}")
    cx = CochainComplexes(A, D, R, max_degree=3)
    psi, chi = _degree2(cx, c)
    datum = ExtensionDatum(A, D, R, psi, chi, check=False)
    report.add(datum.cocycle_verdict())
    report.add(extension_verdict(datum))
    if report.passed:
        A_hat, D_hat = extension_from_cocycle(datum)
        report.computed["extension"] = _doc_dict("algebra", AlgebraDoc(A_hat, D_hat))


def _degree2(cx, c):
    try:
        return degree2_pair_from_vector(cx, c.to_pair(cx).vector())
    except PreconditionError as exc:
        raise InputError(f"extension cochain: {exc}") from exc


def cmd_extract_extension(inp, report):
    inp.expect_kinds(("algebra", "operator"))
    A_hat, D_hat = inp.algebra()
    n = inp.args.base_dim
    if n is None or not 0 < n <= A_hat.n:
        raise InputError("--base-dim must be between 1 and the algebra dimension")
    embed, project, section = canonical_maps(n, A_hat.n - n)
    if inp.one("operator", required=False) is not None:
        section = inp.operator(A_hat.n, n, "section")
    E = cocycle_from_extension(A_hat, D_hat, embed, project, section)
    report.computed["base"] = _doc_dict("algebra", AlgebraDoc(E.A, E.D))
    report.computed["representation"] = _doc_dict("representation", E.R)
    cx = E.complexes()
    report.computed["cocycle"] = _doc_dict("cochain",
                                           CochainDoc.from_pair(cx.split_pair(2, E.pair_vector())))


def cmd_equivalent_extensions(inp, report):
    inp.expect_kinds(("algebra", "representation", "cochain"))
    A, D = inp.algebra()
    R = inp.representation(A, D)
    c1, c2 = _exactly(inp.cochains(R, A.n), 2, "cochain")
    for c in (c1, c2):
        if c.degree != 2:
            raise InputError(f"extension data is a degree-2 cochain, got degree {c.degree}")
    cx = CochainComplexes(A, D, R, max_degree=3)
    E1, E2 = (ExtensionDatum(A, D, R, *_degree2(cx, c), check=False) for c in (c1, c2))
    for name, E in (("first", E1), ("second", E2)):
        v = E.cocycle_verdict()
        if not v.ok:
            report.fail("extension cocycle", "not_a_cocycle", (name,))
    if report.violations:
        return
    phi = extensions_equivalent(E1, E2)
    if phi is None:
        report.fail("extension equivalence", "not_equivalent", ())
    else:
        report.computed["equivalence"] = phi


def cmd_two_term_check(inp, report):
    inp.expect_kinds(("two-term",))
    T = inp.one("two-term")
    report.add(check_two_term(T))
    report.computed.update(skeletal=T.is_skeletal, strict=T.is_strict)


def cmd_skeletal_roundtrip(inp, report):
    inp.expect_kinds(("two-term",))
    T = inp.one("two-term")
    if not T.is_skeletal:
        raise InputError("skeletal-roundtrip needs h = 0")
    if not report.add(check_two_term(T)).ok:
        return
    A, D, R, cocycle = skeletal_to_cocycle(T)
    back = cocycle_to_skeletal(A, D, R, cocycle)
    if back != T:
        report.fail("skeletal round trip", "round_trip_differs", ())
    report.computed["cocycle"] = _doc_dict("cochain", CochainDoc.from_pair(cocycle))


def cmd_strict_roundtrip(inp, report):
    inp.expect_kinds(("two-term", "crossed-module"))
    if len(inp.docs) != 1:
        raise InputError("strict-roundtrip takes one two-term or crossed-module document")
    if inp.docs[0].kind == "two-term":
        T = inp.one("two-term")
        if not T.is_strict:
            raise InputError("strict-roundtrip needs l5 = 0 and d2 = 0")
        if not report.add(check_two_term(T)).ok:
            return
        M = strict_to_crossed(T)
        if crossed_to_strict(M) != T:
            report.fail("strict round trip", "round_trip_differs", ())
        report.computed["crossed_module"] = _doc_dict("crossed-module", M)
    else:
        M = inp.one("crossed-module")
        if not report.add(check_crossed_module(M)).ok:
            return
        T = crossed_to_strict(M)
        if strict_to_crossed(T) != M:
            report.fail("strict round trip", "round_trip_differs", ())
        report.computed["two_term"] = _doc_dict("two-term", T)


def cmd_constraints(inp, report):
    inp.expect_kinds(("algebra",))
    A, D = inp.algebra()
    system = derive_differential_constraints(A, D.lam)
    report.computed["constraints"] = [f"{eq} = 0" for eq in system.polynomials()]
    values = system.evaluate(D.d)
    for (triple, comp, eq), val in zip(system.equations, values):
        if val:
            report.fail("differential constraints", "constraint_violated", tuple(triple) + (comp,), val)
    if inp.args.oracle:
        fast = not any(values)
        slow = oracles.weighted_differential_ok(A, D.d.to_rows(), D.lam)
        report.computed["oracle"] = "agrees" if fast == slow else "disagrees"
        if fast != slow:
            report.fail("oracle", "oracle_disagreement", (), (fast, slow))


def cmd_leibniz_bridge(inp, report):
    inp.expect_kinds(("algebra", "representation"))
    A, D = inp.algebra()
    if D.lam != 0:
        raise InputError("leibniz-bridge is only defined at weight 0")
    R = inp.representation(A, D)
    k = inp.args.max_degree or 2
    _size_guard(A, R, max(k + 1, DEFAULT_MAX_DEGREE))
    _, _, bridge = leibniz_bridge(A, D, R, maxn=k)
    report.add(bridge.verdict)
    report.computed.update(pair_cohomology=bridge.dims_pair, leibniz_cohomology=bridge.dims_leibniz)


COMMANDS = {
    "verify": (cmd_verify, "check the algebra axioms (and a representation if given)"),
    "cohomology": (cmd_cohomology, "cohomology dimensions of the three complexes"),
    "check-cocycle": (cmd_check_cocycle, "is a cochain pair a cocycle; lists nonzero coordinates"),
    "cohomologous": (cmd_cohomologous, "do two cocycles differ by a coboundary"),
    "deform-check": (cmd_deform_check, "check a truncated deformation"),
    "nijenhuis": (cmd_nijenhuis, "check a Nijenhuis operator and build the deformed bracket"),
    "o-operator": (cmd_o_operator, "check an O-operator and build the induced structures"),
    "extend": (cmd_extend, "build the extension from a degree-2 cocycle"),
    "extract-extension": (cmd_extract_extension, "read the cocycle off an extension"),
    "equivalent-extensions": (cmd_equivalent_extensions, "decide equivalence of two extensions"),
    "two-term-check": (cmd_two_term_check, "check the two-term algebra identities"),
    "skeletal-roundtrip": (cmd_skeletal_roundtrip, "skeletal algebra to 3-cocycle and back"),
    "strict-roundtrip": (cmd_strict_roundtrip, "strict algebra and crossed module round trip"),
    "constraints": (cmd_constraints, "polynomial conditions on a weighted differential"),
    "leibniz-bridge": (cmd_leibniz_bridge, "compare with the Leibniz complex (weight 0)"),
}


# -- argument handling ---------------------------------------------------------------------------

class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise InputError(message)


def _fraction(text):
    try:
        x = Fraction(text)
    except (ValueError, ZeroDivisionError):
        raise argparse.ArgumentTypeError(f"not a rational number: {text!r}")
    if "." in text or "e" in text.lower():
        raise argparse.ArgumentTypeError("floating-point literal forbidden; write p/q")
    return x


def build_parser() -> argparse.ArgumentParser:
    common = _Parser(add_help=False)
    common.add_argument("files", nargs="+", help="input documents")
    common.add_argument("--json", action="store_true", help="print the report as JSON")
    common.add_argument("--lambda", dest="lam", type=_fraction, help="override the weight (p/q)")
    common.add_argument("--max-degree", type=int, help="cochain degree limit or truncation order")
    common.add_argument("--seed", type=int, help="run randomized probes with this seed")
    common.add_argument("--oracle", action="store_true", help="confirm with slow direct evaluation")
    common.add_argument("--rep", choices=("adjoint", "trivial"),
                        help="representation when no representation document is given")
    common.add_argument("--degree", type=int, help="expected cochain degree")
    common.add_argument("--base-dim", type=int, help="dimension of the base for extract-extension")
    parser = _Parser(prog="threelie", description="Exact checks for differential 3-Lie algebras.")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)
    for name, (_, help_text) in COMMANDS.items():
        sub.add_parser(name, parents=[common], help=help_text, description=help_text)
    return parser


def run(argv):
    """Returns ``(exit code, output text, error text)``; never exits the interpreter."""
    as_json = "--json" in argv
    try:
        try:
            args = build_parser().parse_args(argv)
        except SystemExit as exc:
            # --help printed its text
            return int(exc.code or 0), "", ""
        if args.max_degree is not None and args.max_degree < 1:
            raise InputError("--max-degree must be at least 1")
        inp = Inputs(args.files, args)
        report = Report(args.command)
        try:
            COMMANDS[args.command][0](inp, report)
        except PreconditionError as exc:
            if exc.verdict is not None and exc.verdict.violations:
                report.add(exc.verdict)
            else:
                report.fail("precondition", "precondition_failed", (), str(exc))
            report.notes.append(str(exc))
    except (InputError, DegreeGuardError) as exc:
        message = f"input error: {exc}"
        out = json.dumps({"format": FORMAT, "verdict": "error", "error": str(exc)},
                         sort_keys=True, indent=1) + "\n" if as_json else ""
        return EXIT_INPUT, out, message + "\n"
    text = report.to_json() if args.json else report.to_text()
    return (EXIT_PASS if report.passed else EXIT_FAIL), text, ""


def main(argv=None) -> int:
    argv = sys.argv[1:] if argv is None else argv
    code, out, err = run(argv or ["--help"])
    sys.stdout.write(out)
    sys.stderr.write(err)
    return code


if __name__ == "__main__":
    sys.exit(main())
