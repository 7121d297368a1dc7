"""Text documents for algebras, representations, cochains and derived structures.

Documents are JSON objects with ``"format": 1`` and a ``"kind"``.  Scalars are
written as strings (``"3"``, ``"-2/5"``); bare integers are also accepted,
floating-point literals are not.  Matrices are lists of rows and act on
column vectors, so column ``j`` holds the image of basis vector ``j``.
Indices are 0-based.  ``docs/conventions.md`` has one worked example per kind.

The reader keeps the line and column of every value so that errors point
into the file.  ``json`` from the standard library cannot report positions
of individual values or detect duplicate keys, hence the small reader here;
string tokens are still decoded by ``json.loads``.
"""

from __future__ import annotations

import json
import re
from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations
from typing import Any, Optional

from .algebra import AlternatingTrilinear, Representation, ThreeLieAlgebra, WeightedDifferential
from .cohomology import CochainComplexes, CochainPair, CochainSpace
from .exact import Matrix, WedgeIndex
from .operators import DeformationData
from .twoterm import CrossedModule, L5Map, TwoTermAlgebra

FORMAT = 1
KINDS = ("algebra", "representation", "cochain", "operator", "deformation",
         "two-term", "crossed-module")


class InputError(ValueError):
    """A document that cannot be read; carries the position when known."""

    def __init__(self, message: str, line: Optional[int] = None, col: Optional[int] = None):
        self.message, self.line, self.col = message, line, col
        where = f"line {line}, column {col}: " if line is not None else ""
        super().__init__(where + message)


# -- reader ----------------------------------------------------------------------

@dataclass
class Node:
    value: Any
    line: int
    col: int

    def error(self, message: str) -> InputError:
        return InputError(message, self.line, self.col)


_NUMBER = re.compile(r"-?(0|[1-9][0-9]*)(\.[0-9]+)?([eE][+-]?[0-9]+)?")
_STRING = re.compile(r'"(?:[^"\\\x00-\x1f]|\\(?:["\\/bfnrt]|u[0-9a-fA-F]{4}))*"')
_WS = re.compile(r"[ \t\n\r]*")


class _Reader:
    def __init__(self, text: str):
        self.text = text
        self.pos = 0

    def where(self, pos=None):
        pos = self.pos if pos is None else pos
        line = self.text.count("\n", 0, pos) + 1
        return line, pos - (self.text.rfind("\n", 0, pos) + 1) + 1

    def fail(self, message, pos=None):
        return InputError(message, *self.where(pos))

    def skip(self):
        self.pos = _WS.match(self.text, self.pos).end()

    def expect(self, ch):
        self.skip()
        if not self.text.startswith(ch, self.pos):
            found = self.text[self.pos:self.pos + 1] or "end of input"
            raise self.fail(f"expected '{ch}', found {found!r}")
        self.pos += 1

    def document(self) -> Node:
        node = self.value()
        self.skip()
        if self.pos != len(self.text):
            raise self.fail("unexpected text after the document")
        return node

    def value(self) -> Node:
        self.skip()
        line, col = self.where()
        ch = self.text[self.pos:self.pos + 1]
        if ch == "{":
            return Node(self.obj(), line, col)
        if ch == "[":
            return Node(self.array(), line, col)
        if ch == '"':
            return Node(self.string(), line, col)
        for word, val in (("true", True), ("false", False), ("null", None)):
            if self.text.startswith(word, self.pos):
                self.pos += len(word)
                return Node(val, line, col)
        m = _NUMBER.match(self.text, self.pos)
        if m and m.end() > self.pos:
            self.pos = m.end()
            if m.group(2) or m.group(3):
                exact = Fraction(m.group(0))
                hint = f"; write {exact}" if exact.denominator != 1 else f"; write {exact.numerator}"
                raise InputError("floating-point literal forbidden" + hint, line, col)
            return Node(int(m.group(0)), line, col)
        raise self.fail("expected a value" if ch else "unexpected end of input")

    def string(self) -> str:
        m = _STRING.match(self.text, self.pos)
        if not m:
            raise self.fail("malformed string")
        self.pos = m.end()
        return json.loads(m.group(0))

    def obj(self) -> dict:
        self.pos += 1
        out = {}
        self.skip()
        if self.text.startswith("}", self.pos):
            self.pos += 1
            return out
        while True:
            self.skip()
            if not self.text.startswith('"', self.pos):
                raise self.fail("expected a string key")
            key_pos = self.pos
            key = self.string()
            if key in out:
                raise self.fail(f"duplicate key {key!r}", key_pos)
            self.expect(":")
            out[key] = self.value()
            self.skip()
            if self.text.startswith(",", self.pos):
                self.pos += 1
                continue
            self.expect("}")
            return out

    def array(self) -> list:
        self.pos += 1
        out = []
        self.skip()
        if self.text.startswith("]", self.pos):
            self.pos += 1
            return out
        while True:
            out.append(self.value())
            self.skip()
            if self.text.startswith(",", self.pos):
                self.pos += 1
                continue
            self.expect("]")
            return out


def read_tree(text: str) -> Node:
    """Parse JSON text into nodes that remember their positions."""
    return _Reader(text).document()


# -- field readers -------------------------------------------------------------

_SCALAR = re.compile(r"-?[0-9]+(/[0-9]+)?")


def _fields(node: Node, what: str, required, optional=()) -> dict:
    if not isinstance(node.value, dict):
        raise node.error(f"{what} must be an object")
    for key in required:
        if key not in node.value:
            raise node.error(f"{what} is missing field {key!r}")
    for key, val in node.value.items():
        if key not in required and key not in optional:
            raise val.error(f"unknown field {key!r} in {what}")
    return node.value


def _int(node: Node, what: str, lo=0, hi=None) -> int:
    if not isinstance(node.value, int) or isinstance(node.value, bool):
        raise node.error(f"{what} must be an integer")
    if node.value < lo or (hi is not None and node.value >= hi):
        bound = f"[{lo}, {hi})" if hi is not None else f">= {lo}"
        raise node.error(f"{what} = {node.value} is out of range {bound}")
    return node.value


def _scalar(node: Node, what: str) -> Fraction:
    v = node.value
    if isinstance(v, int) and not isinstance(v, bool):
        return Fraction(v)
    if isinstance(v, str):
        s = v.strip()
        if _SCALAR.fullmatch(s):
            num, _, den = s.partition("/")
            if den and int(den) == 0:
                raise node.error(f"{what}: denominator must be positive")
            return Fraction(int(num), int(den or 1))
        raise node.error(f"{what}: expected an integer or \"p/q\" string, got {v!r}")
    raise node.error(f"{what}: expected a scalar string such as \"1/2\"")


def _list(node: Node, what: str, length=None) -> list:
    if not isinstance(node.value, list):
        raise node.error(f"{what} must be a list")
    if length is not None and len(node.value) != length:
        raise node.error(f"{what} must have {length} entries, found {len(node.value)}")
    return node.value


def _matrix(node: Node, rows: int, cols: int, what: str) -> Matrix:
    data = []
    for i, row in enumerate(_list(node, what, rows)):
        r = _list(row, f"{what} row {i}", cols)
        data.append([_scalar(x, f"{what}[{i}][{j}]") for j, x in enumerate(r)])
    if rows == 0:
        return Matrix.zeros(0, cols)
    return Matrix.from_rows(data)


def _index_vector(node: Node, size: int, what: str) -> tuple:
    """``{"l": "p/q", ..}`` sparse vector."""
    if not isinstance(node.value, dict):
        raise node.error(f"{what} must be an object")
    fields = node.value
    out = [Fraction(0)] * size
    for key, val in fields.items():
        if not re.fullmatch(r"0|[1-9][0-9]*", key) or int(key) >= size:
            raise val.error(f"{what}: index {key!r} out of range [0, {size})")
        out[int(key)] = _scalar(val, f"{what}[{key}]")
    return tuple(out)


def _args(node: Node, n: int, length: int, what: str, groups) -> tuple:
    items = _list(node, what, length)
    args = tuple(_int(x, f"{what} entry", 0, n) for x in items)
    start = 0
    for size in groups:
        part = args[start:start + size]
        if any(a >= b for a, b in zip(part, part[1:])):
            label = {2: "pair", 3: "triple"}.get(size, "group")
            raise node.error(f"{label} must be strictly increasing: {list(part)}")
        start += size
    return args


def _entries(node: Node, n: int, out_dim: int, length: int, groups, what: str) -> dict:
    """``[{"args": [..], "value": {..}}, ..]`` into ``{args: vector}``."""
    out = {}
    for k, item in enumerate(_list(node, what)):
        f = _fields(item, f"{what} entry {k}", ("args", "value"))
        key = _args(f["args"], n, length, f"{what} entry {k} args", groups)
        if key in out:
            raise f["args"].error(f"duplicate args {list(key)} in {what}")
        out[key] = _index_vector(f["value"], out_dim, f"{what} entry {k} value")
    return out


def _bracket(node: Optional[Node], n: int, out_dim: int, what: str) -> AlternatingTrilinear:
    if node is None:
        return AlternatingTrilinear.zero(n, out_dim)
    return AlternatingTrilinear(n, out_dim, _entries(node, n, out_dim, 3, (3,), what))


def _rho(node: Optional[Node], n: int, dimV: int, what: str) -> dict:
    out = {}
    if node is None:
        return out
    for k, item in enumerate(_list(node, what)):
        f = _fields(item, f"{what} entry {k}", ("args", "matrix"))
        key = _args(f["args"], n, 2, f"{what} entry {k} args", (2,))
        if key in out:
            raise f["args"].error(f"duplicate args {list(key)} in {what}")
        out[key] = _matrix(f["matrix"], dimV, dimV, f"{what} {list(key)} matrix")
    return out


def _opt_matrix(fields, key, rows, cols):
    if key in fields:
        return _matrix(fields[key], rows, cols, key)
    return Matrix.zeros(rows, cols)


def _weight(fields):
    return _scalar(fields["weight"], "weight") if "weight" in fields else Fraction(0)


# -- payloads ---------------------------------------------------------------------

@dataclass(frozen=True)
class AlgebraDoc:
    algebra: ThreeLieAlgebra
    differential: WeightedDifferential


@dataclass(frozen=True)
class CochainDoc:
    """Coordinates of a pair ``(f, g)`` of degrees ``degree`` and ``degree - 1``."""

    degree: int
    dim: int
    dimV: int
    f: tuple
    g: tuple

    def to_pair(self, cx: CochainComplexes) -> CochainPair:
        return cx.pair(self.degree, self.f, self.g)

    @classmethod
    def from_pair(cls, c: CochainPair) -> "CochainDoc":
        s = c.f.space
        return cls(s.p, s.n, s.dimV, tuple(c.f.coords), tuple(c.g.coords))


@dataclass(frozen=True)
class OperatorDoc:
    matrix: Matrix
    role: str = "generic"


@dataclass(frozen=True)
class DeformationDoc:
    """Coefficients of ``t^1 .. t^k``; the ``t^0`` terms come from the algebra."""

    dim: int
    pis: tuple
    phis: tuple

    def data(self, A: ThreeLieAlgebra, D: WeightedDifferential) -> DeformationData:
        return DeformationData((A,) + self.pis, (D.d,) + self.phis, D.lam)


@dataclass(frozen=True)
class Document:
    kind: str
    payload: Any


_BASE_KEYS = ("format", "kind")
ROLES = ("generic", "nijenhuis", "o-operator", "section", "coboundary")


def _cochain_entries(node, space: CochainSpace, what):
    coords = [Fraction(0)] * space.dim
    if node is None:
        return tuple(coords)
    if space.p <= 0:
        if _list(node, what):
            raise node.error(f"{what} must be empty in degree {space.p}")
        return ()
    W = WedgeIndex(space.n)
    length = 2 * space.p - 1
    groups = (2,) * (space.p - 1) + (1,)
    for key, vec in _entries(node, space.n, space.dimV, length, groups, what).items():
        ls = [W.index(key[2 * t], key[2 * t + 1])[1] for t in range(space.p - 1)]
        for v, x in enumerate(vec):
            coords[space.index(ls, key[-1], v)] = x
    return tuple(coords)


def _payload(kind: str, root: Node):
    f = root.value

    def _check_keys(required, optional):
        _fields(root, f"{kind} document", _BASE_KEYS + tuple(required), tuple(optional))

    if kind == "algebra":
        _check_keys(("dim",), ("weight", "bracket", "differential"))
        n = _int(f["dim"], "dim")
        A = ThreeLieAlgebra.from_trilinear(_bracket(f.get("bracket"), n, n, "bracket"))
        return AlgebraDoc(A, WeightedDifferential(_opt_matrix(f, "differential", n, n), _weight(f)))
    if kind == "representation":
        _check_keys(("dim", "dimV"), ("weight", "rho", "dV"))
        n, m = _int(f["dim"], "dim"), _int(f["dimV"], "dimV")
        return Representation(n, m, _rho(f.get("rho"), n, m, "rho"), _opt_matrix(f, "dV", m, m),
                              _weight(f))
    if kind == "cochain":
        _check_keys(("dim", "dimV", "degree"), ("f", "g"))
        n, m = _int(f["dim"], "dim"), _int(f["dimV"], "dimV")
        p = _int(f["degree"], "degree", 1)
        fc = _cochain_entries(f.get("f"), CochainSpace(p, n, m), "f")
        gc = _cochain_entries(f.get("g"), CochainSpace(p - 1, n, m), "g")
        return CochainDoc(p, n, m, fc, gc)
    if kind == "operator":
        _check_keys(("rows", "cols", "matrix"), ("role",))
        r, c = _int(f["rows"], "rows"), _int(f["cols"], "cols")
        role = f["role"].value if "role" in f else "generic"
        if role not in ROLES:
            raise f["role"].error(f"role must be one of {', '.join(ROLES)}")
        return OperatorDoc(_matrix(f["matrix"], r, c, "matrix"), role)
    if kind == "deformation":
        _check_keys(("dim", "terms"), ())
        n = _int(f["dim"], "dim")
        pis, phis = [], []
        for k, item in enumerate(_list(f["terms"], "terms")):
            t = _fields(item, f"terms entry {k}", ("order",), ("bracket", "matrix"))
            order = _int(t["order"], "order", 1)
            if order != k + 1:
                raise t["order"].error(f"terms must list orders 1, 2, .. in turn; expected {k + 1}")
            pis.append(_bracket(t.get("bracket"), n, n, f"terms[{k}] bracket"))
            phis.append(_opt_matrix(t, "matrix", n, n))
        return DeformationDoc(n, tuple(pis), tuple(phis))
    if kind == "two-term":
        _check_keys(("dim0", "dim1"),
                    ("weight", "bracket", "rho", "h", "l5", "d0", "d1", "d2"))
        n0, n1 = _int(f["dim0"], "dim0"), _int(f["dim1"], "dim1")
        l5 = L5Map(n0, n1, {} if "l5" not in f else
                   {(k[:2], k[2:]): v for k, v in
                    _entries(f["l5"], n0, n1, 5, (2, 3), "l5").items()})
        return TwoTermAlgebra(n0, n1, _bracket(f.get("bracket"), n0, n0, "bracket"),
                              _rho(f.get("rho"), n0, n1, "rho"), _opt_matrix(f, "h", n0, n1), l5,
                              _opt_matrix(f, "d0", n0, n0), _opt_matrix(f, "d1", n1, n1),
                              _bracket(f.get("d2"), n0, n1, "d2"), _weight(f))
    if kind == "crossed-module":
        _check_keys(("dim0", "dim1"),
                    ("weight", "bracket0", "bracket1", "d0", "d1", "h", "rho"))
        n0, n1 = _int(f["dim0"], "dim0"), _int(f["dim1"], "dim1")
        lam = _weight(f)
        D1 = WeightedDifferential(_opt_matrix(f, "d1", n1, n1), lam)
        return CrossedModule(
            ThreeLieAlgebra.from_trilinear(_bracket(f.get("bracket0"), n0, n0, "bracket0")),
            WeightedDifferential(_opt_matrix(f, "d0", n0, n0), lam),
            ThreeLieAlgebra.from_trilinear(_bracket(f.get("bracket1"), n1, n1, "bracket1")),
            D1, _opt_matrix(f, "h", n0, n1), Representation(n0, n1, _rho(f.get("rho"), n0, n1, "rho"),
                                                            D1.d, lam))
    raise AssertionError(kind)


def parse(text: str) -> Document:
    """Read and validate a document; raises InputError with a position on failure."""
    root = read_tree(text)
    if not isinstance(root.value, dict):
        raise root.error("document must be an object")
    f = root.value
    for key in _BASE_KEYS:
        if key not in f:
            raise root.error(f"document is missing field {key!r}")
    if f["format"].value != FORMAT or isinstance(f["format"].value, bool):
        raise f["format"].error(f"unsupported format {f['format'].value!r}; expected {FORMAT}")
    kind = f["kind"].value
    if kind not in KINDS:
        raise f["kind"].error(f"unknown kind {kind!r}; expected one of {', '.join(KINDS)}")
    try:
        return Document(kind, _payload(kind, root))
    except InputError:
        raise
    except ValueError as exc:
        # shape errors raised by the structure constructors
        raise root.error(str(exc)) from exc


def load(path) -> Document:
    try:
        with open(path, encoding="utf-8") as fh:
            text = fh.read()
    except OSError as exc:
        raise InputError(f"cannot read {path}: {exc.strerror}") from exc
    except UnicodeDecodeError as exc:
        raise InputError(f"{path} is not UTF-8") from exc
    return parse(text)


# -- writer -------------------------------------------------------------------------

def scalar_text(x) -> str:
    return str(Fraction(x))


def _sparse(vec) -> dict:
    return {str(i): scalar_text(x) for i, x in enumerate(vec) if x}


def _matrix_out(M: Matrix) -> list:
    return [[scalar_text(x) for x in row] for row in M.to_rows()]


def _bracket_out(t: AlternatingTrilinear) -> list:
    return [{"args": list(k), "value": _sparse(v)} for k, v in sorted(t.values.items())]


def _rho_out(rho: dict) -> list:
    return [{"args": list(k), "matrix": _matrix_out(M)} for k, M in sorted(rho.items())]


def _cochain_out(space: CochainSpace, coords) -> list:
    if space.p <= 0:
        return []
    pairs = list(combinations(range(space.n), 2))
    out, current, key = [], None, None
    for pos, (ls, c, v) in enumerate(space.labels()):
        k = tuple(i for a in ls for i in pairs[a]) + (c,)
        if k != key:
            if current:
                out.append({"args": list(key), "value": current})
            key, current = k, {}
        if coords[pos]:
            current[str(v)] = scalar_text(coords[pos])
    if current:
        out.append({"args": list(key), "value": current})
    return out


def to_dict(doc: Document) -> dict:
    p, kind = doc.payload, doc.kind
    out = {"format": FORMAT, "kind": kind}
    if kind == "algebra":
        out.update(dim=p.algebra.n, weight=scalar_text(p.differential.lam),
                   bracket=_bracket_out(p.algebra), differential=_matrix_out(p.differential.d))
    elif kind == "representation":
        out.update(dim=p.n, dimV=p.dimV, weight=scalar_text(p.lam), rho=_rho_out(p.rho),
                   dV=_matrix_out(p.dV))
    elif kind == "cochain":
        out.update(dim=p.dim, dimV=p.dimV, degree=p.degree,
                   f=_cochain_out(CochainSpace(p.degree, p.dim, p.dimV), p.f),
                   g=_cochain_out(CochainSpace(p.degree - 1, p.dim, p.dimV), p.g))
    elif kind == "operator":
        out.update(rows=p.matrix.rows, cols=p.matrix.cols, role=p.role, matrix=_matrix_out(p.matrix))
    elif kind == "deformation":
        out.update(dim=p.dim, terms=[{"order": k + 1, "bracket": _bracket_out(pi),
                                      "matrix": _matrix_out(phi)}
                                     for k, (pi, phi) in enumerate(zip(p.pis, p.phis))])
    elif kind == "two-term":
        out.update(dim0=p.dim0, dim1=p.dim1, weight=scalar_text(p.lam),
                   bracket=_bracket_out(p.l3_00), rho=_rho_out(p.rho), h=_matrix_out(p.h),
                   l5=[{"args": list(a + b), "value": _sparse(v)} for (a, b), v in p.l5.items()],
                   d0=_matrix_out(p.d0), d1=_matrix_out(p.d1), d2=_bracket_out(p.d2))
    elif kind == "crossed-module":
        out.update(dim0=p.A0.n, dim1=p.A1.n, weight=scalar_text(p.lam),
                   bracket0=_bracket_out(p.A0), bracket1=_bracket_out(p.A1),
                   d0=_matrix_out(p.D0.d), d1=_matrix_out(p.D1.d), h=_matrix_out(p.h),
                   rho=_rho_out(p.R.rho))
    else:
        raise ValueError(f"unknown kind {kind!r}")
    return out


def _flat(x) -> bool:
    if isinstance(x, list):
        return all(not isinstance(y, (list, dict)) for y in x) or all(
            isinstance(y, list) and _flat(y) for y in x)
    if isinstance(x, dict):
        return all(not isinstance(y, (list, dict)) for y in x.values()) or (
            set(x) == {"args", "value"} and _flat(x["value"]))
    return True


def _dump(x, depth=0) -> str:
    """JSON text with short containers kept on one line."""
    if _flat(x):
        return json.dumps(x)
    pad, inner = "  " * depth, "  " * (depth + 1)
    if isinstance(x, list):
        body = ",\n".join(inner + _dump(y, depth + 1) for y in x)
        return "[\n" + body + "\n" + pad + "]"
    body = ",\n".join(f"{inner}{json.dumps(k)}: {_dump(v, depth + 1)}" for k, v in x.items())
    return "{\n" + body + "\n" + pad + "}"


def serialize(doc: Document) -> str:
    return _dump(to_dict(doc)) + "\n"


def save(doc: Document, path):
    with open(path, "w", encoding="utf-8") as fh:
        fh.write(serialize(doc))
