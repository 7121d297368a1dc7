"""Verdicts with located defects, and the package's error types."""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Any, Iterable

from .exact import Matrix


class PreconditionError(ValueError):
    """An input does not satisfy what an operation requires."""

    def __init__(self, message: str, verdict: "Verdict | None" = None):
        super().__init__(message)
        self.verdict = verdict


class DegreeGuardError(ValueError):
    """A cochain degree beyond the configured limit was requested."""


def _freeze(defect):
    if isinstance(defect, Matrix):
        return tuple(tuple(r) for r in defect.to_rows())
    if isinstance(defect, (list, tuple)):
        return tuple(_freeze(x) for x in defect)
    return defect


@dataclass(frozen=True)
class Violation:
    """One failing instance of an identity.

    ``identity`` names the identity, ``args`` locates it (basis indices, and
    for polynomial identities the power of the formal parameter), ``defect``
    is the nonzero left-minus-right value (vector or matrix rows).
    """

    identity: str
    args: tuple
    defect: Any = None

    def __post_init__(self):
        object.__setattr__(self, "args", tuple(self.args))
        object.__setattr__(self, "defect", _freeze(self.defect))

    def describe(self) -> str:
        return f"{self.identity} at {self.args}: defect {_fmt(self.defect)}"


def _fmt(x):
    if isinstance(x, tuple):
        return "(" + ", ".join(_fmt(y) for y in x) + ")"
    if isinstance(x, Fraction):
        return str(x)
    return repr(x)


@dataclass(frozen=True)
class Verdict:
    name: str
    violations: tuple = ()
    checked: int = 0
    notes: tuple = field(default_factory=tuple)

    @property
    def ok(self) -> bool:
        return not self.violations

    def __bool__(self):
        return self.ok

    def identities_failed(self) -> set:
        return {v.identity for v in self.violations}

    def require(self, what: str = "") -> "Verdict":
        if not self.ok:
            first = self.violations[0].describe()
            raise PreconditionError(f"{what or self.name} failed: {first}", self)
        return self

    def __str__(self):
        if self.ok:
            return f"{self.name}: pass ({self.checked} instances checked)"
        lines = [f"{self.name}: FAIL ({len(self.violations)} violations)"]
        lines += ["  " + v.describe() for v in self.violations[:10]]
        if len(self.violations) > 10:
            lines.append(f"  ... {len(self.violations) - 10} more")
        return "\n".join(lines)


class Collector:
    """Accumulates checks for a single verdict."""

    def __init__(self, name: str):
        self.name = name
        self.violations = []
        self.checked = 0
        self.notes = []

    def check(self, identity: str, args: Iterable, defect) -> bool:
        self.checked += 1
        if _nonzero(defect):
            self.violations.append(Violation(identity, tuple(args), defect))
            return False
        return True

    def fail(self, identity: str, args: Iterable, defect=None):
        self.checked += 1
        self.violations.append(Violation(identity, tuple(args), defect))

    def absorb(self, verdict: Verdict):
        self.checked += verdict.checked
        self.violations.extend(verdict.violations)
        self.notes.extend(verdict.notes)

    def note(self, text: str):
        self.notes.append(text)

    def verdict(self) -> Verdict:
        return Verdict(self.name, tuple(self.violations), self.checked, tuple(self.notes))


def _nonzero(defect) -> bool:
    if isinstance(defect, Matrix):
        return not defect.is_zero()
    if isinstance(defect, (list, tuple)):
        return any(_nonzero(x) for x in defect)
    return bool(defect)


def combine(name: str, *verdicts: Verdict) -> Verdict:
    c = Collector(name)
    for v in verdicts:
        c.absorb(v)
    return c.verdict()
