"""Exceptions and the verdict record shared by every checker."""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Any


class MatcomonadError(Exception):
    """Base class for all errors raised by this package."""


class DimensionError(MatcomonadError, ValueError):
    """Matrices or objects have inconsistent shapes."""


class FieldMismatchError(MatcomonadError, ValueError):
    """Two objects live over different fields."""


class CoalgebraMismatchError(MatcomonadError, ValueError):
    """A comodule or bicomodule is attached to the wrong coalgebra."""


class AxiomError(MatcomonadError, ValueError):
    """An input object fails its structural axioms."""

    def __init__(self, message: str, verdict: "Verdict | None" = None):
        super().__init__(message)
        self.verdict = verdict


class RadicalRefusal(MatcomonadError):
    """The trace-form radical could not be certified over the current field."""


class InternalAssertion(MatcomonadError, AssertionError):
    """A condition that must hold for valid input did not hold."""


@dataclass(frozen=True)
class Verdict:
    """Outcome of an axiom check.

    ``axiom`` names the first identity that failed and ``witness`` locates it
    (a basis index, or an index tuple for comonad data).  ``failures`` lists
    every failed identity as ``(axiom, witness)`` pairs.
    """

    ok: bool
    axiom: str | None = None
    witness: Any = None
    failures: tuple = field(default_factory=tuple)

    def __bool__(self) -> bool:
        return self.ok

    @classmethod
    def passed(cls) -> "Verdict":
        return cls(True)

    @classmethod
    def collect(cls, failures: list) -> "Verdict":
        if not failures:
            return cls(True)
        axiom, witness = failures[0]
        return cls(False, axiom, witness, tuple(failures))

    def to_dict(self) -> dict:
        return {
            "ok": self.ok,
            "axiom": self.axiom,
            "witness": _jsonable(self.witness),
            "failures": [[a, _jsonable(w)] for a, w in self.failures],
        }


def _jsonable(w):
    if isinstance(w, tuple):
        return list(w)
    return w
