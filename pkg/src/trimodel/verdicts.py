"""Pass/fail verdicts with counterexamples, shared by every axiom checker."""

from __future__ import annotations

from collections.abc import Callable
from dataclasses import dataclass, field
from typing import TYPE_CHECKING

from .errors import SearchBudgetExceeded

if TYPE_CHECKING:
    from .tricat import Triangle


@dataclass
class AxiomVerdict:
    name: str
    passed: bool | None
    checked: int = 0
    counterexample: dict | None = None
    note: str = ""

    def to_json(self) -> dict:
        out = {"axiom": self.name, "passed": self.passed, "checked": self.checked}
        if self.counterexample is not None:
            out["counterexample"] = self.counterexample
        if self.note:
            out["note"] = self.note
        return out


@dataclass
class AxiomReport:
    subject: str
    bound: int
    verdicts: list[AxiomVerdict] = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return all(v.passed is True for v in self.verdicts)

    @property
    def budget_exceeded(self) -> bool:
        return any(v.passed is None for v in self.verdicts)

    def verdict(self, name: str) -> AxiomVerdict:
        for v in self.verdicts:
            if v.name == name:
                return v
        raise KeyError(name)

    def to_json(self) -> dict:
        return {"subject": self.subject, "bound": self.bound, "passed": self.passed, "axioms": [v.to_json() for v in self.verdicts]}


def triangle_json(t: Triangle) -> dict:
    return {"X": list(t.X.mult), "Y": list(t.Y.mult), "Z": list(t.Z.mult), "u": t.u.coords.tolist(), "v": t.v.coords.tolist(), "w": t.w.coords.tolist()}


def run_axiom(name: str, body: Callable[[], tuple[bool, int, dict | None]]) -> AxiomVerdict:
    try:
        ok, n, cex = body()
        return AxiomVerdict(name, ok, n, cex)
    except SearchBudgetExceeded as exc:
        return AxiomVerdict(name, None, 0, None, f"budget exceeded: {exc}")
