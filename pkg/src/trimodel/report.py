"""Deterministic certification reports."""

from __future__ import annotations

import json
from dataclasses import dataclass, field

import numpy as np

REPORT_VERSION = 1

EXIT_PASS, EXIT_FAIL, EXIT_BUDGET, EXIT_VIOLATION = 0, 1, 2, 3
STATUS = {EXIT_PASS: "pass", EXIT_FAIL: "fail", EXIT_BUDGET: "budget-exceeded", EXIT_VIOLATION: "theorem-violation"}


@dataclass
class Report:
    command: str
    fixture: str
    params: dict
    exit_code: int = EXIT_PASS
    body: dict = field(default_factory=dict)
    prose: list[str] = field(default_factory=list)

    @property
    def status(self) -> str:
        return STATUS[self.exit_code]

    def machine(self) -> dict:
        return {
            "report_version": REPORT_VERSION,
            "command": self.command,
            "fixture": self.fixture,
            "params": self.params,
            "status": self.status,
            "exit_code": self.exit_code,
            "result": self.body,
        }

    def render(self, fmt: str = "text") -> str:
        block = json.dumps(_plain(self.machine()), sort_keys=True, indent=2)
        if fmt == "machine":
            return block + "\n"
        head = [
            f"trimodel report v{REPORT_VERSION}",
            f"command: {self.command}",
            f"fixture: {self.fixture}",
            "params: " + ", ".join(f"{k}={v}" for k, v in sorted(self.params.items()) if v is not None),
            f"status: {self.status}",
            "",
        ]
        return "\n".join(head + self.prose + ["", "--- machine ---", block]) + "\n"


def _plain(obj):
    """Convert numpy scalars, tuples and sets into JSON-friendly values."""
    if isinstance(obj, dict):
        return {str(k): _plain(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [_plain(v) for v in obj]
    if isinstance(obj, (set, frozenset)):
        return sorted(_plain(v) for v in obj)
    if isinstance(obj, np.integer):
        return int(obj)
    if isinstance(obj, np.bool_):
        return bool(obj)
    if isinstance(obj, np.ndarray):
        return obj.tolist()
    return obj
