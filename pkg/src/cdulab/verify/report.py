"""Claim and report types."""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Any

from ..errors import HypothesisViolation


@dataclass
class Claim:
    id: str
    params: dict = field(default_factory=dict)

    def to_json(self) -> dict:
        return {"claim": self.id, "params": self.params}

    @classmethod
    def from_json(cls, obj) -> "Claim":
        return cls(str(obj["claim"]), dict(obj.get("params", {})))


class Hypotheses:
    """Collects (name, ok) pairs; ``enforce`` raises on the first failure."""

    def __init__(self):
        self.checks: list[tuple[str, bool]] = []

    def check(self, name: str, ok) -> bool:
        ok = bool(ok)
        self.checks.append((name, ok))
        return ok

    @property
    def failed(self) -> list[str]:
        return [n for n, ok in self.checks if not ok]

    def enforce(self, exploratory: bool = False):
        if self.failed and not exploratory:
            raise HypothesisViolation(self.failed[0], f"failing hypotheses: {', '.join(self.failed)}")


@dataclass
class VerificationReport:
    claim: str
    params: dict
    hypothesis_checks: list[tuple[str, bool]]
    bound: Any
    observed: Any
    slack: Any
    passed: bool
    witnesses: list = field(default_factory=list)
    kind: str = "bound"
    entries: list[dict] = field(default_factory=list)
    notes: list[str] = field(default_factory=list)
    exploratory: bool = False

    def to_json(self) -> dict:
        return {
            "claim": self.claim,
            "params": self.params,
            "hypothesis_checks": [[n, bool(ok)] for n, ok in self.hypothesis_checks],
            "bound": self.bound,
            "observed": self.observed,
            "slack": self.slack,
            "pass": bool(self.passed),
            "witnesses": self.witnesses,
            "kind": self.kind,
            "entries": self.entries,
            "notes": self.notes,
            "exploratory": self.exploratory,
        }


def aggregate(claim: str, params: dict, hyp: Hypotheses, entries: list[dict], kind: str = "bound",
              notes=None, exploratory: bool = False) -> VerificationReport:
    """Fold per-entry results (each with bound, observed, pass) into one report.

    The headline bound/observed come from the entry with the smallest slack.
    """
    notes = list(notes or [])
    if not entries:
        return VerificationReport(claim, params, hyp.checks, None, None, None, True, [], kind, [], notes,
                                  exploratory)
    worst = min(entries, key=lambda e: (e["pass"], e["slack"]))
    wit = [w for e in entries if not e["pass"] for w in e.get("witnesses", [])][:64]
    if not wit:
        wit = worst.get("witnesses", [])
    return VerificationReport(
        claim=claim,
        params=params,
        hypothesis_checks=hyp.checks,
        bound=worst["bound"],
        observed=worst["observed"],
        slack=worst["slack"],
        passed=all(e["pass"] for e in entries),
        witnesses=wit,
        kind=kind,
        entries=entries,
        notes=notes,
        exploratory=exploratory,
    )
