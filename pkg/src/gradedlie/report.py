"""Pass/fail records shared by all verifiers."""
from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Any


def _plain(x: Any) -> Any:
    if isinstance(x, Fraction):
        return str(x)
    if isinstance(x, dict):
        return {str(_plain(k)): _plain(v) for k, v in x.items()}
    if isinstance(x, (list, tuple)):
        return [_plain(v) for v in x]
    if hasattr(x, "value") and hasattr(x, "name"):
        return x.value
    return x


@dataclass
class Failure:
    witness: tuple
    lhs: Any
    rhs: Any

    def to_dict(self) -> dict:
        return {"witness": _plain(self.witness), "lhs": _plain(self.lhs), "rhs": _plain(self.rhs)}


@dataclass
class VerificationReport:
    """One checked law. Sub-reports let a verifier group many related checks."""

    law: str
    checked_count: int = 0
    first_failure: Failure | None = None
    notes: list[str] = field(default_factory=list)
    sub: list["VerificationReport"] = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return self.first_failure is None and all(s.passed for s in self.sub)

    @property
    def status(self) -> str:
        return "pass" if self.passed else "fail"

    def fail(self, witness: tuple, lhs: Any, rhs: Any) -> None:
        # only the first counterexample is kept
        if self.first_failure is None:
            self.first_failure = Failure(tuple(witness), lhs, rhs)

    def add(self, child: "VerificationReport") -> "VerificationReport":
        self.sub.append(child)
        return child

    def total_checked(self) -> int:
        return self.checked_count + sum(s.total_checked() for s in self.sub)

    def failures(self) -> list["VerificationReport"]:
        out = [self] if self.first_failure is not None else []
        for s in self.sub:
            out.extend(s.failures())
        return out

    def to_dict(self) -> dict:
        d = {"law": self.law, "status": self.status, "checked_count": self.checked_count}
        if self.first_failure is not None:
            d["first_failure"] = self.first_failure.to_dict()
        if self.notes:
            d["notes"] = list(self.notes)
        if self.sub:
            d["sub"] = [s.to_dict() for s in self.sub]
        return d

    def lines(self, indent: int = 0) -> list[str]:
        pad = "  " * indent
        out = [f"{pad}{self.status.upper():4} {self.law} (checked {self.checked_count})"]
        if self.first_failure is not None:
            f = self.first_failure
            out.append(f"{pad}     witness={_plain(f.witness)} lhs={_plain(f.lhs)} rhs={_plain(f.rhs)}")
        for n in self.notes:
            out.append(f"{pad}     note: {n}")
        for s in self.sub:
            out.extend(s.lines(indent + 1))
        return out
