"""Pass/fail records shared by the identity checks and the theorem harness."""

from __future__ import annotations

import json
from dataclasses import asdict, dataclass, field
from typing import Any


@dataclass
class CheckEntry:
    claim: str
    instance: str
    passed: bool
    witness: Any = None
    detail: str = ""


@dataclass
class VerificationReport:
    entries: list[CheckEntry] = field(default_factory=list)

    def add(self, claim: str, instance: str, passed: bool, witness: Any = None, detail: str = "") -> bool:
        if not passed and witness is None:
            raise ValueError(f"failing check {claim!r} needs a witness")
        self.entries.append(CheckEntry(claim, instance, bool(passed), witness, detail))
        return passed

    def extend(self, other: "VerificationReport") -> "VerificationReport":
        self.entries.extend(other.entries)
        return self

    @property
    def passed(self) -> bool:
        return all(e.passed for e in self.entries)

    @property
    def failures(self) -> list[CheckEntry]:
        return [e for e in self.entries if not e.passed]

    def counts(self) -> dict[str, list[int]]:
        """claim -> [passed, failed]"""
        out: dict[str, list[int]] = {}
        for e in self.entries:
            out.setdefault(e.claim, [0, 0])[0 if e.passed else 1] += 1
        return out

    def to_dict(self) -> dict:
        return {
            "passed": self.passed,
            "summary": {k: {"passed": p, "failed": f} for k, (p, f) in sorted(self.counts().items())},
            "failures": [asdict(e) for e in self.failures],
        }

    def to_json(self, **kw) -> str:
        return json.dumps(self.to_dict(), default=_jsonable, **kw)

    def lines(self) -> list[str]:
        out = []
        for claim, (p, f) in sorted(self.counts().items()):
            out.append(f"{'PASS' if not f else 'FAIL'} {claim}: {p} passed, {f} failed")
        for e in self.failures:
            out.append(f"  witness [{e.claim}] {e.instance!r}: {e.witness} {e.detail}".rstrip())
        return out


def _jsonable(obj):
    if isinstance(obj, (set, frozenset)):
        return sorted(obj)
    return str(obj)
