"""Verification records and their text / JSON serializations."""
from __future__ import annotations

import json
from dataclasses import dataclass, field

PASS, FAIL, INCONCLUSIVE = "pass", "fail", "inconclusive"
STATUSES = (PASS, FAIL, INCONCLUSIVE)

# longest list of located mismatches kept per check
MAX_MISMATCHES = 50

EXIT_CODES = {PASS: 0, FAIL: 1, INCONCLUSIVE: 3}
EXIT_USAGE = 2


@dataclass(frozen=True)
class Mismatch:
    """A coefficient where the two sides differ (or, for an inequality
    check, the witness that they do)."""

    location: tuple
    lhs: str
    rhs: str
    where: str = ""

    def to_json(self) -> dict:
        return {"location": list(self.location), "where": self.where,
                "lhs": self.lhs, "rhs": self.rhs}

    @classmethod
    def from_json(cls, d: dict) -> "Mismatch":
        return cls(tuple(d["location"]), d["lhs"], d["rhs"], d.get("where", ""))


@dataclass
class Check:
    name: str
    anchor: str
    status: str
    mismatches: list = field(default_factory=list)

    def __post_init__(self):
        if self.status not in STATUSES:
            raise ValueError(f"bad status {self.status!r}")

    def to_json(self) -> dict:
        return {"name": self.name, "anchor": self.anchor, "status": self.status,
                "mismatches": [m.to_json() for m in self.mismatches]}

    @classmethod
    def from_json(cls, d: dict) -> "Check":
        return cls(d["name"], d["anchor"], d["status"],
                   [Mismatch.from_json(m) for m in d["mismatches"]])


def equality_check(name: str, anchor: str, pairs, where: str = "") -> Check:
    """Check from (exponent, lhs, rhs) mismatch triples; empty means pass."""
    mm = [Mismatch(tuple(t), str(a), str(b), where) for t, a, b in pairs]
    return Check(name, anchor, FAIL if mm else PASS, mm[:MAX_MISMATCHES])


def inconclusive(name: str, anchor: str, reason: str) -> Check:
    return Check(name, anchor, INCONCLUSIVE, [Mismatch((), "", "", reason)])


@dataclass
class VerificationReport:
    suite: str
    params: dict
    checks: list
    runtime_ms: int = 0

    @property
    def status(self) -> str:
        st = {c.status for c in self.checks}
        if FAIL in st:
            return FAIL
        if INCONCLUSIVE in st or not self.checks:
            return INCONCLUSIVE
        return PASS

    @property
    def exit_code(self) -> int:
        return EXIT_CODES[self.status]

    def failed(self) -> list:
        return [c for c in self.checks if c.status != PASS]

    def to_json(self) -> dict:
        return {"suite": self.suite, "params": dict(self.params),
                "checks": [c.to_json() for c in self.checks],
                "runtime_ms": self.runtime_ms}

    @classmethod
    def from_json(cls, d: dict) -> "VerificationReport":
        return cls(d["suite"], d["params"], [Check.from_json(c) for c in d["checks"]],
                   d["runtime_ms"])


def emit_report(r: VerificationReport, fmt: str = "text") -> bytes:
    if fmt == "json":
        return (json.dumps(r.to_json(), indent=2, ensure_ascii=False) + "\n").encode("utf-8")
    if fmt != "text":
        raise ValueError(f"unknown format {fmt!r}")
    lines = [f"suite: {r.suite}"]
    lines.append("params: " + " ".join(f"{k}={v}" for k, v in r.params.items()))
    for c in r.checks:
        lines.append(f"[{c.status.upper():>12}] {c.name}  ({c.anchor})")
        for m in c.mismatches:
            loc = ",".join(str(x) for x in m.location)
            where = f" {m.where}" if m.where else ""
            lines.append(f"    at ({loc}){where}: lhs={m.lhs} rhs={m.rhs}")
    n_pass = sum(c.status == "pass" for c in r.checks)
    lines.append(f"result: {r.status} ({n_pass}/{len(r.checks)} checks passed) "
                 f"runtime_ms={r.runtime_ms}")
    return ("\n".join(lines) + "\n").encode("utf-8")


def parse_report(data: bytes | str) -> VerificationReport:
    if isinstance(data, bytes):
        data = data.decode("utf-8")
    return VerificationReport.from_json(json.loads(data))
