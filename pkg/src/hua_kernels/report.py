"""Structured verification records shared by the transforms and the harness."""

from __future__ import annotations

import csv
import hashlib
import io
import json
import math
from dataclasses import dataclass, field

import numpy as np

SCHEMA_VERSION = 1


def digest(*inputs) -> str:
    """Short stable hash of the inputs' repr (numpy arrays rendered at full precision)."""
    parts = []
    for x in inputs:
        if isinstance(x, np.ndarray):
            parts.append(np.array2string(x, precision=17, threshold=1 << 30))
        else:
            parts.append(repr(x))
    return hashlib.sha256("|".join(parts).encode()).hexdigest()[:16]


def _plain(x):
    if isinstance(x, dict):
        return {str(k): _plain(v) for k, v in x.items()}
    if isinstance(x, (list, tuple)):
        return [_plain(v) for v in x]
    if isinstance(x, np.ndarray):
        return _plain(x.tolist())
    if isinstance(x, (np.bool_, bool)):
        return bool(x)
    if isinstance(x, (np.integer,)):
        return int(x)
    if isinstance(x, (complex, np.complexfloating)):
        return {"re": _plain(float(np.real(x))), "im": _plain(float(np.imag(x)))}
    if isinstance(x, (float, np.floating)):
        x = float(x)
        if math.isnan(x):
            return "nan"
        if math.isinf(x):
            return "inf" if x > 0 else "-inf"
        return x
    return x


@dataclass
class CheckRecord:
    name: str
    residual: float
    tolerance: float
    relation: str = "<="
    inputs_digest: str = ""
    wall_time: float = 0.0
    detail: dict = field(default_factory=dict)

    @property
    def passed(self) -> bool:
        r = float(np.real(self.residual))
        if self.relation == "info":
            return True
        if math.isnan(r):
            return False
        if self.relation == "<=":
            return r <= self.tolerance
        if self.relation == ">=":
            return r >= self.tolerance
        raise ValueError(f"unknown relation {self.relation!r}")

    def to_dict(self, timings: bool = False) -> dict:
        d = {
            "name": self.name,
            "residual": _plain(float(np.real(self.residual))),
            "tolerance": _plain(float(self.tolerance)),
            "relation": self.relation,
            "passed": self.passed,
            "inputs_digest": self.inputs_digest,
            "detail": _plain(self.detail),
        }
        if timings:
            d["wall_time"] = round(self.wall_time, 6)
        return d


@dataclass
class Report:
    suite: str
    checks: list = field(default_factory=list)
    config: dict = field(default_factory=dict)
    seed: int = 0
    error: str | None = None
    schema_version: int = SCHEMA_VERSION

    @property
    def passed(self) -> bool:
        return self.error is None and bool(self.checks) and all(c.passed for c in self.checks)

    def add(self, name, residual, tolerance, relation="<=", inputs=(), wall_time=0.0, **detail) -> CheckRecord:
        rec = CheckRecord(name, residual, tolerance, relation, digest(*inputs), wall_time, detail)
        self.checks.append(rec)
        return rec

    def max_residual(self) -> float:
        vals = [float(np.real(c.residual)) for c in self.checks if c.relation == "<="]
        return max(vals) if vals else 0.0

    def to_dict(self, timings: bool = False) -> dict:
        return {
            "schema_version": self.schema_version,
            "suite": self.suite,
            "seed": self.seed,
            "passed": self.passed,
            "error": self.error,
            "config": _plain(self.config),
            "checks": [c.to_dict(timings) for c in self.checks],
        }


def reports_to_json(reports, summary: dict | None = None, timings: bool = False) -> str:
    payload = {
        "schema_version": SCHEMA_VERSION,
        "summary": _plain(summary or {}),
        "reports": [r.to_dict(timings) for r in reports],
    }
    return json.dumps(payload, indent=2, sort_keys=True) + "\n"


CSV_FIELDS = ["suite", "check", "residual", "relation", "tolerance", "passed", "wall_time"]


def reports_to_csv(reports) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(CSV_FIELDS)
    for r in reports:
        if r.error is not None:
            w.writerow([r.suite, "<error>", "", "", "", False, ""])
        for c in r.checks:
            w.writerow(
                [r.suite, c.name, repr(float(np.real(c.residual))), c.relation, repr(float(c.tolerance)),
                 c.passed, f"{c.wall_time:.4f}"]
            )
    return buf.getvalue()
