"""Residual records and check reports, the engine's universal output."""

from dataclasses import dataclass, field

import numpy as np

__all__ = ["Record", "CheckReport", "Tracker"]


@dataclass
class Record:
    """One named residual: what was checked, how big the worst defect is,
    and where it happened.

    `informational` records document an alternative convention or a
    diagnostic quantity; they never count toward pass/fail verdicts.
    """

    name: str
    identity: str
    residual: float
    scale: float
    tolerance: float
    witness: dict | None = None
    informational: bool = False
    note: str = ""

    @property
    def passed(self):
        if self.informational:
            return None
        return self.residual <= self.tolerance * (1.0 + self.scale)

    @property
    def status(self):
        if self.informational:
            return "INFO"
        return "PASS" if self.passed else "FAIL"

    def to_dict(self):
        out = {
            "name": self.name,
            "identity": self.identity,
            "residual": float(self.residual),
            "scale": float(self.scale),
            "tolerance": float(self.tolerance),
            "status": self.status,
        }
        if self.witness is not None:
            out["witness"] = self.witness
        if self.note:
            out["note"] = self.note
        return out


@dataclass
class CheckReport:
    """Record collection for one check, with the sample census."""

    check: str
    records: list = field(default_factory=list)
    census: dict = field(default_factory=dict)

    @property
    def passed(self):
        return all(r.passed for r in self.records if not r.informational)

    def record(self, name):
        for r in self.records:
            if r.name == name:
                return r
        raise KeyError(f"no record named {name!r} in {self.check}")

    def extend(self, other, prefix=None):
        for r in other.records:
            if prefix is not None:
                r = Record(f"{prefix}/{r.name}", r.identity, r.residual,
                           r.scale, r.tolerance, r.witness, r.informational,
                           r.note)
            self.records.append(r)
        return self

    def to_dict(self):
        return {
            "check": self.check,
            "passed": self.passed,
            "census": self.census,
            "records": [r.to_dict() for r in self.records],
        }

    def table(self):
        rows = [("record", "identity", "max residual", "witness", "status")]
        for r in self.records:
            wit = ""
            if r.witness:
                parts = []
                if "sample" in r.witness:
                    parts.append(f"s{r.witness['sample']:03d}")
                if "labels" in r.witness:
                    parts.append(r.witness["labels"])
                wit = " ".join(str(p) for p in parts)
            rows.append((r.name, r.identity, f"{r.residual:.3e}", wit, r.status))
        widths = [max(len(str(row[i])) for row in rows) for i in range(5)]
        lines = []
        for k, row in enumerate(rows):
            lines.append("  ".join(str(c).ljust(w) for c, w in zip(row, widths)).rstrip())
            if k == 0:
                lines.append("  ".join("-" * w for w in widths))
        return "\n".join(lines)


class Tracker:
    """Streams (value, witness) pairs and keeps the deterministic maximum:
    ties resolve to the first sample index, then first label seen."""

    def __init__(self):
        self.residual = 0.0
        self.scale = 0.0
        self.witness = None
        self.count = 0

    def add(self, value, sample=None, labels=None, scale=0.0):
        value = float(np.max(np.abs(value))) if np.ndim(value) else abs(float(value))
        self.count += 1
        self.scale = max(self.scale, float(scale))
        if self.witness is None or value > self.residual:
            self.residual = value
            wit = {}
            if sample is not None:
                wit["sample"] = int(sample)
            if labels:
                wit["labels"] = labels
            self.witness = wit or None
        return value

    def add_batch(self, values, labels=None, scale=0.0):
        """values indexed by sample along axis 0."""
        arr = np.abs(np.asarray(values, dtype=float))
        flat = arr.reshape(arr.shape[0], -1).max(axis=1) if arr.ndim > 1 else arr
        idx = int(np.argmax(flat))
        self.count += arr.size
        self.scale = max(self.scale, float(scale))
        if self.witness is None or flat[idx] > self.residual:
            self.residual = float(flat[idx])
            wit = {"sample": idx}
            if labels:
                wit["labels"] = labels
            self.witness = wit

    def build(self, name, identity, tolerance, informational=False, note=""):
        return Record(name=name, identity=identity, residual=self.residual,
                      scale=self.scale, tolerance=tolerance,
                      witness=self.witness, informational=informational,
                      note=note)
