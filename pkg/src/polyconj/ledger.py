"""Findings ledger, per-trial random streams and deterministic replay.

A :class:`Finding` records one noteworthy observation (a violation
candidate, a critical disagreement, or an informative statistic) along
with everything needed to recompute it.  Findings are appended to a JSONL
file and never rewritten.  Each conjecture checker registers a replay
function under its ``conjecture_id``; :func:`replay` reruns it on the
stored input and compares the observation string.
"""

from __future__ import annotations

import datetime as _dt
import hashlib
import json
import os
from dataclasses import asdict, dataclass, field
from pathlib import Path
from typing import Callable, Optional

import numpy as np

from .errors import MissingFinding

ARTIFACT_VERSION = "0.1.0"
SCHEMA_VERSION = 1

VIOLATION_CANDIDATE = "VIOLATION_CANDIDATE"
CRITICAL = "CRITICAL"
INFO = "INFO"
SEVERITIES = (VIOLATION_CANDIDATE, CRITICAL, INFO)

DEFAULT_LEDGER = "polyconj-ledger.jsonl"


def trial_rng(seed: int, *index: int) -> np.random.Generator:
    """Independent stream for one trial, derived from ``(seed, *index)``.

    Trial i can be regenerated in isolation without replaying trials
    ``0..i-1``.
    """
    return np.random.default_rng(np.random.SeedSequence(entropy=int(seed), spawn_key=tuple(int(i) for i in index)))


def canonical_json(obj) -> str:
    return json.dumps(obj, sort_keys=True, separators=(",", ":"))


@dataclass
class Finding:
    conjecture_id: str
    input: dict
    observation: str
    severity: str = VIOLATION_CANDIDATE
    seed: Optional[int] = None
    trial_index: Optional[int] = None
    tolerances: dict = field(default_factory=dict)
    artifact_version: str = ARTIFACT_VERSION
    timestamp: str = ""

    def __post_init__(self):
        if self.severity not in SEVERITIES:
            raise ValueError(f"unknown severity {self.severity!r}")
        if not self.timestamp:
            self.timestamp = _dt.datetime.now(_dt.timezone.utc).isoformat(timespec="seconds")

    @property
    def finding_id(self) -> str:
        key = canonical_json([self.conjecture_id, self.input, self.tolerances])
        return hashlib.sha256(key.encode()).hexdigest()[:16]

    def to_json(self) -> dict:
        d = asdict(self)
        d["id"] = self.finding_id
        return d

    @classmethod
    def from_json(cls, d: dict) -> "Finding":
        d = dict(d)
        d.pop("id", None)
        return cls(**d)


def ledger_path(path=None) -> Path:
    if path is not None:
        return Path(path)
    return Path(os.environ.get("POLYCONJ_LEDGER", DEFAULT_LEDGER))


class Ledger:
    """Append-only JSONL store of findings."""

    def __init__(self, path=None):
        self.path = ledger_path(path)

    def append(self, finding: Finding) -> str:
        self.path.parent.mkdir(parents=True, exist_ok=True)
        with open(self.path, "a") as fh:
            fh.write(canonical_json(finding.to_json()) + "\n")
        return finding.finding_id

    def extend(self, findings) -> list[str]:
        return [self.append(f) for f in findings]

    def __iter__(self):
        if not self.path.exists():
            return
        with open(self.path) as fh:
            for line in fh:
                line = line.strip()
                if line:
                    yield Finding.from_json(json.loads(line))

    def list(self) -> list[Finding]:
        return list(self)

    def get(self, finding_id: str) -> Finding:
        for f in self:
            if f.finding_id == finding_id:
                return f
        raise MissingFinding(finding_id)


_REPLAYERS: dict[str, Callable[[dict, dict], str]] = {}


def register_replay(conjecture_id: str):
    """Decorator: ``fn(input, tolerances) -> observation`` for one conjecture id."""

    def deco(fn):
        _REPLAYERS[conjecture_id] = fn
        return fn

    return deco


def _load_replayers():
    # importing the modules populates the registry
    from . import descartes, expsum, fields, hb, jensen, meshops, rolle, sos, tropical  # noqa: F401


def replay_finding(finding: Finding, tolerances: Optional[dict] = None) -> str:
    """Recompute a finding; ``"CONFIRMED"`` or ``"NOT_REPRODUCED"``."""
    _load_replayers()
    fn = _REPLAYERS.get(finding.conjecture_id)
    if fn is None:
        raise MissingFinding(f"no replay registered for {finding.conjecture_id!r}")
    tol = dict(finding.tolerances)
    if tolerances:
        tol.update(tolerances)
    obs = fn(finding.input, tol)
    return "CONFIRMED" if obs == finding.observation else "NOT_REPRODUCED"


def replay(finding_id: str, ledger: Optional[Ledger] = None, tolerances: Optional[dict] = None) -> str:
    ledger = ledger or Ledger()
    return replay_finding(ledger.get(finding_id), tolerances)
