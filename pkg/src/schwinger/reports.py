"""Claim verdicts and their deterministic JSON/CSV encodings."""

from __future__ import annotations

import json
import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Any

import numpy as np

TOOL = "schwinger"
VERSION = "0.1.0"

MATCH = "match"
MISMATCH = "mismatch"
NOT_APPLICABLE = "not-applicable"
VERDICTS = (MATCH, MISMATCH, NOT_APPLICABLE)


@dataclass
class ClaimReport:
    """One published statement set against an independent computation.

    ``computed_value`` is what the published procedure yields when carried out
    here; ``oracle_value`` is the brute-force answer. ``evidence`` holds the
    supporting data (spectra, per-ket tables) that does not enter the verdict.
    """

    claim_id: str
    paper_statement: str
    paper_value: Any
    computed_value: Any
    oracle_value: Any
    verdict: str
    details: str = ""
    parameters: dict = field(default_factory=dict)
    evidence: dict = field(default_factory=dict)

    def __post_init__(self):
        if self.verdict not in VERDICTS:
            raise ValueError(f"verdict must be one of {VERDICTS}, got {self.verdict!r}")

    def to_dict(self) -> dict:
        return {
            "claim_id": self.claim_id,
            "parameters": self.parameters,
            "paper_statement": self.paper_statement,
            "paper_value": self.paper_value,
            "computed_value": self.computed_value,
            "oracle_value": self.oracle_value,
            "verdict": self.verdict,
            "details": self.details,
            "evidence": self.evidence,
        }


def verdict_for(equal: bool) -> str:
    return MATCH if equal else MISMATCH


def format_float(x: float) -> str:
    if not math.isfinite(x):
        raise ValueError(f"non-finite float {x!r} cannot be serialized")
    return format(x, ".17g")


def encode(obj: Any) -> Any:
    """Map values onto JSON-shaped data; exact types get tagged objects."""
    if obj is None or isinstance(obj, (bool, str)):
        return obj
    if isinstance(obj, (np.bool_,)):
        return bool(obj)
    if isinstance(obj, (int, np.integer)):
        return int(obj)
    if isinstance(obj, Fraction):
        return {"num": obj.numerator, "den": obj.denominator}
    if isinstance(obj, (float, np.floating)):
        return float(obj)
    if isinstance(obj, (complex, np.complexfloating)):
        return {"re": float(obj.real), "im": float(obj.imag)}
    if hasattr(obj, "to_dict"):
        return encode(obj.to_dict())
    if isinstance(obj, dict):
        return {str(k): encode(v) for k, v in obj.items()}
    if isinstance(obj, np.ndarray):
        return [encode(x) for x in obj.tolist()]
    if isinstance(obj, (list, tuple)):
        return [encode(x) for x in obj]
    if isinstance(obj, (set, frozenset)):
        return [encode(x) for x in sorted(obj)]
    raise TypeError(f"cannot encode {type(obj).__name__}")


def _emit(obj: Any, out: list[str], indent: int, level: int) -> None:
    pad = "\n" + " " * (indent * (level + 1))
    end = "\n" + " " * (indent * level)
    if isinstance(obj, float):
        out.append(format_float(obj))
    elif isinstance(obj, dict):
        if not obj:
            out.append("{}")
            return
        out.append("{")
        for i, (k, v) in enumerate(obj.items()):
            out.append(("," if i else "") + pad + json.dumps(k) + ": ")
            _emit(v, out, indent, level + 1)
        out.append(end + "}")
    elif isinstance(obj, list):
        if not obj:
            out.append("[]")
            return
        out.append("[")
        for i, v in enumerate(obj):
            out.append(("," if i else "") + pad)
            _emit(v, out, indent, level + 1)
        out.append(end + "]")
    else:
        out.append(json.dumps(obj))


def dumps(obj: Any, indent: int = 2) -> str:
    """JSON text with every float written to 17 significant digits."""
    out: list[str] = []
    _emit(encode(obj), out, indent, 0)
    return "".join(out) + "\n"


def bundle(claims, hbar: float, tolerance: float, command: str, extra: dict | None = None) -> dict:
    doc = {
        "tool": TOOL,
        "version": VERSION,
        "command": command,
        "hbar": float(hbar),
        "tolerance": float(tolerance),
    }
    if extra:
        doc.update(extra)
    doc["claims"] = list(claims)
    return doc
