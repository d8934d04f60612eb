"""Closed form versus oracle comparisons, serialized as verification reports."""
from __future__ import annotations

import math
import time
from dataclasses import asdict, dataclass
from typing import Callable

REPORT_SCHEMA = {
    "type": "object",
    "required": ["case", "closed_form", "oracle", "abs_err", "rel_err", "nodes", "elapsed_ms", "pass"],
    "properties": {
        "case": {"type": "string"},
        "closed_form": {"type": "array", "items": {"type": "number"}, "minItems": 2, "maxItems": 2},
        "oracle": {"type": "array", "items": {"type": "number"}, "minItems": 2, "maxItems": 2},
        "abs_err": {"type": "number", "minimum": 0},
        "rel_err": {"type": "number", "minimum": 0},
        "nodes": {"type": "integer", "minimum": 0},
        "elapsed_ms": {"type": "number", "minimum": 0},
        "pass": {"type": "boolean"},
    },
    "additionalProperties": False,
}


@dataclass
class VerificationReport:
    case: str
    closed_form: complex
    oracle: complex
    abs_err: float
    rel_err: float
    nodes: int
    elapsed_ms: float
    passed: bool

    def to_json(self) -> dict:
        d = asdict(self)
        d["closed_form"] = [self.closed_form.real, self.closed_form.imag]
        d["oracle"] = [self.oracle.real, self.oracle.imag]
        d["pass"] = d.pop("passed")
        return d


def compare(
    case: str,
    closed_form: complex,
    run_oracle: Callable[[], tuple[complex, int]],
    rel_tol: float = 1e-6,
    abs_tol: float = 1e-8,
) -> VerificationReport:
    """Time the oracle and judge |oracle - closed| <= max(abs_tol, rel_tol |closed|)."""
    t0 = time.perf_counter()
    oracle, nodes = run_oracle()
    elapsed = (time.perf_counter() - t0) * 1e3
    closed_form, oracle = complex(closed_form), complex(oracle)
    err = abs(oracle - closed_form)
    rel = err / abs(closed_form) if closed_form else (0.0 if err == 0 else math.inf)
    ok = err <= max(abs_tol, rel_tol * abs(closed_form))
    return VerificationReport(case, closed_form, oracle, err, rel, int(nodes), elapsed, ok)


__all__ = ["REPORT_SCHEMA", "VerificationReport", "compare"]
