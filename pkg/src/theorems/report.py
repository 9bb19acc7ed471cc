"""
Verification Reports

Machine-readable verdicts with the evidence behind them. Key order is fixed
so identical runs serialize to identical bytes.
"""

import csv
import io
import json
import math
import time
from dataclasses import dataclass, field
from enum import Enum
from fractions import Fraction
from functools import wraps
from typing import Any, Callable, Iterable, Optional

import numpy as np

from config import EXIT_INCONCLUSIVE, EXIT_OK, EXIT_VIOLATED, config
from graphs.core import VertexSet


class Claim(Enum):
    EASY_DIRECTION = "easy_direction"
    MAIN_THEOREM = "main_theorem"
    HIGH_EXPANSION = "high_expansion"
    HOLDER_DUALITY = "holder_duality"
    INNER_PRODUCT_LEMMA = "inner_product_lemma"
    PROJECTOR_SUBSPACE = "projector_subspace"
    PROJECTOR_ORTHOGONAL = "projector_orthogonal"
    ONE_TO_TWO = "one_to_two"
    LOCAL_CHEEGER = "local_cheeger"


class Verdict(Enum):
    HOLDS = "holds"
    HYPOTHESIS_NOT_SATISFIED = "hypothesis_not_satisfied"
    VIOLATED = "violated"
    INCONCLUSIVE = "inconclusive"


# Fixed leading keys; anything else follows in insertion order
INPUT_KEYS = ("graph", "delta", "epsilon", "p", "q", "seed")
EVIDENCE_KEYS = ("phi_delta", "witness_set", "norm_lower", "norm_upper", "bound_rhs",
                 "vacuous_flags")


def default_tolerances() -> dict[str, float]:
    return {
        "eigen": config.eigen_tolerance,
        "projector": config.projector_tolerance,
        "threshold_tie": config.threshold_tolerance,
        "certificate_slack": config.certificate_slack,
    }


@dataclass
class Report:
    """One verdict on one claim for one set of inputs"""
    claim: Claim
    inputs: dict[str, Any]
    verdict: Verdict
    evidence: dict[str, Any] = field(default_factory=dict)
    tolerances: dict[str, float] = field(default_factory=default_tolerances)
    runtime_ms: Optional[int] = None

    def to_dict(self, include_timing: bool = True) -> dict[str, Any]:
        return {
            "claim": self.claim.value,
            "inputs": to_jsonable(_ordered(self.inputs, INPUT_KEYS)),
            "verdict": self.verdict.value,
            "evidence": to_jsonable(_ordered(self.evidence, EVIDENCE_KEYS)),
            "tolerances": to_jsonable(self.tolerances),
            "runtime_ms": self.runtime_ms if include_timing else None,
        }

    def summary(self) -> str:
        """One human-readable line; every number shown is also in to_dict()"""
        parts = []
        for key in ("phi_delta", "norm_lower", "norm_upper", "bound_rhs"):
            value = self.evidence.get(key)
            if value is not None:
                parts.append(f"{key}={_display(to_jsonable(value))}")
        graph = self.inputs.get("graph")
        where = f" [{graph}]" if graph else ""
        detail = f" ({', '.join(parts)})" if parts else ""
        return f"{self.claim.value}{where}: {self.verdict.value}{detail}"


def _ordered(values: dict[str, Any], leading: Iterable[str]) -> dict[str, Any]:
    out = {key: values.get(key) for key in leading}
    for key, value in values.items():
        if key not in out:
            out[key] = value
    return out


def _display(value: Any) -> str:
    if isinstance(value, float):
        return f"{value:.6g}"
    return str(value)


def to_jsonable(value: Any) -> Any:
    """Convert evidence values into plain JSON types"""
    if value is None or isinstance(value, (bool, str)):
        return value
    if isinstance(value, Enum):
        return value.value
    if isinstance(value, Fraction):
        return str(value)
    if isinstance(value, VertexSet):
        return value.to_list()
    if isinstance(value, (np.bool_,)):
        return bool(value)
    if isinstance(value, (int, np.integer)):
        return int(value)
    if isinstance(value, (float, np.floating)):
        value = float(value)
        if math.isinf(value):
            return "inf" if value > 0 else "-inf"
        if math.isnan(value):
            return None
        return value
    if isinstance(value, np.ndarray):
        return [to_jsonable(x) for x in value.tolist()]
    if isinstance(value, dict):
        return {str(k): to_jsonable(v) for k, v in value.items()}
    if isinstance(value, (list, tuple)):
        return [to_jsonable(x) for x in value]
    if hasattr(value, "to_dict"):
        return to_jsonable(value.to_dict())
    return str(value)


def timed(func: Callable[..., Report]) -> Callable[..., Report]:
    """Decorator to stamp a verifier's wall-clock time onto its report"""
    @wraps(func)
    def wrapper(*args, **kwargs) -> Report:
        start_time = time.time()
        report = func(*args, **kwargs)
        report.runtime_ms = int((time.time() - start_time) * 1000)
        return report
    return wrapper


def reports_to_json(reports: list[Report], include_timing: bool = True) -> str:
    """One report as an object, several as an array"""
    payload: Any = [r.to_dict(include_timing) for r in reports]
    if len(payload) == 1:
        payload = payload[0]
    return json.dumps(payload, indent=2, ensure_ascii=False) + "\n"


CSV_COLUMNS = ["claim", "graph", "delta", "epsilon", "p", "q", "seed", "verdict",
               "phi_delta", "norm_lower", "norm_upper", "bound_rhs", "witness_set",
               "runtime_ms"]


def reports_to_csv(reports: list[Report], include_timing: bool = True) -> str:
    """One verdict per row; multi-pair reports get one row per (p, q)"""
    buffer = io.StringIO()
    writer = csv.DictWriter(buffer, fieldnames=CSV_COLUMNS, lineterminator="\n")
    writer.writeheader()
    for report in reports:
        data = report.to_dict(include_timing)
        base = {
            "claim": data["claim"],
            **{k: data["inputs"].get(k) for k in INPUT_KEYS},
            "verdict": data["verdict"],
            **{k: data["evidence"].get(k) for k in ("phi_delta", "norm_lower", "norm_upper",
                                                    "bound_rhs")},
            "witness_set": _join(data["evidence"].get("witness_set")),
            "runtime_ms": data["runtime_ms"],
        }
        pairs = data["evidence"].get("pairs")
        if not pairs:
            writer.writerow(_csv_row(base))
            continue
        for entry in pairs:
            row = dict(base)
            row.update({
                "p": entry.get("p"),
                "q": entry.get("q"),
                "verdict": entry.get("verdict", base["verdict"]),
                "norm_lower": entry.get("norm_lower"),
                "norm_upper": entry.get("norm_upper"),
            })
            writer.writerow(_csv_row(row))
    return buffer.getvalue()


def _join(members: Any) -> str:
    if not members:
        return ""
    return " ".join(str(x) for x in members)


def _csv_row(row: dict[str, Any]) -> dict[str, Any]:
    return {k: "" if v is None else v for k, v in row.items()}


def overall_exit_code(reports: Iterable[Report]) -> int:
    """2 if anything is violated, else 3 if anything is inconclusive, else 0"""
    verdicts = {r.verdict for r in reports}
    if Verdict.VIOLATED in verdicts:
        return EXIT_VIOLATED
    if Verdict.INCONCLUSIVE in verdicts:
        return EXIT_INCONCLUSIVE
    return EXIT_OK
