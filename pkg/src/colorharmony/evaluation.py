"""Retrieval and prediction quality metrics.

Averaged precision/recall over a set of queries with their ratio
(relevance), and the mean absolute difference between real and predicted
preference ratings.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from pathlib import Path

from .errors import DataValidationError


@dataclass(frozen=True)
class QueryResult:
    retrieved: int
    relevant_retrieved: int
    relevant_in_db: int

    def __post_init__(self):
        if min(self.retrieved, self.relevant_retrieved, self.relevant_in_db) < 0:
            raise DataValidationError("query counts must be nonnegative")
        if self.relevant_retrieved > self.retrieved:
            raise DataValidationError(
                f"relevant_retrieved {self.relevant_retrieved} exceeds "
                f"retrieved {self.retrieved}")
        if self.relevant_retrieved > self.relevant_in_db:
            raise DataValidationError(
                f"relevant_retrieved {self.relevant_retrieved} exceeds "
                f"relevant_in_db {self.relevant_in_db}")

    @property
    def precision(self) -> float:
        if self.retrieved == 0:
            raise DataValidationError("precision undefined: zero items retrieved")
        return self.relevant_retrieved / self.retrieved

    @property
    def recall(self) -> float:
        if self.relevant_in_db == 0:
            raise DataValidationError("recall undefined: zero relevant items in db")
        return self.relevant_retrieved / self.relevant_in_db


@dataclass(frozen=True)
class PreferencePair:
    real: float
    predicted: float

    def __post_init__(self):
        for name, value in (("real", self.real), ("predicted", self.predicted)):
            if not 0.0 <= value <= 1.0:
                raise DataValidationError(f"{name} rating {value} must be in [0, 1]")


def precision_recall(results) -> tuple[float, float, float]:
    """Mean precision, mean recall, and their ratio over the queries."""
    results = list(results)
    if not results:
        raise DataValidationError("need at least one query result")
    p_t = sum(r.precision for r in results) / len(results)
    r_t = sum(r.recall for r in results) / len(results)
    if r_t == 0:
        raise DataValidationError("relevance undefined: mean recall is zero")
    return p_t, r_t, p_t / r_t


def average_difference(pairs) -> float:
    """Mean absolute difference between real and predicted ratings."""
    pairs = list(pairs)
    if not pairs:
        raise DataValidationError("need at least one preference pair")
    return sum(abs(p.real - p.predicted) for p in pairs) / len(pairs)


def load_query_fixtures(path) -> list[QueryResult]:
    obj = _load_json(path)
    if "queries" not in obj:
        raise DataValidationError(f"fixtures file {path} missing 'queries'")
    try:
        return [QueryResult(retrieved=int(q["retrieved"]),
                            relevant_retrieved=int(q["relevant_retrieved"]),
                            relevant_in_db=int(q["relevant_in_db"]))
                for q in obj["queries"]]
    except (KeyError, TypeError, ValueError) as exc:
        raise DataValidationError(f"malformed query fixture: {exc}") from exc


def load_pair_fixtures(path) -> list[PreferencePair]:
    obj = _load_json(path)
    if "pairs" not in obj:
        raise DataValidationError(f"fixtures file {path} missing 'pairs'")
    try:
        return [PreferencePair(real=float(p["real"]), predicted=float(p["predicted"]))
                for p in obj["pairs"]]
    except (KeyError, TypeError, ValueError) as exc:
        raise DataValidationError(f"malformed pair fixture: {exc}") from exc


def _load_json(path) -> dict:
    try:
        obj = json.loads(Path(path).read_text(encoding="utf-8"))
    except (OSError, json.JSONDecodeError) as exc:
        raise DataValidationError(f"cannot parse fixtures file {path}: {exc}") from exc
    if not isinstance(obj, dict):
        raise DataValidationError(f"fixtures file {path} must hold a JSON object")
    return obj


def precision_recall_report(results) -> dict:
    results = list(results)
    p_t, r_t, relevance = precision_recall(results)
    return {"queries": len(results),
            "precision": p_t, "recall": r_t, "relevance": relevance}


def difference_report(pairs) -> dict:
    pairs = list(pairs)
    return {"pairs": len(pairs), "average_difference": average_difference(pairs)}


def format_report_table(report: dict) -> str:
    """Plain-text two-column table for terminal output."""
    width = max(len(k) for k in report)
    lines = []
    for key, value in report.items():
        shown = f"{value:.6f}" if isinstance(value, float) else str(value)
        lines.append(f"{key.ljust(width)}  {shown}")
    return "\n".join(lines)
