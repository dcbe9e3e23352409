"""Baseline-driven anomaly detection over a trained map.

A baseline is a trained map plus a residual threshold: the residual of an
input is its distance to the best matching unit, and the threshold is a
nearest-rank percentile of the residuals seen on normal calibration data.
Inputs whose residual strictly exceeds the threshold are flagged anomalous;
the boundary counts as normal.
"""

from __future__ import annotations

import io
import math
from dataclasses import dataclass
from pathlib import Path

import numpy as np

from netsom import _backend
from netsom.core import SomMap, as_matrix, as_vector
from netsom.dataio import Dataset

BASELINE_FORMAT_VERSION = 1
VERDICT_CSV_HEADER = "index,bmu,residual,is_anomalous"


@dataclass(frozen=True)
class AnomalyBaseline:
    """A trained map plus the residual threshold that defines 'normal'."""

    map: SomMap
    threshold: float
    threshold_percentile: float
    calibration_size: int

    def __post_init__(self) -> None:
        if self.threshold < 0.0:
            raise ValueError("threshold must be nonnegative")
        if not 0.0 < self.threshold_percentile <= 100.0:
            raise ValueError("threshold_percentile must lie in (0, 100]")
        if self.calibration_size < 1:
            raise ValueError("calibration_size must be at least 1")


@dataclass(frozen=True)
class Verdict:
    """Score of one input: its winner node, residual, and the flag."""

    input_index: int
    bmu: int
    residual: float
    is_anomalous: bool


@dataclass(frozen=True)
class EvalSummary:
    """Confusion counts and rates against ground-truth labels.

    When a class is absent its rate is reported as 0 and the matching
    ``no_*_labels`` flag is set.
    """

    true_positives: int
    false_positives: int
    true_negatives: int
    false_negatives: int
    detection_rate: float
    false_positive_rate: float
    no_anomalous_labels: bool = False
    no_normal_labels: bool = False


def calibrate(som: SomMap, normal_data, percentile: float) -> AnomalyBaseline:
    """Build a baseline from normal calibration data.

    The threshold is the nearest-rank percentile of the sorted residuals:
    rank ceil(p/100 * N), 1-based.
    """
    if not 0.0 < percentile <= 100.0:
        raise ValueError(f"percentile must lie in (0, 100], got {percentile}")
    data = as_matrix(normal_data, som.dim)
    n = data.shape[0]
    if n == 0:
        raise ValueError("calibration set is empty")
    _, residuals = _backend.bmu_batch(som.weights, data)
    ordered = np.sort(residuals)
    rank = min(n, max(1, math.ceil(percentile * n / 100.0)))
    return AnomalyBaseline(
        map=som,
        threshold=float(ordered[rank - 1]),
        threshold_percentile=float(percentile),
        calibration_size=n,
    )


def score(baseline: AnomalyBaseline, x, input_index: int = 0) -> Verdict:
    """Score one input against the baseline."""
    v = as_vector(x, baseline.map.dim)
    idx, dist = _backend.bmu_batch(baseline.map.weights, v.reshape(1, -1))
    residual = float(dist[0])
    return Verdict(
        input_index=input_index,
        bmu=int(idx[0]),
        residual=residual,
        is_anomalous=residual > baseline.threshold,
    )


def score_batch(baseline: AnomalyBaseline, data) -> list[Verdict]:
    """Score a batch; verdict order matches input order."""
    m = as_matrix(data, baseline.map.dim)
    idx, dist = _backend.bmu_batch(baseline.map.weights, m)
    return [
        Verdict(
            input_index=i,
            bmu=int(idx[i]),
            residual=float(dist[i]),
            is_anomalous=float(dist[i]) > baseline.threshold,
        )
        for i in range(m.shape[0])
    ]


def evaluate(baseline: AnomalyBaseline, labeled: Dataset) -> EvalSummary:
    """Score a labeled dataset and tally the confusion matrix."""
    if labeled.labels is None:
        raise ValueError("dataset has no labels")
    if len(labeled) == 0:
        raise ValueError("labeled dataset is empty")
    _, dist = _backend.bmu_batch(baseline.map.weights, labeled.vectors)
    flagged = dist > baseline.threshold
    truth = labeled.labels
    tp = int(np.sum(flagged & truth))
    fp = int(np.sum(flagged & ~truth))
    tn = int(np.sum(~flagged & ~truth))
    fn = int(np.sum(~flagged & truth))
    no_anom = (tp + fn) == 0
    no_norm = (fp + tn) == 0
    return EvalSummary(
        true_positives=tp,
        false_positives=fp,
        true_negatives=tn,
        false_negatives=fn,
        detection_rate=0.0 if no_anom else tp / (tp + fn),
        false_positive_rate=0.0 if no_norm else fp / (fp + tn),
        no_anomalous_labels=no_anom,
        no_normal_labels=no_norm,
    )


def verdicts_to_csv(verdicts, destination=None) -> str:
    """Render verdicts as CSV (header ``index,bmu,residual,is_anomalous``),
    one row per input in input order. Writes to ``destination`` when given."""
    out = io.StringIO()
    out.write(VERDICT_CSV_HEADER + "\n")
    for v in verdicts:
        flag = "true" if v.is_anomalous else "false"
        out.write(f"{v.input_index},{v.bmu},{repr(v.residual)},{flag}\n")
    payload = out.getvalue()
    if destination is not None:
        if hasattr(destination, "write"):
            destination.write(payload)
        else:
            Path(destination).write_text(payload, encoding="utf-8")
    return payload


def baseline_to_json_dict(baseline: AnomalyBaseline) -> dict:
    """JSON-ready threshold record (the map itself lives in its own file)."""
    return {
        "format_version": BASELINE_FORMAT_VERSION,
        "threshold": baseline.threshold,
        "percentile": baseline.threshold_percentile,
        "calibration_size": baseline.calibration_size,
    }


def baseline_from_json_dict(payload: dict, som: SomMap) -> AnomalyBaseline:
    version = payload.get("format_version")
    if version != BASELINE_FORMAT_VERSION:
        raise ValueError(
            f"unsupported baseline format version {version} (expected {BASELINE_FORMAT_VERSION})"
        )
    return AnomalyBaseline(
        map=som,
        threshold=float(payload["threshold"]),
        threshold_percentile=float(payload["percentile"]),
        calibration_size=int(payload["calibration_size"]),
    )
