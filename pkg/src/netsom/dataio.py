"""CSV ingestion, feature normalization, and seeded dataset splitting.

Accepted CSV dialect: comma separator, '.' decimal point, optional single
header line, optional label column with values ``normal``/``anomalous``,
UTF-8, LF or CRLF line endings. Categorical features must be pre-encoded
to numbers upstream (as KDD-style pipelines do); the loader rejects
anything that is not a finite decimal numeral.
"""

from __future__ import annotations

import csv
import io
import math
from dataclasses import dataclass, replace
from pathlib import Path

import numpy as np

LABEL_NORMAL = "normal"
LABEL_ANOMALOUS = "anomalous"
NORMALIZATION_METHODS = ("minmax", "zscore", "none")
NORMALIZER_FORMAT_VERSION = 1


class CsvFormatError(ValueError):
    """Malformed CSV input, with a 1-based row/column diagnostic when known."""

    def __init__(self, message: str, row: int | None = None, column: int | None = None):
        self.row = row
        self.column = column
        where = ""
        if row is not None:
            where = f" (row {row}" + (f", column {column})" if column is not None else ")")
        super().__init__(message + where)


@dataclass(frozen=True)
class Dataset:
    """A batch of feature vectors with optional column names and labels.

    ``labels`` is a per-row boolean array, True meaning anomalous.
    """

    vectors: np.ndarray
    column_names: list[str] | None = None
    labels: np.ndarray | None = None

    def __post_init__(self) -> None:
        v = np.ascontiguousarray(self.vectors, dtype=np.float64)
        if v.ndim != 2:
            raise ValueError(f"vectors must be 2-D, got shape {v.shape}")
        if not np.all(np.isfinite(v)):
            raise ValueError("dataset contains non-finite values")
        object.__setattr__(self, "vectors", v)
        if self.column_names is not None and len(self.column_names) != v.shape[1]:
            raise ValueError("column_names length must equal the feature dimension")
        if self.labels is not None:
            lab = np.asarray(self.labels, dtype=bool)
            if lab.shape != (v.shape[0],):
                raise ValueError("labels must have one entry per row")
            object.__setattr__(self, "labels", lab)

    def __len__(self) -> int:
        return int(self.vectors.shape[0])

    @property
    def dim(self) -> int:
        return int(self.vectors.shape[1])


@dataclass(frozen=True)
class NormalizationModel:
    """Fitted per-dimension scaling.

    ``stats`` holds {"min", "max"} for minmax, {"mean", "stddev"} (population
    stddev) for zscore, and is empty for none. ``degenerate`` flags constant
    columns, which both methods map to 0.
    """

    method: str
    stats: dict
    degenerate: np.ndarray

    def __post_init__(self) -> None:
        if self.method not in NORMALIZATION_METHODS:
            raise ValueError(f"unknown normalization method {self.method!r}")

    @property
    def dim(self) -> int:
        return int(self.degenerate.shape[0])


def load_csv(source, has_header: bool = True, label_column: str | None = None) -> Dataset:
    """Parse CSV feature data.

    ``source`` may be a path, bytes, or a text/binary file object. Rejects
    ragged rows, non-numeric feature fields, and non-finite values, naming
    the offending 1-based row and column. Physical line numbers are used,
    so with a header the first data row is row 2.
    """
    text = _read_text(source)
    lines = text.splitlines()
    reader = csv.reader(lines)
    rows = list(reader)
    if not rows:
        raise CsvFormatError("empty input: no rows")
    if label_column is not None and not has_header:
        raise CsvFormatError("a label column requires a header line")

    names: list[str] | None = None
    label_idx: int | None = None
    start = 0
    if has_header:
        header = [h.strip() for h in rows[0]]
        if label_column is not None:
            if label_column not in header:
                raise CsvFormatError(f"label column {label_column!r} not found in header")
            label_idx = header.index(label_column)
            names = [h for i, h in enumerate(header) if i != label_idx]
        else:
            names = header
        start = 1

    vectors: list[list[float]] = []
    labels: list[bool] = []
    expected: int | None = len(rows[0]) if has_header else None
    for r in range(start, len(rows)):
        row = rows[r]
        lineno = r + 1
        if not row:  # blank line
            continue
        if expected is None:
            expected = len(row)
        if len(row) != expected:
            raise CsvFormatError(
                f"expected {expected} fields, found {len(row)}", row=lineno
            )
        values: list[float] = []
        for c, field in enumerate(row):
            colno = c + 1
            if c == label_idx:
                lab = field.strip()
                if lab == LABEL_NORMAL:
                    labels.append(False)
                elif lab == LABEL_ANOMALOUS:
                    labels.append(True)
                else:
                    raise CsvFormatError(
                        f"label must be '{LABEL_NORMAL}' or '{LABEL_ANOMALOUS}', got {field!r}",
                        row=lineno,
                        column=colno,
                    )
                continue
            try:
                value = float(field)
            except ValueError:
                raise CsvFormatError(
                    f"not a number: {field!r}", row=lineno, column=colno
                ) from None
            if not math.isfinite(value):
                raise CsvFormatError(
                    f"non-finite value: {field!r}", row=lineno, column=colno
                )
            values.append(value)
        vectors.append(values)

    if not vectors:
        raise CsvFormatError("no data rows")
    if expected is not None and label_idx is not None and expected - 1 == 0:
        raise CsvFormatError("no feature columns besides the label")
    data = np.asarray(vectors, dtype=np.float64)
    return Dataset(
        vectors=data,
        column_names=names,
        labels=np.asarray(labels, dtype=bool) if label_idx is not None else None,
    )


def save_csv(dataset: Dataset, destination, label_column: str = "label") -> None:
    """Serialize a dataset back to CSV at full precision.

    Values are written with shortest round-trip float formatting, so
    load -> save -> load preserves every value exactly.
    """
    out = io.StringIO()
    if dataset.column_names is not None:
        header = list(dataset.column_names)
        if dataset.labels is not None:
            header.append(label_column)
        out.write(",".join(header) + "\n")
    for i in range(len(dataset)):
        fields = [repr(float(v)) for v in dataset.vectors[i]]
        if dataset.labels is not None:
            fields.append(LABEL_ANOMALOUS if dataset.labels[i] else LABEL_NORMAL)
        out.write(",".join(fields) + "\n")
    payload = out.getvalue()
    if hasattr(destination, "write"):
        destination.write(payload)
    else:
        Path(destination).write_text(payload, encoding="utf-8")


def fit_normalizer(data: Dataset, method: str) -> NormalizationModel:
    """Fit per-dimension statistics. Constant columns are flagged degenerate
    and map to 0 under either method."""
    if method not in NORMALIZATION_METHODS:
        raise ValueError(f"unknown normalization method {method!r}")
    if len(data) == 0:
        raise ValueError("cannot fit a normalizer on an empty dataset")
    v = data.vectors
    mins = v.min(axis=0)
    maxs = v.max(axis=0)
    degenerate = mins == maxs
    if method == "minmax":
        stats = {"min": mins, "max": maxs}
    elif method == "zscore":
        means = v.mean(axis=0)
        stds = np.sqrt(np.mean((v - means) ** 2, axis=0))
        stds = np.where(degenerate, 0.0, stds)
        stats = {"mean": means, "stddev": stds}
    else:
        stats = {}
        degenerate = np.zeros(data.dim, dtype=bool)
    return NormalizationModel(method=method, stats=stats, degenerate=degenerate)


def apply_normalizer(model: NormalizationModel, data: Dataset) -> Dataset:
    """Scale a dataset with fitted statistics; a pure transform.

    minmax clamps values outside the fitted range into [0, 1]; degenerate
    columns always map to 0.
    """
    if data.dim != model.dim:
        raise ValueError(f"dimension mismatch: model has {model.dim}, data has {data.dim}")
    v = data.vectors
    if model.method == "none":
        return data
    if model.method == "minmax":
        span = model.stats["max"] - model.stats["min"]
        safe = np.where(model.degenerate, 1.0, span)
        out = (v - model.stats["min"]) / safe
        out = np.clip(out, 0.0, 1.0)
    else:
        safe = np.where(model.degenerate, 1.0, model.stats["stddev"])
        out = (v - model.stats["mean"]) / safe
    out[:, model.degenerate] = 0.0
    return replace(data, vectors=out)


def split(data: Dataset, fractions, seed: int) -> tuple[Dataset, Dataset, Dataset]:
    """Seeded shuffle, then contiguous partition into (train, calibrate, test).

    Calibrate and test sizes are round(N * fraction) (half away from zero);
    the remainder goes to train. Partitions are disjoint and cover the data.
    """
    f = [float(x) for x in fractions]
    if len(f) != 3 or any(x < 0.0 for x in f):
        raise ValueError("fractions must be three nonnegative numbers")
    if abs(sum(f) - 1.0) > 1e-9:
        raise ValueError(f"fractions must sum to 1, got {sum(f)}")
    n = len(data)
    if n == 0:
        raise ValueError("cannot split an empty dataset")
    n_cal = int(math.floor(n * f[1] + 0.5))
    n_test = int(math.floor(n * f[2] + 0.5))
    if n_cal + n_test > n:  # rounding overshoot; keep train nonnegative
        n_test = max(0, n - n_cal)
        n_cal = min(n_cal, n)
    n_train = n - n_cal - n_test
    perm = np.random.default_rng(seed).permutation(n)
    parts = (
        perm[:n_train],
        perm[n_train : n_train + n_cal],
        perm[n_train + n_cal :],
    )
    return tuple(_take(data, p) for p in parts)  # type: ignore[return-value]


def normalizer_to_json_dict(model: NormalizationModel) -> dict:
    """JSON-ready representation; floats survive exactly via repr formatting."""
    return {
        "format_version": NORMALIZER_FORMAT_VERSION,
        "method": model.method,
        "dim": model.dim,
        "stats": {k: [float(x) for x in v] for k, v in model.stats.items()},
        "degenerate": [bool(b) for b in model.degenerate],
    }


def normalizer_from_json_dict(payload: dict) -> NormalizationModel:
    version = payload.get("format_version")
    if version != NORMALIZER_FORMAT_VERSION:
        raise ValueError(
            f"unsupported normalizer format version {version} (expected {NORMALIZER_FORMAT_VERSION})"
        )
    return NormalizationModel(
        method=payload["method"],
        stats={k: np.asarray(v, dtype=np.float64) for k, v in payload["stats"].items()},
        degenerate=np.asarray(payload["degenerate"], dtype=bool),
    )


def _take(data: Dataset, indices: np.ndarray) -> Dataset:
    return Dataset(
        vectors=data.vectors[indices],
        column_names=data.column_names,
        labels=None if data.labels is None else data.labels[indices],
    )


def _read_text(source) -> str:
    if isinstance(source, bytes):
        raw = source
    elif hasattr(source, "read"):
        raw = source.read()
        if isinstance(raw, str):
            return raw
    else:
        raw = Path(source).read_bytes()
    try:
        return raw.decode("utf-8")
    except UnicodeDecodeError as exc:
        raise CsvFormatError(f"input is not valid UTF-8: {exc}") from None
