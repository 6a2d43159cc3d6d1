"""Flat-file formats: delimited tables, event logs, and their JSON envelope."""

from __future__ import annotations

import csv
import io
import json
import math
from enum import Enum
from pathlib import Path
from typing import Iterable, Mapping

import numpy as np

from .errors import ValidationError
from .experiment import EventSeries, ExperimentConfig, Mode

EVENT_COLUMNS = ("time_s", "position_m")


def fmt(value) -> str:
    """CSV cell: floats at 17 significant digits, everything else as text."""
    if isinstance(value, (float, np.floating)):
        return format(float(value), ".17g")
    if value is None:
        return ""
    return str(value)


def to_jsonable(obj):
    if isinstance(obj, Enum):
        return obj.value
    if isinstance(obj, Mapping):
        return {k: to_jsonable(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [to_jsonable(v) for v in obj]
    if isinstance(obj, np.ndarray):
        return [to_jsonable(v) for v in obj.tolist()]
    if isinstance(obj, (np.floating, float)):
        f = float(obj)
        if math.isinf(f):
            return "inf" if f > 0 else "-inf"
        if math.isnan(f):
            return None
        return f
    if isinstance(obj, np.integer):
        return int(obj)
    return obj


def dumps(obj) -> str:
    # repr-precision floats round-trip exactly
    return json.dumps(to_jsonable(obj), indent=2)


def write_csv(rows: Iterable[Mapping], columns: Iterable[str], stream) -> None:
    columns = list(columns)
    writer = csv.writer(stream, lineterminator="\n")
    writer.writerow(columns)
    for row in rows:
        writer.writerow([fmt(row.get(c)) for c in columns])


def csv_text(rows: Iterable[Mapping], columns: Iterable[str]) -> str:
    buf = io.StringIO()
    write_csv(rows, columns, buf)
    return buf.getvalue()


def envelope_path(csv_path: str | Path) -> Path:
    return Path(csv_path).with_suffix(".json")


def write_events(series: EventSeries, path: str | Path, config: ExperimentConfig | None = None) -> Path:
    """Write ``time_s,position_m`` CSV and, with a config, a replay envelope next to it."""
    path = Path(path)
    with path.open("w", newline="") as fh:
        writer = csv.writer(fh, lineterminator="\n")
        writer.writerow(EVENT_COLUMNS)
        for t, x in zip(series.times, series.positions):
            writer.writerow([fmt(t), fmt(x)])
    if config is not None:
        env = config.as_dict()
        env["events_csv"] = path.name
        env["event_count"] = len(series)
        envelope_path(path).write_text(dumps(env) + "\n")
    return path


def read_events(path: str | Path) -> EventSeries:
    path = Path(path)
    try:
        data = np.loadtxt(path, delimiter=",", skiprows=1, ndmin=2)
    except (OSError, ValueError) as exc:
        raise ValidationError(f"cannot read event log {path}: {exc}") from exc
    with path.open() as fh:
        header = tuple(h.strip() for h in fh.readline().split(","))
    if header != EVENT_COLUMNS:
        raise ValidationError(f"event log header must be {','.join(EVENT_COLUMNS)}, got {','.join(header)}")
    mode = seed = None
    env = envelope_path(path)
    if env.exists():
        meta = json.loads(env.read_text())
        mode, seed = Mode(meta["mode"]), meta["seed"]
    if data.size == 0:
        return EventSeries(np.empty(0), np.empty(0), mode, seed)
    return EventSeries(data[:, 0], data[:, 1], mode, seed)


def read_envelope(path: str | Path) -> ExperimentConfig:
    return ExperimentConfig.from_dict(json.loads(Path(path).read_text()))
