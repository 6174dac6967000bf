"""Experiment reports and their CSV / JSON serialisations."""

from __future__ import annotations

import csv
import io
import json
import math
import platform
from dataclasses import dataclass, field
from datetime import datetime, timezone

SCHEMA = 1


def _cell(v):
    if v is None:
        return ""
    if isinstance(v, float):
        if math.isnan(v):
            return ""
        return repr(round(v, 12))
    if isinstance(v, bool):
        return "true" if v else "false"
    return str(v)


def _json_value(v):
    if isinstance(v, float) and math.isnan(v):
        return None
    if isinstance(v, float):
        return round(v, 12)
    return v


@dataclass
class ExperimentReport:
    """Rows of one experiment. Columns ending in ``_reference`` are
    asymptotic shapes for orientation only, never pass/fail targets."""

    experiment: str
    params: dict
    columns: list
    rows: list = field(default_factory=list)
    ok: bool = True
    notes: list = field(default_factory=list)

    def add(self, *values) -> None:
        if len(values) != len(self.columns):
            raise ValueError(f"row has {len(values)} cells, expected {len(self.columns)}")
        self.rows.append(list(values))

    def column(self, name: str) -> list:
        i = self.columns.index(name)
        return [r[i] for r in self.rows]

    def to_csv(self, timestamp: bool = False) -> str:
        buf = io.StringIO()
        if timestamp:
            buf.write(f"# generated {datetime.now(timezone.utc).isoformat(timespec='seconds')}\n")
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(self.columns)
        for r in self.rows:
            w.writerow([_cell(v) for v in r])
        return buf.getvalue()

    def to_json(self, timestamp: bool = False) -> str:
        meta = {"python": platform.python_version(), "package": _version()}
        if timestamp:
            meta["generated"] = datetime.now(timezone.utc).isoformat(timespec="seconds")
        doc = {
            "schema": SCHEMA,
            "experiment": self.experiment,
            "params": self.params,
            "columns": self.columns,
            "rows": [[_json_value(v) for v in r] for r in self.rows],
            "ok": self.ok,
            "notes": self.notes,
            "meta": meta,
        }
        return json.dumps(doc, indent=2, sort_keys=False) + "\n"


def rows_from_csv(text: str) -> list:
    """Parse a CSV written by :meth:`ExperimentReport.to_csv` back to string cells."""
    lines = [ln for ln in text.splitlines() if not ln.startswith("#")]
    return list(csv.reader(lines))


def _version() -> str:
    try:
        from importlib.metadata import version
        return version("artifact")
    except Exception:
        return "unknown"
