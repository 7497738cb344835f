"""Point files and result records."""
from __future__ import annotations

import csv
import io
import json
import math
from dataclasses import dataclass, fields
from typing import Optional, Union

import numpy as np

from .geom import InputError, PointSet

COLUMNS = ("method", "value", "eps", "seed", "n", "d", "work", "wall_ms", "instance_id")


def _fmt(x: float) -> str:
    return "%.17g" % float(x)


def format_points(P: PointSet, q) -> str:
    """Header ``d n``, one point per line, then ``q`` and its coordinates."""
    lines = [f"{P.dim} {P.n}"]
    lines += [" ".join(_fmt(v) for v in row) for row in P.coords]
    lines.append("q " + " ".join(_fmt(v) for v in np.asarray(q, dtype=float)))
    return "\n".join(lines) + "\n"


def parse_points(text: str):
    rows = [ln.split() for ln in text.splitlines() if ln.strip() and not ln.lstrip().startswith("#")]
    if not rows:
        raise InputError("empty point file")
    try:
        d, n = int(rows[0][0]), int(rows[0][1])
    except (ValueError, IndexError):
        raise InputError("first line must be 'd n'") from None
    if len(rows) != n + 2:
        raise InputError(f"expected {n} point lines and a q line, found {len(rows) - 1} lines")
    try:
        X = np.array([[float(v) for v in r] for r in rows[1:n + 1]], dtype=float).reshape(n, -1)
    except ValueError as exc:
        raise InputError(f"bad coordinate: {exc}") from None
    if n and X.shape[1] != d:
        raise InputError(f"points have dimension {X.shape[1]}, header says {d}")
    qrow = rows[n + 1]
    if qrow[0] != "q" or len(qrow) != d + 1:
        raise InputError("last line must be 'q' followed by d coordinates")
    q = np.array([float(v) for v in qrow[1:]])
    return PointSet(X.reshape(n, d)), q


def read_points(path: str):
    with open(path, "r", encoding="ascii") as fh:
        return parse_points(fh.read())


def write_points(path: str, P: PointSet, q) -> None:
    with open(path, "w", encoding="ascii", newline="\n") as fh:
        fh.write(format_points(P, q))


@dataclass(frozen=True)
class ResultRecord:
    method: str
    value: Union[int, float]
    eps: Optional[float]
    seed: Optional[int]
    n: int
    d: int
    work: int
    wall_ms: Optional[float]
    instance_id: str

    def as_dict(self) -> dict:
        out = {}
        for f in fields(self):
            v = getattr(self, f.name)
            if isinstance(v, float) and math.isfinite(v) and f.name == "value" and v.is_integer() \
                    and self.eps is None:
                v = int(v)
            out[f.name] = v
        return out

    def to_json(self) -> str:
        return json.dumps(self.as_dict())

    def csv_row(self) -> list:
        d = self.as_dict()
        return ["" if d[c] is None else (repr(d[c]) if isinstance(d[c], float) else d[c])
                for c in COLUMNS]


def records_to_csv(records, header: bool = True) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    if header:
        w.writerow(COLUMNS)
    for r in records:
        w.writerow(r.csv_row())
    return buf.getvalue()
