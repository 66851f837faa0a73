"""Event files, adjacency-sequence files and run reports.

Event file: one event per line, ``A v0,v1,...`` or ``R v0,v1,...`` with
ascending vertex ids; the line number is the step.

Adjacency sequence: a JSON list whose elements are
``{"n": int, "present": [0|1]*n, "rows": [[0|1]*n]*n}``.

Report: JSON, keys sorted, see ``docs/schema.md``.  Interval deaths are the
raw step of the killing event.
"""

from __future__ import annotations

import hashlib
import json
from dataclasses import dataclass
from pathlib import Path
from typing import List, Optional, Sequence, Tuple, Union

import numpy as np

from . import __version__
from .sequence import CoarseSequence, CoarseStep
from .simplicial import Z2Chain, make_simplex
from .tracker import Event, EventKind, Interval, TrackedBarcode

REPORT_FORMAT = "zzreps-report/1"

PathLike = Union[str, Path]


class FormatError(ValueError):
    def __init__(self, where: str, reason: str):
        super().__init__(f"{where}: {reason}")
        self.where = where
        self.reason = reason


# -- events -------------------------------------------------------------------
def parse_event_line(line: str, step: int) -> Event:
    parts = line.split()
    if len(parts) != 2 or parts[0] not in ("A", "R"):
        raise FormatError(f"line {step}", f"expected 'A v0,v1,...' or 'R v0,v1,...', got {line!r}")
    try:
        verts = [int(x) for x in parts[1].split(",")]
    except ValueError:
        raise FormatError(f"line {step}", f"bad vertex list {parts[1]!r}") from None
    if any(v < 0 for v in verts):
        raise FormatError(f"line {step}", "vertex ids must be non-negative")
    if any(a >= b for a, b in zip(verts, verts[1:])):
        raise FormatError(f"line {step}", "vertices not ascending")
    return Event(EventKind(parts[0]), make_simplex(verts), step)


def parse_events_text(text: str) -> List[Event]:
    lines = text.split("\n")
    if lines and lines[-1] == "":
        lines.pop()
    return [parse_event_line(line.rstrip("\r"), i) for i, line in enumerate(lines, 1)]


def parse_events(path: PathLike) -> List[Event]:
    return parse_events_text(Path(path).read_text())


def format_events(events: Sequence[Event]) -> str:
    return "".join(f"{e.kind.value} {','.join(map(str, e.simplex))}\n" for e in events)


def write_events(events: Sequence[Event], path: PathLike) -> None:
    Path(path).write_text(format_events(events))


# -- adjacency sequences --------------------------------------------------------
def validate_adjacency_sequence(data) -> Tuple[List[np.ndarray], List[np.ndarray]]:
    if not isinstance(data, list):
        raise FormatError("top level", "expected a list")
    mats, masks = [], []
    n0 = None
    for k, el in enumerate(data):
        where = f"element {k}"
        if not isinstance(el, dict) or not {"n", "present", "rows"} <= set(el):
            raise FormatError(where, "expected an object with n, present, rows")
        n = el["n"]
        if not isinstance(n, int) or n < 0:
            raise FormatError(where, "n must be a non-negative integer")
        if n0 is not None and n != n0:
            raise FormatError(where, f"node count {n} differs from {n0}")
        n0 = n
        present, rows = el["present"], el["rows"]
        if len(present) != n or len(rows) != n or any(len(r) != n for r in rows):
            raise FormatError(where, "present/rows do not match n")
        P = np.asarray(present, dtype=np.int64).reshape(n)
        A = np.asarray(rows, dtype=np.int64).reshape(n, n)
        if not np.isin(P, (0, 1)).all() or not np.isin(A, (0, 1)).all():
            raise FormatError(where, "entries must be 0 or 1")
        if (A != A.T).any():
            i, j = np.argwhere(A != A.T)[0]
            raise FormatError(where, f"rows not symmetric at ({i}, {j})")
        if A.diagonal().any():
            raise FormatError(where, "nonzero diagonal")
        masked = P == 0
        if A[masked].any():
            raise FormatError(where, "masked node has edges")
        mats.append(A.astype(np.int8))
        masks.append(P.astype(bool))
    return mats, masks


def parse_adjacency_sequence(path: PathLike) -> Tuple[List[np.ndarray], List[np.ndarray]]:
    try:
        data = json.loads(Path(path).read_text())
    except json.JSONDecodeError as exc:
        raise FormatError(str(path), f"invalid JSON: {exc}") from None
    return validate_adjacency_sequence(data)


def adjacency_to_json(mats: Sequence[np.ndarray], masks: Sequence[np.ndarray]) -> str:
    data = [
        {"n": int(len(A)), "present": [int(x) for x in P], "rows": [[int(x) for x in row] for row in A]}
        for A, P in zip(mats, masks)
    ]
    return json.dumps(data, separators=(",", ":")) + "\n"


def write_adjacency_sequence(mats, masks, path: PathLike) -> None:
    Path(path).write_text(adjacency_to_json(mats, masks))


def sha256_file(path: PathLike) -> str:
    return hashlib.sha256(Path(path).read_bytes()).hexdigest()


# -- reports --------------------------------------------------------------------
@dataclass
class RunReport:
    barcode: TrackedBarcode
    dims: List[int]
    coarse: Optional[List[CoarseStep]] = None
    input_kind: str = "events"
    input_sha256: str = ""
    seed: Optional[int] = None
    collapsed: bool = False
    version: str = __version__
    hidden: int = 0
    """Number of intervals removed by zero-length collapsing."""

    @property
    def annotated(self) -> bool:
        return any(iv.sizes for iv in self.barcode.intervals)


def collapse_zero_length(barcode: TrackedBarcode, coarse: CoarseSequence) -> Tuple[TrackedBarcode, int]:
    """Drop bars born and killed inside the same refinement block."""
    keep = []
    for iv in barcode.intervals:
        if iv.death is not None and coarse.block_of(iv.birth) == coarse.block_of(iv.death):
            continue
        keep.append(iv)
    return TrackedBarcode(keep, barcode.n_events), len(barcode.intervals) - len(keep)


def _sort_key(iv: Interval):
    return (iv.dim, iv.birth, float("inf") if iv.death is None else iv.death,
            [sorted(c.support) for _, c in iv.changes])


def _interval_json(iv: Interval) -> dict:
    return {
        "dim": iv.dim,
        "birth": iv.birth,
        "death": iv.death,
        "last_step": iv.end,
        "history": [{"step": s, "cycle": [list(x) for x in c.sorted()]} for s, c in iv.changes],
        "sizes": [[j, iv.sizes[j]] for j in sorted(iv.sizes)],
    }


def report_to_dict(report: RunReport) -> dict:
    ivs = sorted(report.barcode.intervals, key=_sort_key)
    return {
        "format": REPORT_FORMAT,
        "tool": {"name": "zzreps", "version": report.version},
        "input": {"kind": report.input_kind, "sha256": report.input_sha256},
        "seed": report.seed,
        "n_events": report.barcode.n_events,
        "dims": list(report.dims),
        "collapse_zero_length": report.collapsed,
        "hidden_intervals": report.hidden,
        "coarse": None if report.coarse is None else [
            {"index": c.index, "step": c.step, "first_step": c.first_step, "union_step": c.union_step}
            for c in report.coarse
        ],
        "intervals": [_interval_json(iv) for iv in ivs],
    }


def report_to_json(report: RunReport) -> str:
    return json.dumps(report_to_dict(report), sort_keys=True, indent=1) + "\n"


def emit_report(report: RunReport, path: PathLike) -> None:
    Path(path).write_text(report_to_json(report))


def report_from_dict(d: dict) -> RunReport:
    if d.get("format") != REPORT_FORMAT:
        raise FormatError("report", f"unknown format {d.get('format')!r}")
    intervals = []
    for k, x in enumerate(d["intervals"]):
        dim = x["dim"]
        changes = [(h["step"], Z2Chain(dim, frozenset(tuple(s) for s in h["cycle"]))) for h in x["history"]]
        iv = Interval(dim, x["birth"], x["death"], changes,
                      last_step=x["last_step"] if x["death"] is None else None,
                      sizes={int(j): int(s) for j, s in x["sizes"]})
        intervals.append(iv)
    coarse = None
    if d["coarse"] is not None:
        coarse = [CoarseStep(c["index"], c["step"], c["union_step"], c["first_step"]) for c in d["coarse"]]
    return RunReport(
        barcode=TrackedBarcode(intervals, d["n_events"]),
        dims=list(d["dims"]),
        coarse=coarse,
        input_kind=d["input"]["kind"],
        input_sha256=d["input"]["sha256"],
        seed=d["seed"],
        collapsed=d["collapse_zero_length"],
        version=d["tool"]["version"],
        hidden=d.get("hidden_intervals", 0),
    )


def load_report(path: PathLike) -> RunReport:
    return report_from_dict(json.loads(Path(path).read_text()))


def normalized(report: RunReport) -> dict:
    """Comparable form of a report (interval order canonicalised)."""
    return report_to_dict(report)
