"""Replay a stream and check the tracker against the brute-force oracle."""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterable, List, Sequence

from . import oracle
from .simplicial import boundary
from .tracker import Change, Event, EventKind, StepOutcome, ZigzagTracker


@dataclass
class Verification:
    steps: int = 0
    betti_violations: List[str] = field(default_factory=list)
    basis_violations: List[str] = field(default_factory=list)
    canonical_births: int = 0
    canonical_violations: List[str] = field(default_factory=list)
    stale_violations: List[str] = field(default_factory=list)
    report_mismatches: List[str] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not (self.betti_violations or self.basis_violations or self.canonical_violations
                    or self.stale_violations or self.report_mismatches)

    def merge(self, other: "Verification") -> None:
        self.steps += other.steps
        self.canonical_births += other.canonical_births
        for name in ("betti_violations", "basis_violations", "canonical_violations", "stale_violations",
                     "report_mismatches"):
            getattr(self, name).extend(getattr(other, name))

    def summary(self) -> str:
        return (f"steps={self.steps} betti_violations={len(self.betti_violations)} "
                f"basis_violations={len(self.basis_violations)} canonical_births={self.canonical_births} "
                f"canonical_violations={len(self.canonical_violations)} stale_violations={len(self.stale_violations)} "
                f"report_mismatches={len(self.report_mismatches)}")


def verify_stream(events: Sequence[Event], dims: Iterable[int] = (0, 1)) -> Verification:
    """Check, after every event and for each p in ``dims``:

    * live intervals in dimension p == betti(K_i, p)
    * the stored representatives form a basis of H_p(K_i)
    * a birth caused by a removal stores exactly the boundary of the removed simplex
    * after a removal no representative touches a simplex absent from K_i
    """
    dims = sorted(set(dims))
    res = Verification()
    tracker = ZigzagTracker()

    def check(tr: ZigzagTracker, out: StepOutcome) -> None:
        K = tr.complex
        i = out.event.step
        res.steps += 1
        for p in dims:
            reps = [c for _, c in tr.representatives(p)]
            b = oracle.betti(K, p)
            live = sum(1 for iv in tr.intervals if iv.dim == p and iv.death is None)
            if live != b or len(reps) != b:
                res.betti_violations.append(f"step {i} dim {p}: live={live} reps={len(reps)} betti={b}")
            if not oracle.validate_basis(K, p, reps):
                res.basis_violations.append(f"step {i} dim {p}")
        if out.event.kind is EventKind.REMOVE:
            if out.change is Change.BIRTH:
                res.canonical_births += 1
                held = tr.representatives(out.dim)[0][1]
                if held != boundary(out.event.simplex) or out.interval.changes[0][1] != held:
                    res.canonical_violations.append(f"step {i}: {out.event.simplex}")
            live = K.simplex_set()
            for p in range(K.dimension + 2):
                for _, c in tr.representatives(p):
                    if not c.support <= live:
                        res.stale_violations.append(f"step {i} dim {p}")

    tracker.run(events, check)
    return res


def compare_report(report, events: Sequence[Event]) -> List[str]:
    """Differences between a stored report and a fresh replay of ``events``."""
    from .pipeline import track_events

    fresh = track_events(events, report.dims).barcode
    stored = report.barcode
    out = []
    if stored.n_events != fresh.n_events:
        out.append(f"event count {stored.n_events} != {fresh.n_events}")
    fresh_map = {}
    for iv in fresh.intervals:
        fresh_map.setdefault((iv.dim, iv.birth, iv.death), []).append(iv)
    for iv in stored.intervals:
        cands = fresh_map.get((iv.dim, iv.birth, iv.death))
        if not cands:
            if not report.collapsed:
                out.append(f"interval dim={iv.dim} [{iv.birth}, {iv.death}) not reproduced")
            continue
        match = next((c for c in cands if c.changes == iv.changes), None)
        if match is None:
            out.append(f"interval dim={iv.dim} [{iv.birth}, {iv.death}) has a different history")
        else:
            cands.remove(match)
    if not report.collapsed:
        left = sum(len(v) for v in fresh_map.values())
        if left:
            out.append(f"{left} replayed intervals missing from the report")
    return out
