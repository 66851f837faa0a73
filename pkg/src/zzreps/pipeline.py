"""End-to-end runs: adjacency or event input to a report."""

from __future__ import annotations

from typing import Optional, Sequence

from .hopsize import annotate_barcode
from .io import RunReport, collapse_zero_length
from .netsim import NetworkConfig, adjacency, generate
from .sequence import build_stream, complexes_from_adjacency_sequence
from .tracker import Event, TrackedBarcode, ZigzagTracker


def _sorted(bc: TrackedBarcode) -> TrackedBarcode:
    ivs = sorted(bc.intervals, key=lambda iv: (iv.dim, iv.birth, float("inf") if iv.death is None else iv.death,
                                               [sorted(c.support) for _, c in iv.changes]))
    return TrackedBarcode(ivs, bc.n_events)


def track_events(events: Sequence[Event], dims=(0, 1), sha256: str = "", seed: Optional[int] = None) -> RunReport:
    bc = ZigzagTracker().run(events).barcode(dims)
    return RunReport(_sorted(bc), sorted(dims), None, "events", sha256, seed)


def track_adjacency(mats, masks=None, dims=(0, 1), sizes: bool = False, collapse: bool = False,
                    max_depth: Optional[int] = None, sha256: str = "", seed: Optional[int] = None) -> RunReport:
    complexes = complexes_from_adjacency_sequence(mats, masks)
    events, coarse = build_stream(complexes)
    bc = ZigzagTracker().run(events).barcode(dims)
    if sizes:
        bc = annotate_barcode(bc, coarse, max_depth)
    hidden = 0
    if collapse:
        bc, hidden = collapse_zero_length(bc, coarse)
    return RunReport(_sorted(bc), sorted(dims), coarse.steps, "adjacency", sha256, seed, collapse, hidden=hidden)


def simulate(cfg: NetworkConfig):
    """(matrices, masks) for every time step of a simulated network."""
    snaps = generate(cfg)
    return [adjacency(s, cfg.r) for s in snaps], [s.present for s in snaps]
