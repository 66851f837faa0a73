"""Zigzag persistence with tracked representative cycles, for coverage holes in dynamic sensor networks."""

__version__ = "0.1.0"

from .simplicial import SimplicialComplex, Z2Chain, boundary, boundary_of_chain, rips_2skeleton  # noqa: E402
from .tracker import Event, EventKind, Interval, TrackedBarcode, ZigzagTracker, run  # noqa: E402

__all__ = [
    "Event",
    "EventKind",
    "Interval",
    "SimplicialComplex",
    "TrackedBarcode",
    "Z2Chain",
    "ZigzagTracker",
    "boundary",
    "boundary_of_chain",
    "rips_2skeleton",
    "run",
]
