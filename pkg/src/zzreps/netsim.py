"""Seeded mobile sensor network in the unit square.

Random numbers come from numpy's ``Philox`` 4x64 counter-based generator
keyed by the seed.  Draw order is fixed: initial positions as one
``(n, 2)`` uniform block, then one ``(n, 2)`` standard-normal block per
later time step.
"""

from __future__ import annotations

from dataclasses import asdict, dataclass
from typing import List, Optional, Tuple

import numpy as np


@dataclass
class FailureDisk:
    center: Tuple[float, float] = (0.5, 0.5)
    radius: float = 0.0
    growth: float = 0.0
    """Radius increase per time step; the radius at step t (0-based) is radius + t * growth."""

    def radius_at(self, t: int) -> float:
        return self.radius + t * self.growth


@dataclass
class NetworkConfig:
    n: int = 120
    r: float = 0.11
    """Coverage radius; nodes closer than 2r communicate."""
    step_scale: float = 0.005
    """Standard deviation of the per-coordinate displacement per time step."""
    T: int = 15
    seed: int = 0
    failure: Optional[FailureDisk] = None

    def validate(self) -> None:
        if self.n < 1:
            raise ValueError("n must be at least 1")
        if self.r <= 0:
            raise ValueError("r must be positive")
        if self.T < 1:
            raise ValueError("T must be at least 1")
        if self.step_scale < 0:
            raise ValueError("step_scale must be non-negative")
        if self.failure is not None and (self.failure.growth < 0 or self.failure.radius < 0):
            raise ValueError("failure radius and growth must be non-negative")

    @classmethod
    def from_dict(cls, d: dict) -> "NetworkConfig":
        d = dict(d)
        fail = d.pop("failure", None)
        if fail is not None:
            fail = FailureDisk(tuple(fail.get("center", (0.5, 0.5))), fail.get("radius", 0.0), fail.get("growth", 0.0))
        cfg = cls(**d, failure=fail)
        cfg.validate()
        return cfg

    def to_dict(self) -> dict:
        d = asdict(self)
        if self.failure is not None:
            d["failure"]["center"] = list(self.failure.center)
        return d


@dataclass
class Snapshot:
    positions: np.ndarray
    present: np.ndarray


def reflect(x: np.ndarray) -> np.ndarray:
    """Fold coordinates back into [0, 1] by mirror reflection at the walls."""
    y = np.mod(x, 2.0)
    return np.where(y > 1.0, 2.0 - y, y)


def generate(cfg: NetworkConfig) -> List[Snapshot]:
    cfg.validate()
    rng = np.random.Generator(np.random.Philox(cfg.seed))
    pos = rng.random((cfg.n, 2))
    out = []
    for t in range(cfg.T):
        if t:
            pos = reflect(pos + cfg.step_scale * rng.standard_normal((cfg.n, 2)))
        present = np.ones(cfg.n, dtype=bool)
        if cfg.failure is not None:
            rad = cfg.failure.radius_at(t)
            present = np.hypot(*(pos - np.asarray(cfg.failure.center)).T) >= rad if rad > 0 else present
        out.append(Snapshot(pos.copy(), np.asarray(present, dtype=bool)))
    return out


def adjacency(s: Snapshot, r: float) -> np.ndarray:
    diff = s.positions[:, None, :] - s.positions[None, :, :]
    dist = np.sqrt((diff ** 2).sum(-1))
    A = dist < 2 * r
    A &= s.present[:, None] & s.present[None, :]
    np.fill_diagonal(A, False)
    return A.astype(np.int8)
