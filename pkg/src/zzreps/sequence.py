"""Refinement of a coarse complex sequence into single-simplex events.

Consecutive complexes are joined through their union: first every simplex of
``K_b - K_a`` is added (ascending dimension, then lexicographic), then every
simplex of ``K_a - K_b`` is removed (descending dimension, then
lexicographic).  Both orders keep every prefix face-closed.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from typing import List, Optional, Sequence, Tuple

from .simplicial import SimplicialComplex, Simplex, facets, rips_2skeleton
from .tracker import Event, EventKind


@dataclass
class CoarseStep:
    index: int
    """0-based position in the coarse sequence."""
    step: int
    """Fine step after which the stream sits at this coarse complex (0 = empty)."""
    union_step: Optional[int]
    """Fine step at which the union with the next complex is reached."""
    first_step: int
    """First fine step of the refinement block that ends at this complex."""


@dataclass
class CoarseSequence:
    complexes: List[SimplicialComplex]
    steps: List[CoarseStep]

    def __len__(self) -> int:
        return len(self.steps)

    def block_of(self, step: int) -> int:
        """Index of the coarse complex whose refinement block contains ``step``."""
        for cs in self.steps:
            if cs.first_step <= step <= cs.step:
                return cs.index
        raise KeyError(step)


def union_refine(Ka: SimplicialComplex, Kb: SimplicialComplex) -> List[Tuple[EventKind, Simplex]]:
    A, B = Ka.simplex_set(), Kb.simplex_set()
    adds = sorted(B - A, key=lambda s: (len(s), s))
    removes = sorted(A - B, key=lambda s: (-len(s), s))
    return [(EventKind.ADD, s) for s in adds] + [(EventKind.REMOVE, s) for s in removes]


def build_stream(seq: Sequence[SimplicialComplex]) -> Tuple[List[Event], CoarseSequence]:
    """Concatenated refinement starting from the empty complex."""
    if not seq:
        raise ValueError("need at least one complex")
    pairs: List[Tuple[EventKind, Simplex]] = list(union_refine(SimplicialComplex(), seq[0]))
    steps = [CoarseStep(0, len(pairs), None, 1)]
    for j in range(1, len(seq)):
        seg = union_refine(seq[j - 1], seq[j])
        n_add = sum(1 for k, _ in seg if k is EventKind.ADD)
        start = len(pairs)
        steps[-1].union_step = start + n_add
        pairs.extend(seg)
        steps.append(CoarseStep(j, len(pairs), None, start + 1))
    events = [Event(k, s, i) for i, (k, s) in enumerate(pairs, 1)]
    return events, CoarseSequence(list(seq), steps)


def complexes_from_adjacency_sequence(mats, masks: Optional[Sequence[Sequence[bool]]] = None) -> List[SimplicialComplex]:
    """Rips 2-skeleton of each adjacency matrix (with optional presence masks)."""
    if not len(mats):
        return []
    n = len(mats[0])
    out = []
    for i, A in enumerate(mats):
        if len(A) != n:
            raise ValueError(f"matrix {i} has {len(A)} rows, expected {n}")
        try:
            out.append(rips_2skeleton(A, None if masks is None else masks[i]))
        except ValueError as exc:
            raise ValueError(f"matrix {i}: {exc}") from None
    return out


def random_zigzag_stream(rng: random.Random, n_vertices: int = 8, n_events: int = 200, top_dim: int = 2,
                         p_add: float = 0.6) -> List[Event]:
    """A valid random add/remove stream over at most ``n_vertices`` vertices.

    Each step picks, with probability ``p_add``, a random addable simplex of
    dimension <= ``top_dim`` (all facets present), otherwise a random maximal
    simplex to remove.
    """
    from itertools import combinations

    universe = [s for k in range(1, top_dim + 2) for s in combinations(range(n_vertices), k)]
    K = SimplicialComplex()
    events = []
    while len(events) < n_events:
        addable = [s for s in universe if s not in K and all(f in K for f in facets(s))]
        removable = [s for s in K if K.is_maximal(s)]
        if addable and (not removable or rng.random() < p_add):
            s, kind = rng.choice(addable), EventKind.ADD
            K.add(s)
        elif removable and p_add < 1.0:
            s, kind = rng.choice(removable), EventKind.REMOVE
            K.remove(s)
        else:
            break
        events.append(Event(kind, s, len(events) + 1))
    return events
