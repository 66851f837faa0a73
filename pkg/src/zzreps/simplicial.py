"""Simplices, face-closed complexes and chains over Z2.

A simplex is a plain tuple of strictly increasing non-negative vertex ids.
Chains carry coefficient 1 on their support, so chain addition is the
symmetric difference of supports and the boundary operator carries no signs.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import lru_cache
from itertools import combinations
from typing import Dict, FrozenSet, Iterable, Iterator, List, Optional, Sequence, Tuple

import numpy as np

Simplex = Tuple[int, ...]


class ComplexError(ValueError):
    """An operation would break face-closure or references a missing simplex."""


class MissingFaceError(ComplexError):
    pass


class NotMaximalError(ComplexError):
    pass


class SimplexNotInComplexError(ComplexError):
    pass


def make_simplex(vertices: Iterable[int]) -> Simplex:
    """Validate ``vertices`` and return them as a canonical simplex tuple."""
    s = tuple(int(v) for v in vertices)
    if not s:
        raise ValueError("a simplex needs at least one vertex")
    if s[0] < 0:
        raise ValueError(f"negative vertex id in {s}")
    for a, b in zip(s, s[1:]):
        if a >= b:
            raise ValueError(f"vertices must be strictly increasing: {s}")
    return s


def dim(s: Simplex) -> int:
    return len(s) - 1


@lru_cache(maxsize=1 << 16)
def facets(s: Simplex) -> Tuple[Simplex, ...]:
    """Codimension-one faces, in lexicographic order."""
    if len(s) == 1:
        return ()
    return tuple(s[:i] + s[i + 1:] for i in range(len(s) - 1, -1, -1))


@dataclass(frozen=True)
class Z2Chain:
    """A chain of ``dimension``-simplices with coefficient 1 on ``support``."""

    dimension: int
    support: FrozenSet[Simplex] = field(default_factory=frozenset)

    def __post_init__(self):
        if not isinstance(self.support, frozenset):
            object.__setattr__(self, "support", frozenset(self.support))
        for s in self.support:
            if len(s) - 1 != self.dimension:
                raise ValueError(f"simplex {s} does not have dimension {self.dimension}")

    @classmethod
    def of(cls, simplices: Iterable[Sequence[int]], dimension: Optional[int] = None) -> "Z2Chain":
        support = frozenset(make_simplex(s) for s in simplices)
        if dimension is None:
            if not support:
                raise ValueError("dimension is required for an empty chain")
            dimension = len(next(iter(support))) - 1
        return cls(dimension, support)

    def __add__(self, other: "Z2Chain") -> "Z2Chain":
        if other.dimension != self.dimension:
            raise ValueError("cannot add chains of different dimension")
        return Z2Chain(self.dimension, self.support ^ other.support)

    __sub__ = __add__

    def __bool__(self) -> bool:
        return bool(self.support)

    def __len__(self) -> int:
        return len(self.support)

    def __iter__(self) -> Iterator[Simplex]:
        return iter(sorted(self.support))

    def __contains__(self, s) -> bool:
        return tuple(s) in self.support

    def sorted(self) -> List[Simplex]:
        return sorted(self.support)


def boundary(s: Sequence[int]) -> Z2Chain:
    s = make_simplex(s)
    d = len(s) - 1
    if d == 0:
        return Z2Chain(-1)
    return Z2Chain(d - 1, frozenset(facets(s)))


class SimplicialComplex:
    """A finite face-closed set of simplices.

    Every simplex gets a per-dimension ordinal when it is inserted; ordinals
    grow monotonically and are never reused, so a simplex that is removed and
    re-added receives a fresh one.  Cofacet counts are kept so that the
    maximality test on removal is O(1).
    """

    def __init__(self, simplices: Iterable[Sequence[int]] = ()):
        self._ordinal: Dict[int, Dict[Simplex, int]] = {}
        self._next: Dict[int, int] = {}
        self._cofacets: Dict[Simplex, int] = {}
        for s in sorted({make_simplex(s) for s in simplices}, key=lambda s: (len(s), s)):
            self.add(s)

    # -- queries -----------------------------------------------------------
    def __contains__(self, s) -> bool:
        s = tuple(s)
        return s in self._ordinal.get(len(s) - 1, ())

    def __len__(self) -> int:
        return sum(len(v) for v in self._ordinal.values())

    def __iter__(self) -> Iterator[Simplex]:
        for d in sorted(self._ordinal):
            yield from sorted(self._ordinal[d])

    def __eq__(self, other) -> bool:
        if not isinstance(other, SimplicialComplex):
            return NotImplemented
        return self.simplex_set() == other.simplex_set()

    def __repr__(self) -> str:
        counts = ", ".join(f"{d}:{len(self._ordinal[d])}" for d in sorted(self._ordinal) if self._ordinal[d])
        return f"SimplicialComplex({{{counts}}})"

    @property
    def dimension(self) -> int:
        live = [d for d, v in self._ordinal.items() if v]
        return max(live) if live else -1

    def simplices(self, d: int) -> List[Simplex]:
        """The ``d``-simplices, sorted lexicographically."""
        return sorted(self._ordinal.get(d, ()))

    def count(self, d: int) -> int:
        return len(self._ordinal.get(d, ()))

    def simplex_set(self) -> FrozenSet[Simplex]:
        return frozenset(s for v in self._ordinal.values() for s in v)

    def vertices(self) -> List[int]:
        return [s[0] for s in self.simplices(0)]

    def ordinal(self, s: Simplex) -> int:
        try:
            return self._ordinal[len(s) - 1][s]
        except KeyError:
            raise SimplexNotInComplexError(f"{s} is not in the complex") from None

    def is_maximal(self, s: Simplex) -> bool:
        return self._cofacets.get(tuple(s), 0) == 0

    def copy(self) -> "SimplicialComplex":
        new = SimplicialComplex()
        new._ordinal = {d: dict(v) for d, v in self._ordinal.items()}
        new._next = dict(self._next)
        new._cofacets = dict(self._cofacets)
        return new

    def neighbors(self) -> Dict[int, List[int]]:
        """1-skeleton adjacency lists, neighbours in ascending order."""
        adj: Dict[int, List[int]] = {v: [] for v in self.vertices()}
        for a, b in self.simplices(1):
            adj[a].append(b)
            adj[b].append(a)
        for v in adj:
            adj[v].sort()
        return adj

    # -- mutation ----------------------------------------------------------
    def check_addable(self, s: Simplex) -> None:
        if s in self:
            raise ComplexError(f"{s} is already in the complex")
        for f in facets(s):
            if f not in self:
                raise MissingFaceError(f"cannot add {s}: face {f} is missing")

    def check_removable(self, s: Simplex) -> None:
        if s not in self:
            raise SimplexNotInComplexError(f"cannot remove {s}: not in the complex")
        if not self.is_maximal(s):
            raise NotMaximalError(f"cannot remove {s}: it has a coface in the complex")

    def add(self, s: Sequence[int]) -> int:
        """Insert ``s`` in place and return its new ordinal."""
        s = make_simplex(s)
        self.check_addable(s)
        d = len(s) - 1
        ordinal = self._next.get(d, 0)
        self._next[d] = ordinal + 1
        self._ordinal.setdefault(d, {})[s] = ordinal
        self._cofacets[s] = 0
        for f in facets(s):
            self._cofacets[f] += 1
        return ordinal

    def remove(self, s: Sequence[int]) -> int:
        """Delete the maximal simplex ``s`` in place and return its old ordinal."""
        s = make_simplex(s)
        self.check_removable(s)
        ordinal = self._ordinal[len(s) - 1].pop(s)
        del self._cofacets[s]
        for f in facets(s):
            self._cofacets[f] -= 1
        return ordinal

    def is_face_closed(self) -> bool:
        return all(f in self for s in self for f in facets(s))


def add_simplex(K: SimplicialComplex, s: Sequence[int]) -> SimplicialComplex:
    new = K.copy()
    new.add(s)
    return new


def remove_simplex(K: SimplicialComplex, s: Sequence[int]) -> SimplicialComplex:
    new = K.copy()
    new.remove(s)
    return new


def boundary_of_chain(c: Z2Chain, K: Optional[SimplicialComplex] = None) -> Z2Chain:
    """Z2 boundary of ``c``; with ``K`` given, every support simplex must be in K."""
    out: set = set()
    for s in c.support:
        if K is not None and s not in K:
            raise SimplexNotInComplexError(f"{s} is not in the complex")
        for f in facets(s):
            out ^= {f}
    return Z2Chain(c.dimension - 1, frozenset(out))


def is_cycle(c: Z2Chain) -> bool:
    return not boundary_of_chain(c)


def _check_adjacency(adjacency) -> np.ndarray:
    A = np.asarray(adjacency)
    if A.ndim != 2 or A.shape[0] != A.shape[1]:
        raise ValueError(f"adjacency must be square, got shape {A.shape}")
    if not np.isin(A, (0, 1)).all():
        raise ValueError("adjacency entries must be 0 or 1")
    A = A.astype(bool)
    if not (A == A.T).all():
        i, j = np.argwhere(A != A.T)[0]
        raise ValueError(f"adjacency is not symmetric at ({i}, {j})")
    if A.diagonal().any():
        raise ValueError("adjacency must have a zero diagonal")
    return A


def flag_triangles(edges: Iterable[Tuple[int, int]]) -> List[Simplex]:
    """All triangles of the flag complex of a graph, lexicographically sorted."""
    nbrs: Dict[int, set] = {}
    for a, b in edges:
        nbrs.setdefault(a, set()).add(b)
        nbrs.setdefault(b, set()).add(a)
    tris = []
    for a in sorted(nbrs):
        up = sorted(v for v in nbrs[a] if v > a)
        for i, b in enumerate(up):
            for c in up[i + 1:]:
                if c in nbrs[b]:
                    tris.append((a, b, c))
    return tris


def rips_2skeleton(adjacency, present: Optional[Sequence[bool]] = None) -> SimplicialComplex:
    """2-skeleton of the Rips (flag) complex of a 0/1 adjacency matrix.

    Vertices are the row indices; with a ``present`` mask only present nodes
    become vertices, and their rows must be zero otherwise.
    """
    A = _check_adjacency(adjacency)
    n = A.shape[0]
    if present is None:
        present = [True] * n
    elif len(present) != n:
        raise ValueError("presence mask length does not match the matrix")
    for i in range(n):
        if not present[i] and A[i].any():
            raise ValueError(f"node {i} is masked out but has edges")
    edges = [(int(i), int(j)) for i, j in zip(*np.nonzero(np.triu(A, 1)))]
    K = SimplicialComplex()
    for v in range(n):
        if present[v]:
            K.add((v,))
    for e in edges:
        K.add(e)
    for t in flag_triangles(edges):
        K.add(t)
    return K


def all_faces(simplices: Iterable[Sequence[int]]) -> List[Simplex]:
    """Face closure of a collection of simplices, sorted by (dimension, lex)."""
    out = set()
    for s in simplices:
        s = make_simplex(s)
        for k in range(1, len(s) + 1):
            out.update(combinations(s, k))
    return sorted(out, key=lambda s: (len(s), s))
