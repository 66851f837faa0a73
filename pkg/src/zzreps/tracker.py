"""Zigzag persistence with tracked representative cycles.

The tracker consumes single-simplex additions and removals.  For every
homology dimension it keeps the ordered representative matrix ``W`` and the
birth vector ``b``; the span of the first j columns is the j-th space of the
right filtration, so interval pairing only ever needs the column order.

Classification does not rerun an elimination per event.  Alongside ``W``
each dimension keeps an echelon basis of its cycle space in which every
element ``e`` records an exact decomposition

    e.vec = sum(w_k for k in e.tag) + boundary(e.comb)

where ``tag`` is a bitset of stable column ids of ``W`` and ``comb`` a chain
one dimension up.  Reducing ``boundary(sigma)`` against that basis yields its
class in the ``W`` coordinates directly, and every update of ``W`` is
mirrored by a substitution on the tags.
"""

from __future__ import annotations

import bisect
import enum
from collections import deque
from dataclasses import dataclass, field, replace
from typing import Callable, Dict, Iterable, List, Optional, Sequence, Set, Tuple

from .simplicial import (
    ComplexError,
    SimplicialComplex,
    Simplex,
    Z2Chain,
    facets,
    make_simplex,
)


class EventKind(str, enum.Enum):
    ADD = "A"
    REMOVE = "R"


class Change(str, enum.Enum):
    BIRTH = "birth"
    DEATH = "death"


@dataclass(frozen=True)
class Event:
    kind: EventKind
    simplex: Simplex
    step: int

    @classmethod
    def add(cls, simplex: Sequence[int], step: int) -> "Event":
        return cls(EventKind.ADD, make_simplex(simplex), step)

    @classmethod
    def remove(cls, simplex: Sequence[int], step: int) -> "Event":
        return cls(EventKind.REMOVE, make_simplex(simplex), step)


def events_from(pairs: Iterable[Tuple[str, Sequence[int]]], start: int = 1) -> List[Event]:
    """Number ``("A"|"R", simplex)`` pairs into events starting at ``start``."""
    return [Event(EventKind(k), make_simplex(s), i) for i, (k, s) in enumerate(pairs, start)]


class TrackerError(RuntimeError):
    """An event could not be applied."""

    def __init__(self, step: int, reason: str):
        super().__init__(f"step {step}: {reason}")
        self.step = step
        self.reason = reason


class InconsistencyError(AssertionError):
    """Internal state contradicts itself; never caused by valid input."""


@dataclass
class Interval:
    """A bar ``[birth, death)`` with its representative cycle over time.

    ``death`` is the step of the event that kills the class, so the class is
    alive at steps ``birth .. death - 1``; ``None`` means still alive.  The
    representative history is stored as change points: the cycle at step s
    is the last entry with step <= s.
    """

    dim: int
    birth: int
    death: Optional[int] = None
    changes: List[Tuple[int, Z2Chain]] = field(default_factory=list)
    last_step: Optional[int] = None
    sizes: Dict[int, int] = field(default_factory=dict)

    @property
    def is_open(self) -> bool:
        return self.death is None

    @property
    def end(self) -> int:
        """Last step at which the class is alive."""
        if self.death is not None:
            return self.death - 1
        return self.last_step if self.last_step is not None else self.changes[-1][0]

    def alive_at(self, step: int) -> bool:
        return self.birth <= step <= self.end

    def cycle_at(self, step: int) -> Z2Chain:
        if not self.alive_at(step):
            raise KeyError(f"interval [{self.birth}, {self.death}) is not alive at step {step}")
        keys = [s for s, _ in self.changes]
        return self.changes[bisect.bisect_right(keys, step) - 1][1]

    @property
    def history(self) -> Dict[int, Z2Chain]:
        """Step -> representative cycle, for every step the class is alive."""
        out = {}
        for k, (s, c) in enumerate(self.changes):
            stop = self.changes[k + 1][0] if k + 1 < len(self.changes) else self.end + 1
            for t in range(s, stop):
                out[t] = c
        return out

    def key(self) -> Tuple[int, int, float]:
        return (self.dim, self.birth, float("inf") if self.death is None else self.death)


@dataclass
class TrackedBarcode:
    intervals: List[Interval]
    n_events: int

    @property
    def closed(self) -> List[Interval]:
        return [iv for iv in self.intervals if not iv.is_open]

    @property
    def open(self) -> List[Interval]:
        return [iv for iv in self.intervals if iv.is_open]

    def in_dim(self, p: int) -> List[Interval]:
        return [iv for iv in self.intervals if iv.dim == p]

    def live_count(self, step: int, p: int) -> int:
        return sum(1 for iv in self.intervals if iv.dim == p and iv.alive_at(step))

    def pairs(self, p: Optional[int] = None) -> List[Tuple[int, int, Optional[int]]]:
        """Sorted multiset of (dim, birth, death)."""
        out = [(iv.dim, iv.birth, iv.death) for iv in self.intervals if p is None or iv.dim == p]
        return sorted(out, key=lambda t: (t[0], t[1], float("inf") if t[2] is None else t[2]))


@dataclass
class StepOutcome:
    event: Event
    change: Change
    dim: int
    interval: Interval
    """The interval born (birth) or closed (death) by this event."""


class _Column:
    __slots__ = ("cid", "chain", "interval")

    def __init__(self, cid: int, chain: int, interval: Interval):
        self.cid = cid
        self.chain = chain
        self.interval = interval


class _Dimension:
    """W, b and the decorated cycle-space basis for one homology dimension."""

    def __init__(self, p: int):
        self.p = p
        self.columns: List[_Column] = []
        # pivot -> [vec, tag, comb]
        self.basis: Dict[int, List[int]] = {}

    def reduce(self, v: int) -> Tuple[int, int, int]:
        tag = comb = 0
        basis = self.basis
        while v:
            hit = basis.get(v.bit_length() - 1)
            if hit is None:
                break
            v ^= hit[0]
            tag ^= hit[1]
            comb ^= hit[2]
        return v, tag, comb


def shortest_path(adj: Dict[int, Set[int]], a: int, b: int, skip: Optional[Tuple[int, int]] = None) -> Optional[List[int]]:
    """BFS path from a to b; neighbours expanded in ascending id order."""
    prev = {a: a}
    queue = deque([a])
    while queue:
        u = queue.popleft()
        if u == b:
            break
        for w in sorted(adj.get(u, ())):
            if w in prev or (skip is not None and {u, w} == set(skip)):
                continue
            prev[w] = u
            queue.append(w)
    if b not in prev:
        return None
    path = [b]
    while path[-1] != a:
        path.append(prev[path[-1]])
    return path[::-1]


def shortest_cycle_through(K: SimplicialComplex, edge: Sequence[int]) -> Z2Chain:
    """Shortest cycle made of ``edge`` plus a BFS path in K between its endpoints."""
    edge = make_simplex(edge)
    if len(edge) != 2:
        raise ValueError(f"{edge} is not an edge")
    if edge in K:
        raise ComplexError(f"{edge} is already in the complex")
    a, b = edge
    adj: Dict[int, Set[int]] = {v: set(ns) for v, ns in K.neighbors().items()}
    path = shortest_path(adj, a, b)
    if path is None:
        raise ValueError(f"endpoints of {edge} are not connected")
    es = [tuple(sorted(e)) for e in zip(path, path[1:])]
    return Z2Chain(1, frozenset(es) | {edge})


class ZigzagTracker:
    """Sequential zigzag persistence state with representative cycles.

    ``check`` mode re-derives nothing from scratch but asserts the internal
    consistency conditions that are cheap to test (used by the test-suite).
    """

    def __init__(self, check: bool = False):
        self.complex = SimplicialComplex()
        self.step_index = 0
        self._dims: Dict[int, _Dimension] = {}
        self._simplex_of: Dict[int, Dict[int, Simplex]] = {}
        self._adj: Dict[int, Set[int]] = {}
        self._next_cid = 0
        self.intervals: List[Interval] = []
        self.check = check

    # -- helpers -----------------------------------------------------------
    def _dim(self, p: int) -> _Dimension:
        d = self._dims.get(p)
        if d is None:
            d = self._dims[p] = _Dimension(p)
        return d

    def _boundary_bits(self, s: Simplex) -> int:
        v = 0
        ordinal = self.complex.ordinal
        for f in facets(s):
            v |= 1 << ordinal(f)
        return v

    def _chain(self, p: int, v: int) -> Z2Chain:
        lookup = self._simplex_of[p]
        out = []
        while v:
            low = v & -v
            out.append(lookup[low.bit_length() - 1])
            v ^= low
        return Z2Chain(p, frozenset(out))

    def _bits(self, c: Z2Chain) -> int:
        v = 0
        for s in c.support:
            v |= 1 << self.complex.ordinal(s)
        return v

    def _new_column(self, p: int, chain: int, step: int) -> _Column:
        iv = Interval(p, step, changes=[(step, self._chain(p, chain))])
        self.intervals.append(iv)
        col = _Column(self._next_cid, chain, iv)
        self._next_cid += 1
        return col

    def _validate(self, event: Event) -> None:
        if event.step != self.step_index + 1:
            raise TrackerError(event.step, f"expected step {self.step_index + 1}, got {event.step}")
        try:
            if event.kind is EventKind.ADD:
                self.complex.check_addable(event.simplex)
            else:
                self.complex.check_removable(event.simplex)
        except ComplexError as exc:
            raise TrackerError(event.step, str(exc)) from None

    # -- public API --------------------------------------------------------
    def classify(self, event: Event) -> Tuple[Change, int]:
        """Birth or death, and the homology dimension it affects."""
        self._validate(event)
        s = event.simplex
        p = len(s) - 1
        if event.kind is EventKind.ADD:
            if p == 0:
                return Change.BIRTH, 0
            residual, tag, _ = self._dim(p - 1).reduce(self._boundary_bits(s))
            if residual:
                raise InconsistencyError(f"boundary of {s} is not in the tracked cycle space")
            return (Change.BIRTH, p) if tag == 0 else (Change.DEATH, p - 1)
        bit = 1 << self.complex.ordinal(s)
        if any(col.chain & bit for col in self._dim(p).columns):
            return Change.DEATH, p
        return Change.BIRTH, p - 1

    def step(self, event: Event) -> StepOutcome:
        change, q = self.classify(event)
        if event.kind is EventKind.ADD:
            out = self._add(event, change)
        else:
            out = self._remove(event, change)
        self.step_index = event.step
        if self.check:
            self._self_check()
        return out

    def run(self, events: Iterable[Event], callback: Optional[Callable[["ZigzagTracker", StepOutcome], None]] = None) -> "ZigzagTracker":
        for e in events:
            out = self.step(e)
            if callback is not None:
                callback(self, out)
        return self

    def representatives(self, p: int) -> List[Tuple[int, Z2Chain]]:
        """(birth step, cycle) per column of W in dimension p, in order."""
        d = self._dims.get(p)
        if d is None:
            return []
        return [(col.interval.birth, self._chain(p, col.chain)) for col in d.columns]

    def birth_vector(self, p: int) -> List[int]:
        d = self._dims.get(p)
        return [col.interval.birth for col in d.columns] if d else []

    def rank(self, p: int) -> int:
        d = self._dims.get(p)
        return len(d.columns) if d else 0

    def live_intervals(self, p: Optional[int] = None) -> List[Interval]:
        return [col.interval for d in self._dims.values() if p is None or d.p == p for col in d.columns]

    def barcode(self, dims: Optional[Iterable[int]] = None) -> TrackedBarcode:
        """Snapshot of all intervals so far; open ones are copies ending now."""
        keep = None if dims is None else set(dims)
        out = []
        for iv in self.intervals:
            if keep is not None and iv.dim not in keep:
                continue
            if iv.is_open:
                iv = replace(iv, changes=list(iv.changes), last_step=self.step_index, sizes=dict(iv.sizes))
            out.append(iv)
        return TrackedBarcode(out, self.step_index)

    # -- the four cases ----------------------------------------------------
    def _add(self, event: Event, change: Change) -> StepOutcome:
        s, step = event.simplex, event.step
        p = len(s) - 1
        K = self.complex
        if p == 0:
            o = K.add(s)
            self._simplex_of.setdefault(0, {})[o] = s
            self._adj[s[0]] = set()
            return self._birth_by_addition(0, 1 << o, step, event)

        residual, alpha, comb = self._dim(p - 1).reduce(self._boundary_bits(s))
        o = K.add(s)
        self._simplex_of.setdefault(p, {})[o] = s
        if p == 1:
            a, b = s
            self._adj[a].add(b)
            self._adj[b].add(a)
        sbit = 1 << o

        if change is Change.BIRTH:
            if p == 1:
                path = shortest_path(self._adj, s[0], s[1], skip=s)
                if path is None:
                    raise InconsistencyError(f"no path closes a cycle through {s}")
                z = sbit
                for e in zip(path, path[1:]):
                    z |= 1 << K.ordinal(tuple(sorted(e)))
            else:
                # boundary(s) = boundary(comb), so s + comb is a cycle through s
                z = sbit ^ comb
            return self._birth_by_addition(p, z, step, event)

        # death in dimension p-1: [bd s] = sum alpha_k [w_k]; kill the last one
        d = self._dim(p - 1)
        pos = max(i for i, col in enumerate(d.columns) if alpha >> col.cid & 1)
        col = d.columns.pop(pos)
        lbit = 1 << col.cid
        # w_l = sum_{alpha - l} w_k + boundary(comb + s)
        subst_comb = comb ^ sbit
        for e in d.basis.values():
            if e[1] & lbit:
                e[1] ^= alpha
                e[2] ^= subst_comb
        col.interval.death = step
        return StepOutcome(event, Change.DEATH, p - 1, col.interval)

    def _birth_by_addition(self, p: int, z: int, step: int, event: Event) -> StepOutcome:
        d = self._dim(p)
        col = self._new_column(p, z, step)
        d.columns.append(col)
        pivot = z.bit_length() - 1
        if pivot in d.basis:
            raise InconsistencyError("new cycle does not have the new simplex as pivot")
        d.basis[pivot] = [z, 1 << col.cid, 0]
        return StepOutcome(event, Change.BIRTH, p, col.interval)

    def _remove(self, event: Event, change: Change) -> StepOutcome:
        s, step = event.simplex, event.step
        p = len(s) - 1
        K = self.complex
        o = K.ordinal(s)
        sbit = 1 << o

        if change is Change.BIRTH:
            q = p - 1
            dq = self._dim(q)
            w0 = self._boundary_bits(s)
            col = self._new_column(q, w0, step)
            dq.columns.insert(0, col)
            cbit = 1 << col.cid
            # boundary(s) leaves the boundary space and becomes column 0
            for e in dq.basis.values():
                if e[2] & sbit:
                    e[2] ^= sbit
                    e[1] ^= cbit
            if self.check and any(e[0] & sbit for e in self._dim(p).basis.values()):
                raise InconsistencyError(f"{s} lies on a cycle but no representative contains it")
            self._drop(s, o)
            return StepOutcome(event, Change.BIRTH, q, col.interval)

        d = self._dim(p)
        pos = next(i for i, col in enumerate(d.columns) if col.chain & sbit)
        dead = d.columns.pop(pos)
        wl = dead.chain
        lbit = 1 << dead.cid
        touched = 0
        for col in d.columns[pos:]:
            if col.chain & sbit:
                col.chain ^= wl
                touched |= 1 << col.cid
                col.interval.changes.append((step, self._chain(p, col.chain)))

        # cycle-space basis: eliminate sigma, then rewrite tags in the new W
        holders = [e for e in d.basis.values() if e[0] & sbit]
        u = min(holders, key=lambda e: e[0].bit_length())
        for e in holders:
            if e is not u:
                e[0] ^= u[0]
                e[1] ^= u[1]
                e[2] ^= u[2]
        del d.basis[u[0].bit_length() - 1]
        for e in d.basis.values():
            t = e[1]
            if t & (lbit | touched):
                if self.check and ((t & lbit != 0) ^ (bin(t & touched).count("1") & 1)):
                    raise InconsistencyError("cycle-space element still involves the dying class")
                e[1] = t & ~lbit
        if p >= 1:
            # boundary(s) = boundary(w_l - s): keep lower-dimensional combs valid
            for e in self._dim(p - 1).basis.values():
                if e[2] & sbit:
                    e[2] ^= wl
        self._drop(s, o)
        dead.interval.death = step
        return StepOutcome(event, Change.DEATH, p, dead.interval)

    def _drop(self, s: Simplex, o: int) -> None:
        self.complex.remove(s)
        if len(s) == 2:
            a, b = s
            self._adj[a].discard(b)
            self._adj[b].discard(a)
        elif len(s) == 1:
            del self._adj[s[0]]

    # -- consistency -------------------------------------------------------
    def _self_check(self) -> None:
        for p, d in self._dims.items():
            chains = {col.cid: col.chain for col in d.columns}
            live = 0
            for o in self.complex._ordinal.get(p, {}).values():
                live |= 1 << o
            for col in d.columns:
                if col.chain & ~live:
                    raise InconsistencyError(f"column in dim {p} references a removed simplex")
            for e in d.basis.values():
                v = e[2] and self._boundary_of_bits(p + 1, e[2])
                t = e[1]
                while t:
                    lowbit = t & -t
                    cid = lowbit.bit_length() - 1
                    if cid not in chains:
                        raise InconsistencyError(f"tag references dead column {cid}")
                    v ^= chains[cid]
                    t ^= lowbit
                if v != e[0]:
                    raise InconsistencyError(f"cycle-space element in dim {p} lost its decomposition")

    def _boundary_of_bits(self, p: int, v: int) -> int:
        lookup = self._simplex_of[p]
        out = 0
        while v:
            low = v & -v
            out ^= self._boundary_bits(lookup[low.bit_length() - 1])
            v ^= low
        return out


def run(events: Iterable[Event], dims: Optional[Iterable[int]] = (0, 1), check: bool = False) -> TrackedBarcode:
    """Track a whole event stream from the empty complex."""
    return ZigzagTracker(check=check).run(events).barcode(dims)


def current_representatives(tracker: ZigzagTracker, p: int = 1) -> List[Tuple[int, Z2Chain]]:
    return tracker.representatives(p)
