"""Hole size in hop units, from a hop-distance filtration.

Level 1 is the complex itself; level h (h >= 2) is the flag complex of the
graph joining every pair of vertices at most h hops apart in the level-1
1-skeleton.  The size of a 1-cycle is the last level at which its class is
still nontrivial (0 if it already bounds in the complex).

Triviality in the flag levels is decided after strong collapses: a vertex v
whose closed neighbourhood lies inside that of a neighbour u can be folded
onto u.  The fold is a simplicial map contiguous to the identity, so it
preserves the class of every cycle pushed through it, and dense levels
shrink to a handful of vertices before any elimination is done.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Dict, Iterable, List, Optional, Sequence, Tuple

import numpy as np

from .simplicial import SimplicialComplex, Simplex, Z2Chain, boundary_of_chain, flag_triangles
from .z2linalg import EchelonBasis

INF = np.iinfo(np.int64).max


def hop_distances(K: SimplicialComplex) -> Tuple[List[int], np.ndarray]:
    """(vertex ids, all-pairs hop counts); unreachable pairs hold ``INF``."""
    from scipy.sparse import csr_matrix
    from scipy.sparse.csgraph import shortest_path

    verts = K.vertices()
    idx = {v: i for i, v in enumerate(verts)}
    n = len(verts)
    edges = K.simplices(1)
    if not n:
        return verts, np.zeros((0, 0), dtype=np.int64)
    rows = [idx[a] for a, b in edges] + [idx[b] for a, b in edges]
    cols = [idx[b] for a, b in edges] + [idx[a] for a, b in edges]
    G = csr_matrix((np.ones(len(rows)), (rows, cols)), shape=(n, n))
    D = shortest_path(G, method="D", unweighted=True, directed=False)
    out = np.full((n, n), INF, dtype=np.int64)
    finite = np.isfinite(D)
    out[finite] = D[finite].astype(np.int64)
    return verts, out


def max_finite_distance(D: np.ndarray) -> int:
    finite = D[D != INF]
    return int(finite.max()) if finite.size else 0


@dataclass
class HopFiltration:
    base: SimplicialComplex
    levels: List[SimplicialComplex]
    max_depth: int


def _level_edges(verts: Sequence[int], D: np.ndarray, h: int) -> List[Tuple[int, int]]:
    i, j = np.nonzero(np.triu(D <= h, 1))
    return [(verts[a], verts[b]) for a, b in zip(i.tolist(), j.tolist())]


def build_hop_filtration(K: SimplicialComplex, max_depth: Optional[int] = None) -> HopFiltration:
    if max_depth is not None and max_depth < 1:
        raise ValueError("max_depth must be at least 1")
    verts, D = hop_distances(K)
    if max_depth is None:
        max_depth = max(1, max_finite_distance(D))
    levels = [K.copy()]
    for h in range(2, max_depth + 1):
        edges = _level_edges(verts, D, h)
        levels.append(SimplicialComplex([(v,) for v in verts] + edges + flag_triangles(edges)))
    return HopFiltration(K, levels, max_depth)


def _edge_bits(edges_index: Dict[Tuple[int, int], int], chain: Iterable[Tuple[int, int]]) -> int:
    v = 0
    for e in chain:
        v ^= 1 << edges_index[e]
    return v


def _bounds_in(edges: Sequence[Tuple[int, int]], triangles: Iterable[Simplex], cycles: Sequence[frozenset]) -> List[bool]:
    """Which edge-set cycles are boundaries of the given triangles."""
    index = {e: i for i, e in enumerate(edges)}
    basis = EchelonBasis()
    for a, b, c in triangles:
        basis.insert((1 << index[(a, b)]) | (1 << index[(a, c)]) | (1 << index[(b, c)]))
    return [basis.reduce(_edge_bits(index, z))[0] == 0 for z in cycles]


def _fold(e: Tuple[int, int], v: int, u: int) -> Optional[Tuple[int, int]]:
    a, b = e
    a = u if a == v else a
    b = u if b == v else b
    if a == b:
        return None
    return (a, b) if a < b else (b, a)


def _push(cycle: frozenset, v: int, u: int) -> frozenset:
    out: set = set()
    for e in cycle:
        f = _fold(e, v, u)
        if f is not None:
            out ^= {f}
    return frozenset(out)


def flag_cycles_trivial(nbrs: Dict[int, set], cycles: Sequence[frozenset]) -> List[bool]:
    """Whether each edge-set cycle bounds in the flag complex of the graph ``nbrs``."""
    nbrs = {v: set(ns) for v, ns in nbrs.items()}
    cycles = list(cycles)
    changed = True
    while changed:
        changed = False
        for v in sorted(nbrs):
            closed_v = nbrs[v] | {v}
            for u in sorted(nbrs[v]):
                if closed_v <= nbrs[u] | {u}:
                    cycles = [_push(z, v, u) if any(v in e for e in z) else z for z in cycles]
                    for w in nbrs[v]:
                        nbrs[w].discard(v)
                    del nbrs[v]
                    changed = True
                    break
    todo = [i for i, z in enumerate(cycles) if z]
    out = [True] * len(cycles)
    if todo:
        edges = sorted((a, b) for a in nbrs for b in nbrs[a] if a < b)
        res = _bounds_in(edges, flag_triangles(edges), [cycles[i] for i in todo])
        for i, r in zip(todo, res):
            out[i] = r
    return out


def hop_persistences(K: SimplicialComplex, cycles: Sequence[Z2Chain], max_depth: Optional[int] = None) -> List[int]:
    """Hop persistence of several 1-cycles of the same complex."""
    for c in cycles:
        if c.dimension != 1:
            raise ValueError("hop persistence is defined for 1-cycles")
        if boundary_of_chain(c, K):
            raise ValueError("chain is not a cycle")
    if not cycles:
        return []
    verts, D = hop_distances(K)
    diameter = max(1, max_finite_distance(D))
    cap = diameter if max_depth is None else max_depth
    sets = [frozenset(c.support) for c in cycles]
    # level 1 is the complex itself, with whatever triangles it has
    alive = [not t for t in _bounds_in(K.simplices(1), K.simplices(2), sets)]
    result = [0] * len(cycles)
    h = 1
    while any(alive) and h < cap:
        for i, a in enumerate(alive):
            if a:
                result[i] = h
        h += 1
        idx = [i for i, a in enumerate(alive) if a]
        nbrs = {v: set() for v in verts}
        for a, b in _level_edges(verts, D, h):
            nbrs[a].add(b)
            nbrs[b].add(a)
        trivial = flag_cycles_trivial(nbrs, [sets[i] for i in idx])
        for i, t in zip(idx, trivial):
            if t:
                alive[i] = False
    for i, a in enumerate(alive):
        if a:
            result[i] = h
    return result


def cycle_hop_persistence(K: SimplicialComplex, cycle: Z2Chain, max_depth: Optional[int] = None) -> int:
    return hop_persistences(K, [cycle], max_depth)[0]


def annotate_barcode(barcode, coarse, max_depth: Optional[int] = None, dims: Sequence[int] = (1,)):
    """Copy of ``barcode`` with ``sizes[coarse index]`` filled for each live 1-dim bar.

    The cycle used at coarse time j is the one held at the fine step where
    the stream sits at that coarse complex.
    """
    from dataclasses import replace

    from .tracker import TrackedBarcode

    out = [replace(iv, sizes=dict(iv.sizes), changes=list(iv.changes)) for iv in barcode.intervals]
    for cs in coarse.steps:
        if cs.step == 0:
            continue
        live = [iv for iv in out if iv.dim in dims and iv.alive_at(cs.step)]
        if not live:
            continue
        sizes = hop_persistences(coarse.complexes[cs.index], [iv.cycle_at(cs.step) for iv in live], max_depth)
        for iv, s in zip(live, sizes):
            iv.sizes[cs.index] = s
    return TrackedBarcode(out, barcode.n_events)
