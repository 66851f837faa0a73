"""Brute-force homology over Z2, recomputed from scratch on every call.

Nothing here is incremental or shared with the tracker; it exists to check
the tracker's answers.
"""

from __future__ import annotations

from typing import Dict, List, Sequence, Tuple

from .simplicial import SimplicialComplex, Simplex, Z2Chain, boundary_of_chain, facets
from .z2linalg import EchelonBasis, Z2Matrix, rank


class NotACycleError(ValueError):
    pass


def _index(K: SimplicialComplex, p: int) -> Dict[Simplex, int]:
    return {s: i for i, s in enumerate(K.simplices(p))}


def boundary_matrix(K: SimplicialComplex, p: int) -> Z2Matrix:
    """Matrix of the boundary map from p-chains to (p-1)-chains, lexicographic bases."""
    rows = K.simplices(p - 1) if p >= 1 else []
    idx = {s: i for i, s in enumerate(rows)}
    cols = []
    for s in K.simplices(p):
        v = 0
        for f in facets(s):
            v |= 1 << idx[f]
        cols.append(v)
    return Z2Matrix(list(rows), cols)


def chain_vector(K: SimplicialComplex, c: Z2Chain, index=None) -> int:
    idx = index if index is not None else _index(K, c.dimension)
    v = 0
    for s in c.support:
        try:
            v |= 1 << idx[s]
        except KeyError:
            raise ValueError(f"{s} is not in the complex") from None
    return v


def betti(K: SimplicialComplex, p: int) -> int:
    """dim C_p - rank d_p - rank d_{p+1}."""
    if p < 0:
        return 0
    n = K.count(p)
    return n - rank(boundary_matrix(K, p)) - rank(boundary_matrix(K, p + 1))


def betti_vector(K: SimplicialComplex, top: int = 2) -> Tuple[int, ...]:
    return tuple(betti(K, p) for p in range(top + 1))


def _require_cycle(K: SimplicialComplex, c: Z2Chain) -> None:
    if boundary_of_chain(c, K):
        raise NotACycleError("chain has nonzero boundary")


def is_boundary(K: SimplicialComplex, c: Z2Chain) -> bool:
    _require_cycle(K, c)
    if not c:
        return True
    B = boundary_matrix(K, c.dimension + 1)
    basis = EchelonBasis()
    for col in B.columns:
        basis.insert(col)
    residual, _ = basis.reduce(chain_vector(K, c))
    return residual == 0


def homologous(K: SimplicialComplex, c1: Z2Chain, c2: Z2Chain) -> bool:
    return is_boundary(K, c1 + c2)


def validate_basis(K: SimplicialComplex, p: int, cycles: Sequence[Z2Chain]) -> bool:
    """True iff ``cycles`` represent a basis of H_p(K)."""
    idx = _index(K, p)
    vecs = []
    for c in cycles:
        if c.dimension != p or not c:
            return False
        if any(s not in idx for s in c.support):
            return False
        if boundary_of_chain(c):
            return False
        vecs.append(chain_vector(K, c, idx))
    B = boundary_matrix(K, p + 1)
    r_b = rank(B)
    if len(vecs) != K.count(p) - rank(boundary_matrix(K, p)) - r_b:
        return False
    return rank(Z2Matrix(B.rows, B.columns + vecs)) == r_b + len(vecs)


def euler_characteristic(K: SimplicialComplex) -> int:
    return sum((-1) ** d * K.count(d) for d in range(K.dimension + 1))


def cycle_space_dimension(K: SimplicialComplex, p: int) -> int:
    return K.count(p) - rank(boundary_matrix(K, p))


def all_cycles_containing(K: SimplicialComplex, edge: Simplex, extra_edges: Sequence[Simplex] = ()) -> List[frozenset]:
    """Every simple cycle through ``edge`` in the 1-skeleton of K plus ``extra_edges``.

    Exhaustive DFS over simple paths; meant for graphs of a handful of vertices.
    """
    a, b = edge
    adj: Dict[int, List[int]] = {}
    for u, v in list(K.simplices(1)) + list(extra_edges):
        if (u, v) == (a, b):
            continue
        adj.setdefault(u, []).append(v)
        adj.setdefault(v, []).append(u)
    out = []

    def walk(path: List[int], seen: set):
        u = path[-1]
        if u == b:
            es = {tuple(sorted(e)) for e in zip(path, path[1:])}
            es.add((a, b))
            out.append(frozenset(es))
            return
        for w in adj.get(u, ()):
            if w not in seen:
                seen.add(w)
                path.append(w)
                walk(path, seen)
                path.pop()
                seen.discard(w)

    walk([a], {a})
    return out
