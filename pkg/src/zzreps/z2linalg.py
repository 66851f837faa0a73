"""Dense linear algebra over GF(2) with Python ints as bit-vectors.

Bit ``r`` of a column int is the entry in row ``r``.  The "low" (pivot) row
of a nonzero column is its highest set bit, which is what the standard
left-to-right persistence reduction eliminates on.  Over GF(2) every nonzero
coefficient is 1, so the ``c_j / c`` scaling of a column operation reduces
to "add the pivot column whenever the entry is set".
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Dict, Hashable, List, Optional, Sequence, Tuple


def low(v: int) -> int:
    """Index of the lowest nonzero row (highest set bit), -1 for zero."""
    return v.bit_length() - 1


def bits(v: int) -> List[int]:
    """Indices of the set bits of ``v`` in increasing order."""
    out = []
    while v:
        b = v & -v
        out.append(b.bit_length() - 1)
        v ^= b
    return out


def to_bits(entries: Sequence[int]) -> int:
    v = 0
    for i, x in enumerate(entries):
        if x & 1:
            v |= 1 << i
    return v


def from_bits(v: int, n: int) -> Tuple[int, ...]:
    return tuple((v >> i) & 1 for i in range(n))


@dataclass
class Z2Matrix:
    """Column-major GF(2) matrix with labelled rows."""

    rows: List[Hashable]
    columns: List[int] = field(default_factory=list)

    def __post_init__(self):
        limit = 1 << len(self.rows)
        for j, c in enumerate(self.columns):
            if c < 0 or c >= limit:
                raise ValueError(f"column {j} has entries outside {len(self.rows)} rows")

    @classmethod
    def from_lists(cls, columns: Sequence[Sequence[int]], rows: Optional[Sequence[Hashable]] = None) -> "Z2Matrix":
        n = len(columns[0]) if columns else (len(rows) if rows is not None else 0)
        if any(len(c) != n for c in columns):
            raise ValueError("ragged columns")
        return cls(list(rows) if rows is not None else list(range(n)), [to_bits(c) for c in columns])

    @classmethod
    def from_dense(cls, array) -> "Z2Matrix":
        """Build from a 2-d array-like indexed ``[row, column]``."""
        import numpy as np

        A = np.asarray(array, dtype=np.int64) & 1
        return cls(list(range(A.shape[0])), [to_bits(A[:, j]) for j in range(A.shape[1])])

    @property
    def shape(self) -> Tuple[int, int]:
        return len(self.rows), len(self.columns)

    def to_lists(self) -> List[Tuple[int, ...]]:
        return [from_bits(c, len(self.rows)) for c in self.columns]

    def matvec(self, x: Sequence[int]) -> int:
        if len(x) != len(self.columns):
            raise ValueError("coefficient vector length does not match column count")
        out = 0
        for c, a in zip(self.columns, x):
            if a & 1:
                out ^= c
        return out


class EchelonBasis:
    """Incrementally built basis with distinct pivots.

    Each stored vector remembers which inserted vectors it is the sum of,
    so a successful reduction also yields coordinates.
    """

    def __init__(self):
        self.pivots: Dict[int, Tuple[int, int]] = {}
        self._count = 0

    def __len__(self) -> int:
        return len(self.pivots)

    def reduce(self, v: int) -> Tuple[int, int]:
        """Return (residual, combination of inserted vectors that was added)."""
        combo = 0
        pivots = self.pivots
        while v:
            p = v.bit_length() - 1
            hit = pivots.get(p)
            if hit is None:
                break
            v ^= hit[0]
            combo ^= hit[1]
        return v, combo

    def insert(self, v: int) -> bool:
        """Insert ``v``; returns False (and stores nothing) if it is dependent."""
        tag = 1 << self._count
        self._count += 1
        r, combo = self.reduce(v)
        if not r:
            return False
        self.pivots[r.bit_length() - 1] = (r, combo ^ tag)
        return True


def rank(M: Z2Matrix) -> int:
    basis = EchelonBasis()
    return sum(basis.insert(c) for c in M.columns)


def solve_in_span(M: Z2Matrix, b) -> Optional[Tuple[int, ...]]:
    """Some x with ``M x = b`` over GF(2), or None if b is not in the column span.

    ``b`` may be a bit-vector int or a 0/1 sequence of length ``len(M.rows)``.
    """
    n = len(M.rows)
    if not isinstance(b, int):
        if len(b) != n:
            raise ValueError(f"right-hand side has length {len(b)}, matrix has {n} rows")
        b = to_bits(b)
    elif b >> n:
        raise ValueError("right-hand side has entries outside the row range")
    basis = EchelonBasis()
    for c in M.columns:
        basis.insert(c)
    r, combo = basis.reduce(b)
    if r:
        return None
    return from_bits(combo, len(M.columns))


@dataclass
class Reduction:
    matrix: Z2Matrix
    log: List[Tuple[int, int]]
    """(source, target) pairs: column ``source`` was added into column ``target``."""

    def pivots(self) -> Dict[int, int]:
        return {low(c): j for j, c in enumerate(self.matrix.columns) if c}


def col_reduce(M: Z2Matrix) -> Reduction:
    """Left-to-right column reduction on the lowest nonzero row."""
    cols = list(M.columns)
    log: List[Tuple[int, int]] = []
    owner: Dict[int, int] = {}
    for j in range(len(cols)):
        while cols[j]:
            p = low(cols[j])
            k = owner.get(p)
            if k is None:
                owner[p] = j
                break
            cols[j] ^= cols[k]
            log.append((k, j))
    return Reduction(Z2Matrix(list(M.rows), cols), log)


def replay(M: Z2Matrix, log: Sequence[Tuple[int, int]]) -> Z2Matrix:
    """Apply a column-operation log to ``M``."""
    cols = list(M.columns)
    for src, dst in log:
        cols[dst] ^= cols[src]
    return Z2Matrix(list(M.rows), cols)
