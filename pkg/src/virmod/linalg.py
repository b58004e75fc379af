"""Incremental reduced row echelon form over Q(i).

Vectors are sparse mappings ``column -> GaussianRational``.  Columns are any
hashable keys; their order is set by ``key`` (default: natural order).
"""

from __future__ import annotations

from .scalar import GaussianRational, as_scalar
from .tensor import TensorElement


def as_vector(x) -> dict:
    if isinstance(x, TensorElement):
        return x.terms()
    out = {}
    for c, v in dict(x).items():
        if type(v) is not GaussianRational:
            v = as_scalar(v)
        if v:
            out[c] = v
    return out


class SpanBasis:
    """Row space of a matrix kept in reduced row echelon form.

    Every stored row has a pivot coefficient of 1 in a column where all other
    rows vanish, and the pivot is the row's first nonzero column in ``key``
    order.
    """

    def __init__(self, vectors=(), key=None):
        self._key = key or (lambda c: c)
        self._rows: dict = {}  # pivot column -> row
        for v in vectors:
            self.add(v)

    @property
    def rank(self) -> int:
        return len(self._rows)

    def __len__(self):
        return len(self._rows)

    @property
    def pivots(self) -> list:
        return sorted(self._rows, key=self._key)

    def rows(self) -> list[dict]:
        return [dict(self._rows[p]) for p in self.pivots]

    def reduce(self, vec) -> dict:
        """Residual of ``vec`` after elimination; zero iff ``vec`` is in the span."""
        v = as_vector(vec)
        rows = self._rows
        for p in [c for c in v if c in rows]:
            c = v.get(p)
            if not c:
                continue
            for col, x in rows[p].items():
                y = v.get(col)
                y = -(x * c) if y is None else y - x * c
                if y:
                    v[col] = y
                else:
                    v.pop(col, None)
        return v

    def contains(self, vec) -> bool:
        return not self.reduce(vec)

    __contains__ = contains

    def add(self, vec) -> bool:
        """Insert ``vec``; return True if it enlarged the span."""
        r = self.reduce(vec)
        if not r:
            return False
        pivot = min(r, key=self._key)
        inv = r[pivot].inverse()
        r = {c: x * inv for c, x in r.items()}
        for other in self._rows.values():
            c = other.get(pivot)
            if c:
                for col, x in r.items():
                    y = other.get(col)
                    y = -(x * c) if y is None else y - x * c
                    if y:
                        other[col] = y
                    else:
                        other.pop(col, None)
        self._rows[pivot] = r
        return True

    def rows_with_pivot_in(self, cols) -> list[dict]:
        cols = set(cols)
        return [dict(self._rows[p]) for p in self.pivots if p in cols]


def rank_of(vectors, key=None) -> int:
    return SpanBasis(vectors, key=key).rank
