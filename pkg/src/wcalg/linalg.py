"""Exact rational linear algebra: fraction-free rank and an incremental
row basis for dependence tests.  No floating point; ranks must be exact."""

from __future__ import annotations

from fractions import Fraction
from math import gcd
from typing import Dict, Hashable, Iterable, List


def _integerize_rows(matrix) -> List[List[int]]:
    rows = []
    for row in matrix:
        den = 1
        for v in row:
            if isinstance(v, Fraction):
                den = den * v.denominator // gcd(den, v.denominator)
        rows.append([int(v * den) if isinstance(v, Fraction) else int(v) * den for v in row])
    return rows


def rank_fraction_matrix(matrix) -> int:
    """Rank of a dense matrix with int or Fraction entries, by fraction-free
    (Bareiss) elimination on row-integerized data."""
    rows = _integerize_rows(matrix)
    if not rows:
        return 0
    ncols = len(rows[0])
    rank = 0
    prev = 1
    col = 0
    while rank < len(rows) and col < ncols:
        pivot_row = None
        for r in range(rank, len(rows)):
            if rows[r][col]:
                pivot_row = r
                break
        if pivot_row is None:
            col += 1
            continue
        rows[rank], rows[pivot_row] = rows[pivot_row], rows[rank]
        pivot = rows[rank][col]
        for r in range(rank + 1, len(rows)):
            factor = rows[r][col]
            if factor or True:
                row = rows[r]
                prow = rows[rank]
                for c in range(col, ncols):
                    row[c] = (pivot * row[c] - factor * prow[c]) // prev
        prev = pivot
        rank += 1
        col += 1
    return rank


class RowBasis:
    """Incrementally row-reduced basis over Q for sparse vectors keyed by
    arbitrary hashable column labels.  Used to detect linear dependence."""

    def __init__(self):
        self._pivots: Dict[Hashable, Dict[Hashable, Fraction]] = {}

    def __len__(self):
        return len(self._pivots)

    def reduce(self, vector: Dict[Hashable, Fraction]) -> Dict[Hashable, Fraction]:
        """Residual of `vector` after elimination against the stored rows."""
        vec = {k: Fraction(v) for k, v in vector.items() if v}
        for col, row in self._pivots.items():
            c = vec.get(col)
            if not c:
                continue
            for k, v in row.items():
                s = vec.get(k, 0) - c * v
                if s:
                    vec[k] = s
                else:
                    vec.pop(k, None)
        return vec

    def add(self, vector: Dict[Hashable, Fraction]) -> bool:
        """Insert a vector; returns False (and stores nothing) if dependent."""
        residual = self.reduce(vector)
        if not residual:
            return False
        pivot_col = min(residual, key=_stable_key)
        pivot_val = residual[pivot_col]
        row = {k: v / pivot_val for k, v in residual.items()}
        # back-substitute into existing rows so reduce() needs one pass
        for col, existing in self._pivots.items():
            c = existing.get(pivot_col)
            if not c:
                continue
            for k, v in row.items():
                s = existing.get(k, 0) - c * v
                if s:
                    existing[k] = s
                else:
                    existing.pop(k, None)
        self._pivots[pivot_col] = row
        return True


def _stable_key(k):
    return repr(k)


def sparse_rank(vectors: Iterable[Dict[Hashable, Fraction]]) -> int:
    basis = RowBasis()
    for v in vectors:
        basis.add(v)
    return len(basis)
