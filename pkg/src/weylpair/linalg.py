"""Exact sparse linear algebra over Q or Q(sqrt d).

Vectors and matrix rows are dicts ``{column: value}`` without zeros.  The
routines are generic over any field whose elements support ``+ - * /``
and comparison with ``0``.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Hashable, Iterable, Sequence

__all__ = ["row_reduce", "rank", "nullspace", "solve", "det", "in_span"]

Row = dict


def _inv(x):
    return Fraction(1) / x


def row_reduce(rows: Iterable[Row]) -> tuple[list[Row], list[Hashable]]:
    """Reduced row echelon form.

    Returns the nonzero reduced rows and their pivot columns; pivot columns
    are chosen in order of first appearance (stable, deterministic for a
    given input order).
    """
    pivots: list[Hashable] = []
    reduced: list[Row] = []
    where: dict[Hashable, int] = {}
    for row in rows:
        r = {k: v for k, v in row.items() if v != 0}
        # eliminate existing pivots
        for p in [p for p in r if p in where]:
            if p not in r:
                continue
            f = r[p]
            for k, v in reduced[where[p]].items():
                nv = r.get(k, 0) - f * v
                if nv == 0:
                    r.pop(k, None)
                else:
                    r[k] = nv
        if not r:
            continue
        p = min(r, key=_order_key)
        inv = _inv(r[p])
        r = {k: v * inv for k, v in r.items()}
        # back-substitute into existing rows
        for i, other in enumerate(reduced):
            f = other.get(p)
            if f is not None:
                for k, v in r.items():
                    nv = other.get(k, 0) - f * v
                    if nv == 0:
                        other.pop(k, None)
                    else:
                        other[k] = nv
        where[p] = len(reduced)
        reduced.append(r)
        pivots.append(p)
    return reduced, pivots


def _order_key(k):
    return (0, k) if isinstance(k, int) else (1, repr(k))


def rank(rows: Iterable[Row]) -> int:
    return len(row_reduce(rows)[0])


def nullspace(rows: Sequence[Row], columns: Sequence[Hashable]) -> list[Row]:
    """Basis of ``{v : row . v = 0 for every row}`` over the given columns."""
    reduced, pivots = row_reduce(rows)
    pivset = set(pivots)
    basis = []
    for free in columns:
        if free in pivset:
            continue
        v = {free: Fraction(1)}
        for r, p in zip(reduced, pivots):
            c = r.get(free)
            if c is not None:
                v[p] = -c
        basis.append(v)
    return basis


def solve(columns: dict[Hashable, Row], target: Row) -> dict[Hashable, object] | None:
    """Find coefficients ``c`` with ``sum_j c[j] * columns[j] == target``.

    ``columns`` maps unknown names to sparse vectors.  Returns ``None`` when
    the system is inconsistent.  Free unknowns (dependent columns) are set
    to zero.
    """
    # Build augmented rows indexed by equation (coordinate) key.
    eqs: dict[Hashable, Row] = {}
    names = list(columns)
    for j, name in enumerate(names):
        for coord, v in columns[name].items():
            eqs.setdefault(coord, {})[j] = v
    rhs_key = len(names)
    for coord, v in target.items():
        eqs.setdefault(coord, {})[rhs_key] = v
    reduced, pivots = row_reduce(eqs.values())
    sol: dict[Hashable, object] = {name: Fraction(0) for name in names}
    for r, p in zip(reduced, pivots):
        if p == rhs_key:
            return None
        sol[names[p]] = r.get(rhs_key, Fraction(0))
    return sol


def in_span(vectors: Sequence[Row], v: Row) -> bool:
    return solve({i: w for i, w in enumerate(vectors)}, v) is not None


def det(matrix: Sequence[Sequence[object]]):
    """Determinant of a small dense matrix by fraction-based elimination."""
    n = len(matrix)
    m = [list(row) for row in matrix]
    sign = 1
    result = Fraction(1)
    for c in range(n):
        piv = next((r for r in range(c, n) if m[r][c] != 0), None)
        if piv is None:
            return Fraction(0)
        if piv != c:
            m[c], m[piv] = m[piv], m[c]
            sign = -sign
        pv = m[c][c]
        result = result * pv
        inv = _inv(pv)
        for r in range(c + 1, n):
            f = m[r][c]
            if f != 0:
                f = f * inv
                for k in range(c, n):
                    m[r][k] = m[r][k] - f * m[c][k]
    return result * sign
