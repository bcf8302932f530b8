"""The generic Grassmann matrix ``X = sum x_hk e_hk`` with anticommuting entries."""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction

from .exterior import wedge

__all__ = [
    "MAX_SIZE",
    "GrassmannMatrix",
    "generic_matrix",
    "wedge_matrix_power",
    "grassmann_trace",
    "TraceReport",
    "verify_trace_identity",
]

MAX_SIZE = 3


@dataclass(frozen=True)
class GrassmannMatrix:
    """Square matrix over the exterior algebra on ``n*n`` generators.

    Generator ``x_hk`` is bit ``h*n + k``; entries are ``{mask: coeff}``.
    """

    n: int
    entries: tuple

    def __getitem__(self, hk):
        h, k = hk
        return self.entries[h][k]

    def is_zero(self) -> bool:
        return all(not e for row in self.entries for e in row)

    def __matmul__(self, other: "GrassmannMatrix") -> "GrassmannMatrix":
        n = self.n
        rows = []
        for i in range(n):
            row = []
            for j in range(n):
                acc: dict = {}
                for k in range(n):
                    for m, c in wedge(self.entries[i][k], other.entries[k][j]).items():
                        v = acc.get(m, 0) + c
                        if v:
                            acc[m] = v
                        else:
                            acc.pop(m, None)
                row.append(acc)
            rows.append(tuple(row))
        return GrassmannMatrix(n, tuple(rows))

    def __add__(self, other: "GrassmannMatrix") -> "GrassmannMatrix":
        return GrassmannMatrix(
            self.n,
            tuple(tuple(_add(a, b) for a, b in zip(ra, rb)) for ra, rb in zip(self.entries, other.entries)),
        )

    def scale(self, c) -> "GrassmannMatrix":
        return GrassmannMatrix(self.n, tuple(tuple({m: v * c for m, v in e.items()} if c else {} for e in row) for row in self.entries))

    def left_wedge(self, s: dict) -> "GrassmannMatrix":
        """Entrywise ``s ^ M``."""
        return GrassmannMatrix(self.n, tuple(tuple(wedge(s, e) for e in row) for row in self.entries))

    def entry_degrees(self) -> set[int]:
        return {bin(m).count("1") for row in self.entries for e in row for m in e}


def _add(a: dict, b: dict) -> dict:
    out = dict(a)
    for m, c in b.items():
        v = out.get(m, 0) + c
        if v:
            out[m] = v
        else:
            out.pop(m, None)
    return out


def _check_size(n: int) -> None:
    if not 1 <= n <= MAX_SIZE:
        raise ValueError(f"matrix size {n} outside 1..{MAX_SIZE}")


def generic_matrix(n: int) -> GrassmannMatrix:
    _check_size(n)
    return GrassmannMatrix(n, tuple(tuple({1 << (h * n + k): Fraction(1)} for k in range(n)) for h in range(n)))


def identity(n: int) -> GrassmannMatrix:
    return GrassmannMatrix(n, tuple(tuple({0: Fraction(1)} if h == k else {} for k in range(n)) for h in range(n)))


def wedge_matrix_power(X: GrassmannMatrix, k: int) -> GrassmannMatrix:
    _check_size(X.n)
    out = identity(X.n)
    for _ in range(k):
        out = out @ X
    return out


def grassmann_trace(M: GrassmannMatrix) -> dict:
    acc: dict = {}
    for i in range(M.n):
        acc = _add(acc, M.entries[i][i])
    return acc


@dataclass
class TraceReport:
    n: int
    nilpotent: bool = False  # X^{2n} = 0
    trace_identity_matrix: bool = False  # tr(X^{2n-1}) times the identity
    trace_identity_traced: bool = False  # trace of both sides
    odd_traces_anticommute: bool = False
    reading: str = ""
    notes: list = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return self.nilpotent and self.odd_traces_anticommute and bool(self.reading)

    def to_dict(self) -> dict:
        return {
            "n": self.n,
            "passed": self.passed,
            "nilpotent": self.nilpotent,
            "trace_identity_matrix": self.trace_identity_matrix,
            "trace_identity_traced": self.trace_identity_traced,
            "odd_traces_anticommute": self.odd_traces_anticommute,
            "reading": self.reading,
            "notes": list(self.notes),
        }


def verify_trace_identity(n: int) -> TraceReport:
    """Check ``X^{2n} = 0`` and the trace relation

    ``tr(X^{2n-1}) = -sum_{i<n} X^{2i} ^ tr(X^{2(n-i)-1}) + n X^{2n-1}``

    first with the scalar side times the identity matrix, then with the
    trace taken on both sides.
    """
    _check_size(n)
    X = generic_matrix(n)
    powers = [identity(n)]
    for _ in range(2 * n):
        powers.append(powers[-1] @ X)
    rep = TraceReport(n)
    rep.nilpotent = powers[2 * n].is_zero()
    traces = {k: grassmann_trace(powers[k]) for k in range(1, 2 * n)}

    rhs = powers[2 * n - 1].scale(n)
    for i in range(1, n):
        rhs = rhs + powers[2 * i].left_wedge(traces[2 * (n - i) - 1]).scale(-1)
    lhs = identity(n).left_wedge(traces[2 * n - 1])
    rep.trace_identity_matrix = (lhs + rhs.scale(-1)).is_zero()
    rep.trace_identity_traced = _add(traces[2 * n - 1], {m: -c for m, c in grassmann_trace(rhs).items()}) == {}
    if rep.trace_identity_matrix:
        rep.reading = "matrix"
    elif rep.trace_identity_traced:
        rep.reading = "traced"
    else:
        rep.notes.append("trace relation fails in both readings")

    odd = [traces[k] for k in range(1, 2 * n, 2)]
    ok = True
    for a in odd:
        for b in odd:
            ok &= _add(wedge(a, b), wedge(b, a)) == {}
    rep.odd_traces_anticommute = ok
    even_zero = all(not traces[k] for k in range(2, 2 * n, 2))
    rep.notes.append(f"even traces vanish: {even_zero}")
    return rep
