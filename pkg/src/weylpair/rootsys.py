"""Root systems and Weyl groups in fixed coordinate models.

Coordinate models (``x1..xN`` are linear functions on the Cartan
subalgebra, roots are covectors in these coordinates):

* ``A_n``: ``n+1`` permutation coordinates, identity metric.
* ``B_n, C_n, D_n``: ``n`` signed coordinates, identity metric.
* ``E_6``/``E_7``: 6/7 coordinates on which ``W(A_5)``/``W(A_6)`` acts by
  permutations; metric on covectors ``(2/3)(1 - M/9)`` resp. ``(1/2)(1 - M/9)``.
* ``E_8``: 8 coordinates with ``W(D_8)`` as signed even permutations,
  identity metric.
* ``F_4``: 4 coordinates, identity metric.
* ``G_2``: 2 coordinates of the plane ``x1 + x2 + x3 = 0`` (``x3`` eliminated).
"""

from __future__ import annotations

import math
import re
from collections import deque
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Sequence

from .linalg import det, solve
from .poly import Poly, PolyRing, coordinate_ring

__all__ = [
    "RootSystem",
    "UnsupportedType",
    "WeylGroupTooLarge",
    "SUPPORTED",
    "parse_label",
    "build_root_system",
    "weyl_group_order",
    "enumerate_weyl_group",
    "weyl_orbit_sum",
    "weyl_denominator",
    "reflect",
    "is_invariant",
    "WEYL_ENUMERATION_CAP",
]

WEYL_ENUMERATION_CAP = 10**6
MAX_CLASSICAL_RANK = 12

F = Fraction
Vec = tuple  # tuple[Fraction, ...]


class UnsupportedType(ValueError):
    pass


class WeylGroupTooLarge(ValueError):
    pass


SUPPORTED = (
    [f"A{n}" for n in range(1, MAX_CLASSICAL_RANK + 1)]
    + [f"B{n}" for n in range(2, MAX_CLASSICAL_RANK + 1)]
    + [f"C{n}" for n in range(2, MAX_CLASSICAL_RANK + 1)]
    + [f"D{n}" for n in range(4, MAX_CLASSICAL_RANK + 1)]
    + ["E6", "E7", "E8", "F4", "G2"]
)


def parse_label(label: str) -> tuple[str, int]:
    m = re.fullmatch(r"\s*([A-Ga-g])_?(\d+)\s*", str(label))
    if m:
        fam, n = m.group(1).upper(), int(m.group(2))
        if f"{fam}{n}" in SUPPORTED:
            return fam, n
    raise UnsupportedType(
        f"unsupported type {label!r}; supported: A1-A12, B2-B12, C2-C12, D4-D12, E6, E7, E8, F4, G2"
    )


@dataclass(frozen=True)
class RootSystem:
    label: str
    family: str
    rank: int
    ambient_dim: int
    exponents: tuple[int, ...]
    coxeter_number: int
    simple_roots: tuple[Vec, ...]
    positive_roots: tuple[Vec, ...]
    simple_reflections: tuple[tuple[Vec, ...], ...]
    gram_inverse: tuple[Vec, ...]
    gram: tuple[Vec, ...]
    coords: PolyRing = field(repr=False)

    @property
    def degrees(self) -> tuple[int, ...]:
        return tuple(m + 1 for m in self.exponents)

    @property
    def is_classical(self) -> bool:
        return self.family in "ABCD"

    @property
    def weyl_order(self) -> int:
        return weyl_group_order(self)

    def pairing(self, a: Sequence, b: Sequence):
        """Bilinear form on covectors (roots) given by ``gram_inverse``."""
        g = self.gram_inverse
        n = len(a)
        return sum((a[i] * g[i][j] * b[j] for i in range(n) for j in range(n) if a[i] and b[j]), F(0))

    def reflect_covector(self, alpha: Sequence, beta: Sequence) -> Vec:
        c = 2 * self.pairing(beta, alpha) / self.pairing(alpha, alpha)
        return tuple(b - c * a for a, b in zip(alpha, beta))

    def quadric(self) -> Poly:
        """The invariant quadratic form ``x^T gram x`` on the Cartan subalgebra."""
        x = self.coords.gens()
        out = self.coords.zero()
        n = self.ambient_dim
        for i in range(n):
            for j in range(n):
                if self.gram[i][j]:
                    out = out + (x[i] * x[j]).scale(self.gram[i][j])
        return out


def _unit(n, i, c=1):
    v = [F(0)] * n
    v[i] = F(c)
    return v


def _vec(*xs) -> Vec:
    return tuple(F(x) for x in xs)


def _identity(n):
    return tuple(tuple(F(int(i == j)) for j in range(n)) for i in range(n))


def _mat_inverse(m):
    n = len(m)
    aug = [list(m[i]) + [F(int(i == j)) for j in range(n)] for i in range(n)]
    for c in range(n):
        piv = next(r for r in range(c, n) if aug[r][c] != 0)
        aug[c], aug[piv] = aug[piv], aug[c]
        inv = 1 / aug[c][c]
        aug[c] = [v * inv for v in aug[c]]
        for r in range(n):
            if r != c and aug[r][c] != 0:
                f = aug[r][c]
                aug[r] = [a - f * b for a, b in zip(aug[r], aug[c])]
    return tuple(tuple(row[n:]) for row in aug)


def _all_ones_metric(n, a, b):
    """The matrix ``a*1 + b*M`` with ``M`` the all-ones matrix."""
    return tuple(tuple(F(a) * (i == j) + F(b) for j in range(n)) for i in range(n))


def _simple_data(fam: str, n: int):
    """(ambient_dim, simple roots, gram_inverse, exponents, h)."""
    if fam == "A":
        N = n + 1
        simple = [_vec(*(_unit(N, i)[k] - _unit(N, i + 1)[k] for k in range(N))) for i in range(n)]
        return N, simple, _identity(N), tuple(range(1, n + 1)), n + 1
    if fam in "BCD":
        N = n
        simple = [tuple(F(int(k == i)) - F(int(k == i + 1)) for k in range(N)) for i in range(n - 1)]
        if fam == "B":
            simple.append(tuple(_unit(N, n - 1)))
        elif fam == "C":
            simple.append(tuple(_unit(N, n - 1, 2)))
        else:
            last = [F(0)] * N
            last[n - 2] = last[n - 1] = F(1)
            simple.append(tuple(last))
        if fam == "D":
            ex = tuple(sorted([2 * i - 1 for i in range(1, n)] + [n - 1]))
            h = 2 * n - 2
        else:
            ex = tuple(2 * i - 1 for i in range(1, n + 1))
            h = 2 * n
        return N, [tuple(v) for v in simple], _identity(N), ex, h
    if fam == "E" and n in (6, 7):
        N = n
        simple = [tuple(F(int(k == i)) - F(int(k == i + 1)) for k in range(N)) for i in range(N - 1)]
        if n == 6:
            simple.append(_vec(0, 0, 0, 1, 1, 1))
            ginv = tuple(tuple(F(2, 3) * (F(int(i == j)) - F(1, 9)) for j in range(N)) for i in range(N))
            return N, simple, ginv, (1, 4, 5, 7, 8, 11), 12
        simple.append(_vec(-1, -1, -1, 0, 0, 0, 0))
        ginv = tuple(tuple(F(1, 2) * (F(int(i == j)) - F(1, 9)) for j in range(N)) for i in range(N))
        return N, simple, ginv, (1, 5, 7, 9, 11, 13, 17), 18
    if fam == "E" and n == 8:
        half = F(1, 2)
        simple = [
            (half, -half, -half, -half, -half, -half, -half, -half),
            _vec(1, 1, 0, 0, 0, 0, 0, 0),
        ]
        for i in range(6):
            simple.append(tuple(F(int(k == i + 1)) - F(int(k == i)) for k in range(8)))
        return 8, simple, _identity(8), (1, 7, 11, 13, 17, 19, 23, 29), 30
    if fam == "F":
        half = F(1, 2)
        simple = [_vec(0, 1, -1, 0), _vec(0, 0, 1, -1), _vec(0, 0, 0, 1), (half, -half, -half, -half)]
        return 4, simple, _identity(4), (1, 5, 7, 11), 12
    if fam == "G":
        ginv = ((F(2, 3), F(-1, 3)), (F(-1, 3), F(2, 3)))
        return 2, [_vec(1, -1), _vec(-3, 0)], ginv, (1, 5), 6
    raise UnsupportedType(fam)


def build_root_system(label: str) -> RootSystem:
    fam, n = parse_label(label)
    N, simple, ginv, exponents, h = _simple_data(fam, n)
    gram = _mat_inverse(ginv)

    def pairing(a, b):
        return sum((a[i] * ginv[i][j] * b[j] for i in range(N) for j in range(N) if a[i] and b[j]), F(0))

    def refl(alpha, beta):
        c = 2 * pairing(beta, alpha) / pairing(alpha, alpha)
        return tuple(b - c * a for a, b in zip(alpha, beta))

    # all roots by closure of the simple roots under simple reflections
    roots = set(simple)
    queue = deque(simple)
    while queue:
        r = queue.popleft()
        for a in simple:
            s = refl(a, r)
            if s not in roots:
                roots.add(s)
                queue.append(s)
    cols = {i: {k: v for k, v in enumerate(a) if v} for i, a in enumerate(simple)}
    positive = []
    for r in roots:
        sol = solve(cols, {k: v for k, v in enumerate(r) if v})
        if sol is None:
            raise AssertionError("root outside the span of the simple roots")
        if all(c >= 0 for c in sol.values()):
            positive.append(r)
    positive.sort(key=lambda v: tuple(-x for x in v))

    reflections = []
    for a in simple:
        # point action s(x) = x - (2 a(x) / (a,a)) ginv.a ; substitution matrix rows
        norm = pairing(a, a)
        gv = [sum(ginv[i][j] * a[j] for j in range(N)) for i in range(N)]
        mat = tuple(
            tuple(F(int(i == j)) - 2 * gv[i] * a[j] / norm for j in range(N)) for i in range(N)
        )
        reflections.append(mat)

    return RootSystem(
        label=f"{fam}{n}",
        family=fam,
        rank=n,
        ambient_dim=N,
        exponents=exponents,
        coxeter_number=h,
        simple_roots=tuple(simple),
        positive_roots=tuple(positive),
        simple_reflections=tuple(reflections),
        gram_inverse=ginv,
        gram=gram,
        coords=coordinate_ring(N),
    )


def weyl_group_order(rs: RootSystem) -> int:
    return math.prod(rs.degrees)


def _matmul(a, b):
    n = len(a)
    return tuple(tuple(sum((a[i][k] * b[k][j] for k in range(n) if a[i][k]), F(0)) for j in range(n)) for i in range(n))


def enumerate_weyl_group(rs: RootSystem, cap: int = WEYL_ENUMERATION_CAP) -> list:
    """All group elements as substitution matrices (breadth-first closure)."""
    order = weyl_group_order(rs)
    if order > cap:
        raise WeylGroupTooLarge(f"|W({rs.label})| = {order} exceeds the enumeration bound {cap}")
    ident = _identity(rs.ambient_dim)
    seen = {ident}
    queue = deque([ident])
    while queue:
        g = queue.popleft()
        for s in rs.simple_reflections:
            h = _matmul(g, s)
            if h not in seen:
                seen.add(h)
                queue.append(h)
                if len(seen) > cap:
                    raise WeylGroupTooLarge(f"enumeration of W({rs.label}) exceeded {cap}")
    return sorted(seen)


def covector_orbit(rs: RootSystem, a: Sequence) -> list[Vec]:
    a = tuple(F(x) for x in a)
    seen = {a}
    queue = deque([a])
    while queue:
        v = queue.popleft()
        for alpha in rs.simple_roots:
            w = rs.reflect_covector(alpha, v)
            if w not in seen:
                seen.add(w)
                queue.append(w)
    return sorted(seen)


def _power_sum_of_forms(ring: PolyRing, forms: Sequence[Vec], m: int) -> Poly:
    """``sum_b (b . x)^m`` expanded through multinomial coefficients."""
    n = ring.nvars
    from .poly import all_monomials

    monos = all_monomials(n, m)
    fact = [math.factorial(k) for k in range(m + 1)]
    acc = {}
    for e in monos:
        s = F(0)
        for b in forms:
            t = F(1)
            for bi, ei in zip(b, e):
                if ei:
                    if bi == 0:
                        t = F(0)
                        break
                    t *= bi**ei
            s += t
        if s:
            mult = fact[m]
            for ei in e:
                mult //= fact[ei]
            acc[e] = s * mult
    return Poly(ring, acc)


def weyl_orbit_sum(rs: RootSystem, a: Sequence, m: int, allow_large: bool = False) -> Poly:
    """``sum_{w in W} (w.a)^m`` for the linear form ``a``."""
    if m <= 0:
        raise ValueError("the power m must be a positive integer")
    order = weyl_group_order(rs)
    if rs.label == "E6" and not allow_large:
        raise WeylGroupTooLarge("averaging over W(E6) (51840 elements) requires allow_large=True")
    if order > WEYL_ENUMERATION_CAP:
        raise WeylGroupTooLarge(f"|W({rs.label})| = {order} exceeds the averaging bound {WEYL_ENUMERATION_CAP}")
    if len(a) != rs.ambient_dim:
        raise ValueError(f"linear form needs {rs.ambient_dim} coordinates")
    orbit = covector_orbit(rs, a)
    stab = order // len(orbit)
    if stab * len(orbit) != order:
        raise AssertionError("orbit size does not divide |W|")
    return _power_sum_of_forms(rs.coords, orbit, m).scale(stab)


def weyl_denominator(rs: RootSystem) -> Poly:
    x = rs.coords.gens()
    out = rs.coords.one()
    for r in rs.positive_roots:
        form = rs.coords.zero()
        for i, c in enumerate(r):
            if c:
                form = form + x[i].scale(c)
        out = out * form
    return out


def reflect(poly: Poly, matrix) -> Poly:
    return poly.linear_substitute(matrix)


def is_invariant(poly: Poly, rs: RootSystem) -> bool:
    return all(reflect(poly, s) == poly for s in rs.simple_reflections)


def leading_principal_minors(m) -> list:
    n = len(m)
    return [det([row[:k] for row in m[:k]]) for k in range(1, n + 1)]
