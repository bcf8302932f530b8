"""Quotient rings ``C[x,y]/(p_x, p_y)`` of the E-type simple singularities.

Elements are dicts ``{(a, b): coefficient}`` for monomials ``x^a y^b``.
Each ring has a small rewriting system; normal forms are unique because
the systems are confluent (checked by :func:`is_confluent`).
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .rootsys import build_root_system

__all__ = [
    "MilnorRing",
    "build_milnor_ring",
    "normal_form",
    "milnor_multiply",
    "S_operator",
    "element_degree",
    "poincare_exponents",
    "predict_vanishing",
    "is_confluent",
    "is_associative",
]

Mono = tuple[int, int]

# singularity, weights (x, y), rewriting rules lhs -> {mono: coeff}
_DATA = {
    "E6": ("x^3 + y^4", (4, 3), {(2, 0): {}, (0, 3): {}}),
    # y^5 -> 0 resolves the overlap x^2 y^2 of the two defining rules
    "E7": ("x^3 + x*y^3", (6, 4), {(2, 0): {(0, 3): Fraction(-1, 3)}, (1, 2): {}, (0, 5): {}}),
    "E8": ("x^3 + y^5", (10, 6), {(2, 0): {}, (0, 4): {}}),
}


@dataclass(frozen=True)
class MilnorRing:
    label: str
    singularity: str
    weights: tuple[int, int]
    coxeter_number: int
    rules: tuple[tuple[Mono, tuple[tuple[Mono, Fraction], ...]], ...]
    basis: tuple[Mono, ...]

    @property
    def basis_degrees(self) -> tuple[int, ...]:
        return tuple(self.degree(m) for m in self.basis)

    def degree(self, m: Mono) -> int:
        return m[0] * self.weights[0] + m[1] * self.weights[1]

    def basis_of_degree(self, d: int) -> list[int]:
        return [i for i, m in enumerate(self.basis) if self.degree(m) == d]

    def element(self, mono: Mono) -> dict:
        return normal_form(self, {tuple(mono): Fraction(1)})

    def multiplication_table(self):
        """``table[i][j]`` is the normal form of ``basis[i] * basis[j]``."""
        return [[milnor_multiply(self, self.element(a), self.element(b)) for b in self.basis] for a in self.basis]


def _divides(lhs: Mono, m: Mono) -> bool:
    return lhs[0] <= m[0] and lhs[1] <= m[1]


def _rewrite_once(ring: MilnorRing, m: Mono):
    """All one-step rewrites of monomial ``m`` (one per applicable rule)."""
    out = []
    for lhs, rhs in ring.rules:
        if _divides(lhs, m):
            rest = (m[0] - lhs[0], m[1] - lhs[1])
            out.append({(r[0] + rest[0], r[1] + rest[1]): c for r, c in rhs})
    return out


def normal_form(ring: MilnorRing, f: dict) -> dict:
    out: dict = {}
    todo = [(m, c) for m, c in f.items() if c != 0]
    while todo:
        m, c = todo.pop()
        steps = _rewrite_once(ring, m)
        if not steps:
            v = out.get(m, Fraction(0)) + c
            if v == 0:
                out.pop(m, None)
            else:
                out[m] = v
            continue
        for r, rc in steps[0].items():
            todo.append((r, c * rc))
    return out


def _normal_forms_all_paths(ring: MilnorRing, m: Mono, memo: dict) -> set:
    if m in memo:
        return memo[m]
    steps = _rewrite_once(ring, m)
    if not steps:
        res = {((m, Fraction(1)),)}
    else:
        res = set()
        for step in steps:
            # combine the normal forms of every term of this rewrite
            partial = [dict()]
            for r, rc in step.items():
                options = _normal_forms_all_paths(ring, r, memo)
                nxt = []
                for acc in partial:
                    for opt in options:
                        new = dict(acc)
                        for mm, cc in opt:
                            v = new.get(mm, Fraction(0)) + rc * cc
                            if v == 0:
                                new.pop(mm, None)
                            else:
                                new[mm] = v
                        nxt.append(new)
                partial = nxt
            for acc in partial:
                res.add(tuple(sorted(acc.items())))
    memo[m] = res
    return res


def is_confluent(ring: MilnorRing, max_degree: int | None = None) -> bool:
    """Every monomial up to ``max_degree`` has a single normal form over all rewrite orders."""
    if max_degree is None:
        max_degree = 3 * ring.coxeter_number
    memo: dict = {}
    wx, wy = ring.weights
    for a in range(max_degree // wx + 1):
        for b in range((max_degree - a * wx) // wy + 1):
            if len(_normal_forms_all_paths(ring, (a, b), memo)) != 1:
                return False
    return True


def build_milnor_ring(label: str) -> MilnorRing:
    if label not in _DATA:
        raise ValueError(f"no Milnor ring for {label!r}; supported: E6, E7, E8")
    sing, weights, rules = _DATA[label]
    h = build_root_system(label).coxeter_number
    frozen_rules = tuple((lhs, tuple(sorted(rhs.items()))) for lhs, rhs in rules.items())
    tmp = MilnorRing(label, sing, weights, h, frozen_rules, ())
    basis = []
    for a in range(h):
        for b in range(h):
            if tmp.degree((a, b)) > 2 * h:
                continue
            if not _rewrite_once(tmp, (a, b)):
                basis.append((a, b))
    basis.sort(key=lambda m: (tmp.degree(m), m))
    return MilnorRing(label, sing, weights, h, frozen_rules, tuple(basis))


def milnor_multiply(ring: MilnorRing, f: dict, g: dict) -> dict:
    prod: dict = {}
    for m1, c1 in f.items():
        for m2, c2 in g.items():
            m = (m1[0] + m2[0], m1[1] + m2[1])
            prod[m] = prod.get(m, Fraction(0)) + c1 * c2
    return normal_form(ring, prod)


def element_degree(ring: MilnorRing, f: dict) -> int:
    degs = {ring.degree(m) for m in f}
    if len(degs) != 1:
        raise ValueError("element is zero or not homogeneous")
    return degs.pop()


def S_operator(ring: MilnorRing, f: dict) -> dict:
    """``S q = (deg q + 2)/h * q`` for homogeneous ``q``."""
    if not f:
        return {}
    k = Fraction(element_degree(ring, f) + 2, ring.coxeter_number)
    return {m: c * k for m, c in f.items()}


def poincare_exponents(ring: MilnorRing) -> list[int]:
    """Exponents of ``t`` in the Poincare polynomial of the ring."""
    return sorted(ring.basis_degrees)


def predict_vanishing(ring: MilnorRing) -> list[list[bool]]:
    """``mask[i][j]``: the images of generators ``i``, ``j`` multiply to nonzero.

    Generator ``i`` of degree ``d_i`` corresponds to the basis element of
    degree ``d_i - 2``.
    """
    rs = build_root_system(ring.label)
    images = []
    for d in rs.degrees:
        idx = ring.basis_of_degree(d - 2)
        if len(idx) != 1:
            raise AssertionError(f"no unique basis element in degree {d - 2}")
        images.append(ring.element(ring.basis[idx[0]]))
    return [[bool(milnor_multiply(ring, a, b)) for b in images] for a in images]


def is_associative(ring: MilnorRing) -> bool:
    els = [ring.element(m) for m in ring.basis]
    for a in els:
        for b in els:
            ab = milnor_multiply(ring, a, b)
            for c in els:
                if milnor_multiply(ring, ab, c) != milnor_multiply(ring, a, milnor_multiply(ring, b, c)):
                    return False
    return True
