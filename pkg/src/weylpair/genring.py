"""Rings of invariant generators with a Leibniz pairing table.

A frame is a free polynomial ring in abstract generators (power sums,
optionally the Pfaffian ``P = x1*...*xN``) that sits inside the polynomial
functions on the Cartan subalgebra.  The gradient pairing of two elements
is computed without expanding to coordinates::

    a o b = sum_{i,j} (da/dg_i)(db/dg_j) (g_i o g_j)

with the table ``g_i o g_j`` precomputed and Newton-reduced.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Mapping

from .poly import Poly, PolyRing, coordinate_ring, gradient_pairing, parse_poly

__all__ = [
    "GenFrame",
    "ExpansionTooLarge",
    "power_sum_frame",
    "coordinate_frame",
    "newton_reduce",
    "leibniz_pairing",
    "expand_to_coordinates",
    "EXPANSION_DEGREE_LIMIT",
]

EXPANSION_DEGREE_LIMIT = 16


class ExpansionTooLarge(ValueError):
    pass


@dataclass(eq=False)
class GenFrame:
    """Generator ring plus everything needed to pair and expand its elements.

    ``step`` is 1 when all power sums ``p1..p_top`` are generators and 2
    when only even ones ``p2, p4, ..., p_{2 top}`` are (signed coordinate
    models).  The coordinate metric is ``alpha*1 + beta*M``.
    """

    name: str
    ring: PolyRing
    coords: PolyRing
    gram: tuple
    kind: str  # "power" | "coordinate"
    nvars: int
    step: int = 1
    top: int = 0
    pfaffian: bool = False
    alpha: Fraction = Fraction(1)
    beta: Fraction = Fraction(0)
    trace_free: bool = False
    table: tuple = field(default=(), repr=False)
    expansions: tuple = field(default=(), repr=False)
    _psum: dict = field(default_factory=dict, repr=False)
    _elem: dict = field(default_factory=dict, repr=False)

    # -- power sums and elementary symmetric functions of y = x^step ----------
    def _gen(self, name: str) -> Poly:
        return self.ring.var(self.ring.index(name))

    def _Y(self, k: int) -> Poly:
        """Power sum of degree ``k`` in ``y = x^step``, reduced to generators."""
        hit = self._psum.get(k)
        if hit is not None:
            return hit
        if k == 0:
            out = self.ring.const(self.nvars)
        elif k <= self.top:
            out = self._gen(f"p{self.step * k}")
        else:
            n = self.nvars
            out = self.ring.zero()
            for j in range(1, min(k - 1, n) + 1):
                ej = self._E(j)
                if not ej.is_zero():
                    out = out + (ej * self._Y(k - j)).scale((-1) ** (j - 1))
            if k <= n:
                out = out + self._E(k).scale((-1) ** (k - 1) * k)
        self._psum[k] = out
        return out

    def _E(self, j: int) -> Poly:
        """Elementary symmetric function ``e_j(y)`` in the generators."""
        hit = self._elem.get(j)
        if hit is not None:
            return hit
        n = self.nvars
        if j == 0:
            out = self.ring.one()
        elif j > n:
            out = self.ring.zero()
        elif self.pfaffian and j == n:
            p = self._gen("P")
            out = p * p
        elif j <= self.top:
            out = self.ring.zero()
            for i in range(1, j + 1):
                out = out + (self._E(j - i) * self._Y(i)).scale((-1) ** (i - 1))
            out = out.scale(Fraction(1, j))
        else:
            raise AssertionError(f"frame {self.name} cannot express e_{j}")
        self._elem[j] = out
        return out

    def power_sum(self, k: int) -> Poly:
        """``p_k = sum x_i^k`` written in the frame generators."""
        if self.kind != "power":
            raise ValueError(f"frame {self.name} has no power sums")
        if k < 0 or k % self.step:
            raise ValueError(f"p{k} is not an invariant of frame {self.name}")
        return self._Y(k // self.step)

    def elementary(self, j: int) -> Poly:
        """``e_j(x^step)`` in the frame generators."""
        return self._E(j)

    def atom(self, name: str) -> Poly:
        if name in self.ring.names:
            return self._gen(name)
        m = re.fullmatch(r"p(\d+)", name)
        if m and self.kind == "power":
            return self.power_sum(int(m.group(1)))
        m = re.fullmatch(r"t(\d+)", name)
        if m and self.kind == "power" and self.step == 2:
            return self.power_sum(2 * int(m.group(1)))
        raise KeyError(name)

    def atoms(self) -> Mapping[str, Poly]:
        return _AtomMap(self)

    def parse(self, text: str) -> Poly:
        return parse_poly(text, self.ring, atoms=self.atoms())

    def degree(self, g: Poly) -> int:
        return g.degree()

    def to_cartan(self, g: Poly) -> Poly:
        """Restrict to the trace-zero Cartan subalgebra when the model has a trace."""
        if not self.trace_free:
            return g
        i = self.ring.index("p1")
        gens = self.ring.gens()
        gens[i] = self.ring.zero()
        return g.substitute(gens, self.ring)


class _AtomMap(Mapping):
    def __init__(self, frame: GenFrame):
        self.frame = frame

    def __getitem__(self, key):
        return self.frame.atom(key)

    def __contains__(self, key):
        try:
            self.frame.atom(key)
            return True
        except (KeyError, ValueError):
            return False

    def __iter__(self):
        return iter(self.frame.ring.names)

    def __len__(self):
        return self.frame.ring.nvars


def power_sum_frame(
    nvars: int,
    step: int = 1,
    top: int | None = None,
    pfaffian: bool = False,
    alpha=1,
    beta=0,
    name: str = "",
    trace_free: bool = False,
) -> GenFrame:
    """Frame of power sums ``p_step, p_2step, ..., p_{top*step}`` (plus ``P``)."""
    alpha, beta = Fraction(alpha), Fraction(beta)
    if top is None:
        top = nvars - 1 if pfaffian else nvars
    if pfaffian and (step != 2 or top != nvars - 1):
        raise ValueError("the Pfaffian frame needs even power sums p2..p_{2N-2}")
    if step == 2 and beta != 0:
        raise ValueError("signed models need a diagonal metric")
    names = [f"p{step * k}" for k in range(1, top + 1)]
    weights = [step * k for k in range(1, top + 1)]
    if pfaffian:
        names.append("P")
        weights.append(nvars)
    ring = PolyRing(tuple(names), tuple(weights))
    coords = coordinate_ring(nvars)
    gram = tuple(
        tuple(alpha * (i == j) + beta for j in range(nvars)) for i in range(nvars)
    )
    frame = GenFrame(
        name=name or f"psum{nvars}",
        ring=ring,
        coords=coords,
        gram=gram,
        kind="power",
        nvars=nvars,
        step=step,
        top=top,
        pfaffian=pfaffian,
        alpha=alpha,
        beta=beta,
        trace_free=trace_free,
    )
    x = coords.gens()
    expansions = []
    for nm in names:
        if nm == "P":
            e = coords.one()
            for xi in x:
                e = e * xi
        else:
            k = int(nm[1:])
            e = coords.zero()
            for xi in x:
                e = e + xi**k
        expansions.append(e)
    frame.expansions = tuple(expansions)

    def pair_gens(a: str, b: str) -> Poly:
        if a == "P" and b == "P":
            return frame.elementary(nvars - 1).scale(alpha)
        if b == "P":
            i = int(a[1:])
            return (frame.power_sum(i - 2) * frame._gen("P")).scale(alpha * i)
        if a == "P":
            return pair_gens(b, a)
        i, j = int(a[1:]), int(b[1:])
        out = frame.power_sum(i + j - 2).scale(alpha)
        if beta:
            out = out + (frame.power_sum(i - 1) * frame.power_sum(j - 1)).scale(beta)
        return out.scale(i * j)

    frame.table = tuple(tuple(pair_gens(a, b) for b in names) for a in names)
    return frame


def coordinate_frame(gram, name: str = "coords") -> GenFrame:
    """Trivial frame whose generators are the coordinates themselves."""
    n = len(gram)
    coords = coordinate_ring(n)
    gram = tuple(tuple(Fraction(v) for v in row) for row in gram)
    frame = GenFrame(name=name, ring=coords, coords=coords, gram=gram, kind="coordinate", nvars=n)
    frame.table = tuple(tuple(coords.const(gram[i][j]) for j in range(n)) for i in range(n))
    frame.expansions = tuple(coords.gens())
    return frame


def newton_reduce(frame: GenFrame, g) -> Poly:
    """Rewrite ``g`` in the frame generators.

    ``g`` is either text or a polynomial over any ring whose variable names
    are frame atoms (``p7``, ``t3``, ``P``...); out-of-range power sums are
    replaced through Newton's identities.
    """
    if isinstance(g, str):
        return frame.parse(g)
    if g.ring == frame.ring:
        return g
    images = [frame.atom(name) for name in g.ring.names]
    return g.substitute(images, frame.ring)


def leibniz_pairing(frame: GenFrame, a: Poly, b: Poly) -> Poly:
    """``a o b`` computed from the generator pairing table."""
    if a.ring != frame.ring or b.ring != frame.ring:
        raise ValueError(f"operands are not in frame {frame.name}")
    if frame.kind == "coordinate":
        return gradient_pairing(a, b, frame.gram)
    r = frame.ring.nvars
    da = a.gradient()
    db = b.gradient()
    out = frame.ring.zero()
    for i in range(r):
        if da[i].is_zero():
            continue
        acc = frame.ring.zero()
        row = frame.table[i]
        for j in range(r):
            if db[j].is_zero() or row[j].is_zero():
                continue
            acc = acc + db[j] * row[j]
        if not acc.is_zero():
            out = out + da[i] * acc
    return out


def expand_to_coordinates(frame: GenFrame, g: Poly, limit: int = EXPANSION_DEGREE_LIMIT) -> Poly:
    if g.ring != frame.ring:
        raise ValueError(f"operand is not in frame {frame.name}")
    if frame.kind == "coordinate":
        return g
    if g.degree() > limit:
        raise ExpansionTooLarge(f"degree {g.degree()} exceeds the expansion limit {limit}")
    return g.substitute(list(frame.expansions), frame.coords)


def evaluate_generators(frame: GenFrame, point) -> list:
    """Values of the frame generators at a coordinate point."""
    return [e.evaluate(point) for e in frame.expansions]


def evaluate(frame: GenFrame, g: Poly, point):
    """Exact value of ``g`` at a coordinate point, without expanding ``g``."""
    return g.evaluate(evaluate_generators(frame, point))
