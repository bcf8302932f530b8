"""Basic invariant generators for every supported Weyl group.

Generators live in a :class:`~weylpair.genring.GenFrame`.  Classical and
exceptional E types use power-sum frames; G2 and F4 use plain coordinates
and Weyl averaging.  In every case the degree-2 generator is half the
invariant quadric, so that ``psi_1 o psi_i = deg(psi_i) * psi_i``.
"""

from __future__ import annotations

import json
import random
from collections import ChainMap
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Mapping, Sequence

from .genring import (
    GenFrame,
    coordinate_frame,
    evaluate,
    expand_to_coordinates,
    leibniz_pairing,
    power_sum_frame,
)
from .linalg import in_span
from .poly import Poly, PolyRing, coordinate_ring, parse_poly
from .rootsys import RootSystem, build_root_system, weyl_denominator, weyl_orbit_sum
from .scalar import sqrt

__all__ = [
    "InvariantSet",
    "NotAGenerator",
    "build_frame",
    "classical_generators",
    "exceptional_seed_invariants",
    "complete_by_pairing",
    "averaged_generators",
    "generators_for",
    "jacobian_check",
    "check_invariant",
    "is_decomposable",
    "product_basis",
    "load_seed_file",
    "SEEDS",
    "RECIPES",
]


class NotAGenerator(ValueError):
    """A constructed invariant turned out to be decomposable."""


# Exceptional seeds, written in the power sums of the coordinate model.
SEEDS: dict[str, dict[str, str]] = {
    "E6": {
        "A2": "p1^2/2 + 3*p2/2",
        "A5": (
            "11/20*p1^5 - 6*p1^3*p2 + 27/4*p1*p2^2 + 27/2*p1^2*p3 - 27/2*p2*p3"
            " - 27/2*p1*p4 + 81/5*p5"
        ),
        "A6": (
            "25/8*p1^6 - 99/8*p1^4*p2 - 297/8*p1^2*p2^2 + 243/8*p2^3 + 270*p1*p2*p3"
            " - 135*p3^2 + 135/2*p1^2*p4 - 405/2*p2*p4 - 324*p1*p5 + 324*p6"
        ),
    },
    "E7": {
        "A2": "p1^2 + 2*p2",
        "A6": (
            "10/3*(p1^6 - 12*p1^4*p2 + 36*p1^2*p2^2 - 6*p2^3 + 40*p1^3*p3"
            " - 120*p1*p2*p3 + 40*p3^2 - 60*p1^2*p4 + 60*p2*p4 + 144*p1*p5 - 96*p6)"
        ),
        "A8": (
            "10/7*(p1^8 + 224*p1^6*p2 - 1680*p1^4*p2^2 + 840*p1^2*p2^3 + 420*p2^4"
            " - 1568*p1^5*p3 + 12320*p1^3*p2*p3 - 12320*p1^2*p3^2 - 4480*p2*p3^2"
            " + 5040*p1^4*p4 - 18480*p1^2*p2*p4 - 3360*p2^2*p4 + 20160*p1*p3*p4"
            " - 1680*p4^2 - 18816*p1^3*p5 + 12096*p1*p2*p5 + 2688*p3*p5"
            " + 33600*p1^2*p6 + 6720*p2*p6 - 34560*p1*p7)"
        ),
    },
    "E8": {
        "A2": "p2",
        "A8": "-10080*P - 105*p2^2*p4 + 105*p4^2 + 168*p2*p6 - 180*p8",
        "A12": (
            "-103950*P*p2^2 + 10395/64*p2^6 + 41580*P*p4 - 51975/32*p2^4*p4"
            " + 51975/16*p2^2*p4^2 - 5775/8*p4^3 + 3465*p2^3*p6 - 6930*p2*p4*p6"
            " + 2772*p6^2 - 25245/4*p2^2*p8 + 10395/2*p4*p8 + 8316*p2*p10 - 7560*p12"
        ),
    },
}

# name := left o right, applied in order
RECIPES: dict[str, tuple[tuple[str, str, str], ...]] = {
    "E6": (("A8", "A5", "A5"), ("A9", "A5", "A6"), ("A12", "A5", "A9")),
    "E7": (("A10", "A6", "A6"), ("A12", "A6", "A8"), ("A14", "A6", "A10"), ("A18", "A6", "A14")),
    "E8": (
        ("A14", "A8", "A8"),
        ("A18", "A8", "A12"),
        ("A20", "A8", "A14"),
        ("A24", "A14", "A12"),
        ("A30", "A8", "A24"),
    ),
}


@dataclass(eq=False)
class InvariantSet:
    """Ordered basic invariants ``psi_1..psi_r`` (possibly partial).

    ``generators[i]`` lives in ``frame.ring``; ``provenance[i]`` says how it
    was obtained (``closed-form``, ``seed``, ``paired: ...``, ``averaged``).
    """

    root_system: RootSystem
    frame: GenFrame
    generators: tuple[Poly, ...]
    names: tuple[str, ...]
    provenance: tuple[str, ...]
    _products: dict = field(default_factory=dict, repr=False)
    _pairings: dict = field(default_factory=dict, repr=False)

    @property
    def degrees(self) -> tuple[int, ...]:
        return tuple(g.degree() for g in self.generators)

    @property
    def rank(self) -> int:
        return len(self.generators)

    @property
    def is_complete(self) -> bool:
        return self.degrees == self.root_system.degrees

    def by_name(self, name: str) -> Poly:
        return self.generators[self.names.index(name)]

    def indices_of_degree(self, d: int) -> list[int]:
        return [i for i, g in enumerate(self.degrees) if g == d]

    def pair(self, i: int, j: int) -> Poly:
        """``psi_i o psi_j`` (cached)."""
        key = (min(i, j), max(i, j))
        hit = self._pairings.get(key)
        if hit is None:
            hit = leibniz_pairing(self.frame, self.generators[key[0]], self.generators[key[1]])
            self._pairings[key] = hit
        return hit

    def parse(self, text: str) -> Poly:
        """Parse text in the frame atoms, also accepting generator names."""
        extra = {f"psi{i + 1}": g for i, g in enumerate(self.generators)}
        extra.update(zip(self.names, self.generators))
        return parse_poly(text, self.frame.ring, atoms=ChainMap(extra, self.frame.atoms()))


def _with_generators(inv: InvariantSet, gens, names, prov) -> InvariantSet:
    order = sorted(range(len(gens)), key=lambda k: (gens[k].degree(), k))
    return InvariantSet(
        root_system=inv.root_system,
        frame=inv.frame,
        generators=tuple(gens[k] for k in order),
        names=tuple(names[k] for k in order),
        provenance=tuple(prov[k] for k in order),
    )


# -- frames --------------------------------------------------------------------


def build_frame(rs: RootSystem) -> GenFrame:
    """Generator frame matching the coordinate model of ``rs``."""
    fam, n = rs.family, rs.rank
    if fam == "A":
        return power_sum_frame(n + 1, name=rs.label, trace_free=True)
    if fam in "BC":
        return power_sum_frame(n, step=2, name=rs.label)
    if fam == "D":
        return power_sum_frame(n, step=2, pfaffian=True, name=rs.label)
    if rs.label == "E6":
        return power_sum_frame(6, alpha=Fraction(2, 3), beta=Fraction(-2, 27), name="E6")
    if rs.label == "E7":
        return power_sum_frame(7, alpha=Fraction(1, 2), beta=Fraction(-1, 18), name="E7")
    if rs.label == "E8":
        return power_sum_frame(8, step=2, pfaffian=True, name="E8")
    return coordinate_frame(rs.gram_inverse, name=rs.label)


# -- decomposability -------------------------------------------------------------


def _weighted_partitions(degrees: Sequence[int], total: int, min_parts: int = 1):
    """Exponent vectors ``e`` with ``sum e_i * degrees[i] == total``."""
    out = []
    r = len(degrees)

    def rec(i, left, cur):
        if i == r:
            if left == 0 and sum(cur) >= min_parts:
                out.append(tuple(cur))
            return
        d = degrees[i]
        for k in range(left // d + 1):
            cur.append(k)
            rec(i + 1, left - k * d, cur)
            cur.pop()

    rec(0, total, [])
    return out


def product_basis(inv: InvariantSet, degree: int) -> list[tuple[tuple[int, ...], Poly]]:
    """All generator monomials of the given degree with their expansions.

    Expansions are restricted to the Cartan subalgebra (``frame.to_cartan``).
    """
    hit = inv._products.get(degree)
    if hit is not None:
        return hit
    gens = [inv.frame.to_cartan(g) for g in inv.generators]
    out = []
    powers: dict[tuple[int, int], Poly] = {}

    def power(i, k):
        p = powers.get((i, k))
        if p is None:
            p = gens[i] if k == 1 else power(i, k - 1) * gens[i]
            powers[(i, k)] = p
        return p

    for e in _weighted_partitions(inv.degrees, degree):
        term = inv.frame.ring.one()
        for i, k in enumerate(e):
            if k:
                term = term * power(i, k)
        out.append((e, term))
    inv._products[degree] = out
    return out


def _vector(p: Poly) -> dict:
    return dict(p.terms)


def is_decomposable(inv: InvariantSet, f: Poly) -> bool:
    """True when ``f`` lies in the span of products of two or more generators."""
    d = f.degree()
    f = inv.frame.to_cartan(f)
    if f.is_zero():
        return True
    basis = [p for e, p in product_basis(inv, d) if sum(e) >= 2]
    return in_span([_vector(p) for p in basis], _vector(f))


# -- invariance -----------------------------------------------------------------

EXACT_INVARIANCE_DEGREE = 6
RANDOM_POINTS = 3


def _is_signed_permutation(m) -> bool:
    return all(sum(1 for v in row if v != 0) == 1 and any(v in (1, -1) for v in row) for row in m)


def _generator_images(frame: GenFrame, m) -> list[Poly] | None:
    """Images of the frame generators under a signed permutation, if they are
    again signed generators (power sums and the Pfaffian)."""
    if frame.kind != "power" or not _is_signed_permutation(m):
        return None
    signs = [next(v for v in row if v != 0) for row in m]
    flips = sum(1 for v in signs if v == -1)
    out = []
    for name, g in zip(frame.ring.names, frame.ring.gens()):
        if name == "P":
            out.append(g.scale(-1) if flips % 2 else g)
        elif int(name[1:]) % 2 == 0 or flips == 0:
            out.append(g)
        else:
            return None
    return out


def check_invariant(rs: RootSystem, frame: GenFrame, f: Poly, exact: bool | None = None) -> bool:
    """Whether ``f`` is fixed by every simple reflection.

    Signed permutations act on power-sum frames by signs on generators and
    are checked exactly in the frame ring.  Coordinate frames and low
    degrees are tested by exact polynomial equality.  Dense reflections on
    high-degree frame elements are tested by exact evaluation at seeded
    random rational points, a probabilistic identity test.
    """
    g = None
    dense = []
    for s in rs.simple_reflections:
        images = _generator_images(frame, s)
        if images is not None:
            if f.substitute(images, frame.ring) != f:
                return False
            continue
        use_exact = exact
        if use_exact is None:
            use_exact = (
                frame.kind == "coordinate"
                or f.degree() <= EXACT_INVARIANCE_DEGREE
                or _is_signed_permutation(s)
            )
        if use_exact:
            if g is None:
                g = expand_to_coordinates(frame, f, limit=max(f.degree(), 1))
            if g.linear_substitute(s) != g:
                return False
        else:
            dense.append(s)
    if not dense:
        return True
    rng = random.Random(f"{rs.label}:{f.degree()}")
    n = rs.ambient_dim
    for _ in range(RANDOM_POINTS):
        x = [Fraction(rng.randint(-40, 40), rng.randint(1, 9)) for _ in range(n)]
        fx = evaluate(frame, f, x)
        for s in dense:
            sx = [sum((s[i][j] * x[j] for j in range(n) if s[i][j]), Fraction(0)) for i in range(n)]
            if evaluate(frame, f, sx) != fx:
                return False
    return True


# -- classical ------------------------------------------------------------------


def classical_generators(rs: RootSystem) -> InvariantSet:
    """Normalized Newton power sums, plus the Pfaffian generators for type D."""
    if not rs.is_classical:
        raise ValueError(f"{rs.label} is not a classical type")
    frame = build_frame(rs)
    fam, n = rs.family, rs.rank
    gens, names = [], []

    def q(k):
        return frame.power_sum(k).scale(Fraction(1, k))

    if fam == "A":
        for k in range(2, n + 2):
            gens.append(q(k))
            names.append(f"q{k}")
    elif fam in "BC":
        for k in range(1, n + 1):
            gens.append(q(2 * k))
            names.append(f"q{2 * k}")
    else:
        pf = frame.atom("P").scale(sqrt(-(n - 1)))
        for k in range(1, n):
            if 2 * k == n:
                continue
            gens.append(q(2 * k))
            names.append(f"q{2 * k}")
        if n % 2:
            gens.append(pf)
            names.append("Pf")
        else:
            gens.append(q(n) + pf)
            names.append(f"q{n}+Pf")
            gens.append(q(n) - pf)
            names.append(f"q{n}-Pf")
    inv = InvariantSet(rs, frame, (), (), ())
    return _with_generators(inv, gens, names, ["closed-form"] * len(gens))


# -- exceptional E types -----------------------------------------------------------


def load_seed_file(path: str) -> dict[str, dict[str, str]]:
    """Read seed overrides: JSON ``{"E8": {"A8": "...", ...}, ...}``."""
    with open(path, encoding="utf-8") as fh:
        data = json.load(fh)
    if not isinstance(data, dict) or not all(isinstance(v, dict) for v in data.values()):
        raise ValueError("seed file must map type labels to {name: polynomial} objects")
    return data


def exceptional_seed_invariants(
    label: str, seeds: Mapping[str, Mapping[str, str]] | None = None, check: bool = True
) -> InvariantSet:
    """The explicit degree-2 and seed invariants of E6, E7, E8 (partial set)."""
    rs = build_root_system(label)
    if rs.family != "E":
        raise ValueError(f"{label} has no seed invariants")
    frame = build_frame(rs)
    table = dict(SEEDS[rs.label])
    if seeds and rs.label in seeds:
        table.update(seeds[rs.label])
    gens, names, prov = [], [], []
    for name, text in table.items():
        g = frame.parse(text)
        if not g.is_homogeneous() or g.is_zero():
            raise ValueError(f"seed {name} is not a nonzero homogeneous polynomial")
        if name == "A2":
            g = g.scale(Fraction(1, 2))
            name = "A2/2"
        gens.append(g)
        names.append(name)
        prov.append("seed")
    inv = _with_generators(InvariantSet(rs, frame, (), (), ()), gens, names, prov)
    if check:
        for name, g in zip(inv.names, inv.generators):
            if not check_invariant(rs, frame, g):
                raise NotAGenerator(f"seed {name} is not invariant under W({rs.label})")
        _check_indecomposable(inv)
    return inv


def _check_indecomposable(inv: InvariantSet) -> None:
    for k, (name, g) in enumerate(zip(inv.names, inv.generators)):
        lower = InvariantSet(
            inv.root_system,
            inv.frame,
            tuple(h for h in inv.generators if h.degree() < g.degree()),
            (),
            (),
        )
        if is_decomposable(lower, g):
            raise NotAGenerator(f"{name} (degree {g.degree()}) is decomposable")


def complete_by_pairing(
    seed: InvariantSet, recipes: Sequence[tuple[str, str, str]] | None = None, check: bool = True
) -> InvariantSet:
    """Fill in the missing generators by pairing, following the type's recipe."""
    if seed.is_complete:
        return seed
    if recipes is None:
        recipes = RECIPES.get(seed.root_system.label)
        if recipes is None:
            raise ValueError(f"no completion recipe for {seed.root_system.label}")
    gens = list(seed.generators)
    names = list(seed.names)
    prov = list(seed.provenance)
    how = {n: n for n in names}
    for target, left, right in recipes:
        if target in names:
            continue
        a = gens[names.index(left)]
        b = gens[names.index(right)]
        g = leibniz_pairing(seed.frame, a, b)
        if check:
            lower = InvariantSet(
                seed.root_system, seed.frame, tuple(h for h in gens if h.degree() < g.degree()), (), ()
            )
            if g.is_zero() or is_decomposable(lower, g):
                raise NotAGenerator(f"{target} = {left} o {right} is decomposable in degree {g.degree()}")
        how[target] = f"{_wrap(how[left])}∘{_wrap(how[right])}"
        gens.append(g)
        names.append(target)
        prov.append(f"paired: {how[target]}")
    out = _with_generators(seed, gens, names, prov)
    if not out.is_complete:
        raise ValueError(f"recipe left degrees {out.degrees}, expected {seed.root_system.degrees}")
    return out


def _wrap(expr: str) -> str:
    return f"({expr})" if "∘" in expr else expr


# -- averaging (G2, F4) -------------------------------------------------------------


def _candidates(n: int):
    for k in range(1, n + 1):
        yield tuple(list(range(1, k + 1)) + [0] * (n - k))
    j = 1
    while True:
        yield tuple(list(range(1, n)) + [n + j])
        j += 1


def averaged_generators(
    rs: RootSystem, top_by_pairing: bool = False, max_candidates: int = 50, allow_large: bool = False
) -> InvariantSet:
    """Generators ``sum_w (w.a)^d`` for the first candidate ``a`` that works.

    With ``top_by_pairing`` the top generator of F4 is instead the pairing of
    the degree-6 and degree-8 generators.
    """
    frame = coordinate_frame(rs.gram_inverse, name=rs.label)
    base = InvariantSet(rs, frame, (), (), ())
    half_quadric = rs.quadric().scale(Fraction(1, 2))
    for count, a in enumerate(_candidates(rs.ambient_dim)):
        if count >= max_candidates:
            break
        gens = [half_quadric]
        names = ["Q/2"]
        prov = ["closed-form"]
        ok = True
        for d in rs.degrees[1:]:
            if top_by_pairing and rs.label == "F4" and d == 12:
                g = leibniz_pairing(frame, gens[1], gens[2])
                tag = "paired: A6∘A8"
            else:
                g = weyl_orbit_sum(rs, a, d, allow_large=allow_large)
                tag = f"averaged a={list(a)}"
            lower = InvariantSet(rs, frame, tuple(gens), (), ())
            if g.is_zero() or is_decomposable(lower, g):
                ok = False
                break
            gens.append(g)
            names.append(f"A{d}")
            prov.append(tag)
        if ok:
            return _with_generators(base, gens, names, prov)
    raise NotAGenerator(f"no averaging vector among the first {max_candidates} candidates works")


def generators_for(
    label: str,
    seeds: Mapping[str, Mapping[str, str]] | None = None,
    check: bool = True,
    averaged: bool = False,
    allow_large: bool = False,
) -> InvariantSet:
    """Full basic-invariant set for any supported type.

    ``averaged`` forces Weyl averaging in plain coordinates; groups beyond
    the averaging bound need ``allow_large``.
    """
    rs = build_root_system(label)
    if averaged:
        return averaged_generators(rs, allow_large=allow_large)
    if rs.is_classical:
        return classical_generators(rs)
    if rs.family == "E":
        return complete_by_pairing(exceptional_seed_invariants(rs.label, seeds, check), check=check)
    return averaged_generators(rs)


# -- Jacobian -------------------------------------------------------------------------


def _restriction(rs: RootSystem) -> tuple[PolyRing, list[Poly]]:
    """Coordinates with exactly ``rank`` variables (trace-zero slice for type A)."""
    if rs.family != "A":
        return rs.coords, rs.coords.gens()
    ring = coordinate_ring(rs.rank)
    x = ring.gens()
    last = ring.zero()
    for xi in x:
        last = last - xi
    return ring, x + [last]


def _poly_det(m: list[list[Poly]], ring: PolyRing) -> Poly:
    r = len(m)
    if r == 1:
        return m[0][0]
    out = ring.zero()
    for j in range(r):
        if m[0][j].is_zero():
            continue
        minor = [row[:j] + row[j + 1 :] for row in m[1:]]
        t = m[0][j] * _poly_det(minor, ring)
        out = out + t if j % 2 == 0 else out - t
    return out


def jacobian_check(inv: InvariantSet):
    """Scalar ``c`` with ``det(d psi_i / d x_j) = c * prod(positive roots)``."""
    rs = inv.root_system
    if not inv.is_complete and inv.rank != rs.rank:
        raise ValueError("Jacobian needs exactly rank-many generators")
    if inv.rank > 6:
        raise ValueError("symbolic Jacobian limited to rank 6")
    ring, images = _restriction(rs)
    gens = [expand_to_coordinates(inv.frame, g, limit=64).substitute(images, ring) for g in inv.generators]
    jac = [[g.diff(k) for k in range(ring.nvars)] for g in gens]
    j = _poly_det(jac, ring)
    if j.is_zero():
        raise NotAGenerator("zero Jacobian: not a generating set")
    delta = weyl_denominator(rs).substitute(images, ring)
    exp, c = delta.leading_term()
    ratio = j.coeff(exp) / c
    if delta.scale(ratio) != j:
        raise NotAGenerator("Jacobian is not a scalar multiple of the Weyl denominator")
    return ratio
