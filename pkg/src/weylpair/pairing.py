"""Images modulo decomposables, the d/c constant tables and the Bezoutiante."""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction

from .invariants import InvariantSet, product_basis
from .linalg import solve
from .poly import Poly
from .rootsys import RootSystem
from .scalar import is_zero

__all__ = [
    "ProjectionError",
    "ModSquaresImage",
    "DTable",
    "CTable",
    "mod_squares_project",
    "d_table",
    "c_table",
    "bezoutiante",
    "BezoutianteReport",
    "verify_bezoutiante",
    "GendiReport",
    "verify_gendi",
]


class ProjectionError(ValueError):
    """The input is not a polynomial in the generators."""


@dataclass(frozen=True)
class ModSquaresImage:
    """Linear part of an invariant in ``R+/(R+)^2``.

    ``targets`` are the indices of the generators of ``degree`` and
    ``coefficients`` the matching coefficients.  ``method`` is ``"solve"``
    when the residual was verified decomposable by an exact linear solve and
    ``"degree"`` when no generator has this degree so the linear part is
    zero without computation.
    """

    degree: int
    targets: tuple[int, ...]
    coefficients: tuple
    decomposable_residual: bool = True
    method: str = "solve"

    @property
    def is_zero(self) -> bool:
        return all(is_zero(c) for c in self.coefficients)

    def coefficient(self, index: int):
        for t, c in zip(self.targets, self.coefficients):
            if t == index:
                return c
        return Fraction(0)

    @property
    def value(self):
        """Single coefficient when there is exactly one target generator."""
        if len(self.coefficients) == 1:
            return self.coefficients[0]
        if not self.coefficients:
            return Fraction(0)
        return self.coefficients


def mod_squares_project(f: Poly, inv: InvariantSet, strict: bool = True) -> ModSquaresImage:
    """Write ``f`` as ``sum c_k psi_k + decomposable`` and return the ``c_k``."""
    if f.ring != inv.frame.ring:
        raise ProjectionError("polynomial is not in the generator frame")
    f = inv.frame.to_cartan(f)
    if f.is_zero():
        return ModSquaresImage(0, (), (), True, "solve")
    if not f.is_homogeneous():
        raise ProjectionError("input must be homogeneous")
    d = f.degree()
    targets = tuple(inv.indices_of_degree(d))
    if not strict and not targets:
        return ModSquaresImage(d, (), (), True, "degree")
    basis = product_basis(inv, d)
    columns = {e: dict(p.terms) for e, p in basis}
    sol = solve(columns, dict(f.terms))
    if sol is None:
        raise ProjectionError(f"degree-{d} input is not a polynomial in the generators")
    coeffs = []
    for t in targets:
        e = tuple(int(k == t) for k in range(inv.rank))
        coeffs.append(sol[e])
    return ModSquaresImage(d, targets, tuple(coeffs), True, "solve")


# -- tables -----------------------------------------------------------------------


@dataclass(frozen=True)
class DTable:
    """``psi_i o psi_j = d_ij psi_k`` modulo decomposables.

    ``images[i][j]`` is the :class:`ModSquaresImage` of the pairing (or
    ``None`` outside the degree mask).
    """

    label: str
    exponents: tuple[int, ...]
    degrees: tuple[int, ...]
    mask: tuple[tuple[bool, ...], ...]
    images: tuple[tuple[ModSquaresImage | None, ...], ...]

    @property
    def rank(self) -> int:
        return len(self.exponents)

    def entry(self, i: int, j: int):
        """Scalar entry, or a tuple when the target degree has two generators."""
        img = self.images[i][j]
        return Fraction(0) if img is None else img.value

    def coefficients(self, i: int, j: int) -> tuple:
        img = self.images[i][j]
        return () if img is None else img.coefficients

    def nonzero(self, i: int, j: int) -> bool:
        img = self.images[i][j]
        return img is not None and not img.is_zero

    def matrix(self):
        return [[self.entry(i, j) for j in range(self.rank)] for i in range(self.rank)]


@dataclass(frozen=True)
class CTable:
    """``c_ij = d_ij / (m_i + m_j)``."""

    label: str
    exponents: tuple[int, ...]
    entries: tuple[tuple[object, ...], ...]

    def entry(self, i: int, j: int):
        return self.entries[i][j]

    def matrix(self):
        return [list(row) for row in self.entries]


def degree_mask(rs_exponents) -> tuple[tuple[bool, ...], ...]:
    ex = set(rs_exponents)
    return tuple(tuple((a + b - 1) in ex for b in rs_exponents) for a in rs_exponents)


def d_table(inv: InvariantSet) -> DTable:
    rs = inv.root_system
    if not inv.is_complete:
        raise ValueError("d_table needs a complete generator set")
    r = inv.rank
    mask = degree_mask(rs.exponents)
    rows = [[None] * r for _ in range(r)]
    for i in range(r):
        for j in range(i, r):
            if mask[i][j]:
                img = mod_squares_project(inv.pair(i, j), inv)
                rows[i][j] = rows[j][i] = img
    return DTable(
        label=rs.label,
        exponents=rs.exponents,
        degrees=rs.degrees,
        mask=mask,
        images=tuple(tuple(row) for row in rows),
    )


def c_table(d: DTable, rs: RootSystem | None = None) -> CTable:
    ex = d.exponents if rs is None else rs.exponents
    out = []
    for i in range(d.rank):
        row = []
        for j in range(d.rank):
            v = d.entry(i, j)
            s = ex[i] + ex[j]
            row.append(tuple(x / s for x in v) if isinstance(v, tuple) else v / s)
        out.append(tuple(row))
    return CTable(d.label, ex, tuple(out))


# -- Bezoutiante --------------------------------------------------------------------


def bezoutiante(inv: InvariantSet, strict: bool | None = None) -> list[list[ModSquaresImage]]:
    """Matrix of ``psi_i o psi_j`` classified modulo decomposables.

    With ``strict=False`` entries of a degree carrying no generator are
    classified by degree alone and the pairing is not computed.  The default
    is strict for all types except E7 and E8.
    """
    if strict is None:
        strict = inv.root_system.label not in ("E7", "E8")
    r = inv.rank
    gen_degrees = set(inv.degrees)
    out = [[None] * r for _ in range(r)]
    for i in range(r):
        for j in range(i, r):
            d = inv.degrees[i] + inv.degrees[j] - 2
            if not strict and d not in gen_degrees:
                img = ModSquaresImage(d, (), (), True, "degree")
            else:
                img = mod_squares_project(inv.pair(i, j), inv, strict=True)
            out[i][j] = out[j][i] = img
    return out


@dataclass
class BezoutianteReport:
    label: str
    passed: bool
    antidiagonal: list = field(default_factory=list)
    violations: list = field(default_factory=list)


def verify_bezoutiante(inv: InvariantSet, strict: bool | None = None) -> BezoutianteReport:
    """Antidiagonal entries are nonzero multiples of the top generator and
    everything strictly below the antidiagonal is decomposable."""
    b = bezoutiante(inv, strict)
    r = inv.rank
    top = r - 1
    rep = BezoutianteReport(inv.root_system.label, True)
    for i in range(r):
        for j in range(r):
            img = b[i][j]
            if i + j == r - 1:
                c = img.coefficient(top)
                rep.antidiagonal.append((i + 1, j + 1, c))
                if is_zero(c):
                    rep.violations.append(f"antidiagonal ({i + 1},{j + 1}) has zero top coefficient")
            elif i + j > r - 1 and not img.is_zero:
                rep.violations.append(f"entry ({i + 1},{j + 1}) below the antidiagonal is not decomposable")
    rep.passed = not rep.violations
    return rep


# -- the generator theorem -------------------------------------------------------------


@dataclass
class GendiReport:
    label: str
    passed: bool
    exceptional: bool = False
    violations: list = field(default_factory=list)
    notes: list = field(default_factory=list)


def verify_gendi(d: DTable, rs: RootSystem | None = None) -> GendiReport:
    """``d_ij != 0`` exactly when ``m_i + m_j - 1`` is an exponent.

    For ``D_{2n}`` the two generators of degree ``2n`` follow their own
    pattern: zero self-pairings, a nonzero cross pairing onto the top
    generator, and Newton pairs landing in degree ``2n`` split equally
    across both.
    """
    rs_label = d.label if rs is None else rs.label
    r = d.rank
    degs = d.degrees
    rep = GendiReport(rs_label, True)
    special: set[int] = set()
    if rs_label.startswith("D") and int(rs_label[1:]) % 2 == 0:
        n2 = int(rs_label[1:])
        special = {i for i in range(r) if degs[i] == n2}
        rep.exceptional = True
    for i in range(r):
        for j in range(r):
            expected = d.mask[i][j]
            if special and i in special and j in special:
                if i == j:
                    expected = False
                elif not d.nonzero(i, j):
                    rep.violations.append(f"cross pairing ({i + 1},{j + 1}) of the degree-{degs[i]} pair vanishes")
            if d.nonzero(i, j) != expected:
                rep.violations.append(
                    f"d({degs[i]},{degs[j]}) is {'nonzero' if d.nonzero(i, j) else 'zero'},"
                    f" expected {'nonzero' if expected else 'zero'}"
                )
    if special:
        a, b = sorted(special)
        rep.notes.append(f"D-even pattern: d({a + 1},{a + 1}) = d({b + 1},{b + 1}) = 0, d({a + 1},{b + 1}) = {d.entry(a, b)}")
        for i in range(r):
            for j in range(i, r):
                if i in special or j in special or not d.mask[i][j]:
                    continue
                img = d.images[i][j]
                if img is not None and set(img.targets) == special:
                    ca, cb = img.coefficient(a), img.coefficient(b)
                    if is_zero(ca) or ca != cb:
                        rep.violations.append(
                            f"Newton pair ({i + 1},{j + 1}) lands unevenly in degree {degs[a]}: {ca}, {cb}"
                        )
    rep.passed = not rep.violations
    return rep
