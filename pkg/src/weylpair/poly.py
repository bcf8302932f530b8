"""Sparse multivariate polynomials with exact coefficients.

A :class:`Poly` is a map from dense exponent tuples to nonzero scalars
(``Fraction`` or :class:`~weylpair.scalar.Quad`) attached to a
:class:`PolyRing` that carries variable names and (optionally) weights.
The same class serves ambient coordinate polynomials (``x1..xn``) and
polynomials in abstract invariant generators (``p2, p4, P``), the latter
with weighted degrees.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations_with_replacement
from typing import Iterable, Mapping, Sequence

from .scalar import Quad, as_scalar, format_scalar

__all__ = [
    "PolyRing",
    "Poly",
    "coordinate_ring",
    "gradient_pairing",
    "ParseError",
    "parse_poly",
]


class ParseError(ValueError):
    pass


@dataclass(frozen=True)
class PolyRing:
    names: tuple[str, ...]
    weights: tuple[int, ...] | None = None

    def __post_init__(self):
        if self.weights is not None and len(self.weights) != len(self.names):
            raise ValueError("weights and names differ in length")

    @property
    def nvars(self) -> int:
        return len(self.names)

    def weight(self, i: int) -> int:
        return 1 if self.weights is None else self.weights[i]

    def degree_of(self, exp: tuple[int, ...]) -> int:
        if self.weights is None:
            return sum(exp)
        return sum(e * w for e, w in zip(exp, self.weights))

    def zero(self) -> "Poly":
        return Poly(self, {})

    def one(self) -> "Poly":
        return self.const(1)

    def const(self, c) -> "Poly":
        c = as_scalar(c)
        if c == 0:
            return Poly(self, {})
        return Poly(self, {(0,) * self.nvars: c})

    def var(self, i: int) -> "Poly":
        exp = [0] * self.nvars
        exp[i] = 1
        return Poly(self, {tuple(exp): Fraction(1)})

    def gens(self) -> list["Poly"]:
        return [self.var(i) for i in range(self.nvars)]

    def index(self, name: str) -> int:
        return self.names.index(name)

    def monomials(self, degree: int) -> list[tuple[int, ...]]:
        """All exponent tuples of (weighted) degree ``degree``."""
        out: list[tuple[int, ...]] = []
        n = self.nvars
        w = [self.weight(i) for i in range(n)]

        def rec(i, left, cur):
            if i == n:
                if left == 0:
                    out.append(tuple(cur))
                return
            for e in range(left // w[i] + 1):
                cur.append(e)
                rec(i + 1, left - e * w[i], cur)
                cur.pop()

        rec(0, degree, [])
        return out

    def parse(self, text: str) -> "Poly":
        return parse_poly(text, self)


def coordinate_ring(n: int, prefix: str = "x") -> PolyRing:
    return PolyRing(tuple(f"{prefix}{i + 1}" for i in range(n)))


class Poly:
    """Immutable sparse polynomial; never stores zero coefficients."""

    __slots__ = ("ring", "terms", "_hash")

    def __init__(self, ring: PolyRing, terms: Mapping[tuple[int, ...], object]):
        self.ring = ring
        self.terms = terms
        self._hash = None

    # -- construction helpers -------------------------------------------------
    @classmethod
    def from_terms(cls, ring: PolyRing, items: Iterable[tuple[tuple[int, ...], object]]) -> "Poly":
        acc: dict = {}
        for e, c in items:
            if e in acc:
                acc[e] = acc[e] + c
            else:
                acc[e] = c
        return cls(ring, {e: c for e, c in acc.items() if c != 0})

    def _check(self, other: "Poly"):
        if other.ring is not self.ring and other.ring != self.ring:
            raise ValueError(f"ring mismatch: {self.ring.names} vs {other.ring.names}")

    def _lift(self, other):
        if isinstance(other, Poly):
            self._check(other)
            return other
        return self.ring.const(other)

    # -- arithmetic -----------------------------------------------------------
    def __add__(self, other):
        other = self._lift(other)
        if not other.terms:
            return self
        if not self.terms:
            return other
        out = dict(self.terms)
        for e, c in other.terms.items():
            v = out.get(e)
            if v is None:
                out[e] = c
            else:
                v = v + c
                if v == 0:
                    del out[e]
                else:
                    out[e] = v
        return Poly(self.ring, out)

    __radd__ = __add__

    def __neg__(self):
        return Poly(self.ring, {e: -c for e, c in self.terms.items()})

    def __sub__(self, other):
        return self + (-self._lift(other))

    def __rsub__(self, other):
        return self._lift(other) - self

    def scale(self, c) -> "Poly":
        c = as_scalar(c)
        if c == 0:
            return self.ring.zero()
        if c == 1:
            return self
        return Poly(self.ring, {e: v * c for e, v in self.terms.items() if v * c != 0})

    def __mul__(self, other):
        if not isinstance(other, Poly):
            return self.scale(other)
        self._check(other)
        if len(self.terms) > len(other.terms):
            a, b = other.terms, self.terms
        else:
            a, b = self.terms, other.terms
        out: dict = {}
        get = out.get
        for e1, c1 in a.items():
            for e2, c2 in b.items():
                e = tuple(x + y for x, y in zip(e1, e2))
                v = get(e)
                out[e] = c1 * c2 if v is None else v + c1 * c2
        return Poly(self.ring, {e: c for e, c in out.items() if c != 0})

    def __rmul__(self, other):
        return self.scale(other)

    def __truediv__(self, other):
        if isinstance(other, Poly):
            raise TypeError("polynomial division is not supported")
        return self.scale(Fraction(1) / other if not isinstance(other, Quad) else other.inverse())

    def __pow__(self, k: int) -> "Poly":
        if k < 0:
            raise ValueError("negative power")
        out = self.ring.one()
        base = self
        while k:
            if k & 1:
                out = out * base
            k >>= 1
            if k:
                base = base * base
        return out

    # -- comparison -----------------------------------------------------------
    def __eq__(self, other):
        if isinstance(other, Poly):
            return self.ring == other.ring and self.terms == other.terms
        try:
            return self.terms == self.ring.const(other).terms
        except TypeError:
            return NotImplemented

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self.ring, frozenset(self.terms.items())))
        return self._hash

    def __bool__(self):
        return bool(self.terms)

    def is_zero(self) -> bool:
        return not self.terms

    # -- structure ------------------------------------------------------------
    def degree(self) -> int:
        """Maximal (weighted) degree; -1 for the zero polynomial."""
        if not self.terms:
            return -1
        return max(self.ring.degree_of(e) for e in self.terms)

    def degrees(self) -> set[int]:
        return {self.ring.degree_of(e) for e in self.terms}

    def is_homogeneous(self) -> bool:
        return len(self.degrees()) <= 1

    def homogeneous_part(self, d: int) -> "Poly":
        return Poly(self.ring, {e: c for e, c in self.terms.items() if self.ring.degree_of(e) == d})

    def coeff(self, exp: tuple[int, ...]):
        return self.terms.get(tuple(exp), Fraction(0))

    def constant_term(self):
        return self.coeff((0,) * self.ring.nvars)

    def sorted_terms(self) -> list[tuple[tuple[int, ...], object]]:
        """Terms in graded-lex order (highest degree first)."""
        deg = self.ring.degree_of
        return sorted(self.terms.items(), key=lambda t: (deg(t[0]), t[0]), reverse=True)

    def leading_term(self):
        return self.sorted_terms()[0]

    def diff(self, i: int) -> "Poly":
        out = {}
        for e, c in self.terms.items():
            k = e[i]
            if k:
                ne = e[:i] + (k - 1,) + e[i + 1 :]
                out[ne] = c * k
        return Poly(self.ring, out)

    def gradient(self) -> list["Poly"]:
        return [self.diff(i) for i in range(self.ring.nvars)]

    def variables_used(self) -> set[int]:
        used = set()
        for e in self.terms:
            used.update(i for i, k in enumerate(e) if k)
        return used

    def substitute(self, images: Sequence["Poly"], ring: PolyRing | None = None) -> "Poly":
        """Algebra map sending variable ``i`` to ``images[i]``."""
        if len(images) != self.ring.nvars:
            raise ValueError("substitution needs one image per variable")
        if ring is None:
            ring = images[0].ring if images else self.ring
        cache: dict[tuple[int, int], Poly] = {}

        def power(i, k):
            key = (i, k)
            p = cache.get(key)
            if p is None:
                if k == 1:
                    p = images[i]
                else:
                    h = power(i, k // 2)
                    p = h * h
                    if k & 1:
                        p = p * images[i]
                cache[key] = p
            return p

        acc: dict = {}
        for e, c in self.terms.items():
            term = ring.const(c)
            for i, k in enumerate(e):
                if k:
                    term = term * power(i, k)
            for te, tc in term.terms.items():
                v = acc.get(te)
                acc[te] = tc if v is None else v + tc
        return Poly(ring, {e: c for e, c in acc.items() if c != 0})

    def linear_substitute(self, matrix: Sequence[Sequence[object]]) -> "Poly":
        """Substitute ``x_i -> sum_j matrix[i][j] x_j`` (same ring)."""
        gens = self.ring.gens()
        images = []
        for row in matrix:
            img = self.ring.zero()
            for j, m in enumerate(row):
                if m != 0:
                    img = img + gens[j].scale(m)
            images.append(img)
        return self.substitute(images, self.ring)

    def evaluate(self, point: Sequence[object]):
        if len(point) != self.ring.nvars:
            raise ValueError("point has the wrong number of coordinates")
        total = Fraction(0)
        pw: dict[tuple[int, int], object] = {}
        for e, c in self.terms.items():
            v = c
            for i, k in enumerate(e):
                if k:
                    key = (i, k)
                    p = pw.get(key)
                    if p is None:
                        p = as_scalar(point[i]) ** k
                        pw[key] = p
                    v = v * p
            total = total + v
        return total

    def map_coefficients(self, fn) -> "Poly":
        return Poly(self.ring, {e: fn(c) for e, c in self.terms.items() if fn(c) != 0})

    def radicand(self) -> int | None:
        for c in self.terms.values():
            if isinstance(c, Quad):
                return c.d
        return None

    # -- text -----------------------------------------------------------------
    def __str__(self) -> str:
        if not self.terms:
            return "0"
        parts = []
        names = self.ring.names
        for idx, (e, c) in enumerate(self.sorted_terms()):
            mono = "*".join(
                names[i] if k == 1 else f"{names[i]}^{k}" for i, k in enumerate(e) if k
            )
            if isinstance(c, Quad):
                coef, neg = format_scalar(c), False
            else:
                neg = c < 0
                a = -c if neg else c
                coef = str(a)
                if a.denominator != 1:
                    coef = f"({coef})"
            if mono:
                body = mono if coef == "1" else f"{coef}*{mono}"
            else:
                body = coef
            if idx == 0:
                parts.append(f"-{body}" if neg else body)
            else:
                parts.append(f" - {body}" if neg else f" + {body}")
        return "".join(parts)

    def __repr__(self) -> str:
        return f"Poly({str(self)!r})"


def gradient_pairing(a: Poly, b: Poly, gram: Sequence[Sequence[object]]) -> Poly:
    """``sum_{h,k} (da/dx_h)(db/dx_k) gram[h][k]``."""
    n = a.ring.nvars
    if b.ring != a.ring:
        raise ValueError("gradient pairing needs both polynomials in one ring")
    if len(gram) != n or any(len(row) != n for row in gram):
        raise ValueError(f"metric must be {n}x{n}")
    da = a.gradient()
    db = b.gradient()
    out = a.ring.zero()
    for h in range(n):
        if da[h].is_zero():
            continue
        v = a.ring.zero()
        row = gram[h]
        for k in range(n):
            if row[k] != 0 and not db[k].is_zero():
                v = v + db[k].scale(row[k])
        if not v.is_zero():
            out = out + da[h] * v
    return out


# -- parsing ------------------------------------------------------------------

_TOKEN = re.compile(r"\s*(?:(\d+)|([A-Za-z_][A-Za-z_0-9]*)|(\*\*|[-+*/^()]))")


def _tokenize(text: str):
    pos = 0
    toks = []
    text = text.strip()
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if not m or m.end() == pos:
            raise ParseError(f"unexpected character at {pos}: {text[pos:pos + 10]!r}")
        num, name, op = m.groups()
        if num is not None:
            toks.append(("num", int(num)))
        elif name is not None:
            toks.append(("name", name))
        else:
            toks.append(("op", "^" if op == "**" else op))
        pos = m.end()
    return toks


def parse_poly(text: str, ring: PolyRing, atoms: Mapping[str, Poly] | None = None) -> Poly:
    """Parse a polynomial expression.

    Accepts ``+ - * / ^`` (or ``**``), parentheses, integers, ``sqrt(k)``
    and variable names of ``ring``.  ``atoms`` may supply extra names that
    expand to polynomials in ``ring``.
    """
    from .scalar import sqrt as _sqrt

    toks = _tokenize(text)
    pos = 0
    index = {name: i for i, name in enumerate(ring.names)}

    def peek():
        return toks[pos] if pos < len(toks) else (None, None)

    def take(kind=None, val=None):
        nonlocal pos
        t = peek()
        if t[0] is None or (kind and t[0] != kind) or (val and t[1] != val):
            raise ParseError(f"expected {val or kind}, got {t[1]!r} in {text!r}")
        pos += 1
        return t

    def expr():
        node = term()
        while peek() in (("op", "+"), ("op", "-")):
            op = take()[1]
            rhs = term()
            node = node + rhs if op == "+" else node - rhs
        return node

    def term():
        node = unary()
        while peek() in (("op", "*"), ("op", "/")) or peek()[0] in ("num", "name") or peek() == ("op", "("):
            if peek() == ("op", "/"):
                take()
                rhs = unary()
                if rhs.degree() > 0:
                    raise ParseError("division by a non-constant")
                node = node / rhs.constant_term()
            else:
                if peek() == ("op", "*"):
                    take()
                node = node * unary()
        return node

    def unary():
        if peek() == ("op", "-"):
            take()
            return -unary()
        if peek() == ("op", "+"):
            take()
            return unary()
        return power()

    def power():
        base = atom()
        if peek() == ("op", "^"):
            take()
            sign = 1
            if peek() == ("op", "-"):
                raise ParseError("negative exponents are not polynomial")
            k = take("num")[1]
            return base ** (sign * k)
        return base

    def atom():
        kind, val = peek()
        if kind == "num":
            take()
            return ring.const(val)
        if kind == "name":
            take()
            if val == "sqrt":
                take("op", "(")
                inner = expr()
                take("op", ")")
                c = inner.constant_term()
                if inner.degree() > 0 or Fraction(c).denominator != 1:
                    raise ParseError("sqrt takes an integer")
                return ring.const(_sqrt(int(c)))
            if val in index:
                return ring.var(index[val])
            if atoms and val in atoms:
                return atoms[val]
            raise ParseError(f"unknown variable {val!r}; ring has {', '.join(ring.names)}")
        if (kind, val) == ("op", "("):
            take()
            node = expr()
            take("op", ")")
            return node
        raise ParseError(f"unexpected token {val!r} in {text!r}")

    if not toks:
        raise ParseError("empty expression")
    result = expr()
    if pos != len(toks):
        raise ParseError(f"trailing input at token {toks[pos][1]!r}")
    return result


def monomial_count(nvars: int, degree: int) -> int:
    from math import comb

    return comb(nvars + degree - 1, degree)


def all_monomials(nvars: int, degree: int) -> list[tuple[int, ...]]:
    out = []
    for combo in combinations_with_replacement(range(nvars), degree):
        e = [0] * nvars
        for i in combo:
            e[i] += 1
        out.append(tuple(e))
    return out
