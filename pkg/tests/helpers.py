"""Shared fixtures: cached generator sets and a sympy route for cross-checks."""

from __future__ import annotations

from fractions import Fraction
from fractions import Fraction as Fr
from functools import lru_cache

import sympy

from weylpair.invariants import generators_for
from weylpair.pairing import d_table
from weylpair.poly import Poly, PolyRing


@lru_cache(maxsize=None)
def gens(label: str):
    return generators_for(label)


@lru_cache(maxsize=None)
def dtab(label: str):
    return d_table(gens(label))


def symbols_of(ring: PolyRing):
    return sympy.symbols(list(ring.names))


def to_sympy(p: Poly):
    xs = symbols_of(p.ring)
    out = sympy.Integer(0)
    for e, c in p.terms.items():
        term = sympy.Rational(c.numerator, c.denominator)
        for x, k in zip(xs, e):
            term *= x**k
        out += term
    return sympy.expand(out)


def from_sympy(expr, ring: PolyRing) -> Poly:
    xs = symbols_of(ring)
    poly = sympy.Poly(sympy.expand(expr), *xs)
    return Poly.from_terms(ring, ((tuple(m), Fraction(int(c.p), int(c.q))) for m, c in poly.terms()))


def sympy_gradient_pairing(a, b, xs, gram):
    n = len(xs)
    return sympy.expand(
        sum(sympy.diff(a, xs[i]) * sympy.diff(b, xs[j]) * gram[i][j] for i in range(n) for j in range(n) if gram[i][j])
    )


def rat(gram):
    return [[sympy.Rational(v.numerator, v.denominator) for v in row] for row in gram]


# frozen inner blocks of the exceptional d tables, keyed by degree
TABLE2 = {5: [1, 1, 0, 1], 6: [1, 0, Fr(8, 9), 0], 8: [0, Fr(8, 9), 0, 0], 9: [1, 0, 0, 0]}
TABLE3 = {
    6: [1, 1, 1, 0, 1],
    8: [1, 1, 0, Fr(6, 7), 0],
    10: [1, 0, Fr(5, 7), 0, 0],
    12: [0, Fr(6, 7), 0, 0, 0],
    14: [1, 0, 0, 0, 0],
}
TABLE4 = {
    8: [1, 1, 1, Fr(9, 7), 0, 1],
    12: [1, 0, 1, 0, Fr(5, 6), 0],
    14: [1, 1, 0, Fr(3, 4), 0, 0],
    18: [Fr(9, 7), 0, Fr(3, 4), 0, 0, 0],
    20: [0, Fr(5, 6), 0, 0, 0, 0],
    24: [1, 0, 0, 0, 0, 0],
}



def expected_classical(label):
    """Expected images {(i, j): {target: value}} from the Newton and Pfaffian formulas."""
    inv = gens(label)
    ex = inv.root_system.exponents
    names = inv.names
    r = inv.rank
    out = {}
    fam, n = label[0], int(label[1:])
    pf = [k for k, nm in enumerate(names) if "Pf" in nm]
    for i in range(r):
        for j in range(r):
            s = ex[i] + ex[j]
            target = [k for k in range(r) if ex[k] == s - 1]
            if not target:
                out[i, j] = {}
                continue
            if fam == "D" and n % 2 == 1 and pf and (i in pf or j in pf):
                other = j if i in pf else i
                if other == 0 or (i in pf and j in pf):
                    out[i, j] = {target[0]: Fr(s)}
                else:
                    out[i, j] = {}
                continue
            if fam == "D" and n % 2 == 0 and (i in pf or j in pf):
                if i in pf and j in pf:
                    out[i, j] = {} if i == j else {target[0]: Fr(2 * s)}
                else:
                    sp, other = (i, j) if i in pf else (j, i)
                    if other == 0:
                        out[i, j] = {sp: Fr(s)}
                    else:
                        out[i, j] = {target[0]: Fr(s)}
                continue
            if len(target) == 2:
                out[i, j] = {t: Fr(s, 2) for t in target}
            else:
                out[i, j] = {target[0]: Fr(s)}
    return out

