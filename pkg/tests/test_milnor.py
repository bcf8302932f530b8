from fractions import Fraction
from functools import lru_cache

import pytest
import sympy

from weylpair.milnor import (
    S_operator,
    build_milnor_ring,
    element_degree,
    is_associative,
    is_confluent,
    milnor_multiply,
    normal_form,
    poincare_exponents,
    predict_vanishing,
)
from weylpair.rootsys import build_root_system

from helpers import dtab

X, Y = sympy.symbols("x y")
SING = {"E6": X**3 + Y**4, "E7": X**3 + X * Y**3, "E8": X**3 + Y**5}


@lru_cache(maxsize=None)
def groebner(label):
    p = SING[label]
    return sympy.groebner([sympy.diff(p, X), sympy.diff(p, Y)], X, Y, order="grevlex", domain="QQ")


def groebner_normal_form(label, mono):
    return sympy.expand(groebner(label).reduce(X ** mono[0] * Y ** mono[1])[1])


def as_sympy(elem):
    return sympy.expand(sum(sympy.Rational(c.numerator, c.denominator) * X**a * Y**b for (a, b), c in elem.items()))


@pytest.mark.parametrize(
    "label,basis,degrees",
    [
        ("E6", [(0, 0), (0, 1), (1, 0), (0, 2), (1, 1), (1, 2)], [0, 3, 4, 6, 7, 10]),
        ("E8", None, [0, 6, 10, 12, 16, 18, 22, 28]),
        ("E7", None, [0, 4, 6, 8, 10, 12, 16]),
    ],
)
def test_bases(label, basis, degrees):
    ring = build_milnor_ring(label)
    if basis is not None:
        assert list(ring.basis) == basis
    assert list(ring.basis_degrees) == degrees


@pytest.mark.parametrize("label", ["E6", "E7", "E8"])
def test_dimension_matches_groebner(label):
    G = groebner(label)
    std = [(a, b) for a in range(10) for b in range(10) if not any(
        sympy.Poly(g, X, Y).LM(order="grevlex").exponents[0] <= a and sympy.Poly(g, X, Y).LM(order="grevlex").exponents[1] <= b
        for g in G.exprs)]
    assert len(std) == len(build_milnor_ring(label).basis) == build_root_system(label).rank


@pytest.mark.parametrize("label", ["E6", "E7", "E8"])
def test_products_match_groebner_reduction(label):
    ring = build_milnor_ring(label)
    for a in ring.basis:
        for b in ring.basis:
            ours = milnor_multiply(ring, ring.element(a), ring.element(b))
            theirs = groebner_normal_form(label, (a[0] + b[0], a[1] + b[1]))
            # both are normal forms in possibly different bases; compare modulo the ideal
            assert sympy.expand(groebner(label).reduce(as_sympy(ours))[1] - theirs) == 0


def test_small_products():
    ring = build_milnor_ring("E6")
    y, x = ring.element((0, 1)), ring.element((1, 0))
    assert milnor_multiply(ring, y, ring.element((0, 2))) == {}
    assert milnor_multiply(ring, x, y) == {(1, 1): Fraction(1)}
    e8 = build_milnor_ring("E8")
    assert S_operator(e8, e8.element((1, 0))) == {(1, 0): Fraction(12, 30)}


def test_e7_relation():
    ring = build_milnor_ring("E7")
    assert normal_form(ring, {(2, 0): Fraction(3)}) == {(0, 3): Fraction(-1)}


@pytest.mark.parametrize("label", ["E6", "E7", "E8"])
def test_ring_structure(label):
    ring = build_milnor_ring(label)
    rs = build_root_system(label)
    assert is_confluent(ring)
    assert is_associative(ring)
    assert poincare_exponents(ring) == [m - 1 for m in rs.exponents]
    for a in ring.basis:
        for b in ring.basis:
            prod = milnor_multiply(ring, ring.element(a), ring.element(b))
            if prod:
                assert element_degree(ring, prod) == ring.degree(a) + ring.degree(b)


@pytest.mark.parametrize("label", ["E6", "E7", "E8"])
def test_mask_matches_dtable(label):
    d = dtab(label)
    mask = predict_vanishing(build_milnor_ring(label))
    assert mask == [[d.nonzero(i, j) for j in range(d.rank)] for i in range(d.rank)]


def test_unsupported():
    with pytest.raises(ValueError):
        build_milnor_ring("F4")
