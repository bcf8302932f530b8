from fractions import Fraction

import pytest
import sympy
from hypothesis import given, settings, strategies as st

from weylpair.invariants import (
    InvariantSet,
    NotAGenerator,
    averaged_generators,
    check_invariant,
    complete_by_pairing,
    exceptional_seed_invariants,
    is_decomposable,
    jacobian_check,
)
from weylpair.rootsys import build_root_system
from weylpair.scalar import sqrt

from helpers import gens


def test_a3_newton_generators():
    inv = gens("A3")
    assert inv.names == ("q2", "q3", "q4")
    for k, g in zip((2, 3, 4), inv.generators):
        assert g == inv.frame.parse(f"p{k}/{k}")


def test_d5_pfaffian():
    inv = gens("D5")
    assert inv.degrees == (2, 4, 5, 6, 8)
    pf = inv.by_name("Pf")
    assert pf == inv.frame.parse("P").scale(sqrt(-4))


def test_c2():
    inv = gens("C2")
    assert inv.names == ("q2", "q4") and inv.degrees == (2, 4)


def test_exceptional_seeds_verbatim():
    e8 = exceptional_seed_invariants("E8")
    assert e8.by_name("A8") == e8.frame.parse("-10080*P - 105*p2^2*p4 + 105*p4^2 + 168*p2*p6 - 180*p8")
    e6 = exceptional_seed_invariants("E6")
    assert e6.by_name("A2/2").scale(2) == e6.frame.parse("p1^2/2 + 3*p2/2")
    e7 = exceptional_seed_invariants("E7")
    assert e7.by_name("A2/2").scale(2) == e7.frame.parse("p1^2 + 2*p2")


def test_completion_by_pairing():
    e6 = gens("E6")
    assert e6.by_name("A8") == e6.pair(e6.names.index("A5"), e6.names.index("A5"))
    assert e6.by_name("A8").degree() == 8
    e8 = gens("E8")
    assert e8.by_name("A30").degree() == 30
    assert e8.provenance[-1] == "paired: A8∘((A8∘A8)∘A12)"


def test_complete_seed_unchanged():
    inv = gens("E6")
    assert complete_by_pairing(inv) is inv


def test_averaged_types():
    assert gens("G2").degrees == (2, 6)
    assert gens("F4").degrees == (2, 6, 8, 12)
    alt = averaged_generators(build_root_system("F4"), top_by_pairing=True)
    assert alt.degrees == (2, 6, 8, 12) and alt.provenance[-1].startswith("paired")


def _sympy_jacobian_ratio(label):
    # second route: sympy determinant on the same restricted coordinates
    inv = gens(label)
    rs = inv.root_system
    from weylpair.genring import expand_to_coordinates

    xs = sympy.symbols(list(rs.coords.names))
    subs = {}
    free = xs
    if rs.family == "A":
        free = xs[:-1]
        subs = {xs[-1]: -sum(free)}
    polys = []
    for g in inv.generators:
        e = expand_to_coordinates(inv.frame, g, limit=64)
        expr = sum(sympy.Rational(c.numerator, c.denominator) * sympy.prod([x**k for x, k in zip(xs, m)]) for m, c in e.terms.items())
        polys.append(sympy.expand(expr.subs(subs)))
    jac = sympy.Matrix([[sympy.diff(p, v) for v in free] for p in polys]).det()
    delta = sympy.prod([sum(sympy.Rational(c.numerator, c.denominator) * x for c, x in zip(r, xs)) for r in _positive_forms(rs)])
    return sympy.simplify(sympy.expand(jac) / sympy.expand(delta.subs(subs)))


def _positive_forms(rs):
    # roots as linear forms on the Cartan: alpha(x) = alpha . x in the ambient coordinates
    return rs.positive_roots


@pytest.mark.parametrize("label", ["A2", "A3", "C2", "G2"])
def test_jacobian_is_weyl_denominator_multiple(label):
    ratio = jacobian_check(gens(label))
    assert ratio != 0
    other = _sympy_jacobian_ratio(label)
    assert other.is_Rational and Fraction(int(other.p), int(other.q)) == ratio


def test_repeated_generator_jacobian_fails():
    inv = gens("A2")
    bad = InvariantSet(inv.root_system, inv.frame, (inv.generators[0], inv.generators[0]), ("a", "b"), ("x", "x"))
    with pytest.raises(NotAGenerator):
        jacobian_check(bad)


def test_decomposable_detection():
    inv = gens("B3")
    q2, q4, q6 = inv.generators
    assert is_decomposable(inv, q2 * q4)
    assert not is_decomposable(InvariantSet(inv.root_system, inv.frame, (q2, q4), (), ()), q6)


TYPES = ["A1", "A4", "B2", "B4", "C3", "D4", "D5", "D6", "G2", "F4", "E6", "E7", "E8"]


@settings(max_examples=len(TYPES), deadline=None)
@given(st.sampled_from(TYPES))
def test_generator_sets_are_basic_invariants(label):
    inv = gens(label)
    rs = inv.root_system
    assert inv.degrees == tuple(sorted(m + 1 for m in rs.exponents))
    for k, g in enumerate(inv.generators):
        assert check_invariant(rs, inv.frame, g)
        lower = InvariantSet(rs, inv.frame, tuple(h for h in inv.generators if h.degree() < g.degree()), (), ())
        assert not is_decomposable(lower, g)


@pytest.mark.parametrize("label", ["A3", "B3", "D4", "G2", "E6"])
def test_invariance_is_exact_where_cheap(label):
    inv = gens(label)
    for g in inv.generators:
        if g.degree() <= 6:
            assert check_invariant(inv.root_system, inv.frame, g, exact=True)


def test_signed_permutation_shortcut_agrees_with_expansion():
    inv = gens("D5")
    rs = inv.root_system
    f = inv.frame.parse("P*p2 + p4^2")
    assert check_invariant(rs, inv.frame, f) == check_invariant(rs, inv.frame, f, exact=True)
    b3 = gens("B3")
    g = b3.frame.parse("p2*p4")
    assert check_invariant(b3.root_system, b3.frame, g) and check_invariant(b3.root_system, b3.frame, g, exact=True)


def test_non_invariant_detected():
    inv = gens("E8")
    assert not check_invariant(inv.root_system, inv.frame, inv.frame.parse("p2*P + p4^2*p2 + p8"))
