from fractions import Fraction as Fr
from functools import lru_cache

import pytest
import sympy

from weylpair.exterior import (
    bar_u,
    build_f_u,
    build_lie_model,
    e_form,
    expected_a_dims,
    expected_gamma_dims,
    f_of,
    gamma_by_laplacian,
    graded_dims,
    invariant_space,
    poly_pairing,
    s_map,
    symmetric_invariants,
    transgress,
    u_of,
    verify_structure,
    wedge,
)


@lru_cache(maxsize=None)
def model(label):
    return build_lie_model(label)


@lru_cache(maxsize=None)
def spaces(label):
    return invariant_space(model(label))


@lru_cache(maxsize=None)
def prims(label):
    m = model(label)
    psis = symmetric_invariants(m)
    return psis, [transgress(m, p) for p in psis]


def basis(m):
    return [{k: Fr(1)} for k in range(1 << m.n)]


def add(a, b):
    out = dict(a)
    for k, v in b.items():
        out[k] = out.get(k, 0) + v
        if out[k] == 0:
            del out[k]
    return out


def scale(a, c):
    return {k: v * c for k, v in a.items()} if c else {}


def test_dimensions():
    assert model("sl2").n == 3 and model("sl3").n == 8
    assert 1 << model("sl3").n == 256 and (1 << model("sl3").n) * model("sl3").n == 2048


def test_killing_sl2():
    m = model("sl2")
    assert m.names == ("e12", "h1", "e21")
    assert m.killing == ((0, 0, 4), (0, 8, 0), (4, 0, 0))


@pytest.mark.parametrize("label", ["sl2", "sl3"])
def test_killing_is_trace_of_adjoints(label):
    m = model(label)
    ad = []
    for a in range(m.n):
        M = sympy.zeros(m.n, m.n)
        for (b, k), c in m.ad({a: Fr(1)}).items():
            M[b, k] = sympy.Rational(c.numerator, c.denominator)
        ad.append(M)
    for a in range(m.n):
        for b in range(m.n):
            assert (ad[a] * ad[b]).trace() == m.killing[a][b]


def test_unsupported_algebra():
    with pytest.raises(ValueError):
        build_lie_model("so5")


def test_graded_dims():
    g2, a2 = spaces("sl2")
    assert graded_dims(g2) == {0: 1, 3: 1}
    assert graded_dims(a2, cov=True) == {1: 1, 2: 1}
    g3, a3 = spaces("sl3")
    assert len(a3) == 8
    assert graded_dims(g3) == expected_gamma_dims((1, 2))
    assert graded_dims(a3, cov=True) == expected_a_dims((1, 2))


@pytest.mark.parametrize("label", ["sl2", "sl3"])
def test_gamma_is_kernel_of_laplacian(label):
    assert graded_dims(gamma_by_laplacian(model(label))) == graded_dims(spaces(label)[0])


@pytest.mark.parametrize("label", ["sl2", "sl3"])
def test_contraction_homotopy(label):
    m = model(label)
    for h in range(m.n):
        x = {h: Fr(1)}
        for e in basis(m):
            lhs = add(m.contract(x, m.delta(e)), m.delta(m.contract(x, e)))
            assert lhs == m.theta(x, e)


@pytest.mark.parametrize("label", ["sl2", "sl3"])
def test_contraction_by_coboundary(label):
    m = model(label)
    for h in range(m.n):
        x = {h: Fr(1)}
        dx = m.delta(m.vector(x))
        for e in basis(m):
            rhs = scale(add(m.boundary(m.contract(x, e)), m.contract(x, m.boundary(e))), -1)
            assert m.contract_multi(dx, e) == rhs


@pytest.mark.parametrize("label", ["sl2", "sl3"])
def test_delta_constructions_agree(label):
    m = model(label)
    for e in basis(m):
        assert m.delta(e) == m.delta_as_antiderivation(e)
        assert m.delta(m.delta(e)) == {}


@pytest.mark.parametrize("label", ["sl2", "sl3"])
def test_invariant_form_contractions(label):
    m = model(label)
    for p in spaces(label)[0]:
        assert m.delta(p) == {} and m.boundary(p) == {}
        for h in range(m.n):
            x = {h: Fr(1)}
            ip = m.contract(x, p)
            dx = m.delta(m.vector(x))
            assert m.delta(ip) == {}
            assert m.boundary(ip) == scale(m.contract_multi(dx, p), -1)
            assert m.delta(m.contract_multi(dx, p)) == scale(ip, Fr(-1, 2))


def test_transgression():
    _, ps = prims("sl2")
    assert ps[0] and {bin(k).count("1") for k in ps[0]} == {3}
    m3 = model("sl3")
    psis3, ps3 = prims("sl3")
    assert ps3[1] and {bin(k).count("1") for k in ps3[1]} == {5}
    # t vanishes on squares
    assert m3.multiply(f_of(m3, psis3[0] * psis3[0])) == {}


def test_transgression_degree_guard():
    m = model("sl2")
    psi = symmetric_invariants(m)[0]
    with pytest.raises(ValueError):
        transgress(m, psi * psi)


@pytest.mark.parametrize("label", ["sl2", "sl3"])
def test_f_u_construction(label):
    m = model(label)
    psis, ps = prims(label)
    for psi, p in zip(psis, ps):
        f, u = build_f_u(m, p)
        assert m.multiply(f) == p
        assert m.tensor_op(m.delta, u) == f
        assert m.tensor_op(m.delta, f) == {}
        assert f == f_of(m, psi)


def test_product_rule_and_coboundary():
    m = model("sl3")
    psis, _ = prims("sl3")
    c = psis[0].ring.gens()
    t = lambda a: m.multiply(f_of(m, a))
    for a, b in [(psis[0], c[2]), (c[0], c[7]), (psis[1], c[3]), (c[0] * c[1], c[4])]:
        assert t(a * b) == add(wedge(t(a), s_map(m, b)), wedge(s_map(m, a), t(b)))
    for a in psis + [c[0] * c[7] + c[3] * c[3]]:
        assert m.delta(t(a)) == scale(s_map(m, a), a.degree())
    for a in psis:
        assert m.tensor_op(m.delta, u_of(m, a)) == scale(f_of(m, a), a.degree() - 1)


def test_pairing_identities():
    m = model("sl3")
    psis, ps = prims("sl3")
    fu = [build_f_u(m, p) for p in ps]
    for fi, ui in fu:
        for fj, uj in fu:
            assert e_form(m, fi, fj) == {}
            assert e_form(m, ui, uj) == {}
            assert e_form(m, fi, uj) == e_form(m, fj, ui)
    for a in psis:
        for b in psis:
            ab = poly_pairing(m, a, b)
            assert e_form(m, f_of(m, a), f_of(m, b)) == s_map(m, ab)
            assert add(e_form(m, u_of(m, a), f_of(m, b)), e_form(m, f_of(m, a), u_of(m, b))) == m.multiply(f_of(m, ab))
            want = scale(m.multiply(f_of(m, ab)), Fr(1, a.degree() + b.degree() - 2))
            assert e_form(m, bar_u(m, a), f_of(m, b)) == want


def test_sl2_pairing_constant():
    m = model("sl2")
    _, ps = prims("sl2")
    f, u = build_f_u(m, ps[0])
    assert e_form(m, f, f) == {}
    assert e_form(m, f, u) == ps[0]


def test_free_module_sl3():
    m = model("sl3")
    _, ps = prims("sl3")
    fu = [build_f_u(m, p) for p in ps]
    vecs = [v for pair in fu for v in pair]
    vecs += [m.left_mult(ps[0], v) for v in list(vecs)]
    keys = {}
    rows = [{keys.setdefault(k, len(keys)): c for k, c in v.items()} for v in vecs]
    from weylpair.linalg import rank

    assert rank(rows) == 8


@pytest.mark.parametrize("label", ["sl2", "sl3"])
def test_full_report(label):
    rep = verify_structure(model(label))
    assert rep.passed, {k: v for k, v in rep.checks.items() if not v}
    if label == "sl3":
        assert rep.c_measured == [[1, 1], [1, 0]] == rep.c_symmetric
    doc = rep.to_dict()
    assert doc["passed"] and doc["gamma_dims"] == {"0": 1, "3": 1} if label == "sl2" else True
