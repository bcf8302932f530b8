"""Acceptance suite: one test per criterion, each printing a PASS/FAIL line."""

import random
import time
from contextlib import contextmanager
from fractions import Fraction

import pytest

from weylpair.cli import main
from weylpair.exterior import build_lie_model, expected_a_dims, expected_gamma_dims, verify_structure
from weylpair.genring import coordinate_frame, expand_to_coordinates, leibniz_pairing
from weylpair.grassmann import generic_matrix, verify_trace_identity, wedge_matrix_power
from weylpair.invariants import build_frame, jacobian_check
from weylpair.milnor import build_milnor_ring, is_confluent, poincare_exponents, predict_vanishing
from weylpair.pairing import c_table, verify_bezoutiante, verify_gendi
from weylpair.poly import Poly, gradient_pairing
from weylpair.rootsys import SUPPORTED, build_root_system

from helpers import TABLE2, TABLE3, TABLE4, dtab, expected_classical, gens

pytestmark = pytest.mark.slow


@contextmanager
def criterion(capsys, number, title):
    start = time.perf_counter()
    ok = False
    try:
        yield
        ok = True
    finally:
        line = f"criterion {number:2d} {'PASS' if ok else 'FAIL'}  {title}  ({time.perf_counter() - start:.1f}s)"
        with capsys.disabled():
            print("\n" + line)


def inner_block(label):
    d = dtab(label)
    idx = [i for i, g in enumerate(d.degrees) if g not in (2, max(d.degrees))]
    return {d.degrees[i]: [d.entry(i, j) for j in idx] for i in idx}


def test_criterion_01_tables(capsys):
    with criterion(capsys, 1, "exceptional d tables reproduced exactly"):
        for label, table in (("E6", TABLE2), ("E7", TABLE3), ("E8", TABLE4)):
            start = time.perf_counter()
            assert inner_block(label) == table, label
            assert time.perf_counter() - start < (60 if label != "E8" else 1800)
        # the command-line route agrees
        assert main(["tables", "--type", "E6", "--format", "text"]) == 0
        out = capsys.readouterr().out
        assert "8/9" in out


def test_criterion_02_classical_closed_forms(capsys):
    labels = [f"A{n}" for n in range(1, 9)] + [f"C{n}" for n in range(2, 7)] + ["D4", "D5", "D6"]
    with criterion(capsys, 2, "classical closed forms (A_n<=8, C_n<=6, D4, D5, D6)"):
        for label in labels:
            d = dtab(label)
            for (i, j), exp in expected_classical(label).items():
                img = d.images[i][j]
                got = {} if img is None else {t: c for t, c in zip(img.targets, img.coefficients) if c != 0}
                assert got == exp, (label, i, j)
            if label[0] in "AC":
                c = c_table(d)
                for i in range(d.rank):
                    for j in range(d.rank):
                        assert c.entry(i, j) == (1 if d.mask[i][j] else 0)
        for label in ("D4", "D6"):
            d = dtab(label)
            n = int(label[1:])
            a, b = [i for i, g in enumerate(d.degrees) if g == n]
            assert d.images[a][a] is None or d.images[a][a].is_zero
            assert d.images[b][b] is None or d.images[b][b].is_zero
            assert d.nonzero(a, b)


def test_criterion_03_generator_theorem(capsys):
    with criterion(capsys, 3, f"d_ij != 0 iff m_i+m_j-1 is an exponent, {len(SUPPORTED)} types"):
        failed = [label for label in SUPPORTED if not verify_gendi(dtab(label)).passed]
        assert not failed, failed


ORACLE_FRAMES = ["A3", "B3", "D5", "E6", "E7", "E8", "G2", "coords"]


def _random_poly(frame, degree, rng):
    monos = frame.ring.monomials(degree)
    picks = rng.sample(monos, min(3, len(monos)))
    return Poly.from_terms(frame.ring, [(m, Fraction(rng.randint(1, 4) * rng.choice((-1, 1)), rng.randint(1, 3))) for m in picks])


def test_criterion_04_oracle_equivalence(capsys):
    with criterion(capsys, 4, "Leibniz pairing == coordinate gradient pairing, 50 pairs per frame"):
        for name in ORACLE_FRAMES:
            if name == "coords":
                gram = [[Fraction(2), Fraction(1), Fraction(0)], [Fraction(1), Fraction(2), Fraction(1)], [Fraction(0), Fraction(1), Fraction(3)]]
                frame = coordinate_frame(gram)
            else:
                frame = build_frame(build_root_system(name))
            rng = random.Random(name)
            checked = 0
            while checked < 50:
                total = rng.randint(2, 12)
                da = rng.randint(1, total - 1)
                if not frame.ring.monomials(da) or not frame.ring.monomials(total - da):
                    continue
                a = _random_poly(frame, da, rng)
                b = _random_poly(frame, total - da, rng)
                if a.is_zero() or b.is_zero():
                    continue
                lhs = expand_to_coordinates(frame, leibniz_pairing(frame, a, b))
                rhs = gradient_pairing(expand_to_coordinates(frame, a), expand_to_coordinates(frame, b), frame.gram)
                assert lhs == rhs, (name, str(a), str(b))
                checked += 1


def test_criterion_05_milnor(capsys):
    with criterion(capsys, 5, "Milnor ring Poincare polynomial and vanishing mask for E6, E7, E8"):
        for label in ("E6", "E7", "E8"):
            ring = build_milnor_ring(label)
            assert is_confluent(ring)
            assert poincare_exponents(ring) == [m - 1 for m in build_root_system(label).exponents]
            d = dtab(label)
            assert predict_vanishing(ring) == [[d.nonzero(i, j) for j in range(d.rank)] for i in range(d.rank)]


def test_criterion_06_bezoutiante(capsys):
    with criterion(capsys, 6, f"Bezoutiante antidiagonal and lower triangle, strict projection, {len(SUPPORTED)} types"):
        failed = [label for label in SUPPORTED if not verify_bezoutiante(gens(label), strict=True).passed]
        assert not failed, failed


STRUCTURE = {}


def structure(label):
    if label not in STRUCTURE:
        start = time.perf_counter()
        rep = verify_structure(build_lie_model(label))
        STRUCTURE[label] = (rep, time.perf_counter() - start)
    return STRUCTURE[label]


def test_criterion_07_exterior_oracle(capsys):
    with criterion(capsys, 7, "sl2/sl3 invariant dimensions, pairing e, c_ij against the symmetric side"):
        elapsed = 0.0
        for label, sym in (("sl2", "A1"), ("sl3", "A2")):
            rep, t = structure(label)
            elapsed += t
            ex = build_root_system(sym).exponents
            assert rep.gamma_dims == expected_gamma_dims(ex)
            assert rep.a_dims == expected_a_dims(ex)
            assert sum(rep.a_dims.values()) == 2 ** len(ex) * len(ex)
            for key in ("f_isotropic", "u_isotropic", "f_u_symmetric", "c_matches_symmetric_side"):
                assert rep.checks[key], (label, key)
            c = c_table(dtab(sym))
            assert rep.c_measured == [[c.entry(i, j) for j in range(len(ex))] for i in range(len(ex))]
        assert structure("sl3")[0].checks["top_primitive_relations"]
        assert elapsed < 120


STRUCTURAL_KEYS = [
    "killing_invariant",
    "delta_squared_zero",
    "boundary_squared_zero",
    "laplacian_is_half_casimir",
    "boundary_is_minus_delta_transpose",
    "invariant_form_contractions",
    "contraction_homotopy",
    "contraction_by_coboundary",
    "f_u_construction",
    "f_u_invariant",
    "transgression_product_rule",
    "coboundary_of_transgression",
    "u_coboundary_is_scaled_f",
    "pairing_formulas",
    "pairing_through_transgression",
]


def test_criterion_08_structural_identities(capsys):
    with criterion(capsys, 8, "structural identity suite on sl2 and sl3"):
        for label in ("sl2", "sl3"):
            rep, _ = structure(label)
            bad = [k for k in STRUCTURAL_KEYS if not rep.checks[k]]
            assert not bad, (label, bad)
            assert rep.passed


def test_criterion_09_grassmann(capsys):
    with criterion(capsys, 9, "generic Grassmann matrix: X^4 = 0, X^6 = 0, trace identity, odd traces"):
        start = time.perf_counter()
        assert wedge_matrix_power(generic_matrix(2), 4).is_zero()
        assert wedge_matrix_power(generic_matrix(3), 6).is_zero()
        for n in (1, 2, 3):
            rep = verify_trace_identity(n)
            assert rep.passed and rep.reading == "matrix" and rep.odd_traces_anticommute
        assert time.perf_counter() - start < 30


def test_criterion_10_jacobian(capsys):
    with criterion(capsys, 10, "Jacobian is a nonzero multiple of the Weyl denominator (A2, A3, C2, G2)"):
        for label in ("A2", "A3", "C2", "G2"):
            assert jacobian_check(gens(label)) != 0
