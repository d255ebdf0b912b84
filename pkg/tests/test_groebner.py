from __future__ import annotations

import itertools
from fractions import Fraction

import pytest
import sympy
from hypothesis import assume, given, settings
from hypothesis import strategies as st

from hypersing.groebner import (
    GREVLEX,
    ComputationTooLarge,
    Guard,
    InfiniteDimensional,
    Staircase,
    buchberger,
    divides,
    hilbert_polynomial_of_quotient,
    is_groebner_basis,
    is_origin_only,
    multiplication_matrix,
    normal_form,
    s_polynomial,
    standard_monomials,
    weighted_order,
)
from hypersing.linalg import mat_mul
from hypersing.polynomial import Polynomial, detect_weight_system, jacobian, parse_polynomial

XYZ = ["x", "y", "z"]


def _sympy_gb(gens):
    syms = sympy.symbols(XYZ)
    exprs = [sympy.sympify(g.replace("^", "**")) for g in gens]
    G = sympy.groebner(exprs, *syms, order="grevlex")
    out = set()
    for e in G.exprs:
        p = sympy.Poly(e, *syms)
        lc = p.LC(order="grevlex")
        terms = {tuple(m): Fraction(int(c.p), int(c.q)) / Fraction(int(lc.p), int(lc.q)) for m, c in p.terms()}
        out.add(Polynomial(terms, 3))
    return out


@pytest.mark.parametrize(
    "gens",
    [
        ["x^2-y*z", "y^2-x*z+1", "z^3-x"],
        ["x^3+y^2-z", "x*y-z^2", "y^3-x"],
        ["x^2+y^2+z^2-1", "x*y*z-1", "x-y"],
        ["x*y-1", "y*z-1", "x*z-1"],
    ],
)
def test_reduced_basis_matches_sympy(gens):
    gb = buchberger([parse_polynomial(g, XYZ) for g in gens])
    assert set(gb.generators) == _sympy_gb(gens)
    assert is_groebner_basis(gb)


def test_unit_ideal():
    gb = buchberger([parse_polynomial("x*y-1", ["x", "y"]), parse_polynomial("x", ["x", "y"])])
    assert gb.is_unit_ideal()


def test_s_polynomial_cancels_leads():
    f = parse_polynomial("x^2-y", ["x", "y"])
    g = parse_polynomial("x*y-1", ["x", "y"])
    s = s_polynomial(f, g)
    assert s == parse_polynomial("x - y^2", ["x", "y"])


def small_ideal():
    mono = st.tuples(st.integers(0, 3), st.integers(0, 3))
    coeff = st.integers(-3, 3).filter(bool)
    poly = st.dictionaries(mono, coeff, min_size=1, max_size=3).map(lambda t: Polynomial(t, 2, ["x", "y"]))
    return st.lists(poly, min_size=1, max_size=3)


def _zero_dim(gens):
    # add pure powers so every random ideal is zero-dimensional
    return gens + [parse_polynomial("x^4 + y", ["x", "y"]), parse_polynomial("y^4 - x*y", ["x", "y"])]


@settings(max_examples=40, deadline=None)
@given(small_ideal(), st.integers(0, 2))
def test_normal_form_idempotent_and_multiplicative(gens, _):
    gb = buchberger(_zero_dim(gens))
    assume(not gb.is_unit_ideal())
    f = parse_polynomial("x^5*y + 3*x*y^2 - y^6 + 2", ["x", "y"])
    g = parse_polynomial("x^3 - y^3 + x*y", ["x", "y"])
    nf = normal_form(f, gb)
    assert normal_form(nf, gb) == nf
    assert normal_form(f * g, gb) == normal_form(normal_form(f, gb) * normal_form(g, gb), gb)
    st_ = standard_monomials(gb)
    assert all(m in st_ for m in nf.support())


@settings(max_examples=40, deadline=None)
@given(small_ideal())
def test_staircase_size_independent_of_order(gens):
    gens = _zero_dim(gens)
    a = buchberger(gens, GREVLEX)
    b = buchberger(gens, weighted_order((3, 1)))
    assert standard_monomials(a).dimension == standard_monomials(b).dimension


@settings(max_examples=40, deadline=None)
@given(small_ideal())
def test_staircase_closed_under_division(gens):
    gb = buchberger(_zero_dim(gens))
    stairs = set(standard_monomials(gb).monomials)
    for m in stairs:
        for i in range(2):
            if m[i]:
                smaller = tuple(e - (j == i) for j, e in enumerate(m))
                assert smaller in stairs


def test_staircase_enumeration_agrees_with_hilbert_count():
    st_ = Staircase(((3, 0, 0), (0, 2, 0), (0, 0, 4), (1, 1, 1), (2, 0, 1)), 3)
    brute = [m for m in itertools.product(range(3), range(2), range(4)) if not any(divides(c, m) for c in st_.corners)]
    assert st_.dimension == len(brute) == len(st_.monomials)
    graded = {}
    for m in brute:
        graded[sum(m)] = graded.get(sum(m), 0) + 1
    assert st_.graded_dimensions() == graded
    assert hilbert_polynomial_of_quotient(st_.corners, (2, 1, 1)) == st_.graded_dimensions((2, 1, 1))


def test_infinite_staircase_detected():
    gb = buchberger([parse_polynomial("x^2", ["x", "y"])])
    with pytest.raises(InfiniteDimensional):
        standard_monomials(gb)


@pytest.mark.parametrize("text", ["x^3+y^4+z^2", "x^2*y+y^3*z+z^4", "x^3+x*y^3+z^2", "x^3+y^3+z^3+x*y*z"])
def test_gorenstein_symmetry(text):
    # Milnor algebras of weighted homogeneous germs have a symmetric Hilbert function
    f = parse_polynomial(text)
    ws = detect_weight_system(f)
    gb = buchberger(jacobian(f), weighted_order(ws.weights))
    dims = standard_monomials(gb).graded_dimensions(ws.weights)
    socle = sum(ws.degree - 2 * a for a in ws.weights)
    assert all(dims.get(j, 0) == dims.get(socle - j, 0) for j in range(socle + 1))
    assert max(dims) == socle


def test_multiplication_matrices_commute():
    f = parse_polynomial("x^3+x*y^3+z^2")
    gb = buchberger(jacobian(f))
    st_ = standard_monomials(gb)
    mats = [multiplication_matrix(gb, st_, i) for i in (1, 2, 3)]
    for a, b in itertools.combinations(mats, 2):
        assert mat_mul(a, b) == mat_mul(b, a)


def test_origin_only():
    xy = ["x", "y"]
    gb = buchberger([parse_polynomial("x^2", xy), parse_polynomial("y^3", xy)])
    assert is_origin_only(gb)
    gb = buchberger([parse_polynomial("x^2-x", xy), parse_polynomial("y^3", xy)])
    assert not is_origin_only(gb)


def test_guard_raises():
    gens = [parse_polynomial(g, XYZ) for g in ["x^3+y^2-z", "x*y-z^2", "y^3-x"]]
    with pytest.raises(ComputationTooLarge):
        buchberger(gens, guard=Guard(max_basis=3))
