from __future__ import annotations

from fractions import Fraction

import pytest

from hypersing.classify import (
    LOW_DIMENSION,
    NOT_RATIONAL,
    ONE_LIMINAL,
    ONE_RATIONAL,
    SMOOTH,
    STRONGLY_ONE_IRRATIONAL,
    UNDETERMINED,
    Flags,
    NoWeightSystem,
    classify,
    ell,
    k_levels,
    t1_weight,
    t1_weight_decomposition,
)
from hypersing.local import analyze_local
from hypersing.polynomial import WeightSystem, parse_polynomial


def report(text):
    return classify(analyze_local(parse_polynomial(text)))


def test_fermat_cubic_fourfold():
    r = report("x1^3+x2^3+x3^3+x4^3+x5^3")
    assert r.classification == STRONGLY_ONE_IRRATIONAL
    assert r.alpha_tilde == Fraction(5, 3)
    assert r.N == 2
    assert r.decomposition.dims == {-3: 1, -2: 5, -1: 10, 0: 10, 1: 5, 2: 1}
    assert (r.dim_K, r.dim_Kprime, r.link_invariant) == (6, 1, 5)
    assert (r.b_n11, r.b_1n2, r.a_invariant) == (26, 1, 0)
    assert r.decomposition.basis(-3) == [(0, 0, 0, 0, 0)]


def test_odp_threefold_is_liminal():
    r = report("x^2+y^2+z^2+w^2")
    assert r.classification == ONE_LIMINAL
    assert r.flags.one_du_bois and not r.flags.one_rational
    assert (r.mu, r.tau, r.dim_K, r.link_invariant, r.dim_Kprime) == (1, 1, 1, 1, 0)


@pytest.mark.parametrize("nvars", [6, 7])
def test_higher_odp_is_one_rational(nvars):
    r = report("+".join(f"z{i}^2" for i in range(1, nvars + 1)))
    assert r.classification == ONE_RATIONAL
    assert r.dim_K == 0


def test_not_rational():
    r = report("x^4+y^4+z^4+w^4")
    assert r.classification == NOT_RATIONAL
    assert not r.flags.rational


def test_example_family_k2_basis():
    r = report("z1^2+z2^2+z3^2+z4^4+z5^4")
    assert r.classification == ONE_LIMINAL
    assert r.alpha_tilde == 2
    # the single class of weight -N is the constant 1
    assert r.decomposition.basis(-r.N) == [(0, 0, 0, 0, 0)]


def test_low_dimension_and_spectrum():
    r = report("x^2+y^3")
    assert r.classification == LOW_DIMENSION
    assert r.flags is None
    assert [(e.value, e.multiplicity) for e in r.spectrum] == [(Fraction(-1, 6), 1), (Fraction(1, 6), 1)]
    assert r.warnings


def test_undetermined_without_weights():
    r = report("x^5+y^5+x^3*y^3+z^2+w^2")
    assert r.classification == UNDETERMINED
    assert r.alpha_tilde is None and r.flags is None
    assert r.a_invariant == r.mu - r.tau == 1


def test_smooth():
    assert report("x+y^2+z^2+w^2").classification == SMOOTH


def test_decomposition_requires_weights():
    with pytest.raises(NoWeightSystem):
        t1_weight_decomposition(analyze_local(parse_polynomial("x^5+y^5+x^3*y^3")))


def test_weight_helpers():
    ws = WeightSystem((1, 1, 1, 1, 1), 3)
    assert t1_weight((0, 0, 0, 0, 0), ws) == -3
    assert t1_weight((1, 1, 0, 0, 0), ws) == -1
    assert ell((0, 0, 0, 0, 0), ws) == Fraction(5, 3)
    with pytest.raises(ValueError):
        t1_weight((1,), ws)


@pytest.mark.parametrize(
    "alpha, expected",
    [
        (Fraction(5, 2), (True, True, True, False, False)),
        (Fraction(2), (True, False, True, True, False)),
        (Fraction(3, 2), (True, False, False, False, True)),
        (Fraction(1), (False, False, False, False, True)),
    ],
)
def test_flags_thresholds(alpha, expected):
    f = Flags.from_minimal_exponent(alpha)
    assert (f.rational, f.one_rational, f.one_du_bois, f.one_liminal, f.strongly_one_irrational) == expected
    assert f.one_irrational == (not f.one_rational)


def test_k_levels():
    lv = k_levels(Fraction(3), 4)
    assert lv[1] == {"k_du_bois": True, "k_rational": True}
    assert lv[2] == {"k_du_bois": True, "k_rational": False}
    assert lv[3] == {"k_du_bois": False, "k_rational": False}
    assert sorted(lv) == [1, 2, 3, 4]


@pytest.mark.parametrize(
    "text",
    ["x^3+x*y^3+z^2+w^2", "x^2*y+y^3*z+z^4+w^2", "x^3+y^3+z^3+w^3+x*y*z", "x^2+y^3+z^3+w^3+v^3"],
)
def test_identities(text):
    r = report(text)
    assert r.b_n11 + r.b_1n2 + r.link_invariant == r.mu
    assert r.dim_K == r.dim_Kprime + r.link_invariant
    assert sum(e.multiplicity for e in r.spectrum) == r.mu
    centre = Fraction(r.n - 1, 2)
    values = sorted(e.value for e in r.spectrum for _ in range(e.multiplicity))
    assert values == sorted(2 * centre - v for v in values)
