from __future__ import annotations

import pytest
import sympy

from hypersing.groebner import Guard
from hypersing.local import (
    NOT_QUASIHOMOGENEOUS,
    QUASIHOMOGENEOUS,
    WEIGHTED_HOMOGENEOUS,
    NotIsolated,
    NotOnHypersurface,
    analyze_local,
    is_quasihomogeneous,
    milnor_number,
    tyurina_number,
)
from hypersing.polynomial import parse_polynomial


def _sympy_local_colength(text, extra_f, k):
    # colength of J(f) (+ f) + (x^k, y^k) over Q, via sympy's own Groebner bases
    x, y = sympy.symbols("x y")
    f = sympy.sympify(text.replace("^", "**"))
    gens = [sympy.diff(f, x), sympy.diff(f, y), x**k, y**k] + ([f] if extra_f else [])
    G = sympy.groebner(gens, x, y, order="grevlex")
    leads = [sympy.Poly(g, x, y).monoms(order="grevlex")[0] for g in G.exprs]
    return sum(1 for a in range(k) for b in range(k) if not any(a >= l[0] and b >= l[1] for l in leads))


@pytest.mark.parametrize(
    "text, mu",
    [
        ("x^2+y^2+z^2+w^2", 1),
        ("x^3+y^3+z^3+w^3", 16),
        ("x^2+y^3", 2),
        ("x^3+x*y^3", 7),
        ("x^2*y+y^4", 5),
        ("z1^2+z2^2+z3^2+z4^4+z5^4", 9),
    ],
)
def test_weighted_homogeneous_milnor_numbers(text, mu):
    sing = analyze_local(parse_polynomial(text))
    assert sing.milnor == sing.tyurina == mu
    assert sing.quasihomogeneity == WEIGHTED_HOMOGENEOUS
    assert not sing.localized


def test_non_quasihomogeneous_germ_uses_local_algebra():
    f = parse_polynomial("x^5+y^5+x^3*y^3")
    sing = analyze_local(f)
    assert sing.milnor == 16
    assert sing.tyurina == 15
    assert sing.localized
    assert sing.quasihomogeneity == NOT_QUASIHOMOGENEOUS
    assert not is_quasihomogeneous(f)
    # independent check through sympy with a large truncation
    assert _sympy_local_colength("x^5+y^5+x^3*y^3", False, 12) == 16
    assert _sympy_local_colength("x^5+y^5+x^3*y^3", True, 12) == 15


def test_cusp_singularity_t334():
    # T_{p,q,r} with 1/p+1/q+1/r < 1: mu = p+q+r-1, tau = mu-1
    f = parse_polynomial("x^3+y^3+z^4+x*y*z")
    assert milnor_number(f) == 9
    assert tyurina_number(f) == 8


def test_quasihomogeneous_in_other_coordinates():
    # (x+y^2)^2 + y^3 is a cusp in disguise: no diagonal weights, yet mu == tau
    sing = analyze_local(parse_polynomial("x^2+2*x*y^2+y^4+y^3"))
    assert sing.weight_system is None
    assert sing.milnor == sing.tyurina == 2
    assert sing.quasihomogeneity == QUASIHOMOGENEOUS


def test_smooth_germ():
    sing = analyze_local(parse_polynomial("x+y^2"))
    assert sing.is_smooth
    assert sing.milnor == sing.tyurina == 0


def test_not_on_hypersurface():
    with pytest.raises(NotOnHypersurface):
        analyze_local(parse_polynomial("1+x^2"))


def test_non_isolated_weighted():
    with pytest.raises(NotIsolated):
        analyze_local(parse_polynomial("x^2", ["x", "y"]))
    with pytest.raises(NotIsolated):
        analyze_local(parse_polynomial("x^2+y^2*z^2+y^3"))


def test_non_isolated_without_weights_hits_guard():
    with pytest.raises(NotIsolated):
        analyze_local(parse_polynomial("x^2+y^2*z^2+y^3*z^3"), Guard(max_degree=16))


def test_zero_polynomial():
    with pytest.raises(NotIsolated):
        analyze_local(parse_polynomial("x-x"))


def test_tyurina_never_exceeds_milnor():
    for text in ("x^4+y^5+x^2*y^3", "x^3+y^7+x*y^5", "x^4+x^2*y^2+y^5"):
        sing = analyze_local(parse_polynomial(text))
        assert 0 < sing.tyurina <= sing.milnor
