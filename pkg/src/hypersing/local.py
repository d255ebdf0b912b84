"""Milnor and Tyurina numbers of an isolated hypersurface singularity at the origin."""

from __future__ import annotations

import logging
from dataclasses import dataclass, field
from typing import Sequence

from .groebner import (
    DEFAULT_GUARD,
    GREVLEX,
    GroebnerBasis,
    Guard,
    InfiniteDimensional,
    MonomialOrder,
    Staircase,
    buchberger,
    is_origin_only,
    standard_monomials,
    weighted_order,
)
from .polynomial import Polynomial, WeightSystem, detect_weight_system, jacobian

logger = logging.getLogger(__name__)


class AnalysisError(ValueError):
    """Base class for domain errors in the local analysis."""


class NotIsolated(AnalysisError):
    """The origin is not an isolated critical point of f."""


class NotOnHypersurface(AnalysisError):
    """f does not vanish at the origin, so there is no germ to analyze."""


WEIGHTED_HOMOGENEOUS = "weighted-homogeneous"
QUASIHOMOGENEOUS = "quasihomogeneous"
NOT_QUASIHOMOGENEOUS = "not-quasihomogeneous"


@dataclass(frozen=True)
class LocalAlgebra:
    """Finite local quotient C{z}/I computed at the origin."""

    basis: GroebnerBasis | None
    staircase: Staircase | None
    localized: bool = False
    truncation: int | None = None

    @property
    def dimension(self) -> int:
        return 0 if self.staircase is None else self.staircase.dimension


@dataclass(frozen=True)
class LocalSingularity:
    f: Polynomial
    milnor: int
    tyurina: int
    weight_system: WeightSystem | None
    milnor_algebra: LocalAlgebra = field(repr=False)
    tyurina_algebra: LocalAlgebra = field(repr=False)

    @property
    def n(self) -> int:
        return self.f.nvars - 1

    @property
    def milnor_basis(self) -> Staircase | None:
        return self.milnor_algebra.staircase

    @property
    def tyurina_basis(self) -> Staircase | None:
        return self.tyurina_algebra.staircase

    @property
    def is_smooth(self) -> bool:
        return self.milnor == 0

    @property
    def quasihomogeneity(self) -> str:
        if self.weight_system is not None:
            return WEIGHTED_HOMOGENEOUS
        return QUASIHOMOGENEOUS if self.milnor == self.tyurina else NOT_QUASIHOMOGENEOUS

    @property
    def localized(self) -> bool:
        return self.milnor_algebra.localized or self.tyurina_algebra.localized


def _order_for(ws: WeightSystem | None) -> MonomialOrder:
    return GREVLEX if ws is None else weighted_order(ws.weights)


def local_quotient(
    generators: Sequence[Polynomial],
    order: MonomialOrder = GREVLEX,
    guard: Guard = DEFAULT_GUARD,
    graded: bool = False,
) -> LocalAlgebra:
    """The quotient of the local ring at 0 by the ideal of ``generators``.

    The global quotient is used when it is finite and supported at the
    origin only. Otherwise the ideal is truncated by (z_1^k, ..., z_n^k) for
    k = 2, 4, 8, ...; once two consecutive truncations have the same
    colength, Nakayama's lemma shows the powers already lie in the local
    ideal, so that colength is the local one. ``graded`` declares the ideal
    quasi-homogeneous, where an infinite global quotient is already a
    non-isolated origin.
    """
    nvars = generators[0].nvars
    if any(g.value_at_origin() != 0 for g in generators):
        return LocalAlgebra(None, None)
    gb = buchberger(generators, order, guard)
    try:
        st = standard_monomials(gb)
    except InfiniteDimensional:
        if graded:
            raise NotIsolated("critical locus is positive-dimensional through the origin") from None
        st = None
    if st is not None and is_origin_only(gb, st):
        return LocalAlgebra(gb, st)

    previous = None
    k = 2
    while k <= guard.max_degree:
        powers = [Polynomial.monomial(tuple(k if j == i else 0 for j in range(nvars)), nvars) for i in range(nvars)]
        gb_k = buchberger(list(generators) + powers, order, guard)
        st_k = standard_monomials(gb_k)
        if previous is not None and previous.dimension == st_k.dimension:
            logger.debug("local colength stabilized at truncation %d", k // 2)
            return previous
        previous = LocalAlgebra(gb_k, st_k, localized=True, truncation=k)
        k *= 2
    raise NotIsolated(f"local colength did not stabilize up to truncation degree {guard.max_degree}")


def _check_germ(f: Polynomial) -> None:
    if f.is_zero():
        raise NotIsolated("the zero polynomial does not define an isolated singularity")
    if f.value_at_origin() != 0:
        raise NotOnHypersurface("f does not vanish at the origin")


def milnor_number(f: Polynomial, guard: Guard = DEFAULT_GUARD) -> int:
    _check_germ(f)
    ws = detect_weight_system(f)
    return local_quotient(jacobian(f), _order_for(ws), guard, graded=ws is not None).dimension


def tyurina_number(f: Polynomial, guard: Guard = DEFAULT_GUARD) -> int:
    _check_germ(f)
    ws = detect_weight_system(f)
    return local_quotient([f] + jacobian(f), _order_for(ws), guard, graded=ws is not None).dimension


def is_quasihomogeneous(f: Polynomial, guard: Guard = DEFAULT_GUARD) -> bool:
    """mu == tau (K. Saito), for an isolated singularity."""
    sing = analyze_local(f, guard)
    return sing.milnor == sing.tyurina


def analyze_local(f: Polynomial, guard: Guard = DEFAULT_GUARD) -> LocalSingularity:
    """Milnor/Tyurina algebras and weight system of the germ of V(f) at 0.

    A smooth germ comes back with ``milnor == 0`` rather than as an error.
    """
    _check_germ(f)
    ws = detect_weight_system(f)
    order = _order_for(ws)
    graded = ws is not None
    milnor_alg = local_quotient(jacobian(f), order, guard, graded=graded)
    if milnor_alg.dimension == 0:
        empty = LocalAlgebra(None, None)
        return LocalSingularity(f, 0, 0, ws, empty, empty)
    tyurina_alg = local_quotient([f] + jacobian(f), order, guard, graded=graded)
    mu, tau = milnor_alg.dimension, tyurina_alg.dimension
    if tau > mu:
        raise AssertionError(f"tau={tau} exceeds mu={mu}")
    if ws is not None and tau != mu:
        raise AssertionError(f"weighted homogeneous germ with mu={mu} != tau={tau}")
    return LocalSingularity(f, mu, tau, ws, milnor_alg, tyurina_alg)

