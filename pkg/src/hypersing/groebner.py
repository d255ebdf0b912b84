"""Buchberger's algorithm, normal forms and staircases of zero-dimensional quotients.

Polynomials are handled internally as ``{exponent tuple: Fraction}`` dicts;
the public functions accept and return :class:`~hypersing.polynomial.Polynomial`.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass, field
from fractions import Fraction
from functools import cached_property
from itertools import combinations
from typing import Callable, Iterable, Iterator, Sequence

from .polynomial import Monomial, Polynomial, grevlex_key

logger = logging.getLogger(__name__)

Terms = dict[Monomial, Fraction]


class ComputationTooLarge(RuntimeError):
    """A configured size guard was exceeded."""


class InfiniteDimensional(ValueError):
    """The quotient ring is not finite-dimensional."""


@dataclass(frozen=True)
class Guard:
    max_basis: int = 50_000
    max_degree: int = 200


DEFAULT_GUARD = Guard()


@dataclass(frozen=True)
class MonomialOrder:
    """Graded reverse lex, optionally refined by a positive weight vector first."""

    weights: tuple[int, ...] | None = None

    @property
    def kind(self) -> str:
        return "grevlex" if self.weights is None else "weighted-grevlex"

    def key(self, m: Monomial) -> tuple:
        if self.weights is None:
            return grevlex_key(m)
        return (sum(a * e for a, e in zip(self.weights, m)),) + grevlex_key(m)

    def __str__(self) -> str:
        return self.kind if self.weights is None else f"{self.kind}{self.weights}"


GREVLEX = MonomialOrder()


def weighted_order(weights: Sequence[int]) -> MonomialOrder:
    if any(a <= 0 for a in weights):
        raise ValueError("order weights must be positive")
    return MonomialOrder(tuple(weights))


# ---------------------------------------------------------------------------
# monomial helpers


def divides(a: Monomial, b: Monomial) -> bool:
    return all(x <= y for x, y in zip(a, b))


def mono_lcm(a: Monomial, b: Monomial) -> Monomial:
    return tuple(max(x, y) for x, y in zip(a, b))


def mono_div(a: Monomial, b: Monomial) -> Monomial:
    return tuple(x - y for x, y in zip(a, b))


def mono_mul(a: Monomial, b: Monomial) -> Monomial:
    return tuple(x + y for x, y in zip(a, b))


def coprime(a: Monomial, b: Monomial) -> bool:
    return all(x == 0 or y == 0 for x, y in zip(a, b))


def minimalize(monos: Iterable[Monomial]) -> list[Monomial]:
    """Minimal generators of the monomial ideal spanned by ``monos``."""
    out: list[Monomial] = []
    for m in sorted(set(monos), key=sum):
        if not any(divides(g, m) for g in out):
            out.append(m)
    return out


# ---------------------------------------------------------------------------
# reduction


class _Reducer:
    """Leading-term bookkeeping for one order."""

    def __init__(self, order: MonomialOrder):
        self.order = order
        self._cache: dict[Monomial, tuple] = {}

    def key(self, m: Monomial) -> tuple:
        k = self._cache.get(m)
        if k is None:
            k = self._cache[m] = self.order.key(m)
        return k

    def lead(self, p: Terms) -> Monomial:
        return max(p, key=self.key)

    def reduce(self, p: Terms, basis: Sequence[tuple[Monomial, Terms]]) -> Terms:
        """Full reduction of ``p`` by monic ``basis`` elements (lead, terms)."""
        p = dict(p)
        rem: Terms = {}
        while p:
            m = self.lead(p)
            c = p[m]
            for lm, g in basis:
                if divides(lm, m):
                    q = mono_div(m, lm)
                    for gm, gc in g.items():
                        t = mono_mul(gm, q)
                        v = p.get(t, 0) - c * gc
                        if v:
                            p[t] = v
                        else:
                            p.pop(t, None)
                    break
            else:
                rem[m] = c
                del p[m]
        return rem


def _monic(p: Terms, lead: Monomial) -> Terms:
    c = p[lead]
    if c == 1:
        return p
    return {m: v / c for m, v in p.items()}


# ---------------------------------------------------------------------------
# Groebner bases


@dataclass(frozen=True)
class GroebnerBasis:
    """Reduced Groebner basis; generators are monic and sorted by leading monomial."""

    generators: tuple[Polynomial, ...]
    order: MonomialOrder
    nvars: int
    _leads: tuple[Monomial, ...] = field(repr=False, compare=False, default=())

    @cached_property
    def leading_monomials(self) -> tuple[Monomial, ...]:
        if self._leads:
            return self._leads
        r = _Reducer(self.order)
        return tuple(r.lead(g.terms) for g in self.generators)

    @cached_property
    def _pairs(self) -> list[tuple[Monomial, Terms]]:
        return [(lm, g.terms) for lm, g in zip(self.leading_monomials, self.generators)]

    @cached_property
    def _reducer(self) -> _Reducer:
        return _Reducer(self.order)

    def reduce_terms(self, p: Terms) -> Terms:
        return self._reducer.reduce(p, self._pairs)

    def is_unit_ideal(self) -> bool:
        return any(sum(m) == 0 for m in self.leading_monomials)

    def __len__(self) -> int:
        return len(self.generators)


def buchberger(
    generators: Sequence[Polynomial],
    order: MonomialOrder = GREVLEX,
    guard: Guard = DEFAULT_GUARD,
) -> GroebnerBasis:
    """Reduced Groebner basis of the ideal spanned by ``generators``.

    Pairs are taken in normal selection (smallest lcm first) and pruned by
    the coprime and chain criteria. Raises :class:`ComputationTooLarge` when
    the basis or a degree outgrows ``guard``.
    """
    gens = [g for g in generators if not g.is_zero()]
    if not generators:
        raise ValueError("no generators")
    nvars = generators[0].nvars
    if any(g.nvars != nvars for g in generators):
        raise ValueError("generators have different variable counts")
    names = generators[0].names
    red = _Reducer(order)
    if not gens:
        return GroebnerBasis((), order, nvars)

    basis: list[tuple[Monomial, Terms]] = []
    pairs: set[tuple[int, int]] = set()

    def check(p: Terms) -> None:
        if len(basis) > guard.max_basis:
            raise ComputationTooLarge(f"Groebner basis exceeded {guard.max_basis} elements")
        if max(sum(m) for m in p) > guard.max_degree:
            raise ComputationTooLarge(f"degree exceeded {guard.max_degree}")

    def add(p: Terms) -> None:
        lm = red.lead(p)
        p = _monic(p, lm)
        check(p)
        k = len(basis)
        basis.append((lm, p))
        for i in range(k):
            if basis[i] is not None:
                pairs.add((i, k))

    # Sorting inputs by leading monomial keeps the run deterministic and
    # tends to reduce early against small elements.
    inputs = sorted((g.terms for g in gens), key=lambda t: red.key(red.lead(t)))
    for t in inputs:
        r = red.reduce(t, [b for b in basis if b is not None])
        if r:
            add(r)

    done: set[tuple[int, int]] = set()
    while pairs:
        i, j = min(pairs, key=lambda ij: (red.key(mono_lcm(basis[ij[0]][0], basis[ij[1]][0])), ij))
        pairs.discard((i, j))
        done.add((i, j))
        lmi, gi = basis[i]
        lmj, gj = basis[j]
        if coprime(lmi, lmj):
            continue
        lcm = mono_lcm(lmi, lmj)
        if _chain_criterion(i, j, lcm, basis, pairs):
            continue
        qi, qj = mono_div(lcm, lmi), mono_div(lcm, lmj)
        s: Terms = {}
        for m, c in gi.items():
            s[mono_mul(m, qi)] = c
        for m, c in gj.items():
            t = mono_mul(m, qj)
            v = s.get(t, 0) - c
            if v:
                s[t] = v
            else:
                s.pop(t, None)
        r = red.reduce(s, basis)
        if r:
            add(r)

    return _reduced(basis, order, nvars, names, red)


def _chain_criterion(i, j, lcm, basis, pairs) -> bool:
    for k, (lmk, _) in enumerate(basis):
        if k == i or k == j:
            continue
        if not divides(lmk, lcm):
            continue
        if (min(i, k), max(i, k)) in pairs or (min(j, k), max(j, k)) in pairs:
            continue
        return True
    return False


def _reduced(basis, order, nvars, names, red: _Reducer) -> GroebnerBasis:
    leads = minimalize(lm for lm, _ in basis)
    keep = []
    used = set()
    for lm, g in basis:
        if lm in leads and lm not in used:
            keep.append((lm, g))
            used.add(lm)
    out = []
    for idx, (lm, g) in enumerate(keep):
        others = [b for k, b in enumerate(keep) if k != idx]
        tail = {m: c for m, c in g.items() if m != lm}
        tail = red.reduce(tail, others)
        tail[lm] = Fraction(1)
        out.append((lm, tail))
    out.sort(key=lambda b: red.key(b[0]))
    polys = tuple(Polynomial(t, nvars, names) for _, t in out)
    return GroebnerBasis(polys, order, nvars, tuple(lm for lm, _ in out))


def normal_form(p: Polynomial, gb: GroebnerBasis) -> Polynomial:
    """Remainder of ``p`` on division by ``gb``; zero iff p lies in the ideal."""
    if p.nvars != gb.nvars:
        raise ValueError("variable counts differ")
    return Polynomial(gb.reduce_terms(p.terms), p.nvars, p.names)


def s_polynomial(f: Polynomial, g: Polynomial, order: MonomialOrder = GREVLEX) -> Polynomial:
    red = _Reducer(order)
    lf, lg = red.lead(f.terms), red.lead(g.terms)
    lcm = mono_lcm(lf, lg)
    a = Polynomial.monomial(mono_div(lcm, lf), f.nvars, 1 / f.coefficient(lf))
    b = Polynomial.monomial(mono_div(lcm, lg), f.nvars, 1 / g.coefficient(lg))
    return a * f - b * g


def is_groebner_basis(gb: GroebnerBasis) -> bool:
    """Buchberger's criterion: all S-polynomials reduce to zero."""
    for f, g in combinations(gb.generators, 2):
        if not normal_form(s_polynomial(f, g, gb.order), gb).is_zero():
            return False
    return True


# ---------------------------------------------------------------------------
# staircases


@dataclass(frozen=True)
class Staircase:
    """Standard monomials of a zero-dimensional quotient.

    Stored through the minimal generators (``corners``) of the leading-term
    ideal; the monomial list is enumerated on first access, while
    :attr:`dimension` and :meth:`graded_dimensions` are computed from the
    Hilbert series so they stay cheap for very large quotients.
    """

    corners: tuple[Monomial, ...]
    nvars: int

    def __post_init__(self):
        if any(sum(c) == 0 for c in self.corners):
            return
        for i in range(self.nvars):
            if not any(c[i] > 0 and sum(c) == c[i] for c in self.corners):
                raise InfiniteDimensional(f"no power of variable {i + 1} is a leading monomial")

    @cached_property
    def monomials(self) -> tuple[Monomial, ...]:
        return tuple(sorted(self._enumerate(), key=grevlex_key))

    def _enumerate(self) -> Iterator[Monomial]:
        if any(sum(c) == 0 for c in self.corners):
            return
        bounds = [min(c[i] for c in self.corners if sum(c) == c[i] and c[i] > 0) for i in range(self.nvars)]
        corners = self.corners
        n = self.nvars

        def rec(prefix: list[int], i: int):
            if i == n:
                yield tuple(prefix)
                return
            for e in range(bounds[i]):
                prefix.append(e)
                # a corner can only be hit once all of its support is fixed
                if not any(
                    all(c[k] <= prefix[k] for k in range(i + 1)) and not any(c[k] for k in range(i + 1, n))
                    for c in corners
                ):
                    yield from rec(prefix, i + 1)
                    prefix.pop()
                else:
                    prefix.pop()
                    break

        yield from rec([], 0)

    @cached_property
    def dimension(self) -> int:
        if "monomials" in self.__dict__:
            return len(self.monomials)
        return sum(self.graded_dimensions().values())

    def __len__(self) -> int:
        return self.dimension

    def __contains__(self, m: Monomial) -> bool:
        return not any(divides(c, m) for c in self.corners)

    def __iter__(self) -> Iterator[Monomial]:
        return iter(self.monomials)

    def graded_dimensions(self, weights: Sequence[int] | None = None) -> dict[int, int]:
        """Number of standard monomials in each (weighted) degree."""
        weights = tuple(weights) if weights is not None else (1,) * self.nvars
        if len(weights) != self.nvars or any(a <= 0 for a in weights):
            raise ValueError("grading weights must be positive, one per variable")
        return _graded_dims_cached(self, weights)


_GRADED: dict[tuple, dict[int, int]] = {}


def _graded_dims_cached(st: Staircase, weights: tuple[int, ...]) -> dict[int, int]:
    key = (st.corners, weights)
    hit = _GRADED.get(key)
    if hit is None:
        if any(sum(c) == 0 for c in st.corners):
            hit = {}
        else:
            hit = hilbert_polynomial_of_quotient(st.corners, weights)
        if len(_GRADED) > 512:
            _GRADED.clear()
        _GRADED[key] = hit
    return dict(hit)


def hilbert_numerator(gens: Sequence[Monomial], weights: Sequence[int]) -> dict[int, int]:
    """Numerator K(t) of the Hilbert series K(t)/prod(1 - t^a_i) of S/(gens).

    Pivot recursion: K(I) = K(I + (p)) - ... written as
    K(I) = K(I + (p)) + t^deg(p) * K(I : p) for a variable-power pivot p.
    """
    gens = minimalize(gens)
    return _numerator(tuple(gens), tuple(weights))


def _poly_mul(a: dict[int, int], b: dict[int, int]) -> dict[int, int]:
    out: dict[int, int] = {}
    for i, x in a.items():
        for j, y in b.items():
            out[i + j] = out.get(i + j, 0) + x * y
    return {k: v for k, v in out.items() if v}


def _poly_add(a: dict[int, int], b: dict[int, int]) -> dict[int, int]:
    out = dict(a)
    for k, v in b.items():
        out[k] = out.get(k, 0) + v
    return {k: v for k, v in out.items() if v}


def _wdeg(m: Monomial, w: Sequence[int]) -> int:
    return sum(a * e for a, e in zip(w, m))


def _numerator(gens: tuple[Monomial, ...], w: tuple[int, ...]) -> dict[int, int]:
    if not gens:
        return {0: 1}
    # split into groups with disjoint variable support: numerators multiply
    groups = _disjoint_groups(gens)
    if len(groups) > 1:
        out = {0: 1}
        for grp in groups:
            out = _poly_mul(out, _numerator(tuple(grp), w))
        return out
    if len(gens) == 1:
        return _poly_add({0: 1}, {_wdeg(gens[0], w): -1})
    # Pivot x^e on the variable most common among mixed generators, e the median
    # of its exponents there: the left ideal loses a mixed generator and the
    # right ideal loses total degree, so the recursion terminates.
    n = len(gens[0])
    mixed = [g for g in gens if sum(1 for e in g if e) > 1]
    counts = [sum(1 for g in mixed if g[i]) for i in range(n)]
    var = max(range(n), key=lambda i: (counts[i], -i))
    exps = sorted(g[var] for g in mixed if g[var])
    e = exps[len(exps) // 2]
    pivot = tuple(e if i == var else 0 for i in range(n))
    left = minimalize(list(gens) + [pivot])
    right = minimalize(tuple(max(x - y, 0) for x, y in zip(g, pivot)) for g in gens)
    shifted = {k + _wdeg(pivot, w): v for k, v in _numerator(tuple(right), w).items()}
    return _poly_add(_numerator(tuple(left), w), shifted)


def _disjoint_groups(gens: Sequence[Monomial]) -> list[list[Monomial]]:
    groups: list[tuple[set[int], list[Monomial]]] = []
    for g in gens:
        support = {i for i, e in enumerate(g) if e}
        merged_vars, merged = set(support), [g]
        rest = []
        for vars_, members in groups:
            if vars_ & merged_vars:
                merged_vars |= vars_
                merged.extend(members)
            else:
                rest.append((vars_, members))
        rest.append((merged_vars, merged))
        groups = rest
    return [members for _, members in groups]


def hilbert_polynomial_of_quotient(gens: Sequence[Monomial], weights: Sequence[int]) -> dict[int, int]:
    """Graded dimensions of S/(gens) when finite: K(t) / prod(1 - t^a_i)."""
    num = hilbert_numerator(gens, weights)
    coeffs = [0] * (max(num) + 1)
    for k, v in num.items():
        coeffs[k] = v
    for a in weights:
        # divide by (1 - t^a): q_k = c_k + q_{k-a}
        for k in range(a, len(coeffs)):
            coeffs[k] += coeffs[k - a]
        # the top a coefficients must cancel for the quotient to be a polynomial
        if any(coeffs[len(coeffs) - a:]):
            raise InfiniteDimensional("Hilbert series is not a polynomial")
        coeffs = coeffs[: len(coeffs) - a] or [0]
    return {k: v for k, v in enumerate(coeffs) if v}


def standard_monomials(gb: GroebnerBasis) -> Staircase:
    """Staircase of ``gb``; raises :class:`InfiniteDimensional` when the quotient is infinite."""
    return Staircase(tuple(minimalize(gb.leading_monomials)), gb.nvars)


def multiplication_matrix(gb: GroebnerBasis, staircase: Staircase, i: int) -> list[list[Fraction]]:
    """Matrix of multiplication by z_i (1-based) in the staircase basis.

    Column c holds the coordinates of z_i * m_c.
    """
    if not 1 <= i <= gb.nvars:
        raise IndexError(f"variable index {i} out of range 1..{gb.nvars}")
    basis = staircase.monomials
    index = {m: k for k, m in enumerate(basis)}
    size = len(basis)
    mat = [[Fraction(0)] * size for _ in range(size)]
    shift = tuple(1 if k == i - 1 else 0 for k in range(gb.nvars))
    for c, m in enumerate(basis):
        image = gb.reduce_terms({mono_mul(m, shift): Fraction(1)})
        for mono, coeff in image.items():
            mat[index[mono]][c] = coeff
    return mat


def is_origin_only(gb: GroebnerBasis, staircase: Staircase | None = None) -> bool:
    """True iff every variable acts nilpotently on the quotient.

    Checks z_i^e in the ideal for some e <= dim by repeated squaring of
    normal forms, which avoids building the dim x dim matrices.
    """
    staircase = staircase or standard_monomials(gb)
    dim = staircase.dimension
    if dim == 0:
        return True
    for i in range(gb.nvars):
        e = 1
        p = gb.reduce_terms({tuple(1 if k == i else 0 for k in range(gb.nvars)): Fraction(1)})
        while p:
            if e >= dim:
                return False
            p = gb.reduce_terms(_square(p))
            e *= 2
    return True


def _square(p: Terms) -> Terms:
    out: Terms = {}
    items = list(p.items())
    for a, (m1, c1) in enumerate(items):
        for m2, c2 in items[a:]:
            m = mono_mul(m1, m2)
            v = c1 * c2 if m1 == m2 else 2 * c1 * c2
            out[m] = out.get(m, 0) + v
    return {m: c for m, c in out.items() if c}
