"""C*-weight decomposition of T^1 and the resulting 1-Du Bois / 1-rational classification.

Everything here needs a weight system: for a weighted homogeneous germ the
Tyurina algebra is graded, and the invariants are sums of its graded
pieces on either side of the weight -N, where N = sum(a_i) - d.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterator

from .groebner import Staircase
from .local import LocalSingularity
from .polynomial import Monomial, WeightSystem

logger = logging.getLogger(__name__)


class NoWeightSystem(ValueError):
    """The operation needs a weighted homogeneous germ."""


# classification labels
SMOOTH = "smooth"
UNDETERMINED = "undetermined"
LOW_DIMENSION = "unclassified-low-dimension"
NOT_RATIONAL = "not-rational"
ONE_RATIONAL = "1-rational"
ONE_LIMINAL = "1-liminal"
STRONGLY_ONE_IRRATIONAL = "strongly-1-irrational"


def t1_weight(alpha: Monomial, ws: WeightSystem) -> int:
    """C*-weight of z^alpha as an element of T^1: sum(a_i alpha_i) - d."""
    if len(alpha) != ws.nvars:
        raise ValueError("exponent vector and weight system differ in length")
    return ws.weighted_degree(alpha) - ws.degree


def ell(alpha: Monomial, ws: WeightSystem) -> Fraction:
    """sum_i (alpha_i + 1) w_i."""
    return sum(((e + 1) * w for e, w in zip(alpha, ws.fractional_weights)), Fraction(0))


def minimal_exponent(ws: WeightSystem) -> Fraction:
    """Saito's minimal exponent of a weighted homogeneous isolated singularity: sum of w_i."""
    return ws.weight_sum


@dataclass(frozen=True)
class WeightDecomposition:
    """Dimensions of the weight spaces T^1(k), with lazily enumerated bases."""

    dims: dict[int, int]
    weight_system: WeightSystem
    staircase: Staircase = field(repr=False, compare=False)

    @property
    def total(self) -> int:
        return sum(self.dims.values())

    def dim(self, k: int) -> int:
        return self.dims.get(k, 0)

    def basis(self, k: int) -> list[Monomial]:
        return [m for m in self.staircase.monomials if t1_weight(m, self.weight_system) == k]

    def spaces(self) -> Iterator[tuple[int, int, list[Monomial]]]:
        for k in sorted(self.dims):
            yield k, self.dims[k], self.basis(k)

    def sum_where(self, predicate) -> int:
        return sum(v for k, v in self.dims.items() if predicate(k))


def _require_ws(sing: LocalSingularity) -> WeightSystem:
    if sing.weight_system is None:
        raise NoWeightSystem("germ has no diagonal weight system")
    if sing.is_smooth:
        raise NoWeightSystem("smooth germ has no singular invariants")
    return sing.weight_system


def t1_weight_decomposition(sing: LocalSingularity) -> WeightDecomposition:
    ws = _require_ws(sing)
    graded = sing.tyurina_basis.graded_dimensions(ws.weights)
    dims = {j - ws.degree: v for j, v in sorted(graded.items())}
    decomposition = WeightDecomposition(dims, ws, sing.tyurina_basis)
    if decomposition.total != sing.tyurina:
        raise AssertionError("weight spaces do not add up to tau")
    return decomposition


@dataclass(frozen=True)
class SpectrumEntry:
    value: Fraction
    multiplicity: int


def spectrum(sing: LocalSingularity) -> list[SpectrumEntry]:
    """Spectral numbers ell(alpha) - 1 over the Milnor basis, with multiplicities."""
    ws = _require_ws(sing)
    graded = sing.milnor_basis.graded_dimensions(ws.weights)
    # weighted degree j of z^alpha gives ell(alpha) = (j + sum a_i) / d
    out = [
        SpectrumEntry(Fraction(j + sum(ws.weights), ws.degree) - 1, mult)
        for j, mult in sorted(graded.items())
    ]
    return out


@dataclass(frozen=True)
class Flags:
    rational: bool
    one_rational: bool
    one_du_bois: bool
    one_liminal: bool
    strongly_one_irrational: bool

    @property
    def one_irrational(self) -> bool:
        return not self.one_rational

    @classmethod
    def from_minimal_exponent(cls, alpha: Fraction) -> "Flags":
        return cls(
            rational=alpha > 1,
            one_rational=alpha > 2,
            one_du_bois=alpha >= 2,
            one_liminal=alpha == 2,
            strongly_one_irrational=alpha < 2,
        )

    def as_dict(self) -> dict[str, bool]:
        return {
            "rational": self.rational,
            "one_rational": self.one_rational,
            "one_irrational": self.one_irrational,
            "one_du_bois": self.one_du_bois,
            "one_liminal": self.one_liminal,
            "strongly_one_irrational": self.strongly_one_irrational,
        }


@dataclass(frozen=True)
class ClassificationReport:
    """Local invariants and classification of one germ.

    Weight-dependent fields are ``None`` when the germ has no weight system;
    ``flags`` is also ``None`` for n < 3, where the classification is not
    defined.
    """

    singularity: LocalSingularity
    classification: str
    alpha_tilde: Fraction | None = None
    N: int | None = None
    dim_K: int | None = None
    dim_Kprime: int | None = None
    link_invariant: int | None = None
    b_n11: int | None = None
    b_1n2: int | None = None
    a_invariant: int | None = None
    flags: Flags | None = None
    k_level: dict[int, dict[str, bool]] | None = None
    decomposition: WeightDecomposition | None = field(default=None, repr=False)
    spectrum: tuple[SpectrumEntry, ...] | None = field(default=None, repr=False)
    warnings: tuple[str, ...] = ()

    @property
    def mu(self) -> int:
        return self.singularity.milnor

    @property
    def tau(self) -> int:
        return self.singularity.tyurina

    @property
    def n(self) -> int:
        return self.singularity.n


def k_levels(alpha: Fraction, n: int) -> dict[int, dict[str, bool]]:
    return {k: {"k_du_bois": alpha >= k + 1, "k_rational": alpha > k + 1} for k in range(1, max(n, 1) + 1)}


def _label(flags: Flags) -> str:
    if not flags.rational:
        return NOT_RATIONAL
    if flags.one_rational:
        return ONE_RATIONAL
    if flags.one_liminal:
        return ONE_LIMINAL
    return STRONGLY_ONE_IRRATIONAL


def classify(sing: LocalSingularity) -> ClassificationReport:
    """Compute K, K', the link invariant and b^{p,q} from the weight spaces of T^1.

    Without a weight system only mu, tau and mu - tau are reported.
    """
    if sing.is_smooth:
        return ClassificationReport(sing, SMOOTH, warnings=("not a singularity: the germ is smooth",))
    ws = sing.weight_system
    if ws is None:
        return ClassificationReport(
            sing,
            UNDETERMINED,
            a_invariant=sing.milnor - sing.tyurina,
            warnings=("no weight system: only mu, tau and mu - tau are certified",),
        )
    warnings = []
    if ws.ambiguous:
        warnings.append(f"weight system not determined by the support; using {ws}")
    decomposition = t1_weight_decomposition(sing)
    N = ws.N
    link = decomposition.dim(-N)
    below = decomposition.sum_where(lambda k: k < -N)
    above = decomposition.sum_where(lambda k: k > -N)
    alpha = minimal_exponent(ws)
    spec = tuple(spectrum(sing))
    flags = Flags.from_minimal_exponent(alpha)
    label = _label(flags)
    if sing.n < 3:
        warnings.append(f"classification requires n >= 3 (n = {sing.n}); flags suppressed")
        flags = None
        label = LOW_DIMENSION
    report = ClassificationReport(
        singularity=sing,
        classification=label,
        alpha_tilde=alpha,
        N=N,
        dim_K=below + link,
        dim_Kprime=below,
        link_invariant=link,
        b_n11=above,
        b_1n2=below,
        a_invariant=0,
        flags=flags,
        k_level=k_levels(alpha, sing.n) if flags is not None else None,
        decomposition=decomposition,
        spectrum=spec,
        warnings=tuple(warnings),
    )
    _check_report(report)
    return report


def _check_report(r: ClassificationReport) -> None:
    if r.b_n11 + r.b_1n2 + r.link_invariant != r.mu:
        raise AssertionError("b^{n-1,1} + b^{1,n-2} + link invariant != mu")
    if r.dim_K != r.dim_Kprime + r.link_invariant:
        raise AssertionError("dim K != dim K' + link invariant")
    f = r.flags
    if f is not None:
        if f.one_liminal and r.link_invariant != 1:
            raise AssertionError("1-liminal germ with link invariant != 1")
        if f.one_rational and not f.one_du_bois:
            raise AssertionError("1-rational but not 1-Du Bois")
        if f.one_liminal != (f.one_du_bois and not f.one_rational):
            raise AssertionError("inconsistent 1-liminal flag")
        if f.rational and sum((f.one_rational, f.one_liminal, f.strongly_one_irrational)) != 1:
            raise AssertionError("classes are not exclusive")
        if f.one_rational != (r.dim_K == 0):
            raise AssertionError("1-rational flag disagrees with dim K")
