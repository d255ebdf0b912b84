"""Independent oracles and the built-in corpus of weighted homogeneous germs.

Each oracle deliberately avoids the code path it checks: staircases of
Brieskorn germs are enumerated directly, graded dimensions come from a
Poincare series expansion, and kernel witnesses from an exhaustive scan.
"""

from __future__ import annotations

import itertools
import json
import math
import random
from dataclasses import dataclass, field
from fractions import Fraction
from functools import reduce
from typing import Callable, Sequence

from .classify import classify
from .groebner import DEFAULT_GUARD, GREVLEX, Guard, buchberger, standard_monomials
from .linalg import as_matrix
from .local import analyze_local
from .polynomial import Monomial, WeightSystem, jacobian, parse_polynomial
from .report import brieskorn_polynomial
from .smoothing import all_nonzero_kernel_vector


class SeriesNotPolynomial(ValueError):
    """The Poincare product did not divide out: not an isolated weighted homogeneous germ."""


# ---------------------------------------------------------------------------
# Brieskorn germs


@dataclass(frozen=True)
class BrieskornData:
    exponents: tuple[int, ...]

    def __post_init__(self):
        if not self.exponents or any(b < 2 for b in self.exponents):
            raise ValueError("Brieskorn exponents must all be >= 2")

    @property
    def milnor(self) -> int:
        return math.prod(b - 1 for b in self.exponents)


def brieskorn_analyze(b: Sequence[int]) -> tuple[int, frozenset[Monomial], WeightSystem]:
    """(mu, staircase, weights) of sum z_i^{b_i}, by closed forms and enumeration only."""
    data = BrieskornData(tuple(b))
    staircase = frozenset(itertools.product(*(range(e - 1) for e in data.exponents)))
    lcm = reduce(math.lcm, data.exponents)
    weights = [lcm // e for e in data.exponents]
    g = reduce(math.gcd, weights)
    ws = WeightSystem(tuple(a // g for a in weights), lcm // g)
    return data.milnor, staircase, ws


def groebner_staircase(b: Sequence[int], guard: Guard = DEFAULT_GUARD) -> frozenset[Monomial]:
    """Staircase of the Jacobian ideal of sum z_i^{b_i} through the Groebner path."""
    f = brieskorn_polynomial(b)
    return frozenset(standard_monomials(buchberger(jacobian(f), GREVLEX, guard)).monomials)


def brieskorn_exponent_sweep(max_exponent: int = 6, max_vars: int = 5, min_vars: int = 1):
    """Sorted exponent vectors with entries in 2..max_exponent."""
    for k in range(min_vars, max_vars + 1):
        yield from itertools.combinations_with_replacement(range(2, max_exponent + 1), k)


# ---------------------------------------------------------------------------
# Poincare series


def _pmul(a: list[int], b: list[int]) -> list[int]:
    out = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                out[i + j] += x * y
    return out


def _pdivmod(num: list[int], den: list[int]) -> tuple[list[int], list[int]]:
    # den is monic up to sign in our use (t^a - 1), so integer division suffices
    num = list(num)
    lead = den[-1]
    q = [0] * max(len(num) - len(den) + 1, 1)
    for shift in range(len(num) - len(den), -1, -1):
        c = num[shift + len(den) - 1]
        if c % lead:
            raise SeriesNotPolynomial("non-integral quotient")
        c //= lead
        q[shift] = c
        for i, y in enumerate(den):
            num[shift + i] -= c * y
    return q, num


def poincare_series(ws: WeightSystem) -> dict[int, int]:
    """Coefficients of prod (t^{d-a_i} - 1)/(t^{a_i} - 1), keyed by weighted degree."""
    d = ws.degree
    num, den = [1], [1]
    for a in ws.weights:
        if a >= d:
            raise SeriesNotPolynomial(f"weight {a} is not below the degree {d}")
        num = _pmul(num, [-1] + [0] * (d - a - 1) + [1])
        den = _pmul(den, [-1] + [0] * (a - 1) + [1])
    q, r = _pdivmod(num, den)
    if any(r):
        raise SeriesNotPolynomial(f"Poincare product for {ws} leaves a remainder")
    return {j: c for j, c in enumerate(q) if c}


def poincare_series_check(ws: WeightSystem, decomposition) -> bool:
    """Compare the series with the weight spaces of T^1 (weight k is weighted degree k + d)."""
    series = poincare_series(ws)
    graded = {k + ws.degree: v for k, v in decomposition.dims.items() if v}
    return series == graded


def milnor_orlik(ws: WeightSystem) -> Fraction:
    """prod (d - a_i) / a_i, the Milnor number of an isolated weighted homogeneous germ."""
    return math.prod((Fraction(ws.degree - a, a) for a in ws.weights), start=Fraction(1))


# ---------------------------------------------------------------------------
# kernel vectors


def brute_force_kernel_search(matrix: Sequence[Sequence], bound: int) -> tuple[int, ...] | None:
    """First integer vector with entries in [-bound, bound], none zero, and M v = 0.

    The scan fixes all but the last coordinate and solves for the last one,
    which is still exhaustive over the box.
    """
    mat = as_matrix(matrix)
    if not mat:
        return None
    ncols = len(mat[0])
    if ncols == 0:
        return ()
    cols = [[row[j] for row in mat] for j in range(ncols)]
    # smallest magnitudes first, positive before negative
    values = [s * k for k in range(1, bound + 1) for s in (1, -1)]
    last = cols[-1]
    for head in itertools.product(values, repeat=ncols - 1):
        residual = [sum((c[r] * x for c, x in zip(cols, head)), Fraction(0)) for r in range(len(mat))]
        # need last * x == -residual
        x = None
        ok = True
        for r, coeff in enumerate(last):
            if coeff == 0:
                if residual[r] != 0:
                    ok = False
                    break
            else:
                cand = -residual[r] / coeff
                if x is None:
                    x = cand
                elif cand != x:
                    ok = False
                    break
        if not ok:
            continue
        if x is None:
            return tuple(head) + (values[0],)
        if x.denominator == 1 and x != 0 and abs(x) <= bound:
            return tuple(head) + (int(x),)
    return None


def random_matrix(rng: random.Random, max_rows: int = 6, max_cols: int = 6, entry: int = 2) -> list[list[int]]:
    r = rng.randint(1, max_rows)
    c = rng.randint(1, max_cols)
    return [[rng.randint(-entry, entry) for _ in range(c)] for _ in range(r)]


@dataclass
class KernelSweep:
    """Outcome of a randomized comparison.

    ``beyond_bound`` counts matrices where the null-space path found a
    verified witness but no witness fits in the search box; that is a limit
    of the box, not a disagreement about a vector inside it.
    """

    trials: int = 0
    agreements: int = 0
    present: int = 0
    beyond_bound: list[str] = field(default_factory=list)
    failures: list[str] = field(default_factory=list)


def _valid_witness(m, v) -> bool:
    return all(x != 0 for x in v) and not any(sum(a * x for a, x in zip(row, v)) for row in m)


def kernel_sweep(seed: int = 0, trials: int = 100, bound: int = 3) -> KernelSweep:
    """Compare the null-space construction with exhaustive search on random matrices."""
    rng = random.Random(seed)
    out = KernelSweep()
    for t in range(trials):
        m = random_matrix(rng)
        main = all_nonzero_kernel_vector(m)
        brute = brute_force_kernel_search(m, bound)
        out.trials += 1
        problems = [
            f"{name} witness {[str(x) for x in v]} is invalid"
            for name, v in (("main", main), ("brute", brute))
            if v is not None and not _valid_witness(m, v)
        ]
        if brute is not None and main is None:
            problems.append("exhaustive search found a witness the null-space path missed")
        if problems:
            out.failures.append(f"trial {t} {m}: " + "; ".join(problems))
        elif main is not None and brute is None:
            out.beyond_bound.append(f"trial {t} {m}: witness {[str(x) for x in main]}")
        else:
            out.agreements += 1
            out.present += main is not None
    return out


# ---------------------------------------------------------------------------
# corpus


@dataclass(frozen=True)
class CorpusEntry:
    name: str
    poly: str
    mu: int


# expected mu values are closed forms: prod(b_i - 1) for diagonal germs,
# prod((d - a_i)/a_i) otherwise
BUILTIN_CORPUS: tuple[CorpusEntry, ...] = (
    CorpusEntry("odp-3", "x^2+y^2+z^2+w^2", 1),
    CorpusEntry("odp-4", "x^2+y^2+z^2+w^2+v^2", 1),
    CorpusEntry("odp-5", "z1^2+z2^2+z3^2+z4^2+z5^2+z6^2", 1),
    CorpusEntry("fermat-3-3", "x^3+y^3+z^3+w^3", 16),
    CorpusEntry("fermat-4-3", "x1^3+x2^3+x3^3+x4^3+x5^3", 32),
    CorpusEntry("fermat-5-3", "x1^3+x2^3+x3^3+x4^3+x5^3+x6^3", 64),
    CorpusEntry("fermat-3-4", "x^4+y^4+z^4+w^4", 81),
    CorpusEntry("fermat-4-4", "x1^4+x2^4+x3^4+x4^4+x5^4", 243),
    CorpusEntry("fermat-4-5", "x1^5+x2^5+x3^5+x4^5+x5^5", 1024),
    CorpusEntry("A2", "x^2+y^2+z^2+w^3", 2),
    CorpusEntry("A3", "x^2+y^2+z^2+w^4", 3),
    CorpusEntry("A5", "x^2+y^2+z^2+w^6", 5),
    CorpusEntry("brieskorn-2233", "x^2+y^2+z^3+w^3", 4),
    CorpusEntry("brieskorn-2333", "x^2+y^3+z^3+w^3", 8),
    CorpusEntry("brieskorn-22223", "x^2+y^2+z^2+w^2+v^3", 2),
    CorpusEntry("brieskorn-22333", "x^2+y^2+z^3+w^3+v^3", 8),
    CorpusEntry("brieskorn-2346", "x^2+y^3+z^4+w^6", 30),
    CorpusEntry("E6", "x^3+y^4+z^2+w^2", 6),
    CorpusEntry("E7", "x^3+x*y^3+z^2+w^2", 7),
    CorpusEntry("E8", "x^3+y^5+z^2+w^2", 8),
    CorpusEntry("D4", "x^2*y+y^3+z^2+w^2", 4),
    CorpusEntry("D5", "x^2*y+y^4+z^2+w^2", 5),
    CorpusEntry("D6", "x^2*y+y^5+z^2+w^2", 6),
    CorpusEntry("chain", "x^2*y+y^3*z+z^4+w^2", 15),
    CorpusEntry("loop", "x^2*y+y^2*z+z^2*x+w^2", 8),
    CorpusEntry("cubic-xyz", "x^3+y^3+z^3+w^3+x*y*z", 16),
    CorpusEntry("example-k2", "z1^2+z2^2+z3^2+z4^4+z5^4", 9),
    CorpusEntry("example-k3", "z1^3+z2^3+z3^3+z4^3+z5^3+z6^6+z7^6", 800),
    CorpusEntry("E6-x2", "x^3+y^4+z^2+w^2+v^2", 6),
    CorpusEntry("chain-5", "x^3*y+y^3+z^3+w^3+v^2", 28),
)


def load_corpus(path: str) -> tuple[CorpusEntry, ...]:
    """A JSON list of {"name", "poly", "mu"} objects."""
    with open(path, encoding="utf-8") as fh:
        data = json.load(fh)
    if not isinstance(data, list):
        raise ValueError("corpus file must hold a JSON list")
    out = []
    for i, item in enumerate(data):
        try:
            out.append(CorpusEntry(str(item["name"]), str(item["poly"]), int(item["mu"])))
        except (KeyError, TypeError, ValueError) as exc:
            raise ValueError(f"corpus entry {i} is malformed: {exc}") from None
    return tuple(out)


def check_corpus_entry(entry: CorpusEntry, guard: Guard = DEFAULT_GUARD) -> list[str]:
    """Every cross-check for one weighted homogeneous germ; returns the list of problems."""
    problems = []
    report = classify(analyze_local(parse_polynomial(entry.poly), guard))
    sing = report.singularity
    ws = sing.weight_system
    if sing.milnor != entry.mu:
        problems.append(f"mu={sing.milnor}, expected {entry.mu}")
    if ws is None:
        return problems + ["no weight system found"]
    if milnor_orlik(ws) != sing.milnor:
        problems.append(f"Milnor-Orlik gives {milnor_orlik(ws)}, staircase gives {sing.milnor}")
    if sing.milnor != sing.tyurina:
        problems.append(f"mu={sing.milnor} != tau={sing.tyurina}")
    try:
        if not poincare_series_check(ws, report.decomposition):
            problems.append("Poincare series disagrees with the weight spaces")
    except SeriesNotPolynomial as exc:
        problems.append(str(exc))
    if report.b_n11 + report.b_1n2 + report.link_invariant != sing.milnor:
        problems.append("Hodge partition does not sum to mu")
    if report.dim_K != report.dim_Kprime + report.link_invariant:
        problems.append("dim K != dim K' + link invariant")
    problems.extend(spectrum_problems(report))
    return problems


def spectrum_problems(report) -> list[str]:
    spec = report.spectrum
    if sum(e.multiplicity for e in spec) != report.mu:
        return ["spectrum size differs from mu"]
    centre = Fraction(report.n - 1, 2)
    counts = {e.value: e.multiplicity for e in spec}
    if any(counts.get(2 * centre - v) != m for v, m in counts.items()):
        return [f"spectrum is not symmetric about {centre}"]
    return []


# x^5 + y^5 + x^3 y^3 is not quasihomogeneous; mu by a Kouchnirenko count
NON_QUASIHOMOGENEOUS = ("x^5+y^5+x^3*y^3", 16)


@dataclass
class CheckResult:
    name: str
    ok: bool
    detail: str = ""

    def line(self) -> str:
        return f"{'PASS' if self.ok else 'FAIL'} {self.name}" + (f": {self.detail}" if self.detail else "")


def run_oracle_suite(
    corpus: Sequence[CorpusEntry] = BUILTIN_CORPUS,
    seed: int = 0,
    bound: int = 3,
    trials: int = 100,
    max_exponent: int = 6,
    max_vars: int = 5,
    guard: Guard = DEFAULT_GUARD,
    emit: Callable[[CheckResult], None] | None = None,
) -> list[CheckResult]:
    results: list[CheckResult] = []

    def record(res: CheckResult) -> None:
        results.append(res)
        if emit is not None:
            emit(res)

    bad = []
    count = 0
    for b in brieskorn_exponent_sweep(max_exponent, max_vars):
        count += 1
        mu, stairs, ws = brieskorn_analyze(b)
        gstairs = groebner_staircase(b, guard)
        series = sum(poincare_series(ws).values())
        if gstairs != stairs or len(gstairs) != mu or series != mu:
            bad.append(str(b))
    record(CheckResult("brieskorn-sweep", not bad, f"{count} germs" if not bad else "mismatch at " + ", ".join(bad)))

    for entry in corpus:
        try:
            problems = check_corpus_entry(entry, guard)
        except (ValueError, ArithmeticError) as exc:
            problems = [f"{type(exc).__name__}: {exc}"]
        record(CheckResult(f"corpus:{entry.name}", not problems, "; ".join(problems)))

    poly, mu = NON_QUASIHOMOGENEOUS
    sing = analyze_local(parse_polynomial(poly), guard)
    ok = sing.milnor == mu and sing.tyurina < sing.milnor
    record(CheckResult("non-quasihomogeneous", ok, f"mu={sing.milnor} tau={sing.tyurina}"))

    sweep = kernel_sweep(seed, trials, bound)
    detail = (
        f"{sweep.agreements}/{sweep.trials} agreements ({sweep.present} with witness), "
        f"{len(sweep.beyond_bound)} verified witnesses outside the bound {bound} box"
    )
    if sweep.failures:
        detail += "; " + " | ".join(sweep.failures)
    record(CheckResult("kernel-sweep", not sweep.failures, detail))
    return results
