"""Exact multivariate polynomials over Q, a text parser, and weight detection."""

from __future__ import annotations

import itertools
import logging
import re
from dataclasses import dataclass, field
from fractions import Fraction
from functools import reduce
from math import gcd
from typing import Iterable, Iterator, Mapping, Sequence

from .linalg import kernel_basis

logger = logging.getLogger(__name__)

Monomial = tuple[int, ...]

DEFAULT_ALIASES = ("x", "y", "z", "w", "v")


def grevlex_key(m: Monomial) -> tuple:
    """Sort key realizing graded reverse lexicographic order (larger = greater)."""
    return (sum(m),) + tuple(-e for e in reversed(m))


def default_names(nvars: int) -> tuple[str, ...]:
    return tuple(f"z{i + 1}" for i in range(nvars))


class Polynomial:
    """Sparse polynomial with Fraction coefficients in positional variables.

    ``names`` only affects printing; equality and hashing look at the
    exponent map and the variable count.
    """

    __slots__ = ("_terms", "nvars", "names", "_hash")

    def __init__(self, terms: Mapping[Monomial, object], nvars: int, names: Sequence[str] | None = None):
        if nvars < 1:
            raise ValueError("a polynomial needs at least one variable")
        clean: dict[Monomial, Fraction] = {}
        for mono, c in terms.items():
            mono = tuple(int(e) for e in mono)
            if len(mono) != nvars:
                raise ValueError(f"monomial {mono} does not have {nvars} exponents")
            if any(e < 0 for e in mono):
                raise ValueError(f"negative exponent in {mono}")
            c = Fraction(c)
            if c:
                clean[mono] = clean.get(mono, Fraction(0)) + c
                if not clean[mono]:
                    del clean[mono]
        self._terms = clean
        self.nvars = nvars
        self.names = tuple(names) if names is not None else default_names(nvars)
        if len(self.names) != nvars:
            raise ValueError("names must match the variable count")
        self._hash = None

    # construction helpers
    @classmethod
    def constant(cls, c, nvars: int, names=None) -> "Polynomial":
        return cls({(0,) * nvars: c}, nvars, names)

    @classmethod
    def variable(cls, i: int, nvars: int, names=None) -> "Polynomial":
        e = [0] * nvars
        e[i] = 1
        return cls({tuple(e): 1}, nvars, names)

    @classmethod
    def monomial(cls, exps: Monomial, nvars: int | None = None, coeff=1, names=None) -> "Polynomial":
        return cls({tuple(exps): coeff}, nvars or len(exps), names)

    # container protocol
    @property
    def terms(self) -> dict[Monomial, Fraction]:
        return dict(self._terms)

    def items(self) -> Iterator[tuple[Monomial, Fraction]]:
        """Terms in descending grevlex order."""
        for m in sorted(self._terms, key=grevlex_key, reverse=True):
            yield m, self._terms[m]

    def support(self) -> list[Monomial]:
        return [m for m, _ in self.items()]

    def coefficient(self, mono: Monomial) -> Fraction:
        return self._terms.get(tuple(mono), Fraction(0))

    def __len__(self) -> int:
        return len(self._terms)

    def is_zero(self) -> bool:
        return not self._terms

    def is_constant(self) -> bool:
        return all(sum(m) == 0 for m in self._terms)

    def total_degree(self) -> int:
        return max((sum(m) for m in self._terms), default=-1)

    def value_at_origin(self) -> Fraction:
        return self._terms.get((0,) * self.nvars, Fraction(0))

    def __eq__(self, other) -> bool:
        if isinstance(other, Polynomial):
            return self.nvars == other.nvars and self._terms == other._terms
        if isinstance(other, (int, Fraction)):
            return self == Polynomial.constant(other, self.nvars)
        return NotImplemented

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash((self.nvars, frozenset(self._terms.items())))
        return self._hash

    # arithmetic
    def _coerce(self, other) -> "Polynomial":
        if isinstance(other, Polynomial):
            if other.nvars != self.nvars:
                raise ValueError("variable counts differ")
            return other
        if isinstance(other, (int, Fraction)):
            return Polynomial.constant(other, self.nvars, self.names)
        raise TypeError(f"cannot combine Polynomial with {type(other).__name__}")

    def __add__(self, other) -> "Polynomial":
        other = self._coerce(other)
        out = dict(self._terms)
        for m, c in other._terms.items():
            out[m] = out.get(m, Fraction(0)) + c
        return Polynomial(out, self.nvars, self.names)

    __radd__ = __add__

    def __neg__(self) -> "Polynomial":
        return Polynomial({m: -c for m, c in self._terms.items()}, self.nvars, self.names)

    def __sub__(self, other) -> "Polynomial":
        return self + (-self._coerce(other))

    def __rsub__(self, other) -> "Polynomial":
        return self._coerce(other) - self

    def __mul__(self, other) -> "Polynomial":
        other = self._coerce(other)
        out: dict[Monomial, Fraction] = {}
        for m1, c1 in self._terms.items():
            for m2, c2 in other._terms.items():
                m = tuple(a + b for a, b in zip(m1, m2))
                out[m] = out.get(m, Fraction(0)) + c1 * c2
        return Polynomial(out, self.nvars, self.names)

    __rmul__ = __mul__

    def __pow__(self, k: int) -> "Polynomial":
        if k < 0:
            raise ValueError("negative power")
        result = Polynomial.constant(1, self.nvars, self.names)
        base = self
        while k:
            if k & 1:
                result = result * base
            base = base * base
            k >>= 1
        return result

    def partial(self, i: int) -> "Polynomial":
        """Formal derivative with respect to the variable at 0-based index ``i``."""
        if not 0 <= i < self.nvars:
            raise IndexError(f"variable index {i} out of range for {self.nvars} variables")
        out = {}
        for m, c in self._terms.items():
            if m[i]:
                e = list(m)
                e[i] -= 1
                out[tuple(e)] = c * m[i]
        return Polynomial(out, self.nvars, self.names)

    def with_names(self, names: Sequence[str]) -> "Polynomial":
        return Polynomial(self._terms, self.nvars, names)

    def __str__(self) -> str:
        return format_polynomial(self)

    def __repr__(self) -> str:
        return f"Polynomial({format_polynomial(self)!r}, nvars={self.nvars})"


def partial_derivative(f: Polynomial, i: int) -> Polynomial:
    """d f / d z_i with a 1-based variable index."""
    if not 1 <= i <= f.nvars:
        raise IndexError(f"variable index {i} out of range 1..{f.nvars}")
    return f.partial(i - 1)


def jacobian(f: Polynomial) -> list[Polynomial]:
    return [f.partial(i) for i in range(f.nvars)]


# ---------------------------------------------------------------------------
# printing and parsing


def _format_monomial(m: Monomial, names: Sequence[str]) -> str:
    parts = []
    for name, e in zip(names, m):
        if e == 1:
            parts.append(name)
        elif e > 1:
            parts.append(f"{name}^{e}")
    return "*".join(parts)


def format_polynomial(f: Polynomial) -> str:
    if f.is_zero():
        return "0"
    out = []
    for k, (m, c) in enumerate(f.items()):
        sign = "-" if c < 0 else "+"
        c = abs(c)
        body = _format_monomial(m, f.names)
        if not body:
            text = str(c)
        elif c == 1:
            text = body
        else:
            text = f"{c}*{body}"
        if k == 0:
            out.append(text if sign == "+" else f"-{text}")
        else:
            out.append(f" {sign} {text}")
    return "".join(out)


class PolynomialSyntaxError(ValueError):
    """Raised for malformed polynomial text; ``position`` is a 0-based offset."""

    def __init__(self, message: str, position: int, text: str = ""):
        self.position = position
        self.text = text
        super().__init__(f"{message} at position {position}")


_TOKEN = re.compile(r"\s*(?:(?P<nat>\d+)|(?P<var>[A-Za-z][A-Za-z0-9]*)|(?P<op>[-+*/^]))")


def _tokenize(text: str) -> list[tuple[str, str, int]]:
    tokens = []
    pos = 0
    while pos < len(text):
        if text[pos:].strip() == "":
            break
        m = _TOKEN.match(text, pos)
        if not m:
            start = pos + len(text[pos:]) - len(text[pos:].lstrip())
            raise PolynomialSyntaxError(f"unexpected character {text[start]!r}", start, text)
        kind = m.lastgroup
        tokens.append((kind, m.group(kind), m.start(kind)))
        pos = m.end()
    tokens.append(("end", "", len(text)))
    return tokens


class _Parser:
    def __init__(self, text: str, variables: Sequence[str] | None):
        self.text = text
        self.tokens = _tokenize(text)
        self.i = 0
        self.fixed = variables is not None
        self.names: list[str] = list(variables) if variables is not None else []

    def peek(self):
        return self.tokens[self.i]

    def take(self):
        tok = self.tokens[self.i]
        self.i += 1
        return tok

    def error(self, message: str, tok=None):
        tok = tok or self.peek()
        found = repr(tok[1]) if tok[0] != "end" else "end of input"
        raise PolynomialSyntaxError(f"{message}, found {found}", tok[2], self.text)

    def expect_nat(self, what: str) -> int:
        tok = self.peek()
        if tok[0] != "nat":
            self.error(f"expected {what}")
        self.take()
        return int(tok[1])

    def var_index(self, tok) -> int:
        name = tok[1]
        if name in self.names:
            return self.names.index(name)
        if self.fixed:
            raise PolynomialSyntaxError(f"unknown variable {name!r}", tok[2], self.text)
        self.names.append(name)
        return len(self.names) - 1

    def parse(self) -> list[tuple[Fraction, dict[int, int]]]:
        terms = []
        sign = 1
        if self.peek()[:2] == ("op", "-"):
            self.take()
            sign = -1
        terms.append(self.term(sign))
        while True:
            tok = self.peek()
            if tok[0] == "end":
                break
            if tok[0] == "op" and tok[1] in "+-":
                self.take()
                terms.append(self.term(1 if tok[1] == "+" else -1))
            else:
                self.error("expected '+', '-' or end of input")
        return terms

    def term(self, sign: int) -> tuple[Fraction, dict[int, int]]:
        tok = self.peek()
        exps: dict[int, int] = {}
        if tok[0] == "nat":
            num = int(self.take()[1])
            den = 1
            if self.peek()[:2] == ("op", "/"):
                self.take()
                slash = self.tokens[self.i - 1]
                den = self.expect_nat("denominator")
                if den == 0:
                    raise PolynomialSyntaxError("zero denominator", slash[2], self.text)
            coeff = Fraction(num, den)
            if self.peek()[:2] == ("op", "*"):
                self.take()
                self.factors(exps)
            return sign * coeff, exps
        if tok[0] == "var":
            self.factors(exps)
            return Fraction(sign), exps
        self.error("expected a coefficient or a variable")

    def factors(self, exps: dict[int, int]) -> None:
        self.factor(exps)
        while self.peek()[:2] == ("op", "*"):
            self.take()
            self.factor(exps)

    def factor(self, exps: dict[int, int]) -> None:
        tok = self.peek()
        if tok[0] != "var":
            self.error("expected a variable")
        self.take()
        idx = self.var_index(tok)
        e = 1
        if self.peek()[:2] == ("op", "^"):
            self.take()
            e = self.expect_nat("exponent")
        exps[idx] = exps.get(idx, 0) + e


def parse_polynomial(text: str, variables: Sequence[str] | None = None) -> Polynomial:
    """Parse polynomial text.

    Without ``variables`` the variable order is the order of first
    appearance. With ``variables`` that order is used and any other name is
    rejected. A zero result is accepted but logged.

    >>> str(parse_polynomial("2/3*x*y - z^4"))
    '-z^4 + 2/3*x*y'
    """
    if variables is not None:
        variables = list(variables)
        if len(set(variables)) != len(variables):
            raise ValueError("duplicate variable names")
        for v in variables:
            if not re.fullmatch(r"[A-Za-z][A-Za-z0-9]*", v):
                raise ValueError(f"invalid variable name {v!r}")
    parser = _Parser(text, variables)
    raw = parser.parse()
    names = parser.names or ["z1"]
    n = len(names)
    terms: dict[Monomial, Fraction] = {}
    for coeff, exps in raw:
        mono = tuple(exps.get(i, 0) for i in range(n))
        terms[mono] = terms.get(mono, Fraction(0)) + coeff
    poly = Polynomial(terms, n, names)
    if poly.is_zero():
        logger.warning("polynomial %r is identically zero", text)
    return poly


# ---------------------------------------------------------------------------
# weighted homogeneity


@dataclass(frozen=True)
class WeightSystem:
    """Positive integer weights ``a`` with gcd 1 and a degree ``d > 1``."""

    weights: tuple[int, ...]
    degree: int
    ambiguous: bool = field(default=False, compare=False)

    def __post_init__(self):
        if not self.weights or any(a <= 0 for a in self.weights):
            raise ValueError("weights must be positive integers")
        if reduce(gcd, self.weights) != 1:
            raise ValueError("weights must have gcd 1")
        if self.degree <= 1:
            raise ValueError("degree must exceed 1")

    @property
    def nvars(self) -> int:
        return len(self.weights)

    @property
    def fractional_weights(self) -> tuple[Fraction, ...]:
        return tuple(Fraction(a, self.degree) for a in self.weights)

    @property
    def N(self) -> int:
        return sum(self.weights) - self.degree

    @property
    def weight_sum(self) -> Fraction:
        return Fraction(sum(self.weights), self.degree)

    def weighted_degree(self, mono: Monomial) -> int:
        return sum(a * e for a, e in zip(self.weights, mono))

    def __str__(self) -> str:
        return f"({','.join(map(str, self.weights))};{self.degree})"


def _primitive_ints(values: Iterable[Fraction]) -> list[int]:
    values = list(values)
    den = reduce(lambda acc, x: acc * x.denominator // gcd(acc, x.denominator), values, 1)
    ints = [int(v * den) for v in values]
    g = reduce(gcd, ints, 0)
    return [v // g for v in ints] if g else ints


def _search_min_degree(support: list[Monomial], nvars: int, max_degree: int) -> tuple[list[int], int] | None:
    """Smallest d admitting positive integer weights; ties broken lexicographically."""
    # Row-reduce [alpha | 1] once; pivot weights are affine in d and the free weights.
    rows = [[Fraction(e) for e in mono] + [Fraction(1)] for mono in support]
    pivots: list[int] = []
    r = 0
    for c in range(nvars):
        p = next((i for i in range(r, len(rows)) if rows[i][c] != 0), None)
        if p is None:
            continue
        rows[r], rows[p] = rows[p], rows[r]
        pv = rows[r][c]
        rows[r] = [x / pv for x in rows[r]]
        for i in range(len(rows)):
            if i != r and rows[i][c] != 0:
                f = rows[i][c]
                rows[i] = [a - f * b for a, b in zip(rows[i], rows[r])]
        pivots.append(c)
        r += 1
    if any(all(x == 0 for x in row[:nvars]) and row[nvars] != 0 for row in rows[r:]):
        return None
    free = [c for c in range(nvars) if c not in pivots]
    for d in range(2, max_degree + 1):
        for choice in itertools.product(range(1, d + 1), repeat=len(free)):
            a = [Fraction(0)] * nvars
            for c, v in zip(free, choice):
                a[c] = Fraction(v)
            ok = True
            for k, pc in enumerate(pivots):
                val = rows[k][nvars] * d - sum((rows[k][c] * a[c] for c in free), Fraction(0))
                if val <= 0 or val.denominator != 1:
                    ok = False
                    break
                a[pc] = val
            if ok:
                return [int(x) for x in a], d
    return None


def detect_weight_system(f: Polynomial, max_degree: int = 200) -> WeightSystem | None:
    """Find weights a and degree d with sum(a_i * alpha_i) = d on the support of f.

    Returns None when no positive solution exists or d <= 1. When the support
    leaves the weight ray undetermined the solution with the smallest d is
    returned and flagged ``ambiguous``.
    """
    if f.is_zero() or f.is_constant():
        return None
    support = f.support()
    n = f.nvars
    rows = [list(m) + [-1] for m in support]
    kernel = kernel_basis(rows, n + 1)
    if len(kernel) == 1:
        vec = kernel[0]
        if vec[n] < 0:
            vec = tuple(-x for x in vec)
        if vec[n] <= 0 or any(x <= 0 for x in vec[:n]):
            return None
        weights = _primitive_ints(vec[:n])
        degree = sum(a * e for a, e in zip(weights, support[0]))
        if degree <= 1:
            return None
        return WeightSystem(tuple(weights), degree)
    if not kernel:
        return None
    found = _search_min_degree(support, n, max_degree)
    if found is None:
        return None
    weights, degree = found
    logger.info("weight system for %s is not unique; using minimal degree %d", f, degree)
    return WeightSystem(tuple(weights), degree, ambiguous=True)


def euler_field_apply(f: Polynomial, ws: WeightSystem) -> Polynomial:
    """sum_i a_i z_i df/dz_i; equals d*f exactly when f is weighted homogeneous for ws."""
    if ws.nvars != f.nvars:
        raise ValueError("weight system and polynomial have different variable counts")
    total = Polynomial({}, f.nvars, f.names)
    for i, a in enumerate(ws.weights):
        total = total + a * Polynomial.variable(i, f.nvars, f.names) * f.partial(i)
    return total


def is_weighted_homogeneous(f: Polynomial, ws: WeightSystem) -> bool:
    return all(ws.weighted_degree(m) == ws.degree for m in f.terms)
