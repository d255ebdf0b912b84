"""First-order smoothability of varieties with classified isolated hypersurface singularities.

The homology map ``phi`` (one column per 1-liminal point) and the global
geometric hypotheses are supplied by the caller; what is decided here is the
local classification of every point and the linear-algebra condition
sum_x a_x phi(e_x) = 0 with every a_x nonzero.
"""

from __future__ import annotations

import json
import re
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Any, Sequence

import jsonschema

from .classify import (
    NOT_RATIONAL,
    ONE_LIMINAL,
    ONE_RATIONAL,
    STRONGLY_ONE_IRRATIONAL,
    ClassificationReport,
    classify,
)
from .groebner import DEFAULT_GUARD, Guard
from .linalg import as_matrix, kernel_basis, mat_vec
from .local import analyze_local
from .polynomial import parse_polynomial

CALABI_YAU = "calabi_yau"
FANO = "fano"

FIRST_ORDER_SMOOTHABLE = "first_order_smoothable"
SMOOTHABLE = "smoothable"
CRITERION_FAILS = "criterion_fails"
NOT_APPLICABLE = "not_applicable"

# point kinds (configuration tags)
TAG_LIMINAL = "one_liminal"
TAG_STRONG = "strongly_one_irrational"
TAG_ONE_RATIONAL = "one_rational"
TAG_OTHER = "other"
TAGS = (TAG_LIMINAL, TAG_STRONG, TAG_ONE_RATIONAL, TAG_OTHER)

_LABEL_TO_TAG = {
    ONE_LIMINAL: TAG_LIMINAL,
    STRONGLY_ONE_IRRATIONAL: TAG_STRONG,
    ONE_RATIONAL: TAG_ONE_RATIONAL,
    NOT_RATIONAL: TAG_OTHER,
}

CY_FLAGS = ("h1_O_vanishes", "deformations_unobstructed")
FANO_FLAGS = ("fano_H_exists_disjoint", "fano_H1Omega_vanishes", "fano_H3T0_vanishes")
ALL_FLAGS = CY_FLAGS + FANO_FLAGS


class ConfigurationError(ValueError):
    """Malformed configuration; ``pointer`` is a JSON pointer into the document."""

    def __init__(self, message: str, pointer: str = ""):
        self.pointer = pointer
        super().__init__(f"{pointer or '/'}: {message}")


class UnclassifiedPoint(ValueError):
    pass


class MatrixShapeMismatch(ValueError):
    pass


# ---------------------------------------------------------------------------
# kernel witnesses


def all_nonzero_kernel_vector(rows: Sequence[Sequence], ncols: int | None = None) -> tuple[Fraction, ...] | None:
    """A vector v with M v = 0 and no zero coordinate, or None if none exists.

    Such a vector exists iff every coordinate is nonzero on some kernel basis
    vector. The witness accumulates v += t * b_j over the basis, taking the
    smallest positive integer t that does not cancel an existing coordinate.
    """
    mat = as_matrix(rows, ncols)
    width = ncols if ncols is not None else len(mat[0])
    if width == 0:
        return ()
    basis = kernel_basis(mat, width)
    if not all(any(b[i] != 0 for b in basis) for i in range(width)):
        return None
    v = [Fraction(0)] * width
    for b in basis:
        bad = {-v[i] / b[i] for i in range(width) if v[i] != 0 and b[i] != 0}
        t = 1
        while t in bad:
            t += 1
        v = [x + t * y for x, y in zip(v, b)]
    if any(x == 0 for x in v) or any(mat_vec(mat, v)):
        raise AssertionError("kernel witness failed verification")
    return tuple(v)


# ---------------------------------------------------------------------------
# configurations


@dataclass(frozen=True)
class SingularPointRecord:
    id: str
    tag: str | None = None
    poly: str | None = None
    report: ClassificationReport | None = field(default=None, repr=False)

    @property
    def kind(self) -> str:
        """Resolved tag; the computed classification wins when it is decisive."""
        if self.report is not None and self.report.classification in _LABEL_TO_TAG:
            return _LABEL_TO_TAG[self.report.classification]
        if self.tag is None:
            reason = self.report.classification if self.report is not None else "no polynomial or tag"
            raise UnclassifiedPoint(f"point {self.id!r} cannot be classified ({reason}); supply a tag")
        return self.tag

    @property
    def rational(self) -> bool:
        return self.kind in (TAG_LIMINAL, TAG_STRONG, TAG_ONE_RATIONAL)


@dataclass(frozen=True)
class Configuration:
    variety_kind: str
    n: int
    points: tuple[SingularPointRecord, ...]
    relation_matrix: tuple[tuple[Fraction, ...], ...]
    flags: dict[str, bool]

    def liminal_points(self) -> list[SingularPointRecord]:
        return [p for p in self.points if p.kind == TAG_LIMINAL]

    def flag(self, name: str) -> bool:
        if name not in self.flags:
            raise ConfigurationError(f"flag {name!r} was not asserted", f"/flags/{name}")
        return self.flags[name]


@dataclass(frozen=True)
class SmoothabilityVerdict:
    decision: str
    witness: tuple[Fraction, ...] | None
    citations: tuple[str, ...]
    assertions: tuple[str, ...] = ()
    reason: str = ""

    def __post_init__(self):
        positive = self.decision in (FIRST_ORDER_SMOOTHABLE, SMOOTHABLE)
        if positive != (self.witness is not None):
            raise ValueError("witness must be present exactly for positive decisions")
        if self.witness is not None and any(x == 0 for x in self.witness):
            raise ValueError("witness has a zero coefficient")


def good_configuration(config: Configuration) -> bool:
    """Every point is strongly 1-irrational or 1-liminal."""
    return all(p.kind in (TAG_STRONG, TAG_LIMINAL) for p in config.points)


def _check_phi(config: Configuration) -> tuple[list[list[Fraction]], int]:
    m = len(config.liminal_points())
    rows = [list(r) for r in config.relation_matrix]
    for r, row in enumerate(rows):
        if len(row) != m:
            raise MatrixShapeMismatch(f"phi row {r} has {len(row)} columns but there are {m} 1-liminal points")
    return rows, m


def cy_smoothability(config: Configuration) -> SmoothabilityVerdict:
    if config.variety_kind != CALABI_YAU:
        return SmoothabilityVerdict(NOT_APPLICABLE, None, (), reason="not a Calabi-Yau configuration")
    used = ["h1_O_vanishes"]
    if not config.flag("h1_O_vanishes"):
        return SmoothabilityVerdict(
            NOT_APPLICABLE, None, (), tuple(used), reason="H^1(Y, O_Y) = 0 is required but not asserted"
        )
    kinds = [p.kind for p in config.points]
    rows, m = _check_phi(config)
    cites = ["cy:good-configuration"]
    if not good_configuration(config):
        bad = next(p.id for p, k in zip(config.points, kinds) if k not in (TAG_STRONG, TAG_LIMINAL))
        return SmoothabilityVerdict(
            CRITERION_FAILS,
            None,
            tuple(cites),
            tuple(used),
            reason=f"good configuration violated: point {bad!r} is neither strongly 1-irrational nor 1-liminal",
        )
    cites.append("cy:all-nonzero-relation")
    witness = all_nonzero_kernel_vector(rows, m)
    if witness is None:
        return SmoothabilityVerdict(
            CRITERION_FAILS,
            None,
            tuple(cites),
            tuple(used),
            reason="no relation among the 1-liminal classes with all coefficients nonzero",
        )
    if config.n == 3:
        cites.append("unobstructed:dimension-3")
    elif m == len(kinds):
        cites.append("unobstructed:all-1-du-bois")
    else:
        used.append("deformations_unobstructed")
        if not config.flag("deformations_unobstructed"):
            return SmoothabilityVerdict(
                FIRST_ORDER_SMOOTHABLE,
                witness,
                tuple(cites),
                tuple(used),
                reason="first-order smoothing exists; unobstructedness not available",
            )
        cites.append("unobstructed:asserted")
    return SmoothabilityVerdict(SMOOTHABLE, witness, tuple(cites), tuple(used))


def fano_smoothability(config: Configuration) -> SmoothabilityVerdict:
    if config.variety_kind != FANO:
        return SmoothabilityVerdict(NOT_APPLICABLE, None, (), reason="not a Fano configuration")
    kinds = [p.kind for p in config.points]
    if config.n == 3:
        nonrational = [p.id for p in config.points if not p.rational]
        if nonrational:
            return SmoothabilityVerdict(
                CRITERION_FAILS,
                None,
                ("fano:dimension-3",),
                reason=f"dimension 3 requires rational singularities; point {nonrational[0]!r} is not",
            )
        return SmoothabilityVerdict(SMOOTHABLE, (), ("fano:dimension-3",))

    not_irrational = [p.id for p, k in zip(config.points, kinds) if k not in (TAG_LIMINAL, TAG_STRONG)]
    if not_irrational:
        return SmoothabilityVerdict(
            CRITERION_FAILS,
            None,
            ("fano:1-irrational",),
            reason=f"1-irrational singularities required; point {not_irrational[0]!r} is not",
        )
    all_liminal = all(k == TAG_LIMINAL for k in kinds)
    if all_liminal:
        needed = ("fano_H_exists_disjoint", "fano_H1Omega_vanishes")
        cite = "fano:1-liminal"
    else:
        needed = ("fano_H_exists_disjoint", "fano_H3T0_vanishes", "fano_H1Omega_vanishes")
        cite = "fano:1-irrational"
    for name in needed:
        if not config.flag(name):
            return SmoothabilityVerdict(
                CRITERION_FAILS, None, (cite,), needed, reason=f"assertion {name} is required but false"
            )
    return SmoothabilityVerdict(SMOOTHABLE, (), (cite,), needed)


def check_configuration(config: Configuration) -> SmoothabilityVerdict:
    if config.variety_kind == CALABI_YAU:
        return cy_smoothability(config)
    return fano_smoothability(config)


# ---------------------------------------------------------------------------
# JSON loading

_RATIONAL = re.compile(r"^-?\d+(/\d+)?$")

CONFIG_SCHEMA: dict[str, Any] = {
    "type": "object",
    "required": ["kind", "n", "points", "phi", "flags"],
    "additionalProperties": False,
    "properties": {
        "kind": {"enum": [CALABI_YAU, FANO]},
        "n": {"type": "integer", "minimum": 3},
        "points": {
            "type": "array",
            "items": {
                "type": "object",
                "required": ["id"],
                "additionalProperties": False,
                "anyOf": [{"required": ["poly"]}, {"required": ["tag"]}],
                "properties": {
                    "id": {"type": "string"},
                    "poly": {"type": "string"},
                    "tag": {"enum": list(TAGS)},
                },
            },
        },
        "phi": {
            "type": "array",
            "items": {"type": "array", "items": {"type": ["string", "integer"]}},
        },
        "flags": {
            "type": "object",
            "additionalProperties": False,
            "properties": {name: {"type": "boolean"} for name in ALL_FLAGS},
        },
    },
}


def _pointer(path) -> str:
    return "".join(f"/{p}" for p in path)


def parse_rational(value, pointer: str = "") -> Fraction:
    if isinstance(value, bool):
        raise ConfigurationError("expected a rational", pointer)
    if isinstance(value, int):
        return Fraction(value)
    if not isinstance(value, str) or not _RATIONAL.match(value.strip()):
        raise ConfigurationError(f"expected a rational string 'p/q', got {value!r}", pointer)
    num, _, den = value.strip().partition("/")
    if den and int(den) == 0:
        raise ConfigurationError("zero denominator", pointer)
    return Fraction(int(num), int(den) if den else 1)


def load_configuration(doc: dict | str, guard: Guard = DEFAULT_GUARD) -> Configuration:
    """Validate a configuration document and classify every point that carries a polynomial."""
    if isinstance(doc, str):
        try:
            doc = json.loads(doc)
        except json.JSONDecodeError as exc:
            raise ConfigurationError(f"invalid JSON: {exc}") from None
    validator = jsonschema.Draft7Validator(CONFIG_SCHEMA)
    errors = sorted(validator.iter_errors(doc), key=lambda e: list(e.absolute_path))
    if errors:
        err = errors[0]
        raise ConfigurationError(err.message, _pointer(err.absolute_path))

    kind, n = doc["kind"], doc["n"]
    required = CY_FLAGS if kind == CALABI_YAU else FANO_FLAGS
    for name in required:
        if name not in doc["flags"]:
            raise ConfigurationError(f"flag {name!r} must be stated explicitly", f"/flags/{name}")

    points = []
    seen = set()
    for idx, pt in enumerate(doc["points"]):
        ptr = f"/points/{idx}"
        if pt["id"] in seen:
            raise ConfigurationError(f"duplicate point id {pt['id']!r}", f"{ptr}/id")
        seen.add(pt["id"])
        report = None
        if "poly" in pt:
            try:
                f = parse_polynomial(pt["poly"])
            except ValueError as exc:
                raise ConfigurationError(str(exc), f"{ptr}/poly") from None
            if f.nvars != n + 1:
                raise ConfigurationError(f"polynomial has {f.nvars} variables, expected n + 1 = {n + 1}", f"{ptr}/poly")
            report = classify(analyze_local(f, guard))
        record = SingularPointRecord(pt["id"], pt.get("tag"), pt.get("poly"), report)
        if report is not None and "tag" in pt and report.classification in _LABEL_TO_TAG:
            if _LABEL_TO_TAG[report.classification] != pt["tag"]:
                raise ConfigurationError(
                    f"tag {pt['tag']!r} contradicts computed classification {report.classification!r}", f"{ptr}/tag"
                )
        points.append(record)

    phi = tuple(
        tuple(parse_rational(x, f"/phi/{r}/{c}") for c, x in enumerate(row)) for r, row in enumerate(doc["phi"])
    )
    return Configuration(kind, n, tuple(points), phi, dict(doc["flags"]))


def verdict_document(config: Configuration, verdict: SmoothabilityVerdict) -> dict:
    from .report import fmt_rational

    return {
        "schema_version": "1",
        "kind": config.variety_kind,
        "n": config.n,
        "decision": verdict.decision,
        "reason": verdict.reason,
        "witness": None if verdict.witness is None else [fmt_rational(x) for x in verdict.witness],
        "liminal_points": [p.id for p in config.liminal_points()],
        "points": [{"id": p.id, "kind": p.kind} for p in config.points],
        "citations": list(verdict.citations),
        "assertions": list(verdict.assertions),
    }
