"""Report documents (JSON/text/CSV) and the built-in polynomial families."""

from __future__ import annotations

import csv
import io
import json
import re
from fractions import Fraction
from typing import Iterable, Sequence

from .classify import ClassificationReport, classify
from .groebner import DEFAULT_GUARD, Guard
from .local import analyze_local
from .polynomial import Polynomial, parse_polynomial

SCHEMA_VERSION = "1"
BASIS_LIMIT = 256


def fmt_rational(x) -> str:
    x = Fraction(x)
    return f"{x.numerator}/{x.denominator}"


def _monomial_text(m, names) -> str:
    parts = [n if e == 1 else f"{n}^{e}" for n, e in zip(names, m) if e]
    return "*".join(parts) or "1"


def report_document(report: ClassificationReport, text: str | None = None) -> dict:
    """Flatten a report into the version-1 document; key order is fixed."""
    sing = report.singularity
    f = sing.f
    ws = sing.weight_system
    doc: dict = {"schema_version": SCHEMA_VERSION}
    doc["input"] = {"poly": text if text is not None else str(f), "variables": list(f.names), "canonical": str(f)}
    doc["n"] = sing.n
    doc["mu"] = sing.milnor
    doc["tau"] = sing.tyurina
    doc["quasihomogeneity"] = sing.quasihomogeneity if not sing.is_smooth else None
    doc["weight_system"] = (
        None if ws is None else {"weights": list(ws.weights), "degree": ws.degree, "ambiguous": ws.ambiguous}
    )
    doc["N"] = report.N
    doc["alpha_tilde"] = None if report.alpha_tilde is None else fmt_rational(report.alpha_tilde)
    doc["classification"] = report.classification
    doc["flags"] = None if report.flags is None else report.flags.as_dict()
    for key in ("dim_K", "dim_Kprime", "link_invariant", "b_n11", "b_1n2", "a_invariant"):
        doc[key] = getattr(report, key)
    doc["k_level"] = (
        None if report.k_level is None else {str(k): dict(v) for k, v in sorted(report.k_level.items())}
    )
    dec = report.decomposition
    doc["weight_decomposition"] = (
        None if dec is None else [{"weight": k, "dim": v} for k, v in sorted(dec.dims.items())]
    )
    doc["spectrum"] = (
        None
        if report.spectrum is None
        else [{"value": fmt_rational(e.value), "multiplicity": e.multiplicity} for e in report.spectrum]
    )
    basis = sing.tyurina_basis
    if basis is not None and sing.tyurina <= BASIS_LIMIT:
        doc["t1_basis"] = [_monomial_text(m, f.names) for m in basis.monomials]
    else:
        doc["t1_basis"] = None
    doc["local_algebra"] = "localized" if sing.localized else "global"
    doc["warnings"] = list(report.warnings)
    return doc


def dumps(doc) -> str:
    return json.dumps(doc, indent=2, ensure_ascii=False) + "\n"


def render_text(doc: dict) -> str:
    lines = [f"polynomial        {doc['input']['canonical']}"]
    lines.append(f"variables         {', '.join(doc['input']['variables'])}")
    for key in ("n", "mu", "tau", "quasihomogeneity", "classification", "alpha_tilde", "N"):
        if doc.get(key) is not None:
            lines.append(f"{key:<18}{doc[key]}")
    ws = doc.get("weight_system")
    if ws:
        lines.append(f"{'weights':<18}({','.join(map(str, ws['weights']))};{ws['degree']})")
    for key in ("dim_K", "dim_Kprime", "link_invariant", "b_n11", "b_1n2", "a_invariant"):
        if doc.get(key) is not None:
            lines.append(f"{key:<18}{doc[key]}")
    if doc.get("flags"):
        on = [k for k, v in doc["flags"].items() if v]
        lines.append(f"{'flags':<18}{', '.join(on) or '-'}")
    if doc.get("weight_decomposition"):
        parts = [f"{e['weight']}:{e['dim']}" for e in doc["weight_decomposition"]]
        lines.append(f"{'T1 weights':<18}{' '.join(parts)}")
    if doc.get("spectrum"):
        parts = [f"{e['value']}^{e['multiplicity']}" if e["multiplicity"] > 1 else e["value"] for e in doc["spectrum"]]
        lines.append(f"{'spectrum':<18}{' '.join(parts)}")
    for w in doc.get("warnings", []):
        lines.append(f"warning: {w}")
    return "\n".join(lines) + "\n"


# ---------------------------------------------------------------------------
# tables

TABLE_COLUMNS = (
    "family",
    "n",
    "d",
    "exponents",
    "weights",
    "mu",
    "tau",
    "alpha_tilde",
    "classification",
    "rational",
    "one_rational",
    "one_irrational",
    "one_du_bois",
    "one_liminal",
    "strongly_one_irrational",
    "dim_K",
    "dim_Kprime",
    "link_invariant",
    "b_n11",
    "b_1n2",
)


def _cell(v) -> str:
    if v is None:
        return ""
    if isinstance(v, bool):
        return "true" if v else "false"
    if isinstance(v, Fraction):
        return fmt_rational(v)
    return str(v)


def table_row(family: str, exponents: Sequence[int], report: ClassificationReport) -> dict[str, str]:
    ws = report.singularity.weight_system
    flags = report.flags.as_dict() if report.flags is not None else {}
    row = {
        "family": family,
        "n": report.n,
        "d": ws.degree if ws is not None else None,
        "exponents": ";".join(map(str, exponents)),
        "weights": ";".join(map(str, ws.weights)) if ws is not None else None,
        "mu": report.mu,
        "tau": report.tau,
        "alpha_tilde": report.alpha_tilde,
        "classification": report.classification,
        **{k: flags.get(k) for k in TABLE_COLUMNS[9:15]},
        "dim_K": report.dim_K,
        "dim_Kprime": report.dim_Kprime,
        "link_invariant": report.link_invariant,
        "b_n11": report.b_n11,
        "b_1n2": report.b_1n2,
    }
    return {k: _cell(row[k]) for k in TABLE_COLUMNS}


def write_csv(rows: Iterable[dict[str, str]], columns: Sequence[str] = TABLE_COLUMNS) -> str:
    buf = io.StringIO()
    writer = csv.DictWriter(buf, fieldnames=list(columns), lineterminator="\n")
    writer.writeheader()
    for row in rows:
        writer.writerow(row)
    return buf.getvalue()


# ---------------------------------------------------------------------------
# families


def brieskorn_polynomial(exponents: Sequence[int]) -> Polynomial:
    """sum_i z_i^{b_i}."""
    if any(b < 1 for b in exponents):
        raise ValueError("exponents must be positive")
    n = len(exponents)
    names = [f"z{i + 1}" for i in range(n)]
    terms = {tuple(b if j == i else 0 for j in range(n)): 1 for i, b in enumerate(exponents)}
    return Polynomial(terms, n, names)


def fermat_exponents(n: int, d: int) -> list[int]:
    """Cone over the Fermat hypersurface of degree d in P^n."""
    return [d] * (n + 1)


def example_2_10_exponents(k: int) -> list[int]:
    """z_1^k + ... + z_{n-1}^k + z_n^{2k} + z_{n+1}^{2k} with n = 2k."""
    n = 2 * k
    return [k] * (n - 1) + [2 * k, 2 * k]


def parse_range(text: str) -> list[int]:
    """'3..6', '2,4,7' or '5'."""
    out: list[int] = []
    for part in text.split(","):
        part = part.strip()
        m = re.fullmatch(r"(-?\d+)\.\.(-?\d+)", part)
        if m:
            lo, hi = int(m.group(1)), int(m.group(2))
            if hi < lo:
                raise ValueError(f"empty range {part!r}")
            out.extend(range(lo, hi + 1))
        elif re.fullmatch(r"-?\d+", part):
            out.append(int(part))
        else:
            raise ValueError(f"bad range {part!r}")
    return out


_TEMPLATE_ENTRY = re.compile(r"^(?:(\d+)|(\d*)\*?n(?:([+-])(\d+))?)$")


def expand_template(template: str, value: int) -> list[int]:
    """Instantiate an exponent template such as '2,2,2,2n' or '3,n+1' at n = value."""
    out = []
    for entry in template.split(","):
        entry = entry.strip().replace(" ", "")
        m = _TEMPLATE_ENTRY.match(entry)
        if not m:
            raise ValueError(f"bad exponent template entry {entry!r}")
        if m.group(1):
            out.append(int(m.group(1)))
        else:
            coef = int(m.group(2)) if m.group(2) else 1
            off = int(m.group(4)) if m.group(4) else 0
            out.append(coef * value + (off if m.group(3) != "-" else -off))
    return out


def analyze_text(text: str, variables: Sequence[str] | None = None, guard: Guard = DEFAULT_GUARD) -> ClassificationReport:
    return classify(analyze_local(parse_polynomial(text, variables), guard))


def analyze_exponents(exponents: Sequence[int], guard: Guard = DEFAULT_GUARD) -> ClassificationReport:
    return classify(analyze_local(brieskorn_polynomial(exponents), guard))
