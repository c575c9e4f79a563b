"""Algebra documents, built-in fixtures, and report serialization.

Documents are JSON objects::

    {"label": "example1", "n": 4, "pi": [3, 1, 4, 2], "tau": [2, 3, 4, 1],
     "a_pi": ["-1", "1", "1", "1"], "a_tau": ["1", "1", "1", "1"]}

Coefficients are strings (``"3/4"``, ``"-2"``, ``"0.125"``) or integers;
JSON decimals are also read exactly.
"""
from __future__ import annotations

import enum
import json
from fractions import Fraction
from typing import Any

from . import baric, idempotent, nilpotent, structure
from .algebra import AlgebraError, PermEvolutionAlgebra, equation_matrix, structural_matrix, system_matrix
from .exactnum import SqrtRational, det, format_rational, rank, to_rational
from .perm import Permutation, PermutationError, cycles

FIXTURES: dict[str, dict[str, Any]] = {
    "example1": {
        "label": "example1",
        "n": 4,
        "pi": [3, 1, 4, 2],
        "tau": [2, 3, 4, 1],
        "a_pi": ["-1", "1", "1", "1"],
        "a_tau": ["1", "1", "1", "1"],
    },
    "example2": {
        "label": "example2",
        "n": 4,
        "pi": [3, 2, 4, 1],
        "tau": [2, 3, 1, 4],
        "a_pi": ["1", "1", "1", "1"],
        "a_tau": ["1", "1", "1", "1"],
    },
    "section3-allones": {
        "label": "section3-allones",
        "n": 2,
        "pi": [2, 1],
        "tau": [1, 2],
        "a_pi": ["1", "1"],
        "a_tau": ["1", "1"],
    },
    "baric-both-fixed": {
        "label": "baric-both-fixed",
        "n": 3,
        "pi": [1, 3, 2],
        "tau": [1, 2, 3],
        "a_pi": ["3", "1", "1"],
        "a_tau": ["3", "1", "1"],
    },
}


class DocumentError(ValueError):
    def __init__(self, message: str, line: int | None = None):
        self.line = line
        super().__init__(f"line {line}: {message}" if line else message)


def _line_of(text: str | None, key: str) -> int | None:
    if not text:
        return None
    needle = f'"{key}"'
    for lineno, line in enumerate(text.splitlines(), start=1):
        if needle in line:
            return lineno
    return None


def algebra_from_document(doc: dict, text: str | None = None) -> PermEvolutionAlgebra:
    if not isinstance(doc, dict):
        raise DocumentError("document must be a JSON object")
    for key in ("pi", "tau", "a_pi", "a_tau"):
        if key not in doc:
            raise DocumentError(f"missing field {key!r}")
    n = doc.get("n")
    for key in ("pi", "tau", "a_pi", "a_tau"):
        value = doc[key]
        if not isinstance(value, list):
            raise DocumentError(f"{key} must be an array", _line_of(text, key))
        if n is not None and len(value) != n:
            raise DocumentError(f"{key} has {len(value)} entries but n = {n}", _line_of(text, key))
    perms = {}
    for key in ("pi", "tau"):
        if not all(isinstance(v, int) and not isinstance(v, bool) for v in doc[key]):
            raise DocumentError(f"{key} must contain integers", _line_of(text, key))
        try:
            perms[key] = Permutation(tuple(doc[key]))
        except PermutationError as exc:
            raise DocumentError(f"{key}: {exc}", _line_of(text, key)) from exc
    coeffs = {}
    for key in ("a_pi", "a_tau"):
        try:
            coeffs[key] = tuple(to_rational(v) for v in doc[key])
        except (TypeError, ValueError) as exc:
            raise DocumentError(f"{key}: {exc}", _line_of(text, key)) from exc
    try:
        return PermEvolutionAlgebra(perms["pi"], perms["tau"], coeffs["a_pi"], coeffs["a_tau"])
    except AlgebraError as exc:
        raise DocumentError(str(exc), _line_of(text, "tau")) from exc


def parse_document(text: str) -> tuple[PermEvolutionAlgebra, str | None]:
    try:
        # keep JSON decimals as text so they convert exactly
        doc = json.loads(text, parse_float=str)
    except json.JSONDecodeError as exc:
        raise DocumentError(f"invalid JSON: {exc.msg}", exc.lineno) from exc
    return algebra_from_document(doc, text), doc.get("label") if isinstance(doc, dict) else None


def fixture(name: str) -> PermEvolutionAlgebra:
    if name not in FIXTURES:
        raise DocumentError(f"unknown fixture {name!r}; choose from {', '.join(sorted(FIXTURES))}")
    return algebra_from_document(FIXTURES[name])


def algebra_to_document(A: PermEvolutionAlgebra, label: str | None = None) -> dict:
    doc: dict[str, Any] = {}
    if label:
        doc["label"] = label
    doc.update(
        n=A.n,
        pi=list(A.pi.images),
        tau=list(A.tau.images),
        a_pi=[format_rational(v) for v in A.a_pi],
        a_tau=[format_rational(v) for v in A.a_tau],
    )
    return doc


def jsonable(value: Any) -> Any:
    """Recursively convert report values into JSON-native types."""
    if isinstance(value, bool) or value is None or isinstance(value, (int, str)):
        return value
    if isinstance(value, Fraction):
        return format_rational(value)
    if isinstance(value, float):
        return format(value, ".17g")
    if isinstance(value, SqrtRational):
        return str(value)
    if isinstance(value, enum.Enum):
        return value.value
    if isinstance(value, dict):
        return {str(k): jsonable(v) for k, v in value.items()}
    if isinstance(value, (list, tuple, set, frozenset)):
        items = sorted(value) if isinstance(value, (set, frozenset)) else value
        return [jsonable(v) for v in items]
    raise TypeError(f"cannot serialize {type(value).__name__}")


def matrix_report(m) -> list[list[str]]:
    return [[format_rational(x) for x in row] for row in m.entries]


def nilpotent_report(A: PermEvolutionAlgebra, report: nilpotent.NilpotentReport | None = None) -> dict:
    report = report or nilpotent.solve(A)
    return {
        "j_map": list(A.j_map().images),
        "j_cycles": [list(c) for c in cycles(A.j_map())],
        "cycles": [
            {
                "cycle": list(c.cycle),
                "kind": c.kind.value,
                "sign_freedom": c.sign_freedom,
                "rays": [
                    {
                        "indices": list(r.indices),
                        "ratios": [str(x) for x in r.ratios],
                        "squared_ratios": [format_rational(x) for x in r.squared_ratios],
                    }
                    for r in c.rays
                ],
            }
            for c in report.per_cycle
        ],
        "unique": report.unique,
        "criteria": [
            {"name": c.name, "verdict": c.verdict.value, "reason": c.reason, "detail": jsonable(c.detail)}
            for c in report.criteria
        ],
        "criteria_fired": list(report.criteria_fired),
    }


def baric_report(A: PermEvolutionAlgebra) -> dict:
    weights = baric.find_weights(A)
    return {
        "baric": bool(weights),
        "weights": [
            {
                "k0": w.k0,
                "c": format_rational(w.c),
                "case": baric.weight_case(A, w).value,
                "formula": weight_formula(A, w),
            }
            for w in weights
        ],
    }


def weight_formula(A: PermEvolutionAlgebra, w: baric.WeightFunction) -> str:
    k = w.k0
    case = baric.weight_case(A, w)
    if case is baric.WeightCase.BOTH_FIXED and A.a_pi[k - 1] == A.a_tau[k - 1]:
        symbolic = f"2*a_{k}{k}*x_{k}"
    elif case is baric.WeightCase.BOTH_FIXED:
        symbolic = f"(a_pi[{k}] + a_tau[{k}])*x_{k}"
    else:
        symbolic = f"a_{k}{k}*x_{k}"
    return f"sigma(x) = {symbolic} = {format_rational(w.c)}*x_{k}"


def idempotent_report(A: PermEvolutionAlgebra) -> dict:
    result = idempotent.idempotents(A)
    out: dict[str, Any] = {
        "complete": result.complete,
        "found": list(result.found),
        "includes_zero": result.includes_zero,
        "points": [
            {
                "coords": jsonable(list(p.coords)),
                "exact": p.exact,
                "residual": jsonable(p.residual),
                "multiplicity": p.multiplicity,
            }
            for p in result.points
        ],
    }
    cls = result.classification
    if cls is not None:
        out["classification"] = {
            "a": format_rational(cls.a),
            "b": format_rational(cls.b),
            "c": format_rational(cls.c),
            "d": format_rational(cls.d),
            "degenerate": cls.degenerate,
            "case": cls.case.value,
            "p": jsonable(cls.p),
            "q": jsonable(cls.q),
            "delta": jsonable(cls.delta),
            "outside_classification": cls.outside_classification,
        }
    return out


def decomposition_report(A: PermEvolutionAlgebra) -> dict:
    dec = structure.decompose(A)
    return {
        "blocks": [
            {
                "support": sorted(b.support),
                "assignment": list(b.map.assignment),
                "algebra": algebra_to_document(b.algebra),
            }
            for b in dec.blocks
        ]
    }


def canonical_report(A: PermEvolutionAlgebra, form: str = "auto") -> dict:
    attempts = {
        "cycle-identity": structure.canonical_cycle_identity,
        "inverse-pair": structure.canonical_inverse_pair,
    }
    names = list(attempts) if form == "auto" else [form]
    errors = []
    for name in names:
        try:
            B, m = attempts[name](A)
        except structure.StructureError as exc:
            errors.append(exc)
            continue
        return {
            "form": name,
            "assignment": list(m.assignment),
            "algebra": algebra_to_document(B),
            "verified": structure.verify_isomorphism(A, B, m),
        }
    raise errors[-1] if len(errors) == 1 else structure.StructureError(
        "; ".join(str(e) for e in errors), "; ".join(e.hypothesis for e in errors)
    )


def analyze_report(A: PermEvolutionAlgebra, label: str | None = None) -> dict:
    eq = equation_matrix(A)
    return {
        "algebra": algebra_to_document(A, label),
        "structural_matrix": matrix_report(structural_matrix(A)),
        "system_matrix": matrix_report(system_matrix(A)),
        "equation_matrix": matrix_report(eq),
        "det": format_rational(det(eq)),
        "rank": rank(eq),
        "nilpotent": nilpotent_report(A),
        "baric": baric_report(A),
        "idempotent": idempotent_report(A),
        "structure": structure.availability(A),
    }


def dumps(report: dict) -> str:
    return json.dumps(report, indent=2, ensure_ascii=False) + "\n"
