"""``evoperm`` command line interface.

Exit codes: 0 success, 2 parse/validation error, 3 failed precondition,
4 analytic/oracle disagreement.
"""
from __future__ import annotations

import argparse
import json
import os
import random
import sys
from fractions import Fraction
from typing import Any, Callable

from . import baric, idempotent, nilpotent, oracle, reports, sampling, structure
from .algebra import PermEvolutionAlgebra
from .exactnum import format_rational, to_rational

EXIT_OK = 0
EXIT_PARSE = 2
EXIT_PRECONDITION = 3
EXIT_DISAGREE = 4

CENSUS_MAX_N = 4


class CliError(Exception):
    def __init__(self, message: str, code: int):
        super().__init__(message)
        self.code = code


def _load(args) -> tuple[PermEvolutionAlgebra, str | None]:
    if args.fixture and args.file:
        raise CliError("give either --fixture or FILE, not both", EXIT_PARSE)
    try:
        if args.fixture:
            return reports.fixture(args.fixture), args.fixture
        if not args.file:
            raise CliError("no input: pass FILE or --fixture NAME", EXIT_PARSE)
        if args.file == "-":
            text = sys.stdin.read()
        else:
            with open(args.file, encoding="utf-8") as fh:
                text = fh.read()
        return reports.parse_document(text)
    except reports.DocumentError as exc:
        raise CliError(f"invalid document: {exc}", EXIT_PARSE) from exc
    except OSError as exc:
        raise CliError(f"cannot read {args.file}: {exc.strerror}", EXIT_PARSE) from exc


# -- text rendering ---------------------------------------------------------

def _fmt_matrix(rows: list[list[str]], indent: str = "  ") -> str:
    width = max((len(x) for r in rows for x in r), default=1)
    return "\n".join(indent + "  ".join(x.rjust(width) for x in r) for r in rows)


def _text_nilpotent(rep: dict) -> list[str]:
    lines = [f"j-map cycles: {' '.join('(' + ' '.join(map(str, c)) + ')' for c in rep['j_cycles'])}"]
    for c in rep["cycles"]:
        line = f"  cycle {tuple(c['cycle'])}: {c['kind']}"
        for r in c["rays"]:
            parts = ", ".join(f"|x_{i}| = {q}*t" for i, q in zip(r["indices"], r["ratios"]))
            line += f"\n    ray: {parts} (signs free)"
        lines.append(line)
    lines.append(f"unique absolute nilpotent (zero only): {'yes' if rep['unique'] else 'no'}")
    for c in rep["criteria"]:
        lines.append(f"  criterion {c['name']}: {c['verdict']} ({c['reason']})")
    return lines


def _text_baric(rep: dict) -> list[str]:
    if not rep["weights"]:
        return ["baric: no (no coordinate weight function)"]
    return ["baric: yes"] + [f"  {w['formula']}  [{w['case']}]" for w in rep["weights"]]


def _text_idempotent(rep: dict) -> list[str]:
    lines = [f"idempotents ({'complete' if rep['complete'] else 'particular solutions only'}):"]
    for p in rep["points"]:
        tag = "exact" if p["exact"] else f"residual {p['residual']}"
        mult = f", cubic multiplicity {p['multiplicity']}" if p["multiplicity"] > 1 else ""
        lines.append(f"  ({', '.join(p['coords'])})  [{tag}{mult}]")
    cls = rep.get("classification")
    if cls:
        lines.append(
            f"  cubic: a={cls['a']} b={cls['b']} c={cls['c']} d={cls['d']} case={cls['case']}"
            + (f" p={cls['p']} q={cls['q']} delta={cls['delta']}" if cls["p"] is not None else "")
            + (" (outside the classified cases)" if cls["outside_classification"] else "")
        )
    return lines


def _text_analyze(rep: dict) -> list[str]:
    alg = rep["algebra"]
    lines = []
    if alg.get("label"):
        lines.append(f"algebra {alg['label']}")
    lines += [
        f"n = {alg['n']}  pi = {alg['pi']}  tau = {alg['tau']}",
        f"a_pi = [{', '.join(alg['a_pi'])}]  a_tau = [{', '.join(alg['a_tau'])}]",
        "structural matrix:",
        _fmt_matrix(rep["structural_matrix"]),
        "equation matrix (row k: equation for coordinate pi(k)):",
        _fmt_matrix(rep["equation_matrix"]),
        f"det = {rep['det']}  rank = {rep['rank']}",
    ]
    lines += _text_nilpotent(rep["nilpotent"])
    lines += _text_baric(rep["baric"])
    lines += _text_idempotent(rep["idempotent"])
    lines += [f"{k}: {v}" for k, v in rep["structure"].items()]
    return lines


def _text_structure(rep: dict) -> list[str]:
    if "blocks" in rep:
        lines = [f"{len(rep['blocks'])} block(s):"]
        for b in rep["blocks"]:
            a = b["algebra"]
            lines.append(
                f"  support {b['support']} assignment {b['assignment']}: "
                f"pi={a['pi']} tau={a['tau']} a_pi=[{', '.join(a['a_pi'])}] a_tau=[{', '.join(a['a_tau'])}]"
            )
        return lines
    a = rep["algebra"]
    return [
        f"canonical form ({rep['form']}), assignment e'_i = e_{{{rep['assignment']}[i]}}",
        f"  pi={a['pi']} tau={a['tau']} a_pi=[{', '.join(a['a_pi'])}] a_tau=[{', '.join(a['a_tau'])}]",
        f"  isomorphism verified: {'yes' if rep['verified'] else 'NO'}",
    ]


def _text_verify(rep: dict) -> list[str]:
    lines = [f"analytic/oracle agreement: {rep['agreed']}/{rep['total']}"]
    for f in rep["failures"]:
        lines.append(f"  DISAGREE: {json.dumps(f, sort_keys=True)}")
    return lines


def _emit(report: dict, as_json: bool, text: Callable[[dict], list[str]]) -> None:
    if as_json:
        sys.stdout.write(reports.dumps(report))
    else:
        sys.stdout.write("\n".join(text(report)) + "\n")


# -- verification -----------------------------------------------------------

def verify_instance(A: PermEvolutionAlgebra) -> dict[str, Any]:
    """Compare the analytic results for ``A`` with the brute-force oracles."""
    problems = []
    report = nilpotent.solve(A)
    found = oracle.nilpotent_oracle(A)
    if report.unique == found.nontrivial:
        problems.append(f"nilpotent: analytic unique={report.unique}, oracle nontrivial={found.nontrivial}")
    for c in report.criteria:
        if c and found.nontrivial:
            problems.append(f"criterion {c.name} certified uniqueness but oracle found {found.witnesses[0]}")
    if report.rays:
        u = report.witness_squares(A.n)
        if oracle.squared_residual(A, u) != 0 or not nilpotent.verify_nilpotent(A, squares=u):
            problems.append(f"nilpotent witness {u} fails substitution")
    for w in baric.find_weights(A):
        if not baric.is_character(A, w):
            problems.append(f"weight at {w.k0} is not a character")
    ids = idempotent.idempotents(A)
    for p in ids.points:
        res = oracle.substitution_residual(A, p.coords)
        if (p.exact and res != 0) or (not p.exact and res > idempotent.TOLERANCE):
            problems.append(f"idempotent {p.coords} residual {res}")
    if ids.complete:
        a, b, c, d = idempotent.section3_coefficients(A)
        search = oracle.idempotent_search_n2(a, b, c, d)
        dist = oracle.hausdorff([tuple(map(float, p.coords)) for p in ids.points], search.witnesses)
        if dist > 1e-7:
            problems.append(f"idempotent sets differ (Hausdorff {dist:.3g})")
    return {"algebra": reports.algebra_to_document(A), "problems": problems}


def _seed() -> int:
    raw = os.environ.get("EVOPERM_SEED", "0")
    try:
        return int(raw)
    except ValueError as exc:
        raise CliError(f"EVOPERM_SEED must be an integer, got {raw!r}", EXIT_PARSE) from exc


# -- commands ---------------------------------------------------------------

def cmd_analyze(args) -> int:
    A, label = _load(args)
    _emit(reports.analyze_report(A, label), args.json, _text_analyze)
    return EXIT_OK


def cmd_nilpotent(args) -> int:
    A, _ = _load(args)
    _emit(reports.nilpotent_report(A), args.json, _text_nilpotent)
    return EXIT_OK


def cmd_idempotent(args) -> int:
    A, _ = _load(args)
    _emit(reports.idempotent_report(A), args.json, _text_idempotent)
    return EXIT_OK


def cmd_baric(args) -> int:
    A, _ = _load(args)
    _emit(reports.baric_report(A), args.json, _text_baric)
    return EXIT_OK


def _structure_cmd(args, build: Callable[[PermEvolutionAlgebra], dict]) -> int:
    A, _ = _load(args)
    try:
        rep = build(A)
    except structure.StructureError as exc:
        raise CliError(f"precondition failed ({exc.hypothesis}): {exc}", EXIT_PRECONDITION) from exc
    _emit(rep, args.json, _text_structure)
    return EXIT_OK


def cmd_decompose(args) -> int:
    return _structure_cmd(args, reports.decomposition_report)


def cmd_canonical(args) -> int:
    return _structure_cmd(args, lambda A: reports.canonical_report(A, args.form))


def cmd_verify(args) -> int:
    if args.fixture or args.file:
        instances = [_load(args)[0]]
    else:
        rng = random.Random(_seed())
        instances = [sampling.random_algebra(rng, rng.randint(2, args.max_n)) for _ in range(args.trials)]
    results = [verify_instance(A) for A in instances]
    failures = [r for r in results if r["problems"]]
    rep = {"total": len(results), "agreed": len(results) - len(failures), "failures": failures}
    _emit(rep, args.json, _text_verify)
    return EXIT_DISAGREE if failures else EXIT_OK


def census_rows(n: int, coeffs: list[Fraction], limit: int | None):
    if not 2 <= n <= CENSUS_MAX_N:
        raise CliError(f"census needs 2 <= n <= {CENSUS_MAX_N}", EXIT_PRECONDITION)
    for count, (pair_id, A) in enumerate(sampling.enumerate_algebras(n, coeffs), start=1):
        if limit is not None and count > limit:
            return
        rep = nilpotent.solve(A)
        yield {
            "row": count,
            "pair": pair_id,
            "pi": list(A.pi.images),
            "tau": list(A.tau.images),
            "a_pi": [format_rational(v) for v in A.a_pi],
            "a_tau": [format_rational(v) for v in A.a_tau],
            "baric": bool(baric.find_weights(A)),
            "unique_nilpotent": rep.unique,
            "criteria_fired": list(rep.criteria_fired),
        }


def cmd_census(args) -> int:
    try:
        coeffs = [to_rational(v) for v in args.coeffs.split(",") if v.strip()]
    except ValueError as exc:
        raise CliError(f"bad coefficient list: {exc}", EXIT_PARSE) from exc
    if not coeffs:
        raise CliError("coefficient list is empty", EXIT_PARSE)
    limit = None if args.limit <= 0 else args.limit
    rows = census_rows(args.n, coeffs, limit)
    if not args.json:
        print("row\tpair\tpi\ttau\ta_pi\ta_tau\tbaric\tunique\tcriteria")
    for row in rows:
        if args.json:
            sys.stdout.write(json.dumps(row) + "\n")
        else:
            print(
                "\t".join(
                    [
                        str(row["row"]),
                        str(row["pair"]),
                        ",".join(map(str, row["pi"])),
                        ",".join(map(str, row["tau"])),
                        ",".join(row["a_pi"]),
                        ",".join(row["a_tau"]),
                        "yes" if row["baric"] else "no",
                        "yes" if row["unique_nilpotent"] else "no",
                        ",".join(row["criteria_fired"]) or "-",
                    ]
                )
            )
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="evoperm",
        description="Exact analysis of evolution algebras defined by two permutations.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def add(name: str, func, help_: str, takes_input: bool = True):
        p = sub.add_parser(name, help=help_)
        p.add_argument("--json", action="store_true", help="emit JSON instead of text")
        if takes_input:
            p.add_argument("--fixture", choices=sorted(reports.FIXTURES), help="use a built-in algebra")
            p.add_argument("file", nargs="?", help="algebra document (JSON); '-' for stdin")
        p.set_defaults(func=func)
        return p

    add("analyze", cmd_analyze, "full report")
    add("nilpotent", cmd_nilpotent, "absolute nilpotent elements")
    add("idempotent", cmd_idempotent, "idempotent elements")
    add("baric", cmd_baric, "weight functions")
    add("decompose", cmd_decompose, "direct-sum decomposition along cycle supports")
    p = add("canonical", cmd_canonical, "canonical relabeling")
    p.add_argument("--form", choices=["auto", "cycle-identity", "inverse-pair"], default="auto")
    p = add("verify", cmd_verify, "check analytic results against brute-force oracles")
    p.add_argument("--trials", type=int, default=100, help="random instances when no input is given")
    p.add_argument("--max-n", type=int, default=5)
    p = add("census", cmd_census, "classify every algebra of a small degree", takes_input=False)
    p.add_argument("--n", type=int, default=2)
    p.add_argument("--coeffs", default="1", help="comma-separated rationals, e.g. -1,1/2,1")
    p.add_argument("--limit", type=int, default=1000, help="maximum rows; 0 for no limit")
    return parser


def _attach_coeffs(argv: list[str]) -> list[str]:
    # "--coeffs -1,1" would otherwise be read as an unknown option
    out = []
    it = iter(argv)
    for tok in it:
        if tok == "--coeffs":
            value = next(it, None)
            out.append(tok if value is None else f"--coeffs={value}")
        else:
            out.append(tok)
    return out


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(_attach_coeffs(sys.argv[1:] if argv is None else list(argv)))
    try:
        return args.func(args)
    except CliError as exc:
        print(f"evoperm: error: {exc}", file=sys.stderr)
        return exc.code


if __name__ == "__main__":
    sys.exit(main())
