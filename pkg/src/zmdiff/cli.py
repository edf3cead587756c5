"""Command-line front end: classify, solve, enumerate, verify, oracle-check, sweep.

Problems arrive as a JSON document, from --input PATH or stdin:

    {"m": 6, "a": 2, "b": 3, "f": [1, 2, 0, 1], "f_period": 2, "y0": 4, "horizon": 8}

m >= 2 is the modulus, a and b the coefficients of b*x[n+1] = a*x[n] + f[n]
(mod m), f the forcing prefix. Optional fields: f_period marks eventual
periodicity (f[n+p] = f[n] for n >= len(f)-p), y0 pins the start value,
horizon sets the default report depth (8). Unknown fields are rejected.

Exit codes: 0 success, 1 no solution / verification failure / sweep
discrepancy, 2 usage or malformed input, 3 enumeration budget exceeded.
Output is byte-identical across runs for fixed inputs and seed.
"""

from __future__ import annotations

import argparse
import json
import math
import random
import sys
from dataclasses import dataclass
from typing import Any

from .crt import split_modulus
from .modring import (
    InvalidModulus,
    ModulusMismatch,
    NotNilpotent,
    Residue,
    factorize,
    nilpotency_index,
)
from .oracle import (
    BudgetExceeded,
    brute_force_prefixes,
    truncated_prefix_count,
    verify_solution,
)
from .problem import (
    InsufficientData,
    InvalidLiftDigit,
    ProblemSpec,
    SequenceSpec,
    reduce_by_gcd,
)
from .solver import (
    InsufficientLookahead,
    classify_equation,
    classify_initial_problem,
    compatibility_residue,
    general_solution,
    solve_initial_problem,
    split_problem,
    truncation_depth,
)

EXIT_OK = 0
EXIT_FAIL = 1
EXIT_USAGE = 2
EXIT_BUDGET = 3

MAX_MODULUS = 2**32
MAX_INT = 2**63

DOCUMENT_FIELDS = ("m", "a", "b", "f", "f_period", "y0", "horizon")


class DocumentError(ValueError):
    """A problem document failed validation; names the offending field."""

    def __init__(self, fieldname: str, message: str):
        super().__init__(f"field {fieldname!r}: {message}")
        self.fieldname = fieldname


@dataclass(frozen=True)
class ProblemDocument:
    m: int
    a: int
    b: int
    f: tuple[int, ...]
    f_period: int | None = None
    y0: int | None = None
    horizon: int = 8


def _require_int(data: dict, name: str, value: Any) -> int:
    # bool is an int subclass; a true/false here is always a typo
    if not isinstance(value, int) or isinstance(value, bool):
        raise DocumentError(name, f"expected an integer, got {value!r}")
    if abs(value) >= MAX_INT:
        raise DocumentError(name, f"magnitude of {value} exceeds the supported range")
    return value


def parse_document(data: Any) -> ProblemDocument:
    """Validate a decoded JSON object; strict about unknown fields and types."""
    if not isinstance(data, dict):
        raise DocumentError("<document>", "expected a JSON object")
    for key in data:
        if key not in DOCUMENT_FIELDS:
            raise DocumentError(key, "unknown field")
    for key in ("m", "a", "b", "f"):
        if key not in data:
            raise DocumentError(key, "required field is missing")
    m = _require_int(data, "m", data["m"])
    if m < 2:
        raise DocumentError("m", f"modulus must be >= 2, got {m}")
    if m > MAX_MODULUS:
        raise DocumentError("m", f"modulus must be <= {MAX_MODULUS}, got {m}")
    a = _require_int(data, "a", data["a"])
    b = _require_int(data, "b", data["b"])
    raw_f = data["f"]
    if not isinstance(raw_f, list) or not raw_f:
        raise DocumentError("f", "expected a non-empty list of integers")
    f = tuple(_require_int(data, "f", v) for v in raw_f)
    f_period = None
    if data.get("f_period") is not None:
        f_period = _require_int(data, "f_period", data["f_period"])
        if not 1 <= f_period <= len(f):
            raise DocumentError("f_period", f"period must lie in [1, {len(f)}], got {f_period}")
    y0 = None
    if data.get("y0") is not None:
        y0 = _require_int(data, "y0", data["y0"])
    horizon = 8
    if data.get("horizon") is not None:
        horizon = _require_int(data, "horizon", data["horizon"])
        if horizon < 1:
            raise DocumentError("horizon", f"horizon must be >= 1, got {horizon}")
    return ProblemDocument(m, a, b, f, f_period, y0, horizon)


def serialize_document(doc: ProblemDocument) -> dict:
    """Inverse of parse_document: parse(serialize(doc)) == doc."""
    out: dict[str, Any] = {"m": doc.m, "a": doc.a, "b": doc.b, "f": list(doc.f)}
    if doc.f_period is not None:
        out["f_period"] = doc.f_period
    if doc.y0 is not None:
        out["y0"] = doc.y0
    if doc.horizon != 8:
        out["horizon"] = doc.horizon
    return out


def document_to_spec(doc: ProblemDocument) -> ProblemSpec:
    return ProblemSpec(doc.m, doc.a, doc.b, SequenceSpec.from_ints(doc.f, doc.m, doc.f_period))


# ---------------------------------------------------------------------------
# report construction


def _structure_report(spec: ProblemSpec) -> dict:
    """The split/reduction data every command's report leads with."""
    d = spec.d
    split = split_modulus(factorize(spec.m), spec.b)
    mp = spec.m // d
    psplit = split_modulus(factorize(mp), spec.b // d)
    ind_b2 = nilpotency_index(Residue(spec.b, split.m2)) if split.m2 != 1 else None
    ind_b2_prime = (
        nilpotency_index(Residue(spec.b // d, psplit.m2)) if psplit.m2 != 1 else None
    )
    return {
        "m": spec.m,
        "a": spec.a,
        "b": spec.b,
        "d": d,
        "m1": split.m1,
        "m2": split.m2,
        "ind_b2": ind_b2,
        "m_prime": mp,
        "m1_prime": psplit.m1,
        "m2_prime": psplit.m2,
        "ind_b2_prime": ind_b2_prime,
    }


def _verdict_dict(spec: ProblemSpec) -> dict:
    cls = classify_equation(spec)
    out: dict[str, Any] = {"kind": cls.kind}
    if cls.kind == "finite":
        out["count"] = cls.count
    elif cls.kind == "infinite":
        out["d"] = cls.d
        out["m1_prime"] = cls.m1_prime
    else:
        out["witness_index"] = cls.witness_index
    return out, cls


def _compatibility_dict(spec: ProblemSpec) -> dict | None:
    """The start-value condition, over m2 (d == 1) or m2' (d > 1), if it exists."""
    d = spec.d
    try:
        if d == 1:
            sp = split_problem(spec)
            if sp.iso.split.m2 == 1:
                return None
            req = compatibility_residue(sp)
        else:
            red = reduce_by_gcd(spec)
            if red.m == 1:
                return None
            sp = split_problem(red.as_problem())
            if sp.iso.split.m2 == 1:
                return None
            req = compatibility_residue(sp)
    except (InsufficientLookahead, InsufficientData):
        return None
    except ValueError:
        return None
    return {"modulus": req.modulus, "required": req.value}


def _initial_dict(spec: ProblemSpec, y0: int) -> dict:
    icls = classify_initial_problem(spec, Residue(y0, spec.m))
    out: dict[str, Any] = {"y0": y0 % spec.m, "kind": icls.kind}
    if icls.kind == "none":
        out["reason"] = icls.reason
        if icls.reason == "divisibility":
            out["witness_index"] = icls.witness_index
        else:
            out["required"] = icls.required.value
            out["actual"] = icls.actual.value
            out["condition_modulus"] = icls.required.modulus
    return out


def _emit(report: dict, fmt: str, text_lines: list[str]) -> None:
    if fmt == "json":
        print(json.dumps(report, indent=2))
    else:
        for line in text_lines:
            print(line)


def _kv(label: str, value: Any) -> str:
    return f"{label:<22}{value}"


def _freedom_text(sol) -> str:
    parts = []
    if sol.free_initial_modulus > 1:
        parts.append(f"start value x10 ranges over [0, {sol.free_initial_modulus})")
    if sol.lift_digit_bound > 1:
        text = f"lift digit alpha[n] ranges over [0, {sol.lift_digit_bound}) at each index"
        for i, dg in sol.fixed_digits:
            text += f"; alpha[{i}] fixed to {dg}"
        parts.append(text)
    return "; ".join(parts) if parts else "none (the solution is unique)"


# ---------------------------------------------------------------------------
# subcommands


def cmd_classify(args: argparse.Namespace) -> int:
    doc = _load_document(args)
    spec = document_to_spec(doc)
    y0 = args.y0 if args.y0 is not None else doc.y0
    report = {"command": "classify"}
    report.update(_structure_report(spec))
    verdict, cls = _verdict_dict(spec)
    report["verdict"] = verdict
    report["support_qualified"] = cls.support_qualified
    report["compatibility"] = _compatibility_dict(spec)
    report["initial"] = _initial_dict(spec, y0) if y0 is not None else None

    lines = [
        _kv("equation", f"{spec.b}*x[n+1] = {spec.a}*x[n] + f[n]  (mod {spec.m})"),
        _kv("d = gcd(a, b, m)", report["d"]),
        _kv("split m1, m2", f"{report['m1']}, {report['m2']}"),
    ]
    if report["ind_b2"] is not None:
        lines.append(_kv("ind(b mod m2)", report["ind_b2"]))
    if report["d"] != 1:
        lines.append(_kv("reduced m'", report["m_prime"]))
        lines.append(_kv("split m1', m2'", f"{report['m1_prime']}, {report['m2_prime']}"))
        if report["ind_b2_prime"] is not None:
            lines.append(_kv("ind(b' mod m2')", report["ind_b2_prime"]))
    if cls.kind == "finite":
        word = "solution" if cls.count == 1 else "solutions"
        lines.append(_kv("verdict", f"finite: exactly {cls.count} {word}"))
    elif cls.kind == "infinite":
        lines.append(
            _kv("verdict", f"infinite family: d={cls.d}, {cls.m1_prime} reduced branches")
        )
    else:
        lines.append(
            _kv("verdict", f"none: forcing term {cls.witness_index} not divisible by d")
        )
    if cls.support_qualified:
        lines.append(_kv("support", "qualified: certified only on the provided prefix"))
    if report["compatibility"] is not None:
        comp = report["compatibility"]
        lines.append(
            _kv(
                "start condition",
                f"solvable with pinned start iff x[0] = {comp['required']} (mod {comp['modulus']})",
            )
        )
    if report["initial"] is not None:
        ini = report["initial"]
        if ini["kind"] == "none":
            if ini["reason"] == "divisibility":
                detail = f"none (forcing term {ini['witness_index']} not divisible by d)"
            else:
                detail = (
                    f"none (needs x[0] = {ini['required']} "
                    f"(mod {ini['condition_modulus']}), got {ini['actual']})"
                )
        elif ini["kind"] == "unique":
            detail = "unique solution"
        else:
            detail = "infinitely many solutions"
        lines.append(_kv(f"initial x[0]={ini['y0']}", detail))
    _emit(report, args.format, lines)
    headline = report["initial"]["kind"] if report["initial"] is not None else cls.kind
    return EXIT_FAIL if headline == "none" else EXIT_OK


def _build_solution(spec: ProblemSpec, y0: int | None):
    """Returns (mode, solution) or (mode, None) plus a no-solution report stub."""
    if y0 is not None:
        icls = classify_initial_problem(spec, Residue(y0, spec.m))
        if icls.kind == "none":
            return "initial", None, icls
        return "initial", solve_initial_problem(spec, Residue(y0, spec.m)), icls
    cls = classify_equation(spec)
    if cls.kind == "none":
        return "equation", None, cls
    return "equation", general_solution(spec), cls


def _no_solution_detail(verdict) -> str:
    if getattr(verdict, "reason", None) == "compatibility":
        return (
            f"no solution: start value must be {verdict.required.value} "
            f"(mod {verdict.required.modulus}), got {verdict.actual.value}"
        )
    return f"no solution: forcing term {verdict.witness_index} is not divisible by d"


def cmd_solve(args: argparse.Namespace) -> int:
    doc = _load_document(args)
    spec = document_to_spec(doc)
    y0 = args.y0 if args.y0 is not None else doc.y0
    horizon = args.horizon if args.horizon is not None else doc.horizon
    mode, sol, verdict = _build_solution(spec, y0)
    if sol is None:
        detail = _no_solution_detail(verdict)
        report = {"command": "solve", "mode": mode, "verdict": "none", "detail": detail}
        _emit(report, args.format, [detail])
        return EXIT_FAIL
    alpha = args.alpha if args.alpha is not None else []
    x10 = args.x10 if args.x10 is not None else 0
    last = horizon - sol.lookahead
    if last < 0:
        print(
            f"error: horizon {horizon} is smaller than the lookahead {sol.lookahead}",
            file=sys.stderr,
        )
        return EXIT_USAGE
    values = [sol.value(n, x10, alpha).value for n in range(last + 1)]
    report = {
        "command": "solve",
        "mode": mode,
        "kind": sol.kind,
        "m": spec.m,
        "free_initial_modulus": sol.free_initial_modulus,
        "lift_digit_bound": sol.lift_digit_bound,
        "lookahead": sol.lookahead,
        "fixed_digits": [list(p) for p in sol.fixed_digits],
        "x10": x10,
        "alpha": list(alpha),
        "first_index": 0,
        "last_index": last,
        "values": values,
    }
    lines = [
        _kv("mode", "initial problem" if mode == "initial" else "free equation"),
        _kv("solution kind", sol.kind),
        _kv("freedom", _freedom_text(sol)),
        _kv("lookahead", sol.lookahead),
        _kv("parameters", f"x10={x10}, alpha={','.join(map(str, alpha)) or '-'}"),
    ]
    for n, v in enumerate(values):
        lines.append(_kv(f"x[{n}]", v))
    _emit(report, args.format, lines)
    return EXIT_OK


def cmd_enumerate(args: argparse.Namespace) -> int:
    doc = _load_document(args)
    spec = document_to_spec(doc)
    y0 = args.y0 if args.y0 is not None else doc.y0
    horizon = args.horizon if args.horizon is not None else doc.horizon
    cap = args.max
    if cap < 1:
        print(f"error: --max must be >= 1, got {cap}", file=sys.stderr)
        return EXIT_USAGE
    mode, sol, verdict = _build_solution(spec, y0)
    if sol is None:
        detail = _no_solution_detail(verdict)
        report = {
            "command": "enumerate",
            "mode": mode,
            "verdict": "none",
            "detail": detail,
            "rows": [],
        }
        _emit(report, args.format, [detail, "0 rows"])
        return EXIT_FAIL
    last = horizon - sol.lookahead
    if last < 0:
        print(
            f"error: horizon {horizon} is smaller than the lookahead {sol.lookahead}",
            file=sys.stderr,
        )
        return EXIT_USAGE
    fixed = dict(sol.fixed_digits)
    free_idx = [n for n in range(last + 1) if n not in fixed] if sol.lift_digit_bound > 1 else []
    block = sol.lift_digit_bound ** len(free_idx)
    total = sol.free_initial_modulus * block
    rows = []
    # x10 major, then digit vectors lexicographic with the lowest index most
    # significant; decoded from the row ordinal so nothing is materialized
    for ordinal in range(min(cap, total)):
        x10, rest = divmod(ordinal, block)
        alpha = [0] * (last + 1)
        for i, dg in fixed.items():
            if i <= last:
                alpha[i] = dg
        for i in reversed(free_idx):
            rest, dg = divmod(rest, sol.lift_digit_bound)
            alpha[i] = dg
        values = [sol.value(n, x10, alpha).value for n in range(last + 1)]
        rows.append({"x10": x10, "alpha": alpha, "values": values})
    truncated = total > len(rows)
    family = "infinite" if sol.lift_digit_bound > 1 else "finite"
    report = {
        "command": "enumerate",
        "mode": mode,
        "kind": sol.kind,
        "m": spec.m,
        "first_index": 0,
        "last_index": last,
        "family": family,
        "window_rows": total,
        "max": cap,
        "truncated": truncated,
        "rows": rows,
    }
    lines = [
        _kv("mode", "initial problem" if mode == "initial" else "free equation"),
        _kv("freedom", _freedom_text(sol)),
        _kv("rows", f"{len(rows)} of {total} distinct over indices 0..{last}"),
    ]
    for row in rows:
        lines.append(
            f"  x10={row['x10']} alpha={','.join(map(str, row['alpha']))}  ->  "
            + " ".join(map(str, row["values"]))
        )
    if truncated:
        lines.append(
            "truncated: infinite family" if family == "infinite" else "truncated: finite family"
        )
    _emit(report, args.format, lines)
    return EXIT_OK


def cmd_verify(args: argparse.Namespace) -> int:
    doc = _load_document(args)
    spec = document_to_spec(doc)
    y0 = args.y0 if args.y0 is not None else doc.y0
    candidate = args.candidate
    if len(candidate) < 2:
        print("error: candidate needs at least 2 values", file=sys.stderr)
        return EXIT_USAGE
    # a candidate longer than the forcing support raises InsufficientData -> exit 2
    seq = [Residue(v, spec.m) for v in candidate]
    pinned = Residue(y0, spec.m) if y0 is not None else None
    ok, idx = verify_solution(spec, seq, pinned)
    detail = "all transitions satisfied"
    if not ok:
        if idx == 0 and pinned is not None and seq[0].value != pinned.value:
            detail = f"start value mismatch: expected {pinned.value}, got {seq[0].value}"
        else:
            detail = (
                f"transition {idx} violated: "
                f"{spec.b}*{seq[idx + 1].value} != {spec.a}*{seq[idx].value}"
                f" + {spec.forcing.term(idx).value} (mod {spec.m})"
            )
    report = {
        "command": "verify",
        "m": spec.m,
        "candidate": [r.value for r in seq],
        "y0": pinned.value if pinned is not None else None,
        "pass": ok,
        "failing_index": idx,
        "detail": detail,
    }
    lines = [("PASS: " if ok else f"FAIL at index {idx}: ") + detail]
    _emit(report, args.format, lines)
    return EXIT_OK if ok else EXIT_FAIL


def _window_prediction(spec: ProblemSpec, horizon: int) -> tuple[int, int, int | None]:
    """(truncation, expected count, window witness) for a length-`horizon` prefix set.

    The prediction is exact for the constraint window f[0..horizon-2]: a
    later divisibility witness is invisible to prefixes of this length.
    """
    d = spec.d
    cut = truncation_depth(spec)
    witness = None
    if d > 1:
        for n in range(horizon - 1):
            if spec.forcing.term(n).value % d != 0:
                witness = n
                break
    if witness is not None:
        return cut, 0, witness
    if d == 1:
        return cut, split_modulus(factorize(spec.m), spec.b).m1, None
    mp = spec.m // d
    m1p = split_modulus(factorize(mp), spec.b // d).m1
    return cut, m1p * d ** (horizon - cut), None


def cmd_oracle_check(args: argparse.Namespace) -> int:
    doc = _load_document(args)
    spec = document_to_spec(doc)
    horizon = args.oracle_n
    if horizon < 2:
        print(f"error: --oracle-n must be >= 2, got {horizon}", file=sys.stderr)
        return EXIT_USAGE
    cut, expected, witness = _window_prediction(spec, horizon)
    pfx = brute_force_prefixes(spec, horizon, budget=args.budget)
    observed = truncated_prefix_count(pfx, cut)
    agree = observed == expected
    report = {
        "command": "oracle_check",
        "m": spec.m,
        "a": spec.a,
        "b": spec.b,
        "d": spec.d,
        "horizon": horizon,
        "budget": args.budget,
        "truncation": cut,
        "window_witness": witness,
        "expected": expected,
        "observed": observed,
        "agree": agree,
    }
    lines = [
        _kv("prefix length", horizon),
        _kv("truncation", cut),
        _kv("theoretical count", expected),
        _kv("oracle count", observed),
        _kv("agreement", "yes" if agree else "NO"),
    ]
    _emit(report, args.format, lines)
    return EXIT_OK if agree else EXIT_FAIL


# ---------------------------------------------------------------------------
# sweep engines (shared with the acceptance suite)


def run_oracle_sweep(
    m_max: int,
    trials: int,
    seed: int,
    horizon: int = 5,
    budget: int = 10_000_000,
) -> dict:
    """Solver-vs-brute-force agreement over every (m <= m_max, a, b) cell.

    Per cell and trial: the truncated prefix count must match the closed-form
    prediction, every solver-produced sequence must verify, a pinned start
    taken from an oracle prefix must solve, and the forced start residue
    must agree with the oracle's.
    """
    rng = random.Random(seed)
    discrepancies: list[dict] = []
    per_m = []
    totals = {"cells": 0, "count_checks": 0, "sequence_checks": 0,
              "initial_checks": 0, "compat_checks": 0}
    for m in range(2, m_max + 1):
        row = {"m": m, "cells": 0, "count_checks": 0, "sequence_checks": 0,
               "initial_checks": 0, "compat_checks": 0, "failures": 0}
        for a in range(m):
            for b in range(m):
                for _ in range(trials):
                    f = [rng.randrange(m) for _ in range(horizon)]
                    spec = ProblemSpec(m, a, b, SequenceSpec.from_ints(f, m))
                    before = len(discrepancies)
                    _audit_cell(spec, horizon, budget, rng, row, discrepancies)
                    row["cells"] += 1
                    row["failures"] += len(discrepancies) - before
        per_m.append(row)
        for key in totals:
            totals[key] += row[key]
    return {
        "m_max": m_max,
        "trials": trials,
        "seed": seed,
        "horizon": horizon,
        "budget": budget,
        **totals,
        "per_m": per_m,
        "discrepancies": discrepancies,
        "ok": not discrepancies,
    }


def _audit_cell(
    spec: ProblemSpec,
    horizon: int,
    budget: int,
    rng: random.Random,
    row: dict,
    out: list[dict],
) -> None:
    m = spec.m
    f = [t.value for t in spec.forcing.terms]

    def flag(kind: str, **detail: Any) -> None:
        out.append({"kind": kind, "m": m, "a": spec.a, "b": spec.b, "f": f, **detail})

    cut, expected, _ = _window_prediction(spec, horizon)
    try:
        pfx = brute_force_prefixes(spec, horizon, budget=budget)
    except BudgetExceeded:
        flag("budget", budget=budget)
        return
    observed = truncated_prefix_count(pfx, cut)
    row["count_checks"] += 1
    if observed != expected:
        flag("count", truncation=cut, expected=expected, observed=observed)

    cls = classify_equation(spec)
    if cls.kind == "none":
        try:
            general_solution(spec)
            flag("missing_refusal")
        except ValueError:
            pass
    else:
        sol = general_solution(spec)
        seq_len = horizon - sol.lookahead
        x10s = sorted({0, sol.free_initial_modulus - 1, rng.randrange(sol.free_initial_modulus)})
        if sol.lift_digit_bound > 1:
            alphas = [
                [0] * seq_len,
                [sol.lift_digit_bound - 1] * seq_len,
                [rng.randrange(sol.lift_digit_bound) for _ in range(seq_len)],
            ]
        else:
            alphas = [[]]
        for x10 in x10s:
            for alpha in alphas:
                seq = sol.sequence(seq_len, x10, alpha)
                ok, idx = verify_solution(spec, seq)
                row["sequence_checks"] += 1
                if not ok:
                    flag("sequence", x10=x10, alpha=list(alpha), failing_index=idx)
        if pfx.sequences:
            y0v = min(pfx.sequences)[0]
            icls = classify_initial_problem(spec, Residue(y0v, m))
            if icls.kind == "none":
                flag("initial_classify", y0=y0v, verdict=icls.kind)
            else:
                isol = solve_initial_problem(spec, Residue(y0v, m))
                iseq = isol.sequence(horizon - isol.lookahead)
                ok, idx = verify_solution(spec, iseq, Residue(y0v, m))
                row["initial_checks"] += 1
                if not ok:
                    flag("initial_sequence", y0=y0v, failing_index=idx)

    if spec.d == 1:
        split = split_modulus(factorize(m), spec.b)
        if split.m2 != 1:
            required = compatibility_residue(split_problem(spec)).value
            starts = {seq[0] % split.m2 for seq in pfx.sequences}
            row["compat_checks"] += 1
            if starts != {required}:
                flag("compat", required=required, observed=sorted(starts))


def _is_nilpotent(b: int, m: int) -> bool:
    try:
        nilpotency_index(Residue(b, m))
        return True
    except NotNilpotent:
        return False


def run_uniqueness_sweep(m_max: int, forcing_trials: int, seed: int) -> dict:
    """Uniqueness-predicate equivalence over every (m <= m_max, a, b) cell.

    Checks that "classifies as exactly one solution", "d == 1 and m1 == 1",
    and "a invertible and b nilpotent" agree everywhere, and that every cell
    with a unique zero homogeneous solution stays uniquely solvable for
    random forcing.
    """
    rng = random.Random(seed)
    discrepancies: list[dict] = []
    cells = 0
    unique_cells = 0
    for m in range(2, m_max + 1):
        fact = factorize(m)
        zero_f = SequenceSpec.from_ints([0], m, period=1)
        for b in range(m):
            split = split_modulus(fact, b)
            nilp = _is_nilpotent(b, m)
            for a in range(m):
                cells += 1
                spec = ProblemSpec(m, a, b, zero_f)
                cls = classify_equation(spec)
                p1 = cls.kind == "finite" and cls.count == 1
                p2 = math.gcd(a, b, m) == 1 and split.m1 == 1
                p3 = math.gcd(a, m) == 1 and nilp
                if not (p1 == p2 == p3):
                    discrepancies.append(
                        {"kind": "equivalence", "m": m, "a": a, "b": b,
                         "p1": p1, "p2": p2, "p3": p3}
                    )
                    continue
                if not p1:
                    continue
                unique_cells += 1
                sol = general_solution(spec)
                if any(sol.value(n).value != 0 for n in range(3)):
                    discrepancies.append(
                        {"kind": "homogeneous_nonzero", "m": m, "a": a, "b": b}
                    )
                for _ in range(forcing_trials):
                    forcing = [rng.randrange(m) for _ in range(4)]
                    rspec = ProblemSpec(m, a, b, SequenceSpec.from_ints(forcing, m))
                    rcls = classify_equation(rspec)
                    if not (rcls.kind == "finite" and rcls.count == 1):
                        discrepancies.append(
                            {"kind": "forced_unique", "m": m, "a": a, "b": b, "f": forcing}
                        )
    return {
        "m_max": m_max,
        "forcing_trials": forcing_trials,
        "seed": seed,
        "cells": cells,
        "unique_cells": unique_cells,
        "discrepancies": discrepancies,
        "ok": not discrepancies,
    }


def cmd_sweep(args: argparse.Namespace) -> int:
    oracle_report = run_oracle_sweep(args.m_max, args.trials, args.seed, budget=args.budget)
    uniqueness_report = run_uniqueness_sweep(args.m_max, args.trials, args.seed)
    ok = oracle_report["ok"] and uniqueness_report["ok"]
    report = {
        "command": "sweep",
        "oracle": oracle_report,
        "uniqueness": uniqueness_report,
        "ok": ok,
    }
    lines = [
        f"oracle-agreement sweep: m in [2, {args.m_max}], trials {args.trials}, "
        f"seed {args.seed}, horizon {oracle_report['horizon']}",
        f"{'m':>4} {'cells':>7} {'counts':>7} {'seqs':>7} {'initial':>8} "
        f"{'compat':>7} {'bad':>4}",
    ]
    for row in oracle_report["per_m"]:
        lines.append(
            f"{row['m']:>4} {row['cells']:>7} {row['count_checks']:>7} "
            f"{row['sequence_checks']:>7} {row['initial_checks']:>8} "
            f"{row['compat_checks']:>7} {row['failures']:>4}"
        )
    lines.append(
        f"uniqueness sweep: cells {uniqueness_report['cells']}, "
        f"uniquely solvable cells {uniqueness_report['unique_cells']}, "
        f"discrepancies {len(uniqueness_report['discrepancies'])}"
    )
    for disc in (oracle_report["discrepancies"] + uniqueness_report["discrepancies"])[:10]:
        lines.append(f"discrepancy: {disc}")
    lines.append(f"verdict: {'OK' if ok else 'FAILED'}")
    _emit(report, args.format, lines)
    return EXIT_OK if ok else EXIT_FAIL


# ---------------------------------------------------------------------------
# argument plumbing


def _load_document(args: argparse.Namespace) -> ProblemDocument:
    if args.input is not None:
        with open(args.input, "r", encoding="utf-8") as handle:
            text = handle.read()
    else:
        text = sys.stdin.read()
    try:
        data = json.loads(text)
    except json.JSONDecodeError as exc:
        raise DocumentError("<document>", f"invalid JSON: {exc}") from None
    return parse_document(data)


def _csv_ints(text: str) -> list[int]:
    if not text:
        return []
    try:
        return [int(part) for part in text.split(",")]
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected comma-separated integers, got {text!r}")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="zmdiff",
        description="classify, solve, and brute-force-check b*x[n+1] = a*x[n] + f[n] (mod m)",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def add_common(p: argparse.ArgumentParser, with_input: bool = True) -> None:
        if with_input:
            p.add_argument("--input", help="problem document path (default: stdin)")
        p.add_argument("--format", choices=("text", "json"), default="text")

    p = sub.add_parser("classify", help="solution-set verdict and structure data")
    add_common(p)
    p.add_argument("--y0", type=int, help="pin the start value (overrides the document)")
    p.set_defaults(handler=cmd_classify)

    p = sub.add_parser("solve", help="evaluate one solution over the horizon")
    add_common(p)
    p.add_argument("--y0", type=int, help="pin the start value (overrides the document)")
    p.add_argument("--x10", type=int, help="free start parameter (default 0)")
    p.add_argument("--alpha", type=_csv_ints, help="lift digits per index, comma-separated")
    p.add_argument("--horizon", type=int, help="report indices 0..horizon-lookahead")
    p.set_defaults(handler=cmd_solve)

    p = sub.add_parser("enumerate", help="list distinct solutions over the horizon")
    add_common(p)
    p.add_argument("--y0", type=int, help="pin the start value (overrides the document)")
    p.add_argument("--max", type=int, default=16, help="row cap (default 16)")
    p.add_argument("--horizon", type=int, help="report indices 0..horizon-lookahead")
    p.set_defaults(handler=cmd_enumerate)

    p = sub.add_parser("verify", help="check a candidate sequence against every transition")
    add_common(p)
    p.add_argument("--y0", type=int, help="pin the start value (overrides the document)")
    p.add_argument("candidate", type=int, nargs="+", help="candidate values x[0] x[1] ...")
    p.set_defaults(handler=cmd_verify)

    p = sub.add_parser("oracle-check", help="compare counts against brute force")
    add_common(p)
    p.add_argument("--oracle-n", type=int, default=5, help="prefix length (default 5)")
    p.add_argument("--budget", type=int, default=10_000_000,
                   help="enumeration state budget (default 1e7)")
    p.set_defaults(handler=cmd_oracle_check)

    p = sub.add_parser("sweep", help="oracle-agreement and equivalence sweeps")
    add_common(p, with_input=False)
    p.add_argument("--m-max", type=int, default=12, help="largest modulus (default 12)")
    p.add_argument("--trials", type=int, default=5, help="forcing sequences per cell (default 5)")
    p.add_argument("--seed", type=int, default=42, help="RNG seed (default 42)")
    p.add_argument("--budget", type=int, default=10_000_000,
                   help="enumeration state budget (default 1e7)")
    p.set_defaults(handler=cmd_sweep)

    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        return args.handler(args)
    except DocumentError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except BudgetExceeded as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_BUDGET
    except (InsufficientData, InsufficientLookahead) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except (InvalidLiftDigit, InvalidModulus, ModulusMismatch, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
