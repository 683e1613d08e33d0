"""``motivic`` command-line front end.

Every command prints (or writes with ``--out``) a JSON report::

    {"command", "inputs", "inputs_digest", "seed", "results", "invariants", "timing"}

Reports are deterministic given the inputs and seed, apart from ``timing``.
Exit codes: 0 success, 1 input or limit error, 2 invariant failure.
"""

from __future__ import annotations

import argparse
import hashlib
import json
import logging
import os
import sys
import time
from typing import Any, Callable, Optional, Sequence

from .dieudonne import build_dieudonne, check_invariants, id1_check
from .extension_classes import (
    baer_sum_class,
    eta_class,
    extends_over_R,
    kato_pair,
    push_theorem_check,
    reconstruct,
)
from .local_field import FACTOR_CAP
from .log_model import DEFAULT_POINT_LIMIT, build_model_algebra, generic_fibre_check, integrality_report
from .motive import MonodromyMatrix, Motive, compute_monodromy, plus_minus_motives, raynaud_decompose
from .suites import SUITES, run_suite

__all__ = ["InputError", "LimitError", "RunConfig", "build_parser", "main", "run"]

log = logging.getLogger("motivic")

EXIT_OK, EXIT_INPUT, EXIT_INVARIANT = 0, 1, 2


class InputError(Exception):
    def __init__(self, kind: str, message: str, **detail):
        super().__init__(message)
        self.payload = {"error": kind, "message": message, **detail}


class LimitError(InputError):
    def __init__(self, message: str, **detail):
        super().__init__("limit", message, **detail)


class RunConfig(argparse.Namespace):
    """Parsed arguments; see :func:`build_parser` for the fields."""


# --- input handling ----------------------------------------------------------


def _load_json(path: str) -> Any:
    try:
        with open(path, encoding="utf-8") as fh:
            text = fh.read()
    except OSError as exc:
        raise InputError("io", str(exc), file=path) from exc
    try:
        return json.loads(text)
    except json.JSONDecodeError as exc:
        raise InputError("parse", exc.msg, file=path, line=exc.lineno, column=exc.colno) from exc


def _load_motive(path: Optional[str]) -> Motive:
    if path is None:
        raise InputError("usage", "--motive FILE is required")
    data = _load_json(path)
    try:
        m = Motive.from_dict(data)
    except (KeyError, TypeError, ValueError, ZeroDivisionError) as exc:
        raise InputError("input", f"invalid motive: {exc}", file=path) from exc
    for row in m.entries:
        for x in row:
            if max(abs(x.coeff.numerator), x.coeff.denominator) > FACTOR_CAP:
                raise LimitError(f"coefficient {x.coeff} exceeds the factorization cap 2**63", file=path)
    return m


def _load_mu(path: Optional[str]) -> MonodromyMatrix:
    if path is None:
        raise InputError("usage", "--mu FILE is required")
    data = _load_json(path)
    if isinstance(data, dict):
        data = data.get("mu")
    try:
        rows = [[int(v) if not isinstance(v, bool) and int(v) == v else _bad(v) for v in row] for row in data]
        if not rows or not rows[0] or any(len(r) != len(rows[0]) for r in rows):
            raise ValueError("mu must be a non-empty rectangular matrix")
        return MonodromyMatrix(rows)
    except (TypeError, ValueError) as exc:
        raise InputError("input", f"invalid monodromy matrix: {exc}", file=path) from exc


def _bad(v):
    raise ValueError(f"non-integer entry {v!r}")


def _need(cfg, name: str) -> int:
    v = getattr(cfg, name)
    if v is None:
        raise InputError("usage", f"--{name} is required for {cfg.command}")
    return v


def _level(cfg) -> int:
    n = _need(cfg, "n")
    if n < 1:
        raise InputError("input", f"--n must be >= 1, got {n}")
    return n


# --- commands ----------------------------------------------------------------


def _inv(name: str, passed: bool, counterexample: Any = None) -> dict:
    out = {"name": name, "passed": bool(passed)}
    if not passed:
        out["counterexample"] = counterexample
    return out


def cmd_monodromy(cfg):
    m = _load_motive(cfg.motive)
    mu = compute_monodromy(m)
    results = {"mu": mu.tolist(), "nu_dual": mu.nu_dual.tolist(), "good_reduction": m.is_good_reduction()}
    return {"motive": m.to_dict()}, results, []


def cmd_decompose(cfg):
    m = _load_motive(cfg.motive)
    u1, u2 = raynaud_decompose(m)
    plus, minus = plus_minus_motives(m)
    results = {k: v.to_dict() for k, v in (("u1", u1), ("u2", u2), ("u_plus", plus), ("u_minus", minus))}
    repro = {"motive": m.to_dict()}
    invariants = [
        _inv("u = u1 * u2", u1 * u2 == m, repro),
        _inv("u2 = u_plus * u_minus", plus * minus == u2, repro),
        _inv("u1 has good reduction", u1.is_good_reduction(), repro),
    ]
    return {"motive": m.to_dict()}, results, invariants


def cmd_eta_class(cfg):
    m, n = _load_motive(cfg.motive), _level(cfg)
    c = eta_class(m, n)
    u1, u2 = raynaud_decompose(m)
    repro = {"motive": m.to_dict(), "n": n}
    invariants = [_inv("class(u) = class(u1) + class(u2)", baer_sum_class(eta_class(u1, n), eta_class(u2, n)) == c, repro)]
    return {"motive": m.to_dict(), "n": n}, {"class": c.to_dict()}, invariants


def cmd_kato_pair(cfg):
    m, n = _load_motive(cfg.motive), _level(cfg)
    pair = kato_pair(m, n)
    repro = {"motive": m.to_dict(), "n": n}
    ext = extends_over_R(m, n)
    invariants = [
        _inv("classical + N_*(theta) = class(u)", reconstruct(pair) == eta_class(m, n), repro),
        _inv("push-out theorem", push_theorem_check(m, n), repro),
        _inv("extends over R iff N = 0", ext == (not pair.N.any()), repro),
    ]
    results = {"kato_pair": pair.to_dict(), "extends_over_R": ext}
    return {"motive": m.to_dict(), "n": n}, results, invariants


def cmd_model_algebra(cfg):
    m, n = _load_motive(cfg.motive), _level(cfg)
    limit = cfg.limit_points if cfg.limit_points is not None else DEFAULT_POINT_LIMIT
    if n**m.r > limit:
        raise LimitError(f"n**r = {n**m.r} exceeds --limit-points {limit}", points=n**m.r, limit=limit)
    alg = build_model_algebra(m, n, limit_points=limit)
    report = integrality_report(alg)
    repro = {"motive": m.to_dict(), "n": n}
    invariants = [
        _inv("integrality: every b_i(a) in R", report.integral, repro),
        _inv("generic fibre presents n-torsion", generic_fibre_check(alg, m), repro),
    ]
    results = {"algebra": alg.to_dict(), "integrality": report.to_dict()}
    return {"motive": m.to_dict(), "n": n}, results, invariants


def cmd_dieudonne(cfg):
    mu = _load_mu(cfg.mu)
    p, m = _need(cfg, "p"), _need(cfg, "m")
    try:
        D = build_dieudonne(mu, p, m)
    except ValueError as exc:
        raise InputError("input", str(exc)) from exc
    repro = {"mu": mu.tolist(), "p": p, "m": m}
    checks = check_invariants(D)
    checks["F id(1) V = id(1)"] = id1_check(p, m)
    invariants = [_inv(k, v, repro) for k, v in checks.items()]
    return {"mu": mu.tolist(), "p": p, "m": m}, D.to_dict(), invariants


def cmd_verify(cfg):
    suite = cfg.suite or "all"
    if suite != "all" and suite not in SUITES:
        raise InputError("usage", f"unknown suite {suite!r}", choices=["all", *SUITES])
    seed = cfg.seed
    size = cfg.size
    if size < 1:
        raise InputError("input", f"--size must be >= 1, got {size}")
    out = run_suite(suite, seed, size)
    invariants = [dict(c.to_dict(), suite=name) for name, checks in out.items() for c in checks]
    results = {name: {"checks": len(checks), "passed": sum(c.passed for c in checks)} for name, checks in out.items()}
    return {"suite": suite, "size": size}, results, invariants


COMMANDS: dict[str, Callable] = {
    "monodromy": cmd_monodromy,
    "decompose": cmd_decompose,
    "eta-class": cmd_eta_class,
    "kato-pair": cmd_kato_pair,
    "model-algebra": cmd_model_algebra,
    "dieudonne": cmd_dieudonne,
    "verify": cmd_verify,
}


# --- driver ------------------------------------------------------------------


def _digest(obj: Any) -> str:
    return hashlib.sha256(json.dumps(obj, sort_keys=True, separators=(",", ":")).encode()).hexdigest()


def run(cfg: RunConfig) -> tuple[dict, int]:
    """Execute one command and return ``(report, exit_code)``.

    Raises :class:`InputError` for bad input or exceeded limits.
    """
    start = time.perf_counter()
    inputs, results, invariants = COMMANDS[cfg.command](cfg)
    report = {
        "command": cfg.command,
        "inputs": inputs,
        "inputs_digest": _digest({"command": cfg.command, "inputs": inputs, "seed": cfg.seed}),
        "seed": cfg.seed,
        "results": results,
        "invariants": invariants,
        "timing": {"seconds": round(time.perf_counter() - start, 6)},
    }
    code = EXIT_OK if all(i["passed"] for i in invariants) else EXIT_INVARIANT
    return report, code


def render_human(report: dict) -> str:
    lines = [f"command: {report['command']}", f"seed: {report['seed']}", f"inputs: {report['inputs_digest'][:16]}"]
    lines.append("results:")
    for key, value in report["results"].items():
        lines.append(f"  {key}: {json.dumps(value, sort_keys=True)}")
    for inv in report["invariants"]:
        mark = "PASS" if inv["passed"] else "FAIL"
        where = f"[{inv['suite']}] " if "suite" in inv else ""
        lines.append(f"{mark} {where}{inv['name']}")
        if not inv["passed"]:
            lines.append(f"     counterexample: {json.dumps(inv.get('counterexample'), sort_keys=True)}")
    lines.append(f"time: {report['timing']['seconds']:.3f}s")
    return "\n".join(lines)


class _Parser(argparse.ArgumentParser):
    # usage errors are input errors (exit 1); 2 is reserved for invariant failures
    def error(self, message):
        self.print_usage(sys.stderr)
        print(json.dumps({"error": "usage", "message": message}, sort_keys=True), file=sys.stderr)
        sys.exit(EXIT_INPUT)


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="motivic", description="Torsion of toric 1-motives: monodromy, Kummer classes, log models.")
    sub = parser.add_subparsers(dest="command", required=True)
    for name in COMMANDS:
        sp = sub.add_parser(name)
        sp.add_argument("--motive", metavar="FILE", help="motive JSON {r, d, entries: [[{c, k}]]}")
        sp.add_argument("--mu", metavar="FILE", help="monodromy matrix JSON (list of rows or {\"mu\": rows})")
        sp.add_argument("--n", type=int, help="torsion level")
        sp.add_argument("--p", type=int, help="prime")
        sp.add_argument("--m", type=int, help="truncation level")
        sp.add_argument("--seed", type=int, default=0)
        sp.add_argument("--suite", choices=["all", *SUITES], help="verification suite")
        sp.add_argument("--size", type=int, default=100, help="random cases per check in verify")
        sp.add_argument("--limit-points", type=int, dest="limit_points", help=f"cap on n**r (default {DEFAULT_POINT_LIMIT})")
        sp.add_argument("--out", metavar="FILE", help="write the report here instead of stdout")
        sp.add_argument("--human", action="store_true", help="human-readable rendering instead of JSON")
    return parser


def main(argv: Optional[Sequence[str]] = None) -> int:
    level = os.environ.get("MOTIVIC_LOG_LEVEL", "WARNING").upper()
    logging.basicConfig(
        level=getattr(logging, level, logging.WARNING),
        format="%(levelname)s %(name)s: %(message)s",
        stream=sys.stderr,
    )
    cfg = build_parser().parse_args(argv, namespace=RunConfig())
    log.info("running %s", cfg.command)
    try:
        report, code = run(cfg)
    except InputError as exc:
        print(json.dumps(exc.payload, sort_keys=True), file=sys.stderr)
        return EXIT_INPUT
    text = render_human(report) if cfg.human else json.dumps(report, sort_keys=True, indent=2)
    if cfg.out:
        with open(cfg.out, "w", encoding="utf-8") as fh:
            fh.write(text + "\n")
    else:
        print(text)
    log.info("exit code %d", code)
    return code


if __name__ == "__main__":
    sys.exit(main())
