"""Command-line front end.

Every subcommand reads matrices in the JSON wire format (a file path, ``-``
for stdin, or an inline JSON object), runs one decider and prints either a
short text summary or, with ``--json``, the full machine report.

Exit status: 0 when the tested property holds, 1 when it fails, 2 for
malformed input or a numerical-domain error.
"""

from __future__ import annotations

import argparse
import json
import math
import sys
import time
import warnings
from dataclasses import dataclass, field
from typing import Any

import numpy as np

from . import certificates as cert
from . import kmodule, numrange, oracle
from .core_linalg import Tolerance
from .errors import ParallaxError, ParseError
from .geometry import is_bj_orthogonal, is_parallel
from .norms import NormHandle, VectorNormTag, parse_norm
from .wire import SCHEMA_VERSION, decode_matrix, dumps_report, to_jsonable

COMMANDS = ("parallel", "bjo", "certificate", "numrange", "module-verify", "oracle")
MODULE_CHECKS = ("a", "L", "idempotent", "transitive", "b")
ORACLE_KINDS = ("parallel", "numrad", "dual")


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise ParseError(message)


@dataclass
class JobRequest:
    command: str
    norm: NormHandle | None
    inputs: list
    options: dict = field(default_factory=dict)
    tol: Tolerance = field(default_factory=Tolerance)
    subcommand: str | None = None


@dataclass
class JobReport:
    report: dict
    exit_code: int


def _read_matrix(arg: str) -> np.ndarray:
    text = arg
    if not arg.lstrip().startswith("{"):
        try:
            if arg == "-":
                text = sys.stdin.read()
            else:
                with open(arg, encoding="utf-8") as fh:
                    text = fh.read()
        except OSError as exc:
            raise ParseError(f"cannot read {arg!r}: {exc.strerror}") from None
    try:
        obj = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ParseError(f"{arg!r} is not valid JSON: {exc.msg}") from None
    return decode_matrix(obj)


def _parse_point(text: str) -> complex:
    t = text.replace(" ", "")
    try:
        if "," in t:
            re, im = t.split(",")
            return complex(float(re), float(im))
        return complex(t)
    except ValueError:
        raise ParseError(f"bad complex point {text!r}; use 're,im' or '1+2j'") from None


def _common(p: argparse.ArgumentParser) -> None:
    p.add_argument("--tol", type=float, default=None, help="absolute and relative tolerance (default 1e-8)")
    p.add_argument("--grid", type=int, default=None, help="unit-circle grid points (default 720)")
    p.add_argument("--refine", type=int, default=None, help="golden-section iterations (default 60)")
    p.add_argument("--seed", type=int, default=None, help="seed for randomized parts (default $PARALLAX_SEED)")
    p.add_argument("--json", action="store_true", help="print the machine report on stdout")
    p.add_argument("--timing", action="store_true", help="include wall-clock time in the JSON report")


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="parallax", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    for name, helptext in (("parallel", "decide A || B"), ("bjo", "decide X _|_ Y (Birkhoff-James)"),
                           ("certificate", "norm-specific parallelism certificate")):
        p = sub.add_parser(name, help=helptext)
        p.add_argument("--norm", required=True, help="schatten:<p|inf>, kyfan:<k> or induced:<l1|l2|linf>")
        p.add_argument("first")
        p.add_argument("second")
        if name == "parallel":
            p.add_argument("--oracle", action="store_true", help="also run the brute-force oracle")
        _common(p)

    p = sub.add_parser("numrange", help="numerical radius, membership and boundary of W(T)")
    p.add_argument("first")
    p.add_argument("--point", default=None, help="test membership of this point ('re,im' or '1+2j')")
    p.add_argument("--boundary", type=int, default=None, help="emit an N-point boundary polyline")
    _common(p)

    p = sub.add_parser("module-verify", help="check a module parallelism theorem on given elements")
    p.add_argument("check", choices=MODULE_CHECKS)
    p.add_argument("elements", nargs="*", help="module elements (two, or three for 'transitive')")
    p.add_argument("--d", type=int, default=2, help="Hilbert-space dimension for 'b'")
    p.add_argument("--n", type=int, default=2, help="basis size for 'b'")
    p.add_argument("--trials", type=int, default=500, help="random trials for 'b'")
    _common(p)

    p = sub.add_parser("oracle", help="brute-force reference computations")
    p.add_argument("kind", choices=ORACLE_KINDS)
    p.add_argument("matrices", nargs="+")
    p.add_argument("--norm", default=None)
    p.add_argument("--samples", type=int, default=None, help="sphere/ball samples (default 20000)")
    p.add_argument("--lambda-grid", type=int, default=None, help="unit-circle grid (default 4096)")
    p.add_argument("--refine-steps", type=int, default=None, help="local refinement steps (default 100)")
    _common(p)
    return parser


def request_from_args(ns: argparse.Namespace) -> JobRequest:
    base = Tolerance()
    tol = Tolerance(
        abs_tol=ns.tol if ns.tol is not None else base.abs_tol,
        rel_tol=ns.tol if ns.tol is not None else base.rel_tol,
        grid_points=ns.grid if ns.grid is not None else base.grid_points,
        refine_iters=ns.refine if ns.refine is not None else base.refine_iters,
    )
    norm_text = getattr(ns, "norm", None)
    norm = parse_norm(norm_text) if norm_text is not None else None
    if ns.command in ("parallel", "bjo", "certificate"):
        paths, sub = [ns.first, ns.second], None
    elif ns.command == "numrange":
        paths, sub = [ns.first], None
    elif ns.command == "module-verify":
        paths, sub = ns.elements, ns.check
    else:
        paths, sub = ns.matrices, ns.kind
    options = {k: v for k, v in vars(ns).items()
               if k not in ("command", "norm", "first", "second", "elements", "matrices", "check", "kind",
                            "tol", "grid", "refine")}
    options["seed"] = ns.seed if ns.seed is not None else oracle.default_seed()
    return JobRequest(ns.command, norm, [_read_matrix(pth) for pth in paths], options, tol, sub)


def _need(req: JobRequest, count: int, what: str = "matrices") -> None:
    if len(req.inputs) != count:
        raise ParseError(f"{req.command} {req.subcommand or ''} expects {count} {what}, got {len(req.inputs)}".replace("  ", " "))


def _need_norm(req: JobRequest) -> NormHandle:
    if req.norm is None:
        raise ParseError("--norm is required")
    return req.norm


def _oracle_cfg(req: JobRequest) -> oracle.OracleConfig:
    o, d = req.options, oracle.OracleConfig()
    return oracle.OracleConfig(
        lambda_grid=d.lambda_grid if o.get("lambda_grid") is None else o["lambda_grid"],
        sphere_samples=d.sphere_samples if o.get("samples") is None else o["samples"],
        refine_steps=d.refine_steps if o.get("refine_steps") is None else o["refine_steps"],
        seed=o["seed"],
    )


def _cmd_parallel(req: JobRequest):
    _need(req, 2)
    a, b = req.inputs
    h = _need_norm(req)
    v = is_parallel(a, b, h, req.tol)
    result = {"verdict": v}
    ocfg = None
    if req.options.get("oracle"):
        cfg = _oracle_cfg(req)
        result["oracle_verdict"] = oracle.oracle_parallel(a, b, h, cfg, req.tol)
        ocfg = cfg
    return v.parallel, result, ocfg


def _cmd_bjo(req: JobRequest):
    _need(req, 2)
    v = is_bj_orthogonal(req.inputs[0], req.inputs[1], _need_norm(req), req.tol)
    return v.orthogonal, {"verdict": v}, None


def _cmd_certificate(req: JobRequest):
    _need(req, 2)
    a, b = req.inputs
    h = _need_norm(req)
    result: dict[str, Any] = {"verdict": is_parallel(a, b, h, req.tol)}
    spectral = (h.kind == "schatten" and math.isinf(h.p)) or (h.kind == "induced" and h.vector is VectorNormTag.L2)
    if spectral:
        verdict, c = cert.opnorm_witness(a, b, req.tol)
        holds = verdict.parallel and c.verify(a, b, req.tol)
        result.update(kind="opnorm", structural_verdict=verdict, certificate=c,
                      range_condition=cert.opnorm_range_condition(a, b, c.lam, req.tol))
        if h.kind == "induced":
            result["sufficiency"] = cert.vector_level_sufficiency(a, b, h.vector, req.tol)._asdict()
    elif h.kind == "schatten" and h.p == 1.0:
        c = cert.trace_certificate(a, b, req.tol)
        holds = c is not None
        result.update(kind="trace", certificate=c)
    elif h.kind == "kyfan":
        c = cert.kyfan_certificate(a, b, h.k, req.tol)
        holds = c is not None
        result.update(kind="kyfan", certificate=c)
    elif h.kind == "schatten":
        chk = cert.schatten_condition(a, b, h.p, req.tol)
        holds = chk.holds
        result.update(kind="schatten", condition=chk._asdict())
    else:
        dec = cert.extreme_point_check(a, b, h.vector, req.tol)
        holds = dec is not None
        result.update(kind="extreme_point", certificate=dec,
                      sufficiency=cert.vector_level_sufficiency(a, b, h.vector, req.tol)._asdict())
    return bool(holds), result, None


def _cmd_numrange(req: JobRequest):
    _need(req, 1, "matrix")
    t = req.inputs[0]
    w, theta, xi = numrange.numerical_radius_witness(t, req.tol)
    result: dict[str, Any] = {"numerical_radius": w, "theta": theta, "witness": xi}
    holds = True
    point = req.options.get("point")
    if point is not None:
        z = _parse_point(point)
        q = numrange.range_margin(t, z, req.tol)
        holds = numrange.in_numerical_range(t, z, req.tol)
        result.update(point=z, margin=q.margin, member=holds)
    nb = req.options.get("boundary")
    if nb is not None:
        if nb < 3:
            raise ParseError("--boundary needs at least 3 points")
        result["boundary"] = numrange.boundary(t, nb)
    return holds, result, None


def _cmd_module(req: JobRequest):
    check, tol = req.subcommand, req.tol
    if check == "b":
        if req.inputs:
            raise ParseError("module-verify b takes no matrices; use --d, --n, --trials")
        d, n, trials = req.options["d"], req.options["n"], req.options["trials"]
        if d < 1 or trials < 1:
            raise ParseError("--d and --trials must be positive")
        xi = np.zeros(d, dtype=complex)
        xi[0] = 1.0
        basis = kmodule.OrthonormalBasis.build(xi, n)
        worst = kmodule.thm_b_search(basis, trials, tol, seed=req.options["seed"])
        return worst < 0, {"worst_margin": worst, "d": d, "n": n, "trials": trials}, None
    if check == "transitive":
        _need(req, 3, "elements")
        tc = kmodule.transitivity_check(*req.inputs, tol)
        return not tc.violated, {"premises": tc.premises, "conclusion": tc.conclusion,
                                 "evidence": tc.evidence}, None
    _need(req, 2, "elements")
    fn = {"a": kmodule.thm_a_check, "L": kmodule.thm_L_check,
          "idempotent": kmodule.corollary_idempotent_check}[check]
    tc = fn(req.inputs[0], req.inputs[1], tol)
    return tc.agree, {"lhs_parallel": tc.lhs_parallel, "rhs_holds": tc.rhs_holds,
                      "evidence": tc.evidence}, None


def _cmd_oracle(req: JobRequest):
    cfg = _oracle_cfg(req)
    if req.subcommand == "parallel":
        _need(req, 2)
        v = oracle.oracle_parallel(req.inputs[0], req.inputs[1], _need_norm(req), cfg, req.tol)
        return v.parallel, {"verdict": v}, cfg
    _need(req, 1, "matrix")
    if req.subcommand == "numrad":
        return True, {"numerical_radius": oracle.oracle_numerical_radius(req.inputs[0], cfg)}, cfg
    trace: list = []
    val = oracle.oracle_dual_norm(req.inputs[0], _need_norm(req), cfg, trace)
    return True, {"dual_norm": val, "trace": trace}, cfg


_DISPATCH = {
    "parallel": _cmd_parallel,
    "bjo": _cmd_bjo,
    "certificate": _cmd_certificate,
    "numrange": _cmd_numrange,
    "module-verify": _cmd_module,
    "oracle": _cmd_oracle,
}


def run(req: JobRequest) -> JobReport:
    """Dispatch one request; domain errors propagate as :class:`ParallaxError`."""
    start = time.perf_counter()
    with warnings.catch_warnings(record=True) as caught:
        warnings.simplefilter("always")
        holds, result, ocfg = _DISPATCH[req.command](req)
    elapsed = time.perf_counter() - start
    code = 0 if holds else 1
    report = {
        "schema_version": SCHEMA_VERSION,
        "command": req.command,
        "subcommand": req.subcommand,
        "norm": str(req.norm) if req.norm is not None else None,
        "holds": bool(holds),
        "exit_code": code,
        "result": to_jsonable(result),
        "tolerance": to_jsonable(req.tol),
        "oracle": to_jsonable(ocfg) if ocfg is not None else None,
        "seed": int(req.options["seed"]),
        "warnings": [str(w.message) for w in caught],
    }
    if req.options.get("timing"):
        report["elapsed_s"] = elapsed
    return JobReport(report, code)


def _summary(report: dict, elapsed: float) -> str:
    lines = [f"{report['command']}{' ' + report['subcommand'] if report['subcommand'] else ''}"
             f"{' [' + report['norm'] + ']' if report['norm'] else ''}: "
             f"{'holds' if report['holds'] else 'fails'}"]
    for key, val in report["result"].items():
        if isinstance(val, dict) and "rows" not in val:
            inner = ", ".join(f"{k}={_fmt(v)}" for k, v in val.items() if not isinstance(v, (dict, list)) or _is_cplx(v))
            lines.append(f"  {key}: {inner}")
        elif not isinstance(val, (dict, list)) or _is_cplx(val):
            lines.append(f"  {key}: {_fmt(val)}")
    for w in report["warnings"]:
        lines.append(f"  warning: {w}")
    lines.append(f"  time: {elapsed:.3f} s")
    return "\n".join(lines)


def _is_cplx(v) -> bool:
    return isinstance(v, list) and len(v) == 2 and all(isinstance(t, float) for t in v)


def _fmt(v) -> str:
    if _is_cplx(v):
        return f"{v[0]:.10g}{v[1]:+.10g}j"
    if isinstance(v, float):
        return f"{v:.10g}"
    return str(v).lower() if isinstance(v, bool) else str(v)


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    want_json = "--json" in (argv if argv is not None else sys.argv[1:])
    command = None
    try:
        ns = parser.parse_args(argv)
        command = ns.command
        req = request_from_args(ns)
        start = time.perf_counter()
        rep = run(req)
        elapsed = time.perf_counter() - start
    except (ParallaxError, ValueError, OverflowError, np.linalg.LinAlgError) as exc:
        return _fail(command, exc, want_json)
    except Exception as exc:  # keep the exit-code contract even on bugs
        return _fail(command, exc, want_json, internal=True)
    if req.options.get("json"):
        print(dumps_report(rep.report))
    else:
        print(_summary(rep.report, elapsed))
    return rep.exit_code


def _fail(command, exc: BaseException, want_json: bool, internal: bool = False) -> int:
    kind = type(exc).__name__
    msg = str(exc) or kind
    if internal:
        msg = f"internal error: {msg}"
    print(f"parallax: error: {msg}", file=sys.stderr)
    if want_json:
        print(json.dumps({"schema_version": SCHEMA_VERSION, "command": command, "exit_code": 2,
                          "error": {"type": kind, "message": msg}}, sort_keys=True, indent=2))
    return 2


if __name__ == "__main__":
    sys.exit(main())
