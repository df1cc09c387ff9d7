"""Command-line entry point: ``qvl invariant | verify | table``.

Exit codes: 0 success, 1 verification or integrality failure, 2 invalid input.
"""

from __future__ import annotations

import argparse
import csv
import io
import itertools
import json
import os
import sys
import tempfile
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from fractions import Fraction
from typing import Callable, Dict, List, Optional, Sequence, Tuple

from . import bps
from .errors import DomainError, IntegralityError
from .gsum import g_enum, g_recursion_rhs, gtilde_recursion_check, nlog_scat, qps_check
from .invariants import (
    CurveClass,
    GParams,
    g_closed,
    nlog_closed,
    open_closed,
    open_from_log,
)
from .qalg import LaurentPoly, QRational
from .scattering import trace_nlog

SELECTORS = ("log", "open", "lmov", "gv", "dt", "g")
PIPELINES = ("closed", "sum", "trace", "all")
FORMATS = ("json", "csv", "text")
CAMPAIGNS = (
    "scat-vs-closed",
    "trace-vs-scat",
    "log-open",
    "recursion",
    "gtilde-recursion",
    "qps",
    "integrality",
    "symmetry",
)

EXIT_OK, EXIT_FAIL, EXIT_INPUT = 0, 1, 2


class UsageError(Exception):
    """Invalid command-line input; mapped to exit code 2."""


@dataclass
class RunConfig:
    command: str
    selector: str = "log"
    degree: Optional[CurveClass] = None
    gparams: Optional[GParams] = None
    max_d0: Optional[int] = None
    box: Optional[Tuple[int, int, int, int, int]] = None
    qps_max: Optional[int] = None
    campaign: Optional[str] = None
    pipeline: str = "closed"
    fmt: str = "json"
    cache: Optional[str] = None
    jobs: int = 1


# -- value serialization ---------------------------------------------------


def normalize(value):
    """Canonical representative: QRationals that are Laurent polynomials become polynomials."""
    if isinstance(value, QRational):
        if value.is_zero():
            return LaurentPoly()
        if value.is_laurent():
            return value.to_laurent()
    return value


def value_to_json(value):
    value = normalize(value)
    if isinstance(value, (LaurentPoly, QRational)):
        return value.to_json()
    if isinstance(value, (int, Fraction)):
        f = Fraction(value)
        return {"p": str(f.numerator), "q": str(f.denominator)}
    raise TypeError(f"cannot serialize {type(value).__name__}")


def value_to_text(value) -> str:
    value = normalize(value)
    return str(value)


# -- pipelines -------------------------------------------------------------

LOG_PIPELINES: Dict[str, Callable] = {
    "closed": nlog_closed,
    "sum": nlog_scat,
    "trace": trace_nlog,
}


def _open_via(log_fn):
    def fn(dd):
        return open_from_log(dd, log_fn(dd))

    return fn


def _pipelines_for(selector: str, pipeline: str) -> List[str]:
    available = ["closed", "sum"] if selector == "g" else ["closed", "sum", "trace"]
    if pipeline == "all":
        return available
    if pipeline not in available:
        raise UsageError(f"pipeline {pipeline!r} is not available for selector {selector!r}")
    return [pipeline]


def compute(selector: str, target, pipeline: str):
    """Value of ``selector`` at ``target`` (a CurveClass, or GParams for ``g``)."""
    if selector == "g":
        return g_closed(target) if pipeline == "closed" else g_enum(target)
    log_fn = LOG_PIPELINES[pipeline]
    if selector == "log":
        return log_fn(target)
    if selector == "open":
        return open_closed(target) if pipeline == "closed" else _open_via(log_fn)(target)
    if selector == "lmov":
        return bps.lmov(target, log_fn)
    if selector == "gv":
        return bps.gv(target, log_fn)
    if selector == "dt":
        return bps.dt_num(target, log_fn)
    raise UsageError(f"unknown selector {selector!r}")


# -- argument handling -----------------------------------------------------


def _ints(text: str, n: int, flag: str) -> Tuple[int, ...]:
    parts = text.split(",")
    if len(parts) != n:
        raise UsageError(f"{flag} needs {n} comma-separated integers, got {text!r}")
    try:
        return tuple(int(p) for p in parts)
    except ValueError:
        raise UsageError(f"{flag} must be integers, got {text!r}") from None


def _nonneg(values: Sequence[int], flag: str):
    if any(v < 0 for v in values):
        raise UsageError(f"{flag} entries must be non-negative, got {','.join(map(str, values))}")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="qvl",
        description="Exact log/open invariants of dP3(0,2) and their identity checks.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p):
        p.add_argument("--format", choices=FORMATS, default="json", dest="fmt")
        p.add_argument("--jobs", type=int, default=1)

    inv = sub.add_parser("invariant", help="compute one invariant")
    inv.add_argument("selector_pos", nargs="?", choices=SELECTORS, metavar="SELECTOR")
    inv.add_argument("--selector", choices=SELECTORS)
    inv.add_argument("--degree")
    inv.add_argument("--gparams")
    inv.add_argument("--pipeline", choices=PIPELINES, default="closed")
    common(inv)

    ver = sub.add_parser("verify", help="run a verification campaign")
    ver.add_argument("campaign", choices=CAMPAIGNS)
    ver.add_argument("--max-d0", type=int)
    ver.add_argument("--box")
    ver.add_argument("--max", type=int, dest="qps_max", help="bound for the qps campaign")
    common(ver)

    tab = sub.add_parser("table", help="tabulate an invariant over a degree range")
    tab.add_argument("--selector", choices=SELECTORS, default="log")
    tab.add_argument("--max-d0", type=int, default=3)
    tab.add_argument("--pipeline", choices=PIPELINES, default="closed")
    tab.add_argument("--cache", default=os.environ.get("QVL_CACHE"))
    common(tab)
    return parser


def config_from_args(args) -> RunConfig:
    cfg = RunConfig(command=args.command, fmt=args.fmt, jobs=args.jobs)
    if cfg.jobs < 1:
        raise UsageError("--jobs must be a positive integer")
    if args.command == "invariant":
        if args.selector_pos and args.selector and args.selector_pos != args.selector:
            raise UsageError("conflicting selectors")
        cfg.selector = args.selector or args.selector_pos or "log"
        cfg.pipeline = args.pipeline
        if cfg.selector == "g":
            if args.gparams is None:
                raise UsageError("selector g needs --gparams a,b,c,d,e")
            cfg.gparams = GParams(*_ints(args.gparams, 5, "--gparams"))
        else:
            if args.degree is None:
                raise UsageError(f"selector {cfg.selector} needs --degree a,b,c,d")
            values = _ints(args.degree, 4, "--degree")
            _nonneg(values, "--degree")
            cfg.degree = CurveClass(*values)
    elif args.command == "verify":
        cfg.campaign = args.campaign
        cfg.max_d0 = args.max_d0
        cfg.qps_max = args.qps_max
        if args.box is not None:
            cfg.box = _ints(args.box, 5, "--box")
            _nonneg(cfg.box, "--box")
        for v in (cfg.max_d0, cfg.qps_max):
            if v is not None and v < 0:
                raise UsageError("bounds must be non-negative")
    else:
        cfg.selector = args.selector
        cfg.pipeline = args.pipeline
        cfg.max_d0 = args.max_d0
        cfg.cache = args.cache
        if cfg.selector == "g":
            raise UsageError("table does not support selector g")
        if cfg.max_d0 < 0:
            raise UsageError("--max-d0 must be non-negative")
    return cfg


# -- invariant -------------------------------------------------------------


def run_invariant(cfg: RunConfig, out) -> int:
    target = cfg.gparams if cfg.selector == "g" else cfg.degree
    note = None
    if cfg.selector != "g":
        dd = cfg.degree
        if not dd.admissible():
            print(f"warning: class {dd} is not admissible", file=sys.stderr)
        if not dd.positive():
            if cfg.selector in ("log", "open"):
                note = "vanishing intersection"
            else:
                raise UsageError(f"{cfg.selector} needs d.D1 > 0 and d.D2 > 0, got class {dd}")
    names = _pipelines_for(cfg.selector, cfg.pipeline)
    values = {}
    for name in names:
        values[name] = LaurentPoly() if note else compute(cfg.selector, target, name)
    first = values[names[0]]
    agree = all(_equal(first, v) for v in values.values())

    if cfg.fmt == "json":
        doc = {
            "selector": cfg.selector,
            "argument": str(target),
            "value": value_to_json(first),
            "pipelines": {k: value_to_json(v) for k, v in values.items()},
            "agree": agree,
        }
        if note:
            doc["note"] = note
        out.write(json.dumps(doc, sort_keys=True) + "\n")
    elif cfg.fmt == "csv":
        w = csv.writer(out, lineterminator="\n")
        w.writerow(["argument", "invariant", "pipeline", "value"])
        for k, v in values.items():
            w.writerow([str(target), cfg.selector, k, value_to_text(v)])
    else:
        out.write(f"{cfg.selector}({target}) = {value_to_text(first)}\n")
        if len(values) > 1:
            for k, v in values.items():
                out.write(f"  {k}: {value_to_text(v)}\n")
            out.write("  pipelines agree\n" if agree else "  PIPELINES DISAGREE\n")
        if note:
            out.write(f"  note: {note}\n")
    return EXIT_OK if agree else EXIT_FAIL


def _equal(a, b) -> bool:
    if isinstance(a, (int, Fraction)) or isinstance(b, (int, Fraction)):
        return a == b
    return QRational._coerce(a) == QRational._coerce(b)


# -- verify ----------------------------------------------------------------


def _classes(max_d0: int, admissible_only: bool) -> List[CurveClass]:
    out = []
    for d0 in range(max_d0 + 1):
        for d1, d2, d3 in itertools.product(range(d0 + 3), repeat=3):
            dd = CurveClass(d0, d1, d2, d3)
            if dd.positive() and (dd.admissible() or not admissible_only):
                out.append(dd)
    return out


def _check_scat_closed(dd):
    a, b = nlog_scat(dd), nlog_closed(dd)
    if a == b:
        return None
    return {"degree": str(dd), "sum": value_to_json(a), "closed": value_to_json(b)}


def _check_trace_scat(dd):
    a, b = trace_nlog(dd), nlog_scat(dd)
    if a == b:
        return None
    return {"degree": str(dd), "trace": value_to_json(a), "sum": value_to_json(b)}


def _check_log_open(dd):
    a, b = open_closed(dd), open_from_log(dd)
    if a == b:
        return None
    return {"degree": str(dd), "open": value_to_json(a), "from_log": value_to_json(b)}


def _check_recursion(p):
    a, b = g_enum(p), g_recursion_rhs(p)
    if a == b:
        return None
    return {"gparams": str(p), "g": value_to_json(a), "rhs": value_to_json(b)}


def _check_gtilde(p):
    a, b = gtilde_recursion_check(p)
    if a == b:
        return None
    return {"gparams": str(p), "gtilde": value_to_json(a), "rhs": value_to_json(b)}


def _check_qps(args):
    a, b = qps_check(*args)
    if a == b:
        return None
    return {"args": list(args), "lhs": value_to_json(a), "rhs": value_to_json(b)}


def _check_integrality(dd):
    try:
        bps.gv(dd)
        a, b = bps.lmov(dd), bps.lmov_from_open(dd)
    except IntegralityError as exc:
        return {"degree": str(dd), "error": str(exc)}
    if a == b:
        return None
    return {"degree": str(dd), "lmov": value_to_json(a), "lmov_from_open": value_to_json(b)}


def _check_symmetry(case):
    kind, args = case
    if kind == "class":
        d0, d1, d2, d3 = args
        a, b = nlog_closed(args), nlog_closed((d0, d1, d3, d2))
    else:
        p = GParams(*args)
        q = GParams(p.a, p.b, p.d, p.c, p.e)
        a, b = g_closed(p), g_closed(q)
        if a == b:
            a, b = g_enum(p), g_enum(q)
    if a == b:
        return None
    return {"kind": kind, "args": ",".join(map(str, args)), "lhs": value_to_json(a), "rhs": value_to_json(b)}


def campaign_cases(cfg: RunConfig):
    name = cfg.campaign
    max_d0 = cfg.max_d0
    if name in ("recursion", "gtilde-recursion"):
        A, B, C, D, E = cfg.box or (4, 4, 3, 3, 8)
        cases = [
            GParams(*p)
            for p in itertools.product(
                range(1, A + 1), range(1, B + 1), range(C + 1), range(D + 1), range(E + 1)
            )
        ]
        return cases, _check_recursion if name == "recursion" else _check_gtilde
    if name == "qps":
        n = cfg.qps_max if cfg.qps_max is not None else 5
        return list(itertools.product(range(n + 1), repeat=4)), _check_qps
    if name == "symmetry":
        classes = [
            ("class", tuple(dd)) for dd in _classes(6 if max_d0 is None else max_d0, False)
        ]
        A, B, C, D, E = cfg.box or (4, 4, 4, 4, 8)
        boxes = [
            ("g", p)
            for p in itertools.product(
                range(A + 1), range(B + 1), range(C + 1), range(D + 1), range(E + 1)
            )
            if p[2] < p[3]
        ]
        return classes + boxes, _check_symmetry
    if name in ("scat-vs-closed", "trace-vs-scat"):
        check = _check_scat_closed if name == "scat-vs-closed" else _check_trace_scat
        return _classes(4 if max_d0 is None else max_d0, False), check
    if name == "log-open":
        return _classes(4 if max_d0 is None else max_d0, True), _check_log_open
    if name == "integrality":
        return _classes(4 if max_d0 is None else max_d0, True), _check_integrality
    raise UsageError(f"unknown campaign {name!r}")


def _map(fn, items, jobs):
    if jobs > 1 and len(items) > 1:
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            return list(pool.map(fn, items, chunksize=max(1, len(items) // (4 * jobs))))
    return [fn(x) for x in items]


def run_verify(cfg: RunConfig, out) -> int:
    cases, check = campaign_cases(cfg)
    results = _map(check, cases, cfg.jobs)
    failures = [r for r in results if r is not None]
    report = {
        "campaign": cfg.campaign,
        "checked": len(results),
        "passed": len(results) - len(failures),
        "failed": len(failures),
        "counterexample": failures[0] if failures else None,
    }
    if cfg.fmt == "json":
        out.write(json.dumps(report, sort_keys=True) + "\n")
    elif cfg.fmt == "csv":
        w = csv.writer(out, lineterminator="\n")
        w.writerow(["campaign", "checked", "passed", "failed", "counterexample"])
        cex = json.dumps(report["counterexample"], sort_keys=True) if failures else ""
        w.writerow([cfg.campaign, report["checked"], report["passed"], report["failed"], cex])
    else:
        out.write(
            f"{cfg.campaign}: {report['passed']} passed, {report['failed']} failed"
            f" of {report['checked']}\n"
        )
        if failures:
            out.write(f"first counterexample: {json.dumps(failures[0], sort_keys=True)}\n")
    return EXIT_FAIL if failures else EXIT_OK


# -- table -----------------------------------------------------------------


def table_classes(max_d0: int) -> List[CurveClass]:
    """Admissible classes with positive intersections and ``d0 <= max_d0``, sorted."""
    out = []
    for d0 in range(max_d0 + 1):
        for d1, d2, d3 in itertools.product(range(d0 + 1), repeat=3):
            dd = CurveClass(d0, d1, d2, d3)
            if dd.admissible() and dd.positive():
                out.append(dd)
    return sorted(out)


def _table_cell(job):
    selector, pipeline, dd = job
    names = _pipelines_for(selector, pipeline)
    values = [compute(selector, dd, n) for n in names]
    if not all(_equal(values[0], v) for v in values[1:]):
        raise _Disagreement(str(dd))
    return value_to_json(values[0]), value_to_text(values[0])


class _Disagreement(Exception):
    pass


def _cache_key(dd: CurveClass, selector: str) -> str:
    return f"{dd}:{selector}"


def load_cache(path: Optional[str]) -> dict:
    if not path or not os.path.exists(path):
        return {}
    try:
        with open(path, encoding="utf-8") as fh:
            data = json.load(fh)
    except (OSError, ValueError) as exc:
        print(f"warning: ignoring unreadable cache {path}: {exc}", file=sys.stderr)
        return {}
    if not isinstance(data, dict):
        print(f"warning: ignoring malformed cache {path}", file=sys.stderr)
        return {}
    return data


def save_cache(path: str, data: dict) -> bool:
    """Atomically rewrite the cache file; warn and return False if that fails."""
    directory = os.path.dirname(os.path.abspath(path))
    try:
        fd, tmp = tempfile.mkstemp(prefix=".qvl-cache-", dir=directory)
        try:
            with os.fdopen(fd, "w", encoding="utf-8") as fh:
                json.dump(data, fh, sort_keys=True)
            os.replace(tmp, path)
        except BaseException:
            if os.path.exists(tmp):
                os.unlink(tmp)
            raise
    except OSError as exc:
        print(f"warning: cannot write cache {path}: {exc}; continuing uncached", file=sys.stderr)
        return False
    return True


def _text_from_json(data) -> str:
    if "s_terms" in data:
        return str(LaurentPoly.from_json(data))
    if "num" in data:
        return str(QRational.from_json(data))
    f = Fraction(int(data["p"]), int(data["q"]))
    return str(f)


def run_table(cfg: RunConfig, out) -> int:
    classes = table_classes(cfg.max_d0)
    cache = load_cache(cfg.cache)
    rows: List[Tuple[CurveClass, dict]] = []
    misses = [dd for dd in classes if _cache_key(dd, cfg.selector) not in cache]
    hits = len(classes) - len(misses)
    try:
        computed = _map(_table_cell, [(cfg.selector, cfg.pipeline, dd) for dd in misses], cfg.jobs)
    except _Disagreement as exc:
        print(f"error: pipelines disagree at class {exc}", file=sys.stderr)
        return EXIT_FAIL
    fresh = {_cache_key(dd, cfg.selector): js for dd, (js, _) in zip(misses, computed)}
    for dd in classes:
        key = _cache_key(dd, cfg.selector)
        rows.append((dd, cache[key] if key in cache else fresh[key]))
    if cfg.cache:
        print(f"cache: {hits} hits, {len(misses)} misses", file=sys.stderr)
        if fresh:
            merged = dict(cache)
            merged.update(fresh)
            save_cache(cfg.cache, merged)

    header = ["d0", "d1", "d2", "d3", "invariant", "value"]
    if cfg.fmt == "json":
        doc = [
            {"degree": str(dd), "invariant": cfg.selector, "value": js} for dd, js in rows
        ]
        out.write(json.dumps(doc, sort_keys=True) + "\n")
    elif cfg.fmt == "csv":
        w = csv.writer(out, lineterminator="\n")
        w.writerow(header)
        for dd, js in rows:
            w.writerow([*dd, cfg.selector, _text_from_json(js)])
    else:
        out.write(" ".join(header) + "\n")
        for dd, js in rows:
            out.write(" ".join(map(str, dd)) + f" {cfg.selector} {_text_from_json(js)}\n")
    return EXIT_OK


# -- main ------------------------------------------------------------------


def main(argv: Optional[Sequence[str]] = None, out=None) -> int:
    out = out or sys.stdout
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    buf = io.StringIO()
    try:
        cfg = config_from_args(args)
        if cfg.command == "invariant":
            code = run_invariant(cfg, buf)
        elif cfg.command == "verify":
            code = run_verify(cfg, buf)
        else:
            code = run_table(cfg, buf)
    except (UsageError, DomainError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    except IntegralityError as exc:
        out.write(buf.getvalue())
        print(f"integrality failure: {exc}", file=sys.stderr)
        return EXIT_FAIL
    out.write(buf.getvalue())
    return code


if __name__ == "__main__":
    sys.exit(main())
