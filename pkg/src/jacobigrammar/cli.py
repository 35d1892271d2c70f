"""Command-line front end: expand, triangle, stats, series, verify.

Exit codes: 0 success / all checks pass, 1 a verification failed, 2 usage error.
"""
from __future__ import annotations

import argparse
import json
import multiprocessing as mp
import os
import sys
import time
from dataclasses import dataclass, fields, replace
from typing import Callable, List, Optional

from . import identities, numcheck, permstats, series, triangles
from .exactpoly import parse, to_text
from .grammar import NAMED_GRAMMARS, Grammar, OperatorSpec, iterate_all
from .report import VerificationReport

FORMATS = ("json", "csv", "pretty")


class UsageError(Exception):
    pass


@dataclass
class RunConfig:
    nmax: Optional[int] = None
    tol: float = 1e-8
    rk_steps: int = 256
    samples: int = 5
    seed: int = 0
    order: int = 12
    timeout: float = 300.0
    format: str = "pretty"

    def validate(self):
        if self.tol <= 0:
            raise UsageError("tolerance must be positive")
        if self.rk_steps < 64:
            raise UsageError("rk_steps must be >= 64")
        if self.format not in FORMATS:
            raise UsageError(f"format must be one of {FORMATS}")
        return self


def load_config(path: str) -> RunConfig:
    """key=value lines; '#' starts a comment."""
    cfg = RunConfig()
    types = {f.name: f.type for f in fields(RunConfig)}
    try:
        lines = open(path, encoding="utf-8").read().splitlines()
    except OSError as exc:
        raise UsageError(f"cannot read config {path}: {exc}") from None
    updates = {}
    for lineno, line in enumerate(lines, 1):
        line = line.split("#", 1)[0].strip()
        if not line:
            continue
        if "=" not in line:
            raise UsageError(f"{path}:{lineno}: expected key=value")
        key, value = (s.strip() for s in line.split("=", 1))
        key = key.replace("-", "_")
        if key not in types:
            raise UsageError(f"{path}:{lineno}: unknown key {key!r}")
        try:
            updates[key] = value if key == "format" else (float(value) if key in ("tol", "timeout") else int(value))
        except ValueError:
            raise UsageError(f"{path}:{lineno}: bad value for {key}: {value!r}") from None
    return replace(cfg, **updates).validate()


def _emit(text: str):
    sys.stdout.write(text if text.endswith("\n") else text + "\n")


def _dump(obj) -> str:
    return json.dumps(obj, indent=2, sort_keys=False)


# ---------------------------------------------------------------- subcommands

def cmd_expand(args, cfg: RunConfig) -> int:
    if args.rules:
        try:
            g = Grammar.from_string(args.rules)
        except ValueError as exc:
            raise UsageError(f"bad grammar: {exc}") from None
    else:
        g = NAMED_GRAMMARS[args.grammar]()
    try:
        seed = parse(args.start, g.ring)
    except (ValueError, KeyError) as exc:
        raise UsageError(f"bad start polynomial: {exc}") from None
    op = OperatorSpec(args.op, g, seed, args.multiplier)
    seq = iterate_all(op, args.n)
    levels = range(args.n + 1) if args.all else [args.n]
    fmt = cfg.format
    if fmt == "json":
        _emit(_dump({"grammar": str(g), "op": args.op, "start": to_text(seed),
                     "levels": [{"n": k, "terms": seq[k].to_json()} for k in levels]}))
    elif fmt == "csv":
        rows = ["n,exponents,coef"]
        for k in levels:
            for exps, c in seq[k].sorted_terms():
                rows.append(f"{k},{' '.join(map(str, exps))},{c}")
        _emit("\n".join(rows))
    else:
        name = {"D": "D", "xD": "(xD)", "Dx": "(Dx)"}[args.op]
        for k in levels:
            _emit(f"{name}^{k}({to_text(seed)}) = {to_text(seq[k])}")
    return 0


def cmd_triangle(args, cfg: RunConfig) -> int:
    n_max = args.nmax if args.nmax is not None else (cfg.nmax or 8)
    if n_max < 0:
        raise UsageError("--nmax must be >= 0")
    methods = ("grammar", "recurrence") if args.method == "both" else (args.method,)
    tabs = [triangles.get_triangle(args.name, n_max, m) for m in methods]
    status = 0
    if len(tabs) == 2 and not tabs[0].same_entries(tabs[1]):
        sys.stderr.write(f"methods disagree: {tabs[0].first_difference(tabs[1])}\n")
        status = 1
    tr = tabs[0]
    if len(tabs) == 2:
        tr = replace(tr, provenance="grammar+recurrence" if status == 0 else "grammar (recurrence disagrees)")
    if cfg.format == "json":
        _emit(_dump(tr.to_json()))
    elif cfg.format == "csv":
        _emit(tr.to_csv())
    else:
        lo = 0 if args.level is None else args.level
        hi = n_max if args.level is None else args.level
        _emit("\n\n".join(tr.pretty(n) for n in range(lo, hi + 1)))
    return status


def cmd_stats(args, cfg: RunConfig) -> int:
    fn = permstats.STATISTICS[args.statistic]
    try:
        table = fn(args.n, backend=args.backend) if args.backend else fn(args.n)
    except permstats.EnumerationBoundError as exc:
        raise UsageError(str(exc)) from None
    except ValueError as exc:
        raise UsageError(str(exc)) from None
    if cfg.format == "json":
        _emit(_dump(table.to_json()))
    elif cfg.format == "csv":
        rows = ["k,count"] + [f"{'/'.join(map(str, k)) if isinstance(k, tuple) else k},{v}"
                              for k, v in sorted(table.counts.items())]
        _emit("\n".join(rows))
    else:
        _emit(f"{table.statistic} over n={table.n} (total {table.total()})")
        for k, v in sorted(table.counts.items()):
            _emit(f"  {k}: {v}")
    return 0


def cmd_series(args, cfg: RunConfig) -> int:
    order = args.order if args.order is not None else cfg.order
    if order < 0:
        raise UsageError("--order must be >= 0")
    if args.function == "J":
        polys = series.j_polynomials(order)
        if cfg.format == "json":
            _emit(_dump({"order": order, "ring": ["k2"], "J": {str(n): str(p) for n, p in polys.items()}}))
        else:
            for n, p in polys.items():
                _emit(f"J_{n}(k2) = {p}")
        return 0
    triple = series.jacobi_classical(order) if args.ring == "classical" else series.jacobi_two_param(order)
    fps = triple[("sn", "cn", "dn").index(args.function)]
    if cfg.format == "json":
        out = fps.to_json()
        out["function"] = args.function
        _emit(_dump(out))
    elif cfg.format == "csv":
        _emit("\n".join(["m,coefficient"] + [f"{m},{c}" for m, c in enumerate(fps.coeffs)]))
    else:
        for m, c in enumerate(fps.coeffs):
            if c:
                _emit(f"[u^{m}/{m}!] {c}")
    return 0


# ---------------------------------------------------------------- verify

def _catalogue() -> List[str]:
    return list(identities.REGISTRY) + list(numcheck.CLOSED_FORMS) + ["rk4-order"]


def _numeric_job(case_id: str, cfg: RunConfig) -> Callable[[], VerificationReport]:
    if case_id == "rk4-order":
        def job():
            t0 = time.perf_counter()
            ratio = numcheck.rk4_order_ratio()
            ok = 12 <= ratio <= 20
            return VerificationReport("rk4-order", (64, 128), ok, None if ok else {"ratio": ratio},
                                      time.perf_counter() - t0, {"ratio": ratio})
        return job

    def job():
        numcheck.MIN_STEPS = cfg.rk_steps
        return numcheck.compare(case_id, cfg.order, cfg.samples, cfg.tol, cfg.seed)
    return job


def _identity_job(case_id: str, cfg: RunConfig) -> Callable[[], VerificationReport]:
    return lambda: identities.run_case(case_id, cfg.nmax)


def _job(case_id: str, cfg: RunConfig):
    if case_id in identities.REGISTRY:
        return _identity_job(case_id, cfg)
    return _numeric_job(case_id, cfg)


def _child(job, conn):
    try:
        conn.send(("ok", job()))
    except BaseException as exc:  # reported, not raised, in the parent
        conn.send(("error", f"{type(exc).__name__}: {exc}"))
    finally:
        conn.close()


def _error_report(case_id: str, reason: str, elapsed: float) -> VerificationReport:
    return VerificationReport(case_id, (0, 0), False, {"reason": reason}, elapsed)


def run_cases(ids: List[str], cfg: RunConfig, workers: int = 1) -> List[VerificationReport]:
    """Run cases in forked workers with a per-case timeout; results keep input order."""
    jobs = [(cid, _job(cid, cfg)) for cid in ids]
    if cfg.timeout <= 0 or "fork" not in mp.get_all_start_methods():
        return [job() for _, job in jobs]
    ctx = mp.get_context("fork")
    results: dict = {}
    pending = list(enumerate(jobs))
    running = []
    while pending or running:
        while pending and len(running) < workers:
            idx, (cid, job) = pending.pop(0)
            recv, send = ctx.Pipe(duplex=False)
            proc = ctx.Process(target=_child, args=(job, send), daemon=True)
            proc.start()
            send.close()
            running.append((idx, cid, proc, recv, time.monotonic()))
        still = []
        for idx, cid, proc, recv, started in running:
            elapsed = time.monotonic() - started
            if recv.poll(0.01):
                try:
                    kind, payload = recv.recv()
                except EOFError:
                    kind, payload = "error", "worker exited without a result"
                results[idx] = payload if kind == "ok" else _error_report(cid, payload, elapsed)
                proc.join()
            elif not proc.is_alive():
                results[idx] = _error_report(cid, f"worker died (exit code {proc.exitcode})", elapsed)
            elif elapsed > cfg.timeout:
                proc.terminate()
                proc.join()
                results[idx] = _error_report(cid, f"timeout after {cfg.timeout:g}s", elapsed)
            else:
                still.append((idx, cid, proc, recv, started))
        running = still
    return [results[i] for i in range(len(jobs))]


def _summary_json(rep: VerificationReport) -> dict:
    out = rep.to_json()
    if rep.id in numcheck.CLOSED_FORMS:
        out["samples"] = rep.details.get("samples")
        out["worst_rel_err"] = rep.details.get("worst_rel_err")
    return out


def cmd_verify(args, cfg: RunConfig) -> int:
    if args.list:
        for cid in _catalogue():
            _emit(cid)
        return 0
    if not args.id:
        raise UsageError("verify needs --id (or --list)")
    ids: List[str] = []
    for cid in args.id:
        if cid == "all":
            ids.extend(_catalogue())
        elif cid in identities.REGISTRY or cid == "rk4-order":
            ids.append(cid)
        elif cid in numcheck.CLOSED_FORMS or cid in numcheck.GROUPS:
            ids.extend(numcheck.expand_ids([cid]))
        else:
            raise UsageError(f"unknown id {cid!r}; see `verify --list`")
    reports = run_cases(ids, cfg, permstats._workers())
    if cfg.format == "json":
        _emit(_dump([_summary_json(r) for r in reports]))
    elif cfg.format == "csv":
        rows = ["id,status,range_lo,range_hi,elapsed"]
        rows += [f"{r.id},{r.status},{r.range[0]},{r.range[1]},{r.elapsed:.3f}" for r in reports]
        _emit("\n".join(rows))
    else:
        for r in reports:
            _emit(r.line())
        bad = sum(not r.passed for r in reports)
        _emit(f"{len(reports) - bad}/{len(reports)} passed")
    return 0 if all(r.passed for r in reports) else 1


# ---------------------------------------------------------------- parser

class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        raise UsageError(message)


def build_parser() -> argparse.ArgumentParser:
    common = _Parser(add_help=False)
    common.add_argument("--format", choices=FORMATS, default=argparse.SUPPRESS,
                        help="output format (default: pretty)")
    common.add_argument("--config", default=argparse.SUPPRESS, help="key=value file overriding run defaults")

    p = _Parser(prog="jacobigrammar", description=__doc__.splitlines()[0], parents=[common])
    sub = p.add_subparsers(dest="command", parser_class=_Parser)

    e = sub.add_parser("expand", parents=[common], help="iterate a grammar derivation")
    g = e.add_mutually_exclusive_group()
    g.add_argument("--grammar", choices=sorted(NAMED_GRAMMARS), default="schett")
    g.add_argument("--rules", help="grammar literal, e.g. 'x->y*z; y->x*z; z->x*y'")
    e.add_argument("--op", choices=("D", "xD", "Dx"), default="D")
    e.add_argument("--start", default="x", help="seed polynomial")
    e.add_argument("--multiplier", default="x", help="variable multiplied in xD / Dx")
    e.add_argument("--n", type=int, required=True)
    e.add_argument("--all", action="store_true", help="print every level 0..n")
    e.set_defaults(func=cmd_expand)

    t = sub.add_parser("triangle", parents=[common], help="coefficient triangle s,a,b,c,d,t,r")
    t.add_argument("--name", choices=triangles.NAMES, required=True)
    t.add_argument("--method", choices=("grammar", "recurrence", "both"), default="grammar")
    t.add_argument("--nmax", type=int)
    t.add_argument("--level", type=int, help="pretty format: show only this level")
    t.set_defaults(func=cmd_triangle)

    s = sub.add_parser("stats", parents=[common], help="brute-force statistic distribution")
    s.add_argument("--statistic", choices=sorted(permstats.STATISTICS), required=True)
    s.add_argument("--n", type=int, required=True)
    s.add_argument("--backend", choices=sorted(permstats.BACKENDS))
    s.set_defaults(func=cmd_stats)

    r = sub.add_parser("series", parents=[common], help="sn/cn/dn power series or J polynomials")
    r.add_argument("--function", choices=("sn", "cn", "dn", "J"), required=True)
    r.add_argument("--order", type=int)
    r.add_argument("--ring", choices=("classical", "two-param"), default="classical")
    r.set_defaults(func=cmd_series)

    v = sub.add_parser("verify", parents=[common], help="run identity / closed-form checks")
    v.add_argument("--id", action="append", help="case id, group, or 'all' (repeatable)")
    v.add_argument("--list", action="store_true")
    v.add_argument("--nmax", type=int)
    v.add_argument("--order", type=int)
    v.add_argument("--samples", type=int)
    v.add_argument("--tol", type=float)
    v.add_argument("--seed", type=int)
    v.add_argument("--rk-steps", type=int)
    v.add_argument("--timeout", type=float, help="per-case seconds; 0 disables (default 300)")
    v.set_defaults(func=cmd_verify)
    return p


def _merge_cli(cfg: RunConfig, args) -> RunConfig:
    updates = {}
    for key in ("format", "nmax", "order", "samples", "tol", "seed", "rk_steps", "timeout"):
        val = getattr(args, key, None)
        if val is not None:
            updates[key] = val
    return replace(cfg, **updates).validate()


def main(argv: Optional[List[str]] = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
        if not getattr(args, "command", None):
            parser.print_help(sys.stderr)
            return 2
        config = getattr(args, "config", None) or os.environ.get("JACOBIGRAMMAR_CONFIG")
        cfg = load_config(config) if config else RunConfig()
        cfg = _merge_cli(cfg, args)
        return args.func(args, cfg)
    except UsageError as exc:
        sys.stderr.write(f"jacobigrammar: error: {exc}\n")
        return 2


if __name__ == "__main__":
    sys.exit(main())
