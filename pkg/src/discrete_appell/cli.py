"""Command-line interface: ``appell3 {eval,check,list,table}``.

Exit codes: 0 success, 1 failing identity, 2 divergence, 64 usage error,
65 invalid parameters or malformed panel.  ``APPELL_MAX_TERMS`` sets both
lattice caps; explicit ``--max-m``/``--max-n`` flags take precedence.
"""
from __future__ import annotations

import argparse
import csv
import io
import itertools
import os
import sys
from dataclasses import dataclass, field
from typing import Optional

import numpy as np

from .catalog import (
    GROUPS,
    SuiteReport,
    default_panel,
    dumps_canonical,
    exact_panel,
    format_scalar,
    list_identities,
    panel_from_json,
    run_suite,
)
from .errors import AppellError, DivergenceDetected, PoleError, ValidityError
from .integrals import REPS
from .numerics import nonnegative_integer, parse_scalar
from .series import DEFAULT_POLICY, KdFSpec, Params1, Params2, Point, TruncationPolicy, eval_1f0_disc, evaluate

__all__ = ["main", "CliConfig", "FUNCTIONS", "EXIT_OK", "EXIT_FAIL", "EXIT_DIVERGED", "EXIT_USAGE", "EXIT_DOMAIN"]

EXIT_OK = 0
EXIT_FAIL = 1
EXIT_DIVERGED = 2
EXIT_USAGE = 64
EXIT_DOMAIN = 65

FUNCTIONS = ("f3", "f3d1", "f3d2", "kdf", "xi11", "xi21", "xi12", "xi22", "1f0d")
FORMATS = ("json", "csv", "plain")

SCALAR_FLAGS = ("a1", "a2", "b1", "b2", "c", "t1", "t2", "t", "a", "x", "y")
INT_FLAGS = ("k1", "k2", "k")
LIST_FLAGS = ("A", "B", "C", "D", "E", "F")

# parameters each function reads; the rest are rejected
_USES = {
    "f3": ("a1", "a2", "b1", "b2", "c"),
    "f3d1": ("a1", "a2", "b1", "b2", "c", "t1", "t2", "k1", "k2"),
    "f3d2": ("a1", "a2", "b1", "b2", "c", "t", "k"),
    "xi11": ("a1", "a2", "b1", "c", "t1", "t2", "k1", "k2"),
    "xi21": ("a1", "b1", "c", "t1", "t2", "k1", "k2"),
    "xi12": ("a1", "a2", "b1", "c", "t", "k"),
    "xi22": ("a1", "b1", "c", "t", "k"),
    "kdf": LIST_FLAGS,
    "1f0d": ("a", "t", "k"),
}
_UPPER_LOWER = ("a1", "a2", "b1", "b2", "c")


class UsageError(Exception):
    pass


class DomainError(Exception):
    pass


@dataclass
class CliConfig:
    """Parsed command line."""

    subcommand: str
    function: Optional[str] = None
    params: dict = field(default_factory=dict)
    policy: TruncationPolicy = DEFAULT_POLICY
    fmt: str = "plain"
    group: str = "all"
    ids: Optional[list] = None
    panel_path: Optional[str] = None
    exact: bool = False
    sweeps: list = field(default_factory=list)


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(message)


# ---------------------------------------------------------------------------
# parsing


def _scalar_arg(text):
    try:
        return parse_scalar(text)
    except (ValueError, ZeroDivisionError) as exc:
        raise argparse.ArgumentTypeError(f"not a scalar: {text!r}") from exc


def _list_arg(text):
    if text.strip() == "":
        return ()
    return tuple(_scalar_arg(s) for s in text.split(","))


def _int_like(text):
    v = _scalar_arg(text)
    n = nonnegative_integer(v, 0.0)
    if n is None:
        raise DomainError(f"expected a nonnegative integer, got {text!r}")
    return n


def _add_params(p):
    for name in SCALAR_FLAGS:
        p.add_argument(f"--{name}", type=_scalar_arg, metavar="Z")
    for name in INT_FLAGS:
        p.add_argument(f"--{name}", metavar="N")
    for name in LIST_FLAGS:
        p.add_argument(f"--{name}", type=_list_arg, metavar="Z,Z,..", help=f"Kampe de Feriet list {name}")
    p.add_argument("--max-m", type=int)
    p.add_argument("--max-n", type=int)
    p.add_argument("--tol", type=float)
    p.add_argument("--window", type=int, help="divergence window (anti-diagonals)")


def _add_format(p):
    g = p.add_mutually_exclusive_group()
    g.add_argument("--format", choices=FORMATS)
    for f in FORMATS:
        g.add_argument(f"--{f}", dest="format", action="store_const", const=f)


def _parser():
    top = _Parser(prog="appell3", description="Discrete Appell F3 evaluation and identity checks.")
    sub = top.add_subparsers(dest="subcommand", required=True, parser_class=_Parser)

    ev = sub.add_parser("eval", help="evaluate one function at one point")
    ev.add_argument("function", choices=FUNCTIONS)
    _add_params(ev)
    _add_format(ev)

    ch = sub.add_parser("check", help="run identity suites on a panel")
    ch.add_argument("--group", default="all", choices=("all",) + GROUPS)
    ch.add_argument("--id", dest="ids", action="append", metavar="ID")
    ch.add_argument("--panel", dest="panel_path", metavar="PATH")
    ch.add_argument("--exact", action="store_true", help="exact rational arithmetic on the exact panel")
    ch.add_argument("--max-m", type=int)
    ch.add_argument("--max-n", type=int)
    ch.add_argument("--tol", type=float)
    ch.add_argument("--window", type=int)
    _add_format(ch)

    ls = sub.add_parser("list", help="list identities or integral representations")
    ls.add_argument("--group", default="all", choices=("all",) + GROUPS)
    ls.add_argument("--integrals", action="store_true")
    _add_format(ls)

    tb = sub.add_parser("table", help="evaluate on a grid of at most two swept parameters")
    tb.add_argument("function", choices=FUNCTIONS)
    tb.add_argument("--sweep", action="append", default=[], metavar="NAME=V1,V2,..|NAME=LO:HI:N")
    _add_params(tb)
    _add_format(tb)
    return top


def _policy(ns, env):
    caps = {}
    raw = env.get("APPELL_MAX_TERMS")
    if raw is not None:
        try:
            cap = int(raw)
        except ValueError:
            raise UsageError(f"APPELL_MAX_TERMS must be an integer, got {raw!r}") from None
        caps = dict(max_m=cap, max_n=cap)
    for flag, name in (("max_m", "max_m"), ("max_n", "max_n"), ("tol", "tol"), ("window", "divergence_window")):
        v = getattr(ns, flag, None)
        if v is not None:
            caps[name] = v
    try:
        return TruncationPolicy(**{**DEFAULT_POLICY.__dict__, **caps})
    except ValueError as exc:
        raise UsageError(str(exc)) from None


def _collect_params(ns):
    out = {}
    for name in SCALAR_FLAGS + LIST_FLAGS:
        v = getattr(ns, name, None)
        if v is not None and name not in ("x", "y"):
            out[name] = v
    for name in INT_FLAGS:
        v = getattr(ns, name, None)
        if v is not None:
            out[name] = v
    return out


def _sweep_values(text):
    if "=" not in text:
        raise UsageError(f"sweep must look like NAME=values, got {text!r}")
    name, spec = text.split("=", 1)
    name = name.strip()
    if name not in SCALAR_FLAGS + INT_FLAGS:
        raise UsageError(f"cannot sweep {name!r}")
    if ":" in spec:
        parts = spec.split(":")
        if len(parts) != 3:
            raise UsageError(f"range sweep must be LO:HI:N, got {spec!r}")
        try:
            lo, hi, n = float(parts[0]), float(parts[1]), int(parts[2])
        except ValueError:
            raise UsageError(f"bad range {spec!r}") from None
        if n < 1:
            raise UsageError("range needs at least one point")
        values = [str(v) for v in np.linspace(lo, hi, n)]
    else:
        values = [s for s in spec.split(",") if s.strip()]
    if not values:
        raise UsageError(f"empty sweep for {name!r}")
    try:
        parsed = [_int_like(v) if name in INT_FLAGS else parse_scalar(v) for v in values]
    except (ValueError, ZeroDivisionError):
        raise UsageError(f"bad sweep value in {spec!r}") from None
    return name, parsed


def parse_args(argv, env=None) -> tuple:
    """Return ``(CliConfig, namespace)``; raises :class:`UsageError`."""
    env = os.environ if env is None else env
    ns = _parser().parse_args(argv)
    cfg = CliConfig(ns.subcommand, fmt=ns.format or "plain")
    if ns.subcommand in ("eval", "table"):
        cfg.function = ns.function
        cfg.params = _collect_params(ns)
        cfg.policy = _policy(ns, env)
        cfg.params["x"], cfg.params["y"] = ns.x, ns.y
    if ns.subcommand == "table":
        cfg.sweeps = [_sweep_values(s) for s in ns.sweep]
        names = [n for n, _ in cfg.sweeps]
        if not names or len(names) > 2 or len(set(names)) != len(names):
            raise UsageError("table needs one or two distinct --sweep axes")
        # x is always the outer axis
        cfg.sweeps.sort(key=lambda s: s[0] != "x")
    if ns.subcommand == "check":
        cfg.group, cfg.ids, cfg.panel_path, cfg.exact = ns.group, ns.ids, ns.panel_path, ns.exact
        cfg.policy = _policy(ns, env)
    if ns.subcommand == "list":
        cfg.group = ns.group
        cfg.params = {"integrals": ns.integrals}
    return cfg, ns


# ---------------------------------------------------------------------------
# evaluation


def _build(function, values):
    """Turn flag values into ``(callable, description)``; raises Usage/Domain errors."""
    uses = _USES[function]
    given = {k for k, v in values.items() if v is not None and k not in ("x", "y")}
    extra = given - set(uses)
    if extra:
        raise UsageError(f"{function} does not take {', '.join('--' + e for e in sorted(extra))}")
    if values.get("x") is None:
        raise UsageError("--x is required")
    if function == "1f0d" and values.get("y") is not None:
        raise UsageError("1f0d takes only --x")
    kw = {}
    for name in uses:
        v = values.get(name)
        if name in INT_FLAGS:
            kw[name] = 0 if v is None else (v if isinstance(v, int) else _int_like(v))
        elif name in LIST_FLAGS:
            kw[name] = v or ()
        else:
            kw[name] = v
    x = values["x"]
    y = values.get("y") or 0
    if function == "kdf":
        spec = KdFSpec(**kw)
        return lambda pol: evaluate("kdf", spec, Point(x, y), pol)
    if function == "1f0d":
        if kw["a"] is None:
            raise UsageError("1f0d needs --a")
        t = kw["t"] if kw["t"] is not None else 0
        return lambda pol: eval_1f0_disc(kw["a"], t, kw["k"], x, pol)
    missing = [n for n in uses if n in _UPPER_LOWER and kw.get(n) is None]
    if missing:
        raise UsageError(f"{function} needs {', '.join('--' + m for m in missing)}")
    base = dict.fromkeys(_UPPER_LOWER, 0)
    base.update({k: v for k, v in kw.items() if v is not None})
    cls = Params2 if function in ("f3d2", "xi12", "xi22") else Params1
    fields = cls.__dataclass_fields__
    p = cls(**{k: v for k, v in base.items() if k in fields})
    return lambda pol: evaluate(function, p, Point(x, y), pol)


def _run_eval(function, values, pol):
    """Return ``(record, exit_code)`` for one evaluation."""
    call = _build(function, values)
    try:
        ev = call(pol)
    except DivergenceDetected as exc:
        return {"status": "diverged", "message": str(exc), "diagonals": exc.diagonals,
                "partial": format_scalar(exc.partial)}, EXIT_DIVERGED
    except (PoleError, ValidityError, TypeError) as exc:
        raise DomainError(str(exc)) from exc
    except ValueError as exc:
        raise DomainError(str(exc)) from exc
    z = complex(ev.value)
    status = "terminated" if ev.terminated else ("converged" if ev.converged else "truncated")
    return {"status": status, "re": z.real, "im": z.imag, "value": format_scalar(z), "terms_used": ev.terms_used,
            "terminated": ev.terminated, "converged": ev.converged, "est_error": ev.est_error}, EXIT_OK


_EVAL_FIELDS = ("status", "re", "im", "value", "terms_used", "terminated", "converged", "est_error")


def _csv(rows, header):
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(header)
    for r in rows:
        w.writerow(["" if r.get(h) is None else _cell(r.get(h)) for h in header])
    return buf.getvalue()


def _cell(v):
    if isinstance(v, bool):
        return "true" if v else "false"
    if isinstance(v, float):
        return "%.17g" % v
    return str(v)


def cmd_eval(cfg, out):
    rec, code = _run_eval(cfg.function, cfg.params, cfg.policy)
    rec = {"function": cfg.function, **rec}
    if cfg.fmt == "json":
        out.write(dumps_canonical(rec) + "\n")
    elif cfg.fmt == "csv":
        header = ["function"] + [f for f in (*_EVAL_FIELDS, "message", "diagonals", "partial") if f in rec]
        out.write(_csv([rec], header))
    else:
        for k, v in rec.items():
            out.write(f"{k}: {_cell(v)}\n")
    return code


def _label(v):
    if isinstance(v, (int, str)):
        return v
    z = complex(v)
    return z.real if z.imag == 0 else format_scalar(z)


def cmd_table(cfg, out):
    names = [n for n, _ in cfg.sweeps]
    rows = []
    code = EXIT_OK
    for combo in itertools.product(*(vals for _, vals in cfg.sweeps)):
        values = dict(cfg.params)
        values.update(zip(names, combo))
        rec, c = _run_eval(cfg.function, values, cfg.policy)
        code = max(code, c)
        rows.append({**{n: _label(v) for n, v in zip(names, combo)}, **rec})
    if cfg.fmt == "json":
        out.write(dumps_canonical({"function": cfg.function, "axes": names,
                                   "shape": [len(v) for _, v in cfg.sweeps], "cells": rows}) + "\n")
    else:
        header = names + ["status", "re", "im", "terms_used", "terminated", "converged", "est_error"]
        text = _csv(rows, header)
        out.write(text if cfg.fmt == "csv" else text.replace(",", "\t"))
    return code


def _load_panel(cfg):
    if cfg.panel_path is None:
        return exact_panel() if cfg.exact else default_panel()
    try:
        with open(cfg.panel_path, encoding="utf-8") as fh:
            text = fh.read()
    except OSError as exc:
        raise DomainError(f"cannot read panel: {exc}") from exc
    try:
        return panel_from_json(text)
    except ValidityError as exc:
        raise DomainError(f"malformed panel: {exc}") from exc


def cmd_check(cfg, out):
    panel = _load_panel(cfg)
    chosen = [i.id for i in list_identities(cfg.group)]
    if cfg.ids:
        unknown = set(cfg.ids) - {i.id for i in list_identities()}
        if unknown:
            raise UsageError(f"unknown identity id(s) {sorted(unknown)}")
        chosen = [i for i in chosen if i in set(cfg.ids)]
    reports = []
    if cfg.fmt == "csv":
        out.write("identity_id,group,passed,max_rel,tol,n_cases,printed_max_rel\n")
    # one identity at a time so plain and csv output stream in catalog order
    for ident in chosen:
        rep = run_suite(panel, "all", cfg.policy, exact_mode=cfg.exact, ids=[ident])
        for r in rep.identities:
            reports.append(r)
            if not r.cases:
                continue
            if cfg.fmt == "plain":
                flag = "PASS" if r.passed else "FAIL"
                out.write(f"{flag} {r.identity.id:<8} max_rel={r.max_rel:.3e} cases={len(r.cases)}\n")
            elif cfg.fmt == "csv":
                pr = "" if r.printed_max_rel is None else "%.17g" % r.printed_max_rel
                out.write(f"{r.identity.id},{r.identity.group},{_cell(r.passed)},{_cell(float(r.max_rel))},"
                          f"{_cell(float(r.identity.tol))},{len(r.cases)},{pr}\n")
            out.flush()
    report = SuiteReport(reports, cfg.exact)
    if report.n_cases == 0:
        if cfg.fmt == "json":
            out.write(dumps_canonical({"status": "no cases", **report.to_dict()}) + "\n")
        else:
            out.write("no cases\n")
        return EXIT_OK
    if cfg.fmt == "json":
        out.write(report.to_json() + "\n")
    elif cfg.fmt == "plain":
        n_fail = len(report.failures)
        out.write(f"{len(reports) - n_fail}/{len(reports)} identities pass, {report.n_cases} cases\n")
    return EXIT_OK if report.passed else EXIT_FAIL


def cmd_list(cfg, out):
    if cfg.params.get("integrals"):
        rows = [{"rep_id": r.rep_id, "variant": r.variant, "domain": r.domain,
                 "validity": "; ".join(r.validity)} for r in REPS]
        header = ["rep_id", "variant", "domain", "validity"]
    else:
        rows = [{"identity_id": i.id, "group": i.group, "family": i.family, "tol": i.tol,
                 "equation": i.formula} for i in list_identities(cfg.group)]
        header = ["identity_id", "group", "family", "tol", "equation"]
    if cfg.fmt == "json":
        out.write(dumps_canonical(rows) + "\n")
    elif cfg.fmt == "csv":
        out.write(_csv(rows, header))
    else:
        for r in rows:
            out.write("  ".join(f"{r[h]:g}" if isinstance(r[h], float) else str(r[h]) for h in header) + "\n")
    return EXIT_OK


_COMMANDS = {"eval": cmd_eval, "check": cmd_check, "list": cmd_list, "table": cmd_table}


def main(argv=None, out=None, err=None, env=None) -> int:
    out = sys.stdout if out is None else out
    err = sys.stderr if err is None else err
    try:
        cfg, _ = parse_args(sys.argv[1:] if argv is None else argv, env)
        return _COMMANDS[cfg.subcommand](cfg, out)
    except UsageError as exc:
        err.write(f"appell3: usage error: {exc}\n")
        return EXIT_USAGE
    except DomainError as exc:
        err.write(f"appell3: invalid input: {exc}\n")
        return EXIT_DOMAIN
    except AppellError as exc:
        err.write(f"appell3: invalid input: {exc}\n")
        return EXIT_DOMAIN
    except SystemExit as exc:
        # --help
        return int(exc.code or 0)


if __name__ == "__main__":
    sys.exit(main())
