"""Command-line front end.

Subcommands:

* ``catalog``   list entries, parameters, closed forms and expected classes
* ``mellin``    evaluate both Mellin transforms over an r grid, both routes,
                with the factorization check column R*I/Gamma
* ``classify``  m.i.d. / self-decomposability report for one entry
* ``simulate``  Monte Carlo perpetuity estimates over an r grid
* ``verify``    run the cross-check suite for one entry or the whole catalog

JSON is the canonical output format; CSV is a projection of the same rows in
the same field order.  Floating-point values are emitted at 17 significant
digits so round-trips are lossless.  Exit codes: 0 success, 1 check failure,
2 usage error, 3 numeric nonconvergence.  ``PERPETUA_THREADS`` caps the
thread fan-out over independent grid points.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import os
import sys
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from typing import Optional

import numpy as np

from . import kappa as ka
from . import mellin as ml
from . import montecarlo as mc
from . import verification as vf
from .families import catalog, get_entry
from .errors import (
    DomainError,
    NonconvergenceError,
    ParameterError,
    QuadratureError,
    ShapeError,
    UnsupportedError,
)

EXIT_OK = 0
EXIT_CHECK_FAILURE = 1
EXIT_USAGE = 2
EXIT_NONCONVERGENCE = 3


@dataclass(frozen=True)
class RunConfig:
    entry_id: Optional[str]
    command: str
    grid: tuple[float, ...] = ()
    tol: float = ml.DEFAULT_TOL
    n_samples: int = mc.DEFAULT_N
    dl: float = mc.DEFAULT_DL
    L: Optional[float] = None
    seed: int = 0
    fmt: str = "json"
    out: Optional[str] = None

    def __post_init__(self):
        if self.tol <= 0:
            raise ParameterError(f"tol must be positive, got {self.tol}")
        if self.grid == () and self.command in ("mellin", "simulate"):
            raise ParameterError("grid must contain at least one point")


def parse_grid(spec: str, log: bool = False) -> tuple[float, ...]:
    """Parse "start:stop:count" into a grid, geometric when ``log`` is set."""
    parts = spec.split(":")
    if len(parts) != 3:
        raise ParameterError(f"grid spec must be start:stop:count, got {spec!r}")
    start, stop = float(parts[0]), float(parts[1])
    count = int(parts[2])
    if count < 1:
        raise ParameterError(f"grid count must be >= 1, got {count}")
    if count == 1:
        return (start,)
    if log:
        if start <= 0 or stop <= 0:
            raise ParameterError("log grids need positive endpoints")
        return tuple(np.geomspace(start, stop, count))
    return tuple(np.linspace(start, stop, count))


def _f17(x) -> str:
    return format(float(x), ".17g")


def _json_ready(value):
    if isinstance(value, float):
        return float(_f17(value))
    if isinstance(value, (np.floating,)):
        return float(_f17(float(value)))
    if isinstance(value, (np.integer,)):
        return int(value)
    if isinstance(value, dict):
        return {k: _json_ready(v) for k, v in value.items()}
    if isinstance(value, (list, tuple)):
        return [_json_ready(v) for v in value]
    return value


def emit_rows(rows: list[dict], fmt: str, out: Optional[str]) -> None:
    """Write rows as a JSON array or as CSV in the same field order."""
    if fmt == "json":
        text = json.dumps([_json_ready(r) for r in rows], indent=2) + "\n"
    elif fmt == "csv":
        buf = io.StringIO()
        if rows:
            writer = csv.writer(buf, lineterminator="\n")
            writer.writerow(rows[0].keys())
            for row in rows:
                writer.writerow(
                    _f17(v) if isinstance(v, (float, np.floating)) else v
                    for v in row.values()
                )
        text = buf.getvalue()
    else:
        raise ParameterError(f"unknown format {fmt!r}")
    if out:
        with open(out, "w") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def _thread_map(fn, items):
    threads = int(os.environ.get("PERPETUA_THREADS", "1") or "1")
    if threads <= 1 or len(items) <= 1:
        return [fn(it) for it in items]
    with ThreadPoolExecutor(max_workers=threads) as pool:
        return list(pool.map(fn, items))


def cmd_catalog(args) -> int:
    entries = catalog()
    if args.filter:
        key = args.filter.lower()
        if key == "sigma":
            entries = [e for e in entries if e.function.is_in_sigma is True]
        elif key == "complete":
            entries = [e for e in entries if e.function.is_complete_bernstein is True]
        else:
            entries = [e for e in entries if e.id.startswith(key)]
    if args.json:
        emit_rows([e.describe() for e in entries], "json", args.out)
        return EXIT_OK
    lines = []
    for e in entries:
        ec = e.expected_classification
        known = ", ".join(
            s
            for s in (
                "closed R/I" if e.closed_R else None,
                "kappa" if e.closed_kappa else None,
                f"I ~ {e.known_law_I}" if e.known_law_I else None,
                f"R ~ {e.known_law_R}" if e.known_law_R else None,
            )
            if s
        )
        flags = f"sigma={e.function.is_in_sigma} complete={e.function.is_complete_bernstein}"
        expected = f"i_mid={ec.i_mid} logR_sd={ec.logR_sd} logI_sd={ec.logI_sd}"
        lines.append(f"{e.id:34s} {flags:32s} {expected:44s} {known}")
    text = "\n".join(lines) + "\n"
    if args.out:
        open(args.out, "w").write(text)
    else:
        sys.stdout.write(text)
    return EXIT_OK


def mellin_row(entry, r: float, tol: float) -> dict:
    f = entry.function
    r_prod = ml.R_product(f, r, tol)
    i_prod = ml.I_product(f, r, tol)
    row = {"r": r, "R_prod": r_prod.value, "R_int": None, "I_prod": i_prod.value,
           "I_int": None, "gamma_check": r_prod.value * i_prod.value / ml.gamma_fn(r)}
    if entry.closed_kappa is not None:
        kap = ka.kappa_for(entry)
        row["R_int"] = ka.R_integral(f, kap, r).value
        row["I_int"] = ka.I_integral(f, kap, r).value
    return row


def cmd_mellin(cfg: RunConfig) -> int:
    entry = get_entry(cfg.entry_id)
    rows = _thread_map(lambda r: mellin_row(entry, r, cfg.tol), list(cfg.grid))
    emit_rows(rows, cfg.fmt, cfg.out)
    return EXIT_OK


def cmd_classify(args) -> int:
    entry = get_entry(args.entry)
    report = ka.classify(entry)
    emit_rows([report.to_dict(entry.id)], args.format, args.out)
    return EXIT_OK


def cmd_simulate(cfg: RunConfig) -> int:
    entry = get_entry(cfg.entry_id)
    model = mc.model_for(entry)
    L = cfg.L if cfg.L is not None else mc.default_truncation(model, cfg.dl)
    rows = []
    for r in cfg.grid:
        est = mc.estimate_mellin_I(
            model, r, N=cfg.n_samples, dl=cfg.dl, L=L, seed=cfg.seed
        )
        rows.append(
            {
                "entry": entry.id,
                "r_or_n": r,
                "estimate": est.mean,
                "stderr": est.stderr,
                "bias_bound": est.bias_bound,
                "N": est.n_samples,
                "dl": cfg.dl,
                "L": est.truncation_L,
                "seed": est.seed,
            }
        )
    emit_rows(rows, cfg.fmt, cfg.out)
    return EXIT_OK


def cmd_verify(args) -> int:
    if args.all or args.entry is None:
        outcomes = vf.run_all(rtol=args.tol)
    else:
        outcomes = vf.run_global_checks() + vf.run_entry_checks(
            get_entry(args.entry), rtol=args.tol
        )
    rows = [o.to_dict() for o in outcomes]
    emit_rows(rows, args.format, args.out)
    failures = [o for o in outcomes if not o.passed]
    n = len(outcomes)
    print(f"{n - len(failures)}/{n} checks passed", file=sys.stderr)
    return EXIT_CHECK_FAILURE if failures else EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="perpetua",
        description="Mellin transforms, classification and Monte Carlo checks "
        "for subordinator perpetuities and remainders.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p_cat = sub.add_parser("catalog", help="list catalog entries")
    p_cat.add_argument("--json", action="store_true", help="machine-readable output")
    p_cat.add_argument("--filter", help="sigma | complete | id prefix")
    p_cat.add_argument("--out", help="write output to a file")

    p_mel = sub.add_parser("mellin", help="Mellin transforms over an r grid")
    p_mel.add_argument("entry", help="catalog entry id, e.g. stable:alpha=0.5")
    p_mel.add_argument("--grid", default="1:5:5", help="start:stop:count")
    p_mel.add_argument("--log-grid", action="store_true", help="geometric spacing")
    p_mel.add_argument("--tol", type=float, default=ml.DEFAULT_TOL)
    p_mel.add_argument("--format", choices=("json", "csv"), default="json")
    p_mel.add_argument("--out")

    p_cls = sub.add_parser("classify", help="distributional classification")
    p_cls.add_argument("entry")
    p_cls.add_argument("--format", choices=("json", "csv"), default="json")
    p_cls.add_argument("--out")

    p_sim = sub.add_parser("simulate", help="Monte Carlo perpetuity estimates")
    p_sim.add_argument("entry")
    p_sim.add_argument("--grid", default="2:2:1", help="r values start:stop:count")
    p_sim.add_argument("--log-grid", action="store_true")
    p_sim.add_argument("--n", type=int, default=mc.DEFAULT_N, help="sample count")
    p_sim.add_argument("--dl", type=float, default=mc.DEFAULT_DL)
    p_sim.add_argument("--L", type=float, default=None, help="truncation horizon")
    p_sim.add_argument("--seed", type=int, default=0)
    p_sim.add_argument("--format", choices=("json", "csv"), default="json")
    p_sim.add_argument("--out")

    p_ver = sub.add_parser("verify", help="run the cross-check suite")
    p_ver.add_argument("entry", nargs="?", help="catalog entry id")
    p_ver.add_argument("--all", action="store_true", help="verify every entry")
    p_ver.add_argument("--tol", type=float, default=1e-5)
    p_ver.add_argument("--format", choices=("json", "csv"), default="json")
    p_ver.add_argument("--out")
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        if args.command == "catalog":
            return cmd_catalog(args)
        if args.command == "mellin":
            cfg = RunConfig(
                entry_id=args.entry,
                command="mellin",
                grid=parse_grid(args.grid, args.log_grid),
                tol=args.tol,
                fmt=args.format,
                out=args.out,
            )
            return cmd_mellin(cfg)
        if args.command == "classify":
            return cmd_classify(args)
        if args.command == "simulate":
            cfg = RunConfig(
                entry_id=args.entry,
                command="simulate",
                grid=parse_grid(args.grid, args.log_grid),
                n_samples=args.n,
                dl=args.dl,
                L=args.L,
                seed=args.seed,
                fmt=args.format,
                out=args.out,
            )
            return cmd_simulate(cfg)
        if args.command == "verify":
            return cmd_verify(args)
        parser.error(f"unknown command {args.command!r}")
    except (ParameterError, DomainError, ShapeError, UnsupportedError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except (NonconvergenceError, QuadratureError) as exc:
        print(f"numeric nonconvergence: {exc}", file=sys.stderr)
        return EXIT_NONCONVERGENCE
    return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
