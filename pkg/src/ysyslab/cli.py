"""Command line front end: ``ysyslab <command> [options]``.

Exit status is 0 when every report passes, 1 when any fails and 2 on a usage,
parse or budget error.
"""
from __future__ import annotations

import argparse
import csv
import io
import json
import sys
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field

from . import __version__
from .cluster.frame import budget_rr
from .cluster.seed import make_pair
from .cluster.verify import NUMERIC_REL_TOL, numeric_frame, verify_cross_backend, verify_f_polynomials, \
    verify_periodicity, verify_y_system
from .constant import constant_frame_bridge, solve_constant, verify_level_identity
from .dilog import CONSTANCY_TOL, DOMAINS, IDENTITY_TOL, verify_constancy, verify_identities, zero_infinity_limit
from .errors import BudgetExceeded, ConvergenceError, DiagramError
from .report import Report
from .semifield import random_assignment
from .tropical import sign_counts, verify_dvector_factorization, verify_sign_regions
from .wedge import verify_duality, wedge_vanishing

COMMANDS = ("tropical", "periodicity", "dilog", "constancy", "limit", "wedge", "constant", "all")
SUITE_CHECKS = ("tropical", "periodicity", "dilog", "constancy", "limit", "wedge")
DEFAULT_SUITE = [f"{a}x{b}" for a in ("A1", "A2", "A3", "A4", "D4") for b in ("A1", "A2", "A3")]


@dataclass
class RunConfig:
    command: str
    pairs: list[str] = field(default_factory=list)
    type: str | None = None
    level: int | None = None
    samples: int = 5
    tol: float | None = None
    seed: int = 0
    budget_rr: int | None = None
    domain: str | None = None
    symbolic: bool = False
    workers: int = 1
    out: str | None = None
    format: str = "json"

    def __post_init__(self):
        if self.command not in COMMANDS:
            raise ValueError(f"unknown command {self.command!r}")
        if self.tol is not None and not self.tol > 0:
            raise ValueError("--tol must be positive")
        if self.samples < 1:
            raise ValueError("--samples must be at least 1")
        for p in self.pairs:
            make_pair(p)

    def max_rr(self) -> int:
        return budget_rr() if self.budget_rr is None else self.budget_rr


# -- single checks ------------------------------------------------------------------


def _tropical(pair, cfg):
    return [sign_counts(pair).to_report(), verify_sign_regions(pair), verify_dvector_factorization(pair)]


def _periodicity(pair, cfg):
    tol = cfg.tol or NUMERIC_REL_TOL
    out = [
        verify_periodicity(pair, "tropical"),
        verify_periodicity(pair, "numeric", trials=cfg.samples, seed=cfg.seed, tol=tol),
    ]
    import numpy as np

    P = make_pair(pair)
    a = random_assignment(P.n, np.random.default_rng(cfg.seed))
    out.append(verify_y_system(numeric_frame(P, a, -P.period, P.period), tol=tol))
    if cfg.symbolic:
        out += [
            verify_periodicity(pair, "rational", max_rr=cfg.max_rr()),
            verify_cross_backend(pair, max_rr=cfg.max_rr()),
            verify_f_polynomials(pair, max_rr=cfg.max_rr()),
        ]
    return out


def _dilog(pair, cfg):
    reps, comp = verify_identities(pair, cfg.samples, tol=cfg.tol or IDENTITY_TOL, seed=cfg.seed)
    out = [r.to_report() for r in reps if cfg.domain in (None, r.domain)]
    return out + [comp]


def _constancy(pair, cfg):
    return [verify_constancy(pair, max(cfg.samples, 2), seed=cfg.seed, tol=cfg.tol or CONSTANCY_TOL)]


def _limit(pair, cfg):
    return [zero_infinity_limit(pair, tol=cfg.tol or 1e-3)]


def _wedge(pair, cfg):
    out = [wedge_vanishing(pair, max_rr=cfg.max_rr())]
    P = make_pair(pair)
    if P.r * P.rp <= cfg.max_rr():
        out.append(verify_duality(pair, samples=cfg.samples, seed=cfg.seed, max_rr=cfg.max_rr()))
    return out


CHECKS = {
    "tropical": _tropical,
    "periodicity": _periodicity,
    "dilog": _dilog,
    "constancy": _constancy,
    "limit": _limit,
    "wedge": _wedge,
}


def _constant(cfg):
    X, level = cfg.type, cfg.level
    system = solve_constant(X, level)
    return [
        verify_level_identity(X, level, tol=cfg.tol or IDENTITY_TOL, system=system),
        constant_frame_bridge(X, level, system=system),
    ]


# -- suite --------------------------------------------------------------------------


def _run_pair(args):
    pair, cfg = args
    P = make_pair(pair)
    reports = []
    for name in SUITE_CHECKS:
        if name == "wedge" and P.r * P.rp > cfg.max_rr():
            continue
        try:
            reports.extend(CHECKS[name](pair, cfg))
        except Exception as exc:  # keep sweeping: one broken check must not hide the others
            reports.append(Report(name, False, {"pair": str(P), "error": f"{type(exc).__name__}: {exc}"}))
    return str(P), reports


def run_suite(pairs, cfg: RunConfig | None = None, workers: int = 1):
    """Run the suite checks over ``pairs``; returns (summary, reports) without failing fast."""
    cfg = cfg or RunConfig("all")
    jobs = [(p, cfg) for p in pairs]
    if workers > 1 and len(jobs) > 1:
        with ProcessPoolExecutor(max_workers=workers) as pool:
            results = list(pool.map(_run_pair, jobs))
    else:
        results = [_run_pair(j) for j in jobs]
    matrix, reports = {}, []
    for name, reps in results:
        row = matrix.setdefault(name, {})
        for r in reps:
            row[r.name] = row.get(r.name, True) and r.passed
        reports.extend(reps)
    summary = {"pairs": matrix, "passed": all(r.passed for r in reports)}
    return summary, reports


# -- output ----------------------------------------------------------------------------


def _document(cfg: RunConfig, reports, summary=None) -> dict:
    doc = {
        "version": __version__,
        "command": cfg.command,
        "config": {
            "pairs": cfg.pairs,
            "type": cfg.type,
            "level": cfg.level,
            "samples": cfg.samples,
            "seed": cfg.seed,
            "tol": cfg.tol,
            "tolerances": {"identity": IDENTITY_TOL, "constancy": CONSTANCY_TOL, "numeric": NUMERIC_REL_TOL},
            "budget_rr": cfg.max_rr(),
        },
        "passed": all(r.passed for r in reports),
        "reports": [r.to_dict() for r in reports],
    }
    if summary is not None:
        doc["summary"] = summary
    return doc


def _render(doc: dict, fmt: str) -> str:
    if fmt == "json":
        return json.dumps(doc, sort_keys=True, indent=2, default=str) + "\n"
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(["check", "pair", "passed", "witnesses"])
    for r in doc["reports"]:
        w.writerow([r["check"], r.get("pair", r.get("type", "")), r["passed"], len(r["witnesses"])])
    return buf.getvalue()


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="ysyslab", description=__doc__.splitlines()[0])
    parser.add_argument("--version", action="version", version=f"ysyslab {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)
    for name in COMMANDS:
        p = sub.add_parser(name)
        if name == "constant":
            p.add_argument("--type", required=True, help="Dynkin type, e.g. A3")
            p.add_argument("--level", type=int, required=True)
        else:
            p.add_argument("--pair", action="append", default=None,
                           help="pair such as A3xA2 (repeatable; 'all' defaults to a standard list)")
        p.add_argument("--samples", type=int, default=5)
        p.add_argument("--tol", type=float, default=None)
        p.add_argument("--seed", type=int, default=0)
        p.add_argument("--budget-rr", type=int, default=None, help="symbolic budget on r*r'")
        p.add_argument("--out", default=None, help="write the report here instead of stdout")
        p.add_argument("--format", choices=("json", "csv"), default="json")
        if name == "dilog":
            p.add_argument("--domain", choices=DOMAINS, default=None)
        if name == "periodicity":
            p.add_argument("--symbolic", action="store_true",
                           help="also check the subtraction-free backend and F-polynomials")
        if name == "all":
            p.add_argument("--workers", type=int, default=1)
    return parser


def run(cfg: RunConfig) -> int:
    summary = None
    if cfg.command == "constant":
        reports = _constant(cfg)
    elif cfg.command == "all":
        pairs = cfg.pairs or DEFAULT_SUITE
        cfg.pairs = list(pairs)
        summary, reports = run_suite(pairs, cfg, workers=cfg.workers)
    else:
        if not cfg.pairs:
            raise ValueError(f"'{cfg.command}' needs --pair")
        reports = []
        for pair in cfg.pairs:
            reports.extend(CHECKS[cfg.command](pair, cfg))
    text = _render(_document(cfg, reports, summary), cfg.format)
    if cfg.out:
        with open(cfg.out, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)
    return 0 if all(r.passed for r in reports) else 1


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        cfg = RunConfig(
            command=args.command,
            pairs=list(getattr(args, "pair", None) or []),
            type=getattr(args, "type", None),
            level=getattr(args, "level", None),
            samples=args.samples,
            tol=args.tol,
            seed=args.seed,
            budget_rr=args.budget_rr,
            domain=getattr(args, "domain", None),
            symbolic=getattr(args, "symbolic", False),
            workers=getattr(args, "workers", 1),
            out=args.out,
            format=args.format,
        )
        return run(cfg)
    except BudgetExceeded as exc:
        print(f"ysyslab: {exc}", file=sys.stderr)
        return 2
    except (DiagramError, ValueError, ConvergenceError) as exc:
        print(f"ysyslab: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
