#!/usr/bin/env python3
"""
RepLab Command Line
Irrep tables, cost reports, figure data, protocol simulations and
verifications. Tables and figures are written as CSV, everything else as JSON.

Exit codes: 0 on success, 1 when a verification fails, 2 on bad flags.
"""

import argparse
import json
import math
import sys
from pathlib import Path
from typing import List, Optional

import numpy as np

from baselines import naive_teleport_cost
from costmodel import (
    Task,
    cost_grid,
    cost_report,
    default_range,
    figure_series,
    permutation_total_diagnostics,
    verify_bounds,
)
from harness.session import simulate
from lowerbound import check_lower_bound
from repcore import build_table
from schur import build_schur_basis, verify_basis
from utils import (
    LabError,
    get_logger,
    get_settings,
    override_settings,
    set_log_level,
    use_settings,
)

logger = get_logger("CLI")


def _emit(text: str, out: Optional[str]):
    """Write to --out or stdout."""
    if out:
        path = Path(out)
        if path.parent and not path.parent.exists():
            path.parent.mkdir(parents=True, exist_ok=True)
        path.write_text(text)
    else:
        sys.stdout.write(text if text.endswith("\n") else text + "\n")


def _json(payload) -> str:
    return json.dumps(payload, indent=2, default=str)


def _parse_range(text: str) -> range:
    """'a:b' (inclusive) or a single integer."""
    try:
        if ":" in text:
            start, stop = (int(part) for part in text.split(":", 1))
        else:
            start = stop = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"Range must look like 'a:b', got '{text}'")
    if start < 1 or stop < start:
        raise argparse.ArgumentTypeError(f"Empty or invalid range '{text}'")
    return range(start, stop + 1)


# =============================================================================
# Commands
# =============================================================================

def cmd_table(args) -> int:
    table = build_table(args.n, args.d, args.role)
    if args.format == "json":
        frame = table.to_dataframe()
        _emit(_json({"rows": frame.to_dict(orient="records"), "aggregates": table.aggregates()}), args.out)
    else:
        _emit(table.to_csv(), args.out)
    return 0


def cmd_costs(args) -> int:
    if args.diagnostics:
        _emit(_json(permutation_total_diagnostics(args.n)), args.out)
        return 0
    if args.range is not None:
        frame = cost_grid(args.range, [args.d], args.task)
        _emit(frame.to_csv(index=False) if args.format == "csv" else _json(frame.to_dict(orient="records")), args.out)
        return 0
    report = cost_report(args.n, args.d, args.task).to_dict()
    if Task.parse(args.task) == Task.UNITARY_ARRAY:
        report["naive_teleport"] = naive_teleport_cost(args.n, args.d).to_dict()
    _emit(_json(report), args.out)
    return 0


def cmd_figure(args) -> int:
    frame = figure_series(args.which, d=args.d, n_range=default_range(args.which, args.nmax))
    _emit(frame.to_csv(index=False), args.out)
    return 0


def cmd_simulate(args) -> int:
    summary = simulate(
        args.protocol,
        args.task,
        args.n,
        args.d,
        trials=args.trials,
        seed=args.seed,
        g_seed=args.g_seed,
        perm=args.perm,
        eps=args.eps,
        max_rounds=args.max_rounds,
        emit=args.emit,
    )
    _emit(_json(summary), args.out)
    return 0 if summary["statistics"]["within_3_sigma"] else 1


def _verify_identities(n_max: int, d_max: int) -> dict:
    failures = []
    for d in range(1, d_max + 1):
        for n in range(1, n_max + 1):
            table = build_table(n, d)
            squares = table.d_tot_sq == math.comb(n + d * d - 1, n)
            products = sum(e.d_lambda * e.m_lambda for e in table.entries) == d ** n
            if not (squares and products):
                failures.append({"n": n, "d": d, "sum_squares": squares, "sum_products": products})
    return {"what": "identities", "n_max": n_max, "d_max": d_max, "failures": failures, "passed": not failures}


def _verify_bounds(n_max: int, d_max: int) -> dict:
    failures = [
        report.to_dict()
        for d in range(2, d_max + 1)
        for n in range(1, n_max + 1)
        for report in [verify_bounds(n, d)]
        if not report.all_hold
    ]
    return {"what": "bounds", "n_max": n_max, "d_max": d_max, "failures": failures, "passed": not failures}


def cmd_verify(args) -> int:
    if args.what == "identities":
        result = _verify_identities(args.n, args.d)
    elif args.what == "bounds":
        result = _verify_bounds(args.n, args.d)
    elif args.what == "rank":
        report = check_lower_bound(args.n, args.d, args.task, with_rank=True)
        result = {"what": "rank", **report.to_dict()}
    else:
        basis = build_schur_basis(args.n, args.d)
        report = verify_basis(basis, rng=np.random.default_rng(args.seed))
        result = {"what": "schur", **report.to_dict()}
    _emit(_json(result), args.out)
    return 0 if result["passed"] else 1


# =============================================================================
# Parser
# =============================================================================

def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="replab",
        description=__doc__,
        formatter_class=argparse.RawDescriptionHelpFormatter,
    )
    parser.add_argument("--log-level", default=None, help="Logging level (default from REPMATCH_LOG_LEVEL)")
    parser.add_argument("--dim-cap", type=int, default=None, help="Override the d^n cap for Schur bases")
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p, n_default=None, d_default=None):
        p.add_argument("--n", type=int, default=n_default, required=n_default is None)
        p.add_argument("--d", type=int, default=d_default, required=d_default is None)
        p.add_argument("--out", default=None, help="Output file (default stdout)")

    table = sub.add_parser("table", help="Irrep table as CSV")
    common(table)
    table.add_argument("--role", default="unitary-array", choices=["unitary-array", "unitary", "permutation", "perm"])
    table.add_argument("--format", default="csv", choices=["csv", "json"])
    table.set_defaults(func=cmd_table)

    costs = sub.add_parser("costs", help="Cost report")
    common(costs, n_default=1)
    costs.add_argument("--task", default="unitary-array")
    costs.add_argument("--range", type=_parse_range, default=None, help="n range 'a:b' for a grid")
    costs.add_argument("--format", default="json", choices=["csv", "json"])
    costs.add_argument("--diagnostics", action="store_true", help="Permutation closed-form comparison (d = 2, even n)")
    costs.set_defaults(func=cmd_costs)

    figure = sub.add_parser("figure", help="Figure series as CSV")
    figure.add_argument("--which", required=True, choices=["fig4", "fig5", "fig6"])
    figure.add_argument("--d", type=int, default=None)
    figure.add_argument("--nmax", type=int, default=None)
    figure.add_argument("--out", default=None)
    figure.set_defaults(func=cmd_figure)

    simulate = sub.add_parser("simulate", help="Simulate a protocol")
    common(simulate)
    simulate.add_argument("--protocol", default="repmatch", choices=["repmatch", "teleport", "store-retrieve"])
    simulate.add_argument("--task", default="unitary-array")
    simulate.add_argument("--trials", type=int, default=1000)
    simulate.add_argument("--seed", type=int, default=0)
    simulate.add_argument("--g-seed", type=int, default=1)
    simulate.add_argument("--perm", default=None, help="Permutation in 0-indexed cycle notation, e.g. '(0 1 2)'")
    simulate.add_argument("--eps", type=float, default=None)
    simulate.add_argument("--max-rounds", type=int, default=None)
    simulate.add_argument("--emit", default=None, help="Write the session transcript JSON here")
    simulate.set_defaults(func=cmd_simulate)

    verify = sub.add_parser("verify", help="Pass/fail verification")
    common(verify)
    verify.add_argument("--what", required=True, choices=["schur", "bounds", "rank", "identities"])
    verify.add_argument("--task", default="unitary-array")
    verify.add_argument("--seed", type=int, default=0)
    verify.set_defaults(func=cmd_verify)

    return parser


def main(argv: Optional[List[str]] = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)

    current = get_settings()
    settings = use_settings(override_settings(dim_cap=args.dim_cap, log_level=args.log_level))
    if args.log_level:
        try:
            set_log_level(args.log_level)
        except ValueError as e:
            parser.error(str(e))
    if args.dim_cap is not None and args.dim_cap > current.dim_cap:
        logger.warning(f"Dimension cap raised from {current.dim_cap} to {settings.dim_cap}; large bases are slow")

    try:
        return args.func(args)
    except (LabError, ValueError) as e:
        print(f"❌ Error: {e}", file=sys.stderr)
        return 2
    finally:
        use_settings(current)


if __name__ == "__main__":
    sys.exit(main())
