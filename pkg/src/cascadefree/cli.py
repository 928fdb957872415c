"""Command-line front end.

Exit codes: 0 success, 1 computation or verification failure, 2 usage error.
Failures print one JSON object ``{"error": <code>, "message": ...}`` to stderr.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import sys
from fractions import Fraction
from typing import Any, Sequence

from . import __version__
from .avoidance import StatefulOperation, count_avoiding, gpk_classify, lift_gpk
from .core import GpkDecomposition, count_cascade_free, parse_gpk
from .errors import CascadeError, InvalidDecomposition
from .golden import SUITES, run_suite
from .instances import InstanceDescriptor, InstanceKind
from .markov import asymptotic_dispersion, markov_chain, stationary_moments, transient_moments
from .oracle import (
    brute_count_adjacency,
    brute_count_avoiding,
    brute_count_cascade_free,
    default_budget,
    monte_carlo_dispersion,
)
from .poisson import convergence_rows, poisson_root
from .specfile import dump_operation, load_operation

FORMATS = ("table", "csv", "json")

Row = dict[str, Any]


# --- output ----------------------------------------------------------------


def render(columns: Sequence[str], rows: Sequence[Row], fmt: str) -> str:
    if fmt == "json":
        return json.dumps([{c: r[c] for c in columns} for r in rows], indent=2) + "\n"
    if fmt == "csv":
        buf = io.StringIO()
        writer = csv.writer(buf, lineterminator="\n")
        writer.writerow(columns)
        for r in rows:
            writer.writerow([_text(r[c]) for c in columns])
        return buf.getvalue()
    cells = [list(columns)] + [[_text(r[c]) for c in columns] for r in rows]
    widths = [max(len(row[i]) for row in cells) for i in range(len(columns))]
    lines = ["  ".join(v.rjust(w) for v, w in zip(row, widths)).rstrip() for row in cells]
    lines.insert(1, "  ".join("-" * w for w in widths))
    return "\n".join(lines) + "\n"


def parse_rendered(text: str, fmt: str) -> tuple[list[str], list[Row]]:
    """Inverse of ``render`` for csv and json."""
    if fmt == "json":
        rows = json.loads(text)
        columns = list(rows[0]) if rows else []
        return columns, rows
    if fmt == "csv":
        reader = csv.reader(io.StringIO(text))
        columns = next(reader)
        return columns, [dict(zip(columns, r)) for r in reader]
    raise ValueError(f"{fmt} output is not parseable")


def _text(value: Any) -> str:
    if isinstance(value, bool):
        return "true" if value else "false"
    return str(value)


def _ratio(q: Fraction) -> str:
    return f"{q.numerator}/{q.denominator}"


def _emit(args: argparse.Namespace, columns: Sequence[str], rows: Sequence[Row]) -> None:
    sys.stdout.write(render(columns, rows, args.format))


def _fail(code: str, message: str, detail: Any = None) -> int:
    payload: dict[str, Any] = {"error": code, "message": message}
    if detail is not None:
        payload["detail"] = detail
    sys.stderr.write(json.dumps(payload) + "\n")
    return 1


# --- source selection -------------------------------------------------------


def _add_source(p: argparse.ArgumentParser, allow_spec: bool = True) -> None:
    group = p.add_mutually_exclusive_group(required=True)
    group.add_argument("--gpk", metavar="G:T:K", help="GEN/PROP/KILL class sizes")
    group.add_argument("--instance", choices=[k.value for k in InstanceKind])
    if allow_spec:
        group.add_argument("--spec", metavar="FILE", help="JSON operation spec (version 1)")
    p.add_argument("--base", type=int, help="base p for --instance")


def _resolve(args: argparse.Namespace, parser: argparse.ArgumentParser) -> GpkDecomposition | StatefulOperation:
    if args.gpk is not None:
        try:
            return parse_gpk(args.gpk)
        except InvalidDecomposition as exc:
            parser.error(str(exc))
    if args.instance is not None:
        kind = InstanceKind(args.instance)
        base = args.base
        if base is None:
            if kind is InstanceKind.TERNARY_THREE_SUM:
                base = 3
            elif kind is InstanceKind.BINARY_FOUR_SUM:
                base = 2
            else:
                parser.error(f"--instance {kind.value} requires --base")
        desc = InstanceDescriptor(kind, base)
        return desc.gpk() if desc.is_gpk else desc.operation()
    return load_operation(args.spec)


def _as_gpk(source: GpkDecomposition | StatefulOperation) -> GpkDecomposition:
    return source if isinstance(source, GpkDecomposition) else gpk_classify(source)


# --- commands -------------------------------------------------------------


def cmd_count(args: argparse.Namespace, parser: argparse.ArgumentParser) -> int:
    source = _resolve(args, parser)
    if isinstance(source, GpkDecomposition):
        values = count_cascade_free(source, args.length)
    else:
        values = count_avoiding(source, args.length)
    _emit(args, ["L", "a_L"], [{"L": L, "a_L": str(v)} for L, v in enumerate(values)])
    return 0


def cmd_oracle(args: argparse.Namespace, parser: argparse.ArgumentParser) -> int:
    source = _resolve(args, parser)
    budget = args.budget if args.budget is not None else default_budget()
    if isinstance(source, GpkDecomposition):
        counts = {
            "brute_cascade_free": brute_count_cascade_free(source, args.length, budget, args.workers),
            "brute_adjacency": brute_count_adjacency(source, args.length, budget, args.workers),
            "recurrence": count_cascade_free(source, args.length)[-1],
        }
    else:
        counts = {
            "brute_avoiding": brute_count_avoiding(source, args.length, budget, args.workers),
            "transfer_matrix": count_avoiding(source, args.length)[-1],
        }
    match = len(set(counts.values())) == 1
    rows = [{"method": k, "count": str(v)} for k, v in counts.items()]
    rows.append({"method": "verdict", "count": "match" if match else "mismatch"})
    _emit(args, ["method", "count"], rows)
    if not match:
        return _fail("OracleMismatch", "brute force and transfer matrix disagree", {k: str(v) for k, v in counts.items()})
    return 0


def cmd_dispersion(args: argparse.Namespace, parser: argparse.ArgumentParser) -> int:
    gpk = _as_gpk(_resolve(args, parser))
    chain = markov_chain(gpk)
    rows: list[Row] = []

    def add(name: str, q: Fraction) -> None:
        rows.append({"quantity": name, "exact": _ratio(q), "approx": float(q)})

    add("mu", chain.mu)
    add("pi0", chain.pi0)
    add("pi1", chain.pi1)
    add("D_inf", asymptotic_dispersion(gpk))
    regimes = ["stationary", "transient"] if args.regime == "both" else [args.regime]
    transient_d = None
    for regime in regimes:
        fn = stationary_moments if regime == "stationary" else transient_moments
        rep = fn(gpk, args.length)
        add(f"{regime}.mean", rep.mean)
        add(f"{regime}.variance", rep.variance)
        add(f"{regime}.D", rep.dispersion)
        if regime == "transient":
            transient_d = rep.dispersion
    status = 0
    if args.mc:
        est = monte_carlo_dispersion(gpk, args.length, args.mc, args.seed)
        if transient_d is None:
            transient_d = transient_moments(gpk, args.length).dispersion
        within = est.within(float(transient_d))
        for name in ("mean", "variance", "dispersion", "se_dispersion"):
            rows.append({"quantity": f"mc.{name}", "exact": "", "approx": getattr(est, name)})
        rows.append({"quantity": "mc.within_3se", "exact": _text(within), "approx": float(within)})
        if not within:
            status = _fail("MonteCarloMismatch", "sampled D is more than 3 standard errors from the exact value")
    _emit(args, ["quantity", "exact", "approx"], rows)
    return status


def cmd_poisson(args: argparse.Namespace, parser: argparse.ArgumentParser) -> int:
    if args.scan is not None:
        if args.scan < 2:
            parser.error("--scan needs Lmax >= 2")
        roots = convergence_rows(range(2, args.scan + 1), args.tol)
    else:
        roots = [poisson_root(args.length, args.tol)]
    rows = [
        {"L": r.L, "mu_star": r.mu_star, "residual": r.residual, "excess": r.excess, "rate": r.rate}
        for r in roots
    ]
    _emit(args, ["L", "mu_star", "residual", "excess", "rate"], rows)
    bad = [b.L for a, b in zip(roots, roots[1:]) if not b.mu_star < a.mu_star]
    if bad:
        return _fail("NotMonotone", "mu* failed to decrease", bad)
    return 0


def cmd_verify(args: argparse.Namespace, parser: argparse.ArgumentParser) -> int:
    results = run_suite(args.suite)
    rows = [
        {"suite": r.suite, "item": r.item, "expected": r.expected, "actual": r.actual, "status": "pass" if r.passed else "FAIL"}
        for r in results
    ]
    _emit(args, ["suite", "item", "expected", "actual", "status"], rows)
    failing = [r for r in rows if r["status"] != "pass"]
    if failing:
        diff = "\n".join(f"- {r['suite']} {r['item']}: expected {r['expected']}\n+ {r['suite']} {r['item']}: got {r['actual']}" for r in failing)
        sys.stderr.write(diff + "\n")
        return _fail("VerificationFailed", f"{len(failing)} of {len(rows)} rows failed")
    return 0


def cmd_export_spec(args: argparse.Namespace, parser: argparse.ArgumentParser) -> int:
    source = _resolve(args, parser)
    if isinstance(source, GpkDecomposition):
        # three-state lift: avoiding words are exactly the cascade-free words
        source = lift_gpk(source)
    sys.stdout.write(dump_operation(source))
    return 0


# --- parser ---------------------------------------------------------------


def _positive(text: str) -> int:
    value = int(text)
    if value < 1:
        raise argparse.ArgumentTypeError("must be >= 1")
    return value


def _nonnegative(text: str) -> int:
    value = int(text)
    if value < 0:
        raise argparse.ArgumentTypeError("must be >= 0")
    return value


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="cascadefree", description=__doc__.splitlines()[0])
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)

    def command(name: str, help_text: str) -> argparse.ArgumentParser:
        p = sub.add_parser(name, help=help_text)
        p.add_argument("--format", choices=FORMATS, default="table")
        return p

    p = command("count", "exact cascade-free or state-avoiding counts a(0..L)")
    _add_source(p)
    p.add_argument("--length", type=_nonnegative, required=True)
    p.set_defaults(func=cmd_count)

    p = command("oracle", "brute-force enumeration against the transfer matrix")
    _add_source(p)
    p.add_argument("--length", type=_nonnegative, required=True)
    p.add_argument("--budget", type=_positive, help="max words to enumerate (default 10^7 or $CASCADE_BUDGET)")
    p.add_argument("--workers", type=_positive, default=1)
    p.set_defaults(func=cmd_oracle)

    p = command("dispersion", "exact moments and dispersion index of the state count")
    _add_source(p)
    p.add_argument("--length", type=_positive, required=True)
    p.add_argument("--regime", choices=("stationary", "transient", "both"), default="both")
    p.add_argument("--mc", type=_positive, metavar="SAMPLES", help="add a Monte Carlo estimate")
    p.add_argument("--seed", type=_nonnegative, default=0)
    p.set_defaults(func=cmd_dispersion)

    p = command("poisson", "finite Poisson transition point mu*(L)")
    group = p.add_mutually_exclusive_group(required=True)
    group.add_argument("--length", type=_positive)
    group.add_argument("--scan", type=int, metavar="LMAX")
    p.add_argument("--tol", type=float, default=1e-12)
    p.set_defaults(func=cmd_poisson)

    p = command("verify", "recompute the reference tables")
    p.add_argument("--suite", choices=[*SUITES, "all"], default="all")
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("export-spec", help="write an instance as a JSON operation spec")
    _add_source(p, allow_spec=False)
    p.set_defaults(func=cmd_export_spec)
    return parser


def main(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args, parser)
    except CascadeError as exc:
        return _fail(exc.code, str(exc))


if __name__ == "__main__":
    sys.exit(main())
