"""Command-line interface exposing every analysis as a subcommand.

    mpslab counts --W 1 --n 3
    mpslab dist --W 1 --n 4 --format tsv
    mpslab verify --max-universe 1000000
    mpslab magma-table --W 3 --op minus
    mpslab rank --n 8
    mpslab mps --contract ES --cost 5 --prices 2369.50,2369.75,2370.00
    mpslab ote --contract ES --fc 100 --cost 4.68 ticks.txt
    mpslab stats --metric profit samples.txt
    mpslab pattern --contract ES --fc 49.99 --cost 4.68 ticks.txt

Identical inputs and flags always produce byte-identical output; exit code
0 on success, 1 on a validation error, 2 on a budget refusal.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from dataclasses import dataclass
from fractions import Fraction
from typing import Optional

from . import __version__, distribution as dist, ingest, magma, mps as mps_mod
from . import ote as ote_mod, vectors, verify as verify_mod
from .model import GridError
from .numeric import as_fraction, fmt_dollars, fmt_number, fmt_price
from .oracle import BudgetExceeded
from .distribution import UniverseParams

CONFIG_ENV = "MPSLAB_CONFIG"


@dataclass(frozen=True)
class RunConfig:
    """Validated view of the parsed command line, built before dispatch."""

    subcommand: str
    contract: Optional[str] = None
    config_path: Optional[str] = None
    fc: Optional[Fraction] = None
    cost: Optional[Fraction] = None
    limit: Optional[int] = None
    n: Optional[int] = None
    fmt: str = "tsv"
    budget: int = verify_mod.DEFAULT_MAX_UNIVERSE
    bins: Optional[int] = None
    tolerances: ote_mod.Tolerances = ote_mod.Tolerances()

    def __post_init__(self):
        if self.budget <= 0:
            raise ValueError("budget must be positive")
        if self.bins is not None and self.bins < 1:
            raise ValueError("bin count must be >= 1")
        if self.limit is not None and self.limit < 1:
            raise ValueError("position limit W must be >= 1")
        if self.n is not None and self.n < 2:
            raise ValueError("tick count n must be >= 2")
        if self.fmt not in ("tsv", "json"):
            raise ValueError(f"unknown output format {self.fmt!r}")
        if self.fc is not None and self.fc < 0:
            raise ValueError("filtering cost must be non-negative")
        if self.cost is not None and self.cost < 0:
            raise ValueError("cost must be non-negative")
        if self.tolerances.eq_deltas < 0 or self.tolerances.lt_deltas < 0:
            raise ValueError("tolerances must be non-negative")

    @classmethod
    def from_args(cls, args) -> "RunConfig":
        get = lambda name, default=None: getattr(args, name, default)
        return cls(
            subcommand=args.command,
            contract=get("contract"),
            config_path=get("config") or os.environ.get(CONFIG_ENV),
            fc=as_fraction(args.fc) if get("fc") is not None else None,
            cost=as_fraction(args.cost) if get("cost") is not None else None,
            limit=get("W"),
            n=get("n"),
            fmt=get("format", "tsv"),
            budget=get("max_universe", verify_mod.DEFAULT_MAX_UNIVERSE),
            bins=get("bins"),
            tolerances=ote_mod.Tolerances(get("eq_tol", 0), get("lt_tol", 0)),
        )


def _emit(args, text: str, plot_stub: str | None = None) -> None:
    if getattr(args, "out", None):
        with open(args.out, "w") as fh:
            fh.write(text)
        if getattr(args, "emit_plot", False) and plot_stub:
            with open(args.out + ".gp", "w") as fh:
                fh.write(plot_stub.format(data=args.out))
    else:
        sys.stdout.write(text)


def _contract(args) -> ingest.ContractSpec:
    config = getattr(args, "config", None) or os.environ.get(CONFIG_ENV)
    return ingest.contract_for(args.contract, config)


def _read_ticks(args, spec):
    if args.file == "-":
        ticks = ingest.parse_ticks(sys.stdin, spec)
    else:
        with open(args.file) as fh:
            ticks = ingest.parse_ticks(fh, spec)
    return ingest.trade_ticks(ticks)


def _sessions(args, spec, ticks):
    try:
        window = ingest.session_window_of(spec)
    except ValueError:
        return [ingest.Session(ticks[0].timestamp.date() if ticks else None, tuple(ticks))]
    return list(ingest.sessionize(ticks, window).sessions)


def cmd_counts(args) -> int:
    counts = dist.universe_counts(UniverseParams(args.W, args.n))
    record = {
        "strategies": counts.strategies,
        "actions_total": counts.actions_total,
        "do_nothing": counts.do_nothing,
        "transactions": counts.transactions,
    }
    if args.format == "json":
        _emit(args, json.dumps(record, indent=2) + "\n")
    else:
        _emit(args, "".join(f"{k}={v}\n" for k, v in record.items()))
    return 0


_DIST_PLOT = """set terminal pngcairo size 900,600
set output '{data}.png'
set style data linespoints
plot '{data}' using 1:3 title 'pmf', '{data}' using 1:4 title 'cdf'
"""


def cmd_dist(args) -> int:
    p = UniverseParams(args.W, args.n)
    pmf = dist.action_pmf(p)
    rows = ["m\tcount\tpmf\tcdf"]
    cum = Fraction(0)
    for m in sorted(pmf):
        cum += pmf[m]
        rows.append("\t".join([str(m), str(dist.action_count(m, p)),
                               repr(float(pmf[m])), repr(float(cum))]))
    if args.format == "json":
        payload = [{"m": m, "count": dist.action_count(m, p),
                    "pmf": float(pmf[m])} for m in sorted(pmf)]
        _emit(args, json.dumps(payload, indent=2) + "\n")
    else:
        _emit(args, "\n".join(rows) + "\n", _DIST_PLOT)
    return 0


def cmd_verify(args) -> int:
    results = verify_mod.verify_matrix(args.max_universe, threads=args.threads)
    lines = ["W\tn\tcheck\tstatus"]
    failures = 0
    for r in results:
        lines.append(f"{r.limit}\t{r.n}\t{r.check}\t{'pass' if r.ok else 'FAIL'}")
        failures += 0 if r.ok else 1
    lines.append(f"# {len(results) - failures}/{len(results)} checks passed")
    _emit(args, "\n".join(lines) + "\n")
    return 1 if failures else 0


def cmd_magma_table(args) -> int:
    table = magma.cayley_table(args.W, args.op)
    values = list(range(-args.W, args.W + 1))
    header = "\t".join([("(+)" if args.op == "plus" else "(-)")] + [str(v) for v in values])
    lines = [header]
    for left, row in zip(values, table):
        cells = [str(left)] + ["n/a" if v is None else str(v) for v in row]
        lines.append("\t".join(cells))
    _emit(args, "\n".join(lines) + "\n")
    return 0


def cmd_rank(args) -> int:
    _emit(args, f"rank={vectors.rank_of_universe(args.n)}\n")
    return 0


def cmd_mps(args) -> int:
    spec = _contract(args)
    if args.prices:
        prices = [as_fraction(tok) for tok in args.prices.split(",")]
    else:
        if not args.file:
            raise ValueError("provide --prices or a tick file")
        ticks = _read_ticks(args, spec)
        prices = [t.price for t in ticks]
    result = mps_mod.mps0(prices, as_fraction(args.cost), args.W, spec)
    lines = [f"pl={fmt_dollars(result.pl)}"]
    if len(result.strategy) <= 60:
        lines.append("strategy=" + ",".join(str(a) for a in result.strategy.actions))
    else:
        lines.append(f"transactions={sum(1 for a in result.strategy.actions if a)}")
        for i, a in enumerate(result.strategy.actions):
            if a:
                lines.append(f"action\t{i}\t{a}")
    for t in result.trades:
        side = "long" if t.direction > 0 else "short"
        lines.append(f"trade\t{t.start}\t{t.end}\t{side}")
    _emit(args, "\n".join(lines) + "\n")
    return 0


def _stats_block(stats: ote_mod.OteStats, title: str) -> list[str]:
    lines = [
        f"{title} distribution",
        f"Mean                = {float(stats.mean)}",
        f"Samples size        = {stats.count}",
        f"Maximum value       = {float(stats.maximum)}",
        f"Maximum value count = {stats.max_count}",
        f"Minimum value       = {float(stats.minimum)}",
        f"Minimum value count = {stats.min_count}",
        f"Variance            = {float(stats.variance)}",
        f"Std. deviation      = {stats.std_dev}",
        f"Skewness            = {stats.skewness}",
        f"Excess kurtosis     = {stats.excess_kurtosis}",
    ]
    for idx, (lo, hi, count) in enumerate(stats.histogram):
        lines.append(f"{idx} ({lo}, {hi}] {count}")
    return lines


_OTE_PLOT = """set terminal pngcairo size 900,600
set output '{data}.png'
plot '{data}' index 1 using 1:2 with steps title 'ECDF'
"""


def cmd_ote(args) -> int:
    spec = _contract(args)
    ticks = _read_ticks(args, spec)
    sessions = _sessions(args, spec, ticks)
    lines = []
    records = []
    for session in sessions:
        found = ote_mod.extract_otes(session.ticks, as_fraction(args.fc),
                                     as_fraction(args.cost), spec)
        records.extend(found)
    lines.append("#\tt_start\tP_start\tt_end\tP_end\tdt_s\tPL\tType")
    for idx, r in enumerate(records, start=1):
        lines.append("\t".join([
            str(idx),
            r.t_start.strftime("%Y-%m-%d %H:%M:%S"), fmt_price(r.p_start, spec.delta),
            r.t_end.strftime("%Y-%m-%d %H:%M:%S"), fmt_price(r.p_end, spec.delta),
            str(int(r.duration)), fmt_dollars(r.pl), r.ote_type.value,
        ]))
    used = [r for r in records if r.closed or args.include_open]
    if len(used) >= 2:
        lines.append("")
        lines.extend(_stats_block(ote_mod.ote_stats(used, "profit", True, args.bins), "PL"))
        lines.append("")
        lines.extend(_stats_block(ote_mod.ote_stats(used, "duration", True, args.bins),
                                  "Trade time"))
        profit_stats = ote_mod.ote_stats(used, "profit", True, args.bins)
        lines.append("")
        lines.append("# EPMF")
        lines.append("profit\tcount")
        for value, count in profit_stats.epmf:
            lines.append(f"{fmt_dollars(value)}\t{count}")
        lines.append("")
        lines.append("# ECDF")
        lines.append("profit\tcumulative")
        for value, frac in profit_stats.ecdf:
            lines.append(f"{fmt_dollars(value)}\t{repr(float(frac))}")
    _emit(args, "\n".join(lines) + "\n", _OTE_PLOT)
    return 0


def cmd_stats(args) -> int:
    if args.file == "-":
        tokens = sys.stdin.read().split()
    else:
        with open(args.file) as fh:
            tokens = fh.read().split()
    values = [as_fraction(tok) for tok in tokens]
    stats = ote_mod.sample_stats(values, args.bins)
    _emit(args, "\n".join(_stats_block(stats, args.metric.capitalize())) + "\n")
    return 0


def cmd_pattern(args) -> int:
    spec = _contract(args)
    ticks = _read_ticks(args, spec)
    sessions = _sessions(args, spec, ticks)
    tol = ote_mod.Tolerances(args.eq_tol, args.lt_tol)
    lines = ["session\twindow_end\tmatched_at\tprice"]
    hits = 0
    for session in sessions:
        records = ote_mod.extract_otes(session.ticks, as_fraction(args.fc),
                                       as_fraction(args.cost), spec)
        by_time = {t.timestamp: t for t in session.ticks}
        for end in range(6, len(records) + 1):
            window = records[end - 6:end]
            try:
                monitor = ote_mod.HeadShouldersMonitor(window, tol, spec)
            except ValueError:
                continue
            if not monitor.fixed_ok:
                continue
            current = window[-1]
            span = [t for t in session.ticks
                    if current.t_birth <= t.timestamp <= current.t_end]
            for tick in span:
                if monitor.check(tick.price):
                    hits += 1
                    lines.append("\t".join([
                        str(session.day), str(end),
                        tick.timestamp.strftime("%Y-%m-%d %H:%M:%S"),
                        fmt_price(tick.price, spec.delta)]))
                    break
    lines.append(f"# {hits} matches")
    _emit(args, "\n".join(lines) + "\n")
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="mpslab", description=__doc__,
                                     formatter_class=argparse.RawDescriptionHelpFormatter)
    parser.add_argument("--version", action="version", version=f"mpslab {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p, out=True):
        if out:
            p.add_argument("--out", help="write output to this path instead of stdout")
            p.add_argument("--emit-plot", action="store_true",
                           help="also write a gnuplot script next to --out")

    p = sub.add_parser("counts", help="closed-form universe counts")
    p.add_argument("--W", type=int, required=True)
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--format", choices=("tsv", "json"), default="tsv")
    common(p)
    p.set_defaults(func=cmd_counts)

    p = sub.add_parser("dist", help="action distribution table (PMF/CDF)")
    p.add_argument("--W", type=int, required=True)
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--format", choices=("tsv", "json"), default="tsv")
    common(p)
    p.set_defaults(func=cmd_dist)

    p = sub.add_parser("verify", help="formula-vs-enumeration verification matrix")
    p.add_argument("--max-universe", type=int, default=verify_mod.DEFAULT_MAX_UNIVERSE)
    p.add_argument("--threads", type=int, default=1)
    common(p)
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("magma-table", help="Cayley table of the capped algebra")
    p.add_argument("--W", type=int, required=True)
    p.add_argument("--op", choices=("plus", "minus"), default="plus")
    common(p)
    p.set_defaults(func=cmd_magma_table)

    p = sub.add_parser("rank", help="rank of the strategy universe")
    p.add_argument("--n", type=int, required=True)
    common(p)
    p.set_defaults(func=cmd_rank)

    p = sub.add_parser("mps", help="maximum-profit strategy over prices or ticks")
    p.add_argument("--contract", default="ES")
    p.add_argument("--config", help=f"contract config file (or ${CONFIG_ENV})")
    p.add_argument("--cost", required=True, help="per-contract transaction cost, dollars")
    p.add_argument("--W", type=int, default=1)
    p.add_argument("--prices", help="comma-separated price chain")
    p.add_argument("file", nargs="?", help="tick file ('-' for stdin)")
    common(p)
    p.set_defaults(func=cmd_mps)

    p = sub.add_parser("ote", help="optimal trading elements of tick sessions")
    p.add_argument("--contract", default="ES")
    p.add_argument("--config")
    p.add_argument("--fc", required=True, help="filtering cost, dollars")
    p.add_argument("--cost", required=True, help="actual cost, dollars")
    p.add_argument("--bins", type=int, default=None)
    p.add_argument("--include-open", action="store_true",
                   help="include the session-terminated trade in statistics")
    p.add_argument("file", help="tick file ('-' for stdin)")
    common(p)
    p.set_defaults(func=cmd_ote)

    p = sub.add_parser("stats", help="sample statistics block for numbers in a file")
    p.add_argument("--metric", default="profit")
    p.add_argument("--bins", type=int, default=None)
    p.add_argument("file", help="one sample per line ('-' for stdin)")
    common(p)
    p.set_defaults(func=cmd_stats)

    p = sub.add_parser("pattern", help="head-and-shoulders scan over tick sessions")
    p.add_argument("--contract", default="ES")
    p.add_argument("--config")
    p.add_argument("--fc", required=True)
    p.add_argument("--cost", required=True)
    p.add_argument("--eq-tol", type=int, default=0, help="equality slack, deltas")
    p.add_argument("--lt-tol", type=int, default=0, help="strictness slack, deltas")
    p.add_argument("file", help="tick file ('-' for stdin)")
    common(p)
    p.set_defaults(func=cmd_pattern)

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        RunConfig.from_args(args)   # cross-field validation before dispatch
        return args.func(args)
    except BudgetExceeded as exc:
        print(f"budget refused: {exc}", file=sys.stderr)
        return 2
    except (ValueError, GridError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
