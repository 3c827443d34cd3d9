"""Command-line front end: load sweeps, the gain table, large-N curves and
per-slot traces. All output is CSV or plain text on stdout and is
deterministic for a given set of flags and seed."""
from __future__ import annotations

import argparse
import csv
import os
import sys
from fractions import Fraction

from .analysis import GAIN_CASES, asymptotic_limit, gain_table, per_node_throughput
from .macalloc import (
    CodingConfig,
    flow_fair_throughput,
    node_fair_throughput,
    saturated_throughput,
)
from .slotsim import run_session
from .topology import Kind, build_component
from .traffic import LoadScenario, draw_scenario, symmetric_scenario

EXIT_USAGE = 2
EXIT_MODEL = 3
DEFAULT_SEED = 0
SEED_ENV = "BSIM_SEED"

SWEEP_COLUMNS = ("topology", "n", "m", "csma", "nc", "mac", "traffic", "P", "trials",
                 "S_mean", "S_min", "S_max", "S_analytic_max")


def _bool(text: str) -> bool:
    v = text.strip().lower()
    if v in ("true", "1", "yes", "on"):
        return True
    if v in ("false", "0", "no", "off"):
        return False
    raise argparse.ArgumentTypeError(f"expected true/false, got {text!r}")


def _fraction(text: str) -> Fraction:
    try:
        return Fraction(text.strip())
    except (ValueError, ZeroDivisionError):
        raise argparse.ArgumentTypeError(f"not a number: {text!r}") from None


def _u64(text: str) -> int:
    try:
        v = int(text, 0)
    except ValueError:
        raise argparse.ArgumentTypeError(f"seed must be an integer, got {text!r}") from None
    if not 0 <= v < 2**64:
        raise argparse.ArgumentTypeError(f"seed must fit in 64 unsigned bits, got {v}")
    return v


def _fmt(x) -> str:
    return f"{float(x):.6f}"


def _fmt_bool(b: bool) -> str:
    return "true" if b else "false"


def _add_component_args(p: argparse.ArgumentParser, with_n: bool = True) -> None:
    p.add_argument("--topology", choices=[k.value for k in Kind], default="cross")
    if with_n:
        p.add_argument("--n", type=int, default=5, help="nodes including the relay")
    p.add_argument("--x1-size", type=int, default=None, help="size of the first X set (X families only)")
    p.add_argument("--m", type=int, choices=(1, 2, 4), default=1, help="MPR order")
    p.add_argument("--csma", type=_bool, default=True, metavar="BOOL")
    p.add_argument("--nc", type=_bool, default=False, metavar="BOOL")
    p.add_argument("--traffic", choices=("unicast", "broadcast"), default="unicast")


def _config(args) -> CodingConfig:
    return CodingConfig(m=args.m, csma=args.csma, nc=args.nc, traffic=args.traffic)


def _writer(out):
    return csv.writer(out, lineterminator="\n")


def _p_grid(lo: Fraction, hi: Fraction, step: Fraction) -> list[Fraction]:
    if step <= 0:
        raise ValueError(f"--p-step must be positive, got {step}")
    if hi < lo:
        raise ValueError(f"--p-max ({hi}) is below --p-min ({lo})")
    n = int((hi - lo) / step)
    return [lo + i * step for i in range(n + 1)]


def cmd_sweep(args, out=None) -> None:
    out = out or sys.stdout
    t = build_component(args.topology, args.n, args.x1_size)
    cfg = _config(args)
    model = node_fair_throughput if args.mac == "node-fair" else flow_fair_throughput
    s_peak = saturated_throughput(t, cfg)
    if args.trials < 1:
        raise ValueError(f"--trials must be >= 1, got {args.trials}")

    w = _writer(out)
    w.writerow(SWEEP_COLUMNS)
    for gi, p in enumerate(_p_grid(args.p_min, args.p_max, args.p_step)):
        values = []
        for trial in range(args.trials):
            if args.symmetric:
                sc = symmetric_scenario(p, t.n)
            else:
                sc = draw_scenario(p, t.n, [args.seed, gi, trial])
            values.append(model(sc, t, cfg).s_total)
        mean = sum(values, Fraction(0)) / len(values)
        w.writerow([t.kind.value, t.n, cfg.m, _fmt_bool(cfg.csma), _fmt_bool(cfg.nc), args.mac,
                    cfg.traffic.value, _fmt(p), args.trials, _fmt(mean), _fmt(min(values)),
                    _fmt(max(values)), _fmt(s_peak)])


def cmd_table(args, out=None) -> None:
    out = out or sys.stdout
    entries = gain_table(args.n)
    if args.format == "csv":
        w = _writer(out)
        w.writerow(("topology", "traffic", "case", "gain", "exact"))
        for e in entries:
            w.writerow((e.topology.value, e.traffic.value, e.case, str(e.gain), str(e.exact)))
        return
    labels = [c[0] for c in GAIN_CASES]
    rows = {}
    for e in entries:
        rows.setdefault((e.topology.value, e.traffic.value), {})[e.case] = str(e.gain)
    head = f"{'topology':<10}{'traffic':<11}" + "".join(f"{lab:>11}" for lab in labels)
    print(f"Saturated throughput gain over node-fair routing (1/{args.n}), N={args.n}", file=out)
    print(head, file=out)
    print("-" * len(head), file=out)
    for (topo, traffic), cells in rows.items():
        print(f"{topo:<10}{traffic:<11}" + "".join(f"{cells[lab]:>11}" for lab in labels), file=out)


def cmd_asymptotic(args, out=None) -> None:
    out = out or sys.stdout
    cfg = _config(args)
    kind = Kind(args.topology)
    limit = asymptotic_limit(kind, cfg)
    w = _writer(out)
    w.writerow(("topology", "n", "S_analytic", "S_sim", "S_limit",
                "per_node_analytic", "per_node_sim", "delay_analytic", "delay_sim"))
    if args.n_step < 1:
        raise ValueError(f"--n-step must be >= 1, got {args.n_step}")
    for n in range(args.n_min, args.n_max + 1, args.n_step):
        t = build_component(kind, n, args.x1_size)
        s = saturated_throughput(t, cfg)
        s_j = per_node_throughput(t, cfg)
        delay = 1 / s_j
        row = [kind.value, n, _fmt(s)]
        if args.simulate:
            res = run_session(t, cfg, LoadScenario.from_counts([1] * n), trace=False)
            row += [_fmt(res.throughput), _fmt(limit), _fmt(s_j),
                    _fmt(Fraction(1, res.total_slots)), int(delay), res.total_slots]
        else:
            row += ["", _fmt(limit), _fmt(s_j), "", int(delay), ""]
        w.writerow(row)


def cmd_trace(args, out=None) -> None:
    out = out or sys.stdout
    t = build_component(args.topology, args.n, args.x1_size)
    if args.packets < 0:
        raise ValueError(f"--packets must be >= 0, got {args.packets}")
    res = run_session(t, _config(args), LoadScenario.from_counts([args.packets] * t.n))
    for rec in res.trace:
        print(rec.line(), file=out)


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="bsim", description=__doc__)
    sub = parser.add_subparsers(dest="command", required=True)

    sw = sub.add_parser("sweep", help="throughput over a grid of offered loads (CSV)")
    _add_component_args(sw)
    sw.add_argument("--mac", choices=("node-fair", "flow-fair"), default="flow-fair")
    sw.add_argument("--p-min", type=_fraction, default=Fraction(0))
    sw.add_argument("--p-max", type=_fraction, default=Fraction(2))
    sw.add_argument("--p-step", type=_fraction, default=Fraction(1, 10))
    sw.add_argument("--trials", type=int, default=100)
    sw.add_argument("--seed", type=_u64, default=None,
                    help=f"64-bit seed; defaults to ${SEED_ENV} or {DEFAULT_SEED}")
    sw.add_argument("--symmetric", action="store_true", help="equal loads instead of binomial draws")
    sw.set_defaults(func=cmd_sweep)

    tb = sub.add_parser("table", help="gain table at N nodes")
    tb.add_argument("--n", type=int, default=5)
    tb.add_argument("--format", choices=("text", "csv"), default="text")
    tb.set_defaults(func=cmd_table)

    asy = sub.add_parser("asymptotic", help="throughput, per-node share and delay against N (CSV)")
    _add_component_args(asy, with_n=False)
    asy.add_argument("--n-min", type=int, default=5)
    asy.add_argument("--n-max", type=int, required=True)
    asy.add_argument("--n-step", type=int, default=2)
    asy.add_argument("--simulate", type=_bool, default=True, metavar="BOOL")
    asy.set_defaults(func=cmd_asymptotic)

    tr = sub.add_parser("trace", help="per-slot trace of one session")
    _add_component_args(tr)
    tr.add_argument("--packets", type=int, default=1, help="packets per node")
    tr.set_defaults(func=cmd_trace)
    return parser


def _resolve_seed(parser, args) -> None:
    if getattr(args, "command", None) != "sweep" or args.seed is not None:
        return
    env = os.environ.get(SEED_ENV)
    if env is None:
        args.seed = DEFAULT_SEED
        return
    try:
        args.seed = _u64(env)
    except argparse.ArgumentTypeError as exc:
        parser.error(f"${SEED_ENV}: {exc}")


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    _resolve_seed(parser, args)
    try:
        args.func(args)
    except ValueError as exc:
        print(f"bsim: error: {exc}", file=sys.stderr)
        return EXIT_MODEL
    return 0


if __name__ == "__main__":
    sys.exit(main())
