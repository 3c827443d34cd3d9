"""Closed-form maxima, the gain table, large-N limits and delay gains."""
from __future__ import annotations

from dataclasses import dataclass
from decimal import ROUND_HALF_UP, Decimal
from fractions import Fraction

from .macalloc import CodingConfig, Traffic, flow_fair_allocation, saturated_throughput
from .slotsim import completion_delay
from .topology import Kind, TopologyComponent, build_component

__all__ = [
    "GAIN_CASES",
    "GainEntry",
    "asymptotic_limit",
    "delay_gain_curve",
    "gain_table",
    "per_node_throughput",
    "round_one_decimal",
    "saturated_throughput",
]

#: (label, nc, m) for the six gain-table columns; MPR cases use coordinated grouping.
GAIN_CASES = (
    ("routing", False, 1),
    ("NC", True, 1),
    ("MPR(2)", False, 2),
    ("MPR(4)", False, 4),
    ("NC+MPR(2)", True, 2),
    ("NC+MPR(4)", True, 4),
)


def round_one_decimal(x: Fraction) -> Decimal:
    """Round half away from zero, computed exactly from the rational."""
    return (Decimal(x.numerator) / Decimal(x.denominator)).quantize(Decimal("0.1"), rounding=ROUND_HALF_UP)


@dataclass(frozen=True)
class GainEntry:
    case: str
    topology: Kind
    traffic: Traffic
    exact: Fraction

    @property
    def gain(self) -> Decimal:
        return round_one_decimal(self.exact)


def gain_table(n: int = 5) -> list[GainEntry]:
    """Saturated flow-fair throughput of each case over node-fair routing (1/n)."""
    baseline = Fraction(1, n)
    out = []
    for kind in (Kind.CROSS, Kind.X):
        t = build_component(kind, n)
        for traffic in Traffic:
            for label, nc, m in GAIN_CASES:
                cfg = CodingConfig(m=m, csma=True, nc=nc, traffic=traffic)
                out.append(GainEntry(label, kind, traffic, saturated_throughput(t, cfg) / baseline))
    return out


def asymptotic_limit(kind: Kind | str, cfg: CodingConfig) -> Fraction:
    """Saturated throughput as N grows, with integer ceilings relaxed.

    X limits assume the two sets have equal size.
    """
    kind = Kind(kind)
    m = cfg.m
    if not cfg.nc:
        return Fraction(m, m + 1)
    if kind.is_cross:
        return Fraction(m)
    return Fraction(2 * m, m + 2)


def per_node_throughput(t: TopologyComponent, cfg: CodingConfig) -> Fraction:
    """Flow-fair slot share of one edge node; shrinks like 1/N."""
    return flow_fair_allocation(t, cfg).s_edge[0]


def delay_gain_curve(kind: Kind | str, cfg_pair: tuple[CodingConfig, CodingConfig],
                     n_range, kern=None) -> list[tuple[int, Fraction]]:
    """Simulated completion-delay ratio baseline/case for each N.

    ``cfg_pair`` is ``(baseline, case)``; the usual baseline is routing with m=1.
    """
    base, case = cfg_pair
    out = []
    for n in n_range:
        t = build_component(kind, n)
        out.append((n, Fraction(completion_delay(t, base, kern), completion_delay(t, case, kern))))
    return out
