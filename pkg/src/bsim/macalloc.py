"""Channel-time allocation under the legacy node-fair MAC and the flow-fair MAC.

Saturated values are exact :class:`fractions.Fraction` objects. The flow-fair
path counts slots for one packet per node: ``ceil((N-1)/m)`` uplink slots
plus the downlink slots the relay needs, and throughput is ``N`` over their
sum.
"""
from __future__ import annotations

import enum
import math
from dataclasses import dataclass, replace
from fractions import Fraction

from .topology import TopologyComponent, csma_groups
from .traffic import LoadScenario

SUPPORTED_M = (1, 2, 4)


class Traffic(enum.Enum):
    UNICAST = "unicast"
    BROADCAST = "broadcast"


@dataclass(frozen=True)
class CodingConfig:
    m: int = 1
    csma: bool = True
    nc: bool = False
    traffic: Traffic = Traffic.UNICAST

    def __post_init__(self):
        if self.m < 1:
            raise ValueError(f"MPR order must be >= 1, got {self.m}")
        object.__setattr__(self, "traffic", Traffic(self.traffic))

    @property
    def broadcast(self) -> bool:
        return self.traffic is Traffic.BROADCAST


class Variant(enum.Enum):
    UNICAST = "unicast"
    BROADCAST = "broadcast"
    BROADCAST_LOWER = "broadcast-lower"
    BROADCAST_UPPER = "broadcast-upper"


@dataclass(frozen=True)
class Allocation:
    s_edge: tuple[Fraction, ...]
    s_relay: Fraction
    variant: Variant
    m_sched: Fraction
    #: Set on the upper allocation when only bounds are known.
    lower: "Allocation | None" = None

    def channel_use(self) -> Fraction:
        return sum(self.s_edge, Fraction(0)) / self.m_sched + self.s_relay


class Region(enum.Enum):
    LINEAR = "linear"
    TRANSITION = "transition"
    SATURATED = "saturated"


@dataclass(frozen=True)
class ThroughputPoint:
    s_total: Fraction
    rho_relay: Fraction
    p_t: Fraction
    region: Region


def derive_mc(cfg: CodingConfig) -> int:
    if cfg.m not in SUPPORTED_M:
        raise ValueError(f"m_c is only defined for m in {SUPPORTED_M}, got m={cfg.m}")
    if cfg.m == 1:
        return 1
    if cfg.m == 2:
        return 1 if cfg.csma else 2
    return cfg.m - 1


def uplink_slots(t: TopologyComponent, cfg: CodingConfig) -> int:
    return math.ceil(t.n_edge / cfg.m)


def _same_group(t: TopologyComponent, cfg: CodingConfig, u: int, v: int) -> bool:
    return any(u in g and v in g for g in csma_groups(t, cfg.m, cfg.csma))


def _partial_penalty(t: TopologyComponent, cfg: CodingConfig) -> int:
    # A removed overhear edge costs one extra degree of freedom unless the two
    # endpoints transmit together anyway (and so could not overhear each other).
    if not t.kind.is_partial:
        return 0
    u, v = t.removed_edges[0]
    return 0 if _same_group(t, cfg, u, v) else 1


def max_missing(t: TopologyComponent, cfg: CodingConfig) -> int:
    """Largest number of other edge packets any edge node misses after uplink.

    A node misses a packet when it cannot overhear its sender or when the
    sender transmits in the same slot.
    """
    worst = 0
    for g in csma_groups(t, cfg.m, cfg.csma):
        for j in g:
            row = t.overhear[j]
            heard = sum(row) - sum(1 for i in g if row[i])
            worst = max(worst, t.n_edge - 1 - heard)
    return worst


def _is_bounded(t: TopologyComponent, cfg: CodingConfig) -> bool:
    # X broadcast with coding and no transmit-order control only has bounds.
    return (not t.kind.is_cross and cfg.nc and cfg.broadcast
            and not cfg.csma and cfg.m == 2)


def nc_downlink_slots(t: TopologyComponent, cfg: CodingConfig) -> int:
    """Relay transmissions for one packet per node, its own packet included."""
    if not cfg.nc:
        return t.n
    derive_mc(cfg)  # validates m
    e = t.n_edge
    if cfg.broadcast:
        if t.kind.is_cross:
            dof = min(derive_mc(cfg), e - 1) + _partial_penalty(t, cfg)
        elif _is_bounded(t, cfg):
            dof = max(len(t.x1), len(t.x2)) + cfg.m - 1
        else:
            dof = max_missing(t, cfg)
        return dof + 1
    if t.kind.is_cross:
        dof = 1 if cfg.m == 1 or (cfg.m == 2 and cfg.csma) else 2
        dof = min(dof, e // 2) + _partial_penalty(t, cfg)
    else:
        dof = max(len(t.x1), len(t.x2))
    return dof + 1


def _scalar_nc_slots(t: TopologyComponent, cfg: CodingConfig) -> int:
    if _is_bounded(t, cfg):
        return nc_downlink_slots(t, replace(cfg, csma=True))
    return nc_downlink_slots(t, cfg)


def _saturation(t: TopologyComponent, cfg: CodingConfig) -> Fraction:
    return Fraction(t.n, uplink_slots(t, cfg) + _scalar_nc_slots(t, cfg))


def effective_config(t: TopologyComponent, cfg: CodingConfig) -> CodingConfig:
    """Schedule actually used for ``cfg``.

    With coding and m >= 3 the relay may instead cap uplink at two coordinated
    senders; that schedule is taken only when it strictly raises throughput.
    """
    if cfg.nc and cfg.m >= 3:
        limited = replace(cfg, m=2, csma=True)
        if _saturation(t, limited) > _saturation(t, cfg):
            return limited
    return cfg


def coding_coefficient(t: TopologyComponent, cfg: CodingConfig) -> Fraction:
    """Native packets carried per relay forwarding transmission."""
    if not cfg.nc:
        return Fraction(1)
    return Fraction(t.n_edge, _scalar_nc_slots(t, cfg) - 1)


def relay_load(scenario: LoadScenario, c) -> Fraction:
    if c < 1:
        raise ValueError(f"coding coefficient must be >= 1, got {c}")
    return sum((Fraction(r) for r in scenario.rho_edges), Fraction(0)) / Fraction(c)


def _allocation(t: TopologyComponent, up: int, nc_slots: int, variant: Variant) -> Allocation:
    denom = up + nc_slots
    return Allocation(
        s_edge=(Fraction(1, denom),) * t.n_edge,
        s_relay=Fraction(nc_slots, denom),
        variant=variant,
        m_sched=Fraction(t.n_edge, up),
    )


def flow_fair_allocation(t: TopologyComponent, cfg: CodingConfig) -> Allocation:
    """Per-node slot fractions under the flow-fair MAC.

    For X broadcast with coding but no CSMA only bounds exist: the returned
    allocation is the CSMA-enforced upper bound on ``s_j`` and carries the
    lower bound in ``.lower``.
    """
    eff = effective_config(t, cfg)
    up = uplink_slots(t, eff)
    if _is_bounded(t, eff):
        upper = _allocation(t, up, _scalar_nc_slots(t, eff), Variant.BROADCAST_UPPER)
        lower = _allocation(t, up, nc_downlink_slots(t, eff), Variant.BROADCAST_LOWER)
        return replace(upper, lower=lower)
    variant = Variant.BROADCAST if eff.broadcast else Variant.UNICAST
    return _allocation(t, up, nc_downlink_slots(t, eff), variant)


def saturated_throughput(t: TopologyComponent, cfg: CodingConfig) -> Fraction:
    """Packets per slot once every flow is backlogged (one packet per node)."""
    return _saturation(t, effective_config(t, cfg))


def flow_fair_throughput(scenario: LoadScenario, t: TopologyComponent, cfg: CodingConfig) -> ThroughputPoint:
    eff = effective_config(t, cfg)
    s_sat = _saturation(t, eff)
    p = Fraction(scenario.p_total)
    rho_r = relay_load(scenario, coding_coefficient(t, eff))
    if p < s_sat:
        return ThroughputPoint(p, rho_r, p + rho_r, Region.LINEAR)
    return ThroughputPoint(s_sat, rho_r, p + rho_r, Region.SATURATED)


def _water_level(rho_e: list[Fraction], rho_r: Fraction, c: Fraction) -> Fraction:
    """Max-min level ``L`` with sum_j min(rho_j, L) + min(D(L), L) = 1.

    ``D(L) = rho_r + sum_j min(rho_j, L) / c`` is the relay's own demand plus
    its coded forwarding demand. Callers guarantee the channel is overloaded.
    """
    levels = sorted(set(rho_e))
    capped = Fraction(0)
    free = len(rho_e)
    lo = Fraction(0)
    for hi in levels + [None]:
        # relay held to the level
        level = (1 - capped) / (free + 1)
        if lo <= level and (hi is None or level <= hi):
            if rho_r + (capped + free * level) / c >= level:
                return level
        # relay fully served
        slope = free * (1 + 1 / c)
        if slope:
            level = (1 - capped - rho_r - capped / c) / slope
            if lo <= level and (hi is None or level <= hi):
                if rho_r + (capped + free * level) / c <= level:
                    return level
        if hi is None:
            break
        cnt = rho_e.count(hi)
        capped += hi * cnt
        free -= cnt
        lo = hi
    raise ArithmeticError("no water level found; channel is not overloaded")


def node_fair_throughput(scenario: LoadScenario, t: TopologyComponent, cfg: CodingConfig) -> ThroughputPoint:
    """Throughput under the legacy node-fair MAC (fluid model).

    Below capacity all demand is served. Beyond it contention breaks MPR
    pairing, the channel is shared max-min fairly between nodes, and the relay
    splits its share between its own packets and coded forwarding in
    proportion to the two demands.
    """
    eff = effective_config(t, cfg)
    c = coding_coefficient(t, eff)
    up = uplink_slots(t, eff)
    m_sched = Fraction(t.n_edge, up)
    rho_e = [Fraction(r) for r in scenario.rho_edges]
    rho_own = Fraction(scenario.rho_relay)
    edge_sum = sum(rho_e, Fraction(0))
    p = edge_sum + rho_own
    rho_r = edge_sum / c
    load = edge_sum / m_sched + rho_own + rho_r
    if load <= 1:
        return ThroughputPoint(p, rho_r, p + rho_r, Region.LINEAR)

    level = _water_level(rho_e, rho_own, c)
    arrivals = sum((min(r, level) for r in rho_e), Fraction(0))
    s_relay = 1 - arrivals
    demand = rho_own + arrivals / c
    scale = min(Fraction(1), s_relay / demand) if demand else Fraction(1)
    # own traffic gets rho_own*scale, forwarding gets (arrivals/c)*scale of
    # airtime and each forwarding slot carries c natives
    s_total = (rho_own + arrivals) * scale
    saturated = all(r >= level for r in rho_e) and demand >= level
    region = Region.SATURATED if saturated else Region.TRANSITION
    return ThroughputPoint(s_total, rho_r, p + rho_r, region)
