"""Integer-slot session simulator for a relay component under the flow-fair MAC.

Coded packets are tracked by support and count only: a node that holds ``h``
members of a pool natively and has received ``r`` independent combinations
over it decodes the whole pool once ``h + r >= len(pool)``. This is exact for
generic coefficients over a large field.

Each round every backlogged edge node sends one packet uplink (in MPR groups),
then the relay sends coded combinations until every receiver that needs them
can decode, then its own packet uncoded.
"""
from __future__ import annotations

from dataclasses import dataclass, field, replace
from fractions import Fraction

import numpy as np

from . import kernels as _default_kernels
from .macalloc import CodingConfig
from .topology import TopologyComponent, csma_groups
from .traffic import LoadScenario


class SimulationError(RuntimeError):
    """The session did not terminate within the slot budget."""


@dataclass(frozen=True, order=True)
class PacketId:
    origin: int
    seq: int

    def __str__(self) -> str:
        return f"{self.origin}.{self.seq}"


@dataclass(frozen=True)
class CodedPacket:
    support: frozenset
    dof_index: int


@dataclass
class KnowledgeState:
    """Native knowledge and received combinations for every node.

    ``known[node, col]`` marks packet ``packets[col]`` as held natively (own,
    overheard, or decoded). ``combos[node][pool]`` counts independent
    combinations received over ``pools[pool]``.
    """

    packets: list[PacketId]
    known: np.ndarray
    pools: list[tuple[int, ...]] = field(default_factory=list)
    combos: list[np.ndarray] = field(default_factory=list)

    @classmethod
    def empty(cls, n_nodes: int, packets: list[PacketId]) -> "KnowledgeState":
        return cls(packets=list(packets), known=np.zeros((n_nodes, len(packets)), dtype=np.uint8))

    @property
    def n_nodes(self) -> int:
        return self.known.shape[0]

    def column(self, pkt: PacketId) -> int:
        return self.packets.index(pkt)

    def add_pool(self, cols) -> int:
        self.pools.append(tuple(int(c) for c in cols))
        self.combos.append(np.zeros(self.n_nodes, dtype=np.int64))
        return len(self.pools) - 1


def rank_satisfied(state: KnowledgeState, node: int, pool: int) -> bool:
    members = state.pools[pool]
    held = sum(1 for c in members if state.known[node, c])
    return held + int(state.combos[pool][node]) >= len(members)


def decode_check(state: KnowledgeState, node: int, flow: PacketId) -> bool:
    """Can ``node`` recover packet ``flow``?

    True when it holds the packet natively, or when every pool containing the
    packet meets the rank condition at ``node``.
    """
    col = state.column(flow)
    if state.known[node, col]:
        return True
    pools = [i for i, members in enumerate(state.pools) if col in members]
    return bool(pools) and all(rank_satisfied(state, node, i) for i in pools)


@dataclass(frozen=True)
class SlotRecord:
    slot: int
    tx: tuple[int, ...]
    kind: str
    support: tuple[PacketId, ...]
    rx: tuple[int, ...]

    def line(self) -> str:
        def ids(xs):
            return "[" + ",".join(str(x) for x in xs) + "]"
        return f"slot={self.slot} tx={ids(self.tx)} kind={self.kind} support={ids(self.support)} rx={ids(self.rx)}"


@dataclass(frozen=True)
class SessionResult:
    total_slots: int
    uplink_slots: int
    downlink_slots: int
    delivered: int
    trace: tuple[SlotRecord, ...]

    @property
    def throughput(self) -> Fraction:
        if self.total_slots == 0:
            return Fraction(0)
        return Fraction(self.delivered, self.total_slots)


def _hear_matrix(t: TopologyComponent) -> np.ndarray:
    n = t.n
    hear = np.zeros((n, n), dtype=np.uint8)
    hear[: n - 1, : n - 1] = np.asarray(t.overhear, dtype=np.uint8).reshape(n - 1, n - 1)
    hear[t.relay, : n - 1] = 1
    hear[: n - 1, t.relay] = 1
    return hear


@dataclass
class _Round:
    records: list = field(default_factory=list)
    uplink: int = 0
    downlink: int = 0
    delivered: int = 0
    state: KnowledgeState | None = None

    @property
    def slots(self) -> int:
        return self.uplink + self.downlink


def _run_round(t: TopologyComponent, cfg: CodingConfig, hear: np.ndarray, active: list[int],
               relay_sends: bool, seq: int, kern, budget: int, keep_trace: bool) -> _Round:
    n = t.n
    relay = t.relay
    packets = [PacketId(j, seq) for j in range(n)]
    state = KnowledgeState.empty(n, packets)
    for j in active:
        state.known[j, j] = 1
    if relay_sends:
        state.known[relay, relay] = 1
    edges = list(t.edges)
    receivers = np.asarray(edges, dtype=np.int64)
    out = _Round(state=state)

    def emit(tx, kind, support_cols, rx_nodes):
        if out.slots > budget:
            raise SimulationError(f"slot budget of {budget} exceeded")
        if keep_trace:
            out.records.append(SlotRecord(
                slot=-1,
                tx=tuple(int(x) for x in tx),
                kind=kind,
                support=tuple(packets[c] for c in support_cols),
                rx=tuple(int(x) for x in rx_nodes),
            ))

    active_set = set(active)
    for g in csma_groups(t, cfg.m, cfg.csma):
        tx = [j for j in g if j in active_set]
        if not tx:
            continue
        arr = np.asarray(tx, dtype=np.int64)
        rx = kern.uplink_receive(state.known, hear, arr, arr)
        out.uplink += 1
        emit(tx, "uplink", tx, np.flatnonzero(rx))

    if cfg.broadcast:
        needers = {j: [i for i in range(n) if i != j] for j in active}
    else:
        needers = {j: [t.dest[j]] for j in active}
    pending = [j for j in active if not state.known[needers[j], j].all()]

    def send_pool(cols: list[int], pool_needers: list[int]):
        pid = state.add_pool(cols)
        members = np.asarray(cols, dtype=np.int64)
        combos = state.combos[pid]
        # lacks only change when a node decodes the whole pool
        lacks = kern.lack_counts(state.known, members)
        watch = np.asarray(pool_needers, dtype=np.int64)
        while lacks[watch].any():
            combos[receivers] += 1
            out.downlink += 1
            emit([relay], "coded", cols, receivers)
            ready = np.flatnonzero((lacks > 0) & (combos >= lacks))
            ready = ready[ready != relay]
            if len(ready):
                state.known[np.ix_(ready, members)] = 1
                lacks[ready] = 0

    if pending:
        if not cfg.nc:
            for j in pending:
                send_pool([j], needers[j])
        elif cfg.broadcast:
            send_pool(pending, edges)
        else:
            dest_col = np.zeros(n, dtype=np.int64)
            dest_col[: n - 1] = t.dest
            order = np.asarray(pending, dtype=np.int64)
            pool_of, costs = kern.plan_pools(state.known, dest_col, order, True)
            pools: dict[int, list[int]] = {}
            for j, pid in zip(pending, pool_of.tolist()):
                pools.setdefault(pid, []).append(j)
            # first-fit never lets a pool's cost grow, so also price one big pool
            dests = [t.dest[j] for j in pending]
            if len(pools) > 1 and len(set(dests)) == len(dests):
                lacks = kern.lack_counts(state.known, order)
                if int(lacks[dests].max()) < int(costs.sum()):
                    pools = {0: list(pending)}
            for pid in sorted(pools):
                cols = pools[pid]
                send_pool(cols, sorted({t.dest[j] for j in cols}))

    if relay_sends:
        state.known[edges, relay] = 1
        out.downlink += 1
        emit([relay], "own", [relay], receivers)

    for j in active:
        if state.known[needers[j], j].all():
            out.delivered += 1
    if relay_sends:
        targets = edges if cfg.broadcast else [t.relay_dest]
        if state.known[targets, relay].all():
            out.delivered += 1
    return out


def run_session(t: TopologyComponent, cfg: CodingConfig, scenario: LoadScenario,
                kern=None, trace: bool = True) -> SessionResult:
    """Simulate a full session carrying ``scenario.k[i]`` packets from node i.

    Packets go out in rounds, one per backlogged node per round. With coding
    and ``m >= 3`` each round also tries capping uplink at two coordinated
    senders and keeps whichever schedule finishes sooner (ties keep full MPR).
    """
    if scenario.n != t.n:
        raise ValueError(f"scenario has {scenario.n} nodes, component has {t.n}")
    kern = kern or _default_kernels
    hear = _hear_matrix(t)
    budget = 10 * max(sum(scenario.k), 1) * t.n
    schedules = [cfg]
    if cfg.nc and cfg.m >= 3:
        schedules.append(replace(cfg, m=2, csma=True))

    records: list[SlotRecord] = []
    uplink = downlink = delivered = 0
    for seq in range(max(scenario.k, default=0)):
        active = [j for j in t.edges if scenario.k[j] > seq]
        relay_sends = scenario.k[t.relay] > seq
        best = None
        for sched in schedules:
            rnd = _run_round(t, sched, hear, active, relay_sends, seq, kern,
                             budget - uplink - downlink, trace)
            if best is None or rnd.slots < best.slots:
                best = rnd
        records.extend(best.records)
        uplink += best.uplink
        downlink += best.downlink
        delivered += best.delivered

    return SessionResult(
        total_slots=uplink + downlink,
        uplink_slots=uplink,
        downlink_slots=downlink,
        delivered=delivered,
        trace=tuple(replace(r, slot=i) for i, r in enumerate(records)),
    )


def one_packet_each(t: TopologyComponent) -> LoadScenario:
    return LoadScenario.from_counts([1] * t.n)


def completion_delay(t: TopologyComponent, cfg: CodingConfig, kern=None) -> int:
    """Slots until every flow has delivered a single packet."""
    return run_session(t, cfg, one_packet_each(t), kern=kern, trace=False).total_slots
