"""Relay-bottleneck topology components.

Node ``n - 1`` is always the relay. Nodes ``0 .. n - 2`` are edge nodes; every
edge node has a primary link to the relay, and edge-to-edge links are passive
overhear links only.
"""
from __future__ import annotations

import enum
from dataclasses import dataclass, field
from functools import lru_cache
from itertools import combinations


class Kind(enum.Enum):
    CROSS = "cross"
    X = "x"
    PARTIAL_CROSS = "partial-cross"
    PARTIAL_X = "partial-x"

    @property
    def is_cross(self) -> bool:
        return self in (Kind.CROSS, Kind.PARTIAL_CROSS)

    @property
    def is_partial(self) -> bool:
        return self in (Kind.PARTIAL_CROSS, Kind.PARTIAL_X)


@dataclass(frozen=True)
class TopologyComponent:
    kind: Kind
    n: int
    x1: tuple[int, ...]
    x2: tuple[int, ...]
    overhear: tuple[tuple[bool, ...], ...]
    dest: tuple[int, ...]
    relay_dest: int
    removed_edges: tuple[tuple[int, int], ...] = field(default=())

    @property
    def relay(self) -> int:
        return self.n - 1

    @property
    def edges(self) -> range:
        return range(self.n - 1)

    @property
    def n_edge(self) -> int:
        return self.n - 1

    def opposite(self, j: int) -> int:
        if not self.kind.is_cross:
            raise ValueError("opposite() is only defined for cross components")
        e = self.n - 1
        return (j + e // 2) % e

    def side(self, j: int) -> int:
        """Set membership of an edge node: 1 for x1, 2 for x2, 0 for cross."""
        if self.kind.is_cross:
            return 0
        return 1 if j in self.x1 else 2

    def hears(self, receiver: int, sender: int) -> bool:
        """True if ``receiver`` picks up transmissions from ``sender``."""
        if receiver == sender:
            return False
        if receiver == self.relay or sender == self.relay:
            return True
        return self.overhear[receiver][sender]

    def overhear_degree(self, j: int) -> int:
        return sum(self.overhear[j])

    def overhear_edges(self) -> list[tuple[int, int]]:
        return [(a, b) for a, b in combinations(self.edges, 2) if self.overhear[a][b]]


def _cross_overhear(e: int) -> list[list[bool]]:
    half = e // 2
    rows = []
    for a in range(e):
        row = [True] * e
        row[a] = row[(a + half) % e] = False
        rows.append(row)
    return rows


def _x_overhear(e: int, x1: tuple[int, ...]) -> list[list[bool]]:
    k = len(x1)
    base = ([True] * k + [False] * (e - k), [False] * k + [True] * (e - k))
    rows = []
    for a in range(e):
        row = list(base[0] if a < k else base[1])
        row[a] = False
        rows.append(row)
    return rows


def _x_dest(x1: tuple[int, ...], x2: tuple[int, ...]) -> list[int]:
    dest = [0] * (len(x1) + len(x2))
    for i, j in enumerate(x1):
        dest[j] = x2[i % len(x2)]
    for i, j in enumerate(x2):
        dest[j] = x1[i % len(x1)]
    return dest


@lru_cache(maxsize=16)
def build_component(kind: Kind | str, n: int, x1_size: int | None = None) -> TopologyComponent:
    """Build a cross, X or partial component with ``n`` nodes (relay included).

    ``x1_size`` is only used by the X families and defaults to an even split
    of the edge nodes. Partial variants drop the lexicographically smallest
    overhear edge of the parent component. Results are cached; components are
    immutable.
    """
    kind = Kind(kind)
    if n < 3:
        raise ValueError(f"a component needs at least 3 nodes, got n={n}")
    e = n - 1
    if kind.is_cross:
        if e % 2:
            raise ValueError(f"cross components need an even number of edge nodes, got n={n}")
        x1: tuple[int, ...] = ()
        x2: tuple[int, ...] = ()
        overhear = _cross_overhear(e)
        half = e // 2
        dest = [(j + half) % e for j in range(e)]
    else:
        if x1_size is None:
            x1_size = e // 2
        if not 1 <= x1_size <= n - 2:
            raise ValueError(f"x1_size must lie in [1, {n - 2}], got {x1_size}")
        x1 = tuple(range(x1_size))
        x2 = tuple(range(x1_size, e))
        overhear = _x_overhear(e, x1)
        dest = _x_dest(x1, x2)

    removed: tuple[tuple[int, int], ...] = ()
    if kind.is_partial:
        candidates = [(a, b) for a, b in combinations(range(e), 2) if overhear[a][b]]
        if not candidates:
            raise ValueError(f"{kind.value} with n={n} has no overhear edge to remove")
        a, b = candidates[0]
        overhear[a][b] = overhear[b][a] = False
        removed = ((a, b),)

    return TopologyComponent(
        kind=kind,
        n=n,
        x1=x1,
        x2=x2,
        overhear=tuple(tuple(row) for row in overhear),
        dest=tuple(dest),
        relay_dest=0,
        removed_edges=removed,
    )


def _chunk(order: list[int], size: int) -> list[tuple[int, ...]]:
    return [tuple(order[i:i + size]) for i in range(0, len(order), size)]


def _pair_order(t: TopologyComponent) -> list[tuple[int, ...]]:
    # Coordinated pairs: opposite nodes for cross, one node per set for X.
    if t.kind.is_cross:
        half = t.n_edge // 2
        return [(j, j + half) for j in range(half)]
    pairs: list[tuple[int, ...]] = list(zip(t.x1, t.x2))
    k = len(pairs)
    surplus = list(t.x1[k:]) + list(t.x2[k:])
    pairs.extend(_chunk(surplus, 2))
    return pairs


def csma_groups(t: TopologyComponent, m: int, csma: bool = True) -> list[tuple[int, ...]]:
    """Partition the edge nodes into simultaneous-transmit groups of size <= m.

    With ``csma`` the groups follow the coordinated pairing (opposite pairs on
    cross, one node from each set on X), and larger ``m`` packs consecutive
    pairs together. Without it nodes are chunked in index order. For ``m >= 3``
    the coordinated layout is always used, since uplink with that many
    simultaneous senders already presumes the extended CSMA scheme.
    """
    if m < 1:
        raise ValueError(f"MPR order must be >= 1, got {m}")
    edges = list(t.edges)
    if m == 1:
        return [(j,) for j in edges]
    if not csma and m < 3:
        groups = _chunk(edges, m)
    else:
        flat = [j for pair in _pair_order(t) for j in pair]
        groups = _chunk(flat, m)
    groups = [tuple(sorted(g)) for g in groups]
    return sorted(groups, key=min)
