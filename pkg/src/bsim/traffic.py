"""Offered-load scenarios: binomial draws and symmetric loads."""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from numbers import Real
from typing import Sequence

import numpy as np

#: Packets that make up a full slot's worth of channel time at one node.
PACKETS_PER_UNIT = 100


@dataclass(frozen=True)
class LoadScenario:
    """Per-node packet counts ``k`` and channel-time loads ``rho``.

    Index ``n - 1`` is the relay. ``rho`` is normally ``k / 100``; symmetric
    scenarios keep the exact real-valued load instead so analytic code is not
    distorted by rounding.
    """

    k: tuple[int, ...]
    rho: tuple[Real, ...]

    @property
    def n(self) -> int:
        return len(self.k)

    @property
    def p_total(self) -> Real:
        return sum(self.rho, Fraction(0))

    @property
    def rho_edges(self) -> tuple[Real, ...]:
        return self.rho[:-1]

    @property
    def rho_relay(self) -> Real:
        return self.rho[-1]

    @classmethod
    def from_counts(cls, k: Sequence[int]) -> "LoadScenario":
        k = tuple(int(v) for v in k)
        if any(v < 0 for v in k):
            raise ValueError("packet counts must be non-negative")
        return cls(k=k, rho=tuple(Fraction(v, PACKETS_PER_UNIT) for v in k))


def draw_scenario(p_total, n: int, rng_seed) -> LoadScenario:
    """Draw ``k_i ~ Binomial(100, p_total / n)`` independently for every node.

    ``rng_seed`` is anything :func:`numpy.random.default_rng` accepts, so
    sweeps can pass ``[seed, grid_index, trial]``.
    """
    if p_total < 0 or p_total > n:
        raise ValueError(f"offered load must lie in [0, n={n}], got {p_total}")
    rng = np.random.default_rng(rng_seed)
    k = rng.binomial(PACKETS_PER_UNIT, float(p_total) / n, size=n)
    return LoadScenario.from_counts(k.tolist())


def symmetric_scenario(p_total, n: int) -> LoadScenario:
    if p_total < 0:
        raise ValueError(f"offered load must be non-negative, got {p_total}")
    p = Fraction(p_total) if isinstance(p_total, (int, Fraction)) else p_total
    share = p / n
    k = round(PACKETS_PER_UNIT * share)
    return LoadScenario(k=(int(k),) * n, rho=(share,) * n)
