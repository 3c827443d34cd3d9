"""NumPy implementations of the simulator kernels, used when the compiled
extension is unavailable."""
from __future__ import annotations

import numpy as np


def uplink_receive(known: np.ndarray, hear: np.ndarray, tx: np.ndarray, pkts: np.ndarray) -> np.ndarray:
    n = known.shape[0]
    idle = np.ones(n, dtype=bool)
    idle[tx] = False
    heard = hear[:, tx].astype(bool) & idle[:, None]
    for col, p in enumerate(pkts):
        known[heard[:, col], p] = 1
    return heard.any(axis=1).astype(np.uint8)


def lack_counts(known: np.ndarray, members: np.ndarray) -> np.ndarray:
    if len(members) == 0:
        return np.zeros(known.shape[0], dtype=np.int64)
    return (known[:, members] == 0).sum(axis=1).astype(np.int64)


def plan_pools(known: np.ndarray, dest: np.ndarray, order: np.ndarray, distinct_dest: bool):
    k = len(order)
    pool_of = np.full(k, -1, dtype=np.int64)
    pools: list[list[int]] = []
    costs: list[int] = []
    lack = np.zeros(known.shape[1], dtype=np.int64)
    for qi, q in enumerate(order):
        q = int(q)
        dq = int(dest[q])
        self_lack = 0 if known[dq, q] else 1
        for pi, members in enumerate(pools):
            mem = np.asarray(members)
            if distinct_dest and np.any(dest[mem] == dq):
                continue
            lq = self_lack + int((known[dq, mem] == 0).sum())
            missing_q = known[dest[mem], q] == 0
            worst = max(lq, int((lack[mem] + missing_q).max()))
            if worst <= costs[pi]:
                lack[mem[missing_q]] += 1
                lack[q] = lq
                members.append(q)
                pool_of[qi] = pi
                break
        else:
            lack[q] = self_lack
            pools.append([q])
            costs.append(self_lack)
            pool_of[qi] = len(pools) - 1
    return pool_of, np.asarray(costs, dtype=np.int64)
