"""Compare the compiled kernels against the NumPy fallback.

    python benchmarks/bench_kernels.py [--repeat 3]

Times full simulator sessions (one packet per node) on large components and
the three kernels in isolation.
"""
import argparse
import time

import numpy as np

from bsim import CodingConfig, LoadScenario, build_component, kernels, run_session


def best_of(fn, repeat):
    times = []
    for _ in range(repeat):
        t0 = time.perf_counter()
        fn()
        times.append(time.perf_counter() - t0)
    return min(times)


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--repeat", type=int, default=3)
    args = ap.parse_args()

    backends = {"python": kernels.backend("python")}
    try:
        backends["cython"] = kernels.backend("cython")
    except ImportError:
        print("compiled extension not built; timing the fallback only")

    sessions = [
        ("x", 401, CodingConfig(m=2, nc=True)),
        ("x", 401, CodingConfig(m=4, nc=True, traffic="broadcast")),
        ("cross", 401, CodingConfig(nc=True)),
        ("cross", 201, CodingConfig(m=2, csma=False, nc=True)),
    ]
    print(f"{'case':<44}" + "".join(f"{b:>12}" for b in backends) + f"{'speedup':>10}")
    for kind, n, cfg in sessions:
        t = build_component(kind, n)
        sc = LoadScenario.from_counts([1] * n)
        res = {b: best_of(lambda k=k: run_session(t, cfg, sc, kern=k, trace=False), args.repeat)
               for b, k in backends.items()}
        label = f"session {kind} N={n} m={cfg.m} csma={cfg.csma} {cfg.traffic.value}"
        _row(label, res)

    rng = np.random.default_rng(0)
    n = 800
    known = np.ascontiguousarray(rng.integers(0, 2, size=(n, n), dtype=np.uint8))
    hear = np.ascontiguousarray(rng.integers(0, 2, size=(n, n), dtype=np.uint8))
    tx = np.arange(0, 8, dtype=np.int64)
    members = np.arange(0, n, 2, dtype=np.int64)
    dest = rng.permutation(n).astype(np.int64)
    order = np.arange(n, dtype=np.int64)
    cases = [
        ("uplink_receive 800x800, 8 senders", lambda k: k.uplink_receive(known.copy(), hear, tx, tx)),
        ("lack_counts 800 nodes x 400 members", lambda k: k.lack_counts(known, members)),
        ("plan_pools 800 packets", lambda k: k.plan_pools(known, dest, order, True)),
    ]
    for label, fn in cases:
        _row(label, {b: best_of(lambda k=k: fn(k), args.repeat) for b, k in backends.items()})


def _row(label, res):
    line = f"{label:<44}" + "".join(f"{v * 1e3:>10.2f}ms" for v in res.values())
    if len(res) == 2:
        line += f"{res['python'] / res['cython']:>9.1f}x"
    print(line)


if __name__ == "__main__":
    main()
