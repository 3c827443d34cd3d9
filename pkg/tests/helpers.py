"""Case matrix shared by the test modules."""
from fractions import Fraction as F

from bsim import CodingConfig, build_component


def case_matrix():
    """The 20 five-node configurations with a stated maximum.

    Per topology: routing and MPR m=2/4 (traffic type is irrelevant without
    coding), coding with m=1/2/4 for both traffic types, and coding with m=2
    without coordinated grouping (unicast).
    """
    out = []
    for kind in ("cross", "x"):
        for m in (1, 2, 4):
            out.append((kind, CodingConfig(m=m)))
        for m in (1, 2, 4):
            for traffic in ("unicast", "broadcast"):
                out.append((kind, CodingConfig(m=m, nc=True, traffic=traffic)))
        out.append((kind, CodingConfig(m=2, csma=False, nc=True)))
    return out


#: (kind, m, csma, nc, traffic) -> stated saturated throughput at N=5
STATED_MAXIMA = {
    ("cross", 1, True, False, "unicast"): F(5, 9),
    ("cross", 1, True, True, "unicast"): F(5, 6),
    ("cross", 2, True, False, "unicast"): F(5, 7),
    ("cross", 4, True, False, "unicast"): F(5, 6),
    ("cross", 2, True, True, "unicast"): F(5, 4),
    ("x", 1, True, True, "unicast"): F(5, 7),
    ("x", 2, True, True, "unicast"): F(1),
    ("x", 4, True, True, "unicast"): F(5, 4),
    ("x", 4, True, True, "broadcast"): F(1),
}


def key(kind, cfg):
    return (kind, cfg.m, cfg.csma, cfg.nc, cfg.traffic.value)


def component(kind, n=5, x1_size=None):
    return build_component(kind, n, x1_size)

#: criterion number -> PASS/FAIL line, filled by test_acceptance
RESULTS: dict = {}
