import pytest
from hypothesis import given
from hypothesis import strategies as st

from bsim import Kind, build_component, csma_groups


def test_cross5_structure():
    t = build_component("cross", 5)
    assert t.relay == 4 and t.n_edge == 4
    assert all(t.overhear_degree(j) == 2 for j in t.edges)
    assert {frozenset((j, t.opposite(j))) for j in t.edges} == {frozenset({0, 2}), frozenset({1, 3})}
    assert t.dest == (2, 3, 0, 1)


def test_x5_structure():
    t = build_component(Kind.X, 5, 2)
    assert t.x1 == (0, 1) and t.x2 == (2, 3)
    assert t.overhear_edges() == [(0, 1), (2, 3)]
    assert all(t.side(t.dest[j]) != t.side(j) for j in t.edges)


def test_x3_is_tandem():
    t = build_component("x", 3, 1)
    assert t.overhear_edges() == []
    assert t.dest == (1, 0)


def test_partial_removes_smallest_edge():
    pc = build_component("partial-cross", 5)
    assert pc.removed_edges == ((0, 1),)
    assert not pc.hears(0, 1) and not pc.hears(1, 0)
    assert len(pc.overhear_edges()) == len(build_component("cross", 5).overhear_edges()) - 1
    px = build_component("partial-x", 5)
    assert px.overhear_edges() == [(2, 3)]


@pytest.mark.parametrize("kind,n,x1", [
    ("cross", 2, None), ("cross", 6, None), ("x", 5, 0), ("x", 5, 4), ("x", 2, None), ("partial-x", 3, 1),
])
def test_rejects_invalid(kind, n, x1):
    with pytest.raises(ValueError):
        build_component(kind, n, x1)


def test_csma_groups_examples():
    assert csma_groups(build_component("cross", 5), 2) == [(0, 2), (1, 3)]
    assert csma_groups(build_component("x", 5, 2), 2) == [(0, 2), (1, 3)]
    assert csma_groups(build_component("x", 5), 1) == [(0,), (1,), (2,), (3,)]
    assert csma_groups(build_component("cross", 5), 4) == [(0, 1, 2, 3)]
    assert csma_groups(build_component("x", 5), 2, csma=False) == [(0, 1), (2, 3)]


def test_cross9_m4_packs_opposite_pairs():
    t = build_component("cross", 9)
    for g in csma_groups(t, 4):
        assert all(t.opposite(j) in g for j in g)


def test_relay_hears_everyone():
    t = build_component("x", 7, 2)
    for j in t.edges:
        assert t.hears(t.relay, j) and t.hears(j, t.relay)
        assert not t.hears(j, j)


@st.composite
def components(draw):
    kind = draw(st.sampled_from(list(Kind)))
    if kind.is_cross:
        n = 2 * draw(st.integers(2, 12)) + 1
        return build_component(kind, n)
    # with four or more edge nodes some set has an overhear edge to remove
    n = draw(st.integers(5 if kind.is_partial else 3, 25))
    return build_component(kind, n, draw(st.integers(1, n - 2)))


@given(components())
def test_overhear_symmetric_irreflexive(t):
    for a in t.edges:
        assert not t.overhear[a][a]
        for b in t.edges:
            assert t.overhear[a][b] == t.overhear[b][a]


@given(components())
def test_flows_cross_the_relay(t):
    for j in t.edges:
        assert t.dest[j] != j
        if t.kind.is_cross:
            assert not t.hears(t.dest[j], j)
            assert t.overhear_degree(j) == t.n - 3 - (1 if any(j in e for e in t.removed_edges) else 0)


@given(components(), st.sampled_from([(1, True), (2, True), (2, False), (4, True), (4, False)]))
def test_csma_groups_partition(t, mc):
    m, csma = mc
    groups = csma_groups(t, m, csma)
    flat = [j for g in groups for j in g]
    assert sorted(flat) == list(t.edges)
    assert all(1 <= len(g) <= m for g in groups)
    assert [min(g) for g in groups] == sorted(min(g) for g in groups)
    if m == 2 and csma:
        for g in groups:
            if len(g) == 2 and t.kind.is_cross:
                assert t.opposite(g[0]) == g[1]
            if len(g) == 2 and not t.kind.is_cross and min(len(t.x1), len(t.x2)) > min(g):
                assert t.side(g[0]) != t.side(g[1])
