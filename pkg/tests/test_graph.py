from itertools import combinations

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from causalgap import catalog
from causalgap.errors import CycleDetected, DanglingEdge, DuplicateLabel, OverlappingSets, UnknownNode
from causalgap.graph import (
    Gdag,
    Skeleton,
    ancestors,
    canonical_projection,
    d_separated,
    delete_nodes,
    descendants,
    e_separated,
    hidden_path_exists,
    is_canonical,
    isomorphic_fixing_observed,
    maximal_connected_subsets,
    skeleton,
    validate,
)

from .oracles import dsep_moral, dsep_paths
from .strategies import dags, disjoint_query


def g_of(name):
    return catalog.get(name).graph


def test_validate_accepts_empty_and_bell():
    assert validate(Gdag(observed=frozenset())) is None
    assert validate(g_of("bell")) is None


def test_two_cycle_rejected():
    with pytest.raises(CycleDetected):
        Gdag.from_edges([("A", "B"), ("B", "A")])


def test_self_loop_and_dangling_and_duplicate():
    with pytest.raises(CycleDetected):
        Gdag.from_edges([("A", "A")])
    with pytest.raises(DanglingEdge):
        Gdag(observed=frozenset("A"), edges=frozenset([("A", "B")]))
    with pytest.raises(DuplicateLabel):
        Gdag(observed=frozenset("AB"), latent=frozenset("B"))


def test_ancestors_and_descendants():
    assert descendants(g_of("bell"), {"U"}) == {"X", "Y"}
    bike = g_of("bicycle")
    assert ancestors(bike, {"B"}) >= {"G", "P", "T", "H", "F"}
    assert ancestors(bike, {"E"}) == frozenset()
    with pytest.raises(UnknownNode):
        ancestors(bike, {"Q"})


def test_node_is_not_its_own_ancestor():
    g = Gdag.from_edges([("A", "B")])
    assert "A" not in ancestors(g, {"A"})
    assert ancestors(g, {"A", "B"}) == {"A"}


def test_dsep_examples():
    assert d_separated(g_of("one-sided-bell"), {"A"}, {"Y"})
    g17 = g_of("hlp-17")
    assert not d_separated(g17, {"F"}, {"D"}, {"C"})
    assert not d_separated(g17, {"F"}, {"D"}, {"C", "E"})
    assert d_separated(Gdag(observed=frozenset("XY")), {"X"}, {"Y"})


def test_dsep_errors():
    g = g_of("bell")
    with pytest.raises(OverlappingSets):
        d_separated(g, {"A"}, {"A"})
    with pytest.raises(UnknownNode):
        d_separated(g, {"A"}, {"Q"})


def test_delete_nodes():
    g17 = g_of("hlp-17")
    assert delete_nodes(g17, set()) == g17
    h = delete_nodes(g17, {"E"})
    assert not any("E" in e for e in h.edges)
    assert d_separated(h, {"F"}, {"D"}, {"C"})
    single = delete_nodes(Gdag.from_edges([("A", "B")]), {"A"})
    assert single.observed == {"B"} and not single.edges


def test_e_separation_examples():
    g17 = g_of("hlp-17")
    assert e_separated(g17, {"F"}, {"D"}, {"C"}, {"E"})
    bell = g_of("bell")
    assert not e_separated(bell, {"X"}, {"Y"}, {"A", "B"})
    assert e_separated(bell, {"A"}, {"Y"}) == d_separated(bell, {"A"}, {"Y"})
    with pytest.raises(OverlappingSets):
        e_separated(g17, {"F"}, {"D"}, {"C"}, {"C"})


def test_hidden_paths():
    assert hidden_path_exists(Gdag.from_edges([("X", "u"), ("u", "Y")], latent=["u"]), "X", "Y")
    assert not hidden_path_exists(Gdag.from_edges([("X", "Y")]), "X", "Y")
    fig4a = g_of("evans-fig4a")
    assert hidden_path_exists(fig4a, "A", "C")
    # B is a hidden common cause of C and E: both reachable from it along latent-only paths
    assert "C" in descendants(fig4a, {"B"}) and "E" in descendants(fig4a, {"B"})


def test_maximal_connected_subsets():
    assert maximal_connected_subsets(g_of("evans-fig4a")) == {frozenset("CDEG")}
    assert maximal_connected_subsets(Gdag.from_edges([("A", "B"), ("B", "C")])) == frozenset()
    assert maximal_connected_subsets(g_of("bell")) == {frozenset("XY")}


def test_canonical_projection_examples():
    a, b = g_of("evans-fig4a"), g_of("evans-fig4b")
    pa = canonical_projection(a)
    assert isomorphic_fixing_observed(pa, b)
    assert skeleton(a) == skeleton(b)
    plain = Gdag.from_edges([("A", "B"), ("A", "C")])
    assert canonical_projection(plain) == plain
    hidden = Gdag.from_edges([("X", "u"), ("u", "Y")], latent=["u"])
    assert canonical_projection(hidden) == Gdag.from_edges([("X", "Y")])


def test_projection_latent_names_are_deterministic():
    p1 = canonical_projection(g_of("evans-fig4a"))
    p2 = canonical_projection(g_of("evans-fig4a"))
    assert p1 == p2 and p1.latent == {"U_C_D_E_G"}


def test_is_canonical():
    assert is_canonical(g_of("evans-fig4b"))
    assert not is_canonical(g_of("evans-fig4a"))
    assert is_canonical(Gdag(observed=frozenset("ABC")))


def test_skeleton_examples():
    assert skeleton(Gdag(observed=frozenset("AB"))).edges == frozenset()
    assert str(skeleton(g_of("bell"))) == "A-X B-Y X-Y"
    sk = skeleton(g_of("appendix-8"))
    want = Skeleton(frozenset("AWXYZ"), [("X", "Z"), ("Z", "Y"), ("Z", "W"), ("A", "Y"), ("A", "W"), ("Y", "W")])
    assert sk == want


# invariants


@settings(max_examples=60, deadline=None)
@given(dags(max_nodes=6, latent=True))
def test_dsep_symmetric_exhaustive(g):
    nodes = sorted(g.nodes)
    for x, y in combinations(nodes, 2):
        rest = [v for v in nodes if v not in (x, y)]
        for k in range(len(rest) + 1):
            for z in combinations(rest, k):
                assert d_separated(g, {x}, {y}, z) == d_separated(g, {y}, {x}, z)


@settings(max_examples=150, deadline=None)
@given(st.data())
def test_dsep_matches_path_enumeration(data):
    g = data.draw(dags(min_nodes=2, max_nodes=7))
    x, y, z = data.draw(disjoint_query(g))
    expected = dsep_paths(g.nodes, g.edges, x, y, z)
    assert d_separated(g, x, y, z) == expected
    assert dsep_moral(g.nodes, g.edges, x, y, z) == expected


@settings(max_examples=100, deadline=None)
@given(st.data())
def test_set_valued_dsep_matches_moral_oracle(data):
    g = data.draw(dags(min_nodes=3, max_nodes=7))
    nodes = sorted(g.nodes)
    labels = data.draw(st.lists(st.sampled_from([0, 1, 2]), min_size=len(nodes), max_size=len(nodes)))
    x = {v for v, t in zip(nodes, labels) if t == 0}
    y = {v for v, t in zip(nodes, labels) if t == 1}
    z = {v for v, t in zip(nodes, labels) if t == 2}
    if x and y:
        assert d_separated(g, x, y, z) == dsep_moral(g.nodes, g.edges, x, y, z)


@settings(max_examples=50, deadline=None)
@given(dags(min_nodes=3, max_nodes=6))
def test_dsep_survives_deleting_unused_nodes(g):
    nodes = sorted(g.nodes)
    for x, y in combinations(nodes, 2):
        rest = [v for v in nodes if v not in (x, y)]
        for k in range(len(rest) + 1):
            for z in combinations(rest, k):
                if not d_separated(g, {x}, {y}, z):
                    continue
                spare = [v for v in rest if v not in z]
                for j in range(1, len(spare) + 1):
                    for w in combinations(spare, j):
                        assert e_separated(g, {x}, {y}, z, w)


@settings(max_examples=80, deadline=None)
@given(dags(max_nodes=6, latent=True))
def test_projection_idempotent_and_skeleton_invariant(g):
    p = canonical_projection(g)
    assert is_canonical(p)
    assert isomorphic_fixing_observed(canonical_projection(p), p)
    assert skeleton(g) == skeleton(p)


@settings(max_examples=80, deadline=None)
@given(dags(max_nodes=6, latent=True))
def test_projection_preserves_observed_dsep(g):
    p = canonical_projection(g)
    obs = sorted(g.observed)
    for x, y in combinations(obs, 2):
        rest = [v for v in obs if v not in (x, y)]
        for k in range(len(rest) + 1):
            for z in combinations(rest, k):
                assert d_separated(g, {x}, {y}, z) == d_separated(p, {x}, {y}, z)


@settings(max_examples=80, deadline=None)
@given(dags(max_nodes=6, latent=True))
def test_facets_are_incomparable_skeleton_cliques(g):
    facets = maximal_connected_subsets(g)
    sk = skeleton(g)
    for s, t in combinations(facets, 2):
        assert not s <= t and not t <= s
    for s in facets:
        assert all(sk.adjacent(a, b) for a, b in combinations(sorted(s), 2))
