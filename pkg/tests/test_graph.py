import itertools

import pytest
from hypothesis import given
from hypothesis import strategies as st

from hamsign import generators as gen
from hamsign.gf2 import Multisign
from hamsign.graph import (
    CycleSubgraph,
    HamiltonianCycle,
    InstanceFormatError,
    MalformedCycleError,
    MultisignedCompleteGraph,
    add_constant,
    cycle_multisign,
    dumps_instance,
    edge_set_multisign,
    loads_instance,
    normalize_vertex,
    switch,
    symmetric_difference,
    triangle_census,
)

from strategies import graphs


def test_identity_graph_cycles_are_identity():
    G = MultisignedCompleteGraph(6, 3)
    H = HamiltonianCycle.from_order([0, 3, 1, 5, 2, 4])
    assert cycle_multisign(G, H) == Multisign.zero(3)


def test_triangle_multisign_xor():
    G = MultisignedCompleteGraph(3, 2, {(0, 1): 0b01, (1, 2): 0b10, (0, 2): 0b11})
    assert cycle_multisign(G, CycleSubgraph.from_vertices([0, 1, 2])) == Multisign.parse("00")


def test_figure3_cycle_through_marked_path():
    # path v1 v2 v3 v7 v4 v5 is 0 1 2 6 3 4 here, so only three path edges count
    G = gen.paper_figure3()
    H = HamiltonianCycle.from_order([0, 1, 2, 6, 3, 4, 5, 7, 8])
    want = G.label(0, 1) + G.label(1, 2) + G.label(3, 4)
    assert cycle_multisign(G, H) == want == Multisign.parse("1101")


def test_canonical_form():
    H = HamiltonianCycle.from_order([2, 0, 4, 1, 3])
    assert H.order == (0, 2, 3, 1, 4)
    assert HamiltonianCycle.from_order(reversed(H.order)) == H
    with pytest.raises(MalformedCycleError):
        HamiltonianCycle((0, 4, 1, 2, 3))
    with pytest.raises(MalformedCycleError):
        HamiltonianCycle.from_order([0, 1, 1, 2])


def test_cycle_subgraph_rejects_bad_degrees():
    with pytest.raises(MalformedCycleError):
        CycleSubgraph.from_edges([(0, 1), (1, 2)])
    with pytest.raises(MalformedCycleError):
        CycleSubgraph.from_edges([(0, 1), (1, 2), (0, 2), (0, 3), (3, 4), (0, 4)])


def test_switching_examples():
    G = gen.uniform(5, 3, seed=1)
    assert switch(G, [0] * 5) == G
    H = MultisignedCompleteGraph(4, 1)
    S = switch(H, [1, 0, 0, 0])
    flipped = {e for e in S.edges() if S.sigma(*e)}
    assert flipped == {(0, 1), (0, 2), (0, 3)}


def test_normalize_examples():
    G = MultisignedCompleteGraph(3, 2, {(0, 1): 0b10, (0, 2): 0b01, (1, 2): 0b11})
    N, s = normalize_vertex(G, 0)
    assert N.sigma(0, 1) == N.sigma(0, 2) == 0
    assert N.sigma(1, 2) == 0b10 ^ 0b11 ^ 0b01 == 0
    tri = CycleSubgraph.from_vertices([0, 1, 2])
    assert cycle_multisign(G, tri) == cycle_multisign(N, tri) == Multisign.zero(2)
    already = gen.normalized_sparse(6, 2, special=[(1, 2), (3, 4)])
    same, s = normalize_vertex(already, 0)
    assert same == already and all(x.bits == 0 for x in s)


def test_add_constant_parity():
    G = gen.uniform(5, 2, seed=3)
    x = Multisign.parse("10")
    assert add_constant(G, 0) == G
    G2 = add_constant(G, x)
    H = HamiltonianCycle.from_order(range(5))
    assert cycle_multisign(G2, H) == cycle_multisign(G, H) + x
    tri = CycleSubgraph.from_vertices([0, 1, 2])
    assert cycle_multisign(G2, tri) == cycle_multisign(G, tri) + x
    G6 = gen.uniform(6, 2, seed=3)
    H6 = HamiltonianCycle.from_order(range(6))
    assert cycle_multisign(add_constant(G6, x), H6) == cycle_multisign(G6, H6)


def test_census_examples():
    assert triangle_census(MultisignedCompleteGraph(5, 2)) == {Multisign.zero(2): 10}
    n = 8
    assert triangle_census(MultisignedCompleteGraph(n, 3)) == {Multisign.zero(3): 56}


def test_case1_census_by_hand():
    # star centre 1 with unit edges to 2, 3, 4 and everything else e.
    # A triangle through 1 and two of {2,3,4} has the sum of two units;
    # one leg in {2,3,4} and the other elsewhere gives a single unit.
    G = gen.paper_case1(7, "star")
    eta = triangle_census(G)
    for label in ("110", "101", "011"):
        assert eta[Multisign.parse(label)] == 1
    others = 7 - 4  # vertices outside the star
    for label in ("100", "010", "001"):
        assert eta[Multisign.parse(label)] == others
    assert eta[Multisign.zero(3)] == 35 - 3 - 3 * others


def test_symmetric_difference_examples():
    A = [(0, 1), (1, 2), (0, 2)]
    assert symmetric_difference(A, A) == frozenset()
    sq = symmetric_difference(A, [(1, 2), (2, 3), (1, 3)])
    assert CycleSubgraph(sq).vertices() == {0, 1, 2, 3} and len(sq) == 4
    two = symmetric_difference(A, [(3, 4), (4, 5), (3, 5)])
    assert len(two) == 6


def test_instance_round_trip_and_errors():
    G = gen.uniform(7, 3, seed=9)
    text = dumps_instance(G)
    assert loads_instance(text) == G
    assert dumps_instance(loads_instance(text)) == text
    assert loads_instance(dumps_instance(G, comment="hello\nworld")) == G
    with pytest.raises(InstanceFormatError, match="line 2"):
        loads_instance("msg 4 2\n0 0 11\n")
    with pytest.raises(InstanceFormatError, match="line 3"):
        loads_instance("msg 4 2\n0 1 11\n1 0 1x\n")
    with pytest.raises(InstanceFormatError, match="line 1"):
        loads_instance("graph 4 2\n")
    with pytest.raises(InstanceFormatError, match="duplicate"):
        loads_instance("msg 4 1\n0 1 1\n0 1 1\n")


@given(graphs(), st.data())
def test_switching_preserves_cycle_multisigns(G, data):
    s = data.draw(st.lists(st.integers(0, (1 << G.m) - 1), min_size=G.n, max_size=G.n))
    order = data.draw(st.permutations(range(G.n)))
    H = HamiltonianCycle.from_order(order)
    assert cycle_multisign(switch(G, s), H) == cycle_multisign(G, H)
    k = data.draw(st.integers(3, G.n))
    C = CycleSubgraph.from_vertices(order[:k])
    assert cycle_multisign(switch(G, s), C) == cycle_multisign(G, C)


@given(graphs(), st.integers(0, 6))
def test_normalize_zeroes_star_and_keeps_triangles(G, v):
    v %= G.n
    N, s = normalize_vertex(G, v)
    assert all(N.sigma(v, u) == 0 for u in range(G.n) if u != v)
    assert triangle_census(N) == triangle_census(G)


@given(graphs(), st.data())
def test_add_constant_shifts_by_n_x(G, data):
    x = data.draw(st.integers(0, (1 << G.m) - 1))
    H = HamiltonianCycle.from_order(data.draw(st.permutations(range(G.n))))
    shift = x if G.n % 2 else 0
    assert cycle_multisign(add_constant(G, x), H).bits == cycle_multisign(G, H).bits ^ shift


@given(graphs(n_max=8))
def test_census_totals(G):
    eta = triangle_census(G)
    assert sum(eta.values()) == G.n * (G.n - 1) * (G.n - 2) // 6
    direct = {}
    for t in itertools.combinations(range(G.n), 3):
        x = edge_set_multisign(G, itertools.combinations(t, 2))
        direct[x] = direct.get(x, 0) + 1
    assert eta == direct


@given(graphs())
def test_instance_text_round_trip(G):
    assert loads_instance(dumps_instance(G)) == G
