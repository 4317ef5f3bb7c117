import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from hamsign.finder import ring_necklace
from hamsign.gf2 import Multisign
from hamsign.graph import MultisignedCompleteGraph, cycle_multisign, path_bits
from hamsign.necklace import (
    CoveringNecklace,
    InvalidNecklaceError,
    Square,
    diamond_paths,
    dumps_necklace,
    loads_necklace,
    necklace_coset,
    realize_multisign,
    square_bits,
    validate,
)
from hamsign.oracle import realized_bits

from strategies import graphs

SQUARE = Square(0, 1, 2, 3)  # junctions 0 and 2


def small_necklace():
    return CoveringNecklace.build([SQUARE], [(0, 4, 5, 2)])


def test_single_square_necklace_is_valid():
    G = MultisignedCompleteGraph(6, 1)
    assert validate(G, small_necklace()) is None


def test_uncovered_vertex_is_condition_3():
    G = MultisignedCompleteGraph(6, 1)
    v = validate(G, CoveringNecklace.build([SQUARE], [(0, 4, 2)]))
    assert v is not None and v.condition == 3 and 5 in v.vertices


def test_shared_interior_is_condition_1():
    G = MultisignedCompleteGraph(7, 1)
    N = CoveringNecklace.build([SQUARE, Square(2, 1, 4, 5)], [(4, 6, 0)])
    v = validate(G, N)
    assert v is not None and v.condition == 1


def test_open_chain_is_condition_2():
    G = MultisignedCompleteGraph(8, 1)
    N = CoveringNecklace.build([SQUARE, Square(4, 5, 6, 7)], [], [(2, 4), (0, 6)])
    assert validate(G, N) is None
    two_rings = CoveringNecklace.build(
        [SQUARE, Square(5, 6, 7, 8)], [(0, 4, 2), (5, 9, 7)]
    )
    v = validate(MultisignedCompleteGraph(10, 1), two_rings)
    assert v is not None and v.condition == 2


def test_validation_errors_raise_in_realize():
    G = MultisignedCompleteGraph(6, 1)
    with pytest.raises(InvalidNecklaceError):
        realize_multisign(G, CoveringNecklace.build([SQUARE], [(0, 4, 2)]), Multisign.zero(1))


def test_diamond_identity_graph():
    G = MultisignedCompleteGraph(4, 2)
    p0, p1 = diamond_paths(G, SQUARE)
    assert path_bits(G, p0.vertices) == path_bits(G, p1.vertices) == square_bits(G, SQUARE) == 0
    assert p0.vertices[0] == p1.vertices[0] == 0 and p0.vertices[-1] == p1.vertices[-1] == 2


@given(graphs(n_min=4, n_max=4, m_min=3, m_max=3))
def test_diamond_paths_differ_by_square(G):
    p0, p1 = diamond_paths(G, SQUARE)
    diff = path_bits(G, p0.vertices) ^ path_bits(G, p1.vertices)
    assert diff == square_bits(G, SQUARE)
    if square_bits(G, SQUARE):
        assert path_bits(G, p0.vertices) != path_bits(G, p1.vertices)


def test_single_square_realizes_both_targets():
    G = MultisignedCompleteGraph(6, 1, {(0, 1): 1})
    N = small_necklace()
    assert square_bits(G, SQUARE) == 1
    assert realized_bits(G) == {0, 1}  # oracle over all 60 cycles
    for g in (Multisign(0, 1), Multisign(1, 1)):
        H = realize_multisign(G, N, g)
        assert H is not None and cycle_multisign(G, H) == g


def test_identity_graph_realizes_only_e():
    G = MultisignedCompleteGraph(6, 2)
    N = small_necklace()
    H = realize_multisign(G, N, Multisign.zero(2))
    assert cycle_multisign(G, H) == Multisign.zero(2)
    assert realize_multisign(G, N, Multisign.parse("01")) is None


def test_spanning_squares_reach_everything():
    # squares whose multisigns are the unit vectors
    G = MultisignedCompleteGraph(12, 3, {(0, 1): 0b100, (3, 4): 0b010, (6, 7): 0b001})
    N = ring_necklace(list(range(12)))
    coset = necklace_coset(G, N)
    assert coset.span.rank == 3
    for g in range(8):
        H = realize_multisign(G, N, Multisign(g, 3))
        assert cycle_multisign(G, H).bits == g


def test_necklace_text_round_trip():
    G = MultisignedCompleteGraph(6, 1)
    N = small_necklace()
    text = dumps_necklace(N)
    assert text == "square 0 1 2 3\npath 0 4 5 2\n"
    assert loads_necklace(text, G) == N
    with pytest.raises(InvalidNecklaceError):
        loads_necklace("square 0 1 2 3\npath 0 4 2\n", G)


@settings(max_examples=60)
@given(graphs(n_min=4, n_max=9, m_max=3), st.data())
def test_ring_necklace_coset_matches_realizations(G, data):
    order = data.draw(st.permutations(range(G.n)))
    N = ring_necklace(order)
    assert validate(G, N) is None
    coset = necklace_coset(G, N)
    reached = set(coset.elements())
    S = realized_bits(G)
    assert reached <= S
    for g in range(1 << G.m):
        H = realize_multisign(G, N, Multisign(g, G.m))
        assert (H is not None) == (g in reached)
        if H is not None:
            assert cycle_multisign(G, H).bits == g
