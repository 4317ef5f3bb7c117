"""Shared hypothesis strategies."""

from hypothesis import strategies as st

from hamsign.graph import MultisignedCompleteGraph


@st.composite
def graphs(draw, n_min=3, n_max=7, m_min=1, m_max=4):
    n = draw(st.integers(n_min, n_max))
    m = draw(st.integers(m_min, m_max))
    labels = draw(st.lists(st.integers(0, (1 << m) - 1), min_size=n * (n - 1) // 2, max_size=n * (n - 1) // 2))
    return MultisignedCompleteGraph(n, m, labels)


@st.composite
def orders(draw, n):
    return draw(st.permutations(range(n)))
