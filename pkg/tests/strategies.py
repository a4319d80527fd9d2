"""Hypothesis strategies for small labeled graphs."""

from hypothesis import strategies as st

from wheelminor.graph_core import Graph


@st.composite
def graphs(draw, min_n: int = 1, max_n: int = 8):
    n = draw(st.integers(min_n, max_n))
    pairs = [(a, b) for a in range(n) for b in range(a + 1, n)]
    mask = draw(st.lists(st.booleans(), min_size=len(pairs), max_size=len(pairs)))
    return Graph(range(n), [e for e, keep in zip(pairs, mask) if keep])


@st.composite
def graph_and_vertex(draw, min_n: int = 1, max_n: int = 8):
    g = draw(graphs(min_n, max_n))
    return g, draw(st.sampled_from(list(g)))


@st.composite
def graph_and_edge(draw, max_n: int = 8):
    g = draw(graphs(2, max_n))
    edges = g.edges()
    if not edges:
        g = Graph(list(g), [(0, 1)])
        edges = g.edges()
    return g, draw(st.sampled_from(edges))
