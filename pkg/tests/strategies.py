from hypothesis import strategies as st

from polygraph.graph_core import make_graph


@st.composite
def graphs(draw, min_n=1, max_n=7, connected=False):
    n = draw(st.integers(min_n, max_n))
    pairs = [(u, v) for u in range(n) for v in range(u + 1, n)]
    chosen = draw(st.lists(st.sampled_from(pairs), unique=True)) if pairs else []
    if connected:
        chosen = sorted(set(chosen) | {(i, i + 1) for i in range(n - 1)})
    return make_graph(n, chosen)


@st.composite
def circulant_params(draw, max_n=10):
    n = draw(st.integers(3, max_n))
    S = draw(st.lists(st.integers(1, n // 2), min_size=1, max_size=3, unique=True))
    return n, sorted(S)
