import hckpy
import pytest
from hypothesis import given, settings, strategies as st


def test_layered_counts_match_oracle():
    for seed in range(5):
        g, layout = hckpy.gen_circle_layered(3, 6, 3, mu=0.6, seed=seed)
        truth = hckpy.brute_count_hypercycles(g, 3, 6, layout)
        for algo in ("brute", "triangle", "clr", "auto"):
            assert hckpy.count_layered(g, layout, 3, algo) == truth


@settings(max_examples=25, deadline=None)
@given(seed=st.integers(0, 2**63), n=st.integers(2, 4), k=st.integers(4, 6))
def test_counts_property(seed, n, k):
    g, layout = hckpy.gen_circle_layered(n, k, 2, mu=0.5, seed=seed)
    assert hckpy.count_layered(g, layout, 2) == hckpy.brute_count_hypercycles(g, 2, k, layout)


def test_detect_planted():
    g, layout = hckpy.gen_circle_layered(3, 5, 3, b=16, seed=3)
    g = hckpy.plant_hypercycle(g, layout, 3, seed=4)
    assert hckpy.detect_hypercycle(g, 3, 5, seed=1)
    empty = hckpy.Hypergraph(10, [3])
    assert not hckpy.detect_hypercycle(empty, 3, 5, delta=0.5)
    assert hckpy.min_hypercycle(empty, 3, 5, delta=0.5) is None


def test_roundtrip_and_errors():
    g, _ = hckpy.gen_circle_layered(2, 4, 2, seed=1)
    assert hckpy.parse_hypergraph(hckpy.serialize(g)) == g
    with pytest.raises(ValueError):
        hckpy.parse_hypergraph("not a graph")


def test_wc2ac_triangle():
    h = hckpy.triangle_pattern()
    for seed in range(3):
        g, layout = hckpy.gen_kpartite_er(3, h, b=2, seed=seed)
        assert hckpy.wc2ac(g, layout, h, seed=seed) == hckpy.brute_count_kpartite(h, g, layout)


def test_db_modes():
    db = "DB 1 n=3\nrel R arity=2\nf 0 1\nf 1 2\nf 1 1\nrel S arity=1\nf 1\n"
    q = "Q Q(a,b) <- R(a,b); S(b)"
    assert hckpy.db_count(db, q) == 2
    assert hckpy.db_polynomial(db, q) == 2
    assert hckpy.db_avgcase(db, q, seed=7) == 2
