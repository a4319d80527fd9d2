import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from graphs import fan_instance, fan_example, partial_wheel
from wheelminor.errors import InputError, SearchFailure
from wheelminor.extractors import (
    clam_from_simple_extended_clam,
    connectivity_preserving_removal,
    fan_check,
    fan_contract,
    recognize_clam,
    reduce_connected,
    wheel_from_clam,
    wheel_from_drum,
    wheel_from_extended_clam,
    wheel_from_extended_drum,
    wheel_from_hanging_ladder,
    wheel_from_n_ext_ladder,
    wheel_from_partial_wheel,
    wheel_from_patched_config,
    wheel_from_simple_ext_ladder,
    wheel_from_simple_extended_clam,
)
from wheelminor.graph_core import contract_connected, cycle_graph, is_isomorphic, path_graph, wheel
from wheelminor.structures import make_kind, make_patched_config, named
from wheelminor.vm_oracle import OrbitBudget, has_vertex_minor, replay, wheel_order


def wheel_of(t):
    return wheel_order(replay(t))


@settings(max_examples=150, deadline=None)
@given(st.integers(3, 6), st.data())
def test_partial_wheel_reaches_w_n(n, data):
    s = data.draw(st.integers(n + 3, 13))
    t = data.draw(st.integers(n, s))
    g = partial_wheel(random.Random(data.draw(st.integers(0, 10**6))), s, t)
    assert wheel_of(wheel_from_partial_wheel(g, "h", n)) == n


def test_partial_wheel_rejects_low_degree_hub():
    g = partial_wheel(random.Random(0), 8, 2)
    with pytest.raises(InputError):
        wheel_from_partial_wheel(g, "h", 3)
    with pytest.raises(InputError):
        wheel_from_partial_wheel(g, "zz", 3)


def test_fan_contract_fan_example():
    g, path, q = fan_example()
    assert fan_check(g, path, q) == []
    t = fan_contract(g, path, q)
    assert is_isomorphic(replay(t), contract_connected(g, path[1:-1]))


@settings(max_examples=150, deadline=None)
@given(st.integers(4, 12), st.integers(0, 10**6))
def test_fan_contract_random(m, seed):
    g, path, q = fan_instance(random.Random(seed), m)
    assert fan_check(g, path, q) == []
    replay(fan_contract(g, path, q))


def test_fan_check_reports_violations():
    g, path, q = fan_example()
    assert fan_check(g, path[:3], q) == ["m >= 4"]
    from wheelminor.graph_core import add_edges

    assert fan_check(add_edges(g, [("q", "p2")]), path, q)


def test_connectivity_preserving_removal():
    assert connectivity_preserving_removal(cycle_graph(range(5)), 0) == "delete"
    assert connectivity_preserving_removal(path_graph(range(3)), 1) == "complement_then_delete"


@pytest.mark.parametrize("n", [3, 4, 5])
def test_reduce_connected(n):
    s = make_kind("ExtendedDrum", order=3 * n)
    g = s.graph
    rim, spokes = named(g, "w"), named(g, "u")
    tail = [v for v in g if s.roles[v] == "tail"]
    uprime, v, t = reduce_connected(g, rim, spokes, tail, "r", n)
    h = replay(t)
    assert len(uprime) >= n and all(h.has_edge(v, u) for u in uprime)
    assert not h.neighbors(v) & set(rim)
    with pytest.raises(InputError):
        reduce_connected(g, rim, spokes, tail[1:], "r", n)


@pytest.mark.parametrize("n", [3, 4, 5])
def test_drum(n):
    assert wheel_of(wheel_from_drum(make_kind("Drum", order=2 * n - 1).graph, n)) == n


def test_drum_wrong_order():
    with pytest.raises(InputError):
        wheel_from_drum(make_kind("Drum", order=6).graph, 3)


@pytest.mark.parametrize("n,h1h2,want", [(2, False, 4), (2, True, 5), (3, False, 6), (3, True, 7)])
def test_clam(n, h1h2, want):
    g = make_kind("Clam", order=3 * n + 4, h1h2=h1h2).graph
    assert wheel_of(wheel_from_clam(g, n)) == want
    assert recognize_clam(g) is not None


@pytest.mark.parametrize("n", [1, 2, 3])
def test_hanging_ladder(n):
    assert wheel_of(wheel_from_hanging_ladder(make_kind("HangingLadder", n=n).graph, n)) == 4 * n


@pytest.mark.parametrize("tail", [{"shape": "single"}, {"shape": "star"}, {"shape": "spider", "length": 1}])
@pytest.mark.parametrize("n", [3, 4])
def test_extended_drum(n, tail):
    g = make_kind("ExtendedDrum", order=4 * n, tail=tail).graph
    assert wheel_of(wheel_from_extended_drum(g, n)) == n


def test_extended_drum_star_tail_fails_honestly_at_order_n():
    with pytest.raises(SearchFailure):
        wheel_from_extended_drum(make_kind("ExtendedDrum", order=3, tail={"shape": "star"}).graph, 3)


def test_extended_drum_oracle_confirms_small_case():
    g = make_kind("ExtendedDrum", order=3, tail={"shape": "single"}).graph
    assert wheel_of(wheel_from_extended_drum(g, 3)) == 3
    assert has_vertex_minor(g, wheel(3), OrbitBudget(200_000, 12)).status == "yes"


def test_simple_extended_clam():
    g = make_kind("SimpleExtendedClam", order=5).graph
    assert wheel_of(wheel_from_simple_extended_clam(g)) in (4, 5)
    assert wheel_of(wheel_from_simple_extended_clam(g, 3)) == 3
    assert wheel_of(wheel_from_simple_extended_clam(g, 4)) == 4
    h = replay(clam_from_simple_extended_clam(g, 2))
    assert recognize_clam(h) is not None
    with pytest.raises(SearchFailure):
        wheel_from_simple_extended_clam(g, 5)


@pytest.mark.parametrize("hw", ["none", "all"])
@pytest.mark.parametrize("order,n", [(8, 3), (12, 4), (20, 4)])
def test_extended_clam(order, n, hw):
    g = make_kind("ExtendedClam", order=order, hw=hw).graph
    assert wheel_of(wheel_from_extended_clam(g, n)) == n


@pytest.mark.parametrize("target", [3, 4, 5, 6, 8, 12])
def test_simple_extended_ladder(target):
    g = make_kind("SimpleExtendedHangingLadder", order=9).graph
    assert wheel_of(wheel_from_simple_ext_ladder(g, 3, target=target)) == target


def test_simple_extended_ladder_too_short():
    g = make_kind("SimpleExtendedHangingLadder", order=3, tail={"shape": "single"}).graph
    with pytest.raises(SearchFailure):
        wheel_from_simple_ext_ladder(g, 3, target=12)


def ladder(**params):
    return make_kind("NExtendedHangingLadder", **params).graph


@pytest.mark.parametrize("order", [6, 10])
@pytest.mark.parametrize("n", [3, 4])
def test_n_extended_ladder_simple(order, n):
    assert wheel_of(wheel_from_n_ext_ladder(ladder(order=order, t=2), n)) == n


def test_n_extended_ladder_routes():
    t = wheel_from_n_ext_ladder(ladder(order=6, t=2, w_q={}), 3)
    assert "n_extended_ladder:window" in t.meta["stages"]
    wq = {str(i): [2 * i] for i in range(2, 13)}
    wq["1"] = [2, 24]
    t = wheel_from_n_ext_ladder(ladder(order=12, t=3, w_q=wq), 3)
    assert "n_extended_ladder:far_apart" in t.meta["stages"]
    assert wheel_of(t) == 3


def nonsimple(n):
    anchors = list(range(1, 40, 4))
    return ladder(
        order=10,
        t=max(n, 3),
        r=40,
        anchors=anchors,
        v_q={str(i + 1): [a, a + 1] for i, a in enumerate(anchors)},
        w_q={str(i + 1): [a + 2] for i, a in enumerate(anchors)},
    )


@pytest.mark.parametrize("n", [3, 4, 5, 6])
def test_n_extended_ladder_chain(n):
    t = wheel_from_n_ext_ladder(nonsimple(n), n)
    assert "n_extended_ladder:chain" in t.meta["stages"] and wheel_of(t) == n


def test_n_extended_ladder_fails_honestly_when_too_short():
    with pytest.raises(SearchFailure, match="chain"):
        wheel_from_n_ext_ladder(ladder(order=3, t=2), 3)
    with pytest.raises(SearchFailure):
        wheel_from_n_ext_ladder(ladder(order=4, t=2), 3)


def config(kind: str, ell: int):
    if kind == "plain":
        return make_patched_config(ell, 12)
    if kind == "identical":
        return make_patched_config(ell, ell + 6, extra_edges=[(f"s1_{j}", f"q{ell + 4}") for j in range(1, ell + 1)])
    if kind == "increasing":
        return make_patched_config(ell, 2 * ell + 6, extra_edges=[(f"s1_{j}", f"q{ell + 3 + j}") for j in range(1, ell + 1)])
    return make_patched_config(ell, 2 * ell + 6, extra_edges=[(f"s1_{j}", f"q{2 * ell + 4 - j}") for j in range(1, ell + 1)])


@pytest.mark.parametrize("kind,ell", [("plain", 8), ("identical", 24), ("increasing", 24), ("decreasing", 32)])
@pytest.mark.parametrize("n", [3, 4])
def test_patched_config_routes(kind, ell, n):
    t = wheel_from_patched_config(config(kind, ell), n)
    route = "one_part" if kind == "plain" else kind
    assert f"patched_config:{route}" in t.meta["stages"]
    assert wheel_of(t) == n


def test_patched_config_fails_honestly_when_short():
    with pytest.raises(SearchFailure):
        wheel_from_patched_config(config("increasing", 16), 3)
