import random

import pytest

from wheelminor.errors import InputError
from wheelminor.graph_core import add_edges, cycle_graph, delete, remove_edges
from wheelminor.structures import (
    KINDS,
    PatchedCycle,
    StructureSpec,
    bfs_leveling,
    canonical_kind,
    is_valid,
    make,
    make_kind,
    make_patched_config,
    make_patched_cycle,
    make_tail,
    root_path_holds,
    validate,
    validate_leveling,
    validate_patched_config,
    validate_patched_cycle,
)

EXAMPLES = [
    ("Drum", {"order": 5}, 15),
    ("Clam", {"order": 7}, 7),
    ("Clam", {"order": 10, "h1h2": True}, 10),
    ("HangingLadder", {"n": 2}, 17),
    ("ExtendedDrum", {"order": 4, "tail": {"shape": "single"}}, 9),
    ("ExtendedDrum", {"order": 4}, 13),
    ("ExtendedClam", {"order": 3, "hw": "all"}, 17),
    ("SimpleExtendedClam", {"order": 5}, 22),
    ("SimpleExtendedHangingLadder", {"order": 3, "tail": {"shape": "single"}}, 19),
    ("NExtendedHangingLadder", {"order": 3, "t": 2}, 22),
]


@pytest.mark.parametrize("kind,params,size", EXAMPLES)
def test_generated_structures_validate(kind, params, size):
    s = make_kind(kind, **params)
    assert len(s.graph) == size
    assert validate(s.graph, s.spec) == []
    assert set(s.role_map()) == {str(v) for v in s.graph}


@pytest.mark.parametrize("kind,params,size", EXAMPLES)
def test_random_edge_flips_are_caught(kind, params, size):
    s = make_kind(kind, **params)
    rng = random.Random(size)
    caught = 0
    for _ in range(20):
        a, b = rng.sample(list(s.graph), 2)
        g = remove_edges(s.graph, [(a, b)]) if s.graph.has_edge(a, b) else add_edges(s.graph, [(a, b)])
        caught += not is_valid(g, s.spec)
    assert caught >= 10


def test_spec_json_round_trip_and_aliases():
    spec = StructureSpec("extended-drum", {"order": 4, "tail": {"shape": "star"}})
    assert spec.kind == "ExtendedDrum"
    assert StructureSpec.from_json(spec.to_json()) == spec
    assert canonical_kind("hanging_ladder") == "HangingLadder"
    assert len(KINDS) == 8
    with pytest.raises(InputError):
        canonical_kind("torus")


def test_bad_parameters():
    with pytest.raises(InputError):
        make_kind("Clam", order=8)
    with pytest.raises(InputError):
        make_kind("Drum", order=1)
    with pytest.raises(InputError):
        make_kind("NExtendedHangingLadder", order=3, t=2, anchors=[3, 2, 1])


def test_tail_shapes():
    verts, edges = make_tail(["a", "b", "c"], {"shape": "spider", "length": 2, "leaves": "path"})
    assert "r" in verts and len(verts) == 1 + 3 * 3
    verts, edges = make_tail(["a", "b", "c", "d"], {"shape": "star", "share": 2})
    assert len(verts) == 3
    with pytest.raises(InputError):
        make_tail(["a"], {"shape": "blob"})


def test_root_path_condition():
    s = make_kind("ExtendedDrum", order=4)
    attach = [f"u{i}" for i in range(1, 5)]
    tail = ["r"] + [f"s{i}" for i in range(1, 5)]
    assert root_path_holds(s.graph, attach, tail, "r")
    assert not root_path_holds(s.graph, attach, tail, "s1")


def test_patched_cycle_validation():
    pc = make_patched_cycle(2, 4, 10, anchors=[2, 4, 6, 8])
    assert validate_patched_cycle(pc) == [] and pc.width == 2 and pc.length == 4 and pc.is_simple()
    bad = PatchedCycle(add_edges(pc.graph, [("s1_1", "q4")]), pc.cycle, pc.patches, pc.anchors)
    assert validate_patched_cycle(bad)
    chord = PatchedCycle(add_edges(pc.graph, [("q1", "q5")]), pc.cycle, pc.patches, pc.anchors)
    assert validate_patched_cycle(chord)


def test_patched_config():
    cfg = make_patched_config(6, 12)
    assert len(cfg.graph) == 26
    assert validate_patched_config(cfg) == []
    g = add_edges(cfg.graph, [(cfg.pc.patches[0][0], cfg.tails[1][0])])
    broken = type(cfg)(PatchedCycle(g, cfg.pc.cycle, cfg.pc.patches, cfg.pc.anchors), cfg.tails, cfg.roots)
    assert validate_patched_config(broken)


def test_bfs_leveling():
    g = cycle_graph(range(7))
    lev = bfs_leveling(g, 0)
    assert [len(x) for x in lev.levels] == [1, 2, 2, 2]
    assert validate_leveling(g, lev) == []
    with pytest.raises(InputError):
        bfs_leveling(delete(g, [3]) if False else delete(g, [1, 4]), 0)
