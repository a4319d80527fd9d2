"""Graph fixtures and generators shared by the tests."""

from __future__ import annotations

import itertools
import random

from wheelminor.graph_core import Graph, invariant, is_isomorphic
from wheelminor.vm_oracle import lc, piv, rm


def random_graph(rng: random.Random, n: int, p: float = 0.5) -> Graph:
    return Graph(range(n), [(a, b) for a in range(n) for b in range(a + 1, n) if rng.random() < p])


def all_graphs(n: int):
    """Every labeled graph on vertices 0..n-1."""
    pairs = list(itertools.combinations(range(n), 2))
    for mask in range(1 << len(pairs)):
        yield Graph(range(n), [e for i, e in enumerate(pairs) if mask >> i & 1])


def nonisomorphic_graphs(n: int) -> list[Graph]:
    buckets: dict = {}
    out = []
    for g in all_graphs(n):
        bucket = buckets.setdefault(invariant(g), [])
        if not any(is_isomorphic(g, h) for h in bucket):
            bucket.append(g)
            out.append(g)
    return out


def fan_example() -> tuple[Graph, list, str]:
    """Path p1..p9, q adjacent to p3, p4, p6, p8, and dangling edges at p1, p9 and q."""
    path = [f"p{i}" for i in range(1, 10)]
    edges = list(zip(path, path[1:])) + [("q", f"p{i}") for i in (3, 4, 6, 8)]
    edges += [("a", "p1"), ("b", "p9"), ("c", "q")]
    return Graph(path + ["q", "a", "b", "c"], edges), path, "q"


def fan_instance(rng: random.Random, m: int) -> tuple[Graph, list, str]:
    path = [f"p{i}" for i in range(1, m + 1)]
    inner = path[2:-1]
    hits = rng.sample(inner, rng.randint(1, len(inner)))
    edges = list(zip(path, path[1:])) + [("q", x) for x in hits]
    verts = path + ["q"]
    for name, at in (("a", path[0]), ("b", path[-1]), ("c", "q")):
        for j in range(rng.randint(0, 2)):
            verts.append(f"{name}{j}")
            edges.append((f"{name}{j}", at))
    if rng.random() < 0.5 and "a0" in verts and "b0" in verts:
        edges.append(("a0", "b0"))
    return Graph(verts, edges), path, "q"


def partial_wheel(rng: random.Random, s: int, t: int) -> Graph:
    rim = [f"c{i}" for i in range(1, s + 1)]
    spokes = rng.sample(rim, t)
    return Graph(rim + ["h"], list(zip(rim, rim[1:] + rim[:1])) + [("h", x) for x in spokes])


def chorded_cycle_example() -> tuple[Graph, list]:
    """A long cycle c1..c8 d8..d1 with chord makers and a hub, plus a sequence reaching a W8 subdivision."""
    cs = [f"c{i}" for i in range(1, 9)]
    ds = [f"d{i}" for i in range(1, 9)]
    edges = list(zip(cs, cs[1:])) + list(zip(ds, ds[1:])) + [("c1", "d1"), ("c8", "d8")]
    for y in (2, 4, 5, 7):
        edges += [(f"w{y}", f"c{y}"), (f"w{y}", f"d{y}"), (f"w{y}", "v")]
    for y in (3, 6):
        edges += [(f"z{y}", f"c{y}"), (f"z{y}", f"d{y}")]
    extra = ["w2", "w4", "w5", "w7", "z3", "z6"]
    g = Graph(cs + ds + ["v"] + extra, edges)
    steps = [lc(x) for x in extra] + [rm(extra), piv("c3", "d3"), piv("c6", "d6"), rm(["c3", "d3", "c6", "d6"])]
    return g, steps
