"""Generators and validators for the named intermediate structures.

Every generator returns a :class:`Structure`: the graph together with a
role for each vertex.  Labels follow one convention throughout so that
extractors can address vertices by name: ``v3``, ``w3``, ``u3``, ``p4``,
``q4``, ``h``, ``h1``, ``c``, ``z``; tail vertices are ``r`` (the root)
and ``s...``.
"""

from __future__ import annotations

import json
import re
from dataclasses import dataclass, field

from .errors import InputError
from .graph_core import Graph, _bits, cycle_graph, induced, is_connected, label_key

KINDS = (
    "Drum",
    "Clam",
    "HangingLadder",
    "ExtendedDrum",
    "ExtendedClam",
    "SimpleExtendedClam",
    "SimpleExtendedHangingLadder",
    "NExtendedHangingLadder",
)

_ALIASES = {k.lower(): k for k in KINDS}
_ALIASES.update(
    {
        "hanging_ladder": "HangingLadder",
        "ladder": "HangingLadder",
        "extended_drum": "ExtendedDrum",
        "extended_clam": "ExtendedClam",
        "simple_extended_clam": "SimpleExtendedClam",
        "simple_extended_ladder": "SimpleExtendedHangingLadder",
        "simple_extended_hanging_ladder": "SimpleExtendedHangingLadder",
        "n_extended_ladder": "NExtendedHangingLadder",
        "n_extended_hanging_ladder": "NExtendedHangingLadder",
    }
)


def canonical_kind(name: str) -> str:
    try:
        return _ALIASES[name.replace("-", "_").lower()]
    except KeyError:
        raise InputError(f"unknown structure kind {name!r}") from None


@dataclass(frozen=True)
class StructureSpec:
    kind: str
    params: dict = field(default_factory=dict)

    def __post_init__(self):
        object.__setattr__(self, "kind", canonical_kind(self.kind))

    def to_json(self) -> str:
        return json.dumps({"kind": self.kind, **self.params}, sort_keys=True)

    @classmethod
    def from_json(cls, text: str) -> StructureSpec:
        d = json.loads(text)
        kind = d.pop("kind")
        return cls(kind, d)


@dataclass
class Structure:
    spec: StructureSpec
    graph: Graph
    roles: dict

    def role_map(self) -> dict:
        return {str(v): self.roles[v] for v in self.graph}


def idx(label, prefix: str) -> int | None:
    """The index of a label like ``v12`` with the given prefix, else None."""
    m = re.fullmatch(re.escape(prefix) + r"(\d+)", str(label))
    return int(m.group(1)) if m else None


def named(g: Graph, prefix: str) -> list:
    """Labels ``prefix1, prefix2, ...`` present in ``g``, by index."""
    return sorted((v for v in g if idx(v, prefix) is not None), key=lambda v: idx(v, prefix))


# tails


def make_tail(attach: list, tail: dict | None) -> tuple[list, list]:
    """Vertices and edges of a connected tail hanging off ``attach``.

    Shapes: ``single`` (one root adjacent to every attach vertex), ``star``
    (private leaves into a root, ``share`` attach vertices per leaf) and
    ``spider`` (like star with legs of ``length`` extra vertices).  Leaves
    may be joined by ``leaves``: ``none``, ``path`` or ``clique``.
    """
    tail = dict(tail or {"shape": "star"})
    shape = tail.get("shape", "star")
    if shape == "single":
        return ["r"], [("r", a) for a in attach]
    if shape == "custom":
        return list(tail["vertices"]), [tuple(e) for e in tail["edges"]]
    if shape not in ("star", "spider"):
        raise InputError(f"unknown tail shape {shape!r}")
    share = int(tail.get("share", 1))
    if share < 1:
        raise InputError("tail share must be positive")
    k = (len(attach) + share - 1) // share
    leaves = [f"s{j}" for j in range(1, k + 1)]
    verts, edges = ["r"] + leaves, []
    for i, a in enumerate(attach):
        edges.append((leaves[i // share], a))
    length = int(tail.get("length", 0)) if shape == "spider" else 0
    for j, s in enumerate(leaves, 1):
        prev = s
        for x in range(1, length + 1):
            mid = f"s{j}_{x}"
            verts.append(mid)
            edges.append((prev, mid))
            prev = mid
        edges.append((prev, "r"))
    links = tail.get("leaves", "none")
    if links == "path":
        edges += list(zip(leaves, leaves[1:]))
    elif links == "clique":
        edges += [(a, b) for i, a in enumerate(leaves) for b in leaves[i + 1:]]
    elif links != "none":
        raise InputError(f"unknown leaf linkage {links!r}")
    return verts, edges


def root_path_roots(g: Graph, attach, tail) -> list:
    """Every root w in ``tail`` with the root-path property.

    For each v in N(attach) ∩ tail there must be a path from v to w inside
    the tail meeting N(attach) only in v.
    """
    tail = set(tail)
    touch = set(g.neighborhood_of_set(attach)) & tail
    if not touch:
        return []
    if len(touch) == 1:
        return list(touch)
    free = tail - touch
    out = []
    for w in sorted(free, key=label_key):
        comp = _component(g, w, free)
        if all(any(x in comp for x in g.neighbors(v)) for v in touch):
            out.append(w)
    return out


def root_path_holds(g: Graph, attach, tail, root) -> bool:
    tail = set(tail)
    if root not in tail:
        return False
    touch = set(g.neighborhood_of_set(attach)) & tail
    if root in touch:
        return touch == {root}
    comp = _component(g, root, tail - touch)
    return all(any(x in comp for x in g.neighbors(v)) for v in touch)


def _component(g: Graph, start, allowed: set) -> set:
    seen = {start}
    stack = [start]
    while stack:
        x = stack.pop()
        for y in g.neighbors(x):
            if y in allowed and y not in seen:
                seen.add(y)
                stack.append(y)
    return seen


def root_path(g: Graph, attach, tail, v, root) -> list:
    """A path from ``v`` to ``root`` in the tail meeting N(attach) only at ``v``."""
    if v == root:
        return [v]
    tail = set(tail)
    touch = set(g.neighborhood_of_set(attach)) & tail
    allowed = (tail - touch) | {v}
    parent = {v: None}
    frontier = [v]
    while frontier and root not in parent:
        nxt = []
        for x in frontier:
            for y in sorted(g.neighbors(x), key=label_key):
                if y in allowed and y not in parent and (x == v or y != v):
                    parent[y] = x
                    nxt.append(y)
        frontier = nxt
    if root not in parent:
        raise InputError(f"no root path from {v!r} to {root!r}")
    path = [root]
    while parent[path[-1]] is not None:
        path.append(parent[path[-1]])
    return path[::-1]


# generators


def _seq(prefix: str, n: int) -> list[str]:
    return [f"{prefix}{i}" for i in range(1, n + 1)]


def _path_edges(xs: list) -> list:
    return list(zip(xs, xs[1:]))


def _int(params: dict, key: str, lo: int) -> int:
    try:
        val = int(params[key])
    except (KeyError, TypeError, ValueError):
        raise InputError(f"parameter {key!r} is required and must be an integer") from None
    if val < lo:
        raise InputError(f"parameter {key!r} must be at least {lo}")
    return val


def make(spec: StructureSpec) -> Structure:
    """Build the structure described by ``spec`` with role-tagged labels."""
    p = spec.params
    kind = spec.kind
    roles: dict = {}
    edges: list = []

    def tag(labels, role):
        for x in labels:
            roles[x] = role

    if kind == "Drum":
        k = _int(p, "order", 3)
        v, w, u = _seq("v", k), _seq("w", k), _seq("u", k)
        tag(v, "path"), tag(w, "rim"), tag(u, "spoke")
        edges = _path_edges(v) + _path_edges(w) + [(w[-1], w[0])]
        edges += [(u[i], v[i]) for i in range(k)] + [(u[i], w[i]) for i in range(k)]
    elif kind == "Clam":
        size = _int(p, "order", 7)
        if size % 3 != 1:
            raise InputError("clam order must be 1 mod 3")
        v = _seq("v", size - 2)
        tag(v, "path"), tag(["h1", "h2"], "hub")
        edges = _path_edges(v) + [("h1", x) for x in v]
        edges += [("h2", f"v{i}") for i in range(2, size - 2) if i % 3 != 0]
        if p.get("h1h2", False):
            edges.append(("h1", "h2"))
    elif kind == "HangingLadder":
        n = _int(p, "n", 1)
        k = 3 * n + 2
        v, w = _seq("v", k), _seq("w", k)
        tag(v, "path"), tag(w, "path"), tag(["c"], "hub")
        edges = _path_edges(v) + _path_edges(w) + list(zip(v, w))
        edges += [("c", f"{x}{i}") for i in range(2, k) if i % 3 != 0 for x in "vw"]
    elif kind == "ExtendedDrum":
        k = _int(p, "order", 3)
        w, u = _seq("w", k), _seq("u", k)
        tag(w, "rim"), tag(u, "spoke")
        edges = _path_edges(w) + [(w[-1], w[0])] + list(zip(u, w))
        sv, se = make_tail(u, p.get("tail"))
        tag(sv, "tail")
        edges += se
    elif kind in ("ExtendedClam", "SimpleExtendedClam"):
        k = _int(p, "order", 1)
        ps, v, w = _seq("p", 2 * k), _seq("v", k), _seq("w", k)
        tag(ps, "path"), tag(v + w, "spoke"), tag(["h"], "hub")
        edges = _path_edges(ps) + [(v[i], ps[2 * i]) for i in range(k)] + [(w[i], ps[2 * i + 1]) for i in range(k)]
        edges += [("h", x) for x in v]
        if kind == "SimpleExtendedClam":
            tag(["z"], "tail")
            edges += [("z", x) for x in w] + [("h", x) for x in w]
        else:
            hw = p.get("hw", "none")
            chosen = range(1, k + 1) if hw == "all" else [] if hw == "none" else [int(i) for i in hw]
            edges += [("h", f"w{i}") for i in chosen]
            sv, se = make_tail(w, p.get("tail"))
            tag(sv, "tail")
            edges += se
    elif kind == "SimpleExtendedHangingLadder":
        k = _int(p, "order", 1)
        ps, qs, v, w = _seq("p", 2 * k), _seq("q", 2 * k), _seq("v", k), _seq("w", k)
        tag(ps, "path"), tag(qs, "path"), tag(v + w, "spoke")
        edges = _path_edges(ps) + _path_edges(qs)
        edges += [(v[i], ps[2 * i]) for i in range(k)] + [(w[i], ps[2 * i + 1]) for i in range(k)]
        edges += [(v[i], qs[2 * i]) for i in range(k)] + [(w[i], qs[2 * i + 1]) for i in range(k)]
        sv, se = make_tail(w, p.get("tail"))
        tag(sv, "tail")
        edges += se
    elif kind == "NExtendedHangingLadder":
        k = _int(p, "order", 1)
        _int(p, "t", 2)
        r = int(p.get("r", 2 * k))
        anchors = [int(b) for b in p.get("anchors", range(1, 2 * k, 2))]
        if len(anchors) != k or any(a >= b for a, b in zip(anchors, anchors[1:])) or anchors[0] < 1 or anchors[-1] > r:
            raise InputError("anchors must be k strictly increasing indices in 1..r")
        vq = {int(i): [int(x) for x in xs] for i, xs in p.get("v_q", {}).items()} or {i: [anchors[i - 1]] for i in range(1, k + 1)}
        default_wq = {i: [2 * i] for i in range(1, k + 1)} if r == 2 * k and "anchors" not in p else {}
        wq = {int(i): [int(x) for x in xs] for i, xs in p.get("w_q", default_wq).items()}
        ps, qs, v, w = _seq("p", 2 * k), _seq("q", r), _seq("v", k), _seq("w", k)
        tag(ps, "path"), tag(qs, "path"), tag(v + w, "spoke")
        edges = _path_edges(ps) + _path_edges(qs)
        edges += [(v[i], ps[2 * i]) for i in range(k)] + [(w[i], ps[2 * i + 1]) for i in range(k)]
        edges += [(f"v{i}", f"q{x}") for i, xs in vq.items() for x in xs]
        edges += [(f"w{i}", f"q{x}") for i, xs in wq.items() for x in xs]
        sv, se = make_tail(w, p.get("tail"))
        tag(sv, "tail")
        edges += se
    else:  # pragma: no cover - guarded by canonical_kind
        raise InputError(kind)
    g = Graph(list(roles), edges)
    if len(g) != len(roles):
        raise InputError("tail edges mention unknown vertices")
    out = Structure(spec, g, roles)
    bad = validate(g, spec)
    if bad:
        raise InputError("; ".join(bad))
    return out


def make_kind(kind: str, **params) -> Structure:
    return make(StructureSpec(kind, params))


# validators


class _Checker:
    def __init__(self, g: Graph):
        self.g = g
        self.bad: list[str] = []

    def need(self, ok: bool, clause: str):
        if not ok and clause not in self.bad:
            self.bad.append(clause)

    def has(self, labels) -> bool:
        missing = [x for x in labels if x not in self.g]
        self.need(not missing, f"missing vertices {missing[:5]}")
        return not missing

    def induced_path(self, xs, clause):
        g = self.g
        ok = all(g.has_edge(a, b) == (abs(i - j) == 1) for i, a in enumerate(xs) for j, b in enumerate(xs) if i < j)
        self.need(ok, clause)

    def induced_cycle(self, xs, clause):
        g = self.g
        k = len(xs)
        ok = k >= 3 and all(
            g.has_edge(a, b) == ((j - i) % k in (1, k - 1)) for i, a in enumerate(xs) for j, b in enumerate(xs) if i < j
        )
        self.need(ok, clause)

    def independent(self, xs, clause):
        g = self.g
        self.need(not any(g.has_edge(a, b) for i, a in enumerate(xs) for b in xs[i + 1:]), clause)

    def no_edges(self, xs, ys, clause):
        g = self.g
        self.need(not any(g.has_edge(a, b) for a in xs for b in ys), clause)

    def exact_nbrs(self, x, within, expected, clause):
        got = {y for y in self.g.neighbors(x) if y in within}
        self.need(got == set(expected), clause)

    def tail(self, attach, tail, forbidden):
        g = self.g
        self.need(bool(tail), "tail S is nonempty")
        self.need(all(any(y in tail for y in g.neighbors(a)) for a in attach), "each attached vertex has a neighbor in S")
        self.no_edges(tail, forbidden, "no edges between S and the forbidden part")
        if tail:
            self.need(bool(root_path_roots(g, attach, tail)), "root-path condition on S")


def validate(g: Graph, spec: StructureSpec) -> list[str]:
    """Check every clause of the definition; returns the failing clauses."""
    p = spec.params
    kind = spec.kind
    c = _Checker(g)
    if kind == "Drum":
        k = int(p["order"])
        v, w, u = _seq("v", k), _seq("w", k), _seq("u", k)
        if not c.has(v + w + u):
            return c.bad
        c.need(len(g) == 3 * k, "vertex set is exactly v, w, u")
        c.induced_path(v, "v_1..v_n is an induced path")
        c.induced_cycle(w, "w_1..w_n is an induced cycle")
        every = set(g)
        for i in range(k):
            c.exact_nbrs(u[i], every, {v[i], w[i]}, "u_i adjacent only to v_i and w_i")
        c.no_edges(v, w, "no edges between v and w")
    elif kind == "Clam":
        size = int(p["order"])
        if size % 3 != 1:
            return ["clam order is 1 mod 3"]
        v = _seq("v", size - 2)
        if not c.has(v + ["h1", "h2"]):
            return c.bad
        c.need(len(g) == size, "vertex set is exactly v, h1, h2")
        c.induced_path(v, "v_1..v_{n-2} is an induced path")
        c.exact_nbrs("h1", v, v, "h1 adjacent to every v_i")
        want = [f"v{i}" for i in range(2, size - 2) if i % 3 != 0]
        c.exact_nbrs("h2", v, want, "h2 adjacent to v_i iff 1 < i < n-2 and i not 0 mod 3")
        if "h1h2" in p:
            c.need(g.has_edge("h1", "h2") == bool(p["h1h2"]), "h1h2 adjacency as specified")
    elif kind == "HangingLadder":
        n = int(p["n"])
        k = 3 * n + 2
        v, w = _seq("v", k), _seq("w", k)
        if not c.has(v + w + ["c"]):
            return c.bad
        c.need(len(g) == 6 * n + 5, "vertex set is exactly v, w, c")
        c.induced_path(v, "v_1..v_{3n+2} is an induced path")
        c.induced_path(w, "w_1..w_{3n+2} is an induced path")
        for i in range(k):
            c.exact_nbrs(v[i], w, {w[i]}, "v_i adjacent to w_j iff i = j")
        want = [f"{x}{i}" for i in range(2, k) if i % 3 != 0 for x in "vw"]
        c.exact_nbrs("c", set(g), want, "neighbors of c are v_i, w_i with 1 < i < 3n+2, i not 0 mod 3")
    elif kind == "ExtendedDrum":
        k = int(p["order"])
        w, u = _seq("w", k), _seq("u", k)
        if not c.has(w + u):
            return c.bad
        tail = [x for x in g if x not in set(w + u)]
        c.induced_cycle(w, "w_1..w_n is an induced cycle")
        c.independent(u, "u is an independent set")
        for i in range(k):
            c.exact_nbrs(u[i], w, {w[i]}, "u_i adjacent to w_j iff i = j")
        c.tail(u, tail, w)
    elif kind in ("ExtendedClam", "SimpleExtendedClam"):
        k = int(p["order"])
        ps, v, w = _seq("p", 2 * k), _seq("v", k), _seq("w", k)
        if not c.has(ps + v + w + ["h"]):
            return c.bad
        core = set(ps + v + w + ["h"])
        tail = [x for x in g if x not in core]
        c.induced_path(ps, "p_1..p_2n is an induced path")
        c.independent(v + w, "v and w together are independent")
        for i in range(k):
            c.exact_nbrs(v[i], ps, {ps[2 * i]}, "v_i adjacent to p_j iff j = 2i-1")
            c.exact_nbrs(w[i], ps, {ps[2 * i + 1]}, "w_i adjacent to p_j iff j = 2i")
        c.exact_nbrs("h", v, v, "h adjacent to every v_i")
        c.no_edges(["h"], ps + tail, "h has no neighbor in p or S")
        c.tail(w, tail, v + ps)
        if kind == "SimpleExtendedClam":
            c.need(tail == ["z"], "S is the single vertex z")
            if tail == ["z"]:
                c.exact_nbrs("z", w, w, "z adjacent to every w_i")
            c.exact_nbrs("h", w, w, "h adjacent to every w_i")
    elif kind in ("SimpleExtendedHangingLadder", "NExtendedHangingLadder"):
        k = int(p["order"])
        simple = kind == "SimpleExtendedHangingLadder"
        r = 2 * k if simple else int(p.get("r", 2 * k))
        ps, qs, v, w = _seq("p", 2 * k), _seq("q", r), _seq("v", k), _seq("w", k)
        if not c.has(ps + qs + v + w):
            return c.bad
        core = set(ps + qs + v + w)
        tail = [x for x in g if x not in core]
        c.induced_path(ps, "p_1..p_2n is an induced path")
        c.induced_path(qs, "q_1..q_r is an induced path")
        c.no_edges(ps, qs, "p_i is not adjacent to q_j")
        c.independent(v + w, "v and w together are independent")
        for i in range(k):
            c.exact_nbrs(v[i], ps, {ps[2 * i]}, "v_i adjacent to p_j iff j = 2i-1")
            c.exact_nbrs(w[i], ps, {ps[2 * i + 1]}, "w_i adjacent to p_j iff j = 2i")
        if simple:
            for i in range(k):
                c.exact_nbrs(v[i], qs, {qs[2 * i]}, "v_i adjacent to q_j iff j = 2i-1")
                c.exact_nbrs(w[i], qs, {qs[2 * i + 1]}, "w_i adjacent to q_j iff j = 2i")
        else:
            t = int(p.get("t", 2))
            anchors = [int(b) for b in p.get("anchors", range(1, 2 * k, 2))] + [r + 1]
            for i in range(k):
                c.need(g.has_edge(v[i], qs[anchors[i] - 1]), "v_i adjacent to q_{b_i}")
                allowed = set(qs[anchors[i] - 1:anchors[i + 1] - 1])
                c.need(all(y in allowed for y in g.neighbors(v[i]) if y in set(qs)), "v_i has no q-neighbor outside [b_i, b_{i+1})")
                c.need(sum(1 for y in g.neighbors(w[i]) if y in set(qs)) <= t - 1, "w_i has at most t-1 neighbors on q")
        c.tail(w, tail, ps + v + qs)
    return c.bad


def is_valid(g: Graph, spec: StructureSpec) -> bool:
    return not validate(g, spec)


# patched cycles


@dataclass
class PatchedCycle:
    """An induced cycle with ``w`` patch sequences anchored along it.

    ``anchors`` are 1-based positions on ``cycle``.
    """

    graph: Graph
    cycle: list
    patches: list
    anchors: list

    @property
    def width(self) -> int:
        return len(self.patches)

    @property
    def length(self) -> int:
        return len(self.anchors)

    def patch_vertices(self) -> list:
        return [s for patch in self.patches for s in patch]

    def is_simple(self) -> bool:
        xs = self.patch_vertices()
        return not any(self.graph.has_edge(a, b) for i, a in enumerate(xs) for b in xs[i + 1:])

    def validate(self) -> list[str]:
        return validate_patched_cycle(self)


def validate_patched_cycle(pc: PatchedCycle) -> list[str]:
    g = pc.graph
    c = _Checker(g)
    if not c.has(list(pc.cycle) + pc.patch_vertices()):
        return c.bad
    c.induced_cycle(list(pc.cycle), "q_1..q_m is an induced cycle")
    m, ell = len(pc.cycle), len(pc.anchors)
    c.need(all(1 <= b <= m for b in pc.anchors), "anchors lie on the cycle")
    c.need(all(a < b for a, b in zip(pc.anchors, pc.anchors[1:])), "anchors strictly increasing")
    c.need(len(set(pc.patch_vertices())) == len(pc.patch_vertices()), "patches are disjoint")
    c.need(not set(pc.cycle) & set(pc.patch_vertices()), "patches avoid the cycle")
    if c.bad:
        return c.bad
    for patch in pc.patches:
        c.need(len(patch) == ell, "each patch has one vertex per anchor")
        for j, s in enumerate(patch):
            c.need(g.has_edge(s, pc.cycle[pc.anchors[j] - 1]), "s^i_j adjacent to q_{b_j}")
            later = [pc.cycle[pc.anchors[x] - 1] for x in range(j + 1, min(ell, len(patch)))]
            c.need(not any(g.has_edge(s, q) for q in later), "s^i_j non-adjacent to q_{b_x} for x > j")
    return c.bad


def make_patched_cycle(w: int, ell: int, m: int, anchors=None, extra_edges=()) -> PatchedCycle:
    """A (w, ell)-patched cycle on q1..qm with patches ``s{i}_{j}``."""
    anchors = list(range(1, ell + 1)) if anchors is None else [int(b) for b in anchors]
    if ell > m or len(anchors) != ell:
        raise InputError("need ell <= m and one anchor per patch position")
    if any(a >= b for a, b in zip(anchors, anchors[1:])) or anchors[0] < 1 or anchors[-1] > m:
        raise InputError("anchors must be strictly increasing positions on the cycle")
    qs = _seq("q", m)
    patches = [[f"s{i}_{j}" for j in range(1, ell + 1)] for i in range(1, w + 1)]
    base = cycle_graph(qs)
    edges = base.edges() + [(patches[i][j], qs[anchors[j] - 1]) for i in range(w) for j in range(ell)]
    pos = {q: k for k, q in enumerate(qs, 1)}
    where = {s: j for patch in patches for j, s in enumerate(patch)}
    for a, b in extra_edges:
        if a in pos and b in pos:
            raise InputError(f"extra edge {a}-{b} would add a chord to the cycle")
        s, q = (a, b) if b in pos else (b, a)
        if q in pos and s in where:
            j = where[s]
            if pos[q] in anchors[j + 1:]:
                raise InputError(f"extra edge {a}-{b} joins s to a later anchor")
        elif not (a in where and b in where):
            raise InputError(f"extra edge {a}-{b} mentions unknown vertices")
        edges.append((a, b))
    g = Graph(qs + [s for patch in patches for s in patch], edges)
    pc = PatchedCycle(g, qs, patches, anchors)
    bad = pc.validate()
    if bad:
        raise InputError("; ".join(bad))
    return pc


# levelings


@dataclass
class PatchedConfig:
    """A (2, l)-patched cycle with connected sets T1, T2 hanging off its patches."""

    pc: PatchedCycle
    tails: tuple
    roots: tuple

    @property
    def graph(self) -> Graph:
        return self.pc.graph


def validate_patched_config(cfg: PatchedConfig) -> list[str]:
    """Failing conditions among: simple 2-patched cycle, tails off the cycle, rooted tails."""
    pc = cfg.pc
    bad = validate_patched_cycle(pc)
    if bad:
        return bad
    c = _Checker(pc.graph)
    c.need(pc.width == 2, "exactly two patches")
    c.need(pc.is_simple(), "patch vertices form an independent set")
    if c.bad:
        return c.bad
    t1, t2 = (list(t) for t in cfg.tails)
    if not c.has(t1 + t2):
        return c.bad
    c.need(not set(t1) & set(t2) and not (set(t1) | set(t2)) & (set(pc.cycle) | set(pc.patch_vertices())), "T1, T2 disjoint from each other and from the patched cycle")
    c.no_edges(pc.cycle, t1 + t2, "no edges between the cycle and T1 or T2")
    c.no_edges(pc.patches[0], t2, "no edges between S1 and T2")
    for i, (patch, tail) in enumerate(zip(pc.patches, (t1, t2))):
        c.need(all(pc.graph.neighbors(s) & set(tail) for s in patch), f"every vertex of S{i + 1} has a neighbor in T{i + 1}")
        root = cfg.roots[i]
        ok = root_path_holds(pc.graph, patch, tail, root) if root is not None else bool(root_path_roots(pc.graph, patch, tail))
        c.need(ok, f"root-path condition on T{i + 1}")
    return c.bad


def make_patched_config(ell: int, m: int, anchors=None, extra_edges=(), tails=(None, None)) -> PatchedConfig:
    """A simple (2, ell)-patched cycle with tails ``t1_*`` and ``t2_*`` (single roots by default)."""
    pc = make_patched_cycle(2, ell, m, anchors, extra_edges)
    verts, edges, names = list(pc.graph), pc.graph.edges(), []
    for i, (patch, spec) in enumerate(zip(pc.patches, tails), 1):
        tv, te = make_tail(patch, spec or {"shape": "single"})
        pre = lambda x, i=i: x if x in set(patch) else f"t{i}_{x}"  # noqa: E731
        names.append([pre(x) for x in tv])
        verts += names[-1]
        edges += [(pre(a), pre(b)) for a, b in te]
    g = Graph(verts, edges)
    out = PatchedConfig(PatchedCycle(g, pc.cycle, pc.patches, pc.anchors), tuple(names), (None, None))
    bad = validate_patched_config(out)
    if bad:
        raise InputError("; ".join(bad))
    return out


@dataclass
class Leveling:
    levels: list

    def __len__(self) -> int:
        return len(self.levels)

    def validate(self, g: Graph) -> list[str]:
        return validate_leveling(g, self)


def validate_leveling(g: Graph, lev: Leveling) -> list[str]:
    bad = []
    if not lev.levels or len(lev.levels[0]) != 1:
        bad.append("|L_0| = 1")
    seen: set = set()
    for level in lev.levels:
        if seen & set(level):
            bad.append("levels are disjoint")
        seen |= set(level)
    for i in range(1, len(lev.levels)):
        for v in lev.levels[i]:
            nb = g.neighbors(v)
            if not nb & set(lev.levels[i - 1]):
                bad.append("every vertex in L_i has a neighbor in L_{i-1}")
            if any(nb & set(lev.levels[j]) for j in range(i - 1)):
                bad.append("no vertex in L_i has a neighbor in L_j for j <= i-2")
    return sorted(set(bad))


def bfs_leveling(g: Graph, root) -> Leveling:
    """Distance classes from ``root``; ``g`` must be connected."""
    if root not in g:
        raise InputError(f"unknown vertex {root!r}")
    if not is_connected(g):
        raise InputError("leveling needs a connected graph")
    i = g._i(root)
    seen = 1 << i
    frontier = seen
    levels = []
    while frontier:
        levels.append(frozenset(g._labels[j] for j in _bits(frontier)))
        nxt = 0
        for j in _bits(frontier):
            nxt |= g._rows[j]
        frontier = nxt & ~seen
        seen |= frontier
    return Leveling(levels)


__all__ = [
    "PatchedConfig",
    "make_patched_config",
    "validate_patched_config",
    "KINDS",
    "Leveling",
    "PatchedCycle",
    "Structure",
    "StructureSpec",
    "bfs_leveling",
    "induced",
    "is_valid",
    "make",
    "make_kind",
    "make_patched_cycle",
    "make_tail",
    "named",
    "root_path",
    "root_path_holds",
    "root_path_roots",
    "validate",
    "validate_leveling",
    "validate_patched_cycle",
]
