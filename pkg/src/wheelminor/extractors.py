"""One constructive procedure per wheel-extraction step.

Every procedure works on a :class:`Builder`, which records the operations
it applies, so that procedures compose: an extended clam reduces to a
simple extended clam, which reduces to a clam, which yields a wheel.  The
public ``wheel_from_*`` functions wrap a builder and return a
:class:`~wheelminor.vm_oracle.Trace` whose claim has been checked.

Thresholds from the existence proofs are never required: each procedure
attempts any input that satisfies the structural definition and raises
:class:`SearchFailure` naming the stage when the construction runs dry.
"""

from __future__ import annotations

from .errors import InputError, SearchFailure
from .graph_core import (
    Graph,
    contract_connected,
    delete,
    induced,
    is_connected,
    is_smoothable,
    label_key,
    sorted_labels,
    wheel,
)
from .ramsey_tools import find_clique, find_independent, find_induced_path, induced_matching
from .structures import named, root_path, root_path_roots
from .vm_oracle import OrbitBudget, Step, Trace, has_vertex_minor, lc, piv, rm, sm, wheel_order


class Builder:
    """A graph plus the operations that produced it from ``initial``."""

    def __init__(self, g: Graph):
        self.initial = g
        self.g = g
        self.steps: list[Step] = []
        self.stage = "start"
        self.path: list[str] = []

    def copy(self) -> Builder:
        b = Builder(self.initial)
        b.g, b.steps, b.stage, b.path = self.g, list(self.steps), self.stage, list(self.path)
        return b

    def adopt(self, other: Builder):
        self.g, self.steps, self.stage, self.path = other.g, other.steps, other.stage, other.path

    def enter(self, stage: str):
        self.stage = stage
        self.path.append(stage)

    def fail(self, reason: str):
        raise SearchFailure(self.stage, reason)

    def do(self, step: Step):
        try:
            self.g = step.apply(self.g)
        except InputError as exc:
            self.fail(f"{step} failed: {exc}")
        self.steps.append(step)

    def lc(self, v):
        self.do(lc(v))

    def pivot(self, u, v):
        self.do(piv(u, v))

    def smooth(self, v):
        self.do(sm(v))

    def delete(self, vs):
        vs = sorted(set(vs), key=label_key)
        if vs:
            self.do(rm(vs))

    def keep(self, vs):
        vs = set(vs)
        self.delete(v for v in self.g if v not in vs)

    def smooth_fillers(self, protect=()):
        """Smooth every smoothable vertex outside ``protect`` until none is left."""
        protect = set(protect)
        changed = True
        while changed:
            changed = False
            for v in sorted_labels(self.g):
                if v not in protect and v in self.g and is_smoothable(self.g, v):
                    self.smooth(v)
                    changed = True

    def trace(self, claimed: Graph | None = None, **meta) -> Trace:
        meta.setdefault("stages", list(self.path))
        return Trace(self.initial, tuple(self.steps), claimed, meta)


def _check_nonempty(g: Graph, names):
    missing = [x for x in names if x not in g]
    if missing:
        raise InputError(f"missing vertices {missing[:5]}")


# wheels


def rim_order(g: Graph, hub) -> list:
    """Cyclic order of ``g - hub``, starting at its lowest label."""
    rim = delete(g, [hub])
    if len(rim) < 3 or any(rim.degree(x) != 2 for x in rim) or not is_connected(rim):
        raise InputError("removing the hub must leave an induced cycle")
    start = sorted_labels(rim)[0]
    a, _ = sorted(rim.neighbors(start), key=label_key)
    order = [start, a]
    while len(order) < len(rim):
        nxt = [y for y in rim.neighbors(order[-1]) if y != order[-2]]
        order.append(nxt[0])
    return order


def _wheel_hub(g: Graph):
    m = wheel_order(g)
    if m is None:
        return None, None
    hubs = [v for v in g if g.degree(v) == m]
    return m, sorted(hubs, key=label_key)[0]


def _partial_wheel(b: Builder, hub, n: int):
    b.enter("partial_wheel")
    first = True
    while True:
        order = rim_order(b.g, hub)
        s, t = len(order), b.g.degree(hub)
        if first and (s < n + 3 or t < n):
            raise InputError(f"need cycle length >= {n + 3} and hub degree >= {n}; got {s}, {t}")
        first = False
        nb = b.g.neighbors(hub)
        if t == n:
            b.enter("partial_wheel:case1")
            for x in [x for x in order if x not in nb]:
                b.smooth(x)
            break
        if s == n + 3:
            _partial_wheel_base(b, hub, n, order, t)
            break
        if s > t:
            f = next(i for i, x in enumerate(order) if x in nb)
            for k in range(1, s + 1):
                i = (f + k) % s
                if order[i] not in nb and order[(i + 1) % s] in nb:
                    b.smooth(order[i])
                    break
        else:
            u = order[0]
            b.lc(u)
            b.delete([u])
    if wheel_order(b.g) != n:
        b.fail(f"partial wheel did not end at W_{n}")


def _partial_wheel_base(b: Builder, hub, n: int, order: list, t: int):
    s = len(order)
    nb = b.g.neighbors(hub)
    at = lambda i: order[i % s]  # noqa: E731
    if t == n + 3:
        b.enter("partial_wheel:case4")
        trio = [at(0), at(-1), at(1)]
        for x in trio:
            b.lc(x)
        b.delete(trio)
        return
    miss = [i for i, x in enumerate(order) if x not in nb]
    if t == n + 2:
        b.enter("partial_wheel:case3")
        i = miss[0]
        trio = [at(i + 1), at(i), at(i - 1)]
        for x in trio:
            b.lc(x)
        b.delete(trio)
        return
    b.enter("partial_wheel:case2")
    i0, j0 = miss
    for i, j in ((i0, j0), (j0, i0)):
        for d in (1, -1):
            if at(i) in (at(j + d), at(j + 2 * d)):
                continue
            trio = [at(i), at(j + d), at(j + 2 * d)]
            trial = b.copy()
            for x in trio:
                trial.lc(x)
            trial.delete(trio)
            if wheel_order(trial.g) == n:
                b.adopt(trial)
                return
    b.fail("no admissible choice of the two non-neighbors")


def shrink_wheel(b: Builder, n: int, budget: OrbitBudget = OrbitBudget(200_000, 16)):
    """Reduce the wheel held by ``b`` to W_n."""
    m, hub = _wheel_hub(b.g)
    if m is None:
        b.fail("current graph is not a wheel")
    if m == n:
        return
    if m < n:
        b.fail(f"W_{m} is smaller than W_{n}")
    if m >= n + 3:
        _partial_wheel(b, hub, n)
        return
    b.enter("shrink_wheel:search")
    res = has_vertex_minor(b.g, wheel(n), budget)
    if res.status != "yes":
        b.fail(f"W_{m} has no W_{n} vertex-minor ({res.status})")
    for step in res.trace.steps:
        b.do(step)


def finish_wheel(b: Builder, n: int | None = None, protect=()) -> int:
    """Smooth to the core and check (and if asked, shrink to) a wheel."""
    b.smooth_fillers(protect)
    m = wheel_order(b.g)
    if m is None:
        b.fail(f"result is not a wheel subdivision ({len(b.g)} vertices after smoothing)")
    if n is not None and m != n:
        shrink_wheel(b, n)
        m = n
    return m


def _wheel_trace(b: Builder, n: int, **meta) -> Trace:
    if wheel_order(b.g) != n:
        b.fail(f"final graph is not W_{n}")
    return b.trace(wheel(n), target=f"W{n}", **meta)


def wheel_from_partial_wheel(g: Graph, hub, n: int) -> Trace:
    """W_n from a hub of degree at least n over an induced cycle of length at least n + 3."""
    if hub not in g:
        raise InputError(f"unknown hub {hub!r}")
    b = Builder(g)
    _partial_wheel(b, hub, n)
    return _wheel_trace(b, n)


# fan contraction


def fan_check(g: Graph, path: list, q) -> list[str]:
    bad = []
    m = len(path)
    if m < 4:
        return ["m >= 4"]
    if len(set(path)) != m or q in path or any(x not in g for x in path + [q]):
        return ["path and q are distinct vertices of the graph"]
    if not all(g.has_edge(a, b) == (j == i + 1) for i, a in enumerate(path) for j, b in enumerate(path) if i < j):
        bad.append("p_1..p_m is an induced path")
    allowed = set(path) | {q}
    if any(y not in allowed for x in path[1:-1] for y in g.neighbors(x)):
        bad.append("no edges between p_2..p_{m-1} and vertices outside the path and q")
    inner = set(path[2:-1])
    if not g.neighbors(q) & inner or g.neighbors(q) & {path[0], path[1], path[-1]}:
        bad.append("q has a neighbor in p_3..p_{m-1} and none in p_1, p_2, p_m")
    return bad


def _fan(b: Builder, path: list, q):
    """Contract path[1:-1] to a single vertex; returns the surviving label."""
    bad = fan_check(b.g, path, q)
    if bad:
        raise InputError("fan contraction: " + "; ".join(bad))
    p = list(path)
    changed = True
    while changed:
        changed = False
        for i in range(2, len(p) - 1):
            if b.g.degree(p[i]) == 2:
                b.smooth(p[i])
                del p[i]
                changed = True
                break
    while len(p) >= 7:
        b.lc(p[3])
        b.delete([p[3]])
        b.smooth(p[2])
        b.smooth(p[4])
        del p[2:5]
    if len(p) == 4:
        b.smooth(p[1])
        return p[2]
    if len(p) == 5:
        b.lc(p[2])
        b.delete([p[2]])
        b.smooth(p[3])
        return p[1]
    b.pivot(p[2], p[3])
    b.delete([p[2], p[3]])
    b.smooth(p[4])
    return p[1]


def fan_contract(g: Graph, path: list, q) -> Trace:
    """A trace from ``g`` to a graph isomorphic to ``g / path[1:-1]``."""
    b = Builder(g)
    b.enter("fan_contract")
    survivor = _fan(b, list(path), q)
    return b.trace(contract_connected(g, path[1:-1]), survivor=str(survivor))


# connected reduction


def connectivity_preserving_removal(h: Graph, v) -> str:
    """"delete" if h - v is connected, else "complement_then_delete"."""
    if len(h) < 2 or not is_connected(h):
        raise InputError("need a connected graph on at least two vertices")
    if is_connected(delete(h, [v])):
        return "delete"
    from .graph_core import local_complement

    if not is_connected(delete(local_complement(h, v), [v])):  # pragma: no cover - cannot happen for connected h
        raise AssertionError("neither removal keeps the graph connected")
    return "complement_then_delete"


def reduce_check(g: Graph, A, U, S, root) -> list[str]:
    A, U, S = set(A), set(U), set(S)
    bad = []
    if A & U or A & S or U & S:
        bad.append("A, U and S are pairwise disjoint")
    if A | U | S != set(g):
        bad.append("A, U and S cover the graph")
    if any(g.neighbors(a) & S for a in A):
        bad.append("no edges between A and S")
    if any(g.neighbors(u) & U for u in U):
        bad.append("U is an independent set")
    if any(not g.neighbors(u) & S for u in U):
        bad.append("each vertex of U has a neighbor in S")
    from .structures import root_path_holds

    if root is None or not root_path_holds(g, U, S, root):
        bad.append("root-path condition on S")
    return bad


def _reduce(b: Builder, A, U, S, root, n: int):
    """Make one vertex of S complete to at least n vertices of U; returns (U', v)."""
    b.enter("reduce_connected")
    g0 = b.g
    A, U, S = set(A), set(U), set(S)
    if root is None:
        roots = root_path_roots(g0, U, S)
        root = roots[0] if roots else None
    bad = reduce_check(g0, A, U, S, root)
    if bad:
        b.fail("; ".join(bad))
    touch = g0.neighborhood_of_set(U) & S
    heavy = [s for s in sorted(S, key=label_key) if len(g0.neighbors(s) & U) >= n]
    if root in touch:
        b.enter("reduce_connected:root")
        v, uprime = root, sorted(U, key=label_key)
    elif heavy:
        b.enter("reduce_connected:heavy")
        v = heavy[0]
        uprime = sorted(g0.neighbors(v) & U, key=label_key)
    else:
        v, uprime = _reduce_matching(b, A, U, S, root, n, touch)
    b.keep(A | set(uprime) | {v})
    g1 = b.g
    ok = all(g1.has_edge(x, y) == g0.has_edge(x, y) for x in A | set(uprime) for y in A | set(uprime) if x != y)
    ok = ok and all(g1.has_edge(v, u) for u in uprime) and not g1.neighbors(v) & A
    if not ok:
        b.fail("reduced graph does not have the promised shape")
    if len(uprime) < n:
        b.fail(f"only {len(uprime)} vertices of U made adjacent, need {n}")
    return uprime, v


def _reduce_matching(b: Builder, A, U, S, root, n, touch):
    b.enter("reduce_connected:matching")
    g = b.g
    pairs = induced_matching(g, U, touch, max(n - 1, 1))
    partner = {s: u for u, s in pairs}
    u1 = A | {u for u, _ in pairs}
    u2 = [s for _, s in pairs]
    paths: set = set()
    for s in u2:
        paths |= set(root_path(g, U, S, s, root))
    b.keep(u1 | set(u2) | paths)
    b.enter("reduce_connected:eliminate")
    from .graph_core import local_complement

    for x in sorted(paths - set(u2), key=label_key):
        h = delete(b.g, [y for y in b.g if y in u1])
        if is_connected(delete(h, [x])):
            b.delete([x])
        else:
            if not is_connected(delete(local_complement(h, x), [x])):
                b.fail("connectivity-preserving removal failed")
            b.lc(x)
            b.delete([x])
    b.enter("reduce_connected:degree")
    for sj in sorted(u2, key=label_key):
        nbrs = b.g.neighbors(sj) & set(u2)
        indep = find_independent(b.g, nbrs, n)
        clique = None if indep is not None else find_clique(b.g, nbrs, n)
        if indep is None and clique is None:
            continue
        b.delete([partner[sj]])
        if clique is not None:
            b.lc(sj)
        ds = indep if indep is not None else clique
        for d in ds:
            b.lc(d)
        return sj, sorted((partner[d] for d in ds), key=label_key)
    b.enter("reduce_connected:path")
    path = find_induced_path(b.g, 2 * n - 1, within=u2)
    if path is None:
        b.fail(f"no vertex with an n-clique or n-independent neighborhood and no induced path on {2 * n - 1} vertices among {len(u2)} matched vertices")
    for s in path[:-1]:
        b.lc(s)
    b.delete(path[:-1] + [partner[s] for s in path[1:-1:2]])
    return path[-1], sorted((partner[s] for s in path[0::2]), key=label_key)


def reduce_connected(g: Graph, A, U, S, root, n: int) -> tuple[list, object, Trace]:
    """Returns (U', v, trace) with v complete to U' and anticomplete to A."""
    if root is None:
        roots = root_path_roots(g, U, S)
        root = roots[0] if roots else None
    bad = reduce_check(g, A, U, S, root)
    if bad:
        raise InputError("reduce_connected: " + "; ".join(bad))
    b = Builder(g)
    uprime, v = _reduce(b, A, U, S, root, n)
    return uprime, v, b.trace(b.g, v=str(v), U=[str(u) for u in uprime])


# drums, clams, ladders


def _drum(b: Builder, v: list, w: list, u: list, n: int):
    b.enter("drum")
    k = 2 * n - 1
    if len(v) < k:
        b.fail(f"drum of order {len(v)} is below 2n-1 = {k}")
    b.delete(v[k:] + u[k:])
    for x in v[: k - 1]:
        b.lc(x)
    b.delete(u[1:k - 1:2] + v[: k - 1])
    finish_wheel(b, n)


def wheel_from_drum(g: Graph, n: int) -> Trace:
    v, w, u = named(g, "v"), named(g, "w"), named(g, "u")
    if len(v) != 2 * n - 1 or len(w) != len(v) or len(u) != len(v):
        raise InputError(f"expected a drum of order {2 * n - 1}")
    _check_structure(g, "Drum", order=len(v))
    b = Builder(g)
    _drum(b, v, w, u, n)
    return _wheel_trace(b, n)


def _clam(b: Builder, v: list, h1, h2) -> int:
    """Returns 2n or 2n+1 where the clam has 3n+4 vertices."""
    b.enter("clam")
    n = (len(v) - 2) // 3
    pick = v[2:3 * n:3]
    for x in pick:
        b.lc(x)
    b.delete(pick)
    return finish_wheel(b)


def wheel_from_clam(g: Graph, n: int) -> Trace:
    """W_{2n} or W_{2n+1} from a clam on 3n+4 vertices; meta records which."""
    v = named(g, "v")
    if len(v) != 3 * n + 2:
        raise InputError(f"expected a clam on {3 * n + 4} vertices")
    _check_structure(g, "Clam", order=3 * n + 4)
    b = Builder(g)
    m = _clam(b, v, "h1", "h2")
    return b.trace(wheel(m), target=f"W{m}", order=m)


def _ladder(b: Builder, v: list, w: list, c, n: int):
    b.enter("hanging_ladder")
    for i in range(3, 3 * n + 1, 3):
        b.pivot(v[i - 1], w[i - 1])
    b.delete([v[i - 1] for i in range(3, 3 * n + 1, 3)] + [w[i - 1] for i in range(3, 3 * n + 1, 3)])
    return finish_wheel(b)


def wheel_from_hanging_ladder(g: Graph, n: int) -> Trace:
    v, w = named(g, "v"), named(g, "w")
    if len(v) != 3 * n + 2:
        raise InputError(f"expected a hanging ladder on {6 * n + 5} vertices")
    _check_structure(g, "HangingLadder", n=n)
    b = Builder(g)
    m = _ladder(b, v, w, "c", n)
    if m != 4 * n:
        b.fail(f"ended at W_{m}, expected W_{4 * n}")
    return _wheel_trace(b, 4 * n)


def _check_structure(g: Graph, kind: str, **params):
    from .structures import StructureSpec, validate

    bad = validate(g, StructureSpec(kind, params))
    if bad:
        raise InputError(f"not a valid {kind}: " + "; ".join(bad))


# recognizers for cores


def recognize_clam(g: Graph):
    """(path, h1, h2) if ``g`` is a clam, else None."""
    size = len(g)
    if size < 7 or size % 3 != 1:
        return None
    verts = sorted_labels(g)
    for h1 in verts:
        if g.degree(h1) < size - 3:
            continue
        for h2 in verts:
            if h2 == h1:
                continue
            rest = delete(g, [h1, h2])
            ends = [x for x in rest if rest.degree(x) == 1]
            if len(ends) != 2 or any(rest.degree(x) > 2 for x in rest) or not is_connected(rest):
                continue
            for start in sorted(ends, key=label_key):
                path = [start]
                while len(path) < len(rest):
                    path.append(next(y for y in rest.neighbors(path[-1]) if len(path) < 2 or y != path[-2]))
                if not all(g.has_edge(h1, x) for x in path):
                    continue
                want = {path[i - 1] for i in range(2, size - 2) if i % 3 != 0}
                if g.neighbors(h2) - {h1} == want:
                    return path, h1, h2
    return None


# extended structures


def _ext_drum(b: Builder, rim: list, spokes: list, tail, root, n: int):
    b.enter("extended_drum")
    rim_set = set(rim)
    b.keep(rim_set | set(spokes) | set(tail))
    uprime, v = _reduce(b, rim_set, spokes, tail, root, n)
    b.delete(uprime[n:])
    b.enter("extended_drum:finish")
    finish_wheel(b, n)


def wheel_from_extended_drum(g: Graph, n: int) -> Trace:
    w, u = named(g, "w"), named(g, "u")
    _check_structure(g, "ExtendedDrum", order=len(w))
    tail = [x for x in g if x not in set(w) | set(u)]
    b = Builder(g)
    _ext_drum(b, w, u, tail, None, n)
    return _wheel_trace(b, n)


def _simple_ext_clam_to_clam(b: Builder, p, v, w, h, z, k: int):
    """Simple extended clam truncated to order 2k+1 -> clam on 3k+4 vertices."""
    b.enter("simple_extended_clam")
    order = 2 * k + 1
    b.delete(v[order:] + w[order:] + p[2 * order:])
    for x in w[: 2 * k]:
        b.lc(x)
    b.delete(w[:order] + v[2:2 * k - 1:2] + [p[4 * k + 1]])
    b.smooth_fillers()
    found = recognize_clam(b.g)
    if found is None:
        b.fail("result is not a clam subdivision")
    return found


def clam_from_simple_extended_clam(g: Graph, n: int) -> Trace:
    """A trace from a simple extended clam of order 2n+1 to a clam on 3n+4 vertices."""
    p, v, w = named(g, "p"), named(g, "v"), named(g, "w")
    if len(v) != 2 * n + 1:
        raise InputError(f"expected order {2 * n + 1}")
    _check_structure(g, "SimpleExtendedClam", order=len(v))
    b = Builder(g)
    path, h1, h2 = _simple_ext_clam_to_clam(b, p, v, w, "h", "z", n)
    return b.trace(b.g, path=[str(x) for x in path], h1=str(h1), h2=str(h2))


def _wheel_via_simple_ext_clam(b: Builder, p, v, w, h, z, n: int):
    """Pick the smallest clam size whose outcome shrinks to W_n."""
    order = len(v)
    last = None
    for k in range(2, (order - 1) // 2 + 1):
        trial = b.copy()
        try:
            path, h1, h2 = _simple_ext_clam_to_clam(trial, p, v, w, h, z, k)
            _clam(trial, path, h1, h2)
            finish_wheel(trial, n)
        except SearchFailure as exc:
            last = exc
            continue
        b.adopt(trial)
        return
    raise last or SearchFailure("simple_extended_clam", f"order {order} too small for W_{n}")


def wheel_from_simple_extended_clam(g: Graph, n: int | None = None) -> Trace:
    """A wheel from a simple extended clam; W_{2k} or W_{2k+1} at order 2k+1 when n is None."""
    p, v, w = named(g, "p"), named(g, "v"), named(g, "w")
    _check_structure(g, "SimpleExtendedClam", order=len(v))
    b = Builder(g)
    if n is None:
        k = (len(v) - 1) // 2
        path, h1, h2 = _simple_ext_clam_to_clam(b, p, v, w, "h", "z", k)
        m = _clam(b, path, h1, h2)
        return b.trace(wheel(m), target=f"W{m}", order=m)
    _wheel_via_simple_ext_clam(b, p, v, w, "h", "z", n)
    return _wheel_trace(b, n)


def _ext_clam(b: Builder, p, v, w, h, tail, root, n: int):
    b.enter("extended_clam")
    k = len(v)
    anti = [i for i in range(k) if not b.g.has_edge(h, w[i])]
    comp = [i for i in range(k) if b.g.has_edge(h, w[i])]
    routes = [("anti", anti), ("complete", comp)]
    routes.sort(key=lambda r: -len(r[1]))
    last = None
    for name, idx in routes:
        if not idx:
            continue
        trial = b.copy()
        try:
            if name == "anti":
                _ext_clam_anti(trial, p, v, w, h, tail, root, n, idx)
            else:
                _ext_clam_complete(trial, p, v, w, h, tail, root, n, idx)
        except SearchFailure as exc:
            last = exc
            continue
        b.adopt(trial)
        return
    raise last or SearchFailure("extended_clam", "no w_i to work with")


def _ext_clam_anti(b: Builder, p, v, w, h, tail, root, n, idx):
    b.enter("extended_clam:anticomplete")
    k = len(v)
    use = [i for i in idx if i < k - 1]
    if len(use) < n:
        b.fail(f"only {len(use)} usable w_i anticomplete to h")
    rim = [h, v[0]] + p[: 2 * k - 1] + [v[k - 1]]
    spokes = [w[i] for i in use]
    b.delete(v[1:k - 1] + [p[2 * k - 1]] + [x for x in w if x not in spokes])
    _ext_drum(b, rim, spokes, tail, root, n)


def _ext_clam_complete(b: Builder, p, v, w, h, tail, root, n, idx):
    b.enter("extended_clam:complete")
    k = len(v)
    drop = [i for i in range(k) if i not in idx]
    b.delete([v[i] for i in drop] + [w[i] for i in drop])
    us = [w[i] for i in idx]
    A = set(b.g) - set(us) - set(tail)
    need = 5 if n <= 4 else (n + 1) // 2 * 2 + 1
    uprime, z = _reduce(b, A, us, tail, root, min(need, len(us)))
    keep_idx = [i for i in idx if w[i] in set(uprime)]
    first, last = keep_idx[0], keep_idx[-1]
    b.delete([v[i] for i in idx if i not in keep_idx] + p[: 2 * first] + p[2 * last + 2:])
    pp = p[2 * first:2 * last + 2]
    fill = [x for i, x in enumerate(pp) if not (i % 2 == 0 and first + i // 2 in keep_idx) and not (i % 2 == 1 and first + i // 2 in keep_idx)]
    for x in fill:
        if x in b.g and is_smoothable(b.g, x):
            b.smooth(x)
    vv = [v[i] for i in keep_idx]
    ww = [w[i] for i in keep_idx]
    pk = [x for x in p if x in b.g]
    _wheel_via_simple_ext_clam(b, pk, vv, ww, h, z, n)


def wheel_from_extended_clam(g: Graph, n: int) -> Trace:
    p, v, w = named(g, "p"), named(g, "v"), named(g, "w")
    _check_structure(g, "ExtendedClam", order=len(v))
    tail = [x for x in g if x not in set(p) | set(v) | set(w) | {"h"}]
    b = Builder(g)
    _ext_clam(b, p, v, w, "h", tail, None, n)
    return _wheel_trace(b, n)


def _simple_ext_ladder(b: Builder, p, q, v, w, tail, root, n: int, target: int | None = None):
    """W_{4k} from a simple extended hanging ladder, k chosen as large as needed.

    After the prescribed complementations the rungs p_j q_j between the
    first and the (2k+1)-th reduced index, closed off by the subdivided rung
    through v_{i_{2k+1}}, form a subdivided hanging ladder on 6k+5 vertices.
    """
    b.enter("simple_extended_ladder")
    order = len(v)
    A = set(p) | set(q) | set(v)
    b.keep(A | set(w) | set(tail))
    target = 4 * n if target is None else target
    ks = range(max(1, -(-target // 4)), (order - 2) // 2 + 1)
    if not ks:
        b.fail(f"order {order} is too small for W_{target}")
    base = b.copy()
    uprime, hub = _reduce(base, A, w, tail, root, 2 * min(ks) + 2)
    last = None
    for k in ks:
        if len(uprime) < 2 * k + 2:
            break
        trial = base.copy()
        try:
            _ladder_from_reduced(trial, p, q, v, w, hub, uprime, k)
            finish_wheel(trial, target)
        except SearchFailure as exc:
            last = exc
            continue
        b.adopt(trial)
        return
    raise last or SearchFailure("simple_extended_ladder", f"reduced to {len(uprime)} rungs, too few for W_{target}")


def _ladder_from_reduced(b: Builder, p, q, v, w, hub, uprime, k: int):
    b.enter("simple_extended_ladder:rungs")
    pos = {x: i for i, x in enumerate(w)}
    ii = sorted(pos[x] for x in uprime)[: 2 * k + 2]
    for j in ii[: 2 * k + 1]:
        b.lc(w[j])
    for j in [ii[0]] + ii[1::2]:
        b.lc(v[j])
    lo, hi = 2 * ii[0], 2 * ii[2 * k]
    end = v[ii[2 * k]]
    b.delete([x for x in w if x in b.g] + [x for x in v if x != end] + p[:lo] + q[:lo] + p[hi + 1:] + q[hi + 1:])
    b.smooth(end)
    rungs = [(p[j], q[j]) for j in range(lo, hi + 1) if b.g.has_edge(p[j], q[j])]
    cross = [rungs[i] for i in range(2, 3 * k + 1, 3)]
    if len(rungs) != 3 * k + 2 or any(b.g.has_edge(hub, x) for x in cross[0]):
        b.fail(f"expected {3 * k + 2} rungs, found {len(rungs)}")
    for x, y in cross:
        b.pivot(x, y)
    b.delete([x for r in cross for x in r])
    return finish_wheel(b)


def wheel_from_simple_ext_ladder(g: Graph, n: int, target: int | None = None) -> Trace:
    """W_{4n} (or W_target) from a simple extended hanging ladder."""
    p, q, v, w = named(g, "p"), named(g, "q"), named(g, "v"), named(g, "w")
    _check_structure(g, "SimpleExtendedHangingLadder", order=len(v))
    tail = [x for x in g if x not in set(p) | set(q) | set(v) | set(w)]
    b = Builder(g)
    goal = 4 * n if target is None else target
    _simple_ext_ladder(b, p, q, v, w, tail, None, n, target)
    return _wheel_trace(b, goal)


# contraction helpers


def _contract_around(b: Builder, seq: list, apexes: list, cyclic: bool = False) -> list:
    """Fan-contract, for each apex, the shortest segment of ``seq`` holding its neighbors.

    Returns ``seq`` restricted to the surviving vertices, so each apex ends
    with exactly one neighbor on it.
    """
    for x in apexes:
        cur = [y for y in seq if y in b.g]
        size = len(cur)
        hits = [i for i, y in enumerate(cur) if b.g.has_edge(x, y)]
        if len(hits) <= 1:
            continue
        lo, hi = hits[0], hits[-1]
        if cyclic:
            gaps = [(hits[(k + 1) % len(hits)] - hits[k]) % size for k in range(len(hits))]
            k = max(range(len(hits)), key=lambda k: gaps[k])
            lo, hi = hits[(k + 1) % len(hits)], hits[k]
            if hi < lo:
                hi += size
            path = [cur[i % size] for i in range(lo - 2, hi + 2)]
            if len(path) >= size:
                b.fail(f"neighbors of {x} span the whole cycle")
        else:
            if lo < 2 or hi > size - 2:
                b.fail(f"neighbors of {x} reach the end of the path")
            path = cur[lo - 2:hi + 2]
        try:
            _fan(b, path, x)
        except InputError as exc:
            b.fail(str(exc))
    return [y for y in seq if y in b.g]


def _trim_and_smooth(b: Builder, seq: list, attach: list, protect=()) -> list:
    """Drop the ends of path ``seq`` beyond its attachment points, smooth fillers between."""
    pos = [i for i, y in enumerate(seq) if y in set(attach)]
    if not pos:
        b.fail("no attachment points on the path")
    b.delete(seq[:pos[0]] + seq[pos[-1] + 1:])
    inner = seq[pos[0]:pos[-1] + 1]
    keep = set(attach) | set(protect)
    for y in inner:
        if y not in keep and y in b.g and is_smoothable(b.g, y):
            b.smooth(y)
    return [y for y in inner if y in b.g]


def _only_neighbor(g: Graph, x, seq) -> object:
    hits = [y for y in seq if g.has_edge(x, y)]
    if len(hits) != 1:
        raise SearchFailure("contraction", f"{x} has {len(hits)} neighbors on the path")
    return hits[0]


# n-extended hanging ladders


def _n_ext_ladder(b: Builder, p, q, v, w, tail, root, n: int, anchors=None):
    """W_n from an extended hanging ladder whose w_i have few q-neighbors."""
    b.enter("n_extended_ladder")
    k = len(v)
    qpos = {y: i for i, y in enumerate(q)}
    vq = [sorted(qpos[y] for y in b.g.neighbors(x) if y in qpos) for x in v]
    wq = [sorted(qpos[y] for y in b.g.neighbors(x) if y in qpos) for x in w]
    if anchors is None:
        anchors = [s[0] if s else None for s in vq]
    if any(a is None for a in anchors):
        raise InputError("every v_i needs a neighbor on q")
    B = list(anchors) + [len(q)]
    attempts = [
        ("claim_window", lambda t: _ladder_window(t, p, q, v, w, tail, root, n, B, wq)),
        ("claim_far_apart", lambda t: _ladder_far_apart(t, p, q, v, w, n, B, wq)),
        ("claim_chain", lambda t: _ladder_chain(t, p, q, v, w, tail, root, n, vq, wq)),
    ]
    last = None
    for _, run in attempts:
        trial = b.copy()
        try:
            run(trial)
        except SearchFailure as exc:
            last = exc
            continue
        b.adopt(trial)
        return
    raise last or SearchFailure("n_extended_ladder", "no claim applies")


def _ladder_window(b: Builder, p, q, v, w, tail, root, n, B, wq):
    b.enter("n_extended_ladder:window")
    k = len(v)
    last = None
    for size in range(k - 1, n - 1, -1):
        for i in range(0, k - size):
            lo, hi = B[i], B[i + size]
            if any(lo <= x <= hi for j in range(i, i + size) for x in wq[j]):
                continue
            ip = max(x for x in range(len(q)) if b.g.has_edge(v[i], q[x]))
            if ip >= hi:
                continue
            rim = q[ip:hi + 1] + [v[i + size]] + p[2 * i:2 * (i + size) + 1][::-1] + [v[i]]
            spokes = w[i:i + size]
            trial = b.copy()
            try:
                trial.keep(set(rim) | set(spokes) | set(tail))
                _ext_drum(trial, rim, spokes, tail, root, n)
            except SearchFailure as exc:
                last = exc
                continue
            b.adopt(trial)
            return
    raise last or SearchFailure(b.stage, "no window of w_i without q-neighbors")


def _ladder_far_apart(b: Builder, p, q, v, w, n, B, wq):
    b.enter("n_extended_ladder:far_apart")
    k = len(v)
    block = lambda x: max(j for j in range(k) if B[j] <= x)  # noqa: E731
    cands = []
    for i, xs in enumerate(wq):
        for x1, x2 in zip(xs, xs[1:]):
            j1, j2 = block(x1), block(x2)
            js = list(range(j1 + 2, j2, 2))
            sides = [js] if not js or not js[0] <= i < js[-1] else [[j for j in js if j <= i], [j for j in js if j > i]]
            for side in sides:
                if len(side) >= 2 * n - 1:
                    cands.append((-len(side), i, x1, x2, side))
    last = None
    for _, i, x1, x2, js in sorted(cands):
        trial = b.copy()
        try:
            seg = q[x1:x2 + 1]
            pseg = p[2 * js[0]:2 * js[-1] + 1]
            vs = [v[j] for j in js]
            trial.keep(set(seg) | {w[i]} | set(vs) | set(pseg))
            seg = _contract_around(trial, seg, vs)
            attach = [p[2 * j] for j in js]
            trial.smooth_fillers(set(attach) | set(vs) | {w[i]} | {_only_neighbor(trial.g, x, seg) for x in vs})
            _drum(trial, attach, None, vs, n)
        except SearchFailure as exc:
            last = exc
            continue
        b.adopt(trial)
        return
    raise last or SearchFailure(b.stage, f"no w_i with consecutive q-neighbors {2 * (2 * n - 1)} blocks apart")


def _ladder_chain(b: Builder, p, q, v, w, tail, root, n, vq, wq):
    """Greedy alternating chain v_a <= w_d < v_a' <= w_d' ... with separated q-ranges."""
    b.enter("n_extended_ladder:chain")
    k = len(v)
    r = len(q)

    def fits(xs, pos):
        if not xs or xs[0] < pos + 1 + (len(xs) > 1):
            return False
        return len(xs) == 1 or (xs[0] >= 2 and xs[-1] <= r - 2)

    chain = []
    pos, a = -2, 0
    while a < k:
        if not fits(vq[a], pos):
            a += 1
            continue
        d = next((d for d in range(a, k) if fits(wq[d], vq[a][-1])), None)
        if d is None:
            break
        chain.append((a, d))
        pos = wq[d][-1]
        a = d + 1
    if len(chain) < 4:
        b.fail(f"alternating chain has only {len(chain)} pieces")
    vs = [v[a] for a, _ in chain]
    ws = [w[d] for _, d in chain]
    b.keep(set(p) | set(q) | set(vs) | set(ws) | set(tail))
    order = [x for pair in zip(vs, ws) for x in pair]
    qs = _contract_around(b, q, order)
    qa = [_only_neighbor(b.g, x, qs) for x in order]
    pa = [p[2 * a] for a, _ in chain]
    pa = [x for pair in zip(pa, [p[2 * d + 1] for _, d in chain]) for x in pair]
    pp = _trim_and_smooth(b, [y for y in p if y in b.g], pa, tail)
    qq = _trim_and_smooth(b, qs, qa, tail)
    if pp != pa or qq != qa:
        b.fail("chain did not collapse to a simple extended ladder")
    _simple_ext_ladder(b, pp, qq, vs, ws, tail, root, 1, n)


def wheel_from_n_ext_ladder(g: Graph, n: int, anchors=None) -> Trace:
    """W_n from an extended hanging ladder; ``anchors`` are 1-based positions on q."""
    p, q, v, w = named(g, "p"), named(g, "q"), named(g, "v"), named(g, "w")
    params = {"order": len(v), "r": len(q), "t": max(n, 2)}
    if anchors is not None:
        params["anchors"] = list(anchors)
    else:
        params["anchors"] = [min(int(str(y)[1:]) for y in g.neighbors(x) if str(y).startswith("q")) for x in v]
    _check_structure(g, "NExtendedHangingLadder", **params)
    tail = [x for x in g if x not in set(p) | set(q) | set(v) | set(w)]
    b = Builder(g)
    _n_ext_ladder(b, p, q, v, w, tail, None, n, [a - 1 for a in params["anchors"]])
    return _wheel_trace(b, n)


# the final patched-cycle configuration


def _partitions(sets, k: int, ell_min: int = 4):
    """Regular partitions of ``sets`` for decreasing target lengths."""
    from .ramsey_tools import regular_partition_at_most

    seen = set()
    for ell in range(len(sets), ell_min - 1, -1):
        try:
            rp = regular_partition_at_most(sets, k, ell)
        except (SearchFailure, InputError):
            continue
        key = (tuple(rp.cuts), tuple(rp.chosen))
        if key not in seen:
            seen.add(key)
            yield rp


def _in(x, part) -> bool:
    lo, hi = part
    return (lo is None or x > lo) and (hi is None or x <= hi)


def _best_part(rp, anchors_of) -> int:
    counts = [sum(1 for c in rp.chosen if _in(anchors_of(c), part)) for part in rp.parts()]
    return max(range(len(counts)), key=lambda i: (counts[i], -i))


def _patched_config(b: Builder, cfg, n: int, max_attempts: int = 60):
    b.enter("patched_config")
    pc = cfg.pc
    Q, (S1, S2), B = list(pc.cycle), pc.patches[:2], list(pc.anchors)
    T1, T2 = (list(t) for t in cfg.tails)
    r1, r2 = cfg.roots
    pos = {q: k for k, q in enumerate(Q, 1)}
    N1 = [sorted(pos[y] for y in b.g.neighbors(s) if y in pos) for s in S1]
    N2 = [sorted(pos[y] for y in b.g.neighbors(s) if y in pos) for s in S2]
    heavy = [s for s, ns in zip(S1 + S2, N1 + N2) if len(ns) >= n]
    if heavy and len(Q) >= n + 3:
        b.enter("patched_config:hub")
        b.keep(set(Q) | {heavy[0]})
        _partial_wheel(b, heavy[0], n)
        return
    if heavy:
        b.fail("a patch vertex has n cycle-neighbors but the cycle is too short")
    routes = []
    for rp1 in _partitions(N1, n - 1):
        i1 = _best_part(rp1, lambda c: B[c])
        part1 = rp1.parts()[i1]
        cs = sorted(c for c in rp1.chosen if _in(B[c], part1))
        if rp1.order == 1:
            routes.append(("one_part", cs, None, None))
            continue
        sets2 = [[x for x in N2[c] if _in(x, part1)] for c in cs]
        for rp2 in _partitions(sets2, n - 1):
            i2 = _best_part(rp2, lambda i: B[cs[i]])
            us = sorted(cs[i] for i in rp2.chosen if _in(B[cs[i]], rp2.parts()[i2]))
            for j, part in enumerate(rp1.parts()):
                if j != i1:
                    routes.append((rp1.case_tags[j], us, part, rp1))
        if len(routes) >= max_attempts:
            break
    last = None
    for tag, us, part, _ in routes[:max_attempts]:
        trial = b.copy()
        try:
            if tag == "one_part":
                _config_one_part(trial, Q, S1, T1, r1, us, n)
            else:
                _config_case(trial, tag, Q, S1, S2, T2, r2, B, N1, us, part, n)
        except SearchFailure as exc:
            last = exc
            continue
        b.adopt(trial)
        return
    raise last or SearchFailure("patched_config", "no regular partition of the patch neighborhoods")


def _config_one_part(b: Builder, Q, S1, T1, r1, us, n):
    b.enter("patched_config:one_part")
    spokes = [S1[u] for u in us[1::2]]
    b.keep(set(Q) | set(spokes) | set(T1))
    rim = _contract_around(b, Q, spokes, cyclic=True)
    _ext_drum(b, rim, spokes, T1, r1, n)


def _config_case(b: Builder, tag, Q, S1, S2, T2, r2, B, N1, us, part, n):
    b.enter(f"patched_config:{tag}")
    a = len(us)
    t = 4 * ((a + 1) // 4)
    if t < 8:
        b.fail(f"only {a} aligned patch positions")
    q1 = Q[B[us[0]]:B[us[-1]] - 1]
    js = range(4, t - 1, 2)
    order = [S1[us[j - 1]] if j % 4 == 0 else S2[us[j - 1]] for j in js]
    vs, ws = order[0::2], order[1::2]
    jpos = [k for k in range(1, len(Q) + 1) if _in(k, part)]
    if tag == "identical":
        h = Q[min(set(N1[us[3]]) & set(jpos)) - 1]
        extra = [h]
    else:
        q2 = [Q[k - 1] for k in jpos]
        if tag == "decreasing":
            q2 = q2[::-1]
        extra = q2
    b.keep(set(q1) | set(extra) | set(order) | set(T2))
    seq = _contract_around(b, q1, order)
    attach = [_only_neighbor(b.g, x, seq) for x in order]
    pp = _trim_and_smooth(b, seq, attach, set(T2) | set(extra) | set(order))
    if pp != attach:
        b.fail("patch vertices did not collapse onto distinct path vertices")
    if tag == "identical":
        _ext_clam(b, pp, vs, ws, extra[0], T2, r2, n)
    else:
        _n_ext_ladder(b, pp, extra, vs, ws, T2, r2, n)


def wheel_from_patched_config(cfg, n: int) -> Trace:
    """W_n from a simple (2, l)-patched cycle with rooted tails on both patches."""
    from .structures import validate_patched_config

    bad = validate_patched_config(cfg)
    if bad:
        raise InputError("not a valid patched configuration: " + "; ".join(bad))
    b = Builder(cfg.graph)
    _patched_config(b, cfg, n)
    return _wheel_trace(b, n)
